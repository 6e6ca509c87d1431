#include "oltsp/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json_util.hpp"
#include "oltsp/common.hpp"

namespace oltsp {

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

RatioSummary summarize(const std::vector<RatioRow>& rows, std::optional<double> bound) {
  RatioSummary s;
  s.count = rows.size();
  s.bound = bound;
  double sum = 0.0;
  for (const RatioRow& r : rows) {
    s.max_ratio = std::max(s.max_ratio, r.ratio);
    sum += r.ratio;
  }
  s.mean_ratio = rows.empty() ? 0.0 : sum / static_cast<double>(rows.size());
  s.pass = !bound || s.max_ratio <= *bound + kEps;
  return s;
}

std::string report(const std::vector<RatioRow>& rows, const std::string& format,
                   std::optional<double> bound, const std::string& provenance) {
  const RatioSummary s = summarize(rows, bound);
  if (format == "csv") {
    std::ostringstream os;
    if (!provenance.empty()) os << "# " << provenance << "\n";
    os << "id,policy,alg,opt,ratio\n";
    for (const RatioRow& r : rows) {
      os << r.id << "," << r.policy << "," << format_number(r.alg) << "," << format_number(r.opt)
         << "," << format_number(r.ratio) << "\n";
    }
    os << "summary,count=" << s.count << ",max=" << format_number(s.max_ratio)
       << ",mean=" << format_number(s.mean_ratio);
    if (bound) os << ",bound=" << format_number(*bound);
    os << ",status=" << (s.pass ? "pass" : "fail") << "\n";
    return os.str();
  }
  if (format == "json") {
    using detail::Json;
    Json doc;
    if (!provenance.empty()) doc["provenance"] = provenance;
    Json arr = Json::array();
    for (const RatioRow& r : rows) {
      arr.push_back(Json{{"id", r.id}, {"policy", r.policy}, {"alg", r.alg}, {"opt", r.opt},
                         {"ratio", r.ratio}});
    }
    doc["rows"] = arr;
    Json sum{{"count", s.count}, {"max", s.max_ratio}, {"mean", s.mean_ratio}};
    sum["bound"] = bound ? Json(*bound) : Json(nullptr);
    sum["pass"] = s.pass;
    doc["summary"] = sum;
    return doc.dump(2) + "\n";
  }
  throw std::invalid_argument("unknown report format: " + format + " (expected csv or json)");
}

}  // namespace oltsp
