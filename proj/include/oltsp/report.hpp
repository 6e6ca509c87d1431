#pragma once

#include <optional>
#include <string>
#include <vector>

namespace oltsp {

struct RatioRow {
  std::string id;
  std::string policy;
  double alg = 0.0;
  double opt = 0.0;
  double ratio = 0.0;
};

struct RatioSummary {
  std::size_t count = 0;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  std::optional<double> bound;
  bool pass = true;  // max ratio <= bound + kEps
};

RatioSummary summarize(const std::vector<RatioRow>& rows, std::optional<double> bound);

// `csv` or `json`; throws std::invalid_argument otherwise. A non-empty
// provenance string is written as a leading `#` line (csv) or field (json).
std::string report(const std::vector<RatioRow>& rows, const std::string& format,
                   std::optional<double> bound = std::nullopt,
                   const std::string& provenance = {});

// %.17g rendering used across reports.
std::string format_number(double v);

}  // namespace oltsp
