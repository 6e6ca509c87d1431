#include <fstream>
#include <sstream>

#include "json_util.hpp"
#include "oltsp/instance.hpp"

namespace oltsp {

namespace detail {

Json point_to_json(const MetricSpace& space, const Point& p) {
  switch (space.kind()) {
    case SpaceKind::Star: return Json{{"ray", p.ray}, {"depth", p.x}};
    case SpaceKind::General:
      if (p.mid_edge()) return Json{{"from", p.node}, {"to", p.to}, {"traveled", p.x}};
      return Json(p.node);
    default: return Json(p.x);
  }
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw DecodeError(where + ": " + what);
}

const Json& field(const Json& obj, const char* name, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected object");
  auto it = obj.find(name);
  if (it == obj.end()) {
    throw DecodeError(where.empty() ? std::string("missing field: ") + name
                                    : where + ": missing field: " + name);
  }
  return *it;
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected number");
  return j.get<double>();
}

int integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected integer");
  return j.get<int>();
}

}  // namespace

Point point_from_json(const MetricSpace& space, const Json& j, const std::string& where) {
  switch (space.kind()) {
    case SpaceKind::Star:
      return Point::on_star(integer(field(j, "ray", where), where + ".ray"),
                            number(field(j, "depth", where), where + ".depth"));
    case SpaceKind::General:
      if (j.is_object()) {
        return Point::on_edge(integer(field(j, "from", where), where + ".from"),
                              integer(field(j, "to", where), where + ".to"),
                              number(field(j, "traveled", where), where + ".traveled"));
      }
      return Point::at_node(integer(j, where));
    default: return Point::on_line(number(j, where));
  }
}

}  // namespace detail

using detail::Json;

std::string encode(const Instance& inst) {
  Json space;
  space["kind"] = to_string(inst.space.kind());
  switch (inst.space.kind()) {
    case SpaceKind::Ring: space["circumference"] = inst.space.circumference(); break;
    case SpaceKind::Star: space["rayCount"] = inst.space.ray_count(); break;
    case SpaceKind::General:
      space["matrix"] = inst.space.matrix();
      space["symmetric"] = inst.space.symmetric();
      break;
    default: break;
  }
  Json doc;
  doc["space"] = space;
  doc["variant"] = to_string(inst.variant);
  doc["knowledge"] = to_string(inst.knowledge);
  Json reqs = Json::array();
  for (const Request& r : inst.requests) {
    reqs.push_back(Json{{"id", r.id},
                        {"point", detail::point_to_json(inst.space, r.point)},
                        {"release", r.release}});
  }
  doc["requests"] = reqs;
  return doc.dump(2) + "\n";
}

Instance decode(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw DecodeError(std::string("malformed document: ") + e.what());
  }
  if (!doc.is_object()) throw DecodeError("document must be an object");

  Instance inst;
  const Json& space = detail::field(doc, "space", "");
  if (!space.is_object()) throw DecodeError("space: expected object");
  const Json& kind_j = detail::field(space, "kind", "space");
  if (!kind_j.is_string()) throw DecodeError("space.kind: expected string");
  SpaceKind kind;
  try {
    kind = space_kind_from_string(kind_j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw DecodeError(std::string("space.kind: ") + e.what());
  }
  try {
    switch (kind) {
      case SpaceKind::SemiLine: inst.space = MetricSpace::semi_line(); break;
      case SpaceKind::Line: inst.space = MetricSpace::line(); break;
      case SpaceKind::Ring:
        inst.space = MetricSpace::ring(
            detail::number(detail::field(space, "circumference", "space"), "space.circumference"));
        break;
      case SpaceKind::Star:
        inst.space = MetricSpace::star(
            detail::integer(detail::field(space, "rayCount", "space"), "space.rayCount"));
        break;
      case SpaceKind::General: {
        const Json& mj = detail::field(space, "matrix", "space");
        if (!mj.is_array()) throw DecodeError("space.matrix: expected array");
        Matrix m;
        for (std::size_t i = 0; i < mj.size(); ++i) {
          const std::string where = "space.matrix[" + std::to_string(i) + "]";
          if (!mj[i].is_array()) throw DecodeError(where + ": expected array");
          std::vector<double> row;
          for (std::size_t k = 0; k < mj[i].size(); ++k) {
            row.push_back(detail::number(mj[i][k], where + "[" + std::to_string(k) + "]"));
          }
          m.push_back(std::move(row));
        }
        bool symmetric = true;
        if (auto it = space.find("symmetric"); it != space.end()) {
          if (!it->is_boolean()) throw DecodeError("space.symmetric: expected boolean");
          symmetric = it->get<bool>();
        }
        inst.space = MetricSpace::general(std::move(m), symmetric);
        break;
      }
    }
  } catch (const std::invalid_argument& e) {
    throw DecodeError(std::string("space: ") + e.what());
  }

  const Json& variant = detail::field(doc, "variant", "");
  if (variant == "open") {
    inst.variant = Variant::Open;
  } else if (variant == "closed") {
    inst.variant = Variant::Closed;
  } else {
    throw DecodeError("variant: expected \"open\" or \"closed\"");
  }
  const Json& knowledge = detail::field(doc, "knowledge", "");
  if (knowledge == "locations") {
    inst.knowledge = Knowledge::LocationsKnown;
  } else if (knowledge == "count") {
    inst.knowledge = Knowledge::CountKnown;
  } else {
    throw DecodeError("knowledge: expected \"locations\" or \"count\"");
  }

  const Json& reqs = detail::field(doc, "requests", "");
  if (!reqs.is_array()) throw DecodeError("requests: expected array");
  for (std::size_t i = 0; i < reqs.size(); ++i) {
    const std::string where = "requests[" + std::to_string(i) + "]";
    const Json& rj = reqs[i];
    Request r;
    r.id = detail::integer(detail::field(rj, "id", where), where + ".id");
    r.point = detail::point_from_json(inst.space, detail::field(rj, "point", where),
                                      where + ".point");
    r.release = detail::number(detail::field(rj, "release", where), where + ".release");
    inst.requests.push_back(r);
  }
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return decode(ss.str());
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << encode(inst);
}

}  // namespace oltsp
