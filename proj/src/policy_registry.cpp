#include <stdexcept>

#include "oltsp/algorithms.hpp"

namespace oltsp {

namespace {

KnapsackMode parse_star_mode(const std::string& name) {
  const std::string base = "alg3-star";
  if (name == base || name == base + ":exact") return KnapsackMode::Exact();
  const std::string prefix = base + ":fptas=";
  if (name.rfind(prefix, 0) == 0) {
    const std::string num = name.substr(prefix.size());
    std::size_t used = 0;
    double eps = 0.0;
    try {
      eps = std::stod(num, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != num.size() || num.empty() || !(eps > 0.0) || !(eps < 1.0)) {
      throw std::invalid_argument("bad fptas epsilon in '" + name + "' (expected 0 < EPS < 1)");
    }
    return KnapsackMode::Fptas(eps);
  }
  throw std::invalid_argument("unknown policy: " + name);
}

}  // namespace

PolicyFactory policy_factory(const std::string& name) {
  if (name == "alg1") return make_alg1;
  if (name == "alg2-ring") return make_alg2_ring;
  if (name.rfind("alg3-star", 0) == 0) {
    const KnapsackMode mode = parse_star_mode(name);
    return [mode] { return make_alg3_star(mode); };
  }
  if (name == "alg4-semiline") return make_alg4_semiline;
  if (name == "alg5-semiline") return make_alg5_semiline;
  if (name == "wait-all") return make_wait_all;
  if (name == "greedy") return make_greedy;
  throw std::invalid_argument("unknown policy: " + name);
}

std::vector<std::string> policy_names() {
  return {"alg1", "alg2-ring", "alg3-star", "alg4-semiline", "alg5-semiline",
          "wait-all", "greedy"};
}

std::string policy_scope_error(const std::string& name, SpaceKind kind, Variant variant) {
  auto need = [&](SpaceKind k, Variant v) -> std::string {
    if (kind == k && variant == v) return {};
    return "policy '" + name + "' runs only on " + to_string(v) + " " + to_string(k) +
           " instances (got " + to_string(variant) + " " + to_string(kind) + ")";
  };
  if (name == "alg2-ring") return need(SpaceKind::Ring, Variant::Closed);
  if (name.rfind("alg3-star", 0) == 0) return need(SpaceKind::Star, Variant::Closed);
  if (name == "alg4-semiline") return need(SpaceKind::SemiLine, Variant::Open);
  if (name == "alg5-semiline") return need(SpaceKind::SemiLine, Variant::Closed);
  return {};
}

}  // namespace oltsp
