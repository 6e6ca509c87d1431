#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "oltsp/common.hpp"
#include "oltsp/metric.hpp"

namespace oltsp {

struct Request {
  int id = 0;
  Point point;
  double release = 0.0;

  friend bool operator==(const Request&, const Request&) = default;
};

struct Instance {
  MetricSpace space;
  Variant variant = Variant::Closed;
  Knowledge knowledge = Knowledge::LocationsKnown;
  std::vector<Request> requests;  // ids 1..n in order

  int size() const { return static_cast<int>(requests.size()); }
  const Request& request(int id) const { return requests.at(static_cast<std::size_t>(id - 1)); }
  double max_release() const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

// Type invariants of the instance plus those of its space.
Violations validate_instance(const Instance& inst);

// Canonical JSON document; see README for the schema.
class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string encode(const Instance& inst);
Instance decode(const std::string& text);

Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

struct GenParams {
  int n = 0;
  std::uint64_t seed = 0;
  double release_horizon = 0.0;
  Variant variant = Variant::Closed;
  Knowledge knowledge = Knowledge::LocationsKnown;
  // Kind-specific sizes.
  double extent = 1.0;         // semi-line / line / star ray length bound
  double circumference = 1.0;  // ring
  int ray_count = 4;           // star
  bool symmetric = true;       // general
};

// Deterministic in (params, kind). General instances place n points in the
// unit square; asymmetric ones add an uphill surcharge, which keeps the
// triangle inequality.
Instance generate_random(const GenParams& params, SpaceKind kind);

// Renumber requests 1..n; rings and semi-lines are sorted by position first
// (stable, ties by release).
void canonicalize(Instance& inst);

}  // namespace oltsp
