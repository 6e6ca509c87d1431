#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace oltsp {

// Global comparison tolerance for lengths and times.
inline constexpr double kEps = 1e-9;

// Default cap on engine events before a run is declared non-terminating.
inline constexpr long kDefaultStepBudget = 1'000'000;

enum class Variant { Open, Closed };
enum class Knowledge { LocationsKnown, CountKnown };

const char* to_string(Variant v);
const char* to_string(Knowledge k);

// Invariant checks return a list of human-readable violations; empty means ok.
using Violations = std::vector<std::string>;

inline bool approx_eq(double a, double b, double tol = kEps) {
  return a - b <= tol && b - a <= tol;
}

}  // namespace oltsp
