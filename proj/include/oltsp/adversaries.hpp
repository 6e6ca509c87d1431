#pragma once

#include <memory>
#include <optional>
#include <string>

#include "oltsp/engine.hpp"

namespace oltsp {

std::unique_ptr<Adversary> make_ring_open();
std::unique_ptr<Adversary> make_ring_closed_count(double epsilon);
std::unique_ptr<Adversary> make_star_count(double epsilon, Variant variant = Variant::Closed);
std::unique_ptr<Adversary> make_semiline_open_loc();
std::unique_ptr<Adversary> make_semiline_closed_count();
std::unique_ptr<Adversary> make_semiline_open_count();

// `name` may carry its epsilon after a colon (`star-count:0.5`); otherwise
// `epsilon` is used where one is needed. Throws std::invalid_argument.
std::unique_ptr<Adversary> make_adversary(const std::string& name,
                                          std::optional<double> epsilon = std::nullopt);
std::vector<std::string> adversary_names();

struct AdversaryRun {
  Instance materialized;
  Outcome outcome;
  double forced_completion = 0.0;
  double opt_completion = 0.0;
  double forced_ratio = 0.0;
};

// Plays the adversary against the policy and prices the realised instance
// with the exact oracle.
AdversaryRun run_adversary(Adversary& adversary, Policy& policy,
                           const SimulationOptions& opts = {});

}  // namespace oltsp
