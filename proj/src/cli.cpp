#include "oltsp/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "oltsp/adversaries.hpp"
#include "oltsp/algorithms.hpp"
#include "oltsp/oracle.hpp"
#include "oltsp/report.hpp"

namespace oltsp {

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

// Usage problems detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Variant parse_variant(const std::string& s) {
  if (s == "open") return Variant::Open;
  if (s == "closed") return Variant::Closed;
  throw UsageError("variant must be open or closed (got '" + s + "')");
}

std::unique_ptr<Policy> build_policy(const std::string& name) {
  try {
    return policy_factory(name)();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

// Rejects pairings before any simulation starts.
void check_pairing(const std::string& name, const Policy& policy, SpaceKind kind, Variant variant,
                   Knowledge knowledge) {
  if (std::string e = policy_scope_error(name, kind, variant); !e.empty()) throw UsageError(e);
  if (std::string e = compatibility_error(policy, knowledge); !e.empty()) throw UsageError(e);
}

Instance read_instance(const std::string& path) {
  try {
    Instance inst = load_instance(path);
    if (const Violations v = validate_instance(inst); !v.empty()) {
      std::string msg = "invalid instance " + path + ":";
      for (const std::string& s : v) msg += "\n  " + s;
      throw UsageError(msg);
    }
    return inst;
  } catch (const DecodeError& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
}

std::string order_text(const std::vector<int>& order) {
  std::string s;
  for (std::size_t i = 0; i < order.size(); ++i) s += (i ? " " : "") + std::to_string(order[i]);
  return s;
}

int report_violations(const Violations& v, std::ostream& err) {
  if (v.empty()) return kOk;
  err << "outcome failed verification:\n";
  for (const std::string& s : v) err << "  " << s << "\n";
  return kFail;
}

int cmd_simulate(const std::string& path, const std::string& policy_name, bool trace,
                 std::ostream& out, std::ostream& err) {
  const Instance inst = read_instance(path);
  auto policy = build_policy(policy_name);
  check_pairing(policy_name, *policy, inst.space.kind(), inst.variant, inst.knowledge);
  const Outcome res = simulate(inst, *policy);
  out << "policy " << policy_name << "\n";
  out << "completion " << format_number(res.completion) << "\n";
  if (inst.size() <= kOracleCap) {
    const double opt = opt_makespan(inst).makespan;
    out << "opt " << format_number(opt) << "\n";
    out << "ratio " << format_number(opt > 0.0 ? res.completion / opt : 1.0) << "\n";
  } else {
    out << "opt unavailable (n > " << kOracleCap << ")\n";
  }
  if (trace) out << encode_outcome(inst.space, res);
  return report_violations(verify_outcome(inst, res), err);
}

int cmd_oracle(const std::string& path, std::ostream& out) {
  const Instance inst = read_instance(path);
  if (inst.size() > kOracleCap) {
    throw UsageError("oracle supports at most " + std::to_string(kOracleCap) + " requests");
  }
  const OptResult r = opt_makespan(inst);
  out << "makespan " << format_number(r.makespan) << "\n";
  out << "order " << order_text(r.order) << "\n";
  out << "times";
  for (double t : r.step_times) out << " " << format_number(t);
  out << "\n";
  return kOk;
}

struct GenOptions {
  std::string kind;
  int n = 0;
  std::uint64_t seed = 0;
  double horizon = 0.0;
  std::string variant = "closed";
  int rays = 4;
  double circumference = 1.0;
  bool asymmetric = false;
  bool count_known = false;
};

GenParams to_params(const GenOptions& g) {
  GenParams p;
  p.n = g.n;
  p.seed = g.seed;
  p.release_horizon = g.horizon;
  p.variant = parse_variant(g.variant);
  p.knowledge = g.count_known ? Knowledge::CountKnown : Knowledge::LocationsKnown;
  p.ray_count = g.rays;
  p.circumference = g.circumference;
  p.symmetric = !g.asymmetric;
  return p;
}

SpaceKind to_kind(const std::string& s) {
  try {
    return space_kind_from_string(s);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

int cmd_gen(const GenOptions& g, const std::string& out_path, std::ostream& out) {
  Instance inst;
  try {
    inst = generate_random(to_params(g), to_kind(g.kind));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (out_path.empty()) {
    out << encode(inst);
  } else {
    save_instance(inst, out_path);
  }
  return kOk;
}

int cmd_batch(const GenOptions& g, const std::string& policy_name, int count, double bound,
              const std::string& format, const std::string& out_path, std::ostream& out,
              std::ostream& err) {
  if (format != "csv" && format != "json") throw UsageError("format must be csv or json");
  if (count < 0) throw UsageError("count must be >= 0");
  const SpaceKind kind = to_kind(g.kind);
  GenParams base = to_params(g);
  {
    auto probe = build_policy(policy_name);
    check_pairing(policy_name, *probe, kind, base.variant, base.knowledge);
  }
  if (g.n > kOracleCap) throw UsageError("batch needs n <= " + std::to_string(kOracleCap));

  std::vector<RatioRow> rows;
  int code = kOk;
  for (int i = 0; i < count; ++i) {
    GenParams p = base;
    p.seed = g.seed + static_cast<std::uint64_t>(i);
    const Instance inst = generate_random(p, kind);
    auto policy = build_policy(policy_name);
    const Outcome res = simulate(inst, *policy);
    if (report_violations(verify_outcome(inst, res), err) != kOk) {
      err << "  (instance seed " << p.seed << ")\n";
      code = kFail;
    }
    const double opt = opt_makespan(inst).makespan;
    RatioRow row{std::to_string(p.seed), policy_name, res.completion, opt,
                 opt > 0.0 ? res.completion / opt : 1.0};
    if (row.ratio > bound + kEps) {
      err << "bound violated: seed " << p.seed << " ratio " << format_number(row.ratio) << " > "
          << format_number(bound) << "\n";
    }
    rows.push_back(row);
  }
  std::ostringstream prov;
  prov << "batch kind=" << g.kind << " variant=" << g.variant << " policy=" << policy_name
       << " count=" << count << " seed=" << g.seed << " n=" << g.n
       << " horizon=" << format_number(g.horizon);
  if (kind == SpaceKind::Star) prov << " rays=" << g.rays;
  if (kind == SpaceKind::Ring) prov << " circumference=" << format_number(g.circumference);
  if (kind == SpaceKind::General) prov << " symmetric=" << (g.asymmetric ? "false" : "true");
  const std::string text = report(rows, format, bound, prov.str());
  if (out_path.empty()) {
    out << text;
  } else {
    std::ofstream f(out_path);
    if (!f) throw UsageError("cannot write " + out_path);
    f << text;
  }
  if (!summarize(rows, bound).pass) code = kFail;
  return code;
}

int cmd_adversary(const std::string& name, const std::string& policy_name,
                  std::optional<double> epsilon, bool trace, std::ostream& out,
                  std::ostream& err) {
  std::unique_ptr<Adversary> adv;
  try {
    adv = make_adversary(name, epsilon);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  auto policy = build_policy(policy_name);
  const Announcement ann = adv->announce();
  check_pairing(policy_name, *policy, ann.space.kind(), ann.variant, ann.knowledge);
  const AdversaryRun run = run_adversary(*adv, *policy);
  out << "adversary " << adv->name() << "\n";
  out << "policy " << policy_name << "\n";
  out << "requests " << run.materialized.size() << "\n";
  out << "forcedCompletion " << format_number(run.forced_completion) << "\n";
  out << "optCompletion " << format_number(run.opt_completion) << "\n";
  out << "forcedRatio " << format_number(run.forced_ratio) << "\n";
  if (trace) {
    out << encode(run.materialized);
    out << encode_outcome(run.materialized.space, run.outcome);
  }
  return report_violations(verify_outcome(run.materialized, run.outcome), err);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Online TSP with known locations: simulations, oracle and adversaries"};
  app.name("oltsp");
  app.require_subcommand(1);

  std::string instance_path;
  std::string policy_name;
  bool trace = false;
  auto* sim = app.add_subcommand("simulate", "Run one policy on an instance file");
  sim->add_option("--instance", instance_path, "Instance file")->required();
  sim->add_option("--policy", policy_name, "Policy name")->required();
  sim->add_flag("--trace", trace, "Print the trajectory");

  auto* orc = app.add_subcommand("oracle", "Offline optimum of an instance file");
  orc->add_option("--instance", instance_path, "Instance file")->required();

  GenOptions g;
  std::string out_path;
  auto add_gen = [&](CLI::App* c) {
    c->add_option("--kind", g.kind, "semiline|line|ring|star|general")->required();
    c->add_option("--seed", g.seed, "Random seed")->required();
    c->add_option("--horizon", g.horizon, "Largest release time");
    c->add_option("--variant", g.variant, "open|closed");
    c->add_option("--rays", g.rays, "Star ray count");
    c->add_option("--circumference", g.circumference, "Ring circumference");
    c->add_flag("--asymmetric", g.asymmetric, "General: asymmetric distances");
    c->add_flag("--count-known", g.count_known, "Only the request count is known up front");
    c->add_option("--out", out_path, "Output file (default stdout)");
  };
  auto* gen = app.add_subcommand("gen", "Generate a seeded random instance");
  add_gen(gen);
  gen->add_option("--n", g.n, "Request count")->required();

  int count = 0;
  double bound = 0.0;
  std::string format = "csv";
  auto* batch = app.add_subcommand("batch", "Ratio experiment over seeded instances");
  add_gen(batch);
  g.n = 6;
  g.horizon = 2.0;
  batch->add_option("--n", g.n, "Requests per instance (default 6)");
  batch->add_option("--policy", policy_name, "Policy name")->required();
  batch->add_option("--count", count, "Instance count")->required();
  batch->add_option("--bound", bound, "Ratio bound to check")->required();
  batch->add_option("--format", format, "csv|json");

  std::string adversary_name;
  std::optional<double> epsilon;
  auto* adv = app.add_subcommand("adversary", "Play an adaptive adversary against a policy");
  adv->add_option("--name", adversary_name, "Adversary name")->required();
  adv->add_option("--policy", policy_name, "Policy name")->required();
  adv->add_option("--epsilon", epsilon, "Adversary epsilon");
  adv->add_flag("--trace", trace, "Print the realised instance and trajectory");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    if (sim->parsed()) return cmd_simulate(instance_path, policy_name, trace, out, err);
    if (orc->parsed()) return cmd_oracle(instance_path, out);
    if (gen->parsed()) return cmd_gen(g, out_path, out);
    if (batch->parsed()) {
      return cmd_batch(g, policy_name, count, bound, format, out_path, out, err);
    }
    if (adv->parsed()) return cmd_adversary(adversary_name, policy_name, epsilon, trace, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const SimulationError& e) {
    err << "simulation failed: " << e.what() << "\n" << e.trace();
    return kFail;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}

}  // namespace oltsp
