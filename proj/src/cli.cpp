#include "minreach/cli.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "minreach/errors.hpp"
#include "minreach/io.hpp"
#include "minreach/netgen.hpp"
#include "minreach/reductions.hpp"
#include "minreach/selector.hpp"

namespace minreach::cli {

namespace {

using io::Json;
using Clock = std::chrono::steady_clock;

struct TransferArgs {
  std::string system_path;
  std::string x0;
  std::string x1;
  double t0 = 0.0;
  double t1 = 1.0;
};

void add_transfer_options(CLI::App* cmd, TransferArgs& args) {
  cmd->add_option("system", args.system_path, "System JSON file")->required();
  cmd->add_option("--x0", args.x0,
                  "Initial state: comma-separated reals or @file (default 0)");
  cmd->add_option("--x1", args.x1, "Final state: comma-separated reals or @file")
      ->required();
  cmd->add_option("--t0", args.t0, "Initial time (default 0)");
  cmd->add_option("--t1", args.t1, "Final time (default 1)");
}

struct LoadedTransfer {
  LtiSystem system;
  Vector v;
};

LoadedTransfer load_transfer(const TransferArgs& args) {
  LtiSystem sys = io::system_from_json(io::read_json_file(args.system_path));
  TransferSpec spec;
  spec.x0 = args.x0.empty() ? Vector(Vector::Zero(sys.n()))
                            : io::parse_vector_arg(args.x0);
  spec.x1 = io::parse_vector_arg(args.x1);
  spec.t0 = args.t0;
  spec.t1 = args.t1;
  Vector v = transfer_vector(sys, spec);
  return {std::move(sys), std::move(v)};
}

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Json run_report(const ActuatorSet& actuators, double residual_sq,
                double epsilon_used, int iterations, double wall_time_ms) {
  Json j;
  j["actuators"] = actuators.indices();
  j["cardinality"] = actuators.size();
  j["residual_sq"] = residual_sq;
  j["epsilon_used"] = epsilon_used;
  j["iterations"] = iterations;
  j["wall_time_ms"] = wall_time_ms;
  return j;
}

void write_trace(const std::string& path, const GreedyTrace& trace) {
  std::ostringstream csv;
  csv.precision(17);
  csv << "iteration,chosen_index,residual_sq\n";
  csv << 0 << ',' << ',' << trace.residuals[0] << '\n';
  for (std::size_t k = 0; k < trace.chosen.size(); ++k) {
    csv << k + 1 << ',' << trace.chosen[k] << ',' << trace.residuals[k + 1]
        << '\n';
  }
  io::write_text_file(path, csv.str());
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Minimal actuator selection for state and subset reachability"};
  app.name("minreach");
  app.require_subcommand(1);

  // Each subcommand sets `action`; it runs after a successful parse so all
  // library errors are mapped to exit codes in one place.
  std::function<int()> action;

  // reach
  TransferArgs reach_args;
  std::optional<double> reach_eps;
  bool reach_exact = false;
  double reach_accuracy = 1e-3;
  std::string reach_trace;
  auto* reach = app.add_subcommand("reach", "Select actuators for a state transfer");
  add_transfer_options(reach, reach_args);
  auto* eps_opt = reach->add_option("--eps", reach_eps,
                                    "Greedy epsilon-close selection at this epsilon");
  auto* exact_flag = reach->add_flag("--exact", reach_exact,
                                     "Bisection to exact feasibility");
  reach->add_option("--accuracy", reach_accuracy, "Bisection accuracy (default 1e-3)");
  reach->add_option("--trace", reach_trace, "Write per-iteration CSV trace");
  eps_opt->excludes(exact_flag);
  reach->callback([&] {
    action = [&]() -> int {
      if (!reach_eps && !reach_exact) {
        throw InputError("reach: one of --eps or --exact is required");
      }
      const auto start = Clock::now();
      const LoadedTransfer t = load_transfer(reach_args);
      Json report;
      GreedyTrace trace;
      if (reach_eps) {
        GreedyResult r = greedy_eps(t.system, t.v, *reach_eps);
        report = run_report(r.actuators, r.residual_sq(), *reach_eps,
                            static_cast<int>(r.trace.chosen.size()),
                            elapsed_ms(start));
        report["mode"] = "eps";
        trace = std::move(r.trace);
      } else {
        BisectionResult r = bisection_exact(t.system, t.v, reach_accuracy);
        report = run_report(r.actuators, r.residual_sq(), r.final_eps,
                            r.greedy_calls, elapsed_ms(start));
        report["mode"] = "exact";
        trace = std::move(r.trace);
      }
      if (!reach_trace.empty()) write_trace(reach_trace, trace);
      out << io::dump(report);
      return kExitOk;
    };
  });

  // subset-reach
  std::string sr_system;
  std::string sr_balls;
  std::string sr_trace;
  auto* subset = app.add_subcommand("subset-reach",
                                    "Select actuators reaching one of several balls");
  subset->add_option("system", sr_system, "System JSON file")->required();
  subset->add_option("balls", sr_balls, "Balls JSON file")->required();
  subset->add_option("--trace", sr_trace, "Write per-iteration CSV trace");
  subset->callback([&] {
    action = [&]() -> int {
      const auto start = Clock::now();
      const LtiSystem sys = io::system_from_json(io::read_json_file(sr_system));
      const std::vector<Ball> balls = io::balls_from_json(io::read_json_file(sr_balls));
      const SubsetReachResult r = subset_reach(sys, balls);
      Json report = run_report(r.actuators, r.trace.residuals.back(),
                               balls[r.ball_index - 1].radius_sq,
                               static_cast<int>(r.trace.chosen.size()),
                               elapsed_ms(start));
      report["ball_index"] = r.ball_index;
      if (!sr_trace.empty()) write_trace(sr_trace, r.trace);
      out << io::dump(report);
      return kExitOk;
    };
  });

  // oracle
  TransferArgs oracle_args;
  std::optional<double> oracle_eps;
  std::optional<int> oracle_kmax;
  auto* oracle = app.add_subcommand("oracle",
                                    "Exhaustive minimum actuator set (small systems)");
  add_transfer_options(oracle, oracle_args);
  oracle->add_option("--eps", oracle_eps,
                     "Residual bound (default: exact tolerance)");
  oracle->add_option("--kmax", oracle_kmax, "Largest cardinality tried (default n)");
  oracle->callback([&] {
    action = [&]() -> int {
      const auto start = Clock::now();
      const LoadedTransfer t = load_transfer(oracle_args);
      const double eps =
          oracle_eps.value_or(kExactTolerance * t.v.squaredNorm());
      const int k_max = oracle_kmax.value_or(static_cast<int>(t.system.n()));
      const auto best = brute_force_opt(t.system, t.v, eps, k_max);
      if (!best) {
        Json report;
        report["status"] = "infeasible within k_max";
        report["k_max"] = k_max;
        report["epsilon_used"] = eps;
        out << io::dump(report);
        return kExitOracleInfeasible;
      }
      out << io::dump(run_report(*best, residual(t.system, *best, t.v), eps, 0,
                                 elapsed_ms(start)));
      return kExitOk;
    };
  });

  // gen
  std::string gen_out;
  int star_leaves = 0;
  int er_n = 0;
  std::uint64_t er_seed = 0;
  auto* gen = app.add_subcommand("gen", "Generate a system file");
  gen->require_subcommand(1);
  gen->add_option("--out", gen_out, "Output path (default: standard output)");
  auto* gen_star = gen->add_subcommand("star", "Star network with N leaves");
  gen_star->add_option("leaves", star_leaves, "Number of leaves")->required();
  auto* gen_er = gen->add_subcommand("er", "Weighted Erdos-Renyi digraph");
  gen_er->add_option("n", er_n, "Number of states")->required();
  gen_er->add_option("seed", er_seed, "Random seed")->required();
  auto emit = [&](const Json& j) {
    if (gen_out.empty()) {
      out << io::dump(j);
    } else {
      io::write_text_file(gen_out, io::dump(j));
    }
  };
  gen_star->callback([&] {
    action = [&]() -> int {
      emit(io::system_to_json(star(star_leaves)));
      return kExitOk;
    };
  });
  gen_er->callback([&] {
    action = [&]() -> int {
      emit(io::system_to_json(erdos_renyi(er_n, RngSeed{er_seed}), er_seed));
      return kExitOk;
    };
  });

  // reduce
  std::string reduce_instance;
  std::string reduce_variant;
  std::string reduce_out;
  std::string reduce_target_out;
  auto* reduce = app.add_subcommand(
      "reduce", "Build the reachability instance of a hitting-set instance");
  reduce->add_option("instance", reduce_instance, "Instance JSON file")->required();
  reduce->add_option("--variant", reduce_variant, "lemma1, lemma2 or lemma3")
      ->required();
  reduce->add_option("--out", reduce_out, "System output path")->required();
  reduce->add_option("--target-out", reduce_target_out,
                     "Target output path (default: <out>.target.json)");
  reduce->callback([&] {
    action = [&]() -> int {
      const ReductionVariant variant = parse_variant(reduce_variant);
      const HittingSetInstance instance =
          io::instance_from_json(io::read_json_file(reduce_instance));
      Json target;
      target["variant"] = to_string(variant);
      Json system;
      if (variant == ReductionVariant::kLemma3) {
        const ReducedCone reduced = build_lemma3(instance);
        system = io::system_to_json(reduced.system);
        target["cone"] = {{"m", reduced.target.m}, {"p", reduced.target.p}};
      } else {
        const ReducedTransfer reduced = variant == ReductionVariant::kLemma1
                                            ? build_lemma1(instance)
                                            : build_lemma2(instance);
        system = io::system_to_json(reduced.system);
        target["chi"] = io::vector_to_json(reduced.chi);
      }
      const std::string target_path = reduce_target_out.empty()
                                          ? reduce_out + ".target.json"
                                          : reduce_target_out;
      io::write_text_file(reduce_out, io::dump(system));
      io::write_text_file(target_path, io::dump(target));
      return kExitOk;
    };
  });

  // verify
  std::string verify_instance;
  std::string verify_variant;
  std::optional<int> verify_kmax;
  auto* verify = app.add_subcommand(
      "verify", "Check a reduction's equivalence by brute force on both sides");
  verify->add_option("instance", verify_instance, "Instance JSON file")->required();
  verify->add_option("--variant", verify_variant, "lemma1, lemma2 or lemma3")
      ->required();
  verify->add_option("--kmax", verify_kmax,
                     "Largest actuator count tried (default 16)");
  verify->callback([&] {
    action = [&]() -> int {
      const ReductionVariant variant = parse_variant(verify_variant);
      const HittingSetInstance instance =
          io::instance_from_json(io::read_json_file(verify_instance));
      const int k_max = verify_kmax.value_or(static_cast<int>(kBruteForceCap));
      const VerificationReport r = verify_reduction(instance, variant, k_max);
      Json report;
      report["variant"] = to_string(r.variant);
      report["n"] = r.n;
      report["h"] = r.hitting_set_size;
      report["hitting_set"] = r.hitting_set;
      report["a"] = r.min_actuators ? Json(*r.min_actuators) : Json(nullptr);
      report["expected"] = r.expected;
      Json sets = Json::array();
      for (const ActuatorSet& s : r.optimal_sets) sets.push_back(s.indices());
      report["optimal_sets"] = std::move(sets);
      if (variant == ReductionVariant::kLemma2) {
        report["controllable_optima"] = r.controllable_optima;
      }
      report["result"] = r.pass ? "PASS" : "FAIL";
      report["detail"] = r.detail;
      out << io::dump(report);
      return r.pass ? kExitOk : kExitVerificationFailed;
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    return action ? action() : kExitInput;
  } catch (const InfeasibleError& e) {
    err << "minreach: numerically infeasible: " << e.what()
        << " (residual_sq " << e.residual_sq() << ")\n";
    return kExitInfeasible;
  } catch (const Error& e) {
    err << "minreach: " << e.what() << '\n';
    return kExitInput;
  } catch (const Json::exception& e) {
    err << "minreach: " << e.what() << '\n';
    return kExitInput;
  }
}

}  // namespace minreach::cli
