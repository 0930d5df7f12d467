// Acceptance suite: one line per criterion, "[PASS]" or "[FAIL]", followed by
// the measured numbers. Exit status is non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "minreach/cli.hpp"
#include "minreach/io.hpp"
#include "minreach/netgen.hpp"
#include "minreach/reductions.hpp"
#include "minreach/selector.hpp"
#include "../test_support.hpp"

namespace {

using namespace minreach;
using minreach::testing::Gen;
using Clock = std::chrono::steady_clock;
namespace fs = std::filesystem;

// Pinned limits.
constexpr double kStarTimeLimitS = 1.0;
constexpr double kGreedyTimeLimitS = 30.0;
constexpr double kReductionTimeLimitS = 60.0;
constexpr double kErTimeLimitS = 300.0;
constexpr double kErMinOneSparse = 0.90;
constexpr double kContractionSlack = 1e-9;
constexpr double kPythagorasRel = 1e-9;
constexpr double kIdempotenceRel = 1e-12;
constexpr double kMonotoneAbs = 1e-9;
constexpr double kScaleRel = 1e-9;
constexpr double kSemigroupRel = 1e-9;
constexpr int kGreedyCorpus = 250;
constexpr int kInstanceCorpus = 60;
constexpr int kPropertyCases = 200;
constexpr int kOracleCases = 150;

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

struct CliResult {
  int code;
  io::Json report;
};

CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  io::Json report;
  if (!out.str().empty()) report = io::Json::parse(out.str());
  return {code, report};
}

class Scratch {
 public:
  Scratch() {
    dir_ = fs::temp_directory_path() / "minreach_acceptance";
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  ~Scratch() { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  fs::path dir_;
};

Verdict star_reproduction(const Scratch& scratch) {
  const std::string sys = scratch.path("star4.json");
  io::write_text_file(sys, io::dump(io::system_to_json(star(4))));
  struct Case {
    const char* x1;
    std::vector<int> want;
  };
  const std::vector<Case> cases = {{"1,0,0,0,0", {1}},
                                   {"0,1,1,0,0", {2, 3}},
                                   {"1,1,1,0,0", {2, 3}}};
  const auto start = Clock::now();
  bool ok = true;
  std::string sets;
  for (const Case& c : cases) {
    const CliResult r =
        run_cli({"reach", sys, "--x1", c.x1, "--exact", "--accuracy", "0.001"});
    if (r.code != 0) {
      ok = false;
      sets += " exit=" + std::to_string(r.code);
      continue;
    }
    const auto got = r.report["actuators"].get<std::vector<int>>();
    const Vector v = io::parse_vector_arg(c.x1);
    const bool feasible = r.report["residual_sq"].get<double>() <=
                          kExactTolerance * v.squaredNorm();
    ok = ok && got == c.want && feasible;
    sets += " " + r.report["actuators"].dump();
  }
  const double elapsed = seconds_since(start);
  ok = ok && elapsed < kStarTimeLimitS;
  return {ok, "sets" + sets + fmt(", %.3f s (limit %.0f s)", elapsed, kStarTimeLimitS)};
}

struct GreedyCase {
  int greedy_size;
  int opt_size;
  double norm_sq;
  double eps;
  std::vector<double> residuals;
};

std::vector<GreedyCase> greedy_corpus(double& elapsed) {
  Gen gen(20240601);
  std::vector<GreedyCase> corpus;
  const auto start = Clock::now();
  for (int trial = 0; trial < kGreedyCorpus; ++trial) {
    const Index n = gen.integer(1, 7);
    const LtiSystem sys(gen.normal_matrix(n, n));
    const Vector v = gen.normal_vector(n);
    const double norm_sq = v.squaredNorm();
    const double eps = 1e-3 * norm_sq;
    const GreedyResult g = greedy_eps(sys, v, eps);
    const auto opt = brute_force_opt(sys, v, kExactTolerance * norm_sq, static_cast<int>(n));
    corpus.push_back({static_cast<int>(g.actuators.size()),
                      opt ? static_cast<int>(opt->size()) : -1, norm_sq, eps,
                      g.trace.residuals});
  }
  elapsed = seconds_since(start);
  return corpus;
}

Verdict greedy_bound(const std::vector<GreedyCase>& corpus, double elapsed) {
  int violations = 0;
  int worst_ratio_num = 0;
  int worst_ratio_den = 1;
  for (const GreedyCase& c : corpus) {
    const int factor = static_cast<int>(std::ceil(std::log(c.norm_sq / c.eps)));
    if (c.opt_size < 0 || c.greedy_size > factor * c.opt_size) ++violations;
    if (c.opt_size > 0 &&
        c.greedy_size * worst_ratio_den > worst_ratio_num * c.opt_size) {
      worst_ratio_num = c.greedy_size;
      worst_ratio_den = c.opt_size;
    }
  }
  const bool ok = violations == 0 && elapsed < kGreedyTimeLimitS;
  return {ok, std::to_string(corpus.size()) + " systems, " +
                  std::to_string(violations) + " violations, worst |greedy|/|opt| = " +
                  std::to_string(worst_ratio_num) + "/" + std::to_string(worst_ratio_den) +
                  fmt(", %.2f s (limit %.0f s)", elapsed, kGreedyTimeLimitS)};
}

Verdict greedy_contraction(const std::vector<GreedyCase>& corpus) {
  int violations = 0;
  int violating_systems = 0;
  double worst_excess = 0.0;
  for (const GreedyCase& c : corpus) {
    if (c.opt_size <= 0) continue;
    bool bad = false;
    const double rate = 1.0 - 1.0 / c.opt_size;
    for (std::size_t k = 0; k < c.residuals.size(); ++k) {
      const double bound = std::pow(rate, static_cast<double>(k)) * c.norm_sq;
      const double excess = c.residuals[k] - bound;
      if (excess > kContractionSlack) {
        ++violations;
        bad = true;
        worst_excess = std::max(worst_excess, excess / c.norm_sq);
      }
    }
    violating_systems += bad ? 1 : 0;
  }
  return {violations == 0,
          std::to_string(corpus.size()) + " traces, " + std::to_string(violations) +
              " violating steps in " + std::to_string(violating_systems) +
              " systems" + fmt(", worst excess %.3g of ||v||^2", worst_excess)};
}

Verdict reduction_family(ReductionVariant variant, bool check_time) {
  Gen gen(777);
  const auto start = Clock::now();
  int failures = 0;
  int controllable = 0;
  std::string first_failure;
  for (int trial = 0; trial < kInstanceCorpus; ++trial) {
    const HittingSetInstance inst = testing::random_instance(gen, 4, 3);
    const VerificationReport r = verify_reduction(inst, variant, static_cast<int>(kBruteForceCap));
    controllable += r.controllable_optima;
    if (!r.pass) {
      ++failures;
      if (first_failure.empty()) first_failure = "; first failure: " + r.detail;
    }
  }
  const double elapsed = seconds_since(start);
  const bool ok = failures == 0 && (!check_time || elapsed < kReductionTimeLimitS);
  std::string detail = std::to_string(kInstanceCorpus) + " instances, " +
                       std::to_string(failures) + " failures";
  if (variant == ReductionVariant::kLemma2) {
    detail += ", " + std::to_string(controllable) + " controllable optima";
  }
  detail += fmt(", %.2f s", elapsed) + first_failure;
  if (check_time) detail += fmt(" (limit %.0f s)", kReductionTimeLimitS);
  return {ok, detail};
}

Verdict erdos_renyi_sparsity(const Scratch& scratch) {
  const auto start = Clock::now();
  int runs = 0;
  int one_sparse = 0;
  int errors = 0;
  std::string per_size;
  for (int n : {10, 25, 50, 100}) {
    int size_hits = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const std::string sys = scratch.path("er.json");
      const std::string target = scratch.path("target.json");
      if (run_cli({"gen", "--out", sys, "er", std::to_string(n), std::to_string(seed)}).code != 0) {
        ++errors;
        continue;
      }
      io::write_text_file(
          target, io::dump(io::vector_to_json(random_target(n, RngSeed{seed}))));
      const CliResult r =
          run_cli({"reach", sys, "--x1", "@" + target, "--exact", "--accuracy", "1"});
      ++runs;
      if (r.code != 0) {
        ++errors;
        continue;
      }
      if (r.report["cardinality"].get<int>() == 1) {
        ++one_sparse;
        ++size_hits;
      }
    }
    per_size += " n=" + std::to_string(n) + ":" + std::to_string(size_hits) + "/20";
  }
  const double elapsed = seconds_since(start);
  const double rate = runs > 0 ? static_cast<double>(one_sparse) / runs : 0.0;
  const bool ok = rate >= kErMinOneSparse && elapsed < kErTimeLimitS;
  return {ok, std::to_string(one_sparse) + "/" + std::to_string(runs) + " one-sparse (" +
                  fmt("%.1f%%, need %.0f%%)", 100.0 * rate, 100.0 * kErMinOneSparse) +
                  per_size + ", " + std::to_string(errors) + " errors" +
                  fmt(", %.1f s (limit %.0f s)", elapsed, kErTimeLimitS)};
}

// Runs `cases` randomized checks; each returns true on success.
int count_failures(int cases, const std::function<bool(Gen&)>& check, std::uint64_t seed) {
  Gen gen(seed);
  int failures = 0;
  for (int k = 0; k < cases; ++k) failures += check(gen) ? 0 : 1;
  return failures;
}

Verdict property_suites() {
  struct Suite {
    const char* name;
    std::function<bool(Gen&)> check;
  };
  const std::vector<Suite> suites = {
      {"pythagoras",
       [](Gen& gen) {
         const Index n = gen.integer(1, 12);
         OrthoBasis basis(n);
         const Index k = gen.integer(0, n);
         for (Index c = 0; c < k; ++c) basis.extend(gen.normal_vector(n));
         const Vector v = gen.normal_vector(n);
         const double total = basis.project_norm_sq(v) + (v - basis.project(v)).squaredNorm();
         return std::abs(total - v.squaredNorm()) <= kPythagorasRel * v.squaredNorm();
       }},
      {"idempotence",
       [](Gen& gen) {
         const Index n = gen.integer(1, 12);
         OrthoBasis basis(n);
         const Index k = gen.integer(0, n);
         for (Index c = 0; c < k; ++c) basis.extend(gen.normal_vector(n));
         const Vector v = gen.normal_vector(n);
         return std::abs(basis.project_norm_sq(v) - basis.project_norm_sq(basis.project(v))) <=
                kIdempotenceRel * std::max(1.0, v.squaredNorm());
       }},
      {"monotonicity",
       [](Gen& gen) {
         const Index n = gen.integer(1, 8);
         const LtiSystem sys(gen.sparse_matrix(n, gen.uniform()));
         const Vector v = gen.normal_vector(n);
         const ActuatorSet small = gen.subset(n, 0.4);
         ActuatorSet large = small;
         for (int i = 1; i <= n; ++i)
           if (gen.coin(0.4)) large = large.with(i);
         return residual(sys, small, v) >= residual(sys, large, v) - kMonotoneAbs;
       }},
      {"scale invariance",
       [](Gen& gen) {
         const Index n = gen.integer(1, 8);
         const LtiSystem sys(gen.sparse_matrix(n, 0.3));
         const Vector v = gen.normal_vector(n);
         const ActuatorSet delta = gen.subset(n, 0.3);
         const double base = residual(sys, delta, v);
         for (double c : {0.5, 3.0}) {
           const double want = c * c * base;
           if (std::abs(residual(sys, delta, c * v) - want) > kScaleRel * std::max(1.0, want))
             return false;
         }
         return true;
       }},
      {"greedy determinism",
       [](Gen& gen) {
         const Index n = gen.integer(1, 10);
         Matrix a = Matrix::Zero(n, n);
         for (Index r = 0; r < n; ++r)
           for (Index c = 0; c < n; ++c)
             if (gen.coin(0.3)) a(r, c) = gen.integer(-1, 1);
         Vector v(n);
         for (Index i = 0; i < n; ++i) v(i) = gen.integer(-1, 1);
         if (v.squaredNorm() == 0.0) v(0) = 1.0;
         const double eps = 1e-6 * v.squaredNorm();
         const GreedyResult first = greedy_eps(LtiSystem(a), v, eps);
         const GreedyResult second = greedy_eps(LtiSystem(a), v, eps);
         return first.trace.chosen == second.trace.chosen &&
                first.trace.residuals == second.trace.residuals;
       }},
      {"mat_exp semigroup",
       [](Gen& gen) {
         const Index n = gen.integer(1, 6);
         const Matrix a = 0.5 * gen.normal_matrix(n, n);
         const double s = 4.0 * gen.uniform() - 2.0;
         const double t = 4.0 * gen.uniform() - 2.0;
         const Matrix rhs = mat_exp(a, s + t);
         return (mat_exp(a, s) * mat_exp(a, t) - rhs).norm() <= kSemigroupRel * rhs.norm();
       }},
  };
  bool ok = true;
  std::string detail;
  std::uint64_t seed = 90;
  for (const Suite& suite : suites) {
    const int failures = count_failures(kPropertyCases, suite.check, seed++);
    ok = ok && failures == 0;
    detail += std::string(detail.empty() ? "" : ", ") + suite.name + " " +
              std::to_string(failures) + "/" + std::to_string(kPropertyCases);
  }
  return {ok, detail + " failed"};
}

Verdict oracle_equivalence() {
  Gen gen(4242);
  int compared = 0;
  int disagreements = 0;
  int in_band = 0;
  while (compared < kOracleCases) {
    const Index n = gen.integer(1, 9);
    const LtiSystem sys(gen.sparse_matrix(n, 0.25));
    const ActuatorSet delta = gen.subset(n, 0.3);
    Vector v = gen.normal_vector(n);
    if (gen.coin(0.5)) {
      const Matrix k = testing::stacked_krylov(sys, delta);
      if (k.cols() > 0) v = k * gen.normal_vector(k.cols());
    }
    const double norm_sq = v.squaredNorm();
    if (norm_sq == 0.0) continue;
    const double oracle = testing::oracle_residual(sys, delta, v);
    if (oracle >= 0.5 * kExactTolerance * norm_sq && oracle <= 2.0 * kExactTolerance * norm_sq) {
      ++in_band;
      continue;
    }
    ++compared;
    if (is_feasible(sys, delta, v).feasible != (oracle <= kExactTolerance * norm_sq)) {
      ++disagreements;
    }
  }
  return {disagreements == 0, std::to_string(compared) + " triples compared, " +
                                  std::to_string(disagreements) + " disagreements, " +
                                  std::to_string(in_band) + " skipped in the ambiguity band"};
}

}  // namespace

int main() {
  const Scratch scratch;
  int failed = 0;
  auto report = [&](int id, const char* title, const Verdict& v) {
    std::printf("[%s] %d %s: %s\n", v.pass ? "PASS" : "FAIL", id, title, v.detail.c_str());
    std::fflush(stdout);
    failed += v.pass ? 0 : 1;
  };

  report(1, "star network exact selection", star_reproduction(scratch));
  double greedy_time = 0.0;
  const std::vector<GreedyCase> corpus = greedy_corpus(greedy_time);
  report(2, "greedy logarithmic bound", greedy_bound(corpus, greedy_time));
  report(3, "greedy residual contraction", greedy_contraction(corpus));
  report(4, "transfer reduction, min actuators = MHS + 1",
         reduction_family(ReductionVariant::kLemma1, true));
  report(5, "bordered transfer reduction, MHS + 1 and uncontrollable optima",
         reduction_family(ReductionVariant::kLemma2, false));
  report(6, "cone reduction, min actuators = MHS",
         reduction_family(ReductionVariant::kLemma3, false));
  report(7, "Erdos-Renyi one-sparse exact selection", erdos_renyi_sparsity(scratch));
  report(8, "property suites", property_suites());
  report(9, "feasibility vs least-squares oracle", oracle_equivalence());

  std::printf("%d of 9 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
