#include "minreach/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/LU>

#include "minreach/errors.hpp"
#include "minreach/selector.hpp"

namespace minreach {

std::string_view to_string(ReductionVariant variant) {
  switch (variant) {
    case ReductionVariant::kLemma1:
      return "lemma1";
    case ReductionVariant::kLemma2:
      return "lemma2";
    case ReductionVariant::kLemma3:
      return "lemma3";
  }
  return "unknown";
}

ReductionVariant parse_variant(std::string_view name) {
  if (name == "lemma1") return ReductionVariant::kLemma1;
  if (name == "lemma2") return ReductionVariant::kLemma2;
  if (name == "lemma3") return ReductionVariant::kLemma3;
  throw InputError("unknown reduction variant '" + std::string(name) +
                   "' (expected lemma1, lemma2 or lemma3)");
}

bool ConeTarget::contains(const Vector& x) const {
  if (x.size() != m + p) return false;
  const double scale = std::max(1.0, x.lpNorm<Eigen::Infinity>());
  for (int j = 0; j < m; ++j) {
    if (std::abs(x(j)) > 1e-12 * scale) return false;
  }
  for (int i = 0; i < p; ++i) {
    if (!(x(m + i) > 0.0)) return false;
  }
  return true;
}

namespace {

bool strictly_diagonally_dominant(const Matrix& v) {
  for (Index r = 0; r < v.rows(); ++r) {
    const double off = v.row(r).cwiseAbs().sum() - std::abs(v(r, r));
    if (!(std::abs(v(r, r)) > off)) return false;
  }
  return true;
}

// The eigenvector matrix shared by both transfer reductions; `extra` trailing
// unit rows/columns are appended after the (m+p+1)-block.
Matrix eigenvector_matrix(const HittingSetInstance& instance, int extra) {
  const Matrix phi = incidence_matrix(instance);
  const int m = instance.m;
  const int p = instance.p();
  const int n = m + p + 1 + extra;
  Matrix v = Matrix::Zero(n, n);
  v.topLeftCorner(m, m) = 2.0 * Matrix::Identity(m, m);
  v.block(0, m + p, m, 1).setOnes();
  v.block(m, 0, p, m) = phi;
  v.block(m, m, p, p) = (m + 1.0) * Matrix::Identity(p, p);
  for (int k = m + p; k < n; ++k) v(k, k) = 1.0;
  return v;
}

ReducedTransfer reduce_transfer(const Matrix& v, const Vector& image) {
  if (!strictly_diagonally_dominant(v)) {
    throw Error("reduction matrix lost strict diagonal dominance");
  }
  const Index n = v.rows();
  const Eigen::PartialPivLU<Matrix> lu(v);
  Vector spectrum = Vector::LinSpaced(n, 1.0, static_cast<double>(n));
  Matrix a = lu.solve(spectrum.asDiagonal() * v);
  Vector chi = lu.solve(image);
  return ReducedTransfer{LtiSystem(std::move(a)), std::move(chi), v};
}

}  // namespace

ReducedTransfer build_lemma1(const HittingSetInstance& instance) {
  const Matrix v = eigenvector_matrix(instance, 0);
  return reduce_transfer(v, Vector::Ones(v.rows()));
}

ReducedTransfer build_lemma2(const HittingSetInstance& instance) {
  const Matrix v = eigenvector_matrix(instance, 1);
  Vector image = Vector::Ones(v.rows());
  image(v.rows() - 1) = 0.0;
  return reduce_transfer(v, image);
}

ReducedCone build_lemma3(const HittingSetInstance& instance) {
  const Matrix phi = incidence_matrix(instance);
  const int m = instance.m;
  const int p = instance.p();
  Matrix a = Matrix::Zero(m + p, m + p);
  a.bottomLeftCorner(p, m) = phi;
  return ReducedCone{LtiSystem(std::move(a)), ConeTarget{m, p}};
}

bool cone_k_reachable(const HittingSetInstance& instance,
                      const ActuatorSet& delta) {
  validate(instance);
  const int m = instance.m;
  if (delta.n() != m + instance.p()) {
    throw DimensionError("actuator set must range over m+p states");
  }
  for (int i = 0; i < instance.p(); ++i) {
    if (delta.contains(m + i + 1)) continue;
    const auto& set = instance.sets[i];
    const bool covered = std::any_of(set.begin(), set.end(),
                                     [&](int e) { return delta.contains(e); });
    if (!covered) return false;
  }
  return true;
}

namespace {

std::optional<ActuatorSet> min_cone_set(const HittingSetInstance& instance,
                                        int k_max) {
  const int n = instance.m + instance.p();
  std::optional<ActuatorSet> result;
  std::vector<int> combo;
  for (int k = 0; k <= std::min(k_max, n) && !result; ++k) {
    std::function<bool(int)> descend = [&](int start) -> bool {
      if (static_cast<int>(combo.size()) == k) {
        ActuatorSet delta(n, combo);
        if (!cone_k_reachable(instance, delta)) return false;
        result = std::move(delta);
        return true;
      }
      const int remaining = k - static_cast<int>(combo.size());
      for (int i = start; i <= n - remaining + 1; ++i) {
        combo.push_back(i);
        const bool stop = descend(i + 1);
        combo.pop_back();
        if (stop) return true;
      }
      return false;
    };
    descend(1);
  }
  return result;
}

}  // namespace

VerificationReport verify_reduction(const HittingSetInstance& instance,
                                    ReductionVariant variant, int k_max) {
  validate(instance);
  VerificationReport report;
  report.variant = variant;
  report.hitting_set = min_hitting_set(instance);
  report.hitting_set_size = static_cast<int>(report.hitting_set.size());

  if (variant == ReductionVariant::kLemma3) {
    report.n = instance.m + instance.p();
    check_brute_force_size(report.n);
    report.expected = report.hitting_set_size;
    if (auto best = min_cone_set(instance, k_max)) {
      report.min_actuators = static_cast<int>(best->size());
      report.optimal_sets.push_back(std::move(*best));
    }
  } else {
    const ReducedTransfer reduced = variant == ReductionVariant::kLemma1
                                        ? build_lemma1(instance)
                                        : build_lemma2(instance);
    report.n = static_cast<int>(reduced.system.n());
    check_brute_force_size(report.n);
    report.expected = report.hitting_set_size + 1;
    const double eps = kExactTolerance * reduced.chi.squaredNorm();
    report.optimal_sets =
        brute_force_all_opt(reduced.system, reduced.chi, eps, k_max);
    if (!report.optimal_sets.empty()) {
      report.min_actuators = static_cast<int>(report.optimal_sets[0].size());
    }
    if (variant == ReductionVariant::kLemma2) {
      for (const ActuatorSet& delta : report.optimal_sets) {
        if (is_controllable(reduced.system, delta)) ++report.controllable_optima;
      }
    }
  }

  if (!report.min_actuators) {
    report.pass = false;
    report.detail = "no actuator set with at most " + std::to_string(k_max) +
                    " states reaches the target";
  } else if (*report.min_actuators != report.expected) {
    report.pass = false;
    report.detail = "minimum actuator count " +
                    std::to_string(*report.min_actuators) + " != expected " +
                    std::to_string(report.expected);
  } else if (report.controllable_optima > 0) {
    report.pass = false;
    report.detail = std::to_string(report.controllable_optima) +
                    " optimal actuator set(s) render the system controllable";
  } else {
    report.pass = true;
    report.detail = "equivalence holds";
  }
  return report;
}

}  // namespace minreach
