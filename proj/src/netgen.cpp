#include "minreach/netgen.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "minreach/errors.hpp"

namespace minreach {

Rng::Rng(RngSeed seed, RngStream stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed.value & 0xffffffffu),
                    static_cast<std::uint32_t>(seed.value >> 32),
                    static_cast<std::uint32_t>(stream)};
  engine_.seed(seq);
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u = 0.0;
  double v = 0.0;
  double s = 0.0;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * factor;
  has_spare_ = true;
  return u * factor;
}

LtiSystem star(int n_leaves) {
  if (n_leaves < 1) throw InputError("star network needs at least one leaf");
  const int n = n_leaves + 1;
  Matrix a = Matrix::Zero(n, n);
  a.diagonal().setConstant(-1.0);
  a.row(0).tail(n_leaves).setOnes();
  return LtiSystem(std::move(a));
}

double erdos_renyi_edge_probability(int n) {
  if (n < 2) throw InputError("Erdos-Renyi graph needs n >= 2");
  return std::min(1.0, 2.0 * std::log(static_cast<double>(n)) / n);
}

LtiSystem erdos_renyi(int n, RngSeed seed) {
  const double p = erdos_renyi_edge_probability(n);
  Rng edges(seed, RngStream::kEdges);
  Rng weights(seed, RngStream::kWeights);
  Matrix a = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (edges.uniform() < p) a(i, j) = weights.normal();
    }
  }
  return LtiSystem(std::move(a));
}

Vector random_target(int n, RngSeed seed) {
  if (n < 1) throw InputError("random target needs n >= 1");
  Rng rng(seed, RngStream::kTargets);
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.normal();
  return v;
}

}  // namespace minreach
