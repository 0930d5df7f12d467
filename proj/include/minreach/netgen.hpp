#pragma once

#include <cstdint>
#include <random>

#include "minreach/reachcore.hpp"

namespace minreach {

struct RngSeed {
  std::uint64_t value = 0;
};

// Independent streams derived from one seed.
enum class RngStream : std::uint32_t {
  kEdges = 0,
  kWeights = 1,
  kTargets = 2,
};

// Bit-reproducible random source: std::mt19937_64 seeded through
// std::seed_seq from (seed, stream), with uniform and normal variates derived
// here rather than through the implementation-defined std distributions.
class Rng {
 public:
  Rng(RngSeed seed, RngStream stream);

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Standard normal via the Marsaglia polar method.
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Star network with n_leaves + 1 states: -1 on the diagonal and +1 in
// A(1, j) for j = 2..n_leaves+1.
LtiSystem star(int n_leaves);

// p = min(1, 2 ln(n) / n).
double erdos_renyi_edge_probability(int n);

// Directed Erdos-Renyi graph without self-loops; each present edge (i, j)
// carries an independent standard normal weight in A(i, j).
LtiSystem erdos_renyi(int n, RngSeed seed);

// n independent standard normal draws.
Vector random_target(int n, RngSeed seed);

}  // namespace minreach
