#pragma once

#include <vector>

#include "minreach/numkit.hpp"

namespace minreach {

// Universe [m] and a collection of non-empty subsets of it (1-based).
// Every element of the universe must occur in at least one set.
struct HittingSetInstance {
  int m = 0;
  std::vector<std::vector<int>> sets;

  int p() const { return static_cast<int>(sets.size()); }
};

// Throws InputError describing the first violated invariant.
void validate(const HittingSetInstance& instance);

// p x m zero-one matrix, entry (i, j) = 1 iff set i contains element j.
Matrix incidence_matrix(const HittingSetInstance& instance);

// True iff `chosen` (1-based elements) intersects every set.
bool hits_all(const HittingSetInstance& instance, const std::vector<int>& chosen);

}  // namespace minreach
