#include "minreach/hitting_set.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "minreach/errors.hpp"

namespace minreach {

void validate(const HittingSetInstance& instance) {
  if (instance.m < 1) throw InputError("hitting-set universe must be non-empty");
  if (instance.sets.empty()) throw InputError("hitting-set collection is empty");
  std::vector<char> seen(instance.m + 1, 0);
  for (std::size_t s = 0; s < instance.sets.size(); ++s) {
    const auto& set = instance.sets[s];
    if (set.empty()) {
      throw InputError("set " + std::to_string(s + 1) + " is empty");
    }
    std::set<int> distinct;
    for (int e : set) {
      if (e < 1 || e > instance.m) {
        throw InputError("set " + std::to_string(s + 1) + " has element " +
                         std::to_string(e) + " outside [1, " +
                         std::to_string(instance.m) + "]");
      }
      if (!distinct.insert(e).second) {
        throw InputError("set " + std::to_string(s + 1) +
                         " repeats element " + std::to_string(e));
      }
      seen[e] = 1;
    }
  }
  for (int e = 1; e <= instance.m; ++e) {
    if (!seen[e]) {
      throw InputError("element " + std::to_string(e) +
                       " does not appear in any set");
    }
  }
}

Matrix incidence_matrix(const HittingSetInstance& instance) {
  validate(instance);
  Matrix phi = Matrix::Zero(instance.p(), instance.m);
  for (int i = 0; i < instance.p(); ++i) {
    for (int e : instance.sets[i]) phi(i, e - 1) = 1.0;
  }
  return phi;
}

bool hits_all(const HittingSetInstance& instance,
              const std::vector<int>& chosen) {
  return std::all_of(instance.sets.begin(), instance.sets.end(),
                     [&](const std::vector<int>& set) {
                       return std::any_of(set.begin(), set.end(), [&](int e) {
                         return std::find(chosen.begin(), chosen.end(), e) !=
                                chosen.end();
                       });
                     });
}

}  // namespace minreach
