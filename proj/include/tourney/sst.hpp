#pragma once

// Strong stochastic transitivity in its two classical forms.

#include <cstddef>
#include <vector>

#include "tourney/football.hpp"

namespace tourney {

inline constexpr double kSstSlack = 1e-12;

// For each column j, p(i, j) is non-decreasing in i, counting the diagonal 1/2.
bool is_sst_monotone(const WinProbabilityMatrix& p);

// min(p(i,j), p(j,k)) >= 1/2 implies p(i,k) >= max(p(i,j), p(j,k)).
bool is_sst_transitive(const WinProbabilityMatrix& p);

// sigma[i] is the new 0-based label of team i.
struct Relabeling {
  std::vector<std::size_t> perm;
};

// Peels universal sinks of the digraph {j -> i : p(i, j) >= 1/2}, giving
// each the highest free label; among tied sinks the highest original index
// goes first, so already-sorted input keeps its labels. Throws
// kNotTransitive when the matrix is not SST-transitive.
Relabeling sst_relabel(const WinProbabilityMatrix& p);

}  // namespace tourney
