#pragma once

// Checks that do not go through majorization: max-flow feasibility and
// exhaustive enumeration of small deterministic tournaments.

#include <cstddef>
#include <set>
#include <span>
#include <vector>

#include "tourney/seqorder.hpp"

namespace tourney {

inline constexpr std::size_t kMaxEnumerationTeams = 5;

// Source -> one node per pair (capacity 1) -> both teams of the pair
// (capacity 1) -> sink (capacity x_i). Feasible iff the max flow saturates
// all n(n-1)/2 pairs, up to tol.
double pair_team_max_flow(std::span<const double> x);
bool flow_feasible(const MeanScoreSequence& x, double tol = 1e-9);
// Unvalidated input; false if the total is off or an entry is negative.
bool flow_feasible(std::span<const double> x, double tol = 1e-9);

// Sorted score vectors of all 2^(n choose 2) tournaments. Throws kSize for
// n > kMaxEnumerationTeams.
std::set<std::vector<int>> enumerate_score_multisets(std::size_t n);

// Landau's condition on the sorted input.
bool landau_check(std::span<const int> scores);

}  // namespace tourney
