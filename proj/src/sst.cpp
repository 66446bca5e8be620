#include "tourney/sst.hpp"

#include <algorithm>

#include "tourney/error.hpp"

namespace tourney {

bool is_sst_monotone(const WinProbabilityMatrix& p) {
  const std::size_t n = p.size();
  // The diagonal 1/2 takes part: a column must cross 1/2 at its own row.
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 1; i < n; ++i) {
      if (p(i, j) < p(i - 1, j) - kSstSlack) return false;
    }
  }
  return true;
}

bool is_sst_transitive(const WinProbabilityMatrix& p) {
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || p(i, j) < 0.5) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j || p(j, k) < 0.5) continue;
        if (p(i, k) < std::max(p(i, j), p(j, k)) - kSstSlack) return false;
      }
    }
  }
  return true;
}

Relabeling sst_relabel(const WinProbabilityMatrix& p) {
  if (!is_sst_transitive(p)) {
    throw Error(ErrorCode::kNotTransitive,
                "matrix is not strongly stochastically transitive");
  }
  const std::size_t n = p.size();
  std::vector<bool> placed(n, false);
  Relabeling out{std::vector<std::size_t>(n, 0)};
  for (std::size_t label = n; label-- > 0;) {
    // A universal sink among the unplaced teams beats or ties all of them.
    std::size_t sink = n;
    for (std::size_t v = n; v-- > 0 && sink == n;) {
      if (placed[v]) continue;
      bool universal = true;
      for (std::size_t u = 0; u < n && universal; ++u) {
        universal = placed[u] || u == v || p(v, u) >= 0.5;
      }
      if (universal) sink = v;
    }
    if (sink == n) {
      throw Error(ErrorCode::kNotTransitive,
                  "no universal sink among the remaining teams");
    }
    placed[sink] = true;
    out.perm[sink] = label;
  }
  return out;
}

}  // namespace tourney
