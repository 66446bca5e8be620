#include "tourney/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include "tourney/error.hpp"

namespace tourney {
namespace {

// Edmonds-Karp: shortest augmenting paths, so the number of augmentations is
// bounded independently of the (real) capacities.
class FlowNetwork {
 public:
  explicit FlowNetwork(std::size_t nodes) : adjacency_(nodes) {}

  void add_arc(std::size_t from, std::size_t to, double capacity) {
    adjacency_[from].push_back(arcs_.size());
    arcs_.push_back({to, capacity});
    adjacency_[to].push_back(arcs_.size());
    arcs_.push_back({from, 0.0});
  }

  double max_flow(std::size_t source, std::size_t sink) {
    constexpr double kResidualFloor = 1e-15;
    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    double total = 0.0;
    std::vector<std::size_t> via(adjacency_.size());
    for (;;) {
      std::fill(via.begin(), via.end(), kNone);
      std::queue<std::size_t> frontier;
      frontier.push(source);
      via[source] = arcs_.size();
      while (!frontier.empty() && via[sink] == kNone) {
        const std::size_t u = frontier.front();
        frontier.pop();
        for (std::size_t a : adjacency_[u]) {
          const Arc& arc = arcs_[a];
          if (via[arc.to] == kNone && arc.capacity > kResidualFloor) {
            via[arc.to] = a;
            frontier.push(arc.to);
          }
        }
      }
      if (via[sink] == kNone) return total;

      double bottleneck = std::numeric_limits<double>::infinity();
      for (std::size_t v = sink; v != source; v = arcs_[via[v] ^ 1].to) {
        bottleneck = std::min(bottleneck, arcs_[via[v]].capacity);
      }
      for (std::size_t v = sink; v != source; v = arcs_[via[v] ^ 1].to) {
        arcs_[via[v]].capacity -= bottleneck;
        arcs_[via[v] ^ 1].capacity += bottleneck;
      }
      total += bottleneck;
    }
  }

 private:
  struct Arc {
    std::size_t to;
    double capacity;
  };
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<Arc> arcs_;
};

}  // namespace

double pair_team_max_flow(std::span<const double> x) {
  const std::size_t n = x.size();
  const std::size_t pairs = n * (n - 1) / 2;
  // Node layout: source, pairs, teams, sink.
  const std::size_t source = 0;
  const std::size_t first_team = 1 + pairs;
  const std::size_t sink = first_team + n;
  FlowNetwork net(sink + 1);
  std::size_t pair_node = 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++pair_node) {
      net.add_arc(source, pair_node, 1.0);
      net.add_arc(pair_node, first_team + i, 1.0);
      net.add_arc(pair_node, first_team + j, 1.0);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    net.add_arc(first_team + i, sink, std::max(x[i], 0.0));
  }
  return net.max_flow(source, sink);
}

bool flow_feasible(std::span<const double> x, double tol) {
  const std::size_t n = x.size();
  if (n == 0) return false;
  const double games = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  const double sum = std::accumulate(x.begin(), x.end(), 0.0);
  if (std::abs(sum - games) > tol) return false;
  if (std::any_of(x.begin(), x.end(), [&](double v) { return v < -tol; })) {
    return false;
  }
  return pair_team_max_flow(x) >= games - tol;
}

bool flow_feasible(const MeanScoreSequence& x, double tol) {
  return flow_feasible(x.values(), tol);
}

std::set<std::vector<int>> enumerate_score_multisets(std::size_t n) {
  if (n > kMaxEnumerationTeams) {
    throw Error(ErrorCode::kSize, "enumeration limited to " +
                                      std::to_string(kMaxEnumerationTeams) +
                                      " teams, got " + std::to_string(n));
  }
  if (n == 0) {
    throw Error(ErrorCode::kSize, "enumeration needs at least one team");
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  std::set<std::vector<int>> found;
  // Bit b set: the first team of pair b wins.
  for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
    std::vector<int> scores(n, 0);
    for (std::size_t b = 0; b < pairs.size(); ++b) {
      ++scores[(mask >> b) & 1u ? pairs[b].first : pairs[b].second];
    }
    std::sort(scores.begin(), scores.end());
    found.insert(std::move(scores));
  }
  return found;
}

bool landau_check(std::span<const int> scores) {
  std::vector<long long> s(scores.begin(), scores.end());
  std::sort(s.begin(), s.end());
  long long prefix = 0;
  for (std::size_t k = 1; k <= s.size(); ++k) {
    prefix += s[k - 1];
    const long long binom = static_cast<long long>(k * (k - 1) / 2);
    if (prefix < binom) return false;
    if (k == s.size() && prefix != binom) return false;
  }
  return !s.empty();
}

}  // namespace tourney
