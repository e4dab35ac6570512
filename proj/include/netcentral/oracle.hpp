#pragma once

#include <cstddef>
#include <vector>

#include "netcentral/centrality.hpp"
#include "netcentral/error.hpp"
#include "netcentral/network.hpp"

// Brute-force reference implementation of all_measures(), used to check the
// Brandes accumulation. It shares no code with centrality.hpp beyond the
// table type: distances come from Floyd-Warshall relaxation, and betweenness
// from explicitly walking every shortest path between every pair.

namespace netcentral {

inline constexpr std::size_t oracle_max_stations = 64;

namespace detail {

class PathEnumerator {
 public:
  PathEnumerator(const TransitNetwork& net, const std::vector<std::vector<Hops>>& dist)
      : net_(net), dist_(dist), node_hits_(net.station_count(), 0), edge_hits_(net.link_count(), 0) {}

  /// Walks every shortest s-t path, counting how many pass each station and
  /// link. Returns the number of paths.
  std::size_t run(StationIndex s, StationIndex t) {
    std::fill(node_hits_.begin(), node_hits_.end(), 0);
    std::fill(edge_hits_.begin(), edge_hits_.end(), 0);
    target_ = t;
    paths_ = 0;
    nodes_.assign(1, s);
    edges_.clear();
    walk(s);
    return paths_;
  }

  [[nodiscard]] const std::vector<std::size_t>& node_hits() const { return node_hits_; }
  [[nodiscard]] const std::vector<std::size_t>& edge_hits() const { return edge_hits_; }

 private:
  void walk(StationIndex u) {
    if (u == target_) {
      ++paths_;
      for (std::size_t i = 1; i + 1 < nodes_.size(); ++i) ++node_hits_[nodes_[i]];
      for (LinkIndex e : edges_) ++edge_hits_[e];
      return;
    }
    for (const auto& nb : net_.neighbors(u)) {
      if (dist_[nb.station][target_] + 1 != dist_[u][target_]) continue;
      nodes_.push_back(nb.station);
      edges_.push_back(nb.link);
      walk(nb.station);
      nodes_.pop_back();
      edges_.pop_back();
    }
  }

  const TransitNetwork& net_;
  const std::vector<std::vector<Hops>>& dist_;
  StationIndex target_ = 0;
  std::size_t paths_ = 0;
  std::vector<StationIndex> nodes_;
  std::vector<LinkIndex> edges_;
  std::vector<std::size_t> node_hits_;
  std::vector<std::size_t> edge_hits_;
};

}  // namespace detail

/// Same contract as all_measures(), computed naively. Limited to
/// oracle_max_stations stations; larger networks throw AnalysisError.
inline CentralityTable oracle_measures(const TransitNetwork& net) {
  const std::size_t n = net.station_count();
  if (n > oracle_max_stations) {
    throw AnalysisError("network too large for the oracle (" + std::to_string(n) + " > " +
                        std::to_string(oracle_max_stations) + " stations)");
  }
  if (n < 2) throw AnalysisError("centrality needs at least two stations");

  constexpr Hops inf = unreachable / 2;
  std::vector<std::vector<Hops>> d(n, std::vector<Hops>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (std::size_t e = 0; e < net.link_count(); ++e) {
    auto [a, b] = net.link_ends(static_cast<LinkIndex>(e));
    d[a][b] = d[b][a] = 1;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
      }
    }
  }

  CentralityTable t = make_table_shell(net);
  t.closeness.assign(n, 0.0);
  t.eccentricity.assign(n, 0);
  t.betweenness.assign(n, 0.0);
  t.edge_betweenness.assign(net.link_count(), 0.0);

  for (std::size_t v = 0; v < n; ++v) {
    double sum = 0.0;
    Hops far = 0;
    for (std::size_t u = 0; u < n; ++u) {
      if (d[v][u] >= inf) throw AnalysisError("network is disconnected");
      sum += d[v][u];
      far = std::max(far, d[v][u]);
    }
    t.closeness[v] = static_cast<double>(n - 1) / sum;
    t.eccentricity[v] = far;
  }

  detail::PathEnumerator paths(net, d);
  for (StationIndex s = 0; s < n; ++s) {
    for (StationIndex u = s + 1; u < n; ++u) {
      const auto total = static_cast<double>(paths.run(s, u));
      for (std::size_t v = 0; v < n; ++v) {
        if (paths.node_hits()[v]) t.betweenness[v] += static_cast<double>(paths.node_hits()[v]) / total;
      }
      for (std::size_t e = 0; e < net.link_count(); ++e) {
        if (paths.edge_hits()[e]) {
          t.edge_betweenness[e] += static_cast<double>(paths.edge_hits()[e]) / total;
        }
      }
    }
  }
  return t;
}

}  // namespace netcentral
