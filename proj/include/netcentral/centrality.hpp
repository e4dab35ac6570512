#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "netcentral/error.hpp"
#include "netcentral/network.hpp"

// Unweighted (hop count) centrality measures. Every function here is a pure
// function of an immutable network; per-station results are vectors indexed
// by StationIndex and per-link results vectors indexed by LinkIndex.

namespace netcentral {

using Hops = std::uint32_t;
using PathCount = std::uint64_t;

inline constexpr Hops unreachable = std::numeric_limits<Hops>::max();

/// Single-source hop distances and shortest-path counts (sigma).
struct DistanceRow {
  StationIndex source = 0;
  std::vector<Hops> dist;
  std::vector<PathCount> path_counts;
};

struct CentralityTable {
  std::vector<std::string> station_ids;
  std::vector<std::pair<std::string, std::string>> link_ends;
  std::vector<std::size_t> degree;
  std::vector<double> closeness;
  std::vector<double> betweenness;
  std::vector<Hops> eccentricity;
  std::vector<double> edge_betweenness;

  [[nodiscard]] std::size_t station_count() const noexcept { return station_ids.size(); }
  [[nodiscard]] std::size_t link_count() const noexcept { return link_ends.size(); }
};

struct MeasureOptions {
  /// Worker threads for the per-source accumulation. Sources are split into
  /// contiguous chunks and reduced in chunk order, so a given thread count
  /// always produces the same bits.
  unsigned threads = 1;
};

namespace detail {

inline PathCount checked_add(PathCount a, PathCount b) {
  if (b > std::numeric_limits<PathCount>::max() - a) {
    throw AnalysisError("shortest-path count overflows 64 bits");
  }
  return a + b;
}

/// Scratch space reused across sources.
struct BfsWorkspace {
  std::vector<Hops> dist;
  std::vector<PathCount> sigma;
  std::vector<double> delta;
  std::vector<StationIndex> order;

  explicit BfsWorkspace(std::size_t n) : dist(n), sigma(n), delta(n) { order.reserve(n); }

  /// Fills dist, sigma and order (BFS visit order, non-decreasing distance).
  void run(const TransitNetwork& net, StationIndex source) {
    std::fill(dist.begin(), dist.end(), unreachable);
    std::fill(sigma.begin(), sigma.end(), PathCount{0});
    order.clear();
    dist[source] = 0;
    sigma[source] = 1;
    order.push_back(source);
    for (std::size_t head = 0; head < order.size(); ++head) {
      const StationIndex v = order[head];
      const Hops next = dist[v] + 1;
      for (const auto& nb : net.neighbors(v)) {
        const StationIndex w = nb.station;
        if (dist[w] == unreachable) {
          dist[w] = next;
          order.push_back(w);
        }
        if (dist[w] == next) sigma[w] = checked_add(sigma[w], sigma[v]);
      }
    }
  }
};

/// Accumulators for one contiguous block of sources.
struct PartialMeasures {
  std::vector<double> betweenness;       // doubled (each unordered pair seen twice)
  std::vector<double> edge_betweenness;  // doubled
  std::vector<std::uint64_t> distance_sum;
  std::vector<Hops> eccentricity;

  PartialMeasures(std::size_t n, std::size_t m)
      : betweenness(n, 0.0), edge_betweenness(m, 0.0), distance_sum(n, 0), eccentricity(n, 0) {}
};

/// Brandes dependency accumulation for one source. Walks the BFS order
/// backwards; predecessors of w are the neighbors one hop closer to the source.
inline void accumulate_source(const TransitNetwork& net, StationIndex s, BfsWorkspace& ws,
                              PartialMeasures& acc, bool want_pairs) {
  ws.run(net, s);
  if (ws.order.size() != net.station_count()) {
    throw AnalysisError("network is disconnected");
  }
  std::uint64_t dsum = 0;
  for (StationIndex v : ws.order) dsum += ws.dist[v];
  acc.distance_sum[s] = dsum;
  acc.eccentricity[s] = ws.dist[ws.order.back()];
  if (!want_pairs) return;

  std::fill(ws.delta.begin(), ws.delta.end(), 0.0);
  for (auto it = ws.order.rbegin(); it != ws.order.rend(); ++it) {
    const StationIndex w = *it;
    if (w == s) continue;
    const Hops dw = ws.dist[w];
    const double coeff = (1.0 + ws.delta[w]) / static_cast<double>(ws.sigma[w]);
    for (const auto& nb : net.neighbors(w)) {
      const StationIndex v = nb.station;
      if (ws.dist[v] + 1 != dw) continue;
      const double c = static_cast<double>(ws.sigma[v]) * coeff;
      ws.delta[v] += c;
      acc.edge_betweenness[nb.link] += c;
    }
    acc.betweenness[w] += ws.delta[w];
  }
}

inline PartialMeasures accumulate_all(const TransitNetwork& net, bool want_pairs,
                                      MeasureOptions opts) {
  const std::size_t n = net.station_count();
  const std::size_t m = net.link_count();
  const std::size_t workers = std::clamp<std::size_t>(opts.threads, 1, std::max<std::size_t>(n, 1));

  if (workers == 1) {
    PartialMeasures acc(n, m);
    BfsWorkspace ws(n);
    for (StationIndex s = 0; s < n; ++s) accumulate_source(net, s, ws, acc, want_pairs);
    return acc;
  }

  std::vector<PartialMeasures> parts(workers, PartialMeasures(n, m));
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        try {
          BfsWorkspace ws(n);
          const std::size_t lo = n * t / workers;
          const std::size_t hi = n * (t + 1) / workers;
          for (std::size_t s = lo; s < hi; ++s) {
            accumulate_source(net, static_cast<StationIndex>(s), ws, parts[t], want_pairs);
          }
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  PartialMeasures total = std::move(parts[0]);
  for (std::size_t t = 1; t < workers; ++t) {
    const std::size_t lo = n * t / workers;
    const std::size_t hi = n * (t + 1) / workers;
    for (std::size_t v = 0; v < n; ++v) total.betweenness[v] += parts[t].betweenness[v];
    for (std::size_t e = 0; e < m; ++e) total.edge_betweenness[e] += parts[t].edge_betweenness[e];
    for (std::size_t s = lo; s < hi; ++s) {
      total.distance_sum[s] = parts[t].distance_sum[s];
      total.eccentricity[s] = parts[t].eccentricity[s];
    }
  }
  return total;
}

inline std::vector<double> closeness_from_sums(const std::vector<std::uint64_t>& sums) {
  const double numerator = static_cast<double>(sums.size()) - 1.0;
  std::vector<double> out(sums.size());
  for (std::size_t i = 0; i < sums.size(); ++i) {
    out[i] = numerator / static_cast<double>(sums[i]);
  }
  return out;
}

inline void halve(std::vector<double>& v) {
  for (double& x : v) x *= 0.5;
}

inline void require_measurable(const TransitNetwork& net) {
  if (net.station_count() < 2) throw AnalysisError("centrality needs at least two stations");
}

}  // namespace detail

inline DistanceRow bfs_row(const TransitNetwork& net, StationIndex source) {
  if (source >= net.station_count()) {
    throw ValidationError("station index " + std::to_string(source) + " out of range");
  }
  detail::BfsWorkspace ws(net.station_count());
  ws.run(net, source);
  return DistanceRow{source, std::move(ws.dist), std::move(ws.sigma)};
}

inline DistanceRow bfs_row(const TransitNetwork& net, std::string_view source) {
  return bfs_row(net, net.index_of(source));
}

/// Normalized closeness (n - 1) / sum of hop distances.
inline std::vector<double> closeness(const TransitNetwork& net, MeasureOptions opts = {}) {
  detail::require_measurable(net);
  return detail::closeness_from_sums(detail::accumulate_all(net, false, opts).distance_sum);
}

/// Largest hop distance to any other station. Lower is more central.
inline std::vector<Hops> eccentricity(const TransitNetwork& net, MeasureOptions opts = {}) {
  detail::require_measurable(net);
  return detail::accumulate_all(net, false, opts).eccentricity;
}

/// Unnormalized node betweenness: endpoints excluded, each unordered pair
/// counted once, credit split evenly across equal-length shortest paths.
inline std::vector<double> betweenness(const TransitNetwork& net, MeasureOptions opts = {}) {
  detail::require_measurable(net);
  auto acc = detail::accumulate_all(net, true, opts);
  detail::halve(acc.betweenness);
  return std::move(acc.betweenness);
}

/// Unnormalized edge betweenness; pairs whose endpoint touches the link count.
inline std::vector<double> edge_betweenness(const TransitNetwork& net, MeasureOptions opts = {}) {
  detail::require_measurable(net);
  auto acc = detail::accumulate_all(net, true, opts);
  detail::halve(acc.edge_betweenness);
  return std::move(acc.edge_betweenness);
}

inline CentralityTable make_table_shell(const TransitNetwork& net) {
  CentralityTable t;
  t.station_ids.reserve(net.station_count());
  t.degree.reserve(net.station_count());
  for (StationIndex i = 0; i < net.station_count(); ++i) {
    t.station_ids.push_back(net.station(i).id);
    t.degree.push_back(net.degree(i));
  }
  t.link_ends.reserve(net.link_count());
  for (const auto& k : net.links()) t.link_ends.emplace_back(k.a, k.b);
  return t;
}

/// All five measures from one BFS per source.
inline CentralityTable all_measures(const TransitNetwork& net, MeasureOptions opts = {}) {
  detail::require_measurable(net);
  CentralityTable t = make_table_shell(net);
  auto acc = detail::accumulate_all(net, true, opts);
  detail::halve(acc.betweenness);
  detail::halve(acc.edge_betweenness);
  t.closeness = detail::closeness_from_sums(acc.distance_sum);
  t.betweenness = std::move(acc.betweenness);
  t.eccentricity = std::move(acc.eccentricity);
  t.edge_betweenness = std::move(acc.edge_betweenness);
  return t;
}

}  // namespace netcentral
