#pragma once

#include <algorithm>
#include <cstddef>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "netcentral/network.hpp"

// Small graph builders shared by the test binaries. Every station sits on
// line 1 so that any edge set is a valid single-line network.

namespace nctest {

using Edges = std::vector<std::pair<int, int>>;

inline std::string node_id(int i) {
  // Zero-padded so that id order equals numeric order.
  std::string s = std::to_string(i);
  return "v" + std::string(s.size() < 5 ? 5 - s.size() : 0, '0') + s;
}

inline netcentral::TransitNetwork make_graph(int n, const Edges& edges,
                                             const std::vector<std::string>& ids = {}) {
  std::vector<netcentral::Station> stations;
  for (int i = 0; i < n; ++i) {
    const std::string id = ids.empty() ? node_id(i) : ids[i];
    stations.push_back({id, id, {1}});
  }
  std::vector<netcentral::Link> links;
  for (auto [a, b] : edges) links.push_back({stations[a].id, stations[b].id, {1}});
  return netcentral::build_network(std::move(stations), std::move(links));
}

inline netcentral::TransitNetwork named(const std::vector<std::string>& ids, const Edges& edges) {
  return make_graph(static_cast<int>(ids.size()), edges, ids);
}

inline Edges path_edges(int n) {
  Edges e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return e;
}

inline Edges cycle_edges(int n) {
  Edges e = path_edges(n);
  e.emplace_back(n - 1, 0);
  return e;
}

inline Edges star_edges(int leaves) {
  Edges e;
  for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return e;
}

inline Edges complete_edges(int n) {
  Edges e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return e;
}

/// rows x cols lattice, node r * cols + c.
inline Edges grid_edges(int rows, int cols) {
  Edges e;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int v = r * cols + c;
      if (c + 1 < cols) e.emplace_back(v, v + 1);
      if (r + 1 < rows) e.emplace_back(v, v + cols);
    }
  }
  return e;
}

/// Random spanning tree plus each remaining pair with probability p.
inline Edges random_connected_edges(int n, double p, std::mt19937_64& rng) {
  Edges e;
  std::vector<std::vector<bool>> has(n, std::vector<bool>(n, false));
  for (int v = 1; v < n; ++v) {
    const int u = std::uniform_int_distribution<int>(0, v - 1)(rng);
    e.emplace_back(u, v);
    has[u][v] = has[v][u] = true;
  }
  std::bernoulli_distribution coin(p);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!has[i][j] && coin(rng)) e.emplace_back(i, j);
  return e;
}

/// Sparse graph with about `links` edges: a random tree plus random chords.
inline Edges random_sparse_edges(int n, std::size_t links, std::mt19937_64& rng) {
  Edges e;
  for (int v = 1; v < n; ++v) e.emplace_back(std::uniform_int_distribution<int>(0, v - 1)(rng), v);
  std::uniform_int_distribution<int> pick(0, n - 1);
  while (e.size() < links) {
    int a = pick(rng), b = pick(rng);
    if (a != b) e.emplace_back(a, b);  // duplicates merge in build_network
  }
  return e;
}

/// Hop distances by repeated BFS over a plain adjacency list.
inline std::vector<std::vector<int>> all_pairs_hops(int n, const Edges& edges) {
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<std::vector<int>> d(n, std::vector<int>(n, -1));
  for (int s = 0; s < n; ++s) {
    std::vector<int> q{s};
    d[s][s] = 0;
    for (std::size_t h = 0; h < q.size(); ++h)
      for (int w : adj[q[h]])
        if (d[s][w] < 0) {
          d[s][w] = d[s][q[h]] + 1;
          q.push_back(w);
        }
  }
  return d;
}

}  // namespace nctest
