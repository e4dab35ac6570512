#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "netcentral/centrality.hpp"
#include "netcentral/error.hpp"
#include "netcentral/network.hpp"

namespace netcentral {

/// Per-station measures that can be ranked, summarized and correlated.
enum class Measure { degree, closeness, betweenness, eccentricity };

inline constexpr std::array<Measure, 4> all_station_measures{
    Measure::degree, Measure::closeness, Measure::betweenness, Measure::eccentricity};

inline constexpr std::string_view to_string(Measure m) noexcept {
  switch (m) {
    case Measure::degree: return "degree";
    case Measure::closeness: return "closeness";
    case Measure::betweenness: return "betweenness";
    case Measure::eccentricity: return "eccentricity";
  }
  return "unknown";
}

inline Measure parse_measure(std::string_view name) {
  for (Measure m : all_station_measures) {
    if (to_string(m) == name) return m;
  }
  throw UsageError("unknown measure '" + std::string(name) +
                   "' (expected degree, closeness, betweenness or eccentricity)");
}

/// Eccentricity is the only measure where lower values are more central.
inline constexpr bool ranks_ascending(Measure m) noexcept { return m == Measure::eccentricity; }

inline std::vector<double> measure_values(const CentralityTable& t, Measure m) {
  switch (m) {
    case Measure::degree: return {t.degree.begin(), t.degree.end()};
    case Measure::closeness: return t.closeness;
    case Measure::betweenness: return t.betweenness;
    case Measure::eccentricity: return {t.eccentricity.begin(), t.eccentricity.end()};
  }
  throw UsageError("unknown measure");
}

// ---------------------------------------------------------------------------
// Rankings

struct RankEntry {
  std::size_t rank = 0;  // 1-based, competition ranking
  std::string station;
  double value = 0.0;

  friend bool operator==(const RankEntry&, const RankEntry&) = default;
};

struct RankedList {
  Measure measure = Measure::closeness;
  bool ascending = false;
  std::vector<RankEntry> entries;

  [[nodiscard]] std::size_t size() const noexcept { return entries.size(); }
  /// Rank of a station, or nullopt if it is not in the list.
  [[nodiscard]] std::optional<std::size_t> rank_of(std::string_view station) const {
    for (const auto& e : entries) {
      if (e.station == station) return e.rank;
    }
    return std::nullopt;
  }
};

/// Orders ids by value in the given direction, ties broken by id ascending;
/// equal values share the smaller rank ("1224" ranking).
inline std::vector<RankEntry> rank_values(std::span<const std::string> ids,
                                          std::span<const double> values, bool ascending) {
  std::vector<std::size_t> order(ids.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (values[x] != values[y]) return ascending ? values[x] < values[y] : values[x] > values[y];
    return ids[x] < ids[y];
  });
  std::vector<RankEntry> out;
  out.reserve(order.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const std::size_t i = order[pos];
    std::size_t r = pos + 1;
    if (pos > 0 && values[i] == out.back().value) r = out.back().rank;
    out.push_back(RankEntry{r, ids[i], values[i]});
  }
  return out;
}

inline RankedList rank(const CentralityTable& table, Measure measure) {
  if (table.station_count() == 0) throw UsageError("cannot rank an empty table");
  RankedList out;
  out.measure = measure;
  out.ascending = ranks_ascending(measure);
  const auto values = measure_values(table, measure);
  out.entries = rank_values(table.station_ids, values, out.ascending);
  return out;
}

inline RankedList rank(const CentralityTable& table, std::string_view measure) {
  return rank(table, parse_measure(measure));
}

/// First `count` entries (all of them if count exceeds the list).
inline RankedList top_count(const RankedList& ranked, std::size_t count) {
  RankedList out = ranked;
  if (count < out.entries.size()) out.entries.resize(count);
  return out;
}

/// First ceil(fraction * n) entries; fraction must lie in (0, 1].
inline RankedList top_fraction(const RankedList& ranked, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw UsageError("fraction must lie in (0, 1], got " + std::to_string(fraction));
  }
  const double exact = fraction * static_cast<double>(ranked.size());
  // Absorb representation error such as 0.3 * 10 = 3.0000000000000004.
  auto count = static_cast<std::size_t>(std::ceil(exact - 1e-9));
  return top_count(ranked, count);
}

// ---------------------------------------------------------------------------
// Five-number summaries

struct FiveNumberSummary {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

/// Quantile of sorted data by linear interpolation between closest ranks,
/// position p * (n - 1) counted from 0.
inline double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw UsageError("quantile of an empty sample");
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

inline FiveNumberSummary five_number_summary(std::vector<double> values) {
  if (values.empty()) throw UsageError("five-number summary of an empty sample");
  std::sort(values.begin(), values.end());
  return FiveNumberSummary{values.front(), quantile_sorted(values, 0.25),
                           quantile_sorted(values, 0.5), quantile_sorted(values, 0.75),
                           values.back()};
}

struct LineSummary {
  LineId line;
  Measure measure = Measure::closeness;
  FiveNumberSummary summary;
  std::size_t station_count = 0;
};

namespace detail {

inline void require_matching(const TransitNetwork& net, const CentralityTable& table) {
  if (table.station_count() != net.station_count()) {
    throw UsageError("centrality table does not belong to this network");
  }
  for (StationIndex i = 0; i < net.station_count(); ++i) {
    if (table.station_ids[i] != net.station(i).id) {
      throw UsageError("centrality table does not belong to this network");
    }
  }
}

}  // namespace detail

/// Values of a measure over the stations serving a line. Transfer stations
/// contribute to every line they serve.
inline std::vector<double> line_values(const TransitNetwork& net, const CentralityTable& table,
                                       LineNumber line, Measure measure) {
  detail::require_matching(net, table);
  const auto values = measure_values(table, measure);
  std::vector<double> out;
  for (StationIndex i = 0; i < net.station_count(); ++i) {
    if (net.station(i).lines.contains(line)) out.push_back(values[i]);
  }
  return out;
}

inline LineSummary line_summary(const TransitNetwork& net, const CentralityTable& table,
                                LineNumber line, Measure measure) {
  const LineId* id = net.find_line(line);
  if (!id) throw UsageError("unknown line " + std::to_string(line));
  auto values = line_values(net, table, line, measure);
  if (values.empty()) throw UsageError("line " + std::to_string(line) + " has no stations");
  LineSummary out;
  out.line = *id;
  out.measure = measure;
  out.station_count = values.size();
  out.summary = five_number_summary(std::move(values));
  return out;
}

// ---------------------------------------------------------------------------
// Rank correlation

/// 1-based ranks with ties replaced by their average rank.
inline std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

/// Spearman's rho: Pearson correlation of average ranks. Throws AnalysisError
/// for fewer than three observations or a constant variable.
inline double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw UsageError("spearman: samples differ in length");
  if (x.size() < 3) throw AnalysisError("spearman correlation needs at least 3 observations");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(rx.size());
  const double mean = (n + 1.0) / 2.0;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const double dx = rx[i] - mean;
    const double dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw AnalysisError("spearman correlation is undefined for a constant measure");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

/// Correlation of raw values (eccentricity is not sign-flipped).
inline double rank_correlation(const CentralityTable& table, Measure x, Measure y) {
  const auto vx = measure_values(table, x);
  const auto vy = measure_values(table, y);
  return spearman(vx, vy);
}

}  // namespace netcentral
