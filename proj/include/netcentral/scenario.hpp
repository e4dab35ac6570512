#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "netcentral/analytics.hpp"
#include "netcentral/centrality.hpp"
#include "netcentral/error.hpp"
#include "netcentral/network.hpp"

// What-if topology edits and before/after comparison.

namespace netcentral {

struct AddLink {
  std::string a;
  std::string b;
  LineNumber line = 0;
  friend bool operator==(const AddLink&, const AddLink&) = default;
};

struct RemoveLink {
  std::string a;
  std::string b;
  friend bool operator==(const RemoveLink&, const RemoveLink&) = default;
};

/// Collapses two stations into one. An empty new_id means
/// "<smaller id>+<larger id>".
struct MergeStations {
  std::string a;
  std::string b;
  std::string new_id;
  friend bool operator==(const MergeStations&, const MergeStations&) = default;
};

using Edit = std::variant<AddLink, RemoveLink, MergeStations>;

inline std::string describe(const Edit& edit) {
  return std::visit(
      [](const auto& e) -> std::string {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, AddLink>) {
          return "add-link " + e.a + "," + e.b + "," + std::to_string(e.line);
        } else if constexpr (std::is_same_v<T, RemoveLink>) {
          return "remove-link " + e.a + "," + e.b;
        } else {
          return "merge " + e.a + "," + e.b + (e.new_id.empty() ? "" : "," + e.new_id);
        }
      },
      edit);
}

inline std::string merged_id(const MergeStations& m) {
  if (!m.new_id.empty()) return m.new_id;
  const auto& [lo, hi] = std::minmax(m.a, m.b);
  return lo + "+" + hi;
}

struct Scenario {
  std::vector<Edit> edits;
  TransitNetwork base;
  TransitNetwork result;
};

namespace detail {

struct EditableNetwork {
  std::vector<LineId> lines;
  std::vector<Station> stations;
  std::vector<Link> links;

  explicit EditableNetwork(const TransitNetwork& net)
      : lines(net.lines().begin(), net.lines().end()),
        stations(net.stations().begin(), net.stations().end()),
        links(net.links().begin(), net.links().end()) {}

  Station* station(const std::string& id) {
    auto it = std::find_if(stations.begin(), stations.end(),
                           [&](const Station& s) { return s.id == id; });
    return it == stations.end() ? nullptr : &*it;
  }

  Station& require(const std::string& id, const std::string& context) {
    Station* s = station(id);
    if (!s) throw AnalysisError(context + ": unknown station '" + id + "'");
    return *s;
  }

  std::vector<Link>::iterator find_link(const std::string& a, const std::string& b) {
    return std::find_if(links.begin(), links.end(), [&](const Link& k) {
      return (k.a == a && k.b == b) || (k.a == b && k.b == a);
    });
  }

  void apply(const AddLink& e, const std::string& context) {
    Station& a = require(e.a, context);
    Station& b = require(e.b, context);
    if (e.a == e.b) throw AnalysisError(context + ": self-loop");
    if (find_link(e.a, e.b) != links.end()) {
      throw AnalysisError(context + ": link " + describe_link(e.a, e.b) + " already exists");
    }
    if (!a.lines.contains(e.line) || !b.lines.contains(e.line)) {
      throw AnalysisError(context + ": line " + std::to_string(e.line) +
                          " does not serve both endpoints");
    }
    links.push_back(Link{e.a, e.b, LineSet{e.line}});
  }

  void apply(const RemoveLink& e, const std::string& context) {
    require(e.a, context);
    require(e.b, context);
    auto it = find_link(e.a, e.b);
    if (it == links.end()) {
      throw AnalysisError(context + ": no link " + describe_link(e.a, e.b));
    }
    links.erase(it);
  }

  void apply(const MergeStations& e, const std::string& context) {
    if (e.a == e.b) throw AnalysisError(context + ": cannot merge a station with itself");
    const Station a = require(e.a, context);
    const Station b = require(e.b, context);
    const std::string id = merged_id(e);
    if (id != e.a && id != e.b && station(id)) {
      throw AnalysisError(context + ": merged id '" + id + "' collides with an existing station");
    }
    const Station& first = a.id < b.id ? a : b;
    const Station& second = a.id < b.id ? b : a;
    Station merged;
    merged.id = id;
    merged.name = first.name == second.name ? first.name : first.name + " / " + second.name;
    merged.lines = first.lines;
    merged.lines.insert(second.lines.begin(), second.lines.end());

    std::erase_if(stations, [&](const Station& s) { return s.id == e.a || s.id == e.b; });
    stations.push_back(std::move(merged));

    std::vector<Link> rewired;
    rewired.reserve(links.size());
    for (Link k : links) {
      const bool touches_a = k.a == e.a || k.b == e.a;
      const bool touches_b = k.a == e.b || k.b == e.b;
      if (touches_a && touches_b) continue;
      if (k.a == e.a || k.a == e.b) k.a = id;
      if (k.b == e.a || k.b == e.b) k.b = id;
      rewired.push_back(std::move(k));
    }
    links = std::move(rewired);
  }

  TransitNetwork build(const std::string& context) const {
    try {
      return build_network(stations, links, lines);
    } catch (const ValidationError& err) {
      throw AnalysisError(context + ": " + err.what());
    }
  }
};

}  // namespace detail

/// Applies edits in order. The network is re-validated after every edit, so a
/// sequence whose intermediate state is disconnected is rejected even if a
/// later edit would reconnect it. Failures throw AnalysisError naming the edit.
inline Scenario apply_scenario(const TransitNetwork& base, std::vector<Edit> edits) {
  Scenario out{edits, base, base};
  for (std::size_t i = 0; i < edits.size(); ++i) {
    const std::string context = "edit " + std::to_string(i + 1) + " (" + describe(edits[i]) + ")";
    detail::EditableNetwork work(out.result);
    std::visit([&](const auto& e) { work.apply(e, context); }, edits[i]);
    out.result = work.build(context);
  }
  return out;
}

struct StationDelta {
  std::string station;
  std::optional<double> old_value;
  std::optional<double> new_value;
  std::optional<std::size_t> old_rank;
  std::optional<std::size_t> new_rank;
};

struct MeasureDiff {
  Measure measure = Measure::closeness;
  std::vector<StationDelta> stations;  // sorted by station id
};

struct LineDelta {
  LineId line;
  Measure measure = Measure::closeness;
  std::optional<double> old_mean;
  std::optional<double> new_mean;
};

struct ScenarioDiff {
  std::size_t edit_count = 0;
  CentralityTable base_table;
  CentralityTable result_table;
  std::vector<MeasureDiff> measures;  // one per station measure
  std::vector<LineDelta> lines;       // one per (line, measure)

  [[nodiscard]] const MeasureDiff& of(Measure m) const {
    for (const auto& d : measures) {
      if (d.measure == m) return d;
    }
    throw UsageError("measure not present in diff");
  }
  [[nodiscard]] const LineDelta& line(LineNumber number, Measure m) const {
    for (const auto& d : lines) {
      if (d.line.number == number && d.measure == m) return d;
    }
    throw UsageError("line " + std::to_string(number) + " not present in diff");
  }
};

namespace detail {

inline std::optional<double> line_mean(const TransitNetwork& net, const CentralityTable& table,
                                       LineNumber line, Measure m) {
  auto values = line_values(net, table, line, m);
  if (values.empty()) return std::nullopt;
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

}  // namespace detail

inline ScenarioDiff scenario_diff(const Scenario& scenario, MeasureOptions opts = {}) {
  ScenarioDiff out;
  out.edit_count = scenario.edits.size();
  out.base_table = all_measures(scenario.base, opts);
  out.result_table = all_measures(scenario.result, opts);

  for (Measure m : all_station_measures) {
    struct Side {
      double value;
      std::size_t rank;
    };
    std::map<std::string, std::pair<std::optional<Side>, std::optional<Side>>> rows;
    for (const auto& e : rank(out.base_table, m).entries) {
      rows[e.station].first = Side{e.value, e.rank};
    }
    for (const auto& e : rank(out.result_table, m).entries) {
      rows[e.station].second = Side{e.value, e.rank};
    }
    MeasureDiff diff;
    diff.measure = m;
    for (const auto& [id, sides] : rows) {
      StationDelta d;
      d.station = id;
      if (sides.first) {
        d.old_value = sides.first->value;
        d.old_rank = sides.first->rank;
      }
      if (sides.second) {
        d.new_value = sides.second->value;
        d.new_rank = sides.second->rank;
      }
      diff.stations.push_back(std::move(d));
    }
    out.measures.push_back(std::move(diff));
  }

  std::map<LineNumber, LineId> lines;
  for (const auto& l : scenario.base.lines()) lines.emplace(l.number, l);
  for (const auto& l : scenario.result.lines()) lines.emplace(l.number, l);
  for (const auto& [number, id] : lines) {
    for (Measure m : all_station_measures) {
      out.lines.push_back(LineDelta{id, m,
                                    detail::line_mean(scenario.base, out.base_table, number, m),
                                    detail::line_mean(scenario.result, out.result_table, number, m)});
    }
  }
  return out;
}

}  // namespace netcentral
