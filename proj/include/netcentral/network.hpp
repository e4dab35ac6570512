#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "netcentral/error.hpp"

namespace netcentral {

using LineNumber = int;
using LineSet = std::set<LineNumber>;
using StationIndex = std::uint32_t;
using LinkIndex = std::uint32_t;

inline constexpr LineNumber min_line_number = 1;
inline constexpr LineNumber max_line_number = 255;

struct LineId {
  LineNumber number = 0;
  std::string color;

  friend bool operator==(const LineId&, const LineId&) = default;
};

struct Station {
  std::string id;
  std::string name;
  LineSet lines;

  friend bool operator==(const Station&, const Station&) = default;
};

/// An undirected adjacency between two stations. Inside a built network the
/// endpoints are stored with a < b.
struct Link {
  std::string a;
  std::string b;
  LineSet lines;

  friend bool operator==(const Link&, const Link&) = default;
};

enum class StationClass { terminal, regular, y_branch, cross_section };

inline constexpr std::string_view to_string(StationClass c) noexcept {
  switch (c) {
    case StationClass::terminal: return "terminal";
    case StationClass::regular: return "regular";
    case StationClass::y_branch: return "y_branch";
    case StationClass::cross_section: return "cross_section";
  }
  return "unknown";
}

/// Degree 1 terminal, 2 regular, 3 Y-branch, 4 or more cross-section.
/// Degree 0 only occurs in invalid networks and is reported as terminal.
inline constexpr StationClass classify_degree(std::size_t degree) noexcept {
  if (degree <= 1) return StationClass::terminal;
  if (degree == 2) return StationClass::regular;
  if (degree == 3) return StationClass::y_branch;
  return StationClass::cross_section;
}

inline std::string describe_link(std::string_view a, std::string_view b) {
  std::string out;
  out.reserve(a.size() + b.size() + 3);
  out.append(a).append(" -- ").append(b);
  return out;
}

/// Immutable, validated, connected simple graph of stations.
///
/// Stations are held sorted by id and links sorted by their (a, b) endpoint
/// indices, so every index-based view is independent of input order.
class TransitNetwork {
 public:
  struct Neighbor {
    StationIndex station;
    LinkIndex link;
    friend bool operator==(const Neighbor&, const Neighbor&) = default;
  };

  [[nodiscard]] std::size_t station_count() const noexcept { return stations_.size(); }
  [[nodiscard]] std::size_t link_count() const noexcept { return links_.size(); }

  [[nodiscard]] std::span<const Station> stations() const noexcept { return stations_; }
  [[nodiscard]] std::span<const Link> links() const noexcept { return links_; }
  [[nodiscard]] std::span<const LineId> lines() const noexcept { return lines_; }

  [[nodiscard]] const Station& station(StationIndex i) const { return stations_.at(i); }
  [[nodiscard]] const Link& link(LinkIndex i) const { return links_.at(i); }
  [[nodiscard]] std::pair<StationIndex, StationIndex> link_ends(LinkIndex i) const {
    return link_ends_.at(i);
  }
  [[nodiscard]] std::span<const Neighbor> neighbors(StationIndex i) const {
    return adjacency_.at(i);
  }

  [[nodiscard]] std::optional<StationIndex> find(std::string_view id) const noexcept {
    auto it = std::lower_bound(stations_.begin(), stations_.end(), id,
                               [](const Station& s, std::string_view key) { return s.id < key; });
    if (it == stations_.end() || it->id != id) return std::nullopt;
    return static_cast<StationIndex>(it - stations_.begin());
  }

  /// Throws ValidationError for an unknown id.
  [[nodiscard]] StationIndex index_of(std::string_view id) const {
    if (auto i = find(id)) return *i;
    throw ValidationError("unknown station '" + std::string(id) + "'");
  }

  [[nodiscard]] std::optional<LinkIndex> find_link(StationIndex u, StationIndex v) const {
    const auto& row = adjacency_.at(u);
    auto it = std::lower_bound(row.begin(), row.end(), v,
                               [](const Neighbor& n, StationIndex key) { return n.station < key; });
    if (it == row.end() || it->station != v) return std::nullopt;
    return it->link;
  }

  [[nodiscard]] const LineId* find_line(LineNumber number) const noexcept {
    auto it = std::find_if(lines_.begin(), lines_.end(),
                           [&](const LineId& l) { return l.number == number; });
    return it == lines_.end() ? nullptr : &*it;
  }

  [[nodiscard]] std::size_t degree(StationIndex i) const { return adjacency_.at(i).size(); }

  friend bool operator==(const TransitNetwork& x, const TransitNetwork& y) {
    return x.lines_ == y.lines_ && x.stations_ == y.stations_ && x.links_ == y.links_;
  }

 private:
  friend TransitNetwork build_network(std::vector<Station>, std::vector<Link>,
                                      std::vector<LineId>);

  std::vector<LineId> lines_;
  std::vector<Station> stations_;
  std::vector<Link> links_;
  std::vector<std::pair<StationIndex, StationIndex>> link_ends_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

namespace detail {

inline std::string join_lines(const LineSet& lines) {
  std::string out;
  for (LineNumber l : lines) {
    if (!out.empty()) out += ',';
    out += std::to_string(l);
  }
  return out;
}

/// Connected components as sorted lists of station indices, ordered by their
/// smallest member.
inline std::vector<std::vector<StationIndex>> components(
    std::size_t n, const std::vector<std::vector<TransitNetwork::Neighbor>>& adjacency) {
  std::vector<std::vector<StationIndex>> out;
  std::vector<bool> seen(n, false);
  std::vector<StationIndex> stack;
  for (StationIndex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<StationIndex> comp;
    seen[s] = true;
    stack.push_back(s);
    while (!stack.empty()) {
      StationIndex u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (const auto& nb : adjacency[u]) {
        if (!seen[nb.station]) {
          seen[nb.station] = true;
          stack.push_back(nb.station);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

inline std::string describe_components(const std::vector<std::vector<StationIndex>>& comps,
                                       std::span<const Station> stations) {
  constexpr std::size_t max_listed = 8;
  std::string out = std::to_string(comps.size()) + " components: ";
  for (std::size_t c = 0; c < comps.size(); ++c) {
    if (c) out += " | ";
    out += '{';
    for (std::size_t i = 0; i < comps[c].size() && i < max_listed; ++i) {
      if (i) out += ", ";
      out += stations[comps[c][i]].id;
    }
    if (comps[c].size() > max_listed) {
      out += ", ... (" + std::to_string(comps[c].size()) + " stations)";
    }
    out += '}';
  }
  return out;
}

}  // namespace detail

/// Validates and freezes a station graph.
///
/// Parallel declarations of the same unordered pair are merged into one link
/// whose line set is the union. When `lines` is empty the line table is derived
/// from the stations (with empty colors); otherwise every line a station claims
/// must be declared there.
///
/// Throws ValidationError on: fewer than two stations, empty or duplicate
/// station id, station without lines, undeclared or out-of-range line, duplicate
/// line number, unknown link endpoint, self-loop, link without lines, link line
/// not served by both endpoints, and a disconnected graph (the message lists
/// the components).
inline TransitNetwork build_network(std::vector<Station> stations, std::vector<Link> links,
                                    std::vector<LineId> lines = {}) {
  TransitNetwork net;

  std::sort(lines.begin(), lines.end(),
            [](const LineId& x, const LineId& y) { return x.number < y.number; });
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].number < min_line_number || lines[i].number > max_line_number) {
      throw ValidationError("line number " + std::to_string(lines[i].number) +
                            " outside 1..255");
    }
    if (i > 0 && lines[i].number == lines[i - 1].number) {
      throw ValidationError("duplicate line number " + std::to_string(lines[i].number));
    }
  }
  const bool derive_lines = lines.empty();

  if (stations.size() < 2) {
    throw ValidationError("a network needs at least two stations");
  }
  std::sort(stations.begin(), stations.end(),
            [](const Station& x, const Station& y) { return x.id < y.id; });
  LineSet seen_lines;
  for (std::size_t i = 0; i < stations.size(); ++i) {
    const Station& s = stations[i];
    if (s.id.empty()) throw ValidationError("station with empty id");
    if (i > 0 && s.id == stations[i - 1].id) {
      throw ValidationError("duplicate station id '" + s.id + "'");
    }
    if (s.lines.empty()) throw ValidationError("station '" + s.id + "' belongs to no line");
    for (LineNumber l : s.lines) {
      if (l < min_line_number || l > max_line_number) {
        throw ValidationError("station '" + s.id + "' claims line " + std::to_string(l) +
                              " outside 1..255");
      }
      seen_lines.insert(l);
    }
  }
  if (derive_lines) {
    for (LineNumber l : seen_lines) lines.push_back(LineId{l, ""});
  } else {
    for (LineNumber l : seen_lines) {
      bool declared = std::any_of(lines.begin(), lines.end(),
                                  [&](const LineId& d) { return d.number == l; });
      if (!declared) throw ValidationError("line " + std::to_string(l) + " is not declared");
    }
  }
  net.lines_ = std::move(lines);
  net.stations_ = std::move(stations);

  // Canonicalize endpoints and merge parallel declarations.
  std::map<std::pair<StationIndex, StationIndex>, LineSet> merged;
  for (const Link& raw : links) {
    auto ia = net.find(raw.a);
    if (!ia) {
      throw ValidationError("link " + describe_link(raw.a, raw.b) + " references unknown station '" +
                            raw.a + "'");
    }
    auto ib = net.find(raw.b);
    if (!ib) {
      throw ValidationError("link " + describe_link(raw.a, raw.b) + " references unknown station '" +
                            raw.b + "'");
    }
    if (*ia == *ib) throw ValidationError("self-loop link " + describe_link(raw.a, raw.b));
    if (raw.lines.empty()) {
      throw ValidationError("link " + describe_link(raw.a, raw.b) + " belongs to no line");
    }
    const LineSet& la = net.stations_[*ia].lines;
    const LineSet& lb = net.stations_[*ib].lines;
    for (LineNumber l : raw.lines) {
      if (!la.contains(l) || !lb.contains(l)) {
        throw ValidationError("link " + describe_link(raw.a, raw.b) + " claims line " +
                              std::to_string(l) + " not served by both endpoints");
      }
    }
    auto key = std::minmax(*ia, *ib);
    merged[{key.first, key.second}].insert(raw.lines.begin(), raw.lines.end());
  }

  const std::size_t n = net.stations_.size();
  net.adjacency_.assign(n, {});
  net.links_.reserve(merged.size());
  net.link_ends_.reserve(merged.size());
  for (auto& [ends, line_set] : merged) {
    auto li = static_cast<LinkIndex>(net.links_.size());
    net.links_.push_back(Link{net.stations_[ends.first].id, net.stations_[ends.second].id,
                              std::move(line_set)});
    net.link_ends_.push_back(ends);
    net.adjacency_[ends.first].push_back({ends.second, li});
    net.adjacency_[ends.second].push_back({ends.first, li});
  }
  for (auto& row : net.adjacency_) {
    std::sort(row.begin(), row.end(),
              [](const auto& x, const auto& y) { return x.station < y.station; });
  }

  auto comps = detail::components(n, net.adjacency_);
  if (comps.size() > 1) {
    throw ValidationError("network is disconnected: " +
                          detail::describe_components(comps, net.stations_));
  }
  return net;
}

inline std::size_t degree(const TransitNetwork& net, std::string_view station) {
  return net.degree(net.index_of(station));
}

inline StationClass classify_station(const TransitNetwork& net, std::string_view station) {
  return classify_degree(degree(net, station));
}

/// Station count per class. Every class is present as a key, possibly with 0.
inline std::map<StationClass, std::size_t> class_census(const TransitNetwork& net) {
  std::map<StationClass, std::size_t> census{{StationClass::terminal, 0},
                                             {StationClass::regular, 0},
                                             {StationClass::y_branch, 0},
                                             {StationClass::cross_section, 0}};
  for (StationIndex i = 0; i < net.station_count(); ++i) ++census[classify_degree(net.degree(i))];
  return census;
}

}  // namespace netcentral
