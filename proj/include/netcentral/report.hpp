#pragma once

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "netcentral/analytics.hpp"
#include "netcentral/centrality.hpp"
#include "netcentral/document.hpp"
#include "netcentral/network.hpp"

// Text output: CSV and JSON measure tables, GraphML and DOT graph exports.
// All reals are printed with exactly six decimals; CSV uses LF line endings.

namespace netcentral {

inline std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

/// "1;3" style list, safe inside a CSV field.
inline std::string join_line_numbers(const LineSet& lines, char sep = ';') {
  std::string out;
  for (LineNumber l : lines) {
    if (!out.empty()) out += sep;
    out += std::to_string(l);
  }
  return out;
}

/// Display color of a station: the color of its lowest-numbered line.
inline std::string station_color(const TransitNetwork& net, const Station& s) {
  if (s.lines.empty()) return {};
  const LineId* l = net.find_line(*s.lines.begin());
  return l ? l->color : std::string{};
}

inline std::string station_line_colors(const TransitNetwork& net, const Station& s) {
  std::string out;
  for (LineNumber n : s.lines) {
    if (!out.empty()) out += ';';
    if (const LineId* l = net.find_line(n)) out += l->color;
  }
  return out;
}

/// Graphviz wants X11 names without spaces ("dark blue" -> "darkblue").
inline std::string x11_color(std::string_view color) {
  std::string out;
  for (char c : color) {
    if (c != ' ') out += c;
  }
  return out;
}

/// Link indices ordered by edge betweenness descending, then by (a, b) id.
inline std::vector<LinkIndex> links_by_betweenness(const TransitNetwork& net,
                                                   const CentralityTable& table) {
  std::vector<LinkIndex> order(net.link_count());
  std::iota(order.begin(), order.end(), LinkIndex{0});
  std::sort(order.begin(), order.end(), [&](LinkIndex x, LinkIndex y) {
    const double vx = table.edge_betweenness[x];
    const double vy = table.edge_betweenness[y];
    if (vx != vy) return vx > vy;
    return std::tie(net.link(x).a, net.link(x).b) < std::tie(net.link(y).a, net.link(y).b);
  });
  return order;
}

// ---------------------------------------------------------------------------
// analyze

inline void write_analysis_csv(std::ostream& out, const TransitNetwork& net,
                               const CentralityTable& table) {
  out << "id,name,lines,degree,closeness,betweenness,eccentricity,class\n";
  for (StationIndex i = 0; i < net.station_count(); ++i) {
    const Station& s = net.station(i);
    out << csv_field(s.id) << ',' << csv_field(s.name) << ',' << join_line_numbers(s.lines) << ','
        << table.degree[i] << ',' << fixed6(table.closeness[i]) << ','
        << fixed6(table.betweenness[i]) << ',' << table.eccentricity[i] << ','
        << to_string(classify_degree(table.degree[i])) << '\n';
  }
  out << '\n';
  out << "from_id,to_id,From,To,lines,Value\n";
  for (LinkIndex e : links_by_betweenness(net, table)) {
    const Link& k = net.link(e);
    auto [a, b] = net.link_ends(e);
    out << csv_field(k.a) << ',' << csv_field(k.b) << ',' << csv_field(net.station(a).name) << ','
        << csv_field(net.station(b).name) << ',' << join_line_numbers(k.lines) << ','
        << fixed6(table.edge_betweenness[e]) << '\n';
  }
}

inline void write_analysis_json(std::ostream& out, const TransitNetwork& net,
                                const CentralityTable& table) {
  using detail::quote;
  auto line_array = [](const LineSet& lines) {
    std::string s = "[";
    for (LineNumber l : lines) s += (s.size() > 1 ? ", " : "") + std::to_string(l);
    return s + "]";
  };
  out << "{\n  \"stations\": [";
  for (StationIndex i = 0; i < net.station_count(); ++i) {
    const Station& s = net.station(i);
    out << (i ? ",\n" : "\n") << "    {\"id\": " << quote(s.id) << ", \"name\": " << quote(s.name)
        << ", \"lines\": " << line_array(s.lines) << ", \"degree\": " << table.degree[i]
        << ", \"closeness\": " << fixed6(table.closeness[i])
        << ", \"betweenness\": " << fixed6(table.betweenness[i])
        << ", \"eccentricity\": " << table.eccentricity[i] << ", \"class\": "
        << quote(to_string(classify_degree(table.degree[i]))) << '}';
  }
  out << "\n  ],\n  \"links\": [";
  bool first = true;
  for (LinkIndex e : links_by_betweenness(net, table)) {
    const Link& k = net.link(e);
    auto [a, b] = net.link_ends(e);
    out << (first ? "\n" : ",\n") << "    {\"from\": " << quote(k.a) << ", \"to\": " << quote(k.b)
        << ", \"from_name\": " << quote(net.station(a).name)
        << ", \"to_name\": " << quote(net.station(b).name) << ", \"lines\": " << line_array(k.lines)
        << ", \"edge_betweenness\": " << fixed6(table.edge_betweenness[e]) << '}';
    first = false;
  }
  out << "\n  ]\n}\n";
}

// ---------------------------------------------------------------------------
// export

inline void write_graphml(std::ostream& out, const TransitNetwork& net, const CentralityTable& table,
                          std::string_view graph_name) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\"\n"
         "         xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\"\n"
         "         xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns "
         "http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n";
  struct Key {
    const char* id;
    const char* domain;
    const char* type;
  };
  static constexpr Key node_keys[] = {
      {"name", "node", "string"},      {"lines", "node", "string"},
      {"color", "node", "string"},     {"line_colors", "node", "string"},
      {"degree", "node", "int"},       {"closeness", "node", "double"},
      {"betweenness", "node", "double"}, {"eccentricity", "node", "int"},
      {"class", "node", "string"},
  };
  for (const auto& k : node_keys) {
    out << "  <key id=\"" << k.id << "\" for=\"" << k.domain << "\" attr.name=\"" << k.id
        << "\" attr.type=\"" << k.type << "\"/>\n";
  }
  out << "  <key id=\"e_lines\" for=\"edge\" attr.name=\"lines\" attr.type=\"string\"/>\n"
         "  <key id=\"e_betweenness\" for=\"edge\" attr.name=\"edge_betweenness\" "
         "attr.type=\"double\"/>\n";
  out << "  <graph id=\"" << xml_escape(graph_name) << "\" edgedefault=\"undirected\">\n";
  for (StationIndex i = 0; i < net.station_count(); ++i) {
    const Station& s = net.station(i);
    out << "    <node id=\"" << xml_escape(s.id) << "\">\n";
    auto data = [&](std::string_view key, std::string_view value) {
      out << "      <data key=\"" << key << "\">" << xml_escape(value) << "</data>\n";
    };
    data("name", s.name);
    data("lines", join_line_numbers(s.lines));
    data("color", station_color(net, s));
    data("line_colors", station_line_colors(net, s));
    data("degree", std::to_string(table.degree[i]));
    data("closeness", fixed6(table.closeness[i]));
    data("betweenness", fixed6(table.betweenness[i]));
    data("eccentricity", std::to_string(table.eccentricity[i]));
    data("class", to_string(classify_degree(table.degree[i])));
    out << "    </node>\n";
  }
  for (LinkIndex e = 0; e < net.link_count(); ++e) {
    const Link& k = net.link(e);
    out << "    <edge id=\"e" << e << "\" source=\"" << xml_escape(k.a) << "\" target=\""
        << xml_escape(k.b) << "\">\n"
        << "      <data key=\"e_lines\">" << join_line_numbers(k.lines) << "</data>\n"
        << "      <data key=\"e_betweenness\">" << fixed6(table.edge_betweenness[e]) << "</data>\n"
        << "    </edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
}

inline void write_dot(std::ostream& out, const TransitNetwork& net, const CentralityTable& table,
                      std::string_view graph_name) {
  out << "graph " << dot_quote(graph_name) << " {\n";
  out << "  node [shape=circle, style=filled];\n";
  for (StationIndex i = 0; i < net.station_count(); ++i) {
    const Station& s = net.station(i);
    const std::string color = station_color(net, s);
    out << "  " << dot_quote(s.id) << " [label=" << dot_quote(s.name)
        << ", fillcolor=" << dot_quote(x11_color(color)) << ", line_color=" << dot_quote(color)
        << ", line_colors=" << dot_quote(station_line_colors(net, s))
        << ", lines=" << dot_quote(join_line_numbers(s.lines)) << ", degree=" << table.degree[i]
        << ", closeness=" << fixed6(table.closeness[i])
        << ", betweenness=" << fixed6(table.betweenness[i])
        << ", eccentricity=" << table.eccentricity[i]
        << ", class=" << dot_quote(to_string(classify_degree(table.degree[i]))) << "];\n";
  }
  for (LinkIndex e = 0; e < net.link_count(); ++e) {
    const Link& k = net.link(e);
    out << "  " << dot_quote(k.a) << " -- " << dot_quote(k.b)
        << " [lines=" << dot_quote(join_line_numbers(k.lines))
        << ", edge_betweenness=" << fixed6(table.edge_betweenness[e]) << "];\n";
  }
  out << "}\n";
}

/// Node table then edge table, separated by a blank line.
inline void write_graph_csv(std::ostream& out, const TransitNetwork& net,
                            const CentralityTable& table) {
  out << "id,name,lines,color,line_colors,degree,closeness,betweenness,eccentricity,class\n";
  for (StationIndex i = 0; i < net.station_count(); ++i) {
    const Station& s = net.station(i);
    out << csv_field(s.id) << ',' << csv_field(s.name) << ',' << join_line_numbers(s.lines) << ','
        << csv_field(station_color(net, s)) << ',' << csv_field(station_line_colors(net, s)) << ','
        << table.degree[i] << ',' << fixed6(table.closeness[i]) << ','
        << fixed6(table.betweenness[i]) << ',' << table.eccentricity[i] << ','
        << to_string(classify_degree(table.degree[i])) << '\n';
  }
  out << '\n';
  out << "source,target,lines,edge_betweenness\n";
  for (LinkIndex e = 0; e < net.link_count(); ++e) {
    const Link& k = net.link(e);
    out << csv_field(k.a) << ',' << csv_field(k.b) << ',' << join_line_numbers(k.lines) << ','
        << fixed6(table.edge_betweenness[e]) << '\n';
  }
}

}  // namespace netcentral
