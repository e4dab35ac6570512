#pragma once

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <iterator>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"

#include "netcentral/error.hpp"
#include "netcentral/network.hpp"

// Network definition files (`*.net.json`).
//
// A file is a single UTF-8 JSON object:
//
//   {
//     "name": "Example",
//     "lines": [{"number": 1, "color": "red"}],
//     "stations": [{"id": "a", "name": "A", "lines": [1]}, ...],
//     "links": [{"from": "a", "to": "b", "line": 1}, ...]
//   }
//
// Parsing is strict: unknown fields, duplicate keys, wrong types and missing
// fields are errors. Every diagnostic carries the 1-based line/column of the
// offending token. "name" is optional; the other three members are required.

namespace netcentral {

struct DocLine {
  LineNumber number = 0;
  std::string color;
  SourcePos pos{};

  friend bool operator==(const DocLine& x, const DocLine& y) {
    return x.number == y.number && x.color == y.color;
  }
};

struct DocStation {
  std::string id;
  std::string name;
  std::vector<LineNumber> lines;
  SourcePos pos{};

  friend bool operator==(const DocStation& x, const DocStation& y) {
    return x.id == y.id && x.name == y.name && x.lines == y.lines;
  }
};

struct DocLink {
  std::string from;
  std::string to;
  LineNumber line = 0;
  SourcePos pos{};

  friend bool operator==(const DocLink& x, const DocLink& y) {
    return x.from == y.from && x.to == y.to && x.line == y.line;
  }
};

/// Parsed form of a network definition file. Source positions are carried for
/// diagnostics only and do not take part in equality.
struct NetworkDocument {
  std::string name;
  std::vector<DocLine> lines;
  std::vector<DocStation> stations;
  std::vector<DocLink> links;

  friend bool operator==(const NetworkDocument&, const NetworkDocument&) = default;
};

namespace detail {

/// Tracks the line/column of the characters nlohmann's lexer consumes, and
/// the start of the most recent token.
struct PositionTracker {
  std::size_t line = 1;
  std::size_t column = 1;
  SourcePos last{};   // position of the last consumed character
  SourcePos token{};  // start of the most recently started token
  bool pending = true;
  bool in_string = false;
  bool escape = false;

  void consume(char c) {
    last = {line, column};
    if (in_string) {
      if (escape) {
        escape = false;
      } else if (c == '\\') {
        escape = true;
      } else if (c == '"') {
        in_string = false;
      }
    } else {
      const bool ws = c == ' ' || c == '\t' || c == '\n' || c == '\r';
      if (!ws && pending) {
        token = last;
        pending = false;
      }
      if (c == '"') {
        in_string = true;
      } else if (c == '{' || c == '[' || c == ',' || c == ':') {
        pending = true;
      }
    }
    if (c == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
};

class TrackingIterator {
 public:
  using iterator_category = std::input_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  TrackingIterator() = default;
  TrackingIterator(const char* p, PositionTracker* tracker) : p_(p), tracker_(tracker) {}

  reference operator*() const { return *p_; }
  TrackingIterator& operator++() {
    if (tracker_) tracker_->consume(*p_);
    ++p_;
    return *this;
  }
  TrackingIterator operator++(int) {
    auto copy = *this;
    ++*this;
    return copy;
  }
  friend bool operator==(const TrackingIterator& x, const TrackingIterator& y) {
    return x.p_ == y.p_;
  }

 private:
  const char* p_ = nullptr;
  PositionTracker* tracker_ = nullptr;
};

inline std::string escape_pointer_token(std::string_view key) {
  std::string out;
  for (char c : key) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

/// SAX consumer that builds a DOM, records the start position of every value
/// under its JSON pointer, and rejects duplicate object keys.
class PositionedDomBuilder {
 public:
  using json = nlohmann::ordered_json;
  using number_integer_t = json::number_integer_t;
  using number_unsigned_t = json::number_unsigned_t;
  using number_float_t = json::number_float_t;
  using string_t = json::string_t;
  using binary_t = json::binary_t;

  explicit PositionedDomBuilder(const PositionTracker& tracker) : tracker_(tracker) {}

  bool null() { return add(json(nullptr)); }
  bool boolean(bool v) { return add(json(v)); }
  bool number_integer(number_integer_t v) { return add(json(v)); }
  bool number_unsigned(number_unsigned_t v) { return add(json(v)); }
  bool number_float(number_float_t v, const string_t&) { return add(json(v)); }
  bool string(string_t& v) { return add(json(v)); }
  bool binary(binary_t& v) { return add(json(std::move(v))); }

  bool start_object(std::size_t) {
    json* node = add_container(json::object());
    return node != nullptr;
  }
  bool key(string_t& k) {
    Frame& top = stack_.back();
    if (top.node->contains(k)) {
      error_ = ParseError("duplicate key '" + k + "'", tracker_.token);
      return false;
    }
    top.key = k;
    return true;
  }
  bool end_object() {
    stack_.pop_back();
    return true;
  }
  bool start_array(std::size_t) { return add_container(json::array()) != nullptr; }
  bool end_array() {
    stack_.pop_back();
    return true;
  }

  bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception& ex) {
    std::string msg = ex.what();
    // Drop nlohmann's "[json.exception.parse_error.101] parse error at line L, column C: "
    // prefix; the position is reported separately.
    if (auto col = msg.find("column "); col != std::string::npos) {
      if (auto colon = msg.find(": ", col); colon != std::string::npos) msg = msg.substr(colon + 2);
    }
    error_ = ParseError(msg, tracker_.last);
    return false;
  }

  [[nodiscard]] const std::optional<ParseError>& error() const { return error_; }
  json& root() { return root_; }
  [[nodiscard]] SourcePos position(const std::string& pointer) const {
    auto it = positions_.find(pointer);
    return it == positions_.end() ? SourcePos{} : it->second;
  }

 private:
  struct Frame {
    json* node;
    std::string pointer;
    std::string key;
  };

  std::pair<json*, std::string> place(json&& value) {
    if (stack_.empty()) {
      root_ = std::move(value);
      return {&root_, ""};
    }
    Frame& top = stack_.back();
    if (top.node->is_array()) {
      std::string ptr = top.pointer + "/" + std::to_string(top.node->size());
      top.node->push_back(std::move(value));
      return {&top.node->back(), std::move(ptr)};
    }
    std::string ptr = top.pointer + "/" + escape_pointer_token(top.key);
    json& slot = (*top.node)[top.key];
    slot = std::move(value);
    return {&slot, std::move(ptr)};
  }

  bool add(json&& value) {
    auto [node, ptr] = place(std::move(value));
    positions_[ptr] = tracker_.token;
    return true;
  }

  json* add_container(json&& value) {
    auto [node, ptr] = place(std::move(value));
    positions_[ptr] = tracker_.token;
    stack_.push_back(Frame{node, std::move(ptr), {}});
    return node;
  }

  const PositionTracker& tracker_;
  json root_;
  std::vector<Frame> stack_;
  std::unordered_map<std::string, SourcePos> positions_;
  std::optional<ParseError> error_;
};

class DocumentReader {
 public:
  using json = nlohmann::ordered_json;

  explicit DocumentReader(const PositionedDomBuilder& dom) : dom_(dom) {}

  NetworkDocument read(const json& root) {
    NetworkDocument doc;
    require_object(root, "", {"name", "lines", "stations", "links"}, {"lines", "stations", "links"});
    if (root.contains("name")) doc.name = get_string(root["name"], "/name");

    const json& lines = require_array(root["lines"], "/lines");
    for (std::size_t i = 0; i < lines.size(); ++i) {
      const std::string ptr = "/lines/" + std::to_string(i);
      require_object(lines[i], ptr, {"number", "color"}, {"number", "color"});
      doc.lines.push_back(DocLine{get_line_number(lines[i]["number"], ptr + "/number"),
                                  get_string(lines[i]["color"], ptr + "/color"), pos(ptr)});
    }

    const json& stations = require_array(root["stations"], "/stations");
    for (std::size_t i = 0; i < stations.size(); ++i) {
      const std::string ptr = "/stations/" + std::to_string(i);
      require_object(stations[i], ptr, {"id", "name", "lines"}, {"id", "name", "lines"});
      DocStation st;
      st.pos = pos(ptr);
      st.id = get_string(stations[i]["id"], ptr + "/id");
      if (st.id.empty()) throw ParseError("station id must not be empty", pos(ptr + "/id"));
      st.name = get_string(stations[i]["name"], ptr + "/name");
      const json& sl = require_array(stations[i]["lines"], ptr + "/lines");
      if (sl.empty()) {
        throw ValidationError("station '" + st.id + "' belongs to no line", pos(ptr + "/lines"));
      }
      for (std::size_t k = 0; k < sl.size(); ++k) {
        st.lines.push_back(get_line_number(sl[k], ptr + "/lines/" + std::to_string(k)));
      }
      doc.stations.push_back(std::move(st));
    }

    const json& links = require_array(root["links"], "/links");
    for (std::size_t i = 0; i < links.size(); ++i) {
      const std::string ptr = "/links/" + std::to_string(i);
      require_object(links[i], ptr, {"from", "to", "line"}, {"from", "to", "line"});
      doc.links.push_back(DocLink{get_string(links[i]["from"], ptr + "/from"),
                                  get_string(links[i]["to"], ptr + "/to"),
                                  get_line_number(links[i]["line"], ptr + "/line"), pos(ptr)});
    }
    return doc;
  }

 private:
  [[nodiscard]] SourcePos pos(const std::string& ptr) const { return dom_.position(ptr); }

  static std::string where(const std::string& ptr) { return ptr.empty() ? "document root" : ptr; }

  void require_object(const json& v, const std::string& ptr, std::set<std::string> allowed,
                      std::set<std::string> required) const {
    if (!v.is_object()) throw ParseError(where(ptr) + ": expected an object", pos(ptr));
    for (const auto& [k, child] : v.items()) {
      if (!allowed.contains(k)) {
        throw ParseError(where(ptr) + ": unknown field '" + k + "'",
                         pos(ptr + "/" + escape_pointer_token(k)));
      }
    }
    for (const auto& k : required) {
      if (!v.contains(k)) throw ParseError(where(ptr) + ": missing field '" + k + "'", pos(ptr));
    }
  }

  const json& require_array(const json& v, const std::string& ptr) const {
    if (!v.is_array()) throw ParseError(ptr + ": expected an array", pos(ptr));
    return v;
  }

  std::string get_string(const json& v, const std::string& ptr) const {
    if (!v.is_string()) throw ParseError(ptr + ": expected a string", pos(ptr));
    return v.get<std::string>();
  }

  LineNumber get_line_number(const json& v, const std::string& ptr) const {
    if (!v.is_number_integer()) throw ParseError(ptr + ": expected an integer line number", pos(ptr));
    auto n = v.get<long long>();
    if (n < min_line_number || n > max_line_number) {
      throw ParseError(ptr + ": line number " + std::to_string(n) + " outside 1..255", pos(ptr));
    }
    return static_cast<LineNumber>(n);
  }

  const PositionedDomBuilder& dom_;
};

/// Referential checks that only need the document itself.
inline void check_references(const NetworkDocument& doc) {
  std::unordered_map<LineNumber, const DocLine*> lines;
  for (const auto& l : doc.lines) {
    if (!lines.emplace(l.number, &l).second) {
      throw ValidationError("duplicate line number " + std::to_string(l.number), l.pos);
    }
  }
  std::unordered_map<std::string, const DocStation*> stations;
  for (const auto& s : doc.stations) {
    if (!stations.emplace(s.id, &s).second) {
      throw ValidationError("duplicate station id '" + s.id + "'", s.pos);
    }
    for (LineNumber l : s.lines) {
      if (!lines.contains(l)) {
        throw ValidationError("station '" + s.id + "' references unknown line " + std::to_string(l),
                              s.pos);
      }
    }
  }
  for (const auto& k : doc.links) {
    for (const std::string* end : {&k.from, &k.to}) {
      if (!stations.contains(*end)) {
        throw ValidationError("link " + describe_link(k.from, k.to) +
                                  " references unknown station '" + *end + "'",
                              k.pos);
      }
    }
    if (!lines.contains(k.line)) {
      throw ValidationError("link " + describe_link(k.from, k.to) + " references unknown line " +
                                std::to_string(k.line),
                            k.pos);
    }
  }
}

inline std::string quote(std::string_view s) {
  return nlohmann::json(std::string(s)).dump(-1, ' ', false, nlohmann::json::error_handler_t::strict);
}

}  // namespace detail

/// Parses and structurally validates a network definition document.
///
/// Throws ParseError for malformed text or shape (syntax, unknown or duplicate
/// keys, wrong types, missing fields) and ValidationError for broken
/// references (unknown line or station, duplicate ids or line numbers). Graph
/// level checks (self-loops, connectivity, ...) happen in to_network().
inline NetworkDocument parse_network(std::string_view text) {
  detail::PositionTracker tracker;
  detail::PositionedDomBuilder dom(tracker);
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  bool ok = nlohmann::ordered_json::sax_parse(detail::TrackingIterator(begin, &tracker),
                                              detail::TrackingIterator(end, &tracker), &dom);
  if (!ok || dom.error()) {
    if (dom.error()) throw *dom.error();
    throw ParseError("malformed document", tracker.last);
  }
  detail::DocumentReader reader(dom);
  NetworkDocument doc = reader.read(dom.root());
  detail::check_references(doc);
  return doc;
}

/// Returns the document with lists in canonical order: lines by number,
/// stations by id (with sorted, de-duplicated line lists), links by
/// (from, to, line).
inline NetworkDocument canonicalize(NetworkDocument doc) {
  std::sort(doc.lines.begin(), doc.lines.end(),
            [](const DocLine& x, const DocLine& y) { return x.number < y.number; });
  for (auto& s : doc.stations) {
    std::sort(s.lines.begin(), s.lines.end());
    s.lines.erase(std::unique(s.lines.begin(), s.lines.end()), s.lines.end());
  }
  std::sort(doc.stations.begin(), doc.stations.end(),
            [](const DocStation& x, const DocStation& y) { return x.id < y.id; });
  std::sort(doc.links.begin(), doc.links.end(), [](const DocLink& x, const DocLink& y) {
    return std::tie(x.from, x.to, x.line) < std::tie(y.from, y.to, y.line);
  });
  return doc;
}

/// Deterministic, order-canonical text form. One list element per line.
inline std::string serialize_network(const NetworkDocument& input) {
  const NetworkDocument doc = canonicalize(input);
  using detail::quote;
  std::ostringstream out;
  out << "{\n  \"name\": " << quote(doc.name) << ",\n";

  out << "  \"lines\": [";
  for (std::size_t i = 0; i < doc.lines.size(); ++i) {
    out << (i ? ",\n" : "\n") << "    {\"number\": " << doc.lines[i].number
        << ", \"color\": " << quote(doc.lines[i].color) << '}';
  }
  out << (doc.lines.empty() ? "],\n" : "\n  ],\n");

  out << "  \"stations\": [";
  for (std::size_t i = 0; i < doc.stations.size(); ++i) {
    const auto& s = doc.stations[i];
    out << (i ? ",\n" : "\n") << "    {\"id\": " << quote(s.id) << ", \"name\": " << quote(s.name)
        << ", \"lines\": [";
    for (std::size_t k = 0; k < s.lines.size(); ++k) out << (k ? ", " : "") << s.lines[k];
    out << "]}";
  }
  out << (doc.stations.empty() ? "],\n" : "\n  ],\n");

  out << "  \"links\": [";
  for (std::size_t i = 0; i < doc.links.size(); ++i) {
    const auto& k = doc.links[i];
    out << (i ? ",\n" : "\n") << "    {\"from\": " << quote(k.from) << ", \"to\": " << quote(k.to)
        << ", \"line\": " << k.line << '}';
  }
  out << (doc.links.empty() ? "]\n" : "\n  ]\n");
  out << "}\n";
  return out.str();
}

/// Builds the validated network described by a document. Errors that can be
/// pinned to a declaration carry its source position.
inline TransitNetwork to_network(const NetworkDocument& doc) {
  detail::check_references(doc);
  std::unordered_map<std::string, const DocStation*> by_id;
  for (const auto& s : doc.stations) by_id.emplace(s.id, &s);
  for (const auto& k : doc.links) {
    if (k.from == k.to) {
      throw ValidationError("self-loop link " + describe_link(k.from, k.to), k.pos);
    }
    for (const std::string* end : {&k.from, &k.to}) {
      const auto& lines = by_id.at(*end)->lines;
      if (std::find(lines.begin(), lines.end(), k.line) == lines.end()) {
        throw ValidationError("link " + describe_link(k.from, k.to) + " claims line " +
                                  std::to_string(k.line) + " but station '" + *end +
                                  "' is not on it",
                              k.pos);
      }
    }
  }

  std::vector<LineId> lines;
  lines.reserve(doc.lines.size());
  for (const auto& l : doc.lines) lines.push_back(LineId{l.number, l.color});
  std::vector<Station> stations;
  stations.reserve(doc.stations.size());
  for (const auto& s : doc.stations) {
    stations.push_back(Station{s.id, s.name, LineSet(s.lines.begin(), s.lines.end())});
  }
  std::vector<Link> links;
  links.reserve(doc.links.size());
  for (const auto& k : doc.links) links.push_back(Link{k.from, k.to, LineSet{k.line}});
  return build_network(std::move(stations), std::move(links), std::move(lines));
}

/// Inverse of to_network: one document link per (link, line) pair.
inline NetworkDocument to_document(const TransitNetwork& net, std::string name = {}) {
  NetworkDocument doc;
  doc.name = std::move(name);
  for (const auto& l : net.lines()) doc.lines.push_back(DocLine{l.number, l.color, {}});
  for (const auto& s : net.stations()) {
    doc.stations.push_back(
        DocStation{s.id, s.name, std::vector<LineNumber>(s.lines.begin(), s.lines.end()), {}});
  }
  for (const auto& k : net.links()) {
    for (LineNumber l : k.lines) doc.links.push_back(DocLink{k.a, k.b, l, {}});
  }
  return canonicalize(std::move(doc));
}

/// Reads a whole file. Throws ParseError if it cannot be opened.
inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace netcentral
