#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "CLI11.hpp"
#include "netcentral/analytics.hpp"
#include "netcentral/centrality.hpp"
#include "netcentral/document.hpp"
#include "netcentral/error.hpp"
#include "netcentral/network.hpp"
#include "netcentral/report.hpp"
#include "netcentral/scenario.hpp"

// The netcentral command line. run() is the whole program; the binary in
// tools/ only forwards argv to it, which lets tests drive it in-process.

namespace netcentral::cli {

enum ExitStatus : int {
  exit_ok = 0,
  exit_parse = 2,
  exit_validation = 3,
  exit_analysis = 4,
  exit_usage = 5,
};

inline int exit_status(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::parse: return exit_parse;
    case ErrorKind::validation: return exit_validation;
    case ErrorKind::analysis: return exit_analysis;
    case ErrorKind::usage: return exit_usage;
  }
  return exit_usage;
}

/// "file:line:col: message", dropping whatever location is unknown.
inline std::string diagnostic(std::string_view file, const Error& e) {
  std::string out;
  if (!file.empty()) {
    out.append(file);
    if (e.pos().known()) {
      out += ':' + std::to_string(e.pos().line) + ':' + std::to_string(e.pos().column);
    }
    out += ": ";
  } else {
    out += "netcentral: ";
  }
  out += e.what();
  return out;
}

struct LoadedNetwork {
  NetworkDocument doc;
  TransitNetwork net;
};

inline LoadedNetwork load(const std::string& path) {
  NetworkDocument doc = parse_network(read_text_file(path));
  TransitNetwork net = to_network(doc);
  return LoadedNetwork{std::move(doc), std::move(net)};
}

/// Writes `text` to standard output, or atomically to `path`: the data goes
/// to a sibling temporary file that is renamed into place, so a failed run
/// never leaves a truncated file behind.
inline void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    out.flush();
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp-netcentral";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError("cannot write '" + path + "'");
    f << text;
    f.flush();
    if (!f) {
      f.close();
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw UsageError("cannot write '" + path + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw UsageError("cannot write '" + path + "': " + ec.message());
  }
}

// ---------------------------------------------------------------------------
// Reports

/// Degree and eccentricity are integers; the other measures print as reals.
inline std::string format_measure(Measure m, double v) {
  if (m == Measure::degree || m == Measure::eccentricity) {
    return std::to_string(static_cast<long long>(v));
  }
  return fixed6(v);
}

inline std::string validate_report(const NetworkDocument& doc, const TransitNetwork& net) {
  std::ostringstream out;
  if (!doc.name.empty()) out << "network: " << doc.name << '\n';
  out << net.station_count() << " stations\n";
  out << net.link_count() << " links\n";
  out << net.lines().size() << " lines\n";
  const auto census = class_census(net);
  for (StationClass c : {StationClass::terminal, StationClass::regular, StationClass::y_branch,
                         StationClass::cross_section}) {
    out << to_string(c) << ": " << census.at(c) << '\n';
  }
  out << "connected: yes\n";
  return out.str();
}

inline std::string analyze_report(const TransitNetwork& net, std::string_view format) {
  const CentralityTable table = all_measures(net);
  std::ostringstream out;
  if (format == "csv") {
    write_analysis_csv(out, net, table);
  } else if (format == "json") {
    write_analysis_json(out, net, table);
  } else {
    throw UsageError("unknown analyze format '" + std::string(format) + "' (expected csv or json)");
  }
  return out.str();
}

inline std::string rank_report(const TransitNetwork& net, const RankedList& ranked) {
  std::ostringstream out;
  out << "rank,id,name," << to_string(ranked.measure) << ",lines\n";
  for (const auto& e : ranked.entries) {
    const Station& s = net.station(net.index_of(e.station));
    out << e.rank << ',' << csv_field(s.id) << ',' << csv_field(s.name) << ','
        << format_measure(ranked.measure, e.value) << ',' << join_line_numbers(s.lines) << '\n';
  }
  return out.str();
}

inline std::string lines_report(const TransitNetwork& net, Measure measure) {
  const CentralityTable table = all_measures(net);
  std::ostringstream out;
  out << "line,color,stations,min,q1,median,q3,max\n";
  for (const LineId& l : net.lines()) {
    const LineSummary s = line_summary(net, table, l.number, measure);
    out << l.number << ',' << csv_field(l.color) << ',' << s.station_count << ','
        << fixed6(s.summary.min) << ',' << fixed6(s.summary.q1) << ',' << fixed6(s.summary.median)
        << ',' << fixed6(s.summary.q3) << ',' << fixed6(s.summary.max) << '\n';
  }
  return out.str();
}

inline constexpr std::size_t scenario_movement_rows = 20;

inline std::string scenario_report(const Scenario& scenario, Measure measure) {
  if (scenario.edits.empty()) return "no changes\n";
  const ScenarioDiff diff = scenario_diff(scenario);
  const MeasureDiff& md = diff.of(measure);
  std::ostringstream out;
  out << "edits: " << scenario.edits.size() << '\n';
  for (const Edit& e : scenario.edits) out << "  " << describe(e) << '\n';
  out << "measure: " << to_string(measure) << '\n';

  auto fmt = [&](const std::optional<double>& v) {
    return v ? format_measure(measure, *v) : std::string{};
  };

  std::vector<const StationDelta*> moved, removed, added;
  for (const auto& d : md.stations) {
    if (d.old_rank && d.new_rank) {
      moved.push_back(&d);
    } else if (d.old_rank) {
      removed.push_back(&d);
    } else {
      added.push_back(&d);
    }
  }
  auto change = [](const StationDelta* d) {
    return static_cast<long long>(*d->old_rank) - static_cast<long long>(*d->new_rank);
  };
  std::stable_sort(moved.begin(), moved.end(), [&](const StationDelta* x, const StationDelta* y) {
    return std::llabs(change(x)) > std::llabs(change(y));
  });
  std::erase_if(moved, [&](const StationDelta* d) { return change(d) == 0; });
  if (moved.size() > scenario_movement_rows) moved.resize(scenario_movement_rows);

  if (!added.empty()) {
    out << "\nadded stations\nid,new_rank,new_value\n";
    for (const auto* d : added) {
      out << csv_field(d->station) << ',' << *d->new_rank << ',' << fmt(d->new_value) << '\n';
    }
  }
  if (!removed.empty()) {
    out << "\nremoved stations\nid,old_rank,old_value\n";
    for (const auto* d : removed) {
      out << csv_field(d->station) << ',' << *d->old_rank << ',' << fmt(d->old_value) << '\n';
    }
  }
  out << "\nrank movements\nid,old_rank,new_rank,change,old_value,new_value\n";
  for (const auto* d : moved) {
    const long long c = change(d);
    out << csv_field(d->station) << ',' << *d->old_rank << ',' << *d->new_rank << ','
        << (c > 0 ? "+" : "") << c << ',' << fmt(d->old_value) << ',' << fmt(d->new_value) << '\n';
  }
  out << "\nline means\nline,color,old_mean,new_mean,delta\n";
  for (const auto& l : diff.lines) {
    if (l.measure != measure) continue;
    out << l.line.number << ',' << csv_field(l.line.color) << ','
        << (l.old_mean ? fixed6(*l.old_mean) : "") << ',' << (l.new_mean ? fixed6(*l.new_mean) : "")
        << ',' << (l.old_mean && l.new_mean ? fixed6(*l.new_mean - *l.old_mean) : "") << '\n';
  }
  return out.str();
}

inline std::string export_report(const NetworkDocument& doc, const TransitNetwork& net,
                                 std::string_view format) {
  const CentralityTable table = all_measures(net);
  std::ostringstream out;
  if (format == "graphml") {
    write_graphml(out, net, table, doc.name);
  } else if (format == "dot") {
    write_dot(out, net, table, doc.name);
  } else if (format == "csv") {
    write_graph_csv(out, net, table);
  } else {
    throw UsageError("unknown export format '" + std::string(format) +
                     "' (expected graphml, dot or csv)");
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Edit flags

inline std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) parts.push_back(cur);
  if (!s.empty() && s.back() == ',') parts.emplace_back();
  return parts;
}

inline LineNumber parse_line_number(const std::string& s, const std::string& flag) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError(flag + ": '" + s + "' is not a line number");
}

inline Edit parse_edit(const std::string& flag, const std::string& value) {
  const auto p = split_commas(value);
  const bool blank = std::any_of(p.begin(), p.end(), [](const std::string& x) { return x.empty(); });
  if (flag == "--merge" && (p.size() == 2 || p.size() == 3) && !blank) {
    return MergeStations{p[0], p[1], p.size() == 3 ? p[2] : std::string{}};
  }
  if (flag == "--add-link" && p.size() == 3 && !blank) {
    return AddLink{p[0], p[1], parse_line_number(p[2], flag)};
  }
  if (flag == "--remove-link" && p.size() == 2 && !blank) return RemoveLink{p[0], p[1]};
  const char* shape = flag == "--merge"      ? "a,b[,new-id]"
                      : flag == "--add-link" ? "a,b,line"
                                             : "a,b";
  throw UsageError(flag + " expects " + shape + ", got '" + value + "'");
}

// ---------------------------------------------------------------------------
// Entry point

/// Runs one command. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Transit network centrality analysis", "netcentral"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all commands");

  std::string file, out_path, format, measure, x_measure, y_measure, compare = "betweenness";
  std::size_t top = 0;
  double top_fraction = 0.0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("file", file, "Network definition (.net.json)")->required();
    sub->add_option("--out", out_path, "Output path (default: standard output)");
  };

  auto* validate = app.add_subcommand("validate", "Check a network file and print its structure");
  add_common(validate);

  auto* analyze = app.add_subcommand("analyze", "Per-station and per-link measures");
  add_common(analyze);
  analyze->add_option("--format", format, "csv or json")->default_val("csv");

  auto* rank_cmd = app.add_subcommand("rank", "Stations ranked by one measure");
  add_common(rank_cmd);
  rank_cmd->add_option("--measure", measure, "degree, closeness, betweenness or eccentricity")
      ->required();
  auto* top_opt = rank_cmd->add_option("--top", top, "Number of rows");
  auto* frac_opt = rank_cmd->add_option("--top-fraction", top_fraction, "Fraction of stations, in (0, 1]");

  auto* lines_cmd = app.add_subcommand("lines", "Five-number summary of a measure per line");
  add_common(lines_cmd);
  lines_cmd->add_option("--measure", measure, "Measure to summarize")->required();

  auto* corr = app.add_subcommand("corr", "Spearman rank correlation of two measures");
  add_common(corr);
  corr->add_option("--x", x_measure, "First measure")->required();
  corr->add_option("--y", y_measure, "Second measure")->required();

  auto* scenario = app.add_subcommand("scenario", "Compare measures before and after edits");
  add_common(scenario);
  for (const char* flag : {"--merge", "--add-link", "--remove-link"}) {
    scenario->add_option(flag, "Topology edit; repeatable, applied in command-line order")
        ->expected(1)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  }
  scenario->add_option("--compare", compare, "Measure to compare")->default_val("betweenness");

  auto* export_cmd = app.add_subcommand("export", "Graph with measures as node and edge attributes");
  add_common(export_cmd);
  export_cmd->add_option("--format", format, "graphml, dot or csv")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (validate->parsed()) {
      auto loaded = load(file);
      emit(out_path, validate_report(loaded.doc, loaded.net), out);
    } else if (analyze->parsed()) {
      if (format != "csv" && format != "json") {
        throw UsageError("unknown analyze format '" + format + "' (expected csv or json)");
      }
      auto loaded = load(file);
      emit(out_path, analyze_report(loaded.net, format), out);
    } else if (rank_cmd->parsed()) {
      const Measure m = parse_measure(measure);
      const bool by_count = top_opt->count() > 0;
      const bool by_fraction = frac_opt->count() > 0;
      if (by_count == by_fraction) {
        throw UsageError("rank needs exactly one of --top or --top-fraction");
      }
      if (by_fraction && !(top_fraction > 0.0 && top_fraction <= 1.0)) {
        throw UsageError("--top-fraction must lie in (0, 1]");
      }
      auto loaded = load(file);
      const RankedList all = rank(all_measures(loaded.net), m);
      const RankedList shown = by_count ? top_count(all, top) : netcentral::top_fraction(all, top_fraction);
      emit(out_path, rank_report(loaded.net, shown), out);
    } else if (lines_cmd->parsed()) {
      const Measure m = parse_measure(measure);
      auto loaded = load(file);
      emit(out_path, lines_report(loaded.net, m), out);
    } else if (corr->parsed()) {
      const Measure mx = parse_measure(x_measure);
      const Measure my = parse_measure(y_measure);
      auto loaded = load(file);
      emit(out_path, fixed6(rank_correlation(all_measures(loaded.net), mx, my)) + "\n", out);
    } else if (scenario->parsed()) {
      const Measure m = parse_measure(compare);
      std::vector<Edit> edits;
      std::map<const CLI::Option*, std::size_t> seen;
      for (const CLI::Option* opt : scenario->parse_order()) {
        const std::string flag = opt->get_name();
        if (flag != "--merge" && flag != "--add-link" && flag != "--remove-link") continue;
        const std::size_t k = seen[opt]++;
        edits.push_back(parse_edit(flag, opt->results().at(k)));
      }
      auto loaded = load(file);
      emit(out_path, scenario_report(apply_scenario(loaded.net, std::move(edits)), m), out);
    } else if (export_cmd->parsed()) {
      if (format != "graphml" && format != "dot" && format != "csv") {
        throw UsageError("unknown export format '" + format + "' (expected graphml, dot or csv)");
      }
      auto loaded = load(file);
      emit(out_path, export_report(loaded.doc, loaded.net, format), out);
    }
  } catch (const Error& e) {
    const bool about_input = e.kind() == ErrorKind::parse || e.kind() == ErrorKind::validation;
    err << diagnostic(about_input ? file : std::string{}, e) << '\n';
    return exit_status(e.kind());
  } catch (const std::exception& e) {
    err << "netcentral: " << e.what() << '\n';
    return exit_analysis;
  }
  return exit_ok;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace netcentral::cli
