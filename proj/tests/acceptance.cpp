// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "netcentral/cli.hpp"
#include "netcentral/netcentral.hpp"
#include "support.hpp"

using namespace netcentral;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += "failed: " + what;
    }
  }
  void note(const std::string& text) {
    if (!detail.empty()) detail += "; ";
    detail += text;
  }
};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string num(double v, int digits = 1) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

bool tables_close(const CentralityTable& x, const CentralityTable& y, double tol) {
  if (x.station_ids != y.station_ids || x.link_ends != y.link_ends) return false;
  if (x.degree != y.degree || x.eccentricity != y.eccentricity) return false;
  for (std::size_t i = 0; i < x.station_count(); ++i) {
    if (std::abs(x.closeness[i] - y.closeness[i]) > tol) return false;
    if (std::abs(x.betweenness[i] - y.betweenness[i]) > tol) return false;
  }
  for (std::size_t e = 0; e < x.link_count(); ++e) {
    if (std::abs(x.edge_betweenness[e] - y.edge_betweenness[e]) > tol) return false;
  }
  return true;
}

std::string run_cli(const std::vector<std::string>& args, int& code) {
  std::ostringstream out, err;
  code = cli::run(args, out, err);
  return out.str();
}

std::string fixture_path() { return NETCENTRAL_SOURCE_DIR "/data/tusrs.net.json"; }

const TransitNetwork& tusrs() {
  static const TransitNetwork net = bundled_tusrs_network();
  return net;
}

const CentralityTable& tusrs_table() {
  static const CentralityTable t = all_measures(tusrs());
  return t;
}

// 1
Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937_64 rng(20240101);
  const auto t0 = Clock::now();
  int agree = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 4 + trial % 9;
    const double p = 0.05 + 0.9 * (trial % 10) / 9.0;
    const auto net = nctest::make_graph(n, nctest::random_connected_edges(n, p, rng));
    if (tables_close(all_measures(net), oracle_measures(net), 1e-9)) ++agree;
  }
  const double ms = ms_since(t0);
  o.require(agree == 200, "all 200 graphs agree");
  o.require(ms < 10000, "runtime under 10 s");
  o.note(std::to_string(agree) + "/200 graphs agree in " + num(ms) + " ms");
  return o;
}

// 2
Outcome golden_tables() {
  Outcome o;
  constexpr double tol = 1e-12;
  struct Case {
    const char* name;
    int n;
    nctest::Edges edges;
    std::vector<double> clo, bet;
    std::vector<Hops> ecc;
    std::vector<double> eb;
  };
  const std::vector<Case> cases{
      {"P3", 3, nctest::path_edges(3), {2.0 / 3, 1.0, 2.0 / 3}, {0, 1, 0}, {2, 1, 2}, {2, 2}},
      {"C4", 4, nctest::cycle_edges(4), {0.75, 0.75, 0.75, 0.75}, {0.5, 0.5, 0.5, 0.5}, {2, 2, 2, 2},
       {2, 2, 2, 2}},
      {"C5", 5, nctest::cycle_edges(5), std::vector<double>(5, 4.0 / 6), std::vector<double>(5, 1.0),
       std::vector<Hops>(5, 2), std::vector<double>(5, 3.0)},
      {"star3", 4, nctest::star_edges(3), {1.0, 0.6, 0.6, 0.6}, {3, 0, 0, 0}, {1, 2, 2, 2}, {3, 3, 3}},
      {"K4", 4, nctest::complete_edges(4), std::vector<double>(4, 1.0), std::vector<double>(4, 0.0),
       std::vector<Hops>(4, 1), std::vector<double>(6, 1.0)},
  };
  for (const auto& c : cases) {
    const auto t = all_measures(nctest::make_graph(c.n, c.edges));
    bool ok = t.eccentricity == c.ecc && t.edge_betweenness.size() == c.eb.size();
    for (std::size_t i = 0; ok && i < c.clo.size(); ++i) {
      ok = std::abs(t.closeness[i] - c.clo[i]) <= tol && std::abs(t.betweenness[i] - c.bet[i]) <= tol;
    }
    for (std::size_t e = 0; ok && e < c.eb.size(); ++e) ok = std::abs(t.edge_betweenness[e] - c.eb[e]) <= tol;
    o.require(ok, c.name);
  }
  if (o.pass) o.note("P3, C4, C5, star-3, K4 exact");
  return o;
}

// 3
Outcome conservation() {
  Outcome o;
  std::mt19937_64 rng(77);
  int graphs = 0;
  auto check = [&](int n, const nctest::Edges& edges) {
    const auto t = all_measures(nctest::make_graph(n, edges));
    const auto d = nctest::all_pairs_hops(n, edges);
    double dist = 0, interior = 0;
    for (int s = 0; s < n; ++s)
      for (int u = s + 1; u < n; ++u) {
        dist += d[s][u];
        interior += d[s][u] - 1;
      }
    const double sb = std::accumulate(t.betweenness.begin(), t.betweenness.end(), 0.0);
    const double se = std::accumulate(t.edge_betweenness.begin(), t.edge_betweenness.end(), 0.0);
    ++graphs;
    return std::abs(sb - interior) <= 1e-9 && std::abs(se - dist) <= 1e-9;
  };
  bool ok = check(3, nctest::path_edges(3)) && check(4, nctest::cycle_edges(4)) &&
            check(5, nctest::cycle_edges(5)) && check(4, nctest::star_edges(3)) &&
            check(4, nctest::complete_edges(4)) && check(9, nctest::grid_edges(3, 3));
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 4 + trial % 9;
    ok = check(n, nctest::random_connected_edges(n, 0.05 + 0.9 * (trial % 10) / 9.0, rng)) && ok;
  }
  o.require(ok, "sums match pairwise distances");
  o.note(std::to_string(graphs) + " graphs");
  return o;
}

// 4
Outcome dataset_structure() {
  Outcome o;
  int code = 0;
  const std::string report = run_cli({"validate", fixture_path()}, code);
  o.require(code == 0, "validate exits 0");
  auto has = [&](const std::string& s) { return report.find(s) != std::string::npos; };
  o.require(has("149 stations\n"), "149 stations");
  o.require(has("8 lines\n"), "8 lines");
  o.require(has("cross_section: 16\n"), "cross_section = 16");
  o.require(has("y_branch: 4\n"), "y_branch = 4");
  o.require(has("terminal: 15\n"), "terminal = 15");
  const std::size_t links = tusrs().link_count();
  o.require(links >= 158 && links <= 178, "link count within 168 +/- 10");
  o.note("149 stations, 8 lines, census 15/4/16, " + std::to_string(links) + " links (target 168)");
  return o;
}

// 5
Outcome ranking_claims() {
  Outcome o;
  const auto clo = rank(tusrs_table(), Measure::closeness);
  const auto bet = rank(tusrs_table(), Measure::betweenness);
  o.require(clo.entries[0].station == "teatr-e-shahr" && clo.entries[1].rank == 2,
            "Teatr-e Shahr sole rank 1 in closeness");
  o.require(bet.entries[0].station == "teatr-e-shahr" && bet.entries[1].rank == 2,
            "Teatr-e Shahr sole rank 1 in betweenness");
  const auto top10 = top_fraction(clo, 0.10);
  o.require(!top10.rank_of("emam-khomeini"), "Emam Khomeini outside closeness top 10%");

  const auto& t = tusrs_table();
  const auto best = static_cast<LinkIndex>(
      std::max_element(t.edge_betweenness.begin(), t.edge_betweenness.end()) - t.edge_betweenness.begin());
  const auto& k = tusrs().link(best);
  const std::set<std::string> ends{k.a, k.b};
  o.require(ends == std::set<std::string>{"teatr-e-shahr", "meydan-e-enghelab"},
            "top edge joins Teatr-e Shahr and Meydan-e EnghelabEslami");
  o.note("Emam Khomeini closeness rank " + std::to_string(*clo.rank_of("emam-khomeini")) + " of " +
         std::to_string(clo.size()) + " (top 10% = " + std::to_string(top10.size()) + ")");
  o.note("top edge " + k.a + " -- " + k.b + " = " + num(t.edge_betweenness[best], 1) +
         " (reference value 2960.5)");
  return o;
}

// 6
Outcome measure_relationship() {
  Outcome o;
  const double rho = rank_correlation(tusrs_table(), Measure::closeness, Measure::eccentricity);
  o.require(rho < 0, "rho < 0");
  o.note("spearman(closeness, eccentricity) = " + num(rho, 6));
  return o;
}

// 7
Outcome line_claims() {
  Outcome o;
  for (Measure m : {Measure::closeness, Measure::betweenness, Measure::eccentricity}) {
    std::vector<std::pair<double, LineNumber>> med;
    for (const auto& l : tusrs().lines()) {
      med.emplace_back(line_summary(tusrs(), tusrs_table(), l.number, m).summary.median, l.number);
    }
    std::sort(med.begin(), med.end());
    if (m != Measure::eccentricity) std::reverse(med.begin(), med.end());
    const std::set<LineNumber> lead{med[0].second, med[1].second};
    o.require(lead == std::set<LineNumber>{3, 4} && med[1].first != med[2].first,
              std::string(to_string(m)) + " medians led by lines 3 and 4");
    o.note(std::string(to_string(m)) + ": L" + std::to_string(med[0].second) + " " +
           num(med[0].first, 4) + ", L" + std::to_string(med[1].second) + " " + num(med[1].first, 4) +
           ", next L" + std::to_string(med[2].second) + " " + num(med[2].first, 4));
  }
  return o;
}

// 8
Outcome scenario_claim() {
  Outcome o;
  const auto s = apply_scenario(tusrs(), {MergeStations{"emam-ali-2", "emam-ali-3", "emam-ali"}});
  const auto d = scenario_diff(s);
  for (Measure m : {Measure::closeness, Measure::betweenness}) {
    std::size_t r = 0;
    for (const auto& row : d.of(m).stations) {
      if (row.station == "emam-ali") r = *row.new_rank;
    }
    o.require(r >= 1 && r <= 3, std::string("merged rank <= 3 in ") + std::string(to_string(m)));
    o.note(std::string(to_string(m)) + " rank " + std::to_string(r));
  }
  const auto& l2 = d.line(2, Measure::betweenness);
  o.require(l2.old_mean && l2.new_mean && *l2.new_mean > *l2.old_mean, "line 2 mean betweenness rises");
  if (l2.old_mean && l2.new_mean) {
    o.note("line 2 mean betweenness " + num(*l2.old_mean, 2) + " -> " + num(*l2.new_mean, 2));
  }
  return o;
}

// 9
Outcome performance() {
  Outcome o;
  const auto& net = tusrs();
  all_measures(net);  // warm caches
  double best = 1e9;
  for (int i = 0; i < 5; ++i) {
    const auto t0 = Clock::now();
    const auto t = all_measures(net);
    best = std::min(best, ms_since(t0));
  }
  o.require(best < 100, "fixture all_measures under 100 ms");

  std::mt19937_64 rng(10000);
  const auto big = nctest::make_graph(10000, nctest::random_sparse_edges(10000, 20000, rng));
  const auto t0 = Clock::now();
  const auto t = all_measures(big);  // node and edge betweenness share one pass
  const double ms = ms_since(t0);
  o.require(ms < 60000, "10k-station betweenness under 60 s");
  o.note("fixture " + num(best, 2) + " ms; n=10000 m=" + std::to_string(big.link_count()) +
         " node+edge betweenness " + num(ms / 1000.0, 2) + " s single-threaded");
  return o;
}

// 10
Outcome determinism() {
  Outcome o;
  const auto doc = parse_network(fixture::tusrs_json);
  const std::string text = serialize_network(doc);
  o.require(text == fixture::tusrs_json, "serialize(parse(fixture)) is byte-identical");
  o.require(parse_network(text) == doc, "parse(serialize(doc)) == doc");
  int c1 = 0, c2 = 0, c3 = 0, c4 = 0;
  const auto a1 = run_cli({"analyze", fixture_path()}, c1);
  const auto a2 = run_cli({"analyze", fixture_path()}, c2);
  const auto j1 = run_cli({"analyze", fixture_path(), "--format", "json"}, c3);
  const auto j2 = run_cli({"analyze", fixture_path(), "--format", "json"}, c4);
  o.require(c1 == 0 && c2 == 0 && c3 == 0 && c4 == 0, "analyze exits 0");
  o.require(!a1.empty() && a1 == a2 && j1 == j2, "repeated analyze runs are byte-identical");
  o.note("fixture " + std::to_string(text.size()) + " bytes round-trips; analyze csv " +
         std::to_string(a1.size()) + " bytes stable");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"oracle equivalence on 200 random graphs", oracle_equivalence},
      {"small-graph golden tables", golden_tables},
      {"conservation laws", conservation},
      {"bundled dataset structure", dataset_structure},
      {"ranking claims on the bundled dataset", ranking_claims},
      {"closeness vs eccentricity correlation", measure_relationship},
      {"line-level medians", line_claims},
      {"Emam Ali merge scenario", scenario_claim},
      {"performance", performance},
      {"determinism and round-trip", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::printf("%s  %2zu. %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
