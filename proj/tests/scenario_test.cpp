#include <gtest/gtest.h>

#include "netcentral/oracle.hpp"
#include "netcentral/scenario.hpp"
#include "support.hpp"

using namespace netcentral;
using nctest::named;

TEST(Scenario, AddLinkClosesPathIntoCycle) {
  const auto p4 = named({"a", "b", "c", "d"}, {{0, 1}, {1, 2}, {2, 3}});
  const auto s = apply_scenario(p4, {AddLink{"a", "d", 1}});
  EXPECT_EQ(s.result, named({"a", "b", "c", "d"}, nctest::cycle_edges(4)));
  EXPECT_EQ(s.base, p4);
}

TEST(Scenario, RemoveLinkThatDisconnects) {
  const auto p3 = named({"a", "b", "c"}, {{0, 1}, {1, 2}});
  try {
    apply_scenario(p3, {RemoveLink{"a", "b"}});
    FAIL() << "expected AnalysisError";
  } catch (const AnalysisError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("{a}"), std::string::npos) << msg;
    EXPECT_NE(msg.find("{b, c}"), std::string::npos) << msg;
    EXPECT_NE(msg.find("edit 1"), std::string::npos) << msg;
  }
}

TEST(Scenario, EditErrors) {
  const auto p3 = named({"a", "b", "c"}, {{0, 1}, {1, 2}});
  EXPECT_THROW(apply_scenario(p3, {AddLink{"a", "zz", 1}}), AnalysisError);
  EXPECT_THROW(apply_scenario(p3, {AddLink{"a", "b", 1}}), AnalysisError);
  EXPECT_THROW(apply_scenario(p3, {AddLink{"a", "c", 2}}), AnalysisError);
  EXPECT_THROW(apply_scenario(p3, {RemoveLink{"a", "c"}}), AnalysisError);
  EXPECT_THROW(apply_scenario(p3, {MergeStations{"a", "a", ""}}), AnalysisError);
  EXPECT_THROW(apply_scenario(p3, {MergeStations{"a", "b", "c"}}), AnalysisError);
}

TEST(Scenario, MergeUnionsLinesAndNeighbors) {
  std::vector<Station> st{{"w", "W", {1}}, {"x1", "X", {1}}, {"y", "Y", {1}},
                          {"u", "U", {2}}, {"x2", "X", {2}}, {"v", "V", {2}}, {"k", "K", {1, 2}}};
  std::vector<Link> ln{{"w", "x1", {1}}, {"x1", "y", {1}}, {"u", "x2", {2}},
                       {"x2", "v", {2}}, {"y", "k", {1}},  {"k", "v", {2}}};
  const auto base = build_network(st, ln);
  const auto s = apply_scenario(base, {MergeStations{"x1", "x2", ""}});
  const auto& net = s.result;
  const auto id = merged_id(MergeStations{"x2", "x1", ""});
  EXPECT_EQ(id, "x1+x2");
  EXPECT_EQ(degree(net, id), 4u);
  const auto& m = net.station(net.index_of(id));
  EXPECT_EQ(m.lines, (LineSet{1, 2}));
  EXPECT_EQ(m.name, "X");
  EXPECT_EQ(net.station_count(), base.station_count() - 1);
}

TEST(Scenario, MergeOfAdjacentStationsDropsTheirLink) {
  const auto p3 = named({"a", "b", "c"}, {{0, 1}, {1, 2}});
  const auto s = apply_scenario(p3, {MergeStations{"a", "b", "ab"}});
  EXPECT_EQ(s.result.link_count(), 1u);
  EXPECT_EQ(s.result.station(s.result.index_of("ab")).name, "a / b");
}

TEST(Scenario, EditsComposeInOrder) {
  const auto c4 = named({"a", "b", "c", "d"}, nctest::cycle_edges(4));
  const auto once = apply_scenario(c4, {RemoveLink{"a", "b"}, AddLink{"a", "c", 1}});
  const auto step = apply_scenario(apply_scenario(c4, {RemoveLink{"a", "b"}}).result,
                                   {AddLink{"a", "c", 1}});
  EXPECT_EQ(once.result, step.result);
  // Intermediate disconnection is rejected even if a later edit repairs it.
  const auto p3 = named({"a", "b", "c"}, {{0, 1}, {1, 2}});
  EXPECT_THROW(apply_scenario(p3, {RemoveLink{"a", "b"}, AddLink{"a", "c", 1}}), AnalysisError);
}

TEST(Diff, EmptyEditsAreZero) {
  const auto net = named({"a", "b", "c", "d"}, {{0, 1}, {1, 2}, {1, 3}});
  const auto d = scenario_diff(apply_scenario(net, {}));
  EXPECT_EQ(d.edit_count, 0u);
  for (const auto& md : d.measures) {
    for (const auto& s : md.stations) {
      EXPECT_EQ(s.old_value, s.new_value);
      EXPECT_EQ(s.old_rank, s.new_rank);
    }
  }
  for (const auto& l : d.lines) EXPECT_EQ(l.old_mean, l.new_mean);
}

TEST(Diff, CycleLosingALinkLoadsTheMiddle) {
  const auto c4 = named({"a", "b", "c", "d"}, nctest::cycle_edges(4));
  const auto s = apply_scenario(c4, {RemoveLink{"a", "d"}});
  const auto before = oracle_measures(s.base);
  const auto after = oracle_measures(s.result);
  const auto d = scenario_diff(s);
  const auto& bet = d.of(Measure::betweenness);
  for (const auto& row : bet.stations) {
    const auto i = s.base.index_of(row.station);
    EXPECT_DOUBLE_EQ(*row.old_value, before.betweenness[i]);
    EXPECT_DOUBLE_EQ(*row.new_value, after.betweenness[i]);
  }
  // b and c are now the interior of the path a-b-c-d.
  EXPECT_GT(*bet.stations[1].new_value, *bet.stations[1].old_value);
  EXPECT_GT(*bet.stations[2].new_value, *bet.stations[2].old_value);
  EXPECT_EQ(*bet.stations[1].new_value, 2.0);
}

TEST(Diff, MergedAndRemovedStationsAreOneSided) {
  const auto p4 = named({"a", "b", "c", "d"}, {{0, 1}, {1, 2}, {2, 3}});
  const auto d = scenario_diff(apply_scenario(p4, {MergeStations{"b", "c", "bc"}}));
  const auto& clo = d.of(Measure::closeness);
  ASSERT_EQ(clo.stations.size(), 5u);
  for (const auto& row : clo.stations) {
    if (row.station == "bc") {
      EXPECT_FALSE(row.old_rank);
      EXPECT_EQ(row.new_rank, 1u);
    } else if (row.station == "b" || row.station == "c") {
      EXPECT_FALSE(row.new_rank);
    } else {
      EXPECT_TRUE(row.old_rank && row.new_rank);
    }
  }
  EXPECT_TRUE(d.line(1, Measure::degree).new_mean.has_value());
}
