// Copyright 2026 The Haystack Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <set>

#include <gtest/gtest.h>

#include "haystack/engine.hpp"
#include "haystack/oracle.hpp"
#include "test_regions.hpp"

namespace haystack {
namespace {

HalfPoint half(double x, double y) { return {static_cast<Coord>(2 * x), static_cast<Coord>(2 * y)}; }

Count binomial(unsigned n, unsigned k) {
  Count c = 1;
  for (unsigned i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

TEST(Haystack, StartsEmpty) {
  const Haystack h = make_haystack(Region::grid(1, 1));
  EXPECT_EQ(h.position(), 0u);
  EXPECT_FALSE(h.complete());
  EXPECT_TRUE(h.chosen().empty());
  EXPECT_EQ(h.current_midpoint(), half(0.5, 0.5));
  EXPECT_EQ(extensions(h).size(), 2u);
}

TEST(Haystack, ExtendAdvancesAndBlocksCrossers) {
  const Haystack h0 = make_haystack(Region::grid(2, 1));
  const Haystack h1 = extend(h0, Edge({0, 0}, {1, 1}));
  EXPECT_EQ(h1.position(), 1u);
  EXPECT_EQ(h1.current_midpoint(), half(1, 0.5));
  // (0,1)-(2,0) crosses (0,0)-(1,1).
  for (const Edge& e : extensions(h1)) EXPECT_FALSE(segments_properly_cross(e, Edge({0, 0}, {1, 1})));
  EXPECT_THROW((void)extend(h1, Edge({2, 0}, {0, 1})), std::invalid_argument);
  // h0 is unchanged.
  EXPECT_EQ(h0.position(), 0u);
  EXPECT_TRUE(h0.chosen().empty());
}

TEST(Haystack, SkipsFixedPositions) {
  const Region r(Ring{{0, 0}, {2, 0}, {2, 1}, {0, 1}}, {}, {Edge({1, 0}, {1, 1})});
  const Haystack h0 = make_haystack(r);
  const auto ext = extensions(h0);
  ASSERT_EQ(ext.size(), 2u);
  const Haystack h1 = extend(h0, ext[0]);
  EXPECT_EQ(h1.position(), 2u);
  EXPECT_EQ(h1.edges().size(), 2u);
  const Haystack h2 = extend(h1, extensions(h1).at(0));
  EXPECT_TRUE(h2.complete());
  EXPECT_THROW((void)feasible_extensions(h2), std::logic_error);
}

TEST(Haystack, ExtendRejectsForeignEdge) {
  const Haystack h = make_haystack(Region::grid(2, 1));
  EXPECT_THROW((void)extend(h, Edge({1, 0}, {2, 1})), std::invalid_argument);
}

TEST(Count, SmallGrids) {
  EXPECT_EQ(count_triangulations(Region::grid(1, 1)), 2);
  EXPECT_EQ(count_triangulations(Region::grid(1, 2)), 6);
  EXPECT_EQ(count_triangulations(Region::grid(2, 1)), 6);
  EXPECT_EQ(count_triangulations(Region::grid(2, 2)), 64);
}

TEST(Count, StripsAreCentralBinomials) {
  for (unsigned n = 1; n <= 7; ++n) {
    EXPECT_EQ(count_triangulations(Region::grid(1, n)), binomial(2 * n, n)) << n;
    EXPECT_EQ(count_triangulations(Region::grid(n, 1)), binomial(2 * n, n)) << n;
  }
}

TEST(Count, AgreesWithOracle) {
  for (const Region& r : {Region::grid(2, 2), Region::grid(3, 1), Region::grid(2, 3), testing_regions::l_shape(),
                          testing_regions::grid2x2_fixed_diagonal(), Region(Ring{{0, 0}, {3, 1}, {1, 2}})}) {
    EXPECT_EQ(count_triangulations(r), oracle::oracle_count(r));
  }
  EXPECT_EQ(count_triangulations(testing_regions::l_shape()), testing_regions::kLShapeCount);
  EXPECT_EQ(count_triangulations(testing_regions::grid2x2_fixed_diagonal()), testing_regions::kFixedDiagonalCount);
}

TEST(Count, WithinBoundAndBranchingAtMostTwo) {
  for (const Region& r : {Region::grid(2, 2), Region::grid(3, 2), Region::grid(3, 3), testing_regions::u_shape()}) {
    const auto stats = count_with_stats(CandidateTable(r));
    EXPECT_LE(stats.count, theoretical_bound(r));
    EXPECT_LE(stats.max_branching_observed, 2u);
    EXPECT_EQ(stats.branch_histogram[3], 0u);
    EXPECT_EQ(stats.dead_branches, 0u);
    EXPECT_EQ(stats.invalid_leaves, 0u);
    EXPECT_EQ(stats.branch_histogram[0], 0u);
    EXPECT_GT(stats.branch_histogram[1], 0u);
  }
}

TEST(Count, HoledRegionMatchesGolden) {
  const auto stats = count_with_stats(CandidateTable(testing_regions::square_ring()));
  EXPECT_EQ(stats.count, testing_regions::kSquareRingCount);
  EXPECT_EQ(stats.invalid_leaves, 0u);
}

TEST(Enumerate, MatchesOracleSets) {
  for (const Region& r : {Region::grid(2, 2), testing_regions::l_shape(), testing_regions::grid2x2_fixed_diagonal()}) {
    std::vector<std::vector<Edge>> sweep;
    enumerate_triangulations(r, [&](const Triangulation& t) { sweep.push_back(t.inner_edges); });
    std::vector<std::vector<Edge>> brute;
    for (const auto& t : oracle::oracle_enumerate(r)) brute.push_back(t.inner_edges);
    std::sort(sweep.begin(), sweep.end());
    EXPECT_EQ(sweep, brute);
    EXPECT_EQ(std::set<std::vector<Edge>>(sweep.begin(), sweep.end()).size(), sweep.size());
  }
}

TEST(Enumerate, StopsAtLimit) {
  int seen = 0;
  const auto stats = enumerate_triangulations(Region::grid(2, 2), [&](const Triangulation&) { ++seen; }, 5);
  EXPECT_EQ(seen, 5);
  EXPECT_EQ(stats.count, 5);
  EXPECT_TRUE(stats.truncated);
}

TEST(Enumerate, IsDeterministic) {
  auto run = [] {
    std::vector<std::vector<Edge>> out;
    enumerate_triangulations(Region::grid(2, 3), [&](const Triangulation& t) { out.push_back(t.inner_edges); });
    return out;
  };
  EXPECT_EQ(run(), run());
}

TEST(Parallel, StatsEqualSerial) {
  const CandidateTable table(Region::grid(3, 3));
  const auto serial = count_with_stats(table);
  for (unsigned threads : {2u, 4u, 7u}) {
    EngineOptions opt;
    opt.threads = threads;
    EXPECT_EQ(count_with_stats(table, opt), serial) << threads;
  }
}

// Walking the tree with the immutable Haystack API reproduces the engine.
Count walk(const Haystack& h) {
  if (h.complete()) return 1;
  Count n = 0;
  for (const Edge& e : extensions(h)) n += walk(extend(h, e));
  return n;
}

TEST(Haystack, ImmutableWalkMatchesEngine) {
  for (const Region& r : {Region::grid(2, 2), testing_regions::l_shape(), Region::grid(3, 2)}) {
    EXPECT_EQ(walk(make_haystack(r)), count_triangulations(r));
  }
}

TEST(Strict, FaultInjectionThrowsBranchingViolation) {
  EngineOptions opt;
  opt.skip_crossing_check = true;
  EXPECT_THROW((void)count_with_stats(CandidateTable(Region::grid(2, 2)), opt), BranchingViolation);
}

TEST(Strict, OnlySimplyConnectedWithoutFixedEdges) {
  EXPECT_TRUE(strict_branching(Region::grid(2, 2)));
  EXPECT_FALSE(strict_branching(testing_regions::square_ring()));
  EXPECT_FALSE(strict_branching(testing_regions::grid2x2_fixed_diagonal()));
}

TEST(BranchingEvent, DescribeNamesMidpoint) {
  const BranchingEvent ev{half(0.5, 0.5), 0, {}, {Edge({0, 0}, {1, 1})}};
  EXPECT_NE(ev.describe().find("(1/2,1/2)"), std::string::npos) << ev.describe();
}

}  // namespace
}  // namespace haystack
