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


#include <gtest/gtest.h>

#include "haystack/validate.hpp"
#include "test_regions.hpp"

namespace haystack {
namespace {

ValidationCheck failed(const ValidationResult& r) { return std::get<ValidationReport>(r).failed; }

TEST(Validate, UnitSquareDiagonal) {
  const std::vector<Edge> edges{Edge({0, 0}, {1, 1})};
  const auto r = validate_triangulation(Region::grid(1, 1), edges);
  ASSERT_TRUE(is_valid(r));
  const auto& t = std::get<Triangulation>(r);
  EXPECT_EQ(t.triangles.size(), 2u);
  for (const auto& tri : t.triangles) EXPECT_EQ(double_area(tri[0], tri[1], tri[2]), 1);
}

TEST(Validate, CrossingDiagonalsFailGeometry) {
  const std::vector<Edge> edges{Edge({0, 0}, {1, 1}), Edge({1, 0}, {0, 1})};
  EXPECT_EQ(failed(validate_triangulation(Region::grid(1, 1), edges)), ValidationCheck::EdgeGeometry);
}

TEST(Validate, MissingMidpointFailsBijection) {
  EXPECT_EQ(failed(validate_triangulation(Region::grid(1, 1), std::vector<Edge>{})),
            ValidationCheck::MidpointBijection);
  const std::vector<Edge> two{Edge({0, 0}, {1, 1}), Edge({1, 0}, {2, 1})};
  EXPECT_EQ(failed(validate_triangulation(Region::grid(2, 1), two)), ValidationCheck::MidpointBijection);
}

TEST(Validate, BadGeometry) {
  const Region r = Region::grid(2, 2);
  EXPECT_EQ(failed(validate_triangulation(r, std::vector<Edge>{Edge({0, 0}, {2, 2})})),
            ValidationCheck::EdgeGeometry);
  EXPECT_EQ(failed(validate_triangulation(r, std::vector<Edge>{Edge({0, 0}, {1, 0})})),
            ValidationCheck::EdgeGeometry);
  EXPECT_EQ(failed(validate_triangulation(r, std::vector<Edge>{Edge({0, 0}, {3, 1})})),
            ValidationCheck::EdgeGeometry);
}

TEST(Validate, TwoByOneFan) {
  const std::vector<Edge> edges{Edge({0, 0}, {1, 1}), Edge({1, 0}, {1, 1}), Edge({1, 0}, {2, 1})};
  const auto r = validate_triangulation(Region::grid(2, 1), edges);
  ASSERT_TRUE(is_valid(r)) << std::get<ValidationReport>(r).detail;
  EXPECT_EQ(std::get<Triangulation>(r).triangles.size(), 4u);
  EXPECT_EQ(std::get<Triangulation>(r).inner_edges.size(), 3u);
}

TEST(Validate, AddsFixedEdges) {
  const Region r = testing_regions::grid2x2_fixed_diagonal();
  // Lower-left cell is settled by the fixed diagonal; fill the rest with
  // vertical/horizontal spokes through (1,1) and diagonals.
  const std::vector<Edge> edges{Edge({1, 0}, {1, 1}), Edge({0, 1}, {1, 1}), Edge({1, 1}, {2, 1}),
                                Edge({1, 1}, {1, 2}), Edge({1, 0}, {2, 1}), Edge({1, 1}, {2, 2}),
                                Edge({0, 1}, {1, 2})};
  const auto res = validate_triangulation(r, edges);
  ASSERT_TRUE(is_valid(res)) << std::get<ValidationReport>(res).detail;
  const auto& t = std::get<Triangulation>(res);
  EXPECT_TRUE(std::binary_search(t.inner_edges.begin(), t.inner_edges.end(), Edge({0, 0}, {1, 1})));
  EXPECT_EQ(t.triangles.size(), 8u);
}

TEST(Validate, HoledRegionFaces) {
  const Region ring = testing_regions::square_ring();
  // Any valid triangulation has 16 triangles; check a hand-built one:
  // each of the 8 outer cells split by a diagonal, plus spokes.
  std::vector<Edge> edges;
  for (Coord x = 0; x < 3; ++x) {
    for (Coord y = 0; y < 3; ++y) {
      if (x == 1 && y == 1) continue;
      edges.emplace_back(LatticePoint{x, y}, LatticePoint{x + 1, y + 1});
    }
  }
  for (const Edge& e : {Edge({1, 0}, {1, 1}), Edge({2, 0}, {2, 1}), Edge({1, 2}, {1, 3}), Edge({2, 2}, {2, 3}),
                        Edge({0, 1}, {1, 1}), Edge({0, 2}, {1, 2}), Edge({2, 1}, {3, 1}), Edge({2, 2}, {3, 2})}) {
    edges.push_back(e);
  }
  const auto res = validate_triangulation(ring, edges);
  ASSERT_TRUE(is_valid(res)) << std::get<ValidationReport>(res).detail;
  EXPECT_EQ(std::get<Triangulation>(res).triangles.size(), 16u);
}

TEST(ValidationCheck, Names) {
  EXPECT_STREQ(to_string(ValidationCheck::EdgeGeometry), "edge-geometry");
  EXPECT_STREQ(to_string(ValidationCheck::MidpointBijection), "midpoint-bijection");
  EXPECT_STREQ(to_string(ValidationCheck::Faces), "faces");
}

}  // namespace
}  // namespace haystack
