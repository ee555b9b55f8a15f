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

#ifndef HAYSTACK_TESTS_TEST_REGIONS_HPP
#define HAYSTACK_TESTS_TEST_REGIONS_HPP

#include "haystack/region.hpp"

// Shared fixtures. Golden counts below were produced by the brute-force
// oracle and agree with the sweep.
namespace haystack::testing_regions {

/// The L-shaped hexagon (0,0),(2,0),(2,1),(1,1),(1,2),(0,2).
inline Region l_shape() { return Region(Ring{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}); }
inline constexpr int kLShapeCount = 17;

/// 3x3 square with the middle unit cell removed.
inline Region square_ring() {
  return Region(Ring{{0, 0}, {3, 0}, {3, 3}, {0, 3}}, {Ring{{1, 1}, {1, 2}, {2, 2}, {2, 1}}});
}
inline constexpr int kSquareRingCount = 6984;

/// A U: 4x3 box minus the slot [1,3]x[1,3].
inline Region u_shape() {
  return Region(Ring{{0, 0}, {4, 0}, {4, 3}, {3, 3}, {3, 1}, {1, 1}, {1, 3}, {0, 3}});
}
inline constexpr int kUShapeCount = 5816;

/// 2x2 grid with the lower-left cell diagonal fixed.
inline Region grid2x2_fixed_diagonal() {
  return Region(Ring{{0, 0}, {2, 0}, {2, 2}, {0, 2}}, {}, {Edge({0, 0}, {1, 1})});
}
inline constexpr int kFixedDiagonalCount = 31;

}  // namespace haystack::testing_regions

#endif  // HAYSTACK_TESTS_TEST_REGIONS_HPP
