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

#ifndef HAYSTACK_SCHEDULE_HPP
#define HAYSTACK_SCHEDULE_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "haystack/geometry.hpp"
#include "haystack/region.hpp"

namespace haystack {

/// Exact triangulation counts.
using Count = boost::multiprecision::cpp_int;

/// The midpoint set M of a region in sweep order.
///
/// Every inner edge of a unimodular triangulation has its midpoint in M and
/// distinct inner edges have distinct midpoints, so a triangulation is the
/// same thing as a choice of one edge per midpoint.
class MidpointSchedule {
 public:
  explicit MidpointSchedule(Region region)
      : region_(std::make_shared<const Region>(std::move(region))) {
    const Region& reg = *region_;
    const LatticePoint lo = reg.min_corner(), hi = reg.max_corner();
    for (Coord dy = 2 * lo.y; dy <= 2 * hi.y; ++dy) {
      for (Coord dx = 2 * lo.x; dx <= 2 * hi.x; ++dx) {
        const HalfPoint p{dx, dy};
        if (p.is_lattice()) continue;
        if (point_in_interior(reg, p)) midpoints_.push_back(p);
      }
    }
    // The double loop already walks y-major, x-minor, i.e. sweep order.
    for (std::size_t i = 0; i < midpoints_.size(); ++i) index_.emplace(midpoints_[i], i);
    fixed_.assign(midpoints_.size(), false);
    for (const Edge& e : reg.fixed_edges()) {
      const auto it = index_.find(midpoint(e));
      if (it == index_.end()) throw InvalidRegion("fixed edge midpoint " + to_string(midpoint(e)) + " not in M");
      fixed_[it->second] = true;
    }
  }

  [[nodiscard]] const Region& region() const { return *region_; }
  [[nodiscard]] const std::shared_ptr<const Region>& region_ptr() const { return region_; }
  [[nodiscard]] const std::vector<HalfPoint>& midpoints() const { return midpoints_; }
  [[nodiscard]] std::size_t size() const { return midpoints_.size(); }
  [[nodiscard]] const HalfPoint& operator[](std::size_t i) const { return midpoints_[i]; }

  [[nodiscard]] bool is_fixed(std::size_t i) const { return fixed_[i]; }
  [[nodiscard]] std::size_t fixed_count() const {
    return static_cast<std::size_t>(std::count(fixed_.begin(), fixed_.end(), true));
  }
  [[nodiscard]] std::vector<std::size_t> fixed_positions() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < fixed_.size(); ++i) {
      if (fixed_[i]) out.push_back(i);
    }
    return out;
  }

  /// First non-fixed position at or after `i` (or size()).
  [[nodiscard]] std::size_t skip_fixed(std::size_t i) const {
    while (i < fixed_.size() && fixed_[i]) ++i;
    return i;
  }

  [[nodiscard]] std::optional<std::size_t> index_of(const HalfPoint& p) const {
    const auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::shared_ptr<const Region> region_;
  std::vector<HalfPoint> midpoints_;
  std::vector<bool> fixed_;
  std::unordered_map<HalfPoint, std::size_t> index_;
};

[[nodiscard]] inline MidpointSchedule midpoint_schedule(const Region& region) {
  return MidpointSchedule(region);
}

/// Every geometrically legal inner edge through each midpoint, ignoring all
/// other edges. Lists are in canonical edge order.
[[nodiscard]] inline std::map<HalfPoint, std::vector<Edge>, LexLess> inner_edge_candidates(
    const MidpointSchedule& schedule) {
  std::map<HalfPoint, std::vector<Edge>, LexLess> out;
  const Region& region = schedule.region();
  for (const HalfPoint& r : schedule.midpoints()) {
    auto& list = out[r];
    for (const LatticePoint& v : region.lattice_points()) {
      if (!lex_less(v.doubled(), r)) break;  // lattice points are sorted
      const LatticePoint w = reflect_through(v, r);
      if (!region.contains(w)) continue;
      const Edge e(v, w);
      if (is_primitive(e) && segment_in_interior(region, e)) list.push_back(e);
    }
    std::sort(list.begin(), list.end());
  }
  return out;
}

[[nodiscard]] inline std::map<HalfPoint, std::vector<Edge>, LexLess> inner_edge_candidates(
    const Region& region) {
  return inner_edge_candidates(MidpointSchedule(region));
}

/// 2^(|M| - fixed midpoints).
[[nodiscard]] inline Count theoretical_bound(const MidpointSchedule& schedule) {
  return Count(1) << (schedule.size() - schedule.fixed_count());
}

[[nodiscard]] inline Count theoretical_bound(const Region& region) {
  return theoretical_bound(MidpointSchedule(region));
}

}  // namespace haystack

#endif  // HAYSTACK_SCHEDULE_HPP
