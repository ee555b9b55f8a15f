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

#ifndef HAYSTACK_ORACLE_HPP
#define HAYSTACK_ORACLE_HPP

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "haystack/geometry.hpp"
#include "haystack/region.hpp"
#include "haystack/schedule.hpp"
#include "haystack/validate.hpp"

// Brute-force reference counter. It shares only the geometric predicates
// and the leaf validator with the sweep engine: candidates come from all
// pairs of lattice points, midpoints are processed in reverse sweep order,
// and any number of edges may be feasible at a midpoint.
namespace haystack::oracle {

constexpr std::size_t kDefaultCap = 24;

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// HAYSTACK_ORACLE_CAP if set to a positive integer, else the default.
[[nodiscard]] inline std::size_t default_cap() {
  if (const char* env = std::getenv("HAYSTACK_ORACLE_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultCap;
}

struct CandidateEdgeSet {
  std::vector<Edge> edges;                       ///< canonical order, fixed edges excluded
  std::vector<std::vector<std::size_t>> crossing;  ///< symmetric adjacency
  std::vector<HalfPoint> midpoint_of;
  std::vector<bool> crosses_fixed;

  [[nodiscard]] bool cross(std::size_t i, std::size_t j) const {
    return std::binary_search(crossing[i].begin(), crossing[i].end(), j);
  }
  [[nodiscard]] std::size_t crossing_pairs() const {
    std::size_t n = 0;
    for (const auto& c : crossing) n += c.size();
    return n / 2;
  }
};

[[nodiscard]] inline CandidateEdgeSet crossing_graph(const Region& region) {
  CandidateEdgeSet g;
  const auto& pts = region.lattice_points();
  const auto& fixed = region.fixed_edges();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const Edge e(pts[i], pts[j]);
      if (!is_primitive(e) || !segment_in_interior(region, e)) continue;
      if (std::find(fixed.begin(), fixed.end(), e) != fixed.end()) continue;
      g.edges.push_back(e);
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  const std::size_t n = g.edges.size();
  g.crossing.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    g.midpoint_of.push_back(midpoint(g.edges[i]));
    g.crosses_fixed.push_back(std::any_of(fixed.begin(), fixed.end(), [&](const Edge& f) {
      return segments_properly_cross(g.edges[i], f);
    }));
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && segments_properly_cross(g.edges[i], g.edges[j])) g.crossing[i].push_back(j);
    }
  }
  return g;
}

namespace detail {

/// Interior non-lattice half points, found by scanning the bounding box.
inline std::vector<HalfPoint> midpoint_set(const Region& region) {
  std::vector<HalfPoint> out;
  for (Coord dx = 2 * region.min_corner().x; dx <= 2 * region.max_corner().x; ++dx) {
    for (Coord dy = 2 * region.min_corner().y; dy <= 2 * region.max_corner().y; ++dy) {
      const HalfPoint p{dx, dy};
      if (!p.is_lattice() && point_in_interior(region, p)) out.push_back(p);
    }
  }
  return out;
}

class Backtracker {
 public:
  Backtracker(const Region& region, std::size_t cap) : schedule_(region), graph_(crossing_graph(region)) {
    auto mids = midpoint_set(region);
    if (mids.size() > cap) {
      throw CapExceeded("oracle: |M| = " + std::to_string(mids.size()) + " exceeds cap " +
                        std::to_string(cap) + " (set HAYSTACK_ORACLE_CAP to override)");
    }
    std::sort(mids.begin(), mids.end(), [](const HalfPoint& p, const HalfPoint& q) { return lex_less(q, p); });
    for (const HalfPoint& r : mids) {
      const bool fixed = std::any_of(region.fixed_edges().begin(), region.fixed_edges().end(),
                                     [&](const Edge& f) { return midpoint(f) == r; });
      if (fixed) continue;
      std::vector<std::size_t> here;
      for (std::size_t i = 0; i < graph_.edges.size(); ++i) {
        if (graph_.midpoint_of[i] == r && !graph_.crosses_fixed[i]) here.push_back(i);
      }
      levels_.push_back(std::move(here));
    }
  }

  void run(const std::function<void(ValidationResult&&)>& leaf) {
    chosen_.clear();
    descend(0, leaf);
  }

 private:
  void descend(std::size_t level, const std::function<void(ValidationResult&&)>& leaf) {
    if (level == levels_.size()) {
      std::vector<Edge> edges;
      for (std::size_t i : chosen_) edges.push_back(graph_.edges[i]);
      leaf(validate_triangulation(schedule_, edges));
      return;
    }
    for (std::size_t i : levels_[level]) {
      const bool ok = std::none_of(chosen_.begin(), chosen_.end(), [&](std::size_t j) { return graph_.cross(i, j); });
      if (!ok) continue;
      chosen_.push_back(i);
      descend(level + 1, leaf);
      chosen_.pop_back();
    }
  }

  MidpointSchedule schedule_;
  CandidateEdgeSet graph_;
  std::vector<std::vector<std::size_t>> levels_;
  std::vector<std::size_t> chosen_;
};

}  // namespace detail

[[nodiscard]] inline Count oracle_count(const Region& region, std::size_t cap = default_cap()) {
  Count n = 0;
  detail::Backtracker(region, cap).run([&](ValidationResult&& r) {
    if (is_valid(r)) ++n;
  });
  return n;
}

/// All triangulations, sorted by their (sorted) inner edge lists.
[[nodiscard]] inline std::vector<Triangulation> oracle_enumerate(const Region& region,
                                                                 std::size_t cap = default_cap()) {
  std::vector<Triangulation> out;
  detail::Backtracker(region, cap).run([&](ValidationResult&& r) {
    if (is_valid(r)) out.push_back(std::get<Triangulation>(std::move(r)));
  });
  std::sort(out.begin(), out.end(), [](const Triangulation& s, const Triangulation& t) {
    return s.inner_edges < t.inner_edges;
  });
  return out;
}

}  // namespace haystack::oracle

#endif  // HAYSTACK_ORACLE_HPP
