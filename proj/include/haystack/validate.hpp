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

#ifndef HAYSTACK_VALIDATE_HPP
#define HAYSTACK_VALIDATE_HPP

#include <array>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "haystack/geometry.hpp"
#include "haystack/region.hpp"
#include "haystack/schedule.hpp"

namespace haystack {

using Triangle = std::array<LatticePoint, 3>;

/// A complete, checked unimodular triangulation.
struct Triangulation {
  std::shared_ptr<const Region> region;
  std::vector<Edge> inner_edges;  ///< sorted; includes fixed edges
  std::vector<Triangle> triangles;  ///< counter-clockwise, sorted
};

enum class ValidationCheck {
  EdgeGeometry,      ///< primitive, interior, pairwise non-crossing
  MidpointBijection, ///< midpoints distinct and exactly M
  Faces,             ///< bounded faces are unimodular triangles tiling P
};

[[nodiscard]] inline const char* to_string(ValidationCheck c) {
  switch (c) {
    case ValidationCheck::EdgeGeometry: return "edge-geometry";
    case ValidationCheck::MidpointBijection: return "midpoint-bijection";
    case ValidationCheck::Faces: return "faces";
  }
  return "?";
}

/// Names the first check an edge set failed.
struct ValidationReport {
  ValidationCheck failed;
  std::string detail;
};

using ValidationResult = std::variant<Triangulation, ValidationReport>;

namespace detail {

/// Dense vertex ids over the bounding box of a region.
class PointIndex {
 public:
  explicit PointIndex(const Region& region)
      : lo_(region.min_corner()),
        width_(region.max_corner().x - lo_.x + 1),
        height_(region.max_corner().y - lo_.y + 1),
        ids_(static_cast<std::size_t>(width_ * height_), -1) {
    const auto& pts = region.lattice_points();
    for (std::size_t i = 0; i < pts.size(); ++i) ids_[slot(pts[i])] = static_cast<int>(i);
  }

  [[nodiscard]] int id(const LatticePoint& p) const {
    if (p.x < lo_.x || p.y < lo_.y || p.x >= lo_.x + width_ || p.y >= lo_.y + height_) return -1;
    return ids_[slot(p)];
  }

 private:
  [[nodiscard]] std::size_t slot(const LatticePoint& p) const {
    return static_cast<std::size_t>((p.y - lo_.y) * width_ + (p.x - lo_.x));
  }

  LatticePoint lo_;
  Coord width_, height_;
  std::vector<int> ids_;
};

/// Half-plane-then-cross comparison of direction vectors, counter-clockwise
/// starting at the positive x axis.
[[nodiscard]] inline bool angle_less(Coord ax, Coord ay, Coord bx, Coord by) {
  const int ha = (ay > 0 || (ay == 0 && ax > 0)) ? 0 : 1;
  const int hb = (by > 0 || (by == 0 && bx > 0)) ? 0 : 1;
  if (ha != hb) return ha < hb;
  return ax * by - ay * bx > 0;
}

}  // namespace detail

/// Checks an edge set against the three conditions of a unimodular
/// triangulation. Fixed edges of the region are added if missing.
[[nodiscard]] inline ValidationResult validate_triangulation(const MidpointSchedule& schedule,
                                                             std::span<const Edge> edges_in) {
  const Region& region = schedule.region();
  std::vector<Edge> edges(edges_in.begin(), edges_in.end());
  edges.insert(edges.end(), region.fixed_edges().begin(), region.fixed_edges().end());
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  // (1) geometry
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (!region.contains(e.a()) || !region.contains(e.b())) {
      return ValidationReport{ValidationCheck::EdgeGeometry, to_string(e) + " leaves the region"};
    }
    if (!is_primitive(e)) {
      return ValidationReport{ValidationCheck::EdgeGeometry, to_string(e) + " is not primitive"};
    }
    if (!segment_in_interior(region, e)) {
      return ValidationReport{ValidationCheck::EdgeGeometry, to_string(e) + " is not an inner segment"};
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (segments_properly_cross(e, edges[j])) {
        return ValidationReport{ValidationCheck::EdgeGeometry,
                                to_string(e) + " crosses " + to_string(edges[j])};
      }
    }
  }

  // (2) midpoint bijection onto M
  std::vector<bool> covered(schedule.size(), false);
  for (const Edge& e : edges) {
    const auto idx = schedule.index_of(midpoint(e));
    if (!idx) {
      return ValidationReport{ValidationCheck::MidpointBijection,
                              "midpoint of " + to_string(e) + " is not in M"};
    }
    if (covered[*idx]) {
      return ValidationReport{ValidationCheck::MidpointBijection,
                              "midpoint " + to_string(midpoint(e)) + " used twice"};
    }
    covered[*idx] = true;
  }
  for (std::size_t i = 0; i < covered.size(); ++i) {
    if (!covered[i]) {
      return ValidationReport{ValidationCheck::MidpointBijection,
                              "midpoint " + to_string(schedule[i]) + " uncovered"};
    }
  }

  // (3) faces of boundary + edges
  const auto& pts = region.lattice_points();
  const detail::PointIndex index(region);
  std::vector<std::vector<int>> adj(pts.size());
  // half-edges whose left side is outside the region
  std::vector<std::pair<int, int>> exterior;
  for (const auto& [p, q] : region.boundary_pieces()) {
    const int u = index.id(p), v = index.id(q);
    adj[u].push_back(v);
    adj[v].push_back(u);
    exterior.emplace_back(v, u);
  }
  for (const Edge& e : edges) {
    const int u = index.id(e.a()), v = index.id(e.b());
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (std::size_t u = 0; u < adj.size(); ++u) {
    const LatticePoint o = pts[u];
    std::sort(adj[u].begin(), adj[u].end(), [&](int a, int b) {
      return detail::angle_less(pts[a].x - o.x, pts[a].y - o.y, pts[b].x - o.x, pts[b].y - o.y);
    });
  }
  std::vector<std::vector<bool>> used(adj.size());
  for (std::size_t u = 0; u < adj.size(); ++u) used[u].assign(adj[u].size(), false);
  auto slot_of = [&](int u, int v) {
    return static_cast<std::size_t>(std::find(adj[u].begin(), adj[u].end(), v) - adj[u].begin());
  };
  // Walks the face to the left of half-edge (u, adj[u][k]).
  auto trace = [&](int u, std::size_t k, std::vector<int>& cycle) {
    while (!used[u][k]) {
      used[u][k] = true;
      const int v = adj[u][k];
      cycle.push_back(u);
      const std::size_t deg = adj[v].size();
      k = (slot_of(v, u) + deg - 1) % deg;
      u = v;
    }
  };
  for (const auto& [u, v] : exterior) {
    std::vector<int> cycle;
    trace(u, slot_of(u, v), cycle);
  }

  std::vector<Triangle> triangles;
  for (std::size_t u = 0; u < adj.size(); ++u) {
    for (std::size_t k = 0; k < adj[u].size(); ++k) {
      if (used[u][k]) continue;
      std::vector<int> cycle;
      trace(static_cast<int>(u), k, cycle);
      if (cycle.size() != 3) {
        return ValidationReport{ValidationCheck::Faces,
                                "face at " + to_string(Edge(pts[u], pts[adj[u][k]])) + " has " +
                                    std::to_string(cycle.size()) + " sides"};
      }
      const Triangle t{pts[cycle[0]], pts[cycle[1]], pts[cycle[2]]};
      if (double_area(t[0], t[1], t[2]) != 1) {
        return ValidationReport{ValidationCheck::Faces,
                                "face at " + to_string(Edge(t[0], t[1])) + " is not unimodular"};
      }
      triangles.push_back(t);
    }
  }
  if (static_cast<Coord>(triangles.size()) != region.double_area()) {
    return ValidationReport{ValidationCheck::Faces, std::to_string(triangles.size()) +
                                                        " triangles for double area " +
                                                        std::to_string(region.double_area())};
  }
  for (auto& t : triangles) {
    // rotate so the sweep-smallest vertex comes first
    const auto first = std::min_element(t.begin(), t.end(), LexLess{});
    std::rotate(t.begin(), first, t.end());
  }
  std::sort(triangles.begin(), triangles.end(), [](const Triangle& s, const Triangle& t) {
    return std::lexicographical_compare(s.begin(), s.end(), t.begin(), t.end(), LexLess{});
  });
  return Triangulation{schedule.region_ptr(), std::move(edges), std::move(triangles)};
}

[[nodiscard]] inline ValidationResult validate_triangulation(const Region& region,
                                                             std::span<const Edge> edges) {
  return validate_triangulation(MidpointSchedule(region), edges);
}

[[nodiscard]] inline bool is_valid(const ValidationResult& r) {
  return std::holds_alternative<Triangulation>(r);
}

}  // namespace haystack

#endif  // HAYSTACK_VALIDATE_HPP
