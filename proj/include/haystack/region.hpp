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

#ifndef HAYSTACK_REGION_HPP
#define HAYSTACK_REGION_HPP

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "haystack/geometry.hpp"

namespace haystack {

using Ring = std::vector<LatticePoint>;

/// Thrown when polygon data does not describe a valid lattice region.
class InvalidRegion : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Location { Inside, Boundary, Outside };

namespace detail {

[[nodiscard]] constexpr bool closed_segments_meet(const LatticePoint& p, const LatticePoint& q,
                                                  const LatticePoint& r, const LatticePoint& s) {
  const int o1 = orientation(p, q, r);
  const int o2 = orientation(p, q, s);
  const int o3 = orientation(r, s, p);
  const int o4 = orientation(r, s, q);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  auto on = [](const LatticePoint& a, const LatticePoint& b, const LatticePoint& t) {
    return within_box(a.x, a.y, b.x, b.y, t.x, t.y);
  };
  return (o1 == 0 && on(p, q, r)) || (o2 == 0 && on(p, q, s)) || (o3 == 0 && on(r, s, p)) ||
         (o4 == 0 && on(r, s, q));
}

/// Location of a half-integer point relative to a closed ring.
[[nodiscard]] inline Location locate(const Ring& ring, const HalfPoint& p) {
  int winding = 0;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const HalfPoint a = ring[i].doubled();
    const HalfPoint b = ring[(i + 1) % n].doubled();
    if (on_closed_segment(a, b, p)) return Location::Boundary;
    if (a.dy <= p.dy) {
      if (b.dy > p.dy && orientation(a, b, p) > 0) ++winding;
    } else if (b.dy <= p.dy && orientation(a, b, p) < 0) {
      --winding;
    }
  }
  return winding != 0 ? Location::Inside : Location::Outside;
}

/// Throws unless the ring is a simple closed polygon with positive area
/// in absolute value. Collinear consecutive vertices are allowed.
inline void require_simple(const Ring& ring, const std::string& what) {
  const std::size_t n = ring.size();
  if (n < 3) throw InvalidRegion(what + ": needs at least 3 vertices");
  for (std::size_t i = 0; i < n; ++i) {
    if (ring[i] == ring[(i + 1) % n]) {
      throw InvalidRegion(what + ": repeated consecutive vertex at index " + std::to_string(i));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = ring[i];
    const auto& q = ring[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& r = ring[j];
      const auto& s = ring[(j + 1) % n];
      const bool next = j == i + 1;
      const bool prev = (j + 1) % n == i;
      if (next || prev) {
        // Adjacent edges share one vertex; reject folding back along the line.
        const auto& shared = next ? q : p;
        const auto& u = next ? p : q;
        const auto& w = next ? s : r;
        if (orientation(u, shared, w) == 0 &&
            (w.x - shared.x) * (u.x - shared.x) + (w.y - shared.y) * (u.y - shared.y) > 0) {
          throw InvalidRegion(what + ": edges " + std::to_string(i) + " and " + std::to_string(j) +
                              " overlap");
        }
        continue;
      }
      if (closed_segments_meet(p, q, r, s)) {
        throw InvalidRegion(what + ": edges " + std::to_string(i) + " and " + std::to_string(j) +
                            " intersect (polygon is not simple)");
      }
    }
  }
  if (polygon_double_area(ring) == 0) throw InvalidRegion(what + ": zero area");
}

inline bool rings_meet(const Ring& u, const Ring& v) {
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (closed_segments_meet(u[i], u[(i + 1) % u.size()], v[j], v[(j + 1) % v.size()])) {
        return true;
      }
    }
  }
  return false;
}

}  // namespace detail

/// A closed lattice polygon with optional holes and fixed inner edges.
///
/// The outer ring is stored counter-clockwise and each hole clockwise, so
/// the interior always lies to the left of a boundary edge. Construction
/// validates everything; every other component assumes a valid Region.
class Region {
 public:
  Region(Ring outer, std::vector<Ring> holes = {}, std::vector<Edge> fixed_edges = {})
      : outer_(std::move(outer)), holes_(std::move(holes)), fixed_(std::move(fixed_edges)) {
    validate_rings();
    build_boundary();
    collect_lattice_points();
    validate_fixed_edges();
    std::sort(fixed_.begin(), fixed_.end());
  }

  /// The rectangle {0..m} x {0..n}.
  static Region grid(Coord m, Coord n) {
    if (m < 1 || n < 1) throw InvalidRegion("grid: dimensions must be positive");
    return Region(Ring{{0, 0}, {m, 0}, {m, n}, {0, n}});
  }

  [[nodiscard]] const Ring& outer() const { return outer_; }
  [[nodiscard]] const std::vector<Ring>& holes() const { return holes_; }
  [[nodiscard]] const std::vector<Edge>& fixed_edges() const { return fixed_; }
  [[nodiscard]] bool simply_connected() const { return holes_.empty(); }

  /// Boundary split into primitive unit pieces (no lattice point inside any
  /// piece), oriented with the interior on the left.
  [[nodiscard]] const std::vector<std::pair<LatticePoint, LatticePoint>>& boundary_pieces() const {
    return pieces_;
  }

  /// All lattice points of the closed region, sorted in sweep order.
  [[nodiscard]] const std::vector<LatticePoint>& lattice_points() const { return points_; }

  [[nodiscard]] std::size_t boundary_point_count() const { return boundary_count_; }
  [[nodiscard]] std::size_t interior_point_count() const { return points_.size() - boundary_count_; }

  [[nodiscard]] Coord double_area() const {
    Coord a = polygon_double_area(outer_);
    for (const auto& h : holes_) a += polygon_double_area(h);  // holes are clockwise
    return a;
  }

  [[nodiscard]] LatticePoint min_corner() const { return lo_; }
  [[nodiscard]] LatticePoint max_corner() const { return hi_; }

  [[nodiscard]] Location locate(const HalfPoint& p) const {
    const Location o = detail::locate(outer_, p);
    if (o != Location::Inside) return o;
    for (const auto& h : holes_) {
      const Location l = detail::locate(h, p);
      if (l == Location::Boundary) return Location::Boundary;
      if (l == Location::Inside) return Location::Outside;
    }
    return Location::Inside;
  }

  [[nodiscard]] bool contains(const LatticePoint& p) const {
    return locate(p.doubled()) != Location::Outside;
  }

 private:
  void validate_rings() {
    detail::require_simple(outer_, "outer");
    if (polygon_double_area(outer_) < 0) std::reverse(outer_.begin(), outer_.end());
    for (std::size_t k = 0; k < holes_.size(); ++k) {
      auto& h = holes_[k];
      const std::string name = "holes[" + std::to_string(k) + "]";
      detail::require_simple(h, name);
      if (polygon_double_area(h) > 0) std::reverse(h.begin(), h.end());
      if (detail::rings_meet(outer_, h)) throw InvalidRegion(name + ": touches the outer boundary");
      if (detail::locate(outer_, h.front().doubled()) != Location::Inside) {
        throw InvalidRegion(name + ": not inside the outer polygon");
      }
      for (std::size_t j = 0; j < k; ++j) {
        const auto& g = holes_[j];
        if (detail::rings_meet(g, h) || detail::locate(g, h.front().doubled()) != Location::Outside ||
            detail::locate(h, g.front().doubled()) != Location::Outside) {
          throw InvalidRegion(name + ": overlaps holes[" + std::to_string(j) + "]");
        }
      }
    }
  }

  void build_boundary() {
    lo_ = hi_ = outer_.front();
    auto add_ring = [this](const Ring& ring) {
      for (std::size_t i = 0; i < ring.size(); ++i) {
        const auto& p = ring[i];
        const auto& q = ring[(i + 1) % ring.size()];
        const Coord g = std::gcd(std::abs(q.x - p.x), std::abs(q.y - p.y));
        const Coord sx = (q.x - p.x) / g, sy = (q.y - p.y) / g;
        for (Coord t = 0; t < g; ++t) {
          pieces_.emplace_back(LatticePoint{p.x + t * sx, p.y + t * sy},
                               LatticePoint{p.x + (t + 1) * sx, p.y + (t + 1) * sy});
        }
      }
    };
    add_ring(outer_);
    for (const auto& h : holes_) add_ring(h);
    for (const auto& p : outer_) {
      lo_ = {std::min(lo_.x, p.x), std::min(lo_.y, p.y)};
      hi_ = {std::max(hi_.x, p.x), std::max(hi_.y, p.y)};
    }
  }

  void collect_lattice_points() {
    for (Coord y = lo_.y; y <= hi_.y; ++y) {
      for (Coord x = lo_.x; x <= hi_.x; ++x) {
        const LatticePoint p{x, y};
        const Location l = locate(p.doubled());
        if (l == Location::Outside) continue;
        points_.push_back(p);
        if (l == Location::Boundary) ++boundary_count_;
      }
    }
  }

  void validate_fixed_edges() {
    for (std::size_t i = 0; i < fixed_.size(); ++i) {
      const Edge& e = fixed_[i];
      const std::string name = "fixed_edges[" + std::to_string(i) + "]";
      if (!contains(e.a()) || !contains(e.b())) {
        throw InvalidRegion(name + ": endpoint outside the region");
      }
      if (!is_primitive(e)) throw InvalidRegion(name + ": not a primitive segment");
      if (!interior_segment(e)) throw InvalidRegion(name + ": not inside the region interior");
      for (std::size_t j = 0; j < i; ++j) {
        if (segments_properly_cross(e, fixed_[j])) {
          throw InvalidRegion(name + ": crosses fixed_edges[" + std::to_string(j) + "]");
        }
      }
    }
  }

  [[nodiscard]] bool interior_segment(const Edge& e) const;

  friend bool segment_in_interior(const Region& region, const Edge& e);

  Ring outer_;
  std::vector<Ring> holes_;
  std::vector<Edge> fixed_;
  std::vector<std::pair<LatticePoint, LatticePoint>> pieces_;
  std::vector<LatticePoint> points_;
  std::size_t boundary_count_ = 0;
  LatticePoint lo_{}, hi_{};
};

/// Strictly inside the outer ring and strictly outside every hole.
[[nodiscard]] inline bool point_in_interior(const Region& region, const HalfPoint& p) {
  return region.locate(p) == Location::Inside;
}

/// True iff the relative interior of a primitive lattice segment lies in
/// int(P): it meets no boundary piece except at its endpoints and its
/// midpoint is interior.
[[nodiscard]] inline bool segment_in_interior(const Region& region, const Edge& e) {
  for (const auto& [p, q] : region.pieces_) {
    if (segments_properly_cross(e, Edge(p, q))) return false;
  }
  return point_in_interior(region, midpoint(e));
}

inline bool Region::interior_segment(const Edge& e) const { return segment_in_interior(*this, e); }

}  // namespace haystack

#endif  // HAYSTACK_REGION_HPP
