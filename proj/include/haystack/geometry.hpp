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

#ifndef HAYSTACK_GEOMETRY_HPP
#define HAYSTACK_GEOMETRY_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>

/// Exact integer lattice geometry. Every predicate here works on 64-bit
/// integers; half-integer points are carried with doubled coordinates so
/// that no division ever happens.
namespace haystack {

using Coord = std::int64_t;

struct HalfPoint;

/// A point of Z^2.
struct LatticePoint {
  Coord x = 0;
  Coord y = 0;

  friend constexpr bool operator==(const LatticePoint&, const LatticePoint&) = default;

  [[nodiscard]] constexpr HalfPoint doubled() const;
};

/// A point of (1/2)Z^2, stored as (dx/2, dy/2).
struct HalfPoint {
  Coord dx = 0;
  Coord dy = 0;

  friend constexpr bool operator==(const HalfPoint&, const HalfPoint&) = default;

  [[nodiscard]] constexpr bool is_lattice() const { return dx % 2 == 0 && dy % 2 == 0; }
  [[nodiscard]] constexpr LatticePoint to_lattice() const { return {dx / 2, dy / 2}; }
};

constexpr HalfPoint LatticePoint::doubled() const { return {2 * x, 2 * y}; }

/// The sweep order: y first, then x.
[[nodiscard]] constexpr bool lex_less(const HalfPoint& p, const HalfPoint& q) {
  return p.dy < q.dy || (p.dy == q.dy && p.dx < q.dx);
}

[[nodiscard]] constexpr bool lex_less(const LatticePoint& p, const LatticePoint& q) {
  return p.y < q.y || (p.y == q.y && p.x < q.x);
}

/// Strict-weak-order functor for containers keyed by points.
struct LexLess {
  constexpr bool operator()(const HalfPoint& p, const HalfPoint& q) const { return lex_less(p, q); }
  constexpr bool operator()(const LatticePoint& p, const LatticePoint& q) const {
    return lex_less(p, q);
  }
};

/// Canonical unordered lattice segment: `a` precedes `b` in the sweep order.
class Edge {
 public:
  constexpr Edge() = default;
  constexpr Edge(LatticePoint p, LatticePoint q) : a_(p), b_(q) {
    if (p == q) throw std::invalid_argument("Edge: endpoints must differ");
    if (lex_less(b_, a_)) std::swap(a_, b_);
  }

  [[nodiscard]] constexpr const LatticePoint& a() const { return a_; }
  [[nodiscard]] constexpr const LatticePoint& b() const { return b_; }

  friend constexpr bool operator==(const Edge&, const Edge&) = default;

  /// Lexicographic on (a, b); used to order candidates and edge sets.
  friend constexpr bool operator<(const Edge& e, const Edge& f) {
    if (e.a_ != f.a_) return lex_less(e.a_, f.a_);
    return lex_less(e.b_, f.b_);
  }

 private:
  LatticePoint a_{};
  LatticePoint b_{1, 0};
};

inline std::ostream& operator<<(std::ostream& os, const LatticePoint& p) {
  return os << '(' << p.x << ',' << p.y << ')';
}

inline std::ostream& operator<<(std::ostream& os, const HalfPoint& p) {
  auto half = [&os](Coord d) {
    if (d % 2 == 0) {
      os << d / 2;
    } else {
      os << d << "/2";
    }
  };
  os << '(';
  half(p.dx);
  os << ',';
  half(p.dy);
  return os << ')';
}

inline std::ostream& operator<<(std::ostream& os, const Edge& e) {
  return os << e.a() << '-' << e.b();
}

[[nodiscard]] inline std::string to_string(const Edge& e) {
  return '(' + std::to_string(e.a().x) + ',' + std::to_string(e.a().y) + ")-(" +
         std::to_string(e.b().x) + ',' + std::to_string(e.b().y) + ')';
}

[[nodiscard]] inline std::string to_string(const HalfPoint& p) {
  auto half = [](Coord d) {
    return d % 2 == 0 ? std::to_string(d / 2) : std::to_string(d) + "/2";
  };
  return '(' + half(p.dx) + ',' + half(p.dy) + ')';
}

// ---------------------------------------------------------------------------
// Primitive predicates

/// Sign of the cross product (b - a) x (c - a). Works on any consistent
/// scaling of the three points.
[[nodiscard]] constexpr int orientation(Coord ax, Coord ay, Coord bx, Coord by, Coord cx, Coord cy) {
  const Coord v = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
  return (v > 0) - (v < 0);
}

[[nodiscard]] constexpr int orientation(const LatticePoint& a, const LatticePoint& b,
                                        const LatticePoint& c) {
  return orientation(a.x, a.y, b.x, b.y, c.x, c.y);
}

[[nodiscard]] constexpr int orientation(const HalfPoint& a, const HalfPoint& b, const HalfPoint& c) {
  return orientation(a.dx, a.dy, b.dx, b.dy, c.dx, c.dy);
}

/// Twice the signed area of triangle abc.
[[nodiscard]] constexpr Coord double_area(const LatticePoint& a, const LatticePoint& b,
                                          const LatticePoint& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

/// True iff the open segment ab contains no lattice point.
[[nodiscard]] inline bool is_primitive(const Edge& e) {
  const Coord gx = std::abs(e.b().x - e.a().x);
  const Coord gy = std::abs(e.b().y - e.a().y);
  return std::gcd(gx, gy) == 1;
}

[[nodiscard]] constexpr HalfPoint midpoint(const Edge& e) {
  return {e.a().x + e.b().x, e.a().y + e.b().y};
}

/// The segment with midpoint r that starts at v, i.e. [v, 2r - v].
[[nodiscard]] constexpr LatticePoint reflect_through(const LatticePoint& v, const HalfPoint& r) {
  return {r.dx - v.x, r.dy - v.y};
}

namespace detail {

/// Given p collinear with segment [a, b] (all in the same scaling), is p
/// inside the closed bounding box of the segment?
[[nodiscard]] constexpr bool within_box(Coord ax, Coord ay, Coord bx, Coord by, Coord px, Coord py) {
  return std::min(ax, bx) <= px && px <= std::max(ax, bx) && std::min(ay, by) <= py &&
         py <= std::max(ay, by);
}

/// p strictly between a and b on the line through them (p collinear).
[[nodiscard]] constexpr bool strictly_between(const LatticePoint& a, const LatticePoint& b,
                                              const LatticePoint& p) {
  return within_box(a.x, a.y, b.x, b.y, p.x, p.y) && p != a && p != b;
}

}  // namespace detail

/// True iff p lies on the closed segment ab (doubled coordinates throughout).
[[nodiscard]] constexpr bool on_closed_segment(const HalfPoint& a, const HalfPoint& b,
                                               const HalfPoint& p) {
  return orientation(a, b, p) == 0 && detail::within_box(a.dx, a.dy, b.dx, b.dy, p.dx, p.dy);
}

/// True iff the relative interiors of the two segments meet, counting a
/// collinear overlap of positive length and an endpoint of one segment in
/// the interior of the other. Touching at a shared endpoint is not a crossing.
[[nodiscard]] constexpr bool segments_properly_cross(const Edge& e1, const Edge& e2) {
  const LatticePoint &p = e1.a(), &q = e1.b(), &r = e2.a(), &s = e2.b();
  const int o1 = orientation(p, q, r);
  const int o2 = orientation(p, q, s);
  const int o3 = orientation(r, s, p);
  const int o4 = orientation(r, s, q);

  if (o1 == 0 && o2 == 0) {
    // Collinear: project on the dominant axis and compare open intervals.
    const bool use_x = p.x != q.x;
    auto key = [use_x](const LatticePoint& t) { return use_x ? t.x : t.y; };
    const Coord lo1 = std::min(key(p), key(q)), hi1 = std::max(key(p), key(q));
    const Coord lo2 = std::min(key(r), key(s)), hi2 = std::max(key(r), key(s));
    return std::max(lo1, lo2) < std::min(hi1, hi2);
  }
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  // T-junctions: an endpoint inside the other segment's relative interior.
  if (o1 == 0 && detail::strictly_between(p, q, r)) return true;
  if (o2 == 0 && detail::strictly_between(p, q, s)) return true;
  if (o3 == 0 && detail::strictly_between(r, s, p)) return true;
  if (o4 == 0 && detail::strictly_between(r, s, q)) return true;
  return false;
}

/// Shoelace formula; positive for counter-clockwise rings.
[[nodiscard]] inline Coord polygon_double_area(std::span<const LatticePoint> ring) {
  Coord sum = 0;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = ring[i];
    const auto& q = ring[(i + 1) % n];
    sum += p.x * q.y - q.x * p.y;
  }
  return sum;
}

[[nodiscard]] constexpr bool triangle_is_unimodular(const LatticePoint& a, const LatticePoint& b,
                                                    const LatticePoint& c) {
  const Coord d = double_area(a, b, c);
  return d == 1 || d == -1;
}

}  // namespace haystack

template <>
struct std::hash<haystack::LatticePoint> {
  std::size_t operator()(const haystack::LatticePoint& p) const noexcept {
    return std::hash<std::int64_t>{}(p.x * 0x9E3779B97F4A7C15ULL ^ (p.y + 0x7F4A7C15));
  }
};

template <>
struct std::hash<haystack::HalfPoint> {
  std::size_t operator()(const haystack::HalfPoint& p) const noexcept {
    return std::hash<std::int64_t>{}(p.dx * 0x9E3779B97F4A7C15ULL ^ (p.dy + 0x7F4A7C15));
  }
};

template <>
struct std::hash<haystack::Edge> {
  std::size_t operator()(const haystack::Edge& e) const noexcept {
    const std::size_t h = std::hash<haystack::LatticePoint>{}(e.a());
    return h ^ (std::hash<haystack::LatticePoint>{}(e.b()) + 0x9E3779B9 + (h << 6) + (h >> 2));
  }
};

#endif  // HAYSTACK_GEOMETRY_HPP
