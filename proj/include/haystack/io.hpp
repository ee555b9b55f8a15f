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

#ifndef HAYSTACK_IO_HPP
#define HAYSTACK_IO_HPP

#include <cstdint>
#include <fstream>
#include <optional>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "haystack/engine.hpp"
#include "haystack/geometry.hpp"
#include "haystack/region.hpp"
#include "haystack/validate.hpp"

namespace haystack::io {

/// Malformed or invalid user input. The message names the offending
/// location (line/column for syntax, JSON path for fields).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline Coord coord(const nlohmann::json& j, const std::string& path) {
  if (!j.is_number_integer()) throw InputError(path + ": expected an integer");
  return j.get<Coord>();
}

inline LatticePoint point(const nlohmann::json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw InputError(path + ": expected [x, y]");
  return {coord(j[0], path + "[0]"), coord(j[1], path + "[1]")};
}

inline Ring ring(const nlohmann::json& j, const std::string& path) {
  if (!j.is_array()) throw InputError(path + ": expected a list of points");
  Ring out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(point(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline Edge edge(const nlohmann::json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw InputError(path + ": expected [[x1, y1], [x2, y2]]");
  const LatticePoint a = point(j[0], path + "[0]"), b = point(j[1], path + "[1]");
  if (a == b) throw InputError(path + ": endpoints coincide");
  return Edge(a, b);
}

inline std::string line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline nlohmann::json parse_json(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("JSON syntax error at " + line_col(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
  }
}

}  // namespace detail

/// Parses "MxN" (also "MXN" or "M,N").
[[nodiscard]] inline std::pair<Coord, Coord> parse_grid_spec(const std::string& spec) {
  static const std::regex re(R"(\s*(\d+)\s*[xX,]\s*(\d+)\s*)");
  std::smatch m;
  if (!std::regex_match(spec, m, re)) throw InputError("grid: expected MxN, got '" + spec + "'");
  const Coord a = std::stoll(m[1].str()), b = std::stoll(m[2].str());
  if (a < 1 || b < 1) throw InputError("grid: dimensions must be positive");
  return {a, b};
}

/// Builds a Region from a RegionDocument: `outer` (+ `holes`,
/// `fixed_edges`) or the shorthand `grid: [m, n]`.
[[nodiscard]] inline Region region_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InputError("region: expected a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "outer" && key != "holes" && key != "fixed_edges" && key != "grid") {
      throw InputError("region: unknown field '" + key + "'");
    }
  }
  try {
    std::vector<Edge> fixed;
    if (doc.contains("fixed_edges")) {
      const auto& f = doc["fixed_edges"];
      if (!f.is_array()) throw InputError("fixed_edges: expected a list of edges");
      for (std::size_t i = 0; i < f.size(); ++i) fixed.push_back(detail::edge(f[i], "fixed_edges[" + std::to_string(i) + "]"));
    }
    if (doc.contains("grid")) {
      if (doc.contains("outer") || doc.contains("holes")) throw InputError("grid: cannot be combined with outer/holes");
      const auto& g = doc["grid"];
      if (!g.is_array() || g.size() != 2) throw InputError("grid: expected [m, n]");
      const Coord m = detail::coord(g[0], "grid[0]"), n = detail::coord(g[1], "grid[1]");
      if (m < 1 || n < 1) throw InputError("grid: dimensions must be positive");
      return Region(Ring{{0, 0}, {m, 0}, {m, n}, {0, n}}, {}, std::move(fixed));
    }
    if (!doc.contains("outer")) throw InputError("region: missing 'outer' (or 'grid')");
    Ring outer = detail::ring(doc["outer"], "outer");
    std::vector<Ring> holes;
    if (doc.contains("holes")) {
      const auto& h = doc["holes"];
      if (!h.is_array()) throw InputError("holes: expected a list of polygons");
      for (std::size_t i = 0; i < h.size(); ++i) holes.push_back(detail::ring(h[i], "holes[" + std::to_string(i) + "]"));
    }
    return Region(std::move(outer), std::move(holes), std::move(fixed));
  } catch (const InvalidRegion& e) {
    throw InputError(std::string("invalid region: ") + e.what());
  }
}

[[nodiscard]] inline Region region_from_text(std::string_view text) {
  return region_from_json(detail::parse_json(text));
}

[[nodiscard]] inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

[[nodiscard]] inline Region region_from_file(const std::string& path) {
  try {
    return region_from_text(read_file(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

[[nodiscard]] inline nlohmann::ordered_json edge_json(const Edge& e) {
  return nlohmann::ordered_json::array({{e.a().x, e.a().y}, {e.b().x, e.b().y}});
}

[[nodiscard]] inline nlohmann::ordered_json region_to_json(const Region& region) {
  nlohmann::ordered_json doc;
  auto ring_json = [](const Ring& r) {
    auto a = nlohmann::ordered_json::array();
    for (const auto& p : r) a.push_back({p.x, p.y});
    return a;
  };
  doc["outer"] = ring_json(region.outer());
  if (!region.holes().empty()) {
    doc["holes"] = nlohmann::ordered_json::array();
    for (const auto& h : region.holes()) doc["holes"].push_back(ring_json(h));
  }
  if (!region.fixed_edges().empty()) {
    doc["fixed_edges"] = nlohmann::ordered_json::array();
    for (const auto& e : region.fixed_edges()) doc["fixed_edges"].push_back(edge_json(e));
  }
  return doc;
}

/// One NDJSON line (without newline): {"index": i, "edges": [...]}.
[[nodiscard]] inline std::string triangulation_record(std::uint64_t index, std::span<const Edge> edges) {
  std::vector<Edge> sorted(edges.begin(), edges.end());
  std::sort(sorted.begin(), sorted.end());
  nlohmann::ordered_json rec;
  rec["index"] = index;
  rec["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : sorted) rec["edges"].push_back(edge_json(e));
  return rec.dump();
}

/// Edges of an NDJSON record or any object with an `edges` list.
[[nodiscard]] inline std::vector<Edge> edges_from_text(std::string_view text) {
  // Accept the first non-empty line of an NDJSON stream as well.
  std::string_view body = text;
  while (!body.empty() && (body.front() == '\n' || body.front() == '\r' || body.front() == ' ')) body.remove_prefix(1);
  const auto nl = body.find('\n');
  nlohmann::json doc;
  try {
    doc = detail::parse_json(body);
  } catch (const InputError&) {
    if (nl == std::string_view::npos) throw;
    doc = detail::parse_json(body.substr(0, nl));
  }
  if (!doc.is_object() || !doc.contains("edges") || !doc["edges"].is_array()) {
    throw InputError("edges: expected an object with an 'edges' list");
  }
  std::vector<Edge> out;
  for (std::size_t i = 0; i < doc["edges"].size(); ++i) {
    out.push_back(detail::edge(doc["edges"][i], "edges[" + std::to_string(i) + "]"));
  }
  return out;
}

// ---------------------------------------------------------------------------
// SVG

struct SvgStyle {
  int scale = 40;   ///< pixels per lattice unit
  int margin = 20;
};

/// What to draw on top of the region.
struct SvgScene {
  std::vector<Edge> edges;               ///< inner edges, drawn solid
  std::optional<HalfPoint> current;      ///< highlighted midpoint
  std::vector<HalfPoint> pending;        ///< faint midpoint marks
};

[[nodiscard]] inline std::string render_svg(const Region& region, const SvgScene& scene, const SvgStyle& style = {}) {
  const LatticePoint lo = region.min_corner(), hi = region.max_corner();
  const Coord width = (hi.x - lo.x) * style.scale + 2 * style.margin;
  const Coord height = (hi.y - lo.y) * style.scale + 2 * style.margin;
  // Doubled coordinates keep midpoint positions integral for even scales.
  auto sx = [&](Coord dx) { return std::to_string(style.margin + (dx - 2 * lo.x) * style.scale / 2); };
  auto sy = [&](Coord dy) { return std::to_string(style.margin + (2 * hi.y - dy) * style.scale / 2); };
  auto ring_path = [&](const Ring& r) {
    std::string d;
    for (std::size_t i = 0; i < r.size(); ++i) {
      d += (i == 0 ? "M" : " L") + sx(2 * r[i].x) + ',' + sy(2 * r[i].y);
    }
    return d + " Z";
  };
  auto line = [&](const Edge& e, const char* cls) {
    return std::string("  <line class=\"") + cls + "\" x1=\"" + sx(2 * e.a().x) + "\" y1=\"" + sy(2 * e.a().y) +
           "\" x2=\"" + sx(2 * e.b().x) + "\" y2=\"" + sy(2 * e.b().y) + "\"/>\n";
  };
  auto mark = [&](const HalfPoint& p, const char* cls, int r) {
    return std::string("  <circle class=\"") + cls + "\" cx=\"" + sx(p.dx) + "\" cy=\"" + sy(p.dy) + "\" r=\"" +
           std::to_string(r) + "\"/>\n";
  };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
     << "  <style>\n"
     << "    .region { fill: #f4f1e8; stroke: #222; stroke-width: 2; fill-rule: evenodd; }\n"
     << "    .edge { stroke: #1f4e9c; stroke-width: 2; }\n"
     << "    .fixed-edge { stroke: #b03020; stroke-width: 3; }\n"
     << "    .point { fill: #111; }\n"
     << "    .midpoint { fill: none; stroke: #999; stroke-width: 1; }\n"
     << "    .current { fill: #e0a000; stroke: #7a5000; stroke-width: 1; }\n"
     << "  </style>\n";
  std::string d = ring_path(region.outer());
  for (const auto& h : region.holes()) d += ' ' + ring_path(h);
  os << "  <path class=\"region\" d=\"" << d << "\"/>\n";
  for (const auto& e : region.fixed_edges()) os << line(e, "fixed-edge");
  for (const auto& e : scene.edges) {
    if (std::find(region.fixed_edges().begin(), region.fixed_edges().end(), e) == region.fixed_edges().end()) {
      os << line(e, "edge");
    }
  }
  for (const auto& p : scene.pending) os << mark(p, "midpoint", 3);
  if (scene.current) os << mark(*scene.current, "midpoint current", 5);
  for (const auto& p : region.lattice_points()) os << mark(p.doubled(), "point", 3);
  os << "</svg>\n";
  return os.str();
}

/// The haystack after `step` schedule positions of a complete edge set:
/// edges through earlier midpoints, the midpoint at `step` highlighted, and
/// every later non-fixed midpoint marked.
[[nodiscard]] inline SvgScene haystack_scene(const MidpointSchedule& schedule, std::span<const Edge> edges,
                                             std::size_t step) {
  SvgScene scene;
  for (const Edge& e : edges) {
    const auto idx = schedule.index_of(midpoint(e));
    if (idx && *idx < step) scene.edges.push_back(e);
  }
  for (std::size_t i = step; i < schedule.size(); ++i) {
    if (schedule.is_fixed(i)) continue;
    if (i == step) {
      scene.current = schedule[i];
    } else {
      scene.pending.push_back(schedule[i]);
    }
  }
  return scene;
}

}  // namespace haystack::io

#endif  // HAYSTACK_IO_HPP
