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

#ifndef HAYSTACK_COMMANDS_HPP
#define HAYSTACK_COMMANDS_HPP

#include <chrono>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "haystack/capacity.hpp"
#include "haystack/engine.hpp"
#include "haystack/io.hpp"
#include "haystack/memo.hpp"
#include "haystack/oracle.hpp"
#include "haystack/schedule.hpp"
#include "haystack/validate.hpp"

// The subcommands of the `haystack` tool, written against streams so the
// same code backs the binary and the test suites. Machine-readable output
// goes to `out`; timings and progress go to `diag`.
namespace haystack::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kInputError = 2,
  kInvariantViolation = 3,
  kCapExceeded = 4,
};

struct RegionSource {
  std::optional<std::string> grid;     ///< "MxN"
  std::optional<std::string> polygon;  ///< path to a RegionDocument
};

[[nodiscard]] inline Region load_region(const RegionSource& src) {
  if (src.grid && src.polygon) throw io::InputError("give either --grid or --polygon, not both");
  if (src.grid) {
    const auto [m, n] = io::parse_grid_spec(*src.grid);
    return Region::grid(m, n);
  }
  if (src.polygon) return io::region_from_file(*src.polygon);
  throw io::InputError("no region given (use --grid MxN or --polygon FILE)");
}

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline void write_counterexample(const std::string& path, const Region& region, const BranchingEvent& ev) {
  nlohmann::ordered_json doc;
  doc["region"] = io::region_to_json(region);
  doc["midpoint"] = {ev.midpoint.dx, ev.midpoint.dy};
  doc["midpoint_doubled"] = true;
  doc["position"] = ev.position;
  doc["haystack"] = nlohmann::ordered_json::array();
  for (const auto& e : ev.haystack) doc["haystack"].push_back(io::edge_json(e));
  doc["extensions"] = nlohmann::ordered_json::array();
  for (const auto& e : ev.extensions) doc["extensions"].push_back(io::edge_json(e));
  std::ofstream(path) << doc.dump(2) << '\n';
}

inline std::string histogram(const EnumerationStats& s) {
  return "0:" + std::to_string(s.branch_histogram[0]) + " 1:" + std::to_string(s.branch_histogram[1]) +
         " 2:" + std::to_string(s.branch_histogram[2]) + " >2:" + std::to_string(s.branch_histogram[3]);
}

inline std::function<void(const BranchingEvent&)> warn_to(std::ostream& diag) {
  return [&diag](const BranchingEvent& ev) { diag << "warning: " << ev.describe() << '\n'; };
}

}  // namespace detail

struct CountOptions {
  bool memoize = false;
  unsigned threads = 1;
  std::string dump_path = "haystack-counterexample.json";
  /// Fault injection for self-tests.
  bool skip_crossing_check = false;
};

inline int cmd_count(const Region& region, const CountOptions& opt, std::ostream& out, std::ostream& diag) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto table = std::make_shared<const CandidateTable>(region);
  const auto& schedule = table->schedule();
  try {
    if (opt.memoize) {
      MemoOptions memo;
      memo.threads = opt.threads;
      memo.on_warning = detail::warn_to(diag);
      const MemoStats s = count_memoized_with_stats(*table, memo);
      out << "count: " << s.count.str() << '\n'
          << "midpoints: " << schedule.size() << '\n'
          << "bound: 2^" << schedule.size() - schedule.fixed_count() << " = " << theoretical_bound(schedule).str()
          << '\n'
          << "max_branching: " << s.max_branching_observed << '\n';
      diag << "memo states: " << s.states_expanded << ", hits: " << s.memo_hits << '\n';
    } else {
      EngineOptions eng;
      eng.threads = opt.threads;
      eng.skip_crossing_check = opt.skip_crossing_check;
      eng.on_warning = detail::warn_to(diag);
      const EnumerationStats s = count_with_stats(*table, eng);
      out << "count: " << s.count.str() << '\n'
          << "midpoints: " << schedule.size() << '\n'
          << "bound: 2^" << schedule.size() - schedule.fixed_count() << " = " << theoretical_bound(schedule).str()
          << '\n'
          << "branching: " << detail::histogram(s) << '\n'
          << "max_branching: " << s.max_branching_observed << '\n'
          << "dead_branches: " << s.dead_branches << '\n';
      diag << "nodes: " << s.nodes_visited << '\n';
      if (s.invalid_leaves != 0) {
        diag << "error: " << s.invalid_leaves << " complete leaves failed validation\n";
        return kInvariantViolation;
      }
    }
  } catch (const BranchingViolation& v) {
    detail::write_counterexample(opt.dump_path, region, v.event());
    diag << "invariant violation: " << v.what() << "\ncounterexample written to " << opt.dump_path << '\n';
    return kInvariantViolation;
  }
  diag << "elapsed: " << detail::seconds_since(t0) << " s\n";
  return kOk;
}

struct EnumerateOptions {
  std::optional<std::uint64_t> limit;
  std::string dump_path = "haystack-counterexample.json";
};

/// Streams NDJSON records. Every record has passed leaf validation.
inline int cmd_enumerate(const Region& region, const EnumerateOptions& opt, std::ostream& out, std::ostream& diag) {
  const auto t0 = std::chrono::steady_clock::now();
  std::uint64_t index = 0;
  EngineOptions eng;
  eng.on_warning = detail::warn_to(diag);
  try {
    const auto stats = enumerate_triangulations(
        CandidateTable(region), [&](const Triangulation& t) { out << io::triangulation_record(index++, t.inner_edges) << '\n'; },
        opt.limit, eng);
    diag << "emitted: " << index << ", nodes: " << stats.nodes_visited << ", elapsed: " << detail::seconds_since(t0)
         << " s\n";
    if (stats.invalid_leaves != 0) return kInvariantViolation;
  } catch (const BranchingViolation& v) {
    detail::write_counterexample(opt.dump_path, region, v.event());
    diag << "invariant violation: " << v.what() << '\n';
    return kInvariantViolation;
  }
  return kOk;
}

struct VerifyOptions {
  std::size_t cap = oracle::default_cap();
  /// Fault injection for self-tests.
  bool skip_crossing_check = false;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Runs the sweep, the memoized sweep and the oracle and compares them.
[[nodiscard]] inline std::vector<CheckResult> verify_checks(const Region& region, const VerifyOptions& opt,
                                                           std::ostream& diag) {
  std::vector<CheckResult> checks;
  const auto table = std::make_shared<const CandidateTable>(region);
  const auto& schedule = table->schedule();
  const bool strict = strict_branching(region);

  const Count oracle_n = oracle::oracle_count(region, opt.cap);

  EngineOptions eng;
  eng.skip_crossing_check = opt.skip_crossing_check;
  eng.on_warning = detail::warn_to(diag);
  EnumerationStats sweep;
  std::uint64_t bijection_failures = 0;
  std::optional<std::string> violation;
  try {
    sweep = enumerate_triangulations(
        *table,
        [&](const Triangulation& t) {
          // Inner edges against M, checked directly on the emitted result.
          std::vector<HalfPoint> mids;
          for (const Edge& e : t.inner_edges) mids.push_back(midpoint(e));
          std::sort(mids.begin(), mids.end(), LexLess{});
          if (mids != schedule.midpoints()) ++bijection_failures;
        },
        std::nullopt, eng);
  } catch (const BranchingViolation& v) {
    violation = v.what();
  }

  Count memo_n = -1;
  try {
    MemoOptions memo;
    memo.on_warning = eng.on_warning;
    memo_n = count_memoized(region, memo);
  } catch (const BranchingViolation& v) {
    violation = v.what();
  }

  const Count bound = theoretical_bound(schedule);
  checks.push_back({"haystack-equals-oracle", !violation && sweep.count == oracle_n,
                    "haystack " + sweep.count.str() + ", oracle " + oracle_n.str()});
  checks.push_back({"memoized-equals-oracle", memo_n == oracle_n, "memoized " + memo_n.str() + ", oracle " + oracle_n.str()});
  checks.push_back({"bound", oracle_n <= bound && sweep.count <= bound,
                    "count " + oracle_n.str() + " <= 2^" + std::to_string(schedule.size() - schedule.fixed_count())});
  const bool branching_ok = !violation && sweep.max_branching_observed <= 2;
  checks.push_back({"branching", branching_ok || !strict,
                    violation ? *violation
                              : "max " + std::to_string(sweep.max_branching_observed) +
                                    (strict ? "" : " (non-strict region: reported only)")});
  checks.push_back({"leaf-validation", !violation && sweep.invalid_leaves == 0,
                    violation ? std::string("sweep aborted")
                              : std::to_string(sweep.invalid_leaves) + " invalid complete leaves"});
  checks.push_back({"midpoint-bijection", !violation && bijection_failures == 0,
                    violation ? std::string("sweep aborted")
                              : sweep.count.str() + " triangulations checked"});
  return checks;
}

inline int cmd_verify(const Region& region, const VerifyOptions& opt, std::ostream& out, std::ostream& diag) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<CheckResult> checks;
  try {
    checks = verify_checks(region, opt, diag);
  } catch (const oracle::CapExceeded& e) {
    diag << "error: " << e.what() << '\n';
    return kCapExceeded;
  }
  bool all = true;
  std::optional<std::string> first;
  for (const auto& c : checks) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    if (!c.pass && !first) first = c.name;
    all = all && c.pass;
  }
  out << (all ? "verify: PASS" : "verify: FAIL (first failing check: " + *first + ")") << '\n';
  diag << "elapsed: " << detail::seconds_since(t0) << " s\n";
  return all ? kOk : kFailure;
}

struct CapacityOptions {
  capacity::TableOptions table;
  std::optional<std::string> csv_path;
};

inline int cmd_capacity(const CapacityOptions& opt, std::ostream& out, std::ostream& diag) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = capacity::capacity_table(opt.table);
  out << capacity::to_text(rows);
  for (const auto& row : rows) {
    if (!row.record) continue;
    const auto& r = *row.record;
    if (!capacity::within_count_bound(r) ||
        !capacity::capacity_at_most(r, capacity::upper_bound_cm(std::min(r.m, r.n)))) {
      diag << "error: bound violated at " << r.m << "x" << r.n << '\n';
      return kInvariantViolation;
    }
  }
  for (auto n : capacity::square_capacity_drops(rows)) {
    diag << "note: c(" << n << "," << n << ") is below the previous square's capacity\n";
  }
  if (opt.csv_path) {
    std::ofstream csv(*opt.csv_path, std::ios::binary);
    if (!csv) throw io::InputError("cannot write '" + *opt.csv_path + "'");
    csv << capacity::to_csv(rows);
  }
  diag << "elapsed: " << detail::seconds_since(t0) << " s\n";
  return kOk;
}

struct RenderOptions {
  std::optional<std::uint64_t> index;
  std::optional<std::string> edges_path;
  std::optional<std::size_t> haystack_step;
  io::SvgStyle style;
};

/// Builds the SVG text; throws io::InputError for bad indices or edge sets.
[[nodiscard]] inline std::string render_to_string(const Region& region, const RenderOptions& opt) {
  const auto table = std::make_shared<const CandidateTable>(region);
  const auto& schedule = table->schedule();
  std::vector<Edge> edges;
  if (opt.edges_path) {
    edges = io::edges_from_text(io::read_file(*opt.edges_path));
    const auto result = validate_triangulation(schedule, edges);
    if (const auto* bad = std::get_if<ValidationReport>(&result)) {
      throw io::InputError(std::string("edge set is not a triangulation (") + to_string(bad->failed) + "): " + bad->detail);
    }
    edges = std::get<Triangulation>(result).inner_edges;
  } else {
    const std::uint64_t want = opt.index.value_or(0);
    std::optional<std::vector<Edge>> found;
    std::uint64_t seen = 0;
    enumerate_triangulations(*table, [&](const Triangulation& t) {
      if (seen++ == want) found = t.inner_edges;
    }, want + 1);
    if (!found) throw io::InputError("index " + std::to_string(want) + " out of range (" + std::to_string(seen) + " triangulations)");
    edges = *found;
  }
  io::SvgScene scene;
  if (opt.haystack_step) {
    if (*opt.haystack_step > schedule.size()) {
      throw io::InputError("haystack step " + std::to_string(*opt.haystack_step) + " exceeds |M| = " + std::to_string(schedule.size()));
    }
    scene = io::haystack_scene(schedule, edges, *opt.haystack_step);
  } else {
    scene.edges = edges;
  }
  return io::render_svg(region, scene, opt.style);
}

inline int cmd_render(const Region& region, const RenderOptions& opt, const std::string& svg_path, std::ostream& diag) {
  const std::string svg = render_to_string(region, opt);
  std::ofstream f(svg_path, std::ios::binary);
  if (!f) throw io::InputError("cannot write '" + svg_path + "'");
  f << svg;
  diag << "wrote " << svg_path << '\n';
  return kOk;
}

}  // namespace haystack::cli

#endif  // HAYSTACK_COMMANDS_HPP
