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

#ifndef HAYSTACK_ENGINE_HPP
#define HAYSTACK_ENGINE_HPP

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "haystack/geometry.hpp"
#include "haystack/region.hpp"
#include "haystack/schedule.hpp"
#include "haystack/validate.hpp"

namespace haystack {

// ---------------------------------------------------------------------------
// Candidate table

/// Candidate inner edges of a region, flattened in schedule order, with the
/// crossing relation the sweep needs precomputed.
class CandidateTable {
 public:
  using Id = std::uint32_t;

  explicit CandidateTable(std::shared_ptr<const MidpointSchedule> schedule)
      : schedule_(std::move(schedule)) {
    const auto per_midpoint = inner_edge_candidates(*schedule_);
    const std::size_t m = schedule_->size();
    begin_.resize(m + 1, 0);
    for (std::size_t i = 0; i < m; ++i) {
      begin_[i] = static_cast<Id>(edges_.size());
      if (schedule_->is_fixed(i)) continue;
      for (const Edge& e : per_midpoint.at((*schedule_)[i])) {
        edges_.push_back(e);
        position_.push_back(i);
      }
    }
    begin_[m] = static_cast<Id>(edges_.size());

    const auto& fixed = schedule_->region().fixed_edges();
    const std::size_t k = edges_.size();
    blocked_.assign(k, false);
    later_crossers_.resize(k);
    last_crossing_position_.assign(k, -1);
    for (Id c = 0; c < k; ++c) {
      for (const Edge& f : fixed) {
        if (segments_properly_cross(edges_[c], f)) blocked_[c] = true;
      }
    }
    for (Id c = 0; c < k; ++c) {
      for (Id d = c + 1; d < k; ++d) {
        if (!segments_properly_cross(edges_[c], edges_[d])) continue;
        if (position_[d] > position_[c]) later_crossers_[c].push_back(d);
        last_crossing_position_[c] = std::max(last_crossing_position_[c], static_cast<long>(position_[d]));
        last_crossing_position_[d] = std::max(last_crossing_position_[d], static_cast<long>(position_[c]));
      }
    }
  }

  explicit CandidateTable(const Region& region)
      : CandidateTable(std::make_shared<const MidpointSchedule>(region)) {}

  [[nodiscard]] const MidpointSchedule& schedule() const { return *schedule_; }
  [[nodiscard]] const std::shared_ptr<const MidpointSchedule>& schedule_ptr() const { return schedule_; }
  [[nodiscard]] std::size_t size() const { return edges_.size(); }
  [[nodiscard]] const Edge& edge(Id c) const { return edges_[c]; }
  [[nodiscard]] std::size_t position(Id c) const { return position_[c]; }
  [[nodiscard]] Id begin(std::size_t pos) const { return begin_[pos]; }
  [[nodiscard]] Id end(std::size_t pos) const { return begin_[pos + 1]; }
  [[nodiscard]] bool blocked_by_fixed(Id c) const { return blocked_[c]; }

  /// Candidates at strictly later positions that cross `c`.
  [[nodiscard]] const std::vector<Id>& later_crossers(Id c) const { return later_crossers_[c]; }

  /// A placed edge is live at `pos` iff some candidate at position >= pos
  /// crosses it; only live edges influence the rest of the sweep.
  [[nodiscard]] bool live_at(Id c, std::size_t pos) const {
    return last_crossing_position_[c] >= static_cast<long>(pos);
  }

  [[nodiscard]] std::optional<Id> find(const Edge& e) const {
    const auto idx = schedule_->index_of(midpoint(e));
    if (!idx) return std::nullopt;
    for (Id c = begin(*idx); c < end(*idx); ++c) {
      if (edges_[c] == e) return c;
    }
    return std::nullopt;
  }

 private:
  std::shared_ptr<const MidpointSchedule> schedule_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> position_;
  std::vector<Id> begin_;
  std::vector<bool> blocked_;
  std::vector<std::vector<Id>> later_crossers_;
  std::vector<long> last_crossing_position_;
};

// ---------------------------------------------------------------------------
// Branching diagnostics

/// More than two feasible edges through one midpoint.
struct BranchingEvent {
  HalfPoint midpoint;
  std::size_t position = 0;
  std::vector<Edge> haystack;    ///< chosen edges so far, schedule order
  std::vector<Edge> extensions;  ///< the offending feasible set

  [[nodiscard]] std::string describe() const {
    std::ostringstream os;
    os << "branching " << extensions.size() << " > 2 at midpoint " << to_string(midpoint)
       << " (position " << position << ")\n  haystack:";
    for (const auto& e : haystack) os << ' ' << to_string(e);
    os << "\n  extensions:";
    for (const auto& e : extensions) os << ' ' << to_string(e);
    return os.str();
  }
};

/// Thrown in strict mode when a sweep node has more than two extensions.
class BranchingViolation : public std::runtime_error {
 public:
  explicit BranchingViolation(BranchingEvent ev)
      : std::runtime_error(ev.describe()), event_(std::move(ev)) {}
  [[nodiscard]] const BranchingEvent& event() const { return event_; }

 private:
  BranchingEvent event_;
};

/// Strict (throwing) branching checks apply to simply-connected regions
/// without fixed edges; elsewhere violations are only reported.
[[nodiscard]] inline bool strict_branching(const Region& region) {
  return region.simply_connected() && region.fixed_edges().empty();
}

// ---------------------------------------------------------------------------
// Haystack values

/// A partial complex holding exactly one edge through each midpoint before
/// `position()` and none through later ones. Immutable.
class Haystack {
 public:
  explicit Haystack(std::shared_ptr<const CandidateTable> table)
      : table_(std::move(table)), position_(table_->schedule().skip_fixed(0)) {}

  [[nodiscard]] const CandidateTable& table() const { return *table_; }
  [[nodiscard]] const MidpointSchedule& schedule() const { return table_->schedule(); }
  [[nodiscard]] std::size_t position() const { return position_; }
  [[nodiscard]] bool complete() const { return position_ >= schedule().size(); }
  [[nodiscard]] const std::vector<Edge>& chosen() const { return chosen_; }
  [[nodiscard]] const HalfPoint& current_midpoint() const { return schedule()[position_]; }

  /// Chosen plus fixed edges.
  [[nodiscard]] std::vector<Edge> edges() const {
    std::vector<Edge> out = chosen_;
    const auto& fixed = schedule().region().fixed_edges();
    out.insert(out.end(), fixed.begin(), fixed.end());
    return out;
  }

 private:
  friend Haystack extend(const Haystack&, const Edge&);

  std::shared_ptr<const CandidateTable> table_;
  std::size_t position_ = 0;
  std::vector<Edge> chosen_;
};

[[nodiscard]] inline Haystack make_haystack(const Region& region) {
  return Haystack(std::make_shared<const CandidateTable>(region));
}

/// Candidates through the current midpoint crossing no chosen or fixed
/// edge, in canonical order. Computed by direct crossing tests (not the
/// precomputed crossing lists) so it can serve as a cross-check.
[[nodiscard]] inline std::vector<Edge> feasible_extensions(const Haystack& h) {
  if (h.complete()) throw std::logic_error("extensions: haystack is complete");
  std::vector<Edge> out;
  const auto existing = h.edges();
  const CandidateTable& t = h.table();
  for (auto c = t.begin(h.position()); c < t.end(h.position()); ++c) {
    const Edge& e = t.edge(c);
    const bool free = std::none_of(existing.begin(), existing.end(),
                                   [&](const Edge& f) { return segments_properly_cross(e, f); });
    if (free) out.push_back(e);
  }
  return out;
}

/// As feasible_extensions, plus the branching check: more than two results
/// throw BranchingViolation in strict regions and call `warn` otherwise.
[[nodiscard]] inline std::vector<Edge> extensions(
    const Haystack& h, const std::function<void(const BranchingEvent&)>& warn = {}) {
  auto out = feasible_extensions(h);
  if (out.size() > 2) {
    BranchingEvent ev{h.current_midpoint(), h.position(), h.chosen(), out};
    if (strict_branching(h.schedule().region())) throw BranchingViolation(std::move(ev));
    if (warn) warn(ev);
  }
  return out;
}

/// Adds `e` through the current midpoint and advances past fixed positions.
[[nodiscard]] inline Haystack extend(const Haystack& h, const Edge& e) {
  const auto ext = feasible_extensions(h);
  if (std::find(ext.begin(), ext.end(), e) == ext.end()) {
    throw std::invalid_argument("extend: " + to_string(e) + " is not a feasible extension at " +
                                to_string(h.current_midpoint()));
  }
  Haystack next = h;
  next.chosen_.push_back(e);
  next.position_ = h.schedule().skip_fixed(h.position_ + 1);
  return next;
}

// ---------------------------------------------------------------------------
// Sweep statistics

struct EnumerationStats {
  Count count = 0;
  std::uint64_t nodes_visited = 0;
  /// Nodes with 0, 1, 2 and more than 2 feasible extensions.
  std::array<std::uint64_t, 4> branch_histogram{};
  std::uint64_t max_branching_observed = 0;
  std::uint64_t dead_branches = 0;
  std::uint64_t invalid_leaves = 0;
  std::uint64_t branching_violations = 0;
  bool truncated = false;  ///< stopped early at the visitor limit

  void merge(const EnumerationStats& o) {
    count += o.count;
    nodes_visited += o.nodes_visited;
    for (std::size_t i = 0; i < branch_histogram.size(); ++i) branch_histogram[i] += o.branch_histogram[i];
    max_branching_observed = std::max(max_branching_observed, o.max_branching_observed);
    dead_branches += o.dead_branches;
    invalid_leaves += o.invalid_leaves;
    branching_violations += o.branching_violations;
    truncated = truncated || o.truncated;
  }

  friend bool operator==(const EnumerationStats&, const EnumerationStats&) = default;
};

struct EngineOptions {
  /// Worker threads for counting; 1 is the deterministic baseline.
  unsigned threads = 1;
  /// Run validate_triangulation on every complete leaf.
  bool validate_leaves = true;
  /// Receives branching events in non-strict regions.
  std::function<void(const BranchingEvent&)> on_warning;
  /// Fault injection for self-tests: ignore crossings between chosen edges.
  bool skip_crossing_check = false;
};

using Visitor = std::function<void(const Triangulation&)>;

namespace detail {

/// Mutable depth-first worker over a CandidateTable. Each chosen candidate
/// bumps a block counter on every later candidate it crosses, so the
/// feasible set at a position is a scan over that position's candidates.
class SweepWorker {
 public:
  using Id = CandidateTable::Id;

  SweepWorker(const CandidateTable& table, const EngineOptions& options)
      : table_(table), schedule_(table.schedule()), options_(options), blocks_(table.size(), 0) {
    strict_ = strict_branching(schedule_.region());
  }

  [[nodiscard]] std::size_t first_position() const { return schedule_.skip_fixed(0); }

  void push(Id c) {
    chosen_.push_back(c);
    if (options_.skip_crossing_check) return;
    for (Id d : table_.later_crossers(c)) ++blocks_[d];
  }

  void pop() {
    const Id c = chosen_.back();
    chosen_.pop_back();
    if (options_.skip_crossing_check) return;
    for (Id d : table_.later_crossers(c)) --blocks_[d];
  }

  /// Replays a prefix from the empty haystack; returns the next position.
  std::size_t load(const std::vector<Id>& prefix) {
    while (!chosen_.empty()) pop();
    for (Id c : prefix) push(c);
    return prefix.empty() ? first_position() : schedule_.skip_fixed(table_.position(prefix.back()) + 1);
  }

  /// Feasible candidates at `pos`; records histogram and branching checks.
  void expand(std::size_t pos, std::vector<Id>& out) {
    out.clear();
    for (Id c = table_.begin(pos); c < table_.end(pos); ++c) {
      if (blocks_[c] == 0 && !table_.blocked_by_fixed(c)) out.push_back(c);
    }
    const std::size_t k = out.size();
    ++stats_.branch_histogram[std::min<std::size_t>(k, 3)];
    stats_.max_branching_observed = std::max<std::uint64_t>(stats_.max_branching_observed, k);
    if (k == 0) ++stats_.dead_branches;
    if (k > 2) {
      ++stats_.branching_violations;
      BranchingEvent ev{schedule_[pos], pos, chosen_edges(), {}};
      for (Id c : out) ev.extensions.push_back(table_.edge(c));
      if (strict_) throw BranchingViolation(std::move(ev));
      if (options_.on_warning) options_.on_warning(ev);
    }
  }

  [[nodiscard]] std::vector<Edge> chosen_edges() const {
    std::vector<Edge> out;
    out.reserve(chosen_.size());
    for (Id c : chosen_) out.push_back(table_.edge(c));
    return out;
  }

  [[nodiscard]] const std::vector<Id>& chosen() const { return chosen_; }

  /// Returns false when the visitor limit has been reached.
  bool leaf() {
    if (!options_.validate_leaves && !visitor_) {
      ++leaves_;
      return true;
    }
    const auto edges = chosen_edges();
    auto result = validate_triangulation(schedule_, edges);
    if (!is_valid(result)) {
      ++stats_.invalid_leaves;
      return true;
    }
    if (visitor_) {
      if (limit_ && reported_ >= *limit_) {
        stats_.truncated = true;  // at least one leaf beyond the limit exists
        return false;
      }
      visitor_(std::get<Triangulation>(result));
      ++reported_;
    }
    ++leaves_;
    return true;
  }

  /// Full subtree at `pos`. Returns false to abort (limit reached).
  bool run(std::size_t pos) {
    ++stats_.nodes_visited;
    if (pos >= schedule_.size()) return leaf();
    std::vector<Id> options;
    expand(pos, options);
    for (Id c : options) {
      push(c);
      const bool more = run(schedule_.skip_fixed(pos + 1));
      pop();
      if (!more) return false;
    }
    return true;
  }

  void set_visitor(const Visitor* v, std::optional<std::uint64_t> limit) {
    visitor_ = v ? *v : Visitor{};
    limit_ = limit;
  }

  EnumerationStats take_stats() {
    EnumerationStats s = stats_;
    s.count = leaves_;
    stats_ = {};
    leaves_ = 0;
    return s;
  }

  EnumerationStats& stats() { return stats_; }
  void count_leaf() { ++leaves_; }

 private:
  const CandidateTable& table_;
  const MidpointSchedule& schedule_;
  const EngineOptions& options_;
  std::vector<std::uint32_t> blocks_;
  std::vector<Id> chosen_;
  EnumerationStats stats_;
  std::uint64_t leaves_ = 0;
  Visitor visitor_;
  std::optional<std::uint64_t> limit_;
  std::uint64_t reported_ = 0;
  bool strict_ = false;
};

/// Expands the top of the sweep tree breadth-first until at least `target`
/// open subtrees exist. Expanded nodes and leaves are tallied into `stats`;
/// returned prefixes are not yet visited.
inline std::vector<std::vector<CandidateTable::Id>> split_frontier(const CandidateTable& table,
                                                                   const EngineOptions& options,
                                                                   std::size_t target,
                                                                   EnumerationStats& stats) {
  using Id = CandidateTable::Id;
  SweepWorker worker(table, options);
  std::vector<std::vector<Id>> frontier{{}};
  std::vector<Id> ext;
  // Bounded depth keeps the split cheap even when the tree is thin.
  for (int depth = 0; depth < 64 && frontier.size() < target; ++depth) {
    std::vector<std::vector<Id>> next;
    bool grew = false;
    for (const auto& prefix : frontier) {
      const std::size_t pos = worker.load(prefix);
      ++worker.stats().nodes_visited;
      if (pos >= table.schedule().size()) {
        worker.leaf();
        continue;
      }
      worker.expand(pos, ext);
      for (Id c : ext) {
        next.push_back(prefix);
        next.back().push_back(c);
      }
      grew = true;
    }
    frontier = std::move(next);
    if (!grew) break;
  }
  stats.merge(worker.take_stats());
  return frontier;
}

/// Runs `body(worker, prefix)` for every prefix on `threads` workers and
/// merges their statistics.
template <typename Body>
EnumerationStats run_parallel(const CandidateTable& table, const EngineOptions& options,
                              const std::vector<std::vector<CandidateTable::Id>>& tasks, Body body) {
  const unsigned n = std::max(1u, options.threads);
  std::vector<EnumerationStats> partial(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&](unsigned w) {
    try {
      SweepWorker worker(table, options);
      for (std::size_t i = next++; i < tasks.size(); i = next++) body(worker, tasks[i]);
      partial[w] = worker.take_stats();
    } catch (...) {
      errors[w] = std::current_exception();
      next = tasks.size();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < n; ++w) pool.emplace_back(work, w);
  work(0);
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  EnumerationStats total;
  for (const auto& p : partial) total.merge(p);
  return total;
}

}  // namespace detail

/// Depth-first haystack sweep over the whole extension tree. Valid leaves
/// are passed to `visitor` in canonical order, at most `limit` of them
/// (the sweep stops once the limit is hit). Always single-threaded.
inline EnumerationStats enumerate_triangulations(const CandidateTable& table, const Visitor& visitor,
                                                 std::optional<std::uint64_t> limit = std::nullopt,
                                                 const EngineOptions& options = {}) {
  detail::SweepWorker worker(table, options);
  worker.set_visitor(&visitor, limit);
  worker.run(worker.first_position());
  return worker.take_stats();
}

inline EnumerationStats enumerate_triangulations(const Region& region, const Visitor& visitor,
                                                 std::optional<std::uint64_t> limit = std::nullopt,
                                                 const EngineOptions& options = {}) {
  return enumerate_triangulations(CandidateTable(region), visitor, limit, options);
}

/// Counts leaves of the sweep without materializing triangulations beyond
/// leaf validation. With threads > 1 the top of the tree is split into
/// subtrees; counts and statistics are identical to the serial run.
inline EnumerationStats count_with_stats(const CandidateTable& table, const EngineOptions& options = {}) {
  if (options.threads <= 1) {
    detail::SweepWorker worker(table, options);
    worker.run(worker.first_position());
    return worker.take_stats();
  }
  EnumerationStats stats;
  const auto tasks = detail::split_frontier(table, options, 16 * options.threads, stats);
  stats.merge(detail::run_parallel(table, options, tasks, [&](detail::SweepWorker& w, const auto& prefix) {
    w.run(w.load(prefix));
  }));
  return stats;
}

[[nodiscard]] inline Count count_triangulations(const Region& region, const EngineOptions& options = {}) {
  return count_with_stats(CandidateTable(region), options).count;
}

}  // namespace haystack

#endif  // HAYSTACK_ENGINE_HPP
