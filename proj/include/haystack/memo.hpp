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

#ifndef HAYSTACK_MEMO_HPP
#define HAYSTACK_MEMO_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "haystack/engine.hpp"

namespace haystack {

/// Raised when a memoized count needs more cached states than allowed.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MemoOptions {
  unsigned threads = 1;
  /// Upper limit on cached states (per worker); unlimited when empty.
  std::optional<std::uint64_t> max_states;
  std::function<void(const BranchingEvent&)> on_warning;
};

struct MemoStats {
  Count count = 0;
  std::uint64_t states_expanded = 0;
  std::uint64_t memo_hits = 0;
  std::uint64_t cache_entries = 0;
  std::uint64_t max_branching_observed = 0;
};

namespace detail {

struct FrontierKeyHash {
  std::size_t operator()(const std::vector<std::uint32_t>& key) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint32_t v : key) {
      h ^= v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

/// Dynamic programming over sweep states. Two states at the same position
/// with the same set of live placed edges have identical futures, because
/// a placed edge influences later choices only by crossing later candidates.
class FrontierCounter {
 public:
  using Id = CandidateTable::Id;

  FrontierCounter(const CandidateTable& table, const EngineOptions& engine, const MemoOptions& options)
      : table_(table), worker_(table, engine), options_(options) {}

  Count count_from(std::size_t pos) {
    if (pos >= table_.schedule().size()) return 1;
    key_.clear();
    key_.push_back(static_cast<std::uint32_t>(pos));
    for (Id c : worker_.chosen()) {
      if (table_.live_at(c, pos)) key_.push_back(c);
    }
    if (const auto it = cache_.find(key_); it != cache_.end()) {
      ++stats_.memo_hits;
      return it->second;
    }
    std::vector<std::uint32_t> key = key_;
    ++stats_.states_expanded;
    std::vector<Id> options;
    worker_.expand(pos, options);
    Count total = 0;
    for (Id c : options) {
      worker_.push(c);
      total += count_from(table_.schedule().skip_fixed(pos + 1));
      worker_.pop();
    }
    if (options_.max_states && cache_.size() >= *options_.max_states) {
      throw BudgetExceeded("memoized count exceeded " + std::to_string(*options_.max_states) + " states");
    }
    cache_.emplace(std::move(key), total);
    return total;
  }

  std::size_t load(const std::vector<Id>& prefix) { return worker_.load(prefix); }

  MemoStats take_stats() {
    MemoStats s = stats_;
    s.cache_entries = cache_.size();
    s.max_branching_observed = worker_.stats().max_branching_observed;
    return s;
  }

 private:
  const CandidateTable& table_;
  SweepWorker worker_;
  const MemoOptions& options_;
  std::unordered_map<std::vector<std::uint32_t>, Count, FrontierKeyHash> cache_;
  std::vector<std::uint32_t> key_;
  MemoStats stats_;
};

}  // namespace detail

/// Exact count by memoized sweep. Parallel runs split the top of the tree
/// and give each subtree its own cache; the count is unchanged.
inline MemoStats count_memoized_with_stats(const CandidateTable& table, const MemoOptions& options = {}) {
  EngineOptions engine;
  engine.validate_leaves = false;
  engine.on_warning = options.on_warning;
  if (options.threads <= 1) {
    detail::FrontierCounter counter(table, engine, options);
    const std::size_t start = table.schedule().skip_fixed(0);
    Count c = counter.count_from(start);
    MemoStats s = counter.take_stats();
    s.count = c;
    return s;
  }
  engine.threads = options.threads;
  EnumerationStats top;
  const auto tasks = detail::split_frontier(table, engine, 4 * options.threads, top);
  MemoStats total;
  total.count = top.count;
  total.states_expanded = top.nodes_visited;
  total.max_branching_observed = top.max_branching_observed;
  std::vector<MemoStats> partial(tasks.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(options.threads);
  auto work = [&](unsigned w) {
    try {
      for (std::size_t i = next++; i < tasks.size(); i = next++) {
        detail::FrontierCounter counter(table, engine, options);
        Count c = counter.count_from(counter.load(tasks[i]));
        partial[i] = counter.take_stats();
        partial[i].count = c;
      }
    } catch (...) {
      errors[w] = std::current_exception();
      next = tasks.size();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < options.threads; ++w) pool.emplace_back(work, w);
  work(0);
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (const auto& p : partial) {
    total.count += p.count;
    total.states_expanded += p.states_expanded;
    total.memo_hits += p.memo_hits;
    total.cache_entries += p.cache_entries;
    total.max_branching_observed = std::max(total.max_branching_observed, p.max_branching_observed);
  }
  return total;
}

[[nodiscard]] inline Count count_memoized(const Region& region, const MemoOptions& options = {}) {
  return count_memoized_with_stats(CandidateTable(region), options).count;
}

}  // namespace haystack

#endif  // HAYSTACK_MEMO_HPP
