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

#ifndef HAYSTACK_CAPACITY_HPP
#define HAYSTACK_CAPACITY_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "haystack/memo.hpp"
#include "haystack/region.hpp"

namespace haystack::capacity {

using Rational = boost::multiprecision::cpp_rational;

/// Shown next to computed tables; not derived here.
inline constexpr std::string_view kLiteratureLowerBound = "c_Delta > 2.055 [literature]";

/// Fractional bits carried by the fixed-point logarithm.
inline constexpr unsigned kLogBits = 128;

/// floor(log2(x) * 2^kLogBits), up to a few units in the last place.
/// Integer part from the bit length, fraction by repeated squaring.
[[nodiscard]] inline Count log2_fixed(const Count& x) {
  if (x <= 0) throw std::domain_error("log2 of non-positive value");
  const unsigned k = static_cast<unsigned>(boost::multiprecision::msb(x));
  constexpr unsigned P = kLogBits + 64;  // working precision with guard bits
  Count y = (x << P) >> k;              // x / 2^k in [1, 2), scaled by 2^P
  const Count two = Count(1) << (P + 1);
  Count frac = 0;
  for (unsigned i = 0; i < kLogBits; ++i) {
    y = (y * y) >> P;
    frac <<= 1;
    if (y >= two) {
      frac |= 1;
      y >>= 1;
    }
  }
  return (Count(k) << kLogBits) + frac;
}

/// Decimal rendering of num/den rounded half-up to `digits` places.
[[nodiscard]] inline std::string render_decimal(const Count& num, const Count& den, unsigned digits) {
  Count scale = 1;
  for (unsigned i = 0; i < digits; ++i) scale *= 10;
  const Count scaled = (2 * num * scale + den) / (2 * den);
  const Count whole = scaled / scale;
  std::string out = whole.str();
  if (digits > 0) {
    std::string frac = Count(scaled % scale).str();
    out += '.' + std::string(digits - frac.size(), '0') + frac;
  }
  return out;
}

[[nodiscard]] inline std::string render(const Rational& r) {
  const Count num = boost::multiprecision::numerator(r), den = boost::multiprecision::denominator(r);
  return den == 1 ? num.str() : num.str() + "/" + den.str();
}

struct CapacityRecord {
  std::int64_t m = 0;
  std::int64_t n = 0;
  Count count = 0;
  /// log2(count) * 2^kLogBits, truncated.
  Count log2_scaled = 0;
  std::string capacity;  ///< decimal rendering of log2(count)/(mn)
  std::int64_t bound_exponent = 0;  ///< 3mn - m - n

  /// log2(count)/(mn) as the rational log2_scaled / (2^kLogBits * mn).
  [[nodiscard]] Rational capacity_rational() const {
    return Rational(log2_scaled, (Count(1) << kLogBits) * m * n);
  }
};

[[nodiscard]] inline CapacityRecord capacity_of(std::int64_t m, std::int64_t n, const Count& count,
                                                unsigned digits = 6) {
  if (m < 1 || n < 1) throw std::invalid_argument("capacity_of: dimensions must be positive");
  if (count < 1) throw std::invalid_argument("capacity_of: count must be positive");
  CapacityRecord r;
  r.m = m;
  r.n = n;
  r.count = count;
  r.log2_scaled = log2_fixed(count);
  r.capacity = render_decimal(r.log2_scaled, (Count(1) << kLogBits) * m * n, digits);
  r.bound_exponent = 3 * m * n - m - n;
  return r;
}

/// 3 - 1/m.
[[nodiscard]] inline Rational upper_bound_cm(std::int64_t m) {
  if (m < 1) throw std::invalid_argument("upper_bound_cm: m must be positive");
  return Rational(3 * m - 1, m);
}

/// log2(count)/(mn) <= p/q, decided exactly as count^q <= 2^(p*m*n).
[[nodiscard]] inline bool capacity_at_most(const CapacityRecord& r, const Rational& bound) {
  const Count p = boost::multiprecision::numerator(bound);
  const Count q = boost::multiprecision::denominator(bound);
  if (p < 0) return false;
  const Count lhs = boost::multiprecision::pow(r.count, static_cast<unsigned>(q));
  const Count exponent = p * r.m * r.n;
  return lhs <= (Count(1) << static_cast<unsigned>(exponent));
}

/// count <= 2^(3mn - m - n).
[[nodiscard]] inline bool within_count_bound(const CapacityRecord& r) {
  return r.count <= (Count(1) << static_cast<unsigned>(r.bound_exponent));
}

/// The gluing inequality f(m, a+b) >= f(m, a) * f(m, b).
[[nodiscard]] inline bool supermultiplicativity_check(std::int64_t /*m*/, std::int64_t /*a*/,
                                                      std::int64_t /*b*/, const Count& f_ma,
                                                      const Count& f_mb, const Count& f_mab) {
  return f_mab >= f_ma * f_mb;
}

struct TableRow {
  std::int64_t m = 0;
  std::int64_t n = 0;
  std::optional<CapacityRecord> record;  ///< empty when skipped for budget
};

struct TableOptions {
  std::int64_t max_m = 3;
  std::int64_t max_n = 3;
  /// Cache-state budget per memoized count; rows that need more are skipped.
  std::optional<std::uint64_t> budget;
  unsigned threads = 1;
  unsigned digits = 6;
};

/// One row per (m, n) in [1, max_m] x [1, max_n]. f(m, n) = f(n, m), so a
/// transposed grid reuses the count already computed.
[[nodiscard]] inline std::vector<TableRow> capacity_table(const TableOptions& options) {
  std::vector<std::pair<std::int64_t, std::int64_t>> shapes;
  for (std::int64_t m = 1; m <= options.max_m; ++m) {
    for (std::int64_t n = 1; n <= options.max_n; ++n) {
      const std::pair<std::int64_t, std::int64_t> key{std::min(m, n), std::max(m, n)};
      if (std::find(shapes.begin(), shapes.end(), key) == shapes.end()) shapes.emplace_back(key);
    }
  }
  std::vector<std::optional<Count>> counts(shapes.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < shapes.size(); i = next++) {
      MemoOptions memo;
      memo.max_states = options.budget;
      try {
        counts[i] = count_memoized(Region::grid(shapes[i].first, shapes[i].second), memo);
      } catch (const BudgetExceeded&) {
        counts[i].reset();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < options.threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::vector<TableRow> rows;
  for (std::int64_t m = 1; m <= options.max_m; ++m) {
    for (std::int64_t n = 1; n <= options.max_n; ++n) {
      const std::pair<std::int64_t, std::int64_t> key{std::min(m, n), std::max(m, n)};
      const auto idx = std::find(shapes.begin(), shapes.end(), key) - shapes.begin();
      TableRow row{m, n, std::nullopt};
      if (counts[idx]) row.record = capacity_of(m, n, *counts[idx], options.digits);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

/// Squares whose capacity drops below the previous square's. The growth
/// law is not guaranteed, so callers report these rather than fail.
[[nodiscard]] inline std::vector<std::int64_t> square_capacity_drops(const std::vector<TableRow>& rows) {
  std::vector<std::int64_t> drops;
  std::optional<Rational> prev;
  for (const auto& row : rows) {
    if (row.m != row.n || !row.record) continue;
    const Rational c = row.record->capacity_rational();
    if (prev && c < *prev) drops.push_back(row.m);
    prev = c;
  }
  return drops;
}

inline constexpr std::string_view kCsvHeader = "m,n,count,capacity,cap_bound,count_bound";

[[nodiscard]] inline std::string to_csv(const std::vector<TableRow>& rows) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const auto& row : rows) {
    os << row.m << ',' << row.n << ',';
    if (row.record) {
      const auto& r = *row.record;
      os << r.count.str() << ',' << r.capacity << ',' << render(upper_bound_cm(std::min(r.m, r.n))) << ','
         << (Count(1) << static_cast<unsigned>(r.bound_exponent)).str();
    } else {
      os << "skipped,,,";
    }
    os << '\n';
  }
  return os.str();
}

/// A parsed CSV line; fields kept as text so equality is exact.
struct CsvRow {
  std::int64_t m = 0;
  std::int64_t n = 0;
  std::string count, capacity, cap_bound, count_bound;
  friend bool operator==(const CsvRow&, const CsvRow&) = default;
};

[[nodiscard]] inline std::vector<CsvRow> parse_csv(std::string_view text) {
  std::vector<CsvRow> rows;
  std::istringstream is{std::string(text)};
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader) throw std::runtime_error("capacity csv: bad header");
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::size_t start = 0;
    for (;;) {
      const auto comma = line.find(',', start);
      f.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (f.size() != 6) throw std::runtime_error("capacity csv: line " + std::to_string(lineno) + ": expected 6 fields");
    rows.push_back({std::stoll(f[0]), std::stoll(f[1]), f[2], f[3], f[4], f[5]});
  }
  return rows;
}

/// Aligned text rendering with the literature reference line.
[[nodiscard]] inline std::string to_text(const std::vector<TableRow>& rows) {
  std::ostringstream os;
  os << "  m   n  f(m,n)                  c(m,n)      3-1/min  2^(3mn-m-n)\n";
  for (const auto& row : rows) {
    char head[16];
    std::snprintf(head, sizeof head, "%3lld %3lld  ", static_cast<long long>(row.m), static_cast<long long>(row.n));
    os << head;
    if (!row.record) {
      os << "skipped (budget)\n";
      continue;
    }
    const auto& r = *row.record;
    std::string cnt = r.count.str();
    cnt.resize(std::max<std::size_t>(cnt.size(), 22), ' ');
    std::string cap = r.capacity;
    cap.resize(std::max<std::size_t>(cap.size(), 10), ' ');
    std::string cb = render(upper_bound_cm(std::min(r.m, r.n)));
    cb.resize(std::max<std::size_t>(cb.size(), 7), ' ');
    os << cnt << "  " << cap << "  " << cb << "  2^" << r.bound_exponent << '\n';
  }
  os << "reference: " << kLiteratureLowerBound << '\n';
  return os.str();
}

}  // namespace haystack::capacity

#endif  // HAYSTACK_CAPACITY_HPP
