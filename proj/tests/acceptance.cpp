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


// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "haystack/capacity.hpp"
#include "haystack/commands.hpp"
#include "haystack/engine.hpp"
#include "haystack/memo.hpp"
#include "haystack/oracle.hpp"
#include "json.hpp"

namespace {

using namespace haystack;

struct Instance {
  std::string name;
  Region region;
  std::optional<std::pair<Coord, Coord>> grid;
};

// Oracle counts for the instances below, frozen from oracle_count.
const std::map<std::string, long long> kGolden = {
    {"1x1", 2},      {"1x2", 6},     {"1x3", 20},     {"1x4", 70},          {"1x5", 252},
    {"1x6", 924},    {"1x7", 3432},  {"1x8", 12870},  {"2x2", 64},          {"2x3", 852},
    {"2x4", 12170},  {"L", 17},      {"ring", 6984},
};

std::vector<Instance> instances() {
  std::vector<Instance> out;
  for (Coord n = 1; n <= 8; ++n) out.push_back({"1x" + std::to_string(n), Region::grid(1, n), std::pair{1, n}});
  for (Coord n = 2; n <= 4; ++n) out.push_back({"2x" + std::to_string(n), Region::grid(2, n), std::pair{2, n}});
  out.push_back({"L", Region(Ring{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}), std::nullopt});
  out.push_back({"ring", Region(Ring{{0, 0}, {3, 0}, {3, 3}, {0, 3}}, {Ring{{1, 1}, {1, 2}, {2, 2}, {2, 1}}}),
                 std::nullopt});
  return out;
}

struct Measured {
  Count sweep, memo, oracle;
  EnumerationStats stats;
};

double seconds(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string run_cli(const std::string& args) {
  const std::filesystem::path out = std::filesystem::path(HAYSTACK_WORK_DIR) / "acceptance_cli.out";
  const std::string cmd = "'" + std::string(HAYSTACK_CLI) + "' " + args + " >'" + out.string() + "' 2>/dev/null";
  const int status = std::system(cmd.c_str());
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) return "<exit " + std::to_string(status) + ">";
  std::ifstream in(out, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Report {
 public:
  void line(int id, const std::string& title, bool pass, const std::string& detail) {
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << id << " (" << title << "): " << detail << std::endl;
    all_ = all_ && pass;
  }
  [[nodiscard]] bool all() const { return all_; }

 private:
  bool all_ = true;
};

}  // namespace

int main() {
  Report report;
  const auto cases = instances();
  std::map<std::string, Measured> measured;

  // 1. sweep = memoized = oracle = frozen golden.
  {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string first_bad;
    for (const auto& c : cases) {
      Measured m;
      m.stats = count_with_stats(CandidateTable(c.region));
      m.sweep = m.stats.count;
      m.memo = count_memoized(c.region);
      m.oracle = oracle::oracle_count(c.region, 64);
      const bool good = m.sweep == m.oracle && m.memo == m.oracle && m.oracle == kGolden.at(c.name);
      if (!good && first_bad.empty()) {
        first_bad = c.name + ": sweep " + m.sweep.str() + ", memo " + m.memo.str() + ", oracle " + m.oracle.str();
      }
      ok = ok && good;
      measured.emplace(c.name, std::move(m));
    }
    char t[32];
    std::snprintf(t, sizeof t, "%.2f", seconds(t0));
    report.line(1, "oracle equivalence", ok,
                ok ? std::to_string(cases.size()) + " instances agree (" + t + " s)" : first_bad);
  }

  // 2. count <= 2^(3mn-m-n) for grids, <= 2^|M| in general.
  {
    bool ok = true;
    std::string detail;
    for (const auto& c : cases) {
      const Count& n = measured.at(c.name).oracle;
      const MidpointSchedule s(c.region);
      ok = ok && n <= (Count(1) << s.size()) && n <= theoretical_bound(s);
      if (c.grid) {
        const auto [m, k] = *c.grid;
        ok = ok && n <= (Count(1) << static_cast<unsigned>(3 * m * k - m - k));
      }
    }
    const Count& f24 = measured.at("2x4").oracle;
    detail = "e.g. f(2,4) = " + f24.str() + " <= 2^18 = " + Count(Count(1) << 18).str();
    report.line(2, "count bounds", ok, detail);
  }

  // 3. At most two extensions everywhere; some nodes have exactly one.
  {
    std::uint64_t max_b = 0, ones = 0, nodes = 0;
    for (const auto& c : cases) {
      if (!strict_branching(c.region)) continue;
      const auto& s = measured.at(c.name).stats;
      max_b = std::max(max_b, s.max_branching_observed);
      ones += s.branch_histogram[1];
      for (auto h : s.branch_histogram) nodes += h;
    }
    const bool ok = max_b <= 2 && ones > 0;
    report.line(3, "branching invariant", ok,
                "max |extensions| = " + std::to_string(max_b) + ", one-extension nodes " + std::to_string(ones) +
                    " of " + std::to_string(nodes));
  }

  // 4. Every enumerated record's midpoints are exactly M.
  {
    bool ok = true;
    std::uint64_t checked = 0;
    for (const auto& c : cases) {
      std::ostringstream out, diag;
      cli::EnumerateOptions opt;
      if (cli::cmd_enumerate(c.region, opt, out, diag) != cli::kOk) ok = false;
      const MidpointSchedule s(c.region);
      std::istringstream lines(out.str());
      std::string line;
      std::uint64_t records = 0;
      while (std::getline(lines, line)) {
        std::vector<HalfPoint> mids;
        for (const Edge& e : io::edges_from_text(line)) mids.push_back(midpoint(e));
        std::sort(mids.begin(), mids.end(), LexLess{});
        ok = ok && mids == s.midpoints();
        ++records;
      }
      ok = ok && Count(records) == measured.at(c.name).oracle;
      checked += records;
    }
    report.line(4, "midpoint bijection", ok, std::to_string(checked) + " enumerated triangulations checked");
  }

  // 5. f(1,1) = 2 and f(1,n) equals the oracle and C(2n, n).
  {
    bool ok = measured.at("1x1").sweep == 2;
    std::string values;
    for (unsigned n = 1; n <= 6; ++n) {
      Count binom = 1;
      for (unsigned i = 1; i <= n; ++i) binom = binom * (n + i) / i;
      const auto& m = measured.at("1x" + std::to_string(n));
      ok = ok && m.sweep == m.oracle && m.oracle == binom;
      values += (n == 1 ? "" : ", ") + m.sweep.str();
    }
    report.line(5, "small counts", ok, "f(1,1..6) = " + values);
  }

  // 6. c(m,n) <= 3 - 1/min(m,n); f(m,a+b) >= f(m,a) f(m,b) for m(a+b) <= 8.
  {
    std::map<std::pair<Coord, Coord>, Count> f;
    for (Coord m = 1; m <= 8; ++m) {
      for (Coord n = 1; m * n <= 8; ++n) f[{m, n}] = count_memoized(Region::grid(m, n));
    }
    bool ok = true;
    for (const auto& [mn, count] : f) {
      const auto rec = capacity::capacity_of(mn.first, mn.second, count);
      ok = ok && capacity::capacity_at_most(rec, capacity::upper_bound_cm(std::min(mn.first, mn.second)));
    }
    int triples = 0;
    for (Coord m = 1; m <= 4; ++m) {
      for (Coord a = 1; m * (a + 1) <= 8; ++a) {
        for (Coord b = 1; m * (a + b) <= 8; ++b) {
          ok = ok && capacity::supermultiplicativity_check(m, a, b, f.at({m, a}), f.at({m, b}), f.at({m, a + b}));
          ++triples;
        }
      }
    }
    report.line(6, "capacity bounds", ok,
                std::to_string(f.size()) + " grids within 3-1/min(m,n), " + std::to_string(triples) +
                    " gluing triples; " + std::string(capacity::kLiteratureLowerBound));
  }

  // 7. Fixed diagonal on 2x2: sweep = oracle = filtered enumeration.
  {
    const Edge diag({0, 0}, {1, 1});
    const Region fixed(Ring{{0, 0}, {2, 0}, {2, 2}, {0, 2}}, {}, {diag});
    const Count sweep = count_triangulations(fixed);
    const Count brute = oracle::oracle_count(fixed);
    std::uint64_t filtered = 0;
    for (const auto& t : oracle::oracle_enumerate(Region::grid(2, 2))) {
      filtered += std::binary_search(t.inner_edges.begin(), t.inner_edges.end(), diag);
    }
    const bool ok = sweep == brute && brute == filtered;
    report.line(7, "fixed edges", ok,
                "sweep " + sweep.str() + ", oracle " + brute.str() + ", filtered " + std::to_string(filtered));
  }

  // 8. Byte-identical enumeration; parallel count equals serial.
  {
    const std::string a = run_cli("enumerate --grid 2x2");
    const std::string b = run_cli("enumerate --grid 2x2");
    const CandidateTable t33(Region::grid(3, 3));
    const auto serial = count_with_stats(t33);
    EngineOptions par;
    par.threads = 4;
    const auto parallel = count_with_stats(t33, par);
    const bool ok = !a.empty() && a == b && parallel == serial;
    report.line(8, "determinism", ok,
                std::to_string(a.size()) + " identical NDJSON bytes; 3x3 serial " + serial.count.str() +
                    ", 4 threads " + parallel.count.str());
  }

  // 9. Memoized 3x3 under 10 s; plain sweep agrees.
  {
    const auto t0 = std::chrono::steady_clock::now();
    const Count memo = count_memoized(Region::grid(3, 3));
    const double tm = seconds(t0);
    const auto t1 = std::chrono::steady_clock::now();
    const Count plain = count_triangulations(Region::grid(3, 3));
    const double tp = seconds(t1);
    char buf[128];
    std::snprintf(buf, sizeof buf, "memoized %.3f s, plain %.3f s", tm, tp);
    report.line(9, "performance", tm < 10.0 && memo == plain && memo == 46456,
                "f(3,3) = " + memo.str() + ", " + buf);
  }

  return report.all() ? 0 : 1;
}
