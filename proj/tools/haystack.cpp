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

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "haystack/commands.hpp"

namespace {

void add_region_options(CLI::App* cmd, haystack::cli::RegionSource& src) {
  cmd->add_option("--grid", src.grid, "Rectangle {0..M}x{0..N}, written MxN");
  cmd->add_option("--polygon", src.polygon, "Region JSON document");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace haystack;
  CLI::App app{"Exact enumeration and counting of unimodular lattice triangulations"};
  app.require_subcommand(1);

  cli::RegionSource src;

  cli::CountOptions count_opt;
  auto* count = app.add_subcommand("count", "Count triangulations of a region");
  add_region_options(count, src);
  count->add_flag("--memoize", count_opt.memoize, "Use frontier memoization");
  count->add_option("--parallel", count_opt.threads, "Worker threads")->check(CLI::PositiveNumber);
  count->add_option("--dump", count_opt.dump_path, "Counterexample file on invariant violation");
  count->add_flag("--inject-skip-crossing", count_opt.skip_crossing_check, "Self-test: disable crossing checks")
      ->group("");

  cli::EnumerateOptions enum_opt;
  std::optional<std::string> enum_out;
  auto* enumerate = app.add_subcommand("enumerate", "Stream triangulations as NDJSON");
  add_region_options(enumerate, src);
  enumerate->add_option("--limit", enum_opt.limit, "Stop after K triangulations");
  enumerate->add_option("--out", enum_out, "Output file (default stdout)");

  cli::VerifyOptions verify_opt;
  bool inject_skip_crossing = false;
  auto* verify = app.add_subcommand("verify", "Cross-check sweep, memoized sweep and brute-force oracle");
  add_region_options(verify, src);
  verify->add_option("--cap", verify_opt.cap, "Oracle size cap on |M| (env HAYSTACK_ORACLE_CAP)");
  verify->add_flag("--inject-skip-crossing", inject_skip_crossing, "Self-test: disable crossing checks in the sweep")
      ->group("");

  cli::CapacityOptions cap_opt;
  std::uint64_t budget = 0;
  auto* cap = app.add_subcommand("capacity", "Capacity table for grids");
  cap->add_option("--max-m", cap_opt.table.max_m, "Largest m")->check(CLI::PositiveNumber);
  cap->add_option("--max-n", cap_opt.table.max_n, "Largest n")->check(CLI::PositiveNumber);
  cap->add_option("--budget", budget, "Memo state budget per grid (0 = unlimited)");
  cap->add_option("--csv", cap_opt.csv_path, "Also write the table as CSV");
  cap->add_option("--digits", cap_opt.table.digits, "Decimal digits for capacities");
  cap->add_option("--parallel", cap_opt.table.threads, "Rows computed concurrently")->check(CLI::PositiveNumber);

  cli::RenderOptions render_opt;
  std::string svg_path;
  auto* render = app.add_subcommand("render", "Draw a triangulation or haystack snapshot as SVG");
  add_region_options(render, src);
  auto* idx = render->add_option("--index", render_opt.index, "Triangulation number in enumeration order");
  render->add_option("--edges", render_opt.edges_path, "Edge set file (NDJSON record)")->excludes(idx);
  render->add_option("--svg", svg_path, "Output SVG path")->required();
  render->add_option("--haystack-step", render_opt.haystack_step, "Show the haystack after k midpoints");
  render->add_option("--scale", render_opt.style.scale, "Pixels per lattice unit")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kInputError;
  }

  try {
    if (*cap) {
      if (budget > 0) cap_opt.table.budget = budget;
      return cli::cmd_capacity(cap_opt, std::cout, std::cerr);
    }
    const Region region = cli::load_region(src);
    if (*count) return cli::cmd_count(region, count_opt, std::cout, std::cerr);
    if (*enumerate) {
      if (enum_out) {
        std::ofstream f(*enum_out, std::ios::binary);
        if (!f) throw io::InputError("cannot write '" + *enum_out + "'");
        return cli::cmd_enumerate(region, enum_opt, f, std::cerr);
      }
      return cli::cmd_enumerate(region, enum_opt, std::cout, std::cerr);
    }
    if (*verify) {
      verify_opt.skip_crossing_check = inject_skip_crossing;
      return cli::cmd_verify(region, verify_opt, std::cout, std::cerr);
    }
    if (*render) return cli::cmd_render(region, render_opt, svg_path, std::cerr);
  } catch (const io::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kInputError;
  } catch (const oracle::CapExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kCapExceeded;
  }
  return cli::kInputError;
}
