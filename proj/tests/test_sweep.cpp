#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "optgrav/sweep.hpp"

using namespace optgrav;

namespace {

SweepSpec small_spec() {
  SweepSpec spec;
  spec.fixed.g = preset_geometry();
  spec.grid = {"r", 0.0, 1.0, 5, GridSpacing::Linear};
  spec.fixed.p.T = 0.99;
  spec.fixed.p.t1 = 0.9;
  spec.fixed.p.t2 = 0.95;
  spec.series = {{"closed", parse_scheme("mz_squeezed"), {}},
                 {"sim", parse_scheme("simulated:mz_squeezed"), {}}};
  return spec;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("scheme names round-trip through the parser") {
  for (const char* name : {"sql", "mz_squeezed", "su11_single", "su11_joint",
                           "effective_sql", "simulated:su11_joint"}) {
    CHECK(scheme_name(parse_scheme(name)) == name);
  }
  CHECK_THROWS_AS(parse_scheme("mach_zehnder"), std::invalid_argument);
}

TEST_CASE("grids hit both endpoints with the requested spacing") {
  const std::vector<double> lin = make_grid({"x", 1.0, 3.0, 5, GridSpacing::Linear});
  REQUIRE(lin.size() == 5);
  CHECK(lin.front() == 1.0);
  CHECK(lin.back() == 3.0);
  CHECK(lin[2] == Catch::Approx(2.0));

  const std::vector<double> log = make_grid({"x", 1e2, 1e6, 5, GridSpacing::Log});
  CHECK(log.front() == Catch::Approx(1e2));
  CHECK(log.back() == 1e6);
  CHECK(log[1] == Catch::Approx(1e3).epsilon(1e-12));
}

TEST_CASE("sweep validation rejects malformed specs") {
  SweepSpec spec = small_spec();
  spec.grid.count = 1;
  CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);

  spec = small_spec();
  spec.grid.min = spec.grid.max = 0.5;  // degenerate grid
  CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);

  spec = small_spec();
  spec.series.clear();
  CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);

  spec = small_spec();
  spec.series[0].overrides = {{"r", 1.0}};  // pins the swept parameter
  CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
}

TEST_CASE("simulated columns track the closed forms row by row") {
  const SweepTable table = run_sweep(small_spec());
  REQUIRE(table.rows.size() == 5);
  CHECK(table.methods == std::vector<std::string>{"closed_form", "simulated"});
  for (const auto& row : table.rows) {
    REQUIRE(row.values.size() == 2);
    CHECK(row.values[1] == Catch::Approx(row.values[0]).epsilon(1e-4));
  }
}

TEST_CASE("rows are ordered by the swept value") {
  const SweepTable table = run_sweep(small_spec());
  for (size_t i = 1; i < table.rows.size(); ++i)
    CHECK(table.rows[i].swept > table.rows[i - 1].swept);
}

TEST_CASE("csv emission format and round trip") {
  SweepSpec spec = small_spec();
  spec.grid.count = 3;
  spec.series = {{"a", parse_scheme("mz_squeezed"), {}},
                 {"b", parse_scheme("effective_sql"), {}}};
  const SweepTable table = run_sweep(spec);

  std::ostringstream os;
  emit_csv(table, os);
  const std::string text = os.str();

  // 3 rows x 2 schemes -> header + 3 lines.
  const auto rows = parse_csv(text);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == std::vector<std::string>{"r", "a", "b", "n_sig", "methods"});
  CHECK(text.find("\r") == std::string::npos);

  // Values survive a parse-back to 1e-12.
  for (size_t i = 0; i < table.rows.size(); ++i) {
    CHECK(std::strtod(rows[i + 1][0].c_str(), nullptr) ==
          Catch::Approx(table.rows[i].swept).epsilon(1e-12));
    CHECK(std::strtod(rows[i + 1][1].c_str(), nullptr) ==
          Catch::Approx(table.rows[i].values[0]).epsilon(1e-12));
    CHECK(std::strtod(rows[i + 1][3].c_str(), nullptr) ==
          Catch::Approx(table.rows[i].n_sig).epsilon(1e-12));
  }
  CHECK(rows[1][4] == "closed_form;closed_form");

  // Empty tables are an error.
  SweepTable empty = table;
  empty.rows.clear();
  std::ostringstream sink;
  CHECK_THROWS_AS(emit_csv(empty, sink), std::invalid_argument);
}

TEST_CASE("spec files parse with diagnostics") {
  const std::string good =
      "# comment\n"
      "[sweep]\n"
      "parameter = t2\n"
      "min = 0.6\n"
      "max = 1.0\n"
      "count = 9\n"
      "spacing = linear\n"
      "schemes = mz_squeezed, su11_joint\n"
      "\n"
      "[fixed]\n"
      "n_sig = 1e16\n"
      "r = 1 ; inline comment\n"
      "r1 = 1\n"
      "r2 = 1\n"
      "t1 = 1\n"
      "\n"
      "[geometry]\n"
      "H = 50\n"
      "L = 1000\n"
      "omega = 2.82e14\n"
      "c = 3e8\n"
      "g = 9.8\n";
  std::istringstream is(good);
  const SweepSpec spec = parse_sweep_spec(is, "inline");
  CHECK(spec.grid.parameter == "t2");
  CHECK(spec.grid.count == 9);
  REQUIRE(spec.series.size() == 2);
  CHECK(spec.fixed.p.n_sig == 1e16);
  CHECK(spec.fixed.g.r_s == Catch::Approx(8.8395218e-3).epsilon(1e-6));
  CHECK_NOTHROW(run_sweep(spec));

  const auto expect_error = [](const std::string& text, const std::string& needle) {
    std::istringstream bad(text);
    try {
      parse_sweep_spec(bad, "inline");
      FAIL("expected a validation error");
    } catch (const std::invalid_argument& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_error("[sweep]\nbogus = 1\ncount = 3\n", "inline:2");
  expect_error("[sweep]\nparameter = r\nmin = 0\nmax = 1\ncount = 3\n"
               "schemes = warp_drive\n", "unknown scheme");
  expect_error("[fixed]\nq = 1\n", "unknown parameter");
  expect_error("[sweep]\nparameter = r\nmin = 0\nmax = 1\n"
               "schemes = sql\n", "count is required");
  expect_error("[sweep]\nmin = zero\ncount = 2\n", "not a number");
}

TEST_CASE("presets produce monotone, correctly ranked tables") {
  const SweepTable fig3 = run_sweep(make_preset("fig3"));
  REQUIRE(fig3.rows.size() == 81);
  // All three arm lengths fall monotonically with photon number.
  for (size_t i = 1; i < fig3.rows.size(); ++i)
    for (size_t c = 0; c < 3; ++c)
      CHECK(fig3.rows[i].values[c] < fig3.rows[i - 1].values[c]);
  // The 1 km arm at n_sig = 1e18 sits near 9.3e-5.
  const auto& mid = *std::find_if(
      fig3.rows.begin(), fig3.rows.end(),
      [](const SweepRow& r) { return std::abs(r.swept - 1e18) < 1e12; });
  CHECK(mid.values[2] == Catch::Approx(9.3046337e-5).epsilon(1e-6));

  const SweepTable fig4 = run_sweep(make_preset("fig4"));
  for (const auto& row : fig4.rows) {
    // lossless < one loss < two losses at every squeeze value.
    CHECK(row.values[0] < row.values[1]);
    CHECK(row.values[1] < row.values[2]);
  }

  CHECK_THROWS_AS(make_preset("fig9"), std::invalid_argument);
}

TEST_CASE("crossover finder reproduces the loss thresholds") {
  EvalPoint pt;
  pt.g = preset_geometry();
  pt.p.r = 1.0;
  pt.p.r1 = 1.0;
  pt.p.r2 = 1.0;
  pt.p.t1 = 1.0;
  pt.p.t2 = 1.0;

  const CrossoverResult joint_vs_mz =
      find_crossover(parse_scheme("su11_joint"), parse_scheme("mz_squeezed"),
                     "t2", pt, 0.5, 1.0);
  CHECK(joint_vs_mz.swept == Catch::Approx(0.9184).margin(1e-3));
  CHECK(joint_vs_mz.better_below == "su11_joint");
  CHECK(joint_vs_mz.better_above == "mz_squeezed");

  const CrossoverResult single_vs_mz =
      find_crossover(parse_scheme("su11_single"), parse_scheme("mz_squeezed"),
                     "t2", pt, 0.5, 1.0);
  CHECK(single_vs_mz.swept == Catch::Approx(0.8190).margin(1e-3));

  const CrossoverResult single_vs_joint =
      find_crossover(parse_scheme("su11_single"), parse_scheme("su11_joint"),
                     "t1", pt, 0.5, 1.0);
  CHECK(single_vs_joint.swept == Catch::Approx(0.8589).margin(1e-3));
  CHECK(single_vs_joint.better_below == "su11_single");
  CHECK(single_vs_joint.better_above == "su11_joint");

  // No crossover in a bracket where one scheme dominates.
  CHECK_THROWS_AS(
      find_crossover(parse_scheme("sql"), parse_scheme("effective_sql"), "t2",
                     pt, 0.6, 0.9),
      std::runtime_error);
}
