#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "bogolab/config.hpp"
#include "bogolab/report.hpp"

using namespace bogolab;

namespace {

const std::string kGoldenFreeTable =
    "g,N,M,E_exact,E_gp,E_bog,gap1_exact,eps1_bog,depletion_bog,fc_exact,fc_bog,mu,status\n"
    "0,4,8,2,2,2,1,1,0,1,1,0.5,ok\n";

std::string read_file(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  REQUIRE(static_cast<bool>(file));
  std::ostringstream content;
  content << file.rdbuf();
  return content.str();
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_SUITE("config_report") {

TEST_CASE("a full config text round-trips into the struct") {
  const std::string text =
      "# comparison run\n"
      "n_particles = 5\n"
      "modes = 10\n"
      "coupling = 0.25\n"
      "\n"
      "coupling_start = 0.0\n"
      "coupling_stop = 0.4   # inclusive\n"
      "coupling_steps = 5\n"
      "interaction_weight_convention = N-1\n"
      "quadrature_nodes = 24\n"
      "gp_tol = 1e-11\n"
      "gp_max_iter = 1000\n"
      "eig_tol = 1e-9\n"
      "lowest_k = 3\n"
      "goldstone_tol = 1e-7\n"
      "output_format = json\n"
      "output_path = out.json\n"
      "seed = 777\n";
  const RunConfig config = parse_config(text);
  CHECK(config.n_particles == 5);
  CHECK(config.modes == 10);
  CHECK(config.coupling == 0.25);
  CHECK(config.coupling_start == 0.0);
  CHECK(config.coupling_stop == 0.4);
  CHECK(config.coupling_steps == 5);
  CHECK(config.interaction_weight_convention == "N-1");
  CHECK(config.quadrature_nodes == 24);
  CHECK(config.gp_tol == 1e-11);
  CHECK(config.gp_max_iter == 1000);
  CHECK(config.eig_tol == 1e-9);
  CHECK(config.lowest_k == 3);
  CHECK(config.goldstone_tol == 1e-7);
  CHECK(config.output_format == "json");
  CHECK(config.output_path == "out.json");
  CHECK(config.seed == 777);
  CHECK(weight_convention(config) == InteractionWeight::kParticleNumberMinusOne);
}

TEST_CASE("config errors name the offending line") {
  auto expect_error = [](const std::string& text, const std::string& fragment) {
    try {
      parse_config(text);
      FAIL("expected ConfigError for: ", text);
    } catch (const ConfigError& e) {
      CHECK_MESSAGE(contains(e.what(), fragment), e.what());
    }
  };
  expect_error("n_particles = 3\nbogus_key = 1\n", "line 2");
  expect_error("bogus_key = 1\n", "unknown key 'bogus_key'");
  expect_error("modes = eight\n", "not an integer");
  expect_error("coupling = 1..2\n", "not a number");
  expect_error("modes = 0\n", "at least 1");
  expect_error("gp_tol = 0\n", "positive");
  expect_error("interaction_weight_convention = both\n", "'N' or 'N-1'");
  expect_error("output_format = xml\n", "'csv' or 'json'");
  expect_error("n_particles\n", "expected 'key = value'");
  expect_error("modes =\n", "empty value");
}

TEST_CASE("overrides apply on top and report their own origin") {
  RunConfig config;
  apply_override(config, "coupling=0.3");
  apply_override(config, " modes = 12 ");
  CHECK(config.coupling == 0.3);
  CHECK(config.modes == 12);
  try {
    apply_override(config, "coupling=fast");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK_MESSAGE(contains(e.what(), "override 'coupling=fast'"), e.what());
  }
}

TEST_CASE("config files load through the same parser") {
  const auto path = std::filesystem::temp_directory_path() / "bogolab_config_test.cfg";
  {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    file << "n_particles = 7\nmodes = 9\n";
  }
  const RunConfig config = load_config_file(path.string());
  CHECK(config.n_particles == 7);
  CHECK(config.modes == 9);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_config_file((path / "missing").string()), IoError);
}

TEST_CASE("numbers are rendered in locale-free shortest form") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(2.0) == "2");
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(-1.5) == "-1.5");
  CHECK(format_number(0.25) == "0.25");
  CHECK(format_number(1e-7) == "1e-07");
  CHECK(format_number(1234.5) == "1234.5");
  // Twelve significant digits survive the round trip.
  CHECK(format_number(0.3989422804014327) == "0.398942280401");
}

TEST_CASE("coupling grids hit both endpoints exactly") {
  RunConfig config;
  config.coupling = 0.7;
  CHECK(coupling_grid(config) == std::vector<double>{0.7});

  config.coupling_steps = 1;
  config.coupling_start = 0.3;
  CHECK(coupling_grid(config) == std::vector<double>{0.3});

  config.coupling_steps = 5;
  config.coupling_start = 0.0;
  config.coupling_stop = 1.0;
  const std::vector<double> grid = coupling_grid(config);
  REQUIRE(grid.size() == 5);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == 1.0);
  CHECK(grid[2] == 0.5);
  for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
}

TEST_CASE("comparison table renders a frozen byte-exact free row") {
  ComparisonRow row;
  row.g = 0.0;
  row.n_particles = 4;
  row.modes = 8;
  row.e_exact = 2.0;
  row.e_gp = 2.0;
  row.e_bog = 2.0;
  row.gap1_exact = 1.0;
  row.eps1_bog = 1.0;
  row.depletion_bog = 0.0;
  row.fc_exact = 1.0;
  row.fc_bog = 1.0;
  row.mu = 0.5;
  row.status = "ok";
  CHECK(rows_to_csv({row}) == kGoldenFreeTable);
}

TEST_CASE("json output maps non-finite values to null") {
  ComparisonRow row;
  row.g = -1.0;
  row.n_particles = 6;
  row.modes = 8;
  row.e_exact = 3.25;
  row.e_gp = std::numeric_limits<double>::quiet_NaN();
  row.e_bog = std::numeric_limits<double>::quiet_NaN();
  row.status = "unstable";
  const std::string json = rows_to_json({row});
  CHECK(contains(json, "\"g\": -1"));
  CHECK(contains(json, "\"E_exact\": 3.25"));
  CHECK(contains(json, "\"E_gp\": null"));
  CHECK(contains(json, "\"E_bog\": null"));
  CHECK(contains(json, "\"status\": \"unstable\""));
  CHECK(json.front() == '[');
  CHECK(json.back() == '\n');
}

TEST_CASE("the default comparison reproduces the frozen free table") {
  const RunConfig config;  // N=4, M=8, g=0
  const std::vector<ComparisonRow> rows = run_compare(config);
  REQUIRE(rows.size() == 1);
  CHECK(rows_to_csv(rows) == kGoldenFreeTable);
}

TEST_CASE("exact summary carries spectrum, gap, and occupation fraction") {
  RunConfig config;
  config.n_particles = 2;
  config.modes = 2;
  const ExactSummary summary = run_exact(config);
  CHECK(summary.dimension == 3);
  REQUIRE(summary.energies.size() == 2);
  CHECK(summary.energies[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(summary.energies[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(summary.gap1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(summary.fc == doctest::Approx(1.0).epsilon(1e-12));
  for (double r : summary.residuals) CHECK(r <= 1e-10);

  config.lowest_k = 1;
  const ExactSummary single = run_exact(config);
  CHECK(std::isnan(single.gap1));

  const std::string csv = exact_to_csv(summary);
  CHECK(contains(csv, "quantity,value\n"));
  CHECK(contains(csv, "dimension,3\n"));
  CHECK(contains(csv, "energy_0,1\n"));
  CHECK(contains(csv, "gap1_exact,1\n"));
  const std::string json = exact_to_json(summary);
  CHECK(contains(json, "\"dimension\": 3"));
  CHECK(contains(json, "\"gap1_exact\": 1"));
}

TEST_CASE("single-command runners agree with their serializers") {
  RunConfig config;
  config.n_particles = 4;
  config.modes = 6;
  config.coupling = 0.2;
  const CondensateOrbital orbital = run_condensate(config);
  CHECK(orbital.converged);
  const GpEnergyParts parts = condensate_parts(config, orbital);
  CHECK(parts.total() == doctest::Approx(orbital.energy_per_particle).epsilon(1e-12));
  const std::string csv = condensate_to_csv(orbital, parts, config.n_particles);
  CHECK(contains(csv, "quantity,value\n"));
  CHECK(contains(csv, "mu,"));
  CHECK(contains(csv, "coeff_0,"));
  CHECK(contains(condensate_to_json(orbital, parts, config.n_particles), "\"coeffs\": ["));

  config.coupling = 0.0;
  const BogoliubovReport report = run_bogoliubov(config);
  const std::string bog_csv = bogoliubov_to_csv(report);
  CHECK(contains(bog_csv, "E_gp,2\n"));
  CHECK(contains(bog_csv, "depletion,0\n"));
  CHECK(contains(bog_csv, "epsilon_0,1\n"));
  CHECK(contains(bogoliubov_to_json(report), "\"goldstone_count\": 0"));
}

TEST_CASE("fluctuation commands reject degenerate setups") {
  RunConfig config;
  config.modes = 1;
  CHECK_THROWS_AS(run_bogoliubov(config), ConfigError);
  config.modes = 8;
  config.n_particles = 0;
  CHECK_THROWS_AS(run_bogoliubov(config), ConfigError);
  CHECK_THROWS_AS(run_compare(config), ConfigError);
}

TEST_CASE("an explicit quadrature rule that is too small is a config error") {
  RunConfig config;
  config.quadrature_nodes = 3;  // cannot integrate the quartic products
  CHECK_THROWS_AS(run_exact(config), ConfigError);
}

TEST_CASE("oversized problems surface as capacity failures") {
  RunConfig config;
  config.n_particles = 60;
  config.modes = 30;
  CHECK_THROWS_AS(run_exact(config), CapacityError);

  const std::vector<ComparisonRow> rows = run_compare(config);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].status == "capacity");
  CHECK(std::isnan(rows[0].e_exact));
}

TEST_CASE("sweeps keep grid order and stay variational") {
  RunConfig config;
  config.n_particles = 3;
  config.modes = 6;
  config.coupling_start = 0.0;
  config.coupling_stop = 0.3;
  config.coupling_steps = 4;
  const std::vector<ComparisonRow> rows = run_compare(config);
  REQUIRE(rows.size() == 4);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CAPTURE(i);
    CHECK(rows[i].status == "ok");
    CHECK(rows[i].g == doctest::Approx(0.1 * static_cast<double>(i)).epsilon(1e-15));
    // The full diagonalization is variationally below the mean field.
    CHECK(rows[i].e_exact <= rows[i].e_gp + 1e-10);
    CHECK(rows[i].fc_exact > 0.0);
    CHECK(rows[i].fc_exact <= 1.0);
  }
}

TEST_CASE("an unstable point is reported in its row instead of aborting") {
  RunConfig config;
  config.n_particles = 6;
  config.modes = 8;
  config.coupling = -1.0;
  const std::vector<ComparisonRow> rows = run_compare(config);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].status == "unstable");
  CHECK(std::isfinite(rows[0].e_exact));  // the exact solve still succeeds
  CHECK(std::isnan(rows[0].e_bog));
  CHECK(std::isnan(rows[0].depletion_bog));
}

TEST_CASE("comparison tables are byte-identical across runs and thread counts") {
  RunConfig config;
  config.n_particles = 3;
  config.modes = 6;
  config.coupling_start = 0.0;
  config.coupling_stop = 0.3;
  config.coupling_steps = 4;

  const std::string first = rows_to_csv(run_compare(config));
  const std::string second = rows_to_csv(run_compare(config));
  CHECK(first == second);

  setenv("BOGOLAB_THREADS", "2", 1);
  const std::string threaded = rows_to_csv(run_compare(config));
  setenv("BOGOLAB_THREADS", "1", 1);
  const std::string serial = rows_to_csv(run_compare(config));
  unsetenv("BOGOLAB_THREADS");
  CHECK(threaded == first);
  CHECK(serial == first);
}

TEST_CASE("a malformed thread override is rejected") {
  RunConfig config;
  config.n_particles = 2;
  config.modes = 4;
  setenv("BOGOLAB_THREADS", "abc", 1);
  CHECK_THROWS_AS(run_compare(config), ConfigError);
  setenv("BOGOLAB_THREADS", "0", 1);
  CHECK_THROWS_AS(run_compare(config), ConfigError);
  unsetenv("BOGOLAB_THREADS");
}

TEST_CASE("emit writes the rendered table to the configured file") {
  RunConfig config;
  const std::vector<ComparisonRow> rows = run_compare(config);

  const auto path = std::filesystem::temp_directory_path() / "bogolab_emit_test.csv";
  config.output_path = path.string();
  emit(rows, config);
  CHECK(read_file(path) == kGoldenFreeTable);
  std::filesystem::remove(path);

  config.output_format = "json";
  config.output_path = (std::filesystem::temp_directory_path() / "bogolab_emit_test.json").string();
  emit(rows, config);
  CHECK(contains(read_file(config.output_path), "\"E_exact\": 2"));
  std::filesystem::remove(config.output_path);

  CHECK_THROWS_AS(emit({}, config), Error);
  config.output_path = "/nonexistent_directory_bogolab/out.csv";
  CHECK_THROWS_AS(emit(rows, config), IoError);
}

}  // TEST_SUITE
