#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"
#include "kssim/oracle.hpp"
#include "kssim/runner.hpp"
#include "test_util.hpp"

using namespace kssim;
using kssim::testutil::thrown_kind;

namespace {

std::string steady_config_text() {
  return "# steady-state experiment\n"
         "[grid]\n"
         "kind = line\n"
         "length = 2.0\n"
         "nx = 16\n"
         "\n"
         "[params]\n"
         "a = 1.0\n"
         "mu = 2.0\n"
         "chi = 0.5\n"
         "\n"
         "[run]\n"
         "horizon = 2.0\n"
         "sample_every = 0.25\n"
         "conv_tol = 1e-6\n"
         "\n"
         "[initial.u]\n"
         "kind = constant\n"
         "value = 0.5\n"
         "[initial.v]\n"
         "kind = constant\n"
         "value = 0.5\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(bool(in));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int count_lines(const std::string& text) {
  int n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

FieldSpec fourier_spec(double offset, double amplitude, int modes) {
  FieldSpec f;
  f.kind = GeneratorKind::RandomFourier;
  f.offset = offset;
  f.amplitude = amplitude;
  f.modes = modes;
  return f;
}

}  // namespace

TEST_CASE("config parsing fills values and derives dim from the grid") {
  const ExperimentConfig cfg = parse_config_text(steady_config_text());
  CHECK(cfg.grid_dim == 1);
  CHECK(cfg.length_x == 2.0);
  CHECK(cfg.nx == 16);
  CHECK(cfg.params.a == 1.0);
  CHECK(cfg.params.mu == 2.0);
  CHECK(cfg.params.chi == 0.5);
  CHECK(cfg.params.dim == 1);
  CHECK(cfg.horizon == 2.0);
  CHECK(cfg.sample_every == 0.25);
  CHECK(cfg.conv_tol == 1e-6);
  CHECK(cfg.initial.u.kind == GeneratorKind::Constant);
  CHECK(cfg.initial.u.value == 0.5);
  CHECK(cfg.initial.seed == 0);
  CHECK(cfg.initial.u_scale == 1.0);
  // untouched defaults
  CHECK(cfg.control.dt_init == 1e-3);
  CHECK(cfg.transport_only == false);
  CHECK(cfg.eta0_hint == 0.0);
  CHECK(cfg.output.csv_path.empty());
  CHECK(cfg.sweep.a.empty());
  CHECK(cfg.sweep.u_amp_scale == "none");

  const ExperimentConfig rect = parse_config_text(
      "[grid]\nkind = rect\nlx = 1.0\nly = 2.0\nnx = 8\nny = 12\n");
  CHECK(rect.grid_dim == 2);
  CHECK(rect.params.dim == 2);
  CHECK(rect.length_y == 2.0);
  CHECK(rect.ny == 12);

  const ExperimentConfig lists = parse_config_text(
      "[sweep]\nmu = 1, 2.5, 4\nu_amp_scale = inv-mu-kappa\n"
      "[step]\nfixed_dt = true\ndt_init = 0.25\n"
      "[run]\ntransport_only = true\n"
      "[output]\ncsv = /tmp/a.csv\nsummary = /tmp/b.json\nsweep_csv = /tmp/c.csv\n"
      "[initial]\nseed = 99\nu_scale = 0.5\n");
  CHECK(lists.sweep.mu == std::vector<double>{1.0, 2.5, 4.0});
  CHECK(lists.sweep.u_amp_scale == "inv-mu-kappa");
  CHECK(lists.control.fixed_dt == true);
  CHECK(lists.control.dt_init == 0.25);
  CHECK(lists.transport_only == true);
  CHECK(lists.output.csv_path == "/tmp/a.csv");
  CHECK(lists.initial.seed == 99);
  CHECK(lists.initial.u_scale == 0.5);
}

TEST_CASE("config parsing rejects malformed input with config errors") {
  auto kind_of = [](const std::string& text) {
    return thrown_kind([&] { parse_config_text(text); });
  };
  CHECK(kind_of("[nosuch]\nx = 1\n") == ErrorKind::Config);
  CHECK(kind_of("[params]\nbogus = 1\n") == ErrorKind::Config);
  CHECK(kind_of("[params]\na = fast\n") == ErrorKind::Config);
  CHECK(kind_of("[params]\na = 1.0x\n") == ErrorKind::Config);
  CHECK(kind_of("[params]\na 1.0\n") == ErrorKind::Config);
  CHECK(kind_of("a = 1.0\n") == ErrorKind::Config);
  CHECK(kind_of("[params\na = 1.0\n") == ErrorKind::Config);
  CHECK(kind_of("[]\n") == ErrorKind::Config);
  CHECK(kind_of("[grid]\nkind = triangle\n") == ErrorKind::Config);
  CHECK(kind_of("[step]\nfixed_dt = yes\n") == ErrorKind::Config);
  CHECK(kind_of("[sweep]\nmu = 1, x\n") == ErrorKind::Config);
  CHECK(kind_of("[sweep]\nu_amp_scale = squared\n") == ErrorKind::Config);
  CHECK(kind_of("[initial.u]\nmodes = 2.5\n") == ErrorKind::Config);
  CHECK(kind_of("[initial.u]\nshape = blob\n") == ErrorKind::Config);
  // comments and blank lines are fine anywhere
  CHECK(kind_of("# top\n\n[params]\n; mid\na = 1.0\n") == std::nullopt);
}

TEST_CASE("overrides use last-dot sectioning and re-derive dim") {
  ExperimentConfig cfg = parse_config_text(steady_config_text());
  apply_override(cfg, "params.a=2.5");
  CHECK(cfg.params.a == 2.5);
  apply_override(cfg, "initial.u.offset=0.9");
  CHECK(cfg.initial.u.offset == 0.9);
  apply_override(cfg, "initial.seed=17");
  CHECK(cfg.initial.seed == 17);
  apply_override(cfg, "run.transport_only=true");
  CHECK(cfg.transport_only == true);
  apply_override(cfg, " grid.kind = rect ");
  CHECK(cfg.grid_dim == 2);
  CHECK(cfg.params.dim == 2);

  auto kind_of = [&cfg](const std::string& s) {
    return thrown_kind([&] { apply_override(cfg, s); });
  };
  CHECK(kind_of("nodot=1") == ErrorKind::Config);
  CHECK(kind_of("params.bogus=1") == ErrorKind::Config);
  CHECK(kind_of(".a=1") == ErrorKind::Config);
  CHECK(kind_of("params.=1") == ErrorKind::Config);
  CHECK(kind_of("params.a") == ErrorKind::Config);
  CHECK(kind_of("params.a=") == ErrorKind::Config);
}

TEST_CASE("generators honor bounds, seeds, and scaling") {
  const Grid g = Grid::line(1.0, 64);

  InitialSpec bump;
  bump.u.kind = GeneratorKind::GaussianBump;
  bump.u.center_x = 0.5;
  bump.u.width = 0.1;
  bump.u.amplitude = 1.0;
  bump.u.floor = 0.2;
  bump.v.kind = GeneratorKind::Constant;
  bump.v.value = 1.0;
  const State sb = generate_initial_data(bump, g);
  CHECK(min_value(sb.u) >= 0.2);
  CHECK(max_value(sb.u) <= 1.2 + 1e-15);
  int peak = 0;
  for (int i = 0; i < g.cells[0]; ++i)
    if (sb.u.values[i] > sb.u.values[peak]) peak = i;
  CHECK(std::fabs(g.x_center(peak) - 0.5) <= g.h[0]);

  InitialSpec four;
  four.seed = 5;
  four.u = fourier_spec(1.0, 0.1, 3);
  four.v = fourier_spec(2.0, 0.2, 2);
  const State sf = generate_initial_data(four, g);
  for (double x : sf.u.values) CHECK(std::fabs(x - 1.0) <= 0.3 + 1e-15);
  for (double x : sf.v.values) CHECK(std::fabs(x - 2.0) <= 0.4 + 1e-15);

  // same seed reproduces both fields bitwise; a different seed does not
  const State sf2 = generate_initial_data(four, g);
  CHECK(sf2.u.values == sf.u.values);
  CHECK(sf2.v.values == sf.v.values);
  InitialSpec other = four;
  other.seed = 6;
  const State so = generate_initial_data(other, g);
  CHECK(so.u.values != sf.u.values);

  // u and v draw from independent streams: changing u's draw count must not
  // change v's field
  InitialSpec more_u_modes = four;
  more_u_modes.u.modes = 5;
  more_u_modes.u.amplitude = 0.05;
  const State sm = generate_initial_data(more_u_modes, g);
  CHECK(sm.v.values == sf.v.values);

  InitialSpec scaled = four;
  scaled.u_scale = 2.0;
  const State ss = generate_initial_data(scaled, g);
  for (int i = 0; i < g.total_cells(); ++i)
    CHECK(ss.u.values[i] == 2.0 * sf.u.values[i]);
  CHECK(ss.v.values == sf.v.values);

  // 2D draws x and y mode coefficients
  const Grid g2 = Grid::rect(1.0, 1.0, 8, 8);
  InitialSpec flat2;
  flat2.u = fourier_spec(1.0, 0.1, 2);
  flat2.v.kind = GeneratorKind::Constant;
  flat2.v.value = 1.0;
  const State s2 = generate_initial_data(flat2, g2);
  for (double x : s2.u.values) CHECK(std::fabs(x - 1.0) <= 0.4 + 1e-15);
}

TEST_CASE("generator specs that cannot guarantee admissibility are rejected") {
  const Grid g = Grid::line(1.0, 16);
  auto kind_of = [&g](const InitialSpec& spec) {
    return thrown_kind([&] { generate_initial_data(spec, g); });
  };

  InitialSpec s;
  s.u.kind = GeneratorKind::Constant;
  s.u.value = 0.5;
  s.v.kind = GeneratorKind::Constant;
  s.v.value = 0.5;
  CHECK(kind_of(s) == std::nullopt);

  InitialSpec neg_u = s;
  neg_u.u = fourier_spec(0.3, 0.2, 2);  // lower bound -0.1
  CHECK(kind_of(neg_u) == ErrorKind::Config);

  InitialSpec zero_v = s;
  zero_v.v.kind = GeneratorKind::GaussianBump;
  zero_v.v.floor = 0.0;  // lower bound not positive
  zero_v.v.width = 0.1;
  CHECK(kind_of(zero_v) == ErrorKind::Config);

  InitialSpec neg_const = s;
  neg_const.u.value = -0.1;
  CHECK(kind_of(neg_const) == ErrorKind::Config);

  InitialSpec zero_u = s;
  zero_u.u.value = 0.0;  // bound ok, but u must not be identically zero
  CHECK(kind_of(zero_u) == ErrorKind::Domain);

  InitialSpec bad_scale = s;
  bad_scale.u_scale = 0.0;
  CHECK(kind_of(bad_scale) == ErrorKind::Config);

  InitialSpec bad_modes = s;
  bad_modes.u = fourier_spec(1.0, 0.1, 0);
  CHECK(kind_of(bad_modes) == ErrorKind::Config);

  InitialSpec bad_width = s;
  bad_width.u.kind = GeneratorKind::GaussianBump;
  bad_width.u.width = 0.0;
  bad_width.u.floor = 0.1;
  CHECK(kind_of(bad_width) == ErrorKind::Config);

  CHECK(thrown_kind([] { generator_from_name("blob"); }) == ErrorKind::Config);
  CHECK(generator_from_name("gaussian-bump") == GeneratorKind::GaussianBump);
}

TEST_CASE("run_simulate on the exact steady state") {
  const ExperimentConfig cfg = parse_config_text(steady_config_text());
  const SimulationOutcome oc = run_simulate(cfg);

  CHECK(oc.trajectory.status == RunStatus::ConvergedEarly);
  CHECK(oc.trajectory.records.size() == 5);  // converges at the 5th sample
  CHECK(oc.eta0_run == 0.5);
  CHECK(oc.sup_mass_u == 1.0);
  CHECK(oc.trajectory.records.back().F == 0.0);

  // measured eta0 = 0.5 gives k0 = 4: window (0.25, 8), L* = 10/9, G0 = 31/36
  REQUIRE(oc.consts.has_value());
  CHECK(oc.consts->G0 == doctest::Approx(31.0 / 36.0).epsilon(1e-12));
  REQUIRE(oc.decay.has_value());
  CHECK(oc.decay->violations == 0);
  CHECK(oc.fit_u.note == "already_converged");
  CHECK(oc.fit_v.note == "already_converged");
  CHECK(!oc.fit_u.gamma.has_value());

  CHECK(oc.csv_text.substr(0, std::string(kDiagnosticsCsvHeader).size()) ==
        kDiagnosticsCsvHeader);
  CHECK(count_lines(oc.csv_text) == 6);  // header + 5 records

  const auto j = nlohmann::json::parse(oc.summary_json);
  CHECK(j["status"] == "converged_early");
  CHECK(j["params"]["a"] == 1.0);
  CHECK(j["params"]["dim"] == 1);
  CHECK(j["grid"]["kind"] == "line");
  CHECK(j["grid"]["cells"][0] == 16);
  CHECK(j["eta0"]["over_run"] == 0.5);
  CHECK(j["final"]["u_mean"] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(j["fits"]["gamma_u_note"] == "already_converged");
  CHECK(j["fits"]["gamma_u"].is_null());
  CHECK(j["lyapunov"]["G0"] == doctest::Approx(31.0 / 36.0).epsilon(1e-12));
  CHECK(j["lyapunov"]["decay"]["violations"] == 0);
  CHECK(j["conditions"]["cond_a_ok"] == true);
  CHECK(j["conditions"]["margin_chi"].is_null());  // infinite margin in 1D
  CHECK(j["records"] == 5);
  CHECK(j["transport_only"] == false);
}

TEST_CASE("run_simulate matches the reaction oracles on homogeneous data") {
  ExperimentConfig cfg = parse_config_text(steady_config_text());
  apply_override(cfg, "grid.length=1.0");
  apply_override(cfg, "initial.u.value=0.2");
  apply_override(cfg, "initial.v.value=0.2");
  apply_override(cfg, "run.horizon=1.0");
  apply_override(cfg, "run.sample_every=0.5");
  apply_override(cfg, "run.conv_tol=0");
  const SimulationOutcome oc = run_simulate(cfg);
  CHECK(oc.trajectory.status == RunStatus::CompletedHorizon);
  const auto& last = oc.trajectory.records.back();
  CHECK(last.t == 1.0);
  const double u_ref = logistic_exact(0.2, 1.0, 2.0, 1.0);
  const double v_ref = homogeneous_v_exact(0.2, 0.2, 1.0, 2.0, 1.0);
  CHECK(last.mass_u / 1.0 == doctest::Approx(u_ref).epsilon(1e-9));
  CHECK(last.min_v == doctest::Approx(v_ref).epsilon(1e-9));
}

TEST_CASE("run_simulate writes the configured output files") {
  ExperimentConfig cfg = parse_config_text(steady_config_text());
  cfg.output.csv_path = "/tmp/kssim_test_traj.csv";
  cfg.output.summary_path = "/tmp/kssim_test_summary.json";
  const SimulationOutcome oc = run_simulate(cfg);
  CHECK(read_file(cfg.output.csv_path) == oc.csv_text);
  CHECK(read_file(cfg.output.summary_path) == oc.summary_json);
  std::remove(cfg.output.csv_path.c_str());
  std::remove(cfg.output.summary_path.c_str());

  ExperimentConfig bad = cfg;
  bad.output.csv_path = "/nonexistent_kssim_dir/x.csv";
  CHECK(thrown_kind([&] { run_simulate(bad); }) == ErrorKind::Config);
}

TEST_CASE("same config and seed reproduce byte-identical outputs") {
  ExperimentConfig cfg = parse_config_text(steady_config_text());
  apply_override(cfg, "initial.u.kind=random-fourier");
  apply_override(cfg, "initial.u.offset=0.8");
  apply_override(cfg, "initial.u.amplitude=0.15");
  apply_override(cfg, "initial.u.modes=3");
  apply_override(cfg, "initial.v.kind=random-fourier");
  apply_override(cfg, "initial.v.offset=1.0");
  apply_override(cfg, "initial.v.amplitude=0.2");
  apply_override(cfg, "initial.v.modes=3");
  apply_override(cfg, "initial.seed=3");
  apply_override(cfg, "run.horizon=1.0");
  apply_override(cfg, "run.conv_tol=0");
  const SimulationOutcome a = run_simulate(cfg);
  const SimulationOutcome b = run_simulate(cfg);
  CHECK(a.csv_text == b.csv_text);
  CHECK(a.summary_json == b.summary_json);

  apply_override(cfg, "initial.seed=4");
  const SimulationOutcome c = run_simulate(cfg);
  CHECK(c.csv_text != a.csv_text);
}

TEST_CASE("one-point sweep agrees with run_simulate") {
  ExperimentConfig cfg = parse_config_text(steady_config_text());
  apply_override(cfg, "run.conv_tol=0");
  apply_override(cfg, "run.horizon=1.0");
  const SimulationOutcome oc = run_simulate(cfg);
  const SweepOutcome so = run_sweep(cfg);
  REQUIRE(so.rows.size() == 1);
  const SweepRow& row = so.rows[0];
  CHECK(row.index == 0);
  CHECK(row.status == "completed_horizon");
  CHECK(row.eta0 == oc.eta0_run);
  REQUIRE(oc.consts.has_value());
  CHECK(row.rate_bound == oc.consts->rate_bound);
  CHECK(row.lyap_violations == oc.decay->violations);
  CHECK(so.csv_text.substr(0, 8) == "index,a,");
  CHECK(count_lines(so.csv_text) == 2);
}

TEST_CASE("sweep iterates a outermost, mu innermost, and never aborts") {
  ExperimentConfig cfg = parse_config_text(steady_config_text());
  apply_override(cfg, "run.horizon=0.5");
  apply_override(cfg, "run.sample_every=0.25");
  apply_override(cfg, "run.conv_tol=0");
  cfg.sweep.a = {1.0, 2.0};
  cfg.sweep.mu = {1.0, 2.0};
  const SweepOutcome so = run_sweep(cfg);
  REQUIRE(so.rows.size() == 4);
  CHECK(so.rows[0].params.a == 1.0);
  CHECK(so.rows[0].params.mu == 1.0);
  CHECK(so.rows[1].params.a == 1.0);
  CHECK(so.rows[1].params.mu == 2.0);
  CHECK(so.rows[2].params.a == 2.0);
  CHECK(so.rows[2].params.mu == 1.0);
  CHECK(so.rows[3].params.a == 2.0);
  CHECK(so.rows[3].params.mu == 2.0);
  for (int i = 0; i < 4; ++i) CHECK(so.rows[i].index == i);

  // an invalid point yields an error row; the others still run
  ExperimentConfig mixed = cfg;
  mixed.sweep.a.clear();
  mixed.sweep.mu = {1.0, 0.0};
  const SweepOutcome sm = run_sweep(mixed);
  REQUIRE(sm.rows.size() == 2);
  CHECK(sm.rows[0].status == "completed_horizon");
  CHECK(sm.rows[1].status == "error_domain");
  CHECK(sm.rows[1].lyap_violations == -1);
  CHECK(std::isnan(sm.rows[1].eta0));
  CHECK(sm.csv_text.find("error_domain") != std::string::npos);
}

TEST_CASE("sweep condition report flips at the dimension-2 threshold") {
  ExperimentConfig cfg = parse_config_text(
      "[grid]\nkind = rect\nlx = 1.0\nly = 1.0\nnx = 8\nny = 8\n"
      "[params]\na = 1.0\nmu = 2.0\nchi = 0.5\n"
      "[run]\nhorizon = 0.2\nsample_every = 0.1\nconv_tol = 0\n"
      "[initial.u]\nkind = constant\nvalue = 0.5\n"
      "[initial.v]\nkind = constant\nvalue = 0.5\n");
  cfg.sweep.chi = {0.99, 1.01};  // threshold is sqrt(2/2) = 1
  const SweepOutcome so = run_sweep(cfg);
  REQUIRE(so.rows.size() == 2);
  CHECK(so.rows[0].conditions.cond_chi_ok == true);
  CHECK(so.rows[1].conditions.cond_chi_ok == false);
  CHECK(so.rows[0].conditions.margin_chi == doctest::Approx(0.01).epsilon(1e-9));
  CHECK(so.rows[1].conditions.margin_chi == doctest::Approx(-0.01).epsilon(1e-9));
}

TEST_CASE("sweep damping rescale matches an explicit u_scale") {
  ExperimentConfig cfg = parse_config_text(steady_config_text());
  apply_override(cfg, "initial.u.kind=random-fourier");
  apply_override(cfg, "initial.u.offset=1.0");
  apply_override(cfg, "initial.u.amplitude=0.1");
  apply_override(cfg, "initial.u.modes=2");
  apply_override(cfg, "initial.seed=9");
  apply_override(cfg, "run.horizon=1.0");
  apply_override(cfg, "run.conv_tol=0");
  cfg.sweep.mu = {8.0};
  cfg.sweep.u_amp_scale = "inv-mu-kappa";
  const SweepOutcome scaled = run_sweep(cfg);

  ExperimentConfig manual = cfg;
  manual.sweep.u_amp_scale = "none";
  // kappa = midpoint of (1/2, 1/chi^2) = 2.25 for chi = 0.5 in 1D
  manual.initial.u_scale = std::pow(8.0, -1.0 / 2.25);
  const SweepOutcome plain = run_sweep(manual);

  REQUIRE(scaled.rows.size() == 1);
  REQUIRE(plain.rows.size() == 1);
  CHECK(scaled.rows[0].status == "completed_horizon");
  CHECK(scaled.rows[0].eta0 == plain.rows[0].eta0);
  CHECK(scaled.rows[0].w_pos_sup == plain.rows[0].w_pos_sup);

  // rescaling needs a valid exponent window; chi >= 1 has none in 1D
  ExperimentConfig infeasible = cfg;
  infeasible.sweep.chi = {1.5};
  const SweepOutcome bad = run_sweep(infeasible);
  REQUIRE(bad.rows.size() == 1);
  CHECK(bad.rows[0].status == "error_infeasible");

  ExperimentConfig bogus = cfg;
  bogus.sweep.u_amp_scale = "squared";
  CHECK(thrown_kind([&] { run_sweep(bogus); }) == ErrorKind::Config);
}

TEST_CASE("sweep writes its csv when configured") {
  ExperimentConfig cfg = parse_config_text(steady_config_text());
  apply_override(cfg, "run.horizon=0.5");
  apply_override(cfg, "run.conv_tol=0");
  cfg.output.sweep_csv_path = "/tmp/kssim_test_sweep.csv";
  const SweepOutcome so = run_sweep(cfg);
  CHECK(read_file(cfg.output.sweep_csv_path) == so.csv_text);
  std::remove(cfg.output.sweep_csv_path.c_str());
}

TEST_CASE("condition report serializes thresholds and nulls") {
  const auto j1 = nlohmann::json::parse(check_conditions_json(1.0, 0.5, 1));
  CHECK(j1["satisfied"] == true);
  CHECK(j1["conditions"]["cond_a_ok"] == true);
  CHECK(j1["conditions"]["margin_chi"].is_null());  // no chi threshold in 1D

  const auto j2 = nlohmann::json::parse(check_conditions_json(1.0, 3.0, 2));
  CHECK(j2["satisfied"] == false);
  CHECK(j2["conditions"]["cond_a_ok"] == false);  // needs a > chi - 1 = 2
  CHECK(j2["conditions"]["margin_a"] == doctest::Approx(-1.0).epsilon(1e-12));

  CHECK(thrown_kind([] { check_conditions_json(0.0, 0.5, 1); }) ==
        ErrorKind::Domain);
}

#ifdef KSSIM_CLI_PATH

namespace {

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(KSSIM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("cli maps outcomes to exit codes") {
  const std::string cfg_path = "/tmp/kssim_cli_cfg.ini";
  {
    std::ofstream out(cfg_path);
    out << steady_config_text();
  }

  CHECK(run_cli("simulate " + cfg_path) == 0);
  CHECK(run_cli("sweep " + cfg_path) == 0);
  CHECK(run_cli("check-conditions --a 1 --chi 0.5 --n 1") == 0);

  CHECK(run_cli("simulate /tmp/kssim_no_such_config.ini") == 2);
  CHECK(run_cli("simulate") == 2);
  CHECK(run_cli("") == 2);
  CHECK(run_cli("frobnicate") == 2);
  CHECK(run_cli("simulate " + cfg_path + " --set params.bogus=1") == 2);
  CHECK(run_cli("check-conditions --a 0 --chi 0.5 --n 1") == 2);
  CHECK(run_cli("verify --suite bogus") == 2);

  // overrides reach the run: the summary reports the overridden value
  const std::string out_path = "/tmp/kssim_cli_out.json";
  const std::string cmd = std::string(KSSIM_CLI_PATH) + " simulate " + cfg_path +
                          " --set params.a=2.0 > " + out_path + " 2>/dev/null";
  REQUIRE(std::system(cmd.c_str()) != -1);
  const auto j = nlohmann::json::parse(read_file(out_path));
  CHECK(j["params"]["a"] == 2.0);
  std::remove(out_path.c_str());
  std::remove(cfg_path.c_str());
}

#endif  // KSSIM_CLI_PATH
