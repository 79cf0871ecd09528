#include "kssim/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "kssim/oracle.hpp"
#include "kssim/runner.hpp"

namespace kssim {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string fmt(const char* f, ...) {
  char buf[320];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof(buf), f, ap);
  va_end(ap);
  return buf;
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

bool run_ok(const Trajectory& tr) {
  return tr.status == RunStatus::CompletedHorizon ||
         tr.status == RunStatus::ConvergedEarly;
}

FieldSpec fourier_spec(double offset, double amplitude, int modes) {
  FieldSpec f;
  f.kind = GeneratorKind::RandomFourier;
  f.offset = offset;
  f.amplitude = amplitude;
  f.modes = modes;
  return f;
}

// 1. Homogeneous run against the closed-form reaction solutions, per cell.
void c_oracle_equivalence(std::vector<CriterionResult>& out) {
  const Grid g = Grid::line(8.0, 256);
  Params p;
  p.a = 1.0;
  p.mu = 2.0;
  p.chi = 0.5;
  p.dim = 1;
  const State s0{0.0, Field::constant(g, 0.2), Field::constant(g, 0.2)};
  StepControl c;
  c.fixed_dt = true;
  c.dt_init = 1e-4;
  const Trajectory tr = simulate(s0, p, c, 1.0, 1.0, DiagnosticsSpec{});
  const double uex = logistic_exact(0.2, 1.0, 2.0, 1.0);
  const double vex = homogeneous_v_exact(0.2, 0.2, 1.0, 2.0, 1.0);
  double err = 0.0;
  for (double u : tr.final_state.u.values) err = std::max(err, std::fabs(u - uex));
  for (double v : tr.final_state.v.values) err = std::max(err, std::fabs(v - vex));
  const bool pass = tr.status == RunStatus::CompletedHorizon && err <= 1e-6;
  out.push_back({1, "oracle_equivalence", pass, err,
                 fmt("max |cell - closed form| at t=1, fixed dt=1e-4, 256 cells "
                     "(tol 1e-6), status=%s",
                     to_string(tr.status))});
}

// 2. Richardson slopes: spatial operators at order 2, time stepping at 4.
void c_operator_order(std::vector<CriterionResult>& out) {
  const double length = 2.0;
  const int mode = 3;
  std::vector<double> ln_h, ln_lap, ln_grad;
  for (int n : {32, 64, 128, 256}) {
    const Grid g = Grid::line(length, n);
    const double w = mode * std::numbers::pi / length;
    Field f = Field::constant(g, 0.0);
    for (int i = 0; i < g.cells[0]; ++i) f.values[i] = std::cos(w * g.x_center(i));
    const Field lap = laplacian(f);
    double err = 0.0;
    for (int i = 0; i < g.cells[0]; ++i)
      err = std::max(err, std::fabs(lap.values[i] + w * w * f.values[i]));
    ln_h.push_back(std::log(g.h[0]));
    ln_lap.push_back(std::log(err));
    const double grad_exact = w * w * length / 2.0;
    ln_grad.push_back(std::log(std::fabs(grad_sq_integral(f) - grad_exact)));
  }
  const double slope_lap = ls_slope(ln_h, ln_lap);
  const double slope_grad = ls_slope(ln_h, ln_grad);

  Params p;
  p.a = 1.0;
  p.mu = 2.0;
  p.chi = 0.5;
  p.dim = 1;
  const Grid g8 = Grid::line(8.0, 8);
  const double u_exact = logistic_exact(0.2, 1.0, 2.0, 2.0);
  std::vector<double> ln_dt, ln_err;
  for (double dt : {0.125, 0.0625, 0.03125, 0.015625}) {
    const State s0{0.0, Field::constant(g8, 0.2), Field::constant(g8, 0.2)};
    StepControl c;
    c.fixed_dt = true;
    c.dt_init = dt;
    const Trajectory tr = simulate(s0, p, c, 2.0, 2.0, DiagnosticsSpec{});
    ln_dt.push_back(std::log(dt));
    ln_err.push_back(std::log(std::fabs(tr.final_state.u.values[0] - u_exact)));
  }
  const double slope_t = ls_slope(ln_dt, ln_err);

  const bool pass = std::fabs(slope_lap - 2.0) <= 0.2 &&
                    std::fabs(slope_grad - 2.0) <= 0.2 &&
                    std::fabs(slope_t - 4.0) <= 0.3;
  out.push_back({2, "operator_order", pass, slope_t,
                 fmt("slopes: laplacian %.3f, gradient energy %.3f (want 2.0+-0.2), "
                     "time %.3f (want 4.0+-0.3)",
                     slope_lap, slope_grad, slope_t)});
}

// 3. Transport-only stepping conserves both cell sums over 1e4 fixed steps.
void c_mass_conservation(std::vector<CriterionResult>& out) {
  const Grid g = Grid::line(8.0, 64);
  Params p;
  p.a = 1.0;
  p.mu = 2.0;
  p.chi = 0.5;
  p.dim = 1;
  InitialSpec ispec;
  ispec.seed = 42;
  ispec.u = fourier_spec(1.0, 0.3, 3);
  ispec.v = fourier_spec(1.0, 0.3, 3);
  const State s0 = generate_initial_data(ispec, g);
  const double mass_v0 = integrate_cellwise(s0.v);
  StepControl c;
  c.fixed_dt = true;
  c.dt_init = 2e-3;
  const Trajectory tr =
      simulate(s0, p, c, 20.0, 2.0, DiagnosticsSpec{}, RhsTerms::TransportOnly);
  const double mass_u0 = tr.records.front().mass_u;
  double drift = 0.0;
  for (const auto& r : tr.records)
    drift = std::max(drift, std::fabs(r.mass_u - mass_u0) / std::fabs(mass_u0));
  const double mass_vT = integrate_cellwise(tr.final_state.v);
  const double drift_v = std::fabs(mass_vT - mass_v0) / std::fabs(mass_v0);
  const double worst = std::max(drift, drift_v);
  const bool pass = tr.status == RunStatus::CompletedHorizon &&
                    tr.steps_accepted >= 9999 && worst <= 1e-12;
  out.push_back({3, "mass_conservation", pass, worst,
                 fmt("max relative drift over %lld steps: u %.3g, v %.3g (tol 1e-12)",
                     tr.steps_accepted, drift, drift_v)});
}

ExperimentConfig boundedness_cfg(int nx, unsigned long long seed) {
  ExperimentConfig cfg;
  cfg.grid_dim = 1;
  cfg.length_x = 4.0;
  cfg.nx = nx;
  cfg.params.a = 1.0;
  cfg.params.mu = 1.0;
  cfg.params.chi = 0.5;
  cfg.params.dim = 1;
  cfg.horizon = 15.0;
  cfg.sample_every = 0.25;
  cfg.conv_tol = 1e-6;
  cfg.initial.seed = seed;
  cfg.initial.u = fourier_spec(0.8, 0.2, 3);
  cfg.initial.v = fourier_spec(1.0, 0.3, 3);
  return cfg;
}

// 4 + 5. Seeded random runs complete, stay bounded, and their combined-norm
// supremum and measured v lower bound are stable under grid refinement.
void c_boundedness_eta0(std::vector<CriterionResult>& out) {
  const unsigned long long seeds[5] = {101, 202, 303, 404, 505};
  bool status_ok = true, eta_pos = true;
  double sup_max_u = 0.0, worst_ratio = 1.0, worst_eta_change = 0.0;
  for (unsigned long long seed : seeds) {
    const SimulationOutcome coarse = run_simulate(boundedness_cfg(128, seed));
    const SimulationOutcome fine = run_simulate(boundedness_cfg(256, seed));
    status_ok = status_ok && run_ok(coarse.trajectory) && run_ok(fine.trajectory);
    for (const auto& r : coarse.trajectory.records)
      sup_max_u = std::max(sup_max_u, r.max_u);
    for (const auto& r : fine.trajectory.records)
      sup_max_u = std::max(sup_max_u, r.max_u);
    const double ratio = fine.sup_combined / coarse.sup_combined;
    worst_ratio = std::max({worst_ratio, ratio, 1.0 / ratio});
    eta_pos = eta_pos && coarse.eta0_run > 0.0 && fine.eta0_run > 0.0;
    worst_eta_change =
        std::max(worst_eta_change,
                 std::fabs(fine.eta0_run - coarse.eta0_run) / coarse.eta0_run);
  }
  const bool pass4 = status_ok && sup_max_u <= 10.0 && worst_ratio <= 2.0;
  out.push_back({4, "boundedness_refinement", pass4, worst_ratio,
                 fmt("5 seeds, 128 vs 256 cells: worst sup ratio %.3f (tol 2.0), "
                     "sup max_u %.3f (tol 10), all runs completed: %s",
                     worst_ratio, sup_max_u, status_ok ? "yes" : "no")});
  const bool pass5 = eta_pos && worst_eta_change < 0.2;
  out.push_back({5, "eta0_stability", pass5, worst_eta_change,
                 fmt("measured min v > 0 in all runs: %s; worst relative change "
                     "under refinement %.3g (tol 0.2)",
                     eta_pos ? "yes" : "no", worst_eta_change)});
}

// 6. Damping sweep: mu * sup_t(w_pos) stays in a narrow band across mu when
// the initial u amplitude is rescaled by mu^(-1/kappa).
void c_weighted_scaling(std::vector<CriterionResult>& out) {
  ExperimentConfig cfg;
  cfg.grid_dim = 1;
  cfg.length_x = 4.0;
  cfg.nx = 128;
  cfg.params.a = 1.0;
  cfg.params.mu = 1.0;
  cfg.params.chi = 0.5;
  cfg.params.dim = 1;
  cfg.horizon = 12.0;
  cfg.sample_every = 0.1;
  cfg.conv_tol = 0.0;
  cfg.initial.seed = 7;
  cfg.initial.u = fourier_spec(1.1, 0.15, 3);
  cfg.initial.v = fourier_spec(1.0, 0.25, 3);
  cfg.sweep.mu = {1.0, 2.0, 4.0, 8.0};
  cfg.sweep.u_amp_scale = "inv-mu-kappa";
  const SweepOutcome so = run_sweep(cfg);
  bool rows_ok = so.rows.size() == 4;
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& row : so.rows) {
    rows_ok = rows_ok && row.status == "completed_horizon" &&
              std::isfinite(row.w_pos_sup);
    const double scaled = row.params.mu * row.w_pos_sup;
    lo = std::min(lo, scaled);
    hi = std::max(hi, scaled);
  }
  const double band = hi / lo;
  const bool pass = rows_ok && band <= 3.0;
  out.push_back({6, "weighted_integral_scaling", pass, band,
                 fmt("mu in {1,2,4,8}: max/min of mu*sup_t(w_pos) = %.3f "
                     "(tol 3.0), range [%.4g, %.4g]",
                     band, lo, hi)});
}

// 7 + 8. Strong-damping run: the energy functional decays every interval and
// the fitted deviation rates beat the analytic lower bound.
void c_lyapunov_rate(std::vector<CriterionResult>& out) {
  ExperimentConfig cfg;
  cfg.grid_dim = 1;
  cfg.length_x = 4.0;
  cfg.nx = 128;
  cfg.params.a = 1.0;
  cfg.params.mu = 4.0;
  cfg.params.chi = 0.5;
  cfg.params.dim = 1;
  cfg.horizon = 25.0;
  cfg.sample_every = 0.05;
  cfg.conv_tol = 0.0;
  cfg.initial.seed = 11;
  cfg.initial.u = fourier_spec(0.3, 0.012, 3);
  cfg.initial.v = fourier_spec(0.4, 0.02, 3);
  const SimulationOutcome oc = run_simulate(cfg);

  const bool premise = oc.consts.has_value() &&
                       cfg.params.mu > (oc.consts ? oc.consts->mu_threshold : 0.0);
  double worst_rise = -std::numeric_limits<double>::infinity();
  const auto& rs = oc.trajectory.records;
  for (size_t k = 0; k + 1 < rs.size(); ++k) {
    if (!std::isfinite(rs[k].F) || !std::isfinite(rs[k + 1].F)) continue;
    worst_rise = std::max(worst_rise, rs[k + 1].F - rs[k].F);
  }
  const bool monotone = worst_rise <= kLyapunovAbsTol;
  const bool decay_ok = oc.decay && oc.decay->violations == 0 &&
                        oc.decay->intervals_checked > 0;
  const bool pass7 = oc.trajectory.status == RunStatus::CompletedHorizon &&
                     premise && decay_ok && monotone;
  out.push_back(
      {7, "lyapunov_decay", pass7, oc.decay ? oc.decay->worst_margin : kNan,
       fmt("mu=4 > threshold %.3f: violations %d of %d intervals, max F rise "
           "%.3g (tol %.0e)",
           oc.consts ? oc.consts->mu_threshold : kNan,
           oc.decay ? oc.decay->violations : -1,
           oc.decay ? oc.decay->intervals_checked : -1, worst_rise,
           kLyapunovAbsTol)});

  const double bound = oc.consts ? oc.consts->rate_bound : kNan;
  const double gu = oc.fit_u.gamma ? *oc.fit_u.gamma : kNan;
  const double gv = oc.fit_v.gamma ? *oc.fit_v.gamma : kNan;
  const double dev_u = rs.empty() ? kNan : rs.back().linf_u_dev;
  const double dev_v = rs.empty() ? kNan : rs.back().linf_v_dev;
  const bool pass8 = oc.fit_u.gamma && oc.fit_v.gamma && gu >= bound &&
                     gv >= bound && dev_u < 1e-6 && dev_v < 1e-6;
  out.push_back({8, "convergence_rate", pass8, std::min(gu, gv),
                 fmt("fitted gamma_u %.3f, gamma_v %.3f vs bound %.3f; final "
                     "deviations %.3g, %.3g (tol 1e-6)",
                     gu, gv, bound, dev_u, dev_v)});
}

// 9. Frozen-value checks on the constant selectors.
void c_constant_algebra(std::vector<CriterionResult>& out) {
  double worst = 0.0;
  auto track = [&worst](double got, double want) {
    worst = std::max(worst, std::fabs(got - want));
  };
  Params p1;
  p1.a = 1.0;
  p1.mu = 2.0;
  p1.chi = 0.5;
  p1.dim = 1;
  const LyapunovConstants c = lyapunov_constants(p1, 1.0);
  track(c.G0, 127.0 / 144.0);
  track(c.rate_bound, 127.0 / 432.0);
  const Interval q2 = q2_range(2.0, 0.5);
  const double s = std::sqrt(0.5);
  track(q2.lo, 0.5 * (1.0 - s));
  track(q2.hi, 0.5 * (1.0 + s));
  Params p2 = p1;
  p2.mu = 1.0;
  p2.dim = 2;
  const KappaQ0 k2 = select_kappa_q0(p2);
  track(k2.kappa, 2.5);
  track(k2.q0, 0.6453603366140771);
  Params p3 = p2;
  p3.dim = 1;
  const KappaQ0 k1 = select_kappa_q0(p3);
  track(k1.kappa, 2.25);
  track(k1.q0, 0.35580067882307884);
  const bool pass = worst <= 1e-9;
  out.push_back({9, "constant_algebra", pass, worst,
                 "max |computed - reference| over G0, rate bound, exponent "
                 "windows (tol 1e-9)"});
}

// 10. Production rhs against the flux-enumeration reference on random states.
void c_rhs_equivalence(std::vector<CriterionResult>& out) {
  std::mt19937_64 rng(2026);
  auto u01 = [&rng] { return (rng() >> 11) * 0x1.0p-53; };
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 5);
    const double h = 0.5 + 1.5 * u01();
    const Grid g = Grid::line(h * n, n);
    Field u = Field::constant(g, 0.0);
    Field v = Field::constant(g, 0.0);
    for (int i = 0; i < n; ++i) {
      u.values[i] = 0.2 + 1.8 * u01();
      v.values[i] = 0.2 + 1.8 * u01();
    }
    Params p;
    p.a = 0.01 + 1.99 * u01();
    p.mu = 0.01 + 1.99 * u01();
    p.chi = 0.01 + 1.99 * u01();
    p.dim = 1;
    const State s{0.0, u, v};
    const Rhs prod = rhs(s, p);
    const Rhs ref = tiny_grid_rhs_oracle(u, v, p);
    for (int i = 0; i < n; ++i) {
      worst = std::max(worst, std::fabs(prod.du.values[i] - ref.du.values[i]));
      worst = std::max(worst, std::fabs(prod.dv.values[i] - ref.dv.values[i]));
    }
  }
  const bool pass = worst <= 1e-14;
  out.push_back({10, "rhs_equivalence", pass, worst,
                 "max |rhs - reference| over 1000 random small states (tol 1e-14)"});
}

using BlockFn = void (*)(std::vector<CriterionResult>&);

void run_block(std::vector<CriterionResult>& out,
               std::initializer_list<std::pair<int, const char*>> ids, BlockFn fn) {
  const size_t before = out.size();
  try {
    fn(out);
  } catch (const std::exception& e) {
    for (const auto& [id, name] : ids) {
      bool present = false;
      for (size_t i = before; i < out.size(); ++i) present = present || out[i].id == id;
      if (!present)
        out.push_back({id, name, false, kNan, std::string("aborted: ") + e.what()});
    }
  }
}

}  // namespace

std::vector<CriterionResult> run_verify(const std::string& suite) {
  const bool full = suite == "full";
  if (!full && suite != "fast")
    fail(ErrorKind::Config, "verify: suite must be fast or full");
  std::vector<CriterionResult> out;
  run_block(out, {{1, "oracle_equivalence"}}, c_oracle_equivalence);
  run_block(out, {{2, "operator_order"}}, c_operator_order);
  run_block(out, {{3, "mass_conservation"}}, c_mass_conservation);
  if (full) {
    run_block(out, {{4, "boundedness_refinement"}, {5, "eta0_stability"}},
              c_boundedness_eta0);
    run_block(out, {{6, "weighted_integral_scaling"}}, c_weighted_scaling);
    run_block(out, {{7, "lyapunov_decay"}, {8, "convergence_rate"}}, c_lyapunov_rate);
  }
  run_block(out, {{9, "constant_algebra"}}, c_constant_algebra);
  run_block(out, {{10, "rhs_equivalence"}}, c_rhs_equivalence);
  std::sort(out.begin(), out.end(),
            [](const CriterionResult& a, const CriterionResult& b) { return a.id < b.id; });
  return out;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return !results.empty();
}

std::string criterion_line(const CriterionResult& r) {
  return fmt("[%s] %02d %-26s qoi=%-12.6g %s", r.pass ? "PASS" : "FAIL", r.id,
             r.name.c_str(), r.qoi, r.detail.c_str());
}

}  // namespace kssim
