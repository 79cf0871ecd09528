#include "kssim/runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <utility>

#include "json.hpp"

namespace kssim {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Config, "cannot open for writing: " + path);
  out << text;
  out.flush();
  if (!out) fail(ErrorKind::Config, "write failed: " + path);
}

// Deviation series for the exponential fit, finite samples only (divergent
// or unavailable diagnostics must not poison the regression).
std::vector<std::pair<double, double>> dev_series(
    const std::vector<DiagnosticsRecord>& records, bool for_u) {
  std::vector<std::pair<double, double>> s;
  s.reserve(records.size());
  for (const auto& r : records) {
    const double val = for_u ? r.linf_u_dev : r.linf_v_dev;
    if (std::isfinite(val)) s.emplace_back(r.t, val);
  }
  return s;
}

FitOutcome fit_deviation(const std::vector<DiagnosticsRecord>& records,
                         const Params& p, double conv_tol, bool for_u) {
  FitOutcome out;
  const auto series = dev_series(records, for_u);
  FitWindow window;
  window.start_value_threshold = kFitStartThresholdU * p.a / p.mu;
  try {
    out.gamma = fit_decay_rate(series, window);
    out.note = "ok";
  } catch (const Error& e) {
    const double last = series.empty() ? kNan : series.back().second;
    const double settled = std::max(conv_tol, 1e-8);
    if (std::isfinite(last) && last <= settled)
      out.note = "already_converged";
    else
      out.note = std::string("unavailable (") + kind_name(e.kind()) + ")";
  }
  return out;
}

// Shared core of run_simulate and run_sweep: simulate, measure eta0, rebuild
// the Lyapunov layer from the measured bound, check decay, fit rates, and
// collect suprema. Leaves csv_text/summary_json empty.
SimulationOutcome run_core(const ExperimentConfig& cfg, Params p,
                           const InitialSpec& ispec) {
  p.dim = cfg.grid_dim;  // dim always follows the grid, also for configs built in code
  SimulationOutcome out;
  const Grid grid = make_grid(cfg);
  const State initial = generate_initial_data(ispec, grid);
  out.conditions = check_boundedness_conditions(p);

  const double eta_hint =
      cfg.eta0_hint > 0.0 ? cfg.eta0_hint : min_value(initial.v);
  const DiagnosticsSpec spec =
      canonical_diagnostics_spec(p, eta_hint, cfg.conv_tol);
  const RhsTerms terms =
      cfg.transport_only ? RhsTerms::TransportOnly : RhsTerms::Full;
  out.trajectory =
      simulate(initial, p, cfg.control, cfg.horizon, cfg.sample_every, spec, terms);

  out.eta0_run = out.trajectory.min_v_over_run;
  out.eta_sampled = estimate_eta0(out.trajectory.records);

  try {
    out.consts = lyapunov_constants(p, out.eta0_run);
  } catch (const Error&) {
    out.consts.reset();
  }
  if (out.consts) {
    for (auto& r : out.trajectory.records) {
      const double half_l_v2 = 0.5 * out.consts->L * r.int_V2;
      r.F = r.int_h_U + half_l_v2;
      r.G = out.consts->G0 * (r.int_U1sq + half_l_v2);
    }
    out.decay = check_lyapunov_decay(out.trajectory.records, p, *out.consts);
  }

  out.fit_u = fit_deviation(out.trajectory.records, p, cfg.conv_tol, true);
  out.fit_v = fit_deviation(out.trajectory.records, p, cfg.conv_tol, false);

  double sup_w_pos = -1.0, sup_w_neg = -1.0;
  bool any_w_pos = false, any_w_neg = false;
  for (const auto& r : out.trajectory.records) {
    out.sup_mass_u = std::max(out.sup_mass_u, r.mass_u);
    out.sup_l2_v = std::max(out.sup_l2_v, r.l2_v);
    out.sup_grad_l2_v = std::max(out.sup_grad_l2_v, r.grad_l2_v);
    out.sup_combined =
        std::max(out.sup_combined, r.mass_u + r.l2_v + r.grad_l2_v);
    if (std::isfinite(r.w_pos)) {
      sup_w_pos = std::max(sup_w_pos, r.w_pos);
      any_w_pos = true;
    }
    if (std::isfinite(r.w_neg)) {
      sup_w_neg = std::max(sup_w_neg, r.w_neg);
      any_w_neg = true;
    }
  }
  if (any_w_pos) out.sup_w_pos = sup_w_pos;
  if (any_w_neg) out.sup_w_neg = sup_w_neg;
  return out;
}

std::string trajectory_csv(const std::vector<DiagnosticsRecord>& records) {
  std::string text = kDiagnosticsCsvHeader;
  text += '\n';
  for (const auto& r : records) {
    text += csv_row(r);
    text += '\n';
  }
  return text;
}

nlohmann::ordered_json conditions_json(const ConditionReport& rep) {
  // nlohmann serializes nonfinite doubles as null, which is exactly the
  // "no finite threshold" meaning of an infinite margin.
  return nlohmann::ordered_json{{"cond_a_ok", rep.cond_a_ok},
                                {"cond_chi_ok", rep.cond_chi_ok},
                                {"margin_a", rep.margin_a},
                                {"margin_chi", rep.margin_chi}};
}

nlohmann::ordered_json optional_json(const std::optional<double>& x) {
  if (!x) return nullptr;
  return *x;
}

std::string summary_json_text(const ExperimentConfig& cfg, const Params& p,
                              const SimulationOutcome& oc) {
  const Grid& g = oc.trajectory.final_state.u.grid;
  nlohmann::ordered_json j;
  j["status"] = to_string(oc.trajectory.status);
  j["horizon"] = cfg.horizon;
  j["sample_every"] = cfg.sample_every;
  j["transport_only"] = cfg.transport_only;

  nlohmann::ordered_json jg;
  jg["kind"] = g.dim == 1 ? "line" : "rect";
  jg["dim"] = g.dim;
  if (g.dim == 1) {
    jg["cells"] = {g.cells[0]};
    jg["extent"] = {g.extent[0]};
  } else {
    jg["cells"] = {g.cells[0], g.cells[1]};
    jg["extent"] = {g.extent[0], g.extent[1]};
  }
  j["grid"] = jg;

  j["params"] = {{"a", p.a}, {"chi", p.chi}, {"mu", p.mu}, {"dim", p.dim}};
  j["seed"] = cfg.initial.seed;
  j["conditions"] = conditions_json(oc.conditions);
  j["eta0"] = {{"over_run", oc.eta0_run},
               {"sampled", oc.eta_sampled.eta0},
               {"t_of_min", oc.eta_sampled.t_of_min}};
  j["sup"] = {{"mass_u", oc.sup_mass_u},
              {"l2_v", oc.sup_l2_v},
              {"grad_l2_v", oc.sup_grad_l2_v},
              {"combined", oc.sup_combined},
              {"w_pos", optional_json(oc.sup_w_pos)},
              {"w_neg", optional_json(oc.sup_w_neg)}};

  const auto& recs = oc.trajectory.records;
  if (!recs.empty()) {
    const auto& last = recs.back();
    j["final"] = {{"t", last.t},
                  {"mass_u", last.mass_u},
                  {"u_mean", last.mass_u / g.measure()},
                  {"max_u", last.max_u},
                  {"linf_u_dev", last.linf_u_dev},
                  {"linf_v_dev", last.linf_v_dev},
                  {"min_v", last.min_v}};
  } else {
    j["final"] = nullptr;
  }

  if (oc.consts) {
    nlohmann::ordered_json jl;
    jl["eta0_used"] = oc.consts->eta0;
    jl["k0"] = oc.consts->k0;
    jl["L"] = oc.consts->L;
    jl["mu_threshold"] = oc.consts->mu_threshold;
    jl["G0"] = oc.consts->G0;
    jl["rate_bound"] = oc.consts->rate_bound;
    if (oc.decay) {
      jl["decay"] = {{"intervals_checked", oc.decay->intervals_checked},
                     {"intervals_skipped", oc.decay->intervals_skipped},
                     {"violations", oc.decay->violations},
                     {"worst_margin", oc.decay->worst_margin}};
    } else {
      jl["decay"] = nullptr;
    }
    j["lyapunov"] = jl;
  } else {
    j["lyapunov"] = nullptr;
  }

  j["fits"] = {{"gamma_u", optional_json(oc.fit_u.gamma)},
               {"gamma_u_note", oc.fit_u.note},
               {"gamma_v", optional_json(oc.fit_v.gamma)},
               {"gamma_v_note", oc.fit_v.note}};
  j["steps"] = {{"accepted", oc.trajectory.steps_accepted},
                {"rejected", oc.trajectory.steps_rejected}};
  j["records"] = recs.size();
  return j.dump(2) + "\n";
}

}  // namespace

SimulationOutcome run_simulate(const ExperimentConfig& cfg) {
  Params p = cfg.params;
  p.dim = cfg.grid_dim;
  SimulationOutcome out = run_core(cfg, p, cfg.initial);
  out.csv_text = trajectory_csv(out.trajectory.records);
  out.summary_json = summary_json_text(cfg, p, out);
  if (!cfg.output.csv_path.empty()) write_text_file(cfg.output.csv_path, out.csv_text);
  if (!cfg.output.summary_path.empty())
    write_text_file(cfg.output.summary_path, out.summary_json);
  return out;
}

SweepOutcome run_sweep(const ExperimentConfig& cfg) {
  if (cfg.sweep.u_amp_scale != "none" && cfg.sweep.u_amp_scale != "inv-mu-kappa")
    fail(ErrorKind::Config, "sweep.u_amp_scale: expected none or inv-mu-kappa");

  const std::vector<double> a_axis =
      cfg.sweep.a.empty() ? std::vector<double>{cfg.params.a} : cfg.sweep.a;
  const std::vector<double> chi_axis =
      cfg.sweep.chi.empty() ? std::vector<double>{cfg.params.chi} : cfg.sweep.chi;
  const std::vector<double> mu_axis =
      cfg.sweep.mu.empty() ? std::vector<double>{cfg.params.mu} : cfg.sweep.mu;

  SweepOutcome out;
  out.csv_text =
      "index,a,chi,mu,status,eta0,gamma_u,gamma_v,rate_bound,cond_a_ok,"
      "cond_chi_ok,margin_a,margin_chi,lyap_violations,w_pos_sup\n";

  int index = 0;
  for (double a : a_axis) {
    for (double chi : chi_axis) {
      for (double mu : mu_axis) {
        SweepRow row;
        row.index = index++;
        row.params = cfg.params;
        row.params.a = a;
        row.params.chi = chi;
        row.params.mu = mu;
        row.params.dim = cfg.grid_dim;
        try {
          InitialSpec ispec = cfg.initial;
          if (cfg.sweep.u_amp_scale == "inv-mu-kappa") {
            const KappaQ0 kq = select_kappa_q0(row.params);
            ispec.u_scale *= std::pow(mu, -1.0 / kq.kappa);
          }
          const SimulationOutcome oc = run_core(cfg, row.params, ispec);
          row.status = to_string(oc.trajectory.status);
          row.eta0 = oc.eta0_run;
          if (oc.fit_u.gamma) row.gamma_u = *oc.fit_u.gamma;
          if (oc.fit_v.gamma) row.gamma_v = *oc.fit_v.gamma;
          if (oc.consts) row.rate_bound = oc.consts->rate_bound;
          row.conditions = oc.conditions;
          if (oc.decay) row.lyap_violations = oc.decay->violations;
          if (oc.sup_w_pos) row.w_pos_sup = *oc.sup_w_pos;
        } catch (const Error& e) {
          row.status = std::string("error_") + kind_name(e.kind());
        }
        out.csv_text += std::to_string(row.index);
        out.csv_text += ',' + format_double(row.params.a);
        out.csv_text += ',' + format_double(row.params.chi);
        out.csv_text += ',' + format_double(row.params.mu);
        out.csv_text += ',' + row.status;
        out.csv_text += ',' + format_double(row.eta0);
        out.csv_text += ',' + format_double(row.gamma_u);
        out.csv_text += ',' + format_double(row.gamma_v);
        out.csv_text += ',' + format_double(row.rate_bound);
        out.csv_text += row.conditions.cond_a_ok ? ",true" : ",false";
        out.csv_text += row.conditions.cond_chi_ok ? ",true" : ",false";
        out.csv_text += ',' + format_double(row.conditions.margin_a);
        out.csv_text += ',' + format_double(row.conditions.margin_chi);
        out.csv_text += ',' + std::to_string(row.lyap_violations);
        out.csv_text += ',' + format_double(row.w_pos_sup);
        out.csv_text += '\n';
        out.rows.push_back(std::move(row));
      }
    }
  }
  if (!cfg.output.sweep_csv_path.empty())
    write_text_file(cfg.output.sweep_csv_path, out.csv_text);
  return out;
}

std::string check_conditions_json(double a, double chi, int dim) {
  Params p;
  p.a = a;
  p.chi = chi;
  p.mu = 1.0;  // conditions do not involve mu
  p.dim = dim;
  const ConditionReport rep = check_boundedness_conditions(p);
  nlohmann::ordered_json j;
  j["a"] = a;
  j["chi"] = chi;
  j["dim"] = dim;
  j["conditions"] = conditions_json(rep);
  j["satisfied"] = rep.cond_a_ok && rep.cond_chi_ok;
  return j.dump(2) + "\n";
}

}  // namespace kssim
