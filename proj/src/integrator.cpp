#include "kssim/integrator.hpp"

#include <algorithm>
#include <cmath>

namespace kssim {

namespace {

struct Scratch {
  Field k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v;
  State stage;
  State cand;

  explicit Scratch(const State& s)
      : k1u(s.u), k1v(s.v), k2u(s.u), k2v(s.v), k3u(s.u), k3v(s.v), k4u(s.u),
        k4v(s.v), stage(s), cand(s) {}
};

// dst = base + w * k for both fields; returns the guard the stage violates,
// if any (stages only need finiteness and a positive v for the rhs).
Guard fill_stage(State& dst, const State& base, double w, const Field& ku,
                 const Field& kv) {
  const size_t n = base.u.values.size();
  bool finite = true;
  double min_v = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < n; ++i) {
    const double u = base.u.values[i] + w * ku.values[i];
    const double v = base.v.values[i] + w * kv.values[i];
    dst.u.values[i] = u;
    dst.v.values[i] = v;
    finite = finite && std::isfinite(u) && std::isfinite(v);
    min_v = std::min(min_v, v);
  }
  if (!finite) return Guard::NonFinite;
  if (!(min_v > 0.0)) return Guard::VFloor;
  return Guard::None;
}

Guard step_core(Scratch& ws, const State& s, const Params& p, const StepControl& c,
                double dt, RhsTerms terms, double& out_min_v) {
  rhs_into(s, p, terms, ws.k1u, ws.k1v);
  const double h2 = 0.5 * dt;
  if (Guard g = fill_stage(ws.stage, s, h2, ws.k1u, ws.k1v); g != Guard::None)
    return g;
  rhs_into(ws.stage, p, terms, ws.k2u, ws.k2v);
  if (Guard g = fill_stage(ws.stage, s, h2, ws.k2u, ws.k2v); g != Guard::None)
    return g;
  rhs_into(ws.stage, p, terms, ws.k3u, ws.k3v);
  if (Guard g = fill_stage(ws.stage, s, dt, ws.k3u, ws.k3v); g != Guard::None)
    return g;
  rhs_into(ws.stage, p, terms, ws.k4u, ws.k4v);

  const double w = dt / 6.0;
  const size_t n = s.u.values.size();
  bool finite = true;
  double min_u = std::numeric_limits<double>::infinity();
  double min_v = std::numeric_limits<double>::infinity();
  double max_u = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < n; ++i) {
    const double u = s.u.values[i] + w * (ws.k1u.values[i] + 2.0 * ws.k2u.values[i] +
                                          2.0 * ws.k3u.values[i] + ws.k4u.values[i]);
    const double v = s.v.values[i] + w * (ws.k1v.values[i] + 2.0 * ws.k2v.values[i] +
                                          2.0 * ws.k3v.values[i] + ws.k4v.values[i]);
    ws.cand.u.values[i] = u;
    ws.cand.v.values[i] = v;
    finite = finite && std::isfinite(u) && std::isfinite(v);
    min_u = std::min(min_u, u);
    min_v = std::min(min_v, v);
    max_u = std::max(max_u, u);
  }
  ws.cand.t = s.t + dt;
  if (!finite) return Guard::NonFinite;
  if (min_u < 0.0) return Guard::NegativeU;
  if (min_v < c.v_floor) return Guard::VFloor;
  if (max_u > c.u_cap) return Guard::UCap;
  out_min_v = min_v;
  return Guard::None;
}

RunStatus terminal_status(Guard g) {
  switch (g) {
    case Guard::VFloor:
      return RunStatus::VFloorHit;
    case Guard::UCap:
    case Guard::NonFinite:
      return RunStatus::BlowUpSuspected;
    default:
      return RunStatus::StepUnderflow;
  }
}

}  // namespace

const char* to_string(Guard g) {
  switch (g) {
    case Guard::None:
      return "none";
    case Guard::NonFinite:
      return "non_finite";
    case Guard::NegativeU:
      return "negative_u";
    case Guard::VFloor:
      return "v_floor";
    case Guard::UCap:
      return "u_cap";
  }
  return "unknown";
}

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::CompletedHorizon:
      return "completed_horizon";
    case RunStatus::ConvergedEarly:
      return "converged_early";
    case RunStatus::VFloorHit:
      return "v_floor_hit";
    case RunStatus::BlowUpSuspected:
      return "blow_up_suspected";
    case RunStatus::StepUnderflow:
      return "step_underflow";
  }
  return "unknown";
}

void validate(const StepControl& c) {
  auto pos = [](double x) { return std::isfinite(x) && x > 0.0; };
  if (!pos(c.dt_init) || !pos(c.dt_min) || !(c.dt_min < c.dt_init))
    fail(ErrorKind::Domain, "step control: need 0 < dt_min < dt_init");
  if (!(c.safety > 0.0 && c.safety <= 1.0))
    fail(ErrorKind::Domain, "step control: safety must lie in (0, 1]");
  if (!(c.cfl_diff > 0.0 && c.cfl_diff <= 0.25))
    fail(ErrorKind::Domain, "step control: cfl_diff must lie in (0, 0.25]");
  if (!pos(c.v_floor) || !pos(c.u_cap))
    fail(ErrorKind::Domain, "step control: v_floor and u_cap must be positive");
}

double stability_dt_bound(const Grid& g, const StepControl& c) {
  validate(c);
  const double h = g.min_h();
  return c.safety * c.cfl_diff * h * h;
}

StepResult step(const State& s, const Params& p, const StepControl& c, double dt,
                RhsTerms terms) {
  validate(p);
  validate(c);
  validate_admissible(s);
  if (!(std::isfinite(dt) && dt > 0.0))
    fail(ErrorKind::Domain, "step: dt must be finite and positive");
  if (dt > stability_dt_bound(s.u.grid, c))
    fail(ErrorKind::Domain, "step: dt exceeds the stability bound");
  Scratch ws(s);
  StepResult out;
  out.guard = step_core(ws, s, p, c, dt, terms, out.min_v);
  if (out.accepted()) out.state = ws.cand;
  return out;
}

Trajectory simulate(const State& initial, const Params& p, const StepControl& c,
                    double horizon, double sample_every, const DiagnosticsSpec& diag,
                    RhsTerms terms) {
  validate(p);
  validate(c);
  validate_admissible(initial);
  if (!(std::isfinite(horizon) && horizon > 0.0))
    fail(ErrorKind::Domain, "simulate: horizon must be finite and positive");
  if (!(std::isfinite(sample_every) && sample_every > 0.0))
    fail(ErrorKind::Domain, "simulate: sample_every must be finite and positive");

  const double bound = stability_dt_bound(initial.u.grid, c);
  double dt = c.fixed_dt ? c.dt_init : std::min(c.dt_init, bound);
  if (dt > bound)
    fail(ErrorKind::Domain, "simulate: fixed dt exceeds the stability bound");

  Trajectory out;
  out.final_state = initial;
  State& st = out.final_state;
  out.min_v_over_run = min_value(st.v);
  out.records.push_back(record_diagnostics(st, p, diag));
  out.status = RunStatus::CompletedHorizon;

  Scratch ws(st);
  long long sample_index = 1;
  double next_sample = sample_every;
  int consec = 0;
  while (st.t < horizon) {
    const double t_target = std::min(next_sample, horizon);
    const double gap = t_target - st.t;
    const bool landing = gap <= dt;
    const double dt_try = landing ? gap : dt;
    double cand_min_v = 0.0;
    const Guard guard = step_core(ws, st, p, c, dt_try, terms, cand_min_v);
    if (guard == Guard::None) {
      ++out.steps_accepted;
      const double new_t = landing ? t_target : st.t + dt_try;
      std::swap(st.u.values, ws.cand.u.values);
      std::swap(st.v.values, ws.cand.v.values);
      st.t = new_t;
      out.min_v_over_run = std::min(out.min_v_over_run, cand_min_v);
      if (landing) {
        out.records.push_back(record_diagnostics(st, p, diag));
        if (t_target == next_sample) {
          ++sample_index;
          next_sample = sample_every * static_cast<double>(sample_index);
        }
        if (diag.conv_tol > 0.0 &&
            detect_convergence(out.records, p, diag.conv_tol)) {
          out.status = RunStatus::ConvergedEarly;
          break;
        }
      }
      if (!c.fixed_dt && ++consec >= kGrowthPatience) {
        dt = std::min(dt * kGrowthFactor, bound);
        consec = 0;
      }
    } else {
      ++out.steps_rejected;
      if (c.fixed_dt) {
        out.status = terminal_status(guard);
        break;
      }
      consec = 0;
      const double halved = 0.5 * dt_try;
      if (halved < c.dt_min) {
        out.status = terminal_status(guard);
        break;
      }
      dt = halved;
    }
  }
  return out;
}

bool detect_convergence(const std::vector<DiagnosticsRecord>& records,
                        const Params& p, double tol) {
  validate(p);
  if (!(tol > 0.0) || records.size() < 5) return false;
  for (size_t i = records.size() - 5; i < records.size(); ++i)
    if (!(records[i].linf_u_dev < tol) || !(records[i].linf_v_dev < tol))
      return false;
  return true;
}

}  // namespace kssim
