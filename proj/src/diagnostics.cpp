#include "kssim/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "kssim/operators.hpp"

namespace kssim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// U - 1 - ln U written in the deviation d = U - 1. The series branch avoids
// the cancellation of d against log1p(d) when both are tiny.
double h_of(double d) {
  if (std::abs(d) < 1e-4) return d * d * (0.5 + d * (-1.0 / 3.0 + d * 0.25));
  return d - std::log1p(d);
}

}  // namespace

std::string csv_row(const DiagnosticsRecord& r) {
  const double cols[12] = {r.t,     r.mass_u,     r.l2_v,       r.grad_l2_v,
                           r.min_v, r.max_u,      r.linf_u_dev, r.linf_v_dev,
                           r.w_neg, r.w_pos,      r.F,          r.G};
  std::string row;
  char buf[40];
  for (int i = 0; i < 12; ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", cols[i]);
    if (i) row += ',';
    row += buf;
  }
  return row;
}

DiagnosticsSpec canonical_diagnostics_spec(const Params& p, double eta0_hint,
                                           double conv_tol) {
  validate(p);
  DiagnosticsSpec spec;
  spec.conv_tol = conv_tol;
  if (auto pg = p_g_range(p.a, p.chi); pg && !pg->unit.empty()) {
    const double pw = pg->unit.midpoint();
    if (pw > 0.0 && pw < 1.0) {
      const double q = kWnegExponentMargin * q1_plus(pw, p.chi);
      spec.w_neg_exp = {{-pw, -q}};
    }
  }
  try {
    const KappaQ0 kq = select_kappa_q0(p);
    spec.w_pos_exp = {{kq.kappa, -kq.q0}};
  } catch (const Error&) {
  }
  try {
    spec.lyap = lyapunov_constants(p, eta0_hint);
  } catch (const Error&) {
  }
  return spec;
}

double grad_sq_integral(const Field& v) {
  const Grid& g = v.grid;
  if (v.values.size() != static_cast<size_t>(g.total_cells()))
    fail(ErrorKind::Domain, "grad_sq_integral: field size mismatch");
  const int nx = g.cells[0], ny = g.cells[1];
  const double ihx = 1.0 / g.h[0], ihy = 1.0 / g.h[1];
  const auto& a = v.values;
  double sum = 0.0;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i + 1 < nx; ++i) {
      const double d = (a[g.index(i + 1, j)] - a[g.index(i, j)]) * ihx;
      sum += d * d;
    }
  if (ny > 1)
    for (int j = 0; j + 1 < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const double d = (a[g.index(i, j + 1)] - a[g.index(i, j)]) * ihy;
        sum += d * d;
      }
  return sum * g.cell_volume();
}

double weighted_integral(const Field& u, const Field& v, double p, double q) {
  if (!(u.grid == v.grid))
    fail(ErrorKind::Domain, "weighted_integral: fields must share one grid");
  if (p < 0.0 && !(min_value(u) > 0.0))
    fail(ErrorKind::Singularity, "weighted_integral: negative power of a nonpositive u");
  if (q < 0.0 && !(min_value(v) > 0.0))
    fail(ErrorKind::Singularity, "weighted_integral: negative power of a nonpositive v");
  return integrate_cellwise(u, p, v, q);
}

double lyapunov_F(const State& s, const Params& p, double L) {
  validate(p);
  if (!(std::isfinite(L) && L > 0.0))
    fail(ErrorKind::Domain, "lyapunov_F: L must be positive");
  if (!(min_value(s.u) > 0.0))
    fail(ErrorKind::Singularity, "lyapunov_F: u must be strictly positive");
  const double star = p.a / p.mu, inv_star = p.mu / p.a;
  double sum_h = 0.0, sum_v2 = 0.0;
  for (size_t i = 0; i < s.u.values.size(); ++i) {
    sum_h += h_of(inv_star * s.u.values[i] - 1.0);
    const double V = s.v.values[i] - star;
    sum_v2 += V * V;
  }
  const double vol = s.u.grid.cell_volume();
  return sum_h * vol + 0.5 * L * (sum_v2 * vol);
}

double lyapunov_G(const State& s, const Params& p, const LyapunovConstants& c) {
  validate(p);
  if (!(min_value(s.u) > 0.0))
    fail(ErrorKind::Singularity, "lyapunov_G: u must be strictly positive");
  const double star = p.a / p.mu, inv_star = p.mu / p.a;
  double sum_u = 0.0, sum_v2 = 0.0;
  for (size_t i = 0; i < s.u.values.size(); ++i) {
    const double d = inv_star * s.u.values[i] - 1.0;
    sum_u += d * d;
    const double V = s.v.values[i] - star;
    sum_v2 += V * V;
  }
  const double vol = s.u.grid.cell_volume();
  return c.G0 * (sum_u * vol + 0.5 * c.L * (sum_v2 * vol));
}

DiagnosticsRecord record_diagnostics(const State& s, const Params& p,
                                     const DiagnosticsSpec& spec) {
  validate(p);
  validate_admissible(s);
  DiagnosticsRecord r;
  r.t = s.t;
  r.mass_u = integrate_cellwise(s.u);
  r.l2_v = integrate_cellwise(s.v, 2.0);
  r.grad_l2_v = grad_sq_integral(s.v);
  r.min_v = min_value(s.v);
  r.max_u = max_value(s.u);

  const double star = p.a / p.mu, inv_star = p.mu / p.a;
  const double min_u = min_value(s.u);
  double dev_u = 0.0, dev_v = 0.0, sum_h = 0.0, sum_v2 = 0.0, sum_u1 = 0.0;
  for (size_t i = 0; i < s.u.values.size(); ++i) {
    dev_u = std::max(dev_u, std::abs(s.u.values[i] - star));
    dev_v = std::max(dev_v, std::abs(s.v.values[i] - star));
    const double d = inv_star * s.u.values[i] - 1.0;
    if (min_u > 0.0) sum_h += h_of(d);
    sum_u1 += d * d;
    const double V = s.v.values[i] - star;
    sum_v2 += V * V;
  }
  const double vol = s.u.grid.cell_volume();
  r.linf_u_dev = dev_u;
  r.linf_v_dev = dev_v;
  r.int_h_U = min_u > 0.0 ? sum_h * vol : kInf;
  r.int_V2 = sum_v2 * vol;
  r.int_U1sq = sum_u1 * vol;

  // Divergent-but-meaningful integrals record as +inf; regimes with no valid
  // exponents or constants record as NaN.
  if (!spec.w_neg_exp) {
    r.w_neg = kNan;
  } else {
    const auto [ep, eq] = *spec.w_neg_exp;
    if ((ep < 0.0 && !(min_u > 0.0)) || (eq < 0.0 && !(r.min_v > 0.0)))
      r.w_neg = kInf;
    else
      try {
        r.w_neg = weighted_integral(s.u, s.v, ep, eq);
      } catch (const Error&) {
        r.w_neg = kInf;
      }
  }
  if (!spec.w_pos_exp) {
    r.w_pos = kNan;
  } else {
    const auto [ep, eq] = *spec.w_pos_exp;
    if ((ep < 0.0 && !(min_u > 0.0)) || (eq < 0.0 && !(r.min_v > 0.0)))
      r.w_pos = kInf;
    else
      try {
        r.w_pos = weighted_integral(s.u, s.v, ep, eq);
      } catch (const Error&) {
        r.w_pos = kInf;
      }
  }
  if (!spec.lyap) {
    r.F = kNan;
    r.G = kNan;
  } else {
    r.F = r.int_h_U + 0.5 * spec.lyap->L * r.int_V2;
    r.G = spec.lyap->G0 * (r.int_U1sq + 0.5 * spec.lyap->L * r.int_V2);
  }
  return r;
}

DecayCheck check_lyapunov_decay(const std::vector<DiagnosticsRecord>& records,
                                const Params& p, const LyapunovConstants& consts,
                                double slack, double abs_tol) {
  validate(p);
  DecayCheck out;
  auto f_of = [&](const DiagnosticsRecord& r) {
    return r.int_h_U + 0.5 * consts.L * r.int_V2;
  };
  auto g_of = [&](const DiagnosticsRecord& r) {
    return consts.G0 * (r.int_U1sq + 0.5 * consts.L * r.int_V2);
  };
  for (size_t k = 0; k + 1 < records.size(); ++k) {
    const double f0 = f_of(records[k]), f1 = f_of(records[k + 1]);
    const double g0 = g_of(records[k]);
    const double dt = records[k + 1].t - records[k].t;
    if (!std::isfinite(f0) || !std::isfinite(f1) || !std::isfinite(g0) ||
        !(dt > 0.0)) {
      ++out.intervals_skipped;
      continue;
    }
    ++out.intervals_checked;
    const double margin = (f1 - f0) + (1.0 - slack) * g0 * dt;
    out.worst_margin = std::max(out.worst_margin, margin);
    if (margin > abs_tol) ++out.violations;
  }
  return out;
}

double fit_decay_rate(const std::vector<std::pair<double, double>>& series,
                      FitWindow window) {
  size_t start = series.size();
  for (size_t i = 0; i < series.size(); ++i)
    if (series[i].second < window.start_value_threshold) {
      start = i;
      break;
    }
  if (start == series.size())
    fail(ErrorKind::Insufficient, "fit: no sample enters the window");

  std::vector<std::pair<double, double>> kept;
  for (size_t i = start; i < series.size(); ++i) {
    const auto& s = series[i];
    if (window.value_floor > 0.0 && s.second < window.value_floor) continue;
    if (!(s.second > 0.0))
      fail(ErrorKind::Domain, "fit: nonpositive value in the fitting window");
    if (!std::isfinite(s.first) || !std::isfinite(s.second))
      fail(ErrorKind::Domain, "fit: nonfinite sample");
    kept.push_back(s);
  }
  if (kept.size() < 8)
    fail(ErrorKind::Insufficient, "fit: fewer than 8 usable samples");

  double st = 0.0, sy = 0.0;
  for (const auto& [t, val] : kept) {
    st += t;
    sy += std::log(val);
  }
  const double n = static_cast<double>(kept.size());
  const double mt = st / n, my = sy / n;
  double num = 0.0, den = 0.0;
  for (const auto& [t, val] : kept) {
    const double dt = t - mt;
    num += dt * (std::log(val) - my);
    den += dt * dt;
  }
  if (!(den > 0.0)) fail(ErrorKind::Insufficient, "fit: degenerate time axis");
  return -(num / den);
}

EtaEstimate estimate_eta0(const std::vector<DiagnosticsRecord>& records) {
  if (records.empty())
    fail(ErrorKind::Insufficient, "estimate_eta0: empty trajectory");
  EtaEstimate out{records[0].min_v, records[0].t};
  for (const auto& r : records)
    if (r.min_v < out.eta0) {
      out.eta0 = r.min_v;
      out.t_of_min = r.t;
    }
  return out;
}

}  // namespace kssim
