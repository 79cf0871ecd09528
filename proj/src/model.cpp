#include "kssim/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kssim {

void validate(const Params& p) {
  auto ok = [&](double x) {
    return std::isfinite(x) && (p.degenerate_ok ? x >= 0.0 : x > 0.0);
  };
  if (!ok(p.a) || !ok(p.mu) || !ok(p.chi))
    fail(ErrorKind::Domain, "params: a, mu, chi must be positive finite");
  if (p.dim < 1) fail(ErrorKind::Domain, "params: dim must be >= 1");
}

Interval intersect(const Interval& a, const Interval& b) {
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

ConditionReport check_boundedness_conditions(const Params& p) {
  validate(p);
  if (!(p.a > 0.0) || !(p.mu > 0.0) || !(p.chi > 0.0))
    fail(ErrorKind::Domain, "condition check requires strictly positive a, mu, chi");

  ConditionReport r;
  const double thr_a = (p.chi <= 2.0) ? 0.25 * p.chi * p.chi : p.chi - 1.0;
  r.margin_a = p.a - thr_a;
  r.cond_a_ok = r.margin_a > 0.0;
  if (p.dim == 1) {
    r.margin_chi = std::numeric_limits<double>::infinity();
    r.cond_chi_ok = true;
  } else {
    r.margin_chi = std::sqrt(2.0 / p.dim) - p.chi;
    r.cond_chi_ok = r.margin_chi > 0.0;
  }
  return r;
}

double q1_plus(double p, double chi) {
  if (!(p > 0.0) || !(p < 1.0)) fail(ErrorKind::Domain, "q1_plus: p must be in (0,1)");
  if (!(chi > 0.0)) fail(ErrorKind::Domain, "q1_plus: chi must be positive");
  // sqrt(1+x)-1 written as x/(sqrt(1+x)+1) to stay accurate for tiny x.
  const double x = p * chi * chi;
  return 0.5 * (p + 1.0) * x / (std::sqrt(1.0 + x) + 1.0);
}

std::optional<PGRange> p_g_range(double a, double chi) {
  if (!(a > 0.0) || !(chi > 0.0)) fail(ErrorKind::Domain, "p_g_range: a, chi must be positive");
  const double disc = (1.0 + a) * (1.0 + a) - chi * chi;
  if (disc < 0.0) return std::nullopt;
  const double spread = 2.0 * a * std::sqrt(disc);
  const double base = 2.0 * a * a + 2.0 * a - chi * chi;
  const double inv = 1.0 / (chi * chi);
  PGRange r;
  r.full = {(base - spread) * inv, (base + spread) * inv};
  r.unit = intersect(r.full, {0.0, 1.0});
  return r;
}

Interval q2_range(double p, double chi) {
  if (!(p > 1.0)) fail(ErrorKind::Domain, "q2_range: p must exceed 1");
  if (!(chi > 0.0)) fail(ErrorKind::Domain, "q2_range: chi must be positive");
  const double x = p * chi * chi;
  if (!(x < 1.0)) fail(ErrorKind::EmptyWindow, "q2_range: p chi^2 must be below 1");
  const double root = std::sqrt(1.0 - x);
  const double half = 0.5 * (p - 1.0);
  return {half * (1.0 - root), half * (1.0 + root)};
}

KappaQ0 select_kappa_q0(const Params& p) {
  validate(p);
  if (!(p.chi > 0.0)) fail(ErrorKind::Domain, "select_kappa_q0: chi must be positive");

  const double half_n = 0.5 * p.dim;
  const double inv_chi2 = 1.0 / (p.chi * p.chi);
  if (!(half_n < inv_chi2))
    fail(ErrorKind::Infeasible, "select_kappa_q0: requires chi < sqrt(2/dim)");

  KappaQ0 out;
  out.kappa_window = {half_n, inv_chi2};
  out.kappa = out.kappa_window.midpoint();
  if (out.kappa <= 1.0) {
    // The q window below needs kappa > 1; re-center in (1, 1/chi^2).
    if (!(inv_chi2 > 1.0))
      fail(ErrorKind::Infeasible, "select_kappa_q0: no kappa > 1 with kappa chi^2 < 1");
    out.kappa = 0.5 * (1.0 + inv_chi2);
  }
  const Interval q2 = q2_range(out.kappa, p.chi);
  out.q0_window = intersect(q2, {0.0, half_n});
  if (out.q0_window.empty())
    fail(ErrorKind::Infeasible, "select_kappa_q0: empty q0 window");
  out.q0 = out.q0_window.midpoint();
  return out;
}

LyapunovConstants lyapunov_constants(const Params& p, double eta0,
                                     std::optional<double> L_choice) {
  validate(p);
  if (!(p.a > 0.0) || !(p.mu > 0.0) || !(p.chi > 0.0))
    fail(ErrorKind::Domain, "lyapunov_constants: requires strictly positive a, mu, chi");
  if (!(eta0 > 0.0) || !std::isfinite(eta0))
    fail(ErrorKind::Domain, "lyapunov_constants: eta0 must be positive finite");

  LyapunovConstants c;
  c.eta0 = eta0;
  c.k0 = 1.0 / (eta0 * eta0);
  c.mu_threshold = std::max(1.0, p.a * p.chi * c.k0 * std::sqrt(2.0) / 4.0);
  if (!(p.mu > c.mu_threshold))
    fail(ErrorKind::Threshold, "lyapunov_constants: mu must strictly exceed the threshold");

  c.L_window = {0.25 * p.chi * p.chi * c.k0, 2.0 * p.mu * p.mu / (p.a * p.a)};
  if (c.L_window.empty())
    fail(ErrorKind::Infeasible, "lyapunov_constants: empty L window");

  if (L_choice) {
    if (!c.L_window.contains(*L_choice))
      fail(ErrorKind::Domain, "lyapunov_constants: L_choice outside the admissible window");
    c.L = *L_choice;
  } else {
    // Equalizing both branches maximizes their min over the window.
    c.L = (p.a + c.L_window.lo) / (1.0 + 0.5 * p.a * p.a / (p.mu * p.mu));
    if (!c.L_window.contains(c.L))
      fail(ErrorKind::Infeasible, "lyapunov_constants: equalizing L outside the window");
  }

  const double ratio = p.a / p.mu;
  const double branch_u = p.a - 0.5 * c.L * ratio * ratio;
  const double branch_v = c.L - c.L_window.lo;
  c.G0 = std::min(branch_u, branch_v);
  if (!(c.G0 > 0.0))
    fail(ErrorKind::Infeasible, "lyapunov_constants: nonpositive contraction constant");
  c.rate_bound = c.G0 / (p.dim + 2);
  return c;
}

}  // namespace kssim
