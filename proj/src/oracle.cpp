#include "kssim/oracle.hpp"

#include <array>
#include <cmath>
#include <functional>

namespace kssim {

namespace {

void require_scalar_inputs(double u0, double a, double mu, double t) {
  if (!(std::isfinite(u0) && u0 >= 0.0))
    fail(ErrorKind::Domain, "oracle: u0 must be finite and nonnegative");
  if (!(std::isfinite(a) && a > 0.0) || !(std::isfinite(mu) && mu > 0.0))
    fail(ErrorKind::Domain, "oracle: a and mu must be finite and positive");
  if (!(std::isfinite(t) && t >= 0.0))
    fail(ErrorKind::Domain, "oracle: t must be finite and nonnegative");
}

double simpson_panel(double fa, double fm, double fb, double width) {
  return width / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson_panel(fa, flm, fm, m - a);
  const double right = simpson_panel(fm, frm, fb, b - m);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth <= 0)
    fail(ErrorKind::Oracle, "oracle: quadrature failed to converge");
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  const double fa = f(a);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double fb = f(b);
  return adaptive_simpson(f, a, b, fa, fm, fb, simpson_panel(fa, fm, fb, b - a), tol, 48);
}

}  // namespace

double logistic_exact(double u0, double a, double mu, double t) {
  require_scalar_inputs(u0, a, mu, t);
  if (u0 == 0.0) return 0.0;
  if (t == 0.0) return u0;
  if (mu * u0 == a) return u0;
  const double decay = std::exp(-a * t);
  return a * u0 / (a * decay + mu * u0 * (1.0 - decay));
}

double homogeneous_v_exact(double u0, double v0, double a, double mu, double t) {
  require_scalar_inputs(u0, a, mu, t);
  if (!(std::isfinite(v0) && v0 >= 0.0))
    fail(ErrorKind::Domain, "oracle: v0 must be finite and nonnegative");
  const double decayed = v0 * std::exp(-t);
  if (t == 0.0) return v0;
  if (u0 == 0.0) return decayed;
  auto integrand = [&](double s) {
    return std::exp(s - t) * logistic_exact(u0, a, mu, s);
  };
  return decayed + integrate(integrand, 0.0, t, 1e-12);
}

Rhs tiny_grid_rhs_oracle(const Field& u, const Field& v, const Params& p) {
  validate(p);
  const Grid& g = u.grid;
  if (g.dim != 1 || g.cells[0] > 8)
    fail(ErrorKind::Domain, "tiny oracle: needs a 1D grid with at most 8 cells");
  if (!(u.grid == v.grid) || u.values.size() != v.values.size() ||
      u.values.size() != static_cast<size_t>(g.total_cells()))
    fail(ErrorKind::Domain, "tiny oracle: fields must share one grid");

  const int n = g.cells[0];
  const double h = g.h[0];
  // Interface k sits between cells k-1 and k; entries 0 and n stay zero so the
  // boundary carries no flux.
  std::array<double, 9> flux_u{}, flux_v{}, flux_c{};
  for (int k = 1; k < n; ++k) {
    const double ul = u.values[k - 1], ur = u.values[k];
    const double vl = v.values[k - 1], vr = v.values[k];
    flux_u[k] = (ur - ul) * (1.0 / h);
    flux_v[k] = (vr - vl) * (1.0 / h);
    flux_c[k] = p.chi * (0.5 * (ul + ur)) / (0.5 * (vl + vr)) * ((vr - vl) * (1.0 / h));
  }

  Rhs out;
  out.du = Field::constant(g, 0.0);
  out.dv = Field::constant(g, 0.0);
  for (int i = 0; i < n; ++i) {
    const double lap_u = (flux_u[i + 1] - flux_u[i]) * (1.0 / h);
    const double lap_v = (flux_v[i + 1] - flux_v[i]) * (1.0 / h);
    const double chem = (flux_c[i + 1] - flux_c[i]) * (1.0 / h);
    const double ui = u.values[i];
    out.du.values[i] = lap_u - chem + (p.a * ui - p.mu * ui * ui);
    out.dv.values[i] = lap_v + (ui - v.values[i]);
  }
  return out;
}

}  // namespace kssim
