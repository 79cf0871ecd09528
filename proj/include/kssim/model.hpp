#pragma once

#include <optional>

#include "kssim/errors.hpp"

namespace kssim {

// Parameters of the chemotaxis system
//   u_t = lap(u) - chi div((u/v) grad v) + a u - mu u^2
//   v_t = lap(v) - v + u
// on a box with zero-flux boundaries. dim is the spatial dimension of the
// analytic setting (simulation supports dim 1 and 2; the constants below are
// valid for any dim >= 1).
struct Params {
  double a = 1.0;    // growth rate
  double mu = 1.0;   // logistic damping
  double chi = 0.5;  // sensitivity strength
  int dim = 1;

  // Validation mode: permits a, mu, chi to be zero (e.g. transport-only
  // conservation runs). Never admissible for the analytic condition checks.
  bool degenerate_ok = false;
};

// Throws Domain unless a, mu, chi are positive finite and dim >= 1
// (nonnegative finite when degenerate_ok).
void validate(const Params& p);

// Open interval (lo, hi). Empty when lo >= hi.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool empty() const { return !(lo < hi); }
  bool contains(double x) const { return lo < x && x < hi; }
  double midpoint() const { return 0.5 * (lo + hi); }
};

Interval intersect(const Interval& a, const Interval& b);

// Sufficient conditions for global boundedness of the system, with signed
// slack so callers can enforce safety margins.
struct ConditionReport {
  bool cond_a_ok = false;   // a > chi^2/4 when chi <= 2, a > chi - 1 when chi > 2
  bool cond_chi_ok = false; // always for dim 1; chi < sqrt(2/dim) for dim >= 2
  double margin_a = 0.0;    // a minus its threshold
  double margin_chi = 0.0;  // sqrt(2/dim) - chi; +inf for dim 1
};

ConditionReport check_boundedness_conditions(const Params& p);

// Lower edge of the admissible exponent window for the negative-power
// integral int u^-p v^-q: returns (p+1)/2 * (sqrt(1 + p chi^2) - 1).
// Requires 0 < p < 1.
double q1_plus(double p, double chi);

// Exponent window for p in the negative-power integral. Defined when
// (1+a)^2 > chi^2; `unit` is the intersection with (0,1). nullopt when the
// discriminant is negative; an empty interval when it is exactly zero.
struct PGRange {
  Interval full;
  Interval unit;
};
std::optional<PGRange> p_g_range(double a, double chi);

// Admissible q window for the positive-power integral int u^p v^-q:
// ((p-1)/2 (1 - sqrt(1 - p chi^2)), (p-1)/2 (1 + sqrt(1 - p chi^2))).
// Requires p > 1 (Domain) and p chi^2 < 1 (EmptyWindow).
Interval q2_range(double p, double chi);

// Canonical (kappa, q0) for the damping-scaling check: kappa is the midpoint
// of (dim/2, 1/chi^2), nudged above 1 when the midpoint is not, and q0 the
// midpoint of q2_range(kappa) intersected with (0, dim/2).
struct KappaQ0 {
  double kappa = 0.0;
  double q0 = 0.0;
  Interval kappa_window;  // (dim/2, 1/chi^2)
  Interval q0_window;     // q2_range(kappa) intersected with (0, dim/2)
};
KappaQ0 select_kappa_q0(const Params& p);

// Constants of the Lyapunov functional F = int(U - 1 - ln U) + (L/2) int V^2
// with U = (mu/a) u, V = v - a/mu, built from a measured uniform lower bound
// eta0 of v.
struct LyapunovConstants {
  double eta0 = 0.0;
  double k0 = 0.0;            // 1/eta0^2, bounds 1/v^2
  Interval L_window;          // (chi^2 k0 / 4, 2 mu^2 / a^2)
  double L = 0.0;             // strictly inside L_window
  double mu_threshold = 0.0;  // max(1, a chi k0 sqrt(2)/4); mu must exceed it
  double G0 = 0.0;            // min(a - (L/2)(a/mu)^2, L - chi^2 k0/4) > 0
  double rate_bound = 0.0;    // G0/(dim+2), lower bound on the decay rate
};

// Default L equalizes the two G0 branches: L* = (a + chi^2 k0/4) /
// (1 + a^2/(2 mu^2)), which maximizes G0 over the window. Throws Threshold
// when mu <= mu_threshold, Infeasible when the window is empty (or the
// default L* falls outside it / yields G0 <= 0), Domain when an explicit
// L_choice lies outside the window.
LyapunovConstants lyapunov_constants(const Params& p, double eta0,
                                     std::optional<double> L_choice = std::nullopt);

}  // namespace kssim
