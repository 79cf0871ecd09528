#pragma once

#include <array>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kssim/grid.hpp"
#include "kssim/model.hpp"

namespace kssim {

// Tolerances and window choices used by the checks below. All are artifact
// constants; the checks take them as defaulted arguments so tests can tighten
// or loosen them deliberately.
inline constexpr double kLyapunovSlack = 0.2;
inline constexpr double kLyapunovAbsTol = 1e-8;
inline constexpr double kFitValueFloor = 1e-11;
inline constexpr double kFitStartThresholdU = 0.25;
inline constexpr double kWnegExponentMargin = 1.05;

// One sampled row of trajectory diagnostics. w_neg is the negative-exponent
// weighted integral, w_pos the positive/negative mixed one; both are NaN when
// the parameter regime admits no valid exponents and +inf when the state
// makes the integral diverge (a zero u cell under a negative power). F and G
// are assembled from the raw integrals below, so they can be recomputed for a
// different constant set without rerunning the simulation.
struct DiagnosticsRecord {
  double t = 0.0;
  double mass_u = 0.0;
  double l2_v = 0.0;
  double grad_l2_v = 0.0;
  double min_v = 0.0;
  double max_u = 0.0;
  double linf_u_dev = 0.0;
  double linf_v_dev = 0.0;
  double w_neg = 0.0;
  double w_pos = 0.0;
  double F = 0.0;
  double G = 0.0;
  // Raw building blocks: int of (U - 1 - ln U), of V^2, and of (U - 1)^2 with
  // U = (mu/a) u and V = v - a/mu.
  double int_h_U = 0.0;
  double int_V2 = 0.0;
  double int_U1sq = 0.0;
};

inline constexpr const char* kDiagnosticsCsvHeader =
    "t,mass_u,l2_v,grad_l2_v,min_v,max_u,linf_u_dev,linf_v_dev,w_neg,w_pos,F,G";

// Fixed-order CSV row matching kDiagnosticsCsvHeader, %.17g per field.
std::string csv_row(const DiagnosticsRecord& r);

// What to compute per record. Exponent pairs are signed as used, so
// w_neg_exp = (-p, -q) and w_pos_exp = (kappa, -q0).
struct DiagnosticsSpec {
  double conv_tol = 0.0;  // <= 0 disables early-convergence detection
  std::optional<std::array<double, 2>> w_neg_exp;
  std::optional<std::array<double, 2>> w_pos_exp;
  std::optional<LyapunovConstants> lyap;
};

// Fills a DiagnosticsSpec from the model selectors: the negative-exponent
// pair from the midpoint of the admissible p window with q one margin above
// its lower bound, the positive pair from select_kappa_q0, and Lyapunov
// constants from the given lower bound on v. Pieces whose selectors reject
// the parameters are left unset rather than failing the whole thing.
DiagnosticsSpec canonical_diagnostics_spec(const Params& p, double eta0_hint,
                                           double conv_tol = 0.0);

// Discrete Dirichlet energy: sum over interior interfaces of the squared
// difference quotient times cell volume. Boundary interfaces carry no flux
// and contribute zero.
double grad_sq_integral(const Field& v);

// Midpoint-rule integral of u^p v^q with signed exponents.
// Nonpositive base under a negative power raises a singularity error.
double weighted_integral(const Field& u, const Field& v, double p, double q);

// F = int (U - 1 - ln U) + (L/2) int V^2, nonnegative; needs min(u) > 0.
double lyapunov_F(const State& s, const Params& p, double L);

// G = G0 (int (U - 1)^2 + (L/2) int V^2); same precondition.
double lyapunov_G(const State& s, const Params& p, const LyapunovConstants& c);

DiagnosticsRecord record_diagnostics(const State& s, const Params& p,
                                     const DiagnosticsSpec& spec);

struct DecayCheck {
  int intervals_checked = 0;
  int intervals_skipped = 0;  // nonfinite F or G on either end
  int violations = 0;
  double worst_margin = -std::numeric_limits<double>::infinity();
};

// Per-interval decay test F(t_{k+1}) - F(t_k) <= -(1-slack) G(t_k) dt + abs_tol,
// with F and G rebuilt from each record's raw integrals using `consts`.
DecayCheck check_lyapunov_decay(const std::vector<DiagnosticsRecord>& records,
                                const Params& p, const LyapunovConstants& consts,
                                double slack = kLyapunovSlack,
                                double abs_tol = kLyapunovAbsTol);

// Window rule for the exponential fit: start at the first sample whose value
// drops below start_value_threshold, then ignore samples below value_floor
// (the post-convergence roundoff plateau). A nonpositive floor disables the
// trim, in which case nonpositive values in the window are a domain error.
struct FitWindow {
  double start_value_threshold = std::numeric_limits<double>::infinity();
  double value_floor = kFitValueFloor;
};

// Least-squares slope of ln(value) against t over the window; returns
// gamma = -slope. Fewer than 8 usable samples raise an insufficiency error.
double fit_decay_rate(const std::vector<std::pair<double, double>>& series,
                      FitWindow window = {});

struct EtaEstimate {
  double eta0 = 0.0;
  double t_of_min = 0.0;
};

// Infimum of sampled min_v and the first time it is attained.
EtaEstimate estimate_eta0(const std::vector<DiagnosticsRecord>& records);

}  // namespace kssim
