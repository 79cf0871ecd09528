#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "kssim/config.hpp"
#include "kssim/diagnostics.hpp"
#include "kssim/integrator.hpp"

namespace kssim {

struct FitOutcome {
  std::optional<double> gamma;
  std::string note;  // "ok", "already_converged", or "unavailable (<kind>)"
};

// Everything run_simulate produces. Records carry F and G rebuilt with the
// constants derived from the measured eta0 when those are feasible.
struct SimulationOutcome {
  Trajectory trajectory;
  ConditionReport conditions{};
  double eta0_run = 0.0;
  EtaEstimate eta_sampled{};
  std::optional<LyapunovConstants> consts;
  std::optional<DecayCheck> decay;
  FitOutcome fit_u;
  FitOutcome fit_v;
  double sup_mass_u = 0.0;
  double sup_l2_v = 0.0;
  double sup_grad_l2_v = 0.0;
  double sup_combined = 0.0;  // max over records of mass_u + l2_v + grad_l2_v
  std::optional<double> sup_w_pos;  // over records with a finite value
  std::optional<double> sup_w_neg;
  std::string csv_text;
  std::string summary_json;
};

// Runs one configured experiment end to end: generate initial data, simulate,
// measure eta0, rebuild the Lyapunov constants and diagnostics from it, check
// decay, fit decay rates, and serialize the trajectory CSV and summary JSON
// (written to cfg.output paths when set). Simulation outcomes are reported in
// the summary, never thrown; config and I/O problems are errors.
SimulationOutcome run_simulate(const ExperimentConfig& cfg);

struct SweepRow {
  int index = 0;
  Params params;
  std::string status;
  double eta0 = std::numeric_limits<double>::quiet_NaN();
  double gamma_u = std::numeric_limits<double>::quiet_NaN();
  double gamma_v = std::numeric_limits<double>::quiet_NaN();
  double rate_bound = std::numeric_limits<double>::quiet_NaN();
  ConditionReport conditions{};
  long long lyap_violations = -1;  // -1 when no constants were available
  double w_pos_sup = std::numeric_limits<double>::quiet_NaN();
};

struct SweepOutcome {
  std::vector<SweepRow> rows;
  std::string csv_text;
};

// Cartesian sweep over the configured (a, chi, mu) axes, a outermost and mu
// innermost, one row per point in that fixed order. Per-point failures are
// recorded in the row's status; the sweep itself never aborts on one point.
SweepOutcome run_sweep(const ExperimentConfig& cfg);

// Hypothesis report for given parameters, as a JSON document.
std::string check_conditions_json(double a, double chi, int dim);

}  // namespace kssim
