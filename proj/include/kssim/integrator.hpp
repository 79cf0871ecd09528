#pragma once

#include <vector>

#include "kssim/diagnostics.hpp"
#include "kssim/grid.hpp"
#include "kssim/model.hpp"
#include "kssim/operators.hpp"

namespace kssim {

inline constexpr int kGrowthPatience = 20;    // acceptances before dt grows
inline constexpr double kGrowthFactor = 1.25; // growth per patience window

// Step acceptance guards, in the order they are checked.
enum class Guard { None, NonFinite, NegativeU, VFloor, UCap };
const char* to_string(Guard g);

struct StepControl {
  double dt_init = 1e-3;
  double dt_min = 1e-12;
  double safety = 0.9;     // in (0, 1]
  double cfl_diff = 0.2;   // in (0, 0.25]
  double v_floor = 1e-10;
  double u_cap = 1e6;
  // Fixed-step mode disables halving and growth; a rejected step terminates
  // the run immediately. Used by temporal-order tests.
  bool fixed_dt = false;
};

void validate(const StepControl& c);

// Largest dt the explicit scheme accepts: safety * cfl_diff * min(h)^2.
double stability_dt_bound(const Grid& g, const StepControl& c);

struct StepResult {
  Guard guard = Guard::None;
  State state;        // meaningful only when accepted
  double min_v = 0.0; // of the accepted candidate
  bool accepted() const { return guard == Guard::None; }
};

// One classical RK4 step. dt above the stability bound is a domain error
// raised before any arithmetic; guard violations come back as rejections.
StepResult step(const State& s, const Params& p, const StepControl& c, double dt,
                RhsTerms terms = RhsTerms::Full);

enum class RunStatus {
  CompletedHorizon,
  ConvergedEarly,
  VFloorHit,
  BlowUpSuspected,
  StepUnderflow
};
const char* to_string(RunStatus s);

struct Trajectory {
  std::vector<DiagnosticsRecord> records;
  RunStatus status = RunStatus::CompletedHorizon;
  State final_state;
  // Minimum of v over every accepted step, not just sampled ones; this is the
  // conservative empirical stand-in for the uniform lower bound on v.
  double min_v_over_run = 0.0;
  long long steps_accepted = 0;
  long long steps_rejected = 0;
};

// Advances to the horizon with deterministic adaptive stepping: halve the
// attempted dt on rejection, grow by kGrowthFactor after kGrowthPatience
// consecutive acceptances, always capped by the stability bound. Records a
// diagnostics row at t = 0, at every multiple of sample_every (landed on
// exactly), and at the horizon. Early convergence (conv_tol > 0 in diag) ends
// the run with ConvergedEarly; a rejection cascade that pushes dt below
// dt_min ends it with the status matching the blocking guard.
Trajectory simulate(const State& initial, const Params& p, const StepControl& c,
                    double horizon, double sample_every, const DiagnosticsSpec& diag,
                    RhsTerms terms = RhsTerms::Full);

// True once the last 5 records have both max-norm deviations below tol.
bool detect_convergence(const std::vector<DiagnosticsRecord>& records,
                        const Params& p, double tol);

}  // namespace kssim
