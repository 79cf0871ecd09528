#pragma once

#include <string>
#include <vector>

#include "kssim/initial_data.hpp"
#include "kssim/integrator.hpp"
#include "kssim/model.hpp"

namespace kssim {

struct OutputSpec {
  std::string csv_path;      // trajectory CSV; empty disables the file
  std::string summary_path;  // summary JSON; empty disables the file
  std::string sweep_csv_path;
};

struct SweepSpec {
  // Axis values for the parameter grid; an empty axis means the single value
  // from [params]. Row order is the cartesian product with a outermost and
  // mu innermost.
  std::vector<double> a;
  std::vector<double> chi;
  std::vector<double> mu;
  // "none" or "inv-mu-kappa" (scale the initial u field by mu^(-1/kappa)).
  std::string u_amp_scale = "none";
};

// Everything a run needs, parsed from one INI-style file: [section] headers,
// key = value lines, # or ; comments, strict unknown-key errors. params.dim
// is derived from the grid kind, never set directly.
struct ExperimentConfig {
  Params params;
  int grid_dim = 1;
  double length_x = 1.0;
  double length_y = 1.0;
  int nx = 64;
  int ny = 64;
  StepControl control;
  double horizon = 50.0;
  double sample_every = 0.25;
  double conv_tol = 1e-6;
  bool transport_only = false;
  double eta0_hint = 0.0;  // <= 0 means "use min(v0)"
  InitialSpec initial;
  OutputSpec output;
  SweepSpec sweep;
};

Grid make_grid(const ExperimentConfig& cfg);

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// Applies one "section.key=value" assignment on top of a parsed config
// (CLI overrides). Unknown keys are config errors, same as in the file.
void apply_override(ExperimentConfig& cfg, const std::string& assignment);

}  // namespace kssim
