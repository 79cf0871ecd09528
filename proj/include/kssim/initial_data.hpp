#pragma once

#include <string>

#include "kssim/grid.hpp"

namespace kssim {

enum class GeneratorKind { Constant, GaussianBump, RandomFourier };

GeneratorKind generator_from_name(const std::string& name);
const char* to_string(GeneratorKind k);

// One field's generator. Only the fields relevant to `kind` are read:
// Constant uses value; GaussianBump uses center_x/center_y (domain units),
// width, amplitude, floor; RandomFourier uses offset, amplitude, modes
// (cosine modes only, so the discrete boundary flux is zero by construction).
struct FieldSpec {
  GeneratorKind kind = GeneratorKind::Constant;
  double value = 0.2;
  double center_x = 0.5;
  double center_y = 0.5;
  double width = 0.1;
  double amplitude = 0.1;
  double floor = 0.0;
  double offset = 1.0;
  int modes = 3;
};

struct InitialSpec {
  FieldSpec u;
  FieldSpec v;
  unsigned long long seed = 0;
  // Post-generation multiplier on the whole u field (used by sweeps that
  // rescale initial mass against mu); must be positive.
  double u_scale = 1.0;
};

// Builds an admissible state: u >= 0 and not identically zero, v > 0.
// The v field's analytic lower bound (value, floor, or offset minus the
// fourier amplitude budget) must be positive, and u's must be nonnegative;
// violations are config errors raised before any simulation work.
State generate_initial_data(const InitialSpec& spec, const Grid& g);

}  // namespace kssim
