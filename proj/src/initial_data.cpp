#include "kssim/initial_data.hpp"

#include <cmath>
#include <random>

namespace kssim {

namespace {

constexpr unsigned long long kGolden = 0x9E3779B97F4A7C15ULL;

double uniform01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

// Number of random cosine coefficients a fourier spec draws on this grid.
int fourier_coeff_count(const FieldSpec& f, const Grid& g) {
  return g.dim == 1 ? f.modes : 2 * f.modes;
}

// Analytic lower bound of the generated field, before any u_scale.
double min_bound(const FieldSpec& f, const Grid& g) {
  switch (f.kind) {
    case GeneratorKind::Constant:
      return f.value;
    case GeneratorKind::GaussianBump:
      return f.floor;
    case GeneratorKind::RandomFourier:
      return f.offset - f.amplitude * fourier_coeff_count(f, g);
  }
  return 0.0;
}

void check_spec(const FieldSpec& f, const char* which) {
  auto fin = [](double x) { return std::isfinite(x); };
  switch (f.kind) {
    case GeneratorKind::Constant:
      if (!fin(f.value))
        fail(ErrorKind::Config, std::string(which) + ": constant value must be finite");
      break;
    case GeneratorKind::GaussianBump:
      if (!fin(f.center_x) || !fin(f.center_y) || !(f.width > 0.0 && fin(f.width)) ||
          !(f.amplitude >= 0.0 && fin(f.amplitude)) || !fin(f.floor))
        fail(ErrorKind::Config, std::string(which) + ": invalid gaussian-bump spec");
      break;
    case GeneratorKind::RandomFourier:
      if (!fin(f.offset) || !(f.amplitude >= 0.0 && fin(f.amplitude)) || f.modes < 1)
        fail(ErrorKind::Config, std::string(which) + ": invalid random-fourier spec");
      break;
  }
}

Field build(const FieldSpec& f, const Grid& g, std::mt19937_64& rng) {
  Field out = Field::constant(g, 0.0);
  switch (f.kind) {
    case GeneratorKind::Constant:
      for (double& x : out.values) x = f.value;
      break;
    case GeneratorKind::GaussianBump: {
      const double inv2w2 = 1.0 / (2.0 * f.width * f.width);
      for (int j = 0; j < g.cells[1]; ++j)
        for (int i = 0; i < g.cells[0]; ++i) {
          const double dx = g.x_center(i) - f.center_x;
          const double dy = g.dim == 2 ? g.y_center(j) - f.center_y : 0.0;
          out.values[g.index(i, j)] =
              f.floor + f.amplitude * std::exp(-(dx * dx + dy * dy) * inv2w2);
        }
      break;
    }
    case GeneratorKind::RandomFourier: {
      const double pi = std::acos(-1.0);
      std::vector<double> cx(f.modes), cy;
      for (double& c : cx) c = 2.0 * uniform01(rng) - 1.0;
      if (g.dim == 2) {
        cy.resize(f.modes);
        for (double& c : cy) c = 2.0 * uniform01(rng) - 1.0;
      }
      for (int j = 0; j < g.cells[1]; ++j)
        for (int i = 0; i < g.cells[0]; ++i) {
          double sum = 0.0;
          const double x = g.x_center(i);
          for (int m = 1; m <= f.modes; ++m)
            sum += cx[m - 1] * std::cos(m * pi * x / g.extent[0]);
          if (g.dim == 2) {
            const double y = g.y_center(j);
            for (int m = 1; m <= f.modes; ++m)
              sum += cy[m - 1] * std::cos(m * pi * y / g.extent[1]);
          }
          out.values[g.index(i, j)] = f.offset + f.amplitude * sum;
        }
      break;
    }
  }
  return out;
}

}  // namespace

GeneratorKind generator_from_name(const std::string& name) {
  if (name == "constant") return GeneratorKind::Constant;
  if (name == "gaussian-bump") return GeneratorKind::GaussianBump;
  if (name == "random-fourier") return GeneratorKind::RandomFourier;
  fail(ErrorKind::Config, "unknown generator '" + name + "'");
}

const char* to_string(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::Constant:
      return "constant";
    case GeneratorKind::GaussianBump:
      return "gaussian-bump";
    case GeneratorKind::RandomFourier:
      return "random-fourier";
  }
  return "unknown";
}

State generate_initial_data(const InitialSpec& spec, const Grid& g) {
  check_spec(spec.u, "u");
  check_spec(spec.v, "v");
  if (!(std::isfinite(spec.u_scale) && spec.u_scale > 0.0))
    fail(ErrorKind::Config, "u_scale must be positive");
  if (min_bound(spec.u, g) < 0.0)
    fail(ErrorKind::Config, "u spec admits negative values");
  if (!(min_bound(spec.v, g) > 0.0))
    fail(ErrorKind::Config, "v spec does not guarantee a positive minimum");

  // Independent sub-seeded streams so u's draw count never shifts v's field.
  std::mt19937_64 rng_u(spec.seed + kGolden);
  std::mt19937_64 rng_v(spec.seed + 2 * kGolden);

  State s;
  s.t = 0.0;
  s.u = build(spec.u, g, rng_u);
  s.v = build(spec.v, g, rng_v);
  if (spec.u_scale != 1.0)
    for (double& x : s.u.values) x *= spec.u_scale;
  validate_admissible(s);
  return s;
}

}  // namespace kssim
