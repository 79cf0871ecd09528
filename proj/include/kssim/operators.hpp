#pragma once

#include <iosfwd>

#include "kssim/grid.hpp"
#include "kssim/model.hpp"

namespace kssim {

// Spatial operators. All use the conservative interface-flux form with zero
// flux through the boundary, so cell sums telescope exactly.

// Second-order 3-point (1D) / 5-point (2D) stencil; zero-flux boundary via
// ghost reflection, i.e. boundary interface fluxes are 0.
Field laplacian(const Field& f);
void laplacian_into(const Field& f, Field& out);

// Divergence of chi (u/v) grad v with interface flux
// chi * mean(u) / mean(v) * (dv / h), arithmetic interface means, zero
// boundary flux. Throws Singularity when min(v) <= 0.
Field chemotactic_divergence(const Field& u, const Field& v, double chi);
void chemotactic_divergence_into(const Field& u, const Field& v, double chi, Field& out);

// TransportOnly is a validation mode: diffusion and chemotaxis with the
// reaction terms of both equations disabled, so both cell sums are conserved.
enum class RhsTerms { Full, TransportOnly };

struct Rhs {
  Field du;
  Field dv;
};

// du/dt = lap(u) - chemotactic_divergence(u, v, chi) + a u - mu u^2
// dv/dt = lap(v) - v + u
Rhs rhs(const State& s, const Params& p, RhsTerms terms = RhsTerms::Full);
void rhs_into(const State& s, const Params& p, RhsTerms terms, Field& du, Field& dv);

// Midpoint quadrature: sum of the cellwise integrand times cell volume.
// Throws Evaluation on a nonfinite integrand term (power overloads also
// throw Singularity on a nonpositive base under a negative or fractional
// exponent, checked by the caller contract).
double integrate_cellwise(const Field& f);
double integrate_cellwise(const Field& f, double exponent);
double integrate_cellwise(const Field& a, double exp_a, const Field& b, double exp_b);

// Debug snapshot: one row per cell with index, center coordinates, value.
void write_field_csv(const Field& f, std::ostream& os);

}  // namespace kssim
