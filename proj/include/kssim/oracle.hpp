#pragma once

#include "kssim/grid.hpp"
#include "kssim/model.hpp"
#include "kssim/operators.hpp"

namespace kssim {

// Closed form of u' = a u - mu u^2. Overflow-safe for large a*t; exact at the
// fixed points u0 = 0 and u0 = a/mu and at t = 0.
double logistic_exact(double u0, double a, double mu, double t);

// Reference for v' = -v + u(t) with u the logistic solution above, via
// variation of constants and adaptive Simpson quadrature (abs tol 1e-12).
double homogeneous_v_exact(double u0, double v0, double a, double mu, double t);

// Independent re-implementation of the semi-discrete right-hand side by
// explicit interface-flux enumeration. Restricted to 1D grids with at most
// 8 cells; intentionally shares no code with the production operators.
Rhs tiny_grid_rhs_oracle(const Field& u, const Field& v, const Params& p);

}  // namespace kssim
