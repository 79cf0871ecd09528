#include "kssim/operators.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace kssim {

namespace {

void prepare_out(const Grid& g, Field& out) {
  out.grid = g;
  out.values.resize(static_cast<size_t>(g.total_cells()));
}

void require_same_grid(const Field& a, const Field& b, const char* what) {
  if (!(a.grid == b.grid) || a.values.size() != b.values.size() ||
      a.values.size() != static_cast<size_t>(a.grid.total_cells()))
    fail(ErrorKind::Domain, std::string(what) + ": fields must share one grid");
}

// Interface flux of chi (u/v) grad v with arithmetic means; ih = 1/h of the axis.
inline double chem_flux(double ul, double ur, double vl, double vr, double chi,
                        double ih) {
  return chi * (0.5 * (ul + ur)) / (0.5 * (vl + vr)) * ((vr - vl) * ih);
}

}  // namespace

void laplacian_into(const Field& f, Field& out) {
  const Grid& g = f.grid;
  if (f.values.size() != static_cast<size_t>(g.total_cells()))
    fail(ErrorKind::Domain, "laplacian: field size mismatch");
  prepare_out(g, out);
  const int nx = g.cells[0], ny = g.cells[1];
  const double ihx = 1.0 / g.h[0], ihy = 1.0 / g.h[1];
  const auto& a = f.values;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const int c = i + nx * j;
      const double fxr = (i + 1 < nx) ? (a[c + 1] - a[c]) * ihx : 0.0;
      const double fxl = (i > 0) ? (a[c] - a[c - 1]) * ihx : 0.0;
      double acc = (fxr - fxl) * ihx;
      if (ny > 1) {
        const double fyr = (j + 1 < ny) ? (a[c + nx] - a[c]) * ihy : 0.0;
        const double fyl = (j > 0) ? (a[c] - a[c - nx]) * ihy : 0.0;
        acc += (fyr - fyl) * ihy;
      }
      out.values[c] = acc;
    }
}

Field laplacian(const Field& f) {
  Field out;
  laplacian_into(f, out);
  return out;
}

void chemotactic_divergence_into(const Field& u, const Field& v, double chi,
                                 Field& out) {
  require_same_grid(u, v, "chemotactic_divergence");
  if (!(min_value(v) > 0.0))
    fail(ErrorKind::Singularity, "chemotactic_divergence: v must be strictly positive");
  const Grid& g = u.grid;
  prepare_out(g, out);
  const int nx = g.cells[0], ny = g.cells[1];
  const double ihx = 1.0 / g.h[0], ihy = 1.0 / g.h[1];
  const auto& uu = u.values;
  const auto& vv = v.values;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const int c = i + nx * j;
      const double fxr =
          (i + 1 < nx) ? chem_flux(uu[c], uu[c + 1], vv[c], vv[c + 1], chi, ihx) : 0.0;
      const double fxl =
          (i > 0) ? chem_flux(uu[c - 1], uu[c], vv[c - 1], vv[c], chi, ihx) : 0.0;
      double acc = (fxr - fxl) * ihx;
      if (ny > 1) {
        const double fyr =
            (j + 1 < ny) ? chem_flux(uu[c], uu[c + nx], vv[c], vv[c + nx], chi, ihy) : 0.0;
        const double fyl =
            (j > 0) ? chem_flux(uu[c - nx], uu[c], vv[c - nx], vv[c], chi, ihy) : 0.0;
        acc += (fyr - fyl) * ihy;
      }
      out.values[c] = acc;
    }
}

Field chemotactic_divergence(const Field& u, const Field& v, double chi) {
  Field out;
  chemotactic_divergence_into(u, v, chi, out);
  return out;
}

void rhs_into(const State& s, const Params& p, RhsTerms terms, Field& du, Field& dv) {
  validate(p);
  require_same_grid(s.u, s.v, "rhs");
  if (!(min_value(s.v) > 0.0))
    fail(ErrorKind::Singularity, "rhs: v must be strictly positive");
  const Grid& g = s.u.grid;
  prepare_out(g, du);
  prepare_out(g, dv);
  const int nx = g.cells[0], ny = g.cells[1];
  const double ihx = 1.0 / g.h[0], ihy = 1.0 / g.h[1];
  const bool react = terms == RhsTerms::Full;
  const auto& uu = s.u.values;
  const auto& vv = s.v.values;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const int c = i + nx * j;
      const double uxr = (i + 1 < nx) ? (uu[c + 1] - uu[c]) * ihx : 0.0;
      const double uxl = (i > 0) ? (uu[c] - uu[c - 1]) * ihx : 0.0;
      const double vxr = (i + 1 < nx) ? (vv[c + 1] - vv[c]) * ihx : 0.0;
      const double vxl = (i > 0) ? (vv[c] - vv[c - 1]) * ihx : 0.0;
      const double cxr =
          (i + 1 < nx) ? chem_flux(uu[c], uu[c + 1], vv[c], vv[c + 1], p.chi, ihx) : 0.0;
      const double cxl =
          (i > 0) ? chem_flux(uu[c - 1], uu[c], vv[c - 1], vv[c], p.chi, ihx) : 0.0;
      double lap_u = (uxr - uxl) * ihx;
      double lap_v = (vxr - vxl) * ihx;
      double chem = (cxr - cxl) * ihx;
      if (ny > 1) {
        const double uyr = (j + 1 < ny) ? (uu[c + nx] - uu[c]) * ihy : 0.0;
        const double uyl = (j > 0) ? (uu[c] - uu[c - nx]) * ihy : 0.0;
        const double vyr = (j + 1 < ny) ? (vv[c + nx] - vv[c]) * ihy : 0.0;
        const double vyl = (j > 0) ? (vv[c] - vv[c - nx]) * ihy : 0.0;
        const double cyr =
            (j + 1 < ny) ? chem_flux(uu[c], uu[c + nx], vv[c], vv[c + nx], p.chi, ihy) : 0.0;
        const double cyl =
            (j > 0) ? chem_flux(uu[c - nx], uu[c], vv[c - nx], vv[c], p.chi, ihy) : 0.0;
        lap_u += (uyr - uyl) * ihy;
        lap_v += (vyr - vyl) * ihy;
        chem += (cyr - cyl) * ihy;
      }
      const double uc = uu[c];
      du.values[c] = lap_u - chem + (react ? p.a * uc - p.mu * uc * uc : 0.0);
      dv.values[c] = lap_v + (react ? uc - vv[c] : 0.0);
    }
}

Rhs rhs(const State& s, const Params& p, RhsTerms terms) {
  Rhs out;
  rhs_into(s, p, terms, out.du, out.dv);
  return out;
}

double integrate_cellwise(const Field& f) {
  double sum = 0.0;
  for (double x : f.values) {
    if (!std::isfinite(x)) fail(ErrorKind::Evaluation, "integrate: nonfinite integrand");
    sum += x;
  }
  return sum * f.grid.cell_volume();
}

double integrate_cellwise(const Field& f, double exponent) {
  double sum = 0.0;
  for (double x : f.values) {
    const double term = std::pow(x, exponent);
    if (!std::isfinite(term)) fail(ErrorKind::Evaluation, "integrate: nonfinite integrand");
    sum += term;
  }
  return sum * f.grid.cell_volume();
}

double integrate_cellwise(const Field& a, double exp_a, const Field& b, double exp_b) {
  require_same_grid(a, b, "integrate");
  double sum = 0.0;
  for (size_t i = 0; i < a.values.size(); ++i) {
    const double term = std::pow(a.values[i], exp_a) * std::pow(b.values[i], exp_b);
    if (!std::isfinite(term)) fail(ErrorKind::Evaluation, "integrate: nonfinite integrand");
    sum += term;
  }
  return sum * a.grid.cell_volume();
}

void write_field_csv(const Field& f, std::ostream& os) {
  const Grid& g = f.grid;
  char buf[96];
  if (g.dim == 1) {
    os << "i,x,value\n";
    for (int i = 0; i < g.cells[0]; ++i) {
      std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", i, g.x_center(i), f.values[i]);
      os << buf;
    }
  } else {
    os << "i,j,x,y,value\n";
    for (int j = 0; j < g.cells[1]; ++j)
      for (int i = 0; i < g.cells[0]; ++i) {
        std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g,%.17g\n", i, j, g.x_center(i),
                      g.y_center(j), f.values[g.index(i, j)]);
        os << buf;
      }
  }
}

}  // namespace kssim
