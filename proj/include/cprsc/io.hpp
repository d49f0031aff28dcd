#pragma once

// Output writers: legacy ASCII VTK fields with the troubled mask, CSV density
// slices and the plain-text run summary.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cprsc/basis.hpp"
#include "cprsc/cases.hpp"
#include "cprsc/driver.hpp"
#include "cprsc/mesh.hpp"

namespace cprsc {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v == 0.0 ? 0.0 : v);
  return buf;
}

/// Primitive state of element e interpolated at reference point (xi, eta).
inline Primitive interpolate_element(const std::vector<Primitive>& prims, const ElementBasis& basis,
                                     std::size_t e, double xi, double eta) {
  const std::size_t n = basis.size();
  const auto lx = basis.lagrange.values_at(xi);
  const auto ly = basis.lagrange.values_at(eta);
  Vec4 acc{};
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t k = 0; k < n; ++k) acc += (lx[k] * ly[l]) * prims[e * n * n + l * n + k].as_vec();
  return Primitive::from_vec(acc);
}

inline std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace detail

/// Each element is drawn as (N+1)^2 subcell quads whose corners are the
/// flux-point grid, so (N+2)^2 points per element.
inline void write_vtk(const Solver& solver, std::ostream& out) {
  const Mesh& mesh = solver.mesh();
  const ElementBasis& basis = solver.basis();
  const auto prims = solver.primitives(solver.state());
  const auto& fp = solver.geometry().grid().flux_points;
  const std::size_t m = fp.size();
  const std::size_t ne = mesh.num_elements();
  const std::size_t cells_per = (m - 1) * (m - 1);

  out << "# vtk DataFile Version 3.0\n";
  out << "cprsc t=" << detail::fmt(solver.time()) << "\n";
  out << "ASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << ne * m * m << " double\n";
  std::vector<Primitive> point_values;
  point_values.reserve(ne * m * m);
  for (std::size_t e = 0; e < ne; ++e) {
    const auto corners = element_corners(mesh, e);
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t i = 0; i < m; ++i) {
        const Vec2 x = map_to_physical(corners, fp[i], fp[j]);
        out << detail::fmt(x.x) << " " << detail::fmt(x.y) << " 0\n";
        point_values.push_back(detail::interpolate_element(prims, basis, e, fp[i], fp[j]));
      }
    }
  }
  out << "CELLS " << ne * cells_per << " " << ne * cells_per * 5 << "\n";
  for (std::size_t e = 0; e < ne; ++e) {
    const std::size_t base = e * m * m;
    for (std::size_t j = 0; j + 1 < m; ++j)
      for (std::size_t i = 0; i + 1 < m; ++i)
        out << "4 " << base + j * m + i << " " << base + j * m + i + 1 << " "
            << base + (j + 1) * m + i + 1 << " " << base + (j + 1) * m + i << "\n";
  }
  out << "CELL_TYPES " << ne * cells_per << "\n";
  for (std::size_t c = 0; c < ne * cells_per; ++c) out << "9\n";

  out << "CELL_DATA " << ne * cells_per << "\n";
  out << "SCALARS troubled int 1\nLOOKUP_TABLE default\n";
  for (std::size_t e = 0; e < ne; ++e)
    for (std::size_t c = 0; c < cells_per; ++c) out << static_cast<int>(solver.mask()[e]) << "\n";
  out << "SCALARS energy_ratio double 1\nLOOKUP_TABLE default\n";
  for (std::size_t e = 0; e < ne; ++e)
    for (std::size_t c = 0; c < cells_per; ++c) out << detail::fmt(solver.energy()[e]) << "\n";
  out << "SCALARS element int 1\nLOOKUP_TABLE default\n";
  for (std::size_t e = 0; e < ne; ++e)
    for (std::size_t c = 0; c < cells_per; ++c) out << e << "\n";

  out << "POINT_DATA " << point_values.size() << "\n";
  const char* names[4] = {"density", "velocity_x", "velocity_y", "pressure"};
  for (int q = 0; q < 4; ++q) {
    out << "SCALARS " << names[q] << " double 1\nLOOKUP_TABLE default\n";
    for (const auto& w : point_values) out << detail::fmt(w.as_vec()[q]) << "\n";
  }
}

inline void write_vtk(const Solver& solver, const std::filesystem::path& path) {
  auto out = detail::open_output(path);
  write_vtk(solver, out);
  if (!out) throw IoError("write failed for " + path.string());
}

struct SlicePoint {
  double x;
  Primitive w;
};

/// Samples the solution along y = y0: in every element crossing the line,
/// one sample per solution-point line transverse to it, interpolated to y0.
inline std::vector<SlicePoint> slice(const Solver& solver, double y0) {
  const Mesh& mesh = solver.mesh();
  const ElementBasis& basis = solver.basis();
  const auto prims = solver.primitives(solver.state());
  const auto& xi = basis.points.nodes;
  const std::size_t n = basis.size();
  std::vector<SlicePoint> pts;
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    const auto c = element_corners(mesh, e);
    double lo = c[0].y, hi = c[0].y;
    for (const auto& p : c) {
      lo = std::min(lo, p.y);
      hi = std::max(hi, p.y);
    }
    if (y0 < lo || y0 > hi) continue;
    // Walk along the reference direction in which y changes the most.
    const Jacobian j0 = jacobian(c, 0.0, 0.0);
    const bool along_eta = std::abs(j0.y_eta) >= std::abs(j0.y_xi);
    for (std::size_t k = 0; k < n; ++k) {
      // y is linear in the free coordinate s once the other one is fixed.
      const auto pos = [&](double s) {
        return along_eta ? map_to_physical(c, xi[k], s) : map_to_physical(c, s, xi[k]);
      };
      const double ya = pos(-1.0).y, yb = pos(1.0).y;
      if (ya == yb) continue;
      const double s = -1.0 + 2.0 * (y0 - ya) / (yb - ya);
      if (s < -1.0 - 1e-12 || s > 1.0 + 1e-12) continue;
      const double sc = std::clamp(s, -1.0, 1.0);
      const Primitive w = along_eta ? detail::interpolate_element(prims, basis, e, xi[k], sc)
                                    : detail::interpolate_element(prims, basis, e, sc, xi[k]);
      pts.push_back({pos(sc).x, w});
    }
  }
  std::stable_sort(pts.begin(), pts.end(), [](const SlicePoint& a, const SlicePoint& b) { return a.x < b.x; });
  return pts;
}

inline void write_slice(const Solver& solver, double y0, std::ostream& out) {
  out << "x,rho,u,v,p\n";
  for (const auto& s : slice(solver, y0))
    out << detail::fmt(s.x) << "," << detail::fmt(s.w.rho) << "," << detail::fmt(s.w.u) << ","
        << detail::fmt(s.w.v) << "," << detail::fmt(s.w.p) << "\n";
}

inline void write_slice(const Solver& solver, double y0, const std::filesystem::path& path) {
  auto out = detail::open_output(path);
  write_slice(solver, y0, out);
  if (!out) throw IoError("write failed for " + path.string());
}

struct RunSummary {
  std::string case_name;
  std::size_t elements = 0;
  int order = 0;
  RunStats stats;
  double wall_seconds = 0.0;
  std::optional<ErrorReport> errors;
};

inline std::string report(const RunSummary& s) {
  std::ostringstream o;
  char buf[160];
  o << "case            " << s.case_name << "\n";
  o << "elements        " << s.elements << "\n";
  o << "order           " << s.order << "\n";
  o << "steps           " << s.stats.steps << "\n";
  std::snprintf(buf, sizeof buf, "final time      %.6g\n", s.stats.time);
  o << buf;
  std::snprintf(buf, sizeof buf, "wall time       %.3f s\n", s.wall_seconds);
  o << buf;
  std::snprintf(buf, sizeof buf, "troubled mean   %.4f %%\n", 100.0 * s.stats.mean_fraction);
  o << buf;
  std::snprintf(buf, sizeof buf, "troubled final  %.4f %%\n", 100.0 * s.stats.final_fraction);
  o << buf;
  std::snprintf(buf, sizeof buf, "rho min         %.6g\np min           %.6g\n", s.stats.rho_min,
                s.stats.p_min);
  o << buf;
  if (s.errors) {
    std::snprintf(buf, sizeof buf, "density L1      %.6e\ndensity L2      %.6e\ndensity Linf    %.6e\n",
                  s.errors->l1, s.errors->l2, s.errors->linf);
    o << buf;
  }
  return o.str();
}

inline std::string convergence_table(const std::vector<ConvergenceLevel>& levels) {
  std::ostringstream o;
  char buf[200];
  o << "cells      L1 error   L1 order   L2 error   L2 order   Linf error  Linf order\n";
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const auto& l = levels[i];
    const std::string cells = std::to_string(l.cells) + "x" + std::to_string(l.cells);
    if (i == 0)
      std::snprintf(buf, sizeof buf, "%-9s  %.2e   --         %.2e   --         %.2e    --\n",
                    cells.c_str(), l.error.l1, l.error.l2, l.error.linf);
    else
      std::snprintf(buf, sizeof buf, "%-9s  %.2e   %-9.2f  %.2e   %-9.2f  %.2e    %.2f\n",
                    cells.c_str(), l.error.l1, l.order_l1, l.error.l2, l.order_l2, l.error.linf,
                    l.order_linf);
    o << buf;
  }
  return o.str();
}

}  // namespace cprsc
