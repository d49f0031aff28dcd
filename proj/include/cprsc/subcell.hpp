#pragma once

// Second-order nonuniform nonlinear weighted (NNW) reconstruction on the
// subcell grid of a troubled element. Subcell k spans [fp_k, fp_{k+1}] with
// length equal to the k-th Gauss weight and contains solution point xi_k.

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cprsc/basis.hpp"
#include "cprsc/physics.hpp"
#include "cprsc/types.hpp"

namespace cprsc {

struct SubcellGrid1D {
  std::vector<double> flux_points;      // N+2 values, -1 ... +1
  std::vector<double> solution_points;  // N+1 Gauss nodes
  std::vector<double> lengths;          // Gauss weights
  std::vector<double> left_gap;         // xi_k - fp_k
  std::vector<double> right_gap;        // fp_{k+1} - xi_k

  explicit SubcellGrid1D(const SolutionPoints1D& points)
      : solution_points(points.nodes), lengths(points.weights) {
    const std::size_t n = points.size();
    flux_points.resize(n + 1);
    flux_points[0] = -1.0;
    for (std::size_t i = 0; i < n; ++i) flux_points[i + 1] = flux_points[i] + lengths[i];
    left_gap.resize(n);
    right_gap.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      left_gap[k] = solution_points[k] - flux_points[k];
      right_gap[k] = flux_points[k + 1] - solution_points[k];
    }
  }

  std::size_t size() const { return solution_points.size(); }
};

/// Three-point stencil around subcell solution value u2. The first-layer
/// distances (d1, d2) locate face A between u1 and u2, (d3, d4) face B between
/// u2 and u3; gap_left / gap_right are the reference distances from u2 to A
/// and B used by the gradient and the reconstruction. Near element interfaces
/// d1, d2 (or d3, d4) hold physical distances instead.
struct NNWStencil {
  double u1 = 0.0, u2 = 0.0, u3 = 0.0;
  double d1 = 1.0, d2 = 1.0, d3 = 1.0, d4 = 1.0;
  double gap_left = 1.0, gap_right = 1.0;
};

/// Inverse-distance weights (w_a, w_b) for points at distances da and db.
inline std::pair<double, double> inverse_distance_weights(double da, double db) {
  const double ia = 1.0 / da;
  const double ib = 1.0 / db;
  return {ia / (ia + ib), ib / (ia + ib)};
}

/// First-layer weights across an element interface from physical distances:
/// d_neighbor from the neighbor solution point, d_own from the current one.
inline std::pair<double, double> physical_distance_weights(double d_neighbor, double d_own) {
  if (!(d_neighbor > 0.0) || !(d_own > 0.0))
    throw std::invalid_argument("physical_distance_weights: distances must be positive");
  return inverse_distance_weights(d_neighbor, d_own);
}

inline std::pair<double, double> first_layer_interp(const NNWStencil& s) {
  const auto [w1, w2] = inverse_distance_weights(s.d1, s.d2);
  const auto [w3, w4] = inverse_distance_weights(s.d3, s.d4);
  return {w1 * s.u1 + w2 * s.u2, w3 * s.u2 + w4 * s.u3};
}

inline double nnw_gradient(double ua1, double u2, double ub1, double gap_left, double gap_right) {
  const auto [w5, w6] = inverse_distance_weights(gap_left, gap_right);
  return w5 * (u2 - ua1) / gap_left + w6 * (ub1 - u2) / gap_right;
}

/// Barth limiter factor for a reconstructed value u relative to centre u2 and
/// stencil bounds [lo, hi].
inline double barth_factor(double u, double u2, double lo, double hi) {
  if (u > u2) return std::min(1.0, (hi - u2) / (u - u2));
  if (u < u2) return std::min(1.0, (lo - u2) / (u - u2));
  return 1.0;
}

inline double barth_limit(double u1, double u2, double u3, double ua2, double ub2) {
  const double lo = std::min({u1, u2, u3});
  const double hi = std::max({u1, u2, u3});
  return std::min(barth_factor(ua2, u2, lo, hi), barth_factor(ub2, u2, lo, hi));
}

struct FaceValues {
  double a_right;  // value on the right side of face A
  double b_left;   // value on the left side of face B
};

inline FaceValues nnw_face_values(const NNWStencil& s, bool limit = true) {
  const auto [ua1, ub1] = first_layer_interp(s);
  const double grad = nnw_gradient(ua1, s.u2, ub1, s.gap_left, s.gap_right);
  double phi = 1.0;
  if (limit) {
    const double ua2 = s.u2 - grad * s.gap_left;
    const double ub2 = s.u2 + grad * s.gap_right;
    phi = barth_limit(s.u1, s.u2, s.u3, ua2, ub2);
  }
  return {s.u2 - phi * grad * s.gap_left, s.u2 + phi * grad * s.gap_right};
}

/// Neighbor data at the two ends of a subcell line: the nearest solution
/// value across each element face and the physical distances from that point
/// and from the line's own end point to the shared face point.
struct LineHalo {
  Primitive left;
  Primitive right;
  double left_d_neighbor = 1.0, left_d_own = 1.0;
  double right_d_own = 1.0, right_d_neighbor = 1.0;
};

/// NNW reconstruction along one line of N+1 subcells, componentwise in
/// primitive variables. Writes the value on the right of the left face
/// (a_right[k]) and on the left of the right face (b_left[k]) of every subcell.
inline void nnw_line(std::span<const Primitive> line, const LineHalo& halo,
                     const SubcellGrid1D& grid, bool limit, std::span<Primitive> a_right,
                     std::span<Primitive> b_left) {
  const std::size_t n = line.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Vec4 u2 = line[k].as_vec();
    const Vec4 u1 = (k == 0) ? halo.left.as_vec() : line[k - 1].as_vec();
    const Vec4 u3 = (k + 1 == n) ? halo.right.as_vec() : line[k + 1].as_vec();
    NNWStencil s;
    s.gap_left = grid.left_gap[k];
    s.gap_right = grid.right_gap[k];
    if (k == 0) {
      s.d1 = halo.left_d_neighbor;
      s.d2 = halo.left_d_own;
    } else {
      s.d1 = grid.right_gap[k - 1];
      s.d2 = grid.left_gap[k];
    }
    if (k + 1 == n) {
      s.d3 = halo.right_d_own;
      s.d4 = halo.right_d_neighbor;
    } else {
      s.d3 = grid.right_gap[k];
      s.d4 = grid.left_gap[k + 1];
    }
    Vec4 a, b;
    for (std::size_t c = 0; c < 4; ++c) {
      s.u1 = u1[c];
      s.u2 = u2[c];
      s.u3 = u3[c];
      const FaceValues fv = nnw_face_values(s, limit);
      a[c] = fv.a_right;
      b[c] = fv.b_left;
    }
    a_right[k] = Primitive::from_vec(a);
    b_left[k] = Primitive::from_vec(b);
  }
}

}  // namespace cprsc
