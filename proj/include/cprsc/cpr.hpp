#pragma once

// Correction procedure via reconstruction on one element: Lagrange flux
// interpolation differentiated on the solution points plus g_DG corrections
// driven by the interface Riemann fluxes.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "cprsc/basis.hpp"
#include "cprsc/geometry.hpp"
#include "cprsc/physics.hpp"
#include "cprsc/types.hpp"

namespace cprsc {

inline constexpr std::size_t kMaxPoints1D = kMaxDegree + 1;
inline constexpr std::size_t kMaxPoints2D = kMaxPoints1D * kMaxPoints1D;

/// Primitive states interpolated to the n points of face `face`, in the
/// counter-clockwise face order. `solution` holds the element's n*n states.
inline void interface_trace(std::span<const Primitive> solution, int face,
                            const LagrangeBasis1D& lagrange, std::span<Primitive> trace) {
  const std::size_t n = lagrange.size();
  const auto edge = (face == 0 || face == 3) ? lagrange.left_edge() : lagrange.right_edge();
  for (std::size_t k = 0; k < n; ++k) {
    Vec4 acc{};
    for (std::size_t m = 0; m < n; ++m) {
      std::size_t p;
      switch (face) {
        case 0: p = m * n + k; break;
        case 1: p = k * n + m; break;
        case 2: p = m * n + (n - 1 - k); break;
        default: p = (n - 1 - k) * n + m; break;
      }
      acc += edge[m] * solution[p].as_vec();
    }
    trace[k] = Primitive::from_vec(acc);
  }
}

inline std::vector<Primitive> interface_trace(std::span<const Primitive> solution, int face,
                                              const LagrangeBasis1D& lagrange) {
  std::vector<Primitive> out(lagrange.size());
  interface_trace(solution, face, lagrange, out);
  return out;
}

/// Time derivative of the transformed solution |J| U at the solution points
/// of element e. `face_flux` holds 4n outward transformed Riemann fluxes
/// (area times the numerical flux along the outward normal).
inline void cpr_residual(std::span<const Primitive> solution, std::span<const Flux> face_flux,
                         const SolverGeometry& geo, std::size_t e, const ElementBasis& basis,
                         std::span<Vec4> out) {
  const std::size_t n = basis.size();
  const std::size_t base = e * n * n;
  std::array<Flux, kMaxPoints2D> ft;
  std::array<Flux, kMaxPoints2D> gt;
  for (std::size_t p = 0; p < n * n; ++p) {
    ft[p] = normal_flux(solution[p], geo.metric_xi(base + p));
    gt[p] = normal_flux(solution[p], geo.metric_eta(base + p));
  }
  const auto diff = basis.lagrange.diff_matrix();
  const auto left = basis.lagrange.left_edge();
  const auto right = basis.lagrange.right_edge();
  const auto& dgl = basis.correction.dg_left;
  const auto& dgr = basis.correction.dg_right;

  // xi-direction, one eta-line at a time.
  for (std::size_t l = 0; l < n; ++l) {
    Flux f_left{}, f_right{};
    for (std::size_t m = 0; m < n; ++m) {
      f_left += left[m] * ft[l * n + m];
      f_right += right[m] * ft[l * n + m];
    }
    const Flux jump_left = -1.0 * face_flux[3 * n + (n - 1 - l)] - f_left;
    const Flux jump_right = face_flux[1 * n + l] - f_right;
    for (std::size_t k = 0; k < n; ++k) {
      Flux d{};
      for (std::size_t m = 0; m < n; ++m) d += diff[k * n + m] * ft[l * n + m];
      out[l * n + k] = -1.0 * d - dgl[k] * jump_left - dgr[k] * jump_right;
    }
  }
  // eta-direction, one xi-line at a time.
  for (std::size_t k = 0; k < n; ++k) {
    Flux g_bottom{}, g_top{};
    for (std::size_t m = 0; m < n; ++m) {
      g_bottom += left[m] * gt[m * n + k];
      g_top += right[m] * gt[m * n + k];
    }
    const Flux jump_bottom = -1.0 * face_flux[0 * n + k] - g_bottom;
    const Flux jump_top = face_flux[2 * n + (n - 1 - k)] - g_top;
    for (std::size_t l = 0; l < n; ++l) {
      Flux d{};
      for (std::size_t m = 0; m < n; ++m) d += diff[l * n + m] * gt[m * n + k];
      out[l * n + k] -= d + dgl[l] * jump_bottom + dgr[l] * jump_top;
    }
  }
}

}  // namespace cprsc
