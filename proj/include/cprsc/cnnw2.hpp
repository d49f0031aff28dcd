#pragma once

// Element-level CNNW2: line sweeps of the NNW reconstruction over the subcell
// grid, LLF fluxes at interior subcell interfaces and the conservative
// finite-difference update of the transformed solution.

#include <array>
#include <cstddef>
#include <span>

#include "cprsc/cpr.hpp"
#include "cprsc/geometry.hpp"
#include "cprsc/physics.hpp"
#include "cprsc/subcell.hpp"

namespace cprsc {

/// Halo for the xi-line at eta index l. `halo` holds, for each of the 4n face
/// points, the solution value adjacent to the face on the far side.
inline LineHalo xi_line_halo(const SolverGeometry& geo, std::size_t e, std::size_t l,
                             std::span<const Primitive> halo) {
  const std::size_t n = geo.points_per_line();
  const FacePoint& w = geo.face(e, 3, n - 1 - l);
  const FacePoint& east = geo.face(e, 1, l);
  LineHalo h;
  h.left = halo[3 * n + (n - 1 - l)];
  h.left_d_neighbor = w.d_neighbor;
  h.left_d_own = w.d_own;
  h.right = halo[1 * n + l];
  h.right_d_own = east.d_own;
  h.right_d_neighbor = east.d_neighbor;
  return h;
}

/// Halo for the eta-line at xi index k.
inline LineHalo eta_line_halo(const SolverGeometry& geo, std::size_t e, std::size_t k,
                              std::span<const Primitive> halo) {
  const std::size_t n = geo.points_per_line();
  const FacePoint& s = geo.face(e, 0, k);
  const FacePoint& north = geo.face(e, 2, n - 1 - k);
  LineHalo h;
  h.left = halo[0 * n + k];
  h.left_d_neighbor = s.d_neighbor;
  h.left_d_own = s.d_own;
  h.right = halo[2 * n + (n - 1 - k)];
  h.right_d_own = north.d_own;
  h.right_d_neighbor = north.d_neighbor;
  return h;
}

/// NNW values on the element side of each of the 4n face points.
inline void cnnw2_face_values(std::span<const Primitive> solution, std::span<const Primitive> halo,
                              const SolverGeometry& geo, std::size_t e, bool limit,
                              std::span<Primitive> side) {
  const std::size_t n = geo.points_per_line();
  std::array<Primitive, kMaxPoints1D> line, a, b;
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t k = 0; k < n; ++k) line[k] = solution[l * n + k];
    nnw_line(std::span(line.data(), n), xi_line_halo(geo, e, l, halo), geo.grid(), limit,
             std::span(a.data(), n), std::span(b.data(), n));
    side[3 * n + (n - 1 - l)] = a[0];
    side[1 * n + l] = b[n - 1];
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) line[l] = solution[l * n + k];
    nnw_line(std::span(line.data(), n), eta_line_halo(geo, e, k, halo), geo.grid(), limit,
             std::span(a.data(), n), std::span(b.data(), n));
    side[0 * n + k] = a[0];
    side[2 * n + (n - 1 - k)] = b[n - 1];
  }
}

/// CNNW2 time derivative of |J| U at the solution points of element e.
/// `face_flux` has the same meaning as for cpr_residual.
inline void cnnw2_residual(std::span<const Primitive> solution, std::span<const Primitive> halo,
                           std::span<const Flux> face_flux, const SolverGeometry& geo,
                           std::size_t e, bool limit, std::span<Vec4> out) {
  const std::size_t n = geo.points_per_line();
  const auto& lengths = geo.grid().lengths;
  std::array<Primitive, kMaxPoints1D> line, a, b;
  std::array<Flux, kMaxPoints1D + 1> fhat;

  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t k = 0; k < n; ++k) line[k] = solution[l * n + k];
    nnw_line(std::span(line.data(), n), xi_line_halo(geo, e, l, halo), geo.grid(), limit,
             std::span(a.data(), n), std::span(b.data(), n));
    fhat[0] = -1.0 * face_flux[3 * n + (n - 1 - l)];
    fhat[n] = face_flux[1 * n + l];
    for (std::size_t i = 1; i < n; ++i) {
      const Vec2 s = geo.subcell_metric_xi(e, i, l);
      const double area = norm(s);
      fhat[i] = area * llf_flux(b[i - 1], a[i], (1.0 / area) * s);
    }
    for (std::size_t k = 0; k < n; ++k)
      out[l * n + k] = (-1.0 / lengths[k]) * (fhat[k + 1] - fhat[k]);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) line[l] = solution[l * n + k];
    nnw_line(std::span(line.data(), n), eta_line_halo(geo, e, k, halo), geo.grid(), limit,
             std::span(a.data(), n), std::span(b.data(), n));
    fhat[0] = -1.0 * face_flux[0 * n + k];
    fhat[n] = face_flux[2 * n + (n - 1 - k)];
    for (std::size_t j = 1; j < n; ++j) {
      const Vec2 s = geo.subcell_metric_eta(e, j, k);
      const double area = norm(s);
      fhat[j] = area * llf_flux(b[j - 1], a[j], (1.0 / area) * s);
    }
    for (std::size_t l = 0; l < n; ++l)
      out[l * n + k] -= (1.0 / lengths[l]) * (fhat[l + 1] - fhat[l]);
  }
}

}  // namespace cprsc
