#pragma once

// Per-element geometric tables consumed by the residual kernels. Everything
// here depends only on the mesh and the polynomial degree, so it is built once
// and shared read-only.
//
// Solution point (k, l) of element e (k along xi, l along eta) has global
// index e*n*n + l*n + k. Face point k of face f of element e has index
// e*4*n + f*n + k, ordered along the counter-clockwise face traversal.

#include <cmath>
#include <cstddef>
#include <vector>

#include "cprsc/basis.hpp"
#include "cprsc/mesh.hpp"
#include "cprsc/subcell.hpp"
#include "cprsc/types.hpp"

namespace cprsc {

struct FacePoint {
  Vec2 position;
  Vec2 normal;             // unit outward normal
  double area = 0.0;       // magnitude of the scaled metric vector, |J| |grad xi| on xi faces
  int own_point = -1;      // adjacent solution point of this element
  int neighbor_point = -1; // adjacent solution point across the face, -1 on a physical boundary
  int neighbor_slot = -1;  // index of the matching face point in the neighbor
  int boundary = -1;       // Mesh::tags index on physical boundaries
  double d_own = 1.0;      // physical distance own_point -> position
  double d_neighbor = 1.0; // physical distance neighbor_point -> position (mirrored on boundaries)
};

class SolverGeometry {
 public:
  SolverGeometry(const Mesh& mesh, const ElementBasis& basis)
      : n_(basis.size()), num_elements_(mesh.num_elements()), grid_(basis.points) {
    const std::size_t n = n_;
    const std::size_t np = n * n;
    const auto& xi = basis.points.nodes;
    const auto& w = basis.points.weights;
    const std::size_t ne = num_elements_;

    position_.resize(ne * np);
    jac_.resize(ne * np);
    metric_xi_.resize(ne * np);
    metric_eta_.resize(ne * np);
    dt_length_.resize(ne * np);
    faces_.resize(ne * 4 * n);
    subcell_xi_.resize(ne * (n - 1) * n);
    subcell_eta_.resize(ne * (n - 1) * n);

    for (std::size_t e = 0; e < ne; ++e) {
      const auto corners = element_corners(mesh, e);
      for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t k = 0; k < n; ++k) {
          const std::size_t p = e * np + l * n + k;
          const Jacobian j = jacobian(corners, xi[k], xi[l]);
          const double det = j.det();
          if (!(det > 0.0))
            throw DegenerateElementError(static_cast<int>(e),
                                         "degenerate element " + std::to_string(e));
          position_[p] = map_to_physical(corners, xi[k], xi[l]);
          jac_[p] = det;
          metric_xi_[p] = {j.y_eta, -j.x_eta};
          metric_eta_[p] = {-j.y_xi, j.x_xi};
          dt_length_[p] = 0.5 * std::min(w[k], w[l]) * std::sqrt(4.0 * det);
        }
      }
      // Interior subcell interfaces fp_1..fp_N.
      for (std::size_t i = 1; i < n; ++i) {
        const double fp = grid_.flux_points[i];
        for (std::size_t l = 0; l < n; ++l) {
          const Jacobian jx = jacobian(corners, fp, xi[l]);
          subcell_xi_[(e * (n - 1) + (i - 1)) * n + l] = {jx.y_eta, -jx.x_eta};
          const Jacobian je = jacobian(corners, xi[l], fp);
          subcell_eta_[(e * (n - 1) + (i - 1)) * n + l] = {-je.y_xi, je.x_xi};
        }
      }
    }

    for (std::size_t e = 0; e < ne; ++e) {
      const auto corners = element_corners(mesh, e);
      for (int f = 0; f < 4; ++f) {
        const FaceLink& link = mesh.elements[e].face_neighbors[f];
        for (std::size_t k = 0; k < n; ++k) {
          FacePoint& fpnt = faces_[face_index(e, f, k)];
          const Vec2 r = face_reference_point(f, xi[k]);
          const Jacobian j = jacobian(corners, r.x, r.y);
          Vec2 s = (f == 1 || f == 3) ? Vec2{j.y_eta, -j.x_eta} : Vec2{-j.y_xi, j.x_xi};
          if (f == 0 || f == 3) s = -s;
          fpnt.position = map_to_physical(corners, r.x, r.y);
          fpnt.area = norm(s);
          fpnt.normal = (1.0 / fpnt.area) * s;
          const auto [ki, li] = face_adjacent_point(f, static_cast<int>(k), static_cast<int>(n));
          fpnt.own_point = static_cast<int>(e * np + li * n + ki);
          fpnt.d_own = norm(fpnt.position - position_[fpnt.own_point]);
          if (link.interior()) {
            const int kn = link.reversed ? static_cast<int>(n - 1 - k) : static_cast<int>(k);
            const auto [kb, lb] = face_adjacent_point(link.neighbor_face, kn, static_cast<int>(n));
            fpnt.neighbor_point =
                static_cast<int>(link.neighbor * np + static_cast<std::size_t>(lb) * n + kb);
            fpnt.neighbor_slot =
                static_cast<int>(face_index(link.neighbor, link.neighbor_face, kn));
            fpnt.d_neighbor = norm(position_[fpnt.neighbor_point] + link.shift - fpnt.position);
          } else {
            fpnt.boundary = link.boundary;
            fpnt.d_neighbor = fpnt.d_own;
          }
        }
      }
    }
  }

  std::size_t points_per_line() const { return n_; }
  std::size_t points_per_element() const { return n_ * n_; }
  std::size_t num_elements() const { return num_elements_; }
  std::size_t num_points() const { return num_elements_ * n_ * n_; }
  const SubcellGrid1D& grid() const { return grid_; }

  std::size_t face_index(std::size_t e, int f, std::size_t k) const {
    return (e * 4 + static_cast<std::size_t>(f)) * n_ + k;
  }

  const std::vector<Vec2>& positions() const { return position_; }
  const Vec2& position(std::size_t p) const { return position_[p]; }
  double jac(std::size_t p) const { return jac_[p]; }
  /// (y_eta, -x_eta) = |J| grad(xi) at solution points.
  const Vec2& metric_xi(std::size_t p) const { return metric_xi_[p]; }
  /// (-y_xi, x_xi) = |J| grad(eta) at solution points.
  const Vec2& metric_eta(std::size_t p) const { return metric_eta_[p]; }
  double dt_length(std::size_t p) const { return dt_length_[p]; }
  const FacePoint& face(std::size_t e, int f, std::size_t k) const {
    return faces_[face_index(e, f, k)];
  }
  const std::vector<FacePoint>& faces() const { return faces_; }

  /// Scaled xi-metric at subcell interface fp_i (1 <= i <= N) on eta-line l.
  const Vec2& subcell_metric_xi(std::size_t e, std::size_t i, std::size_t l) const {
    return subcell_xi_[(e * (n_ - 1) + (i - 1)) * n_ + l];
  }
  /// Scaled eta-metric at subcell interface fp_j (1 <= j <= N) on xi-line k.
  const Vec2& subcell_metric_eta(std::size_t e, std::size_t j, std::size_t k) const {
    return subcell_eta_[(e * (n_ - 1) + (j - 1)) * n_ + k];
  }

 private:
  std::size_t n_;
  std::size_t num_elements_;
  SubcellGrid1D grid_;
  std::vector<Vec2> position_;
  std::vector<double> jac_;
  std::vector<Vec2> metric_xi_;
  std::vector<Vec2> metric_eta_;
  std::vector<double> dt_length_;
  std::vector<FacePoint> faces_;
  std::vector<Vec2> subcell_xi_;
  std::vector<Vec2> subcell_eta_;
};

}  // namespace cprsc
