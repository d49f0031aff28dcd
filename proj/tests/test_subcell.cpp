#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "cprsc/cnnw2.hpp"
#include "cprsc/geometry.hpp"
#include "cprsc/subcell.hpp"
#include "support.hpp"

using namespace cprsc;
using testing_support::Gen;

TEST(SubcellGrid, GaussWeightsTileReferenceInterval) {
  for (int n = 1; n <= kMaxDegree; ++n) {
    const SubcellGrid1D g(gauss_legendre(n + 1));
    double s = 0.0;
    for (double l : g.lengths) s += l;
    EXPECT_NEAR(s, 2.0, 1e-14);
    EXPECT_NEAR(g.flux_points.back(), 1.0, 1e-14);
    for (std::size_t k = 0; k < g.size(); ++k) {
      EXPECT_GT(g.left_gap[k], 0.0);
      EXPECT_GT(g.right_gap[k], 0.0);
    }
  }
}

TEST(FirstLayer, HandEvaluations) {
  NNWStencil s;
  s.u1 = 0.0;
  s.u2 = 1.0;
  s.d1 = s.d2 = 0.4;
  EXPECT_NEAR(first_layer_interp(s).first, 0.5, 1e-15);
  // Inverse-distance weights 3/4 and 1/4 on u1 and u2.
  s.d1 = 1.0;
  s.d2 = 3.0;
  EXPECT_NEAR(first_layer_interp(s).first, 0.25, 1e-15);
  // Linear data is reproduced at the face.
  s.u1 = 2.0 - 0.7 * 1.3;
  s.u2 = 2.0 + 0.7 * 0.2;
  s.d1 = 1.3;
  s.d2 = 0.2;
  EXPECT_NEAR(first_layer_interp(s).first, 2.0, 1e-14);
}

TEST(FirstLayer, PhysicalDistanceWeights) {
  const auto [w1, w2] = physical_distance_weights(2.0, 1.0);
  EXPECT_NEAR(w1, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(w2, 2.0 / 3.0, 1e-15);
  const auto [a, b] = physical_distance_weights(0.3, 0.3);
  EXPECT_EQ(a, 0.5);
  EXPECT_EQ(b, 0.5);
  EXPECT_THROW(physical_distance_weights(0.0, 1.0), std::invalid_argument);
}

TEST(Gradient, HandEvaluations) {
  EXPECT_NEAR(nnw_gradient(0.0, 1.0, 1.0, 1.0, 1.0), 0.5, 1e-15);
  EXPECT_EQ(nnw_gradient(2.0, 2.0, 2.0, 0.3, 0.9), 0.0);
  // Linear data with slope s gives s.
  EXPECT_NEAR(nnw_gradient(1.0 - 3.0 * 0.2, 1.0, 1.0 + 3.0 * 0.5, 0.2, 0.5), 3.0, 1e-14);
}

TEST(Barth, HandEvaluations) {
  EXPECT_NEAR(barth_limit(0.0, 1.0, 2.0, 0.5, 2.5), 2.0 / 3.0, 1e-15);
  EXPECT_EQ(barth_limit(0.0, 1.0, 2.0, 0.5, 1.5), 1.0);
  EXPECT_EQ(barth_factor(1.0, 1.0, 0.0, 2.0), 1.0);
}

TEST(NnwFaceValues, ConstantAndLinear) {
  NNWStencil s;
  s.u1 = s.u2 = s.u3 = 4.0;
  s.d1 = 0.2;
  s.d2 = 0.3;
  s.d3 = 0.1;
  s.d4 = 0.6;
  s.gap_left = 0.3;
  s.gap_right = 0.1;
  auto fv = nnw_face_values(s);
  EXPECT_EQ(fv.a_right, 4.0);
  EXPECT_EQ(fv.b_left, 4.0);
  // Linear data, positions -0.5, 0, 0.7 with faces at -0.3 and 0.1.
  s.u1 = 1.0 - 0.5 * 2.0;
  s.u2 = 1.0;
  s.u3 = 1.0 + 0.7 * 2.0;
  s.d1 = 0.2;
  s.d2 = 0.3;
  s.d3 = 0.1;
  s.d4 = 0.6;
  fv = nnw_face_values(s);
  EXPECT_NEAR(fv.a_right, 1.0 - 0.3 * 2.0, 1e-14);
  EXPECT_NEAR(fv.b_left, 1.0 + 0.1 * 2.0, 1e-14);
}

TEST(NnwFaceValues, StepDataStaysWithinStencil) {
  Gen gen(1);
  for (int i = 0; i < 1000; ++i) {
    NNWStencil s;
    s.u1 = 0.0;
    s.u2 = gen.uniform(0.0, 1.0) < 0.5 ? 0.0 : 1.0;
    s.u3 = 1.0;
    s.d1 = gen.positive(0.01, 1.0);
    s.d2 = gen.positive(0.01, 1.0);
    s.d3 = gen.positive(0.01, 1.0);
    s.d4 = gen.positive(0.01, 1.0);
    s.gap_left = s.d2;
    s.gap_right = s.d3;
    const auto fv = nnw_face_values(s);
    EXPECT_GE(fv.a_right, -1e-15);
    EXPECT_LE(fv.a_right, 1.0 + 1e-15);
    EXPECT_GE(fv.b_left, -1e-15);
    EXPECT_LE(fv.b_left, 1.0 + 1e-15);
  }
}

// Limited face values stay inside [min, max] of the three-point stencil.
TEST(NnwFaceValues, BarthBoundsOnRandomStencils) {
  Gen gen(2);
  int limited = 0;
  for (int i = 0; i < 100000; ++i) {
    NNWStencil s;
    const double scale = gen.positive(1e-3, 1e3);
    s.u1 = scale * gen.uniform(-1, 1);
    s.u2 = scale * gen.uniform(-1, 1);
    s.u3 = scale * gen.uniform(-1, 1);
    s.d1 = gen.positive(1e-3, 1.0);
    s.d2 = gen.positive(1e-3, 1.0);
    s.d3 = gen.positive(1e-3, 1.0);
    s.d4 = gen.positive(1e-3, 1.0);
    s.gap_left = gen.uniform(0.0, 1.0) < 0.5 ? s.d2 : gen.positive(1e-3, 1.0);
    s.gap_right = gen.uniform(0.0, 1.0) < 0.5 ? s.d3 : gen.positive(1e-3, 1.0);
    const auto fv = nnw_face_values(s);
    const double lo = std::min({s.u1, s.u2, s.u3}), hi = std::max({s.u1, s.u2, s.u3});
    const double tol = 1e-13 * std::max(1.0, scale);
    ASSERT_GE(fv.a_right, lo - tol) << i;
    ASSERT_LE(fv.a_right, hi + tol) << i;
    ASSERT_GE(fv.b_left, lo - tol) << i;
    ASSERT_LE(fv.b_left, hi + tol) << i;
    const auto raw = nnw_face_values(s, false);
    if (raw.a_right != fv.a_right) ++limited;
  }
  EXPECT_GT(limited, 1000);  // the limiter is actually exercised
}

TEST(NnwLine, LinearDataReproducedWithoutLimiting) {
  for (int n = 1; n <= kMaxDegree; ++n) {
    const SubcellGrid1D g(gauss_legendre(n + 1));
    const std::size_t m = g.size();
    // Uniform neighbours: element width 2, solution point mirrored across each face.
    const auto lin = [](double x) { return Primitive{1.0 + 0.1 * x, 0.3 * x, -0.2 * x, 2.0 - 0.4 * x}; };
    std::vector<Primitive> line(m);
    for (std::size_t k = 0; k < m; ++k) line[k] = lin(g.solution_points[k]);
    LineHalo h;
    h.left = lin(-1.0 - (g.solution_points[0] + 1.0));
    h.right = lin(1.0 + (1.0 - g.solution_points[m - 1]));
    h.left_d_neighbor = g.solution_points[0] + 1.0;
    h.left_d_own = g.left_gap[0];
    h.right_d_own = g.right_gap[m - 1];
    h.right_d_neighbor = 1.0 - g.solution_points[m - 1];
    std::vector<Primitive> a(m), b(m);
    nnw_line(line, h, g, true, a, b);
    for (std::size_t k = 0; k < m; ++k) {
      EXPECT_NEAR(a[k].rho, lin(g.flux_points[k]).rho, 1e-14) << n;
      EXPECT_NEAR(b[k].p, lin(g.flux_points[k + 1]).p, 1e-14) << n;
      EXPECT_NEAR(b[k].u, lin(g.flux_points[k + 1]).u, 1e-14) << n;
    }
  }
}

TEST(Cnnw2Residual, TelescopesToBoundaryFluxes) {
  Gen gen(3);
  for (int n = 1; n <= kMaxDegree; ++n) {
    const Mesh mesh = testing_support::random_mesh(1, 1, 10 + n, false, 0.0);
    const ElementBasis basis(n);
    const SolverGeometry geo(mesh, basis);
    const std::size_t m = basis.size();
    std::vector<Primitive> sol(m * m), halo(4 * m);
    const Primitive base{1.0, 0.2, -0.1, 1.0};
    for (auto& w : sol) w = gen.near(base, 0.3);
    for (auto& w : halo) w = gen.near(base, 0.3);
    std::vector<Flux> ff(4 * m);
    for (auto& f : ff)
      for (std::size_t c = 0; c < 4; ++c) f[c] = gen.uniform(-1, 1);
    std::vector<Vec4> out(m * m);
    cnnw2_residual(sol, halo, ff, geo, 0, true, out);
    const auto& w = geo.grid().lengths;
    Vec4 total{}, boundary{};
    for (std::size_t l = 0; l < m; ++l)
      for (std::size_t k = 0; k < m; ++k) total += (w[k] * w[l]) * out[l * m + k];
    for (int f = 0; f < 4; ++f)
      for (std::size_t k = 0; k < m; ++k) boundary += w[k] * ff[f * m + k];
    for (std::size_t c = 0; c < 4; ++c) EXPECT_NEAR(total[c], -boundary[c], 1e-12);
  }
}

TEST(SolverGeometry, SubcellAreasAndNeighbourDistances) {
  const Mesh mesh = testing_support::random_mesh(4, 4, 5, true, 0.3);
  const ElementBasis basis(3);
  const SolverGeometry geo(mesh, basis);
  for (const auto& f : geo.faces()) {
    ASSERT_GE(f.neighbor_point, 0);
    EXPECT_GT(f.d_own, 0.0);
    EXPECT_GT(f.d_neighbor, 0.0);
    const auto& g = geo.faces()[f.neighbor_slot];
    // Matching face points coincide up to the periodic shift and have opposite normals.
    EXPECT_NEAR(f.normal.x, -g.normal.x, 1e-12);
    EXPECT_NEAR(f.normal.y, -g.normal.y, 1e-12);
    EXPECT_NEAR(f.area, g.area, 1e-12);
    EXPECT_NEAR(f.d_own, g.d_neighbor, 1e-12);
  }
}
