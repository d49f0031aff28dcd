#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "cprsc/basis.hpp"
#include "support.hpp"

using namespace cprsc;

TEST(GaussLegendre, OnePointRule) {
  const auto g = gauss_legendre(1);
  ASSERT_EQ(g.size(), 1u);
  EXPECT_DOUBLE_EQ(g.nodes[0], 0.0);
  EXPECT_DOUBLE_EQ(g.weights[0], 2.0);
}

TEST(GaussLegendre, TwoPointRule) {
  const auto g = gauss_legendre(2);
  EXPECT_NEAR(g.nodes[0], -0.5773502691896258, 1e-15);
  EXPECT_NEAR(g.nodes[1], 0.5773502691896258, 1e-15);
  EXPECT_NEAR(g.weights[0], 1.0, 1e-15);
  EXPECT_NEAR(g.weights[1], 1.0, 1e-15);
}

TEST(GaussLegendre, FivePointCentre) {
  const auto g = gauss_legendre(5);
  EXPECT_NEAR(g.nodes[2], 0.0, 1e-16);
  EXPECT_NEAR(g.weights[2], 128.0 / 225.0, 1e-15);
}

TEST(GaussLegendre, RejectsEmptyRule) { EXPECT_THROW(gauss_legendre(0), std::invalid_argument); }

TEST(GaussLegendre, IntegratesMonomialsExactly) {
  for (int n = 1; n <= 7; ++n) {
    const auto g = gauss_legendre(n);
    for (int p = 0; p <= 2 * n - 1; ++p) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += g.weights[i] * std::pow(g.nodes[i], p);
      const double exact = (p % 2 == 1) ? 0.0 : 2.0 / (p + 1);
      EXPECT_NEAR(s, exact, 1e-12) << "n=" << n << " p=" << p;
    }
  }
}

TEST(GaussLegendre, WeightsTileReferenceInterval) {
  for (int n = 1; n <= 7; ++n) {
    const auto g = gauss_legendre(n);
    double s = 0.0;
    for (double w : g.weights) s += w;
    EXPECT_NEAR(s, 2.0, 1e-14) << n;
  }
}

TEST(Lagrange, PartitionOfUnityAndLinearExactness) {
  testing_support::Gen gen(11);
  for (int n = 1; n <= kMaxDegree; ++n) {
    const ElementBasis b(n);
    std::vector<double> c(b.size(), 3.25);
    for (int t = 0; t < 20; ++t) {
      const double x = gen.uniform(-1.0, 1.0);
      EXPECT_NEAR(b.lagrange.interpolate(c, x), 3.25, 1e-13);
    }
    EXPECT_NEAR(b.lagrange.interpolate(b.points.nodes, -1.0), -1.0, 1e-13);
  }
}

TEST(Lagrange, DegreeFourReproducesQuartic) {
  const ElementBasis b(4);
  std::vector<double> v;
  for (double x : b.points.nodes) v.push_back(std::pow(x, 4));
  EXPECT_NEAR(b.lagrange.interpolate(v, 1.0), 1.0, 1e-13);
}

TEST(Lagrange, DifferentiationMatrixExactOnMonomials) {
  for (int n = 1; n <= kMaxDegree; ++n) {
    const ElementBasis b(n);
    const auto& x = b.points.nodes;
    for (int p = 0; p <= n; ++p) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        double d = 0.0;
        for (std::size_t k = 0; k < b.size(); ++k) d += b.lagrange.diff(j, k) * std::pow(x[k], p);
        const double exact = p == 0 ? 0.0 : p * std::pow(x[j], p - 1);
        EXPECT_NEAR(d, exact, 1e-12) << "n=" << n << " p=" << p;
      }
    }
  }
}

TEST(Modal, ConstantMapsToFirstMode) {
  for (int n = 1; n <= kMaxDegree; ++n) {
    const ElementBasis b(n);
    std::vector<double> v(b.size(), 2.0);
    const auto m = modal_coefficients(v, b.modal);
    // Orthonormal first mode is 1/sqrt(2).
    EXPECT_NEAR(m[0], 2.0 * std::sqrt(2.0), 1e-12);
    for (std::size_t j = 1; j < m.size(); ++j) EXPECT_NEAR(m[j], 0.0, 1e-12);
  }
}

TEST(Modal, HighestModeReproducesUnitVector) {
  for (int n = 1; n <= kMaxDegree; ++n) {
    const ElementBasis b(n);
    std::vector<double> v;
    for (double x : b.points.nodes) v.push_back(orthonormal_legendre(n, x));
    const auto m = modal_coefficients(v, b.modal);
    for (std::size_t j = 0; j < m.size(); ++j)
      EXPECT_NEAR(m[j], j + 1 == m.size() ? 1.0 : 0.0, 1e-12) << "n=" << n << " j=" << j;
  }
}

// Nodal -> modal -> nodal for both the plain and the augmented transforms.
TEST(Modal, RoundTripOnRandomData) {
  testing_support::Gen gen(5);
  for (int n = 1; n <= kMaxDegree; ++n) {
    const ElementBasis b(n);
    for (const ModalTransform* t : {&b.modal, &b.modal_augmented}) {
      for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> v(t->size());
        for (auto& x : v) x = gen.uniform(-10.0, 10.0);
        const auto m = modal_coefficients(v, *t);
        for (std::size_t i = 0; i < v.size(); ++i) {
          double back = 0.0;
          for (std::size_t j = 0; j < m.size(); ++j)
            back += m[j] * orthonormal_legendre(static_cast<int>(j), t->nodes()[i]);
          EXPECT_NEAR(back, v[i], 1e-12);
        }
      }
    }
  }
}

TEST(Correction, EndpointConstraints) {
  for (int n = 1; n <= kMaxDegree; ++n) {
    EXPECT_NEAR(correction_left(n, -1.0), 1.0, 1e-14);
    EXPECT_NEAR(correction_left(n, 1.0), 0.0, 1e-14);
    EXPECT_NEAR(correction_right(n, 1.0), 1.0, 1e-14);
    EXPECT_NEAR(correction_right(n, -1.0), 0.0, 1e-14);
  }
}

TEST(Correction, DegreeOneClosedForm) {
  // g_L = -(P1 - P2)/2 = (-x + (3x^2 - 1)/2) / 2 ... evaluated directly.
  for (double x : {-1.0, -0.3, 0.0, 0.6, 1.0}) {
    const double p1 = x, p2 = 0.5 * (3 * x * x - 1);
    EXPECT_NEAR(correction_left(1, x), -0.5 * (p1 - p2), 1e-15);
  }
}

TEST(Correction, MirrorSymmetryOfDerivatives) {
  for (int n = 1; n <= kMaxDegree; ++n) {
    const ElementBasis b(n);
    for (double x : b.points.nodes)
      EXPECT_NEAR(correction_right_derivative(n, x) + correction_left_derivative(n, -x), 0.0, 1e-13);
  }
}

TEST(Correction, DerivativeMatchesFiniteDifference) {
  for (int n = 1; n <= kMaxDegree; ++n) {
    for (double x : {-0.7, -0.1, 0.4, 0.9}) {
      const double h = 1e-6;
      const double fd = (correction_left(n, x + h) - correction_left(n, x - h)) / (2 * h);
      EXPECT_NEAR(correction_left_derivative(n, x), fd, 1e-7);
    }
  }
}

TEST(ElementBasis, RejectsDegreeOutsideRange) {
  EXPECT_THROW(ElementBasis(0), std::invalid_argument);
  EXPECT_THROW(ElementBasis(7), std::invalid_argument);
}
