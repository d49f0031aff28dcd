#pragma once

// One-dimensional polynomial machinery on Gauss-Legendre solution points:
// quadrature, Lagrange interpolation and differentiation, the g_DG (right
// Radau) correction functions, and nodal-to-Legendre modal transforms.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cprsc {

inline constexpr int kMinDegree = 1;
inline constexpr int kMaxDegree = 6;

/// Legendre polynomial P_n and its derivative at x (three-term recurrence).
template <class Real>
std::pair<Real, Real> legendre_with_derivative(int n, Real x) {
  if (n == 0) return {Real(1), Real(0)};
  Real p_prev = 1;
  Real p = x;
  for (int k = 1; k < n; ++k) {
    const Real next = ((2 * k + 1) * x * p - k * p_prev) / (k + 1);
    p_prev = p;
    p = next;
  }
  // P_n' = n (x P_n - P_{n-1}) / (x^2 - 1), with the endpoint limits taken explicitly.
  Real dp;
  if (x == Real(1)) {
    dp = Real(n) * (n + 1) / 2;
  } else if (x == Real(-1)) {
    dp = ((n % 2 == 0) ? Real(-1) : Real(1)) * Real(n) * (n + 1) / 2;
  } else {
    dp = n * (x * p - p_prev) / (x * x - 1);
  }
  return {p, dp};
}

inline double legendre(int n, double x) { return legendre_with_derivative<double>(n, x).first; }

/// Orthonormal Legendre function sqrt((2n+1)/2) P_n, unit L2 norm on [-1,1].
inline double orthonormal_legendre(int n, double x) {
  return std::sqrt((2.0 * n + 1.0) / 2.0) * legendre(n, x);
}

struct SolutionPoints1D {
  int degree = 0;  // N; there are N+1 points
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// n-point Gauss-Legendre rule on [-1,1], nodes ascending.
inline SolutionPoints1D gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one point");
  using Real = long double;
  std::vector<Real> x(n), w(n);
  for (int i = 0; i < n; ++i) {
    Real xi = std::cos(std::numbers::pi_v<Real> * (i + Real(0.75)) / (n + Real(0.5)));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre_with_derivative<Real>(n, xi);
      const Real dx = p / dp;
      xi -= dx;
      if (std::abs(dx) < Real(1e-19)) break;
    }
    const auto [p, dp] = legendre_with_derivative<Real>(n, xi);
    (void)p;
    x[n - 1 - i] = xi;
    w[n - 1 - i] = 2 / ((1 - xi * xi) * dp * dp);
  }
  // Enforce exact mirror symmetry.
  for (int i = 0; i < n / 2; ++i) {
    const Real a = (x[n - 1 - i] - x[i]) / 2;
    const Real b = (w[n - 1 - i] + w[i]) / 2;
    x[i] = -a;
    x[n - 1 - i] = a;
    w[i] = w[n - 1 - i] = b;
  }
  if (n % 2 == 1) x[n / 2] = 0;

  SolutionPoints1D out;
  out.degree = n - 1;
  out.nodes.assign(x.begin(), x.end());
  out.weights.assign(w.begin(), w.end());
  return out;
}

/// Value of the degree-(n-1) interpolant through (nodes, values) at x.
inline double lagrange_interp(std::span<const double> nodes, std::span<const double> values,
                              double x) {
  double sum = 0.0;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    double lk = 1.0;
    for (std::size_t m = 0; m < nodes.size(); ++m) {
      if (m != k) lk *= (x - nodes[m]) / (nodes[k] - nodes[m]);
    }
    sum += lk * values[k];
  }
  return sum;
}

class LagrangeBasis1D {
 public:
  explicit LagrangeBasis1D(std::vector<double> nodes) : nodes_(std::move(nodes)) {
    const std::size_t n = nodes_.size();
    bary_.assign(n, 1.0);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) bary_[j] /= (nodes_[j] - nodes_[k]);

    diff_.assign(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      double diag = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == j) continue;
        const double d = (bary_[k] / bary_[j]) / (nodes_[j] - nodes_[k]);
        diff_[j * n + k] = d;
        diag -= d;
      }
      diff_[j * n + j] = diag;
    }
    left_ = values_at(-1.0);
    right_ = values_at(1.0);
  }

  std::size_t size() const { return nodes_.size(); }
  const std::vector<double>& nodes() const { return nodes_; }

  /// L_k(x).
  double basis(std::size_t k, double x) const {
    double lk = 1.0;
    for (std::size_t m = 0; m < nodes_.size(); ++m)
      if (m != k) lk *= (x - nodes_[m]) / (nodes_[k] - nodes_[m]);
    return lk;
  }

  std::vector<double> values_at(double x) const {
    std::vector<double> out(size());
    for (std::size_t k = 0; k < size(); ++k) out[k] = basis(k, x);
    return out;
  }

  double interpolate(std::span<const double> values, double x) const {
    return lagrange_interp(nodes_, values, x);
  }

  /// D(j, k) = L_k'(x_j).
  double diff(std::size_t j, std::size_t k) const { return diff_[j * size() + k]; }
  std::span<const double> diff_matrix() const { return diff_; }

  /// L_k(-1) and L_k(+1).
  std::span<const double> left_edge() const { return left_; }
  std::span<const double> right_edge() const { return right_; }

 private:
  std::vector<double> nodes_;
  std::vector<double> bary_;
  std::vector<double> diff_;
  std::vector<double> left_;
  std::vector<double> right_;
};

// g_DG correction functions: g_L = (-1)^N (P_N - P_{N+1}) / 2 and g_R(x) = g_L(-x).
inline double correction_left(int degree, double x) {
  const double sign = (degree % 2 == 0) ? 1.0 : -1.0;
  return sign * 0.5 * (legendre(degree, x) - legendre(degree + 1, x));
}
inline double correction_right(int degree, double x) { return correction_left(degree, -x); }

inline double correction_left_derivative(int degree, double x) {
  const double sign = (degree % 2 == 0) ? 1.0 : -1.0;
  return sign * 0.5 *
         (legendre_with_derivative<double>(degree, x).second -
          legendre_with_derivative<double>(degree + 1, x).second);
}
inline double correction_right_derivative(int degree, double x) {
  return -correction_left_derivative(degree, -x);
}

struct CorrectionTable {
  int degree = 0;
  std::vector<double> dg_left;   // g_L'(xi_k)
  std::vector<double> dg_right;  // g_R'(xi_k)
};

inline CorrectionTable correction_table(const SolutionPoints1D& points) {
  CorrectionTable t;
  t.degree = points.degree;
  for (double x : points.nodes) {
    t.dg_left.push_back(correction_left_derivative(points.degree, x));
    t.dg_right.push_back(correction_right_derivative(points.degree, x));
  }
  return t;
}

namespace detail {

// Solves A X = B in place (A: n x n, B: n x m, row-major) by Gaussian
// elimination with partial pivoting. B is overwritten with X.
inline void solve_dense(std::vector<long double>& a, std::vector<long double>& b, std::size_t n,
                        std::size_t m) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    if (a[piv * n + col] == 0) throw std::runtime_error("solve_dense: singular matrix");
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[piv * n + c]);
      for (std::size_t c = 0; c < m; ++c) std::swap(b[col * m + c], b[piv * m + c]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const long double f = a[r * n + col] / a[col * n + col];
      if (f == 0) continue;
      for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      for (std::size_t c = 0; c < m; ++c) b[r * m + c] -= f * b[col * m + c];
    }
  }
  for (std::size_t ri = n; ri-- > 0;) {
    for (std::size_t c = 0; c < m; ++c) {
      long double s = b[ri * m + c];
      for (std::size_t k = ri + 1; k < n; ++k) s -= a[ri * n + k] * b[k * m + c];
      b[ri * m + c] = s / a[ri * n + ri];
    }
  }
}

}  // namespace detail

/// Maps nodal values on a point set to coefficients of the orthonormal
/// Legendre expansion of the same interpolant: M = K U with K = B^-1 A, where
/// A takes nodal values to monomial coefficients and B takes Legendre
/// coefficients to monomial coefficients.
class ModalTransform {
 public:
  ModalTransform() = default;

  explicit ModalTransform(std::vector<double> nodes) : nodes_(std::move(nodes)) {
    const std::size_t n = nodes_.size();
    using Real = long double;

    // A = V^-1 with V(i, k) = x_i^k.
    std::vector<Real> vander(n * n), a(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      Real xp = 1;
      for (std::size_t k = 0; k < n; ++k) {
        vander[i * n + k] = xp;
        xp *= nodes_[i];
      }
      a[i * n + i] = 1;
    }
    detail::solve_dense(vander, a, n, n);

    // B(k, j) = coefficient of x^k in the orthonormal Legendre function j.
    std::vector<Real> b(n * n, 0);
    std::vector<Real> p_prev(n, 0), p_cur(n, 0), p_next(n, 0);
    p_prev[0] = 1;
    if (n > 1) p_cur[1] = 1;
    for (std::size_t j = 0; j < n; ++j) {
      const std::vector<Real>& pj = (j == 0) ? p_prev : p_cur;
      const Real scale = std::sqrt((2 * Real(j) + 1) / 2);
      for (std::size_t k = 0; k < n; ++k) b[k * n + j] = scale * pj[k];
      if (j >= 1 && j + 1 < n) {
        // (j+1) P_{j+1} = (2j+1) x P_j - j P_{j-1}
        std::fill(p_next.begin(), p_next.end(), Real(0));
        for (std::size_t k = 0; k + 1 < n; ++k) p_next[k + 1] += (2 * Real(j) + 1) * p_cur[k];
        for (std::size_t k = 0; k < n; ++k) p_next[k] -= Real(j) * p_prev[k];
        for (auto& c : p_next) c /= Real(j + 1);
        p_prev = p_cur;
        p_cur = p_next;
      }
    }
    detail::solve_dense(b, a, n, n);

    matrix_.assign(a.begin(), a.end());
  }

  std::size_t size() const { return nodes_.size(); }
  int degree() const { return static_cast<int>(nodes_.size()) - 1; }
  const std::vector<double>& nodes() const { return nodes_; }
  double operator()(std::size_t i, std::size_t j) const { return matrix_[i * size() + j]; }

  void apply(std::span<const double> nodal, std::span<double> modal) const {
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += matrix_[i * n + j] * nodal[j];
      modal[i] = s;
    }
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> matrix_;
};

inline std::vector<double> modal_coefficients(std::span<const double> values,
                                              const ModalTransform& transform) {
  if (values.size() != transform.size())
    throw std::invalid_argument("modal_coefficients: size mismatch");
  std::vector<double> out(values.size());
  transform.apply(values, out);
  return out;
}

/// Solution points with the two interface points prepended/appended: {-1, xi_1..xi_{N+1}, +1}.
inline std::vector<double> augmented_nodes(const SolutionPoints1D& points) {
  std::vector<double> out;
  out.reserve(points.size() + 2);
  out.push_back(-1.0);
  out.insert(out.end(), points.nodes.begin(), points.nodes.end());
  out.push_back(1.0);
  return out;
}

/// Per-degree constant tables shared by every element.
struct ElementBasis {
  int degree;
  SolutionPoints1D points;
  LagrangeBasis1D lagrange;
  CorrectionTable correction;
  ModalTransform modal;
  ModalTransform modal_augmented;

  explicit ElementBasis(int n)
      : degree(check_degree(n)),
        points(gauss_legendre(n + 1)),
        lagrange(points.nodes),
        correction(correction_table(points)),
        modal(points.nodes),
        modal_augmented(augmented_nodes(points)) {}

  std::size_t size() const { return points.size(); }

 private:
  static int check_degree(int n) {
    if (n < kMinDegree || n > kMaxDegree)
      throw std::invalid_argument("polynomial degree must be in [1, 6]");
    return n;
  }
};

}  // namespace cprsc
