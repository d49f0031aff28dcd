#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace cprsc {

/// Two-component vector used for physical coordinates and normals.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// Four-component vector: conservative states, fluxes and residuals.
struct Vec4 {
  std::array<double, 4> c{};

  constexpr Vec4() = default;
  constexpr Vec4(double a, double b, double d, double e) : c{a, b, d, e} {}

  constexpr double& operator[](std::size_t i) { return c[i]; }
  constexpr double operator[](std::size_t i) const { return c[i]; }

  constexpr Vec4& operator+=(const Vec4& o) {
    for (std::size_t i = 0; i < 4; ++i) c[i] += o.c[i];
    return *this;
  }
  constexpr Vec4& operator-=(const Vec4& o) {
    for (std::size_t i = 0; i < 4; ++i) c[i] -= o.c[i];
    return *this;
  }
  constexpr Vec4& operator*=(double s) {
    for (auto& v : c) v *= s;
    return *this;
  }
  friend constexpr bool operator==(const Vec4&, const Vec4&) = default;
};

constexpr Vec4 operator+(Vec4 a, const Vec4& b) { return a += b; }
constexpr Vec4 operator-(Vec4 a, const Vec4& b) { return a -= b; }
constexpr Vec4 operator*(double s, Vec4 a) { return a *= s; }
constexpr Vec4 operator*(Vec4 a, double s) { return a *= s; }

inline double max_abs(const Vec4& v) {
  double m = 0.0;
  for (double x : v.c) m = std::max(m, std::abs(x));
  return m;
}

/// Conservative variables (rho, rho*u, rho*v, E).
using Conservative = Vec4;
/// Flux vectors share the conservative layout.
using Flux = Vec4;

/// Primitive variables (rho, u, v, p).
struct Primitive {
  double rho = 0.0;
  double u = 0.0;
  double v = 0.0;
  double p = 0.0;

  constexpr Vec4 as_vec() const { return {rho, u, v, p}; }
  static constexpr Primitive from_vec(const Vec4& w) { return {w[0], w[1], w[2], w[3]}; }
  friend constexpr bool operator==(const Primitive&, const Primitive&) = default;
};

class MeshParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TopologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateElementError : public std::runtime_error {
 public:
  DegenerateElementError(int element, const std::string& what)
      : std::runtime_error(what), element_(element) {}
  int element() const { return element_; }

 private:
  int element_;
};

/// Raised when a state with nonpositive density or pressure (or a non-finite
/// value) is produced. `element` and `point` are -1 when not applicable.
class InvalidStateError : public std::runtime_error {
 public:
  InvalidStateError(const std::string& what, int element = -1, int point = -1)
      : std::runtime_error(what), element_(element), point_(point) {}
  int element() const { return element_; }
  int point() const { return point_; }

 private:
  int element_;
  int point_;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cprsc
