#pragma once

// Shared fixtures for the test suites: a seeded random source with
// hand-rolled generators for states, stencils and meshes.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "cprsc/cases.hpp"
#include "cprsc/driver.hpp"
#include "cprsc/generator.hpp"
#include "cprsc/mesh.hpp"
#include "cprsc/types.hpp"

namespace testing_support {

using namespace cprsc;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng_); }
  /// log-uniform in [a, b], a > 0
  double positive(double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); }

  Primitive state() {
    return {positive(0.05, 20.0), uniform(-3.0, 3.0), uniform(-3.0, 3.0), positive(0.05, 50.0)};
  }

  /// Mildly perturbed state around a reference, always valid.
  Primitive near(const Primitive& w, double amp) {
    return {w.rho * (1.0 + amp * uniform(-1.0, 1.0)), w.u + amp * uniform(-1.0, 1.0),
            w.v + amp * uniform(-1.0, 1.0), w.p * (1.0 + amp * uniform(-1.0, 1.0))};
  }

  Vec2 unit_normal() {
    const double a = uniform(0.0, 2.0 * 3.14159265358979323846);
    return {std::cos(a), std::sin(a)};
  }

  /// Random straight convex quad, counter-clockwise.
  std::array<Vec2, 4> quad() {
    const double h = positive(0.1, 10.0);
    const Vec2 c{uniform(-5.0, 5.0), uniform(-5.0, 5.0)};
    const double rot = uniform(0.0, 6.283185307179586);
    std::array<Vec2, 4> out;
    for (int i = 0; i < 4; ++i) {
      const double a = rot + i * 1.5707963267948966 + uniform(-0.3, 0.3);
      const double r = h * uniform(0.7, 1.3);
      out[i] = c + Vec2{r * std::cos(a), r * std::sin(a)};
    }
    return out;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Jittered, randomly rotated mesh of the unit square (or a periodic box).
inline Mesh random_mesh(int nx, int ny, std::uint64_t seed, bool periodic = false,
                        double jitter = 0.25) {
  GridSpec g;
  g.nx = nx;
  g.ny = ny;
  g.jitter = jitter;
  g.rotate = true;
  g.seed = seed;
  g.periodic_x = g.periodic_y = periodic;
  return generate_grid(g);
}

/// Outflow on every non-periodic tag of a generated grid.
inline BoundaryMap outflow_everywhere() {
  BoundaryMap m;
  for (const char* s : {"left", "right", "bottom", "top"}) m[s] = BoundaryCondition::outflow();
  return m;
}

inline BoundaryMap fixed_everywhere(Primitive w) {
  BoundaryMap m;
  for (const char* s : {"left", "right", "bottom", "top"})
    m[s] = BoundaryCondition::dirichlet([w](double, double, double) { return w; });
  return m;
}

inline double max_abs(const Field& f) {
  double m = 0.0;
  for (const auto& v : f) m = std::max(m, cprsc::max_abs(v));
  return m;
}

}  // namespace testing_support
