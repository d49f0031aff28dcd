#pragma once

// Troubled-cell detection from the decay of Legendre modal energy along the
// grid lines of an element. The improved mode extends every line with Roe
// averaged interface values so that jumps sitting exactly on an element
// interface are seen by the cells on both sides.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>

#include "cprsc/basis.hpp"
#include "cprsc/physics.hpp"
#include "cprsc/types.hpp"

namespace cprsc {

enum class IndicatorMode { original, improved };
enum class DetectionVariable { density, density_pressure };

struct IndicatorConfig {
  double a = 0.5;
  double c = 1.8;
  IndicatorMode mode = IndicatorMode::improved;
  DetectionVariable variable = DetectionVariable::density_pressure;
  RoePressure roe_pressure = RoePressure::standard;
  /// Improved mode also runs the original test on the interior points, so a
  /// jump inside the element is not diluted by the two interface values.
  bool interior_test = true;

  void validate() const {
    if (!(a > 0.0) || !(c > 0.0)) throw ConfigError("indicator constants a and c must be positive");
  }
};

struct Detection {
  bool troubled = false;
  double energy = 0.0;           // largest line ratio of the mode's own polynomial
  double interior_energy = 0.0;  // largest interior-only ratio (improved mode with interior_test)
};

/// Share of the energy in the highest and second-highest modes, whichever is
/// larger. A vector of zeros counts as smooth. With only two modes the
/// second-highest one is the mean, which carries no oscillation, so only the
/// highest mode is tested.
inline double energy_ratio(std::span<const double> modal) {
  const std::size_t m = modal.size();
  if (m < 2) throw std::invalid_argument("energy_ratio: need at least two modes");
  double lower = 0.0;
  for (std::size_t j = 0; j + 1 < m; ++j) lower += modal[j] * modal[j];
  const double top = modal[m - 1] * modal[m - 1];
  const double total = lower + top;
  const double second = modal[m - 2] * modal[m - 2];
  const double r1 = total > 0.0 ? top / total : 0.0;
  const double r2 = m > 2 && lower > 0.0 ? second / lower : 0.0;
  return std::max(r1, r2);
}

inline double threshold(int n_eff, double a = 0.5, double c = 1.8) {
  if (n_eff < 1) throw std::invalid_argument("threshold: degree must be >= 1");
  return a * std::pow(10.0, -c * std::pow(static_cast<double>(n_eff) + 1.0, 0.25));
}

inline double detection_value(const Primitive& w, DetectionVariable var) {
  return var == DetectionVariable::density ? w.rho : w.rho * w.p;
}

/// Energy ratio of one line of nodal values under the given transform.
inline double line_energy(std::span<const double> values, const ModalTransform& transform) {
  std::array<double, kMaxDegree + 3> modal{};
  const std::size_t n = transform.size();
  if (values.size() != n) throw std::invalid_argument("line_energy: size mismatch");
  transform.apply(values, std::span(modal.data(), n));
  return energy_ratio(std::span<const double>(modal.data(), n));
}

/// Energy ratio of a line of states with the improved-mode interface values
/// built from the nearest states across each end.
inline double augmented_line_energy(std::span<const Primitive> line, const Primitive& left,
                                    const Primitive& right, const ModalTransform& transform,
                                    const IndicatorConfig& config) {
  const std::size_t n = line.size();
  std::array<double, kMaxDegree + 3> values{};
  values[0] = detection_value(roe_average(left, line[0], config.roe_pressure), config.variable);
  for (std::size_t k = 0; k < n; ++k) values[k + 1] = detection_value(line[k], config.variable);
  values[n + 1] =
      detection_value(roe_average(line[n - 1], right, config.roe_pressure), config.variable);
  return line_energy(std::span<const double>(values.data(), n + 2), transform);
}

inline int effective_degree(int degree, IndicatorMode mode) {
  return mode == IndicatorMode::improved ? degree + 2 : degree;
}

/// Scans all 2(N+1) lines of the element. `solution` holds n*n states (xi
/// index fastest); `halo` holds the 4n states adjacent across each face point
/// in counter-clockwise face order and may be empty in original mode.
inline Detection detect(std::span<const Primitive> solution, std::span<const Primitive> halo,
                        const ElementBasis& basis, const IndicatorConfig& config) {
  const std::size_t n = basis.size();
  const bool improved = config.mode == IndicatorMode::improved;
  if (improved && halo.size() < 4 * n)
    throw std::invalid_argument("detect: improved mode needs neighbor values on all faces");
  std::array<Primitive, kMaxDegree + 1> line;
  std::array<double, kMaxDegree + 1> values{};
  double energy = 0.0;
  double interior = 0.0;
  const bool both = improved && config.interior_test;
  const auto scan = [&](const Primitive& left, const Primitive& right) {
    if (!improved || both) {
      for (std::size_t k = 0; k < n; ++k) values[k] = detection_value(line[k], config.variable);
      const double e = line_energy(std::span<const double>(values.data(), n), basis.modal);
      if (improved)
        interior = std::max(interior, e);
      else
        energy = std::max(energy, e);
    }
    if (improved)
      energy = std::max(energy, augmented_line_energy(std::span<const Primitive>(line.data(), n),
                                                      left, right, basis.modal_augmented, config));
  };
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t k = 0; k < n; ++k) line[k] = solution[l * n + k];
    if (improved)
      scan(halo[3 * n + (n - 1 - l)], halo[n + l]);
    else
      scan({}, {});
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) line[l] = solution[l * n + k];
    if (improved)
      scan(halo[k], halo[2 * n + (n - 1 - k)]);
    else
      scan({}, {});
  }
  const double t = threshold(effective_degree(basis.degree, config.mode), config.a, config.c);
  bool troubled = energy > t;
  if (both) troubled = troubled || interior > threshold(basis.degree, config.a, config.c);
  return {troubled, energy, interior};
}

}  // namespace cprsc
