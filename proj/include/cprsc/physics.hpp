#pragma once

// Ideal-gas Euler state algebra: conversions, physical fluxes, wave speeds,
// Roe averages and the local Lax-Friedrichs flux.

#include <algorithm>
#include <cmath>
#include <string>

#include "cprsc/types.hpp"

namespace cprsc {

inline constexpr double kGamma = 1.4;

inline bool is_valid(const Primitive& w) {
  return std::isfinite(w.rho) && std::isfinite(w.u) && std::isfinite(w.v) &&
         std::isfinite(w.p) && w.rho > 0.0 && w.p > 0.0;
}

inline Conservative prim_to_cons(const Primitive& w) {
  return {w.rho, w.rho * w.u, w.rho * w.v,
          w.p / (kGamma - 1.0) + 0.5 * w.rho * (w.u * w.u + w.v * w.v)};
}

/// Conversion without validity checks; used where the caller validates.
inline Primitive cons_to_prim_unchecked(const Conservative& q) {
  const double rho = q[0];
  const double u = q[1] / rho;
  const double v = q[2] / rho;
  return {rho, u, v, (kGamma - 1.0) * (q[3] - 0.5 * rho * (u * u + v * v))};
}

inline Primitive cons_to_prim(const Conservative& q) {
  if (!(q[0] > 0.0)) throw InvalidStateError("nonpositive density: " + std::to_string(q[0]));
  const Primitive w = cons_to_prim_unchecked(q);
  if (!(w.p > 0.0) || !is_valid(w))
    throw InvalidStateError("nonpositive pressure: " + std::to_string(w.p));
  return w;
}

inline double sound_speed(const Primitive& w) { return std::sqrt(kGamma * w.p / w.rho); }

inline Flux flux_f(const Primitive& w) {
  const double e = w.p / (kGamma - 1.0) + 0.5 * w.rho * (w.u * w.u + w.v * w.v);
  return {w.rho * w.u, w.rho * w.u * w.u + w.p, w.rho * w.u * w.v, w.u * (e + w.p)};
}

inline Flux flux_g(const Primitive& w) {
  const double e = w.p / (kGamma - 1.0) + 0.5 * w.rho * (w.u * w.u + w.v * w.v);
  return {w.rho * w.v, w.rho * w.u * w.v, w.rho * w.v * w.v + w.p, w.v * (e + w.p)};
}

inline Flux flux_f(const Conservative& q) { return flux_f(cons_to_prim(q)); }
inline Flux flux_g(const Conservative& q) { return flux_g(cons_to_prim(q)); }

/// Physical flux projected on a direction: n.x F + n.y G.
inline Flux normal_flux(const Primitive& w, Vec2 n) {
  const double e = w.p / (kGamma - 1.0) + 0.5 * w.rho * (w.u * w.u + w.v * w.v);
  const double vn = w.u * n.x + w.v * n.y;
  return {w.rho * vn, w.rho * w.u * vn + w.p * n.x, w.rho * w.v * vn + w.p * n.y,
          vn * (e + w.p)};
}

inline double max_wave_speed(const Primitive& w) {
  return std::hypot(w.u, w.v) + sound_speed(w);
}

inline double max_wave_speed(const Conservative& q) { return max_wave_speed(cons_to_prim(q)); }

/// Local Lax-Friedrichs flux for unit normal n pointing from L to R.
inline Flux llf_flux(const Primitive& left, const Primitive& right, Vec2 n) {
  const double lam = std::max(std::abs(left.u * n.x + left.v * n.y) + sound_speed(left),
                              std::abs(right.u * n.x + right.v * n.y) + sound_speed(right));
  Flux f = normal_flux(left, n) + normal_flux(right, n);
  f -= lam * (prim_to_cons(right) - prim_to_cons(left));
  f *= 0.5;
  return f;
}

inline Flux llf_flux(const Conservative& left, const Conservative& right, Vec2 n) {
  return llf_flux(cons_to_prim(left), cons_to_prim(right), n);
}

/// Pressure closure of the Roe-averaged state.
enum class RoePressure {
  standard,  // (rho h - rho V^2 / 2) (gamma - 1) / gamma
  printed,   // (h^2 - rho V^2 / 2) (gamma - 1) / gamma
};

inline Primitive roe_average(const Primitive& left, const Primitive& right,
                             RoePressure closure = RoePressure::standard) {
  if (!is_valid(left) || !is_valid(right)) throw InvalidStateError("roe_average: invalid state");
  const double sl = std::sqrt(left.rho);
  const double sr = std::sqrt(right.rho);
  const double wsum = sl + sr;
  const auto enthalpy = [](const Primitive& w) {
    return kGamma / (kGamma - 1.0) * w.p / w.rho + 0.5 * (w.u * w.u + w.v * w.v);
  };
  Primitive out;
  out.rho = sl * sr;
  out.u = (sl * left.u + sr * right.u) / wsum;
  out.v = (sl * left.v + sr * right.v) / wsum;
  const double h = (sl * enthalpy(left) + sr * enthalpy(right)) / wsum;
  const double v2 = out.u * out.u + out.v * out.v;
  const double lead = (closure == RoePressure::standard) ? out.rho * h : h * h;
  out.p = (lead - 0.5 * out.rho * v2) * (kGamma - 1.0) / kGamma;
  return out;
}

}  // namespace cprsc
