#pragma once

// Exact solution of the one-dimensional Riemann problem for the Euler
// equations with an ideal gas: Newton iteration on the star pressure and
// sampling of the full wave fan. The transverse velocity is carried as a
// passive scalar across the contact.

#include <algorithm>
#include <cmath>

#include "cprsc/physics.hpp"
#include "cprsc/types.hpp"

namespace cprsc {

class ExactRiemann {
 public:
  /// `left` and `right` use u as the normal velocity and v as the transverse one.
  ExactRiemann(const Primitive& left, const Primitive& right) : l_(left), r_(right) {
    if (!is_valid(left) || !is_valid(right))
      throw InvalidStateError("exact_riemann: invalid initial state");
    cl_ = sound_speed(left);
    cr_ = sound_speed(right);
    const double g = kGamma;
    if (2.0 * (cl_ + cr_) / (g - 1.0) <= r_.u - l_.u)
      throw InvalidStateError("exact_riemann: initial data generate vacuum");
    solve();
  }

  double p_star() const { return p_star_; }
  double u_star() const { return u_star_; }
  double rho_star_left() const { return rho_star(l_, cl_); }
  double rho_star_right() const { return rho_star(r_, cr_); }
  const Primitive& left() const { return l_; }
  const Primitive& right() const { return r_; }

  /// State at similarity coordinate s = (x - x0) / t.
  Primitive sample(double s) const {
    const double g = kGamma;
    if (s <= u_star_) {
      const Primitive& w = l_;
      const double c = cl_;
      if (p_star_ > w.p) {
        const double pr = p_star_ / w.p;
        const double shock = w.u - c * std::sqrt((g + 1.0) / (2.0 * g) * pr + (g - 1.0) / (2.0 * g));
        if (s <= shock) return w;
        return {rho_star(w, c), u_star_, w.v, p_star_};
      }
      const double head = w.u - c;
      const double cs = c * std::pow(p_star_ / w.p, (g - 1.0) / (2.0 * g));
      const double tail = u_star_ - cs;
      if (s <= head) return w;
      if (s >= tail) return {rho_star(w, c), u_star_, w.v, p_star_};
      const double k = 2.0 / (g + 1.0) + (g - 1.0) / ((g + 1.0) * c) * (w.u - s);
      return {w.rho * std::pow(k, 2.0 / (g - 1.0)), 2.0 / (g + 1.0) * (c + 0.5 * (g - 1.0) * w.u + s),
              w.v, w.p * std::pow(k, 2.0 * g / (g - 1.0))};
    }
    const Primitive& w = r_;
    const double c = cr_;
    if (p_star_ > w.p) {
      const double pr = p_star_ / w.p;
      const double shock = w.u + c * std::sqrt((g + 1.0) / (2.0 * g) * pr + (g - 1.0) / (2.0 * g));
      if (s >= shock) return w;
      return {rho_star(w, c), u_star_, w.v, p_star_};
    }
    const double head = w.u + c;
    const double cs = c * std::pow(p_star_ / w.p, (g - 1.0) / (2.0 * g));
    const double tail = u_star_ + cs;
    if (s >= head) return w;
    if (s <= tail) return {rho_star(w, c), u_star_, w.v, p_star_};
    const double k = 2.0 / (g + 1.0) - (g - 1.0) / ((g + 1.0) * c) * (w.u - s);
    return {w.rho * std::pow(k, 2.0 / (g - 1.0)), 2.0 / (g + 1.0) * (-c + 0.5 * (g - 1.0) * w.u + s),
            w.v, w.p * std::pow(k, 2.0 * g / (g - 1.0))};
  }

 private:
  // Pressure function of one side and its derivative.
  static void pressure_function(double p, const Primitive& w, double c, double& f, double& df) {
    const double g = kGamma;
    if (p > w.p) {
      const double a = 2.0 / ((g + 1.0) * w.rho);
      const double b = (g - 1.0) / (g + 1.0) * w.p;
      const double q = std::sqrt(a / (p + b));
      f = (p - w.p) * q;
      df = q * (1.0 - 0.5 * (p - w.p) / (b + p));
    } else {
      const double pr = p / w.p;
      f = 2.0 * c / (g - 1.0) * (std::pow(pr, (g - 1.0) / (2.0 * g)) - 1.0);
      df = 1.0 / (w.rho * c) * std::pow(pr, -(g + 1.0) / (2.0 * g));
    }
  }

  double rho_star(const Primitive& w, double) const {
    const double g = kGamma;
    const double pr = p_star_ / w.p;
    if (p_star_ > w.p) {
      const double q = (g - 1.0) / (g + 1.0);
      return w.rho * (pr + q) / (pr * q + 1.0);
    }
    return w.rho * std::pow(pr, 1.0 / g);
  }

  void solve() {
    const double du = r_.u - l_.u;
    // Primitive-variable guess, kept positive.
    double p = 0.5 * (l_.p + r_.p) - 0.125 * du * (l_.rho + r_.rho) * (cl_ + cr_);
    p = std::max(p, 1e-8 * std::min(l_.p, r_.p));
    for (int it = 0; it < 200; ++it) {
      double fl, dfl, fr, dfr;
      pressure_function(p, l_, cl_, fl, dfl);
      pressure_function(p, r_, cr_, fr, dfr);
      double next = p - (fl + fr + du) / (dfl + dfr);
      if (next <= 0.0) next = 0.5 * p;
      const double change = 2.0 * std::abs(next - p) / (next + p);
      p = next;
      if (change < 1e-15) break;
    }
    double fl, dfl, fr, dfr;
    pressure_function(p, l_, cl_, fl, dfl);
    pressure_function(p, r_, cr_, fr, dfr);
    p_star_ = p;
    u_star_ = 0.5 * (l_.u + r_.u) + 0.5 * (fr - fl);
  }

  Primitive l_, r_;
  double cl_ = 0.0, cr_ = 0.0;
  double p_star_ = 0.0, u_star_ = 0.0;
};

inline Primitive exact_riemann(const Primitive& left, const Primitive& right, double s) {
  return ExactRiemann(left, right).sample(s);
}

}  // namespace cprsc
