#pragma once

// Benchmark problems: initial data, boundary conditions, exact solutions
// where they exist, density error norms and convergence studies.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cprsc/driver.hpp"
#include "cprsc/generator.hpp"
#include "cprsc/physics.hpp"
#include "cprsc/riemann.hpp"
#include "cprsc/types.hpp"

namespace cprsc {

struct CaseSpec {
  std::string name;
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
  bool periodic_x = false;
  bool periodic_y = false;
  double t_end = 0.0;
  int default_nx = 10;
  int default_ny = 10;
  std::function<Primitive(double, double)> initial;
  BoundaryMap bcs;
  /// Splits the default side tags where a side carries more than one condition.
  std::function<std::string(const std::string&, Vec2)> tagger;
  /// Exact solution (x, y, t), when known.
  std::function<Primitive(double, double, double)> exact;
};

inline const std::vector<std::string>& case_names() {
  static const std::vector<std::string> names{"vortex",    "sod",         "lax",
                                              "shu_osher", "riemann2d",   "double_mach",
                                              "shock_vortex", "strong_shock_vortex"};
  return names;
}

/// Downstream state of a stationary normal shock with upstream Mach number m,
/// upstream density rho1 and pressure p1, flow in +x.
inline Primitive normal_shock_downstream(double m, double rho1, double p1) {
  const double g = kGamma;
  const double u1 = m * std::sqrt(g * p1 / rho1);
  const double m2 = m * m;
  const double rho2 = rho1 * (g + 1.0) * m2 / ((g - 1.0) * m2 + 2.0);
  const double p2 = p1 * (1.0 + 2.0 * g / (g + 1.0) * (m2 - 1.0));
  return {rho2, u1 * rho1 / rho2, 0.0, p2};
}

/// Isentropic vortex perturbation added to the mean flow (1, u0, 0, 1):
/// rho = T^(1/(gamma-1)), p = rho T.
struct VortexProfile {
  double eps;
  double alpha;
  double rc;
  double xc, yc;

  Primitive apply(double x, double y, double u0) const {
    const double g = kGamma;
    const double dx = x - xc, dy = y - yc;
    const double tau = std::sqrt(dx * dx + dy * dy) / rc;
    const double theta = std::atan2(dy, dx);
    const double amp = eps * tau * std::exp(alpha * (1.0 - tau * tau));
    const double dT = -(g - 1.0) * eps * eps / (4.0 * alpha * g) * std::exp(2.0 * alpha * (1.0 - tau * tau));
    const double t = 1.0 + dT;
    const double rho = std::pow(t, 1.0 / (g - 1.0));
    return {rho, u0 + amp * std::sin(theta), -amp * std::cos(theta), rho * t};
  }
};

namespace detail {

inline Primitive isentropic_vortex(double x, double y, double xc, double yc) {
  const double g = kGamma;
  const double eps = 5.0;
  const double pi = std::numbers::pi;
  const double dx = x - xc, dy = y - yc;
  const double r2 = dx * dx + dy * dy;
  const double e = std::exp(0.5 * (1.0 - r2));
  const double dT = -(g - 1.0) * eps * eps / (8.0 * g * pi * pi) * std::exp(1.0 - r2);
  const double t = 1.0 + dT;
  const double rho = std::pow(t, 1.0 / (g - 1.0));
  return {rho, 1.0 - dy * eps / (2.0 * pi) * e, dx * eps / (2.0 * pi) * e, rho * t};
}

inline double wrap(double d, double period) { return d - period * std::round(d / period); }

inline CaseSpec shock_tube(const std::string& name, Primitive left, Primitive right, double x_jump,
                           double t_end) {
  CaseSpec c;
  c.name = name;
  c.x0 = 0.0;
  c.x1 = 1.0;
  c.y0 = 0.0;
  c.y1 = 0.2;
  c.periodic_y = true;
  c.t_end = t_end;
  c.default_nx = 90;
  c.default_ny = 18;
  c.initial = [=](double x, double) { return x < x_jump ? left : right; };
  c.bcs["left"] = BoundaryCondition::dirichlet([=](double, double, double) { return left; });
  c.bcs["right"] = BoundaryCondition::dirichlet([=](double, double, double) { return right; });
  const ExactRiemann rp(left, right);
  c.exact = [=](double x, double, double t) {
    if (t <= 0.0) return x < x_jump ? left : right;
    return rp.sample((x - x_jump) / t);
  };
  return c;
}

}  // namespace detail

inline CaseSpec init_case(const std::string& name) {
  const double g = kGamma;
  if (name == "vortex") {
    CaseSpec c;
    c.name = name;
    c.x0 = -5.0;
    c.x1 = 5.0;
    c.y0 = -5.0;
    c.y1 = 5.0;
    c.periodic_x = c.periodic_y = true;
    c.t_end = 0.2;
    c.default_nx = c.default_ny = 20;
    c.initial = [](double x, double y) { return detail::isentropic_vortex(x, y, 0.0, 0.0); };
    c.exact = [](double x, double y, double t) {
      // The mean flow (1, 0) carries the vortex; periodic images are folded back.
      const double dx = detail::wrap(x - t, 10.0);
      const double dy = detail::wrap(y, 10.0);
      return detail::isentropic_vortex(dx, dy, 0.0, 0.0);
    };
    return c;
  }
  if (name == "sod")
    return detail::shock_tube(name, {0.125, 0.0, 0.0, 0.1}, {1.0, 0.0, 0.0, 1.0}, 0.5, 0.2);
  if (name == "lax")
    return detail::shock_tube(name, {0.445, 0.698, 0.0, 3.528}, {0.5, 0.0, 0.0, 0.571}, 0.5, 0.14);
  if (name == "shu_osher") {
    CaseSpec c;
    c.name = name;
    c.y1 = 0.2;
    c.periodic_y = true;
    c.t_end = 0.18;
    c.default_nx = 90;
    c.default_ny = 18;
    const Primitive left{3.857143, 2.629369, 0.0, 10.33333};
    c.initial = [=](double x, double) {
      if (x < 0.1) return left;
      return Primitive{1.0 + 0.2 * std::sin(50.0 * x), 0.0, 0.0, 1.0};
    };
    c.bcs["left"] = BoundaryCondition::dirichlet([=](double, double, double) { return left; });
    c.bcs["right"] = BoundaryCondition::dirichlet(
        [](double, double, double) { return Primitive{1.0 + 0.2 * std::sin(50.0), 0.0, 0.0, 1.0}; });
    return c;
  }
  if (name == "riemann2d") {
    CaseSpec c;
    c.name = name;
    c.t_end = 0.8;
    c.default_nx = c.default_ny = 120;
    c.initial = [](double x, double y) {
      if (y > 0.8) return x > 0.8 ? Primitive{1.5, 0.0, 0.0, 1.5} : Primitive{0.5323, 1.206, 0.0, 0.3};
      return x > 0.8 ? Primitive{0.5323, 0.0, 1.206, 0.3} : Primitive{0.138, 1.206, 1.206, 0.029};
    };
    const auto fixed = BoundaryCondition::dirichlet(
        [init = c.initial](double x, double y, double) { return init(x, y); });
    for (const char* side : {"left", "right", "bottom", "top"}) c.bcs[side] = fixed;
    return c;
  }
  if (name == "double_mach") {
    CaseSpec c;
    c.name = name;
    c.x1 = 4.0;
    c.t_end = 0.2;
    c.default_nx = 240;
    c.default_ny = 60;
    const Primitive post{8.0, 7.145, -4.125, 116.5};
    const Primitive pre{1.4, 0.0, 0.0, 1.0};
    const double s3 = std::sqrt(3.0);
    c.initial = [=](double x, double y) { return y < s3 * (x - 1.0 / 6.0) ? pre : post; };
    c.tagger = [](const std::string& side, Vec2 mid) {
      if (side == "bottom" && mid.x < 1.0 / 6.0) return std::string("bottom_inflow");
      return side;
    };
    const auto fixed_post = BoundaryCondition::inflow([=](double, double, double) { return post; });
    c.bcs["left"] = fixed_post;
    c.bcs["bottom_inflow"] = fixed_post;
    c.bcs["bottom"] = BoundaryCondition::slipwall();
    c.bcs["right"] = BoundaryCondition::outflow();
    c.bcs["top"] = BoundaryCondition::dmr_top(
        [=](double x, double, double t) { return x < double_mach_shock_x(t) ? post : pre; });
    return c;
  }
  if (name == "shock_vortex" || name == "strong_shock_vortex") {
    const bool strong = name == "strong_shock_vortex";
    const double ms = strong ? 1.5 : 1.1;
    const double x_shock = strong ? 0.5 : 2.0;
    const double alpha = 0.204;
    double eps = 0.3;
    if (strong) {
      // Peak swirl speed eps * exp(alpha - 1/2) / sqrt(2 alpha) set to Mv * c0.
      const double mv = 0.9;
      eps = mv * std::sqrt(g) * std::sqrt(2.0 * alpha) * std::exp(0.5 - alpha);
    }
    const VortexProfile vortex{eps, alpha, 0.05, 0.25, 0.5};
    const Primitive up{1.0, std::sqrt(g) * ms, 0.0, 1.0};
    const Primitive down = normal_shock_downstream(ms, 1.0, 1.0);
    CaseSpec c;
    c.name = name;
    c.x1 = strong ? 2.0 : 4.0;
    c.t_end = strong ? 7.0 : 2.0;
    c.default_nx = strong ? 180 : 88;
    c.default_ny = strong ? 90 : 22;
    c.initial = [=](double x, double y) {
      if (x >= x_shock) return down;
      return vortex.apply(x, y, up.u);
    };
    c.bcs["bottom"] = BoundaryCondition::slipwall();
    c.bcs["top"] = BoundaryCondition::slipwall();
    // The strong vortex leaves through the subsonic right boundary with local
    // backflow; a copied exterior state lets the incoming acoustic wave grow
    // there, so that case uses the downstream state as a far field.
    if (strong)
      c.bcs["right"] = BoundaryCondition::dirichlet([=](double, double, double) { return down; });
    else
      c.bcs["right"] = BoundaryCondition::outflow();
    // Upstream of the shock the exact solution is the vortex carried by the
    // mean flow; the supersonic inflow boundary takes it from there.
    c.bcs["left"] = BoundaryCondition::inflow(
        [=](double x, double y, double t) { return vortex.apply(x - up.u * t, y, up.u); });
    return c;
  }
  throw ConfigError("unknown case '" + name + "'");
}

/// Grid description for a case on an nx x ny mesh.
inline GridSpec case_grid(const CaseSpec& c, int nx, int ny, double jitter = 0.0, bool rotate = false,
                          std::uint64_t seed = 1) {
  GridSpec g;
  g.nx = nx;
  g.ny = ny;
  g.x0 = c.x0;
  g.x1 = c.x1;
  g.y0 = c.y0;
  g.y1 = c.y1;
  g.jitter = jitter;
  g.rotate = rotate;
  g.seed = seed;
  g.periodic_x = c.periodic_x;
  g.periodic_y = c.periodic_y;
  g.tagger = c.tagger;
  return g;
}

struct ErrorReport {
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
  std::size_t points = 0;
};

inline ErrorReport error_norms(std::span<const double> numeric, std::span<const double> exact) {
  if (numeric.size() != exact.size() || numeric.empty())
    throw std::invalid_argument("error_norms: size mismatch or empty field");
  ErrorReport r;
  r.points = numeric.size();
  double s1 = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < numeric.size(); ++i) {
    const double d = std::abs(numeric[i] - exact[i]);
    s1 += d;
    s2 += d * d;
    r.linf = std::max(r.linf, d);
  }
  r.l1 = s1 / static_cast<double>(r.points);
  r.l2 = std::sqrt(s2 / static_cast<double>(r.points));
  return r;
}

/// Density errors of the solver state against an exact solution at time t.
inline ErrorReport density_errors(const Solver& solver,
                                  const std::function<Primitive(double, double, double)>& exact,
                                  double t) {
  const auto& geo = solver.geometry();
  const auto& u = solver.state();
  std::vector<double> num(u.size()), ex(u.size());
  for (std::size_t p = 0; p < u.size(); ++p) {
    num[p] = u[p][0];
    const Vec2 x = geo.position(p);
    ex[p] = exact(x.x, x.y, t).rho;
  }
  return error_norms(num, ex);
}

struct ConvergenceLevel {
  int cells = 0;  // per direction
  ErrorReport error;
  double order_l1 = 0.0, order_l2 = 0.0, order_linf = 0.0;  // 0 on the first level
  std::size_t steps = 0;
};

inline double observed_order(double e_coarse, double e_fine, double ratio) {
  return std::log(e_coarse / e_fine) / std::log(ratio);
}

/// Runs the case on n x n grids for each n in `levels` and reports density
/// errors at the case end time with observed orders between levels.
inline std::vector<ConvergenceLevel> convergence_study(const CaseSpec& c, const std::vector<int>& levels,
                                                       const SolverConfig& config, double jitter = 0.0) {
  if (!c.exact) throw ConfigError("case '" + c.name + "' has no exact solution");
  std::vector<ConvergenceLevel> out;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const Mesh mesh = generate_grid(case_grid(c, levels[i], levels[i], jitter));
    Solver solver(mesh, config, c.bcs);
    solver.set_initial(c.initial);
    const RunStats st = run(solver, c.t_end);
    ConvergenceLevel lv;
    lv.cells = levels[i];
    lv.error = density_errors(solver, c.exact, c.t_end);
    lv.steps = st.steps;
    if (i > 0) {
      const double ratio = static_cast<double>(levels[i]) / levels[i - 1];
      const auto& prev = out.back().error;
      lv.order_l1 = observed_order(prev.l1, lv.error.l1, ratio);
      lv.order_l2 = observed_order(prev.l2, lv.error.l2, ratio);
      lv.order_linf = observed_order(prev.linf, lv.error.linf, ratio);
    }
    out.push_back(lv);
  }
  return out;
}

}  // namespace cprsc
