#pragma once

// Hybrid time marching. Every residual evaluation runs three phases over the
// mesh: troubled-cell detection, interface Riemann fluxes from side values
// chosen by cell type, and element residuals (CPR on smooth cells, CNNW2 on
// troubled ones). Time integration is three-stage SSP Runge-Kutta.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cprsc/basis.hpp"
#include "cprsc/cnnw2.hpp"
#include "cprsc/cpr.hpp"
#include "cprsc/detector.hpp"
#include "cprsc/geometry.hpp"
#include "cprsc/mesh.hpp"
#include "cprsc/physics.hpp"
#include "cprsc/types.hpp"

namespace cprsc {

using StateFn = std::function<Primitive(double x, double y, double t)>;

enum class BcKind { dirichlet, slipwall, inflow, outflow, dmr_top };

struct BoundaryCondition {
  BcKind kind = BcKind::outflow;
  StateFn state;  // used by dirichlet, inflow and dmr_top

  static BoundaryCondition slipwall() { return {BcKind::slipwall, {}}; }
  static BoundaryCondition outflow() { return {BcKind::outflow, {}}; }
  static BoundaryCondition dirichlet(StateFn f) { return {BcKind::dirichlet, std::move(f)}; }
  static BoundaryCondition inflow(StateFn f) { return {BcKind::inflow, std::move(f)}; }
  static BoundaryCondition dmr_top(StateFn f) { return {BcKind::dmr_top, std::move(f)}; }
};

/// Boundary conditions keyed by mesh boundary tag. Periodic tags are handled
/// by the mesh connectivity and need no entry.
using BoundaryMap = std::map<std::string, BoundaryCondition>;

/// Exterior state seen by a boundary face point.
inline Primitive ghost_state(const BoundaryCondition& bc, const Primitive& interior, Vec2 normal,
                             Vec2 position, double t) {
  switch (bc.kind) {
    case BcKind::outflow:
      return interior;
    case BcKind::slipwall: {
      const double vn = interior.u * normal.x + interior.v * normal.y;
      return {interior.rho, interior.u - 2.0 * vn * normal.x, interior.v - 2.0 * vn * normal.y,
              interior.p};
    }
    case BcKind::dirichlet:
    case BcKind::inflow:
    case BcKind::dmr_top:
      return bc.state(position.x, position.y, t);
  }
  return interior;
}

/// Position where the Mach 10 shock of the double Mach reflection crosses y = 1.
inline double double_mach_shock_x(double t) { return 1.0 / 6.0 + (1.0 + 20.0 * t) / std::sqrt(3.0); }

enum class SchemeMode { cpr, cnnw2, hybrid };
enum class DetectionTiming { per_stage, per_step };

struct SolverConfig {
  int order = 4;
  double cfl = 0.2;
  SchemeMode scheme = SchemeMode::hybrid;
  IndicatorConfig indicator;
  bool limiter = true;
  DetectionTiming timing = DetectionTiming::per_stage;

  void validate() const {
    if (order < kMinDegree || order > kMaxDegree)
      throw ConfigError("order must be in [1, 6], got " + std::to_string(order));
    // cfl = 0 is accepted here (zero step); run configurations require cfl > 0.
    if (!(cfl >= 0.0) || cfl > 1.0) throw ConfigError("cfl must be in [0, 1]");
    indicator.validate();
  }
};

using Field = std::vector<Conservative>;

/// out = a*u0 + b*(u + dt*l), elementwise.
inline void rk_combine(double& out, double a, double u0, double b, double u, double dt, double l) {
  out = a * u0 + b * (u + dt * l);
}

inline void rk_combine(Field& out, double a, const Field& u0, double b, const Field& u, double dt,
                       const Field& l) {
  out.resize(u0.size());
  for (std::size_t i = 0; i < u0.size(); ++i) out[i] = a * u0[i] + b * (u[i] + dt * l[i]);
}

/// One Shu-Osher SSP-RK3 step. `rhs(state, stage, out)` evaluates the time
/// derivative; stage is 0, 1 or 2 and its time offset is 0, dt and dt/2.
template <class State>
struct RkWorkspace {
  State l{}, u1{}, u2{};
};

template <class State, class Rhs>
void ssp_rk3_step(State& u, double dt, Rhs&& rhs, RkWorkspace<State>& ws) {
  auto& [l, u1, u2] = ws;
  rhs(u, 0, l);
  rk_combine(u1, 0.0, u, 1.0, u, dt, l);
  rhs(u1, 1, l);
  rk_combine(u2, 0.75, u, 0.25, u1, dt, l);
  rhs(u2, 2, l);
  rk_combine(u, 1.0 / 3.0, u, 2.0 / 3.0, u2, dt, l);
}

template <class State, class Rhs>
void ssp_rk3_step(State& u, double dt, Rhs&& rhs) {
  RkWorkspace<State> ws;
  ssp_rk3_step(u, dt, std::forward<Rhs>(rhs), ws);
}

class Solver {
 public:
  Solver(const Mesh& mesh, SolverConfig config, const BoundaryMap& bcs)
      : config_((config.validate(), config)),
        basis_(config.order),
        geo_(mesh, basis_),
        mesh_(&mesh) {
    for (const auto& tag : mesh.tags) {
      auto it = bcs.find(tag);
      if (it == bcs.end()) throw ConfigError("no boundary condition for tag '" + tag + "'");
      bcs_.push_back(it->second);
    }
    const std::size_t np = geo_.num_points();
    const std::size_t nf = geo_.faces().size();
    u_.assign(np, Conservative{});
    prims_.resize(np);
    halo_.resize(nf);
    side_.resize(nf);
    flux_.resize(nf);
    mask_.assign(geo_.num_elements(), 0);
    energy_.assign(geo_.num_elements(), 0.0);
  }

  const SolverConfig& config() const { return config_; }
  const ElementBasis& basis() const { return basis_; }
  const SolverGeometry& geometry() const { return geo_; }
  const Mesh& mesh() const { return *mesh_; }
  std::size_t num_elements() const { return geo_.num_elements(); }

  Field& state() { return u_; }
  const Field& state() const { return u_; }
  double time() const { return time_; }
  void set_time(double t) { time_ = t; }
  std::size_t steps() const { return steps_; }

  /// Troubled flags (1 = CNNW2) and energy ratios from the latest evaluation.
  const std::vector<std::uint8_t>& mask() const { return mask_; }
  const std::vector<double>& energy() const { return energy_; }
  double troubled_fraction() const {
    std::size_t c = 0;
    for (auto m : mask_) c += m;
    return mask_.empty() ? 0.0 : static_cast<double>(c) / static_cast<double>(mask_.size());
  }

  void set_initial(const std::function<Primitive(double, double)>& init) {
    for (std::size_t p = 0; p < u_.size(); ++p) {
      const Vec2 x = geo_.position(p);
      const Primitive w = init(x.x, x.y);
      if (!is_valid(w))
        throw InvalidStateError("initial state invalid", static_cast<int>(p / geo_.points_per_element()),
                                static_cast<int>(p));
      u_[p] = prim_to_cons(w);
    }
    time_ = 0.0;
    steps_ = 0;
  }

  /// Primitive states at the solution points of `u`. Throws on invalid states.
  std::vector<Primitive> primitives(const Field& u) const {
    std::vector<Primitive> out(u.size());
    for (std::size_t p = 0; p < u.size(); ++p) out[p] = to_prim(u[p], p);
    return out;
  }

  /// Runs the indicator on `u` and stores the result in mask()/energy(),
  /// independently of the scheme mode.
  void detect_mask(const Field& u, double t) {
    fill_primitives(u);
    fill_halo(t);
    run_detection();
  }

  double compute_dt(const Field& u) const {
    double dt = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < u.size(); ++p) {
      const Primitive w = to_prim(u[p], p);
      const double lam = std::sqrt(w.u * w.u + w.v * w.v) + sound_speed(w);
      dt = std::min(dt, geo_.dt_length(p) / lam);
    }
    return config_.cfl * dt;
  }
  double compute_dt() const { return compute_dt(u_); }

  /// dU/dt at every solution point. `refresh_mask` controls whether the
  /// indicator is re-run (hybrid mode only).
  void residual(const Field& u, double t, bool refresh_mask, Field& out) {
    fill_primitives(u);
    fill_halo(t);
    switch (config_.scheme) {
      case SchemeMode::cpr:
        std::fill(mask_.begin(), mask_.end(), 0);
        break;
      case SchemeMode::cnnw2:
        std::fill(mask_.begin(), mask_.end(), 1);
        break;
      case SchemeMode::hybrid:
        if (refresh_mask) run_detection();
        break;
    }
    fill_side_values();
    fill_face_fluxes(t);
    element_residuals(out);
  }

  void step(double dt) {
    const double t0 = time_;
    ssp_rk3_step(u_, dt, [&](const Field& u, int stage, Field& out) {
      const double t = t0 + (stage == 0 ? 0.0 : stage == 1 ? dt : 0.5 * dt);
      const bool refresh = stage == 0 || config_.timing == DetectionTiming::per_stage;
      residual(u, t, refresh, out);
      if (stage == 0) stage0_fraction_ = troubled_fraction();
    }, rk_);
    time_ = t0 + dt;
    ++steps_;
  }

  /// Troubled fraction seen by the first stage of the latest step.
  double step_fraction() const { return stage0_fraction_; }

  /// Total of the conserved variables, sum of w_k w_l |J| U.
  Conservative integral(const Field& u) const {
    const std::size_t n = geo_.points_per_line();
    const auto& w = basis_.points.weights;
    Conservative s{};
    for (std::size_t p = 0; p < u.size(); ++p) {
      const std::size_t q = p % (n * n);
      s += (w[q % n] * w[q / n] * geo_.jac(p)) * u[p];
    }
    return s;
  }

 private:
  Primitive to_prim(const Conservative& u, std::size_t p) const {
    const Primitive w = cons_to_prim_unchecked(u);
    if (!is_valid(w))
      throw InvalidStateError("invalid state at solution point " + std::to_string(p),
                              static_cast<int>(p / geo_.points_per_element()), static_cast<int>(p));
    return w;
  }

  void fill_primitives(const Field& u) {
    for (std::size_t p = 0; p < u.size(); ++p) prims_[p] = to_prim(u[p], p);
  }

  void fill_halo(double t) {
    const auto& faces = geo_.faces();
    for (std::size_t i = 0; i < faces.size(); ++i) {
      const FacePoint& f = faces[i];
      if (f.neighbor_point >= 0)
        halo_[i] = prims_[f.neighbor_point];
      else
        halo_[i] = ghost_state(bcs_[f.boundary], prims_[f.own_point], f.normal, f.position, t);
    }
  }

  std::span<const Primitive> element_prims(std::size_t e) const {
    const std::size_t np = geo_.points_per_element();
    return std::span<const Primitive>(prims_).subspan(e * np, np);
  }
  std::span<const Primitive> element_halo(std::size_t e) const {
    const std::size_t nf = 4 * geo_.points_per_line();
    return std::span<const Primitive>(halo_).subspan(e * nf, nf);
  }

  void run_detection() {
    for (std::size_t e = 0; e < geo_.num_elements(); ++e) {
      const Detection d = detect(element_prims(e), element_halo(e), basis_, config_.indicator);
      mask_[e] = d.troubled ? 1 : 0;
      energy_[e] = d.energy;
    }
  }

  void fill_side_values() {
    const std::size_t n = geo_.points_per_line();
    for (std::size_t e = 0; e < geo_.num_elements(); ++e) {
      std::span<Primitive> side = std::span<Primitive>(side_).subspan(e * 4 * n, 4 * n);
      if (!mask_[e]) {
        bool ok = true;
        for (int f = 0; f < 4; ++f) {
          interface_trace(element_prims(e), f, basis_.lagrange, side.subspan(f * n, n));
          for (std::size_t k = 0; k < n; ++k) ok = ok && is_valid(side[f * n + k]);
        }
        if (ok) continue;
        if (config_.scheme == SchemeMode::cpr)
          throw InvalidStateError("invalid interface trace in element " + std::to_string(e),
                                  static_cast<int>(e));
        mask_[e] = 1;
      }
      cnnw2_face_values(element_prims(e), element_halo(e), geo_, e, config_.limiter, side);
      for (std::size_t i = 0; i < 4 * n; ++i)
        if (!is_valid(side[i]))
          throw InvalidStateError("invalid subcell face value in element " + std::to_string(e),
                                  static_cast<int>(e));
    }
  }

  void fill_face_fluxes(double t) {
    const auto& faces = geo_.faces();
    for (std::size_t i = 0; i < faces.size(); ++i) {
      const FacePoint& f = faces[i];
      if (f.neighbor_point >= 0) {
        const auto j = static_cast<std::size_t>(f.neighbor_slot);
        if (j < i) continue;
        const Flux fl = f.area * llf_flux(side_[i], side_[j], f.normal);
        flux_[i] = fl;
        flux_[j] = -1.0 * fl;
      } else {
        const Primitive ghost = ghost_state(bcs_[f.boundary], side_[i], f.normal, f.position, t);
        flux_[i] = f.area * llf_flux(side_[i], ghost, f.normal);
      }
    }
  }

  void element_residuals(Field& out) {
    const std::size_t n = geo_.points_per_line();
    const std::size_t np = n * n;
    out.resize(geo_.num_points());
    for (std::size_t e = 0; e < geo_.num_elements(); ++e) {
      std::span<const Flux> ff = std::span<const Flux>(flux_).subspan(e * 4 * n, 4 * n);
      std::span<Vec4> r = std::span<Vec4>(out).subspan(e * np, np);
      if (mask_[e])
        cnnw2_residual(element_prims(e), element_halo(e), ff, geo_, e, config_.limiter, r);
      else
        cpr_residual(element_prims(e), ff, geo_, e, basis_, r);
      for (std::size_t q = 0; q < np; ++q) r[q] *= 1.0 / geo_.jac(e * np + q);
    }
  }

  SolverConfig config_;
  ElementBasis basis_;
  SolverGeometry geo_;
  const Mesh* mesh_;
  std::vector<BoundaryCondition> bcs_;
  Field u_;
  RkWorkspace<Field> rk_;
  double time_ = 0.0;
  std::size_t steps_ = 0;
  double stage0_fraction_ = 0.0;
  std::vector<Primitive> prims_;
  std::vector<Primitive> halo_;
  std::vector<Primitive> side_;
  std::vector<Flux> flux_;
  std::vector<std::uint8_t> mask_;
  std::vector<double> energy_;
};

struct RunStats {
  std::size_t steps = 0;
  double time = 0.0;
  double mean_fraction = 0.0;   // troubled fraction averaged over steps
  double final_fraction = 0.0;  // indicator on the final state
  double rho_min = std::numeric_limits<double>::infinity();
  double p_min = std::numeric_limits<double>::infinity();
};

struct RunHooks {
  double frame_interval = 0.0;  // 0 disables intermediate frames
  std::function<void(const Solver&, int frame)> on_frame;
  std::function<void(Solver&, const InvalidStateError&)> on_failure;
  std::function<void(const Solver&)> on_step;
};

inline void track_extrema(const Solver& s, RunStats& st) {
  for (const auto& u : s.state()) {
    const Primitive w = cons_to_prim_unchecked(u);
    st.rho_min = std::min(st.rho_min, w.rho);
    st.p_min = std::min(st.p_min, w.p);
  }
}

/// Marches to t_end; the last step is shortened to land on t_end exactly.
/// On an invalid state the last accepted state is passed to on_failure and
/// the error is rethrown.
inline RunStats run(Solver& solver, double t_end, const RunHooks& hooks = {}) {
  RunStats st;
  track_extrema(solver, st);
  int frame = 0;
  double next_frame = hooks.frame_interval > 0.0 ? hooks.frame_interval : t_end;
  double fraction_sum = 0.0;
  if (hooks.on_frame) hooks.on_frame(solver, frame++);
  Field backup;
  double backup_time = 0.0;
  try {
    while (solver.time() < t_end) {
      double dt = solver.compute_dt();
      if (!(dt > 0.0) || !std::isfinite(dt))
        throw InvalidStateError("non-positive time step at t=" + std::to_string(solver.time()));
      bool last = false;
      if (solver.time() + dt >= t_end) {
        dt = t_end - solver.time();
        last = true;
      }
      backup = solver.state();
      backup_time = solver.time();
      solver.step(dt);
      if (last) solver.set_time(t_end);
      fraction_sum += solver.step_fraction();
      track_extrema(solver, st);
      if (hooks.on_step) hooks.on_step(solver);
      if (hooks.on_frame && hooks.frame_interval > 0.0 && solver.time() >= next_frame &&
          solver.time() < t_end) {
        hooks.on_frame(solver, frame++);
        next_frame += hooks.frame_interval;
      }
    }
    solver.detect_mask(solver.state(), solver.time());
  } catch (const InvalidStateError& err) {
    if (!backup.empty()) {
      solver.state() = backup;
      solver.set_time(backup_time);
    }
    if (hooks.on_failure) hooks.on_failure(solver, err);
    throw;
  }
  st.steps = solver.steps();
  st.time = solver.time();
  st.mean_fraction = st.steps ? fraction_sum / static_cast<double>(st.steps) : solver.troubled_fraction();
  st.final_fraction = solver.troubled_fraction();
  if (hooks.on_frame && st.steps > 0) hooks.on_frame(solver, frame++);
  return st;
}

}  // namespace cprsc
