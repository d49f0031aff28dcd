// Command-line front end: run a benchmark case, run a convergence study or
// write a generated mesh to disk.

#include <chrono>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "cprsc/cases.hpp"
#include "cprsc/config.hpp"
#include "cprsc/driver.hpp"
#include "cprsc/io.hpp"

namespace {

using Entries = std::vector<std::pair<std::string, std::string>>;

struct FlagSet {
  std::string config_file;
  std::vector<std::pair<std::string, std::string>> values;  // key, storage
  std::vector<CLI::Option*> options;
  std::deque<std::string> storage;  // stable addresses for CLI11

  void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    storage.emplace_back();
    options.push_back(app->add_option(flag, storage.back(), help));
    values.emplace_back(key, "");
  }

  Entries given() const {
    Entries out;
    for (std::size_t i = 0; i < options.size(); ++i)
      if (options[i]->count() > 0) out.emplace_back(values[i].first, storage[i]);
    return out;
  }
};

void add_common(CLI::App* app, FlagSet& f) {
  f.add(app, "--case", "case", "vortex, sod, lax, shu_osher, riemann2d, double_mach, shock_vortex, strong_shock_vortex");
  f.add(app, "--mesh", "mesh", "mesh file or grid:NXxNY[:jitter=J][:seed=S][:rotate=1]");
  f.add(app, "--order", "order", "polynomial degree N (1..6)");
  f.add(app, "--cfl", "cfl", "CFL number in (0, 1]");
  f.add(app, "--t-end", "t_end", "override the case end time");
  f.add(app, "--scheme", "scheme", "cpr, cnnw2 or hybrid");
  f.add(app, "--indicator", "indicator", "original or improved");
  f.add(app, "--variable", "variable", "detection variable: rho or rho_p");
  f.add(app, "--detection", "detection", "indicator timing: stage or step");
  f.add(app, "--limiter", "limiter", "Barth limiter in CNNW2 (1 or 0)");
  f.add(app, "--out", "out", "output directory");
  app->add_option("--config", f.config_file, "key=value configuration file");
}

cprsc::RunConfig load(const FlagSet& f) {
  if (f.config_file.empty()) return cprsc::parse_config(f.given());
  return cprsc::parse_config(f.given(), std::filesystem::path(f.config_file));
}

std::string frame_name(const std::string& case_name, int frame) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "_%04d.vtk", frame);
  return case_name + buf;
}

int run_case(const cprsc::RunConfig& rc) {
  const cprsc::CaseSpec spec = cprsc::init_case(rc.case_name);
  const cprsc::Mesh mesh = cprsc::make_mesh(rc.mesh, spec);
  cprsc::Solver solver(mesh, rc.solver_config(), spec.bcs);
  solver.set_initial(spec.initial);
  solver.detect_mask(solver.state(), 0.0);
  const double t_end = rc.t_end.value_or(spec.t_end);
  const std::filesystem::path out(rc.out);
  std::filesystem::create_directories(out);

  cprsc::RunHooks hooks;
  hooks.frame_interval = rc.frame_interval;
  hooks.on_frame = [&](const cprsc::Solver& s, int frame) {
    cprsc::write_vtk(s, out / frame_name(rc.case_name, frame));
  };
  hooks.on_failure = [&](cprsc::Solver& s, const cprsc::InvalidStateError& err) {
    std::cerr << "run aborted at t=" << s.time() << ": " << err.what() << "\n";
    try {
      s.detect_mask(s.state(), s.time());
    } catch (const cprsc::InvalidStateError&) {
      // keep the mask of the failing stage
    }
    cprsc::write_vtk(s, out / (rc.case_name + "_failure.vtk"));
  };

  const auto start = std::chrono::steady_clock::now();
  cprsc::RunSummary summary;
  summary.case_name = rc.case_name;
  summary.elements = mesh.num_elements();
  summary.order = rc.order;
  try {
    summary.stats = cprsc::run(solver, t_end, hooks);
  } catch (const cprsc::InvalidStateError&) {
    return 2;
  }
  summary.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (spec.exact) summary.errors = cprsc::density_errors(solver, spec.exact, solver.time());
  for (double y0 : rc.slices) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "_slice_y%g.csv", y0);
    cprsc::write_slice(solver, y0, out / (rc.case_name + buf));
  }
  const std::string text = cprsc::report(summary);
  std::cout << text;
  std::ofstream(out / (rc.case_name + "_summary.txt")) << text;
  return 0;
}

int run_convergence(const cprsc::RunConfig& rc) {
  const cprsc::CaseSpec spec = cprsc::init_case(rc.case_name.empty() ? "vortex" : rc.case_name);
  cprsc::CaseSpec c = spec;
  if (rc.t_end) c.t_end = *rc.t_end;
  const auto levels = cprsc::convergence_study(c, rc.levels, rc.solver_config());
  std::cout << cprsc::convergence_table(levels);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"High-order CPR solver with subcell limiting for the 2D Euler equations"};
  app.require_subcommand(1);

  FlagSet run_flags;
  CLI::App* run = app.add_subcommand("run", "run one case");
  add_common(run, run_flags);
  run_flags.add(run, "--frame-interval", "frame_interval", "simulated time between VTK frames");
  run_flags.add(run, "--slices", "slices", "comma separated y values for CSV slices");

  FlagSet conv_flags;
  CLI::App* conv = app.add_subcommand("convergence", "density error convergence study");
  add_common(conv, conv_flags);
  conv_flags.add(conv, "--levels", "levels", "comma separated cells per direction");

  std::string mesh_case, mesh_spec, mesh_out;
  CLI::App* mesh_cmd = app.add_subcommand("mesh", "write a generated mesh in the ASCII format");
  mesh_cmd->add_option("--case", mesh_case, "case whose domain and boundary tags are used")->required();
  mesh_cmd->add_option("--mesh", mesh_spec, "grid:NXxNY[:jitter=J][:seed=S][:rotate=1]");
  mesh_cmd->add_option("--out", mesh_out, "output file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const auto rc = load(run_flags);
      if (rc.case_name.empty()) throw cprsc::ConfigError("no case given");
      return run_case(rc);
    }
    if (*conv) return run_convergence(load(conv_flags));
    if (*mesh_cmd) {
      const auto m = cprsc::make_mesh(mesh_spec, cprsc::init_case(mesh_case));
      std::ofstream out(mesh_out);
      if (!out) throw cprsc::IoError("cannot open " + mesh_out);
      cprsc::write_mesh(m, out);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
