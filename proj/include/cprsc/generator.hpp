#pragma once

// Built-in rectangular mesh generator: nx x ny quads with optional random
// node jitter and random rotation of the local node ordering, which gives the
// solver the same connectivity variety (reversed faces, arbitrary local face
// ids) as a genuinely unstructured mesh.

#include <cstdint>
#include <functional>
#include <random>
#include <string>

#include "cprsc/mesh.hpp"
#include "cprsc/types.hpp"

namespace cprsc {

struct GridSpec {
  int nx = 10;
  int ny = 10;
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
  double jitter = 0.0;  // fraction of the spacing; boundary nodes stay fixed
  bool rotate = false;  // random cyclic shift of each element's node list
  std::uint64_t seed = 1;
  bool periodic_x = false;
  bool periodic_y = false;
  /// Optional override for boundary tags: receives the default tag
  /// ("left", "right", "bottom", "top") and the face midpoint.
  std::function<std::string(const std::string&, Vec2)> tagger;
};

inline Mesh generate_grid(const GridSpec& g) {
  if (g.nx < 1 || g.ny < 1) throw ConfigError("grid needs at least one cell per direction");
  if (!(g.x1 > g.x0) || !(g.y1 > g.y0)) throw ConfigError("grid extents must be increasing");
  if (g.jitter < 0.0 || g.jitter >= 0.5) throw ConfigError("jitter must be in [0, 0.5)");

  const double hx = (g.x1 - g.x0) / g.nx;
  const double hy = (g.y1 - g.y0) / g.ny;
  std::mt19937_64 rng(g.seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);

  Mesh mesh;
  const auto node_id = [&](int i, int j) { return j * (g.nx + 1) + i; };
  mesh.nodes.resize(static_cast<std::size_t>((g.nx + 1) * (g.ny + 1)));
  for (int j = 0; j <= g.ny; ++j) {
    for (int i = 0; i <= g.nx; ++i) {
      Vec2 p{i == g.nx ? g.x1 : g.x0 + i * hx, j == g.ny ? g.y1 : g.y0 + j * hy};
      const double dx = uni(rng);
      const double dy = uni(rng);
      if (i > 0 && i < g.nx && j > 0 && j < g.ny) {
        p.x += g.jitter * hx * dx;
        p.y += g.jitter * hy * dy;
      }
      mesh.nodes[node_id(i, j)] = p;
    }
  }

  std::uniform_int_distribution<int> shift_dist(0, 3);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const std::array<int, 4> ids{node_id(i, j), node_id(i + 1, j), node_id(i + 1, j + 1),
                                   node_id(i, j + 1)};
      const int s = g.rotate ? shift_dist(rng) : 0;
      QuadElement q;
      for (int c = 0; c < 4; ++c) q.node_ids[c] = ids[(c + s) % 4];
      const int e = static_cast<int>(mesh.elements.size());
      mesh.elements.push_back(q);
      // Structured face f (0 south, 1 east, 2 north, 3 west) is local face (f - s) mod 4.
      const auto add = [&](int f, const std::string& side, bool periodic, const char* ptag) {
        const int local = (f - s + 4) % 4;
        const Vec2 a = mesh.nodes[ids[f]];
        const Vec2 b = mesh.nodes[ids[(f + 1) % 4]];
        std::string tag = periodic ? std::string(ptag) : side;
        if (!periodic && g.tagger) tag = g.tagger(side, 0.5 * (a + b));
        mesh.boundary_faces.push_back({e, local, tag});
      };
      if (j == 0) add(0, "bottom", g.periodic_y, "periodic_y");
      if (i == g.nx - 1) add(1, "right", g.periodic_x, "periodic_x");
      if (j == g.ny - 1) add(2, "top", g.periodic_y, "periodic_y");
      if (i == 0) add(3, "left", g.periodic_x, "periodic_x");
    }
  }
  if (g.periodic_x) mesh.periodic.push_back({"periodic_x", {g.x1 - g.x0, 0.0}});
  if (g.periodic_y) mesh.periodic.push_back({"periodic_y", {0.0, g.y1 - g.y0}});
  return build_connectivity(std::move(mesh));
}

}  // namespace cprsc
