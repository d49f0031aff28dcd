#pragma once

// Straight-sided unstructured quadrilateral meshes: ASCII I/O, face
// connectivity (including periodic pairing), the bilinear reference map and
// its metric terms.
//
// Reference cell corners, in node order: (-1,-1), (1,-1), (1,1), (-1,1).
// Local face f joins corners f and f+1 (0 south, 1 east, 2 north, 3 west) and
// is traversed counter-clockwise; points on a face are indexed along that
// traversal.

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cprsc/basis.hpp"
#include "cprsc/types.hpp"

namespace cprsc {

using Node = Vec2;

inline constexpr int kFacesPerElement = 4;

enum class FaceSide { south = 0, east = 1, north = 2, west = 3 };

/// Adjacency record of one element face.
struct FaceLink {
  int neighbor = -1;       // neighboring element, -1 on a physical boundary
  int neighbor_face = -1;  // local face id in the neighbor
  bool reversed = false;   // neighbor traverses the shared edge in the opposite direction
  int boundary = -1;       // index into Mesh::tags when this is a physical boundary
  Vec2 shift{};            // translation taking neighbor coordinates next to this face (periodic)

  bool interior() const { return neighbor >= 0; }
};

struct QuadElement {
  std::array<int, 4> node_ids{};
  std::array<FaceLink, 4> face_neighbors{};
};

struct BoundaryFace {
  int element = -1;
  int face = -1;
  std::string tag;
};

struct PeriodicPairing {
  std::string tag;
  Vec2 translation;
};

struct Mesh {
  std::vector<Node> nodes;
  std::vector<QuadElement> elements;
  std::vector<BoundaryFace> boundary_faces;
  std::vector<PeriodicPairing> periodic;
  std::vector<std::string> tags;  // distinct non-periodic boundary tags

  std::size_t num_elements() const { return elements.size(); }

  std::size_t num_interior_faces() const {
    std::size_t links = 0;
    for (const auto& e : elements)
      for (const auto& f : e.face_neighbors) links += f.interior() ? 1 : 0;
    return links / 2;
  }

  std::size_t num_physical_boundary_faces() const {
    std::size_t n = 0;
    for (const auto& e : elements)
      for (const auto& f : e.face_neighbors) n += f.interior() ? 0 : 1;
    return n;
  }
};

inline std::array<Vec2, 4> element_corners(const Mesh& mesh, std::size_t e) {
  const auto& ids = mesh.elements[e].node_ids;
  return {mesh.nodes[ids[0]], mesh.nodes[ids[1]], mesh.nodes[ids[2]], mesh.nodes[ids[3]]};
}

inline constexpr std::array<Vec2, 4> kReferenceCorners{
    Vec2{-1.0, -1.0}, Vec2{1.0, -1.0}, Vec2{1.0, 1.0}, Vec2{-1.0, 1.0}};

/// Bilinear shape function M_i = (1 + xi_i xi)(1 + eta_i eta) / 4.
inline double shape_function(int i, double xi, double eta) {
  return 0.25 * (1.0 + kReferenceCorners[i].x * xi) * (1.0 + kReferenceCorners[i].y * eta);
}

inline Vec2 map_to_physical(const std::array<Vec2, 4>& corners, double xi, double eta) {
  Vec2 p{};
  for (int i = 0; i < 4; ++i) p = p + shape_function(i, xi, eta) * corners[i];
  return p;
}

inline Vec2 map_to_physical(const Mesh& mesh, const QuadElement& elem, double xi, double eta) {
  std::array<Vec2, 4> c{};
  for (int i = 0; i < 4; ++i) c[i] = mesh.nodes[elem.node_ids[i]];
  return map_to_physical(c, xi, eta);
}

struct Jacobian {
  double x_xi = 0.0, x_eta = 0.0, y_xi = 0.0, y_eta = 0.0;
  double det() const { return x_xi * y_eta - x_eta * y_xi; }
};

inline Jacobian jacobian(const std::array<Vec2, 4>& corners, double xi, double eta) {
  Jacobian j;
  for (int i = 0; i < 4; ++i) {
    const double xi_i = kReferenceCorners[i].x;
    const double eta_i = kReferenceCorners[i].y;
    const double dm_dxi = 0.25 * xi_i * (1.0 + eta_i * eta);
    const double dm_deta = 0.25 * eta_i * (1.0 + xi_i * xi);
    j.x_xi += dm_dxi * corners[i].x;
    j.y_xi += dm_dxi * corners[i].y;
    j.x_eta += dm_deta * corners[i].x;
    j.y_eta += dm_deta * corners[i].y;
  }
  return j;
}

/// Reference coordinates of the point at parameter s in [-1,1] along face f
/// (counter-clockwise traversal).
inline Vec2 face_reference_point(int face, double s) {
  switch (face) {
    case 0: return {s, -1.0};
    case 1: return {1.0, s};
    case 2: return {-s, 1.0};
    default: return {-1.0, -s};
  }
}

/// (xi index, eta index) of the solution point closest to face point k.
inline std::pair<int, int> face_adjacent_point(int face, int k, int n) {
  const int last = n - 1;
  switch (face) {
    case 0: return {k, 0};
    case 1: return {last, k};
    case 2: return {last - k, last};
    default: return {0, last - k};
  }
}

// ---------------------------------------------------------------------------
// Connectivity

namespace detail {

inline bool close(Vec2 a, Vec2 b, double tol) {
  return std::abs(a.x - b.x) <= tol && std::abs(a.y - b.y) <= tol;
}

inline double length_scale(const Mesh& mesh) {
  double xmin = std::numeric_limits<double>::max(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& n : mesh.nodes) {
    xmin = std::min(xmin, n.x);
    xmax = std::max(xmax, n.x);
    ymin = std::min(ymin, n.y);
    ymax = std::max(ymax, n.y);
  }
  return std::max({xmax - xmin, ymax - ymin, 1e-300});
}

}  // namespace detail

/// Fills face adjacency, pairs periodic faces and checks topology:
/// non-manifold edges, untagged or doubly tagged boundary faces, inverted or
/// collapsed elements and orphan nodes raise TopologyError.
inline Mesh build_connectivity(Mesh mesh) {
  const int ne = static_cast<int>(mesh.elements.size());
  const int nn = static_cast<int>(mesh.nodes.size());

  std::vector<char> used(nn, 0);
  for (int e = 0; e < ne; ++e) {
    auto& elem = mesh.elements[e];
    elem.face_neighbors = {};
    const auto& ids = elem.node_ids;
    for (int i = 0; i < 4; ++i) {
      if (ids[i] < 0 || ids[i] >= nn)
        throw TopologyError("element " + std::to_string(e) + ": node index out of range");
      for (int j = i + 1; j < 4; ++j)
        if (ids[i] == ids[j])
          throw TopologyError("element " + std::to_string(e) + ": repeated node index");
      used[ids[i]] = 1;
    }
    const auto corners = element_corners(mesh, e);
    for (const auto& rc : kReferenceCorners) {
      if (!(jacobian(corners, rc.x, rc.y).det() > 0.0))
        throw TopologyError("element " + std::to_string(e) +
                            ": inverted or degenerate (nodes must be counter-clockwise)");
    }
  }
  for (int i = 0; i < nn; ++i)
    if (!used[i]) throw TopologyError("orphan node " + std::to_string(i));

  // Interior faces via sorted node-pair keys.
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> edges;
  for (int e = 0; e < ne; ++e) {
    const auto& ids = mesh.elements[e].node_ids;
    for (int f = 0; f < 4; ++f) {
      const int a = ids[f], b = ids[(f + 1) % 4];
      edges[{std::min(a, b), std::max(a, b)}].push_back({e, f});
    }
  }
  for (const auto& [key, owners] : edges) {
    if (owners.size() > 2)
      throw TopologyError("non-manifold edge (" + std::to_string(key.first) + ", " +
                          std::to_string(key.second) + ") shared by " +
                          std::to_string(owners.size()) + " elements");
    if (owners.size() != 2) continue;
    const auto [ea, fa] = owners[0];
    const auto [eb, fb] = owners[1];
    const auto& ia = mesh.elements[ea].node_ids;
    const auto& ib = mesh.elements[eb].node_ids;
    const bool reversed = ia[fa] == ib[(fb + 1) % 4];
    mesh.elements[ea].face_neighbors[fa] = FaceLink{eb, fb, reversed, -1, {}};
    mesh.elements[eb].face_neighbors[fb] = FaceLink{ea, fa, reversed, -1, {}};
  }

  // Boundary tags.
  std::map<std::string, Vec2> periodic_shift;
  for (const auto& p : mesh.periodic) periodic_shift[p.tag] = p.translation;
  mesh.tags.clear();
  std::vector<std::vector<int>> tagged(ne, std::vector<int>(4, 0));
  std::map<std::string, std::vector<std::pair<int, int>>> periodic_faces;
  for (const auto& bf : mesh.boundary_faces) {
    if (bf.element < 0 || bf.element >= ne || bf.face < 0 || bf.face > 3)
      throw TopologyError("boundary entry refers to a nonexistent face");
    auto& link = mesh.elements[bf.element].face_neighbors[bf.face];
    if (link.interior())
      throw TopologyError("boundary tag '" + bf.tag + "' on interior face of element " +
                          std::to_string(bf.element));
    if (tagged[bf.element][bf.face]++)
      throw TopologyError("face " + std::to_string(bf.face) + " of element " +
                          std::to_string(bf.element) + " tagged more than once");
    if (periodic_shift.count(bf.tag)) {
      periodic_faces[bf.tag].push_back({bf.element, bf.face});
      continue;
    }
    auto it = std::find(mesh.tags.begin(), mesh.tags.end(), bf.tag);
    if (it == mesh.tags.end()) {
      mesh.tags.push_back(bf.tag);
      it = mesh.tags.end() - 1;
    }
    link.boundary = static_cast<int>(it - mesh.tags.begin());
  }
  for (int e = 0; e < ne; ++e)
    for (int f = 0; f < 4; ++f)
      if (!mesh.elements[e].face_neighbors[f].interior() && !tagged[e][f])
        throw TopologyError("face " + std::to_string(f) + " of element " + std::to_string(e) +
                            " is neither paired nor tagged");

  // Periodic pairing: face b is the partner of face a when a + t == b.
  const double tol = 1e-9 * detail::length_scale(mesh);
  for (const auto& [tag, faces] : periodic_faces) {
    const Vec2 t = periodic_shift.at(tag);
    const auto endpoints = [&](int e, int f) {
      const auto& ids = mesh.elements[e].node_ids;
      return std::pair{mesh.nodes[ids[f]], mesh.nodes[ids[(f + 1) % 4]]};
    };
    std::vector<char> done(faces.size(), 0);
    for (std::size_t i = 0; i < faces.size(); ++i) {
      const auto [ea, fa] = faces[i];
      const auto [a0, a1] = endpoints(ea, fa);
      for (std::size_t j = 0; j < faces.size(); ++j) {
        if (i == j || done[j]) continue;
        const auto [eb, fb] = faces[j];
        const auto [b0, b1] = endpoints(eb, fb);
        const bool rev = detail::close(a0 + t, b1, tol) && detail::close(a1 + t, b0, tol);
        const bool same = detail::close(a0 + t, b0, tol) && detail::close(a1 + t, b1, tol);
        if (!rev && !same) continue;
        mesh.elements[ea].face_neighbors[fa] = FaceLink{eb, fb, rev, -1, -1.0 * t};
        mesh.elements[eb].face_neighbors[fb] = FaceLink{ea, fa, rev, -1, t};
        done[i] = done[j] = 1;
        break;
      }
    }
    for (std::size_t i = 0; i < faces.size(); ++i)
      if (!mesh.elements[faces[i].first].face_neighbors[faces[i].second].interior())
        throw TopologyError("periodic face of element " + std::to_string(faces[i].first) +
                            " has no partner under tag '" + tag + "'");
  }
  return mesh;
}

// ---------------------------------------------------------------------------
// ASCII format
//
//   QUADMESH 1
//   NODES n            followed by n lines "x y"
//   ELEMENTS m         followed by m lines "i0 i1 i2 i3" (0-based, CCW)
//   BOUNDARIES b       followed by b lines "elem face tag"
//   PERIODIC tag dx dy (optional, repeatable)

namespace detail {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-blank line, split into tokens.
  std::vector<std::string> next(const char* expecting) {
    std::string line;
    while (std::getline(in_, line)) {
      ++number_;
      std::istringstream ss(line);
      std::vector<std::string> tok;
      for (std::string t; ss >> t;) tok.push_back(t);
      if (!tok.empty()) return tok;
    }
    fail(std::string("unexpected end of file, expecting ") + expecting);
  }

  bool eof() {
    std::string line;
    while (in_.peek() != std::char_traits<char>::eof()) {
      const auto pos = in_.tellg();
      std::getline(in_, line);
      if (line.find_first_not_of(" \t\r") != std::string::npos) {
        in_.seekg(pos);
        return false;
      }
      ++number_;
    }
    return true;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw MeshParseError("mesh line " + std::to_string(number_) + ": " + msg);
  }

  int line() const { return number_; }

 private:
  std::istream& in_;
  int number_ = 0;
};

template <class T>
T parse_number(const LineReader& r, const std::string& s) {
  std::istringstream ss(s);
  T v{};
  ss >> v;
  if (ss.fail() || !ss.eof()) r.fail("cannot parse '" + s + "' as a number");
  return v;
}

inline std::size_t parse_count(LineReader& r, const char* keyword) {
  const auto tok = r.next(keyword);
  if (tok.size() != 2 || tok[0] != keyword) r.fail(std::string("expected '") + keyword + " <count>'");
  const long long n = parse_number<long long>(r, tok[1]);
  if (n < 0) r.fail("negative count");
  return static_cast<std::size_t>(n);
}

}  // namespace detail

inline Mesh parse_mesh(std::istream& in) {
  detail::LineReader r(in);
  Mesh mesh;

  const auto header = r.next("header");
  if (header.size() != 2 || header[0] != "QUADMESH" || header[1] != "1")
    r.fail("expected header 'QUADMESH 1'");

  const std::size_t nn = detail::parse_count(r, "NODES");
  mesh.nodes.resize(nn);
  for (auto& node : mesh.nodes) {
    const auto tok = r.next("node coordinates");
    if (tok.size() != 2) r.fail("node line must have 2 coordinates");
    node = {detail::parse_number<double>(r, tok[0]), detail::parse_number<double>(r, tok[1])};
    if (!std::isfinite(node.x) || !std::isfinite(node.y)) r.fail("non-finite coordinate");
  }

  const std::size_t ne = detail::parse_count(r, "ELEMENTS");
  mesh.elements.resize(ne);
  for (auto& elem : mesh.elements) {
    const auto tok = r.next("element connectivity");
    if (tok.size() != 4) r.fail("only straight-sided quadrilaterals (4 node indices) are supported");
    for (int i = 0; i < 4; ++i) {
      const long long id = detail::parse_number<long long>(r, tok[i]);
      if (id < 0 || id >= static_cast<long long>(nn))
        r.fail("node index " + tok[i] + " out of range");
      elem.node_ids[i] = static_cast<int>(id);
    }
  }

  const std::size_t nb = detail::parse_count(r, "BOUNDARIES");
  mesh.boundary_faces.resize(nb);
  for (auto& bf : mesh.boundary_faces) {
    const auto tok = r.next("boundary face");
    if (tok.size() != 3) r.fail("boundary line must be 'elem face tag'");
    const long long e = detail::parse_number<long long>(r, tok[0]);
    const int f = detail::parse_number<int>(r, tok[1]);
    if (e < 0 || e >= static_cast<long long>(ne)) r.fail("element index out of range");
    if (f < 0 || f > 3) r.fail("face id must be in 0..3");
    bf = {static_cast<int>(e), f, tok[2]};
  }

  while (!r.eof()) {
    const auto tok = r.next("PERIODIC");
    if (tok.size() != 4 || tok[0] != "PERIODIC") r.fail("expected 'PERIODIC tag dx dy'");
    mesh.periodic.push_back(
        {tok[1], {detail::parse_number<double>(r, tok[2]), detail::parse_number<double>(r, tok[3])}});
  }
  return build_connectivity(std::move(mesh));
}

inline Mesh load_mesh(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MeshParseError("cannot open mesh file " + path.string());
  return parse_mesh(in);
}

inline void write_mesh(const Mesh& mesh, std::ostream& out) {
  out << "QUADMESH 1\n";
  out << "NODES " << mesh.nodes.size() << "\n";
  out << std::setprecision(17);
  for (const auto& n : mesh.nodes) out << n.x << " " << n.y << "\n";
  out << "ELEMENTS " << mesh.elements.size() << "\n";
  for (const auto& e : mesh.elements)
    out << e.node_ids[0] << " " << e.node_ids[1] << " " << e.node_ids[2] << " " << e.node_ids[3]
        << "\n";
  out << "BOUNDARIES " << mesh.boundary_faces.size() << "\n";
  for (const auto& b : mesh.boundary_faces)
    out << b.element << " " << b.face << " " << b.tag << "\n";
  for (const auto& p : mesh.periodic)
    out << "PERIODIC " << p.tag << " " << p.translation.x << " " << p.translation.y << "\n";
}

// ---------------------------------------------------------------------------
// Metrics

struct PointMetrics {
  double jac = 0.0;  // |J|
  double xi_x = 0.0, xi_y = 0.0, eta_x = 0.0, eta_y = 0.0;
};

/// |J| and inverse-Jacobian entries at every solution point, laid out as
/// [element][eta index][xi index].
struct MetricCache {
  std::size_t points_per_line = 0;
  std::vector<PointMetrics> data;

  const PointMetrics& at(std::size_t e, std::size_t i_xi, std::size_t i_eta) const {
    const std::size_t n = points_per_line;
    return data[e * n * n + i_eta * n + i_xi];
  }
};

inline MetricCache compute_metrics(const Mesh& mesh, const ElementBasis& basis) {
  const std::size_t n = basis.size();
  MetricCache cache;
  cache.points_per_line = n;
  cache.data.resize(mesh.num_elements() * n * n);
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    const auto corners = element_corners(mesh, e);
    for (std::size_t l = 0; l < n; ++l) {
      for (std::size_t k = 0; k < n; ++k) {
        const Jacobian j = jacobian(corners, basis.points.nodes[k], basis.points.nodes[l]);
        const double det = j.det();
        if (!(det > 0.0))
          throw DegenerateElementError(static_cast<int>(e),
                                       "degenerate element " + std::to_string(e) +
                                           ": nonpositive Jacobian at a solution point");
        cache.data[e * n * n + l * n + k] = {det, j.y_eta / det, -j.x_eta / det,
                                             -j.y_xi / det, j.x_xi / det};
      }
    }
  }
  return cache;
}

/// Physical area of element e (shoelace formula).
inline double element_area(const Mesh& mesh, std::size_t e) {
  const auto c = element_corners(mesh, e);
  double a = 0.0;
  for (int i = 0; i < 4; ++i) a += c[i].x * c[(i + 1) % 4].y - c[(i + 1) % 4].x * c[i].y;
  return 0.5 * a;
}

}  // namespace cprsc
