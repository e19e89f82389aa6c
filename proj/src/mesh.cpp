#include "gradflow/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

namespace gradflow {

Mesh build_mesh(int m) {
  if (m < 1) {
    throw std::invalid_argument("build_mesh: m must be >= 1");
  }

  Mesh mesh;
  mesh.m = m;
  mesh.h = std::sqrt(2.0) / m;

  const int np = m + 1;
  mesh.vertices.reserve(static_cast<std::size_t>(np) * np);
  for (int j = 0; j < np; ++j) {
    for (int i = 0; i < np; ++i) {
      mesh.vertices.push_back({static_cast<double>(i) / m, static_cast<double>(j) / m});
    }
  }

  auto vid = [np](int i, int j) { return j * np + i; };

  // Cell (i,j) split along the diagonal vid(i,j) -- vid(i+1,j+1).
  mesh.triangles.reserve(2u * m * m);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      mesh.triangles.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
      mesh.triangles.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
    }
  }

  // Edges derived from triangles, canonical (low,high) keys, numbered
  // in lexicographic key order.
  std::map<std::array<int, 2>, int> edge_ids;
  for (const auto& tri : mesh.triangles) {
    for (int k = 0; k < 3; ++k) {
      const int a = tri[(k + 1) % 3];
      const int b = tri[(k + 2) % 3];
      edge_ids.try_emplace({std::min(a, b), std::max(a, b)}, 0);
    }
  }
  mesh.edges.reserve(edge_ids.size());
  for (auto& [key, id] : edge_ids) {
    id = static_cast<int>(mesh.edges.size());
    mesh.edges.push_back(key);
  }
  mesh.triangle_edges.resize(mesh.triangles.size());
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    for (int k = 0; k < 3; ++k) {
      const int a = tri[(k + 1) % 3];
      const int b = tri[(k + 2) % 3];
      mesh.triangle_edges[t][k] = edge_ids.at({std::min(a, b), std::max(a, b)});
    }
  }
  mesh.edge_use_count.assign(mesh.edges.size(), 0);
  for (const auto& te : mesh.triangle_edges) {
    for (int k = 0; k < 3; ++k) {
      ++mesh.edge_use_count[static_cast<std::size_t>(te[k])];
    }
  }

  return mesh;
}

double signed_area(const Mesh& mesh, int tri) {
  const auto& t = mesh.triangles.at(static_cast<std::size_t>(tri));
  const Vec2 p0 = mesh.vertices[static_cast<std::size_t>(t[0])];
  const Vec2 p1 = mesh.vertices[static_cast<std::size_t>(t[1])];
  const Vec2 p2 = mesh.vertices[static_cast<std::size_t>(t[2])];
  return 0.5 * ((p1.x - p0.x) * (p2.y - p0.y) - (p2.x - p0.x) * (p1.y - p0.y));
}

void write_mesh_text(const Mesh& mesh, std::ostream& out) {
  for (const Vec2& v : mesh.vertices) {
    out << "v " << v.x << ' ' << v.y << '\n';
  }
  for (const auto& t : mesh.triangles) {
    out << "t " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  }
}

}  // namespace gradflow
