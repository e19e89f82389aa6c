#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "gradflow/types.hpp"

namespace gradflow {

/// Structured uniform triangulation of the unit square: (M+1)^2 grid
/// vertices, every cell split along the lower-left to upper-right
/// diagonal, h = sqrt(2)/M (the diagonal length).
///
/// Numbering is deterministic: vertex (i,j) -> j*(M+1)+i, triangles
/// cell-by-cell (lower then upper), edges in canonical (low,high)
/// vertex order sorted lexicographically. Edge k of a triangle is the
/// edge opposite local vertex k.
struct Mesh {
  int m = 0;
  double h = 0.0;
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> triangles;       // counterclockwise
  std::vector<std::array<int, 2>> edges;           // low < high
  std::vector<std::array<int, 3>> triangle_edges;  // global edge ids, edge k opposite vertex k
  std::vector<int> edge_use_count;                 // 1 = boundary, 2 = interior

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_triangles() const { return static_cast<int>(triangles.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
};

Mesh build_mesh(int m);

double signed_area(const Mesh& mesh, int tri);

/// Debug dump: one line per vertex "v x y", one per triangle "t i j k".
void write_mesh_text(const Mesh& mesh, std::ostream& out);

}  // namespace gradflow
