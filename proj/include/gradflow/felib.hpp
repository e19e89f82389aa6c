#pragma once

#include <functional>
#include <span>
#include <vector>

#include "gradflow/mesh.hpp"
#include "gradflow/types.hpp"

namespace gradflow {

/// Lagrange reference element on the unit triangle {x,y >= 0, x+y <= 1},
/// degrees 1..3, basis in barycentric form (L0,L1,L2) = (1-x-y, x, y).
///
/// Local node layout (edge k is opposite vertex k and runs from vertex
/// (k+1)%3 to vertex (k+2)%3):
///   r=1: 0,1,2 vertices
///   r=2: 3,4,5 edge midpoints, node 3+k on edge k
///   r=3: 3+2k, 4+2k on edge k at 1/3 and 2/3 from vertex (k+1)%3;
///        node 9 at the centroid
class ReferenceElement {
 public:
  static const ReferenceElement& get(int degree);  // throws for degree outside {1,2,3}

  int degree() const { return degree_; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  const std::vector<Vec2>& nodes() const { return nodes_; }

  void eval(Vec2 ref_point, std::span<double> values) const;
  /// Reference-space gradients; map to physical space with the inverse
  /// transpose Jacobian of the element map.
  void eval_grad(Vec2 ref_point, std::span<Vec2> grads) const;

 private:
  explicit ReferenceElement(int degree);

  int degree_;
  std::vector<Vec2> nodes_;
};

struct QuadratureRule {
  std::vector<Vec2> points;     // on the reference triangle
  std::vector<double> weights;  // positive, sum to 1/2
  int exactness_degree = 0;
};

/// Smallest tabulated rule integrating all polynomials of total degree
/// min_degree exactly. Symmetric rules through degree 5, conical-product
/// Gauss rules beyond (degrees 6, 8, 10). min_degree in [1,10].
QuadratureRule quadrature_rule(int min_degree);

/// Basis values and reference gradients pretabulated at the points of a
/// quadrature rule; shared by assembly and error norms.
struct BasisTable {
  int num_points = 0;
  int num_nodes = 0;
  std::vector<double> values;  // [q * num_nodes + i]
  std::vector<Vec2> grads;     // reference-space, same layout
};

BasisTable tabulate(const ReferenceElement& element, const QuadratureRule& rule);

/// Global Lagrange P_r space over a structured mesh. DOF order: vertex
/// DOFs first (= vertex ids), then edge DOFs (edge-major, the node
/// nearer the low vertex first), then one centroid DOF per triangle for
/// r=3. Per-element geometry (Jacobian, inverse transpose, determinant)
/// is precomputed; element maps are affine.
class FeSpace {
 public:
  FeSpace(Mesh mesh, int degree);

  const Mesh& mesh() const { return mesh_; }
  int degree() const { return degree_; }
  int ndof() const { return ndof_; }
  int dofs_per_cell() const { return dofs_per_cell_; }

  std::span<const int> cell_dofs(int tri) const {
    return {cell_dofs_.data() + static_cast<std::size_t>(tri) * dofs_per_cell_,
            static_cast<std::size_t>(dofs_per_cell_)};
  }
  Vec2 dof_coord(int dof) const { return dof_coords_[static_cast<std::size_t>(dof)]; }
  const std::vector<Vec2>& dof_coords() const { return dof_coords_; }

  Vec2 cell_origin(int tri) const { return origin_[static_cast<std::size_t>(tri)]; }
  const Mat2& jacobian(int tri) const { return jac_[static_cast<std::size_t>(tri)]; }
  const Mat2& inv_jacobian_t(int tri) const { return inv_jac_t_[static_cast<std::size_t>(tri)]; }
  double jacobian_det(int tri) const { return det_[static_cast<std::size_t>(tri)]; }

  Vec2 map_to_physical(int tri, Vec2 ref_point) const {
    return cell_origin(tri) + jacobian(tri) * ref_point;
  }

 private:
  Mesh mesh_;
  int degree_;
  int ndof_ = 0;
  int dofs_per_cell_ = 0;
  std::vector<int> cell_dofs_;
  std::vector<Vec2> dof_coords_;
  std::vector<Vec2> origin_;
  std::vector<Mat2> jac_;
  std::vector<Mat2> inv_jac_t_;
  std::vector<double> det_;
};

inline FeSpace build_space(Mesh mesh, int degree) { return FeSpace(std::move(mesh), degree); }

/// Coefficient vector over the global DOFs of a space.
struct FeField {
  const FeSpace* space = nullptr;
  std::vector<double> coeffs;

  explicit FeField(const FeSpace& s) : space(&s), coeffs(static_cast<std::size_t>(s.ndof()), 0.0) {}
};

/// Nodal (Lagrange) interpolation: coeffs are f evaluated at the DOF
/// coordinates.
FeField interpolate(const FeSpace& space, const std::function<double(double, double)>& f);

/// Values and physical-space gradients of a field at the quadrature
/// points of one triangle.
void eval_at_quad(const FeField& field, int tri, const QuadratureRule& rule,
                  std::vector<double>& values, std::vector<Vec2>& gradients);

}  // namespace gradflow
