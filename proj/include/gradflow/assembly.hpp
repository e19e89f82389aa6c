#pragma once

#include <functional>
#include <vector>

#include "gradflow/coeff.hpp"
#include "gradflow/felib.hpp"
#include "gradflow/sparsela.hpp"

namespace gradflow {

/// Mass matrix M_ij = int phi_i phi_j. SPD; entries sum to |Omega| = 1.
CsrMatrix assemble_mass(const FeSpace& space, const QuadratureRule& rule);

/// Frozen-coefficient stiffness K_ij = int sigma(|grad frozen|^2)
/// grad phi_i . grad phi_j, the coefficient evaluated pointwise at the
/// quadrature nodes. Symmetric PSD with constants in the null space
/// (the Neumann condition is natural, so no boundary terms appear).
CsrMatrix assemble_stiffness(const FeSpace& space, const QuadratureRule& rule,
                             const FeField& frozen, const DiffusionParams& params);

/// Load vector b_i = int g phi_i via quadrature.
std::vector<double> assemble_load(const FeSpace& space, const QuadratureRule& rule,
                                  const std::function<double(double, double)>& g);

double l2_error(const FeField& field, const std::function<double(double, double)>& exact,
                const QuadratureRule& rule);

double h1_seminorm_error(const FeField& field,
                         const std::function<Vec2(double, double)>& exact_grad,
                         const QuadratureRule& rule);

/// Reusable assembly workspace for repeated stiffness/system builds on
/// a fixed space: the CSR pattern and the element-to-value scatter map
/// are computed once, so a per-step assembly is a zero-and-accumulate
/// pass with no sorting or allocation. Produces matrices identical to
/// the one-shot functions above.
class SystemAssembler {
 public:
  SystemAssembler(const FeSpace& space, const QuadratureRule& rule);

  const FeSpace& space() const { return *space_; }
  const QuadratureRule& rule() const { return rule_; }

  /// Pattern-shaped zero matrix (same row_offsets/col_indices as all
  /// assembled matrices from this workspace).
  CsrMatrix zero_matrix() const;

  void fill_mass(CsrMatrix& out) const;
  void fill_stiffness(const FeField& frozen, const DiffusionParams& params, CsrMatrix& out) const;
  void fill_load(const std::function<double(double, double)>& g, std::vector<double>& out) const;

 private:
  const FeSpace* space_;
  QuadratureRule rule_;
  BasisTable basis_;
  std::vector<int> row_offsets_;
  std::vector<int> col_indices_;
  std::vector<int> scatter_;  // [tri * nloc^2 + a * nloc + b] -> value slot
};

}  // namespace gradflow
