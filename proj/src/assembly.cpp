#include "gradflow/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gradflow {

namespace {

// Per-element scratch shared by the assembly loops.
struct ElementScratch {
  std::vector<Vec2> phys_grads;  // [q * nloc + i]
  std::vector<double> local;     // nloc x nloc or nloc

  void resize(int nq, int nloc) {
    phys_grads.resize(static_cast<std::size_t>(nq) * nloc);
    local.resize(static_cast<std::size_t>(nloc) * nloc);
  }
};

void physical_gradients(const FeSpace& space, const BasisTable& basis, int tri,
                        std::vector<Vec2>& out) {
  const Mat2& invjt = space.inv_jacobian_t(tri);
  const std::size_t total = basis.grads.size();
  for (std::size_t k = 0; k < total; ++k) {
    out[k] = invjt * basis.grads[k];
  }
}

void local_mass(const FeSpace& space, const QuadratureRule& rule, const BasisTable& basis,
                int tri, std::vector<double>& local) {
  const int nloc = basis.num_nodes;
  std::fill(local.begin(), local.end(), 0.0);
  const double detj = space.jacobian_det(tri);
  for (int q = 0; q < basis.num_points; ++q) {
    const double w = rule.weights[static_cast<std::size_t>(q)] * detj;
    const double* phi = basis.values.data() + static_cast<std::size_t>(q) * nloc;
    for (int a = 0; a < nloc; ++a) {
      const double wa = w * phi[a];
      for (int b = 0; b < nloc; ++b) {
        local[static_cast<std::size_t>(a) * nloc + b] += wa * phi[b];
      }
    }
  }
}

void local_stiffness(const FeSpace& space, const QuadratureRule& rule, const BasisTable& basis,
                     const FeField& frozen, const DiffusionParams& params, int tri,
                     ElementScratch& scratch) {
  const int nloc = basis.num_nodes;
  std::fill(scratch.local.begin(), scratch.local.end(), 0.0);
  physical_gradients(space, basis, tri, scratch.phys_grads);
  const double detj = space.jacobian_det(tri);
  const auto dofs = space.cell_dofs(tri);
  for (int q = 0; q < basis.num_points; ++q) {
    const Vec2* g = scratch.phys_grads.data() + static_cast<std::size_t>(q) * nloc;
    Vec2 grad_frozen{};
    for (int i = 0; i < nloc; ++i) {
      grad_frozen += frozen.coeffs[static_cast<std::size_t>(dofs[static_cast<std::size_t>(i)])] * g[i];
    }
    const double coeff = sigma(params, norm2(grad_frozen));
    const double w = rule.weights[static_cast<std::size_t>(q)] * detj * coeff;
    for (int a = 0; a < nloc; ++a) {
      const Vec2 wga = w * g[a];
      for (int b = 0; b < nloc; ++b) {
        scratch.local[static_cast<std::size_t>(a) * nloc + b] += dot(wga, g[b]);
      }
    }
  }
}

void check_same_space(const FeSpace& space, const FeField& field, const char* what) {
  if (field.space != &space) {
    throw std::invalid_argument(std::string(what) + ": field does not belong to this space");
  }
}

}  // namespace

CsrMatrix assemble_mass(const FeSpace& space, const QuadratureRule& rule) {
  const BasisTable basis = tabulate(ReferenceElement::get(space.degree()), rule);
  const int nloc = basis.num_nodes;
  TripletBuffer buf(space.ndof());
  std::vector<double> local(static_cast<std::size_t>(nloc) * nloc);
  for (int t = 0; t < space.mesh().num_triangles(); ++t) {
    local_mass(space, rule, basis, t, local);
    const auto dofs = space.cell_dofs(t);
    for (int a = 0; a < nloc; ++a) {
      for (int b = 0; b < nloc; ++b) {
        buf.add(dofs[static_cast<std::size_t>(a)], dofs[static_cast<std::size_t>(b)],
                local[static_cast<std::size_t>(a) * nloc + b]);
      }
    }
  }
  return to_csr(buf);
}

CsrMatrix assemble_stiffness(const FeSpace& space, const QuadratureRule& rule,
                             const FeField& frozen, const DiffusionParams& params) {
  check_same_space(space, frozen, "assemble_stiffness");
  const BasisTable basis = tabulate(ReferenceElement::get(space.degree()), rule);
  const int nloc = basis.num_nodes;
  TripletBuffer buf(space.ndof());
  ElementScratch scratch;
  scratch.resize(basis.num_points, nloc);
  for (int t = 0; t < space.mesh().num_triangles(); ++t) {
    local_stiffness(space, rule, basis, frozen, params, t, scratch);
    const auto dofs = space.cell_dofs(t);
    for (int a = 0; a < nloc; ++a) {
      for (int b = 0; b < nloc; ++b) {
        buf.add(dofs[static_cast<std::size_t>(a)], dofs[static_cast<std::size_t>(b)],
                scratch.local[static_cast<std::size_t>(a) * nloc + b]);
      }
    }
  }
  return to_csr(buf);
}

std::vector<double> assemble_load(const FeSpace& space, const QuadratureRule& rule,
                                  const std::function<double(double, double)>& g) {
  const BasisTable basis = tabulate(ReferenceElement::get(space.degree()), rule);
  const int nloc = basis.num_nodes;
  std::vector<double> b(static_cast<std::size_t>(space.ndof()), 0.0);
  for (int t = 0; t < space.mesh().num_triangles(); ++t) {
    const double detj = space.jacobian_det(t);
    const auto dofs = space.cell_dofs(t);
    for (int q = 0; q < basis.num_points; ++q) {
      const Vec2 x = space.map_to_physical(t, rule.points[static_cast<std::size_t>(q)]);
      const double w = rule.weights[static_cast<std::size_t>(q)] * detj * g(x.x, x.y);
      const double* phi = basis.values.data() + static_cast<std::size_t>(q) * nloc;
      for (int a = 0; a < nloc; ++a) {
        b[static_cast<std::size_t>(dofs[static_cast<std::size_t>(a)])] += w * phi[a];
      }
    }
  }
  return b;
}

double l2_error(const FeField& field, const std::function<double(double, double)>& exact,
                const QuadratureRule& rule) {
  const FeSpace& space = *field.space;
  const BasisTable basis = tabulate(ReferenceElement::get(space.degree()), rule);
  const int nloc = basis.num_nodes;
  double acc = 0.0;
  for (int t = 0; t < space.mesh().num_triangles(); ++t) {
    const double detj = space.jacobian_det(t);
    const auto dofs = space.cell_dofs(t);
    for (int q = 0; q < basis.num_points; ++q) {
      const double* phi = basis.values.data() + static_cast<std::size_t>(q) * nloc;
      double val = 0.0;
      for (int i = 0; i < nloc; ++i) {
        val += field.coeffs[static_cast<std::size_t>(dofs[static_cast<std::size_t>(i)])] * phi[i];
      }
      const Vec2 x = space.map_to_physical(t, rule.points[static_cast<std::size_t>(q)]);
      const double diff = val - exact(x.x, x.y);
      acc += rule.weights[static_cast<std::size_t>(q)] * detj * diff * diff;
    }
  }
  return std::sqrt(acc);
}

double h1_seminorm_error(const FeField& field,
                         const std::function<Vec2(double, double)>& exact_grad,
                         const QuadratureRule& rule) {
  const FeSpace& space = *field.space;
  const BasisTable basis = tabulate(ReferenceElement::get(space.degree()), rule);
  const int nloc = basis.num_nodes;
  std::vector<Vec2> phys(static_cast<std::size_t>(basis.num_points) * nloc);
  double acc = 0.0;
  for (int t = 0; t < space.mesh().num_triangles(); ++t) {
    const double detj = space.jacobian_det(t);
    const auto dofs = space.cell_dofs(t);
    physical_gradients(space, basis, t, phys);
    for (int q = 0; q < basis.num_points; ++q) {
      const Vec2* g = phys.data() + static_cast<std::size_t>(q) * nloc;
      Vec2 grad{};
      for (int i = 0; i < nloc; ++i) {
        grad += field.coeffs[static_cast<std::size_t>(dofs[static_cast<std::size_t>(i)])] * g[i];
      }
      const Vec2 x = space.map_to_physical(t, rule.points[static_cast<std::size_t>(q)]);
      const Vec2 diff = grad - exact_grad(x.x, x.y);
      acc += rule.weights[static_cast<std::size_t>(q)] * detj * norm2(diff);
    }
  }
  return std::sqrt(acc);
}

SystemAssembler::SystemAssembler(const FeSpace& space, const QuadratureRule& rule)
    : space_(&space),
      rule_(rule),
      basis_(tabulate(ReferenceElement::get(space.degree()), rule)) {
  // Build the CSR pattern from the cell DOF lists, then the per-element
  // scatter map into the value array.
  const int n = space.ndof();
  const int nt = space.mesh().num_triangles();
  const int nloc = space.dofs_per_cell();

  std::vector<std::vector<int>> cols(static_cast<std::size_t>(n));
  for (int t = 0; t < nt; ++t) {
    const auto dofs = space.cell_dofs(t);
    for (int a = 0; a < nloc; ++a) {
      for (int b = 0; b < nloc; ++b) {
        cols[static_cast<std::size_t>(dofs[static_cast<std::size_t>(a)])].push_back(
            dofs[static_cast<std::size_t>(b)]);
      }
    }
  }
  row_offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 0; i < n; ++i) {
    auto& c = cols[static_cast<std::size_t>(i)];
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    row_offsets_[static_cast<std::size_t>(i) + 1] =
        row_offsets_[static_cast<std::size_t>(i)] + static_cast<int>(c.size());
    col_indices_.insert(col_indices_.end(), c.begin(), c.end());
  }

  scatter_.resize(static_cast<std::size_t>(nt) * nloc * nloc);
  for (int t = 0; t < nt; ++t) {
    const auto dofs = space.cell_dofs(t);
    for (int a = 0; a < nloc; ++a) {
      const int row = dofs[static_cast<std::size_t>(a)];
      const int begin = row_offsets_[static_cast<std::size_t>(row)];
      const int end = row_offsets_[static_cast<std::size_t>(row) + 1];
      for (int b = 0; b < nloc; ++b) {
        const int col = dofs[static_cast<std::size_t>(b)];
        const auto first = col_indices_.begin() + begin;
        const auto last = col_indices_.begin() + end;
        const auto it = std::lower_bound(first, last, col);
        scatter_[(static_cast<std::size_t>(t) * nloc + a) * nloc + b] =
            static_cast<int>(it - col_indices_.begin());
      }
    }
  }
}

CsrMatrix SystemAssembler::zero_matrix() const {
  CsrMatrix m;
  m.n = space_->ndof();
  m.row_offsets = row_offsets_;
  m.col_indices = col_indices_;
  m.values.assign(col_indices_.size(), 0.0);
  return m;
}

void SystemAssembler::fill_mass(CsrMatrix& out) const {
  const int nloc = space_->dofs_per_cell();
  std::fill(out.values.begin(), out.values.end(), 0.0);
  std::vector<double> local(static_cast<std::size_t>(nloc) * nloc);
  for (int t = 0; t < space_->mesh().num_triangles(); ++t) {
    local_mass(*space_, rule_, basis_, t, local);
    const int* slots = scatter_.data() + static_cast<std::size_t>(t) * nloc * nloc;
    for (int k = 0; k < nloc * nloc; ++k) {
      out.values[static_cast<std::size_t>(slots[k])] += local[static_cast<std::size_t>(k)];
    }
  }
}

void SystemAssembler::fill_stiffness(const FeField& frozen, const DiffusionParams& params,
                                     CsrMatrix& out) const {
  check_same_space(*space_, frozen, "SystemAssembler::fill_stiffness");
  const int nloc = space_->dofs_per_cell();
  std::fill(out.values.begin(), out.values.end(), 0.0);
  ElementScratch scratch;
  scratch.resize(basis_.num_points, nloc);
  for (int t = 0; t < space_->mesh().num_triangles(); ++t) {
    local_stiffness(*space_, rule_, basis_, frozen, params, t, scratch);
    const int* slots = scatter_.data() + static_cast<std::size_t>(t) * nloc * nloc;
    for (int k = 0; k < nloc * nloc; ++k) {
      out.values[static_cast<std::size_t>(slots[k])] += scratch.local[static_cast<std::size_t>(k)];
    }
  }
}

void SystemAssembler::fill_load(const std::function<double(double, double)>& g,
                                std::vector<double>& out) const {
  const int nloc = space_->dofs_per_cell();
  out.assign(static_cast<std::size_t>(space_->ndof()), 0.0);
  for (int t = 0; t < space_->mesh().num_triangles(); ++t) {
    const double detj = space_->jacobian_det(t);
    const auto dofs = space_->cell_dofs(t);
    for (int q = 0; q < basis_.num_points; ++q) {
      const Vec2 x = space_->map_to_physical(t, rule_.points[static_cast<std::size_t>(q)]);
      const double w = rule_.weights[static_cast<std::size_t>(q)] * detj * g(x.x, x.y);
      const double* phi = basis_.values.data() + static_cast<std::size_t>(q) * nloc;
      for (int a = 0; a < nloc; ++a) {
        out[static_cast<std::size_t>(dofs[static_cast<std::size_t>(a)])] += w * phi[a];
      }
    }
  }
}

}  // namespace gradflow
