#include "gradflow/felib.hpp"

#include <array>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gradflow {

namespace {

// Barycentric gradients in reference coordinates.
constexpr Vec2 kGradL[3] = {{-1.0, -1.0}, {1.0, 0.0}, {0.0, 1.0}};

struct Bary {
  double l[3];
};

inline Bary bary(Vec2 p) { return {{1.0 - p.x - p.y, p.x, p.y}}; }

}  // namespace

ReferenceElement::ReferenceElement(int degree) : degree_(degree) {
  const Vec2 v0{0.0, 0.0}, v1{1.0, 0.0}, v2{0.0, 1.0};
  const Vec2 verts[3] = {v0, v1, v2};
  nodes_ = {v0, v1, v2};
  if (degree == 2) {
    for (int k = 0; k < 3; ++k) {
      const Vec2 a = verts[(k + 1) % 3], b = verts[(k + 2) % 3];
      nodes_.push_back(0.5 * (a + b));
    }
  } else if (degree == 3) {
    for (int k = 0; k < 3; ++k) {
      const Vec2 a = verts[(k + 1) % 3], b = verts[(k + 2) % 3];
      nodes_.push_back((2.0 / 3.0) * a + (1.0 / 3.0) * b);
      nodes_.push_back((1.0 / 3.0) * a + (2.0 / 3.0) * b);
    }
    nodes_.push_back({1.0 / 3.0, 1.0 / 3.0});
  }
}

const ReferenceElement& ReferenceElement::get(int degree) {
  if (degree < 1 || degree > 3) {
    throw std::invalid_argument("ReferenceElement: degree must be 1, 2 or 3, got " +
                                std::to_string(degree));
  }
  static const ReferenceElement p1(1), p2(2), p3(3);
  static const ReferenceElement* table[3] = {&p1, &p2, &p3};
  return *table[degree - 1];
}

void ReferenceElement::eval(Vec2 p, std::span<double> out) const {
  assert(out.size() == static_cast<std::size_t>(num_nodes()));
  const Bary b = bary(p);
  const double* L = b.l;
  switch (degree_) {
    case 1:
      for (int i = 0; i < 3; ++i) out[static_cast<std::size_t>(i)] = L[i];
      break;
    case 2:
      for (int i = 0; i < 3; ++i) out[static_cast<std::size_t>(i)] = L[i] * (2.0 * L[i] - 1.0);
      for (int k = 0; k < 3; ++k) {
        out[static_cast<std::size_t>(3 + k)] = 4.0 * L[(k + 1) % 3] * L[(k + 2) % 3];
      }
      break;
    case 3:
      for (int i = 0; i < 3; ++i) {
        out[static_cast<std::size_t>(i)] = 0.5 * L[i] * (3.0 * L[i] - 1.0) * (3.0 * L[i] - 2.0);
      }
      for (int k = 0; k < 3; ++k) {
        const double la = L[(k + 1) % 3], lb = L[(k + 2) % 3];
        out[static_cast<std::size_t>(3 + 2 * k)] = 4.5 * la * lb * (3.0 * la - 1.0);
        out[static_cast<std::size_t>(4 + 2 * k)] = 4.5 * la * lb * (3.0 * lb - 1.0);
      }
      out[9] = 27.0 * L[0] * L[1] * L[2];
      break;
    default:
      assert(false);
  }
}

void ReferenceElement::eval_grad(Vec2 p, std::span<Vec2> out) const {
  assert(out.size() == static_cast<std::size_t>(num_nodes()));
  const Bary b = bary(p);
  const double* L = b.l;
  switch (degree_) {
    case 1:
      for (int i = 0; i < 3; ++i) out[static_cast<std::size_t>(i)] = kGradL[i];
      break;
    case 2:
      for (int i = 0; i < 3; ++i) {
        out[static_cast<std::size_t>(i)] = (4.0 * L[i] - 1.0) * kGradL[i];
      }
      for (int k = 0; k < 3; ++k) {
        const int a = (k + 1) % 3, c = (k + 2) % 3;
        out[static_cast<std::size_t>(3 + k)] = 4.0 * L[c] * kGradL[a] + 4.0 * L[a] * kGradL[c];
      }
      break;
    case 3:
      for (int i = 0; i < 3; ++i) {
        // d/dL [ (9 L^3 - 9 L^2 + 2 L) / 2 ] = (27 L^2 - 18 L + 2) / 2
        out[static_cast<std::size_t>(i)] =
            (0.5 * (27.0 * L[i] * L[i] - 18.0 * L[i] + 2.0)) * kGradL[i];
      }
      for (int k = 0; k < 3; ++k) {
        const int a = (k + 1) % 3, c = (k + 2) % 3;
        const double la = L[a], lb = L[c];
        out[static_cast<std::size_t>(3 + 2 * k)] =
            4.5 * lb * (6.0 * la - 1.0) * kGradL[a] + 4.5 * la * (3.0 * la - 1.0) * kGradL[c];
        out[static_cast<std::size_t>(4 + 2 * k)] =
            4.5 * lb * (3.0 * lb - 1.0) * kGradL[a] + 4.5 * la * (6.0 * lb - 1.0) * kGradL[c];
      }
      out[9] = 27.0 * (L[1] * L[2] * kGradL[0] + L[0] * L[2] * kGradL[1] + L[0] * L[1] * kGradL[2]);
      break;
    default:
      assert(false);
  }
}

namespace {

// Three-point symmetric orbit through barycentric (a,b,b); per-point
// weight w is given on the unit-area triangle and scaled by 1/2 here.
void push_orbit(QuadratureRule& rule, double a, double b, double w) {
  rule.points.push_back({b, b});
  rule.points.push_back({a, b});
  rule.points.push_back({b, a});
  for (int k = 0; k < 3; ++k) rule.weights.push_back(0.5 * w);
}

// Gauss-Legendre nodes/weights on [0,1] by Newton iteration on the
// recurrence; n <= 8 here so convergence is immediate.
void gauss_legendre01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.resize(static_cast<std::size_t>(n));
  weights.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    double x = std::cos(M_PI * (k + 0.75) / (n + 0.5));  // on [-1,1]
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[static_cast<std::size_t>(n - 1 - k)] = 0.5 * (x + 1.0);
    weights[static_cast<std::size_t>(n - 1 - k)] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
}

// Conical-product rule: n^2 points (xi_i, eta_j (1 - xi_i)) with the
// triangle Jacobian folded into the weight. Exact for total degree
// 2n-2.
QuadratureRule collapsed_rule(int n) {
  std::vector<double> xs, ws;
  gauss_legendre01(n, xs, ws);
  QuadratureRule rule;
  rule.exactness_degree = 2 * n - 2;
  rule.points.reserve(static_cast<std::size_t>(n) * n);
  rule.weights.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      rule.points.push_back({xs[static_cast<std::size_t>(i)],
                             xs[static_cast<std::size_t>(j)] * (1.0 - xs[static_cast<std::size_t>(i)])});
      rule.weights.push_back(ws[static_cast<std::size_t>(i)] * ws[static_cast<std::size_t>(j)] *
                             (1.0 - xs[static_cast<std::size_t>(i)]));
    }
  }
  return rule;
}

}  // namespace

QuadratureRule quadrature_rule(int min_degree) {
  if (min_degree < 1 || min_degree > 10) {
    throw std::invalid_argument("quadrature_rule: min_degree must be in [1,10], got " +
                                std::to_string(min_degree));
  }
  QuadratureRule rule;
  if (min_degree <= 1) {
    rule.points = {{1.0 / 3.0, 1.0 / 3.0}};
    rule.weights = {0.5};
    rule.exactness_degree = 1;
  } else if (min_degree <= 4) {
    // Two-orbit symmetric rule, exact to degree 4.
    push_orbit(rule, 0.108103018168070, 0.445948490915965, 0.223381589678011);
    push_orbit(rule, 0.816847572980459, 0.091576213509771, 0.109951743655322);
    rule.exactness_degree = 4;
  } else if (min_degree <= 5) {
    rule.points = {{1.0 / 3.0, 1.0 / 3.0}};
    rule.weights = {0.5 * 0.225};
    push_orbit(rule, 0.059715871789770, 0.470142064105115, 0.132394152788506);
    push_orbit(rule, 0.797426985353087, 0.101286507323456, 0.125939180544827);
    rule.exactness_degree = 5;
  } else {
    rule = collapsed_rule((min_degree + 3) / 2);  // 2n-2 >= min_degree
  }
  return rule;
}

BasisTable tabulate(const ReferenceElement& element, const QuadratureRule& rule) {
  BasisTable table;
  table.num_points = static_cast<int>(rule.points.size());
  table.num_nodes = element.num_nodes();
  table.values.resize(static_cast<std::size_t>(table.num_points) * table.num_nodes);
  table.grads.resize(static_cast<std::size_t>(table.num_points) * table.num_nodes);
  for (int q = 0; q < table.num_points; ++q) {
    const std::size_t off = static_cast<std::size_t>(q) * table.num_nodes;
    element.eval(rule.points[static_cast<std::size_t>(q)],
                 {table.values.data() + off, static_cast<std::size_t>(table.num_nodes)});
    element.eval_grad(rule.points[static_cast<std::size_t>(q)],
                      {table.grads.data() + off, static_cast<std::size_t>(table.num_nodes)});
  }
  return table;
}

FeSpace::FeSpace(Mesh mesh, int degree) : mesh_(std::move(mesh)), degree_(degree) {
  const ReferenceElement& elem = ReferenceElement::get(degree);  // validates degree
  dofs_per_cell_ = elem.num_nodes();

  const int nv = mesh_.num_vertices();
  const int ne = mesh_.num_edges();
  const int nt = mesh_.num_triangles();
  const int per_edge = degree - 1;
  const int per_cell = degree == 3 ? 1 : 0;
  ndof_ = nv + per_edge * ne + per_cell * nt;

  dof_coords_.resize(static_cast<std::size_t>(ndof_));
  for (int v = 0; v < nv; ++v) {
    dof_coords_[static_cast<std::size_t>(v)] = mesh_.vertices[static_cast<std::size_t>(v)];
  }
  for (int e = 0; e < ne; ++e) {
    const Vec2 lo = mesh_.vertices[static_cast<std::size_t>(mesh_.edges[static_cast<std::size_t>(e)][0])];
    const Vec2 hi = mesh_.vertices[static_cast<std::size_t>(mesh_.edges[static_cast<std::size_t>(e)][1])];
    if (degree == 2) {
      dof_coords_[static_cast<std::size_t>(nv + e)] = 0.5 * (lo + hi);
    } else if (degree == 3) {
      dof_coords_[static_cast<std::size_t>(nv + 2 * e)] = (2.0 / 3.0) * lo + (1.0 / 3.0) * hi;
      dof_coords_[static_cast<std::size_t>(nv + 2 * e + 1)] = (1.0 / 3.0) * lo + (2.0 / 3.0) * hi;
    }
  }
  if (per_cell == 1) {
    for (int t = 0; t < nt; ++t) {
      const auto& tri = mesh_.triangles[static_cast<std::size_t>(t)];
      const Vec2 c = (1.0 / 3.0) * (mesh_.vertices[static_cast<std::size_t>(tri[0])] +
                                    mesh_.vertices[static_cast<std::size_t>(tri[1])] +
                                    mesh_.vertices[static_cast<std::size_t>(tri[2])]);
      dof_coords_[static_cast<std::size_t>(nv + 2 * ne + t)] = c;
    }
  }

  cell_dofs_.resize(static_cast<std::size_t>(nt) * dofs_per_cell_);
  for (int t = 0; t < nt; ++t) {
    int* dst = cell_dofs_.data() + static_cast<std::size_t>(t) * dofs_per_cell_;
    const auto& tri = mesh_.triangles[static_cast<std::size_t>(t)];
    dst[0] = tri[0];
    dst[1] = tri[1];
    dst[2] = tri[2];
    if (degree >= 2) {
      for (int k = 0; k < 3; ++k) {
        const int e = mesh_.triangle_edges[static_cast<std::size_t>(t)][k];
        if (degree == 2) {
          dst[3 + k] = nv + e;
        } else {
          // Local node 3+2k sits nearer local vertex (k+1)%3; the global
          // pair is stored nearer the low vertex first.
          const int va = tri[(k + 1) % 3];
          const int vb = tri[(k + 2) % 3];
          if (va < vb) {
            dst[3 + 2 * k] = nv + 2 * e;
            dst[4 + 2 * k] = nv + 2 * e + 1;
          } else {
            dst[3 + 2 * k] = nv + 2 * e + 1;
            dst[4 + 2 * k] = nv + 2 * e;
          }
        }
      }
      if (degree == 3) dst[9] = nv + 2 * ne + t;
    }
  }

  origin_.resize(static_cast<std::size_t>(nt));
  jac_.resize(static_cast<std::size_t>(nt));
  inv_jac_t_.resize(static_cast<std::size_t>(nt));
  det_.resize(static_cast<std::size_t>(nt));
  for (int t = 0; t < nt; ++t) {
    const auto& tri = mesh_.triangles[static_cast<std::size_t>(t)];
    const Vec2 p0 = mesh_.vertices[static_cast<std::size_t>(tri[0])];
    const Vec2 p1 = mesh_.vertices[static_cast<std::size_t>(tri[1])];
    const Vec2 p2 = mesh_.vertices[static_cast<std::size_t>(tri[2])];
    const Mat2 jac{p1.x - p0.x, p2.x - p0.x, p1.y - p0.y, p2.y - p0.y};
    const double d = det(jac);
    origin_[static_cast<std::size_t>(t)] = p0;
    jac_[static_cast<std::size_t>(t)] = jac;
    det_[static_cast<std::size_t>(t)] = d;
    // inverse transpose of the 2x2 Jacobian
    inv_jac_t_[static_cast<std::size_t>(t)] =
        Mat2{jac.a11 / d, -jac.a10 / d, -jac.a01 / d, jac.a00 / d};
  }
}

FeField interpolate(const FeSpace& space, const std::function<double(double, double)>& f) {
  FeField field(space);
  for (int i = 0; i < space.ndof(); ++i) {
    const Vec2 p = space.dof_coord(i);
    field.coeffs[static_cast<std::size_t>(i)] = f(p.x, p.y);
  }
  return field;
}

void eval_at_quad(const FeField& field, int tri, const QuadratureRule& rule,
                  std::vector<double>& values, std::vector<Vec2>& gradients) {
  const FeSpace& space = *field.space;
  const ReferenceElement& elem = ReferenceElement::get(space.degree());
  const int nloc = space.dofs_per_cell();
  const int nq = static_cast<int>(rule.points.size());
  values.assign(static_cast<std::size_t>(nq), 0.0);
  gradients.assign(static_cast<std::size_t>(nq), Vec2{});

  const auto dofs = space.cell_dofs(tri);
  const Mat2& invjt = space.inv_jacobian_t(tri);
  std::vector<double> phi(static_cast<std::size_t>(nloc));
  std::vector<Vec2> dphi(static_cast<std::size_t>(nloc));
  for (int q = 0; q < nq; ++q) {
    elem.eval(rule.points[static_cast<std::size_t>(q)], phi);
    elem.eval_grad(rule.points[static_cast<std::size_t>(q)], dphi);
    double val = 0.0;
    Vec2 grad{};
    for (int i = 0; i < nloc; ++i) {
      const double c = field.coeffs[static_cast<std::size_t>(dofs[static_cast<std::size_t>(i)])];
      val += c * phi[static_cast<std::size_t>(i)];
      grad += c * dphi[static_cast<std::size_t>(i)];
    }
    values[static_cast<std::size_t>(q)] = val;
    gradients[static_cast<std::size_t>(q)] = invjt * grad;
  }
}

}  // namespace gradflow
