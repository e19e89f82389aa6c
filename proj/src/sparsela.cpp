#include "gradflow/sparsela.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gradflow {

void TripletBuffer::add(int row, int col, double value) {
  if (row < 0 || row >= n_ || col < 0 || col >= n_) {
    throw std::out_of_range("TripletBuffer::add: index (" + std::to_string(row) + "," +
                            std::to_string(col) + ") outside dimension " + std::to_string(n_));
  }
  entries_.push_back({row, col, value});
}

CsrMatrix to_csr(const TripletBuffer& buf) {
  std::vector<Triplet> sorted = buf.entries();
  std::sort(sorted.begin(), sorted.end(), [](const Triplet& a, const Triplet& b) {
    if (a.row != b.row) return a.row < b.row;
    if (a.col != b.col) return a.col < b.col;
    return a.value < b.value;
  });

  CsrMatrix m;
  m.n = buf.dim();
  m.row_offsets.assign(static_cast<std::size_t>(m.n) + 1, 0);
  for (std::size_t k = 0; k < sorted.size();) {
    const int row = sorted[k].row;
    const int col = sorted[k].col;
    double sum = 0.0;
    while (k < sorted.size() && sorted[k].row == row && sorted[k].col == col) {
      sum += sorted[k].value;
      ++k;
    }
    m.col_indices.push_back(col);
    m.values.push_back(sum);
    ++m.row_offsets[static_cast<std::size_t>(row) + 1];
  }
  for (int i = 0; i < m.n; ++i) {
    m.row_offsets[static_cast<std::size_t>(i) + 1] += m.row_offsets[static_cast<std::size_t>(i)];
  }
  return m;
}

void matvec(const CsrMatrix& a, std::span<const double> x, std::span<double> y) {
  for (int i = 0; i < a.n; ++i) {
    double sum = 0.0;
    for (int k = a.row_offsets[static_cast<std::size_t>(i)];
         k < a.row_offsets[static_cast<std::size_t>(i) + 1]; ++k) {
      sum += a.values[static_cast<std::size_t>(k)] *
             x[static_cast<std::size_t>(a.col_indices[static_cast<std::size_t>(k)])];
    }
    y[static_cast<std::size_t>(i)] = sum;
  }
}

std::vector<double> diagonal(const CsrMatrix& a) {
  std::vector<double> d(static_cast<std::size_t>(a.n), 0.0);
  for (int i = 0; i < a.n; ++i) {
    for (int k = a.row_offsets[static_cast<std::size_t>(i)];
         k < a.row_offsets[static_cast<std::size_t>(i) + 1]; ++k) {
      if (a.col_indices[static_cast<std::size_t>(k)] == i) {
        d[static_cast<std::size_t>(i)] = a.values[static_cast<std::size_t>(k)];
      }
    }
  }
  return d;
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

std::pair<std::vector<double>, SolveReport> cg_solve(const CsrMatrix& a,
                                                     std::span<const double> b,
                                                     std::span<const double> x0, double rel_tol,
                                                     int max_iter) {
  const std::size_t n = static_cast<std::size_t>(a.n);
  if (b.size() != n || x0.size() != n) {
    throw std::invalid_argument("cg_solve: dimension mismatch");
  }
  if (max_iter < 0) max_iter = 10 * a.n;

  const std::vector<double> diag = diagonal(a);
  for (double d : diag) {
    if (!(d > 0.0)) {
      throw std::runtime_error("cg_solve: Jacobi preconditioner requires a positive diagonal");
    }
  }

  std::vector<double> x(x0.begin(), x0.end());
  SolveReport report;

  const double bnorm = std::sqrt(dot(b, b));
  if (bnorm == 0.0) {
    x.assign(n, 0.0);
    report.converged = true;
    return {std::move(x), report};
  }

  std::vector<double> r(n), z(n), p(n), ap(n);
  matvec(a, x, r);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
  for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / diag[i];
  p = z;
  double rz = dot(r, z);

  double rnorm = std::sqrt(dot(r, r));
  report.final_relative_residual = rnorm / bnorm;
  if (report.final_relative_residual <= rel_tol) {
    report.converged = true;
    return {std::move(x), report};
  }

  for (int iter = 1; iter <= max_iter; ++iter) {
    matvec(a, p, ap);
    const double pap = dot(p, ap);
    if (!std::isfinite(pap) || pap <= 0.0) {
      throw std::runtime_error("cg_solve: matrix is not positive definite (p^T A p = " +
                               std::to_string(pap) + ")");
    }
    const double alpha = rz / pap;
    for (std::size_t i = 0; i < n; ++i) x[i] += alpha * p[i];
    for (std::size_t i = 0; i < n; ++i) r[i] -= alpha * ap[i];

    rnorm = std::sqrt(dot(r, r));
    report.iterations = iter;
    if (rnorm <= rel_tol * bnorm) {
      // report the true residual, not the recurrence one
      matvec(a, x, ap);
      double tr = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double d = b[i] - ap[i];
        tr += d * d;
      }
      report.final_relative_residual = std::sqrt(tr) / bnorm;
      report.converged = report.final_relative_residual <= rel_tol;
      if (report.converged) return {std::move(x), report};
      // true residual still above tol: fall through and keep iterating
    }
    if (!std::isfinite(rnorm)) {
      throw std::runtime_error("cg_solve: residual became non-finite");
    }

    for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / diag[i];
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }

  report.final_relative_residual = rnorm / bnorm;
  report.converged = false;
  return {std::move(x), report};
}

}  // namespace gradflow
