#pragma once

#include <span>
#include <utility>
#include <vector>

namespace gradflow {

struct Triplet {
  int row;
  int col;
  double value;
};

/// Assembly-time accumulator for sparse symmetric matrices.
class TripletBuffer {
 public:
  explicit TripletBuffer(int n) : n_(n) {}

  void add(int row, int col, double value);
  int dim() const { return n_; }
  const std::vector<Triplet>& entries() const { return entries_; }
  void clear() { entries_.clear(); }

 private:
  int n_;
  std::vector<Triplet> entries_;
};

struct CsrMatrix {
  int n = 0;
  std::vector<int> row_offsets;  // length n+1, nondecreasing
  std::vector<int> col_indices;  // sorted, unique within each row
  std::vector<double> values;

  int nnz() const { return static_cast<int>(col_indices.size()); }
};

/// Duplicate (i,j) entries are summed. The result is independent of
/// insertion order: triplets are sorted by (row, col, value) before
/// accumulation, so equal multisets produce bit-identical matrices.
CsrMatrix to_csr(const TripletBuffer& buf);

void matvec(const CsrMatrix& a, std::span<const double> x, std::span<double> y);

std::vector<double> diagonal(const CsrMatrix& a);

struct SolveReport {
  int iterations = 0;
  double final_relative_residual = 0.0;
  bool converged = false;
};

/// Jacobi-preconditioned conjugate gradients for SPD systems.
/// Convergence: ||b - A x|| <= rel_tol ||b||. max_iter < 0 means 10*n.
std::pair<std::vector<double>, SolveReport> cg_solve(const CsrMatrix& a,
                                                     std::span<const double> b,
                                                     std::span<const double> x0, double rel_tol,
                                                     int max_iter);

}  // namespace gradflow
