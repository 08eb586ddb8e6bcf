#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace macproj {

/// Compressed sparse row matrix. Column indices are sorted within a row.
struct CsrMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::size_t> row_ptr{0};
  std::vector<std::size_t> col_idx;
  std::vector<double> values;

  std::size_t nnz() const { return values.size(); }
  double at(std::size_t r, std::size_t c) const;
  std::vector<double> diagonal() const;
  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> operator*(std::span<const double> x) const;
};

/// Row-by-row builder; entries in a row may come in any order and repeat.
class CsrBuilder {
 public:
  CsrBuilder(std::size_t rows, std::size_t cols);
  void add(std::size_t r, std::size_t c, double v);
  CsrMatrix finish();

 private:
  std::size_t rows_, cols_;
  std::vector<std::vector<std::pair<std::size_t, double>>> entries_;
};

namespace ref {
/// Serial row loop, kept as the reference for the threaded multiply.
void multiply(const CsrMatrix& a, std::span<const double> x, std::span<double> y);
}  // namespace ref

enum class SolverKind { kConjugateGradient, kBiCGStab, kGmres };

/// Constant vector in the kernel; the solution is re-centred so that
/// sum_k weights[k] x_k = 0.
struct Nullspace {
  std::vector<double> weights;
};

struct SparseSystem {
  CsrMatrix matrix;
  std::vector<double> rhs;
  SolverKind kind = SolverKind::kConjugateGradient;
  double tolerance = 1e-10;
  int max_iterations = 10000;
  std::optional<Nullspace> nullspace;
  std::vector<double> initial_guess;  // empty: start from zero
  /// Size of the data the rhs was assembled from. The nullspace
  /// compatibility defect is measured against max(||rhs||, rhs_scale), so a
  /// near-zero rhs built by cancellation is not rejected for its rounding.
  double rhs_scale = 0.0;
  /// When positive, CG stops once the residual is below tolerance *
  /// max(||rhs||, residual_reference) instead of tolerance * ||rhs||.
  double residual_reference = 0.0;
};

struct SolverStats {
  int iterations = 0;
  double residual = 0.0;  // true ||b - Ax|| / ||b||, recomputed at exit
  bool converged = false;
};

struct SolveResult {
  std::vector<double> x;
  SolverStats stats;
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, SolverStats stats)
      : std::runtime_error(what), stats_(stats) {}
  const SolverStats& stats() const { return stats_; }

 private:
  SolverStats stats_;
};

class IncompatibleRhsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Jacobi-preconditioned conjugate gradients for a symmetric positive
/// semi-definite matrix. With `deflate_constants` the matrix is assumed to
/// annihilate constants: the rhs must be orthogonal to them (relative
/// defect above 1e-10 of max(||rhs||, rhs_scale) throws IncompatibleRhsError), its defect is removed
/// and the iterate is re-centred every iteration.
SolveResult solve_spd(const SparseSystem& sys, bool deflate_constants);

/// Jacobi right-preconditioned BiCGStab. Throws SolverError on breakdown or
/// when max_iterations is reached.
SolveResult solve_nonsymmetric(const SparseSystem& sys);

/// Jacobi right-preconditioned restarted GMRES(m).
SolveResult solve_gmres(const SparseSystem& sys, int restart = 50);

double residual_norm(const CsrMatrix& a, std::span<const double> x, std::span<const double> b);

}  // namespace macproj
