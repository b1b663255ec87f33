#pragma once

#include <cstddef>
#include <vector>

#include "specbio/matrix.hpp"

namespace specbio {

/// Symmetric p x p matrix. Construction symmetrizes via (A + A^T)/2 and
/// rejects asymmetry beyond 1e-9 (relative to max |entry|) or non-finite
/// entries. Dimension is capped at 5000; everything here is dense.
class SymMatrix {
  public:
    static constexpr std::size_t kMaxDim = 5000;

    explicit SymMatrix(std::size_t dim);              // zero matrix
    static SymMatrix from_dense(const Matrix& a);     // symmetrize + validate
    static SymMatrix identity(std::size_t dim);
    static SymMatrix diagonal(const std::vector<double>& d);

    std::size_t dim() const { return m_.rows(); }
    double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
    void set(std::size_t i, std::size_t j, double v) { m_(i, j) = v; m_(j, i) = v; }

    const Matrix& dense() const { return m_; }
    double trace() const;
    double frobenius_norm() const;

    friend SymMatrix operator+(const SymMatrix& a, const SymMatrix& b);
    friend SymMatrix operator-(const SymMatrix& a, const SymMatrix& b);
    friend SymMatrix operator*(double c, const SymMatrix& a);
    friend bool operator==(const SymMatrix& a, const SymMatrix& b) { return a.m_ == b.m_; }

  private:
    Matrix m_;
};

/// Ordered eigendecomposition A = Q diag(values) Q^T.
/// values descending (ties kept in original column order); each column of Q
/// has its largest-magnitude entry non-negative.
struct EigenSystem {
    std::vector<double> values;
    Matrix vectors;  // p x p, column k pairs with values[k]
};

struct Svd {
    std::vector<double> singular_values;  // descending, non-negative
    Matrix left;                          // p x r, orthonormal columns
    Matrix right;                         // r x r, orthonormal columns
};

/// Cyclic Jacobi eigensolver; 100-sweep budget, converges when off-diagonal
/// Frobenius mass drops below 1e-12 * ||A||_F. Deterministic.
EigenSystem symmetric_eigendecompose(const SymMatrix& a);

/// SVD of a p x r matrix with r <= p, intended for small r. Built on the
/// symmetric eigendecomposition of M^T M.
Svd small_svd(const Matrix& m);

/// Lower-triangular L with L L^T = A. Throws NumericalError naming the
/// failing pivot when a pivot drops to <= 1e-12.
Matrix cholesky(const SymMatrix& a);

double spectral_norm(const SymMatrix& a);

// Triangular solves against matrix right-hand sides.
Matrix solve_lower(const Matrix& l, const Matrix& b);       // L X = B
Matrix solve_lower_transposed(const Matrix& l, const Matrix& b);  // L^T X = B
std::vector<double> solve_lower(const Matrix& l, const std::vector<double>& b);
std::vector<double> solve_lower_transposed(const Matrix& l, const std::vector<double>& b);

}  // namespace specbio
