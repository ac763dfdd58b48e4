#pragma once

#include <stdexcept>
#include <vector>

#include "packbound/sym_matrix.hpp"

namespace packbound {

/// Small row-major dense matrix; just enough for eigenvector tables and the
/// solver's Z^{-1}-times-X style products. Not a general linear algebra type.
class Dense {
public:
    Dense() : rows_(0), cols_(0) {}
    Dense(int rows, int cols) : rows_(rows), cols_(cols), d_(static_cast<std::size_t>(rows) * cols, 0.0) {}

    static Dense identity(int n);
    static Dense from_sym(const SymMatrix& a);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double operator()(int i, int j) const { return d_[static_cast<std::size_t>(i) * cols_ + j]; }
    double& at(int i, int j) { return d_[static_cast<std::size_t>(i) * cols_ + j]; }
    const double* row(int i) const { return d_.data() + static_cast<std::size_t>(i) * cols_; }
    double* row(int i) { return d_.data() + static_cast<std::size_t>(i) * cols_; }

    Dense multiply(const Dense& other) const;
    Dense transpose() const;
    /// (this + this^T)/2 collapsed into a SymMatrix (requires square).
    SymMatrix symmetrized() const;

private:
    int rows_, cols_;
    std::vector<double> d_;
};

/// Lower-triangular Cholesky factor, packed like SymMatrix's lower triangle.
struct LowerTriangular {
    int n = 0;
    std::vector<double> tri;  // row-major lower triangle

    double at(int i, int j) const { return tri[static_cast<std::size_t>(i) * (i + 1) / 2 + j]; }
    /// Solve L x = b in place.
    void solve_forward(std::vector<double>& b) const;
    /// Solve L^T x = b in place.
    void solve_backward(std::vector<double>& b) const;
    /// Reconstruct L L^T.
    SymMatrix reconstruct() const;
};

struct CholeskyResult {
    bool psd = false;
    LowerTriangular factor;   // valid only when psd
    int failed_pivot = -1;    // pivot index on failure
    double pivot_value = 0.0; // offending pivot on failure
};

/// Cholesky factorization with a relative pivot tolerance: pivots below
/// -tol*(1 + max|a|) report NotPsd; pivots within the tolerance band are
/// clamped to zero provided the rest of their column is negligible too
/// (a zero pivot with nonzero coupling certifies an indefinite direction).
CholeskyResult cholesky(const SymMatrix& a, double tol);

struct EigenNonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EigenResult {
    std::vector<double> values;  // descending
    Dense vectors;               // column k pairs with values[k]
    int sweeps = 0;
};

/// Cyclic-sweep Jacobi eigendecomposition. Throws EigenNonConvergence when the
/// off-diagonal mass has not collapsed within max_sweeps sweeps.
EigenResult jacobi_eigen(const SymMatrix& a, double tol, int max_sweeps = 60);

/// Cholesky-backed PSD test at relative tolerance tol.
bool is_psd(const SymMatrix& a, double tol);

/// Smallest eigenvalue via jacobi_eigen (margin computations).
double min_eigenvalue(const SymMatrix& a);

/// A^{-1} from a Cholesky factor of A.
SymMatrix invert_from_cholesky(const LowerTriangular& L);

}  // namespace packbound
