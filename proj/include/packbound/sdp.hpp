#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "packbound/sym_matrix.hpp"

namespace packbound {

/// Raised on malformed problem data (shape errors, non-finite entries,
/// linearly dependent constraints).
struct SdpDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Sense { Maximize, Minimize };

/// One nonzero of a symmetric coefficient matrix: value at (i,j) and
/// mirrored at (j,i) of the given block. Stored with i >= j.
struct ConstraintEntry {
    int block = 0;
    int i = 0;
    int j = 0;
    double value = 0.0;
};

struct SdpConstraint {
    std::vector<ConstraintEntry> entries;
    double rhs = 0.0;
};

/// Block-diagonal conic program over PSD blocks X_b (order-1 blocks model LP
/// variables):  optimize tr(C X)  s.t.  tr(A_i X) = b_i,  X >= 0.
/// The canonical sense is Maximize; Minimize is solved by negating C
/// internally and sign-flipping the reported values.
struct SdpProblem {
    std::vector<int> block_orders;
    Sense sense = Sense::Maximize;
    std::vector<ConstraintEntry> objective;
    std::vector<SdpConstraint> constraints;

    int add_block(int order);
    void add_objective(int block, int i, int j, double value);
    int num_constraints() const { return static_cast<int>(constraints.size()); }
    int total_order() const;

    /// Materialize the objective (or a constraint) as dense symmetric blocks.
    std::vector<SymMatrix> materialize_objective() const;
    std::vector<SymMatrix> materialize_constraint(int idx) const;

    /// Shape and finiteness checks plus a pivoted-Cholesky rank test on the
    /// constraint Gram matrix. Throws SdpDataError on violation.
    void validate() const;
};

struct SolveSettings {
    double gap_tol = 1e-8;
    double feas_tol = 1e-8;
    int max_iter = 200;
    double step_fraction = 0.98;  // fraction-to-boundary
};

enum class SolveStatus { Optimal, MaxIterations, NumericalFailure };

std::string to_string(SolveStatus s);

struct IterateTrace {
    double primal_value = 0.0;  // sense-adjusted
    double dual_value = 0.0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double mu = 0.0;
};

struct SdpSolution {
    SolveStatus status = SolveStatus::NumericalFailure;
    std::vector<SymMatrix> X;  // primal blocks (may be empty for dual-only certificates)
    std::vector<double> y;     // dual vector
    std::vector<SymMatrix> Z;  // dual slack blocks

    // Sense-adjusted objective values; for Minimize problems primal_value is
    // the upper end of the bracket and dual_value the lower end.
    double primal_value = 0.0;
    double dual_value = 0.0;
    double gap = 0.0;               // |primal_value - dual_value|
    double primal_residual = 0.0;   // max_i |tr(A_i X) - b_i| / (1 + max|b|)
    double dual_residual = 0.0;     // max entry |A*(y) - C - Z| / (1 + max|C|)
    int iterations = 0;
    double schur_condition = 0.0;   // diag-ratio estimate from the last factorization
    std::string failure_reason;
    std::vector<IterateTrace> trace;
};

/// Deterministic primal-dual interior-point solve (HKM direction, Mehrotra
/// predictor-corrector, Cholesky-based fraction-to-boundary line search).
SdpSolution solve(const SdpProblem& p, const SolveSettings& settings = {});

/// Independent a-posteriori certification of a solution: residuals, PSD
/// margins and gap recomputed from scratch (Jacobi spectra, no solver state).
struct CheckReport {
    bool shapes_ok = false;
    bool has_primal = false;
    bool has_dual = false;
    double primal_residual = 0.0;             // max_i |tr(A_i X) - b_i|
    double dual_residual = 0.0;               // max entry |A*(y) - C - Z|
    double gap = 0.0;                         // |tr(C X) - b.y| (sense-adjusted values)
    double primal_value = 0.0;
    double dual_value = 0.0;
    std::vector<double> primal_psd_margins;   // min eigenvalue per block
    std::vector<double> dual_psd_margins;

    bool primal_feasible(double tol) const;
    bool dual_feasible(double tol) const;
};

CheckReport check_solution(const SdpProblem& p, const SdpSolution& s, double tol);

/// <A, X> where A is the symmetric matrix described by sparse entries.
double sparse_inner(const std::vector<ConstraintEntry>& entries,
                    const std::vector<SymMatrix>& X);

/// Embed  max c.x  s.t.  rows.x <= rhs, x >= 0  as an all-order-1 SdpProblem.
SdpProblem lp_as_sdp(const std::vector<double>& costs,
                     const std::vector<std::vector<double>>& rows,
                     const std::vector<double>& rhs);

}  // namespace packbound
