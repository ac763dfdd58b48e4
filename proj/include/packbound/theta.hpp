#pragma once

#include <vector>

#include "packbound/graph.hpp"
#include "packbound/sdp.hpp"
#include "packbound/sym_matrix.hpp"

namespace packbound {

/// Feasible-solution certificate for the weighted theta-prime program:
/// value M together with the kernel matrix K whose constraints
/// (diagonal <= M, nonedges <= 0, K - w^{1/2}(w^{1/2})^T psd) prove the bound.
struct ThetaCertificate {
    double M = 0.0;
    SymMatrix K{1};
    double psd_margin = 0.0;             // min eigenvalue of K - W
    double max_nonedge_violation = 0.0;  // max K(x,y) over nonedges (0 if none)
};

/// Recompute the certificate margins from (M, K) alone.
struct CertificateCheck {
    double psd_margin = 0.0;
    double max_nonedge_violation = 0.0;
    double max_diag_violation = 0.0;  // max K(x,x) - M
    bool ok(double tol) const {
        return psd_margin >= -tol && max_nonedge_violation <= tol && max_diag_violation <= tol;
    }
};
CertificateCheck verify_theta_certificate(const WeightedGraph& g, const ThetaCertificate& cert);

/// SDP whose optimum equals theta'_w(G), posed as the maximization
///   max <W, B>  s.t.  tr-like normalization, B zero on edges, B nonnegative
///   on nonedges, B psd
/// whose dual variables are exactly (M, K) with slack blocks K - W >= 0 and
/// order-1 blocks for the diagonal and nonedge inequalities.
struct ThetaSdp {
    SdpProblem problem;
    int row_normalization = 0;             // dual variable M
    std::vector<int> row_diag;              // dual variables K(x,x)
    std::vector<std::vector<int>> row_pair; // dual variables K(x,y), x<y (edge or nonedge)
};
ThetaSdp build_theta_sdp(const WeightedGraph& g);
SdpProblem theta_prime_sdp(const WeightedGraph& g);

struct ThetaResult {
    double value = 0.0;  // certified upper bound for alpha_w (dual side M)
    ThetaCertificate certificate;
    SdpSolution solution;
};
ThetaResult theta_prime(const WeightedGraph& g, const SolveSettings& settings = {});

/// Exact maximum-weight independent set by branch and bound (n <= 30).
struct AlphaResult {
    double value = 0.0;
    std::vector<int> witness;
};
AlphaResult alpha_bruteforce(const WeightedGraph& g);

}  // namespace packbound
