#pragma once

#include <stdexcept>
#include <vector>

#include "packbound/sdp.hpp"

namespace packbound {

struct SphereError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// vol B_n = pi^{n/2} / Gamma(n/2 + 1), via log-Gamma.
double ball_volume(int n);

/// Radial function specified on the Fourier side: fhat(u) = p(||u||) e^{-pi||u||^2}
/// with p(t) = sum_k a[k] t^{2k}. The time-domain values come out of the
/// monomial-by-monomial transform table (transform_value).
struct RadialFunction {
    int n = 1;
    std::vector<double> a;  // a[k] is the coefficient of t^{2k}

    int degree() const { return static_cast<int>(a.size()) - 1; }
};

double eval_p(const RadialFunction& f, double t);
double eval_fhat(const RadialFunction& f, double t);
double eval_f(const RadialFunction& f, double r);

enum class SphereBasis { Monomial, ScaledLaguerre };

/// SDP for the sphere-packing bound with balls of radius rho (default 1,
/// the radius the separation factor (w^2 - 2^2) corresponds to):
/// minimize f(0) subject to
///  (a) p(t) = v_d(t)^T Q v_d(t)            (fhat >= 0 pointwise),
///  (b) time-domain part + v_d^T R v_d + (w^2-(2 rho)^2) v_{d-2}^T S v_{d-2} = 0
///      (f <= 0 outside the separation radius 2 rho),
///  (c) a_0 >= vol B_n * rho^n.
/// Packing density is scale invariant, so the optimum for any rho is a valid
/// density bound; the truncation quality at fixed degree depends on rho
/// because the Gaussian width stays pinned at pi.
/// Identities are matched in s = t^2 with the SOS blocks split into even/odd
/// parts (Q_E,Q_O,R_E,R_O,S_E,S_O); identity (a) is enforced structurally by
/// reading each a_{2k} as a linear functional of Q.
struct SphereSdpLayout {
    int n = 0, d = 0;
    double radius = 1.0;
    SphereBasis basis = SphereBasis::ScaledLaguerre;
    int block_qe = -1, block_qo = -1;
    int block_re = -1, block_ro = -1;
    int block_se = -1, block_so = -1;
    int block_slack = -1;
    std::vector<std::vector<ConstraintEntry>> a_functionals;  // d+1, identity (a)
    int identity_rows = 0;  // rows matching identity (b): d+1
    int volume_row = -1;    // the a_0 >= vol B_n row
};
struct SphereSdp {
    SdpProblem problem;
    SphereSdpLayout layout;
};

SphereSdp build_sphere_sdp_full(int n, int d, SphereBasis basis = SphereBasis::ScaledLaguerre,
                                double radius = 1.0);
SdpProblem build_sphere_sdp(int n, int d, SphereBasis basis = SphereBasis::ScaledLaguerre,
                            double radius = 1.0);

/// Read the solved coefficients a_{2k} back out of the Q blocks.
RadialFunction extract_radial(const SphereSdp& sdp, const SdpSolution& sol);

struct SphereSettings {
    SolveSettings solver;
    SphereBasis basis = SphereBasis::ScaledLaguerre;
    /// Ball radii to solve at; the reported bound is the best verified one.
    /// Every candidate yields a valid density bound, so taking the minimum is
    /// sound; the ladder is fixed for determinism and monotonicity in d.
    std::vector<double> radius_candidates{0.6, 0.70710678118654752};
    int grid_points = 2048;
    double t_max = 0.0;  // 0 = auto (10 sqrt(d))
    double r_max = 0.0;  // 0 = auto (10 sqrt(d))
    double check_tol = 1e-6;
};

/// Post-hoc floating-point grid checks of the solved function (not a rigorous
/// certificate; labeled as grid margins in all reports).
struct GridCheckReport {
    double min_p = 0.0;       // min p(t) on [0, t_max]                 (want >= -tol)
    double max_f_tail = 0.0;  // max f(r) on [2*radius, r_max]          (want <= tol)
    double a0_margin = 0.0;   // a_0 - vol B_n radius^n                 (want >= -tol)
    double radius = 1.0;
    double t_max = 0.0, r_max = 0.0;
    int points = 0;

    bool pass(double tol) const {
        return min_p >= -tol && max_f_tail <= tol && a0_margin >= -tol;
    }
};
GridCheckReport grid_check(const RadialFunction& f, double radius, const SphereSettings& settings);

struct SphereBoundResult {
    double bound = 0.0;    // f(0), the density bound
    double radius = 1.0;   // ball radius the certificate separates at
    RadialFunction f;
    GridCheckReport report;
    SdpSolution solution;
    bool verified = false;  // solver optimal and grid checks within check_tol
};
SphereBoundResult sphere_bound(int n, int d, const SphereSettings& settings = {});

}  // namespace packbound
