#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "packbound/graph.hpp"
#include "packbound/sdp.hpp"

namespace packbound {

struct CayleyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The two group families the toolkit handles: Z_n and Z_2^m.
struct FiniteAbelianGroup {
    enum class Kind { Cyclic, Boolean };
    Kind kind = Kind::Cyclic;
    int param = 1;  // n for Cyclic, m for Boolean

    static FiniteAbelianGroup cyclic(int n);
    static FiniteAbelianGroup boolean(int m);

    int order() const;
    int negate(int x) const;
    int add(int x, int y) const;
    /// Character chi_u evaluated at x. Exact +-1 arithmetic for Boolean
    /// groups (parity of the bitwise-AND popcount).
    std::complex<double> character(int u, int x) const;
};

struct FourierVector {
    std::vector<std::complex<double>> coeff;  // indexed by u in the dual group
};

/// Discrete Fourier transform: fhat(u) = (1/|G|) sum_x f(x) chi_u(-x).
FourierVector dft(const FiniteAbelianGroup& g, const std::vector<std::complex<double>>& f);
/// Inversion: f(x) = sum_u fhat(u) chi_u(x).
std::vector<std::complex<double>> inverse_dft(const FiniteAbelianGroup& g, const FourierVector& fhat);

/// True iff f(x) = conj(f(-x)) within tol and every Fourier coefficient is
/// >= -tol (the translation kernel K(x,y) = f(x-y) is psd exactly when all
/// coefficients are nonnegative).
bool is_positive_type(const FiniteAbelianGroup& g, const std::vector<std::complex<double>>& f, double tol);

struct CayleySpec {
    FiniteAbelianGroup group;
    std::vector<int> sigma;  // sorted, unique, 0 excluded, closed under negation

    CayleySpec(FiniteAbelianGroup g, std::vector<int> sigma_in);
    bool in_sigma(int x) const;
};

/// Fourier-domain LP for theta'_e(Cayley(G, Sigma)): variables are the
/// Fourier coefficients (conjugate pairs {u,-u} collapsed to one variable),
/// minimize sum fhat, subject to fhat(e) >= 1, fhat >= 0 and
/// sum_u fhat(u) chi_u(x) <= 0 for one representative x of each nonedge
/// +-class. All blocks have order 1.
struct CayleyLpLayout {
    std::vector<int> class_rep;    // representative u per variable class
    std::vector<int> class_size;   // 1 or 2
    std::vector<int> class_of;     // u -> class index
    std::vector<int> var_block;    // block of t_c
    std::vector<int> nonedge_reps; // constraint row r checks representative x
    int normalization_row = -1;    // fhat(e) >= 1
};
struct CayleyLp {
    SdpProblem problem;
    CayleyLpLayout layout;
};
CayleyLp build_cayley_lp(const CayleySpec& spec);
SdpProblem cayley_theta_lp(const CayleySpec& spec);

struct CayleyThetaResult {
    double value = 0.0;
    std::vector<double> fhat;  // expanded back to one value per u
    std::vector<double> dual;  // LP dual vector (one entry per constraint row)
    SdpSolution solution;
};
CayleyThetaResult solve_cayley_theta(const CayleySpec& spec, const SolveSettings& settings = {});

/// Explicit graph with vertex set G and x ~ y iff x - y in Sigma. Unit
/// weights. Orders above 4096 are rejected.
WeightedGraph expand_to_graph(const CayleySpec& spec);

/// Sigma = {x : 1 <= hamming(x) <= d-1} on Z_2^m (binary codes with minimum
/// distance d as independent sets).
CayleySpec code_spec(int m, int d);

/// Delsarte LP bound for binary codes of length m, minimum distance d,
/// with variables collapsed to one per Hamming weight class. Weight-class
/// character sums are computed by direct enumeration (exact +-1 counts).
struct DelsarteLp {
    SdpProblem problem;
    std::vector<int> weight_var_block;  // block of the variable for each Hamming weight
};
DelsarteLp build_delsarte_lp(int m, int d);

struct DelsarteResult {
    double value = 0.0;
    std::vector<double> fhat_by_weight;  // m+1 entries
    SdpSolution solution;
};
DelsarteResult delsarte(int m, int d, const SolveSettings& settings = {});
double delsarte_bound(int m, int d);

}  // namespace packbound
