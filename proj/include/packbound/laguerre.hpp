#pragma once

#include <stdexcept>
#include <vector>

namespace packbound {

struct LaguerreError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// L_k^alpha(x) by the three-term recurrence
/// (k+1) L_{k+1} = (2k+1+alpha-x) L_k - (k+alpha) L_{k-1}.
double laguerre_eval(int k, double alpha, double x);

/// Monomial coefficients of L_k^alpha (ascending powers).
std::vector<double> laguerre_coefficients(int k, double alpha);

/// Time-domain radial profile of the k-th Fourier-side monomial in dimension n:
/// the transform of ||u||^{2k} e^{-pi||u||^2} evaluated at radius r, namely
/// k! pi^{-k} e^{-pi r^2} L_k^{n/2-1}(pi r^2).
double transform_value(int n, int k, double r);

/// Scaled Laguerre basis P_k(t) = mu_k^{-1} L_k^{n/2-1}(2 pi t), where mu_k is
/// the largest absolute coefficient of L_k^{n/2-1}(2 pi t) expanded in t.
/// Coefficients are generated for k up to 2d.
class LaguerreBasis {
public:
    LaguerreBasis(int n, int d);

    int dimension() const { return n_; }
    int degree() const { return d_; }
    double alpha() const { return alpha_; }
    double mu(int k) const;
    /// Monomial coefficients of P_k (ascending, length k+1).
    const std::vector<double>& coefficients(int k) const;
    double eval(int k, double t) const;

private:
    int n_, d_;
    double alpha_;
    std::vector<double> mu_;
    std::vector<std::vector<double>> coeffs_;
};

}  // namespace packbound
