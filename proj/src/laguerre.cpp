#include "packbound/laguerre.hpp"

#include <cmath>
#include <numbers>

namespace packbound {

double laguerre_eval(int k, double alpha, double x) {
    if (k < 0) throw LaguerreError("laguerre_eval: k must be >= 0");
    if (!(alpha > -1.0)) throw LaguerreError("laguerre_eval: alpha must be > -1");
    if (k == 0) return 1.0;
    double lm1 = 1.0;
    double l = 1.0 + alpha - x;
    for (int j = 1; j < k; ++j) {
        const double lp1 = ((2.0 * j + 1.0 + alpha - x) * l - (j + alpha) * lm1) / (j + 1.0);
        lm1 = l;
        l = lp1;
    }
    return l;
}

std::vector<double> laguerre_coefficients(int k, double alpha) {
    if (k < 0) throw LaguerreError("laguerre_coefficients: k must be >= 0");
    if (!(alpha > -1.0)) throw LaguerreError("laguerre_coefficients: alpha must be > -1");
    std::vector<double> lm1{1.0};
    if (k == 0) return lm1;
    std::vector<double> l{1.0 + alpha, -1.0};
    for (int j = 1; j < k; ++j) {
        std::vector<double> lp1(j + 2, 0.0);
        const double c0 = 2.0 * j + 1.0 + alpha;
        for (int i = 0; i <= j; ++i) lp1[i] += c0 * l[i];
        for (int i = 0; i <= j; ++i) lp1[i + 1] -= l[i];  // the -x L_j term
        for (int i = 0; i < static_cast<int>(lm1.size()); ++i) lp1[i] -= (j + alpha) * lm1[i];
        for (double& c : lp1) c /= (j + 1.0);
        lm1 = std::move(l);
        l = std::move(lp1);
    }
    return l;
}

double transform_value(int n, int k, double r) {
    if (n < 1) throw LaguerreError("transform_value: dimension must be >= 1");
    if (k < 0) throw LaguerreError("transform_value: k must be >= 0");
    if (!(r >= 0.0)) throw LaguerreError("transform_value: radius must be >= 0");
    const double alpha = 0.5 * n - 1.0;
    double pref = 1.0;  // k! / pi^k
    for (int i = 1; i <= k; ++i) pref *= i / std::numbers::pi;
    const double s = std::numbers::pi * r * r;
    return pref * std::exp(-s) * laguerre_eval(k, alpha, s);
}

LaguerreBasis::LaguerreBasis(int n, int d) : n_(n), d_(d) {
    if (n < 1) throw LaguerreError("LaguerreBasis: dimension must be >= 1");
    if (d < 1) throw LaguerreError("LaguerreBasis: degree must be >= 1");
    alpha_ = 0.5 * n - 1.0;
    const double two_pi = 2.0 * std::numbers::pi;
    for (int k = 0; k <= 2 * d; ++k) {
        std::vector<double> c = laguerre_coefficients(k, alpha_);
        double scale = 1.0, mu = 0.0;
        for (int i = 0; i <= k; ++i) {
            c[i] *= scale;  // substitute x = 2 pi t
            scale *= two_pi;
            mu = std::max(mu, std::abs(c[i]));
        }
        if (!(mu > 0.0) || !std::isfinite(mu))
            throw LaguerreError("LaguerreBasis: degenerate scale factor at k=" + std::to_string(k));
        for (double& v : c) {
            v /= mu;
            if (!std::isfinite(v)) throw LaguerreError("LaguerreBasis: non-finite coefficient");
        }
        mu_.push_back(mu);
        coeffs_.push_back(std::move(c));
    }
}

double LaguerreBasis::mu(int k) const {
    if (k < 0 || k >= static_cast<int>(mu_.size())) throw LaguerreError("LaguerreBasis: k out of range");
    return mu_[k];
}

const std::vector<double>& LaguerreBasis::coefficients(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size()))
        throw LaguerreError("LaguerreBasis: k out of range");
    return coeffs_[k];
}

double LaguerreBasis::eval(int k, double t) const {
    const auto& c = coefficients(k);
    double v = 0.0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) v = v * t + c[i];
    return v;
}

}  // namespace packbound
