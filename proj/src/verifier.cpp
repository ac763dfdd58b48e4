#include "packbound/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "packbound/linalg.hpp"

namespace packbound {

SphereSystem::SphereSystem(std::vector<double> r) : radii(std::move(r)) {
    if (radii.empty()) throw VerifierError("SphereSystem: need at least one radius");
    for (double x : radii)
        if (!(x > 0.0) || !std::isfinite(x))
            throw VerifierError("SphereSystem: radii must be finite and positive");
}

MatrixRadialFunction MatrixRadialFunction::single(const RadialFunction& f) {
    MatrixRadialFunction m;
    m.n = f.n;
    m.N = 1;
    m.d = f.degree();
    m.coeffs = {f.a};
    return m;
}

int MatrixRadialFunction::pair_index(int i, int j) const {
    if (i > j) std::swap(i, j);
    if (i < 0 || j >= N) throw VerifierError("pair index out of range");
    // Row-major upper triangle, i <= j.
    return i * N - i * (i - 1) / 2 + (j - i);
}

const std::vector<double>& MatrixRadialFunction::pair(int i, int j) const {
    return coeffs[pair_index(i, j)];
}

RadialFunction MatrixRadialFunction::radial(int i, int j) const {
    return RadialFunction{n, pair(i, j)};
}

nlohmann::json certificate_to_json(const MatrixRadialFunction& f) {
    nlohmann::json j;
    j["n"] = f.n;
    j["d"] = f.d;
    if (f.N == 1) {
        j["a"] = f.coeffs[0];
        return j;
    }
    j["N"] = f.N;
    nlohmann::json pairs = nlohmann::json::array();
    for (int i = 0; i < f.N; ++i)
        for (int k = i; k < f.N; ++k) {
            nlohmann::json pj;
            pj["i"] = i + 1;
            pj["j"] = k + 1;
            pj["a"] = f.pair(i, k);
            pairs.push_back(std::move(pj));
        }
    j["pairs"] = std::move(pairs);
    return j;
}

MatrixRadialFunction certificate_from_json(const nlohmann::json& j) {
    MatrixRadialFunction f;
    f.n = j.at("n").get<int>();
    if (f.n < 1) throw VerifierError("certificate: dimension must be >= 1");
    if (j.contains("a")) {
        f.N = 1;
        f.coeffs = {j.at("a").get<std::vector<double>>()};
        if (f.coeffs[0].empty()) throw VerifierError("certificate: empty coefficient list");
        f.d = static_cast<int>(f.coeffs[0].size()) - 1;
        return f;
    }
    f.N = j.at("N").get<int>();
    if (f.N < 1) throw VerifierError("certificate: N must be >= 1");
    const int npairs = f.N * (f.N + 1) / 2;
    f.coeffs.assign(npairs, {});
    std::vector<bool> seen(npairs, false);
    for (const auto& pj : j.at("pairs")) {
        const int i = pj.at("i").get<int>() - 1;
        const int k = pj.at("j").get<int>() - 1;
        if (i < 0 || k < 0 || i >= f.N || k >= f.N)
            throw VerifierError("certificate: pair index out of range");
        const int idx = f.pair_index(i, k);
        if (seen[idx]) throw VerifierError("certificate: duplicate pair");
        seen[idx] = true;
        f.coeffs[idx] = pj.at("a").get<std::vector<double>>();
        if (f.coeffs[idx].empty()) throw VerifierError("certificate: empty coefficient list");
    }
    for (bool s : seen)
        if (!s) throw VerifierError("certificate: missing pair");
    f.d = 0;
    for (auto& c : f.coeffs) f.d = std::max(f.d, static_cast<int>(c.size()) - 1);
    for (auto& c : f.coeffs) c.resize(f.d + 1, 0.0);
    return f;
}

std::vector<double> certificate_radii(const nlohmann::json& j, int N) {
    if (j.contains("radii")) {
        auto r = j.at("radii").get<std::vector<double>>();
        if (static_cast<int>(r.size()) != N)
            throw VerifierError("certificate: radii length does not match N");
        return r;
    }
    if (j.contains("radius")) return std::vector<double>(N, j.at("radius").get<double>());
    return std::vector<double>(N, 1.0);
}

VerifyReport verify_conditions(const MatrixRadialFunction& f, const SphereSystem& sys,
                               const VerifySettings& settings) {
    if (sys.size() != f.N) throw VerifierError("verify_conditions: radii/function shape mismatch");
    const int N = f.N;
    VerifyReport rep;
    rep.tol = settings.tol;
    rep.points = settings.points;

    double max_sep = 0.0;
    for (int i = 0; i < N; ++i)
        for (int j = i; j < N; ++j) max_sep = std::max(max_sep, sys.radii[i] + sys.radii[j]);
    rep.range = settings.range > 0.0
                    ? settings.range
                    : 10.0 * std::sqrt(static_cast<double>(std::max(f.d, 1))) * std::max(1.0, max_sep);

    // (i) separation: f_ij(r) <= 0 beyond r_i + r_j.
    rep.max_separation_value = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < N; ++i)
        for (int j = i; j < N; ++j) {
            const RadialFunction fij = f.radial(i, j);
            const double lo = sys.radii[i] + sys.radii[j];
            for (int k = 0; k < settings.points; ++k) {
                const double r = lo + (rep.range - lo) * k / (settings.points - 1);
                rep.max_separation_value = std::max(rep.max_separation_value, eval_f(fij, r));
            }
        }

    // (ii) fhat(0) - W' psd.
    {
        SymMatrix G(N);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j <= i; ++j) {
                const double voli = ball_volume(f.n) * std::pow(sys.radii[i], f.n);
                const double volj = ball_volume(f.n) * std::pow(sys.radii[j], f.n);
                G.set(i, j, f.pair(i, j)[0] - std::sqrt(voli * volj));
            }
        rep.min_gram_eig = min_eigenvalue(G);
    }

    // (iii) positive type: (p_ij(t)) psd on the grid.
    rep.min_type_eig = std::numeric_limits<double>::infinity();
    for (int k = 0; k < settings.points; ++k) {
        const double t = rep.range * k / (settings.points - 1);
        SymMatrix P(N);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j <= i; ++j) P.set(i, j, eval_p(f.radial(i, j), t));
        rep.min_type_eig = std::min(rep.min_type_eig, N == 1 ? P(0, 0) : min_eigenvalue(P));
    }
    return rep;
}

double density_bound_from_f(const MatrixRadialFunction& f, const SphereSystem& sys,
                            const VerifySettings& settings) {
    const VerifyReport rep = verify_conditions(f, sys, settings);
    if (!rep.certified())
        throw NotCertified("certificate margins exceed tolerance (separation " +
                           std::to_string(rep.max_separation_value) + ", gram " +
                           std::to_string(rep.min_gram_eig) + ", type " +
                           std::to_string(rep.min_type_eig) + ")");
    double bound = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < f.N; ++i) bound = std::max(bound, eval_f(f.radial(i, i), 0.0));
    return bound;
}

}  // namespace packbound
