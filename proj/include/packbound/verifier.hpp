#pragma once

#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "packbound/sphere.hpp"

namespace packbound {

struct VerifierError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotCertified : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// N sphere types with their radii; volumes are ball_volume(n) * r^n.
struct SphereSystem {
    std::vector<double> radii;

    explicit SphereSystem(std::vector<double> r);
    int size() const { return static_cast<int>(radii.size()); }
};

/// Matrix-valued radial certificate: for each pair (i,j) the coefficients of
/// p_ij with fhat_ij(u) = p_ij(||u||) e^{-pi||u||^2}; symmetric in (i,j).
struct MatrixRadialFunction {
    int n = 1;
    int N = 1;
    int d = 0;
    std::vector<std::vector<double>> coeffs;  // index pair_index(i,j), i <= j

    static MatrixRadialFunction single(const RadialFunction& f);
    int pair_index(int i, int j) const;  // 0-based i, j
    const std::vector<double>& pair(int i, int j) const;
    RadialFunction radial(int i, int j) const;
};

/// Certificate JSON: N=1 short form {n, d, a:[...], radius?} (what sphere
/// --emit-f writes); general form {n, N, d, pairs:[{i, j, a:[...]}...],
/// radii?:[...]} with 1-based pair indices covering every i <= j.
nlohmann::json certificate_to_json(const MatrixRadialFunction& f);
MatrixRadialFunction certificate_from_json(const nlohmann::json& j);

/// Radii recorded in a certificate file, or unit radii when absent.
std::vector<double> certificate_radii(const nlohmann::json& j, int N);

struct VerifySettings {
    int points = 4096;
    double range = 0.0;  // 0 = auto: 10 sqrt(d) * max(1, max r_i + r_j)
    double tol = 1e-6;
};

/// Grid margins for the three certificate conditions:
///  (i)  f_ij(r) <= tol for all r >= r_i + r_j,
///  (ii) fhat(0) - W' psd, W'_ij = sqrt(vol K_i vol K_j),
///  (iii) (p_ij(t)) psd for all t >= 0 (positive type).
struct VerifyReport {
    double max_separation_value = 0.0;  // (i): want <= tol
    double min_gram_eig = 0.0;          // (ii): want >= -tol
    double min_type_eig = 0.0;          // (iii): want >= -tol
    double tol = 1e-6;
    double range = 0.0;
    int points = 0;

    bool certified() const {
        return max_separation_value <= tol && min_gram_eig >= -tol && min_type_eig >= -tol;
    }
};

VerifyReport verify_conditions(const MatrixRadialFunction& f, const SphereSystem& sys,
                               const VerifySettings& settings = {});

/// max_i f_ii(0) if the certificate verifies; throws NotCertified otherwise.
double density_bound_from_f(const MatrixRadialFunction& f, const SphereSystem& sys,
                            const VerifySettings& settings = {});

}  // namespace packbound
