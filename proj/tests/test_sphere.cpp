#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "packbound/laguerre.hpp"
#include "packbound/sphere.hpp"

using namespace packbound;

namespace {

/// Composite-Simpson quadrature on [a, b].
template <typename F>
double simpson(F f, double a, double b, int panels) {
    const double h = (b - a) / panels;
    double s = f(a) + f(b);
    for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

/// Radial inverse transform oracle for the low dimensions used in tests.
double fourier_inverse_radial(const RadialFunction& f, double r) {
    auto g = [&](double u) { return eval_fhat(f, u); };
    switch (f.n) {
        case 1:
            return 2.0 * simpson([&](double u) { return g(u) * std::cos(2.0 * std::numbers::pi * u * r); },
                                 0.0, 9.0, 4000);
        case 2:
            return 2.0 * std::numbers::pi *
                   simpson([&](double u) { return u * g(u) * std::cyl_bessel_j(0, 2.0 * std::numbers::pi * u * r); },
                           0.0, 9.0, 4000);
        case 3:
            if (r < 1e-12)
                return 4.0 * std::numbers::pi *
                       simpson([&](double u) { return u * u * g(u); }, 0.0, 9.0, 4000);
            return (2.0 / r) *
                   simpson([&](double u) { return u * g(u) * std::sin(2.0 * std::numbers::pi * u * r); },
                           0.0, 9.0, 4000);
        default:
            throw std::runtime_error("oracle only covers n <= 3");
    }
}

double binomial_real(double top, int k) {
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b *= (top - k + i) / i;
    return b;
}

}  // namespace

TEST_CASE("laguerre recurrence base cases") {
    for (double alpha : {-0.5, 0.0, 1.0, 3.0})
        for (double x : {0.0, 0.7, 2.5}) {
            CHECK(laguerre_eval(0, alpha, x) == doctest::Approx(1.0));
            CHECK(laguerre_eval(1, alpha, x) == doctest::Approx(1.0 + alpha - x));
        }
}

TEST_CASE("laguerre degree 2 closed form") {
    // x^2/2 - (alpha+2)x + (alpha+1)(alpha+2)/2 at alpha = 0.5, x = 1.
    CHECK(laguerre_eval(2, 0.5, 1.0) == doctest::Approx(0.5 - 2.5 + 1.875));
    CHECK(laguerre_eval(2, 0.5, 1.0) == doctest::Approx(-0.125));
}

TEST_CASE("laguerre coefficients agree with the recurrence evaluation") {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> xs(0.0, 8.0);
    for (double alpha : {-0.5, 0.0, 2.0})
        for (int k : {3, 7, 12}) {
            const auto c = laguerre_coefficients(k, alpha);
            for (int rep = 0; rep < 5; ++rep) {
                const double x = xs(rng);
                double horner = 0.0;
                for (int i = k; i >= 0; --i) horner = horner * x + c[i];
                CHECK(horner == doctest::Approx(laguerre_eval(k, alpha, x)).epsilon(1e-10));
            }
        }
}

TEST_CASE("transform_value: Gaussian self-transform at k = 0") {
    for (int n : {1, 2, 3, 8})
        for (double r : {0.0, 0.5, 1.7})
            CHECK(transform_value(n, 0, r) ==
                  doctest::Approx(std::exp(-std::numbers::pi * r * r)).epsilon(1e-14));
    CHECK(transform_value(4, 0, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("transform_value: n=1, k=1 at the origin is 1/(2 pi)") {
    // L_1^{-1/2}(0) = 1 + alpha = 1/2, so the value is 1! pi^{-1} * 1/2.
    CHECK(transform_value(1, 1, 0.0) == doctest::Approx(1.0 / (2.0 * std::numbers::pi)).epsilon(1e-14));
}

TEST_CASE("transform_value matches the radial quadrature oracle in dimension 3") {
    // Oracle self-check first: the k=0 case must reproduce the Gaussian.
    RadialFunction gauss{3, {1.0}};
    CHECK(fourier_inverse_radial(gauss, 1.0) ==
          doctest::Approx(std::exp(-std::numbers::pi)).epsilon(1e-9));

    RadialFunction mono{3, {0.0, 1.0}};  // p(t) = t^2
    const double oracle = fourier_inverse_radial(mono, 1.0);
    CHECK(std::abs(transform_value(3, 1, 1.0) - oracle) <= 1e-8);
}

TEST_CASE("ball volumes") {
    CHECK(ball_volume(1) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(ball_volume(2) == doctest::Approx(std::numbers::pi).epsilon(1e-14));
    CHECK(ball_volume(3) == doctest::Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-14));
    CHECK(ball_volume(8) == doctest::Approx(std::pow(std::numbers::pi, 4) / 24.0).epsilon(1e-14));
}

TEST_CASE("scaled Laguerre basis invariants") {
    const LaguerreBasis basis(8, 6);
    CHECK(basis.mu(0) == doctest::Approx(1.0));
    // L_1^3(2 pi t) = 4 - 2 pi t: the largest coefficient is 2 pi.
    CHECK(basis.mu(1) == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-15));
    for (int k = 0; k <= 12; ++k) {
        const auto& c = basis.coefficients(k);
        CHECK(static_cast<int>(c.size()) == k + 1);
        double mx = 0.0;
        for (double v : c) mx = std::max(mx, std::abs(v));
        CHECK(mx == doctest::Approx(1.0));  // normalized by the largest coefficient
        CHECK(basis.mu(k) > 0.0);
    }
    // eval agrees with the raw recurrence: P_k(t) = L_k(2 pi t) / mu_k.
    for (int k : {1, 4, 9})
        for (double t : {0.1, 0.8})
            CHECK(basis.eval(k, t) ==
                  doctest::Approx(laguerre_eval(k, basis.alpha(), 2.0 * std::numbers::pi * t) /
                                  basis.mu(k)).epsilon(1e-12));
}

TEST_CASE("eval_f of the pure Gaussian and the value at zero") {
    RadialFunction f{2, {1.0}};
    for (double r : {0.0, 0.3, 2.0})
        CHECK(eval_f(f, r) == doctest::Approx(std::exp(-std::numbers::pi * r * r)).epsilon(1e-13));

    // f(0) = sum a_k k! pi^-k L_k(0) with L_k^alpha(0) = binom(k+alpha, k).
    RadialFunction g{3, {0.5, -0.25, 0.125, 0.0625}};
    const double alpha = 0.5;
    double expect = 0.0, kfac = 1.0;
    for (int k = 0; k <= g.degree(); ++k) {
        if (k > 0) kfac *= k / std::numbers::pi;
        expect += g.a[k] * kfac * binomial_real(k + alpha, k);
    }
    CHECK(eval_f(g, 0.0) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("eval_f and eval_fhat form a Fourier pair (quadrature oracle)") {
    std::mt19937 rng(1812);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int n : {1, 2, 3}) {
        RadialFunction f{n, {}};
        f.a.resize(5);
        for (double& v : f.a) v = u(rng);
        for (double r : {0.0, 0.5, 1.5, 3.0}) {
            const double oracle = fourier_inverse_radial(f, r);
            CHECK(std::abs(eval_f(f, r) - oracle) <= 1e-7);
        }
    }
}

TEST_CASE("build_sphere_sdp rejects degrees below 2") {
    CHECK_THROWS_AS(build_sphere_sdp(3, 1), SphereError);
    CHECK_THROWS_AS(build_sphere_sdp(3, 0), SphereError);
    CHECK_NOTHROW(build_sphere_sdp(3, 2));
}

TEST_CASE("identity-matching constraint counts equal the distinct even degrees") {
    for (int d : {2, 5, 8, 15}) {
        const SphereSdp sdp = build_sphere_sdp_full(3, d);
        // d+1 rows for the time-domain identity, d+1 functionals defining the
        // a coefficients from Q, plus the single volume row.
        CHECK(sdp.layout.identity_rows == d + 1);
        CHECK(static_cast<int>(sdp.layout.a_functionals.size()) == d + 1);
        CHECK(sdp.problem.num_constraints() == (d + 1) + 1);
        CHECK(sdp.layout.volume_row == d + 1);
    }
}

TEST_CASE("dimension 1 solves with the expected small-degree values") {
    const SphereBoundResult r4 = sphere_bound(1, 4);
    REQUIRE(r4.solution.status == SolveStatus::Optimal);
    CHECK(r4.verified);
    CHECK(r4.bound >= 1.0 - 1e-9);
    CHECK(r4.bound <= 1.05);

    const SphereBoundResult r8 = sphere_bound(1, 8);
    REQUIRE(r8.solution.status == SolveStatus::Optimal);
    CHECK(r8.bound >= 1.0);
    CHECK(r8.bound <= 1.02);
}

TEST_CASE("dimension 3 at degree 12 lands between FCC density and 0.80") {
    const SphereBoundResult r = sphere_bound(3, 12);
    REQUIRE(r.verified);
    CHECK(r.bound >= std::numbers::pi / std::sqrt(18.0));
    CHECK(r.bound <= 0.80);
    CHECK(r.report.max_f_tail <= 1e-6);
    CHECK(r.report.min_p >= -1e-6);
    CHECK(r.report.a0_margin >= -1e-6);
}

TEST_CASE("monomial and scaled-Laguerre bases agree where monomial still converges") {
    for (auto [n, d] : std::vector<std::pair<int, int>>{{1, 4}, {2, 5}, {3, 6}}) {
        SphereSettings mono;
        mono.basis = SphereBasis::Monomial;
        const SphereBoundResult rm = sphere_bound(n, d, mono);
        const SphereBoundResult rl = sphere_bound(n, d, {});
        REQUIRE(rm.solution.status == SolveStatus::Optimal);
        REQUIRE(rl.solution.status == SolveStatus::Optimal);
        CHECK(std::abs(rm.bound - rl.bound) <= 1e-5);
    }
}

TEST_CASE("the literal radius-1 program also solves and stays above the density") {
    const SphereSdp sdp = build_sphere_sdp_full(3, 6, SphereBasis::ScaledLaguerre, 1.0);
    const SdpSolution s = solve(sdp.problem);
    REQUIRE(s.status == SolveStatus::Optimal);
    CHECK(s.primal_value >= std::numbers::pi / std::sqrt(18.0) - 1e-9);
}

TEST_CASE("bound improves monotonically with degree") {
    for (int n : {1, 3}) {
        double prev = std::numeric_limits<double>::infinity();
        for (int d = 4; d <= 8; ++d) {
            const SphereBoundResult r = sphere_bound(n, d);
            REQUIRE(r.verified);
            CHECK(r.bound <= prev + 1e-7);
            prev = r.bound;
        }
    }
}
