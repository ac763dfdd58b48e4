#include "packbound/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "packbound/laguerre.hpp"
#include "packbound/linalg.hpp"

namespace packbound {

double ball_volume(int n) {
    if (n < 1) throw SphereError("ball_volume: dimension must be >= 1");
    return std::exp(0.5 * n * std::log(std::numbers::pi) - std::lgamma(0.5 * n + 1.0));
}

double eval_p(const RadialFunction& f, double t) {
    const double s = t * t;
    double v = 0.0;
    for (int k = f.degree(); k >= 0; --k) v = v * s + f.a[k];
    return v;
}

double eval_fhat(const RadialFunction& f, double t) {
    return eval_p(f, t) * std::exp(-std::numbers::pi * t * t);
}

double eval_f(const RadialFunction& f, double r) {
    double v = 0.0;
    for (int k = 0; k <= f.degree(); ++k) v += f.a[k] * transform_value(f.n, k, r);
    return v;
}

namespace {

using Poly = std::vector<double>;  // ascending coefficients in s

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

Poly poly_shift(const Poly& a) {  // multiply by s
    Poly out(a.size() + 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) out[i + 1] = a[i];
    return out;
}

Poly poly_axpby(double x, const Poly& a, double y, const Poly& b) {
    Poly out(std::max(a.size(), b.size()), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += x * a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += y * b[i];
    return out;
}

/// One row of coefficient-matching data: a symmetric coefficient matrix per
/// unknown block plus a slack coefficient and right-hand side.
struct Row {
    std::vector<SymMatrix> blocks;
    double slack = 0.0;
    double rhs = 0.0;
};

}  // namespace

SphereSdp build_sphere_sdp_full(int n, int d, SphereBasis basis, double radius) {
    if (n < 1) throw SphereError("build_sphere_sdp: dimension must be >= 1");
    if (d < 2) throw SphereError("DegreeTooSmall: need degree >= 2 (d < 2 leaves S empty)");
    if (!(radius > 0.0)) throw SphereError("build_sphere_sdp: radius must be positive");
    const double sep2 = 4.0 * radius * radius;  // (2 rho)^2, the localizer root in s

    const int pe = d / 2;            // even-part basis degree bound in s
    const int po = (d - 1) / 2;      // odd part carries one extra factor of s
    const int se = (d - 2) / 2;
    const int so = (d - 3) / 2;      // negative for d = 2: S_O absent

    // SOS vector basis polynomials in s.
    std::vector<Poly> bas(static_cast<std::size_t>(std::max({pe, po, se})) + 1);
    LaguerreBasis scaled(n, d);
    for (std::size_t i = 0; i < bas.size(); ++i) {
        if (basis == SphereBasis::Monomial) {
            bas[i] = Poly(i + 1, 0.0);
            bas[i][i] = 1.0;
        } else {
            bas[i] = scaled.coefficients(static_cast<int>(i));
        }
    }

    // Time-domain expansions phi_k(s) = k! pi^{-k} L_k^{n/2-1}(pi s).
    const double alpha = 0.5 * n - 1.0;
    std::vector<Poly> phi(d + 1);
    for (int k = 0; k <= d; ++k) {
        Poly c = laguerre_coefficients(k, alpha);
        double pref = 1.0;
        for (int i = 1; i <= k; ++i) pref *= i / std::numbers::pi;
        double scale = pref;
        for (int i = 0; i <= k; ++i) {
            c[i] *= scale;  // substitute x = pi s and fold in k!/pi^k
            scale *= std::numbers::pi;
        }
        phi[k] = std::move(c);
    }

    SphereSdp out;
    auto& lay = out.layout;
    lay.n = n;
    lay.d = d;
    lay.radius = radius;
    lay.basis = basis;
    SdpProblem& p = out.problem;
    p.sense = Sense::Minimize;

    lay.block_qe = p.add_block(pe + 1);
    lay.block_qo = p.add_block(po + 1);
    lay.block_re = p.add_block(pe + 1);
    lay.block_ro = p.add_block(po + 1);
    lay.block_se = p.add_block(se + 1);
    if (so >= 0) lay.block_so = p.add_block(so + 1);
    lay.block_slack = p.add_block(1);

    // The polynomial attached to entry (i,j) of each block; entry values in
    // coefficient functionals are plain product coefficients (the symmetric
    // double-counting cancels against the <A,X> convention).
    struct BlockSpec {
        int block;
        int top;       // basis indices 0..top
        bool odd;      // extra factor s
        bool sep;      // extra factor (s - (2 rho)^2)
    };
    std::vector<BlockSpec> specs = {
        {lay.block_qe, pe, false, false}, {lay.block_qo, po, true, false},
        {lay.block_re, pe, false, false}, {lay.block_ro, po, true, false},
        {lay.block_se, se, false, true},
    };
    if (so >= 0) specs.push_back({lay.block_so, so, true, true});

    auto attached = [&](const BlockSpec& bs, int i, int j) {
        Poly q = poly_mul(bas[i], bas[j]);
        if (bs.odd) q = poly_shift(q);
        if (bs.sep) q = poly_axpby(1.0, poly_shift(q), -sep2, q);
        return q;
    };

    // a_{2k} as functionals of Q (identity (a), enforced structurally).
    lay.a_functionals.assign(d + 1, {});
    for (const auto& bs : specs) {
        if (bs.block != lay.block_qe && bs.block != lay.block_qo) continue;
        for (int i = 0; i <= bs.top; ++i)
            for (int j = 0; j <= i; ++j) {
                const Poly q = attached(bs, i, j);
                for (int k = 0; k <= d && k < static_cast<int>(q.size()); ++k)
                    if (q[k] != 0.0) lay.a_functionals[k].push_back({bs.block, i, j, q[k]});
            }
    }

    const int nblocks = static_cast<int>(p.block_orders.size());
    auto zero_row = [&]() {
        Row r;
        for (int b = 0; b < nblocks; ++b) r.blocks.emplace_back(p.block_orders[b]);
        return r;
    };

    // Identity (b), first in monomial coefficients of s^0..s^d.
    std::vector<Row> rows;
    for (int j = 0; j <= d; ++j) rows.push_back(zero_row());
    for (const auto& bs : specs) {
        const bool is_q = (bs.block == lay.block_qe || bs.block == lay.block_qo);
        for (int i = 0; i <= bs.top; ++i)
            for (int jj = 0; jj <= i; ++jj) {
                const Poly q = attached(bs, i, jj);
                if (is_q) {
                    // Contribution via F(s) = sum_k a_{2k}(Q) phi_k(s).
                    for (int k = 0; k <= d && k < static_cast<int>(q.size()); ++k) {
                        if (q[k] == 0.0) continue;
                        for (int jm = 0; jm <= k; ++jm)
                            rows[jm].blocks[bs.block].add(i, jj, q[k] * phi[k][jm]);
                    }
                } else {
                    for (int jm = 0; jm <= d && jm < static_cast<int>(q.size()); ++jm)
                        rows[jm].blocks[bs.block].add(i, jj, q[jm]);
                }
            }
    }

    // Convert rows to the test basis: row'_t = sum_j T[t][j] row_j with
    // T = (B^T)^{-1}, B[k][j] the monomial coefficients of P_k.
    if (basis == SphereBasis::ScaledLaguerre) {
        Dense T(d + 1, d + 1);  // upper triangular inverse of B^T
        auto bcoef = [&](int k, int j) {
            const auto& c = scaled.coefficients(k);
            return j < static_cast<int>(c.size()) ? c[j] : 0.0;
        };
        for (int t = d; t >= 0; --t) {
            for (int j = d; j >= t; --j) {
                double v = (t == j) ? 1.0 : 0.0;
                for (int k = j; k > t; --k) v -= bcoef(k, t) * T.at(k, j);
                T.at(t, j) = v / bcoef(t, t);
            }
        }
        std::vector<Row> conv;
        for (int t = 0; t <= d; ++t) {
            Row r = zero_row();
            for (int j = t; j <= d; ++j)
                for (int b = 0; b < nblocks; ++b) r.blocks[b].axpy(T(t, j), rows[j].blocks[b]);
            conv.push_back(std::move(r));
        }
        rows = std::move(conv);
    }

    auto emit_row = [&](const Row& r) {
        SdpConstraint c;
        for (int b = 0; b < nblocks; ++b) {
            const SymMatrix& mb = r.blocks[b];
            for (int i = 0; i < mb.order(); ++i)
                for (int j = 0; j <= i; ++j)
                    if (mb(i, j) != 0.0) c.entries.push_back({b, i, j, mb(i, j)});
        }
        if (r.slack != 0.0) c.entries.push_back({lay.block_slack, 0, 0, r.slack});
        c.rhs = r.rhs;
        p.constraints.push_back(std::move(c));
    };

    lay.identity_rows = d + 1;
    for (const auto& r : rows) emit_row(r);

    // Condition (c): a_0 - slack = vol of one packed ball.
    {
        Row r = zero_row();
        for (const auto& e : lay.a_functionals[0]) r.blocks[e.block].add(e.i, e.j, e.value);
        r.slack = -1.0;
        r.rhs = ball_volume(n) * std::pow(radius, n);
        lay.volume_row = p.num_constraints();
        emit_row(r);
    }

    // Objective: f(0) = sum_k a_{2k} k! pi^{-k} L_k^{n/2-1}(0).
    {
        SymMatrix oqe(pe + 1), oqo(po + 1);
        for (int k = 0; k <= d; ++k) {
            double pref = 1.0;
            for (int i = 1; i <= k; ++i) pref *= i / std::numbers::pi;
            const double ck = pref * laguerre_eval(k, alpha, 0.0);
            for (const auto& e : lay.a_functionals[k]) {
                if (e.block == lay.block_qe)
                    oqe.add(e.i, e.j, ck * e.value);
                else
                    oqo.add(e.i, e.j, ck * e.value);
            }
        }
        for (int i = 0; i <= pe; ++i)
            for (int j = 0; j <= i; ++j)
                if (oqe(i, j) != 0.0) p.add_objective(lay.block_qe, i, j, oqe(i, j));
        for (int i = 0; i <= po; ++i)
            for (int j = 0; j <= i; ++j)
                if (oqo(i, j) != 0.0) p.add_objective(lay.block_qo, i, j, oqo(i, j));
    }
    return out;
}

SdpProblem build_sphere_sdp(int n, int d, SphereBasis basis, double radius) {
    return build_sphere_sdp_full(n, d, basis, radius).problem;
}

RadialFunction extract_radial(const SphereSdp& sdp, const SdpSolution& sol) {
    RadialFunction f;
    f.n = sdp.layout.n;
    f.a.resize(sdp.layout.d + 1);
    for (int k = 0; k <= sdp.layout.d; ++k)
        f.a[k] = sparse_inner(sdp.layout.a_functionals[k], sol.X);
    return f;
}

GridCheckReport grid_check(const RadialFunction& f, double radius, const SphereSettings& settings) {
    GridCheckReport rep;
    rep.radius = radius;
    const double sep = 2.0 * radius;
    const double auto_range = 10.0 * std::sqrt(static_cast<double>(std::max(f.degree(), 1)));
    rep.t_max = settings.t_max > 0.0 ? settings.t_max : auto_range;
    rep.r_max = settings.r_max > 0.0 ? settings.r_max : std::max(auto_range, sep);
    rep.points = settings.grid_points;

    rep.min_p = std::numeric_limits<double>::infinity();
    for (int i = 0; i < rep.points; ++i) {
        const double t = rep.t_max * i / (rep.points - 1);
        rep.min_p = std::min(rep.min_p, eval_p(f, t));
    }
    rep.max_f_tail = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < rep.points; ++i) {
        const double r = sep + (rep.r_max - sep) * i / (rep.points - 1);
        rep.max_f_tail = std::max(rep.max_f_tail, eval_f(f, r));
    }
    rep.a0_margin = f.a[0] - ball_volume(f.n) * std::pow(radius, f.n);
    return rep;
}

SphereBoundResult sphere_bound(int n, int d, const SphereSettings& settings) {
    if (settings.radius_candidates.empty())
        throw SphereError("sphere_bound: need at least one radius candidate");
    SphereBoundResult best;
    bool have = false;
    for (double radius : settings.radius_candidates) {
        const SphereSdp sdp = build_sphere_sdp_full(n, d, settings.basis, radius);
        SphereBoundResult res;
        res.radius = radius;
        res.solution = solve(sdp.problem, settings.solver);
        res.f = extract_radial(sdp, res.solution);
        res.bound = eval_f(res.f, 0.0);
        res.report = grid_check(res.f, radius, settings);
        // Validity of the bound rests on the grid-checked conditions of the
        // returned f, not on the solver reaching its optimality tolerance, so
        // a stalled-but-feasible candidate still counts.
        res.verified = res.report.pass(settings.check_tol);
        if (!have || (res.verified && !best.verified) ||
            (res.verified == best.verified && res.bound < best.bound)) {
            best = std::move(res);
            have = true;
        }
    }
    return best;
}

}  // namespace packbound
