#include "packbound/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "packbound/linalg.hpp"

namespace packbound {

namespace {

using BlockVec = std::vector<SymMatrix>;

BlockVec zero_blocks(const std::vector<int>& orders) {
    BlockVec v;
    v.reserve(orders.size());
    for (int n : orders) v.emplace_back(n);
    return v;
}

BlockVec scaled_identity_blocks(const std::vector<int>& orders, double tau) {
    BlockVec v = zero_blocks(orders);
    for (auto& b : v)
        for (int i = 0; i < b.order(); ++i) b.set(i, i, tau);
    return v;
}

double block_dot(const BlockVec& a, const BlockVec& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k].dot(b[k]);
    return s;
}

double block_max_abs(const BlockVec& a) {
    double m = 0.0;
    for (const auto& b : a) m = std::max(m, b.max_abs());
    return m;
}

void block_axpy(BlockVec& dst, double s, const BlockVec& src) {
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k].axpy(s, src[k]);
}

/// <A, B> where A is the symmetric matrix described by sparse entries.
double sparse_dot(const std::vector<ConstraintEntry>& entries, const BlockVec& B) {
    double s = 0.0;
    for (const auto& e : entries) {
        const double coeff = (e.i == e.j) ? 1.0 : 2.0;
        s += coeff * e.value * B[e.block](e.i, e.j);
    }
    return s;
}

void sparse_add_into(const std::vector<ConstraintEntry>& entries, double scale, BlockVec& B) {
    for (const auto& e : entries) B[e.block].add(e.i, e.j, scale * e.value);
}

/// Strict Cholesky: fails on any pivot <= tiny_rel * max_diag. Used for PD
/// line-search tests and the Schur system, where semidefinite pivots are not
/// acceptable.
bool strict_cholesky(const SymMatrix& a, LowerTriangular& L, double tiny_rel) {
    const int n = a.order();
    double max_diag = 0.0;
    for (int i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(a(i, i)));
    const double tiny = tiny_rel * std::max(max_diag, 1e-300);

    L.n = n;
    L.tri.assign(static_cast<std::size_t>(n) * (n + 1) / 2, 0.0);
    auto lref = [&](int i, int j) -> double& {
        return L.tri[static_cast<std::size_t>(i) * (i + 1) / 2 + j];
    };
    for (int k = 0; k < n; ++k) {
        double d = a(k, k);
        for (int j = 0; j < k; ++j) d -= lref(k, j) * lref(k, j);
        if (!(d > tiny)) return false;
        const double lkk = std::sqrt(d);
        lref(k, k) = lkk;
        for (int i = k + 1; i < n; ++i) {
            double s = a(i, k);
            for (int j = 0; j < k; ++j) s -= lref(i, j) * lref(k, j);
            lref(i, k) = s / lkk;
        }
    }
    return true;
}

bool blocks_strictly_pd(const BlockVec& B) {
    LowerTriangular L;
    for (const auto& b : B)
        if (!strict_cholesky(b, L, 1e-14)) return false;
    return true;
}

/// Largest step alpha in [0,1] keeping S + alpha*dS strictly PD, scaled by the
/// fraction-to-boundary factor. Bisection on Cholesky tests.
double step_length(const BlockVec& S, const BlockVec& dS, double frac) {
    BlockVec trial = S;
    block_axpy(trial, 1.0, dS);
    if (blocks_strictly_pd(trial)) return frac;

    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 50; ++it) {
        const double mid = 0.5 * (lo + hi);
        trial = S;
        block_axpy(trial, mid, dS);
        if (blocks_strictly_pd(trial))
            lo = mid;
        else
            hi = mid;
    }
    return frac * lo;
}

struct Assembler {
    int m = 0;
    int n1 = 0;                       // number of order-1 blocks
    std::vector<int> slot1;           // block -> order-1 slot, or -1
    std::vector<int> big_blocks;      // indices of blocks with order > 1
    Dense Ad;                         // m x n1 coefficient rows on order-1 blocks
    // per big block: constraints touching it and their entries there
    std::vector<std::vector<int>> touch;
    std::vector<std::vector<std::vector<ConstraintEntry>>> big_entries;

    Assembler(const SdpProblem& p) {
        m = p.num_constraints();
        const int nb = static_cast<int>(p.block_orders.size());
        slot1.assign(nb, -1);
        for (int b = 0; b < nb; ++b) {
            if (p.block_orders[b] == 1)
                slot1[b] = n1++;
            else
                big_blocks.push_back(b);
        }
        Ad = Dense(m, std::max(n1, 1));
        touch.resize(big_blocks.size());
        big_entries.resize(big_blocks.size());
        std::vector<int> big_slot(nb, -1);
        for (std::size_t s = 0; s < big_blocks.size(); ++s) big_slot[big_blocks[s]] = static_cast<int>(s);

        for (int i = 0; i < m; ++i) {
            std::vector<std::vector<ConstraintEntry>> local(big_blocks.size());
            for (const auto& e : p.constraints[i].entries) {
                if (slot1[e.block] >= 0)
                    Ad.at(i, slot1[e.block]) += e.value;
                else
                    local[big_slot[e.block]].push_back(e);
            }
            for (std::size_t s = 0; s < big_blocks.size(); ++s) {
                if (!local[s].empty()) {
                    touch[s].push_back(i);
                    big_entries[s].push_back(std::move(local[s]));
                }
            }
        }
    }

    /// M_ij = tr(A_i Zinv A_j X), exploiting the order-1/sparse split.
    SymMatrix schur(const BlockVec& Zinv, const BlockVec& X,
                    const std::vector<int>& orders) const {
        SymMatrix M(std::max(m, 1));
        if (n1 > 0) {
            std::vector<double> w(n1);
            for (std::size_t b = 0; b < orders.size(); ++b)
                if (slot1[b] >= 0) w[slot1[b]] = Zinv[b](0, 0) * X[b](0, 0);
            std::vector<double> tmp(n1);
            for (int i = 0; i < m; ++i) {
                const double* ri = Ad.row(i);
                for (int k = 0; k < n1; ++k) tmp[k] = ri[k] * w[k];
                for (int j = i; j < m; ++j) {
                    const double* rj = Ad.row(j);
                    double s = 0.0;
                    for (int k = 0; k < n1; ++k) s += tmp[k] * rj[k];
                    if (s != 0.0) M.add(i, j, s);
                }
            }
        }
        for (std::size_t bs = 0; bs < big_blocks.size(); ++bs) {
            const int b = big_blocks[bs];
            const Dense Zi = Dense::from_sym(Zinv[b]);
            const Dense Xd = Dense::from_sym(X[b]);
            const auto& rows = touch[bs];
            const auto& ents = big_entries[bs];
            for (std::size_t ii = 0; ii < rows.size(); ++ii) {
                for (std::size_t jj = ii; jj < rows.size(); ++jj) {
                    double sum = 0.0;
                    for (const auto& ea : ents[ii]) {
                        const int a = ea.i, bb = ea.j;
                        for (const auto& eb : ents[jj]) {
                            const int c = eb.i, d = eb.j;
                            double s;
                            if (a != bb && c != d)
                                s = Zi(bb, c) * Xd(d, a) + Zi(bb, d) * Xd(c, a) +
                                    Zi(a, c) * Xd(d, bb) + Zi(a, d) * Xd(c, bb);
                            else if (a == bb && c != d)
                                s = Zi(a, c) * Xd(d, a) + Zi(a, d) * Xd(c, a);
                            else if (a != bb)
                                s = Zi(bb, c) * Xd(c, a) + Zi(a, c) * Xd(c, bb);
                            else
                                s = Zi(a, c) * Xd(c, a);
                            sum += ea.value * eb.value * s;
                        }
                    }
                    if (sum != 0.0) M.add(rows[ii], rows[jj], sum);
                }
            }
        }
        return M;
    }
};

/// sym(Zinv * Mid * X) per block, as needed by the HKM right-hand sides.
BlockVec sandwich(const BlockVec& Zinv, const BlockVec& Mid, const BlockVec& X) {
    BlockVec out;
    out.reserve(Zinv.size());
    for (std::size_t b = 0; b < Zinv.size(); ++b) {
        if (Zinv[b].order() == 1) {
            SymMatrix s(1);
            s.set(0, 0, Zinv[b](0, 0) * Mid[b](0, 0) * X[b](0, 0));
            out.push_back(std::move(s));
        } else {
            const Dense zi = Dense::from_sym(Zinv[b]);
            const Dense mid = Dense::from_sym(Mid[b]);
            const Dense xd = Dense::from_sym(X[b]);
            out.push_back(zi.multiply(mid).multiply(xd).symmetrized());
        }
    }
    return out;
}

struct SchurSolver {
    LowerTriangular L;
    double condition = 0.0;
    double jitter = 0.0;
    bool ok = false;

    void factor(SymMatrix M) {
        const int m = M.order();
        double max_diag = 0.0;
        for (int i = 0; i < m; ++i) max_diag = std::max(max_diag, M(i, i));
        double jit = 0.0;
        for (int attempt = 0; attempt < 4; ++attempt) {
            SymMatrix Mj = M;
            if (jit > 0.0)
                for (int i = 0; i < m; ++i) Mj.add(i, i, jit);
            if (strict_cholesky(Mj, L, 1e-300)) {
                ok = true;
                jitter = jit;
                double lmin = std::numeric_limits<double>::infinity(), lmax = 0.0;
                for (int i = 0; i < m; ++i) {
                    lmin = std::min(lmin, L.at(i, i));
                    lmax = std::max(lmax, L.at(i, i));
                }
                condition = (lmin > 0.0) ? (lmax / lmin) * (lmax / lmin) : 0.0;
                return;
            }
            jit = (jit == 0.0) ? 1e-14 * std::max(max_diag, 1.0) : jit * 1e3;
        }
        ok = false;
    }

    std::vector<double> solve(std::vector<double> rhs) const {
        L.solve_forward(rhs);
        L.solve_backward(rhs);
        return rhs;
    }
};

}  // namespace

int SdpProblem::add_block(int order) {
    if (order < 1) throw SdpDataError("SdpProblem: block order must be >= 1");
    block_orders.push_back(order);
    return static_cast<int>(block_orders.size()) - 1;
}

void SdpProblem::add_objective(int block, int i, int j, double value) {
    if (i < j) std::swap(i, j);
    objective.push_back({block, i, j, value});
}

int SdpProblem::total_order() const {
    int t = 0;
    for (int n : block_orders) t += n;
    return t;
}

std::vector<SymMatrix> SdpProblem::materialize_objective() const {
    auto B = zero_blocks(block_orders);
    sparse_add_into(objective, 1.0, B);
    return B;
}

std::vector<SymMatrix> SdpProblem::materialize_constraint(int idx) const {
    auto B = zero_blocks(block_orders);
    sparse_add_into(constraints[idx].entries, 1.0, B);
    return B;
}

void SdpProblem::validate() const {
    if (block_orders.empty()) throw SdpDataError("SdpProblem: no blocks");
    for (int n : block_orders)
        if (n < 1) throw SdpDataError("SdpProblem: block order must be >= 1");
    const int nb = static_cast<int>(block_orders.size());
    auto check_entries = [&](const std::vector<ConstraintEntry>& es, const char* what) {
        for (const auto& e : es) {
            if (e.block < 0 || e.block >= nb) throw SdpDataError(std::string(what) + ": block index out of range");
            const int n = block_orders[e.block];
            if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n)
                throw SdpDataError(std::string(what) + ": entry index out of range");
            if (!std::isfinite(e.value)) throw SdpDataError(std::string(what) + ": non-finite value");
        }
    };
    check_entries(objective, "objective");
    for (const auto& c : constraints) {
        check_entries(c.entries, "constraint");
        if (!std::isfinite(c.rhs)) throw SdpDataError("constraint: non-finite rhs");
    }

    // Rank test on the constraint Gram matrix (pivoted Cholesky). Dependent
    // constraint systems are rejected, not regularized.
    const int m = num_constraints();
    if (m == 0) return;
    SymMatrix G(m);
    {
        // Group coefficients by matrix position; G += outer(column) per position.
        struct Key {
            int block, i, j;
            bool operator<(const Key& o) const {
                if (block != o.block) return block < o.block;
                if (i != o.i) return i < o.i;
                return j < o.j;
            }
        };
        std::vector<std::pair<Key, std::pair<int, double>>> items;
        for (int c = 0; c < m; ++c)
            for (const auto& e : constraints[c].entries) {
                const double s = (e.i == e.j) ? 1.0 : std::sqrt(2.0);
                items.push_back({{e.block, e.i, e.j}, {c, e.value * s}});
            }
        std::sort(items.begin(), items.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::size_t k = 0;
        std::vector<std::pair<int, double>> col;
        while (k < items.size()) {
            col.clear();
            const Key key = items[k].first;
            while (k < items.size() && !(key < items[k].first)) col.push_back(items[k++].second);
            for (std::size_t s = 0; s < col.size(); ++s)
                for (std::size_t t = s; t < col.size(); ++t) {
                    if (col[s].first <= col[t].first)
                        G.add(col[t].first, col[s].first, col[s].second * col[t].second);
                    else
                        G.add(col[s].first, col[t].first, col[s].second * col[t].second);
                }
        }
    }
    {
        Dense Gd = Dense::from_sym(G);
        std::vector<int> perm(m);
        for (int i = 0; i < m; ++i) perm[i] = i;
        double max0 = 0.0;
        for (int i = 0; i < m; ++i) max0 = std::max(max0, Gd(i, i));
        if (max0 <= 0.0) throw SdpDataError("dependent constraints: zero constraint matrix");
        const double cutoff = 1e-10 * max0;
        for (int k = 0; k < m; ++k) {
            int piv = k;
            for (int i = k; i < m; ++i)
                if (Gd(perm[i], perm[i]) > Gd(perm[piv], perm[piv])) piv = i;
            std::swap(perm[k], perm[piv]);
            const double d = Gd(perm[k], perm[k]);
            if (d <= cutoff)
                throw SdpDataError("dependent constraints: Gram rank " + std::to_string(k) +
                                   " < " + std::to_string(m));
            // Schur update, keeping the working submatrix symmetric so pivot
            // swaps never expose stale entries.
            for (int i = k + 1; i < m; ++i) {
                const double lik = Gd(perm[i], perm[k]) / d;
                for (int j = k + 1; j <= i; ++j) {
                    const double v = Gd(perm[i], perm[j]) - lik * Gd(perm[j], perm[k]);
                    Gd.at(perm[i], perm[j]) = v;
                    Gd.at(perm[j], perm[i]) = v;
                }
            }
        }
    }
}

std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::MaxIterations: return "max_iterations";
        case SolveStatus::NumericalFailure: return "numerical_failure";
    }
    return "unknown";
}

SdpSolution solve(const SdpProblem& problem_in, const SolveSettings& settings) {
    problem_in.validate();
    if (settings.gap_tol <= 0.0 || settings.feas_tol <= 0.0 || settings.max_iter < 1)
        throw SdpDataError("solve: invalid settings");

    // Normalize each constraint row to unit Frobenius norm; the dual vector is
    // scaled back on report. Cuts the Schur complement's dynamic range.
    SdpProblem p = problem_in;
    const int m = p.num_constraints();
    std::vector<double> row_scale(m, 1.0);
    for (int i = 0; i < m; ++i) {
        double fro2 = 0.0;
        for (const auto& e : p.constraints[i].entries)
            fro2 += (e.i == e.j ? 1.0 : 2.0) * e.value * e.value;
        const double s = std::sqrt(fro2);
        if (s > 1e-300) {
            row_scale[i] = s;
            for (auto& e : p.constraints[i].entries) e.value /= s;
            p.constraints[i].rhs /= s;
        }
    }

    const double sign = (p.sense == Sense::Minimize) ? -1.0 : 1.0;
    const auto& orders = p.block_orders;
    const int ntot = p.total_order();

    BlockVec C = zero_blocks(orders);
    sparse_add_into(p.objective, sign, C);
    std::vector<double> b(m);
    for (int i = 0; i < m; ++i) b[i] = p.constraints[i].rhs;

    const Assembler asmbl(p);

    // Deterministic scaled-identity start sized from the data norms.
    double max_b = 0.0;
    for (double v : b) max_b = std::max(max_b, std::abs(v));
    double max_a = 0.0;
    for (const auto& c : p.constraints)
        for (const auto& e : c.entries) max_a = std::max(max_a, std::abs(e.value));
    const double max_c = block_max_abs(C);
    const double tau_p = std::max({10.0, std::sqrt(static_cast<double>(ntot)), 2.0 * max_b});
    const double tau_d = std::max({10.0, std::sqrt(static_cast<double>(ntot)), 2.0 * max_c, max_a});

    BlockVec X = scaled_identity_blocks(orders, tau_p);
    BlockVec Z = scaled_identity_blocks(orders, tau_d);
    std::vector<double> y(m, 0.0);

    SdpSolution sol;
    sol.y = y;

    const double bscale = 1.0 + max_b;
    const double cscale = 1.0 + max_c;

    // Best iterate seen so far (stall and divergence exits report it).
    struct Snapshot {
        BlockVec X, Z;
        std::vector<double> y;
        double pobj = 0.0, dobj = 0.0, prim_res = 0.0, dual_res = 0.0;
        int iter = 0;
        double score = std::numeric_limits<double>::infinity();
    } best;

    auto finish = [&](SolveStatus st, const std::string& reason) {
        sol.status = st;
        sol.failure_reason = reason;
        if (st != SolveStatus::Optimal && best.score < std::numeric_limits<double>::infinity()) {
            sol.X = best.X;
            sol.y = best.y;
            sol.Z = best.Z;
            sol.primal_value = sign * best.pobj;
            sol.dual_value = sign * best.dobj;
            sol.gap = std::abs(best.pobj - best.dobj);
            sol.primal_residual = best.prim_res;
            sol.dual_residual = best.dual_res;
            sol.iterations = best.iter;
        } else {
            sol.X = X;
            sol.y = y;
            sol.Z = Z;
        }
        for (int i = 0; i < m; ++i) sol.y[i] /= row_scale[i];  // undo row normalization
        return sol;
    };
    double mu_min = std::numeric_limits<double>::infinity();

    for (int iter = 0; iter < settings.max_iter; ++iter) {
        // Residuals and objective values.
        std::vector<double> rp(m);
        double prim_res = 0.0;
        for (int i = 0; i < m; ++i) {
            rp[i] = b[i] - sparse_dot(p.constraints[i].entries, X);
            prim_res = std::max(prim_res, std::abs(rp[i]));
        }
        prim_res /= bscale;

        BlockVec Rd = C;  // Rd = C + Z - A*(y)
        block_axpy(Rd, 1.0, Z);
        for (int i = 0; i < m; ++i)
            if (y[i] != 0.0) sparse_add_into(p.constraints[i].entries, -y[i], Rd);
        const double dual_res = block_max_abs(Rd) / cscale;

        const double pobj = block_dot(C, X);
        double dobj = 0.0;
        for (int i = 0; i < m; ++i) dobj += b[i] * y[i];
        const double mu = block_dot(X, Z) / ntot;

        sol.iterations = iter;
        sol.primal_value = sign * pobj;
        sol.dual_value = sign * dobj;
        sol.gap = std::abs(pobj - dobj);
        sol.primal_residual = prim_res;
        sol.dual_residual = dual_res;
        sol.trace.push_back({sign * pobj, sign * dobj, prim_res, dual_res, mu});

        const double rel_gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj));
        if (rel_gap <= settings.gap_tol && prim_res <= settings.feas_tol &&
            dual_res <= settings.feas_tol)
            return finish(SolveStatus::Optimal, "");

        const double score = std::max({rel_gap / settings.gap_tol, prim_res / settings.feas_tol,
                                       dual_res / settings.feas_tol});
        if (score < best.score) {
            best = {X, Z, y, pobj, dobj, prim_res, dual_res, iter, score};
        }
        mu_min = std::min(mu_min, mu);
        if (iter >= 15 && mu > 50.0 * mu_min)
            return finish(SolveStatus::MaxIterations,
                          "complementarity diverged; reporting best iterate");

        // Factor Z and form Zinv.
        BlockVec Zinv;
        Zinv.reserve(orders.size());
        for (const auto& zb : Z) {
            LowerTriangular L;
            if (!strict_cholesky(zb, L, 1e-300))
                return finish(SolveStatus::NumericalFailure, "dual iterate lost definiteness");
            Zinv.push_back(invert_from_cholesky(L));
        }

        SchurSolver schur;
        schur.factor(asmbl.schur(Zinv, X, orders));
        sol.schur_condition = schur.condition;
        if (!schur.ok)
            return finish(SolveStatus::NumericalFailure, "Schur complement factorization breakdown");

        std::vector<double> v(m), h(m);
        for (int i = 0; i < m; ++i) v[i] = sparse_dot(p.constraints[i].entries, Zinv);
        const BlockVec G1 = sandwich(Zinv, Rd, X);
        for (int i = 0; i < m; ++i) h[i] = sparse_dot(p.constraints[i].entries, G1);

        auto direction = [&](double sigma_mu, const std::vector<double>& u,
                             const BlockVec* G2) {
            std::vector<double> rhs(m);
            for (int i = 0; i < m; ++i) rhs[i] = sigma_mu * v[i] - b[i] + h[i] - u[i];
            std::vector<double> dy = schur.solve(rhs);

            BlockVec dZ = Rd;
            for (auto& bb : dZ) bb.scale(-1.0);
            for (int i = 0; i < m; ++i)
                if (dy[i] != 0.0) sparse_add_into(p.constraints[i].entries, dy[i], dZ);

            BlockVec dX = sandwich(Zinv, dZ, X);
            for (std::size_t bb = 0; bb < dX.size(); ++bb) {
                dX[bb].scale(-1.0);
                dX[bb].axpy(-1.0, X[bb]);
                dX[bb].axpy(sigma_mu, Zinv[bb]);
                if (G2) dX[bb].axpy(-1.0, (*G2)[bb]);
            }
            return std::make_pair(std::move(dX), std::make_pair(std::move(dy), std::move(dZ)));
        };

        const double frac = settings.step_fraction;

        // Predictor (affine scaling).
        const std::vector<double> zero_u(m, 0.0);
        auto [dXa, rest_a] = direction(0.0, zero_u, nullptr);
        auto& dya = rest_a.first;
        auto& dZa = rest_a.second;
        (void)dya;

        const double ap_a = step_length(X, dXa, frac);
        const double ad_a = step_length(Z, dZa, frac);

        BlockVec Xt = X, Zt = Z;
        block_axpy(Xt, ap_a, dXa);
        block_axpy(Zt, ad_a, dZa);
        const double mu_aff = block_dot(Xt, Zt) / ntot;
        double sigma = std::pow(mu_aff / mu, 3);
        sigma = std::clamp(sigma, 1e-10, 1.0);

        // Corrector.
        const BlockVec G2 = sandwich(Zinv, dZa, dXa);
        std::vector<double> u(m);
        for (int i = 0; i < m; ++i) u[i] = sparse_dot(p.constraints[i].entries, G2);

        auto [dX, rest] = direction(sigma * mu, u, &G2);
        auto& dy = rest.first;
        auto& dZ = rest.second;

        const double ap = step_length(X, dX, frac);
        const double ad = step_length(Z, dZ, frac);
        if (ap < 1e-10 && ad < 1e-10)
            return finish(SolveStatus::MaxIterations, "step length collapsed; gap stalled");

        block_axpy(X, ap, dX);
        for (int i = 0; i < m; ++i) y[i] += ad * dy[i];
        block_axpy(Z, ad, dZ);
    }
    return finish(SolveStatus::MaxIterations, "iteration budget exhausted");
}

double sparse_inner(const std::vector<ConstraintEntry>& entries,
                    const std::vector<SymMatrix>& X) {
    return sparse_dot(entries, X);
}

bool CheckReport::primal_feasible(double tol) const {
    if (!has_primal) return false;
    if (primal_residual > tol) return false;
    for (double mgn : primal_psd_margins)
        if (mgn < -tol) return false;
    return true;
}

bool CheckReport::dual_feasible(double tol) const {
    if (!has_dual) return false;
    if (dual_residual > tol) return false;
    for (double mgn : dual_psd_margins)
        if (mgn < -tol) return false;
    return true;
}

CheckReport check_solution(const SdpProblem& p, const SdpSolution& s, double tol) {
    (void)tol;
    const int nb = static_cast<int>(p.block_orders.size());
    const int m = p.num_constraints();
    CheckReport rep;
    rep.has_primal = !s.X.empty();
    rep.has_dual = !s.Z.empty() || !s.y.empty();

    auto shapes_match = [&](const BlockVec& B) {
        if (static_cast<int>(B.size()) != nb) return false;
        for (int i = 0; i < nb; ++i)
            if (B[i].order() != p.block_orders[i]) return false;
        return true;
    };
    if (rep.has_primal && !shapes_match(s.X)) throw SdpDataError("check_solution: primal shape mismatch");
    if (!s.Z.empty() && !shapes_match(s.Z)) throw SdpDataError("check_solution: dual shape mismatch");
    if (!s.y.empty() && static_cast<int>(s.y.size()) != m)
        throw SdpDataError("check_solution: dual vector length mismatch");
    rep.shapes_ok = true;

    const double sign = (p.sense == Sense::Minimize) ? -1.0 : 1.0;
    BlockVec C = zero_blocks(p.block_orders);
    sparse_add_into(p.objective, sign, C);

    if (rep.has_primal) {
        for (int i = 0; i < m; ++i)
            rep.primal_residual =
                std::max(rep.primal_residual,
                         std::abs(p.constraints[i].rhs - sparse_dot(p.constraints[i].entries, s.X)));
        for (const auto& xb : s.X) rep.primal_psd_margins.push_back(min_eigenvalue(xb));
        rep.primal_value = sign * block_dot(C, s.X);
    }
    if (rep.has_dual && !s.y.empty()) {
        double dobj = 0.0;
        for (int i = 0; i < m; ++i) dobj += p.constraints[i].rhs * s.y[i];
        rep.dual_value = sign * dobj;
        if (!s.Z.empty()) {
            BlockVec Rd = C;
            block_axpy(Rd, 1.0, s.Z);
            for (int i = 0; i < m; ++i)
                if (s.y[i] != 0.0) sparse_add_into(p.constraints[i].entries, -s.y[i], Rd);
            rep.dual_residual = block_max_abs(Rd);
            for (const auto& zb : s.Z) rep.dual_psd_margins.push_back(min_eigenvalue(zb));
        }
    }
    if (rep.has_primal && rep.has_dual && !s.y.empty())
        rep.gap = std::abs(rep.primal_value - rep.dual_value);
    return rep;
}

SdpProblem lp_as_sdp(const std::vector<double>& costs,
                     const std::vector<std::vector<double>>& rows,
                     const std::vector<double>& rhs) {
    if (rows.size() != rhs.size()) throw SdpDataError("lp_as_sdp: rows/rhs size mismatch");
    const int nvar = static_cast<int>(costs.size());
    const int nrow = static_cast<int>(rows.size());
    SdpProblem p;
    p.sense = Sense::Maximize;
    for (int j = 0; j < nvar; ++j) {
        p.add_block(1);
        if (costs[j] != 0.0) p.add_objective(j, 0, 0, costs[j]);
    }
    for (int i = 0; i < nrow; ++i) {
        if (static_cast<int>(rows[i].size()) != nvar)
            throw SdpDataError("lp_as_sdp: row length mismatch");
        const int slack = p.add_block(1);
        SdpConstraint c;
        for (int j = 0; j < nvar; ++j)
            if (rows[i][j] != 0.0) c.entries.push_back({j, 0, 0, rows[i][j]});
        c.entries.push_back({slack, 0, 0, 1.0});
        c.rhs = rhs[i];
        p.constraints.push_back(std::move(c));
    }
    return p;
}

}  // namespace packbound
