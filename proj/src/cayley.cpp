#include "packbound/cayley.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

namespace packbound {

FiniteAbelianGroup FiniteAbelianGroup::cyclic(int n) {
    if (n < 1) throw CayleyError("cyclic group order must be >= 1");
    return {Kind::Cyclic, n};
}

FiniteAbelianGroup FiniteAbelianGroup::boolean(int m) {
    if (m < 1 || m > 30) throw CayleyError("boolean group rank must be in [1,30]");
    return {Kind::Boolean, m};
}

int FiniteAbelianGroup::order() const {
    return kind == Kind::Cyclic ? param : (1 << param);
}

int FiniteAbelianGroup::negate(int x) const {
    return kind == Kind::Cyclic ? (param - x) % param : x;
}

int FiniteAbelianGroup::add(int x, int y) const {
    return kind == Kind::Cyclic ? (x + y) % param : (x ^ y);
}

std::complex<double> FiniteAbelianGroup::character(int u, int x) const {
    if (kind == Kind::Boolean) {
        const int parity = std::popcount(static_cast<unsigned>(u & x)) & 1;
        return {parity ? -1.0 : 1.0, 0.0};
    }
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(u) *
                         static_cast<double>(x) / static_cast<double>(param);
    return {std::cos(angle), std::sin(angle)};
}

FourierVector dft(const FiniteAbelianGroup& g, const std::vector<std::complex<double>>& f) {
    const int N = g.order();
    if (static_cast<int>(f.size()) != N) throw CayleyError("dft: value vector length mismatch");
    FourierVector out;
    out.coeff.assign(N, {0.0, 0.0});
    for (int u = 0; u < N; ++u) {
        std::complex<double> s{0.0, 0.0};
        for (int x = 0; x < N; ++x) s += f[x] * std::conj(g.character(u, x));
        out.coeff[u] = s / static_cast<double>(N);
    }
    return out;
}

std::vector<std::complex<double>> inverse_dft(const FiniteAbelianGroup& g, const FourierVector& fhat) {
    const int N = g.order();
    if (static_cast<int>(fhat.coeff.size()) != N) throw CayleyError("inverse_dft: length mismatch");
    std::vector<std::complex<double>> f(N, {0.0, 0.0});
    for (int x = 0; x < N; ++x) {
        std::complex<double> s{0.0, 0.0};
        for (int u = 0; u < N; ++u) s += fhat.coeff[u] * g.character(u, x);
        f[x] = s;
    }
    return f;
}

bool is_positive_type(const FiniteAbelianGroup& g, const std::vector<std::complex<double>>& f, double tol) {
    const int N = g.order();
    if (static_cast<int>(f.size()) != N) throw CayleyError("is_positive_type: length mismatch");
    for (int x = 0; x < N; ++x)
        if (std::abs(f[x] - std::conj(f[g.negate(x)])) > tol) return false;
    const FourierVector fh = dft(g, f);
    for (const auto& c : fh.coeff)
        if (c.real() < -tol) return false;
    return true;
}

CayleySpec::CayleySpec(FiniteAbelianGroup g, std::vector<int> sigma_in)
    : group(g), sigma(std::move(sigma_in)) {
    const int N = group.order();
    std::sort(sigma.begin(), sigma.end());
    sigma.erase(std::unique(sigma.begin(), sigma.end()), sigma.end());
    for (int s : sigma) {
        if (s <= 0 || s >= N)
            throw CayleyError("sigma element " + std::to_string(s) + " outside (0, order)");
        if (!std::binary_search(sigma.begin(), sigma.end(), group.negate(s)))
            throw CayleyError("sigma is not closed under negation (missing -" + std::to_string(s) + ")");
    }
}

bool CayleySpec::in_sigma(int x) const {
    return std::binary_search(sigma.begin(), sigma.end(), x);
}

namespace {

/// Real value of sum_{u in class} chi_u(x).
double class_character_sum(const FiniteAbelianGroup& g, int rep, int size, int x) {
    if (g.kind == FiniteAbelianGroup::Kind::Boolean)
        return g.character(rep, x).real();
    if (size == 1) {
        // u = 0 or the self-paired u = n/2; cos is exact enough at 1e-12 scale.
        return g.character(rep, x).real();
    }
    return 2.0 * g.character(rep, x).real();
}

}  // namespace

CayleyLp build_cayley_lp(const CayleySpec& spec) {
    const auto& g = spec.group;
    const int N = g.order();
    CayleyLp lp;
    auto& lay = lp.layout;
    SdpProblem& p = lp.problem;
    p.sense = Sense::Minimize;

    // Conjugate classes {u, -u}; one LP variable per class.
    lay.class_of.assign(N, -1);
    for (int u = 0; u < N; ++u) {
        if (lay.class_of[u] >= 0) continue;
        const int nu = g.negate(u);
        const int c = static_cast<int>(lay.class_rep.size());
        lay.class_of[u] = c;
        lay.class_rep.push_back(u);
        if (nu != u) {
            lay.class_of[nu] = c;
            lay.class_size.push_back(2);
        } else {
            lay.class_size.push_back(1);
        }
    }
    const int ncls = static_cast<int>(lay.class_rep.size());

    lay.var_block.resize(ncls);
    for (int c = 0; c < ncls; ++c) {
        lay.var_block[c] = p.add_block(1);
        p.add_objective(lay.var_block[c], 0, 0, static_cast<double>(lay.class_size[c]));
    }

    // One row per nonedge +-class representative: sum_u fhat(u) chi_u(x) <= 0.
    for (int x = 1; x < N; ++x) {
        if (spec.in_sigma(x)) continue;
        if (g.kind == FiniteAbelianGroup::Kind::Cyclic && g.negate(x) < x)
            continue;  // row for -x is identical for real f
        SdpConstraint c;
        for (int cl = 0; cl < ncls; ++cl) {
            const double s = class_character_sum(g, lay.class_rep[cl], lay.class_size[cl], x);
            if (s != 0.0) c.entries.push_back({lay.var_block[cl], 0, 0, s});
        }
        const int slack = p.add_block(1);
        c.entries.push_back({slack, 0, 0, 1.0});
        c.rhs = 0.0;
        lay.nonedge_reps.push_back(x);
        p.constraints.push_back(std::move(c));
    }

    // fhat(e) >= 1.
    {
        SdpConstraint c;
        c.entries.push_back({lay.var_block[lay.class_of[0]], 0, 0, 1.0});
        const int slack = p.add_block(1);
        c.entries.push_back({slack, 0, 0, -1.0});
        c.rhs = 1.0;
        lay.normalization_row = p.num_constraints();
        p.constraints.push_back(std::move(c));
    }
    return lp;
}

SdpProblem cayley_theta_lp(const CayleySpec& spec) {
    return build_cayley_lp(spec).problem;
}

CayleyThetaResult solve_cayley_theta(const CayleySpec& spec, const SolveSettings& settings) {
    const CayleyLp lp = build_cayley_lp(spec);
    CayleyThetaResult res;
    res.solution = solve(lp.problem, settings);
    res.value = res.solution.primal_value;
    const int N = spec.group.order();
    res.fhat.resize(N);
    for (int u = 0; u < N; ++u) {
        const int c = lp.layout.class_of[u];
        res.fhat[u] = res.solution.X.empty() ? 0.0 : res.solution.X[lp.layout.var_block[c]](0, 0);
    }
    res.dual = res.solution.y;
    return res;
}

WeightedGraph expand_to_graph(const CayleySpec& spec) {
    const int N = spec.group.order();
    if (N > 4096) throw CayleyError("expand_to_graph: group order exceeds 4096");
    std::vector<std::pair<int, int>> edges;
    for (int x = 0; x < N; ++x)
        for (int s : spec.sigma) {
            const int y = spec.group.add(x, s);
            if (x < y) edges.emplace_back(x, y);
        }
    return WeightedGraph(N, std::move(edges));
}

CayleySpec code_spec(int m, int d) {
    if (d < 1 || d > m) throw CayleyError("code_spec: need 1 <= d <= m");
    const FiniteAbelianGroup g = FiniteAbelianGroup::boolean(m);
    std::vector<int> sigma;
    for (int x = 1; x < g.order(); ++x) {
        const int wt = std::popcount(static_cast<unsigned>(x));
        if (wt >= 1 && wt <= d - 1) sigma.push_back(x);
    }
    return CayleySpec(g, std::move(sigma));
}

DelsarteLp build_delsarte_lp(int m, int d) {
    if (m < 1 || m > 24 || d < 1 || d > m)
        throw CayleyError("delsarte: need 1 <= d <= m <= 24");

    // K[j][w] = sum over |u| = w of chi_u(x_j), x_j = first j coordinates set.
    // Depends only on j = |x|; exact integer counts via enumeration.
    std::vector<std::vector<double>> K(m + 1, std::vector<double>(m + 1, 0.0));
    const unsigned total = 1u << m;
    for (unsigned u = 0; u < total; ++u) {
        const int w = std::popcount(u);
        for (int j = d; j <= m; ++j) {
            const unsigned xj = (1u << j) - 1u;
            K[j][w] += (std::popcount(u & xj) & 1) ? -1.0 : 1.0;
        }
    }

    auto binom = [](int n, int k) {
        double b = 1.0;
        for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
        return b;
    };

    DelsarteLp lp;
    SdpProblem& p = lp.problem;
    p.sense = Sense::Minimize;
    lp.weight_var_block.resize(m + 1);
    for (int w = 0; w <= m; ++w) {
        lp.weight_var_block[w] = p.add_block(1);
        p.add_objective(lp.weight_var_block[w], 0, 0, binom(m, w));
    }
    for (int j = d; j <= m; ++j) {
        SdpConstraint c;
        for (int w = 0; w <= m; ++w)
            if (K[j][w] != 0.0) c.entries.push_back({lp.weight_var_block[w], 0, 0, K[j][w]});
        const int slack = p.add_block(1);
        c.entries.push_back({slack, 0, 0, 1.0});
        c.rhs = 0.0;
        p.constraints.push_back(std::move(c));
    }
    {
        SdpConstraint c;
        c.entries.push_back({lp.weight_var_block[0], 0, 0, 1.0});
        const int slack = p.add_block(1);
        c.entries.push_back({slack, 0, 0, -1.0});
        c.rhs = 1.0;
        p.constraints.push_back(std::move(c));
    }
    return lp;
}

DelsarteResult delsarte(int m, int d, const SolveSettings& settings) {
    const DelsarteLp lp = build_delsarte_lp(m, d);
    DelsarteResult res;
    res.solution = solve(lp.problem, settings);
    res.value = res.solution.primal_value;
    res.fhat_by_weight.resize(m + 1);
    for (int w = 0; w <= m; ++w)
        res.fhat_by_weight[w] =
            res.solution.X.empty() ? 0.0 : res.solution.X[lp.weight_var_block[w]](0, 0);
    return res;
}

double delsarte_bound(int m, int d) {
    return delsarte(m, d).value;
}

}  // namespace packbound
