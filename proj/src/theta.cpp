#include "packbound/theta.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "packbound/linalg.hpp"

namespace packbound {

namespace {

SymMatrix weight_outer(const WeightedGraph& g) {
    const int n = g.n_vertices;
    SymMatrix W(n);
    std::vector<double> r(n);
    for (int i = 0; i < n; ++i) r[i] = std::sqrt(g.weights[i]);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) W.set(i, j, r[i] * r[j]);
    return W;
}

}  // namespace

ThetaSdp build_theta_sdp(const WeightedGraph& g) {
    const int n = g.n_vertices;
    ThetaSdp t;
    SdpProblem& p = t.problem;
    p.sense = Sense::Maximize;

    const int block_B = p.add_block(n);
    const SymMatrix W = weight_outer(g);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j)
            if (W(i, j) != 0.0) p.add_objective(block_B, i, j, W(i, j));

    std::vector<int> diag_slack(n);
    for (int x = 0; x < n; ++x) diag_slack[x] = p.add_block(1);

    // Normalization row (dual variable M): sum of diagonal slacks equals 1.
    {
        SdpConstraint c;
        for (int x = 0; x < n; ++x) c.entries.push_back({diag_slack[x], 0, 0, 1.0});
        c.rhs = 1.0;
        t.row_normalization = p.num_constraints();
        p.constraints.push_back(std::move(c));
    }
    // Diagonal rows (dual variables K(x,x)): B(x,x) = slack_x.
    t.row_diag.resize(n);
    for (int x = 0; x < n; ++x) {
        SdpConstraint c;
        c.entries.push_back({block_B, x, x, 1.0});
        c.entries.push_back({diag_slack[x], 0, 0, -1.0});
        c.rhs = 0.0;
        t.row_diag[x] = p.num_constraints();
        p.constraints.push_back(std::move(c));
    }
    // Pair rows (dual variables K(x,y)): edges pin B(x,y) = 0, nonedges get a
    // nonnegative slack so that the dual side reads K(x,y) <= 0.
    t.row_pair.assign(n, std::vector<int>(n, -1));
    for (int x = 0; x < n; ++x) {
        for (int y = x + 1; y < n; ++y) {
            SdpConstraint c;
            c.entries.push_back({block_B, y, x, 1.0});
            if (!g.adjacent(x, y)) {
                const int slack = p.add_block(1);
                c.entries.push_back({slack, 0, 0, -1.0});
            }
            c.rhs = 0.0;
            t.row_pair[x][y] = t.row_pair[y][x] = p.num_constraints();
            p.constraints.push_back(std::move(c));
        }
    }
    return t;
}

SdpProblem theta_prime_sdp(const WeightedGraph& g) {
    return build_theta_sdp(g).problem;
}

CertificateCheck verify_theta_certificate(const WeightedGraph& g, const ThetaCertificate& cert) {
    const int n = g.n_vertices;
    if (cert.K.order() != n) throw GraphError("certificate kernel order mismatch");
    CertificateCheck chk;
    SymMatrix slack = cert.K;
    slack.axpy(-1.0, weight_outer(g));
    chk.psd_margin = min_eigenvalue(slack);

    double diag = -std::numeric_limits<double>::infinity();
    for (int x = 0; x < n; ++x) diag = std::max(diag, cert.K(x, x) - cert.M);
    chk.max_diag_violation = diag;

    double nonedge = 0.0;
    bool any = false;
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            if (!g.adjacent(x, y)) {
                nonedge = any ? std::max(nonedge, cert.K(x, y)) : cert.K(x, y);
                any = true;
            }
    chk.max_nonedge_violation = any ? nonedge : 0.0;
    return chk;
}

ThetaResult theta_prime(const WeightedGraph& g, const SolveSettings& settings) {
    ThetaResult res;
    const int n = g.n_vertices;

    bool all_zero = true;
    for (double w : g.weights)
        if (w > 0.0) all_zero = false;
    if (all_zero) {
        res.value = 0.0;
        res.certificate.M = 0.0;
        res.certificate.K = SymMatrix(n);
        res.solution.status = SolveStatus::Optimal;
        return res;
    }

    const ThetaSdp t = build_theta_sdp(g);
    res.solution = solve(t.problem, settings);

    ThetaCertificate cert;
    cert.M = res.solution.y.empty() ? 0.0 : res.solution.y[t.row_normalization];
    cert.K = SymMatrix(n);
    for (int x = 0; x < n; ++x) cert.K.set(x, x, res.solution.y[t.row_diag[x]]);
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) cert.K.set(x, y, res.solution.y[t.row_pair[x][y]]);

    const CertificateCheck chk = verify_theta_certificate(g, cert);
    cert.psd_margin = chk.psd_margin;
    cert.max_nonedge_violation = chk.max_nonedge_violation;

    res.certificate = std::move(cert);
    res.value = res.solution.dual_value;  // the Eq-(1) side: M itself
    return res;
}

AlphaResult alpha_bruteforce(const WeightedGraph& g) {
    const int n = g.n_vertices;
    if (n > 30) throw GraphError("alpha_bruteforce: graph exceeds 30 vertices");
    const auto adj = g.adjacency_masks();

    // Vertices in descending weight order tightens the remaining-weight bound.
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return g.weights[a] > g.weights[b]; });

    std::vector<double> suffix_weight(n + 1, 0.0);
    for (int k = n - 1; k >= 0; --k)
        suffix_weight[k] = suffix_weight[k + 1] + g.weights[order[k]];

    double best = 0.0;
    std::uint64_t best_set = 0;

    // Branch and bound over include/exclude decisions in the fixed order.
    struct Frame {
        int idx;
        std::uint64_t chosen;
        std::uint64_t banned;
        double weight;
    };
    std::vector<Frame> stack{{0, 0, 0, 0.0}};
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (f.weight > best) {
            best = f.weight;
            best_set = f.chosen;
        }
        if (f.idx >= n) continue;
        // Upper bound: everything not yet banned from idx onward.
        double ub = f.weight;
        bool hopeless = false;
        for (int k = f.idx; k < n; ++k) {
            if (ub + suffix_weight[k] <= best) {
                hopeless = true;
                break;
            }
            if (!(f.banned >> order[k] & 1)) ub += g.weights[order[k]];
        }
        if (hopeless || ub <= best) continue;

        const int v = order[f.idx];
        if (!(f.banned >> v & 1)) {
            stack.push_back({f.idx + 1, f.chosen | (std::uint64_t{1} << v),
                             f.banned | adj[v] | (std::uint64_t{1} << v),
                             f.weight + g.weights[v]});
        }
        stack.push_back({f.idx + 1, f.chosen, f.banned, f.weight});
    }

    AlphaResult res;
    res.value = best;
    for (int v = 0; v < n; ++v)
        if (best_set >> v & 1) res.witness.push_back(v);
    return res;
}

}  // namespace packbound
