#include "packbound/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace packbound {

Dense Dense::identity(int n) {
    Dense m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

Dense Dense::from_sym(const SymMatrix& a) {
    const int n = a.order();
    Dense m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            m.at(i, j) = a(i, j);
            m.at(j, i) = a(i, j);
        }
    return m;
}

Dense Dense::multiply(const Dense& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("Dense::multiply: shape mismatch");
    Dense out(rows_, other.cols_);
    for (int i = 0; i < rows_; ++i) {
        const double* ai = row(i);
        double* oi = out.row(i);
        for (int k = 0; k < cols_; ++k) {
            const double aik = ai[k];
            if (aik == 0.0) continue;
            const double* bk = other.row(k);
            for (int j = 0; j < other.cols_; ++j) oi[j] += aik * bk[j];
        }
    }
    return out;
}

Dense Dense::transpose() const {
    Dense out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(j, i) = (*this)(i, j);
    return out;
}

SymMatrix Dense::symmetrized() const {
    if (rows_ != cols_) throw std::invalid_argument("Dense::symmetrized: not square");
    SymMatrix s(rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j <= i; ++j) s.set(i, j, 0.5 * ((*this)(i, j) + (*this)(j, i)));
    return s;
}

void LowerTriangular::solve_forward(std::vector<double>& b) const {
    for (int i = 0; i < n; ++i) {
        double s = b[i];
        const double* li = tri.data() + static_cast<std::size_t>(i) * (i + 1) / 2;
        for (int j = 0; j < i; ++j) s -= li[j] * b[j];
        b[i] = s / li[i];
    }
}

void LowerTriangular::solve_backward(std::vector<double>& b) const {
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int k = i + 1; k < n; ++k) s -= at(k, i) * b[k];
        b[i] = s / at(i, i);
    }
}

SymMatrix LowerTriangular::reconstruct() const {
    SymMatrix a(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            double s = 0.0;
            for (int k = 0; k <= j; ++k) s += at(i, k) * at(j, k);
            a.set(i, j, s);
        }
    return a;
}

CholeskyResult cholesky(const SymMatrix& a, double tol) {
    if (tol < 0.0) throw std::invalid_argument("cholesky: tol must be >= 0");
    if (!a.all_finite()) throw std::invalid_argument("cholesky: non-finite input");
    const int n = a.order();
    const double scale = 1.0 + a.max_abs();
    const double band = tol * scale;

    CholeskyResult res;
    res.factor.n = n;
    auto& L = res.factor.tri;
    L.assign(static_cast<std::size_t>(n) * (n + 1) / 2, 0.0);
    auto lref = [&](int i, int j) -> double& {
        return L[static_cast<std::size_t>(i) * (i + 1) / 2 + j];
    };

    for (int k = 0; k < n; ++k) {
        double d = a(k, k);
        for (int j = 0; j < k; ++j) d -= lref(k, j) * lref(k, j);
        if (d < -band) {
            res.psd = false;
            res.failed_pivot = k;
            res.pivot_value = d;
            return res;
        }
        if (d <= band) {
            // Semidefinite pivot: column must vanish, otherwise the matrix has
            // an indefinite direction through this row.
            lref(k, k) = 0.0;
            for (int i = k + 1; i < n; ++i) {
                double r = a(i, k);
                for (int j = 0; j < k; ++j) r -= lref(i, j) * lref(k, j);
                if (std::abs(r) > band + std::sqrt(band) * scale * 1e-8) {
                    res.psd = false;
                    res.failed_pivot = k;
                    res.pivot_value = d;
                    return res;
                }
                lref(i, k) = 0.0;
            }
            continue;
        }
        const double lkk = std::sqrt(d);
        lref(k, k) = lkk;
        for (int i = k + 1; i < n; ++i) {
            double s = a(i, k);
            for (int j = 0; j < k; ++j) s -= lref(i, j) * lref(k, j);
            lref(i, k) = s / lkk;
        }
    }
    res.psd = true;
    return res;
}

EigenResult jacobi_eigen(const SymMatrix& a, double tol, int max_sweeps) {
    if (!a.all_finite()) throw std::invalid_argument("jacobi_eigen: non-finite input");
    const int n = a.order();
    Dense A = Dense::from_sym(a);
    Dense V = Dense::identity(n);

    const double anorm = std::max(a.frobenius_norm(), 1e-300);
    const double stop = std::max(tol, 1e-15) * anorm;

    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += 2.0 * A(p, q) * A(p, q);
        if (std::sqrt(off) <= stop) break;

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = A(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (int k = 0; k < n; ++k) {
                    const double akp = A(k, p), akq = A(k, q);
                    A.at(k, p) = c * akp - s * akq;
                    A.at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = A(p, k), aqk = A(q, k);
                    A.at(p, k) = c * apk - s * aqk;
                    A.at(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = V(k, p), vkq = V(k, q);
                    V.at(k, p) = c * vkp - s * vkq;
                    V.at(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    if (sweep == max_sweeps) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += 2.0 * A(p, q) * A(p, q);
        if (std::sqrt(off) > stop)
            throw EigenNonConvergence("jacobi_eigen: sweep budget exhausted");
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return A(i, i) > A(j, j); });

    EigenResult res;
    res.sweeps = sweep;
    res.values.resize(n);
    res.vectors = Dense(n, n);
    for (int k = 0; k < n; ++k) {
        res.values[k] = A(order[k], order[k]);
        for (int i = 0; i < n; ++i) res.vectors.at(i, k) = V(i, order[k]);
    }
    return res;
}

bool is_psd(const SymMatrix& a, double tol) {
    return cholesky(a, tol).psd;
}

double min_eigenvalue(const SymMatrix& a) {
    const auto e = jacobi_eigen(a, 1e-13);
    return e.values.back();
}

SymMatrix invert_from_cholesky(const LowerTriangular& L) {
    const int n = L.n;
    SymMatrix inv(n);
    std::vector<double> col(n);
    for (int j = 0; j < n; ++j) {
        std::fill(col.begin(), col.end(), 0.0);
        col[j] = 1.0;
        L.solve_forward(col);
        L.solve_backward(col);
        for (int i = j; i < n; ++i) inv.set(i, j, col[i]);
    }
    return inv;
}

}  // namespace packbound
