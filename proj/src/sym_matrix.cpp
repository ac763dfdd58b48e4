#include "packbound/sym_matrix.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

namespace packbound {

SymMatrix::SymMatrix(int order) : n_(order) {
    if (order < 1) throw std::invalid_argument("SymMatrix: order must be >= 1");
    tri_.assign(static_cast<std::size_t>(order) * (order + 1) / 2, 0.0);
}

std::size_t SymMatrix::index(int i, int j) const {
    if (i < j) std::swap(i, j);
    if (i < 0 || i >= n_) throw std::out_of_range("SymMatrix: index out of range");
    return static_cast<std::size_t>(i) * (i + 1) / 2 + j;
}

SymMatrix SymMatrix::identity(int order) {
    SymMatrix m(order);
    for (int i = 0; i < order; ++i) m.set(i, i, 1.0);
    return m;
}

SymMatrix SymMatrix::diagonal(const std::vector<double>& d) {
    SymMatrix m(static_cast<int>(d.size()));
    for (int i = 0; i < m.order(); ++i) m.set(i, i, d[i]);
    return m;
}

SymMatrix& SymMatrix::axpy(double s, const SymMatrix& other) {
    if (other.n_ != n_) throw std::invalid_argument("SymMatrix::axpy: order mismatch");
    for (std::size_t k = 0; k < tri_.size(); ++k) tri_[k] += s * other.tri_[k];
    return *this;
}

void SymMatrix::scale(double s) {
    for (double& v : tri_) v *= s;
}

void SymMatrix::set_zero() {
    for (double& v : tri_) v = 0.0;
}

double SymMatrix::trace() const {
    double t = 0.0;
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
}

double SymMatrix::max_abs() const {
    double m = 0.0;
    for (double v : tri_) m = std::max(m, std::abs(v));
    return m;
}

double SymMatrix::frobenius_norm() const {
    return std::sqrt(dot(*this));
}

double SymMatrix::dot(const SymMatrix& other) const {
    if (other.n_ != n_) throw std::invalid_argument("SymMatrix::dot: order mismatch");
    double s = 0.0;
    std::size_t k = 0;
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < i; ++j, ++k) s += 2.0 * tri_[k] * other.tri_[k];
        s += tri_[k] * other.tri_[k];  // diagonal
        ++k;
    }
    return s;
}

bool SymMatrix::all_finite() const {
    for (double v : tri_)
        if (!std::isfinite(v)) return false;
    return true;
}

std::string SymMatrix::debug_dump() const {
    std::string out;
    char buf[64];
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", (*this)(i, j));
            out += buf;
            out += (j + 1 == n_) ? '\n' : ' ';
        }
    }
    return out;
}

}  // namespace packbound
