#pragma once

#include <string>
#include <vector>

namespace packbound {

/// Dense real symmetric matrix storing only the lower triangle (row-major,
/// i >= j). Both (i,j) and (j,i) resolve to the same stored entry, so the
/// matrix cannot become asymmetric through writes.
class SymMatrix {
public:
    explicit SymMatrix(int order);

    static SymMatrix identity(int order);
    static SymMatrix diagonal(const std::vector<double>& d);

    int order() const { return n_; }

    double operator()(int i, int j) const { return tri_[index(i, j)]; }
    double& at(int i, int j) { return tri_[index(i, j)]; }
    void set(int i, int j, double v) { tri_[index(i, j)] = v; }
    void add(int i, int j, double v) { tri_[index(i, j)] += v; }

    /// this += s * other (orders must match).
    SymMatrix& axpy(double s, const SymMatrix& other);
    void scale(double s);
    void set_zero();

    double trace() const;
    double max_abs() const;
    double frobenius_norm() const;
    /// <A,B> = sum_ij A_ij B_ij (full-matrix inner product).
    double dot(const SymMatrix& other) const;
    bool all_finite() const;

    const std::vector<double>& packed() const { return tri_; }
    std::vector<double>& packed() { return tri_; }

    /// Plain-text rows, 17 significant digits per entry.
    std::string debug_dump() const;

private:
    std::size_t index(int i, int j) const;

    int n_;
    std::vector<double> tri_;
};

}  // namespace packbound
