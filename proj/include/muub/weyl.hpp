#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "muub/core.hpp"

namespace muub {

/**
 * Dense d x d complex matrix, row-major. Values are immutable once built in
 * practice (all library routines return fresh matrices), which keeps every
 * operation safe to call concurrently.
 *
 * A matrix may optionally carry its expansion coefficients over the shift /
 * clock product basis {X^r Z^s}, indexed row-major in (r, s).
 */
class OperatorMatrix {
public:
    explicit OperatorMatrix(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim) {
        if (dim < 2) throw std::invalid_argument("OperatorMatrix: dim must be >= 2");
    }

    static OperatorMatrix identity(int dim) {
        OperatorMatrix m(dim);
        for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
        return m;
    }

    int dim() const { return dim_; }

    Complex& at(int i, int j) { return a_[static_cast<size_t>(i) * dim_ + j]; }
    const Complex& at(int i, int j) const { return a_[static_cast<size_t>(i) * dim_ + j]; }

    const std::vector<Complex>& entries() const { return a_; }

    Complex trace() const {
        Complex t = 0.0;
        for (int i = 0; i < dim_; ++i) t += at(i, i);
        return t;
    }

    double hs_norm_sq() const {  // Tr(A^+ A)
        double n = 0.0;
        for (const Complex& z : a_) n += std::norm(z);
        return n;
    }

    double max_abs() const {
        double m = 0.0;
        for (const Complex& z : a_) m = std::max(m, std::abs(z));
        return m;
    }

    OperatorMatrix adjoint() const {
        OperatorMatrix r(dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) r.at(i, j) = std::conj(at(j, i));
        return r;
    }

    OperatorMatrix& operator+=(const OperatorMatrix& o) {
        check_same_dim(o, "operator+=");
        for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }

    OperatorMatrix& operator-=(const OperatorMatrix& o) {
        check_same_dim(o, "operator-=");
        for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }

    OperatorMatrix& operator*=(Complex c) {
        for (Complex& z : a_) z *= c;
        return *this;
    }

    friend OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix& b) { return a += b; }
    friend OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix& b) { return a -= b; }
    friend OperatorMatrix operator*(Complex c, OperatorMatrix a) { return a *= c; }

    friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
        a.check_same_dim(b, "operator*");
        const int d = a.dim_;
        OperatorMatrix r(d);
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k) {
                const Complex aik = a.at(i, k);
                if (aik == Complex{}) continue;
                for (int j = 0; j < d; ++j) r.at(i, j) += aik * b.at(k, j);
            }
        return r;
    }

    const std::optional<std::vector<Complex>>& weyl_coeffs() const { return weyl_coeffs_; }
    void set_weyl_coeffs(std::vector<Complex> c) {
        if (c.size() != a_.size())
            throw std::invalid_argument("OperatorMatrix: coefficient table must have d*d entries");
        weyl_coeffs_ = std::move(c);
    }

private:
    void check_same_dim(const OperatorMatrix& o, const char* where) const {
        if (dim_ != o.dim_)
            throw std::invalid_argument(std::string("OperatorMatrix::") + where +
                                        ": dimension mismatch");
    }

    int dim_;
    std::vector<Complex> a_;
    std::optional<std::vector<Complex>> weyl_coeffs_;
};

/// Cyclic shift: X|j> = |j+1 mod d>.
inline OperatorMatrix shift_matrix(int d) {
    OperatorMatrix m(d);
    for (int j = 0; j < d; ++j) m.at((j + 1) % d, j) = 1.0;
    return m;
}

/// Clock: Z|j> = w^j |j>, w = exp(2*pi*i/d).
inline OperatorMatrix clock_matrix(int d) {
    OperatorMatrix m(d);
    for (int j = 0; j < d; ++j) m.at(j, j) = root_of_unity(d, j);
    return m;
}

/**
 * X^r Z^s, built entrywise: the only nonzero entry in column j sits at row
 * (j + r) mod d and carries w^{s j}. Result is unitary and carries its own
 * (trivially sparse) expansion table.
 */
inline OperatorMatrix weyl_operator(int d, int r, int s) {
    require_prime_dim(d, "weyl_operator");
    if (r < 0 || r >= d || s < 0 || s >= d)
        throw std::invalid_argument("weyl_operator: indices must lie in [0, d)");
    OperatorMatrix m(d);
    for (int j = 0; j < d; ++j) m.at((j + r) % d, j) = root_of_unity(d, static_cast<long long>(s) * j);
    std::vector<Complex> coeffs(static_cast<size_t>(d) * d);
    coeffs[static_cast<size_t>(r) * d + s] = 1.0;
    m.set_weyl_coeffs(std::move(coeffs));
    return m;
}

/// Tr(A^+ B) without forming the product.
inline Complex hs_inner(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("hs_inner: dimension mismatch");
    Complex t = 0.0;
    const int d = a.dim();
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) t += std::conj(a.at(i, j)) * b.at(i, j);
    return t;
}

/// |Tr(A^+ B)|^2, the squared Hilbert-Schmidt overlap.
inline double hs_overlap(const OperatorMatrix& a, const OperatorMatrix& b) {
    return std::norm(hs_inner(a, b));
}

/// max-entry norm of A^+ A - I.
inline double unitarity_residual(const OperatorMatrix& a) {
    const int d = a.dim();
    double worst = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Complex e = 0.0;
            for (int k = 0; k < d; ++k) e += std::conj(a.at(k, i)) * a.at(k, j);
            if (i == j) e -= 1.0;
            worst = std::max(worst, std::abs(e));
        }
    return worst;
}

inline bool is_unitary(const OperatorMatrix& a, Tolerance tol = {}) {
    return unitarity_residual(a) <= tol.eps;
}

/**
 * Quality of the guess V_R for the unitary V: |Tr(V V_R^+)|^2 / d^2.
 * Lies in [0, 1]; equals 1 exactly when V and V_R agree up to a global phase.
 */
inline double guess_quality(const OperatorMatrix& v, const OperatorMatrix& v_r,
                            Tolerance tol = {}) {
    if (v.dim() != v_r.dim())
        throw std::invalid_argument("guess_quality: dimension mismatch");
    if (!is_unitary(v, tol) || !is_unitary(v_r, tol))
        throw std::invalid_argument("guess_quality: both arguments must be unitary");
    const double d = static_cast<double>(v.dim());
    return hs_overlap(v, v_r) / (d * d);
}

/// Expansion coefficients c_{rs} = Tr((X^r Z^s)^+ A) / d, dense row-major in (r, s).
inline std::vector<Complex> weyl_expand(const OperatorMatrix& a) {
    const int d = a.dim();
    require_prime_dim(d, "weyl_expand");
    std::vector<Complex> c(static_cast<size_t>(d) * d);
    for (int r = 0; r < d; ++r)
        for (int s = 0; s < d; ++s)
            c[static_cast<size_t>(r) * d + s] =
                hs_inner(weyl_operator(d, r, s), a) / static_cast<double>(d);
    return c;
}

/// Rebuild sum_{rs} c_{rs} X^r Z^s from a dense coefficient table.
inline OperatorMatrix matrix_from_weyl_coeffs(int d, const std::vector<Complex>& coeffs) {
    require_prime_dim(d, "matrix_from_weyl_coeffs");
    if (coeffs.size() != static_cast<size_t>(d) * d)
        throw std::invalid_argument("matrix_from_weyl_coeffs: need d*d coefficients");
    OperatorMatrix m(d);
    for (int r = 0; r < d; ++r)
        for (int s = 0; s < d; ++s) {
            const Complex c = coeffs[static_cast<size_t>(r) * d + s];
            if (c == Complex{}) continue;
            for (int j = 0; j < d; ++j)
                m.at((j + r) % d, j) += c * root_of_unity(d, static_cast<long long>(s) * j);
        }
    m.set_weyl_coeffs(coeffs);
    return m;
}

}  // namespace muub
