#pragma once

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "muub/weyl.hpp"

namespace muub {

/// One term of an exact phase expansion: coefficient w_L^g on X^r Z^s.
struct WeylTerm {
    int r = 0;
    int s = 0;
    int g = 0;
    bool operator==(const WeylTerm&) const = default;
};

/**
 * An orthogonal basis of unitaries for an n-dimensional operator subspace
 * (n = d^2 for the full space, n = d for the clock-span subspace).
 *
 * When a basis comes from an integer-exponent construction the exact terms
 * are kept alongside the matrices: element i materializes as
 * (1/sqrt(m)) * sum_j w_order^{g_j} X^{r_j} Z^{s_j} over its m terms.
 */
struct OperatorBasis {
    int dim = 0;
    int span_dim = 0;
    std::vector<OperatorMatrix> elements;
    std::string label;

    int exponent_order = 0;  // 0 when no exact phase data is attached
    std::vector<std::vector<WeylTerm>> element_exponents;

    bool has_exponents() const { return exponent_order > 0; }
};

/// A set of pairwise mutually unbiased bases sharing one overlap constant C.
struct MuubCollection {
    int dim = 0;
    std::vector<OperatorBasis> bases;
    double constant_C = 0.0;  // 0 when unknown / no cross pairs
};

/**
 * Materialize (1/sqrt(m)) * sum_j w_order^{g_j} X^{r_j} Z^{s_j} from m exact
 * terms. Covers single products (m = 1), equal-weight generators (m = d^2)
 * and clock-span elements (m = d); the coefficient table rides along.
 */
inline OperatorMatrix matrix_from_weyl_terms(int d, int order,
                                             const std::vector<WeylTerm>& terms) {
    require_prime_dim(d, "matrix_from_weyl_terms");
    if (order < 1)
        throw std::invalid_argument("matrix_from_weyl_terms: order must be positive");
    if (terms.empty())
        throw std::invalid_argument("matrix_from_weyl_terms: no terms");
    const double scale = 1.0 / std::sqrt(static_cast<double>(terms.size()));
    OperatorMatrix m(d);
    std::vector<Complex> coeffs(static_cast<size_t>(d) * d);
    for (const WeylTerm& t : terms) {
        if (t.r < 0 || t.r >= d || t.s < 0 || t.s >= d)
            throw std::invalid_argument("matrix_from_weyl_terms: term index out of [0, d)");
        const Complex c = root_of_unity(order, t.g) * scale;
        coeffs[static_cast<size_t>(t.r) * d + t.s] += c;
        for (int j = 0; j < d; ++j)
            m.at((j + t.r) % d, j) += c * root_of_unity(d, static_cast<long long>(t.s) * j);
    }
    m.set_weyl_coeffs(std::move(coeffs));
    return m;
}

/// Machine-checkable verdict over a basis or collection.
struct Certificate {
    struct Failure {
        int basis_a = 0;
        int basis_b = 0;
        int elem_i = 0;
        int elem_j = 0;  // -1 for single-element (unitarity) failures
        double measured = 0.0;
        std::string kind;
    };

    bool pass = false;
    int dim = 0;
    int basis_count = 0;
    double constant_C = 0.0;
    double worst_orthogonality_residual = 0.0;  // off-diagonal |Tr(A^+B)|^2
    double worst_unitarity_residual = 0.0;      // max-entry |A^+A - I|
    double worst_unbiasedness_residual = 0.0;   // deviation of overlaps from C
    std::vector<Failure> failures;
    std::string convention = kConventionNote;
};

namespace detail {

inline void require_consistent_basis(const OperatorBasis& basis, const char* where) {
    if (basis.elements.empty())
        throw std::invalid_argument(std::string(where) + ": basis has no elements");
    for (const OperatorMatrix& e : basis.elements)
        if (e.dim() != basis.dim)
            throw std::invalid_argument(std::string(where) + ": mixed element dimensions");
    if (basis.span_dim != static_cast<int>(basis.elements.size()))
        throw std::invalid_argument(std::string(where) + ": span_dim != element count");
}

struct OverlapStats {
    double min = std::numeric_limits<double>::infinity();
    double max = 0.0;
    double sum = 0.0;
    long long count = 0;

    void add(double v) {
        min = std::min(min, v);
        max = std::max(max, v);
        sum += v;
        ++count;
    }
    void merge(const OverlapStats& o) {
        min = std::min(min, o.min);
        max = std::max(max, o.max);
        sum += o.sum;
        count += o.count;
    }
    double mean() const { return count ? sum / static_cast<double>(count) : 0.0; }
};

inline OverlapStats cross_overlaps(const OperatorBasis& a, const OperatorBasis& b) {
    OverlapStats st;
    for (const OperatorMatrix& u : a.elements)
        for (const OperatorMatrix& v : b.elements) st.add(hs_overlap(u, v));
    return st;
}

}  // namespace detail

/**
 * Certify that every element is unitary and every distinct pair is
 * trace-orthogonal. Residuals are reported even on pass; failures are listed
 * in (element index) order so output is stable across runs.
 */
inline Certificate check_orthogonal_unitary_basis(const OperatorBasis& basis,
                                                  Tolerance tol = {}) {
    detail::require_consistent_basis(basis, "check_orthogonal_unitary_basis");
    Certificate cert;
    cert.dim = basis.dim;
    cert.basis_count = 1;

    const int n = static_cast<int>(basis.elements.size());
    for (int i = 0; i < n; ++i) {
        const double ur = unitarity_residual(basis.elements[i]);
        cert.worst_unitarity_residual = std::max(cert.worst_unitarity_residual, ur);
        if (ur > tol.eps)
            cert.failures.push_back({0, 0, i, -1, ur, "non-unitary element"});
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double ov = hs_overlap(basis.elements[i], basis.elements[j]);
            cert.worst_orthogonality_residual =
                std::max(cert.worst_orthogonality_residual, ov);
            if (ov > tol.eps)
                cert.failures.push_back({0, 0, i, j, ov, "non-orthogonal pair"});
        }
    cert.pass = cert.failures.empty();
    return cert;
}

/**
 * The common squared overlap C between two bases. Throws NotUnbiasedError when
 * the |A| x |B| overlaps do not agree to eps * d^2 (a relative criterion:
 * overlaps scale with d^2) and DegenerateConstantError when C vanishes.
 */
inline double check_mutually_unbiased(const OperatorBasis& a, const OperatorBasis& b,
                                      Tolerance tol = {}) {
    detail::require_consistent_basis(a, "check_mutually_unbiased");
    detail::require_consistent_basis(b, "check_mutually_unbiased");
    if (a.dim != b.dim || a.span_dim != b.span_dim)
        throw std::invalid_argument("check_mutually_unbiased: bases must share dim and span_dim");

    const detail::OverlapStats st = detail::cross_overlaps(a, b);
    const double scale = static_cast<double>(a.dim) * a.dim;
    if (st.max - st.min > tol.eps * scale)
        throw NotUnbiasedError("check_mutually_unbiased: overlaps are not constant (min " +
                                   std::to_string(st.min) + ", max " + std::to_string(st.max) + ")",
                               st.min, st.max);
    const double c = st.mean();
    if (c <= tol.eps * scale)
        throw DegenerateConstantError("check_mutually_unbiased: constant C is zero");
    return c;
}

/**
 * Full collection certificate: every basis must be an orthogonal unitary
 * basis and all cross-basis overlaps must share one nonzero constant C.
 *
 * Full-space collections (span_dim = d^2) may not exceed d^2 - 1 bases; such
 * inputs are rejected outright rather than certified.
 */
inline Certificate verify_collection(const MuubCollection& collection, Tolerance tol = {}) {
    if (collection.bases.empty())
        throw std::invalid_argument("verify_collection: collection has no bases");
    const int d = collection.dim;
    for (const OperatorBasis& b : collection.bases) {
        detail::require_consistent_basis(b, "verify_collection");
        if (b.dim != d)
            throw std::invalid_argument("verify_collection: mixed basis dimensions");
    }
    const int span = collection.bases.front().span_dim;
    if (span == d * d && static_cast<int>(collection.bases.size()) > d * d - 1)
        throw BoundViolationError(
            "verify_collection: a full-space collection admits at most d^2 - 1 bases, got " +
            std::to_string(collection.bases.size()));

    Certificate cert;
    cert.dim = d;
    cert.basis_count = static_cast<int>(collection.bases.size());

    for (int bi = 0; bi < cert.basis_count; ++bi) {
        Certificate sub = check_orthogonal_unitary_basis(collection.bases[bi], tol);
        cert.worst_unitarity_residual =
            std::max(cert.worst_unitarity_residual, sub.worst_unitarity_residual);
        cert.worst_orthogonality_residual =
            std::max(cert.worst_orthogonality_residual, sub.worst_orthogonality_residual);
        for (Certificate::Failure f : sub.failures) {
            f.basis_a = f.basis_b = bi;
            cert.failures.push_back(f);
        }
    }

    // One global constant across every unordered basis pair.
    std::vector<std::pair<std::pair<int, int>, detail::OverlapStats>> pair_stats;
    detail::OverlapStats global;
    for (int i = 0; i < cert.basis_count; ++i)
        for (int j = i + 1; j < cert.basis_count; ++j) {
            const detail::OverlapStats st =
                detail::cross_overlaps(collection.bases[i], collection.bases[j]);
            global.merge(st);
            pair_stats.push_back({{i, j}, st});
        }

    const double scale = static_cast<double>(d) * d;
    if (global.count > 0) {
        cert.constant_C = global.mean();
        for (const auto& [ij, st] : pair_stats) {
            const double dev =
                std::max(std::abs(st.max - cert.constant_C), std::abs(cert.constant_C - st.min));
            cert.worst_unbiasedness_residual = std::max(cert.worst_unbiasedness_residual, dev);
            if (dev > tol.eps * scale)
                cert.failures.push_back(
                    {ij.first, ij.second, -1, -1, dev, "non-constant cross overlap"});
        }
        if (cert.constant_C <= tol.eps * scale)
            cert.failures.push_back(
                {0, 0, -1, -1, cert.constant_C, "degenerate constant C"});
    }

    cert.pass = cert.failures.empty();
    return cert;
}

}  // namespace muub
