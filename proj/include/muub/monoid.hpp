#pragma once

#include <string>
#include <vector>

#include "muub/verify.hpp"

namespace muub {

/// Coefficient vector of H_d under the cyclic-convolution product. No
/// normalization is imposed; the monoid is defined on the whole space.
struct MonoidVector {
    int dim = 0;
    std::vector<Complex> coeffs;

    static MonoidVector basis_state(int d, int j) {
        MonoidVector v{d, std::vector<Complex>(static_cast<size_t>(d))};
        v.coeffs[static_cast<size_t>(j)] = 1.0;
        return v;
    }
};

inline void require_monoid_vector(const MonoidVector& v, const char* where) {
    if (v.dim < 2 || v.coeffs.size() != static_cast<size_t>(v.dim))
        throw std::invalid_argument(std::string(where) + ": need d >= 2 coefficients");
}

/// Cyclic convolution: coeff_q = sum_{i + j = q mod d} m_i n_j.
inline MonoidVector bullet(const MonoidVector& u, const MonoidVector& v) {
    require_monoid_vector(u, "bullet");
    require_monoid_vector(v, "bullet");
    if (u.dim != v.dim) throw std::invalid_argument("bullet: dimension mismatch");
    const int d = u.dim;
    MonoidVector out{d, std::vector<Complex>(static_cast<size_t>(d))};
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            out.coeffs[static_cast<size_t>((i + j) % d)] += u.coeffs[i] * v.coeffs[j];
    return out;
}

/// State-level conjugate transpose: m_i |i> -> conj(m_i) |(d - i) mod d>.
/// The index wraps so |0> is a fixed point and the map is an involution.
inline MonoidVector dagger_state(const MonoidVector& v) {
    require_monoid_vector(v, "dagger_state");
    const int d = v.dim;
    MonoidVector out{d, std::vector<Complex>(static_cast<size_t>(d))};
    for (int i = 0; i < d; ++i)
        out.coeffs[static_cast<size_t>((d - i) % d)] = std::conj(v.coeffs[i]);
    return out;
}

/// Distance of v . v^+ from the monoid identity |0>.
inline double unitarity_criterion_residual(const MonoidVector& v) {
    MonoidVector p = bullet(v, dagger_state(v));
    p.coeffs[0] -= 1.0;
    double worst = 0.0;
    for (const Complex& c : p.coeffs) worst = std::max(worst, std::abs(c));
    return worst;
}

/// True iff v . v^+ = |0>, i.e. iff the clock-span image of v is unitary.
inline bool maps_to_unitary(const MonoidVector& v, Tolerance tol = {}) {
    return unitarity_criterion_residual(v) <= tol.eps;
}

/// Element sum_i c_i Z^i of the clock-span subspace; always diagonal.
struct SubspaceOperator {
    int dim = 0;
    std::vector<Complex> z_coeffs;

    OperatorMatrix to_matrix() const {
        if (dim < 2 || z_coeffs.size() != static_cast<size_t>(dim))
            throw std::invalid_argument("SubspaceOperator: need d >= 2 coefficients");
        OperatorMatrix m(dim);
        for (int j = 0; j < dim; ++j) {
            Complex e = 0.0;
            for (int i = 0; i < dim; ++i)
                e += z_coeffs[i] * root_of_unity(dim, static_cast<long long>(i) * j);
            m.at(j, j) = e;
        }
        return m;
    }
};

/// The coefficient-preserving isomorphism sum m_i |i>  ->  sum m_i Z^i.
inline SubspaceOperator iso_G(const MonoidVector& v) {
    require_monoid_vector(v, "iso_G");
    return {v.dim, v.coeffs};
}

inline MonoidVector iso_G_inv(const SubspaceOperator& k) {
    if (k.dim < 2 || k.z_coeffs.size() != static_cast<size_t>(k.dim))
        throw std::invalid_argument("iso_G_inv: need d >= 2 coefficients");
    return {k.dim, k.z_coeffs};
}

/// Root order the standard-MUB phases need: d-th roots suffice for odd
/// primes; d = 2 genuinely requires fourth roots.
inline int standard_mub_phase_order(int d) {
    require_prime_dim(d, "standard_mub_phase_order");
    return d == 2 ? 4 : d;
}

/**
 * Integer phase exponents of the t-th state of the k-th standard MUB family,
 * over order standard_mub_phase_order(d).
 *
 * Odd primes: e_h = t (d - h) - k (h + (h+1) + ... + (d-1))  (mod d).
 * d = 2:      e_h = (k + 2 t) h  (mod 4), which yields the two bases
 *             {|0> +- |1>} (k = 0) and {|0> +- i |1>} (k = 1).
 */
inline std::vector<int> durt_phase_exponents(int d, int k, int t) {
    require_prime_dim(d, "durt_phase_exponents");
    if (k < 0 || k >= d || t < 0 || t >= d)
        throw std::invalid_argument("durt_phase_exponents: k and t must lie in [0, d)");
    std::vector<int> e(static_cast<size_t>(d));
    if (d == 2) {
        for (int h = 0; h < 2; ++h)
            e[h] = static_cast<int>(mod_reduce(static_cast<long long>(k + 2 * t) * h, 4));
        return e;
    }
    for (int h = 0; h < d; ++h) {
        // alpha_h = h + (h+1) + ... + (d-1); the product below is always even.
        const long long alpha_h =
            static_cast<long long>(d - 1 + h) * (d - h) / 2;
        e[h] = static_cast<int>(
            mod_reduce(static_cast<long long>(t) * (d - h) - static_cast<long long>(k) * alpha_h, d));
    }
    return e;
}

/// The normalized state (1/sqrt(d)) sum_h w^{e_h} |h> for the (k, t) family.
inline MonoidVector durt_mub_state(int d, int k, int t) {
    const std::vector<int> e = durt_phase_exponents(d, k, t);
    const int order = standard_mub_phase_order(d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    MonoidVector v{d, std::vector<Complex>(static_cast<size_t>(d))};
    for (int h = 0; h < d; ++h) v.coeffs[h] = root_of_unity(order, e[h]) * scale;
    return v;
}

/**
 * The maximal family of d mutually unbiased unitary bases of the clock span:
 * the power basis {I, Z, ..., Z^{d-1}} plus, for k = 1..d-1, the images of
 * the k-th standard MUB family under iso_G. Cross-basis overlaps share the
 * measured constant C (equal to d, from Tr(Z^{-i} Z^j) = d delta_ij).
 */
inline MuubCollection subspace_recipe(int d) {
    require_prime_dim(d, "subspace_recipe");
    const int order = standard_mub_phase_order(d);

    MuubCollection collection;
    collection.dim = d;

    OperatorBasis powers;
    powers.dim = d;
    powers.span_dim = d;
    powers.label = "Z0";
    powers.exponent_order = order;
    for (int i = 0; i < d; ++i) {
        powers.elements.push_back(weyl_operator(d, 0, i));
        powers.element_exponents.push_back({{0, i, 0}});
    }
    collection.bases.push_back(std::move(powers));

    for (int k = 1; k < d; ++k) {
        OperatorBasis basis;
        basis.dim = d;
        basis.span_dim = d;
        basis.label = "Z" + std::to_string(k);
        basis.exponent_order = order;
        for (int t = 0; t < d; ++t) {
            const std::vector<int> e = durt_phase_exponents(d, k, t);
            std::vector<WeylTerm> terms;
            terms.reserve(static_cast<size_t>(d));
            for (int i = 0; i < d; ++i) terms.push_back({0, i, e[i]});
            basis.elements.push_back(matrix_from_weyl_terms(d, order, terms));
            basis.element_exponents.push_back(std::move(terms));
        }
        collection.bases.push_back(std::move(basis));
    }

    collection.constant_C =
        check_mutually_unbiased(collection.bases[0], collection.bases[1]);
    return collection;
}

/**
 * Which of the d + 1 standard MUB families of H_d survive iso_G as unitary
 * bases. The k = 0 (Fourier-phase) family always fails the convolution
 * criterion, every k != 0 family and the computational basis pass, so exactly
 * d families survive.
 */
struct Theorem1Report {
    int dim = 0;
    std::vector<std::vector<bool>> family_state_pass;  // [k][t]
    std::vector<bool> family_pass;                     // all states of family k
    bool computational_pass = false;
    int surviving_bases = 0;
};

inline Theorem1Report theorem1_witness(int d, Tolerance tol = {}) {
    require_prime_dim(d, "theorem1_witness");
    Theorem1Report report;
    report.dim = d;
    report.family_state_pass.resize(static_cast<size_t>(d));
    report.family_pass.resize(static_cast<size_t>(d));
    for (int k = 0; k < d; ++k) {
        bool all = true;
        report.family_state_pass[k].resize(static_cast<size_t>(d));
        for (int t = 0; t < d; ++t) {
            const bool ok = maps_to_unitary(durt_mub_state(d, k, t), tol);
            report.family_state_pass[k][t] = ok;
            all = all && ok;
        }
        report.family_pass[k] = all;
    }
    report.computational_pass = true;
    for (int j = 0; j < d; ++j)
        report.computational_pass =
            report.computational_pass && maps_to_unitary(MonoidVector::basis_state(d, j), tol);

    report.surviving_bases = report.computational_pass ? 1 : 0;
    for (int k = 0; k < d; ++k)
        if (report.family_pass[k]) ++report.surviving_bases;
    return report;
}

}  // namespace muub
