#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "muub/verify.hpp"

namespace muub {

/**
 * Exponent table defining a candidate generator
 *     Y = (1/d) * sum_{r,s} w_L^{g_rs} X^r Z^s,
 * so every expansion coefficient has magnitude 1/d. The (0,0) exponent is
 * pinned to 0: a global phase never changes the basis a generator produces.
 */
struct PhaseVector {
    int dim = 0;
    int root_order = 0;
    std::vector<int> g;  // d*d entries, row-major in (r, s)

    bool operator==(const PhaseVector&) const = default;
};

inline void validate_phase_vector(const PhaseVector& pv) {
    require_prime_dim(pv.dim, "PhaseVector");
    if (pv.root_order < 1)
        throw std::invalid_argument("PhaseVector: root order must be positive");
    if (pv.g.size() != static_cast<size_t>(pv.dim) * pv.dim)
        throw std::invalid_argument("PhaseVector: exponent table must have d*d entries");
    if (pv.g.front() != 0)
        throw std::invalid_argument("PhaseVector: gauge requires g_00 = 0");
    for (int e : pv.g)
        if (e < 0 || e >= pv.root_order)
            throw std::invalid_argument("PhaseVector: exponent out of [0, root order)");
}

struct SearchConfig {
    int dim = 0;
    int root_order = 0;               // 0 resolves to d (odd d) or 2d (d = 2)
    std::size_t max_generators = 0;   // 0 = return every generator found
    std::uint64_t node_cap = 50'000'000;  // traversal guard; exceeding it throws
    Tolerance tol{};
    bool dedup = true;
    bool prune = true;  // row-mass pruning; result provably identical to exhaustion
};

inline int resolved_root_order(const SearchConfig& cfg) {
    if (cfg.root_order != 0) return cfg.root_order;
    return cfg.dim == 2 ? 2 * cfg.dim : cfg.dim;
}

/// Materialize the generator; the exact coefficient table rides along.
inline OperatorMatrix generator_from_phases(const PhaseVector& pv) {
    validate_phase_vector(pv);
    const int d = pv.dim;
    std::vector<Complex> coeffs(static_cast<size_t>(d) * d);
    for (size_t k = 0; k < coeffs.size(); ++k)
        coeffs[k] = root_of_unity(pv.root_order, pv.g[k]) / static_cast<double>(d);
    return matrix_from_weyl_coeffs(d, coeffs);
}

/**
 * The basis {Y * X^a Z^b : a, b in Z_d}, ordered lexicographically in (a, b).
 * Right translation by basis elements preserves Hilbert-Schmidt orthogonality,
 * so any unitary Y yields an orthogonal unitary basis of the full space.
 */
inline OperatorBasis basis_from_generator(const OperatorMatrix& y, Tolerance tol = {},
                                          std::string label = {}) {
    const int d = y.dim();
    require_prime_dim(d, "basis_from_generator");
    if (!is_unitary(y, tol))
        throw std::invalid_argument("basis_from_generator: generator must be unitary");
    OperatorBasis basis;
    basis.dim = d;
    basis.span_dim = d * d;
    basis.label = std::move(label);
    basis.elements.reserve(static_cast<size_t>(d) * d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) basis.elements.push_back(y * weyl_operator(d, a, b));
    return basis;
}

/**
 * Exact-phase variant: each element Y X^a Z^b is again an equal-magnitude
 * phase combination, with exponents over order lcm(L, d):
 *     coeff(r, s) of Y X^a Z^b  =  gamma_{r-a, s-b} * w_d^{a (s - b)}.
 * Elements are materialized from those integer exponents directly.
 */
inline OperatorBasis basis_from_generator(const PhaseVector& pv, Tolerance tol = {},
                                          std::string label = {}) {
    validate_phase_vector(pv);
    const int d = pv.dim;
    const int order = std::lcm(pv.root_order, d);
    const int gen_scale = order / pv.root_order;
    const int braid_scale = order / d;

    OperatorBasis basis;
    basis.dim = d;
    basis.span_dim = d * d;
    basis.label = std::move(label);
    basis.exponent_order = order;
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            std::vector<WeylTerm> terms;
            terms.reserve(static_cast<size_t>(d) * d);
            for (int r = 0; r < d; ++r)
                for (int s = 0; s < d; ++s) {
                    const int r0 = (r - a % d + d) % d;
                    const int s0 = (s - b % d + d) % d;
                    const long long e = static_cast<long long>(gen_scale) * pv.g[r0 * d + s0] +
                                        static_cast<long long>(braid_scale) * a * s0;
                    terms.push_back({r, s, static_cast<int>(mod_reduce(e, order))});
                }
            basis.elements.push_back(matrix_from_weyl_terms(d, order, terms));
            basis.element_exponents.push_back(std::move(terms));
        }
    if (!is_unitary(basis.elements.front(), tol))
        throw std::invalid_argument("basis_from_generator: generator must be unitary");
    return basis;
}

/// The basis {X^a Z^b}, with exact single-term exponents attached.
inline OperatorBasis canonical_basis(int d, int exponent_order = 1) {
    require_prime_dim(d, "canonical_basis");
    OperatorBasis basis;
    basis.dim = d;
    basis.span_dim = d * d;
    basis.label = "canonical";
    basis.exponent_order = exponent_order;
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            basis.elements.push_back(weyl_operator(d, a, b));
            basis.element_exponents.push_back({{a, b, 0}});
        }
    return basis;
}

/**
 * True when the two bases coincide as sets up to per-element global phases.
 * Both bases being orthogonal makes the phase partner unique, so a greedy
 * matching decides equivalence exactly.
 */
inline bool equivalent_bases(const OperatorBasis& a, const OperatorBasis& b,
                             Tolerance tol = {}) {
    if (a.dim != b.dim || a.span_dim != b.span_dim ||
        a.elements.size() != b.elements.size())
        return false;
    const double full = static_cast<double>(a.dim) * a.dim;  // |Tr|^2 of a phase match
    const double slack = tol.eps * full;
    std::vector<bool> used(b.elements.size(), false);
    for (const OperatorMatrix& u : a.elements) {
        bool matched = false;
        for (size_t j = 0; j < b.elements.size(); ++j) {
            if (used[j]) continue;
            // |Tr(u^+ v)|^2 = d^2 exactly when v = phase * u
            if (std::abs(hs_overlap(u, b.elements[j]) - full) <= slack) {
                used[j] = true;
                matched = true;
                break;
            }
        }
        if (!matched) return false;
    }
    return true;
}

namespace detail {

/// Depth-first enumeration over exponent tables in lexicographic order.
/// After each completed row r the partial column masses
///     P_j = sum_{r' <= r} |(1/d) sum_s w_L^{g_{r's}} w_d^{s j}|^2
/// are exactly the first r+1 contributions to (Y^+Y)_{jj}; any completion of a
/// prefix with P_j > 1 stays non-unitary, so pruning on that bound loses
/// nothing relative to plain exhaustion.
class GeneratorEnumerator {
public:
    GeneratorEnumerator(const SearchConfig& cfg)
        : cfg_(cfg), d_(cfg.dim), order_(resolved_root_order(cfg)) {
        require_prime_dim(d_, "enumerate_unitary_generators");
        if (order_ < 2)
            throw std::invalid_argument("enumerate_unitary_generators: root order must be >= 2");
    }

    std::vector<PhaseVector> run() {
        g_.assign(static_cast<size_t>(d_) * d_, 0);
        column_mass_.assign(static_cast<size_t>(d_) * (d_ + 1), 0.0);
        nodes_ = 0;
        out_.clear();
        descend(0);
        return std::move(out_);
    }

private:
    bool capped() const {
        return cfg_.max_generators != 0 && out_.size() >= cfg_.max_generators;
    }

    void visit_node() {
        if (++nodes_ > cfg_.node_cap)
            throw SearchSpaceError("enumerate_unitary_generators: traversal exceeded node cap of " +
                                   std::to_string(cfg_.node_cap) + " visited nodes");
    }

    void descend(int pos) {
        if (capped()) return;
        if (pos == d_ * d_) {
            emit_leaf();
            return;
        }
        const int row = pos / d_;
        const bool row_end = (pos % d_ == d_ - 1);
        const int hi = (pos == 0) ? 1 : order_;  // gauge: g_00 = 0
        for (int v = 0; v < hi; ++v) {
            visit_node();
            g_[pos] = v;
            if (row_end && cfg_.prune && !admit_row(row)) continue;
            if (row_end) fill_row_mass(row);
            descend(pos + 1);
            if (capped()) return;
        }
        g_[pos] = 0;
    }

    double row_mass_at(int row, int j) const {
        Complex s = 0.0;
        for (int col = 0; col < d_; ++col)
            s += root_of_unity(order_, g_[row * d_ + col]) *
                 root_of_unity(d_, static_cast<long long>(col) * j);
        return std::norm(s / static_cast<double>(d_));
    }

    bool admit_row(int row) const {
        for (int j = 0; j < d_; ++j) {
            const double partial = column_mass_[static_cast<size_t>(row) * d_ + j];
            if (partial + row_mass_at(row, j) > 1.0 + kPruneSlack) return false;
        }
        return true;
    }

    void fill_row_mass(int row) {
        for (int j = 0; j < d_; ++j)
            column_mass_[static_cast<size_t>(row + 1) * d_ + j] =
                column_mass_[static_cast<size_t>(row) * d_ + j] + row_mass_at(row, j);
    }

    void emit_leaf() {
        PhaseVector pv{d_, order_, g_};
        if (is_unitary(generator_from_phases(pv), cfg_.tol)) out_.push_back(std::move(pv));
    }

    static constexpr double kPruneSlack = 1e-7;

    SearchConfig cfg_;
    int d_;
    int order_;
    std::vector<int> g_;
    std::vector<double> column_mass_;  // (d+1) checkpoints of d partial masses
    std::uint64_t nodes_ = 0;
    std::vector<PhaseVector> out_;
};

}  // namespace detail

/**
 * Every exponent table (gauge g_00 = 0) whose generator is unitary, in
 * lexicographic order. All returned generators are automatically unbiased to
 * the canonical basis with C = 1: every expansion coefficient has magnitude
 * 1/d, so |Tr(Y^+ X^a Z^b)|^2 = |d * gamma_ab|^2 = 1.
 */
inline std::vector<PhaseVector> enumerate_unitary_generators(const SearchConfig& cfg) {
    return detail::GeneratorEnumerator(cfg).run();
}

/**
 * Greedy assembly in enumeration order: start from the canonical basis, add a
 * generator's basis when it is unbiased with C = 1 to everything accepted so
 * far (and, with dedup on, not a phase-relabeling of an accepted basis).
 */
inline MuubCollection assemble_collection(const std::vector<PhaseVector>& generators,
                                          const SearchConfig& cfg) {
    require_prime_dim(cfg.dim, "assemble_collection");
    const int d = cfg.dim;
    const double scale = static_cast<double>(d) * d;
    const int max_bases = d * d - 1;

    MuubCollection collection;
    collection.dim = d;
    collection.constant_C = 1.0;
    collection.bases.push_back(canonical_basis(d, std::lcm(resolved_root_order(cfg), d)));

    for (const PhaseVector& pv : generators) {
        if (static_cast<int>(collection.bases.size()) >= max_bases) break;
        validate_phase_vector(pv);
        OperatorBasis candidate =
            basis_from_generator(pv, cfg.tol, "U" + std::to_string(collection.bases.size()));

        bool ok = true;
        for (const OperatorBasis& accepted : collection.bases) {
            const detail::OverlapStats st = detail::cross_overlaps(candidate, accepted);
            if (st.max - st.min > cfg.tol.eps * scale ||
                std::abs(st.mean() - 1.0) > cfg.tol.eps * scale) {
                ok = false;
                break;
            }
        }
        if (ok && cfg.dedup)
            for (const OperatorBasis& accepted : collection.bases)
                if (equivalent_bases(candidate, accepted, cfg.tol)) {
                    ok = false;
                    break;
                }
        if (ok) collection.bases.push_back(std::move(candidate));
    }
    return collection;
}

}  // namespace muub
