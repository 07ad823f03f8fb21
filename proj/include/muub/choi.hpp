#pragma once

#include <vector>

#include "muub/verify.hpp"

namespace muub {

/// Normalized element of H_d (x) H_d; amps indexed row-major by (r, s) for |r>|s>.
struct BipartiteVector {
    int dim = 0;
    std::vector<Complex> amps;

    double norm_sq() const {
        double n = 0.0;
        for (const Complex& a : amps) n += std::norm(a);
        return n;
    }
};

/// amps(r, s) = <s|U|r> / sqrt(d). Unit norm exactly when Tr(U^+U) = d.
inline BipartiteVector choi_vector(const OperatorMatrix& u) {
    const int d = u.dim();
    if (u.hs_norm_sq() <= kDefaultEps * kDefaultEps)
        throw DegenerateInputError("choi_vector: zero operator has no state image");
    BipartiteVector v{d, std::vector<Complex>(static_cast<size_t>(d) * d)};
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (int r = 0; r < d; ++r)
        for (int s = 0; s < d; ++s)
            v.amps[static_cast<size_t>(r) * d + s] = u.at(s, r) * scale;
    return v;
}

inline Complex bipartite_inner(const BipartiteVector& u, const BipartiteVector& v) {
    if (u.dim != v.dim)
        throw std::invalid_argument("bipartite_inner: dimension mismatch");
    Complex t = 0.0;
    for (size_t i = 0; i < u.amps.size(); ++i) t += std::conj(u.amps[i]) * v.amps[i];
    return t;
}

/// Max-entry distance of the subsystem-A reduced state (B traced out) from I/d.
inline double entanglement_residual(const BipartiteVector& v) {
    const int d = v.dim;
    double worst = 0.0;
    for (int r = 0; r < d; ++r)
        for (int rp = 0; rp < d; ++rp) {
            Complex rho = 0.0;
            for (int s = 0; s < d; ++s)
                rho += v.amps[static_cast<size_t>(r) * d + s] *
                       std::conj(v.amps[static_cast<size_t>(rp) * d + s]);
            if (r == rp) rho -= 1.0 / static_cast<double>(d);
            worst = std::max(worst, std::abs(rho));
        }
    return worst;
}

inline bool is_maximally_entangled(const BipartiteVector& v, Tolerance tol = {}) {
    if (std::abs(v.norm_sq() - 1.0) > tol.eps)
        throw std::invalid_argument("is_maximally_entangled: state must be normalized");
    return entanglement_residual(v) <= tol.eps;
}

/**
 * Push a verified collection through the state correspondence and certify the
 * images: every state maximally entangled, every image basis orthonormal, and
 * all cross-basis squared overlaps equal to C/d^2 (1/d^2 for the full-space
 * C = 1 collections, the unbiasedness value for dimension d^2).
 */
struct MesMubReport {
    struct PairStat {
        int basis_a = 0;
        int basis_b = 0;
        double min_overlap = 0.0;
        double max_overlap = 0.0;
    };
    struct Failure {
        int basis = 0;
        int elem = 0;
        double measured = 0.0;
        std::string kind;
    };

    int basis_count = 0;
    double expected_overlap = 0.0;  // C / d^2
    std::vector<PairStat> pair_stats;
    std::vector<double> entanglement_residuals;  // basis-major element order
    double worst_entanglement_residual = 0.0;
    double worst_orthonormality_residual = 0.0;
    double worst_overlap_deviation = 0.0;
    std::vector<Failure> failures;
    bool pass = false;
};

inline MesMubReport mes_mub_report(const MuubCollection& collection, Tolerance tol = {}) {
    if (collection.bases.empty())
        throw std::invalid_argument("mes_mub_report: collection has no bases");
    const int d = collection.dim;
    const double dd = static_cast<double>(d) * d;

    MesMubReport report;
    report.basis_count = static_cast<int>(collection.bases.size());

    std::vector<std::vector<BipartiteVector>> images;
    for (int bi = 0; bi < report.basis_count; ++bi) {
        std::vector<BipartiteVector> image;
        for (int ei = 0; ei < static_cast<int>(collection.bases[bi].elements.size()); ++ei) {
            BipartiteVector v = choi_vector(collection.bases[bi].elements[ei]);
            const double res = entanglement_residual(v);
            report.entanglement_residuals.push_back(res);
            report.worst_entanglement_residual =
                std::max(report.worst_entanglement_residual, res);
            if (res > tol.eps)
                report.failures.push_back({bi, ei, res, "not maximally entangled"});
            image.push_back(std::move(v));
        }
        // orthonormality of the image family
        for (size_t i = 0; i < image.size(); ++i)
            for (size_t j = i; j < image.size(); ++j) {
                const Complex ip = bipartite_inner(image[i], image[j]);
                const double dev = std::abs(ip - (i == j ? Complex{1.0} : Complex{}));
                report.worst_orthonormality_residual =
                    std::max(report.worst_orthonormality_residual, dev);
                if (dev > tol.eps)
                    report.failures.push_back(
                        {bi, static_cast<int>(i), dev, "image family not orthonormal"});
            }
        images.push_back(std::move(image));
    }

    double constant = collection.constant_C;
    if (constant <= 0.0 && report.basis_count >= 2)
        constant = detail::cross_overlaps(collection.bases[0], collection.bases[1]).mean();
    report.expected_overlap = constant / dd;

    for (int i = 0; i < report.basis_count; ++i)
        for (int j = i + 1; j < report.basis_count; ++j) {
            MesMubReport::PairStat st{i, j, 0.0, 0.0};
            bool first = true;
            for (const BipartiteVector& u : images[i])
                for (const BipartiteVector& v : images[j]) {
                    const double ov = std::norm(bipartite_inner(u, v));
                    st.min_overlap = first ? ov : std::min(st.min_overlap, ov);
                    st.max_overlap = first ? ov : std::max(st.max_overlap, ov);
                    first = false;
                    const double dev = std::abs(ov - report.expected_overlap);
                    report.worst_overlap_deviation =
                        std::max(report.worst_overlap_deviation, dev);
                    if (dev > tol.eps)
                        report.failures.push_back({i, j, ov, "cross-basis overlap off target"});
                }
            report.pair_stats.push_back(st);
        }

    report.pass = report.failures.empty();
    return report;
}

/// Guaranteed-constructible count of maximally entangled unbiased bases:
/// max(3, d(d-1)).
inline long long min_mes_mub_count(int d) {
    if (!is_prime(d))
        throw UnsupportedDimensionError("min_mes_mub_count: d must be prime");
    const long long n = static_cast<long long>(d) * (d - 1);
    return n < 3 ? 3 : n;
}

/// Exact rational value of a ratio, kept for identities on the table.
struct Rational {
    long long num = 0;
    long long den = 1;
};

/// (d^2 - 1) / (d (d - 1)) reduced: the maximal-to-minimal count ratio.
inline Rational ratio_R_rational(long long d) {
    if (d < 2 || !is_prime(d))
        throw std::invalid_argument("ratio_R: d must be a prime >= 2");
    return {d + 1, d};
}

inline double ratio_R(long long d) {
    const Rational r = ratio_R_rational(d);
    return static_cast<double>(r.num) / static_cast<double>(r.den);
}

struct RatioRow {
    long long d = 0;
    double R = 0.0;
};

/// Rows (d, R) for the first `count` primes starting at 3; R decreases to 1.
inline std::vector<RatioRow> emit_ratio_table(int count) {
    if (count < 0) throw std::invalid_argument("emit_ratio_table: count must be >= 0");
    std::vector<RatioRow> rows;
    rows.reserve(static_cast<size_t>(count));
    for (long long p = 3; static_cast<int>(rows.size()) < count; p += 2)
        if (is_prime(p)) rows.push_back({p, ratio_R(p)});
    return rows;
}

}  // namespace muub
