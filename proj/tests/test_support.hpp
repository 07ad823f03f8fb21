#pragma once

#include <random>

#include "muub/monoid.hpp"
#include "muub/weyl.hpp"

namespace muub::testing {

using Rng = std::mt19937_64;

inline Complex random_complex(Rng& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    return {n(rng), n(rng)};
}

inline OperatorMatrix random_matrix(Rng& rng, int d) {
    OperatorMatrix m(d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m.at(i, j) = random_complex(rng);
    return m;
}

/// Haar-ish random unitary: modified Gram-Schmidt on Gaussian columns.
inline OperatorMatrix random_unitary(Rng& rng, int d) {
    OperatorMatrix m = random_matrix(rng, d);
    for (int k = 0; k < d; ++k) {
        for (int pass = 0; pass < 2; ++pass)
            for (int j = 0; j < k; ++j) {
                Complex ip = 0.0;
                for (int i = 0; i < d; ++i) ip += std::conj(m.at(i, j)) * m.at(i, k);
                for (int i = 0; i < d; ++i) m.at(i, k) -= ip * m.at(i, j);
            }
        double norm = 0.0;
        for (int i = 0; i < d; ++i) norm += std::norm(m.at(i, k));
        norm = std::sqrt(norm);
        for (int i = 0; i < d; ++i) m.at(i, k) /= norm;
    }
    return m;
}

/// Random matrix rescaled to the unitary Hilbert-Schmidt norm sqrt(d).
inline OperatorMatrix random_hs_normalized(Rng& rng, int d) {
    OperatorMatrix m = random_matrix(rng, d);
    const double scale = std::sqrt(static_cast<double>(d) / m.hs_norm_sq());
    m *= Complex{scale, 0.0};
    return m;
}

inline MonoidVector random_state(Rng& rng, int d, bool normalized = false) {
    MonoidVector v{d, std::vector<Complex>(static_cast<size_t>(d))};
    for (int i = 0; i < d; ++i) v.coeffs[i] = random_complex(rng);
    if (normalized) {
        double n = 0.0;
        for (const Complex& c : v.coeffs) n += std::norm(c);
        n = std::sqrt(n);
        for (Complex& c : v.coeffs) c /= n;
    }
    return v;
}

inline double max_entry_diff(const OperatorMatrix& a, const OperatorMatrix& b) {
    return (a - b).max_abs();
}

}  // namespace muub::testing
