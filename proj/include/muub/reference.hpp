#pragma once

#include <vector>

#include "muub/search.hpp"

namespace muub::reference {

/**
 * The seven third-root exponent tables (row-major in (r, s), gauge g_00 = 0)
 * whose generators extend the canonical d = 3 basis to the maximal set of
 * eight mutually unbiased unitary bases with C = 1. Shipping the integer
 * exponents keeps the bundle exact; matrices are materialized on demand.
 */
inline constexpr int kQutritGeneratorCount = 7;
inline constexpr int kQutritGeneratorExponents[kQutritGeneratorCount][9] = {
    {0, 1, 2, 1, 1, 1, 2, 1, 0},
    {0, 0, 1, 0, 2, 2, 1, 2, 1},
    {0, 0, 2, 0, 0, 2, 1, 1, 0},
    {0, 0, 2, 0, 1, 1, 1, 0, 1},
    {0, 0, 1, 0, 0, 1, 2, 2, 0},
    {0, 0, 1, 0, 1, 0, 2, 1, 1},
    {0, 0, 2, 0, 2, 0, 2, 0, 0},
};

inline std::vector<PhaseVector> qutrit_generators() {
    std::vector<PhaseVector> out;
    out.reserve(kQutritGeneratorCount);
    for (const auto& table : kQutritGeneratorExponents)
        out.push_back({3, 3, std::vector<int>(table, table + 9)});
    return out;
}

/// Canonical basis plus the seven bundled generator bases; C = 1.
inline MuubCollection qutrit_full_collection() {
    MuubCollection collection;
    collection.dim = 3;
    collection.constant_C = 1.0;
    collection.bases.push_back(canonical_basis(3, 3));
    int index = 0;
    for (const PhaseVector& pv : qutrit_generators())
        collection.bases.push_back(
            basis_from_generator(pv, Tolerance{}, "U" + std::to_string(++index)));
    return collection;
}

}  // namespace muub::reference
