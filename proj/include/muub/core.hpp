#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace muub {

using Complex = std::complex<double>;

inline constexpr double kDefaultEps = 1e-9;

// Operator-valued routines accept prime dimensions in [2, kMaxOperatorDim].
inline constexpr int kMaxOperatorDim = 31;

// Matrix convention used throughout; certificates carry this string so that
// serialized results are unambiguous about which shift direction was used.
inline constexpr const char* kConventionNote =
    "X|j> = |j+1 mod d>, Z = diag(1, w, ..., w^{d-1}), w = exp(2*pi*i/d)";

/// Absolute tolerance for all floating-point certificates.
struct Tolerance {
    double eps = kDefaultEps;

    Tolerance() = default;
    explicit Tolerance(double e) : eps(e) {
        if (!(e > 0.0) || !(e < 1e-3))
            throw std::invalid_argument("Tolerance: eps must lie in (0, 1e-3)");
    }
};

struct UnsupportedDimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DegenerateInputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Cross-basis overlaps were not constant; carries the observed spread.
struct NotUnbiasedError : std::runtime_error {
    double min_overlap;
    double max_overlap;
    NotUnbiasedError(const std::string& what, double lo, double hi)
        : std::runtime_error(what), min_overlap(lo), max_overlap(hi) {}
};

struct DegenerateConstantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A collection exceeded a proven cardinality bound.
struct BoundViolationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The enumeration tree grew past the configured node cap.
struct SearchSpaceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent serialized document.
struct DocumentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

/// Guard for dimensions that index operator-space constructions.
inline void require_prime_dim(int d, const char* where) {
    if (!is_prime(d) || d > kMaxOperatorDim)
        throw UnsupportedDimensionError(std::string(where) +
                                        ": dimension must be a prime in [2, " +
                                        std::to_string(kMaxOperatorDim) + "], got " +
                                        std::to_string(d));
}

inline long long mod_reduce(long long k, long long order) {
    long long m = k % order;
    return m < 0 ? m + order : m;
}

/// exp(2*pi*i*k/order). The exponent is reduced mod order before any
/// trigonometric evaluation; quarter turns are returned exactly.
inline Complex root_of_unity(long long order, long long k) {
    if (order < 1)
        throw std::invalid_argument("root_of_unity: order must be a positive integer");
    const long long e = mod_reduce(k, order);
    if ((4 * e) % order == 0) {
        switch ((4 * e) / order) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            case 3: return {0.0, -1.0};
        }
    }
    const double theta = 2.0 * M_PI * static_cast<double>(e) / static_cast<double>(order);
    return {std::cos(theta), std::sin(theta)};
}

/// A root of unity kept as an integer exponent; products stay exact.
struct RootPhase {
    int order = 1;     // L >= 1
    int exponent = 0;  // reduced into [0, L)

    RootPhase() = default;
    RootPhase(int order_, long long k) : order(order_) {
        if (order_ < 1)
            throw std::invalid_argument("RootPhase: order must be a positive integer");
        exponent = static_cast<int>(mod_reduce(k, order_));
    }

    RootPhase operator*(const RootPhase& other) const {
        if (order != other.order)
            throw std::invalid_argument("RootPhase: mixed orders in product");
        return RootPhase(order, static_cast<long long>(exponent) + other.exponent);
    }

    Complex value() const { return root_of_unity(order, exponent); }

    bool operator==(const RootPhase& other) const = default;
};

}  // namespace muub
