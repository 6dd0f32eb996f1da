#pragma once

// Closed-form arithmetic functions: divisor sums, representation counts of
// x^2+y^2 and x^2-xy+y^2, quadratic characters, and trial-division
// factorization. Everything here is exact and pure.

#include "thetashell/numeric.hpp"

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace thetashell {

enum class LatticeKind { z2, a2 };

enum class Character { trivial, chi4, legendre3 };

inline const char* character_name(Character c) {
    switch (c) {
        case Character::trivial: return "trivial";
        case Character::chi4: return "chi4";
        case Character::legendre3: return "legendre3";
    }
    return "?";
}

// Conductor of the (primitive) character; 1 for the trivial one.
inline int64_t character_conductor(Character c) {
    switch (c) {
        case Character::trivial: return 1;
        case Character::chi4: return 4;
        case Character::legendre3: return 3;
    }
    return 1;
}

struct Factorization {
    int64_t value = 1;
    std::vector<std::pair<int64_t, int>> factors;  // (prime, exponent), primes increasing
};

inline Factorization factorize(int64_t m) {
    if (m < 1) throw std::invalid_argument("factorize: argument must be >= 1");
    Factorization f;
    f.value = m;
    for (int64_t p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
        if (m % p == 0) {
            int e = 0;
            while (m % p == 0) { m /= p; ++e; }
            f.factors.emplace_back(p, e);
        }
    }
    if (m > 1) f.factors.emplace_back(m, 1);
    return f;
}

inline bool is_prime(int64_t m) {
    if (m < 2) return false;
    Factorization f = factorize(m);
    return f.factors.size() == 1 && f.factors[0].second == 1;
}

// sigma_k(m) = sum of d^k over divisors d of m.
inline Integer divisor_sigma(int k, int64_t m) {
    if (m < 1) throw std::invalid_argument("divisor_sigma: argument must be >= 1");
    if (k < 0) throw std::invalid_argument("divisor_sigma: negative exponent");
    Integer result = 1;
    for (const auto& [p, e] : factorize(m).factors) {
        if (k == 0) {
            result *= e + 1;
            continue;
        }
        Integer pk = int_pow(Integer(p), static_cast<unsigned>(k));
        // (p^{k(e+1)} - 1) / (p^k - 1)
        result *= (int_pow(pk, static_cast<unsigned>(e + 1)) - 1) / (pk - 1);
    }
    return result;
}

inline int char_value(Character chi, int64_t n) {
    switch (chi) {
        case Character::trivial:
            return 1;
        case Character::chi4: {
            int64_t r = ((n % 4) + 4) % 4;
            if (r == 1) return 1;
            if (r == 3) return -1;
            return 0;
        }
        case Character::legendre3: {
            int64_t r = ((n % 3) + 3) % 3;
            if (r == 1) return 1;
            if (r == 2) return -1;
            return 0;
        }
    }
    return 0;
}

// r2(m) = #{(x,y) in Z^2 : x^2+y^2 = m}; r2(0) = 1 (the zero vector).
// Equals 4(d_1(m) - d_3(m)); computed from the factorization.
inline int64_t r2(int64_t m) {
    if (m < 0) throw std::invalid_argument("r2: negative argument");
    if (m == 0) return 1;
    int64_t count = 4;
    for (const auto& [p, e] : factorize(m).factors) {
        if (p == 2) continue;
        if (p % 4 == 1) {
            count *= e + 1;
        } else if (e % 2 == 1) {
            return 0;
        }
    }
    return count;
}

// n_a2(m) = #{(x,y) : x^2-xy+y^2 = m}, the number of A2 vectors of norm 2m.
// Equals 6 * sum_{d|m} legendre3(d); n_a2(0) = 1.
inline int64_t n_a2(int64_t m) {
    if (m < 0) throw std::invalid_argument("n_a2: negative argument");
    if (m == 0) return 1;
    int64_t count = 6;
    for (const auto& [p, e] : factorize(m).factors) {
        if (p % 3 == 1) {
            count *= e + 1;
        } else if (p % 3 == 2 && e % 2 == 1) {
            return 0;
        }
        // p == 3 contributes factor 1
    }
    return count;
}

inline bool is_shell_nonempty(LatticeKind kind, int64_t m) {
    if (m < 1) throw std::invalid_argument("is_shell_nonempty: index must be >= 1");
    return kind == LatticeKind::z2 ? r2(m) > 0 : n_a2(m) > 0;
}

}  // namespace thetashell
