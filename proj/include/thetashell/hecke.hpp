#pragma once

// Normalized Hecke eigenform coefficient algebra: a(m) is assembled from the
// prime values a(p) through multiplicativity and the prime-power recurrence
//   a(p^{n+1}) = a(p) a(p^n) - chi(p) p^{k-1} a(p^{n-1}).
// a(p) itself comes from a series product or from a shell harmonic sum; both
// sources are exact. The trigonometric form of the prime-power law is never
// evaluated in floating point; the integer recurrence carries its content.

#include "thetashell/arith.hpp"
#include "thetashell/design.hpp"
#include "thetashell/numeric.hpp"
#include "thetashell/qseries.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace thetashell {

namespace detail {

// Thread-safe memo for a(p): concurrent readers, one writer per entry.
class ApCache {
  public:
    Integer get_or_compute(int64_t p, const std::function<Integer(int64_t)>& fn) {
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = map_.find(p);
            if (it != map_.end()) return it->second;
        }
        Integer value = fn(p);
        std::lock_guard<std::mutex> lock(mutex_);
        return map_.emplace(p, std::move(value)).first->second;
    }

  private:
    std::mutex mutex_;
    std::unordered_map<int64_t, Integer> map_;
};

}  // namespace detail

struct EigenformSpec {
    std::string name;
    int weight = 0;
    Character character = Character::trivial;
    int64_t stride = 1;  // arithmetic index m lives at q^{stride*m}
    std::function<Integer(int64_t)> ap_source;
    int64_t ap_limit = 0;  // largest prime the source can deliver
    std::shared_ptr<detail::ApCache> cache = std::make_shared<detail::ApCache>();

    Integer ap(int64_t p) const {
        if (ap_limit > 0 && p > ap_limit)
            throw std::out_of_range(name + ": a(p) unavailable for p = " + std::to_string(p));
        return cache->get_or_compute(p, ap_source);
    }
};

// a(p) read off a truncated series product. The series must stay alive only
// through this call; coefficients are copied.
inline EigenformSpec spec_from_series(std::string name, int weight, Character chi, int64_t stride,
                                      const QSeries& series) {
    EigenformSpec spec;
    spec.name = std::move(name);
    spec.weight = weight;
    spec.character = chi;
    spec.stride = stride;
    spec.ap_limit = series.order() / stride - 1;
    auto coeffs = std::make_shared<QSeries>(series);
    int64_t s = stride;
    spec.ap_source = [coeffs, s](int64_t p) { return integer_coefficient(*coeffs, p, s); };
    return spec;
}

inline EigenformSpec make_z2_spec(const QSeries& delta8_theta2) {
    return spec_from_series("Z2-Harm4", 5, Character::chi4, 1, delta8_theta2);
}

inline EigenformSpec make_a2_spec(const QSeries& delta12_theta_a2) {
    return spec_from_series("A2-Harm6", 7, Character::legendre3, 2, delta12_theta_a2);
}

inline EigenformSpec make_tau_spec(const QSeries& delta24) {
    return spec_from_series("Delta24-tau", 12, Character::trivial, 2, delta24);
}

// a(p) from the shell harmonic sums; available for every prime.
inline EigenformSpec spec_from_shells(LatticeKind kind) {
    EigenformSpec spec;
    if (kind == LatticeKind::z2) {
        spec.name = "Z2-Harm4 (shell route)";
        spec.weight = 5;
        spec.character = Character::chi4;
        spec.stride = 1;
        spec.ap_source = [](int64_t p) { return weighted_theta_coeff(LatticeKind::z2, p); };
    } else {
        spec.name = "A2-Harm6 (shell route)";
        spec.weight = 7;
        spec.character = Character::legendre3;
        spec.stride = 2;
        spec.ap_source = [](int64_t p) { return weighted_theta_coeff(LatticeKind::a2, p); };
    }
    return spec;
}

// a(p^0), a(p^1), ..., a(p^alpha_max) by the recurrence.
inline std::vector<Integer> prime_power_table(const EigenformSpec& spec, int64_t p, int alpha_max) {
    if (!is_prime(p)) throw std::invalid_argument("prime_power_table: p must be prime");
    if (alpha_max < 0) throw std::invalid_argument("prime_power_table: negative range");
    std::vector<Integer> table;
    table.reserve(static_cast<size_t>(alpha_max) + 1);
    table.emplace_back(1);
    if (alpha_max == 0) return table;
    Integer ap = spec.ap(p);
    table.push_back(ap);
    Integer pk = int_pow(Integer(p), static_cast<unsigned>(spec.weight - 1));
    Integer chip = char_value(spec.character, p);
    for (int n = 2; n <= alpha_max; ++n)
        table.push_back(ap * table[static_cast<size_t>(n - 1)] - chip * pk * table[static_cast<size_t>(n - 2)]);
    return table;
}

// a(m) assembled multiplicatively over the prime factorization.
inline Integer eigen_coeff(const EigenformSpec& spec, int64_t m) {
    if (m < 1) throw std::invalid_argument("eigen_coeff: index must be >= 1");
    Integer result = 1;
    for (const auto& [p, e] : factorize(m).factors)
        result *= prime_power_table(spec, p, e)[static_cast<size_t>(e)];
    return result;
}

struct HeckeRelationReport {
    std::string series_label;
    std::string spec_name;
    int64_t max_index = 0;
    bool ok = false;
    int64_t coprime_pairs_checked = 0;
    int64_t prime_powers_checked = 0;
    std::string first_violation;
};

// Checks a(1) = 1, a(mn) = a(m)a(n) for coprime m,n with mn <= N, and the
// prime-power recurrence for every p^alpha <= N, against the series itself.
inline HeckeRelationReport verify_hecke_relations(const QSeries& series, const EigenformSpec& spec,
                                                  int64_t N, int64_t stride) {
    if (N < 1) throw std::invalid_argument("verify_hecke_relations: N must be >= 1");
    if (series.order() <= N * stride)
        throw std::invalid_argument("verify_hecke_relations: series too short");
    HeckeRelationReport report;
    report.series_label = series.label();
    report.spec_name = spec.name;
    report.max_index = N;

    std::vector<Integer> a(static_cast<size_t>(N) + 1);
    for (int64_t m = 1; m <= N; ++m) a[static_cast<size_t>(m)] = integer_coefficient(series, m, stride);

    auto fail = [&](const std::string& what) {
        report.ok = false;
        report.first_violation = what;
        return report;
    };

    if (a[1] != 1) return fail("a(1) = " + integer_str(a[1]) + " != 1 (not normalized)");

    for (int64_t m = 2; m <= N; ++m)
        for (int64_t n = m + 1; m * n <= N; ++n) {
            if (std::gcd(m, n) != 1) continue;
            ++report.coprime_pairs_checked;
            if (a[static_cast<size_t>(m * n)] != a[static_cast<size_t>(m)] * a[static_cast<size_t>(n)]) {
                std::ostringstream os;
                os << "a(" << m * n << ") != a(" << m << ")a(" << n << ")";
                return fail(os.str());
            }
        }

    for (int64_t p = 2; p * p <= N; ++p) {
        if (!is_prime(p)) continue;
        Integer pk = int_pow(Integer(p), static_cast<unsigned>(spec.weight - 1));
        Integer chip = char_value(spec.character, p);
        for (int64_t q = p * p; q <= N; q *= p) {
            ++report.prime_powers_checked;
            int64_t prev = q / p, prev2 = q / (p * p);
            Integer expected = a[static_cast<size_t>(p)] * a[static_cast<size_t>(prev)] -
                               chip * pk * a[static_cast<size_t>(prev2)];
            if (a[static_cast<size_t>(q)] != expected) {
                std::ostringstream os;
                os << "recurrence fails at p = " << p << ", p^alpha = " << q;
                return fail(os.str());
            }
        }
    }
    report.ok = true;
    return report;
}

// Deligne (Ramanujan-Petersson) bound |a(p)| < 2 p^{(k-1)/2}, squared to stay
// in integer arithmetic.
inline bool deligne_check(const EigenformSpec& spec, int64_t p) {
    Integer ap = spec.ap(p);
    return ap * ap < 4 * int_pow(Integer(p), static_cast<unsigned>(spec.weight - 1));
}

struct ExtremalVerdict {
    int64_t p = 0;
    Integer ap;
    bool nonzero_proven = false;
    std::string verdict;
    std::vector<std::pair<std::string, bool>> obstructions;
};

// Numerical verification of the congruence obstructions that rule out the
// extremal values z^2 in {1,2,3} of z = a(p) p^{-(k-1)/2} in the split-prime
// case: a(p) = +-p^{(k-1)/2} is killed by the congruence, a(p)^2 = 2 p^{k-1}
// or 3 p^{k-1} by non-squareness.
inline ExtremalVerdict extremal_case_analysis(const EigenformSpec& spec, int64_t p) {
    bool z2_case = spec.character == Character::chi4;
    if (z2_case && p % 4 != 1)
        throw std::invalid_argument("extremal_case_analysis: need p = 1 mod 4 for the Z2 spec");
    if (!z2_case && p % 3 != 1)
        throw std::invalid_argument("extremal_case_analysis: need p = 1 mod 3 for the A2 spec");

    ExtremalVerdict v;
    v.p = p;
    v.ap = spec.ap(p);
    Integer phalf = int_pow(Integer(p), static_cast<unsigned>((spec.weight - 1) / 2));
    Integer pk = phalf * phalf;

    if (z2_case) {
        bool mod4 = mod_floor(v.ap, 4) == 2;
        v.obstructions.emplace_back("a(p) = 2 (mod 4)", mod4);
        v.obstructions.emplace_back("a(p) not in {0, +-p^2}", v.ap != 0 && v.ap != phalf && v.ap != -phalf);
        v.obstructions.emplace_back("2p^4 not a square", !is_perfect_square(2 * pk));
        v.obstructions.emplace_back("3p^4 not a square", !is_perfect_square(3 * pk));
        v.nonzero_proven = mod4;
        v.verdict = mod4 ? "nonzero via mod-4" : "mod-4 obstruction failed";
    } else {
        bool mod3 = mod_floor(v.ap, 3) == 2;
        bool even = mod_floor(v.ap, 2) == 0;
        v.obstructions.emplace_back("a(p) = 2 (mod 3)", mod3);
        v.obstructions.emplace_back("a(p) = 0 (mod 2)", even);
        v.obstructions.emplace_back("a(p) not in {0, +-p^3}", v.ap != 0 && v.ap != phalf && v.ap != -phalf);
        v.obstructions.emplace_back("2p^6 not a square", !is_perfect_square(2 * pk));
        v.obstructions.emplace_back("3p^6 not a square", !is_perfect_square(3 * pk));
        v.nonzero_proven = mod3;
        v.verdict = mod3 ? "nonzero via mod-3" : "mod-3 obstruction failed";
    }
    for (const auto& [label, held] : v.obstructions)
        if (!held && v.verdict.find("failed") == std::string::npos)
            v.verdict += " (secondary obstruction '" + label + "' failed)";
    return v;
}

}  // namespace thetashell
