#pragma once

// Sturm-bound congruence certificates. If a weight-k form on a congruence
// subgroup of index I has integer coefficients and its first
// floor(k/12 * I) + 1 coefficients vanish mod l, all of them do; the
// certificate records the checked window so it can be audited.

#include "thetashell/arith.hpp"
#include "thetashell/numeric.hpp"
#include "thetashell/qseries.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace thetashell {

// [SL2(Z) : Gamma0(N)] = N * prod_{p | N} (1 + 1/p), exact.
inline int64_t gamma0_index(int64_t N) {
    if (N < 1) throw std::invalid_argument("gamma0_index: level must be >= 1");
    int64_t index = 1;
    for (const auto& [p, e] : factorize(N).factors) {
        int64_t pe = 1;
        for (int i = 1; i < e; ++i) pe *= p;
        index *= pe * (p + 1);
    }
    return index;
}

struct CongruenceCertificate {
    int64_t modulus = 0;
    int weight = 0;
    int64_t level = 0;
    int64_t group_index = 0;
    int64_t threshold = 0;  // floor(k/12 * index) + 1
    int64_t stride = 1;
    std::string series_label;
    std::string status;  // "proved" or "failed"
    std::optional<int64_t> first_bad_index;
    std::vector<std::pair<int64_t, Integer>> checked;  // (arithmetic index, coefficient)
};

// Checks the coefficients at arithmetic indices 1..T (coefficient of
// q^{stride*m}); "proved" means every one of them is divisible by l.
inline CongruenceCertificate sturm_verify(const QSeries& s, int64_t l, int weight, int64_t level,
                                          int64_t stride) {
    if (!is_prime(l)) throw std::invalid_argument("sturm_verify: modulus must be prime");
    CongruenceCertificate cert;
    cert.modulus = l;
    cert.weight = weight;
    cert.level = level;
    cert.stride = stride;
    cert.group_index = gamma0_index(level);
    cert.threshold = (static_cast<int64_t>(weight) * cert.group_index) / 12 + 1;
    cert.series_label = s.label();
    if (s.order() <= stride * cert.threshold)
        throw std::invalid_argument("sturm_verify: series truncation shorter than the Sturm threshold");
    cert.status = "proved";
    for (int64_t m = 1; m <= cert.threshold; ++m) {
        Integer c = integer_coefficient(s, m, stride);
        cert.checked.emplace_back(m, c);
        if (mod_floor(c, l) != 0 && cert.status == "proved") {
            cert.status = "failed";
            cert.first_bad_index = m;
        }
    }
    return cert;
}

enum class LemmaSeries { L43_twist, L44_twist };

// The auxiliary forms behind the two Sturm certificates, already twisted by
// (m/3) on the q^{2m} support. Constant terms are dropped before the twist
// (the twist kills index 0 anyway).
inline QSeries build_lemma_series(LemmaSeries which, int64_t order = 240) {
    if (which == LemmaSeries::L43_twist) {
        // Delta12 + E6/504 = 1/504 + sum (b(m) - sigma5(m)) q^{2m}
        QSeries c = add(make_named(NamedForm::delta12, order),
                        scale(make_named(NamedForm::e6, order), Rational(1, 504)));
        QSeries t = twist(drop_constant_term(c), Character::legendre3, 2);
        t.set_label("twist((m/3), delta12 + E6/504)");
        return t;
    }
    // Delta12 - (1/16) theta3^4(2z) theta4^4(2z) theta2^4(2z)
    QSeries prod = mul(mul(make_theta(3, 2, 4, order), make_theta(4, 2, 4, order)),
                       make_theta(2, 2, 4, order));
    QSeries d = sub(make_named(NamedForm::delta12, order), scale(prod, Rational(1, 16)));
    QSeries t = twist(d, Character::legendre3, 2);
    t.set_label("twist((m/3), delta12 - (1/16)theta3^4 theta4^4 theta2^4 (2z))");
    return t;
}

// Certificates for the two congruences used by the A2 case: the twisted
// series above are forms of weight 6 on Gamma0(27) resp. Gamma0(108).
inline CongruenceCertificate sturm_mod3_certificate(int64_t order = 64) {
    return sturm_verify(build_lemma_series(LemmaSeries::L43_twist, order), 3, 6, 27, 2);
}

inline CongruenceCertificate sturm_mod2_certificate(int64_t order = 240) {
    return sturm_verify(build_lemma_series(LemmaSeries::L44_twist, order), 2, 6, 108, 2);
}

enum class CongruenceLemma { L32, L43, L44 };

struct LemmaViolation {
    int64_t m = 0;
    Integer coeff;
    Integer sigma;
};

struct LemmaReport {
    CongruenceLemma which;
    int64_t max_index = 0;
    bool widened = false;
    int64_t checked = 0;
    bool ok = false;
    std::vector<LemmaViolation> violations;
    int64_t widened_checked = 0;
    bool widened_ok = true;
    std::vector<LemmaViolation> widened_violations;
};

inline const char* lemma_name(CongruenceLemma which) {
    switch (which) {
        case CongruenceLemma::L32: return "3.2";
        case CongruenceLemma::L43: return "4.3";
        case CongruenceLemma::L44: return "4.4";
    }
    return "?";
}

// Direct verification of the congruence lemmas over their stated index sets:
//   3.2: a(m) = sigma1(m) (mod 4) for odd m        (Z2 series, stride 1)
//   4.3: a(m) = sigma5(m) (mod 3) for 3 not | m    (A2 series, stride 2)
//   4.4: a(m) = sigma1(m) (mod 2) for odd m = 1 (mod 3)
// `widen` additionally reports lemma 4.4 over all odd m; the widened range is
// reported separately and does not affect `ok`.
inline LemmaReport lemma_congruence_verify(CongruenceLemma which, int64_t N, bool widen = false) {
    if (N < 1) throw std::invalid_argument("lemma_congruence_verify: N must be >= 1");
    LemmaReport report;
    report.which = which;
    report.max_index = N;
    report.widened = widen;

    QSeries series;
    int64_t stride = 1;
    if (which == CongruenceLemma::L32) {
        series = mul(make_named(NamedForm::delta8, N + 1), make_named(NamedForm::theta_z2, N + 1));
    } else {
        stride = 2;
        series = mul(make_named(NamedForm::delta12, 2 * (N + 1)), make_named(NamedForm::theta_a2, 2 * (N + 1)));
    }

    for (int64_t m = 1; m <= N; ++m) {
        bool stated = false;
        switch (which) {
            case CongruenceLemma::L32: stated = (m % 2 == 1); break;
            case CongruenceLemma::L43: stated = (m % 3 != 0); break;
            case CongruenceLemma::L44: stated = (m % 2 == 1 && m % 3 == 1); break;
        }
        bool wide = widen && which == CongruenceLemma::L44 && m % 2 == 1 && !stated;
        if (!stated && !wide) continue;

        Integer a = integer_coefficient(series, m, stride);
        Integer sigma;
        int64_t l = 0;
        switch (which) {
            case CongruenceLemma::L32: sigma = divisor_sigma(1, m); l = 4; break;
            case CongruenceLemma::L43: sigma = divisor_sigma(5, m); l = 3; break;
            case CongruenceLemma::L44: sigma = divisor_sigma(1, m); l = 2; break;
        }
        bool holds = mod_floor(a, l) == mod_floor(sigma, l);
        if (stated) {
            ++report.checked;
            if (!holds) report.violations.push_back({m, a, sigma});
        } else {
            ++report.widened_checked;
            if (!holds) {
                report.widened_ok = false;
                if (report.widened_violations.size() < 16) report.widened_violations.push_back({m, a, sigma});
            }
        }
    }
    report.ok = report.violations.empty();
    return report;
}

}  // namespace thetashell
