// Acceptance suite: nine end-to-end criteria, one pass/fail line each.
// Run all with no arguments, or a single one with --criterion N.

#include "thetashell/arith.hpp"
#include "thetashell/congruence.hpp"
#include "thetashell/design.hpp"
#include "thetashell/hecke.hpp"
#include "thetashell/lattice.hpp"
#include "thetashell/qseries.hpp"
#include "thetashell/report.hpp"
#include "thetashell/verify.hpp"

#include <chrono>
#include <cstdint>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace thetashell;

namespace {

struct Checker {
    std::ostringstream detail;
    int failures = 0;

    void expect(bool ok, const std::string& what) {
        if (!ok) {
            ++failures;
            detail << "    FAILED: " << what << "\n";
        }
    }
    template <typename A, typename B>
    void expect_eq(const A& got, const B& want, const std::string& what) {
        if (!(got == want)) {
            ++failures;
            detail << "    FAILED: " << what << " (got " << got << ", want " << want << ")\n";
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void check_coeffs(Checker& c, const QSeries& s, const std::vector<int64_t>& want, int64_t stride,
                  const std::string& label) {
    for (size_t m = 0; m < want.size(); ++m) {
        std::ostringstream what;
        what << label << " coefficient at q^" << stride * static_cast<int64_t>(m);
        c.expect_eq(coefficient_at(s, stride * static_cast<int64_t>(m)), Rational(want[m]), what.str());
    }
}

// 1. Golden series fixtures, exact equality, under one second.
bool criterion1(std::ostream& out) {
    auto t0 = std::chrono::steady_clock::now();
    Checker c;

    check_coeffs(c, make_named(NamedForm::theta_z2, 16), {1, 4, 4, 0, 4, 8, 0, 0, 4, 4, 8}, 1, "theta3^2");
    c.expect_eq(coefficient_at(make_named(NamedForm::theta_z2, 16), 13), Rational(8), "theta3^2 at q^13");

    check_coeffs(c, make_named(NamedForm::theta_a2, 40),
                 {1, 6, 0, 6, 6, 0, 0, 12, 0, 6, 0, 0, 6, 12, 0, 0, 6, 0, 0, 12}, 2, "theta_a2");

    check_coeffs(c, make_named(NamedForm::delta8, 4), {0, 1, -8, 28}, 1, "delta8");
    check_coeffs(c, make_named(NamedForm::delta12, 10), {0, 0, 1, 0, -6, 0, 9, 0, 4, 0}, 1, "delta12");

    QSeries weighted = mul(make_named(NamedForm::delta8, 10), make_named(NamedForm::theta_z2, 10));
    check_coeffs(c, weighted, {0, 1, -4, 0, 16, -14, 0, 0, -64, 81}, 1, "delta8*theta3^2");

    check_coeffs(c, make_named(NamedForm::e4, 10), {1, 240, 2160, 6720, 17520}, 2, "E4");

    double dt = seconds_since(t0);
    c.expect(dt < 1.0, "fixtures completed under one second");
    out << c.detail.str();
    out << "    elapsed " << dt << " s\n";
    return c.failures == 0;
}

// 2. (1/16) theta2^4 has coefficient sigma1(2m-1) at odd indices, 0 at even,
// through index 2000, in under five seconds.
bool criterion2(std::ostream& out) {
    auto t0 = std::chrono::steady_clock::now();
    Checker c;
    QSeries s = scale(make_theta(2, 1, 4, 2001), Rational(1, 16));
    for (int64_t m = 1; m <= 2000; ++m) {
        Rational got = coefficient_at(s, m);
        if (m % 2 == 1) {
            if (got != Rational(divisor_sigma(1, m))) {
                c.expect(false, "odd index " + std::to_string(m) + " != sigma1");
                break;
            }
        } else if (got != 0) {
            c.expect(false, "even index " + std::to_string(m) + " nonzero");
            break;
        }
    }
    double dt = seconds_since(t0);
    c.expect(dt < 5.0, "identity check under five seconds");
    out << c.detail.str();
    out << "    elapsed " << dt << " s\n";
    return c.failures == 0;
}

// 3. Sturm certificates with the exact thresholds and opening terms.
bool criterion3(std::ostream& out) {
    Checker c;
    CongruenceCertificate mod3 = sturm_mod3_certificate();
    c.expect_eq(mod3.threshold, 19, "mod-3 threshold");
    c.expect_eq(mod3.status, std::string("proved"), "mod-3 status");
    QSeries t43 = build_lemma_series(LemmaSeries::L43_twist, 24);
    c.expect_eq(coefficient_at(t43, 4), Rational(39), "L43 twist at q^4");
    c.expect_eq(coefficient_at(t43, 8), Rational(-1053), "L43 twist at q^8");
    c.expect_eq(coefficient_at(t43, 10), Rational(3120), "L43 twist at q^10");
    c.expect_eq(coefficient_at(t43, 14), Rational(-16848), "L43 twist at q^14");

    CongruenceCertificate mod2 = sturm_mod2_certificate();
    c.expect_eq(mod2.threshold, 109, "mod-2 threshold");
    c.expect_eq(mod2.status, std::string("proved"), "mod-2 status");
    QSeries t44 = build_lemma_series(LemmaSeries::L44_twist, 24);
    c.expect_eq(coefficient_at(t44, 4), Rational(6), "L44 twist at q^4");
    c.expect_eq(coefficient_at(t44, 8), Rational(4), "L44 twist at q^8");
    c.expect_eq(coefficient_at(t44, 14), Rational(-48), "L44 twist at q^14");
    c.expect_eq(coefficient_at(t44, 16), Rational(-168), "L44 twist at q^16");
    c.expect_eq(coefficient_at(t44, 20), Rational(-36), "L44 twist at q^20");

    if (coefficient_at(t44, 14) == Rational(48)) {
        out << "    note: the reference fixture -48 at q^14 cannot be reproduced; exact\n"
               "    computation forces +48 there (and a +48 q^10 term the fixture list\n"
               "    omits). Cross-derivation from the mod-3 fixtures: -16848 at q^14 in the\n"
               "    mod-3 series forces b(7) = sigma5(7) - 16848 = -40; the sigma1 expansion\n"
               "    of theta2^4/16 gives c(7) = -88; the twisted coefficient is then\n"
               "    chi(7) * (b(7) - c(7)) = +48. The q^16 and q^20 fixtures (-168, -36)\n"
               "    match exactly, so this is an isolated sign slip in the fixture list.\n"
               "    The mod-2 divisibility content is unaffected: the certificate above\n"
               "    still proves the congruence with threshold exactly 109.\n";
    }
    out << c.detail.str();
    return c.failures == 0;
}

// 4. The three congruence lemmas hold over their stated ranges through 2000.
bool criterion4(std::ostream& out) {
    Checker c;
    LemmaReport l32 = lemma_congruence_verify(CongruenceLemma::L32, 2000);
    c.expect(l32.ok, "lemma 3.2 (mod 4, odd m) through 2000");
    LemmaReport l43 = lemma_congruence_verify(CongruenceLemma::L43, 2000);
    c.expect(l43.ok, "lemma 4.3 (mod 3, m not divisible by 3) through 2000");
    LemmaReport l44 = lemma_congruence_verify(CongruenceLemma::L44, 2000);
    c.expect(l44.ok, "lemma 4.4 (mod 2, odd m = 1 mod 3) through 2000");
    out << c.detail.str();
    out << "    checked " << l32.checked << " + " << l43.checked << " + " << l44.checked
        << " indices\n";
    return c.failures == 0;
}

// 5. Hecke algebra to 10^4 for both main specs: eigen-built coefficients
// equal the series, the Deligne bound holds at every prime, and the
// prime-power tables show the exact vanishing patterns.
bool criterion5(std::ostream& out) {
    auto t0 = std::chrono::steady_clock::now();
    Checker c;
    const int64_t N = 10000;

    QSeries z2s = mul(make_named(NamedForm::delta8, N + 2), make_named(NamedForm::theta_z2, N + 2));
    EigenformSpec z2 = make_z2_spec(z2s);
    for (int64_t m = 1; m <= N; ++m)
        if (eigen_coeff(z2, m) != integer_coefficient(z2s, m, 1)) {
            c.expect(false, "z2 eigen_coeff != series at m = " + std::to_string(m));
            break;
        }

    QSeries a2s = mul(make_named(NamedForm::delta12, 2 * (N + 2)),
                      make_named(NamedForm::theta_a2, 2 * (N + 2)));
    EigenformSpec a2 = make_a2_spec(a2s);
    for (int64_t m = 1; m <= N; ++m)
        if (eigen_coeff(a2, m) != integer_coefficient(a2s, m, 2)) {
            c.expect(false, "a2 eigen_coeff != series at m = " + std::to_string(m));
            break;
        }

    int64_t primes = 0;
    for (int64_t p = 2; p <= N; ++p) {
        if (!is_prime(p)) continue;
        ++primes;
        if (!deligne_check(z2, p)) c.expect(false, "deligne z2 at p = " + std::to_string(p));
        if (!deligne_check(a2, p)) c.expect(false, "deligne a2 at p = " + std::to_string(p));

        if (p % 4 == 3) {
            std::vector<Integer> table = prime_power_table(z2, p, 4);
            for (int n = 0; n <= 4; ++n) {
                bool want_zero = n % 2 == 1;
                if ((table[static_cast<size_t>(n)] == 0) != want_zero)
                    c.expect(false, "z2 vanishing pattern at p = " + std::to_string(p));
                if (!want_zero && table[static_cast<size_t>(n)] != int_pow(Integer(p), static_cast<unsigned>(2 * n)))
                    c.expect(false, "z2 even-power value at p = " + std::to_string(p));
            }
        }
        if (p % 3 == 2) {
            std::vector<Integer> table = prime_power_table(a2, p, 4);
            for (int n = 0; n <= 4; ++n) {
                bool want_zero = n % 2 == 1;
                if ((table[static_cast<size_t>(n)] == 0) != want_zero)
                    c.expect(false, "a2 vanishing pattern at p = " + std::to_string(p));
                if (!want_zero && table[static_cast<size_t>(n)] != int_pow(Integer(p), static_cast<unsigned>(3 * n)))
                    c.expect(false, "a2 even-power value at p = " + std::to_string(p));
            }
        }
    }
    out << c.detail.str();
    out << "    " << N << " indices, " << primes << " primes per spec, elapsed "
        << seconds_since(t0) << " s\n";
    return c.failures == 0;
}

// 6. Theorem runs at desk scale: no nonempty shell with a vanishing
// coefficient up to 10^5, series cross-check to 10^4, single-threaded.
bool criterion6(std::ostream& out) {
    Checker c;
    VerifyOptions opt;
    opt.jobs = 1;
    for (LatticeKind kind : {LatticeKind::z2, LatticeKind::a2}) {
        auto t0 = std::chrono::steady_clock::now();
        try {
            TheoremRunReport r = verify_theorem(kind, 100000, 10000, opt);
            c.expect_eq(r.zero_coefficients_found, 0,
                        std::string(lattice_kind_name(kind)) + " zero coefficients");
            c.expect(r.failures.empty(), std::string(lattice_kind_name(kind)) + " run failures");
            c.expect_eq(r.series_agreed, r.series_compared,
                        std::string(lattice_kind_name(kind)) + " series route agreement");
            c.expect_eq(r.hecke_agreed, r.hecke_compared,
                        std::string(lattice_kind_name(kind)) + " hecke route agreement");
            double dt = seconds_since(t0);
            c.expect(dt < 600.0, std::string(lattice_kind_name(kind)) + " under ten minutes");
            out << "    " << lattice_kind_name(kind) << ": " << r.nonempty_shells
                << " nonempty shells, " << r.series_compared << " series cross-checks, elapsed "
                << dt << " s\n";
        } catch (const VerificationError& e) {
            c.expect(false, std::string("verification aborted: ") + e.what());
        }
    }
    out << c.detail.str();
    return c.failures == 0;
}

// 7. Design geometry of the main shells; odd pair sums vanish, all are
// nonnegative.
bool criterion7(std::ostream& out) {
    Checker c;
    Lattice z2 = lattice_zn(2);
    Lattice a2 = lattice_a2();

    DesignReport a2_min = design_strength(shell(a2, 2), 12);
    c.expect_eq(a2_min.strength, 5, "A2 norm-2 strength");
    for (int j = 1; j <= 5; ++j)
        c.expect(a2_min.pair_sums.at(j) == 0, "A2 norm-2 pair sum " + std::to_string(j));
    c.expect(a2_min.pair_sums.at(6) > 0, "A2 norm-2 degree-6 sum positive");

    c.expect_eq(design_strength(shell(z2, 1), 12).strength, 3, "Z2 norm-1 strength");
    c.expect_eq(design_strength(shell(z2, 5), 12).strength, 3, "Z2 norm-5 strength");

    int64_t shells = 0;
    for (int64_t norm = 1; norm <= 60; ++norm) {
        for (const Lattice* lat : {&z2, &a2}) {
            Shell s = shell(*lat, norm);
            if (s.empty()) continue;
            ++shells;
            DesignReport r = design_strength(s, 12);
            for (const auto& [j, v] : r.pair_sums) {
                if (v < 0) c.expect(false, "negative pair sum");
                if (j % 2 == 1 && v != 0) c.expect(false, "odd-degree pair sum nonzero");
            }
        }
    }
    out << c.detail.str();
    out << "    " << shells << " shells swept for sign and parity conditions\n";
    return c.failures == 0;
}

// 8. Design search reproduction: dimension 2 (disc <= 50, norm <= 100) and
// dimension 3 (disc <= 10, norm <= 30).
bool criterion8(std::ostream& out) {
    Checker c;
    auto t0 = std::chrono::steady_clock::now();
    SearchReport d2 = design_search(2, 50, 100, 12);
    c.expect_eq(d2.max_strength, 5, "dimension-2 max strength");
    c.expect(d2.every_strength5_shell_size6, "every strength-5 shell has exactly 6 points");
    if (!d2.every_strength5_shell_size6) {
        out << "    counterexamples (strength-5 shells with more than 6 points):\n";
        int shown = 0;
        for (const auto& r : d2.results) {
            if (r.strength == 5 && r.size != 6 && shown < 4) {
                out << "      gram " << gram_flat_str(r.gram, r.dim) << " norm " << r.norm
                    << " size " << r.size << "\n";
                ++shown;
            }
        }
        out << "    the strength-5 shells found all decompose into regular hexagons\n"
               "    (orbits of a rotation by 60 degrees), but shells made of two or more\n"
               "    such orbits (12+ points) occur well inside this envelope: already the\n"
               "    minimal hexagonal Gram [2 1;1 2] at norm 14, and [1 0;0 3] at norm 28.\n"
               "    The size-6 clause therefore cannot hold at disc <= 50, norm <= 100;\n"
               "    it does hold when the norm bound stays below 14.\n";
    }
    SearchReport d3 = design_search(3, 10, 30, 12);
    c.expect_eq(d3.max_strength, 3, "dimension-3 max strength");
    out << c.detail.str();
    out << "    dim 2: " << d2.lattices << " lattices, " << d2.shells << " shells, "
        << d2.strength5_shells << " of strength 5; dim 3: " << d3.lattices << " lattices, "
        << d3.shells << " shells; elapsed " << seconds_since(t0) << " s\n";
    return c.failures == 0;
}

// 9. Ramanujan tau demo: Hecke relations and nonvanishing through 10^4.
bool criterion9(std::ostream& out) {
    Checker c;
    const int64_t N = 10000;
    QSeries delta24 = make_named(NamedForm::delta24, 2 * (N + 2));
    EigenformSpec tau = make_tau_spec(delta24);
    HeckeRelationReport rel = verify_hecke_relations(delta24, tau, N, 2);
    c.expect(rel.ok, "tau Hecke relations through 10^4 (" + rel.first_violation + ")");
    int64_t zeros = 0;
    for (int64_t m = 1; m <= N; ++m)
        if (integer_coefficient(delta24, m, 2) == 0) ++zeros;
    c.expect_eq(zeros, 0, "tau zeros through 10^4");
    out << c.detail.str();
    out << "    " << rel.coprime_pairs_checked << " coprime pairs, " << rel.prime_powers_checked
        << " prime powers\n";
    return c.failures == 0;
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);

    struct Entry {
        int id;
        const char* title;
        std::function<bool(std::ostream&)> run;
    };
    const std::vector<Entry> criteria = {
        {1, "golden series fixtures", criterion1},
        {2, "theta2^4/16 divisor identity through 2000", criterion2},
        {3, "Sturm certificates (thresholds 19 and 109)", criterion3},
        {4, "congruence lemmas through 2000", criterion4},
        {5, "Hecke algebra through 10^4", criterion5},
        {6, "theorem runs at 10^5 with 10^4 cross-check", criterion6},
        {7, "design geometry of the main shells", criterion7},
        {8, "reduced-Gram design search reproduction", criterion8},
        {9, "Ramanujan tau demo through 10^4", criterion9},
    };

    int failed = 0;
    for (const auto& entry : criteria) {
        if (only != 0 && entry.id != only) continue;
        std::ostringstream detail;
        bool ok = false;
        try {
            ok = entry.run(detail);
        } catch (const std::exception& e) {
            detail << "    unexpected exception: " << e.what() << "\n";
        }
        std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << entry.id << ": " << entry.title
                  << "\n"
                  << detail.str();
        if (!ok) ++failed;
    }
    return failed;
}
