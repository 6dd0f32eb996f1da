#pragma once

// Exact spherical t-design testing of shells. Design tests use only inner
// products through the Gegenbauer/Chebyshev kernel, so no coordinates ever
// leave the lattice; the dimension-2 harmonic route evaluates Re((x+iy)^j)
// in the Gaussian or Eisenstein ring, keeping every value rational.

#include "thetashell/arith.hpp"
#include "thetashell/lattice.hpp"
#include "thetashell/numeric.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace thetashell {

enum class QuadRing { gaussian, eisenstein };

// a + b*w with w^2 = -1 (gaussian) or w^2 = -w-1 (eisenstein, w = e^{2pi i/3}).
struct QuadraticFieldElement {
    Rational a;
    Rational b;
    QuadRing ring;

    QuadraticFieldElement(Rational a_, Rational b_, QuadRing r) : a(std::move(a_)), b(std::move(b_)), ring(r) {}

    // Re(w) is 0 for the Gaussian ring and -1/2 for the Eisenstein ring.
    Rational real_part() const {
        return ring == QuadRing::gaussian ? a : a - b / 2;
    }
    // The imaginary part is b*Im(w) with Im(w) != 0, so it vanishes iff b does.
    bool imag_vanishes() const { return b == 0; }
};

inline QuadraticFieldElement operator+(const QuadraticFieldElement& x, const QuadraticFieldElement& y) {
    if (x.ring != y.ring) throw std::invalid_argument("QuadraticFieldElement: ring mismatch");
    return {x.a + y.a, x.b + y.b, x.ring};
}

inline QuadraticFieldElement operator*(const QuadraticFieldElement& x, const QuadraticFieldElement& y) {
    if (x.ring != y.ring) throw std::invalid_argument("QuadraticFieldElement: ring mismatch");
    if (x.ring == QuadRing::gaussian)
        return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a, x.ring};
    // (a+bw)(c+dw) = ac - bd + (ad + bc - bd) w
    return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a - x.b * y.b, x.ring};
}

inline QuadraticFieldElement qf_pow(QuadraticFieldElement base, int64_t exp) {
    if (exp < 0) throw std::invalid_argument("qf_pow: negative exponent");
    QuadraticFieldElement result(Rational(1), Rational(0), base.ring);
    while (exp > 0) {
        if (exp & 1) result = result * base;
        exp >>= 1;
        if (exp > 0) base = base * base;
    }
    return result;
}

// Zonal kernel for S^{n-1}: Chebyshev T_j for n = 2 (the Gegenbauer parameter
// degenerates there; any positive multiple keeps the zero test intact),
// Gegenbauer C_j^{(n/2-1)} for n >= 3. Plain polynomial evaluation.
inline Rational gegenbauer_value(int n, int j, const Rational& u) {
    if (n < 2) throw std::invalid_argument("gegenbauer_value: dimension must be >= 2");
    if (j < 0) throw std::invalid_argument("gegenbauer_value: negative degree");
    if (j == 0) return Rational(1);
    if (n == 2) {
        Rational prev(1), cur = u;
        for (int k = 2; k <= j; ++k) {
            Rational next = 2 * u * cur - prev;
            prev = cur;
            cur = next;
        }
        return cur;
    }
    Rational lambda(n - 2, 2);
    Rational prev(1), cur = 2 * lambda * u;
    for (int k = 2; k <= j; ++k) {
        Rational next = (2 * u * (k + lambda - 1) * cur - (k + 2 * lambda - 2) * prev) / k;
        prev = cur;
        cur = next;
    }
    return cur;
}

// Sum over ordered pairs (x,y) of G_j(<x,y>/m). Nonnegative for every shell
// (the kernel is positive definite on the sphere); zero exactly when all
// degree-j harmonic sums vanish. Inner products are histogrammed first.
inline Rational pair_sum(const Shell& sh, int j) {
    if (sh.empty()) throw std::invalid_argument("pair_sum: empty shell");
    std::map<int64_t, int64_t> histogram;
    size_t n = sh.vectors.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k)
            ++histogram[inner(sh.lattice, sh.vectors[i], sh.vectors[k])];
    Rational total(0);
    for (const auto& [ip, count] : histogram)
        total += count * gegenbauer_value(sh.lattice.dim, j, Rational(ip, sh.norm));
    return total;
}

struct DesignReport {
    std::string lattice_tag;
    std::vector<int64_t> gram;
    int dim = 0;
    int64_t norm = 0;
    int64_t shell_size = 0;
    int tmax = 0;
    std::map<int, Rational> pair_sums;
    int strength = 0;
};

// Largest t <= tmax with pair sums 1..t all zero; all sums are reported.
inline DesignReport design_strength(const Shell& sh, int tmax = 12) {
    if (sh.empty()) throw std::invalid_argument("design_strength: empty shell");
    if (tmax < 1) throw std::invalid_argument("design_strength: tmax must be >= 1");
    DesignReport report;
    report.lattice_tag = sh.lattice.kind_tag;
    report.gram = sh.lattice.gram;
    report.dim = sh.lattice.dim;
    report.norm = sh.norm;
    report.shell_size = sh.size();
    report.tmax = tmax;

    std::map<int64_t, int64_t> histogram;
    size_t n = sh.vectors.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k)
            ++histogram[inner(sh.lattice, sh.vectors[i], sh.vectors[k])];

    bool unbroken = true;
    for (int j = 1; j <= tmax; ++j) {
        Rational total(0);
        for (const auto& [ip, count] : histogram)
            total += count * gegenbauer_value(sh.lattice.dim, j, Rational(ip, sh.norm));
        report.pair_sums[j] = total;
        if (unbroken) {
            if (total == 0)
                report.strength = j;
            else
                unbroken = false;
        }
    }
    return report;
}

namespace detail {

struct HarmonicAccumulator {
    QuadraticFieldElement sum;
    explicit HarmonicAccumulator(QuadRing ring) : sum(Rational(0), Rational(0), ring) {}
    void add_point(int64_t x, int64_t y, int64_t degree) {
        sum = sum + qf_pow(QuadraticFieldElement(Rational(x), Rational(y), sum.ring), degree);
    }
};

}  // namespace detail

// Sum of z^j over the shell, z running through the ring elements attached to
// the lattice points. Used by tests to cross-check harmonic_shell_sum via the
// generic shell enumerator.
inline Rational harmonic_sum_over_shell(const Shell& sh, int64_t degree, QuadRing ring) {
    detail::HarmonicAccumulator acc(ring);
    for (const auto& v : sh.vectors) acc.add_point(v[0], v[1], degree);
    if (!acc.sum.imag_vanishes())
        throw std::logic_error("harmonic_sum_over_shell: imaginary witness did not cancel");
    Rational re = acc.sum.real_part();
    if (ring == QuadRing::eisenstein) re *= int_pow(Integer(2), static_cast<unsigned>(degree / 2));
    return re;
}

// Harmonic-weighted shell sum a^{(P)}_m: degree 4 over Z^2 via Gaussian
// integers, degree 6 over A2 via the Eisenstein ring. The A2 point (a,b) maps
// to sqrt(2)(a + b w), squared modulus 2(a^2 - ab + b^2), so the sum is
// 2^{j/2} Re(sum (a+bw)^j) and stays rational. Solutions of the norm
// equation are enumerated directly in O(sqrt(m)).
inline Rational harmonic_shell_sum(LatticeKind kind, int64_t m, int degree) {
    if (m < 1) throw std::invalid_argument("harmonic_shell_sum: index must be >= 1");
    if (kind == LatticeKind::z2 && degree != 4)
        throw std::invalid_argument("harmonic_shell_sum: z2 supports degree 4 only");
    if (kind == LatticeKind::a2 && degree != 6)
        throw std::invalid_argument("harmonic_shell_sum: a2 supports degree 6 only");

    if (kind == LatticeKind::z2) {
        detail::HarmonicAccumulator acc(QuadRing::gaussian);
        int64_t r = isqrt64(m);
        for (int64_t x = -r; x <= r; ++x) {
            int64_t rem = m - x * x;
            int64_t y = isqrt64(rem);
            if (y * y != rem) continue;
            acc.add_point(x, y, degree);
            if (y != 0) acc.add_point(x, -y, degree);
        }
        if (!acc.sum.imag_vanishes())
            throw std::logic_error("harmonic_shell_sum: imaginary witness did not cancel");
        return acc.sum.real_part();
    }

    detail::HarmonicAccumulator acc(QuadRing::eisenstein);
    // a^2 - ab + b^2 = m  =>  (2b - a)^2 = 4m - 3a^2
    int64_t amax = isqrt64(4 * m / 3);
    for (int64_t a = -amax; a <= amax; ++a) {
        int64_t disc = 4 * m - 3 * a * a;
        if (disc < 0) continue;
        int64_t r = isqrt64(disc);
        if (r * r != disc) continue;
        for (int sgn = 0; sgn < (r == 0 ? 1 : 2); ++sgn) {
            int64_t twob = a + (sgn == 0 ? r : -r);
            if (twob % 2 != 0) continue;
            acc.add_point(a, twob / 2, degree);
        }
    }
    if (!acc.sum.imag_vanishes())
        throw std::logic_error("harmonic_shell_sum: imaginary witness did not cancel");
    return acc.sum.real_part() * int_pow(Integer(2), static_cast<unsigned>(degree / 2));
}

// Raw value of the harmonic sum on the first nonempty shell (m = 1); the
// normalized coefficients below divide by it so that a(1) = 1.
inline const Rational& harmonic_leading_value(LatticeKind kind) {
    static const Rational z2_lead = harmonic_shell_sum(LatticeKind::z2, 1, 4);
    static const Rational a2_lead = harmonic_shell_sum(LatticeKind::a2, 1, 6);
    return kind == LatticeKind::z2 ? z2_lead : a2_lead;
}

// Normalized weighted theta coefficient a(m) with a(1) = 1, computed from the
// shell harmonic sum. Always an integer for these two families.
inline Integer weighted_theta_coeff(LatticeKind kind, int64_t m) {
    int degree = kind == LatticeKind::z2 ? 4 : 6;
    Rational a = harmonic_shell_sum(kind, m, degree) / harmonic_leading_value(kind);
    if (!is_integer(a)) throw std::logic_error("weighted_theta_coeff: non-integer coefficient");
    return numerator(a);
}

}  // namespace thetashell
