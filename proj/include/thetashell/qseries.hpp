#pragma once

// Exact truncated q-expansions with q = e^{pi i z}. Exponents are stored in
// units of q^(1/12), the smallest unit that keeps the eta prefactor (1/12)
// and the theta2 prefactor (1/4) integral. A series of order N is exact for
// every unit exponent e with 0 <= e < 12*N; nothing past the truncation
// bound is ever extrapolated.

#include "thetashell/arith.hpp"
#include "thetashell/numeric.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace thetashell {

constexpr int64_t kUnitsPerQ = 12;

class QSeries {
  public:
    struct Term {
        int64_t unit_exp;
        Rational coeff;
    };

    QSeries() = default;
    QSeries(int64_t order, std::string label) : order_(order), label_(std::move(label)) {
        if (order < 1) throw std::invalid_argument("QSeries: order must be >= 1");
    }

    int64_t order() const { return order_; }
    int64_t unit_bound() const { return order_ * kUnitsPerQ; }
    const std::string& label() const { return label_; }
    void set_label(std::string label) { label_ = std::move(label); }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Terms must be delivered sorted with unique exponents in [0, bound).
    void set_terms(std::vector<Term> terms) {
        for (size_t i = 0; i < terms.size(); ++i) {
            if (terms[i].unit_exp < 0 || terms[i].unit_exp >= unit_bound())
                throw std::logic_error("QSeries: exponent outside truncation window");
            if (i > 0 && terms[i - 1].unit_exp >= terms[i].unit_exp)
                throw std::logic_error("QSeries: terms not strictly sorted");
        }
        terms_ = std::move(terms);
    }

    // Coefficient at unit exponent u; zero when absent, throws past the bound.
    Rational coeff_at_units(int64_t u) const {
        if (u < 0 || u >= unit_bound())
            throw std::out_of_range("QSeries: exponent outside truncation range");
        auto it = std::lower_bound(terms_.begin(), terms_.end(), u,
                                   [](const Term& t, int64_t v) { return t.unit_exp < v; });
        if (it != terms_.end() && it->unit_exp == u) return it->coeff;
        return Rational(0);
    }

    bool integral_support() const {
        for (const auto& t : terms_)
            if (t.unit_exp % kUnitsPerQ != 0) return false;
        return true;
    }

    bool integer_coefficients() const {
        for (const auto& t : terms_)
            if (!is_integer(t.coeff)) return false;
        return true;
    }

  private:
    int64_t order_ = 1;
    std::string label_;
    std::vector<Term> terms_;
};

namespace detail {

inline QSeries from_map(const std::map<int64_t, Rational>& m, int64_t order, std::string label) {
    QSeries s(order, std::move(label));
    std::vector<QSeries::Term> terms;
    terms.reserve(m.size());
    for (const auto& [e, c] : m)
        if (c != 0) terms.push_back({e, c});
    s.set_terms(std::move(terms));
    return s;
}

// Least common multiple of the coefficient denominators.
inline Integer denominator_lcm(const QSeries& s) {
    Integer l = 1;
    for (const auto& t : s.terms()) {
        Integer d = denominator(t.coeff);
        l = boost::multiprecision::lcm(l, d);
    }
    return l;
}

inline Integer max_abs_scaled_numerator(const QSeries& s, const Integer& den) {
    Integer m = 0;
    for (const auto& t : s.terms()) {
        Integer v = boost::multiprecision::abs(numerator(t.coeff) * (den / denominator(t.coeff)));
        if (v > m) m = v;
    }
    return m;
}

}  // namespace detail

inline QSeries add(const QSeries& a, const QSeries& b, int64_t order = 0);
inline QSeries sub(const QSeries& a, const QSeries& b, int64_t order = 0);
inline QSeries mul(const QSeries& a, const QSeries& b, int64_t order = 0);
inline QSeries scale(const QSeries& a, const Rational& c, int64_t order = 0);

inline QSeries add(const QSeries& a, const QSeries& b, int64_t order) {
    int64_t justified = std::min(a.order(), b.order());
    if (order == 0) order = justified;
    if (order > justified)
        throw std::invalid_argument("add: requested order exceeds operand truncations");
    std::map<int64_t, Rational> acc;
    int64_t bound = order * kUnitsPerQ;
    for (const auto& t : a.terms())
        if (t.unit_exp < bound) acc[t.unit_exp] += t.coeff;
    for (const auto& t : b.terms())
        if (t.unit_exp < bound) acc[t.unit_exp] += t.coeff;
    return detail::from_map(acc, order, "(" + a.label() + ")+(" + b.label() + ")");
}

inline QSeries sub(const QSeries& a, const QSeries& b, int64_t order) {
    QSeries s = add(a, scale(b, Rational(-1)), order);
    s.set_label("(" + a.label() + ")-(" + b.label() + ")");
    return s;
}

inline QSeries scale(const QSeries& a, const Rational& c, int64_t order) {
    if (order == 0) order = a.order();
    if (order > a.order())
        throw std::invalid_argument("scale: requested order exceeds operand truncation");
    std::map<int64_t, Rational> acc;
    int64_t bound = order * kUnitsPerQ;
    for (const auto& t : a.terms())
        if (t.unit_exp < bound && c != 0) acc[t.unit_exp] = t.coeff * c;
    return detail::from_map(acc, order, rational_str(c) + "*(" + a.label() + ")");
}

// Schoolbook convolution over the stored sparse support, accumulating into a
// dense array indexed by unit exponent. Coefficients are scaled to integers
// first; an int64 accumulator is used whenever the worst-case magnitude
// provably fits, otherwise arbitrary precision.
inline QSeries mul(const QSeries& a, const QSeries& b, int64_t order) {
    int64_t justified = std::min(a.order(), b.order());
    if (order == 0) order = justified;
    if (order > justified)
        throw std::invalid_argument("mul: requested order exceeds operand truncations");
    int64_t bound = order * kUnitsPerQ;

    Integer da = detail::denominator_lcm(a);
    Integer db = detail::denominator_lcm(b);
    struct ITerm { int64_t e; Integer c; };
    std::vector<ITerm> ta, tb;
    ta.reserve(a.terms().size());
    tb.reserve(b.terms().size());
    for (const auto& t : a.terms())
        if (t.unit_exp < bound) ta.push_back({t.unit_exp, numerator(t.coeff) * (da / denominator(t.coeff))});
    for (const auto& t : b.terms())
        if (t.unit_exp < bound) tb.push_back({t.unit_exp, numerator(t.coeff) * (db / denominator(t.coeff))});
    if (ta.size() > tb.size()) std::swap(ta, tb);  // outer loop over the shorter side

    Integer maxa = 0, maxb = 0;
    for (const auto& t : ta) maxa = std::max(maxa, Integer(boost::multiprecision::abs(t.c)));
    for (const auto& t : tb) maxb = std::max(maxb, Integer(boost::multiprecision::abs(t.c)));
    Integer worst = maxa * maxb * Integer(ta.size());

    Integer den = da * db;
    std::string label = "(" + a.label() + ")*(" + b.label() + ")";
    std::map<int64_t, Rational> acc;

    if (worst < Integer(int64_t(1) << 62)) {
        std::vector<int64_t> dense(static_cast<size_t>(bound), 0);
        for (const auto& u : ta) {
            int64_t cu = static_cast<int64_t>(u.c);
            if (cu == 0) continue;
            for (const auto& v : tb) {
                int64_t e = u.e + v.e;
                if (e >= bound) break;
                dense[static_cast<size_t>(e)] += cu * static_cast<int64_t>(v.c);
            }
        }
        for (int64_t e = 0; e < bound; ++e)
            if (dense[static_cast<size_t>(e)] != 0) acc[e] = Rational(Integer(dense[static_cast<size_t>(e)]), den);
    } else {
        std::vector<Integer> dense(static_cast<size_t>(bound));
        for (const auto& u : ta) {
            if (u.c == 0) continue;
            for (const auto& v : tb) {
                int64_t e = u.e + v.e;
                if (e >= bound) break;
                dense[static_cast<size_t>(e)] += u.c * v.c;
            }
        }
        for (int64_t e = 0; e < bound; ++e)
            if (dense[static_cast<size_t>(e)] != 0) acc[e] = Rational(dense[static_cast<size_t>(e)], den);
    }
    return detail::from_map(acc, order, label);
}

namespace detail {

inline QSeries pow_trunc(const QSeries& base, int64_t exp, int64_t order) {
    std::map<int64_t, Rational> one{{0, Rational(1)}};
    QSeries result = from_map(one, order, "1");
    if (exp == 0) return result;
    QSeries sq = base;
    bool first = true;
    int64_t e = exp;
    while (e > 0) {
        if (e & 1) {
            result = first ? sq : mul(result, sq, order);
            first = false;
        }
        e >>= 1;
        if (e > 0) sq = mul(sq, sq, order);
    }
    return result;
}

// Euler product prod_{m>=1} (1 - x^m) via the pentagonal number theorem,
// where one power of x spans `step` units.
inline QSeries euler_product(int64_t step, int64_t order) {
    int64_t bound = order * kUnitsPerQ;
    std::map<int64_t, Rational> acc;
    acc[0] = 1;
    for (int64_t k = 1;; ++k) {
        int64_t g1 = step * (k * (3 * k - 1) / 2);
        int64_t g2 = step * (k * (3 * k + 1) / 2);
        if (g1 >= bound && g2 >= bound) break;
        Rational sign((k % 2 == 1) ? -1 : 1);
        if (g1 < bound) acc[g1] += sign;
        if (g2 < bound) acc[g2] += sign;
    }
    return from_map(acc, order, "euler");
}

}  // namespace detail

// theta_kind(dilation*z)^power. Unit exponents per factor: 3*d*(2m+1)^2 for
// theta2, 12*d*m^2 for theta3/theta4.
inline QSeries make_theta(int kind, int64_t dilation, int64_t power, int64_t order) {
    if (kind != 2 && kind != 3 && kind != 4) throw std::invalid_argument("make_theta: kind must be 2, 3 or 4");
    if (order < 1) throw std::invalid_argument("make_theta: order must be >= 1");
    if (dilation < 1) throw std::invalid_argument("make_theta: dilation must be >= 1");
    if (power < 0) throw std::invalid_argument("make_theta: negative power");
    int64_t bound = order * kUnitsPerQ;
    std::map<int64_t, Rational> base;
    if (kind == 2) {
        for (int64_t n = 0;; ++n) {
            int64_t e = 3 * dilation * (2 * n + 1) * (2 * n + 1);
            if (e >= bound) break;
            base[e] = 2;
        }
    } else {
        base[0] = 1;
        for (int64_t m = 1;; ++m) {
            int64_t e = 12 * dilation * m * m;
            if (e >= bound) break;
            base[e] = (kind == 4 && m % 2 == 1) ? -2 : 2;
        }
    }
    QSeries result = detail::pow_trunc(detail::from_map(base, order, "theta"), power, order);
    std::ostringstream label;
    label << "theta" << kind << "(" << dilation << "z)^" << power;
    result.set_label(label.str());
    return result;
}

// prod_i eta(d_i z)^{p_i}; each factor eta(dz) contributes a q^{d/12} prefactor.
inline QSeries make_eta_product(const std::vector<std::pair<int64_t, int64_t>>& factors, int64_t order) {
    if (factors.empty()) throw std::invalid_argument("make_eta_product: empty factor list");
    if (order < 1) throw std::invalid_argument("make_eta_product: order must be >= 1");
    int64_t bound = order * kUnitsPerQ;
    int64_t lead = 0;
    QSeries prod;
    bool first = true;
    std::ostringstream label;
    for (const auto& [d, p] : factors) {
        if (d < 1 || p < 1) throw std::invalid_argument("make_eta_product: dilation and power must be >= 1");
        lead += d * p;
        QSeries piece = detail::pow_trunc(detail::euler_product(24 * d, order), p, order);
        prod = first ? piece : mul(prod, piece, order);
        if (!first) label << "*";
        first = false;
        label << "eta(" << d << "z)^" << p;
    }
    if (lead >= bound)
        throw std::invalid_argument("make_eta_product: leading exponent at or beyond truncation");
    std::vector<QSeries::Term> shifted;
    for (const auto& t : prod.terms()) {
        int64_t e = t.unit_exp + lead;
        if (e < bound) shifted.push_back({e, t.coeff});
    }
    QSeries result(order, label.str());
    result.set_terms(std::move(shifted));
    return result;
}

enum class NamedForm { phi, delta8, delta12, delta24, e4, e6, theta_z2, theta_a2 };

inline const char* named_form_name(NamedForm f) {
    switch (f) {
        case NamedForm::phi: return "phi";
        case NamedForm::delta8: return "delta8";
        case NamedForm::delta12: return "delta12";
        case NamedForm::delta24: return "delta24";
        case NamedForm::e4: return "e4";
        case NamedForm::e6: return "e6";
        case NamedForm::theta_z2: return "theta_z2";
        case NamedForm::theta_a2: return "theta_a2";
    }
    return "?";
}

inline NamedForm named_form_from_string(const std::string& s) {
    if (s == "phi") return NamedForm::phi;
    if (s == "delta8") return NamedForm::delta8;
    if (s == "delta12") return NamedForm::delta12;
    if (s == "delta24") return NamedForm::delta24;
    if (s == "e4") return NamedForm::e4;
    if (s == "e6") return NamedForm::e6;
    if (s == "theta_z2") return NamedForm::theta_z2;
    if (s == "theta_a2") return NamedForm::theta_a2;
    throw std::invalid_argument("unknown named form: " + s);
}

namespace detail {

// Eisenstein series from divisor sums, support on q^{2m}.
inline QSeries eisenstein(int64_t order, int sigma_k, int64_t scale_c, const std::string& label) {
    int64_t bound = order * kUnitsPerQ;
    std::map<int64_t, Rational> acc;
    acc[0] = 1;
    for (int64_t m = 1; 24 * m < bound; ++m)
        acc[24 * m] = Rational(Integer(scale_c) * divisor_sigma(sigma_k, m));
    return from_map(acc, order, label);
}

inline void assert_finalized(const QSeries& s) {
    if (!s.integral_support() || !s.integer_coefficients())
        throw std::logic_error("named form failed integrality check: " + s.label());
}

}  // namespace detail

inline QSeries make_named(NamedForm name, int64_t order) {
    if (order < 1) throw std::invalid_argument("make_named: order must be >= 1");
    QSeries s;
    switch (name) {
        case NamedForm::phi:
            s = sub(make_theta(4, 1, 4, order), make_theta(2, 1, 4, order));
            break;
        case NamedForm::delta8:
            s = scale(mul(make_theta(2, 1, 4, order), make_theta(4, 1, 4, order)), Rational(1, 16));
            break;
        case NamedForm::delta12:
            s = make_eta_product({{1, 6}, {3, 6}}, order);
            break;
        case NamedForm::delta24:
            s = make_eta_product({{1, 24}}, order);
            break;
        case NamedForm::e4:
            s = detail::eisenstein(order, 3, 240, "e4");
            break;
        case NamedForm::e6:
            s = detail::eisenstein(order, 5, -504, "e6");
            break;
        case NamedForm::theta_z2:
            s = make_theta(3, 1, 2, order);
            break;
        case NamedForm::theta_a2:
            s = add(mul(make_theta(3, 2, 1, order), make_theta(3, 6, 1, order)),
                    mul(make_theta(2, 2, 1, order), make_theta(2, 6, 1, order)));
            break;
    }
    detail::assert_finalized(s);
    std::string recipe = s.label();
    s.set_label(std::string(named_form_name(name)) + " = " + recipe);
    return s;
}

// Exact coefficient of q^m; m must have denominator dividing 12 and lie in
// [0, order).
inline Rational coefficient_at(const QSeries& s, const Rational& m) {
    Rational units = m * kUnitsPerQ;
    if (!is_integer(units))
        throw std::invalid_argument("coefficient_at: exponent denominator must divide 12");
    Integer u = numerator(units);
    if (u < 0 || u >= s.unit_bound())
        throw std::out_of_range("coefficient_at: exponent outside truncation range");
    return s.coeff_at_units(static_cast<int64_t>(u));
}

inline Rational coefficient_at(const QSeries& s, int64_t m) {
    return coefficient_at(s, Rational(m));
}

// Integer coefficient at arithmetic index m of a series supported on
// q^{stride*m}; throws if the coefficient is not an integer.
inline Integer integer_coefficient(const QSeries& s, int64_t m, int64_t stride = 1) {
    Rational c = coefficient_at(s, Rational(m * stride));
    if (!is_integer(c)) throw std::domain_error("integer_coefficient: non-integer coefficient");
    return numerator(c);
}

// Multiply the coefficient of q^{stride*n} by chi(n). The support must be
// integral and aligned to the stride. Quadratic twisting sends
// M_k(Gamma0(M), chi0) to M_k(Gamma0(M*cond^2), chi0); the label records it.
inline QSeries twist(const QSeries& s, Character chi, int64_t stride) {
    if (stride < 1) throw std::invalid_argument("twist: stride must be >= 1");
    std::vector<QSeries::Term> terms;
    for (const auto& t : s.terms()) {
        if (t.unit_exp % kUnitsPerQ != 0)
            throw std::domain_error("twist: support not integral");
        int64_t qe = t.unit_exp / kUnitsPerQ;
        if (qe % stride != 0)
            throw std::domain_error("twist: support not aligned to stride");
        int v = char_value(chi, qe / stride);
        if (v != 0) terms.push_back({t.unit_exp, t.coeff * v});
    }
    int64_t cond = character_conductor(chi);
    QSeries out(s.order(), s.label() + " | twist " + character_name(chi) + " stride " +
                               std::to_string(stride) + " (level x" + std::to_string(cond * cond) + ")");
    out.set_terms(std::move(terms));
    return out;
}

// Remove the constant term (used before twisting forms with a rational
// constant; the twist kills index 0 anyway).
inline QSeries drop_constant_term(const QSeries& s) {
    std::vector<QSeries::Term> terms;
    for (const auto& t : s.terms())
        if (t.unit_exp != 0) terms.push_back(t);
    QSeries out(s.order(), s.label() + " - const");
    out.set_terms(std::move(terms));
    return out;
}

}  // namespace thetashell
