#pragma once

// Integral lattices given by a Gram matrix, exact shell enumeration, and the
// reduced-Gram scan behind the dimension-2/3 design search. Enumeration uses
// exact rational LDL^T bounds (Fincke-Pohst); no floating point anywhere, so
// boundary vectors cannot be missed.

#include "thetashell/numeric.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace thetashell {

constexpr int kMaxLatticeDim = 8;

struct Lattice {
    int dim = 0;
    std::vector<int64_t> gram;  // row-major dim x dim
    std::string kind_tag;

    int64_t at(int i, int j) const { return gram[static_cast<size_t>(i) * dim + j]; }
};

namespace detail {

// Determinant by fraction-free Gaussian elimination (Bareiss).
inline Integer int_det(std::vector<Integer> m, int n) {
    Integer prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[static_cast<size_t>(k) * n + k] == 0) {
            int swap_row = -1;
            for (int i = k + 1; i < n; ++i)
                if (m[static_cast<size_t>(i) * n + k] != 0) { swap_row = i; break; }
            if (swap_row < 0) return 0;
            for (int j = 0; j < n; ++j)
                std::swap(m[static_cast<size_t>(k) * n + j], m[static_cast<size_t>(swap_row) * n + j]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                m[static_cast<size_t>(i) * n + j] =
                    (m[static_cast<size_t>(i) * n + j] * m[static_cast<size_t>(k) * n + k] -
                     m[static_cast<size_t>(i) * n + k] * m[static_cast<size_t>(k) * n + j]) / prev;
            }
        prev = m[static_cast<size_t>(k) * n + k];
    }
    return sign * m[static_cast<size_t>(n - 1) * n + (n - 1)];
}

inline Integer leading_minor(const Lattice& lat, int k) {
    std::vector<Integer> m(static_cast<size_t>(k) * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) m[static_cast<size_t>(i) * k + j] = lat.at(i, j);
    return int_det(std::move(m), k);
}

}  // namespace detail

inline Integer lattice_determinant(const Lattice& lat) {
    return detail::leading_minor(lat, lat.dim);
}

inline Lattice make_lattice(const std::vector<std::vector<int64_t>>& gram, std::string kind_tag = "") {
    int n = static_cast<int>(gram.size());
    if (n < 1 || n > kMaxLatticeDim)
        throw std::invalid_argument("make_lattice: dimension must be 1..8");
    Lattice lat;
    lat.dim = n;
    lat.kind_tag = std::move(kind_tag);
    lat.gram.resize(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(gram[i].size()) != n)
            throw std::invalid_argument("make_lattice: matrix not square");
        for (int j = 0; j < n; ++j) lat.gram[static_cast<size_t>(i) * n + j] = gram[i][j];
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j)
            if (lat.at(i, j) != lat.at(j, i))
                throw std::domain_error("make_lattice: matrix not symmetric");
    for (int k = 1; k <= n; ++k)
        if (detail::leading_minor(lat, k) <= 0)
            throw std::domain_error("make_lattice: matrix not positive definite");
    return lat;
}

inline Lattice lattice_zn(int n) {
    std::vector<std::vector<int64_t>> g(static_cast<size_t>(n), std::vector<int64_t>(static_cast<size_t>(n), 0));
    for (int i = 0; i < n; ++i) g[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    return make_lattice(g, n == 2 ? "z2" : "z" + std::to_string(n));
}

inline Lattice lattice_a2() {
    return make_lattice({{2, -1}, {-1, 2}}, "a2");
}

inline int64_t inner(const Lattice& lat, const std::vector<int64_t>& u, const std::vector<int64_t>& v) {
    if (static_cast<int>(u.size()) != lat.dim || static_cast<int>(v.size()) != lat.dim)
        throw std::invalid_argument("inner: dimension mismatch");
    int64_t s = 0;
    for (int i = 0; i < lat.dim; ++i)
        for (int j = 0; j < lat.dim; ++j) s += u[static_cast<size_t>(i)] * lat.at(i, j) * v[static_cast<size_t>(j)];
    return s;
}

struct Shell {
    Lattice lattice;
    int64_t norm = 0;
    std::vector<std::vector<int64_t>> vectors;

    bool empty() const { return vectors.empty(); }
    int64_t size() const { return static_cast<int64_t>(vectors.size()); }
};

namespace detail {

struct LdlDecomposition {
    int n = 0;
    std::vector<Rational> d;                // positive pivots
    std::vector<std::vector<Rational>> u;   // unit upper-triangular factors
};

inline LdlDecomposition ldl(const Lattice& lat) {
    int n = lat.dim;
    LdlDecomposition out;
    out.n = n;
    out.d.assign(static_cast<size_t>(n), Rational(0));
    out.u.assign(static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(n), Rational(0)));
    std::vector<std::vector<Rational>> a(static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[static_cast<size_t>(i)][static_cast<size_t>(j)] = lat.at(i, j);
    for (int i = 0; i < n; ++i) {
        out.d[static_cast<size_t>(i)] = a[static_cast<size_t>(i)][static_cast<size_t>(i)];
        for (int j = i + 1; j < n; ++j)
            out.u[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                a[static_cast<size_t>(i)][static_cast<size_t>(j)] / a[static_cast<size_t>(i)][static_cast<size_t>(i)];
        for (int k = i + 1; k < n; ++k)
            for (int l = i + 1; l < n; ++l)
                a[static_cast<size_t>(k)][static_cast<size_t>(l)] -=
                    a[static_cast<size_t>(k)][static_cast<size_t>(i)] *
                    a[static_cast<size_t>(i)][static_cast<size_t>(l)] /
                    a[static_cast<size_t>(i)][static_cast<size_t>(i)];
    }
    return out;
}

// Integer range of x with d*(x + c)^2 <= budget, all exact.
inline bool level_range(const Rational& c, const Rational& d, const Rational& budget,
                        Integer& lo, Integer& hi) {
    if (budget < 0) return false;
    Rational s = budget / d;  // (x+c)^2 <= s
    Integer cn = numerator(c), cd = denominator(c);
    // (cd*x + cn)^2 <= s*cd^2, LHS integral
    Integer cap = floor_div(numerator(s) * cd * cd, denominator(s));
    if (cap < 0) return false;
    Integer b = isqrt(cap);
    lo = ceil_div(-cn - b, cd);
    hi = floor_div(-cn + b, cd);
    return lo <= hi;
}

inline void enumerate_level(const LdlDecomposition& dec, int level, const Rational& budget,
                            std::vector<int64_t>& coords, std::vector<std::vector<int64_t>>& out) {
    Rational c(0);
    for (int j = level + 1; j < dec.n; ++j)
        c += dec.u[static_cast<size_t>(level)][static_cast<size_t>(j)] * coords[static_cast<size_t>(j)];
    const Rational& d = dec.d[static_cast<size_t>(level)];
    if (level == 0) {
        // Solve d*(x + c)^2 == budget exactly.
        Rational s = budget / d;
        Integer cn = numerator(c), cd = denominator(c);
        Rational target = s * cd * cd;  // (cd*x + cn)^2
        if (!is_integer(target)) return;
        Integer t = numerator(target);
        if (t < 0 || !is_perfect_square(t)) return;
        Integer r = isqrt(t);
        for (int sgn = 0; sgn < (r == 0 ? 1 : 2); ++sgn) {
            Integer num = (sgn == 0 ? r : -r) - cn;
            if (num % cd != 0) continue;
            coords[0] = static_cast<int64_t>(num / cd);
            out.push_back(coords);
        }
        return;
    }
    Integer lo, hi;
    if (!level_range(c, d, budget, lo, hi)) return;
    for (Integer x = lo; x <= hi; ++x) {
        coords[static_cast<size_t>(level)] = static_cast<int64_t>(x);
        Rational step = Rational(x) + c;
        enumerate_level(dec, level - 1, budget - d * step * step, coords, out);
    }
}

}  // namespace detail

// Complete, duplicate-free list of lattice vectors of norm m. An empty shell
// is a value, not an error.
inline Shell shell(const Lattice& lat, int64_t m) {
    if (m < 1) throw std::invalid_argument("shell: norm must be >= 1");
    Shell sh;
    sh.lattice = lat;
    sh.norm = m;
    detail::LdlDecomposition dec = detail::ldl(lat);
    std::vector<int64_t> coords(static_cast<size_t>(lat.dim), 0);
    detail::enumerate_level(dec, lat.dim - 1, Rational(m), coords, sh.vectors);
    std::sort(sh.vectors.begin(), sh.vectors.end());
    return sh;
}

namespace detail {

// Lexicographically smallest Gram over signed permutations that keep the
// diagonal non-decreasing.
inline std::vector<int64_t> canonical_gram3(const std::array<std::array<int64_t, 3>, 3>& g) {
    static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    std::vector<int64_t> best;
    for (const auto& perm : perms) {
        for (int signs = 0; signs < 8; ++signs) {
            int sg[3] = {(signs & 1) ? -1 : 1, (signs & 2) ? -1 : 1, (signs & 4) ? -1 : 1};
            std::vector<int64_t> cand(9);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    cand[static_cast<size_t>(i) * 3 + j] = sg[i] * sg[j] * g[static_cast<size_t>(perm[i])][static_cast<size_t>(perm[j])];
            if (cand[0] > cand[4] || cand[4] > cand[8]) continue;
            if (best.empty() || cand < best) best = cand;
        }
    }
    return best;
}

}  // namespace detail

// All Minkowski-reduced integral Gram matrices of determinant <= max_disc,
// deduplicated within the reduced normal form. 2D: 0 <= 2b <= a <= c.
// 3D: 0 < a <= b <= c, 2|t| <= a, 2|s| <= a, 2|r| <= b, and
// a + b + 2(t*xy + s*x + r*y) >= 0 for x, y in {+-1}, then canonicalized
// under signed permutations.
inline std::vector<Lattice> enumerate_reduced_grams(int dim, int64_t max_disc) {
    if (dim != 2 && dim != 3) throw std::invalid_argument("enumerate_reduced_grams: dim must be 2 or 3");
    if (max_disc < 1) throw std::invalid_argument("enumerate_reduced_grams: max_disc must be >= 1");
    std::vector<Lattice> out;
    if (dim == 2) {
        for (int64_t a = 1; 3 * a * a <= 4 * max_disc; ++a)
            for (int64_t b = 0; 2 * b <= a; ++b)
                for (int64_t c = a; a * c - b * b <= max_disc; ++c) {
                    if (a * c - b * b < 1) continue;
                    out.push_back(make_lattice({{a, b}, {b, c}}));
                }
    } else {
        std::set<std::vector<int64_t>> seen;
        // Minkowski: a*b*c <= 2*det for reduced ternary forms; scan with margin.
        for (int64_t a = 1; a * a * a <= 4 * max_disc; ++a)
            for (int64_t b = a; a * b * b <= 4 * max_disc; ++b)
                for (int64_t c = b; a * b * c <= 4 * max_disc; ++c)
                    for (int64_t t = -a / 2; 2 * t <= a; ++t)
                        for (int64_t s = -a / 2; 2 * s <= a; ++s)
                            for (int64_t r = -b / 2; 2 * r <= b; ++r) {
                                bool corner_ok = true;
                                for (int x = -1; x <= 1 && corner_ok; x += 2)
                                    for (int y = -1; y <= 1 && corner_ok; y += 2)
                                        if (a + b + 2 * (t * x * y + s * x + r * y) < 0) corner_ok = false;
                                if (!corner_ok) continue;
                                std::array<std::array<int64_t, 3>, 3> g{{{a, t, s}, {t, b, r}, {s, r, c}}};
                                // positive definite & determinant cap, exact
                                if (a * b - t * t <= 0) continue;
                                Integer det = Integer(a) * (Integer(b) * c - Integer(r) * r) -
                                              Integer(t) * (Integer(t) * c - Integer(r) * s) +
                                              Integer(s) * (Integer(t) * r - Integer(b) * s);
                                if (det <= 0 || det > max_disc) continue;
                                std::vector<int64_t> canon = detail::canonical_gram3(g);
                                if (!seen.insert(canon).second) continue;
                                out.push_back(make_lattice({{canon[0], canon[1], canon[2]},
                                                            {canon[3], canon[4], canon[5]},
                                                            {canon[6], canon[7], canon[8]}}));
                            }
    }
    std::sort(out.begin(), out.end(), [](const Lattice& x, const Lattice& y) {
        Integer dx = lattice_determinant(x), dy = lattice_determinant(y);
        if (dx != dy) return dx < dy;
        return x.gram < y.gram;
    });
    return out;
}

}  // namespace thetashell
