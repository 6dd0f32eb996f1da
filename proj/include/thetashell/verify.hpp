#pragma once

// End-to-end theorem runs and the small-lattice design search.
//
// verify_theorem checks, for every m up to the bound with a nonempty shell,
// that the weighted theta coefficient a(m) is nonzero. The shell harmonic sum
// is the primary route (O(sqrt m) per index); the series convolution and the
// Hecke-built coefficient are independent cross-checks. A vanishing
// coefficient or any route disagreement would falsify a proved theorem, so it
// aborts with a forensic report rather than logging a warning.

#include "thetashell/arith.hpp"
#include "thetashell/design.hpp"
#include "thetashell/hecke.hpp"
#include "thetashell/lattice.hpp"
#include "thetashell/numeric.hpp"
#include "thetashell/parallel.hpp"
#include "thetashell/qseries.hpp"

#include <chrono>
#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace thetashell {

struct DesignSampleResult {
    int64_t norm = 0;
    int64_t shell_size = 0;
    int strength = 0;
};

struct TheoremRunReport {
    LatticeKind kind = LatticeKind::z2;
    int64_t bound = 0;
    int64_t series_crosscheck_bound = 0;
    int64_t indices_checked = 0;
    int64_t nonempty_shells = 0;
    int64_t zero_coefficients_found = 0;
    int64_t series_compared = 0;
    int64_t series_agreed = 0;
    int64_t hecke_compared = 0;
    int64_t hecke_agreed = 0;
    int expected_strength = 0;
    std::vector<DesignSampleResult> design_samples;
    std::vector<std::string> failures;
    int64_t wall_ms = 0;
};

class VerificationError : public std::runtime_error {
  public:
    VerificationError(std::string what, TheoremRunReport report)
        : std::runtime_error(std::move(what)), report(std::move(report)) {}
    TheoremRunReport report;
};

struct VerifyOptions {
    int64_t design_samples = 25;
    uint64_t seed = 12345;
    int jobs = 1;
};

inline const char* lattice_kind_name(LatticeKind kind) {
    return kind == LatticeKind::z2 ? "z2" : "a2";
}

inline TheoremRunReport verify_theorem(LatticeKind kind, int64_t N, int64_t series_crosscheck_bound,
                                       VerifyOptions opt = {}) {
    if (N < 1) throw std::invalid_argument("verify_theorem: bound must be >= 1");
    if (series_crosscheck_bound > N)
        throw std::invalid_argument("verify_theorem: crosscheck bound exceeds N");
    auto t0 = std::chrono::steady_clock::now();

    TheoremRunReport report;
    report.kind = kind;
    report.bound = N;
    report.series_crosscheck_bound = series_crosscheck_bound;
    report.expected_strength = kind == LatticeKind::z2 ? 3 : 5;
    int64_t stride = kind == LatticeKind::z2 ? 1 : 2;

    QSeries series;
    if (series_crosscheck_bound >= 1) {
        if (kind == LatticeKind::z2)
            series = mul(make_named(NamedForm::delta8, series_crosscheck_bound + 1),
                         make_named(NamedForm::theta_z2, series_crosscheck_bound + 1));
        else
            series = mul(make_named(NamedForm::delta12, 2 * (series_crosscheck_bound + 1)),
                         make_named(NamedForm::theta_a2, 2 * (series_crosscheck_bound + 1)));
    }

    // Primary route: shell harmonic sums, in parallel over m.
    std::vector<char> nonempty(static_cast<size_t>(N) + 1, 0);
    std::vector<Integer> shell_coeff(static_cast<size_t>(N) + 1);
    parallel_for(1, N + 1, opt.jobs, [&](int64_t m) {
        if (!is_shell_nonempty(kind, m)) return;
        nonempty[static_cast<size_t>(m)] = 1;
        shell_coeff[static_cast<size_t>(m)] = weighted_theta_coeff(kind, m);
    });

    EigenformSpec hecke_spec = spec_from_shells(kind);
    std::vector<int64_t> nonempty_list;
    for (int64_t m = 1; m <= N; ++m) {
        ++report.indices_checked;
        if (!nonempty[static_cast<size_t>(m)]) continue;
        ++report.nonempty_shells;
        nonempty_list.push_back(m);
        const Integer& a = shell_coeff[static_cast<size_t>(m)];
        if (a == 0) {
            ++report.zero_coefficients_found;
            std::ostringstream os;
            os << "vanishing coefficient on nonempty shell: m = " << m;
            report.failures.push_back(os.str());
        }
        if (m <= series_crosscheck_bound) {
            ++report.series_compared;
            Integer from_series = integer_coefficient(series, m, stride);
            if (from_series == a) {
                ++report.series_agreed;
            } else {
                std::ostringstream os;
                os << "route disagreement at m = " << m << ": shell sum " << a << ", series "
                   << from_series;
                report.failures.push_back(os.str());
            }
        }
        ++report.hecke_compared;
        Integer from_hecke = eigen_coeff(hecke_spec, m);
        if (from_hecke == a) {
            ++report.hecke_agreed;
        } else {
            std::ostringstream os;
            os << "route disagreement at m = " << m << ": shell sum " << a << ", Hecke-built "
               << from_hecke;
            report.failures.push_back(os.str());
        }
    }

    // Sampled geometry: the design strength of the sampled shells must be
    // exactly 3 (Z2) resp. 5 (A2).
    Lattice lat = kind == LatticeKind::z2 ? lattice_zn(2) : lattice_a2();
    std::mt19937_64 rng(opt.seed);
    int64_t samples = std::min<int64_t>(opt.design_samples, static_cast<int64_t>(nonempty_list.size()));
    for (int64_t i = 0; i < samples; ++i) {
        int64_t m = nonempty_list[rng() % nonempty_list.size()];
        int64_t norm = kind == LatticeKind::z2 ? m : 2 * m;
        DesignReport dr = design_strength(shell(lat, norm), report.expected_strength + 1);
        report.design_samples.push_back({norm, dr.shell_size, dr.strength});
        if (dr.strength != report.expected_strength) {
            std::ostringstream os;
            os << "design strength " << dr.strength << " != " << report.expected_strength
               << " at norm " << norm;
            report.failures.push_back(os.str());
        }
    }

    report.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - t0).count();
    if (!report.failures.empty())
        throw VerificationError("verify_theorem(" + std::string(lattice_kind_name(kind)) +
                                    "): " + report.failures.front(),
                                report);
    return report;
}

struct SearchResult {
    int dim = 0;
    std::vector<int64_t> gram;
    int64_t norm = 0;
    int64_t size = 0;
    int strength = 0;
    std::string flags;
};

struct SearchReport {
    int dim = 0;
    int64_t max_disc = 0;
    int64_t max_norm = 0;
    int tmax = 0;
    int64_t lattices = 0;
    int64_t shells = 0;
    int max_strength = 0;
    int64_t strength5_shells = 0;
    bool every_strength5_shell_size6 = true;
    std::vector<SearchResult> results;
    int64_t wall_ms = 0;
};

// Every nonempty shell of every reduced Gram in the envelope, with its exact
// design strength. The envelope itself is recorded so runs stay comparable.
inline SearchReport design_search(int dim, int64_t max_disc, int64_t max_norm, int tmax = 12,
                                  int jobs = 1) {
    auto t0 = std::chrono::steady_clock::now();
    SearchReport report;
    report.dim = dim;
    report.max_disc = max_disc;
    report.max_norm = max_norm;
    report.tmax = tmax;

    std::vector<Lattice> lattices = enumerate_reduced_grams(dim, max_disc);
    report.lattices = static_cast<int64_t>(lattices.size());

    std::vector<std::vector<SearchResult>> per_lattice(lattices.size());
    parallel_for(0, static_cast<int64_t>(lattices.size()), jobs, [&](int64_t li) {
        const Lattice& lat = lattices[static_cast<size_t>(li)];
        for (int64_t norm = 1; norm <= max_norm; ++norm) {
            Shell sh = shell(lat, norm);
            if (sh.empty()) continue;
            DesignReport dr = design_strength(sh, tmax);
            SearchResult r;
            r.dim = dim;
            r.gram = lat.gram;
            r.norm = norm;
            r.size = sh.size();
            r.strength = dr.strength;
            if (r.strength >= 5 && r.size == 6) r.flags = "6-point shell";
            per_lattice[static_cast<size_t>(li)].push_back(std::move(r));
        }
    });

    for (auto& chunk : per_lattice)
        for (auto& r : chunk) {
            ++report.shells;
            report.max_strength = std::max(report.max_strength, r.strength);
            if (r.strength == 5) {
                ++report.strength5_shells;
                if (r.size != 6) report.every_strength5_shell_size6 = false;
            }
            report.results.push_back(std::move(r));
        }

    report.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - t0).count();
    return report;
}

}  // namespace thetashell
