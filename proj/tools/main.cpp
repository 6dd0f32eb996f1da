// Command-line surface: exact q-expansions, shell listings, design tests,
// Hecke checks, congruence certificates, theorem runs, and the reduced-Gram
// design search. All output is deterministic; JSON goes to --out (default
// stdout).

#include "thetashell/arith.hpp"
#include "thetashell/congruence.hpp"
#include "thetashell/design.hpp"
#include "thetashell/hecke.hpp"
#include "thetashell/lattice.hpp"
#include "thetashell/qseries.hpp"
#include "thetashell/report.hpp"
#include "thetashell/verify.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace ts = thetashell;
using ts::json;

namespace {

struct GlobalOptions {
    std::string format = "json";
    std::string out = "-";
    int jobs = 1;
    uint64_t seed = 12345;
    int64_t order = 24;
    int64_t max = 1000;
};

ts::Lattice lattice_from_arg(const std::string& arg) {
    if (arg == "z2") return ts::lattice_zn(2);
    if (arg == "z3") return ts::lattice_zn(3);
    if (arg == "a2") return ts::lattice_a2();
    std::ifstream in(arg);
    if (!in) throw CLI::ValidationError("--lattice", "cannot open gram file " + arg);
    json j = json::parse(in);
    if (j.is_object() && j.contains("gram")) j = j["gram"];
    std::vector<std::vector<int64_t>> gram;
    for (const auto& row : j) gram.push_back(row.get<std::vector<int64_t>>());
    return ts::make_lattice(gram);
}

std::vector<std::pair<int64_t, int64_t>> parse_eta_factors(const std::string& text) {
    std::vector<std::pair<int64_t, int64_t>> factors;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
        auto colon = piece.find(':');
        if (colon == std::string::npos)
            throw CLI::ValidationError("--eta", "expected d:p pairs, got " + piece);
        factors.emplace_back(std::stoll(piece.substr(0, colon)), std::stoll(piece.substr(colon + 1)));
    }
    return factors;
}

int run_series(const GlobalOptions& g, const std::string& name, const std::string& theta,
               const std::string& eta) {
    ts::QSeries s;
    if (!name.empty()) {
        s = ts::make_named(ts::named_form_from_string(name), g.order);
    } else if (!theta.empty()) {
        int kind;
        int64_t dilation, power;
        char c1, c2;
        std::stringstream ss(theta);
        if (!(ss >> kind >> c1 >> dilation >> c2 >> power) || c1 != ',' || c2 != ',')
            throw CLI::ValidationError("--theta", "expected kind,dilation,power");
        s = ts::make_theta(kind, dilation, power, g.order);
    } else if (!eta.empty()) {
        s = ts::make_eta_product(parse_eta_factors(eta), g.order);
    } else {
        throw CLI::ValidationError("series", "one of --name/--theta/--eta is required");
    }
    if (g.format == "text") {
        std::ostringstream os;
        ts::write_series_text(s, os);
        ts::emit_text(os.str(), g.out);
    } else {
        ts::emit_json(ts::to_json(s), g.out);
    }
    return 0;
}

int run_shell(const GlobalOptions& g, const std::string& lattice_arg, int64_t norm) {
    ts::Shell sh = ts::shell(lattice_from_arg(lattice_arg), norm);
    if (g.format == "json") {
        json j{{"schema", std::string(ts::kSchemaVersion) + "/shell"},
               {"lattice", lattice_arg},
               {"gram", ts::gram_to_json(sh.lattice.gram, sh.lattice.dim)},
               {"norm", norm},
               {"size", sh.size()},
               {"vectors", sh.vectors}};
        ts::emit_json(j, g.out);
    } else {
        std::ostringstream os;
        ts::write_shell_csv(sh, os);
        ts::emit_text(os.str(), g.out);
    }
    return 0;
}

int run_design_test(const GlobalOptions& g, const std::string& lattice_arg, int64_t norm, int tmax) {
    ts::Shell sh = ts::shell(lattice_from_arg(lattice_arg), norm);
    if (sh.empty()) {
        ts::emit_json(json{{"schema", std::string(ts::kSchemaVersion) + "/design-report"},
                           {"lattice", lattice_arg},
                           {"norm", norm},
                           {"shell_size", 0},
                           {"note", "empty shell"}},
                      g.out);
        return 0;
    }
    ts::DesignReport r = ts::design_strength(sh, tmax);
    if (g.format == "text") {
        std::ostringstream os;
        ts::write_design_text(r, os);
        ts::emit_text(os.str(), g.out);
    } else {
        ts::emit_json(ts::to_json(r), g.out);
    }
    return 0;
}

json hecke_case_report(ts::LatticeKind kind, int64_t N) {
    ts::QSeries series;
    ts::EigenformSpec spec;
    if (kind == ts::LatticeKind::z2) {
        series = ts::mul(ts::make_named(ts::NamedForm::delta8, N + 2),
                         ts::make_named(ts::NamedForm::theta_z2, N + 2));
        spec = ts::make_z2_spec(series);
    } else {
        series = ts::mul(ts::make_named(ts::NamedForm::delta12, 2 * (N + 2)),
                         ts::make_named(ts::NamedForm::theta_a2, 2 * (N + 2)));
        spec = ts::make_a2_spec(series);
    }

    json report{{"schema", std::string(ts::kSchemaVersion) + "/hecke-report"},
                {"case", ts::lattice_kind_name(kind)},
                {"max", N}};
    report["relations"] = ts::to_json(ts::verify_hecke_relations(series, spec, N, spec.stride));

    int64_t deligne_checked = 0, deligne_ok = 0;
    int64_t inert_checked = 0, inert_ok = 0;
    json extremal = json::array();
    bool all_extremal_nonzero = true;
    int64_t modulus = kind == ts::LatticeKind::z2 ? 4 : 3;
    int64_t inert_residue = kind == ts::LatticeKind::z2 ? 3 : 2;
    for (int64_t p = 2; p <= N; ++p) {
        if (!ts::is_prime(p)) continue;
        ++deligne_checked;
        if (ts::deligne_check(spec, p)) ++deligne_ok;
        if (p % modulus == 1) {
            ts::ExtremalVerdict v = ts::extremal_case_analysis(spec, p);
            all_extremal_nonzero = all_extremal_nonzero && v.nonzero_proven;
            extremal.push_back(ts::to_json(v));
        } else if (p % modulus == inert_residue) {
            // inert primes: a(p^n) vanishes exactly at odd n
            std::vector<ts::Integer> table = ts::prime_power_table(spec, p, 4);
            bool ok = true;
            for (int n = 0; n <= 4; ++n) {
                bool zero = table[static_cast<size_t>(n)] == 0;
                if (zero != (n % 2 == 1)) ok = false;
                if (n % 2 == 0 && table[static_cast<size_t>(n)] !=
                                      ts::int_pow(ts::Integer(p), static_cast<unsigned>((spec.weight - 1) * n / 2)))
                    ok = false;
            }
            ++inert_checked;
            if (ok) ++inert_ok;
        }
    }
    report["deligne"] = json{{"primes_checked", deligne_checked}, {"all_ok", deligne_ok == deligne_checked}};
    report["inert_vanishing"] = json{{"primes_checked", inert_checked}, {"all_ok", inert_ok == inert_checked}};
    report["extremal"] = extremal;
    report["extremal_all_nonzero"] = all_extremal_nonzero;
    report["closed_form_note"] =
        "for inert primes the recurrence yields a(p^n) = p^{(k-1)n/2} at even n; "
        "a tabulation as p^{(k-1)(n-1)} agrees with it only at n = 2";
    return report;
}

json tau_report(int64_t N) {
    ts::QSeries delta24 = ts::make_named(ts::NamedForm::delta24, 2 * (N + 2));
    ts::EigenformSpec spec = ts::make_tau_spec(delta24);
    json report{{"schema", std::string(ts::kSchemaVersion) + "/tau-report"}, {"case", "tau"}, {"max", N}};
    report["relations"] = ts::to_json(ts::verify_hecke_relations(delta24, spec, N, 2));

    int64_t zero_count = 0;
    ts::Integer min_abs;
    int64_t min_at = 0;
    for (int64_t m = 1; m <= N; ++m) {
        ts::Integer t = ts::integer_coefficient(delta24, m, 2);
        if (t == 0) {
            ++zero_count;
            continue;
        }
        ts::Integer a = boost::multiprecision::abs(t);
        if (min_at == 0 || a < min_abs) {
            min_abs = a;
            min_at = m;
        }
    }
    report["nonvanishing"] = json{{"checked", N}, {"zeros_found", zero_count},
                                  {"min_abs", ts::integer_str(min_abs)}, {"min_at", min_at}};
    int64_t deligne_checked = 0, deligne_ok = 0;
    for (int64_t p = 2; p <= N; ++p) {
        if (!ts::is_prime(p)) continue;
        ++deligne_checked;
        if (ts::deligne_check(spec, p)) ++deligne_ok;
    }
    report["deligne"] = json{{"primes_checked", deligne_checked}, {"all_ok", deligne_ok == deligne_checked}};
    return report;
}

int run_arith_table(const GlobalOptions& g, const std::string& table) {
    std::ostringstream os;
    os << "m," << table << "\n";
    for (int64_t m = 1; m <= g.max; ++m) {
        os << m << ',';
        if (table == "r2")
            os << ts::r2(m);
        else if (table == "na2")
            os << ts::n_a2(m);
        else if (table == "sigma1")
            os << ts::divisor_sigma(1, m);
        else if (table == "sigma3")
            os << ts::divisor_sigma(3, m);
        else if (table == "sigma5")
            os << ts::divisor_sigma(5, m);
        else if (table == "chi4")
            os << ts::char_value(ts::Character::chi4, m);
        else if (table == "legendre3")
            os << ts::char_value(ts::Character::legendre3, m);
        else
            throw CLI::ValidationError("--table", "unknown table " + table);
        os << '\n';
    }
    ts::emit_text(os.str(), g.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact arithmetic toolkit for lattice shells, weighted theta series, and spherical designs"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value file presetting the flags below");

    GlobalOptions g;
    app.add_option("--format", g.format, "output format: json, text or csv")->capture_default_str();
    app.add_option("--out", g.out, "output path ('-' for stdout)")->capture_default_str();
    app.add_option("--jobs", g.jobs, "worker threads")->envname("THETASHELL_JOBS")->capture_default_str();
    app.add_option("--seed", g.seed, "seed for sampled checks")->capture_default_str();
    app.add_option("--order", g.order, "series truncation order (series subcommand)")->capture_default_str();
    app.add_option("--max", g.max, "index bound for table/check subcommands")->capture_default_str();

    // series
    auto* series_cmd = app.add_subcommand("series", "print an exact q-expansion");
    series_cmd->fallthrough();
    std::string series_name, series_theta, series_eta;
    series_cmd->add_option("--name", series_name,
                           "named form: phi delta8 delta12 delta24 e4 e6 theta_z2 theta_a2");
    series_cmd->add_option("--theta", series_theta, "theta series as kind,dilation,power");
    series_cmd->add_option("--eta", series_eta, "eta product as d:p[,d:p...]");

    // shell
    auto* shell_cmd = app.add_subcommand("shell", "enumerate a lattice shell");
    shell_cmd->fallthrough();
    std::string shell_lattice = "z2";
    int64_t shell_norm = 1;
    shell_cmd->add_option("--lattice", shell_lattice, "z2, a2, z3 or a gram JSON file")->capture_default_str();
    shell_cmd->add_option("--norm", shell_norm, "vector norm")->required();

    // design-test
    auto* design_cmd = app.add_subcommand("design-test", "exact design strength of a shell");
    design_cmd->fallthrough();
    std::string design_lattice = "z2";
    int64_t design_norm = 1;
    int design_tmax = 12;
    design_cmd->add_option("--lattice", design_lattice, "z2, a2, z3 or a gram JSON file")->capture_default_str();
    design_cmd->add_option("--norm", design_norm, "vector norm")->required();
    design_cmd->add_option("--tmax", design_tmax, "largest degree tested")->capture_default_str();

    // hecke
    auto* hecke_cmd = app.add_subcommand("hecke", "eigenform relation, bound and case-analysis checks");
    hecke_cmd->fallthrough();
    std::string hecke_case = "z2";
    hecke_cmd->add_option("--case", hecke_case, "z2, a2 or tau")->capture_default_str();

    // congruence
    auto* cong_cmd = app.add_subcommand("congruence", "verify a congruence lemma directly");
    cong_cmd->fallthrough();
    std::string lemma = "3.2";
    bool widen = false;
    cong_cmd->add_option("--lemma", lemma, "3.2, 4.3 or 4.4")->capture_default_str();
    cong_cmd->add_flag("--widen", widen, "also report lemma 4.4 over all odd m");

    // sturm
    auto* sturm_cmd = app.add_subcommand("sturm", "emit a Sturm-bound congruence certificate");
    sturm_cmd->fallthrough();
    std::string sturm_case = "mod3";
    sturm_cmd->add_option("--case", sturm_case, "mod3 or mod2")->capture_default_str();

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run a full nonvanishing theorem check");
    verify_cmd->fallthrough();
    std::string verify_case = "z2";
    int64_t crosscheck = -1, samples = 25;
    verify_cmd->add_option("--case", verify_case, "z2 or a2")->capture_default_str();
    verify_cmd->add_option("--crosscheck", crosscheck, "series cross-check bound (default min(max, 1000))");
    verify_cmd->add_option("--samples", samples, "sampled design-strength checks")->capture_default_str();

    // search
    auto* search_cmd = app.add_subcommand("search", "design search over reduced Gram matrices");
    search_cmd->fallthrough();
    int search_dim = 2;
    int64_t max_disc = 50, max_norm = 100;
    int search_tmax = 12;
    search_cmd->add_option("--dim", search_dim, "2 or 3")->capture_default_str();
    search_cmd->add_option("--max-disc", max_disc, "determinant bound")->capture_default_str();
    search_cmd->add_option("--max-norm", max_norm, "norm bound")->capture_default_str();
    search_cmd->add_option("--tmax", search_tmax, "largest degree tested")->capture_default_str();

    // tau
    auto* tau_cmd = app.add_subcommand("tau", "Ramanujan tau demo checks");
    tau_cmd->fallthrough();

    // arith
    auto* arith_cmd = app.add_subcommand("arith", "print arithmetic function tables as CSV");
    arith_cmd->fallthrough();
    std::string table = "r2";
    arith_cmd->add_option("--table", table, "r2 na2 sigma1 sigma3 sigma5 chi4 legendre3")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (series_cmd->parsed()) return run_series(g, series_name, series_theta, series_eta);
        if (shell_cmd->parsed()) return run_shell(g, shell_lattice, shell_norm);
        if (design_cmd->parsed()) return run_design_test(g, design_lattice, design_norm, design_tmax);
        if (hecke_cmd->parsed()) {
            json report = hecke_case == "tau"
                              ? tau_report(g.max)
                              : hecke_case_report(hecke_case == "z2" ? ts::LatticeKind::z2
                                                                     : ts::LatticeKind::a2,
                                                  g.max);
            ts::emit_json(report, g.out);
            bool ok = report["relations"]["ok"].get<bool>() && report["deligne"]["all_ok"].get<bool>();
            if (report.contains("extremal_all_nonzero")) ok = ok && report["extremal_all_nonzero"].get<bool>();
            if (report.contains("nonvanishing")) ok = ok && report["nonvanishing"]["zeros_found"] == 0;
            return ok ? 0 : 1;
        }
        if (cong_cmd->parsed()) {
            ts::CongruenceLemma which = lemma == "3.2"   ? ts::CongruenceLemma::L32
                                        : lemma == "4.3" ? ts::CongruenceLemma::L43
                                        : lemma == "4.4" ? ts::CongruenceLemma::L44
                                                         : throw CLI::ValidationError("--lemma", "unknown lemma " + lemma);
            ts::LemmaReport r = ts::lemma_congruence_verify(which, g.max, widen);
            ts::emit_json(ts::to_json(r), g.out);
            return r.ok ? 0 : 1;
        }
        if (sturm_cmd->parsed()) {
            ts::CongruenceCertificate cert;
            if (sturm_case == "mod3")
                cert = ts::sturm_mod3_certificate();
            else if (sturm_case == "mod2")
                cert = ts::sturm_mod2_certificate();
            else
                throw CLI::ValidationError("--case", "unknown sturm case " + sturm_case);
            ts::emit_json(ts::to_json(cert), g.out);
            return cert.status == "proved" ? 0 : 1;
        }
        if (verify_cmd->parsed()) {
            ts::LatticeKind kind = verify_case == "a2" ? ts::LatticeKind::a2 : ts::LatticeKind::z2;
            if (crosscheck < 0) crosscheck = std::min<int64_t>(g.max, 1000);
            ts::VerifyOptions opt;
            opt.design_samples = samples;
            opt.seed = g.seed;
            opt.jobs = g.jobs;
            try {
                ts::TheoremRunReport r = ts::verify_theorem(kind, g.max, crosscheck, opt);
                ts::emit_json(ts::to_json(r), g.out);
                return 0;
            } catch (const ts::VerificationError& e) {
                ts::emit_json(ts::to_json(e.report), g.out, std::cerr);
                std::cerr << "verification FAILED: " << e.what() << "\n";
                return 1;
            }
        }
        if (search_cmd->parsed()) {
            ts::SearchReport r = ts::design_search(search_dim, max_disc, max_norm, search_tmax, g.jobs);
            if (g.format == "csv") {
                std::ostringstream os;
                ts::write_search_csv(r, os);
                ts::emit_text(os.str(), g.out);
            } else {
                ts::emit_json(ts::to_json(r), g.out);
            }
            return 0;
        }
        if (tau_cmd->parsed()) {
            json report = tau_report(g.max);
            ts::emit_json(report, g.out);
            return (report["relations"]["ok"].get<bool>() &&
                    report["nonvanishing"]["zeros_found"] == 0)
                       ? 0
                       : 1;
        }
        if (arith_cmd->parsed()) return run_arith_table(g, table);
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
