#pragma once

// Deterministic serialization of every report type. Exact rationals are
// rendered as "num/den" strings ("num" when the denominator is 1); JSON keys
// come out sorted, so identical runs produce byte-identical output apart from
// the wall_ms timing fields.

#include "thetashell/congruence.hpp"
#include "thetashell/design.hpp"
#include "thetashell/hecke.hpp"
#include "thetashell/lattice.hpp"
#include "thetashell/qseries.hpp"
#include "thetashell/verify.hpp"

#include <json.hpp>

#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>
#include <string>

namespace thetashell {

using json = nlohmann::json;

constexpr const char* kSchemaVersion = "thetashell/v1";

inline json gram_to_json(const std::vector<int64_t>& gram, int dim) {
    json rows = json::array();
    for (int i = 0; i < dim; ++i) {
        json row = json::array();
        for (int j = 0; j < dim; ++j) row.push_back(gram[static_cast<size_t>(i) * dim + j]);
        rows.push_back(row);
    }
    return rows;
}

inline json to_json(const QSeries& s) {
    json terms = json::array();
    for (const auto& t : s.terms())
        terms.push_back({t.unit_exp, integer_str(numerator(t.coeff)), integer_str(denominator(t.coeff))});
    return json{{"schema", std::string(kSchemaVersion) + "/series"},
                {"label", s.label()},
                {"order", s.order()},
                {"terms", terms}};
}

inline json to_json(const DesignReport& r) {
    json sums = json::object();
    for (const auto& [j, v] : r.pair_sums) sums[std::to_string(j)] = rational_str(v);
    return json{{"schema", std::string(kSchemaVersion) + "/design-report"},
                {"lattice", r.lattice_tag.empty() ? "custom" : r.lattice_tag},
                {"gram", gram_to_json(r.gram, r.dim)},
                {"norm", r.norm},
                {"shell_size", r.shell_size},
                {"tmax", r.tmax},
                {"pair_sums", sums},
                {"strength", r.strength}};
}

inline json to_json(const CongruenceCertificate& c) {
    json checked = json::array();
    for (const auto& [m, coeff] : c.checked) checked.push_back({m, integer_str(coeff)});
    json out{{"schema", std::string(kSchemaVersion) + "/congruence-certificate"},
             {"modulus", c.modulus},
             {"weight", c.weight},
             {"level", c.level},
             {"group_index", c.group_index},
             {"threshold", c.threshold},
             {"stride", c.stride},
             {"series", c.series_label},
             {"status", c.status},
             {"checked", checked}};
    if (c.first_bad_index) out["first_bad_index"] = *c.first_bad_index;
    return out;
}

inline json to_json(const LemmaReport& r) {
    auto violations_json = [](const std::vector<LemmaViolation>& v) {
        json arr = json::array();
        for (const auto& x : v)
            arr.push_back({{"m", x.m}, {"a", integer_str(x.coeff)}, {"sigma", integer_str(x.sigma)}});
        return arr;
    };
    json out{{"schema", std::string(kSchemaVersion) + "/lemma-report"},
             {"lemma", lemma_name(r.which)},
             {"max_index", r.max_index},
             {"checked", r.checked},
             {"ok", r.ok},
             {"violations", violations_json(r.violations)}};
    if (r.widened) {
        out["widened_checked"] = r.widened_checked;
        out["widened_ok"] = r.widened_ok;
        out["widened_violations"] = violations_json(r.widened_violations);
    }
    return out;
}

inline json to_json(const HeckeRelationReport& r) {
    return json{{"schema", std::string(kSchemaVersion) + "/hecke-relations"},
                {"series", r.series_label},
                {"spec", r.spec_name},
                {"max_index", r.max_index},
                {"ok", r.ok},
                {"coprime_pairs_checked", r.coprime_pairs_checked},
                {"prime_powers_checked", r.prime_powers_checked},
                {"first_violation", r.first_violation}};
}

inline json to_json(const ExtremalVerdict& v) {
    json obstructions = json::array();
    for (const auto& [label, held] : v.obstructions)
        obstructions.push_back({{"check", label}, {"holds", held}});
    return json{{"p", v.p},
                {"ap", integer_str(v.ap)},
                {"nonzero_proven", v.nonzero_proven},
                {"verdict", v.verdict},
                {"obstructions", obstructions}};
}

inline json to_json(const TheoremRunReport& r) {
    json samples = json::array();
    for (const auto& s : r.design_samples)
        samples.push_back({{"norm", s.norm}, {"shell_size", s.shell_size}, {"strength", s.strength}});
    return json{{"schema", std::string(kSchemaVersion) + "/theorem-run"},
                {"case", lattice_kind_name(r.kind)},
                {"bound", r.bound},
                {"series_crosscheck_bound", r.series_crosscheck_bound},
                {"indices_checked", r.indices_checked},
                {"nonempty_shells", r.nonempty_shells},
                {"zero_coefficients_found", r.zero_coefficients_found},
                {"series_compared", r.series_compared},
                {"series_agreed", r.series_agreed},
                {"hecke_compared", r.hecke_compared},
                {"hecke_agreed", r.hecke_agreed},
                {"expected_strength", r.expected_strength},
                {"design_samples", samples},
                {"failures", r.failures},
                {"wall_ms", r.wall_ms}};
}

inline json to_json(const SearchResult& r) {
    return json{{"dim", r.dim},
                {"gram", gram_to_json(r.gram, r.dim)},
                {"norm", r.norm},
                {"size", r.size},
                {"strength", r.strength},
                {"flags", r.flags}};
}

inline json to_json(const SearchReport& r) {
    json results = json::array();
    for (const auto& x : r.results) results.push_back(to_json(x));
    return json{{"schema", std::string(kSchemaVersion) + "/design-search"},
                {"dim", r.dim},
                {"max_disc", r.max_disc},
                {"max_norm", r.max_norm},
                {"tmax", r.tmax},
                {"lattices", r.lattices},
                {"shells", r.shells},
                {"max_strength", r.max_strength},
                {"strength5_shells", r.strength5_shells},
                {"every_strength5_shell_size6", r.every_strength5_shell_size6},
                {"results", results},
                {"wall_ms", r.wall_ms}};
}

inline std::string gram_flat_str(const std::vector<int64_t>& gram, int dim) {
    std::ostringstream os;
    os << '[';
    for (int i = 0; i < dim; ++i) {
        if (i) os << ';';
        for (int j = 0; j < dim; ++j) {
            if (j) os << ' ';
            os << gram[static_cast<size_t>(i) * dim + j];
        }
    }
    os << ']';
    return os.str();
}

inline void write_search_csv(const SearchReport& r, std::ostream& out) {
    out << "dim,gram,norm,size,strength\n";
    for (const auto& x : r.results)
        out << x.dim << ',' << gram_flat_str(x.gram, x.dim) << ',' << x.norm << ',' << x.size << ','
            << x.strength << '\n';
}

inline void write_shell_csv(const Shell& sh, std::ostream& out) {
    for (const auto& v : sh.vectors) {
        for (size_t i = 0; i < v.size(); ++i) {
            if (i) out << ',';
            out << v[i];
        }
        out << '\n';
    }
}

// Aligned two-column text rendering of a series: q-exponent, coefficient.
inline void write_series_text(const QSeries& s, std::ostream& out) {
    out << "# " << s.label() << "  (order " << s.order() << ")\n";
    for (const auto& t : s.terms()) {
        Rational qexp(t.unit_exp, kUnitsPerQ);
        std::string e = rational_str(qexp);
        out << "q^" << e << std::string(e.size() < 12 ? 12 - e.size() : 1, ' ')
            << rational_str(t.coeff) << '\n';
    }
}

inline void write_design_text(const DesignReport& r, std::ostream& out) {
    out << "lattice " << (r.lattice_tag.empty() ? gram_flat_str(r.gram, r.dim) : r.lattice_tag)
        << ", norm " << r.norm << ", " << r.shell_size << " vectors\n";
    out << "degree  pair sum\n";
    for (const auto& [j, v] : r.pair_sums) out << "  " << j << "     " << rational_str(v) << '\n';
    out << "strength " << r.strength << " (tmax " << r.tmax << ")\n";
}

// Writes to a path, or to the fallback stream when the path is empty or "-".
inline void emit_text(const std::string& text, const std::string& destination,
                      std::ostream& fallback = std::cout) {
    if (destination.empty() || destination == "-") {
        fallback << text;
        if (!text.empty() && text.back() != '\n') fallback << '\n';
        return;
    }
    std::ofstream file(destination);
    if (!file) throw std::runtime_error("emit_text: cannot open " + destination);
    file << text;
    if (!text.empty() && text.back() != '\n') file << '\n';
}

inline void emit_json(const json& j, const std::string& destination, std::ostream& fallback = std::cout) {
    emit_text(j.dump(2), destination, fallback);
}

}  // namespace thetashell
