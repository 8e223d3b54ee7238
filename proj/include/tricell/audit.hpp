#pragma once

// End-to-end audit: ingest, lint, errata, validation, homology, corollary
// checks and the codimension sweep, plus the JSON dossier built from them.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "cells.hpp"
#include "chain_complex.hpp"
#include "error.hpp"
#include "ingest.hpp"
#include "rank_oracle.hpp"

#ifndef TRICELL_DEFAULT_DATA_DIR
#define TRICELL_DEFAULT_DATA_DIR "data"
#endif

namespace tricell {

inline constexpr std::string_view dossier_schema = "tricell-dossier/1";
inline constexpr std::uint64_t default_seed = 20240229;

struct RunConfig {
    std::filesystem::path data_dir;
    std::optional<std::filesystem::path> errata_path;  ///< defaults to data_dir/errata.txt when present
    bool use_errata = true;
    bool json = false;
    std::uint64_t seed = default_seed;
    int degree = default_degree;
    int draws = 3;
    unsigned jobs = 1;
};

/// Explicit flag, then $TRICELL_DATA, then the compiled-in default.
inline std::filesystem::path resolve_data_dir(const std::optional<std::string>& flag) {
    if (flag && !flag->empty()) return *flag;
    if (const char* env = std::getenv("TRICELL_DATA"); env && *env) return env;
    return TRICELL_DEFAULT_DATA_DIR;
}

struct LoadedLedger {
    ErrataLedger ledger;
    std::string source;  ///< file name, or "none"
};

inline LoadedLedger load_ledger(const RunConfig& cfg) {
    if (!cfg.use_errata) return {{}, "none"};
    if (cfg.errata_path) {
        const auto name = cfg.errata_path->filename().string();
        return {parse_errata(read_file(*cfg.errata_path), name), name};
    }
    const auto p = cfg.data_dir / "errata.txt";
    if (!std::filesystem::is_regular_file(p)) return {{}, "none"};
    return {parse_errata(read_file(p), "errata.txt"), "errata.txt"};
}

// ------------------------------------------------------------- validation

struct DegreeFinding {
    int degree;
    LintFinding finding;
};

struct ValidationOutcome {
    std::vector<DegreeFinding> raw_lint;
    std::vector<DegreeFinding> corrected_lint;
    ErrataReport errata;
    Dataset data;                          ///< corrected
    std::optional<ChainComplex> complex;   ///< absent when the data cannot form a complex
    std::string construction_error;
    CrossCheckReport cross_d2;
    CrossCheckReport cross_d3;
    CrossCheckReport raw_cross_d3;

    bool ok() const { return corrected_lint.empty() && complex && complex->validation().ok(); }
};

inline std::vector<DegreeFinding> lint_all(const Dataset& d) {
    std::vector<DegreeFinding> out;
    for (const auto& [deg, f] : d.boundaries)
        for (auto& x : lint(f)) out.push_back({deg, std::move(x)});
    return out;
}

inline ValidationOutcome validate(const Dataset& raw, const ErrataLedger& ledger) {
    ValidationOutcome v;
    v.raw_lint = lint_all(raw);
    v.data = corrected(raw, ledger, &v.errata);
    v.corrected_lint = lint_all(v.data);
    try {
        v.complex.emplace(ChainComplex::from_boundary_files(v.data.boundaries));
    } catch (const Error& e) {
        v.construction_error = e.what();
    }
    v.cross_d2 = cross_check_matrices(v.data.boundaries.at(2), v.data.matrix_d2);
    v.cross_d3 = cross_check_matrices(v.data.boundaries.at(3), v.data.matrix_d3);
    v.raw_cross_d3 = cross_check_matrices(raw.boundaries.at(3), raw.matrix_d3);
    return v;
}

// ----------------------------------------------------------- leave-one-out

struct LeaveOneOut {
    ErrataEntry entry;
    bool justified = false;
    std::string evidence;
};

namespace detail {

inline std::vector<std::string> failure_generators(const ValidationReport& r) {
    std::vector<std::string> out;
    for (const auto& f : r.failures) out.push_back(f.generator.name());
    return out;
}

inline LeaveOneOut justify_entry(const Dataset& raw, const ErrataLedger& ledger, std::size_t i,
                                 const ValidationOutcome& full) {
    const auto& e = ledger.entries[i];
    LeaveOneOut out{e, false, {}};
    const auto gen = parse_cell(e.generator);
    const auto without = validate(raw, ledger.without(i));

    if (e.justification != Justification::d_squared_localization) {
        // The entry must be the only thing hiding a lint finding in its row.
        std::vector<LintFinding> fresh;
        for (const auto& f : without.corrected_lint) {
            bool before = false;
            for (const auto& g : full.corrected_lint)
                before = before || (g.finding.generator == f.finding.generator && g.finding.term == f.finding.term);
            if (!before) fresh.push_back(f.finding);
        }
        const bool kind_ok = e.justification == Justification::dimension_lint
                                 ? fresh.size() == 1 && fresh[0].dimension
                                 : fresh.size() == 1 && fresh[0].type;
        out.justified = e.section == ErrataSection::boundary && kind_ok && fresh[0].generator == gen;
        out.evidence = fresh.empty() ? "no lint finding reappears without this entry"
                                     : "without it: " + fresh[0].message();
        if (fresh.size() > 1) out.evidence += " (and " + std::to_string(fresh.size() - 1) + " more)";
        return out;
    }

    if (e.section == ErrataSection::boundary) {
        if (!without.complex) {
            out.evidence = "without it the data do not form a complex: " + without.construction_error;
            return out;
        }
        const auto& fails = without.complex->validation().failures;
        out.justified = !fails.empty();
        out.evidence = fails.empty() ? "d^2 = 0 holds without this entry"
                                     : "without it d^2 != 0 at " + std::to_string(fails.size()) + " generator(s)";
        return out;
    }

    // Expansion entry: dropping it must re-create a mismatch at its row, and
    // the alternative repair (rewriting the boundary row to agree with the
    // stated expansion) must break d^2 = 0.
    if (!without.complex || !full.complex) {
        out.evidence = "complex unavailable";
        return out;
    }
    const auto er = without.complex->verify_expansions(without.data.kernels, without.data.expansions);
    bool mismatch = false;
    std::vector<std::size_t> stated;
    for (const auto& r : er.rows)
        if (r.generator == gen) {
            mismatch = !r.match();
            stated = r.stated;
        }
    if (!mismatch) {
        out.evidence = "the stated expansion of " + e.generator + " matches without this entry";
        return out;
    }
    gf2::BitVector forced(full.complex->size(2));
    for (auto k : stated) {
        if (k == 0 || k > without.data.kernels.generators.size()) continue;
        forced += full.complex->chain(2, without.data.kernels.generators[k - 1].cells).vector;
    }
    auto alt = full.data.boundaries;
    alt.at(gen.dimension()).find(gen)->terms = full.complex->cells_of({2, forced});
    const auto alt_cx = ChainComplex::from_boundary_files(alt);
    const auto gens = failure_generators(alt_cx.validation());
    out.justified = !gens.empty();
    std::string where;
    for (const auto& g : gens) where += (where.empty() ? "" : ", ") + g;
    out.evidence = "without it the expansion of " + e.generator + " mismatches; forcing d(" + e.generator +
                   ") to the stated expansion breaks d^2 = 0 at " + (where.empty() ? "no cell" : where);
    return out;
}

}  // namespace detail

/// Re-runs validation with each entry removed in turn.
inline std::vector<LeaveOneOut> leave_one_out(const Dataset& raw, const ErrataLedger& ledger) {
    const auto full = validate(raw, ledger);
    std::vector<LeaveOneOut> out;
    for (std::size_t i = 0; i < ledger.entries.size(); ++i) out.push_back(detail::justify_entry(raw, ledger, i, full));
    return out;
}

// --------------------------------------------------------------- homology

struct Relation {
    std::string statement;
    bool holds = false;
};

struct HomologyOutcome {
    std::vector<std::size_t> betti;  ///< b0..b6
    std::vector<std::vector<Chain>> generators;
    std::vector<Relation> h1_relations;
    std::vector<Relation> h2_relations;
    long euler = 0;
    long betti_alternating_sum = 0;
    bool rank_nullity = true;
};

inline HomologyOutcome compute_homology(const ChainComplex& cx) {
    HomologyOutcome h;
    for (int d = 0; d <= cx.top_degree(); ++d) {
        h.betti.push_back(cx.betti(d));
        h.generators.push_back(cx.homology_generators(d, preferred_representatives(cx, d)));
        h.betti_alternating_sum += (d % 2 == 0 ? 1 : -1) * static_cast<long>(h.betti.back());
        // Kernel computed independently of the rank.
        if (d >= 1 && gf2::kernel_basis(cx.matrix(d)).size() + cx.rank(d) != cx.size(d)) h.rank_nullity = false;
    }
    h.euler = cx.euler_characteristic();

    const auto theta = cx.chain(1, {"bTH"});
    h.h1_relations.push_back({"bTH is a cycle", cx.is_cycle(theta)});
    h.h1_relations.push_back({"bTH !~ 0", !cx.is_boundary(theta)});
    h.h1_relations.push_back({"H1 = <bTH>", h.betti[1] == 1 && !cx.is_boundary(theta)});

    const Chain zero{2, gf2::BitVector(cx.size(2))};
    const auto x = cx.chain(2, {"bX+", "bX-"});
    const auto om = cx.chain(2, {"bOM"});
    const auto s1 = cx.chain(2, {"bS1"});
    const auto eq = [&](const char* text, const Chain& a, const Chain& b, bool want) {
        h.h2_relations.push_back({text, cx.class_equal(a, b) == want});
    };
    eq("bX+ + bX- !~ 0", x, zero, false);
    eq("bOM !~ 0", om, zero, false);
    eq("bS1 !~ 0", s1, zero, false);
    eq("bOM ~ bV1+ + bV1-", om, cx.chain(2, {"bV1+", "bV1-"}), true);
    eq("bOM ~ bV2+ + bV2-", om, cx.chain(2, {"bV2+", "bV2-"}), true);
    eq("bS1 ~ bS2", s1, cx.chain(2, {"bS2"}), true);
    eq("bX+ + bX- !~ bOM", x, om, false);
    eq("bX+ + bX- !~ bS1", x, s1, false);
    eq("bOM !~ bS1", om, s1, false);
    eq("(bX+ + bX-) + bOM + bS1 ~ 0", cx.chain(2, {"bX+", "bX-", "bOM", "bS1"}), zero, true);
    return h;
}

// ------------------------------------------------------- codimension sweep

/// Certificates for every catalog cell, in catalog order whatever `jobs` is.
inline std::vector<CellCertificate> codimension_sweep(std::uint64_t seed, int draws, int degree, unsigned jobs) {
    const auto& cells = enumerate_cells();
    std::vector<CellCertificate> out(cells.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    const auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < cells.size();) {
            try {
                out[i] = certify_cell(cells[i], seed, draws, degree);
            } catch (...) {
                std::lock_guard g(failure_lock);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const unsigned n = std::max(1u, jobs);
    if (n == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

// ----------------------------------------------------------------- dossier

namespace detail {

using ojson = nlohmann::ordered_json;

inline ojson names_json(const std::vector<Cell>& cells) {
    ojson a = ojson::array();
    for (const auto& c : cells) a.push_back(c.name());
    return a;
}

inline ojson lint_json(const std::vector<DegreeFinding>& v) {
    ojson a = ojson::array();
    for (const auto& f : v)
        a.push_back({{"degree", f.degree},
                     {"generator", f.finding.generator.name()},
                     {"term", f.finding.term.name()},
                     {"dimension", f.finding.dimension},
                     {"type", f.finding.type}});
    return a;
}

inline ojson cross_json(const CrossCheckReport& r) {
    ojson a = ojson::array(), b = ojson::array();
    for (const auto& [g, t] : r.only_in_formulas) a.push_back({g.name(), t.name()});
    for (const auto& [g, t] : r.only_in_matrix) b.push_back({g.name(), t.name()});
    return {{"only_in_formulas", a}, {"only_in_matrix", b}, {"empty", r.empty()}};
}

inline ojson moduli_json(const Moduli& m) {
    ojson o = ojson::object();
    for (auto mod : {Modulus::alpha, Modulus::beta, Modulus::gamma})
        if (m.get(mod)) o[std::string(modulus_name(mod))] = to_string(*m.get(mod));
    return o;
}

}  // namespace detail

/// The full machine-readable dossier. Contains nothing that depends on the
/// clock, the host or the thread count.
inline nlohmann::ordered_json build_dossier(const RunConfig& cfg) {
    using detail::ojson;
    const auto raw = load_dataset(cfg.data_dir);
    const auto ledger = load_ledger(cfg);
    const auto v = validate(raw, ledger.ledger);

    ojson doc;
    doc["schema"] = dossier_schema;
    doc["config"] = {{"seed", cfg.seed}, {"degree", cfg.degree}, {"draws", cfg.draws}, {"errata", ledger.source}};

    // Census.
    {
        ojson by_dim = ojson::array(), first = ojson::array(), cells = ojson::array();
        std::size_t n_first = 0;
        for (int d = 0; d <= max_dimension; ++d) {
            by_dim.push_back(ordered_basis(d).size());
            std::size_t f = 0;
            for (const auto& c : ordered_basis(d)) f += c.barred ? 0 : 1;
            first.push_back(f);
        }
        for (const auto& c : enumerate_cells()) {
            n_first += c.barred ? 0 : 1;
            cells.push_back({{"name", c.name()}, {"dimension", c.dimension()}});
        }
        const auto problems = check_census(raw.census);
        doc["census"] = {{"total", enumerate_cells().size()},
                         {"first_type", n_first},
                         {"second_type", enumerate_cells().size() - n_first},
                         {"families", family_count},
                         {"by_dimension", by_dim},
                         {"first_type_by_dimension", first},
                         {"data_file_agrees", problems.empty()},
                         {"data_file_problems", problems},
                         {"cells", cells}};
    }

    doc["lint"] = {{"raw", detail::lint_json(v.raw_lint)}, {"corrected", detail::lint_json(v.corrected_lint)}};

    {
        ojson entries = ojson::array();
        const auto loo = leave_one_out(raw, ledger.ledger);
        for (std::size_t i = 0; i < ledger.ledger.entries.size(); ++i) {
            const auto& e = ledger.ledger.entries[i];
            std::string status = "unused";
            for (const auto& a : v.errata.applied)
                if (a.entry.line == e.line && a.entry.text() == e.text())
                    status = a.status == ErrataStatus::applied ? "applied" : "already-applied";
            entries.push_back({{"entry", e.text()},
                               {"status", status},
                               {"justified", loo[i].justified},
                               {"evidence", loo[i].evidence}});
        }
        doc["errata"] = entries;
    }

    doc["cross_check"] = {{"d2", detail::cross_json(v.cross_d2)},
                          {"d3", detail::cross_json(v.cross_d3)},
                          {"d3_raw", detail::cross_json(v.raw_cross_d3)}};

    ojson validation = {{"ok", v.ok()}, {"construction_error", v.construction_error}};
    ojson failures = ojson::array();
    if (v.complex)
        for (const auto& f : v.complex->validation().failures)
            failures.push_back({{"generator", f.generator.name()}, {"offending", detail::names_json(f.offending)}});
    validation["failures"] = failures;
    doc["validation"] = validation;

    if (v.ok()) {
        const auto& cx = *v.complex;
        const auto h = compute_homology(cx);
        ojson degrees = ojson::array();
        for (int d = 0; d <= cx.top_degree(); ++d) {
            ojson gens = ojson::array();
            for (const auto& g : h.generators[static_cast<std::size_t>(d)]) gens.push_back(detail::names_json(cx.cells_of(g)));
            degrees.push_back({{"degree", d},
                               {"cells", cx.size(d)},
                               {"boundary_rank", cx.rank(d)},
                               {"kernel_dimension", cx.kernel_dimension(d)},
                               {"betti", h.betti[static_cast<std::size_t>(d)]},
                               {"generators", gens}});
        }
        const auto rel = [](const std::vector<Relation>& rs) {
            ojson a = ojson::array();
            for (const auto& r : rs) a.push_back({{"relation", r.statement}, {"holds", r.holds}});
            return a;
        };
        doc["homology"] = {{"degrees", degrees},
                           {"betti", h.betti},
                           {"euler_characteristic", h.euler},
                           {"betti_alternating_sum", h.betti_alternating_sum},
                           {"rank_nullity", h.rank_nullity},
                           {"h1_relations", rel(h.h1_relations)},
                           {"h2_relations", rel(h.h2_relations)}};

        const auto kr = cx.verify_kernel_generators(v.data.kernels);
        doc["kernel_generators"] = {{"listed", kr.listed},
                                    {"non_cycles", kr.non_cycles},
                                    {"rank", kr.rank},
                                    {"kernel_dimension", kr.kernel_dimension},
                                    {"all_cycles", kr.all_cycles()},
                                    {"independent", kr.independent()},
                                    {"spans", kr.spans()}};

        const auto er = cx.verify_expansions(v.data.kernels, v.data.expansions);
        ojson rows = ojson::array();
        for (const auto& r : er.rows)
            rows.push_back({{"cell", r.generator.name()},
                            {"stated", r.stated},
                            {"computed", r.computed ? ojson(*r.computed) : ojson(nullptr)},
                            {"match", r.match()}});
        doc["expansions"] = {{"total", er.rows.size()},
                             {"matched", er.matched()},
                             {"without_expansion", detail::names_json(er.without_expansion)},
                             {"rows", rows}};
    }

    {
        const auto certs = codimension_sweep(cfg.seed, cfg.draws, cfg.degree, cfg.jobs);
        ojson cells = ojson::array();
        std::size_t draws = 0, rank4 = 0, contain = 0, within_budget = 0;
        for (const auto& c : certs) {
            ojson ds = ojson::array();
            for (const auto& d : c.draws) {
                ojson support = ojson::array();
                for (const auto& p : d.support) support.push_back(to_string(p));
                ds.push_back({{"support", support},
                              {"moduli", detail::moduli_json(d.moduli)},
                              {"codimension", d.codimension},
                              {"constants", d.containment.constants},
                              {"vanishing", d.containment.vanishing}});
                ++draws;
                rank4 += d.codimension == 4 ? 1 : 0;
                contain += d.containment.ok() ? 1 : 0;
            }
            within_budget += c.budget <= 6 ? 1 : 0;
            cells.push_back({{"cell", c.cell.name()},
                             {"multiplicities", c.multiplicities},
                             {"budget", c.budget},
                             {"draws", ds}});
        }
        doc["codimension"] = {{"cells", certs.size()},
                              {"draws", draws},
                              {"rank_4", rank4},
                              {"containments_pass", contain},
                              {"within_budget", within_budget},
                              {"all_pass", rank4 == draws && contain == draws && within_budget == certs.size()},
                              {"results", cells}};
    }
    return doc;
}

}  // namespace tricell
