// tricell: command-line front end.
//
//   tricell validate            lint, errata, d^2 = 0
//   tricell homology            Betti numbers, generators, corollary checks
//   tricell codim CELL          codimension of one instantiated condition system
//   tricell report              JSON dossier of everything above plus the sweep
//
// Exit status: 0 success, 1 a mathematical check failed, 2 bad input or
// missing/unparsable data.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tricell/audit.hpp"

namespace {

using namespace tricell;
using ojson = nlohmann::ordered_json;

struct Options {
    std::optional<std::string> data;
    std::optional<std::string> errata;
    bool no_errata = false;
    bool json = false;
    std::uint64_t seed = default_seed;
    int degree = default_degree;
    unsigned jobs = 1;

    // codim
    std::string cell;
    std::optional<std::string> points;
    std::optional<std::string> alpha, beta, gamma;
    bool show_system = false;

    // report
    std::optional<std::string> output;
};

RunConfig make_config(const Options& o) {
    RunConfig c;
    c.data_dir = resolve_data_dir(o.data);
    if (o.errata) c.errata_path = *o.errata;
    c.use_errata = !o.no_errata;
    c.json = o.json;
    c.seed = o.seed;
    c.degree = o.degree;
    c.jobs = o.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : o.jobs;
    return c;
}

const char* mark(bool ok) { return ok ? "[ok]  " : "[FAIL]"; }

std::string cross_summary(const CrossCheckReport& r) {
    if (r.empty()) return "no differences";
    std::string s;
    for (const auto& [g, t] : r.only_in_formulas) s += "\n    only in formulas: (" + g.name() + ", " + t.name() + ")";
    for (const auto& [g, t] : r.only_in_matrix) s += "\n    only in matrix:   (" + g.name() + ", " + t.name() + ")";
    return s;
}

int cmd_validate(const Options& o) {
    const auto cfg = make_config(o);
    const auto raw = load_dataset(cfg.data_dir);
    const auto ledger = load_ledger(cfg);
    const auto v = validate(raw, ledger.ledger);
    const auto loo = leave_one_out(raw, ledger.ledger);

    if (cfg.json) {
        ojson j;
        ojson lint_raw = ojson::array(), lint_fixed = ojson::array(), errata = ojson::array(), fails = ojson::array();
        for (const auto& f : v.raw_lint) lint_raw.push_back(f.finding.message());
        for (const auto& f : v.corrected_lint) lint_fixed.push_back(f.finding.message());
        for (std::size_t i = 0; i < loo.size(); ++i)
            errata.push_back({{"entry", loo[i].entry.text()}, {"justified", loo[i].justified}, {"evidence", loo[i].evidence}});
        if (v.complex)
            for (const auto& f : v.complex->validation().failures) {
                ojson off = ojson::array();
                for (const auto& c : f.offending) off.push_back(c.name());
                fails.push_back({{"generator", f.generator.name()}, {"offending", off}});
            }
        j["errata_source"] = ledger.source;
        j["lint_raw"] = lint_raw;
        j["errata"] = errata;
        j["lint_corrected"] = lint_fixed;
        j["construction_error"] = v.construction_error;
        j["d_squared_failures"] = fails;
        j["cross_check_empty"] = {{"d2", v.cross_d2.empty()}, {"d3", v.cross_d3.empty()}};
        j["ok"] = v.ok();
        std::cout << j.dump(2) << "\n";
        return v.ok() ? 0 : 1;
    }

    std::cout << "data: " << cfg.data_dir.string() << "\nerrata: " << ledger.source << "\n\n";
    std::cout << "lint on raw data: " << v.raw_lint.size() << " finding(s)\n";
    for (const auto& f : v.raw_lint) std::cout << "  " << f.finding.message() << "\n";
    std::cout << "\nerrata entries: " << ledger.ledger.entries.size() << "\n";
    for (const auto& l : loo)
        std::cout << "  " << mark(l.justified) << " " << l.entry.text() << "\n         " << l.evidence << "\n";
    std::cout << "\nlint after errata: " << v.corrected_lint.size() << " finding(s)\n";
    for (const auto& f : v.corrected_lint) std::cout << "  " << f.finding.message() << "\n";
    std::cout << "\ncross-check d2 formulas vs matrix: " << cross_summary(v.cross_d2) << "\n";
    std::cout << "cross-check d3 formulas vs matrix: " << cross_summary(v.cross_d3) << "\n";
    if (!v.complex) {
        std::cout << "\nd^2 = 0: not checked, data do not form a complex: " << v.construction_error << "\n";
    } else {
        const auto& rep = v.complex->validation();
        std::cout << "\nd^2 = 0: " << (rep.ok() ? "holds in every degree" : "FAILS") << "\n";
        for (const auto& f : rep.failures) {
            std::cout << "  d(d(" << f.generator.name() << ")) =";
            for (const auto& c : f.offending) std::cout << " " << c.name();
            std::cout << "\n";
        }
    }
    std::cout << "\nvalidation " << (v.ok() ? "passed" : "FAILED") << "\n";
    return v.ok() ? 0 : 1;
}

int cmd_homology(const Options& o) {
    const auto cfg = make_config(o);
    const auto raw = load_dataset(cfg.data_dir);
    const auto v = validate(raw, load_ledger(cfg).ledger);
    if (!v.ok()) {
        std::cerr << "tricell: complex does not validate; run 'tricell validate' for details\n";
        return 1;
    }
    const auto& cx = *v.complex;
    const auto h = compute_homology(cx);
    const auto kr = cx.verify_kernel_generators(v.data.kernels);
    const auto er = cx.verify_expansions(v.data.kernels, v.data.expansions);
    bool ok = kr.spans() && kr.independent() && er.ok() && h.rank_nullity && h.euler == h.betti_alternating_sum;
    for (const auto& r : h.h1_relations) ok = ok && r.holds;
    for (const auto& r : h.h2_relations) ok = ok && r.holds;

    if (cfg.json) {
        ojson j;
        ojson degs = ojson::array();
        for (int d = 0; d <= cx.top_degree(); ++d) {
            ojson gens = ojson::array();
            for (const auto& g : h.generators[static_cast<std::size_t>(d)]) gens.push_back(cx.format(g));
            degs.push_back({{"degree", d}, {"betti", h.betti[static_cast<std::size_t>(d)]}, {"generators", gens}});
        }
        ojson rels = ojson::array();
        for (const auto* set : {&h.h1_relations, &h.h2_relations})
            for (const auto& r : *set) rels.push_back({{"relation", r.statement}, {"holds", r.holds}});
        j["degrees"] = degs;
        j["relations"] = rels;
        j["euler_characteristic"] = h.euler;
        j["kernel_generators"] = {{"all_cycles", kr.all_cycles()}, {"rank", kr.rank}, {"kernel_dimension", kr.kernel_dimension}};
        j["expansions"] = {{"matched", er.matched()}, {"total", er.rows.size()}};
        j["ok"] = ok;
        std::cout << j.dump(2) << "\n";
        return ok ? 0 : 1;
    }

    for (int d = 0; d <= cx.top_degree(); ++d) {
        std::cout << "b" << d << " = " << h.betti[static_cast<std::size_t>(d)];
        for (const auto& g : h.generators[static_cast<std::size_t>(d)]) std::cout << "\n    [" << cx.format(g) << "]";
        std::cout << "\n";
    }
    std::cout << "\neuler characteristic " << h.euler << ", alternating Betti sum " << h.betti_alternating_sum << "\n";
    std::cout << "\nH1 relations\n";
    for (const auto& r : h.h1_relations) std::cout << "  " << mark(r.holds) << " " << r.statement << "\n";
    std::cout << "H2 relations\n";
    for (const auto& r : h.h2_relations) std::cout << "  " << mark(r.holds) << " " << r.statement << "\n";
    std::cout << "\nkernel generators: " << kr.listed << " listed, " << (kr.all_cycles() ? "all cycles" : "NOT all cycles")
              << ", rank " << kr.rank << ", dim ker d2 = " << kr.kernel_dimension << "\n";
    std::cout << "expansions: " << er.matched() << "/" << er.rows.size() << " match\n";
    for (const auto& r : er.rows)
        if (!r.match()) std::cout << "  mismatch at " << r.generator.name() << "\n";
    return ok ? 0 : 1;
}

std::vector<Rational> parse_points(const std::string& text) {
    std::vector<Rational> out;
    std::stringstream ss(text);
    for (std::string tok; std::getline(ss, tok, ',');) out.push_back(parse_rational(detail::trim(tok)));
    return out;
}

int cmd_codim(const Options& o) {
    const auto cell = parse_cell(o.cell);
    auto rng = cell_rng(cell, o.seed);
    auto p = draw_parameters(cell, rng);
    if (o.points) {
        p.support = parse_points(*o.points);
        const auto n = static_cast<std::size_t>(family_info(cell.family).support_size);
        if (cell.barred && p.support.size() + 1 == n) p.support.push_back(Rational(0));
    }
    if (o.alpha) p.moduli.alpha = parse_rational(*o.alpha);
    if (o.beta) p.moduli.beta = parse_rational(*o.beta);
    if (o.gamma) p.moduli.gamma = parse_rational(*o.gamma);
    const auto sys = instantiate(cell, p.support, p.moduli);
    const auto rank = codimension(sys, o.degree);
    const auto rep = verify_containments(sys);
    const bool ok = rank == 4 && rep.ok();

    if (o.json) {
        ojson j;
        ojson support = ojson::array(), mods = ojson::object(), fs = ojson::array();
        for (const auto& x : sys.support) support.push_back(to_string(x));
        for (auto m : {Modulus::alpha, Modulus::beta, Modulus::gamma})
            if (sys.moduli.get(m)) mods[std::string(modulus_name(m))] = to_string(*sys.moduli.get(m));
        std::stringstream lines(format_system(sys));
        for (std::string l; std::getline(lines, l);) fs.push_back(l);
        j["cell"] = cell.name();
        j["support"] = support;
        j["moduli"] = mods;
        if (o.show_system) j["system"] = fs;
        j["degree"] = o.degree;
        j["codimension"] = rank;
        j["constants"] = rep.constants;
        j["vanishing"] = rep.vanishing;
        j["multiplicities"] = rep.multiplicities;
        std::cout << j.dump(2) << "\n";
        return ok ? 0 : 1;
    }

    std::cout << "cell " << cell.name() << " (" << pretty_name(cell) << "), dimension " << cell.dimension() << "\n";
    std::cout << "support:";
    for (std::size_t i = 0; i < sys.support.size(); ++i) std::cout << " p" << i + 1 << "=" << to_string(sys.support[i]);
    std::cout << "\n";
    for (auto m : {Modulus::alpha, Modulus::beta, Modulus::gamma})
        if (sys.moduli.get(m)) std::cout << modulus_name(m) << " = " << to_string(*sys.moduli.get(m)) << "\n";
    if (o.show_system) std::cout << "system:\n" << format_system(sys);
    std::cout << "rank at monomial degree " << o.degree << ": " << rank << "\n";
    if (o.degree < min_certification_degree)
        std::cout << "  (degree below " << min_certification_degree << ": not a certification)\n";
    std::cout << "template multiplicities:";
    for (int m : rep.multiplicities) std::cout << " " << m;
    std::cout << "\n" << mark(rep.constants) << " constants annihilated\n"
              << mark(rep.vanishing) << " multiplicity ideal annihilated\n";
    if (!rep.detail.empty()) std::cout << "  " << rep.detail << "\n";
    return ok ? 0 : 1;
}

int cmd_report(const Options& o) {
    auto cfg = make_config(o);
    const auto doc = build_dossier(cfg);
    const auto text = doc.dump(2) + "\n";
    if (o.output) {
        std::ofstream out(*o.output, std::ios::binary);
        if (!out) throw MissingData("cannot write " + *o.output);
        out << text;
    } else {
        std::cout << text;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification engine for the mod-2 cellular complex of codimension-four trinitary algebras on the circle"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--data", o.data, "data directory (default: $TRICELL_DATA, then the build-time data dir)");
    app.add_option("--errata", o.errata, "errata ledger (default: DATA/errata.txt when present)");
    app.add_flag("--no-errata", o.no_errata, "use the raw data without corrections");
    app.add_flag("--json", o.json, "machine-readable output");
    app.add_option("--seed", o.seed, "seed for parameter draws")->capture_default_str();
    app.add_option("--degree", o.degree, "monomial degree bound")->check(CLI::Range(0, 200))->capture_default_str();
    app.add_option("--jobs", o.jobs, "worker threads for the codimension sweep (0 = all cores)")->capture_default_str();

    auto* validate_cmd = app.add_subcommand("validate", "lint the raw data, apply errata, check d^2 = 0");
    auto* homology_cmd = app.add_subcommand("homology", "Betti numbers, generators and corollary checks");
    auto* codim_cmd = app.add_subcommand("codim", "exact codimension of one cell's condition system");
    codim_cmd->add_option("CELL", o.cell, "cell name, e.g. V1+, bE3, NB")->required();
    codim_cmd->add_option("--points", o.points, "comma-separated support points, e.g. 1/3,7/5");
    codim_cmd->add_option("--alpha", o.alpha, "modulus alpha (rational)");
    codim_cmd->add_option("--beta", o.beta, "modulus beta (rational)");
    codim_cmd->add_option("--gamma", o.gamma, "modulus gamma (rational)");
    codim_cmd->add_flag("--show-system", o.show_system, "print the instantiated functionals");
    auto* report_cmd = app.add_subcommand("report", "full JSON dossier");
    report_cmd->add_option("-o,--output", o.output, "write the dossier to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*validate_cmd) return cmd_validate(o);
        if (*homology_cmd) return cmd_homology(o);
        if (*codim_cmd) return cmd_codim(o);
        if (*report_cmd) return cmd_report(o);
    } catch (const NotValidated& e) {
        std::cerr << "tricell: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "tricell: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "tricell: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
