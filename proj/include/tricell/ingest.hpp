#pragma once

// Plain-text data files. All formats are line oriented; `#` starts a comment
// and blank lines are ignored.
//
//   boundary_dN.txt    GEN : T1 + T2 + ...      (empty right side means 0)
//   kernel_d2.txt      kerNN : CELL + CELL ...
//   expansions_d3.txt  GEN : kerNN + kerMM ...
//   matrix_dN.txt      blocks of  `columns : C1 C2 ...`  then  `ROW | + . + ...`
//   cells.txt          NAME DIM
//   errata.txt         SECTION GEN ACTION TERM [REPLACEMENT] JUSTIFICATION

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cells.hpp"
#include "error.hpp"

namespace tricell {

namespace detail {

struct RawLine {
    std::size_t number;  // 1-based
    std::string text;    // comment stripped, trimmed
};

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_ws(std::string_view s) {
    std::istringstream in{std::string(s)};
    std::vector<std::string> out;
    for (std::string tok; in >> tok;) out.push_back(tok);
    return out;
}

inline std::vector<RawLine> content_lines(std::string_view text) {
    std::vector<RawLine> out;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        ++number;
        auto line = text.substr(pos, end - pos);
        if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
        if (auto t = trim(line); !t.empty()) out.push_back({number, std::move(t)});
        pos = end + 1;
    }
    return out;
}

struct SumLine {
    std::size_t number;
    std::string lhs;
    std::vector<std::string> terms;
};

// `LHS : T1 + T2 + ...`. Terms are whitespace-separated with standalone `+`
// separators, so names ending in a sign (E+, bJ321-) stay intact.
inline std::vector<SumLine> parse_sum_lines(std::string_view text, const std::string& source) {
    std::vector<SumLine> out;
    for (const auto& raw : content_lines(text)) {
        const auto colon = raw.text.find(':');
        if (colon == std::string::npos) throw ParseError(source, raw.number, "expected 'NAME : TERM + TERM ...'");
        SumLine line{raw.number, trim(std::string_view(raw.text).substr(0, colon)), {}};
        if (line.lhs.empty() || line.lhs.find_first_of(" \t") != std::string::npos)
            throw ParseError(source, raw.number, "malformed generator name '" + line.lhs + "'");
        const auto toks = split_ws(std::string_view(raw.text).substr(colon + 1));
        for (std::size_t i = 0; i < toks.size(); ++i) {
            if (i % 2 == 1) {
                if (toks[i] != "+") throw ParseError(source, raw.number, "expected '+' between terms, got '" + toks[i] + "'");
                continue;
            }
            if (toks[i] == "+") throw ParseError(source, raw.number, "missing term before '+'");
            line.terms.push_back(toks[i]);
        }
        if (!toks.empty() && toks.size() % 2 == 0) throw ParseError(source, raw.number, "trailing '+'");
        out.push_back(std::move(line));
    }
    return out;
}

inline Cell parse_cell_at(const std::string& name, const std::string& source, std::size_t line) {
    if (auto c = try_parse_cell(name)) return *c;
    throw ParseError(source, line, "unknown cell name '" + name + "'");
}

inline std::string join_sum(const std::string& lhs, const std::vector<std::string>& terms) {
    std::string s = lhs + " :";
    for (std::size_t i = 0; i < terms.size(); ++i) s += (i == 0 ? " " : " + ") + terms[i];
    return s + "\n";
}

}  // namespace detail

// ---------------------------------------------------------------- boundaries

struct BoundaryLine {
    Cell generator;
    std::vector<Cell> terms;
    std::size_t line = 0;  ///< source line, 0 when built in memory

    friend bool operator==(const BoundaryLine& a, const BoundaryLine& b) {
        return a.generator == b.generator && a.terms == b.terms;
    }
};

/// The stated boundary formulas of one degree, in file order.
struct BoundaryFile {
    int degree = 0;
    std::vector<BoundaryLine> lines;

    const BoundaryLine* find(const Cell& generator) const {
        for (const auto& l : lines)
            if (l.generator == generator) return &l;
        return nullptr;
    }
    BoundaryLine* find(const Cell& generator) {
        return const_cast<BoundaryLine*>(std::as_const(*this).find(generator));
    }
    friend bool operator==(const BoundaryFile&, const BoundaryFile&) = default;
};

/// Parses a boundary file of the given degree. Generators must be catalog
/// cells of that dimension and appear once; terms must be catalog cells but
/// are not checked for dimension (that is the linter's job).
inline BoundaryFile parse_boundary_file(std::string_view text, int degree, const std::string& source = "<boundary>") {
    BoundaryFile f{degree, {}};
    std::set<std::string> seen;
    for (const auto& sl : detail::parse_sum_lines(text, source)) {
        const auto gen = detail::parse_cell_at(sl.lhs, source, sl.number);
        if (gen.dimension() != degree)
            throw ParseError(source, sl.number,
                             "generator " + gen.name() + " has dimension " + std::to_string(gen.dimension()) +
                                 ", expected " + std::to_string(degree));
        if (!seen.insert(gen.name()).second)
            throw ParseError(source, sl.number, "duplicate generator " + gen.name());
        BoundaryLine bl{gen, {}, sl.number};
        for (const auto& t : sl.terms) bl.terms.push_back(detail::parse_cell_at(t, source, sl.number));
        f.lines.push_back(std::move(bl));
    }
    return f;
}

inline std::string serialize(const BoundaryFile& f) {
    std::string out;
    for (const auto& l : f.lines) {
        std::vector<std::string> names;
        for (const auto& t : l.terms) names.push_back(t.name());
        out += detail::join_sum(l.generator.name(), names);
    }
    return out;
}

// ------------------------------------------------------- kernel generators

struct KernelGenerator {
    std::string label;  ///< ker01, ker02, ...
    std::vector<Cell> cells;
};

struct KernelFile {
    std::vector<KernelGenerator> generators;

    /// 1-based position of a label, or 0.
    std::size_t index_of(std::string_view label) const {
        for (std::size_t i = 0; i < generators.size(); ++i)
            if (generators[i].label == label) return i + 1;
        return 0;
    }
};

inline std::string kernel_label(std::size_t index) {
    return (index < 10 ? "ker0" : "ker") + std::to_string(index);
}

/// Labels must run ker01, ker02, ... in order.
inline KernelFile parse_kernel_file(std::string_view text, const std::string& source = "<kernel>") {
    KernelFile f;
    for (const auto& sl : detail::parse_sum_lines(text, source)) {
        const auto expected = kernel_label(f.generators.size() + 1);
        if (sl.lhs != expected)
            throw ParseError(source, sl.number, "expected label " + expected + ", got '" + sl.lhs + "'");
        KernelGenerator g{sl.lhs, {}};
        for (const auto& t : sl.terms) g.cells.push_back(detail::parse_cell_at(t, source, sl.number));
        f.generators.push_back(std::move(g));
    }
    return f;
}

// -------------------------------------------------------------- expansions

struct Expansion {
    Cell generator;
    std::vector<std::size_t> kernel_indices;  ///< 1-based, as stated
    std::size_t line = 0;
};

struct ExpansionFile {
    std::vector<Expansion> rows;

    Expansion* find(const Cell& generator) {
        for (auto& r : rows)
            if (r.generator == generator) return &r;
        return nullptr;
    }
};

inline std::size_t parse_kernel_ref(const std::string& tok, const std::string& source, std::size_t line) {
    if (tok.size() > 3 && tok.compare(0, 3, "ker") == 0 &&
        std::all_of(tok.begin() + 3, tok.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        const auto n = static_cast<std::size_t>(std::stoul(tok.substr(3)));
        if (n >= 1 && kernel_label(n) == tok) return n;
    }
    throw ParseError(source, line, "expected a kernel label kerNN, got '" + tok + "'");
}

inline ExpansionFile parse_expansion_file(std::string_view text, const std::string& source = "<expansions>") {
    ExpansionFile f;
    std::set<std::string> seen;
    for (const auto& sl : detail::parse_sum_lines(text, source)) {
        Expansion e{detail::parse_cell_at(sl.lhs, source, sl.number), {}, sl.number};
        if (!seen.insert(e.generator.name()).second)
            throw ParseError(source, sl.number, "duplicate generator " + e.generator.name());
        for (const auto& t : sl.terms) e.kernel_indices.push_back(parse_kernel_ref(t, source, sl.number));
        f.rows.push_back(std::move(e));
    }
    return f;
}

// ------------------------------------------------------------------ census

struct CensusEntry {
    std::string name;
    int dimension;
};

inline std::vector<CensusEntry> parse_census_file(std::string_view text, const std::string& source = "<cells>") {
    std::vector<CensusEntry> out;
    for (const auto& raw : detail::content_lines(text)) {
        const auto toks = detail::split_ws(raw.text);
        if (toks.size() != 2 || toks[1].empty() || !std::all_of(toks[1].begin(), toks[1].end(), [](unsigned char ch) { return std::isdigit(ch) != 0; }))
            throw ParseError(source, raw.number, "expected 'NAME DIM'");
        out.push_back({toks[0], std::stoi(toks[1])});
    }
    return out;
}

/// Disagreements between a census file and the catalog, one message each.
inline std::vector<std::string> check_census(const std::vector<CensusEntry>& census) {
    std::vector<std::string> problems;
    std::set<std::string> listed;
    for (const auto& e : census) {
        const auto c = try_parse_cell(e.name);
        if (!c) {
            problems.push_back("unknown cell " + e.name);
            continue;
        }
        if (!listed.insert(c->name()).second) problems.push_back("duplicate cell " + e.name);
        if (c->dimension() != e.dimension)
            problems.push_back(e.name + " listed with dimension " + std::to_string(e.dimension) + ", catalog has " +
                               std::to_string(c->dimension()));
    }
    for (const auto& c : enumerate_cells())
        if (!listed.contains(c.name())) problems.push_back("catalog cell " + c.name() + " missing from census");
    return problems;
}

// ------------------------------------------------------------------ errata

enum class ErrataSection { boundary, expansion };
enum class ErrataAction { add, remove, replace };
enum class Justification { dimension_lint, type_lint, d_squared_localization };

inline std::string_view to_string(ErrataSection s) { return s == ErrataSection::boundary ? "boundary" : "expansion"; }
inline std::string_view to_string(ErrataAction a) {
    switch (a) {
        case ErrataAction::add: return "add";
        case ErrataAction::remove: return "remove";
        case ErrataAction::replace: return "replace";
    }
    return "?";
}
inline std::string_view to_string(Justification j) {
    switch (j) {
        case Justification::dimension_lint: return "dimension-lint";
        case Justification::type_lint: return "type-lint";
        case Justification::d_squared_localization: return "d-squared-localization";
    }
    return "?";
}

struct ErrataEntry {
    ErrataSection section = ErrataSection::boundary;
    std::string generator;
    ErrataAction action = ErrataAction::add;
    std::string term;
    std::optional<std::string> replacement;
    Justification justification = Justification::dimension_lint;
    std::size_t line = 0;

    /// Canonical one-line form, as in the ledger file.
    std::string text() const {
        std::string s = std::string(to_string(section)) + " " + generator + " " + std::string(to_string(action)) + " " + term;
        if (replacement) s += " " + *replacement;
        return s + " " + std::string(to_string(justification));
    }
};

struct ErrataLedger {
    std::vector<ErrataEntry> entries;

    ErrataLedger without(std::size_t index) const {
        ErrataLedger l = *this;
        l.entries.erase(l.entries.begin() + static_cast<std::ptrdiff_t>(index));
        return l;
    }
};

inline ErrataLedger parse_errata(std::string_view text, const std::string& source = "<errata>") {
    ErrataLedger ledger;
    for (const auto& raw : detail::content_lines(text)) {
        const auto t = detail::split_ws(raw.text);
        const auto fail = [&](const std::string& what) { return ParseError(source, raw.number, what); };
        if (t.size() < 5) throw fail("expected 'SECTION GEN ACTION TERM [REPLACEMENT] JUSTIFICATION'");
        ErrataEntry e;
        e.line = raw.number;
        if (t[0] == "boundary") e.section = ErrataSection::boundary;
        else if (t[0] == "expansion") e.section = ErrataSection::expansion;
        else throw fail("unknown section '" + t[0] + "'");
        e.generator = t[1];
        if (t[2] == "add") e.action = ErrataAction::add;
        else if (t[2] == "remove") e.action = ErrataAction::remove;
        else if (t[2] == "replace") e.action = ErrataAction::replace;
        else throw fail("unknown action '" + t[2] + "'");
        const std::size_t want = e.action == ErrataAction::replace ? 6 : 5;
        if (t.size() != want)
            throw fail("'" + t[2] + "' takes " + std::to_string(want - 4) + " operand(s) and a justification");
        e.term = t[3];
        if (e.action == ErrataAction::replace) e.replacement = t[4];
        const auto& j = t.back();
        if (j == "dimension-lint") e.justification = Justification::dimension_lint;
        else if (j == "type-lint") e.justification = Justification::type_lint;
        else if (j == "d-squared-localization") e.justification = Justification::d_squared_localization;
        else throw fail("missing or unknown justification tag '" + j + "'");

        detail::parse_cell_at(e.generator, source, raw.number);
        if (e.section == ErrataSection::boundary) {
            detail::parse_cell_at(e.term, source, raw.number);
            if (e.replacement) detail::parse_cell_at(*e.replacement, source, raw.number);
        } else {
            parse_kernel_ref(e.term, source, raw.number);
            if (e.replacement) parse_kernel_ref(*e.replacement, source, raw.number);
        }
        ledger.entries.push_back(std::move(e));
    }
    return ledger;
}

enum class ErrataStatus { applied, already_applied };

struct AppliedErratum {
    ErrataEntry entry;
    ErrataStatus status;
};

struct ErrataReport {
    std::vector<AppliedErratum> applied;
};

namespace detail {

// One edit on a term list. Re-applying an entry to already corrected data is
// a no-op, which makes the whole ledger idempotent.
template <class T>
ErrataStatus edit_terms(std::vector<T>& terms, const ErrataEntry& e, const T& term, const std::optional<T>& repl) {
    auto it = std::find(terms.begin(), terms.end(), term);
    const bool present = it != terms.end();
    switch (e.action) {
        case ErrataAction::add:
            if (present) return ErrataStatus::already_applied;
            terms.push_back(term);
            return ErrataStatus::applied;
        case ErrataAction::remove:
            if (!present) return ErrataStatus::already_applied;
            terms.erase(it);
            return ErrataStatus::applied;
        case ErrataAction::replace:
            if (present) {
                *it = *repl;
                return ErrataStatus::applied;
            }
            if (std::find(terms.begin(), terms.end(), *repl) != terms.end()) return ErrataStatus::already_applied;
            throw DanglingErrata("errata entry '" + e.text() + "': term " + e.term + " not found in the row of " +
                                 e.generator);
    }
    return ErrataStatus::applied;
}

}  // namespace detail

/// Applies the ledger's boundary entries whose generator has this file's
/// degree. The input is not modified.
inline BoundaryFile apply_errata(const BoundaryFile& raw, const ErrataLedger& ledger, ErrataReport* report = nullptr) {
    BoundaryFile out = raw;
    for (const auto& e : ledger.entries) {
        if (e.section != ErrataSection::boundary) continue;
        const auto gen = parse_cell(e.generator);
        if (gen.dimension() != raw.degree) continue;
        auto* line = out.find(gen);
        if (!line) throw DanglingErrata("errata entry '" + e.text() + "': no boundary row for " + e.generator);
        std::optional<Cell> repl;
        if (e.replacement) repl = parse_cell(*e.replacement);
        const auto status = detail::edit_terms(line->terms, e, parse_cell(e.term), repl);
        if (report) report->applied.push_back({e, status});
    }
    return out;
}

inline ExpansionFile apply_errata(const ExpansionFile& raw, const ErrataLedger& ledger, ErrataReport* report = nullptr) {
    ExpansionFile out = raw;
    for (const auto& e : ledger.entries) {
        if (e.section != ErrataSection::expansion) continue;
        auto* row = out.find(parse_cell(e.generator));
        if (!row) throw DanglingErrata("errata entry '" + e.text() + "': no expansion row for " + e.generator);
        std::optional<std::size_t> repl;
        if (e.replacement) repl = parse_kernel_ref(*e.replacement, "<errata>", e.line);
        const auto status =
            detail::edit_terms(row->kernel_indices, e, parse_kernel_ref(e.term, "<errata>", e.line), repl);
        std::sort(row->kernel_indices.begin(), row->kernel_indices.end());
        if (report) report->applied.push_back({e, status});
    }
    return out;
}

// ---------------------------------------------------------------- matrices

struct MatrixBlock {
    std::string caption;  ///< the comment line preceding the block, if any
    std::vector<Cell> columns;
    std::vector<std::pair<Cell, std::vector<bool>>> rows;

    friend bool operator==(const MatrixBlock&, const MatrixBlock&) = default;
};

/// A plus-mark incidence matrix, possibly split into captioned blocks.
struct MatrixFile {
    std::vector<MatrixBlock> blocks;

    /// Every marked (row, column) pair across all blocks.
    std::set<std::pair<Cell, Cell>> entries() const {
        std::set<std::pair<Cell, Cell>> out;
        for (const auto& b : blocks)
            for (const auto& [row, marks] : b.rows)
                for (std::size_t c = 0; c < marks.size(); ++c)
                    if (marks[c]) out.emplace(row, b.columns[c]);
        return out;
    }
    friend bool operator==(const MatrixFile&, const MatrixFile&) = default;
};

inline MatrixFile parse_matrix_file(std::string_view text, const std::string& source = "<matrix>") {
    MatrixFile f;
    std::string caption;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        ++number;
        const auto line = detail::trim(text.substr(pos, end - pos));
        pos = end + 1;
        if (line.empty()) continue;
        if (line.front() == '#') {
            caption = detail::trim(std::string_view(line).substr(1));
            continue;
        }
        const auto fail = [&](const std::string& what) { return ParseError(source, number, what); };
        if (line.rfind("columns", 0) == 0) {
            const auto colon = line.find(':');
            if (colon == std::string::npos || detail::trim(std::string_view(line).substr(0, colon)) != "columns")
                throw fail("expected 'columns : NAME NAME ...'");
            MatrixBlock b;
            b.caption = caption;
            for (const auto& t : detail::split_ws(std::string_view(line).substr(colon + 1)))
                b.columns.push_back(detail::parse_cell_at(t, source, number));
            if (b.columns.empty()) throw fail("block without columns");
            f.blocks.push_back(std::move(b));
            caption.clear();
            continue;
        }
        if (f.blocks.empty()) throw fail("matrix row before any 'columns' line");
        const auto bar = line.find('|');
        if (bar == std::string::npos) throw fail("expected 'ROW | marks'");
        auto& b = f.blocks.back();
        const auto row = detail::parse_cell_at(detail::trim(std::string_view(line).substr(0, bar)), source, number);
        std::vector<bool> marks;
        for (const auto& t : detail::split_ws(std::string_view(line).substr(bar + 1))) {
            if (t == "+") marks.push_back(true);
            else if (t == ".") marks.push_back(false);
            else throw fail("matrix entries must be '+' or '.', got '" + t + "'");
        }
        if (marks.size() != b.columns.size())
            throw fail("row " + row.name() + " has " + std::to_string(marks.size()) + " entries for " +
                       std::to_string(b.columns.size()) + " columns");
        b.rows.emplace_back(row, std::move(marks));
    }
    return f;
}

inline std::string serialize(const MatrixFile& f) {
    std::string out;
    for (std::size_t i = 0; i < f.blocks.size(); ++i) {
        const auto& b = f.blocks[i];
        if (i > 0) out += "\n";
        if (!b.caption.empty()) out += "# " + b.caption + "\n";
        out += "columns :";
        for (const auto& c : b.columns) out += " " + c.name();
        out += "\n";
        for (const auto& [row, marks] : b.rows) {
            out += row.name() + " |";
            for (bool m : marks) out += m ? " +" : " .";
            out += "\n";
        }
    }
    return out;
}

struct CrossCheckReport {
    std::vector<std::pair<Cell, Cell>> only_in_formulas;
    std::vector<std::pair<Cell, Cell>> only_in_matrix;
    bool empty() const { return only_in_formulas.empty() && only_in_matrix.empty(); }
};

/// Symmetric difference between the (generator, term) pairs of the formulas
/// and the marked entries of the matrix.
inline CrossCheckReport cross_check_matrices(const BoundaryFile& formulas, const MatrixFile& matrix) {
    std::set<std::pair<Cell, Cell>> from_formulas;
    for (const auto& l : formulas.lines)
        for (const auto& t : l.terms)
            // Repeated terms cancel mod 2.
            if (!from_formulas.erase({l.generator, t})) from_formulas.emplace(l.generator, t);
    const auto from_matrix = matrix.entries();
    CrossCheckReport r;
    std::set_difference(from_formulas.begin(), from_formulas.end(), from_matrix.begin(), from_matrix.end(),
                        std::back_inserter(r.only_in_formulas));
    std::set_difference(from_matrix.begin(), from_matrix.end(), from_formulas.begin(), from_formulas.end(),
                        std::back_inserter(r.only_in_matrix));
    return r;
}

// -------------------------------------------------------------------- lint

struct LintFinding {
    Cell generator;
    Cell term;
    bool dimension = false;  ///< term dimension is not generator dimension - 1
    bool type = false;       ///< second-type generator with a first-type term

    std::string message() const {
        std::string s = "d(" + generator.name() + ") contains " + term.name() + ":";
        if (dimension)
            s += " dimension " + std::to_string(term.dimension()) + " where " +
                 std::to_string(generator.dimension() - 1) + " is required;";
        if (type) s += " first-type term in the boundary of a second-type cell;";
        s.pop_back();
        return s;
    }
};

/// Every term that breaks dimension homogeneity or type closure, in file order.
inline std::vector<LintFinding> lint(const BoundaryFile& f) {
    std::vector<LintFinding> out;
    for (const auto& l : f.lines)
        for (const auto& t : l.terms) {
            LintFinding x{l.generator, t, t.dimension() != l.generator.dimension() - 1, l.generator.barred && !t.barred};
            if (x.dimension || x.type) out.push_back(std::move(x));
        }
    return out;
}

// ----------------------------------------------------------------- dataset

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw MissingData("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline constexpr std::array<std::string_view, 10> required_data_files{
    "cells.txt",       "boundary_d2.txt", "boundary_d3.txt", "boundary_d4.txt",   "boundary_d5.txt",
    "boundary_d6.txt", "kernel_d2.txt",   "expansions_d3.txt", "matrix_d2.txt", "matrix_d3.txt"};

/// Everything read from a data directory, uncorrected.
struct Dataset {
    std::vector<CensusEntry> census;
    std::map<int, BoundaryFile> boundaries;  ///< degrees 2..6
    KernelFile kernels;
    ExpansionFile expansions;
    MatrixFile matrix_d2;
    MatrixFile matrix_d3;
};

inline Dataset load_dataset(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) throw MissingData("data directory not found: " + dir.string());
    std::vector<std::string> missing;
    for (auto name : required_data_files)
        if (!std::filesystem::is_regular_file(dir / name)) missing.emplace_back(name);
    if (!missing.empty()) {
        std::string msg = "data directory " + dir.string() + " lacks:";
        for (const auto& m : missing) msg += " " + m;
        throw MissingData(msg);
    }
    const auto load = [&](std::string_view name) { return read_file(dir / name); };
    Dataset d;
    d.census = parse_census_file(load("cells.txt"), "cells.txt");
    for (int deg = 2; deg <= 6; ++deg) {
        const auto name = "boundary_d" + std::to_string(deg) + ".txt";
        d.boundaries[deg] = parse_boundary_file(load(name), deg, name);
    }
    d.kernels = parse_kernel_file(load("kernel_d2.txt"), "kernel_d2.txt");
    d.expansions = parse_expansion_file(load("expansions_d3.txt"), "expansions_d3.txt");
    d.matrix_d2 = parse_matrix_file(load("matrix_d2.txt"), "matrix_d2.txt");
    d.matrix_d3 = parse_matrix_file(load("matrix_d3.txt"), "matrix_d3.txt");
    return d;
}

/// The dataset with every ledger entry applied.
inline Dataset corrected(const Dataset& raw, const ErrataLedger& ledger, ErrataReport* report = nullptr) {
    Dataset d = raw;
    for (auto& [deg, f] : d.boundaries) f = apply_errata(raw.boundaries.at(deg), ledger, report);
    d.expansions = apply_errata(raw.expansions, ledger, report);
    for (const auto& e : ledger.entries) {
        const auto gen = parse_cell(e.generator);
        if (e.section == ErrataSection::boundary && !raw.boundaries.contains(gen.dimension()))
            throw DanglingErrata("errata entry '" + e.text() + "': no boundary file of degree " +
                                 std::to_string(gen.dimension()));
    }
    return d;
}

}  // namespace tricell
