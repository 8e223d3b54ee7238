#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "tricell/ingest.hpp"

using namespace tricell;

namespace {

const std::filesystem::path data_dir = TRICELL_TEST_DATA_DIR;

const Dataset& shipped() {
    static const Dataset d = load_dataset(data_dir);
    return d;
}

const ErrataLedger& shipped_ledger() {
    static const ErrataLedger l = parse_errata(read_file(data_dir / "errata.txt"), "errata.txt");
    return l;
}

std::vector<std::string> names(const std::vector<Cell>& cells) {
    std::vector<std::string> out;
    for (const auto& c : cells) out.push_back(c.name());
    return out;
}

}  // namespace

TEST_CASE("boundary lines parse") {
    const auto f = parse_boundary_file("# comment\nZ : NB\n\nTH :\nbX+ : bY1 + bY2 # trailing\n", 2);
    REQUIRE(f.lines.size() == 3);
    CHECK(f.lines[0].generator.name() == "Z");
    CHECK(names(f.lines[0].terms) == std::vector<std::string>{"NB"});
    CHECK(f.lines[1].terms.empty());
    CHECK(f.lines[1].line == 4);
    CHECK(names(f.lines[2].terms) == std::vector<std::string>{"bY1", "bY2"});
}

TEST_CASE("boundary parse errors carry line numbers") {
    try {
        parse_boundary_file("Z : NB\nQ7 : NB\n", 2, "f.txt");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.source() == "f.txt");
        CHECK(std::string(e.what()).find("Q7") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_boundary_file("Z : NB\nZ : NB\n", 2), ParseError);
    CHECK_THROWS_AS(parse_boundary_file("Z : NB +\n", 2), ParseError);
    CHECK_THROWS_AS(parse_boundary_file("Z : NB bY1\n", 2), ParseError);
    CHECK_THROWS_AS(parse_boundary_file("Z NB\n", 2), ParseError);
    CHECK_THROWS_AS(parse_boundary_file("NB : bNB\n", 2), ParseError);  // generator of the wrong degree
    try {
        parse_boundary_file("Z : NB + Q9\n", 2);
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
    }
}

TEST_CASE("shipped files parse and round-trip") {
    const auto& d = shipped();
    const std::map<int, std::size_t> rows{{2, 29}, {3, 68}, {4, 82}, {5, 47}, {6, 10}};
    for (const auto& [deg, f] : d.boundaries) {
        CHECK(f.lines.size() == rows.at(deg));
        CHECK(parse_boundary_file(serialize(f), deg) == f);
    }
    CHECK(d.kernels.generators.size() == 23);
    CHECK(d.expansions.rows.size() == 68);
    CHECK(parse_matrix_file(serialize(d.matrix_d2)) == d.matrix_d2);
    CHECK(parse_matrix_file(serialize(d.matrix_d3)) == d.matrix_d3);
    CHECK(d.matrix_d3.blocks.size() == 4);
    CHECK(d.matrix_d3.blocks[0].caption == "left top part");
    CHECK(check_census(d.census).empty());
}

TEST_CASE("kernel and expansion files") {
    const auto k = parse_kernel_file("ker01 : Y1 + Y2\nker02 : bOM\n");
    CHECK(k.index_of("ker02") == 2);
    CHECK_THROWS_AS(parse_kernel_file("ker02 : Y1\n"), ParseError);
    const auto e = parse_expansion_file("L123 : ker04 + ker10\nOM :\n");
    CHECK(e.rows[0].kernel_indices == std::vector<std::size_t>{4, 10});
    CHECK(e.rows[1].kernel_indices.empty());
    CHECK_THROWS_AS(parse_expansion_file("L123 : ker4\n"), ParseError);
    CHECK_THROWS_AS(parse_expansion_file("L123 : kernel\n"), ParseError);
}

TEST_CASE("census problems are reported") {
    auto c = shipped().census;
    c.pop_back();
    c.push_back({"Z", 3});
    c.push_back({"Q1", 2});
    const auto p = check_census(c);
    CHECK(p.size() == 4);  // wrong dimension, duplicate, unknown, missing
}

TEST_CASE("errata ledger grammar") {
    const auto l = parse_errata("boundary bC42 replace W2- bW2- dimension-lint\nexpansion bG2143 add ker08 d-squared-localization\n");
    REQUIRE(l.entries.size() == 2);
    CHECK(l.entries[0].replacement == "bW2-");
    CHECK(l.entries[1].text() == "expansion bG2143 add ker08 d-squared-localization");
    CHECK_THROWS_AS(parse_errata("boundary bC42 replace W2- bW2-\n"), ParseError);              // untagged
    CHECK_THROWS_AS(parse_errata("boundary bC42 replace W2- bW2- hunch\n"), ParseError);        // bad tag
    CHECK_THROWS_AS(parse_errata("boundary bC42 add W2- bW2- type-lint\n"), ParseError);        // arity
    CHECK_THROWS_AS(parse_errata("boundary bC42 remove Q2 type-lint\n"), ParseError);           // unknown cell
    CHECK_THROWS_AS(parse_errata("expansion bG2143 add L123 d-squared-localization\n"), ParseError);
    CHECK_THROWS_AS(parse_errata("appendix bC42 remove W2- type-lint\n"), ParseError);
}

TEST_CASE("applying errata") {
    const auto& raw = shipped().boundaries.at(4);
    const auto& ledger = shipped_ledger();
    ErrataReport rep;
    const auto fixed = apply_errata(raw, ledger, &rep);
    CHECK(rep.applied.size() == 5);  // the degree-4 entries
    CHECK(raw.find(parse_cell("bD34-"))->terms.back().name() == "I3");  // input untouched
    CHECK(names(fixed.find(parse_cell("bD34-"))->terms) ==
          std::vector<std::string>{"bK1-", "bJ231-", "bH3", "bH4", "bJ321+", "bI3"});
    CHECK(names(fixed.find(parse_cell("bC42"))->terms).back() == "bI3");

    // Idempotent.
    ErrataReport again;
    CHECK(apply_errata(fixed, ledger, &again) == fixed);
    for (const auto& a : again.applied) CHECK(a.status == ErrataStatus::already_applied);

    // Empty ledger is the identity.
    CHECK(apply_errata(raw, ErrataLedger{}) == raw);

    // Dangling locations are rejected.
    const auto dangling = parse_errata("boundary bC42 replace Y1 bY1 dimension-lint\n");
    CHECK_THROWS_AS(apply_errata(raw, dangling), DanglingErrata);

    // add / remove.
    const auto add_remove = parse_errata("boundary bC42 add bH1 type-lint\nboundary bC21 remove bF1 type-lint\n");
    const auto edited = apply_errata(raw, add_remove);
    CHECK(names(edited.find(parse_cell("bC42"))->terms).back() == "bH1");
    const auto c21 = names(edited.find(parse_cell("bC21"))->terms);
    CHECK(std::find(c21.begin(), c21.end(), "bF1") == c21.end());
}

TEST_CASE("expansion errata") {
    const auto fixed = apply_errata(shipped().expansions, shipped_ledger());
    ExpansionFile copy = fixed;
    CHECK(copy.find(parse_cell("bG2143"))->kernel_indices == std::vector<std::size_t>{7, 8, 9, 12, 20});
    CHECK(apply_errata(fixed, shipped_ledger()).rows.size() == 68);
    CHECK_THROWS_AS(apply_errata(shipped().expansions, parse_errata("expansion bNB add ker01 d-squared-localization\n")),
                    DanglingErrata);
}

TEST_CASE("lint finds exactly the printed slips") {
    std::vector<std::string> found;
    for (const auto& [deg, f] : shipped().boundaries)
        for (const auto& x : lint(f)) {
            CHECK(x.dimension);
            CHECK(x.type);
            found.push_back(x.generator.name() + ":" + x.term.name());
        }
    std::sort(found.begin(), found.end());
    CHECK(found == std::vector<std::string>{"bC42:W2-", "bD34+:J321-", "bD34-:I3", "bD34-:J321+", "bE3:W2+",
                                            "bG2341:X-"});
    for (const auto& [deg, f] : shipped().boundaries) CHECK(lint(apply_errata(f, shipped_ledger())).empty());
    CHECK(lint(BoundaryFile{3, {}}).empty());

    // A type-only slip: right dimension, wrong type.
    const auto t = parse_boundary_file("bX+ : NB\n", 2);
    const auto tl = lint(t);
    REQUIRE(tl.size() == 1);
    CHECK_FALSE(tl[0].dimension);
    CHECK(tl[0].type);
}

TEST_CASE("matrix cross-check") {
    const auto& d = shipped();
    CHECK(cross_check_matrices(d.boundaries.at(2), d.matrix_d2).empty());
    const auto raw3 = cross_check_matrices(d.boundaries.at(3), d.matrix_d3);
    REQUIRE(raw3.only_in_formulas.size() == 1);
    REQUIRE(raw3.only_in_matrix.size() == 1);
    CHECK(raw3.only_in_formulas[0].second.name() == "X-");
    CHECK(raw3.only_in_matrix[0].second.name() == "bX-");
    CHECK(cross_check_matrices(apply_errata(d.boundaries.at(3), shipped_ledger()), d.matrix_d3).empty());

    // Row M1 of the top-left block.
    const auto& block = d.matrix_d3.blocks[0];
    std::vector<std::string> marked;
    for (const auto& [row, marks] : block.rows)
        if (row.name() == "M1")
            for (std::size_t c = 0; c < marks.size(); ++c)
                if (marks[c]) marked.push_back(block.columns[c].name());
    CHECK(marked == std::vector<std::string>{"Y1", "U1", "bM1", "bM3"});

    // Mutating one mark yields a one-element difference.
    auto corrupt = d.matrix_d2;
    corrupt.blocks[0].rows[3].second[0] = !corrupt.blocks[0].rows[3].second[0];
    const auto r = cross_check_matrices(d.boundaries.at(2), corrupt);
    CHECK(r.only_in_formulas.size() + r.only_in_matrix.size() == 1);
}

TEST_CASE("matrix parse errors") {
    CHECK_THROWS_AS(parse_matrix_file("Y1 | + +\n"), ParseError);
    CHECK_THROWS_AS(parse_matrix_file("columns : NB bY1\nY1 | + \n"), ParseError);
    CHECK_THROWS_AS(parse_matrix_file("columns : NB bY1\nY1 | + x\n"), ParseError);
    CHECK_THROWS_AS(parse_matrix_file("columns : NB Q1\n"), ParseError);
}

TEST_CASE("missing data files") {
    const auto dir = std::filesystem::temp_directory_path() / "tricell_empty_data";
    std::filesystem::create_directories(dir);
    try {
        load_dataset(dir);
        FAIL("expected MissingData");
    } catch (const MissingData& e) {
        CHECK(std::string(e.what()).find("boundary_d4.txt") != std::string::npos);
    }
    CHECK_THROWS_AS(load_dataset(dir / "nope"), MissingData);
}
