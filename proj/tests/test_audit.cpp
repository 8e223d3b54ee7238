#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>

#include "tricell/audit.hpp"

using namespace tricell;

namespace {

const std::filesystem::path data_dir = TRICELL_TEST_DATA_DIR;

RunConfig config() {
    RunConfig c;
    c.data_dir = data_dir;
    return c;
}

}  // namespace

TEST_CASE("data directory resolution") {
    CHECK(resolve_data_dir(std::string("/x")) == "/x");
    ::setenv("TRICELL_DATA", "/from/env", 1);
    CHECK(resolve_data_dir(std::nullopt) == "/from/env");
    CHECK(resolve_data_dir(std::string("/x")) == "/x");
    ::unsetenv("TRICELL_DATA");
    CHECK(resolve_data_dir(std::nullopt) == TRICELL_DEFAULT_DATA_DIR);
}

TEST_CASE("ledger loading") {
    auto c = config();
    CHECK(load_ledger(c).ledger.entries.size() == 7);
    CHECK(load_ledger(c).source == "errata.txt");
    c.use_errata = false;
    CHECK(load_ledger(c).ledger.entries.empty());
    CHECK(load_ledger(c).source == "none");

    const auto tmp = std::filesystem::temp_directory_path() / "tricell_one_entry.txt";
    std::ofstream(tmp) << "boundary bE3 replace W2+ bW2+ dimension-lint\n";
    c.use_errata = true;
    c.errata_path = tmp;
    const auto l = load_ledger(c);
    CHECK(l.ledger.entries.size() == 1);
    CHECK(l.source == "tricell_one_entry.txt");
}

TEST_CASE("validation with and without the ledger") {
    const auto raw = load_dataset(data_dir);
    const auto ledger = load_ledger(config()).ledger;
    const auto good = validate(raw, ledger);
    CHECK(good.ok());
    CHECK(good.raw_lint.size() == 6);
    CHECK(good.corrected_lint.empty());
    CHECK(good.cross_d2.empty());
    CHECK(good.cross_d3.empty());
    CHECK_FALSE(good.raw_cross_d3.empty());

    const auto bare = validate(raw, ErrataLedger{});
    CHECK_FALSE(bare.ok());
    CHECK_FALSE(bare.complex);
    CHECK_FALSE(bare.construction_error.empty());
}

TEST_CASE("every ledger entry is needed") {
    const auto raw = load_dataset(data_dir);
    const auto ledger = load_ledger(config()).ledger;
    const auto loo = leave_one_out(raw, ledger);
    REQUIRE(loo.size() == 7);
    for (const auto& l : loo) {
        INFO(l.entry.text() << " : " << l.evidence);
        CHECK(l.justified);
        CHECK_FALSE(l.evidence.empty());
    }
    CHECK(loo.back().evidence.find("G1432") != std::string::npos);

    // A gratuitous entry is not justified.
    auto extra = ledger;
    extra.entries.push_back(parse_errata("boundary bC21 remove bF1 type-lint\n").entries.front());
    const auto loo2 = leave_one_out(raw, extra);
    CHECK_FALSE(loo2.back().justified);
}

TEST_CASE("homology outcome and relations") {
    const auto v = validate(load_dataset(data_dir), load_ledger(config()).ledger);
    REQUIRE(v.complex);
    const auto h = compute_homology(*v.complex);
    CHECK(h.betti == std::vector<std::size_t>{1, 1, 2, 2, 0, 0, 0});
    CHECK(h.rank_nullity);
    CHECK(h.euler == h.betti_alternating_sum);
    CHECK(h.h1_relations.size() == 3);
    CHECK(h.h2_relations.size() == 10);
    for (const auto& r : h.h1_relations) CHECK(r.holds);
    for (const auto& r : h.h2_relations) {
        INFO(r.statement);
        CHECK(r.holds);
    }
}

TEST_CASE("sweep is independent of the thread count") {
    const auto a = codimension_sweep(9, 1, 35, 1);
    const auto b = codimension_sweep(9, 1, 35, 3);
    REQUIRE(a.size() == 244);
    REQUIRE(b.size() == 244);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].cell == b[i].cell);
        CHECK(a[i].draws.front().support == b[i].draws.front().support);
        CHECK(a[i].draws.front().codimension == b[i].draws.front().codimension);
        CHECK(a[i].ok());
    }
    CHECK_THROWS_AS(codimension_sweep(9, 1, 10, 2), ConstraintError);
}

TEST_CASE("dossier shape") {
    auto c = config();
    c.draws = 1;
    const auto d = build_dossier(c);
    CHECK(d["schema"] == "tricell-dossier/1");
    CHECK(d["census"]["total"] == 244);
    CHECK(d["validation"]["ok"] == true);
    CHECK(d["homology"]["betti"] == nlohmann::json::array({1, 1, 2, 2, 0, 0, 0}));
    CHECK(d["expansions"]["matched"] == 68);
    CHECK(d["codimension"]["all_pass"] == true);
    CHECK(d.dump().find(data_dir.string()) == std::string::npos);
}
