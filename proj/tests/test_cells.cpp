#include <catch_amalgamated.hpp>

#include <set>

#include "tricell/cells.hpp"

using namespace tricell;

TEST_CASE("census of the catalog") {
    const auto& cells = enumerate_cells();
    CHECK(cells.size() == 244);
    std::set<std::string> names;
    std::array<int, 7> first{}, second{};
    for (const auto& c : cells) {
        names.insert(c.name());
        (c.barred ? second : first)[static_cast<std::size_t>(c.dimension())]++;
    }
    CHECK(names.size() == 244);
    CHECK(first == std::array<int, 7>{0, 1, 6, 23, 45, 37, 10});
    CHECK(second == std::array<int, 7>{1, 6, 23, 45, 37, 10, 0});

    int per_family_total = 0;
    for (const auto& info : family_table) {
        CHECK(info.dimension == info.support_size + info.modulus_count);
        int n = 0;
        for (const auto& c : cells) n += (!c.barred && c.family == info.tag) ? 1 : 0;
        CHECK(n == info.cell_count);
        per_family_total += info.cell_count;
    }
    CHECK(per_family_total == 122);
}

TEST_CASE("dimensions of named cells") {
    CHECK(dimension(parse_cell("A23")) == 6);
    CHECK(dimension(parse_cell("bTH")) == 1);
    CHECK(dimension(parse_cell("NB")) == 1);
    CHECK(dimension(parse_cell("bNB")) == 0);
    Cell bogus{Family::A, {7, 8}, Sign::none, false};
    CHECK_THROWS_AS(dimension(bogus), UnknownCell);
}

TEST_CASE("bar drops dimension by one and only applies to the first type") {
    const auto xp = parse_cell("X+");
    CHECK(xp.dimension() == 3);
    CHECK(bar(xp).name() == "bX+");
    CHECK(bar(xp).dimension() == 2);
    CHECK(bar(parse_cell("NB")).name() == "bNB");
    CHECK_THROWS_AS(bar(bar(parse_cell("Z"))), UnknownCell);

    std::set<std::string> images;
    for (const auto& c : enumerate_cells())
        if (!c.barred) {
            const auto b = bar(c);
            CHECK(b.dimension() == c.dimension() - 1);
            CHECK(is_catalog_cell(b));
            images.insert(b.name());
        }
    CHECK(images.size() == 122);
}

TEST_CASE("ordered bases") {
    std::vector<std::string> d6, d1, d0;
    for (const auto& c : ordered_basis(6)) d6.push_back(c.name());
    for (const auto& c : ordered_basis(1)) d1.push_back(c.name());
    for (const auto& c : ordered_basis(0)) d0.push_back(c.name());
    CHECK(d6 == std::vector<std::string>{"A23", "A24", "A25", "A26", "A34", "A35", "A36", "A45", "A46", "A56"});
    CHECK(d1 == std::vector<std::string>{"NB", "bY1", "bY2", "bU1", "bU2", "bZ", "bTH"});
    CHECK(d0 == std::vector<std::string>{"bNB"});
    CHECK_THROWS_AS(ordered_basis(7), std::out_of_range);
    CHECK_THROWS_AS(ordered_basis(-1), std::out_of_range);

    const std::array<std::size_t, 7> sizes{1, 7, 29, 68, 82, 47, 10};
    long chi = 0;
    for (int d = 0; d <= 6; ++d) {
        CHECK(ordered_basis(d).size() == sizes[static_cast<std::size_t>(d)]);
        chi += (d % 2 ? -1 : 1) * static_cast<long>(sizes[static_cast<std::size_t>(d)]);
    }
    CHECK(chi == 0);
}

TEST_CASE("names round-trip and aliases parse") {
    for (const auto& c : enumerate_cells()) CHECK(parse_cell(c.name()) == c);
    CHECK(parse_cell("A134").name() == "A34");
    CHECK(parse_cell("bA156").name() == "bA56");
    CHECK(parse_cell("E+").sign == Sign::plus);
    CHECK(parse_cell("bJ321-").indices == std::vector<int>{3, 2, 1});
    CHECK_FALSE(try_parse_cell("Q7"));
    CHECK_FALSE(try_parse_cell("J321"));  // J needs a sign
    CHECK_FALSE(try_parse_cell("A12"));
    CHECK_FALSE(try_parse_cell("bbZ"));
    CHECK_THROWS_AS(parse_cell("E4"), UnknownCell);
}

TEST_CASE("pretty names") {
    CHECK(pretty_name(parse_cell("bJ321+")) == "J̄₃₂₁⁺");
    CHECK(pretty_name(parse_cell("OM")) == "Ω");
    CHECK(pretty_name(parse_cell("bNB")) == "∇̄");
}
