#pragma once

// Catalog of the 244 cells of the space of codimension-four trinitary
// algebras on the circle: 122 cells of the first type (support avoids the
// distinguished point) and their 122 barred partners of the second type.
//
// Canonical ASCII names: optional prefix `b` (barred), the family code
// (A..W, OM for Omega, TH for Theta, NB for nabla), digit indices, then an
// optional `+`/`-`. Examples: A23, bJ321-, E+, E1, bOM, NB. The three-digit
// form A1jk is accepted as an alias of Ajk.

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace tricell {

enum class Family : std::uint8_t {
    A, B, C, D, E, F, G, H, I, J, K, W, L, M, N, P, S, X, V, Omega, Y, U, Z, Theta, Nabla
};

inline constexpr std::size_t family_count = 25;

enum class Sign : std::uint8_t { none, plus, minus };

struct FamilyInfo {
    Family tag;
    std::string_view code;     ///< ASCII code used in cell names
    std::string_view display;  ///< name used in human-readable output
    int support_size;          ///< points of the circle in the support
    int modulus_count;         ///< real moduli of the family
    int dimension;             ///< dimension of the first-type cells
    int cell_count;            ///< first-type cells in the family
};

// Order of this table is the catalog order of families.
inline constexpr std::array<FamilyInfo, family_count> family_table{{
    {Family::A, "A", "A", 6, 0, 6, 10},
    {Family::B, "B", "B", 5, 0, 5, 1},
    {Family::C, "C", "C", 5, 0, 5, 20},
    {Family::D, "D", "D", 4, 1, 5, 12},
    {Family::E, "E", "E", 3, 2, 5, 4},
    {Family::F, "F", "F", 4, 0, 4, 4},
    {Family::G, "G", "G", 4, 0, 4, 12},
    {Family::H, "H", "H", 4, 0, 4, 4},
    {Family::I, "I", "I", 3, 1, 4, 3},
    {Family::J, "J", "J", 3, 1, 4, 12},
    {Family::K, "K", "K", 3, 1, 4, 6},
    {Family::W, "W", "W", 2, 2, 4, 4},
    {Family::L, "L", "L", 3, 0, 3, 6},
    {Family::M, "M", "M", 3, 0, 3, 3},
    {Family::N, "N", "N", 3, 0, 3, 3},
    {Family::P, "P", "P", 2, 1, 3, 2},
    {Family::S, "S", "S", 2, 1, 3, 2},
    {Family::X, "X", "X", 2, 1, 3, 2},
    {Family::V, "V", "V", 2, 1, 3, 4},
    {Family::Omega, "OM", "Omega", 1, 2, 3, 1},
    {Family::Y, "Y", "Y", 2, 0, 2, 2},
    {Family::U, "U", "U", 2, 0, 2, 2},
    {Family::Z, "Z", "Z", 2, 0, 2, 1},
    {Family::Theta, "TH", "Theta", 1, 1, 2, 1},
    {Family::Nabla, "NB", "nabla", 1, 0, 1, 1},
}};

inline constexpr const FamilyInfo& family_info(Family f) { return family_table[static_cast<std::size_t>(f)]; }

inline constexpr int max_dimension = 6;

struct Cell {
    Family family = Family::A;
    std::vector<int> indices;
    Sign sign = Sign::none;
    bool barred = false;

    /// CW dimension; second-type cells sit one below their first-type partner.
    int dimension() const { return family_info(family).dimension - (barred ? 1 : 0); }

    std::string name() const {
        std::string s = barred ? "b" : "";
        s += family_info(family).code;
        for (int i : indices) s += static_cast<char>('0' + i);
        if (sign == Sign::plus) s += '+';
        if (sign == Sign::minus) s += '-';
        return s;
    }

    // Catalog order: first type before second type, then family, indices, sign.
    friend std::strong_ordering operator<=>(const Cell& a, const Cell& b) {
        if (auto c = a.barred <=> b.barred; c != 0) return c;
        if (auto c = a.family <=> b.family; c != 0) return c;
        if (auto c = a.indices <=> b.indices; c != 0) return c;
        return a.sign <=> b.sign;
    }
    friend bool operator==(const Cell&, const Cell&) = default;
};

namespace detail {

inline std::vector<std::vector<int>> pairs_below(int lo, int hi) {
    std::vector<std::vector<int>> out;
    for (int i = lo; i <= hi; ++i)
        for (int j = i + 1; j <= hi; ++j) out.push_back({i, j});
    return out;
}

inline std::vector<std::vector<int>> singles(int n) {
    std::vector<std::vector<int>> out;
    for (int i = 1; i <= n; ++i) out.push_back({i});
    return out;
}

inline std::vector<std::vector<int>> permutations3() {
    std::vector<int> p{1, 2, 3};
    std::vector<std::vector<int>> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

inline std::vector<Cell> with_signs(Family f, const std::vector<std::vector<int>>& idx, bool signed_cells) {
    std::vector<Cell> out;
    for (const auto& i : idx) {
        if (signed_cells) {
            out.push_back({f, i, Sign::plus, false});
            out.push_back({f, i, Sign::minus, false});
        } else {
            out.push_back({f, i, Sign::none, false});
        }
    }
    return out;
}

// First-type cells of one family in catalog order.
inline std::vector<Cell> family_cells(Family f) {
    switch (f) {
        case Family::A: return with_signs(f, pairs_below(2, 6), false);
        case Family::B: return with_signs(f, {{}}, false);
        case Family::C: {
            std::vector<std::vector<int>> idx;
            for (int i = 1; i <= 5; ++i)
                for (int j = 1; j <= 5; ++j)
                    if (i != j) idx.push_back({i, j});
            return with_signs(f, idx, false);
        }
        case Family::D: return with_signs(f, pairs_below(1, 4), true);
        case Family::E:
            return {{f, {}, Sign::plus, false}, {f, {1}, Sign::none, false}, {f, {2}, Sign::none, false},
                    {f, {3}, Sign::none, false}};
        case Family::F: return with_signs(f, singles(4), false);
        case Family::G: {
            std::vector<std::vector<int>> idx;
            for (int code : {1234, 1243, 1324, 1342, 1423, 1432, 2134, 2143, 2341, 2431, 3142, 3241})
                idx.push_back({code / 1000, code / 100 % 10, code / 10 % 10, code % 10});
            return with_signs(f, idx, false);
        }
        case Family::H: return with_signs(f, singles(4), false);
        case Family::I: return with_signs(f, singles(3), false);
        case Family::J: return with_signs(f, permutations3(), true);
        case Family::K: return with_signs(f, singles(3), true);
        case Family::W: return with_signs(f, singles(2), true);
        case Family::L: return with_signs(f, permutations3(), false);
        case Family::M:
        case Family::N: return with_signs(f, singles(3), false);
        case Family::P:
        case Family::S: return with_signs(f, singles(2), false);
        case Family::X: return with_signs(f, {{}}, true);
        case Family::V: return with_signs(f, singles(2), true);
        case Family::Y:
        case Family::U: return with_signs(f, singles(2), false);
        case Family::Omega:
        case Family::Z:
        case Family::Theta:
        case Family::Nabla: return with_signs(f, {{}}, false);
    }
    return {};
}

struct Catalog {
    std::vector<Cell> cells;                   // all 244, catalog order
    std::array<std::vector<Cell>, 7> by_degree;  // ordered bases C_0..C_6
    std::map<std::string, std::size_t, std::less<>> by_name;

    Catalog() {
        for (bool barred : {false, true})
            for (const auto& info : family_table)
                for (auto c : family_cells(info.tag)) {
                    c.barred = barred;
                    cells.push_back(c);
                }
        std::sort(cells.begin(), cells.end());
        for (std::size_t i = 0; i < cells.size(); ++i) {
            by_degree[static_cast<std::size_t>(cells[i].dimension())].push_back(cells[i]);
            by_name.emplace(cells[i].name(), i);
        }
    }
};

inline const Catalog& catalog() {
    static const Catalog c;
    return c;
}

}  // namespace detail

/// All 244 cells in catalog order.
inline const std::vector<Cell>& enumerate_cells() { return detail::catalog().cells; }

inline bool is_catalog_cell(const Cell& c) {
    return detail::catalog().by_name.contains(c.name()) &&
           detail::catalog().cells[detail::catalog().by_name.find(c.name())->second] == c;
}

/// CW dimension of a catalog cell.
inline int dimension(const Cell& c) {
    if (!is_catalog_cell(c)) throw UnknownCell("not a catalog cell: " + c.name());
    return c.dimension();
}

/// The second-type partner of a first-type cell.
inline Cell bar(const Cell& c) {
    if (!is_catalog_cell(c)) throw UnknownCell("not a catalog cell: " + c.name());
    if (c.barred) throw UnknownCell("cell " + c.name() + " is already of the second type");
    Cell out = c;
    out.barred = true;
    return out;
}

/// Cells of one CW dimension, in catalog order.
inline const std::vector<Cell>& ordered_basis(int degree) {
    if (degree < 0 || degree > max_dimension)
        throw std::out_of_range("degree " + std::to_string(degree) + " outside 0..6");
    return detail::catalog().by_degree[static_cast<std::size_t>(degree)];
}

/// Parses a canonical name (or the A1jk alias). Returns nullopt for anything
/// that is not a catalog cell.
inline std::optional<Cell> try_parse_cell(std::string_view text) {
    std::string s(text);
    if (s.size() == 5 && s[0] == 'b' && s[1] == 'A' && s[2] == '1') s.erase(2, 1);
    else if (s.size() == 4 && s[0] == 'A' && s[1] == '1') s.erase(1, 1);
    const auto& idx = detail::catalog().by_name;
    if (auto it = idx.find(s); it != idx.end()) return detail::catalog().cells[it->second];
    return std::nullopt;
}

inline Cell parse_cell(std::string_view text) {
    if (auto c = try_parse_cell(text)) return *c;
    throw UnknownCell("unknown cell name '" + std::string(text) + "'");
}

/// Display name with Unicode bars and family symbols, e.g. "J̄₃₂₁⁺".
inline std::string pretty_name(const Cell& c) {
    static constexpr std::array<std::string_view, 10> subs{"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
    std::string s;
    switch (c.family) {
        case Family::Omega: s = "Ω"; break;
        case Family::Theta: s = "Θ"; break;
        case Family::Nabla: s = "∇"; break;
        default: s = std::string(family_info(c.family).code);
    }
    if (c.barred) s += "̄";
    for (int i : c.indices) s += subs[static_cast<std::size_t>(i)];
    if (c.sign == Sign::plus) s += c.family == Family::E ? "₊" : "⁺";
    if (c.sign == Sign::minus) s += "⁻";
    return s;
}

}  // namespace tricell
