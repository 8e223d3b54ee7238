#pragma once

// Exact codimension of a condition system. The four functionals are
// evaluated on the monomials 1, t, ..., t^N; the rank of the resulting 4 x
// (N+1) rational matrix is the codimension of the subspace they cut out in
// the polynomials of degree <= N.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "conditions.hpp"
#include "error.hpp"
#include "rational.hpp"

namespace tricell {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Smallest monomial degree accepted for certification.
inline constexpr int min_certification_degree = 35;
inline constexpr int default_degree = 40;

/// Polynomial as coefficients of 1, t, t^2, ...
using Polynomial = std::vector<Rational>;

/// f^(k)(p) for f = sum c_j t^j.
inline Rational derivative_at(const Polynomial& f, int k, const Rational& p) {
    // Horner on the k-th derivative: coefficient of t^(j-k) is c_j j!/(j-k)!.
    Rational acc{0};
    for (std::size_t j = f.size(); j-- > static_cast<std::size_t>(k);) {
        Integer falling{1};
        for (std::size_t i = 0; i < static_cast<std::size_t>(k); ++i) falling *= Integer(j - i);
        acc = acc * p + f[j] * Rational(falling);
    }
    return acc;
}

inline Polynomial multiply(const Polynomial& a, const Polynomial& b) {
    if (a.empty() || b.empty()) return {};
    Polynomial out(a.size() + b.size() - 1, Rational{0});
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

/// prod (t - roots[i])^mult[i].
inline Polynomial vanishing_polynomial(const std::vector<Rational>& roots, const std::vector<int>& mult) {
    Polynomial out{Rational{1}};
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (int k = 0; k < mult.at(i); ++k) out = multiply(out, Polynomial{-roots[i], Rational{1}});
    return out;
}

/// Value of a jet functional on a polynomial.
inline Rational evaluate(const JetFunctional& f, const std::vector<Rational>& support, const Polynomial& g) {
    Rational v{0};
    for (const auto& t : f.terms) v += t.coefficient * derivative_at(g, t.order, support.at(static_cast<std::size_t>(t.point)));
    return v;
}

/// Rows are functionals, column j is the functional applied to t^j, j = 0..degree.
inline RationalMatrix evaluation_matrix(const ConditionSystem& s, int degree) {
    if (degree < 0) throw ConstraintError("monomial degree must be non-negative, got " + std::to_string(degree));
    RationalMatrix m;
    const auto cols = static_cast<std::size_t>(degree) + 1;
    for (const auto& f : s.functionals) {
        std::vector<Rational> row(cols, Rational{0});
        for (const auto& t : f.terms) {
            // d^k/dt^k t^j at p = j!/(j-k)! p^(j-k)
            const auto k = static_cast<std::size_t>(t.order);
            const auto& p = s.support.at(static_cast<std::size_t>(t.point));
            Rational power{1};
            for (std::size_t j = k; j < cols; ++j) {
                Integer falling{1};
                for (std::size_t i = 0; i < k; ++i) falling *= Integer(j - i);
                row[j] += t.coefficient * Rational(falling) * power;
                power *= p;
            }
        }
        m.push_back(std::move(row));
    }
    return m;
}

/// Exact rank by fraction-free (Bareiss) elimination. Rows are first scaled
/// to integers; every Bareiss division is checked to be exact.
inline std::size_t exact_rank(const RationalMatrix& m) {
    if (m.empty()) return 0;
    const std::size_t cols = m.front().size();
    std::vector<std::vector<Integer>> a;
    for (const auto& row : m) {
        if (row.size() != cols) throw DimensionMismatch("ragged rational matrix");
        Integer l{1};
        for (const auto& x : row) l = boost::multiprecision::lcm(l, Integer(boost::multiprecision::denominator(x)));
        std::vector<Integer> r;
        r.reserve(cols);
        for (const auto& x : row) r.push_back(Integer(boost::multiprecision::numerator(x)) * (l / Integer(boost::multiprecision::denominator(x))));
        a.push_back(std::move(r));
    }
    const std::size_t rows = a.size();
    Integer prev{1};
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            for (std::size_t k = c + 1; k < cols; ++k) {
                Integer num = a[rank][c] * a[r][k] - a[r][c] * a[rank][k];
                if (num % prev != 0) throw Error("Bareiss division not exact; arithmetic is broken");
                a[r][k] = num / prev;
            }
            a[r][c] = 0;
        }
        prev = a[rank][c];
        ++rank;
    }
    return rank;
}

inline std::size_t codimension(const ConditionSystem& s, int degree = default_degree) {
    return exact_rank(evaluation_matrix(s, degree));
}

struct ContainmentReport {
    bool constants = true;    ///< every functional kills the constant function
    bool vanishing = true;    ///< every functional kills t^j * prod (t - p_i)^m_i
    std::vector<int> multiplicities;
    std::string detail;
    bool ok() const { return constants && vanishing; }
};

/// Structural sanity of a system: constants lie in the cut-out space (order-0
/// coefficients sum to zero) and so does the ideal of the template
/// multiplicities, tested on t^j * prod (t - p_i)^m_i for j = 0..10.
inline ContainmentReport verify_containments(const ConditionSystem& s) {
    ContainmentReport rep;
    rep.multiplicities = template_multiplicities(s.functionals, s.support.size());
    for (std::size_t i = 0; i < s.functionals.size(); ++i) {
        Rational sum{0};
        for (const auto& t : s.functionals[i].terms)
            if (t.order == 0) sum += t.coefficient;
        if (sum != 0) {
            rep.constants = false;
            rep.detail += "functional " + std::to_string(i + 1) + " does not vanish on constants; ";
        }
    }
    const auto base = vanishing_polynomial(s.support, rep.multiplicities);
    for (int j = 0; j <= 10; ++j) {
        Polynomial shifted(static_cast<std::size_t>(j), Rational{0});
        shifted.insert(shifted.end(), base.begin(), base.end());
        for (std::size_t i = 0; i < s.functionals.size(); ++i)
            if (evaluate(s.functionals[i], s.support, shifted) != 0) {
                rep.vanishing = false;
                rep.detail += "functional " + std::to_string(i + 1) + " nonzero on t^" + std::to_string(j) +
                              " * vanishing polynomial; ";
            }
    }
    return rep;
}

/// Two systems cut out different subspaces iff stacking them raises the rank
/// above each one's own rank.
inline bool kernels_differ(const ConditionSystem& a, const ConditionSystem& b, int degree = default_degree) {
    auto ma = evaluation_matrix(a, degree);
    const auto mb = evaluation_matrix(b, degree);
    const auto ra = exact_rank(ma), rb = exact_rank(mb);
    ma.insert(ma.end(), mb.begin(), mb.end());
    const auto rs = exact_rank(ma);
    return rs > ra && rs > rb;
}

struct DrawResult {
    std::vector<Rational> support;
    Moduli moduli;
    std::size_t codimension = 0;
    ContainmentReport containment;
};

struct CellCertificate {
    Cell cell;
    std::vector<DrawResult> draws;
    std::vector<int> multiplicities;  ///< template multiplicities m'_i
    int budget = 0;                   ///< sum of multiplicities
    bool ok() const {
        for (const auto& d : draws)
            if (d.codimension != 4 || !d.containment.ok()) return false;
        return !draws.empty();
    }
};

/// Parameter stream of one cell, seeded from (seed, catalog position) so
/// draws do not depend on sweep order or thread count.
inline std::mt19937_64 cell_rng(const Cell& cell, std::uint64_t seed) {
    const auto& cells = enumerate_cells();
    const auto pos = static_cast<std::uint32_t>(std::find(cells.begin(), cells.end(), cell) - cells.begin());
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), pos};
    return std::mt19937_64(seq);
}

/// Codimension and containment checks for `draws` seeded instantiations.
inline CellCertificate certify_cell(const Cell& cell, std::uint64_t seed, int draws = 3, int degree = default_degree) {
    if (degree < min_certification_degree)
        throw ConstraintError("certification needs monomial degree >= " + std::to_string(min_certification_degree) +
                              ", got " + std::to_string(degree));
    auto rng = cell_rng(cell, seed);
    CellCertificate cert;
    cert.cell = cell;
    for (int k = 0; k < draws; ++k) {
        auto p = draw_parameters(cell, rng);
        const auto sys = instantiate(cell, p.support, p.moduli);
        DrawResult d{std::move(p.support), std::move(p.moduli), codimension(sys, degree), verify_containments(sys)};
        if (k == 0) {
            cert.multiplicities = d.containment.multiplicities;
            cert.budget = 0;
            for (int m : cert.multiplicities) cert.budget += m;
        }
        cert.draws.push_back(std::move(d));
    }
    return cert;
}

}  // namespace tricell
