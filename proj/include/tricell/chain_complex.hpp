#pragma once

// The graded mod-2 cellular chain complex. Bases come from the catalog and
// boundary matrices from the (corrected) boundary files; the boundary of the
// 1-cells is taken to be zero.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cells.hpp"
#include "error.hpp"
#include "gf2.hpp"
#include "ingest.hpp"

namespace tricell {

/// A formal sum of cells of one degree.
struct Chain {
    int degree = 0;
    gf2::BitVector vector;

    friend bool operator==(const Chain&, const Chain&) = default;
};

struct ValidationFailure {
    Cell generator;
    std::vector<Cell> offending;  ///< (d-2)-cells with odd coefficient in d(d(generator))
};

struct ValidationReport {
    std::vector<ValidationFailure> failures;
    bool ok() const { return failures.empty(); }
};

struct KernelGeneratorReport {
    std::size_t listed = 0;
    std::vector<std::string> non_cycles;  ///< labels failing d(c) = 0
    std::size_t rank = 0;                  ///< rank of the listed chains
    std::size_t kernel_dimension = 0;      ///< dim ker d2 computed directly
    bool all_cycles() const { return non_cycles.empty(); }
    bool independent() const { return rank == listed; }
    bool spans() const { return all_cycles() && rank == kernel_dimension; }
};

struct ExpansionRow {
    Cell generator;
    std::vector<std::size_t> stated;                   ///< 1-based kernel indices
    std::optional<std::vector<std::size_t>> computed;  ///< nullopt when d(cell) is outside their span
    bool match() const { return computed && *computed == stated; }
};

struct ExpansionReport {
    std::vector<ExpansionRow> rows;
    std::vector<Cell> without_expansion;  ///< 3-cells the file does not mention
    std::size_t matched() const {
        std::size_t n = 0;
        for (const auto& r : rows) n += r.match() ? 1 : 0;
        return n;
    }
    bool ok() const { return matched() == rows.size() && without_expansion.empty(); }
};

class ChainComplex {
public:
    /// bases[d] is the ordered basis of C_d; boundaries[d-1] is d_d for
    /// d = 1..top, shaped |C_d| x |C_{d-1}|.
    ChainComplex(std::vector<std::vector<Cell>> bases, std::vector<gf2::BitMatrix> boundaries)
        : bases_(std::move(bases)), boundaries_(std::move(boundaries)) {
        if (bases_.empty()) throw DimensionMismatch("chain complex needs at least degree 0");
        if (boundaries_.size() + 1 != bases_.size())
            throw DimensionMismatch("expected " + std::to_string(bases_.size() - 1) + " boundary matrices, got " +
                                    std::to_string(boundaries_.size()));
        for (std::size_t d = 1; d < bases_.size(); ++d) {
            const auto& m = boundaries_[d - 1];
            if (m.rows() != bases_[d].size() || m.cols() != bases_[d - 1].size())
                throw DimensionMismatch("boundary of degree " + std::to_string(d) + " is " + m.shape() + ", expected " +
                                        std::to_string(bases_[d].size()) + "x" + std::to_string(bases_[d - 1].size()));
        }
        for (std::size_t d = 0; d < bases_.size(); ++d)
            for (std::size_t i = 0; i < bases_[d].size(); ++i) index_[bases_[d][i].name()] = {static_cast<int>(d), i};
        validation_ = run_validation();
    }

    /// The catalog complex from boundary files of degrees 2..6. Every cell of
    /// each degree needs exactly one row; terms of the wrong dimension are
    /// rejected, so lint findings must be corrected first.
    static ChainComplex from_boundary_files(const std::map<int, BoundaryFile>& files) {
        std::vector<std::vector<Cell>> bases;
        for (int d = 0; d <= max_dimension; ++d) bases.push_back(ordered_basis(d));
        std::vector<gf2::BitMatrix> mats;
        mats.emplace_back(bases[1].size(), bases[0].size());
        for (int d = 2; d <= max_dimension; ++d) {
            const auto it = files.find(d);
            if (it == files.end()) throw MissingData("no boundary data for degree " + std::to_string(d));
            mats.push_back(matrix_from_file(it->second, bases[static_cast<std::size_t>(d)],
                                            bases[static_cast<std::size_t>(d - 1)]));
        }
        return ChainComplex(std::move(bases), std::move(mats));
    }

    static gf2::BitMatrix matrix_from_file(const BoundaryFile& f, const std::vector<Cell>& rows,
                                           const std::vector<Cell>& cols) {
        const auto position = [](const std::vector<Cell>& basis, const Cell& c) -> std::optional<std::size_t> {
            const auto it = std::lower_bound(basis.begin(), basis.end(), c);
            if (it == basis.end() || !(*it == c)) return std::nullopt;
            return static_cast<std::size_t>(it - basis.begin());
        };
        gf2::BitMatrix m(rows.size(), cols.size());
        std::vector<bool> seen(rows.size(), false);
        for (const auto& l : f.lines) {
            const auto r = position(rows, l.generator);
            if (!r) throw DimensionMismatch("generator " + l.generator.name() + " is not a " + std::to_string(f.degree) + "-cell");
            seen[*r] = true;
            for (const auto& t : l.terms) {
                const auto c = position(cols, t);
                if (!c)
                    throw DimensionMismatch("d(" + l.generator.name() + ") contains " + t.name() + " of dimension " +
                                            std::to_string(t.dimension()) + ", expected " +
                                            std::to_string(f.degree - 1));
                m.flip(*r, *c);
            }
        }
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (!seen[r]) throw MissingData("no boundary row for " + rows[r].name());
        return m;
    }

    int top_degree() const { return static_cast<int>(bases_.size()) - 1; }
    const std::vector<Cell>& basis(int d) const { return bases_.at(static_cast<std::size_t>(d)); }
    std::size_t size(int d) const { return d < 0 || d > top_degree() ? 0 : basis(d).size(); }

    /// d_d for d = 1..top.
    const gf2::BitMatrix& matrix(int d) const {
        if (d < 1 || d > top_degree()) throw std::out_of_range("no boundary matrix of degree " + std::to_string(d));
        return boundaries_[static_cast<std::size_t>(d - 1)];
    }

    std::size_t rank(int d) const { return d < 1 || d > top_degree() ? 0 : gf2::rank(matrix(d)); }

    Chain chain(int d, const std::vector<Cell>& cells) const {
        Chain c{d, gf2::BitVector(size(d))};
        for (const auto& cell : cells) {
            const auto it = index_.find(cell.name());
            if (it == index_.end() || it->second.first != d)
                throw DimensionMismatch("cell " + cell.name() + " is not in C_" + std::to_string(d));
            c.vector.flip(it->second.second);
        }
        return c;
    }

    Chain chain(int d, std::initializer_list<std::string_view> names) const {
        std::vector<Cell> cells;
        for (auto n : names) cells.push_back(parse_cell(n));
        return chain(d, cells);
    }

    std::vector<Cell> cells_of(const Chain& c) const {
        std::vector<Cell> out;
        for (auto i : c.vector.ones()) out.push_back(basis(c.degree)[i]);
        return out;
    }

    /// "bX+ + bX-", or "0".
    std::string format(const Chain& c) const {
        std::string s;
        for (const auto& cell : cells_of(c)) s += (s.empty() ? "" : " + ") + cell.name();
        return s.empty() ? "0" : s;
    }

    Chain boundary(const Chain& c) const {
        if (c.degree < 1) throw std::domain_error("boundary of a 0-chain is undefined");
        check_chain(c, "boundary");
        return {c.degree - 1, gf2::apply(c.vector, matrix(c.degree))};
    }

    bool is_cycle(const Chain& c) const {
        check_chain(c, "is_cycle");
        return c.degree == 0 || boundary(c).vector.is_zero();
    }

    bool is_boundary(const Chain& c) const {
        check_chain(c, "is_boundary");
        if (c.degree >= top_degree()) return c.vector.is_zero();
        const auto img = gf2::image_basis(matrix(c.degree + 1));
        return gf2::solve_in_span(img, c.vector).has_value();
    }

    const ValidationReport& validation() const { return validation_; }

    std::size_t kernel_dimension(int d) const { return d == 0 ? size(0) : size(d) - rank(d); }

    std::size_t betti(int d) const {
        require_valid("betti");
        if (d < 0 || d > top_degree()) throw std::out_of_range("degree " + std::to_string(d) + " outside the complex");
        return kernel_dimension(d) - rank(d + 1);
    }

    /// Cycles whose classes form a basis of H_d. Candidates listed in
    /// `preferred` are used first when they are independent cycles modulo
    /// the boundaries; the rest come from a kernel basis.
    std::vector<Chain> homology_generators(int d, const std::vector<Chain>& preferred = {}) const {
        require_valid("homology_generators");
        const auto n = size(d);
        std::vector<gf2::BitVector> candidates;
        for (const auto& p : preferred)
            if (p.degree == d && is_cycle(p)) candidates.push_back(p.vector);
        if (d == 0) {
            for (std::size_t i = 0; i < n; ++i) candidates.push_back(gf2::BitVector::unit(n, i));
        } else {
            for (auto& k : gf2::kernel_basis(matrix(d))) candidates.push_back(std::move(k));
        }
        const auto image = d < top_degree() ? gf2::image_basis(matrix(d + 1)) : std::vector<gf2::BitVector>{};
        gf2::detail::Reducer red(n, image.size() + candidates.size());
        std::size_t k = 0;
        for (const auto& b : image) red.insert(b, k++);
        std::vector<Chain> out;
        for (const auto& c : candidates)
            if (red.insert(c, k++)) out.push_back({d, c});
        return out;
    }

    /// True iff a + b is a boundary. Both must be cycles of one degree.
    bool class_equal(const Chain& a, const Chain& b) const {
        if (a.degree != b.degree)
            throw DimensionMismatch("class_equal: degrees " + std::to_string(a.degree) + " and " +
                                    std::to_string(b.degree) + " differ");
        if (!is_cycle(a)) throw std::invalid_argument("class_equal: first argument " + format(a) + " is not a cycle");
        if (!is_cycle(b)) throw std::invalid_argument("class_equal: second argument " + format(b) + " is not a cycle");
        return is_boundary({a.degree, a.vector + b.vector});
    }

    KernelGeneratorReport verify_kernel_generators(const KernelFile& k) const {
        KernelGeneratorReport r;
        r.listed = k.generators.size();
        std::vector<gf2::BitVector> vecs;
        for (const auto& g : k.generators) {
            const auto c = chain(2, g.cells);
            if (!is_cycle(c)) r.non_cycles.push_back(g.label);
            vecs.push_back(c.vector);
        }
        r.rank = vecs.empty() ? 0 : gf2::rank_of(vecs, size(2));
        r.kernel_dimension = kernel_dimension(2);
        return r;
    }

    /// Re-expresses d(c) for each listed 3-cell in the kernel generators and
    /// compares index sets with the stated ones.
    ExpansionReport verify_expansions(const KernelFile& k, const ExpansionFile& e) const {
        std::vector<gf2::BitVector> vecs;
        for (const auto& g : k.generators) vecs.push_back(chain(2, g.cells).vector);
        ExpansionReport r;
        std::set<std::string> covered;
        for (const auto& row : e.rows) {
            auto stated = row.kernel_indices;
            std::sort(stated.begin(), stated.end());
            ExpansionRow out{row.generator, std::move(stated), std::nullopt};
            covered.insert(row.generator.name());
            const auto target = boundary(chain(3, {row.generator}));
            if (auto coeff = gf2::solve_in_span(vecs, target.vector)) {
                std::vector<std::size_t> idx;
                for (auto i : coeff->ones()) idx.push_back(i + 1);
                out.computed = std::move(idx);
            }
            r.rows.push_back(std::move(out));
        }
        for (const auto& c : basis(3))
            if (!covered.contains(c.name())) r.without_expansion.push_back(c);
        return r;
    }

    /// sum (-1)^d |C_d|.
    long euler_characteristic() const {
        long chi = 0;
        for (int d = 0; d <= top_degree(); ++d) chi += (d % 2 == 0 ? 1 : -1) * static_cast<long>(size(d));
        return chi;
    }

private:
    ValidationReport run_validation() const {
        ValidationReport rep;
        for (int d = 2; d <= top_degree(); ++d) {
            const auto sq = gf2::multiply(matrix(d), matrix(d - 1));
            for (std::size_t r = 0; r < sq.rows(); ++r) {
                if (sq.row(r).is_zero()) continue;
                ValidationFailure f{basis(d)[r], {}};
                for (auto c : sq.row(r).ones()) f.offending.push_back(basis(d - 2)[c]);
                rep.failures.push_back(std::move(f));
            }
        }
        return rep;
    }

    void require_valid(const char* what) const {
        if (!validation_.ok())
            throw NotValidated(std::string(what) + ": d^2 != 0 at " + std::to_string(validation_.failures.size()) +
                               " generator(s), first " + validation_.failures.front().generator.name());
    }

    void check_chain(const Chain& c, const char* what) const {
        if (c.degree < 0 || c.degree > top_degree() || c.vector.size() != size(c.degree))
            throw DimensionMismatch(std::string(what) + ": chain of length " + std::to_string(c.vector.size()) +
                                    " does not fit C_" + std::to_string(c.degree));
    }

    std::vector<std::vector<Cell>> bases_;
    std::vector<gf2::BitMatrix> boundaries_;
    std::map<std::string, std::pair<int, std::size_t>, std::less<>> index_;
    ValidationReport validation_;
};

/// Named representatives used for readable homology reports.
inline std::vector<Chain> preferred_representatives(const ChainComplex& cx, int d) {
    if (d == 1) return {cx.chain(1, {"bTH"})};
    if (d == 2) return {cx.chain(2, {"bX+", "bX-"}), cx.chain(2, {"bOM"}), cx.chain(2, {"bS1"})};
    return {};
}

}  // namespace tricell
