#pragma once

// Dense bit-packed linear algebra over the two-element field.
//
// Vectors are row vectors. A matrix acts on the right: the image of v under M
// is v * M, the XOR of the rows of M selected by the set bits of v. For a
// boundary matrix of degree d the rows are d-cells and the columns are
// (d-1)-cells, so one row is exactly one formula "d(cell) = sum of cells".

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace tricell::gf2 {

class BitVector {
public:
    using word_type = std::uint64_t;
    static constexpr std::size_t word_bits = 64;

    BitVector() = default;
    explicit BitVector(std::size_t length)
        : length_(length), words_((length + word_bits - 1) / word_bits, 0) {}

    /// Vector of the given length with ones at the listed positions.
    static BitVector from_indices(std::size_t length, std::span<const std::size_t> ones) {
        BitVector v(length);
        for (auto i : ones) v.flip(i);
        return v;
    }

    static BitVector unit(std::size_t length, std::size_t i) {
        BitVector v(length);
        v.set(i, true);
        return v;
    }

    std::size_t size() const noexcept { return length_; }

    bool get(std::size_t i) const {
        check_index(i);
        return (words_[i / word_bits] >> (i % word_bits)) & 1u;
    }
    bool operator[](std::size_t i) const { return get(i); }

    void set(std::size_t i, bool value) {
        check_index(i);
        const word_type mask = word_type{1} << (i % word_bits);
        if (value)
            words_[i / word_bits] |= mask;
        else
            words_[i / word_bits] &= ~mask;
    }

    void flip(std::size_t i) {
        check_index(i);
        words_[i / word_bits] ^= word_type{1} << (i % word_bits);
    }

    bool is_zero() const noexcept {
        return std::all_of(words_.begin(), words_.end(), [](word_type w) { return w == 0; });
    }

    std::size_t count() const noexcept {
        std::size_t n = 0;
        for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    /// Position of the lowest set bit, or size() when zero.
    std::size_t first_one() const noexcept {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] != 0) return k * word_bits + static_cast<std::size_t>(std::countr_zero(words_[k]));
        return length_;
    }

    std::vector<std::size_t> ones() const {
        std::vector<std::size_t> out;
        for (std::size_t k = 0; k < words_.size(); ++k) {
            word_type w = words_[k];
            while (w != 0) {
                out.push_back(k * word_bits + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
        return out;
    }

    BitVector& operator+=(const BitVector& other) {
        if (other.length_ != length_)
            throw DimensionMismatch("bit vector lengths differ: " + std::to_string(length_) + " vs " +
                                    std::to_string(other.length_));
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= other.words_[k];
        return *this;
    }

    friend BitVector operator+(BitVector a, const BitVector& b) { return a += b; }
    friend bool operator==(const BitVector&, const BitVector&) = default;

    /// "0110..." with coordinate 0 first.
    std::string to_string() const {
        std::string s(length_, '0');
        for (auto i : ones()) s[i] = '1';
        return s;
    }

private:
    void check_index(std::size_t i) const {
        if (i >= length_)
            throw std::out_of_range("bit index " + std::to_string(i) + " out of range for length " +
                                    std::to_string(length_));
    }

    std::size_t length_ = 0;
    std::vector<word_type> words_;
};

class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}

    static BitMatrix identity(std::size_t n) {
        BitMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }

    /// Stacks the given vectors as rows; all must share `cols`.
    static BitMatrix from_rows(std::vector<BitVector> rows, std::size_t cols) {
        BitMatrix m;
        m.cols_ = cols;
        for (const auto& r : rows)
            if (r.size() != cols)
                throw DimensionMismatch("row of length " + std::to_string(r.size()) +
                                        " in matrix with " + std::to_string(cols) + " columns");
        m.rows_ = std::move(rows);
        return m;
    }

    std::size_t rows() const noexcept { return rows_.size(); }
    std::size_t cols() const noexcept { return cols_; }

    bool get(std::size_t r, std::size_t c) const { return row(r).get(c); }
    void set(std::size_t r, std::size_t c, bool value) { row_mut(r).set(c, value); }
    void flip(std::size_t r, std::size_t c) { row_mut(r).flip(c); }

    const BitVector& row(std::size_t r) const {
        if (r >= rows_.size())
            throw std::out_of_range("row " + std::to_string(r) + " out of range for " + shape());
        return rows_[r];
    }

    bool is_zero() const noexcept {
        return std::all_of(rows_.begin(), rows_.end(), [](const BitVector& r) { return r.is_zero(); });
    }

    BitMatrix transpose() const {
        BitMatrix t(cols_, rows_.size());
        for (std::size_t r = 0; r < rows_.size(); ++r)
            for (auto c : rows_[r].ones()) t.set(c, r, true);
        return t;
    }

    std::string shape() const { return std::to_string(rows()) + "x" + std::to_string(cols()); }

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
    BitVector& row_mut(std::size_t r) {
        if (r >= rows_.size())
            throw std::out_of_range("row " + std::to_string(r) + " out of range for " + shape());
        return rows_[r];
    }

    std::size_t cols_ = 0;
    std::vector<BitVector> rows_;
};

/// v * m.
inline BitVector apply(const BitVector& v, const BitMatrix& m) {
    if (v.size() != m.rows())
        throw DimensionMismatch("cannot multiply vector of length " + std::to_string(v.size()) +
                                " by " + m.shape() + " matrix");
    BitVector out(m.cols());
    for (auto i : v.ones()) out += m.row(i);
    return out;
}

inline BitMatrix multiply(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows())
        throw DimensionMismatch("cannot multiply " + a.shape() + " by " + b.shape());
    std::vector<BitVector> rows;
    rows.reserve(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) rows.push_back(apply(a.row(r), b));
    return BitMatrix::from_rows(std::move(rows), b.cols());
}

namespace detail {

// Incremental row reduction. Each stored row has a distinct pivot (its lowest
// set bit) and carries the combination of inputs that produced it.
class Reducer {
public:
    Reducer(std::size_t width, std::size_t inputs) : width_(width), inputs_(inputs) {}

    struct Reduced {
        BitVector value;
        BitVector combination;
    };

    Reduced reduce(BitVector v, BitVector combination) const {
        for (;;) {
            const auto p = v.first_one();
            if (p == width_) break;
            const auto it = std::lower_bound(pivots_.begin(), pivots_.end(), p,
                                             [](const Row& r, std::size_t q) { return r.pivot < q; });
            if (it == pivots_.end() || it->pivot != p) break;
            v += it->value;
            combination += it->combination;
        }
        // Lowest bit is now a fresh pivot (or v is zero); also clear the bits
        // above it that sit on existing pivots.
        if (!v.is_zero()) {
            for (const auto& r : pivots_)
                if (r.pivot > v.first_one() && v.get(r.pivot)) {
                    v += r.value;
                    combination += r.combination;
                }
        }
        return {std::move(v), std::move(combination)};
    }

    /// Adds input number `index`; returns true iff it was independent of the earlier ones.
    bool insert(const BitVector& v, std::size_t index) {
        auto red = reduce(v, BitVector::unit(inputs_, index));
        if (red.value.is_zero()) {
            last_dependency_ = std::move(red.combination);
            return false;
        }
        const auto p = red.value.first_one();
        const auto it = std::lower_bound(pivots_.begin(), pivots_.end(), p,
                                         [](const Row& r, std::size_t q) { return r.pivot < q; });
        pivots_.insert(it, Row{p, std::move(red.value), std::move(red.combination)});
        return true;
    }

    std::size_t rank() const noexcept { return pivots_.size(); }
    const BitVector& last_dependency() const noexcept { return last_dependency_; }

    std::vector<std::pair<BitVector, BitVector>> rows() const {
        std::vector<std::pair<BitVector, BitVector>> out;
        for (const auto& r : pivots_) out.emplace_back(r.value, r.combination);
        return out;
    }

private:
    struct Row {
        std::size_t pivot;
        BitVector value;
        BitVector combination;
    };
    std::size_t width_;
    std::size_t inputs_;
    std::vector<Row> pivots_;
    BitVector last_dependency_;
};

}  // namespace detail

inline std::size_t rank(const BitMatrix& m) {
    detail::Reducer red(m.cols(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) red.insert(m.row(r), r);
    return red.rank();
}

/// Basis of the left kernel {v : v * m = 0}, one vector per dependent row,
/// in row order. Its size is rows - rank.
inline std::vector<BitVector> kernel_basis(const BitMatrix& m) {
    detail::Reducer red(m.cols(), m.rows());
    std::vector<BitVector> out;
    for (std::size_t r = 0; r < m.rows(); ++r)
        if (!red.insert(m.row(r), r)) out.push_back(red.last_dependency());
    return out;
}

struct ImageVector {
    BitVector value;     ///< element of the row space
    BitVector preimage;  ///< coefficients with preimage * m == value
};

/// Echelon basis of the row space together with explicit preimages.
inline std::vector<ImageVector> image_basis_with_preimages(const BitMatrix& m) {
    detail::Reducer red(m.cols(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) red.insert(m.row(r), r);
    std::vector<ImageVector> out;
    for (auto& [value, combination] : red.rows()) out.push_back({value, combination});
    return out;
}

inline std::vector<BitVector> image_basis(const BitMatrix& m) {
    std::vector<BitVector> out;
    for (auto& iv : image_basis_with_preimages(m)) out.push_back(std::move(iv.value));
    return out;
}

/// Coefficients c with sum c_i * vectors[i] == target, or nullopt when the
/// target is outside the span. Unique whenever the vectors are independent.
inline std::optional<BitVector> solve_in_span(std::span<const BitVector> vectors, const BitVector& target) {
    for (const auto& v : vectors)
        if (v.size() != target.size())
            throw DimensionMismatch("solve_in_span: vector of length " + std::to_string(v.size()) +
                                    " against target of length " + std::to_string(target.size()));
    detail::Reducer red(target.size(), vectors.size());
    for (std::size_t i = 0; i < vectors.size(); ++i) red.insert(vectors[i], i);
    auto r = red.reduce(target, BitVector(vectors.size()));
    if (!r.value.is_zero()) return std::nullopt;
    return std::move(r.combination);
}

/// sum c_i * vectors[i].
inline BitVector combine(std::span<const BitVector> vectors, const BitVector& coefficients, std::size_t length) {
    if (coefficients.size() != vectors.size())
        throw DimensionMismatch("combine: " + std::to_string(coefficients.size()) + " coefficients for " +
                                std::to_string(vectors.size()) + " vectors");
    BitVector out(length);
    for (auto i : coefficients.ones()) out += vectors[i];
    return out;
}

/// Rank of a list of vectors of common length.
inline std::size_t rank_of(std::span<const BitVector> vectors, std::size_t length) {
    return rank(BitMatrix::from_rows(std::vector<BitVector>(vectors.begin(), vectors.end()), length));
}

}  // namespace tricell::gf2
