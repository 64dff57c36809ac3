#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "planecode/geometry.hpp"

namespace planecode {

/// Dense matrix over GF(p), p < 256, one byte per entry.
class GfpMatrix {
public:
    GfpMatrix(std::uint32_t p, std::uint32_t rows, std::uint32_t cols);

    /// Point-by-line incidence rows: row i is the indicator of line i.
    static GfpMatrix incidence(const Plane& plane, std::uint32_t p);

    std::uint32_t p() const noexcept { return p_; }
    std::uint32_t rows() const noexcept { return rows_; }
    std::uint32_t cols() const noexcept { return cols_; }
    std::uint8_t at(std::uint32_t r, std::uint32_t c) const { return data_[std::size_t(r) * cols_ + c]; }
    void set(std::uint32_t r, std::uint32_t c, std::uint32_t v) { data_[std::size_t(r) * cols_ + c] = std::uint8_t(v % p_); }
    std::span<const std::uint8_t> row(std::uint32_t r) const { return {data_.data() + std::size_t(r) * cols_, cols_}; }
    std::span<std::uint8_t> row(std::uint32_t r) { return {data_.data() + std::size_t(r) * cols_, cols_}; }

    /// Reduced row echelon form in place; zero rows are dropped. Returns the pivot columns.
    std::vector<std::uint32_t> rref();

    friend bool operator==(const GfpMatrix&, const GfpMatrix&) = default;

private:
    std::vector<std::uint32_t> rref_binary();

    std::uint32_t p_, rows_, cols_;
    std::vector<std::uint8_t> data_;
};

/// A word of GF(p)^length with symbols kept in {0,...,p-1}.
class CodeWord {
public:
    CodeWord(std::uint32_t p, std::vector<std::uint8_t> values);
    static CodeWord zero(std::uint32_t p, std::uint32_t length);

    std::uint32_t p() const noexcept { return p_; }
    std::uint32_t length() const noexcept { return static_cast<std::uint32_t>(values_.size()); }
    const std::vector<std::uint8_t>& values() const noexcept { return values_; }
    std::uint8_t operator[](std::uint32_t i) const { return values_.at(i); }
    const std::vector<std::uint32_t>& support() const noexcept { return support_; }
    std::uint32_t weight() const noexcept { return static_cast<std::uint32_t>(support_.size()); }

    friend bool operator==(const CodeWord& a, const CodeWord& b) { return a.p_ == b.p_ && a.values_ == b.values_; }
    friend bool operator<(const CodeWord& a, const CodeWord& b) {
        if (a.weight() != b.weight()) return a.weight() < b.weight();
        return a.values_ < b.values_;
    }

private:
    std::uint32_t p_;
    std::vector<std::uint8_t> values_;
    std::vector<std::uint32_t> support_;
};

CodeWord scale(const CodeWord& w, std::int64_t lambda);
CodeWord add(const CodeWord& a, const CodeWord& b);
CodeWord diff(const CodeWord& a, const CodeWord& b);
/// Indicator vector of a point set. Throws InvalidArgument on out-of-range points.
CodeWord indicator(std::uint32_t p, std::uint32_t length, std::span<const std::uint32_t> points);
/// The scalar multiple whose first nonzero symbol is 1.
CodeWord normalized(const CodeWord& w);
/// Integer sum of the symbols.
std::uint64_t mu(const CodeWord& w);
/// Integer sum of the symbols at the given positions.
std::uint64_t mu_on(const CodeWord& w, std::span<const std::uint32_t> positions);

struct LinearCode {
    std::uint32_t p = 2;
    std::uint32_t length = 0;
    GfpMatrix generator{2, 0, 0};  // RREF, full row rank
    std::vector<std::uint32_t> pivots;

    std::uint32_t dimension() const noexcept { return generator.rows(); }
    CodeWord row_word(std::uint32_t i) const;
    /// Linear combination of the generator rows with the given coefficients.
    CodeWord combine(std::span<const std::uint32_t> coeffs) const;
};

/// Row space of the given matrix, in canonical form.
LinearCode span_of(GfpMatrix rows);

/// The p-ary code of a plane. The order must be a power of p unless
/// allow_prime_mismatch is set (PrimeMismatch otherwise).
LinearCode code_of_plane(const Plane& plane, std::uint32_t p, bool allow_prime_mismatch = false);

/// Orthogonal complement. Every basis word is checked against every generator row.
LinearCode dual_basis(const LinearCode& code);

struct DualCheck {
    bool dual = true;
    std::optional<std::uint32_t> witness_line;  // first line with nonzero dot product
};

/// Membership in the dual of the plane's code: the dot product with every line vanishes.
DualCheck is_dual_word(const CodeWord& w, const Plane& plane);

struct MinWeightResult {
    std::uint32_t min_weight = 0;  // 0 for the zero code
    std::vector<CodeWord> words;   // sorted
    std::uint64_t enumerated = 0;
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = std::uint64_t(1) << 24;

/// Exhaustive scan of all p^k codewords in Gray-code order.
/// Throws BudgetExceeded when p^k exceeds the budget.
MinWeightResult enumerate_min_weight(const LinearCode& code, std::uint64_t budget = kDefaultEnumerationBudget,
                                     unsigned threads = 1);

/// Uniformly random codeword.
CodeWord random_codeword(const LinearCode& code, std::mt19937_64& rng);

}  // namespace planecode
