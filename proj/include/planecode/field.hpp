#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace planecode {

/// An element of GF(p^h), stored as the integer sum c_0 + c_1 p + ... + c_{h-1} p^{h-1}
/// of its canonical coefficient vector. Ordering follows that integer.
struct FieldElement {
    std::uint32_t value = 0;

    friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

/// GF(p^h) with an explicit monic irreducible modulus.
///
/// Multiplication runs through exp/log tables built from a primitive element;
/// addition is digit-wise mod p (XOR for p = 2, table lookup for small q).
/// A Field is an immutable value; copies share the same tables.
class Field {
public:
    /// Builds GF(p^h). Without a modulus, the lexicographically smallest monic
    /// irreducible of degree h is used (coefficients compared from the constant
    /// term upward). Throws NotPrime, ReducibleModulus or InvalidArgument.
    static Field make(std::uint32_t p, std::uint32_t h,
                      std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

    /// Parses "p^h" (or a bare prime "p"), e.g. "3^2".
    static Field parse(std::string_view spec,
                       std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

    std::uint32_t p() const noexcept { return p_; }
    std::uint32_t h() const noexcept { return h_; }
    std::uint32_t q() const noexcept { return q_; }
    /// Low-degree-first coefficients, length h + 1, leading 1.
    const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
    std::string spec_string() const;

    FieldElement zero() const noexcept { return {0}; }
    FieldElement one() const noexcept { return {1}; }
    /// Image of an integer in the prime subfield.
    FieldElement from_int(std::int64_t v) const noexcept;
    FieldElement from_coeffs(std::span<const std::uint32_t> coeffs) const;
    std::vector<std::uint32_t> coeffs(FieldElement a) const;
    FieldElement element(std::uint32_t index) const;
    /// The class of x modulo the modulus.
    FieldElement generator_x() const;

    FieldElement add(FieldElement a, FieldElement b) const noexcept;
    FieldElement sub(FieldElement a, FieldElement b) const noexcept;
    FieldElement neg(FieldElement a) const noexcept { return {tables_->neg[a.value]}; }
    FieldElement mul(FieldElement a, FieldElement b) const noexcept;
    FieldElement inv(FieldElement a) const;
    FieldElement div(FieldElement a, FieldElement b) const;
    FieldElement pow(FieldElement a, std::int64_t e) const;

    /// True iff a lies in the subfield GF(p^k); k must divide h.
    bool in_subfield(FieldElement a, std::uint32_t k) const;

    /// All roots of x^2 + b x + c, found by evaluating every element.
    std::vector<FieldElement> solve_monic_quadratic(FieldElement b, FieldElement c) const;

    std::string to_string(FieldElement a) const;

    friend bool operator==(const Field& a, const Field& b) noexcept {
        return a.p_ == b.p_ && a.h_ == b.h_ && a.modulus_ == b.modulus_;
    }

private:
    struct Tables {
        std::vector<std::uint32_t> exp;  // length 2(q-1)
        std::vector<std::uint32_t> log;  // log[0] unused
        std::vector<std::uint32_t> neg;
        std::vector<std::uint16_t> add;  // q*q when q <= kAddTableMax, else empty
    };
    static constexpr std::uint32_t kAddTableMax = 1024;

    Field() = default;
    std::uint32_t add_digits(std::uint32_t a, std::uint32_t b) const noexcept;

    std::uint32_t p_ = 0;
    std::uint32_t h_ = 0;
    std::uint32_t q_ = 0;
    std::vector<std::uint32_t> modulus_;
    std::shared_ptr<const Tables> tables_;
};

bool is_prime(std::uint64_t n) noexcept;

/// Monic irreducibility over GF(p) by trial division with every monic polynomial
/// of degree 1..deg/2. Coefficients low-degree-first.
bool is_irreducible(std::span<const std::uint32_t> poly, std::uint32_t p);

}  // namespace planecode
