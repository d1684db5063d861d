#pragma once

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dlab/ratcore.hpp"

namespace dlab {

/// Exact non-negative value  c * b_1^e_1 * ... * b_k^e_k  with rational
/// coefficient c >= 0, integer bases b_i >= 2 and rational exponents.
///
/// This is how the library carries quantities such as q^a Q^A ||x - p/q||
/// when a and A are rational: nothing is rounded, and two values are ordered
/// by clearing all exponents to a common denominator and comparing integers.
/// A long-double pre-filter settles comparisons whose margin is far above
/// its error bound; anything closer goes through the integer path.
///
/// Invariant: each stored exponent lies strictly between 0 and 1 (integer
/// parts are folded into the coefficient) and bases are distinct.
class PowerProduct {
public:
    PowerProduct() = default;  // zero
    PowerProduct(const BigRational& coefficient);  // NOLINT: implicit on purpose

    static PowerProduct power(const BigRational& base, const BigRational& exponent);

    /// Multiply by base^exponent; base must be a positive rational.
    PowerProduct& mul_power(const BigRational& base, const BigRational& exponent);
    PowerProduct& operator*=(const BigRational& c);
    PowerProduct& operator*=(const PowerProduct& o);
    friend PowerProduct operator*(PowerProduct a, const PowerProduct& b) { return a *= b; }
    friend PowerProduct operator*(PowerProduct a, const BigRational& b) { return a *= b; }

    /// Reciprocal; the value must be non-zero.
    PowerProduct inverse() const;

    bool is_zero() const { return coeff_.is_zero(); }
    const BigRational& coefficient() const { return coeff_; }
    const std::vector<std::pair<BigInt, BigRational>>& factors() const { return factors_; }

    /// ln(value); -inf for zero.
    long double log() const;
    long double to_long_double() const;
    /// The value as a rational if it is one (detected by exact root extraction).
    std::optional<BigRational> as_rational() const;
    /// Exact text: "1/2" when rational, otherwise e.g. "1/21*3^(1/2)".
    std::string str() const;
    std::string decimal(int digits = 12) const;

    friend std::strong_ordering compare(const PowerProduct& x, const PowerProduct& y);
    friend std::strong_ordering operator<=>(const PowerProduct& x, const PowerProduct& y) {
        return compare(x, y);
    }
    friend bool operator==(const PowerProduct& x, const PowerProduct& y) {
        return compare(x, y) == std::strong_ordering::equal;
    }

    /// Smallest-ish rational >= value: float estimate widened and then verified
    /// exactly.
    BigRational rational_upper_bound() const;
    /// Largest-ish rational <= value, verified exactly.
    BigRational rational_lower_bound() const;

private:
    void mul_int_power(const BigInt& base, const BigRational& exponent);

    BigRational coeff_;
    std::vector<std::pair<BigInt, BigRational>> factors_;
};

}  // namespace dlab
