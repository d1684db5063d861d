#pragma once

// Exact rational arithmetic, rational vectors under the max norm and
// nearest representatives of q*x modulo Z^d.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "dlab/errors.hpp"

namespace dlab {

using BigInt = mpz_class;

/// Arbitrary-precision fraction, always stored reduced with a positive
/// denominator.
class BigRational {
public:
    BigRational() = default;
    BigRational(long value) : v_(value) {}  // NOLINT: implicit on purpose
    BigRational(const BigInt& value) : v_(value) {}  // NOLINT
    BigRational(const BigInt& num, const BigInt& den);

    static BigRational from_mpq(const mpq_class& q);
    /// Accepts "p", "p/q" and plain decimals such as "-0.125"; optional sign,
    /// no whitespace.
    static BigRational parse(std::string_view text);

    const BigInt& num() const { return v_.get_num(); }
    const BigInt& den() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    int sign() const { return sgn(v_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return den() == 1; }
    BigInt floor() const;
    BigInt ceil() const;
    BigRational abs() const;
    long double to_long_double() const;
    std::string str() const;
    /// Fixed-point decimal with `digits` fractional digits (rounded to nearest).
    std::string decimal(int digits = 12) const;

    BigRational& operator+=(const BigRational& o);
    BigRational& operator-=(const BigRational& o);
    BigRational& operator*=(const BigRational& o);
    BigRational& operator/=(const BigRational& o);

    friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
    friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
    friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
    friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }
    BigRational operator-() const;

    friend bool operator==(const BigRational& a, const BigRational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b);

private:
    mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const BigRational& r);

/// Reduced representative of num/den.
BigRational reduce(const BigInt& num, const BigInt& den);

BigRational pow(const BigRational& base, long exponent);
BigRational min(const BigRational& a, const BigRational& b);
BigRational max(const BigRational& a, const BigRational& b);

/// Fixed-dimension vector of rationals; the geometry is the max norm.
class RatVec {
public:
    RatVec() = default;
    explicit RatVec(std::vector<BigRational> coords);
    explicit RatVec(std::size_t dim);  // zero vector

    /// Comma-separated rationals, e.g. "1/20,1/200".
    static RatVec parse(std::string_view text);

    std::size_t dim() const { return c_.size(); }
    const BigRational& operator[](std::size_t i) const { return c_[i]; }
    BigRational& operator[](std::size_t i) { return c_[i]; }
    const std::vector<BigRational>& coords() const { return c_; }

    BigRational norm_max() const;
    BigRational norm2_sq() const;
    bool is_zero() const;
    std::string str() const;

    RatVec& operator+=(const RatVec& o);
    RatVec& operator-=(const RatVec& o);
    RatVec& operator*=(const BigRational& s);
    friend RatVec operator+(RatVec a, const RatVec& b) { return a += b; }
    friend RatVec operator-(RatVec a, const RatVec& b) { return a -= b; }
    friend RatVec operator*(RatVec a, const BigRational& s) { return a *= s; }
    friend RatVec operator*(const BigRational& s, RatVec a) { return a *= s; }
    friend bool operator==(const RatVec&, const RatVec&) = default;

private:
    std::vector<BigRational> c_;
};

BigRational dot(const RatVec& x, const RatVec& y);

/// max_i |x_i - y_i|.
BigRational dist_max(const RatVec& x, const RatVec& y);

/// Exponents (a, A) of Psi(q, Q) = q^-a Q^-A.
struct ExponentPair {
    BigRational a;
    BigRational A;
    friend bool operator==(const ExponentPair&, const ExponentPair&) = default;
};

/// Element of q*x + Z^d with every coordinate in (-1/2, 1/2], together with
/// the integer vector p such that rep = q*x - p.
struct Residue {
    RatVec rep;
    BigRational norm;
    std::vector<BigInt> p;
};

Residue nearest_rep(const RatVec& x, const BigInt& q);

/// Exact ordering of q^a * Q^A * dist against threshold.
std::strong_ordering cmp_weighted(const BigInt& q, const BigInt& Q, const BigRational& dist,
                                  const ExponentPair& e, const BigRational& threshold);

/// floor(n^(1/k)) for n >= 0, k >= 1.
BigInt iroot_floor(const BigInt& n, unsigned long k);
/// ceil(base^exponent) for integer base >= 1 and rational exponent >= 0,
/// computed by integer root extraction.
BigInt ceil_rational_power(const BigInt& base, const BigRational& exponent);
/// Natural log of a positive big integer, accurate for any magnitude.
long double log_big(const BigInt& n);
/// Natural log of a positive rational.
long double log_rat(const BigRational& r);

unsigned long to_ulong_checked(const BigInt& n, const char* what);

}  // namespace dlab
