#pragma once

// Continued fractions in dimension one: Euclidean expansion of rationals,
// convergent tables, intermediate fractions, the best-approximation
// quantification of convergents and convergent-growth tests.
//
// Indexing is the usual one: row 0 is a0/1, and with the seeds p_{-1} = 1,
// q_{-1} = 0 row n has p_n = w_n p_{n-1} + p_{n-2}, q_n = w_n q_{n-1} + q_{n-2}.
//
// An irrational x is represented by a prefix [a0; w_1, ..., w_M] of its
// expansion. The unknown tail t = [w_{M+1}; ...] is > 1, so x lies strictly
// between p_M/q_M and (p_M + p_{M-1})/(q_M + q_{M-1}); all comparisons with x
// go through that open bracket and are only reported when it decides them.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dlab/power_product.hpp"
#include "dlab/ratcore.hpp"

namespace dlab {

struct CfRule {
    enum class Kind { constant, golden, power };
    Kind kind = Kind::golden;
    long k = 1;  // the constant for Kind::constant, the exponent m for Kind::power

    static CfRule constant(long k) { return {Kind::constant, k}; }
    static CfRule golden() { return {Kind::golden, 1}; }
    static CfRule power(long m) { return {Kind::power, m}; }
    /// "golden", "constant:K", "power:M".
    static CfRule parse(std::string_view text);
    std::string str() const;
};

enum class CfKind {
    exact_rational,  // the stored quotients are the whole expansion
    prefix,          // a prefix of an infinite expansion
};

struct ContinuedFraction {
    BigInt a0;
    std::vector<BigInt> quotients;  // w_1 .. w_M, all >= 1
    CfKind kind = CfKind::prefix;
    std::optional<CfRule> generator;

    /// "[a0;w1,w2,...]" or "[a0]". Exact rationals are brought to canonical
    /// form (last quotient >= 2).
    static ContinuedFraction parse(std::string_view text, CfKind kind);
    std::string str() const;
    /// Value of the stored prefix [a0; w_1, ..., w_M].
    BigRational prefix_value() const;
};

class CfHorizonError : public HorizonError {
public:
    CfHorizonError(const std::string& what, ContinuedFraction partial)
        : HorizonError(what), partial_(std::move(partial)) {}
    const ContinuedFraction& partial() const { return partial_; }

private:
    ContinuedFraction partial_;
};

/// Canonical expansion of a rational (Euclidean algorithm).
ContinuedFraction expand_rational(const BigRational& x);

/// Default cap on the decimal digits of q_n while generating.
inline constexpr std::size_t kDefaultDigitCap = 20000;

/// N partial quotients following the rule, a0 = 0. Throws CfHorizonError
/// carrying the quotients built so far when q_n would exceed digit_cap digits.
ContinuedFraction generate_cf(const CfRule& rule, std::size_t N, std::size_t digit_cap = kDefaultDigitCap);

struct ConvergentRow {
    std::size_t n = 0;
    BigInt w;  // w_n (w_0 = a0)
    BigInt p, q;
};

using ConvergentTable = std::vector<ConvergentRow>;

/// Rows 0 .. rows-1. Uses the generator when the stored prefix is too short;
/// throws HorizonError otherwise.
ConvergentTable convergents(const ContinuedFraction& cf, std::size_t rows);
/// All rows of the stored prefix.
ConvergentTable convergents(const ContinuedFraction& cf);

struct IntermediateFraction {
    BigInt r, p, q;  // (r p_n + p_{n-1}) / (r q_n + q_{n-1})
};

/// Intermediate fractions between rows n and n+1, r = 1 .. w_{n+1}; the last
/// one is p_{n+1}/q_{n+1}. For n = 0 the seeds p_{-1} = 1, q_{-1} = 0 are used.
std::vector<IntermediateFraction> intermediate_fractions(const ConvergentTable& table, std::size_t n);

/// Exact location of x: either the value itself or an open interval.
struct Bracket {
    BigRational lo, hi;  // lo == hi iff exact
    bool exact() const { return lo == hi; }
    bool contains(const BigRational& r) const { return exact() ? r == lo : (lo < r && r < hi); }
};

Bracket bracket(const ContinuedFraction& cf);

/// Three-valued answer to "|x - r| > t ?".
enum class Decision { yes, no, unknown };
Decision farther_than(const Bracket& x, const BigRational& r, const BigRational& t);

struct LemmaWitness {
    std::size_t n = 0;
    BigRational gap;    // 1 / (2 q_n q_{n+1})
    BigRational dist_lower;  // proven lower bound for |x - p/q|
};

/// Least n with n+1 < rows such that |x - p/q| > 1/(2 q_n q_{n+1}) and
/// q > q_n / 2, both decided by the bracket. Throws HorizonError when no n
/// within the horizon is decided, DomainError when p/q = x. For a whole
/// rational expansion the last row n = M counts with q_{M+1} = infinity (gap 0).
LemmaWitness check_best_approx_lemma(const ContinuedFraction& x, const BigInt& p, const BigInt& q, std::size_t rows);

struct GrowthReport {
    std::vector<std::size_t> satisfying;  // n with K q_{n+1} >= q_n^(c-1)
    std::size_t tested = 0;               // rows n = 0 .. tested-1
    std::size_t last_third_start = 0;
    bool rich = false;  // some satisfying n >= last_third_start
};

/// Finite surrogate for psi_c-approximability: rows with q_{n+1} >= q_n^(c-1)/K,
/// judged on the last third of the table.
GrowthReport psi_growth_test(const ConvergentTable& table, const BigRational& c, const PowerProduct& K);

}  // namespace dlab
