#pragma once

// Exponent bookkeeping for the d = 1 duality between two-parameter
// approximation and psi_c-approximation, the convergent growth inequality,
// and finite-horizon consistency tests of both implications.
//
// D_{a,A}(x, Q) for x given by a continued fraction is computed exactly for
// the rational proxy p_M/q_M (last stored convergent) with a lattice walk in
// the basis of consecutive convergent vectors, so Q far beyond any
// exhaustive scan is affordable. For a prefix the error against the true x is
// bounded by Q^A max(1, Q^a) / (q_M (q_M + q_{M-1})) and carried as a margin.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dlab/contfrac.hpp"
#include "dlab/power_product.hpp"
#include "dlab/ratcore.hpp"

namespace dlab {

enum class Regime { strict, boundary };
std::string to_string(Regime r);

struct DualityParams {
    BigRational a, A, b, c;
    Regime regime = Regime::strict;
};

/// b = min(A, A + a) - 1, c = (A - |a|) / b. Requires a < 1 < min(A, A + a)
/// and c >= 2; the error names the failed inequality.
DualityParams duality_params(const BigRational& a, const BigRational& A);

struct GrowthBoundRow {
    std::size_t n = 0;
    bool holds = false;  // q_{n+1} <= alpha^b q_n^(c-1)
};

struct GrowthBoundReport {
    std::vector<GrowthBoundRow> rows;
    std::optional<std::size_t> n0;  // least n0 with the bound for all n >= n0 in the table
    bool fails_cofinally() const { return !n0.has_value(); }
};

GrowthBoundReport growth_bound_check(const ConvergentTable& table, const DualityParams& params,
                                     const BigRational& alpha);

struct CfQuotient {
    BigInt Q;
    BigInt q, p;          // minimizer, ties to the smallest q
    PowerProduct value;   // D_{a,A}(proxy, Q)
    BigRational margin;   // |D(x, Q) - value| <= margin (0 for exact rationals)
};

/// Exact D_{a,A} along a continued fraction.
class CfQuotientEngine {
public:
    CfQuotientEngine(const ContinuedFraction& cf, const ExponentPair& e);

    /// Largest Q the engine accepts for a prefix: q_{M-1} - 1, lowered so
    /// that the margin stays below 2^-32. For an exact rational any Q works
    /// and this is q_M.
    const BigInt& max_Q() const { return max_Q_; }
    const ConvergentTable& table() const { return table_; }
    const BigRational& proxy() const { return proxy_; }

    CfQuotient evaluate(const BigInt& Q) const;

private:
    ContinuedFraction cf_;
    ExponentPair e_;
    ConvergentTable table_;
    BigRational proxy_;
    std::vector<BigRational> eps_;  // eps_n = q_n * proxy - p_n
    BigRational delta_;             // bound on |x - proxy|
    BigInt max_Q_;
};

/// Q grid for a CF profile: about `geometric_points` powers of two up to
/// max_Q plus q_n, floor(q_{n+1}/2) and q_{n+1} - 1 for every n in range.
std::vector<BigInt> cf_q_grid(const ConvergentTable& table, const BigInt& max_Q, std::size_t geometric_points = 512);

struct ProfilePoint {
    CfQuotient d;
    BigRational lo, hi;  // short rationals with lo <= d.value <= hi
    bool final_third = false;  // log Q >= (2/3) log max_Q
};

/// D along the grid, computed once and reused across alpha and C.
struct DProfile {
    ExponentPair e;
    BigInt max_Q;
    std::vector<ProfilePoint> points;
};

DProfile d_profile(const CfQuotientEngine& engine, std::size_t geometric_points = 512);

enum class Verdict { consistent, violation, undecided };
std::string to_string(Verdict v);

enum class Truth { yes, no, unknown };
std::string to_string(Truth t);

struct ImplicationReport {
    Verdict verdict = Verdict::undecided;
    Truth lhs = Truth::unknown;
    Truth rhs = Truth::unknown;
    std::optional<std::size_t> lhs_witness;  // index into the profile deciding the LHS
    GrowthReport growth;
    PowerProduct K;
};

/// (i): x alpha-Psi-approximable  =>  x not (C alpha^b)^-1 psi_c-approximable.
ImplicationReport test_implication_i(const DProfile& profile, const ConvergentTable& table,
                                     const DualityParams& params, const BigRational& alpha, const BigRational& C);
/// (ii): x not alpha-Psi-approximable  =>  x is C alpha^-b psi_c-approximable.
ImplicationReport test_implication_ii(const DProfile& profile, const ConvergentTable& table,
                                      const DualityParams& params, const BigRational& alpha, const BigRational& C);

/// Convenience wrappers that build the engine and profile themselves.
ImplicationReport test_implication_i(const ContinuedFraction& x, const DualityParams& params, const BigRational& alpha,
                                     const BigRational& C);
ImplicationReport test_implication_ii(const ContinuedFraction& x, const DualityParams& params,
                                      const BigRational& alpha, const BigRational& C);

struct BatteryMember {
    std::string name;
    ContinuedFraction cf;
};

/// golden, constant:2, power:1 and power:2 prefixes; the power rules stop at
/// the digit cap.
std::vector<BatteryMember> standard_battery(std::size_t golden_rows = 200, std::size_t constant_rows = 150,
                                            std::size_t digit_cap = kDefaultDigitCap);

struct SweepOutcome {
    std::optional<long> least_log2_C;        // least k with no violation at C = 2^k
    std::vector<std::size_t> violations;     // per k = 0 .. max_log2
    std::vector<std::size_t> undecided;      // per k
    std::size_t tests_per_C = 0;
};

/// Both implications for every member, parameter pair and alpha at C = 2^k,
/// k = 0 .. max_log2. Each D profile is computed once.
SweepOutcome sweep_C(const std::vector<BatteryMember>& battery, const std::vector<DualityParams>& params,
                     const std::vector<BigRational>& alphas, long max_log2);

/// alpha^b as an exact power product.
PowerProduct alpha_power(const BigRational& alpha, const BigRational& b);

}  // namespace dlab
