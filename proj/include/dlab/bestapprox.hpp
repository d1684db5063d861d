#pragma once

// Brute-force oracle over denominators 1..Q: best distances, the Dirichlet
// quotient D_{a,A}(x, Q) = min_{1<=q<=Q} min_p q^a Q^A ||x - p/q||,
// finite-horizon approximability verdicts and sample suprema.
//
// Every q is scanned, so non-reduced representations p/q are covered too.
// Ties: smallest q, and for a given q the p of nearest_rep.

#include <cstdint>
#include <optional>
#include <vector>

#include "dlab/power_product.hpp"
#include "dlab/ratcore.hpp"

namespace dlab {

struct ApproximationRecord {
    BigInt q;
    std::vector<BigInt> p;
    BigRational dist;       // ||x - p/q||
    PowerProduct weighted;  // q^a Q^A dist in the context that produced it
};

struct QuotientReport {
    std::uint64_t Q = 0;
    ExponentPair exponents;
    ApproximationRecord minimizer;
    PowerProduct value;  // D_{a,A}(x, Q)
};

/// Walks q = 1, 2, ... keeping q*x mod Z^d incrementally (additions only).
class ResidueWalker {
public:
    explicit ResidueWalker(const RatVec& x);

    void advance();
    std::uint64_t q() const { return q_; }
    bool zero() const { return r_ == 0; }
    /// ln ||q x||; -inf when q x is integral.
    long double log_norm() const;
    /// ||q x|| = max_i |q x_i - p_i| at the nearest p.
    BigRational norm() const;

private:
    std::vector<BigInt> den_, step_, s_;
    std::vector<long double> log_den_;
    std::uint64_t q_ = 0;
    std::size_t arg_ = 0;
    BigInt r_, t1_, t2_;
};

/// Running minimum of q^(a-1) ||q x|| over q <= Q, sampled at requested Q.
struct PrefixMinimum {
    std::uint64_t Q = 0;
    std::uint64_t q = 0;
    BigRational norm;  // ||q x|| at the minimizing q
};

/// Keeps the minimizer of g(q) = q^(a-1) ||q x|| over the walker positions it
/// is offered. Only a strictly smaller value replaces the incumbent, so the
/// smallest q wins ties when positions arrive in increasing q.
class MinimumTracker {
public:
    explicit MinimumTracker(const BigRational& a);

    void offer(const ResidueWalker& w);
    bool empty() const { return best_q_ == 0; }
    std::uint64_t q() const { return best_q_; }
    const BigRational& norm() const { return best_norm_; }
    PrefixMinimum snapshot(std::uint64_t Q) const { return PrefixMinimum{Q, best_q_, best_norm_}; }

private:
    void take(const ResidueWalker& w, long double lg, BigRational n);

    BigRational am1_;
    long double am1_ld_;
    std::uint64_t best_q_ = 0;
    long double best_log_ = 0;
    BigRational best_norm_;
    bool best_zero_ = false;
};

/// One pass over q = 1..max(Qs); Qs must be sorted ascending and >= 1.
std::vector<PrefixMinimum> prefix_minima(const RatVec& x, const BigRational& a, const std::vector<std::uint64_t>& Qs);

/// Q^A q^(a-1) ||q x|| for a recorded prefix minimum.
PowerProduct quotient_value(const PrefixMinimum& m, const ExponentPair& e);
QuotientReport make_report(const RatVec& x, const PrefixMinimum& m, const ExponentPair& e);

ApproximationRecord best_dist(const RatVec& x, const BigInt& q);

QuotientReport dirichlet_quotient(const RatVec& x, std::uint64_t Q, const ExponentPair& e);

/// Smallest q <= Q with ||x - p/q|| < q^-1 Q^-1/d. Throws InvariantViolation
/// ("THEOREM VIOLATION") if none exists.
ApproximationRecord check_dirichlet(const RatVec& x, std::uint64_t Q);

struct ApproximabilityVerdict {
    std::uint64_t Q0 = 0, Qmax = 0;
    bool holds = false;
    std::optional<std::uint64_t> fails_at;  // least Q with D >= kappa
    std::uint64_t worst_Q = 0;
    PowerProduct worst_D;
};

/// D(x, Q) < kappa for every Q in [Q0, Qmax]?
ApproximabilityVerdict is_approximable(const RatVec& x, const ExponentPair& e, const BigRational& kappa,
                                       std::uint64_t Q0, std::uint64_t Qmax);

struct SampleSup {
    PowerProduct value;
    std::size_t argmax = 0;
    QuotientReport report;
};

SampleSup sup_over_sample(const std::vector<RatVec>& points, const ExponentPair& e, std::uint64_t Q);

}  // namespace dlab
