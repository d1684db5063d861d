#pragma once

// The critical boundary f_d(a) and the explicit extremal points
// x = (1/Q_1, ..., 1/Q_d) that stay badly approximable at scale Q.

#include <cstdint>
#include <string>
#include <vector>

#include "dlab/bestapprox.hpp"
#include "dlab/power_product.hpp"
#include "dlab/ratcore.hpp"

namespace dlab {

enum class BoundarySegment { left, core, slope, zero };

std::string to_string(BoundarySegment s);

struct BoundaryValue {
    unsigned d = 1;
    BigRational a;
    BigRational value;
    BoundarySegment segment = BoundarySegment::core;
};

/// f_d(a): 1 + |a| for a <= 0, 1 / sum_{i<d} a^i on [0, 1],
/// 1 + 1/d - a on [1, 1 + 1/d] and 0 beyond.
BoundaryValue f_d(unsigned d, const BigRational& a);

/// alpha_j = A * sum_{i<j} a^i for j = 0..d with A = f_d(a); needs a in [0, 1].
std::vector<BigRational> alpha_ladder(unsigned d, const BigRational& a);

struct WitnessPoint {
    unsigned d = 1;
    BigRational a;
    BigRational A;  // f_d(a)
    std::uint64_t Q = 0;
    std::vector<BigRational> alphas;  // alpha_0 .. alpha_d
    std::vector<BigInt> n;            // n_1 .. n_d
    std::vector<BigInt> Qseq;         // Q_0 .. Q_d
    RatVec x;                         // (1/Q_1, ..., 1/Q_d)
};

/// n_i = ceil(Q^(alpha_i - alpha_{i-1})), Q_0 = 2, Q_j = Q_{j-1} n_j.
WitnessPoint build_witness(unsigned d, const BigRational& a, std::uint64_t Q);

struct BandFloor {
    unsigned i = 0;                       // band Q_{i-1} <= 2q < Q_i
    std::uint64_t q_lo = 0, q_hi = 0;     // q range of the band clipped to [1, Q]
    PowerProduct floor;                   // (Q_{i-1}/2)^a Q^A / Q_i
    std::uint64_t argmin_q = 0;
    PowerProduct band_min;                // min over the band of q^a Q^A ||x - p/q||
};

struct WitnessReport {
    PowerProduct epsilon;       // D_{a, f_d(a)}(x, Q)
    std::uint64_t minimizer_q = 0;
    std::vector<BandFloor> bands;
};

/// Measures epsilon with the exhaustive oracle and checks every band minimum
/// against its analytic floor; a miss raises InvariantViolation("PROOF VIOLATION").
WitnessReport verify_witness_bound(const WitnessPoint& w);

}  // namespace dlab
