#include "dlab/witness.hpp"

namespace dlab {

std::string to_string(BoundarySegment s) {
    switch (s) {
        case BoundarySegment::left: return "left";
        case BoundarySegment::core: return "core";
        case BoundarySegment::slope: return "slope";
        case BoundarySegment::zero: return "zero";
    }
    return "?";
}

BoundaryValue f_d(unsigned d, const BigRational& a) {
    if (d < 1) throw DomainError("f_d needs d >= 1");
    BoundaryValue v{d, a, BigRational(), BoundarySegment::core};
    const BigRational one(1);
    const BigRational knee = one + BigRational(BigInt(1), BigInt(d));
    if (a.sign() <= 0) {
        v.segment = BoundarySegment::left;
        v.value = one + a.abs();
    } else if (a <= one) {
        BigRational sum, term(1);
        for (unsigned i = 0; i < d; ++i) {
            sum += term;
            term *= a;
        }
        v.value = one / sum;
    } else if (a <= knee) {
        v.segment = BoundarySegment::slope;
        v.value = knee - a;
    } else {
        v.segment = BoundarySegment::zero;
    }
    return v;
}

std::vector<BigRational> alpha_ladder(unsigned d, const BigRational& a) {
    if (a.sign() < 0 || a > BigRational(1)) throw DomainError("alpha_ladder needs 0 <= a <= 1, got " + a.str());
    const BigRational A = f_d(d, a).value;
    std::vector<BigRational> alphas{BigRational(0)};
    for (unsigned j = 1; j <= d; ++j) alphas.push_back(A + a * alphas.back());
    if (alphas.back() != BigRational(1))
        throw InvariantViolation("PROOF VIOLATION", "alpha_d = " + alphas.back().str() + " instead of 1");
    return alphas;
}

WitnessPoint build_witness(unsigned d, const BigRational& a, std::uint64_t Q) {
    if (Q < 2) throw DomainError("build_witness needs Q >= 2");
    WitnessPoint w;
    w.d = d;
    w.a = a;
    w.A = f_d(d, a).value;
    w.Q = Q;
    w.alphas = alpha_ladder(d, a);
    const BigInt bigQ(static_cast<unsigned long>(Q));
    w.Qseq.emplace_back(2);
    std::vector<BigRational> x;
    for (unsigned i = 1; i <= d; ++i) {
        w.n.push_back(ceil_rational_power(bigQ, w.alphas[i] - w.alphas[i - 1]));
        w.Qseq.push_back(w.Qseq.back() * w.n.back());
        x.emplace_back(BigInt(1), w.Qseq.back());
    }
    w.x = RatVec(std::move(x));
    return w;
}

WitnessReport verify_witness_bound(const WitnessPoint& w) {
    const ExponentPair e{w.a, w.A};
    const BigRational bigQ(BigInt(static_cast<unsigned long>(w.Q)));
    const BigRational two(2);

    // Band i holds the q with Q_{i-1} <= 2q < Q_i. Q_d >= 2Q, and when the
    // ceilings are all exact Q_d = 2Q, so the last band also takes 2q = Q_d.
    std::vector<MinimumTracker> trackers;
    WitnessReport rep;
    for (unsigned i = 1; i <= w.d; ++i) {
        trackers.emplace_back(w.a);
        BandFloor b;
        b.i = i;
        b.floor = PowerProduct::power(BigRational(w.Qseq[i - 1]) / two, w.a);
        b.floor.mul_power(bigQ, w.A);
        b.floor *= BigRational(BigInt(1), w.Qseq[i]);
        rep.bands.push_back(std::move(b));
    }

    ResidueWalker walker(w.x);
    unsigned band = 1;
    for (std::uint64_t q = 1; q <= w.Q; ++q) {
        walker.advance();
        const BigInt twice_q(static_cast<unsigned long>(2 * q));
        while (band < w.d && twice_q >= w.Qseq[band]) ++band;
        if (twice_q < w.Qseq[band - 1])
            throw InvariantViolation("PROOF VIOLATION", "q=" + std::to_string(q) + " below the first band");
        if (band == w.d && twice_q > w.Qseq[w.d])
            throw InvariantViolation("PROOF VIOLATION", "q=" + std::to_string(q) + " beyond Q_d/2");
        trackers[band - 1].offer(walker);
        BandFloor& b = rep.bands[band - 1];
        if (!b.q_lo) b.q_lo = q;
        b.q_hi = q;
    }

    bool have = false;
    for (std::size_t i = 0; i < trackers.size(); ++i) {
        BandFloor& b = rep.bands[i];
        if (trackers[i].empty()) continue;
        b.argmin_q = trackers[i].q();
        b.band_min = quotient_value(trackers[i].snapshot(w.Q), e);
        if (compare(b.band_min, b.floor) < 0)
            throw InvariantViolation("PROOF VIOLATION", "band " + std::to_string(b.i) + " minimum " + b.band_min.str() +
                                                            " at q=" + std::to_string(b.argmin_q) + " is below " +
                                                            b.floor.str() + " for x=" + w.x.str());
        if (!have || compare(b.band_min, rep.epsilon) < 0) {
            rep.epsilon = b.band_min;
            rep.minimizer_q = b.argmin_q;
            have = true;
        }
    }
    return rep;
}

}  // namespace dlab
