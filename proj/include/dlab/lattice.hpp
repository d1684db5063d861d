#pragma once

// Greedy chain of residues y_q = q x mod Z^d (nearest representatives) whose
// members are linearly independent: step j picks, among residues lying in the
// open Dirichlet domain of the lattice spanned by the earlier picks, the one
// closest to their span. The chain stops when no residue qualifies.
//
// Membership in the Dirichlet domain is decided exactly. Write y = Py + y'
// with Py the orthogonal projection on the span V; then
// |y - l|^2 = |Py - l|^2 + |y'|^2, so y is in the domain iff no non-zero
// lattice vector l has |Py - l|^2 <= |Py|^2. Those l are enumerated with an
// LLL-reduced basis and Fincke-Pohst bounds, all in rational arithmetic.

#include <cstdint>
#include <vector>

#include "dlab/ratcore.hpp"

namespace dlab {

struct ResidueEntry {
    std::uint64_t q = 0;
    RatVec y;
    BigRational norm;  // max norm of y
};

std::vector<ResidueEntry> residue_table(const RatVec& x, std::uint64_t Q);

/// Lattice spanned by linearly independent rational vectors.
class RationalLattice {
public:
    explicit RationalLattice(std::size_t dim) : dim_(dim) {}

    std::size_t rank() const { return basis_.size(); }
    /// Adds a generator; it must be independent of the current ones.
    void add(const RatVec& v);

    /// Squared Euclidean distance from y to the span.
    BigRational dist2_to_span(const RatVec& y) const;
    /// Is y strictly closer to 0 than to every other lattice point?
    bool in_dirichlet_domain(const RatVec& y) const;

private:
    void reduce();
    void orthogonalize();

    std::size_t dim_;
    std::vector<RatVec> basis_;   // LLL-reduced
    std::vector<RatVec> star_;    // Gram-Schmidt vectors
    std::vector<BigRational> B_;  // |star_i|^2
    std::vector<std::vector<BigRational>> mu_;
};

struct ChainStep {
    std::uint64_t q = 0;
    RatVec y;
    BigRational r;           // max norm of y
    BigRational perp_dist2;  // squared Euclidean distance from y to the span of earlier steps
};

struct LatticeChain {
    std::size_t d = 1;
    std::uint64_t Q = 0;
    RatVec x;
    std::vector<ChainStep> steps;
    std::size_t k() const { return steps.size(); }
};

LatticeChain greedy_construct(const RatVec& x, std::uint64_t Q);

struct ClaimReport {
    BigRational product;  // prod r_i (1 for the empty chain)
    BigRational ratio;    // Q * product
    bool independent = false;
    bool decay_ok = false;   // perp_dist_j^2 >= (3/4)^j r_j^2
    bool perp_ok = false;    // perp_dist_j^2 <= |y_j|_2^2
    bool radius_ok = false;  // r_j <= 1/2
};

/// Checks the chain; dependence raises InvariantViolation("CLAIM VIOLATION").
ClaimReport verify_claim(const LatticeChain& chain);

/// Exact rank of a list of rational vectors.
std::size_t rank_of(const std::vector<RatVec>& vs);

}  // namespace dlab
