#pragma once

// Diophantine spaces (a metric space, a dense set of rational points and a
// height) with the standard instance on R^d, rational affine automorphisms
// carrying exact bi-Lipschitz and height-distortion constants, and the
// transport of non-approximability along an automorphism.

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "dlab/power_product.hpp"
#include "dlab/ratcore.hpp"

namespace dlab {

class DiophantineSpace {
public:
    virtual ~DiophantineSpace() = default;

    virtual std::size_t dimension() const = 0;
    virtual BigRational dist(const RatVec& x, const RatVec& y) const = 0;
    virtual BigInt height(const RatVec& r) const = 0;
    /// Every rational point of height <= Q in the closed ball, sorted.
    virtual std::vector<RatVec> rationals_in_ball(const RatVec& center, const BigRational& radius,
                                                  std::uint64_t Q) const = 0;
};

/// (R^d, Q^d, H) with H(p/q) = q for p/q in lowest terms; for a vector, the
/// lcm of the reduced coordinate denominators.
class StdSpace final : public DiophantineSpace {
public:
    explicit StdSpace(std::size_t d);

    std::size_t dimension() const override { return d_; }
    BigRational dist(const RatVec& x, const RatVec& y) const override { return dist_max(x, y); }
    BigInt height(const RatVec& r) const override;
    std::vector<RatVec> rationals_in_ball(const RatVec& center, const BigRational& radius,
                                          std::uint64_t Q) const override;

private:
    std::size_t d_;
};

std::unique_ptr<DiophantineSpace> std_space(std::size_t d);

BigInt height(const RatVec& r);

/// x -> s x + shift.
struct AffineAutomorphism {
    BigRational scale;
    RatVec shift;
    BigRational lip;       // |s|
    BigRational lip_inv;   // 1/|s|
    BigRational C1;        // max(|s|, 1/|s|)
    BigInt C2;             // height distortion: |num(s) den(s)| * lcm of shift denominators

    RatVec apply(const RatVec& x) const;
    RatVec invert(const RatVec& y) const;
};

AffineAutomorphism make_affine(const BigRational& s, const RatVec& shift);

/// phi o psi, with constants multiplied (they stay valid bounds).
AffineAutomorphism compose(const AffineAutomorphism& phi, const AffineAutomorphism& psi);

/// An automorphism taking [0,1]^d into the closed ball: s = 1/ceil(2/radius),
/// shift = center - (s/2, ..., s/2).
AffineAutomorphism map_cube_into_ball(std::size_t d, const RatVec& center, const BigRational& radius);

/// Height-based quotient: min over rationals r of height h <= Q of
/// h^a Q^A |x - r|, where Q may be rational. For a >= 0 this equals the
/// Dirichlet quotient; for a < 0 only reduced representations count.
struct HeightQuotient {
    PowerProduct value;
    RatVec minimizer;
    BigInt height;
};

HeightQuotient height_quotient(const RatVec& x, const ExponentPair& e, const BigRational& Q);

struct TransportStep {
    std::uint64_t Q = 0;       // scale at which x fails
    BigRational Q_image;       // Q / C2
    PowerProduct D_source;     // height quotient of x at Q
    PowerProduct D_image;      // height quotient of phi(x) at Q / C2
    RatVec image_minimizer;
    bool chain_ok = false;     // height and distance inequalities at the image minimizer
    bool image_fails = false;  // D_image >= kappa
};

struct TransportReport {
    PowerProduct kappa_source;  // C1 C2^(|a|+|A|) kappa
    RatVec image;
    std::vector<TransportStep> steps;  // one per failing Q of the source
    bool passed = false;  // every failing Q transported; vacuous when the source never fails
};

/// Inequality chase: wherever x fails (C1 C2^(|a|+|A|) kappa Psi, C2 Q0)
/// within Q <= horizon, phi(x) must fail (kappa Psi, Q0) at Q / C2.
TransportReport transport_check(const RatVec& x, const AffineAutomorphism& phi, const ExponentPair& e,
                                const BigRational& kappa, std::uint64_t Q0, std::uint64_t horizon);

/// Radius rho > 0 such that every y with |y - x| < rho keeps
/// h^a Q^A |y - r| > kappa for all r of height h <= Q, or nothing when x itself
/// does not satisfy the strict inequality.
std::optional<BigRational> openness_radius(const RatVec& x, const ExponentPair& e, const BigRational& kappa,
                                           std::uint64_t Q);

}  // namespace dlab
