#include "dlab/dspace.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "dlab/bestapprox.hpp"

namespace dlab {

BigInt height(const RatVec& r) {
    BigInt L = 1;
    for (const auto& c : r.coords()) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), c.den().get_mpz_t());
    return L;
}

StdSpace::StdSpace(std::size_t d) : d_(d) {
    if (d < 1) throw DomainError("std_space needs d >= 1");
}

BigInt StdSpace::height(const RatVec& r) const {
    if (r.dim() != d_) throw DomainError("point has the wrong dimension");
    return dlab::height(r);
}

std::vector<RatVec> StdSpace::rationals_in_ball(const RatVec& center, const BigRational& radius,
                                                std::uint64_t Q) const {
    if (center.dim() != d_) throw DomainError("ball center has the wrong dimension");
    if (radius.sign() < 0) throw DomainError("radius must be non-negative");
    std::vector<RatVec> out;
    for (std::uint64_t q = 1; q <= Q; ++q) {
        const BigInt bq(static_cast<unsigned long>(q));
        std::vector<BigInt> lo(d_), hi(d_);
        bool empty = false;
        for (std::size_t i = 0; i < d_; ++i) {
            lo[i] = (BigRational(bq) * (center[i] - radius)).ceil();
            hi[i] = (BigRational(bq) * (center[i] + radius)).floor();
            if (lo[i] > hi[i]) empty = true;
        }
        if (empty) continue;
        // odometer over the box of numerators; keep vectors of exact height q
        std::vector<BigInt> p = lo;
        while (true) {
            BigInt g = bq;
            for (const auto& v : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
            if (g == 1) {
                std::vector<BigRational> coords;
                for (const auto& v : p) coords.emplace_back(v, bq);
                out.emplace_back(std::move(coords));
            }
            std::size_t i = 0;
            while (i < d_ && p[i] == hi[i]) {
                p[i] = lo[i];
                ++i;
            }
            if (i == d_) break;
            p[i] += 1;
        }
    }
    std::sort(out.begin(), out.end(), [](const RatVec& u, const RatVec& v) {
        return std::lexicographical_compare(u.coords().begin(), u.coords().end(), v.coords().begin(), v.coords().end());
    });
    return out;
}

std::unique_ptr<DiophantineSpace> std_space(std::size_t d) { return std::make_unique<StdSpace>(d); }

RatVec AffineAutomorphism::apply(const RatVec& x) const { return x * scale + shift; }
RatVec AffineAutomorphism::invert(const RatVec& y) const { return (y - shift) * (BigRational(1) / scale); }

AffineAutomorphism make_affine(const BigRational& s, const RatVec& shift) {
    if (s.is_zero()) throw DomainError("automorphism scale must be non-zero");
    AffineAutomorphism phi;
    phi.scale = s;
    phi.shift = shift;
    phi.lip = s.abs();
    phi.lip_inv = BigRational(1) / s.abs();
    phi.C1 = max(phi.lip, phi.lip_inv);
    BigInt uv = s.num() * s.den();
    phi.C2 = abs(uv) * height(shift);
    return phi;
}

AffineAutomorphism compose(const AffineAutomorphism& phi, const AffineAutomorphism& psi) {
    AffineAutomorphism out;
    out.scale = phi.scale * psi.scale;
    out.shift = psi.shift * phi.scale + phi.shift;
    out.lip = phi.lip * psi.lip;
    out.lip_inv = phi.lip_inv * psi.lip_inv;
    out.C1 = phi.C1 * psi.C1;
    out.C2 = phi.C2 * psi.C2;
    return out;
}

AffineAutomorphism map_cube_into_ball(std::size_t d, const RatVec& center, const BigRational& radius) {
    if (radius.sign() <= 0) throw DomainError("radius must be positive");
    if (center.dim() != d) throw DomainError("ball center has the wrong dimension");
    BigRational s(BigInt(1), (BigRational(2) / radius).ceil());
    RatVec shift = center;
    for (std::size_t i = 0; i < d; ++i) shift[i] -= s / BigRational(2);
    return make_affine(s, shift);
}

namespace {

struct HeightBest {
    std::uint64_t h = 0;
    RatVec r;
    BigRational dist;
    PowerProduct g;  // h^a dist
};

// Closest rational of height exactly h to x (d = 1), searching outward from the
// nearest numerator until one is coprime to h.
std::pair<BigInt, BigRational> nearest_coprime(const BigRational& x, const BigInt& h) {
    const BigRational hx = x * BigRational(h);
    const BigInt f = hx.floor();
    BigInt down = f, up = f + 1;
    auto coprime = [&](const BigInt& p) {
        BigInt g;
        mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), h.get_mpz_t());
        return g == 1;
    };
    while (true) {
        const BigRational dd = hx - BigRational(down), du = BigRational(up) - hx;
        const BigInt& first = du < dd ? up : down;
        const BigInt& second = du < dd ? down : up;
        if (coprime(first)) return {first, (BigRational(first) - hx).abs() / BigRational(h)};
        if (coprime(second) && (BigRational(second) - hx).abs() == (BigRational(first) - hx).abs())
            return {second, (BigRational(second) - hx).abs() / BigRational(h)};
        if (&first == &up) up += 1; else down -= 1;
    }
}

// Running minima of h^a |x - r| over reduced r of height h <= H.
std::vector<HeightBest> height_prefix(const RatVec& x, const BigRational& a, std::uint64_t H) {
    const bool coprime_search = a.sign() < 0;
    if (coprime_search && x.dim() != 1)
        throw DomainError("height quotient with a < 0 is implemented for d = 1 only");
    std::vector<HeightBest> out;
    out.reserve(H);
    HeightBest best;
    for (std::uint64_t h = 1; h <= H; ++h) {
        const BigInt bh(static_cast<unsigned long>(h));
        HeightBest cand;
        cand.h = h;
        if (coprime_search) {
            auto [p, dist] = nearest_coprime(x[0], bh);
            cand.r = RatVec({BigRational(p, bh)});
            cand.dist = dist;
        } else {
            // a >= 0: a non-reduced nearest p/h has a reduced form of smaller
            // height, already scanned with a weight no larger.
            Residue res = nearest_rep(x, bh);
            std::vector<BigRational> coords;
            for (const auto& p : res.p) coords.emplace_back(p, bh);
            cand.r = RatVec(std::move(coords));
            cand.dist = res.norm / BigRational(bh);
        }
        cand.g = PowerProduct(cand.dist);
        cand.g.mul_power(BigRational(bh), a);
        if (h == 1 || compare(cand.g, best.g) < 0) best = cand;
        out.push_back(best);
    }
    return out;
}

HeightQuotient finish(const HeightBest& b, const ExponentPair& e, const BigRational& Q) {
    HeightQuotient hq;
    hq.value = b.g;
    hq.value.mul_power(Q, e.A);
    hq.minimizer = b.r;
    hq.height = height(b.r);
    return hq;
}

}  // namespace

HeightQuotient height_quotient(const RatVec& x, const ExponentPair& e, const BigRational& Q) {
    if (Q < BigRational(1)) throw DomainError("height_quotient needs Q >= 1");
    std::uint64_t H = to_ulong_checked(Q.floor(), "Q");
    return finish(height_prefix(x, e.a, H).back(), e, Q);
}

TransportReport transport_check(const RatVec& x, const AffineAutomorphism& phi, const ExponentPair& e,
                                const BigRational& kappa, std::uint64_t Q0, std::uint64_t horizon) {
    if (kappa.sign() <= 0) throw DomainError("kappa must be positive");
    if (Q0 < 1) throw DomainError("Q0 must be >= 1");
    TransportReport rep;
    const BigRational C2(phi.C2);
    rep.kappa_source = PowerProduct(phi.C1 * kappa);
    rep.kappa_source.mul_power(C2, e.a.abs() + e.A.abs());
    rep.image = phi.apply(x);

    const BigInt start_big = phi.C2 * BigInt(static_cast<unsigned long>(Q0));
    if (start_big > BigInt(static_cast<unsigned long>(horizon))) {
        rep.passed = true;
        return rep;
    }
    const std::uint64_t start = start_big.get_ui();
    const auto source = height_prefix(x, e.a, horizon);
    const std::uint64_t image_H = (BigRational(BigInt(static_cast<unsigned long>(horizon))) / C2).floor().get_ui();
    const auto image = height_prefix(rep.image, e.a, std::max<std::uint64_t>(image_H, 1));
    const PowerProduct kap(kappa);

    rep.passed = true;
    for (std::uint64_t Q = start; Q <= horizon; ++Q) {
        const BigRational bigQ(BigInt(static_cast<unsigned long>(Q)));
        HeightQuotient src = finish(source[Q - 1], e, bigQ);
        if (compare(src.value, rep.kappa_source) < 0) continue;
        TransportStep st;
        st.Q = Q;
        st.Q_image = bigQ / C2;
        st.D_source = src.value;
        const std::uint64_t Hq = st.Q_image.floor().get_ui();
        HeightQuotient img = finish(image[Hq - 1], e, st.Q_image);
        st.D_image = img.value;
        st.image_minimizer = img.minimizer;
        st.image_fails = compare(img.value, kap) >= 0;

        // the chase at the image minimizer r of height h: r' = phi^-1(r)
        const RatVec r_pre = phi.invert(img.minimizer);
        const BigInt h = img.height, h_pre = height(r_pre);
        bool ok = h_pre <= phi.C2 * h && h <= phi.C2 * h_pre && h_pre <= BigInt(static_cast<unsigned long>(Q));
        ok = ok && dist_max(x, r_pre) <= phi.lip_inv * dist_max(rep.image, img.minimizer);
        PowerProduct pre_val(dist_max(x, r_pre));
        pre_val.mul_power(BigRational(h_pre), e.a);
        pre_val.mul_power(bigQ, e.A);
        ok = ok && compare(pre_val, rep.kappa_source) >= 0;
        st.chain_ok = ok;
        if (!st.chain_ok || !st.image_fails) rep.passed = false;
        rep.steps.push_back(std::move(st));
    }
    return rep;
}

std::optional<BigRational> openness_radius(const RatVec& x, const ExponentPair& e, const BigRational& kappa,
                                           std::uint64_t Q) {
    if (kappa.sign() <= 0) throw DomainError("kappa must be positive");
    if (Q < 1) throw DomainError("Q must be >= 1");
    const BigRational bigQ(BigInt(static_cast<unsigned long>(Q)));
    std::optional<BigRational> rho;
    ResidueWalker walker(x);
    for (std::uint64_t h = 1; h <= Q; ++h) {
        walker.advance();
        const BigRational bh(BigInt(static_cast<unsigned long>(h)));
        // every r of height h is at least ||h x|| / h from x
        BigRational dist = walker.norm() / bh;
        PowerProduct t(kappa);
        t.mul_power(bigQ, -e.A);
        t.mul_power(bh, -e.a);
        BigRational slack = dist - t.rational_upper_bound();
        if (!rho || slack < *rho) rho = slack;
    }
    if (!rho || rho->sign() <= 0) return std::nullopt;
    return rho;
}

}  // namespace dlab
