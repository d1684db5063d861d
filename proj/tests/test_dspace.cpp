#include <doctest.h>

#include "dlab/dspace.hpp"
#include "gen.hpp"
#include "oracles.hpp"

using namespace dlab;

namespace {

BigRational R(const char* s) { return BigRational::parse(s); }
RatVec V(const char* s) { return RatVec::parse(s); }

std::vector<RatVec> Vs(std::initializer_list<const char*> v) {
    std::vector<RatVec> out;
    for (const char* s : v) out.push_back(V(s));
    return out;
}

bool in_ball(const RatVec& y, const RatVec& center, const BigRational& radius) {
    return dist_max(y, center) <= radius;
}

}  // namespace

TEST_SUITE("dspace") {

TEST_CASE("rationals_in_ball examples") {
    StdSpace one(1), two(2);
    CHECK(one.rationals_in_ball(V("1/2"), R("1/2"), 3) == Vs({"0", "1/3", "1/2", "2/3", "1"}));
    CHECK(one.rationals_in_ball(V("1/2"), R("1/2"), 1) == Vs({"0", "1"}));
    auto pts = two.rationals_in_ball(V("1/2,1/2"), R("1/2"), 2);
    CHECK(pts.size() == 9);
    for (const auto& p : pts) CHECK(two.height(p) <= 2);
    CHECK(one.rationals_in_ball(V("1/7"), R("0"), 6).empty());
    CHECK(one.rationals_in_ball(V("1/7"), R("0"), 7) == Vs({"1/7"}));
    CHECK_THROWS_AS(one.rationals_in_ball(V("0,0"), R("1"), 3), DomainError);
    CHECK_THROWS_AS(one.rationals_in_ball(V("0"), R("-1"), 3), DomainError);
}

TEST_CASE("rationals_in_ball is the Farey set of the ball") {
    gen::Gen g(81);
    for (int t = 0; t < 60; ++t) {
        const BigRational c = g.rational(30, -1, 2), r = g.rational(20, 0, 1);
        const std::uint64_t Q = static_cast<std::uint64_t>(g.integer(1, 50));
        auto got = StdSpace(1).rationals_in_ball(RatVec(std::vector<BigRational>{c}), r, Q);
        std::vector<RatVec> want;
        for (const auto& f : oracle::farey(c - r, c + r, Q)) want.push_back(RatVec(std::vector<BigRational>{f}));
        CHECK(got == want);
    }
    for (int t = 0; t < 25; ++t) {
        const RatVec c = g.point(2, 12);
        const BigRational r = g.rational(8, 0, 1) / BigRational(2);
        const std::uint64_t Q = static_cast<std::uint64_t>(g.integer(1, 14));
        auto got = StdSpace(2).rationals_in_ball(c, r, Q);
        // product of coordinate Farey sets, filtered by the joint height
        std::vector<RatVec> want;
        for (const auto& u : oracle::farey(c[0] - r, c[0] + r, Q))
            for (const auto& v : oracle::farey(c[1] - r, c[1] + r, Q)) {
                RatVec p(std::vector<BigRational>{u, v});
                if (height(p) <= Q) want.push_back(p);
            }
        std::sort(want.begin(), want.end(), [](const RatVec& a, const RatVec& b) {
            return std::lexicographical_compare(a.coords().begin(), a.coords().end(), b.coords().begin(),
                                                b.coords().end());
        });
        CHECK(got == want);
    }
}

TEST_CASE("height examples") {
    CHECK(height(V("5/6")) == 6);
    CHECK(height(V("1/4,1/6")) == 12);
    CHECK(height(V("3,-2")) == 1);
    CHECK(StdSpace(2).dist(V("0,1/2"), V("1/3,0")) == R("1/2"));
}

TEST_CASE("make_affine examples") {
    AffineAutomorphism phi = make_affine(R("1"), V("1/2"));
    CHECK(phi.C1 == BigRational(1));
    CHECK(phi.C2 == 2);
    CHECK(phi.apply(V("1/3")) == V("5/6"));
    CHECK(height(phi.apply(V("1/3"))) == 6);

    phi = make_affine(R("1/3"), V("0"));
    CHECK(phi.C1 == BigRational(3));
    CHECK(phi.C2 == 3);
    CHECK(phi.apply(V("1/2")) == V("1/6"));
    CHECK(height(phi.apply(V("1/2"))) == 6);

    phi = make_affine(R("-2/3"), V("1/5,0"));
    CHECK(phi.C1 == R("3/2"));
    CHECK(phi.C2 == 30);
    CHECK(phi.invert(phi.apply(V("7/11,-1/4"))) == V("7/11,-1/4"));
    CHECK_THROWS_AS(make_affine(R("0"), V("1")), DomainError);
}

TEST_CASE("heights are distorted by at most C2 in either direction") {
    gen::Gen g(82);
    for (int t = 0; t < 300; ++t) {
        const std::size_t d = static_cast<std::size_t>(g.integer(1, 3));
        BigRational s = g.rational(9, -3, 3);
        if (s.is_zero()) s = R("1/2");
        AffineAutomorphism phi = make_affine(s, g.point(d, 12));
        RatVec r = g.point(d, 40);
        const BigInt h = height(r), hi = height(phi.apply(r));
        CHECK(hi <= phi.C2 * h);
        CHECK(h <= phi.C2 * hi);
        // bi-Lipschitz, exactly
        RatVec u = g.point(d, 40);
        CHECK(dist_max(phi.apply(r), phi.apply(u)) == phi.lip * dist_max(r, u));
        CHECK(phi.C1 >= BigRational(1));
    }
}

TEST_CASE("composition multiplies the constants and stays valid") {
    AffineAutomorphism phi = make_affine(R("1/3"), V("1/2")), psi = make_affine(R("2"), V("1/5"));
    AffineAutomorphism c = compose(phi, psi);
    CHECK(c.scale == R("2/3"));
    CHECK(c.shift == V("1/2") + V("1/5") * R("1/3"));
    CHECK(c.C2 == phi.C2 * psi.C2);
    gen::Gen g(83);
    for (int t = 0; t < 100; ++t) {
        RatVec r = g.point(1, 50);
        CHECK(c.apply(r) == phi.apply(psi.apply(r)));
        CHECK(height(c.apply(r)) <= c.C2 * height(r));
        CHECK(height(r) <= c.C2 * height(c.apply(r)));
    }
}

TEST_CASE("map_cube_into_ball examples") {
    AffineAutomorphism phi = map_cube_into_ball(1, V("1/3"), R("1/10"));
    CHECK(phi.scale == R("1/20"));
    CHECK(phi.shift == V("1/3") - V("1/40"));

    phi = map_cube_into_ball(1, V("0"), R("2"));
    CHECK(phi.scale == R("1"));
    CHECK(phi.shift == V("-1/2"));

    phi = map_cube_into_ball(2, V("1/7,1/7"), R("1/7"));
    CHECK(phi.scale == R("1/14"));
    CHECK_THROWS_AS(map_cube_into_ball(1, V("0"), R("0")), DomainError);
}

TEST_CASE("the cube lands inside the ball") {
    gen::Gen g(84);
    for (int t = 0; t < 100; ++t) {
        const std::size_t d = static_cast<std::size_t>(g.integer(1, 3));
        const RatVec c = g.point(d, 50);
        const BigRational r = g.rational(100, 0, 3) + R("1/1000");
        AffineAutomorphism phi = map_cube_into_ball(d, c, r);
        // corners of the cube
        for (unsigned mask = 0; mask < (1u << d); ++mask) {
            RatVec corner(d);
            for (std::size_t i = 0; i < d; ++i) corner[i] = BigRational((mask >> i) & 1u);
            CHECK(in_ball(phi.apply(corner), c, r));
        }
        CHECK(in_ball(phi.apply(g.point(d, 50)), c, r));
    }
}

TEST_CASE("height quotient equals the Dirichlet quotient for a >= 0") {
    gen::Gen g(85);
    for (int t = 0; t < 60; ++t) {
        const std::size_t d = static_cast<std::size_t>(g.integer(1, 2));
        RatVec x = g.point(d, 300);
        const std::uint64_t Q = static_cast<std::uint64_t>(g.integer(1, 40));
        const ExponentPair e{g.rational(4, 0, 2), g.rational(4, 0, 2)};
        CHECK(height_quotient(x, e, BigRational(BigInt(Q))).value == oracle::D(x, Q, e.a, e.A));
    }
}

TEST_CASE("height quotient with a < 0 scans reduced fractions only") {
    gen::Gen g(86);
    for (int t = 0; t < 60; ++t) {
        const BigRational x = g.rational(200, 0, 1);
        const std::uint64_t Q = static_cast<std::uint64_t>(g.integer(1, 30));
        const ExponentPair e{-g.rational(4, 0, 2) - R("1/4"), R("1")};
        HeightQuotient hq = height_quotient(RatVec(std::vector<BigRational>{x}), e, BigRational(BigInt(Q)));
        // oracle: every reduced p/h with h <= Q in a window around x
        PowerProduct best;
        bool first = true;
        for (const auto& f : oracle::farey(x - BigRational(1), x + BigRational(1), Q)) {
            PowerProduct v((x - f).abs());
            v.mul_power(BigRational(f.den()), e.a);
            v.mul_power(BigRational(BigInt(Q)), e.A);
            if (first || v < best) best = v;
            first = false;
        }
        CHECK(hq.value == best);
        CHECK(hq.height <= Q);
    }
    CHECK_THROWS_AS(height_quotient(V("1/3,1/5"), {R("-1"), R("1")}, R("5")), DomainError);
}

TEST_CASE("transport examples") {
    const ExponentPair e{R("0"), R("1")};
    const RatVec x = V("1/20");

    TransportReport r = transport_check(x, make_affine(R("1"), V("0")), e, R("1/4"), 1, 200);
    CHECK(r.image == x);
    CHECK(r.passed);
    CHECK_FALSE(r.steps.empty());

    r = transport_check(x, make_affine(R("1"), V("1/2")), e, R("1/8"), 1, 300);
    CHECK(r.image == V("11/20"));
    CHECK(r.kappa_source == PowerProduct(R("1/4")));
    CHECK(r.passed);
    CHECK_FALSE(r.steps.empty());
    for (const auto& st : r.steps) {
        CHECK(st.chain_ok);
        CHECK(st.image_fails);
    }

    AffineAutomorphism third = make_affine(R("1/3"), V("0"));
    CHECK(third.C2 == 3);
    r = transport_check(x, third, e, R("1/40"), 1, 600);
    CHECK(r.image == V("1/60"));
    CHECK(r.passed);

    CHECK_THROWS_AS(transport_check(x, third, e, R("0"), 1, 10), DomainError);
}

TEST_CASE("openness radius examples and property") {
    const ExponentPair e{R("1"), R("1")};
    CHECK_FALSE(openness_radius(V("1/3"), e, R("1/10"), 5).has_value());  // 1/3 is hit at q = 3

    std::optional<BigRational> rho = openness_radius(V("1/20"), {R("0"), R("1")}, R("1/4"), 10);
    REQUIRE(rho.has_value());
    CHECK(rho->sign() > 0);

    gen::Gen g(87);
    int checked = 0;
    for (int t = 0; t < 80; ++t) {
        const std::size_t d = static_cast<std::size_t>(g.integer(1, 2));
        RatVec x = g.point(d, 5000);
        const std::uint64_t Q = static_cast<std::uint64_t>(g.integer(1, 25));
        const ExponentPair f{g.rational(3, 0, 1), g.rational(3, 0, 1)};
        const BigRational kappa = g.rational(50, 0, 1) / BigRational(100) + R("1/100000");
        auto r = openness_radius(x, f, kappa, Q);
        if (!r) continue;
        for (int s = 0; s < 5; ++s) {
            RatVec y = x;
            for (std::size_t i = 0; i < d; ++i) y[i] += *r * (g.rational(50, -1, 1) * R("99/100"));
            for (std::uint64_t h = 1; h <= Q; ++h) {
                PowerProduct v(oracle::dist(y, BigInt(h)));
                v.mul_power(BigRational(BigInt(h)), f.a);
                v.mul_power(BigRational(BigInt(Q)), f.A);
                CHECK(v > PowerProduct(kappa));
            }
        }
        ++checked;
    }
    CHECK(checked > 10);
}

}  // TEST_SUITE
