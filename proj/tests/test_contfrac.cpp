#include <doctest.h>

#include "dlab/contfrac.hpp"
#include "gen.hpp"
#include "oracles.hpp"

using namespace dlab;

namespace {

BigRational R(const char* s) { return BigRational::parse(s); }

ContinuedFraction sqrt2(std::size_t twos) {
    ContinuedFraction cf;
    cf.a0 = 1;
    cf.quotients.assign(twos, BigInt(2));
    return cf;
}

std::vector<BigRational> values(const ConvergentTable& t) {
    std::vector<BigRational> v;
    for (const auto& r : t) v.emplace_back(r.p, r.q);
    return v;
}

std::vector<BigRational> Rs(std::initializer_list<const char*> v) {
    std::vector<BigRational> out;
    for (const char* s : v) out.push_back(R(s));
    return out;
}

}  // namespace

TEST_SUITE("contfrac") {

TEST_CASE("expand_rational examples") {
    CHECK(expand_rational(R("2/7")).str() == "[0;3,2]");
    CHECK(expand_rational(R("5")).str() == "[5]");
    CHECK(expand_rational(R("355/113")).str() == "[3;7,16]");
    CHECK(expand_rational(R("-7/3")).str() == "[-3;1,2]");
}

TEST_CASE("expansion round-trips and matches the floor-reciprocal oracle") {
    gen::Gen g(51);
    for (int t = 0; t < 500; ++t) {
        BigRational x = g.rational(1000000, -5, 5);
        ContinuedFraction cf = expand_rational(x);
        CHECK(cf.prefix_value() == x);
        std::vector<BigInt> digits{cf.a0};
        digits.insert(digits.end(), cf.quotients.begin(), cf.quotients.end());
        CHECK(digits == oracle::cf_digits(x));
        if (!cf.quotients.empty()) CHECK(cf.quotients.back() >= 2);
    }
}

TEST_CASE("parsing, canonical form and rules") {
    ContinuedFraction cf = ContinuedFraction::parse("[0;1,1,2,1]", CfKind::exact_rational);
    CHECK(cf.str() == "[0;1,1,3]");
    cf = ContinuedFraction::parse("[0;1,1,2,1]", CfKind::prefix);
    CHECK(cf.str() == "[0;1,1,2,1]");
    CHECK(ContinuedFraction::parse("[4]", CfKind::prefix).quotients.empty());
    CHECK_THROWS_AS(ContinuedFraction::parse("[0;1,0]", CfKind::prefix), DomainError);
    CHECK_THROWS_AS(ContinuedFraction::parse("0;1", CfKind::prefix), DomainError);
    CHECK(CfRule::parse("power:2").str() == "power:2");
    CHECK(CfRule::parse("constant:7").k == 7);
    CHECK_THROWS_AS(CfRule::parse("silver"), DomainError);
    CHECK_THROWS_AS(CfRule::parse("constant:0"), DomainError);
}

TEST_CASE("convergents examples") {
    auto golden = ContinuedFraction::parse("[0;1,1,1,1,1]", CfKind::prefix);
    CHECK(values(convergents(golden)) == Rs({"0", "1", "1/2", "2/3", "3/5", "5/8"}));
    auto s = ContinuedFraction::parse("[1;2,2,2]", CfKind::prefix);
    CHECK(values(convergents(s)) == Rs({"1", "3/2", "7/5", "17/12"}));
    CHECK(convergents(s, 0).empty());
    // a generated prefix extends itself on demand
    CHECK(convergents(generate_cf(CfRule::golden(), 3), 10).back().q == 55);
    CHECK_THROWS_AS(convergents(s, 10), HorizonError);
}

TEST_CASE("convergents equal truncated evaluations and satisfy the determinant identity") {
    gen::Gen g(52);
    for (int t = 0; t < 100; ++t) {
        ContinuedFraction cf;
        cf.a0 = g.integer(-3, 3);
        const int M = static_cast<int>(g.integer(1, 25));
        for (int i = 0; i < M; ++i) cf.quotients.push_back(g.integer(1, 30));
        ConvergentTable table = convergents(cf);
        REQUIRE(table.size() == cf.quotients.size() + 1);
        for (std::size_t n = 0; n < table.size(); ++n) {
            CHECK(BigRational(table[n].p, table[n].q) == oracle::cf_value(cf.a0, cf.quotients, n));
            if (n + 1 < table.size()) {
                BigInt det = table[n].p * table[n + 1].q - table[n + 1].p * table[n].q;
                CHECK(det == (n % 2 == 0 ? -1 : 1));
            }
        }
    }
}

TEST_CASE("generate_cf examples") {
    CHECK(generate_cf(CfRule::golden(), 5).str() == "[0;1,1,1,1,1]");
    CHECK(generate_cf(CfRule::constant(2), 3).str() == "[0;2,2,2]");
    // w_{n+1} = q_n with q = 1, 1, 2, 5, ...
    CHECK(generate_cf(CfRule::power(1), 4).str() == "[0;1,1,2,5]");
    ContinuedFraction p2 = generate_cf(CfRule::power(2), 6);
    ConvergentTable t = convergents(p2);
    for (std::size_t n = 0; n + 1 < t.size(); ++n) CHECK(t[n + 1].w == t[n].q * t[n].q);
    CHECK_THROWS_AS(generate_cf(CfRule::power(2), 100, 50), CfHorizonError);
    try {
        generate_cf(CfRule::power(2), 100, 50);
    } catch (const CfHorizonError& e) {
        CHECK(!e.partial().quotients.empty());
        CHECK(mpz_sizeinbase(convergents(e.partial()).back().q.get_mpz_t(), 10) <= 50);
    }
}

TEST_CASE("intermediate fraction examples") {
    ConvergentTable s = convergents(sqrt2(3));
    auto f = intermediate_fractions(s, 1);
    REQUIRE(f.size() == 2);
    CHECK(BigRational(f[0].p, f[0].q) == R("4/3"));
    CHECK(BigRational(f[1].p, f[1].q) == R("7/5"));

    ConvergentTable g = convergents(generate_cf(CfRule::golden(), 8));
    for (std::size_t n = 0; n + 1 < g.size(); ++n) {
        auto one = intermediate_fractions(g, n);
        REQUIRE(one.size() == 1);
        CHECK(one[0].p == g[n + 1].p);
        CHECK(one[0].q == g[n + 1].q);
    }

    ConvergentTable t = convergents(expand_rational(R("2/7")));
    f = intermediate_fractions(t, 0);
    CHECK(std::vector<BigRational>{BigRational(f[0].p, f[0].q), BigRational(f[1].p, f[1].q),
                                   BigRational(f[2].p, f[2].q)} == Rs({"1", "1/2", "1/3"}));
    f = intermediate_fractions(t, 1);
    REQUIRE(f.size() == 2);
    CHECK(BigRational(f[0].p, f[0].q) == R("1/4"));
    CHECK(BigRational(f[1].p, f[1].q) == R("2/7"));
    CHECK_THROWS_AS(intermediate_fractions(t, 2), DomainError);
}

TEST_CASE("intermediate fractions are Farey neighbours of the convergent") {
    gen::Gen g(53);
    for (int t = 0; t < 50; ++t) {
        BigRational x = g.rational(5000, 0, 1);
        ConvergentTable table = convergents(expand_rational(x));
        for (std::size_t n = 0; n + 1 < table.size(); ++n) {
            auto fr = intermediate_fractions(table, n);
            for (std::size_t r = 0; r < fr.size(); ++r) {
                BigInt det = fr[r].p * table[n].q - fr[r].q * table[n].p;
                CHECK((det == 1 || det == -1));
                if (r > 0) CHECK(fr[r].q > fr[r - 1].q);
            }
            CHECK(BigRational(fr.back().p, fr.back().q) == oracle::cf_value(table[0].w, [&] {
                      std::vector<BigInt> w;
                      for (std::size_t i = 1; i < table.size(); ++i) w.push_back(table[i].w);
                      return w;
                  }(), n + 1));
        }
    }
}

TEST_CASE("bracket and three-valued distance") {
    Bracket b = bracket(sqrt2(3));  // between 24/17 and 17/12
    CHECK(b.lo == R("24/17"));
    CHECK(b.hi == R("17/12"));
    CHECK(farther_than(b, R("4/3"), R("1/20")) == Decision::yes);
    CHECK(farther_than(b, R("7/5"), R("1/2")) == Decision::no);
    CHECK(farther_than(b, R("7/5"), R("1/70")) == Decision::unknown);
    Bracket e = bracket(expand_rational(R("2/7")));
    CHECK(e.exact());
    CHECK(farther_than(e, R("1/3"), R("1/21")) == Decision::no);
    CHECK(farther_than(e, R("1/3"), R("1/22")) == Decision::yes);
}

TEST_CASE("lemma examples") {
    LemmaWitness w = check_best_approx_lemma(sqrt2(60), BigInt(4), BigInt(3), 61);
    CHECK(w.n == 1);
    CHECK(w.gap == R("1/20"));
    CHECK(w.dist_lower > R("1/20"));

    ContinuedFraction g = generate_cf(CfRule::golden(), 40);
    ConvergentTable t = convergents(g);
    for (std::size_t n = 1; n + 2 < t.size(); ++n) {
        LemmaWitness v = check_best_approx_lemma(g, t[n].p, t[n].q, t.size());
        CHECK((v.n + 1 == n || v.n == n));
    }

    ContinuedFraction c2 = generate_cf(CfRule::constant(2), 20);
    CHECK(check_best_approx_lemma(c2, BigInt(1), BigInt(2), 21).n == 1);

    CHECK_THROWS_AS(check_best_approx_lemma(expand_rational(R("2/7")), BigInt(2), BigInt(7), 3), DomainError);
    // 17/12 is the last convergent of a short prefix: no row certifies it
    CHECK_THROWS_AS(check_best_approx_lemma(sqrt2(3), BigInt(17), BigInt(12), 4), HorizonError);
}

TEST_CASE("lemma holds for every fraction of small denominator near x") {
    for (const ContinuedFraction& x : {sqrt2(60), generate_cf(CfRule::golden(), 60)}) {
        Bracket b = bracket(x);
        const BigInt a0 = b.lo.floor();
        for (long q = 1; q <= 120; ++q)
            for (BigInt p = a0 * q; p <= (a0 + 1) * q; ++p)
                CHECK_NOTHROW(check_best_approx_lemma(x, p, BigInt(q), 61));
    }
}

TEST_CASE("Khinchin sandwich on rationals") {
    gen::Gen g(54);
    for (int t = 0; t < 200; ++t) {
        BigRational x = g.rational(100000, 0, 3);
        ConvergentTable table = convergents(expand_rational(x));
        for (std::size_t n = 0; n + 2 < table.size(); ++n) {
            BigRational err = (x - BigRational(table[n].p, table[n].q)).abs();
            BigRational qq(table[n].q * table[n + 1].q);
            CHECK(err > BigRational(1) / (BigRational(2) * qq));
            CHECK(err < BigRational(1) / qq);
            CHECK(bracket(expand_rational(x)).contains(x));
        }
    }
}

TEST_CASE("psi growth examples") {
    ConvergentTable golden = convergents(generate_cf(CfRule::golden(), 50));
    GrowthReport r = psi_growth_test(golden, R("3"), PowerProduct(R("1")));
    CHECK_FALSE(r.rich);
    CHECK(r.tested == 50);

    ConvergentTable liouville = convergents(generate_cf(CfRule::power(1), 12));
    r = psi_growth_test(liouville, R("3"), PowerProduct(R("1")));
    CHECK(r.rich);
    for (std::size_t n = 0; n + 1 < liouville.size(); ++n) CHECK(liouville[n + 1].q >= liouville[n].q * liouville[n].q);

    gen::Gen g(55);
    for (int t = 0; t < 20; ++t) {
        ConvergentTable any = convergents(expand_rational(g.rational(100000, 0, 1) + R("1/100001")));
        if (any.size() < 2) continue;
        r = psi_growth_test(any, R("2"), PowerProduct(R("1")));
        CHECK(r.rich);
        CHECK(r.satisfying.size() == r.tested);
    }
    CHECK_THROWS_AS(psi_growth_test(golden, R("3/2"), PowerProduct(R("1"))), DomainError);
}

}  // TEST_SUITE
