#include <doctest.h>

#include <cmath>

#include "dlab/power_product.hpp"
#include "gen.hpp"

using namespace dlab;

namespace {

BigRational R(const char* s) { return BigRational::parse(s); }

PowerProduct pp(const char* coeff, std::initializer_list<std::pair<long, const char*>> factors) {
    PowerProduct v(R(coeff));
    for (const auto& [b, e] : factors) v.mul_power(BigRational(b), R(e));
    return v;
}

}  // namespace

TEST_SUITE("power_product") {

TEST_CASE("perfect powers collapse to rationals") {
    CHECK(pp("1", {{64, "2/3"}}).as_rational() == BigRational(16));
    CHECK(pp("1/64", {{4, "1/2"}, {64, "2/3"}}).as_rational() == R("1/2"));
    CHECK(pp("1", {{2, "1/2"}, {8, "1/2"}}).as_rational() == BigRational(4));
    CHECK_FALSE(pp("1", {{2, "1/2"}}).as_rational().has_value());
    CHECK(pp("3", {{5, "1/2"}}).str() == "3*5^(1/2)");
    CHECK(pp("1", {{100, "2/3"}}).decimal(6) == "21.544347");
}

TEST_CASE("exact comparisons") {
    // sqrt(2) vs 1.41421356237 and 1.41421356238
    CHECK(pp("1", {{2, "1/2"}}) > PowerProduct(R("141421356237/100000000000")));
    CHECK(pp("1", {{2, "1/2"}}) < PowerProduct(R("141421356238/100000000000")));
    // 2^(1/3) 3^(1/3) == 6^(1/3)
    CHECK(pp("1", {{2, "1/3"}, {3, "1/3"}}) == pp("1", {{6, "1/3"}}));
    // equal values written differently need the integer path
    CHECK(compare(pp("2", {{3, "1/2"}}), pp("1", {{12, "1/2"}})) == std::strong_ordering::equal);
    CHECK(PowerProduct() < pp("1", {{2, "1/7"}}));
    CHECK(PowerProduct() == PowerProduct(BigRational(0)));
}

TEST_CASE("comparison agrees with long double on random products") {
    gen::Gen g(21);
    for (int t = 0; t < 1000; ++t) {
        PowerProduct x(g.rational(50, 0, 4) + R("1/100")), y(g.rational(50, 0, 4) + R("1/100"));
        for (int k = 0; k < 2; ++k) {
            x.mul_power(BigRational(g.integer(2, 300)), g.rational(7, -2, 2));
            y.mul_power(BigRational(g.integer(2, 300)), g.rational(7, -2, 2));
        }
        long double lx = x.log(), ly = y.log();
        if (std::fabs(lx - ly) < 1e-9L) continue;
        CHECK((compare(x, y) < 0) == (lx < ly));
        CHECK((compare(y, x) < 0) == (ly < lx));
    }
}

TEST_CASE("rational bounds bracket the value") {
    gen::Gen g(22);
    for (int t = 0; t < 200; ++t) {
        PowerProduct x(g.rational(50, 0, 4) + R("1/100"));
        x.mul_power(BigRational(g.integer(2, 10000)), g.rational(9, -3, 3));
        BigRational lo = x.rational_lower_bound(), hi = x.rational_upper_bound();
        CHECK(PowerProduct(lo) <= x);
        CHECK(x <= PowerProduct(hi));
        CHECK(((hi - lo) / hi).to_long_double() < 1e-12L);
    }
}

TEST_CASE("inverse and products") {
    PowerProduct x = pp("3/7", {{5, "2/3"}, {11, "1/4"}});
    CHECK(x * x.inverse() == PowerProduct(BigRational(1)));
    CHECK((x * x.inverse()).as_rational() == BigRational(1));
    CHECK_THROWS_AS(PowerProduct().inverse(), DomainError);
    CHECK_THROWS_AS(PowerProduct(R("-1")), DomainError);
}

}  // TEST_SUITE
