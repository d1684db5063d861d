#include <doctest.h>

#include "dlab/sampling.hpp"

using namespace dlab;

TEST_SUITE("sampling") {

TEST_CASE("a seed fixes the sample") {
    auto a = random_points(7, 50, 3, 10000), b = random_points(7, 50, 3, 10000), c = random_points(8, 50, 3, 10000);
    CHECK(a == b);
    CHECK(a != c);
    // the first draw of seed 0 is pinned so that samples stay comparable across builds
    SampleRng rng(0);
    CHECK(rng.uniform(0, 999) == std::mt19937_64(0)() % 1000);
}

TEST_CASE("points lie in the unit cube with bounded denominators") {
    for (const auto& x : random_points(3, 500, 2, 97)) {
        REQUIRE(x.dim() == 2);
        for (const auto& c : x.coords()) {
            CHECK(c.sign() >= 0);
            CHECK(c < BigRational(1));
            CHECK(c.den() <= 97);
        }
    }
    SampleRng rng(4);
    for (int t = 0; t < 200; ++t) {
        RatVec x = random_point_over(rng, 3, 10007);
        for (const auto& c : x.coords()) CHECK((c * BigRational(10007)).is_integer());
        const std::uint64_t u = rng.uniform(5, 9);
        CHECK(u >= 5);
        CHECK(u <= 9);
    }
    CHECK_THROWS_AS(rng.uniform(3, 2), DomainError);
    CHECK_THROWS_AS(random_point(rng, 1, 0), DomainError);
}

TEST_CASE("grids") {
    CHECK(power_grid(10, 0, 3) == std::vector<std::uint64_t>{1, 10, 100, 1000});
    CHECK(power_grid(2, 2, 5, 20) == std::vector<std::uint64_t>{4, 8, 16});
    CHECK(power_grid(2, 0, 200).size() == 64);
    CHECK(merge_grids({5, 1, 5}, {3, 1}) == std::vector<std::uint64_t>{1, 3, 5});
    CHECK_THROWS_AS(power_grid(1, 0, 3), DomainError);
}

}  // TEST_SUITE
