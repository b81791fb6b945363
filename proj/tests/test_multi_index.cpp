#include <catch2/catch_amalgamated.hpp>

#include "wnc/multi_index.hpp"

using namespace wnc;

TEST_CASE("canonical form drops trailing zeros") {
    MultiIndex a{3, 0, 2, 0, 0};
    REQUIRE(a.length() == 3);
    REQUIRE(a == MultiIndex({3, 0, 2}));
    REQUIRE(MultiIndex{0, 0}.is_zero());
    REQUIRE(MultiIndex{}.order() == 0);
}

TEST_CASE("unit index and arithmetic") {
    auto e5 = MultiIndex::unit(5);
    REQUIRE(e5.length() == 5);
    REQUIRE(e5[5] == 1);
    REQUIRE(e5.order() == 1);
    auto s = MultiIndex{1, 2}.plus(MultiIndex{0, 1, 4});
    REQUIRE(s == MultiIndex({1, 3, 4}));
    REQUIRE(s.bump(2).drop(2) == s);
    REQUIRE(MultiIndex{1}.drop(1).is_zero());
    REQUIRE_THROWS_AS(MultiIndex{1}.drop(2), std::invalid_argument);
}

TEST_CASE("factorial") {
    REQUIRE(mi_factorial(MultiIndex{}) == 1);
    REQUIRE(mi_factorial(MultiIndex{3, 0, 2}) == 12);
    REQUIRE(mi_factorial(MultiIndex::unit(5)) == 1);
    REQUIRE(mi_factorial(MultiIndex{20}) == 2432902008176640000ull);
    REQUIRE_THROWS_AS(mi_factorial(MultiIndex{21, 21, 21}), std::overflow_error);
    REQUIRE(mi_factorial_d(MultiIndex{10, 4}) == Catch::Approx(3628800.0 * 24.0));
}

TEST_CASE("two_n_pow") {
    REQUIRE(two_n_pow(MultiIndex{}, 3.7) == 1.0);
    REQUIRE(two_n_pow(MultiIndex{1, 1}, 1.0) == Catch::Approx(8.0));
    REQUIRE(two_n_pow(MultiIndex{0, 2}, -1.0) == Catch::Approx(1.0 / 16.0));
}

TEST_CASE("truncation admits") {
    Truncation tr{3, 4};
    REQUIRE(tr.admits(MultiIndex{2, 1, 1}));
    REQUIRE_FALSE(tr.admits(MultiIndex{2, 1, 2}));
    REQUIRE_FALSE(tr.admits(MultiIndex{0, 0, 0, 1}));
}

TEST_CASE("ordering is graded and strict") {
    MultiIndex a{2}, b{0, 1}, c{1, 1};
    REQUIRE(b < a);          // same order, shorter length first? no: |b|=1 < |a|=2
    REQUIRE(a < c);          // order 2 < 2? |c| = 2, same order; len 1 < 2
    REQUIRE(!(a < a));
    std::map<MultiIndex, int> m;
    m[a] = 1;
    m[b] = 2;
    REQUIRE(m.size() == 2);
}
