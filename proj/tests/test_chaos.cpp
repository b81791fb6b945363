#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "wnc/chaos.hpp"
#include "wnc/serialize.hpp"

using namespace wnc;

namespace {
HermiteBasis& basis64() {
    static HermiteBasis b(30, TimeGrid(1.0, 64));
    return b;
}
}  // namespace

TEST_CASE("expectation reads the constant coefficient") {
    REQUIRE(expectation(HermiteChaos::constant(2.5)) == 2.5);
    REQUIRE(expectation(brownian_chaos(0.5, basis64())) == 0.0);
    HermiteChaos F({5, 4});
    F.set(MultiIndex{2, 1}, 0.3);
    F.set(MultiIndex{}, -1.0);
    REQUIRE(expectation(F) == -1.0);
}

TEST_CASE("hida norms") {
    HermiteChaos zero({5, 3});
    REQUIRE(hida_norm(zero, 2.0) == 0.0);
    HermiteChaos e1({5, 3});
    e1.set(MultiIndex::unit(1), 1.0);
    REQUIRE(hida_norm(e1, 0.0) == Catch::Approx(1.0));
    for (std::size_t j : {1ul, 2ul, 4ul}) {
        HermiteChaos ej({5, 3});
        ej.set(MultiIndex::unit(j), 1.0);
        REQUIRE(hida_norm(ej, 1.0) == Catch::Approx(std::sqrt(2.0 * double(j))));
    }
    // ||H_alpha||_0^2 = alpha!
    HermiteChaos H({5, 6});
    H.set(MultiIndex{3, 2}, 1.0);
    REQUIRE(hida_norm(H, 0.0) == Catch::Approx(std::sqrt(12.0)));
}

TEST_CASE("dual action") {
    HermiteChaos Ha({6, 5});
    Ha.set(MultiIndex{2, 0, 1}, 1.0);
    REQUIRE(dual_action(Ha, Ha) == Catch::Approx(2.0));  // alpha! = 2
    HermiteChaos F({6, 5});
    F.set(MultiIndex{}, 1.7);
    F.set(MultiIndex{1}, 0.4);
    REQUIRE(dual_action(F, HermiteChaos::constant(1.0)) == Catch::Approx(expectation(F)));
    REQUIRE(dual_action(F, Ha) == dual_action(Ha, F));
    // orthogonality H_alpha vs H_beta
    HermiteChaos Hb({6, 5});
    Hb.set(MultiIndex{2, 1}, 1.0);
    REQUIRE(dual_action(Ha, Hb) == 0.0);
}

TEST_CASE("wiener integral chaos from grid samples and exact coefficients") {
    const auto& b = basis64();
    SECTION("f = e_3 sampled on the grid hits mostly epsilon^(3)") {
        // grid samples of a basis function: coefficients are the [0,T]
        // pairings; the diagonal one dominates but is not 1 (window).
        auto F = wiener_integral_chaos(b.values(3), b);
        REQUIRE(expectation(F) == 0.0);
        REQUIRE(F.coefficient(MultiIndex::unit(3)) ==
                Catch::Approx(b.pair(b.values(3), 3)));
    }
    SECTION("exact-coefficient route") {
        auto F = wiener_integral_chaos(std::vector<double>{0.0, 1.0}, 30);
        REQUIRE(F.terms() == 1);
        REQUIRE(F.coefficient(MultiIndex::unit(2)) == 1.0);
    }
    SECTION("zero function gives the zero element") {
        auto F = wiener_integral_chaos(std::vector<double>(65, 0.0), b);
        REQUIRE(F.empty());
    }
    SECTION("indicator gives brownian_chaos") {
        auto B = brownian_chaos(1.0, b);
        for (std::size_t k = 1; k <= 30; ++k)
            REQUIRE(B.coefficient(MultiIndex::unit(k)) ==
                    Catch::Approx(b.cumulative_at(k, 64)).margin(1e-15));
    }
}

TEST_CASE("brownian chaos basics") {
    const auto& b = basis64();
    REQUIRE(brownian_chaos(0.0, b).empty());
    auto B = brownian_chaos(0.5, b);
    REQUIRE(expectation(B) == 0.0);
    double mass = hida_norm(B, 0.0);
    REQUIRE(mass * mass < 0.5);
    REQUIRE(mass * mass > 0.40);  // K = 30 keeps ~91% of t = 0.5
}

TEST_CASE("singular white noise has finite negative-index norm") {
    const auto& b = basis64();
    auto W = singular_white_noise(0.37, b);
    double n2 = hida_norm(W, -2.0);
    REQUIRE(std::isfinite(n2));
    // sum e_k(t)^2 (2k)^{-2} stays small
    REQUIRE(n2 < 1.0);
    // pairing with a test element: <W, H_eps_k> = e_k(t) * 1
    HermiteChaos h({30, 2});
    h.set(MultiIndex::unit(4), 1.0);
    REQUIRE(dual_action(W, h) == Catch::Approx(b.value_at_time(4, 0.37)));
    // d/dt of brownian coefficients approximates e_k(t)
    auto Bp = brownian_chaos(33ul, b);
    auto Bm = brownian_chaos(31ul, b);
    double dt = 2.0 / 64.0;
    auto Wg = singular_white_noise(b.grid().time(32), b);
    for (std::size_t k = 1; k <= 10; ++k) {
        double fd = (Bp.coefficient(MultiIndex::unit(k)) -
                     Bm.coefficient(MultiIndex::unit(k))) / dt;
        REQUIRE(fd == Catch::Approx(Wg.coefficient(MultiIndex::unit(k))).margin(2e-3));
    }
}

TEST_CASE("summability probe distinguishes q > 1 from q = 1") {
    REQUIRE(summability_probe(2.0, Truncation{1, 0}) == Catch::Approx(1.0));
    // growing order shells at fixed K = 12
    double prev2 = 0.0, prev1 = 0.0, inc2 = 0.0, inc1 = 0.0;
    for (std::uint64_t N = 1; N <= 12; ++N) {
        double s2 = summability_probe(2.0, Truncation{12, N});
        double s1 = summability_probe(1.0, Truncation{12, N});
        REQUIRE(s2 > prev2);
        REQUIRE(s1 > prev1);
        inc2 = s2 - prev2;
        inc1 = s1 - prev1;
        prev2 = s2;
        prev1 = s1;
    }
    REQUIRE(inc2 < 1e-6);   // q = 2: order-12 shell is ~4^-12
    REQUIRE(inc1 > 1e-3);   // q = 1: shell stays above 1e-3
}

TEST_CASE("serialization round trip") {
    HermiteChaos F({7, 5});
    F.set(MultiIndex{}, 0.25);
    F.set(MultiIndex{1, 0, 2}, -3.5);
    F.set(MultiIndex::unit(7), 1e-4);
    auto j = to_json(F);
    REQUIRE(j["truncation"]["K"] == 7);
    REQUIRE(j["truncation"]["N"] == 5);
    auto G = chaos_from_json(j);
    REQUIRE(G.coefficients() == F.coefficients());
    REQUIRE(G.truncation().max_variable == 7);
}

TEST_CASE("chaos process slices") {
    TimeGrid g(1.0, 8);
    ChaosProcess P({4, 3}, g);
    P.path(MultiIndex::unit(2))[3] = 1.5;
    auto F = P.at(3);
    REQUIRE(F.coefficient(MultiIndex::unit(2)) == 1.5);
    REQUIRE(P.at(2).empty());
}
