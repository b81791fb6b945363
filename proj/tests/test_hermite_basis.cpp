#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "wnc/basis.hpp"
#include "wnc/hermite.hpp"
#include "wnc/quadrature.hpp"

using namespace wnc;

TEST_CASE("hermite polynomials match the closed forms") {
    REQUIRE(hermite_poly(0, 1.234) == 1.0);
    REQUIRE(hermite_poly(3, 2.0) == Catch::Approx(2.0));        // x^3 - 3x at 2
    REQUIRE(hermite_poly(5, 1.0) == Catch::Approx(6.0));        // x^5 - 10x^3 + 15x at 1
    REQUIRE(hermite_poly(2, 0.7) == Catch::Approx(0.7 * 0.7 - 1.0));
    // h'_n = n h_{n-1} by central difference
    double x = 0.83, h = 1e-6;
    double fd = (hermite_poly(6, x + h) - hermite_poly(6, x - h)) / (2 * h);
    REQUIRE(fd == Catch::Approx(6.0 * hermite_poly(5, x)).epsilon(1e-6));
}

TEST_CASE("hermite functions: value, boundedness, stability at large k") {
    REQUIRE(hermite_function(1, 0.0) == Catch::Approx(std::pow(M_PI, -0.25)).epsilon(1e-14));
    REQUIRE(hermite_function(2, 0.0) == 0.0);
    std::vector<double> v;
    for (double t : {0.0, 0.3, 1.7, 5.0, 12.0}) {
        hermite_function_all(200, t, v);
        for (double x : v) {
            REQUIRE(std::isfinite(x));
            REQUIRE(std::abs(x) < 0.8);
        }
    }
}

TEST_CASE("whole-line quadrature reproduces orthonormality") {
    HermiteBasis basis(20, TimeGrid(1.0, 64));
    REQUIRE(basis.orthonormality_defect(20) < 1e-10);
    REQUIRE(basis.line_inner(3, 3) == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(basis.line_inner(2, 7) == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("cumulative integrals: E_k(0) = 0 and high accuracy") {
    HermiteBasis basis(30, TimeGrid(1.0, 64));
    for (std::size_t k = 1; k <= 30; ++k) REQUIRE(basis.cumulative_at(k, 0) == 0.0);
    // reference by fine Simpson on e_4
    std::size_t Mf = 1 << 14;
    double h = 1.0 / double(Mf), acc = 0.0;
    std::vector<double> vals(Mf + 1);
    for (std::size_t i = 0; i <= Mf; ++i) vals[i] = hermite_function(30, double(i) * h);
    for (std::size_t i = 0; i + 2 <= Mf; i += 2)
        acc += h / 3.0 * (vals[i] + 4.0 * vals[i + 1] + vals[i + 2]);
    REQUIRE(basis.cumulative_at(30, 64) == Catch::Approx(acc).margin(5e-10));
}

TEST_CASE("indicator Parseval mass grows monotonically toward t") {
    TimeGrid g(1.0, 64);
    double prev = 0.0;
    double at100 = 0.0;
    for (std::size_t K : {10, 30, 60, 100}) {
        HermiteBasis basis(K, g);
        double m = basis.indicator_mass(64);
        REQUIRE(m > prev);
        REQUIRE(m < 1.0);
        prev = m;
        if (K == 100) at100 = m;
    }
    // frozen oracle: the K = 100 tail of chi_[0,1] is about 4.82e-2
    REQUIRE(1.0 - at100 == Catch::Approx(0.0482).margin(5e-4));
}

TEST_CASE("brownian coefficient paths are Lipschitz on the grid") {
    HermiteBasis basis(40, TimeGrid(1.0, 64));
    double supval = 0.0;
    for (std::size_t k = 1; k <= 40; ++k)
        for (std::size_t i = 0; i <= 64; ++i)
            supval = std::max(supval, std::abs(basis.value(k, i)));
    double dt = 1.0 / 64.0;
    for (std::size_t k = 1; k <= 40; ++k)
        for (std::size_t i = 1; i <= 64; ++i) {
            double d = std::abs(basis.cumulative_at(k, i) - basis.cumulative_at(k, i - 1));
            REQUIRE(d <= (supval + 1e-3) * dt);
        }
}

TEST_CASE("uniform rules integrate exactly through degree five") {
    for (std::size_t n : {2ul, 4ul, 8ul, 31ul}) {
        auto w = uniform_rule_weights(n, 0.1);
        for (int m = 0; m <= std::min<int>(5, int(n)); ++m) {
            double est = 0.0;
            for (std::size_t i = 0; i <= n; ++i) est += w[i] * std::pow(0.1 * double(i), m);
            double b = 0.1 * double(n);
            REQUIRE(est == Catch::Approx(std::pow(b, m + 1) / double(m + 1)).margin(1e-14));
        }
    }
}

TEST_CASE("gaussian characteristic functional is positive definite") {
    TimeGrid g(1.0, 32);
    UniformQuadrature quad(g.segments, g.dt());
    SECTION("single function gives eigenvalue 1") {
        std::vector<std::vector<double>> phis{std::vector<double>(33, 0.7)};
        REQUIRE(gaussian_psd_check(phis, quad) == Catch::Approx(1.0));
    }
    SECTION("duplicate rows give a zero eigenvalue") {
        std::vector<double> f(33);
        for (std::size_t i = 0; i <= 32; ++i) f[i] = std::sin(3.0 * g.time(i));
        std::vector<std::vector<double>> phis{f, f};
        REQUIRE(gaussian_psd_check(phis, quad) == Catch::Approx(0.0).margin(1e-12));
    }
    SECTION("random smooth batches stay PSD") {
        std::mt19937_64 rng(42);
        std::normal_distribution<double> N(0.0, 1.0);
        for (int rep = 0; rep < 10; ++rep) {
            std::vector<std::vector<double>> phis;
            for (int a = 0; a < 10; ++a) {
                std::vector<double> f(33);
                double c1 = N(rng), c2 = N(rng), c3 = N(rng);
                for (std::size_t i = 0; i <= 32; ++i) {
                    double t = g.time(i);
                    f[i] = c1 + c2 * std::sin(2 * t) + c3 * std::cos(5 * t);
                }
                phis.push_back(f);
            }
            REQUIRE(gaussian_psd_check(phis, quad) >= -1e-10);
        }
    }
}
