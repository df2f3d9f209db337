#include <doctest.h>

#include <cmath>
#include <limits>

#include "hyperwave/polyeval.hpp"
#include "test_oracles.hpp"

using namespace hyperwave::polyeval;

TEST_CASE("gegenbauer base cases")
{
    CHECK(gegenbauer<double>(0, 0.7, 0.3) == 1.0);
    CHECK(gegenbauer<double>(1, 1.0, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(gegenbauer<double>(1, 0.7, -0.25) == doctest::Approx(2.0 * 0.7 * -0.25).epsilon(1e-15));
}

TEST_CASE("gegenbauer with lam = 1/2 reproduces Legendre polynomials")
{
    for (double z = -1.0; z <= 1.0; z += 0.125) {
        for (long n : {2L, 3L, 4L, 7L, 15L}) {
            const double ref = test_oracles::legendre(n, z);
            CHECK(gegenbauer<double>(n, 0.5, z) ==
                  doctest::Approx(ref).epsilon(1e-13).scale(std::max(1.0, std::abs(ref))));
        }
    }
}

TEST_CASE("gegenbauer three-term recurrence residual stays small")
{
    for (double lam : {0.3, 0.5, 1.0, 2.7}) {
        for (double z : {-1.0, -0.7, -0.2, 0.0, 0.4, 0.9, 1.0}) {
            gegenbauer_sequence<double> seq(lam, z);
            double cm1 = seq.next(), c0 = seq.next();
            for (long n = 1; n <= 200; ++n) {
                const double c1 = seq.next();
                const double lhs = double(n + 1) * c1;
                const double rhs = 2.0 * (double(n) + lam) * z * c0 - (double(n) + 2.0 * lam - 1.0) * cm1;
                const double scale = std::max({std::abs(c1), std::abs(cm1), 1.0});
                CHECK(std::abs(lhs - rhs) <= 1e-10 * scale);
                cm1 = c0;
                c0 = c1;
            }
        }
    }
}

TEST_CASE("gegenbauer parity")
{
    for (double lam : {0.4, 1.2, 3.0}) {
        for (double z : {0.1, 0.35, 0.8, 0.99}) {
            for (long n = 0; n <= 40; ++n) {
                const double a = gegenbauer<double>(n, lam, z);
                const double b = gegenbauer<double>(n, lam, -z);
                const double want = (n % 2 == 0) ? a : -a;
                CHECK(b == doctest::Approx(want).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("gegenbauer endpoint value against exact integer binomials")
{
    // C_n^{lam}(1) = Gamma(n + 2 lam) / (Gamma(2 lam) n!) = binom(n + 2lam - 1, n)
    // for integer 2 lam, computable in exact integer arithmetic
    for (long two_lam : {1L, 2L, 3L, 4L, 6L}) {
        const double lam = 0.5 * double(two_lam);
        for (long n = 0; n <= 20; ++n) {
            long double binom = 1.0L;
            for (long j = 1; j <= n; ++j)
                binom = binom * (long double)(two_lam - 1 + j) / (long double)j;
            CHECK(gegenbauer<double>(n, lam, 1.0) ==
                  doctest::Approx(double(binom)).epsilon(1e-12));
        }
    }
}

TEST_CASE("gegenbauer domain errors")
{
    CHECK_THROWS_AS(gegenbauer<double>(3, -0.5, 0.1), std::domain_error);
    CHECK_THROWS_AS(gegenbauer<double>(3, -1.2, 0.1), std::domain_error);
    CHECK_THROWS_AS(gegenbauer<double>(-1, 0.5, 0.1), std::domain_error);
}

TEST_CASE("series_coefficient known values")
{
    CHECK(series_coefficient(0, 0.0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(series_coefficient(5, 0.0) == doctest::Approx(std::sqrt(5.5)).epsilon(1e-14));
    // m=1, mu=0.5: sqrt(2 * Gamma(2)/Gamma(3)) = 1
    CHECK(series_coefficient(1, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(series_coefficient(2, -0.6), std::domain_error);
    CHECK_THROWS_AS(series_coefficient(-1, 0.5), std::domain_error);
}

TEST_CASE("series_coefficient stays positive and finite out to m = 10^4")
{
    for (double mu : {0.01, 0.5, 1.3, 4.0}) {
        for (long m : {0L, 1L, 17L, 170L, 1000L, 10000L}) {
            const double c = series_coefficient(m, mu);
            CHECK(std::isfinite(c));
            CHECK(c > 0.0);
        }
    }
}

TEST_CASE("prefactor known values")
{
    CHECK(prefactor(0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(prefactor(0.5) == doctest::Approx(std::sqrt(2.0 / M_PI)).epsilon(1e-14));
    CHECK(prefactor(1.5) == doctest::Approx(2.0 * std::sqrt(2.0 / M_PI)).epsilon(1e-14));
    CHECK_THROWS_AS(prefactor(-0.5), std::domain_error);
}
