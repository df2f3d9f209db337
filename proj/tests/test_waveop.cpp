#include <doctest.h>

#include <cmath>
#include <random>

#include "hyperwave/potential.hpp"
#include "hyperwave/quadrature.hpp"
#include "hyperwave/tridiag_eig.hpp"
#include "hyperwave/waveop.hpp"
#include "test_oracles.hpp"

using namespace hyperwave::waveop;

TEST_CASE("BasisSpec domain validation")
{
    CHECK(BasisSpec::plus(2.5).nu() == 2.5);
    CHECK(BasisSpec::minus(0.5).nu() == -0.5);
    CHECK(BasisSpec::plus(0.8).alpha() == doctest::Approx(0.4));
    CHECK(BasisSpec::minus(0.8).alpha() == doctest::Approx(-0.4));
    CHECK(BasisSpec::plus(0.8).beta() == doctest::Approx(0.4));
    CHECK_THROWS_AS(BasisSpec::plus(-1.0), std::domain_error);
    CHECK_THROWS_AS(BasisSpec::minus(1.0), std::domain_error);
    CHECK_THROWS_AS(BasisSpec::minus(-1.1), std::domain_error);
}

TEST_CASE("recursion coefficients: closed forms at small n")
{
    for (double mu : {0.1, 0.5, 1.7}) {
        const auto [a0, b0] = recursion_coeffs(Branch::Plus, mu, 0);
        CHECK(a0 == doctest::Approx(mu * (mu + 1.0)).epsilon(1e-15));
        CHECK(b0 == doctest::Approx(1.0 / std::sqrt(2.0 * mu + 3.0)).epsilon(1e-14));
    }
    const auto [a1m, b1m] = recursion_coeffs(Branch::Minus, 0.37, 1);
    CHECK(a1m == 2.0);
    CHECK(b1m == doctest::Approx(0.5 * std::sqrt((4.0 - 0.37 * 0.37) / (1.5 * 2.5))).epsilon(1e-15));

    // the branches coincide at mu = 0: both give a_n = n(n+1)
    for (long n = 0; n <= 12; ++n) {
        const auto p = recursion_coeffs(Branch::Plus, 0.0, n);
        const auto m = recursion_coeffs(Branch::Minus, 0.0, n);
        CHECK(p.a == doctest::Approx(double(n) * double(n + 1)).epsilon(1e-15));
        CHECK(p.a == doctest::Approx(m.a).epsilon(1e-15));
        CHECK(p.b == doctest::Approx(m.b).epsilon(1e-15));
    }
    CHECK_THROWS_AS(recursion_coeffs(Branch::Minus, 1.3, 0), std::domain_error);
    CHECK_THROWS_AS(recursion_coeffs(Branch::Plus, 0.3, -1), std::domain_error);
}

TEST_CASE("y matrix element: band structure, symmetry, b_n identity")
{
    for (double mu : {0.2, 0.9, 2.1}) {
        CHECK(y_matrix_element(mu, mu, 4, 4) == 0.0);  // diagonal ~ nu^2 - mu^2
        CHECK(y_matrix_element(mu, mu, 1, 0) ==
              doctest::Approx(1.0 / std::sqrt(2.0 * mu + 3.0)).epsilon(1e-14));
        CHECK(y_matrix_element(mu, mu, 3, 5) == 0.0);
        CHECK(y_matrix_element(mu, mu, 5, 3) == 0.0);
        CHECK(y_matrix_element(mu, 0.3, 7, 6) == doctest::Approx(y_matrix_element(mu, 0.3, 6, 7)));
    }
    // b_n from the Plus recursion equals <n+1|y|n> at nu = mu
    for (double mu : {0.05, 0.6, 1.9}) {
        for (long n = 0; n <= 100; ++n) {
            const auto rc = recursion_coeffs(Branch::Plus, mu, n);
            const double el = y_matrix_element(mu, mu, n + 1, n);
            CHECK(std::abs(rc.b - el) <= 1e-13 * std::abs(el));
        }
    }
    // Minus-branch b_n equals <n+1|y|n> at nu = -mu
    for (double mu : {0.05, 0.77}) {
        for (long n = 0; n <= 50; ++n) {
            const auto rc = recursion_coeffs(Branch::Minus, mu, n);
            const double el = y_matrix_element(mu, -mu, n + 1, n);
            CHECK(std::abs(rc.b - el) <= 1e-13 * std::abs(el));
        }
    }
}

TEST_CASE("wave-operator element: delta terms and symmetry")
{
    const double mu = 0.8;
    CHECK(j_matrix_element(0, 0, 0.0, 0.4, mu, mu) == doctest::Approx(mu * (mu + 1.0)).epsilon(1e-14));
    CHECK(j_matrix_element(0, 1, 7.0, 0.4, mu, mu) ==
          doctest::Approx(j_matrix_element(1, 0, 7.0, 0.4, mu, mu)).epsilon(1e-14));
    CHECK(j_matrix_element(2, 5, 7.0, 0.4, mu, mu) == 0.0);
}

namespace {

/// Normalization A_n of the basis, nu = mu case, via log-gamma.
double basis_norm(long n, double mu)
{
    const double log_a2 = std::log(2.0 * n + 2.0 * mu + 1.0) - (2.0 * mu + 1.0) * std::log(2.0) +
                          std::lgamma(n + 1.0) + std::lgamma(n + 2.0 * mu + 1.0) -
                          2.0 * std::lgamma(n + mu + 1.0);
    return std::exp(0.5 * log_a2);
}

/// phi_n(xi) = A_n sech(xi)^mu P_n^{(mu,mu)}(tanh xi)
double basis_fn(long n, double mu, double xi)
{
    const double y = std::tanh(xi);
    const double log_sech = -(std::abs(xi) + std::log1p(std::exp(-2.0 * std::abs(xi))) - std::log(2.0));
    return basis_norm(n, mu) * std::exp(mu * log_sech) * test_oracles::jacobi(n, mu, mu, y);
}

/// (J phi_m)(xi) = -phi_m'' + (U - eps) phi_m with a 5-point stencil.
double apply_j(long m, double mu, double c, double gamma, double xi)
{
    const double h = 1e-3;
    const double d2 = (-basis_fn(m, mu, xi - 2 * h) + 16.0 * basis_fn(m, mu, xi - h) -
                       30.0 * basis_fn(m, mu, xi) + 16.0 * basis_fn(m, mu, xi + h) -
                       basis_fn(m, mu, xi + 2 * h)) /
                      (12.0 * h * h);
    const double eps = -mu * mu;
    return -d2 + (hyperwave::potential::evaluate_xi(c, gamma, xi) - eps) * basis_fn(m, mu, xi);
}

}  // namespace

TEST_CASE("brute-force quadrature of <phi_n|J|phi_m> reproduces the tridiagonal elements")
{
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> mu_d(0.4, 1.4), g_d(-0.8, 0.8), c_d(2.0, 20.0);
    for (int draw = 0; draw < 3; ++draw) {
        const double mu = mu_d(rng);
        const double gamma = g_d(rng);
        const double c = (draw % 2 == 0 ? 1.0 : -1.0) * c_d(rng);
        const double box = 45.0 / mu;
        for (long n = 0; n <= 3; ++n) {
            for (long m = 0; m <= 3; ++m) {
                const auto quad = hyperwave::quadrature::integrate(
                    [&](double xi) { return basis_fn(n, mu, xi) * apply_j(m, mu, c, gamma, xi); },
                    -box, box, 1e-10, 1e-10);
                const double expected = j_matrix_element(n, m, c, gamma, mu, mu);
                CHECK(std::abs(quad.value - expected) <= 1e-8 * std::max(1.0, std::abs(expected)));
            }
        }
    }
}

TEST_CASE("basis orthonormality under the (1 - y^2) weight")
{
    const double mu = 0.73;
    for (long n = 0; n <= 3; ++n) {
        for (long m = n; m <= 3; ++m) {
            const auto quad = hyperwave::quadrature::integrate(
                [&](double xi) {
                    const double sech2 = 1.0 - std::pow(std::tanh(xi), 2);
                    return basis_fn(n, mu, xi) * basis_fn(m, mu, xi) * sech2;
                },
                -60.0, 60.0, 1e-11, 1e-11);
            CHECK(quad.value == doctest::Approx(n == m ? 1.0 : 0.0).epsilon(1e-9).scale(1.0));
        }
    }
}

TEST_CASE("T_gamma construction")
{
    const auto t = build_t_gamma(0.0, 0.6, Branch::Plus, 32);
    CHECK(t.size() == 32);
    CHECK(t.diag.cwiseAbs().maxCoeff() == 0.0);  // A_n ~ gamma
    CHECK((t.off.array() > 0.0).all());

    // A_n, B_n decay as n^{-2}: n^2-scaled values stay bounded
    const auto tg = build_t_gamma(0.5, 0.6, Branch::Plus, 2000);
    for (Eigen::Index n = 1; n < tg.size(); ++n) {
        CHECK(std::abs(tg.diag(n)) * double(n) * double(n) <= 1.0);
        if (n < tg.size() - 1)
            CHECK(tg.off(n) * double(n) * double(n) <= 1.0);
    }

    CHECK_THROWS_AS(build_t_gamma(0.5, 0.0, Branch::Plus, 16), std::domain_error);
    CHECK_THROWS_AS(build_t_gamma(0.5, 0.6, Branch::Plus, 1), std::invalid_argument);

    // Minus branch starts at row 1: leading diagonal gamma / a_1 = gamma / 2
    const auto tm = build_t_gamma(0.5, 0.0, Branch::Minus, 16);
    CHECK(tm.diag(0) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("eigenvalue sign flip under gamma -> -gamma at several truncations")
{
    using hyperwave::spectra::eigenvalues_tridiag;
    for (Eigen::Index n : {16L, 64L, 256L}) {
        for (double mu : {0.7, 0.05}) {
            const auto tp = build_t_gamma(0.45, mu, Branch::Plus, n);
            const auto tm = build_t_gamma(-0.45, mu, Branch::Plus, n);
            const Eigen::VectorXd ep = eigenvalues_tridiag(tp);
            const Eigen::VectorXd em = eigenvalues_tridiag(tm);
            const double scale = std::max(1.0, ep.cwiseAbs().maxCoeff());
            for (Eigen::Index i = 0; i < n; ++i)
                CHECK(std::abs(em(i) + ep(n - 1 - i)) <= 1e-12 * scale);
        }
    }
}
