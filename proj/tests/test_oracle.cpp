#include <doctest.h>

#include <cmath>

#include "hyperwave/boundstate.hpp"
#include "hyperwave/oracle.hpp"
#include "hyperwave/spectra.hpp"
#include "test_oracles.hpp"

using namespace hyperwave::oracle;
using hyperwave::potential::PotentialParams;

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

TEST_CASE("free particle binds nothing")
{
    PotentialParams p{0.0, 0.2, 1.0};
    CHECK(numerov_bound_states(p, 8, default_grid()).empty());
}

TEST_CASE("Numerov agrees with the tridiagonal inversion for (20, 0.2)")
{
    PotentialParams p{20.0, 0.2, 1.0};
    const auto levels = numerov_bound_states(p, 8, default_grid());
    REQUIRE(levels.size() == 1);
    CHECK(levels[0].nodes == 0);
    CHECK(levels[0].epsilon == doctest::Approx(-2.4215071560).epsilon(1e-7));

    const auto es = hyperwave::spectra::energy_spectrum(20.0, 0.2, kNaN, 1200);
    REQUIRE(es.energies.size() == 1);
    CHECK(std::abs(es.energies[0] - levels[0].epsilon) <= 1e-6);
}

TEST_CASE("gamma = 0: strength sign flip leaves the spectrum invariant")
{
    PotentialParams a{12.0, 0.0, 1.0};
    PotentialParams b{-12.0, 0.0, 1.0};
    const auto la = numerov_bound_states(a, 8, default_grid());
    const auto lb = numerov_bound_states(b, 8, default_grid());
    REQUIRE(la.size() == lb.size());
    REQUIRE(!la.empty());
    for (std::size_t i = 0; i < la.size(); ++i) {
        CHECK(std::abs(la[i].epsilon - lb[i].epsilon) <= 1e-8);
        // eigenfunctions mirror under x -> -x
        const auto fa = numerov_eigenfunction(a, la[i].epsilon, default_grid());
        const auto fb = numerov_eigenfunction(b, lb[i].epsilon, default_grid());
        const Eigen::Index n = fa.psi.size();
        double diff = 0.0;
        for (Eigen::Index j = 0; j < n; ++j)
            diff = std::max(diff, std::min(std::abs(fb.psi(n - 1 - j) - fa.psi(j)),
                                           std::abs(fb.psi(n - 1 - j) + fa.psi(j))));
        CHECK(diff <= 1e-6);
    }
}

TEST_CASE("grid refinement shrinks the discretization error at 4th order")
{
    // coarse steps so the h^4 discretization error dominates the 1e-9
    // bisection tolerance
    PotentialParams p{20.0, 0.2, 1.0};
    auto level0 = [&](double h) {
        Grid1D g = default_grid(1.0, h);
        return numerov_bound_states(p, 2, g).at(0).epsilon;
    };
    const double e4 = level0(1.6e-2);
    const double e2 = level0(8e-3);
    const double e1 = level0(4e-3);
    const double shift_coarse = std::abs(e4 - e2);
    const double shift_fine = std::abs(e2 - e1);
    REQUIRE(shift_fine > 1e-8);  // meaningfully above bisection noise
    CHECK(shift_coarse / shift_fine >= 8.0);  // ~16 expected for h^4 scaling
}

TEST_CASE("Numerov preconditions")
{
    PotentialParams p{20.0, 0.2, 1.0};
    Grid1D narrow{-4.0, 4.0, 1e-3};
    CHECK_THROWS_AS(numerov_bound_states(p, 4, narrow), std::invalid_argument);
    Grid1D coarse{-25.0, 25.0, 0.05};
    CHECK_THROWS_AS(numerov_bound_states(p, 4, coarse), std::invalid_argument);
    CHECK_THROWS_AS(numerov_bound_states(p, 0, default_grid()), std::invalid_argument);
}

TEST_CASE("scattering: free case, unitarity, high-energy transparency")
{
    PotentialParams free_p{0.0, 0.2, 1.0};
    Eigen::ArrayXd grid = Eigen::ArrayXd::LinSpaced(7, 0.3, 4.0);
    for (const auto& pt : transmission_reflection(free_p, grid, Grid1D{})) {
        CHECK(std::abs(pt.t2 - 1.0) <= 1e-10);
        CHECK(pt.r2 <= 1e-10);
    }

    PotentialParams p{20.0, 0.2, 1.0};
    Eigen::ArrayXd wide = Eigen::ArrayXd::LinSpaced(41, 0.2, 40.0);
    const auto pts = transmission_reflection(p, wide, Grid1D{});
    for (const auto& pt : pts) {
        CHECK(pt.r2 + pt.t2 == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(pt.r2 >= -1e-8);
        CHECK(pt.t2 >= -1e-8);
    }
    // transparent at high energy, and monotone over the last stretch
    CHECK(pts.back().t2 > 0.999);
    for (std::size_t i = pts.size() - 8; i + 1 < pts.size(); ++i)
        CHECK(pts[i + 1].t2 >= pts[i].t2);

    Eigen::ArrayXd bad(2);
    bad << 1.0, -0.5;
    CHECK_THROWS_AS(transmission_reflection(p, bad, Grid1D{}), std::invalid_argument);
}

TEST_CASE("cpgamma_verify: symmetric report, matching counts")
{
    PotentialParams p{20.0, 0.2, 1.0};
    const auto rep = cpgamma_verify(p);
    CHECK(rep.counts_match);
    CHECK(rep.max_energy_diff <= 1e-9);
    CHECK(rep.max_wavefunction_diff <= 1e-8);

    PotentialParams m{-20.0, -0.2, 1.0};
    const auto rep2 = cpgamma_verify(m);
    CHECK(rep2.counts_match);
    CHECK(std::abs(rep2.max_energy_diff - rep.max_energy_diff) <= 1e-9);
    CHECK(std::abs(rep2.max_wavefunction_diff - rep.max_wavefunction_diff) <= 1e-8);
}
