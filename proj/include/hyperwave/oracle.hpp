#pragma once

#include <Eigen/Core>
#include <vector>

#include "hyperwave/potential.hpp"

namespace hyperwave::oracle {

/// Integration box in the dimensionless coordinate xi = lambda x.
/// Bound-state runs require the potential to be negligible at both ends
/// and h small enough for the h^2 max|U - eps| < 0.01 stability heuristic.
struct Grid1D {
    double xi_min = -25.0;
    double xi_max = 25.0;
    double h = 1e-3;
};

/// Default box for the given parameters: |xi| <= max(25, 40/mu_expected).
Grid1D default_grid(double mu_expected = 1.0, double h = 1e-3);

struct BoundLevel {
    double epsilon = 0.0;
    int nodes = 0;
};

/// Bound states by fourth-order Numerov shooting from both ends with
/// exact e^{-mu|xi|} tail seeds and log-derivative matching at the well
/// minimum; matching-condition sign changes over a log-spaced energy scan
/// in (eps_floor, 0) are bisected to |d eps| <= 1e-9. Node counts are
/// verified to equal the state index.
std::vector<BoundLevel> numerov_bound_states(const potential::PotentialParams& params, int max_states,
                                             const Grid1D& grid);

struct NumerovSolution {
    Eigen::ArrayXd xi;
    Eigen::ArrayXd psi;  // L2-normalized on the grid (measure dxi)
    int nodes = 0;
};

/// The matched, normalized eigenfunction at a (previously located)
/// eigenenergy.
NumerovSolution numerov_eigenfunction(const potential::PotentialParams& params, double epsilon,
                                      const Grid1D& grid);

struct ScatterPoint {
    double epsilon = 0.0;  // dimensionless energy > 0
    double r2 = 0.0;       // reflection probability
    double t2 = 0.0;       // transmission probability
};

/// Transmission/reflection by direct integration: outgoing plane wave on
/// the right, integrated backward, decomposed into incident + reflected
/// waves on the left. Plane waves use the lattice wavenumber of the
/// discrete scheme, so R^2 + T^2 = 1 holds to roundoff (flux conservation
/// is a check, not an enforced constraint).
std::vector<ScatterPoint> transmission_reflection(const potential::PotentialParams& params,
                                                  const Eigen::ArrayXd& eps_grid, const Grid1D& grid);

struct CpGammaReport {
    double max_energy_diff = 0.0;
    double max_wavefunction_diff = 0.0;
    bool counts_match = false;
    std::vector<double> energies = {};          // spectra-module energies of (C, gamma)
    std::vector<double> energies_mirror = {};   // spectra-module energies of (-C, -gamma)
    std::vector<double> energies_oracle = {};   // Numerov energies of (C, gamma)
};

/// Bound spectra of (C, gamma) and (-C, -gamma) via both the tridiagonal
/// pipeline and the Numerov oracle: reports the largest energy
/// discrepancy across the pairings, the largest pointwise mismatch of
/// mirrored normalized wavefunctions, and whether all state counts agree.
CpGammaReport cpgamma_verify(const potential::PotentialParams& params, double tol = 1e-9);

}  // namespace hyperwave::oracle
