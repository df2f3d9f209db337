#pragma once

#include <Eigen/Core>
#include <vector>

#include "hyperwave/tridiag_eig.hpp"
#include "hyperwave/waveop.hpp"

namespace hyperwave::spectra {

using waveop::Branch;

struct SpectrumOptions {
    Branch branch = Branch::Plus;
    bool check_convergence = true;       // compare against a half-truncation run
    double convergence_rel_tol = 1e-8;   // acceptance threshold for the N/2 -> N shift
    double theta_exclusion_rel = 1e-12;  // |theta| < rel * ||T|| is dropped (C beyond truncation accuracy)
    Eigen::Index refine_per_side = 8;    // Rayleigh-refined eigenvalues per sign side (0 disables)
};

struct SpectrumValue {
    double c = 0.0;
    bool converged = true;
};

/// Discrete set of potential strengths C_k solving the problem at fixed
/// (epsilon, gamma). Values are sorted ascending and contain no zeros;
/// eigenvalues below the exclusion threshold are counted in `dropped`.
struct ParameterSpectrum {
    double epsilon = 0.0;
    double gamma = 0.0;
    Eigen::Index truncation = 0;
    double delta_mu = 0.0;  // mu-regularization used (0 = none)
    Branch branch = Branch::Plus;
    bool convergence_checked = false;
    std::vector<SpectrumValue> values;
    std::size_t dropped = 0;

    /// Values of one sign ordered by |C| ascending (branch order).
    std::vector<double> side(int sign) const;

    /// Same ordering, with the convergence flags attached.
    std::vector<SpectrumValue> side_values(int sign) const;
};

/// Build T_gamma with mu = sqrt(-epsilon) and return C_k = -1/theta_k.
/// epsilon must be < 0; |epsilon| below ~1e-18 (mu < 1e-9) is rejected on
/// the Plus branch as a degenerate basis -- use critical_strengths for
/// the zero-energy limit.
ParameterSpectrum parameter_spectrum(double epsilon, double gamma, Eigen::Index truncation,
                                     const SpectrumOptions& opts = {});

/// Same spectrum parameterized directly by mu > 0 (used by the
/// regularized zero-energy limit).
ParameterSpectrum parameter_spectrum_mu(double mu, double gamma, Eigen::Index truncation,
                                        const SpectrumOptions& opts = {});

/// Zero-energy critical strengths.
///
/// The two branches genuinely differ here and the toolkit exposes both:
///  - Branch::Plus keeps row n = 0 (mu-regularized, Richardson-
///    extrapolated mu -> 0). These are the strengths at which bound
///    states appear or disappear; they agree with direct integration.
///  - Branch::Minus excludes row n = 0 (a_0 = 0 identically). This is
///    the convention of the published critical-strength table; its
///    values interlace the Plus set but do not mark physical
///    transitions.
/// The gamma*C < 0 side always binds, so its leading entry is 0.
struct CriticalSet {
    double gamma = 0.0;
    Branch branch = Branch::Minus;
    Eigen::Index truncation = 0;
    double delta = 0.0;
    std::vector<double> positive;  // ascending
    std::vector<double> negative;  // descending, starts at 0 when gamma >= 0
};

CriticalSet critical_strengths(double gamma, int n_max, Eigen::Index truncation, double delta,
                               Branch branch);

struct InversionOptions {
    Eigen::Index scan_truncation = 1024;  // truncation for scan/bisection (capped by N)
    int points_per_decade = 12;
    double eps_ceiling = -1e-12;         // shallowest scanned energy
    double bisect_eps_tol = 1e-10;       // absolute bisection tolerance in epsilon
    double self_consistency_rel = 1e-8;  // |C_k(eps_root) - C| / |C| at full truncation
};

/// Energy spectrum of the potential with parameters (C, gamma): the
/// energies whose parameter spectrum contains C.
struct EnergySpectrum {
    double strength = 0.0;
    double gamma = 0.0;
    Eigen::Index truncation = 0;
    std::vector<double> energies;   // ascending, deepest first
    std::vector<double> mu_values;  // sqrt(-eps_n)
};

/// Scans each branch curve C_k(eps) over a log-spaced grid in
/// (eps_floor, 0), brackets the sign change of |C_k(eps)| - |C| and
/// bisects. Pass NaN as eps_floor to use the variational floor
/// min_y C*W(y). Curves are tracked by per-side sorted index; a
/// non-monotone tracked branch raises a numeric error (curves must not
/// cross).
EnergySpectrum energy_spectrum(double strength, double gamma, double eps_floor, Eigen::Index truncation,
                               const InversionOptions& opts = {});

/// Bound-state count by the critical-strength bracket rule, using the
/// physical (Plus-branch) critical set.
int count_bound_states(double strength, double gamma, Eigen::Index truncation = 2000, double delta = 1e-7);

struct SpectralCurvePoint {
    double epsilon = 0.0;
    double c = 0.0;
};

/// One tracked branch of the map eps -> C_k(eps); side is +1/-1 for the
/// sign of C, k the per-side index.
struct SpectralCurve {
    int side = +1;
    int k = 0;
    std::vector<SpectralCurvePoint> points;
};

std::vector<SpectralCurve> spectral_map(double gamma, const Eigen::ArrayXd& eps_grid, Eigen::Index truncation,
                                        Eigen::Index max_branches_per_side = 16,
                                        const SpectrumOptions& opts = {});

}  // namespace hyperwave::spectra
