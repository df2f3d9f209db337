#pragma once

#include <Eigen/Core>

#include "hyperwave/potential.hpp"

namespace hyperwave::boundstate {

/// Expansion coefficients P_0..P_{N-1} of the bound-state series,
/// generated by the forward recursion
///   P_n = -(1/b_{n-1}) [ (gamma + a_{n-1}/C) P_{n-1} + b_{n-2} P_{n-2} ]
/// with P_0 = 1 (standard normalization) and P_{-1} = 0. Forward
/// recursion of the decaying solution eventually picks up the growing
/// one; entries past stable_len are contaminated.
struct CoefficientSequence {
    double mu = 0.0;
    double gamma = 0.0;
    double strength = 0.0;
    Eigen::VectorXd values;
    Eigen::Index stable_len = 0;  // N*, set by select_truncation
    bool diverged = false;        // early divergence: off-spectrum parameters
};

CoefficientSequence expansion_coefficients(double mu, double gamma, double strength, Eigen::Index count);

struct TruncationOptions {
    double growth_factor = 10.0;   // |P_n| above this multiple of the running min ...
    int growth_window = 5;         // ... for this many consecutive n flags the tail
    double divergence_ratio = 1e-4;  // min|P|/max|P| above this means the series never settled
};

/// Largest stable prefix length N*: the index of the running-|P| minimum
/// before sustained growth. Sets seq.stable_len and seq.diverged; when
/// on_spectrum is true a detected divergence throws instead (the caller
/// asserted an on-spectrum energy).
Eigen::Index select_truncation(CoefficientSequence& seq, bool on_spectrum = false,
                               const TruncationOptions& opts = {});

struct NormalizationOptions {
    double quad_rel_tol = 1e-9;
    double quad_abs_tol = 1e-12;
    double cutoff_scale = 40.0;  // integrate |xi| <= cutoff_scale / mu
};

/// A normalized bound-state wavefunction
///   psi(x) = omega pi^{-1/2} 2^mu Gamma(mu+1/2) (cosh lx)^{-mu}
///            sum_m c_m P_m C_m^{mu+1/2}(tanh lx)
/// with mu = sqrt(-eps_n) and c_m the series_coefficient normalization.
struct BoundStateWavefunction {
    double mu = 0.0;
    double epsilon = 0.0;
    double omega = 1.0;
    CoefficientSequence coeffs;
    potential::PotentialParams params;
};

/// Build + truncate + normalize in one step. Throws if the coefficient
/// series diverges (epsilon not on the parameter spectrum).
BoundStateWavefunction make_bound_state(const potential::PotentialParams& params, double epsilon,
                                        Eigen::Index count = 400, const NormalizationOptions& opts = {});

/// The series sum S(z) = sum_{m < N*} c_m P_m C_m^{mu+1/2}(z).
double series_sum(const CoefficientSequence& seq, double z);

/// psi at physical coordinate x. Throws if the divergence flag is set.
double evaluate_wavefunction(const BoundStateWavefunction& ws, double x);
Eigen::ArrayXd evaluate_wavefunction(const BoundStateWavefunction& ws, const Eigen::ArrayXd& x);

/// Set omega so the adaptive quadrature of psi^2 dx equals 1. Returns omega.
double normalize(BoundStateWavefunction& ws, const NormalizationOptions& opts = {});

/// sum_{m < N*} P_m^2 -- the norm of psi in the (1 - y^2)-weighted
/// measure in which the basis is orthonormal (the discrete kernel sum):
/// integral of psi^2 sech^2(xi) dxi = omega^2 * prefactors^2-normalized
/// kernel_sum. Used as an independent cross-check of the series constants.
double kernel_sum(const CoefficientSequence& seq);

struct ResidualGrid {
    double xi_half_width = 0.0;  // 0 = auto: max(12, 8/mu)
    double step = 0.005;
};

/// ||(-d^2/dxi^2 + U - eps) psi||_2 / ||psi||_2 with a 4th-order central
/// difference in the dimensionless coordinate.
double hamiltonian_residual(const BoundStateWavefunction& ws, double epsilon,
                            const potential::PotentialParams& params, const ResidualGrid& grid = {});

}  // namespace hyperwave::boundstate
