#pragma once

#include <Eigen/Core>

#include "hyperwave/waveop.hpp"

namespace hyperwave::spectra {

/// All eigenvalues of a symmetric tridiagonal matrix, ascending, by the
/// implicit-shift QL algorithm (eigenvalues only, O(N) workspace).
/// Accuracy is ~machine-epsilon * ||T|| for well-conditioned separations;
/// use refine_eigenvalue for high relative accuracy on graded matrices.
/// Throws a numeric error naming the failing index if an eigenvalue does
/// not converge within the iteration cap.
Eigen::VectorXd eigenvalues_tridiag(const waveop::TridiagMatrix& t);

/// Inverse iteration with Rayleigh-quotient updates, started at theta0
/// (assumed within a gap-width of the true eigenvalue). Returns the
/// refined eigenvalue; the solve uses a partial-pivoting tridiagonal LU.
double refine_eigenvalue(const waveop::TridiagMatrix& t, double theta0, int max_iterations = 8);

/// Eigenvector for an isolated eigenvalue by one inverse-iteration pass
/// at the given (refined) shift; normalized to unit length.
Eigen::VectorXd eigenvector_tridiag(const waveop::TridiagMatrix& t, double theta);

}  // namespace hyperwave::spectra
