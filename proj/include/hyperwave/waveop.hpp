#pragma once

#include <Eigen/Core>

namespace hyperwave::waveop {

/// The two admissible basis-parameter choices nu = +mu (Plus) and
/// nu = -mu (Minus). Plus carries the physical bound-state pipeline;
/// Minus exists for coefficient-level verification and for the published
/// critical-strength table convention (see spectra::critical_strengths).
enum class Branch { Plus, Minus };

/// Basis parameters (mu, nu) with alpha = nu/2, beta = mu/2. Bound states
/// have mu = sqrt(-eps) with eps < 0. Plus requires mu > -1; Minus
/// requires -1 < mu < 1.
struct BasisSpec {
    Branch branch = Branch::Plus;
    double mu = 0.0;

    static BasisSpec plus(double mu);
    static BasisSpec minus(double mu);

    double nu() const { return branch == Branch::Plus ? mu : -mu; }
    double alpha() const { return 0.5 * nu(); }
    double beta() const { return 0.5 * mu; }
};

struct RecursionCoeffs {
    double a = 0.0;
    double b = 0.0;
};

/// Three-term recursion coefficients of the wave operator row n:
///   Plus : a_n = (n+mu)(n+mu+1),
///          b_n = (1/2) sqrt[(n+1)(n+2mu+1) / ((n+mu+1/2)(n+mu+3/2))]
///   Minus: a_n = n(n+1),
///          b_n = (1/2) sqrt[((n+1)^2 - mu^2) / ((n+1/2)(n+3/2))]
/// The squared factors are kept in product form (never as q^2 - 1/4) to
/// avoid cancellation.
RecursionCoeffs recursion_coeffs(Branch branch, double mu, Eigen::Index n);

/// Tridiagonal matrix element <n|y|m> in the (mu, nu) basis; zero for
/// |n - m| >= 2.
double y_matrix_element(double mu, double nu, Eigen::Index n, Eigen::Index m);

/// Wave-operator matrix element
///   J_nm = [gamma C + (n + (nu+mu)/2)(n + (nu+mu)/2 + 1)] delta_nm
///          + C <n|y|m>.
double j_matrix_element(Eigen::Index n, Eigen::Index m, double strength, double gamma, double mu, double nu);

/// Symmetric tridiagonal matrix stored as diagonal + single off-diagonal.
struct TridiagMatrix {
    Eigen::VectorXd diag;  // length N
    Eigen::VectorXd off;   // length N-1

    Eigen::Index size() const { return diag.size(); }
};

/// The symmetrized eigenproblem matrix T_gamma with entries
///   diag[n] = A_n = gamma / a_n,  off[n] = B_n = b_n / sqrt(a_n a_{n+1});
/// its eigenvalues theta approximate -1/C of the parameter spectrum.
///
/// Plus builds rows n = 0..N-1 and requires mu > 0 strictly (a_0 = 0 at
/// mu = 0 makes A_0 undefined; use mu-regularization, see
/// spectra::critical_strengths). Minus has a_0 = 0 identically, so its
/// rows are n = 1..N.
TridiagMatrix build_t_gamma(double gamma, double mu, Branch branch, Eigen::Index n_rows);

}  // namespace hyperwave::waveop
