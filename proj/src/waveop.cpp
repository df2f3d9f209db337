#include "hyperwave/waveop.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hyperwave::waveop {

BasisSpec BasisSpec::plus(double mu)
{
    if (!(mu > -1.0))
        throw std::domain_error("BasisSpec: Plus branch requires mu > -1");
    return BasisSpec{Branch::Plus, mu};
}

BasisSpec BasisSpec::minus(double mu)
{
    if (!(mu > -1.0 && mu < 1.0))
        throw std::domain_error("BasisSpec: Minus branch requires -1 < mu < 1");
    return BasisSpec{Branch::Minus, mu};
}

RecursionCoeffs recursion_coeffs(Branch branch, double mu, Eigen::Index n)
{
    if (n < 0)
        throw std::domain_error("recursion_coeffs: index n must be >= 0");
    const double nd = double(n);
    RecursionCoeffs rc;
    if (branch == Branch::Plus) {
        rc.a = (nd + mu) * (nd + mu + 1.0);
        const double num = (nd + 1.0) * (nd + 2.0 * mu + 1.0);
        const double den = (nd + mu + 0.5) * (nd + mu + 1.5);
        if (!(num > 0.0) || !(den > 0.0))
            throw std::domain_error("recursion_coeffs: mu outside Plus-branch domain (mu > -1)");
        rc.b = 0.5 * std::sqrt(num / den);
    } else {
        rc.a = nd * (nd + 1.0);
        const double num = (nd + 1.0) * (nd + 1.0) - mu * mu;
        const double den = (nd + 0.5) * (nd + 1.5);
        if (!(num > 0.0))
            throw std::domain_error("recursion_coeffs: mu outside Minus-branch domain (-1 < mu < 1)");
        rc.b = 0.5 * std::sqrt(num / den);
    }
    return rc;
}

double y_matrix_element(double mu, double nu, Eigen::Index n, Eigen::Index m)
{
    if (n < 0 || m < 0)
        throw std::domain_error("y_matrix_element: indices must be >= 0");
    if (std::abs(n - m) >= 2)
        return 0.0;
    if (n < m)
        std::swap(n, m);  // symmetric; reduce to m = n or m = n-1
    const double nd = double(n);
    const double s = mu + nu;
    if (n == m) {
        return (nu * nu - mu * mu) / ((2.0 * nd + s) * (2.0 * nd + s + 2.0));
    }
    // m = n - 1
    const double num = nd * (nd + mu) * (nd + nu) * (nd + s);
    const double den = (2.0 * nd + s - 1.0) * (2.0 * nd + s + 1.0);
    return (2.0 / (2.0 * nd + s)) * std::sqrt(num / den);
}

double j_matrix_element(Eigen::Index n, Eigen::Index m, double strength, double gamma, double mu, double nu)
{
    double value = strength * y_matrix_element(mu, nu, n, m);
    if (n == m) {
        const double q = double(n) + 0.5 * (nu + mu);
        value += gamma * strength + q * (q + 1.0);
    }
    return value;
}

TridiagMatrix build_t_gamma(double gamma, double mu, Branch branch, Eigen::Index n_rows)
{
    if (n_rows < 2)
        throw std::invalid_argument("build_t_gamma: truncation must be >= 2");

    const Eigen::Index first = branch == Branch::Plus ? 0 : 1;  // Minus: a_0 = 0 identically
    TridiagMatrix t;
    t.diag.resize(n_rows);
    t.off.resize(n_rows - 1);

    double a_prev = 0.0, b_prev = 0.0;
    for (Eigen::Index i = 0; i < n_rows; ++i) {
        const auto [a, b] = recursion_coeffs(branch, mu, first + i);
        if (a == 0.0)
            throw std::domain_error(
                "build_t_gamma: degenerate basis, a_" + std::to_string(first + i) +
                " = 0; use mu-regularization (small mu = delta > 0, see critical_strengths)");
        t.diag(i) = gamma / a;
        if (i > 0)
            t.off(i - 1) = b_prev / std::sqrt(a_prev * a);
        a_prev = a;
        b_prev = b;
    }
    if (!t.diag.allFinite() || !t.off.allFinite())
        throw std::domain_error("build_t_gamma: non-finite matrix entry (mu outside branch domain?)");
    return t;
}

}  // namespace hyperwave::waveop
