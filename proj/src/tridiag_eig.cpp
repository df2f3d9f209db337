#include "hyperwave/tridiag_eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace hyperwave::spectra {

namespace {

double hypot2(double a, double b) { return std::hypot(a, b); }

}  // namespace

Eigen::VectorXd eigenvalues_tridiag(const waveop::TridiagMatrix& t)
{
    const Eigen::Index n = t.size();
    if (n < 1)
        throw std::invalid_argument("eigenvalues_tridiag: empty matrix");
    if (!t.diag.allFinite() || !t.off.allFinite())
        throw std::invalid_argument("eigenvalues_tridiag: non-finite entries");

    Eigen::VectorXd d = t.diag;
    Eigen::VectorXd e(n);
    e.head(n - 1) = t.off;
    e(n - 1) = 0.0;

    const double eps = std::numeric_limits<double>::epsilon();
    constexpr int max_iter = 50;

    for (Eigen::Index l = 0; l < n; ++l) {
        int iter = 0;
        Eigen::Index m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d(m)) + std::abs(d(m + 1));
                if (std::abs(e(m)) <= eps * dd)
                    break;
            }
            if (m != l) {
                if (iter++ == max_iter)
                    throw std::runtime_error("eigenvalues_tridiag: no convergence at index " + std::to_string(l));
                double g = (d(l + 1) - d(l)) / (2.0 * e(l));
                double r = hypot2(g, 1.0);
                g = d(m) - d(l) + e(l) / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                Eigen::Index i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e(i);
                    const double b = c * e(i);
                    r = hypot2(f, g);
                    e(i + 1) = r;
                    if (r == 0.0) {  // recover from underflow
                        d(i + 1) -= p;
                        e(m) = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d(i + 1) - p;
                    r = (d(i) - g) * s + 2.0 * c * b;
                    p = s * r;
                    d(i + 1) = g + p;
                    g = c * r - b;
                }
                if (r == 0.0 && i >= l)
                    continue;
                d(l) -= p;
                e(l) = g;
                e(m) = 0.0;
            }
        } while (m != l);
    }

    std::sort(d.data(), d.data() + n);
    return d;
}

namespace {

/// Solve (T - shift) x = rhs by tridiagonal LU with partial pivoting.
/// Fill-in adds one extra super-diagonal. Returns false if exactly
/// singular to working precision (caller perturbs the shift).
bool solve_shifted(const waveop::TridiagMatrix& t, double shift, Eigen::VectorXd& x)
{
    const Eigen::Index n = t.size();
    Eigen::VectorXd du0(n), du1(n), du2(n);
    du0 = t.diag.array() - shift;
    du1.setZero();
    du2.setZero();
    if (n > 1)
        du1.head(n - 1) = t.off;
    Eigen::VectorXd sub(n - 1);
    sub = t.off;

    const double tiny = std::numeric_limits<double>::min() * 16;

    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        if (std::abs(sub(i)) > std::abs(du0(i))) {
            std::swap(du0(i), sub(i));
            std::swap(du1(i), du0(i + 1));
            std::swap(du2(i), du1(i + 1));
            std::swap(x(i), x(i + 1));
        }
        if (du0(i) == 0.0)
            du0(i) = tiny;
        const double factor = sub(i) / du0(i);
        du0(i + 1) -= factor * du1(i);
        du1(i + 1) -= factor * du2(i);
        x(i + 1) -= factor * x(i);
    }
    if (du0(n - 1) == 0.0)
        du0(n - 1) = tiny;

    x(n - 1) /= du0(n - 1);
    if (n > 1)
        x(n - 2) = (x(n - 2) - du1(n - 2) * x(n - 1)) / du0(n - 2);
    for (Eigen::Index i = n - 3; i >= 0; --i)
        x(i) = (x(i) - du1(i) * x(i + 1) - du2(i) * x(i + 2)) / du0(i);
    return x.allFinite();
}

double rayleigh_quotient(const waveop::TridiagMatrix& t, const Eigen::VectorXd& v)
{
    const Eigen::Index n = t.size();
    double num = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        double tv = t.diag(i) * v(i);
        if (i > 0)
            tv += t.off(i - 1) * v(i - 1);
        if (i + 1 < n)
            tv += t.off(i) * v(i + 1);
        num += v(i) * tv;
    }
    return num / v.squaredNorm();
}

}  // namespace

double refine_eigenvalue(const waveop::TridiagMatrix& t, double theta0, int max_iterations)
{
    const Eigen::Index n = t.size();
    const double eps = std::numeric_limits<double>::epsilon();
    double theta = theta0;
    Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));

    for (int it = 0; it < max_iterations; ++it) {
        Eigen::VectorXd x = v;
        if (!solve_shifted(t, theta, x)) {
            theta += 4.0 * eps * (std::abs(theta) + 1.0);
            continue;
        }
        const double norm = x.norm();
        if (!(norm > 0.0) || !std::isfinite(norm))
            break;
        v = x / norm;
        const double next = rayleigh_quotient(t, v);
        if (!std::isfinite(next))
            break;
        const double step = std::abs(next - theta);
        theta = next;
        if (step <= 2.0 * eps * std::abs(theta))
            break;
    }
    return theta;
}

Eigen::VectorXd eigenvector_tridiag(const waveop::TridiagMatrix& t, double theta)
{
    const Eigen::Index n = t.size();
    const double eps = std::numeric_limits<double>::epsilon();
    Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
    // two passes at a slightly displaced shift keep the solve nonsingular
    const double shift = theta * (1.0 + 8.0 * eps) + (theta == 0.0 ? 8.0 * eps : 0.0);
    for (int pass = 0; pass < 2; ++pass) {
        Eigen::VectorXd x = v;
        if (!solve_shifted(t, shift, x))
            break;
        const double norm = x.norm();
        if (!(norm > 0.0) || !std::isfinite(norm))
            break;
        v = x / norm;
    }
    return v;
}

}  // namespace hyperwave::spectra
