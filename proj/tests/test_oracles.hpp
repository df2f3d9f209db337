// Shared test-only reference implementations, kept independent of the
// library code paths they check.
#pragma once

#include <Eigen/Core>
#include <cmath>
#include <vector>

namespace test_oracles {

/// Legendre P_n(z) by its own recurrence (reference for C_n^{1/2}).
inline double legendre(long n, double z)
{
    if (n == 0)
        return 1.0;
    double prev = 1.0, curr = z;
    for (long k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0) * z * curr - double(k) * prev) / double(k + 1);
        prev = curr;
        curr = next;
    }
    return curr;
}

/// Jacobi P_n^{(a,b)}(y) by the standard three-term recurrence.
inline double jacobi(long n, double a, double b, double y)
{
    if (n == 0)
        return 1.0;
    double prev = 1.0;
    double curr = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * y;
    for (long k = 2; k <= n; ++k) {
        const double k2ab = 2.0 * k + a + b;
        const double c1 = 2.0 * k * (k + a + b) * (k2ab - 2.0);
        const double c2 = (k2ab - 1.0) * (k2ab * (k2ab - 2.0) * y + a * a - b * b);
        const double c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * k2ab;
        const double next = (c2 * curr - c3 * prev) / c1;
        prev = curr;
        curr = next;
    }
    return curr;
}

/// Number of eigenvalues of the symmetric tridiagonal (d, e) strictly
/// below x, by a Sturm count in extended (80-bit) precision.
inline long sturm_count(const std::vector<long double>& d, const std::vector<long double>& e, long double x)
{
    long count = 0;
    long double q = d[0] - x;
    if (q < 0)
        ++count;
    for (std::size_t i = 1; i < d.size(); ++i) {
        if (q == 0.0L)
            q = 1e-4930L;
        q = d[i] - x - e[i - 1] * e[i - 1] / q;
        if (q < 0)
            ++count;
    }
    return count;
}

/// k-th (0-based, ascending) eigenvalue by Sturm bisection in extended
/// precision; ground truth for the double-precision solvers.
inline long double sturm_eigenvalue(const std::vector<long double>& d, const std::vector<long double>& e,
                                    long k)
{
    long double lo = d[0], hi = d[0];
    for (std::size_t i = 0; i < d.size(); ++i) {
        const long double r = (i > 0 ? std::abs(e[i - 1]) : 0.0L) + (i + 1 < d.size() ? std::abs(e[i]) : 0.0L);
        lo = std::min(lo, d[i] - r);
        hi = std::max(hi, d[i] + r);
    }
    for (int it = 0; it < 30000; ++it) {
        const long double mid = 0.5L * (lo + hi);
        if (sturm_count(d, e, mid) <= k)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= std::abs(mid) * 1e-19L + 1e-330L)
            break;
    }
    return 0.5L * (lo + hi);
}

/// Composite Simpson integral of samples with uniform step h (odd count
/// preferred; falls back to trapezoid on the last interval).
inline double simpson(const Eigen::ArrayXd& f, double h)
{
    const Eigen::Index n = f.size();
    double s = 0.0;
    Eigen::Index i = 0;
    for (; i + 2 < n; i += 2)
        s += (f(i) + 4.0 * f(i + 1) + f(i + 2)) * h / 3.0;
    if (i + 1 < n)
        s += 0.5 * h * (f(i) + f(i + 1));
    return s;
}

}  // namespace test_oracles
