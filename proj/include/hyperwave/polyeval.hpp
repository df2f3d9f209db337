#pragma once

#include <cmath>
#include <stdexcept>
#include <type_traits>

namespace hyperwave::polyeval {

/// Gegenbauer (ultra-spherical) polynomial C_n^lam(z) by the forward
/// three-term recurrence
///
///   C_0 = 1,  C_1 = 2 lam z,
///   (n+1) C_{n+1} = 2 (n+lam) z C_n - (n + 2 lam - 1) C_{n-1}.
///
/// The recurrence is stable for |z| <= 1, which is the only range used
/// here (arguments are tanh values). Requires lam > -1/2; lam = 0 is the
/// degenerate Chebyshev limit (C_n^0 = 0 for n >= 1 in this scaling) and
/// is outside the supported contract.
template <typename Real>
Real gegenbauer(long n, Real lam, Real z)
{
    static_assert(std::is_floating_point_v<Real>);
    if (n < 0)
        throw std::domain_error("gegenbauer: degree n must be >= 0");
    if (!(lam > Real(-0.5)))
        throw std::domain_error("gegenbauer: order lam must be > -1/2");

    if (n == 0)
        return Real(1);
    Real prev = Real(1);
    Real curr = Real(2) * lam * z;
    for (long k = 1; k < n; ++k) {
        const Real next =
            (Real(2) * (Real(k) + lam) * z * curr - (Real(k) + Real(2) * lam - Real(1)) * prev) / Real(k + 1);
        prev = curr;
        curr = next;
    }
    return curr;
}

/// Stateful evaluator for a whole Gegenbauer family at fixed (lam, z):
/// next() yields C_0, C_1, C_2, ... in sequence with O(1) state. Used by
/// the wavefunction series so an N-term sum costs O(N), not O(N^2).
template <typename Real>
class gegenbauer_sequence {
public:
    gegenbauer_sequence(Real lam, Real z) : lam_(lam), z_(z)
    {
        if (!(lam > Real(-0.5)))
            throw std::domain_error("gegenbauer_sequence: order lam must be > -1/2");
    }

    Real next()
    {
        if (k_ == 0) {
            ++k_;
            return prev_;  // C_0 = 1
        }
        if (k_ == 1) {
            curr_ = Real(2) * lam_ * z_;
            ++k_;
            return curr_;
        }
        const long n = k_ - 1;  // have C_{n-1}, C_n; produce C_{n+1}
        const Real next =
            (Real(2) * (Real(n) + lam_) * z_ * curr_ - (Real(n) + Real(2) * lam_ - Real(1)) * prev_) / Real(n + 1);
        prev_ = curr_;
        curr_ = next;
        ++k_;
        return curr_;
    }

private:
    Real lam_;
    Real z_;
    Real prev_ = Real(1);
    Real curr_ = Real(0);
    long k_ = 0;
};

/// sqrt[(m + mu + 1/2) Gamma(m+1) / Gamma(m + 2 mu + 1)], the m-th
/// normalization coefficient of the bound-state series. Evaluated through
/// log-gamma differences; direct Gamma ratios overflow near m ~ 170.
inline double series_coefficient(long m, double mu)
{
    if (m < 0)
        throw std::domain_error("series_coefficient: index m must be >= 0");
    if (!(mu > -0.5))
        throw std::domain_error("series_coefficient: mu must be > -1/2");
    const double log_ratio = std::lgamma(double(m) + 1.0) - std::lgamma(double(m) + 2.0 * mu + 1.0);
    return std::sqrt(double(m) + mu + 0.5) * std::exp(0.5 * log_ratio);
}

/// pi^{-1/2} 2^mu Gamma(mu + 1/2), the scalar prefactor of the
/// bound-state series, via log-gamma.
inline double prefactor(double mu)
{
    if (!(mu > -0.5))
        throw std::domain_error("prefactor: mu must be > -1/2");
    return std::exp(mu * std::log(2.0) + std::lgamma(mu + 0.5) - 0.5 * std::log(M_PI));
}

}  // namespace hyperwave::polyeval
