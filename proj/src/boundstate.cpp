#include "hyperwave/boundstate.hpp"

#include <cmath>
#include <stdexcept>

#include "hyperwave/polyeval.hpp"
#include "hyperwave/quadrature.hpp"
#include "hyperwave/waveop.hpp"

namespace hyperwave::boundstate {

namespace {

double log_cosh(double xi)
{
    const double a = std::abs(xi);
    return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
}

}  // namespace

CoefficientSequence expansion_coefficients(double mu, double gamma, double strength, Eigen::Index count)
{
    if (strength == 0.0)
        throw std::invalid_argument("expansion_coefficients: strength C must be nonzero");
    if (!(mu > -1.0))
        throw std::domain_error("expansion_coefficients: mu must be > -1");
    if (count < 2)
        throw std::invalid_argument("expansion_coefficients: count must be >= 2");

    CoefficientSequence seq;
    seq.mu = mu;
    seq.gamma = gamma;
    seq.strength = strength;
    seq.values.resize(count);
    seq.values(0) = 1.0;

    double a_prev = 0.0, b_prev = 0.0, b_prev2 = 0.0;
    for (Eigen::Index n = 1; n < count; ++n) {
        const auto [a, b] = waveop::recursion_coeffs(waveop::Branch::Plus, mu, n - 1);
        a_prev = a;
        b_prev2 = b_prev;
        b_prev = b;
        if (b_prev == 0.0)
            throw std::domain_error("expansion_coefficients: b_{n-1} = 0");
        const double two_back = n >= 2 ? b_prev2 * seq.values(n - 2) : 0.0;
        double v = -((gamma + a_prev / strength) * seq.values(n - 1) + two_back) / b_prev;
        if (!std::isfinite(v)) {
            // overflow in a hopeless tail: freeze the remainder at the last
            // finite magnitude so truncation selection still works
            seq.values.conservativeResize(n);
            break;
        }
        seq.values(n) = v;
    }
    seq.stable_len = seq.values.size();
    return seq;
}

Eigen::Index select_truncation(CoefficientSequence& seq, bool on_spectrum, const TruncationOptions& opts)
{
    const Eigen::Index n = seq.values.size();
    Eigen::Index argmin = 0;
    double run_min = std::abs(seq.values(0));
    int grow = 0;
    Eigen::Index n_star = n;
    bool tail_found = false;

    for (Eigen::Index i = 1; i < n; ++i) {
        const double a = std::abs(seq.values(i));
        if (a < run_min) {
            run_min = a;
            argmin = i;
        }
        if (a > opts.growth_factor * run_min) {
            if (++grow >= opts.growth_window) {
                n_star = argmin + 1;
                tail_found = true;
                break;
            }
        } else {
            grow = 0;
        }
    }

    seq.stable_len = n_star;
    // divergence: the sequence never decayed appreciably below the scale of
    // its stable prefix before the growth set in
    double prefix_max = 0.0;
    for (Eigen::Index i = 0; i < n_star; ++i)
        prefix_max = std::max(prefix_max, std::abs(seq.values(i)));
    seq.diverged = tail_found && run_min > opts.divergence_ratio * prefix_max;
    if (seq.diverged && on_spectrum)
        throw std::runtime_error(
            "select_truncation: coefficient series diverges (rapidly growing oscillations); "
            "the requested energy is not on the parameter spectrum");
    return n_star;
}

double series_sum(const CoefficientSequence& seq, double z)
{
    const double lam = seq.mu + 0.5;
    polyeval::gegenbauer_sequence<double> cg(lam, z);
    double s = 0.0;
    for (Eigen::Index m = 0; m < seq.stable_len; ++m)
        s += polyeval::series_coefficient(m, seq.mu) * seq.values(m) * cg.next();
    return s;
}

namespace {

double psi_dimensionless(const BoundStateWavefunction& ws, double xi)
{
    const double z = std::tanh(xi);
    const double envelope = std::exp(-ws.mu * log_cosh(xi));
    return ws.omega * polyeval::prefactor(ws.mu) * envelope * series_sum(ws.coeffs, z);
}

}  // namespace

double evaluate_wavefunction(const BoundStateWavefunction& ws, double x)
{
    if (ws.coeffs.diverged)
        throw std::runtime_error("evaluate_wavefunction: divergence flag set (off-spectrum parameters)");
    return psi_dimensionless(ws, ws.params.lambda_scale * x);
}

Eigen::ArrayXd evaluate_wavefunction(const BoundStateWavefunction& ws, const Eigen::ArrayXd& x)
{
    Eigen::ArrayXd out(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i)
        out(i) = evaluate_wavefunction(ws, x(i));
    return out;
}

double normalize(BoundStateWavefunction& ws, const NormalizationOptions& opts)
{
    if (ws.coeffs.diverged)
        throw std::runtime_error("normalize: divergence flag set (off-spectrum parameters)");
    if (!(ws.mu > 0.0))
        throw std::domain_error("normalize: mu must be > 0 for a bound state");

    ws.omega = 1.0;
    const double cutoff = opts.cutoff_scale / ws.mu;
    const auto density = [&](double xi) {
        const double p = psi_dimensionless(ws, xi);
        return p * p;
    };
    const auto quad = quadrature::integrate(density, -cutoff, cutoff, opts.quad_abs_tol, opts.quad_rel_tol);
    // dx = dxi / lambda
    const double norm2 = quad.value / ws.params.lambda_scale;
    if (!(norm2 > 0.0) || !std::isfinite(norm2))
        throw std::runtime_error("normalize: quadrature produced a non-positive norm");
    ws.omega = 1.0 / std::sqrt(norm2);
    return ws.omega;
}

double kernel_sum(const CoefficientSequence& seq)
{
    double s = 0.0;
    for (Eigen::Index m = 0; m < seq.stable_len; ++m)
        s += seq.values(m) * seq.values(m);
    return s;
}

BoundStateWavefunction make_bound_state(const potential::PotentialParams& params, double epsilon,
                                        Eigen::Index count, const NormalizationOptions& opts)
{
    params.validate();
    if (!(epsilon < 0.0))
        throw std::invalid_argument("make_bound_state: epsilon must be < 0");

    BoundStateWavefunction ws;
    ws.params = params;
    ws.epsilon = epsilon;
    ws.mu = std::sqrt(-epsilon);
    ws.coeffs = expansion_coefficients(ws.mu, params.gamma, params.strength, count);
    select_truncation(ws.coeffs, /*on_spectrum=*/true);
    normalize(ws, opts);
    return ws;
}

double hamiltonian_residual(const BoundStateWavefunction& ws, double epsilon,
                            const potential::PotentialParams& params, const ResidualGrid& grid)
{
    if (ws.coeffs.diverged)
        throw std::runtime_error("hamiltonian_residual: divergence flag set");
    if (params.strength == 0.0)
        throw std::invalid_argument("hamiltonian_residual: free potential has no bound state");

    const double half = grid.xi_half_width > 0.0 ? grid.xi_half_width : std::max(12.0, 8.0 / ws.mu);
    // 5-point stencil error ~ h^4 |f|^3 / 90 with f = U - eps: shrink the
    // step for deep potentials so the truncation error stays below ~1e-7
    const double f_scale =
        std::abs(potential::dimensionless_minimum(params.strength, params.gamma)) + std::abs(epsilon) + 1.0;
    const double h = std::min(grid.step, 0.06 / std::pow(f_scale, 0.75));
    const Eigen::Index n = Eigen::Index(std::ceil(2.0 * half / h)) + 1;

    Eigen::ArrayXd psi(n), u(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double xi = -half + double(i) * h;
        psi(i) = psi_dimensionless(ws, xi);
        u(i) = potential::evaluate_xi(params.strength, params.gamma, xi);
    }

    double res2 = 0.0, norm2 = 0.0;
    for (Eigen::Index i = 2; i + 2 < n; ++i) {
        const double d2 =
            (-psi(i - 2) + 16.0 * psi(i - 1) - 30.0 * psi(i) + 16.0 * psi(i + 1) - psi(i + 2)) /
            (12.0 * h * h);
        const double r = -d2 + (u(i) - epsilon) * psi(i);
        res2 += r * r;
        norm2 += psi(i) * psi(i);
    }
    if (!(norm2 > 0.0))
        throw std::runtime_error("hamiltonian_residual: wavefunction vanishes on the grid");
    return std::sqrt(res2 / norm2);
}

}  // namespace hyperwave::boundstate
