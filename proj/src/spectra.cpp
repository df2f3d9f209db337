#include "hyperwave/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "hyperwave/potential.hpp"

namespace hyperwave::spectra {

namespace {

constexpr double kMuDegenerate = 1e-9;

double matrix_scale(const waveop::TridiagMatrix& t)
{
    const double d = t.diag.cwiseAbs().maxCoeff();
    const double e = t.size() > 1 ? t.off.cwiseAbs().maxCoeff() : 0.0;
    return d + 2.0 * e;
}

/// Retained C values (ascending) of the spectrum of T at the given mu,
/// with Rayleigh refinement of up to refine_per_side extreme eigenvalues
/// (those carry the small-|C| branches).
std::vector<double> c_values_at(double mu, double gamma, Eigen::Index truncation, Branch branch,
                                double theta_exclusion_rel, Eigen::Index refine_per_side,
                                std::size_t* dropped = nullptr)
{
    const waveop::TridiagMatrix t = waveop::build_t_gamma(gamma, mu, branch, truncation);
    Eigen::VectorXd theta = eigenvalues_tridiag(t);
    const double cutoff = theta_exclusion_rel * matrix_scale(t);

    if (refine_per_side > 0) {
        const Eigen::Index n = theta.size();
        const Eigen::Index lo = std::min(refine_per_side, n);
        for (Eigen::Index i = 0; i < lo; ++i)
            theta(i) = refine_eigenvalue(t, theta(i));
        for (Eigen::Index i = std::max(lo, n - refine_per_side); i < n; ++i)
            theta(i) = refine_eigenvalue(t, theta(i));
    }

    std::vector<double> c;
    c.reserve(theta.size());
    std::size_t skipped = 0;
    for (Eigen::Index i = 0; i < theta.size(); ++i) {
        if (std::abs(theta(i)) < cutoff) {
            ++skipped;
            continue;
        }
        c.push_back(-1.0 / theta(i));
    }
    std::sort(c.begin(), c.end());
    if (dropped)
        *dropped = skipped;
    return c;
}

std::vector<double> side_of(const std::vector<double>& c_sorted, int sign)
{
    std::vector<double> out;
    if (sign > 0) {
        for (double v : c_sorted)
            if (v > 0.0)
                out.push_back(v);
    } else {
        for (auto it = c_sorted.rbegin(); it != c_sorted.rend(); ++it)
            if (*it < 0.0)
                out.push_back(*it);
    }
    return out;
}

}  // namespace

std::vector<double> ParameterSpectrum::side(int sign) const
{
    std::vector<double> sorted;
    sorted.reserve(values.size());
    for (const auto& v : values)
        sorted.push_back(v.c);
    return side_of(sorted, sign);
}

std::vector<SpectrumValue> ParameterSpectrum::side_values(int sign) const
{
    std::vector<SpectrumValue> out;
    if (sign > 0) {
        for (const auto& v : values)
            if (v.c > 0.0)
                out.push_back(v);
    } else {
        for (auto it = values.rbegin(); it != values.rend(); ++it)
            if (it->c < 0.0)
                out.push_back(*it);
    }
    return out;
}

ParameterSpectrum parameter_spectrum_mu(double mu, double gamma, Eigen::Index truncation,
                                        const SpectrumOptions& opts)
{
    if (truncation < 2)
        throw std::invalid_argument("parameter_spectrum: truncation must be >= 2");
    if (opts.branch == Branch::Plus && !(mu > kMuDegenerate))
        throw std::domain_error(
            "parameter_spectrum: degenerate basis (mu ~ 0); use critical_strengths for the zero-energy limit");

    ParameterSpectrum spec;
    spec.epsilon = -mu * mu;
    spec.gamma = gamma;
    spec.truncation = truncation;
    spec.branch = opts.branch;
    spec.convergence_checked = opts.check_convergence;

    const std::vector<double> c_full = c_values_at(mu, gamma, truncation, opts.branch,
                                                   opts.theta_exclusion_rel, opts.refine_per_side,
                                                   &spec.dropped);

    std::vector<double> half_pos, half_neg;
    if (opts.check_convergence) {
        const std::vector<double> c_half =
            c_values_at(mu, gamma, std::max<Eigen::Index>(2, truncation / 2), opts.branch,
                        opts.theta_exclusion_rel, opts.refine_per_side);
        half_pos = side_of(c_half, +1);
        half_neg = side_of(c_half, -1);
    }

    const std::vector<double> pos = side_of(c_full, +1);
    const std::vector<double> neg = side_of(c_full, -1);

    auto flag = [&](const std::vector<double>& full, const std::vector<double>& half, std::size_t k) {
        if (!opts.check_convergence)
            return true;
        if (k >= half.size())
            return false;
        return std::abs(full[k] - half[k]) <= opts.convergence_rel_tol * std::abs(full[k]);
    };

    spec.values.reserve(c_full.size());
    for (std::size_t k = 0; k < neg.size(); ++k)
        spec.values.push_back({neg[k], flag(neg, half_neg, k)});
    std::reverse(spec.values.begin(), spec.values.end());  // ascending overall
    for (std::size_t k = 0; k < pos.size(); ++k)
        spec.values.push_back({pos[k], flag(pos, half_pos, k)});
    return spec;
}

ParameterSpectrum parameter_spectrum(double epsilon, double gamma, Eigen::Index truncation,
                                     const SpectrumOptions& opts)
{
    if (!(epsilon < 0.0))
        throw std::invalid_argument("parameter_spectrum: epsilon must be < 0 (bound-state sector)");
    ParameterSpectrum spec = parameter_spectrum_mu(std::sqrt(-epsilon), gamma, truncation, opts);
    spec.epsilon = epsilon;
    return spec;
}

namespace {

struct SidePair {
    std::vector<double> pos, neg;
};

SidePair sides_at(double mu, double gamma, Eigen::Index truncation, Branch branch, int need)
{
    const std::vector<double> c = c_values_at(mu, gamma, truncation, branch, 1e-12, need + 4);
    SidePair s;
    s.pos = side_of(c, +1);
    s.neg = side_of(c, -1);
    return s;
}

/// Richardson table for values at delta, delta/2, delta/4 assuming
/// v(mu) = v0 + c1 mu + c2 mu^2 + ...
double richardson3(double v1, double v2, double v3)
{
    const double e12 = 2.0 * v2 - v1;
    const double e23 = 2.0 * v3 - v2;
    return (4.0 * e23 - e12) / 3.0;
}

/// The diverging-theta branch maps to C -> 0 as a positive power of mu:
/// |C| small and shrinking by a clear factor under each delta halving
/// (1/2 for the generic linear branch, 1/sqrt(2) at gamma = 0). Genuine
/// critical branches move only by O(delta) and never look like this.
bool vanishing_branch(double v1, double v2, double v3)
{
    if (!(std::abs(v1) < 1e-2))
        return false;
    return std::abs(v2) <= 0.9 * std::abs(v1) && std::abs(v3) <= 0.9 * std::abs(v2);
}

}  // namespace

CriticalSet critical_strengths(double gamma, int n_max, Eigen::Index truncation, double delta, Branch branch)
{
    if (n_max < 1)
        throw std::invalid_argument("critical_strengths: n_max must be >= 1");
    if (!(delta > 0.0))
        throw std::invalid_argument("critical_strengths: delta must be > 0");
    if (truncation < 4)
        throw std::invalid_argument("critical_strengths: truncation must be >= 4");

    CriticalSet out;
    out.gamma = gamma;
    out.branch = branch;
    out.truncation = truncation;
    out.delta = delta;

    // The gamma*C < 0 side binds at any strength, so its leading critical
    // value is exactly 0. On the Plus branch that entry arrives by itself
    // as the extrapolated diverging-theta branch; with the row-0-excluded
    // Minus construction it is prepended.
    const bool zero_on_negative = branch == Branch::Minus && gamma >= 0.0;
    const bool zero_on_positive = branch == Branch::Minus && gamma <= 0.0;

    const int need = n_max + 2;
    const SidePair s1 = sides_at(delta, gamma, truncation, branch, need);
    const SidePair s2 = sides_at(0.5 * delta, gamma, truncation, branch, need);
    const SidePair s3 = sides_at(0.25 * delta, gamma, truncation, branch, need);
    const SidePair sh = sides_at(0.5 * delta, gamma, std::max<Eigen::Index>(4, truncation / 2), branch, need);

    auto extrapolate_side = [&](const std::vector<double>& v1, const std::vector<double>& v2,
                                const std::vector<double>& v3, const std::vector<double>& vh,
                                bool prepend_zero) {
        std::vector<double> side;
        if (prepend_zero)
            side.push_back(0.0);
        const std::size_t have = std::min({v1.size(), v2.size(), v3.size(), vh.size()});
        for (std::size_t k = 0; k < have && side.size() < std::size_t(n_max); ++k) {
            if (branch == Branch::Plus && vanishing_branch(v1[k], v2[k], v3[k])) {
                side.push_back(0.0);
                continue;
            }
            // between consecutive deltas a genuine branch moves only O(delta)
            if (std::abs(v2[k] - v1[k]) > 0.25 * std::max(std::abs(v1[k]), 1e-6) ||
                std::abs(v3[k] - v2[k]) > 0.25 * std::max(std::abs(v2[k]), 1e-6))
                throw std::runtime_error("critical_strengths: branch-tracking ambiguity at index " +
                                         std::to_string(k) + "; refine delta");
            const double e23 = 2.0 * v3[k] - v2[k];
            const double e123 = richardson3(v1[k], v2[k], v3[k]);
            if (std::abs(e123 - e23) > std::max(1e-8 * std::abs(e123), 1e-10))
                throw std::runtime_error("critical_strengths: mu-extrapolation failed to settle at index " +
                                         std::to_string(k));
            if (std::abs(v2[k] - vh[k]) > 1e-8 * std::max(std::abs(v2[k]), 1e-6))
                throw std::runtime_error("critical_strengths: value not converged in truncation at index " +
                                         std::to_string(k) + "; increase N");
            side.push_back(e123);
        }
        if (side.size() < std::size_t(n_max))
            throw std::runtime_error("critical_strengths: fewer than n_max branches resolved; increase N");
        return side;
    };

    out.positive = extrapolate_side(s1.pos, s2.pos, s3.pos, sh.pos, zero_on_positive);
    out.negative = extrapolate_side(s1.neg, s2.neg, s3.neg, sh.neg, zero_on_negative);
    return out;
}

namespace {

/// |C| of branch k on one side at the given epsilon; +inf when the branch
/// is beyond the retained spectrum.
double branch_abs_c(double eps, double gamma, int side, std::size_t k, Eigen::Index truncation)
{
    SpectrumOptions o;
    o.check_convergence = false;
    o.refine_per_side = Eigen::Index(k) + 4;
    const ParameterSpectrum spec = parameter_spectrum(eps, gamma, truncation, o);
    const std::vector<double> s = spec.side(side);
    if (k >= s.size())
        return std::numeric_limits<double>::infinity();
    return std::abs(s[k]);
}

}  // namespace

EnergySpectrum energy_spectrum(double strength, double gamma, double eps_floor, Eigen::Index truncation,
                               const InversionOptions& opts)
{
    if (strength == 0.0)
        throw std::invalid_argument("energy_spectrum: strength C must be nonzero");
    if (truncation < 2)
        throw std::invalid_argument("energy_spectrum: truncation must be >= 2");

    EnergySpectrum out;
    out.strength = strength;
    out.gamma = gamma;
    out.truncation = truncation;

    double floor = eps_floor;
    if (std::isnan(floor))
        floor = potential::dimensionless_minimum(strength, gamma);
    if (!(floor < 0.0))
        return out;  // potential nowhere negative: nothing can bind
    if (!(opts.eps_ceiling < 0.0) || opts.eps_ceiling <= floor)
        throw std::invalid_argument("energy_spectrum: need floor < eps_ceiling < 0");

    const Eigen::Index n_scan = std::min(truncation, std::max<Eigen::Index>(opts.scan_truncation, 64));
    const int side = strength > 0.0 ? +1 : -1;
    const double abs_c = std::abs(strength);

    // log-spaced |eps| grid from just above the variational floor down to
    // the ceiling; branch curves are monotone so one sign change per branch
    const double top = std::log(-floor * (1.0 - 1e-12));
    const double bot = std::log(-opts.eps_ceiling);
    const int decades = std::max(1, int(std::ceil((top - bot) / std::log(10.0))));
    const int n_grid = std::max(8, decades * opts.points_per_decade);
    std::vector<double> eps_grid(n_grid);
    for (int i = 0; i < n_grid; ++i)
        eps_grid[i] = -std::exp(top + (bot - top) * double(i) / double(n_grid - 1));

    // one spectrum per grid point, shared by all branch walks
    constexpr std::size_t k_cap = 64;
    std::vector<std::vector<double>> table(n_grid);
    {
        SpectrumOptions o;
        o.check_convergence = false;
        o.refine_per_side = 12;
        for (int i = 0; i < n_grid; ++i) {
            const ParameterSpectrum spec = parameter_spectrum(eps_grid[i], gamma, n_scan, o);
            std::vector<double> s = spec.side(side);
            if (s.size() > k_cap)
                s.resize(k_cap);
            for (double& v : s)
                v = std::abs(v);
            table[i] = std::move(s);
        }
    }
    auto table_at = [&](int i, std::size_t k) {
        return k < table[i].size() ? table[i][k] : std::numeric_limits<double>::infinity();
    };

    for (std::size_t k = 0; k < k_cap; ++k) {
        const double shallow = table_at(n_grid - 1, k);
        if (!(shallow < abs_c))
            break;  // this branch (and all later ones) cannot cross |C|

        int bracket = -1;
        double prev = shallow;
        for (int i = n_grid - 2; i >= 0; --i) {
            const double v = table_at(i, k);
            if (v < prev * (1.0 - 1e-6))
                throw std::runtime_error("energy_spectrum: branch " + std::to_string(k) +
                                         " is not monotone; curve tracking failed");
            prev = v;
            if (v >= abs_c) {
                bracket = i;
                break;
            }
        }
        if (bracket < 0)
            throw std::runtime_error("energy_spectrum: branch " + std::to_string(k) +
                                     " never reaches |C| above the variational floor");

        // Illinois iteration on g(eps) = |C_k(eps)| - |C|; the bracket is
        // tightened to machine width so the coefficient recursion later sees
        // an energy that is on-spectrum to full precision
        double lo = eps_grid[bracket];      // deeper: g >= 0
        double hi = eps_grid[bracket + 1];  // shallower: g < 0
        double g_lo = table_at(bracket, k) - abs_c;
        double g_hi = table_at(bracket + 1, k) - abs_c;
        int last_kept = 0;  // -1: lo retained, +1: hi retained
        for (int it = 0; it < 200 && hi - lo > 4e-16 * std::abs(lo); ++it) {
            double mid = (g_lo != g_hi) ? lo - g_lo * (hi - lo) / (g_hi - g_lo) : 0.5 * (lo + hi);
            const double guard = 1e-3 * (hi - lo);
            mid = std::clamp(mid, lo + guard, hi - guard);
            const double g_mid = branch_abs_c(mid, gamma, side, k, n_scan) - abs_c;
            if (g_mid == 0.0) {
                lo = hi = mid;
                break;
            }
            if (g_mid > 0.0) {
                lo = mid;
                g_lo = g_mid;
                if (last_kept == +1)
                    g_hi *= 0.5;  // Illinois damping of the stagnant end
                last_kept = +1;
            } else {
                hi = mid;
                g_hi = g_mid;
                if (last_kept == -1)
                    g_lo *= 0.5;
                last_kept = -1;
            }
        }
        double root = 0.5 * (lo + hi);

        // verify self-consistency at the full truncation; Newton-polish if
        // the scan truncation left any visible bias
        if (truncation > n_scan) {
            bool ok = false;
            for (int step = 0; step < 8 && !ok; ++step) {
                const double v = branch_abs_c(root, gamma, side, k, truncation);
                if (std::abs(v - abs_c) <= opts.self_consistency_rel * abs_c) {
                    ok = true;
                    break;
                }
                const double h = std::max(1e-7 * std::abs(root), 1e-13);
                const double v_deep = branch_abs_c(root - h, gamma, side, k, truncation);
                const double dv = (v_deep - v) / (-h);
                if (!std::isfinite(dv) || dv == 0.0)
                    break;
                root -= (v - abs_c) / dv;
            }
            if (!ok && std::abs(branch_abs_c(root, gamma, side, k, truncation) - abs_c) >
                           opts.self_consistency_rel * abs_c)
                throw std::runtime_error("energy_spectrum: self-consistency not reached for branch " +
                                         std::to_string(k));
        }
        out.energies.push_back(root);
    }

    std::sort(out.energies.begin(), out.energies.end());
    out.mu_values.resize(out.energies.size());
    std::transform(out.energies.begin(), out.energies.end(), out.mu_values.begin(),
                   [](double e) { return std::sqrt(-e); });
    return out;
}

int count_bound_states(double strength, double gamma, Eigen::Index truncation, double delta)
{
    if (strength == 0.0)
        throw std::invalid_argument("count_bound_states: strength C must be nonzero");
    const double abs_c = std::abs(strength);
    int n_max = 8;
    while (true) {
        const CriticalSet crit = critical_strengths(gamma, n_max, truncation, delta, Branch::Plus);
        const std::vector<double>& side = strength > 0.0 ? crit.positive : crit.negative;
        if (std::abs(side.back()) > abs_c) {
            int count = 0;
            for (double c_hat : side)
                if (std::abs(c_hat) < abs_c)
                    ++count;
            return count;
        }
        n_max *= 2;
        if (n_max > 512)
            throw std::runtime_error("count_bound_states: strength beyond supported critical-set depth");
    }
}

std::vector<SpectralCurve> spectral_map(double gamma, const Eigen::ArrayXd& eps_grid, Eigen::Index truncation,
                                        Eigen::Index max_branches_per_side, const SpectrumOptions& opts)
{
    for (Eigen::Index i = 0; i < eps_grid.size(); ++i)
        if (!(eps_grid(i) < 0.0))
            throw std::invalid_argument("spectral_map: all grid energies must be < 0");

    Eigen::ArrayXd grid = eps_grid;
    std::sort(grid.data(), grid.data() + grid.size());  // deepest first

    std::vector<SpectralCurve> curves;
    for (int side : {+1, -1})
        for (Eigen::Index k = 0; k < max_branches_per_side; ++k)
            curves.push_back(SpectralCurve{side, int(k), {}});

    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        const ParameterSpectrum spec = parameter_spectrum(grid(i), gamma, truncation, opts);
        for (int s : {+1, -1}) {
            const std::vector<double> vals = spec.side(s);
            const Eigen::Index base = s > 0 ? 0 : max_branches_per_side;
            for (Eigen::Index k = 0; k < max_branches_per_side && k < Eigen::Index(vals.size()); ++k)
                curves[base + k].points.push_back({grid(i), vals[k]});
        }
    }

    // keep non-empty curves; |C| must decrease (weakly) from deep to shallow
    std::vector<SpectralCurve> kept;
    for (auto& c : curves) {
        if (c.points.empty())
            continue;
        for (std::size_t i = 1; i < c.points.size(); ++i) {
            if (std::abs(c.points[i].c) > std::abs(c.points[i - 1].c) * (1.0 + 1e-6))
                throw std::runtime_error("spectral_map: branch curves cross (non-monotone |C| along branch " +
                                         std::to_string(c.k) + ")");
        }
        kept.push_back(std::move(c));
    }
    return kept;
}

}  // namespace hyperwave::spectra
