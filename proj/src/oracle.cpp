#include "hyperwave/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include "hyperwave/boundstate.hpp"
#include "hyperwave/parallel.hpp"
#include "hyperwave/spectra.hpp"

namespace hyperwave::oracle {

namespace {

constexpr double kRescaleLimit = 1e250;

struct Workspace {
    Eigen::ArrayXd xi;
    Eigen::ArrayXd u;
    Eigen::Index match = 0;  // index of the well minimum
};

Workspace make_workspace(const potential::PotentialParams& params, const Grid1D& grid)
{
    if (!(grid.xi_min < 0.0 && grid.xi_max > 0.0))
        throw std::invalid_argument("Grid1D: require xi_min < 0 < xi_max");
    if (!(grid.h > 0.0))
        throw std::invalid_argument("Grid1D: require h > 0");

    Workspace w;
    const Eigen::Index n = Eigen::Index(std::round((grid.xi_max - grid.xi_min) / grid.h)) + 1;
    if (n < 16)
        throw std::invalid_argument("Grid1D: box too small");
    w.xi = Eigen::ArrayXd::LinSpaced(n, grid.xi_min, grid.xi_min + grid.h * double(n - 1));
    w.u.resize(n);
    for (Eigen::Index i = 0; i < n; ++i)
        w.u(i) = potential::evaluate_xi(params.strength, params.gamma, w.xi(i));
    Eigen::Index im = 0;
    w.u.minCoeff(&im);
    w.match = std::clamp<Eigen::Index>(im, 2, n - 3);
    return w;
}

void check_bound_preconditions(const Workspace& w, const Grid1D& grid, double eps_floor)
{
    const Eigen::Index n = w.xi.size();
    if (std::abs(w.u(0)) >= 1e-12 || std::abs(w.u(n - 1)) >= 1e-12)
        throw std::invalid_argument(
            "numerov_bound_states: potential not negligible at the box ends (|U| >= 1e-12); widen the grid");
    const double fmax = (w.u - eps_floor).abs().maxCoeff();
    if (grid.h * grid.h * fmax >= 0.01)
        throw std::invalid_argument("numerov_bound_states: step too coarse, h^2 max|U - eps| = " +
                                    std::to_string(grid.h * grid.h * fmax) + " >= 0.01");
}

/// Lattice decay rate of the Numerov scheme for constant f = mu^2:
/// cosh(mu~ h) = (1 + 5 h^2 f / 12) / (1 - h^2 f / 12).
double lattice_mu(double mu, double h)
{
    const double f = mu * mu;
    const double r = (1.0 + 5.0 * h * h * f / 12.0) / (1.0 - h * h * f / 12.0);
    return std::acosh(std::max(1.0, r)) / h;
}

/// Lattice wavenumber for constant f = -k^2: cos(k~ h) = same ratio.
double lattice_k(double k, double h)
{
    const double f = -k * k;
    const double r = (1.0 + 5.0 * h * h * f / 12.0) / (1.0 - h * h * f / 12.0);
    if (!(r > -1.0 && r < 1.0))
        throw std::invalid_argument("transmission_reflection: h too coarse for this energy (k h too large)");
    return std::acos(r) / h;
}

/// Two-sided Numerov sweep at energy eps. Fills psi_l on [0, match+1] and
/// psi_r on [match-1, n-1] (each rescaled independently when large), and
/// returns the log-derivative mismatch Wronskian at the match point.
struct MatchResult {
    double wronskian = 0.0;
    double scale_l = 1.0;  // value of psi_l at match
    double scale_r = 1.0;
};

MatchResult numerov_match(const Workspace& w, double h, double eps, Eigen::ArrayXd* left = nullptr,
                          Eigen::ArrayXd* right = nullptr)
{
    const Eigen::Index n = w.xi.size();
    const Eigen::Index im = w.match;
    const double mu = std::sqrt(-eps);
    const double mut = lattice_mu(mu, h);
    const double w12 = h * h / 12.0;

    auto f = [&](Eigen::Index i) { return w.u(i) - eps; };

    Eigen::ArrayXd pl(im + 2);
    pl(0) = 1.0;  // e^{+mu~ (xi - xi_min)} seed, scaled to 1 at the end
    pl(1) = std::exp(mut * h);
    for (Eigen::Index i = 1; i <= im; ++i) {
        pl(i + 1) = (2.0 * (1.0 + 5.0 * w12 * f(i)) * pl(i) - (1.0 - w12 * f(i - 1)) * pl(i - 1)) /
                    (1.0 - w12 * f(i + 1));
        if (std::abs(pl(i + 1)) > kRescaleLimit)
            pl.head(i + 2) *= 1.0 / kRescaleLimit;
    }

    Eigen::ArrayXd pr(n);  // only [im-1, n-1] is meaningful
    pr(n - 1) = 1.0;
    pr(n - 2) = std::exp(mut * h);  // decaying toward +inf
    for (Eigen::Index i = n - 2; i >= im; --i) {
        pr(i - 1) = (2.0 * (1.0 + 5.0 * w12 * f(i)) * pr(i) - (1.0 - w12 * f(i + 1)) * pr(i + 1)) /
                    (1.0 - w12 * f(i - 1));
        if (std::abs(pr(i - 1)) > kRescaleLimit)
            pr.tail(n - i + 1) *= 1.0 / kRescaleLimit;
    }

    const double dl = (pl(im + 1) - pl(im - 1)) / (2.0 * h);
    const double dr = (pr(im + 1) - pr(im - 1)) / (2.0 * h);
    MatchResult m;
    m.scale_l = pl(im);
    m.scale_r = pr(im);
    m.wronskian = (dl * pr(im) - dr * pl(im)) / (std::abs(pl(im) * pr(im)) + 1e-300);
    if (left)
        *left = std::move(pl);
    if (right)
        *right = std::move(pr);
    return m;
}

int count_nodes(const Eigen::ArrayXd& psi)
{
    const double floor_mag = 1e-9 * psi.abs().maxCoeff();
    int nodes = 0;
    double last = 0.0;
    for (Eigen::Index i = 0; i < psi.size(); ++i) {
        const double v = psi(i);
        if (std::abs(v) <= floor_mag)
            continue;
        if (last != 0.0 && v * last < 0.0)
            ++nodes;
        last = v;
    }
    return nodes;
}

Eigen::ArrayXd assemble_eigenfunction(const Workspace& w, double h, double eps)
{
    Eigen::ArrayXd pl, pr;
    numerov_match(w, h, eps, &pl, &pr);
    const Eigen::Index n = w.xi.size();
    const Eigen::Index im = w.match;

    Eigen::ArrayXd psi(n);
    const double ratio = pl(im) / pr(im);
    psi.head(im + 1) = pl.head(im + 1);
    for (Eigen::Index i = im + 1; i < n; ++i)
        psi(i) = pr(i) * ratio;

    double norm2 = 0.0;  // trapezoid, measure dxi
    for (Eigen::Index i = 0; i < n; ++i)
        norm2 += psi(i) * psi(i) * (i == 0 || i == n - 1 ? 0.5 : 1.0);
    norm2 *= h;
    psi /= std::sqrt(norm2);
    Eigen::Index peak = 0;
    psi.abs().maxCoeff(&peak);
    if (psi(peak) < 0.0)
        psi = -psi;
    return psi;
}

}  // namespace

Grid1D default_grid(double mu_expected, double h)
{
    Grid1D g;
    const double half = std::max(25.0, 40.0 / std::max(mu_expected, 1e-3));
    g.xi_min = -half;
    g.xi_max = half;
    g.h = h;
    return g;
}

std::vector<BoundLevel> numerov_bound_states(const potential::PotentialParams& params, int max_states,
                                             const Grid1D& grid)
{
    params.validate();
    if (max_states < 1)
        throw std::invalid_argument("numerov_bound_states: max_states must be >= 1");

    std::vector<BoundLevel> out;
    const double floor = potential::dimensionless_minimum(params.strength, params.gamma);
    if (!(floor < 0.0))
        return out;  // nowhere negative: free or pure barrier

    const Workspace w = make_workspace(params, grid);
    check_bound_preconditions(w, grid, floor);

    // log-spaced |eps| scan; matching Wronskian changes sign at each level
    const double top = std::log(-floor * (1.0 - 1e-12));
    const double bot = std::log(1e-11);
    const int per_decade = 16;
    const int n_grid = std::max(24, int(std::ceil((top - bot) / std::log(10.0))) * per_decade);
    std::vector<double> eg(n_grid), wg(n_grid);
    for (int i = 0; i < n_grid; ++i)
        eg[i] = -std::exp(top + (bot - top) * double(i) / double(n_grid - 1));
    parallel::parallel_for(std::size_t(n_grid),
                           [&](std::size_t i) { wg[i] = numerov_match(w, grid.h, eg[i]).wronskian; });

    std::vector<double> roots;
    for (int i = 0; i + 1 < n_grid; ++i) {
        if (!std::isfinite(wg[i]) || !std::isfinite(wg[i + 1]))
            continue;
        if (wg[i] == 0.0) {
            roots.push_back(eg[i]);
            continue;
        }
        if (wg[i] * wg[i + 1] < 0.0) {
            double lo = eg[i], hi = eg[i + 1], wlo = wg[i];
            while (hi - lo > 1e-9) {
                const double mid = 0.5 * (lo + hi);
                const double wm = numerov_match(w, grid.h, mid).wronskian;
                if (wlo * wm <= 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                    wlo = wm;
                }
            }
            const double root = 0.5 * (lo + hi);
            // the mismatch has poles between eigenvalues; a sign change that
            // bisects to a huge |W| is a pole, not a root
            const double w_root = std::abs(numerov_match(w, grid.h, root).wronskian);
            if (w_root <= std::max(1.0, std::min(std::abs(wg[i]), std::abs(wg[i + 1]))))
                roots.push_back(root);
        }
    }
    std::sort(roots.begin(), roots.end());

    for (std::size_t k = 0; k < roots.size() && int(k) < max_states; ++k) {
        const Eigen::ArrayXd psi = assemble_eigenfunction(w, grid.h, roots[k]);
        const int nodes = count_nodes(psi);
        if (nodes != int(k))
            throw std::runtime_error("numerov_bound_states: node count " + std::to_string(nodes) +
                                     " does not match state index " + std::to_string(k) +
                                     " (scan too coarse or grid too small)");
        out.push_back({roots[k], nodes});
    }
    return out;
}

NumerovSolution numerov_eigenfunction(const potential::PotentialParams& params, double epsilon,
                                      const Grid1D& grid)
{
    params.validate();
    if (!(epsilon < 0.0))
        throw std::invalid_argument("numerov_eigenfunction: epsilon must be < 0");
    const Workspace w = make_workspace(params, grid);
    check_bound_preconditions(w, grid, epsilon);
    NumerovSolution sol;
    sol.xi = w.xi;
    sol.psi = assemble_eigenfunction(w, grid.h, epsilon);
    sol.nodes = count_nodes(sol.psi);
    return sol;
}

std::vector<ScatterPoint> transmission_reflection(const potential::PotentialParams& params,
                                                  const Eigen::ArrayXd& eps_grid, const Grid1D& grid)
{
    params.validate();
    for (Eigen::Index i = 0; i < eps_grid.size(); ++i)
        if (!(eps_grid(i) > 0.0))
            throw std::invalid_argument("transmission_reflection: all energies must be > 0");

    const Workspace w = make_workspace(params, grid);
    const Eigen::Index n = w.xi.size();
    if (std::abs(w.u(0)) >= 1e-12 || std::abs(w.u(n - 1)) >= 1e-12)
        throw std::invalid_argument(
            "transmission_reflection: potential not negligible at the box ends; widen the grid");

    std::vector<ScatterPoint> out(std::size_t(eps_grid.size()));
    const double h = grid.h;
    const double w12 = h * h / 12.0;

    parallel::parallel_for(std::size_t(eps_grid.size()), [&](std::size_t j) {
        const double eps = eps_grid(Eigen::Index(j));
        const double k = std::sqrt(eps);
        const double kt = lattice_k(k, h);
        const std::complex<double> iu(0.0, 1.0);

        // transmitted wave t = 1 on the right, integrated backward
        std::complex<double> p2 = std::exp(iu * (kt * w.xi(n - 1)));
        std::complex<double> p1 = std::exp(iu * (kt * w.xi(n - 2)));
        auto f = [&](Eigen::Index i) { return w.u(i) - eps; };
        for (Eigen::Index i = n - 2; i >= 1; --i) {
            const std::complex<double> p0 =
                (2.0 * (1.0 + 5.0 * w12 * f(i)) * p1 - (1.0 - w12 * f(i + 1)) * p2) / (1.0 - w12 * f(i - 1));
            p2 = p1;
            p1 = p0;
        }
        // now p1 = psi(0), p2 = psi(1): decompose exactly in lattice waves
        const std::complex<double> z = std::exp(iu * (kt * h));
        const std::complex<double> denom = z - 1.0 / z;
        const std::complex<double> a_wave =
            (p2 - p1 / z) / denom * std::exp(-iu * (kt * w.xi(0)));  // incident
        const std::complex<double> b_wave =
            (p1 * z - p2) / denom * std::exp(iu * (kt * w.xi(0)));  // reflected

        ScatterPoint pt;
        pt.epsilon = eps;
        pt.t2 = 1.0 / std::norm(a_wave);
        pt.r2 = std::norm(b_wave) / std::norm(a_wave);
        out[j] = pt;
    });
    return out;
}

CpGammaReport cpgamma_verify(const potential::PotentialParams& params, double tol)
{
    params.validate();
    potential::PotentialParams mirror = params;
    mirror.strength = -params.strength;
    mirror.gamma = -params.gamma;

    CpGammaReport rep;
    const Eigen::Index trunc = 2000;
    const auto es1 = spectra::energy_spectrum(params.strength, params.gamma,
                                              std::numeric_limits<double>::quiet_NaN(), trunc);
    const auto es2 = spectra::energy_spectrum(mirror.strength, mirror.gamma,
                                              std::numeric_limits<double>::quiet_NaN(), trunc);
    rep.energies = es1.energies;
    rep.energies_mirror = es2.energies;

    const double mu_shallow =
        es1.energies.empty() ? 1.0 : std::sqrt(-es1.energies.back());
    const Grid1D grid = default_grid(std::max(mu_shallow, 0.05));
    const auto nv1 = numerov_bound_states(params, 64, grid);
    const auto nv2 = numerov_bound_states(mirror, 64, grid);
    for (const auto& lvl : nv1)
        rep.energies_oracle.push_back(lvl.epsilon);

    rep.counts_match = es1.energies.size() == es2.energies.size() &&
                       es1.energies.size() == nv1.size() && nv1.size() == nv2.size();

    // CP-pair discrepancy as seen by each engine independently
    double de = 0.0;
    const std::size_t n_pairs = std::min(es1.energies.size(), es2.energies.size());
    for (std::size_t i = 0; i < n_pairs; ++i)
        de = std::max(de, std::abs(es1.energies[i] - es2.energies[i]));
    for (std::size_t i = 0; i < std::min(nv1.size(), nv2.size()); ++i)
        de = std::max(de, std::abs(nv1[i].epsilon - nv2[i].epsilon));
    rep.max_energy_diff = de;

    // mirrored normalized wavefunctions on a standard grid
    double dpsi = 0.0;
    const Eigen::ArrayXd xg = Eigen::ArrayXd::LinSpaced(481, -12.0, 12.0);
    for (std::size_t i = 0; i < n_pairs; ++i) {
        const auto ws1 = boundstate::make_bound_state(params, es1.energies[i]);
        const auto ws2 = boundstate::make_bound_state(mirror, es2.energies[i]);
        double d_plus = 0.0, d_minus = 0.0;
        for (Eigen::Index g = 0; g < xg.size(); ++g) {
            const double a = boundstate::evaluate_wavefunction(ws1, xg(g));
            const double b = boundstate::evaluate_wavefunction(ws2, -xg(g));
            d_plus = std::max(d_plus, std::abs(b - a));
            d_minus = std::max(d_minus, std::abs(b + a));
        }
        dpsi = std::max(dpsi, std::min(d_plus, d_minus));
    }
    rep.max_wavefunction_diff = dpsi;

    (void)tol;
    return rep;
}

}  // namespace hyperwave::oracle
