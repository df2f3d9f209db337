#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "hyperwave/boundstate.hpp"
#include "hyperwave/format.hpp"
#include "hyperwave/oracle.hpp"
#include "hyperwave/potential.hpp"
#include "hyperwave/spectra.hpp"
#include "hyperwave/waveop.hpp"

namespace {

using hyperwave::format::sig12;
using json = nlohmann::json;

/// A rectangular table: fixed column names, one string per cell. CSV and
/// JSON emit the same 12-significant-digit values.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::initializer_list<std::string> cells) { rows.emplace_back(cells); }
};

void write_csv(std::ostream& os, const Table& t)
{
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        os << t.columns[c] << (c + 1 < t.columns.size() ? "," : "\n");
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            os << row[c] << (c + 1 < row.size() ? "," : "\n");
    }
}

void write_json(std::ostream& os, const Table& t)
{
    json arr = json::array();
    for (const auto& row : t.rows) {
        json obj;
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            // cells hold sig12 strings; counts and labels stay as-is
            try {
                std::size_t used = 0;
                const double v = std::stod(row[c], &used);
                if (used == row[c].size()) {
                    obj[t.columns[c]] = v;
                    continue;
                }
            } catch (const std::exception&) {
            }
            obj[t.columns[c]] = row[c];
        }
        arr.push_back(obj);
    }
    os << arr.dump(2) << "\n";
}

void emit(const Table& t, const std::string& fmt, const std::string& out_path)
{
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file)
            throw std::invalid_argument("cannot open output file: " + out_path);
        os = &file;
    }
    if (fmt == "json")
        write_json(*os, t);
    else
        write_csv(*os, t);
}

void emit_json_object(const json& obj, const std::string& out_path)
{
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file)
            throw std::invalid_argument("cannot open output file: " + out_path);
        os = &file;
    }
    *os << obj.dump(2) << "\n";
}

hyperwave::waveop::Branch parse_branch(const std::string& name)
{
    if (name == "plus")
        return hyperwave::waveop::Branch::Plus;
    if (name == "minus")
        return hyperwave::waveop::Branch::Minus;
    throw std::invalid_argument("--branch must be 'plus' or 'minus'");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{
        "hyperwave: tridiagonal-representation toolkit for the hyperbolic single-wave potential\n"
        "U(x) = C (tanh(lambda x) + gamma) / cosh^2(lambda x), in units of E0 = (lambda hbar)^2/2m"};
    app.require_subcommand(1);

    // shared knobs
    double gamma = 0.0, strength = 0.0, lambda = 1.0, delta = 1e-7, tol = 1e-8;
    long trunc = 4000;
    std::string fmt = "csv", out_path, branch_name;
    std::vector<double> range;
    long count = 200;

    auto add_common = [&](CLI::App* sub, bool needs_strength) {
        sub->add_option("--gamma", gamma, "shape parameter gamma")->required();
        if (needs_strength)
            sub->add_option("--strength", strength, "dimensionless strength C")->required();
        sub->add_option("--lambda", lambda, "length-scale parameter lambda (I/O rescaling only)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--N", trunc, "matrix truncation")->check(CLI::PositiveNumber);
        sub->add_option("--delta", delta, "mu-regularization for the zero-energy limit")
            ->check(CLI::PositiveNumber);
        sub->add_option("--tol", tol, "convergence tolerance knob");
        sub->add_option("--format", fmt, "output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", out_path, "output file (stdout when omitted)");
    };

    // ---- potential ----
    auto* sc_pot = app.add_subcommand("potential", "sample U(x) on a uniform grid (CSV: x,U)");
    add_common(sc_pot, true);
    sc_pot->add_option("--range", range, "x range: min max")->expected(2)->required();
    sc_pot->add_option("--count", count, "number of samples")->check(CLI::PositiveNumber);
    sc_pot->callback([&] {
        hyperwave::potential::PotentialParams p{strength, gamma, lambda};
        const auto table = hyperwave::potential::sample_grid(p, range[0], range[1], count);
        Table t;
        t.columns = {"x", "U"};
        for (Eigen::Index i = 0; i < table.x.size(); ++i)
            t.add_row({sig12(table.x(i)), sig12(table.u(i))});
        emit(t, fmt, out_path);
    });

    // ---- pspec ----
    double eps = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> eps_window;
    long eps_count = 0;
    std::string dump_tridiag;
    auto* sc_pspec = app.add_subcommand(
        "pspec", "potential-parameter spectrum at fixed energy (CSV: epsilon,gamma,k,C; k is the "
                 "per-sign-side branch index; converged values only)");
    add_common(sc_pspec, false);
    sc_pspec->add_option("--eps", eps, "dimensionless energy < 0");
    sc_pspec->add_option("--eps-min", eps_window, "log-spaced energy window: pass --eps-min A --eps-max B")
        ->expected(1);
    double eps_max_opt = std::numeric_limits<double>::quiet_NaN();
    sc_pspec->add_option("--eps-max", eps_max_opt, "end of the energy window (< 0)");
    sc_pspec->add_option("--eps-count", eps_count, "number of window samples");
    sc_pspec->add_option("--branch", branch_name, "basis branch: plus (default) or minus");
    sc_pspec->add_option("--dump-tridiag", dump_tridiag, "write the T_gamma matrix as JSON for debugging");
    sc_pspec->callback([&] {
        hyperwave::spectra::SpectrumOptions opts;
        opts.branch = branch_name.empty() ? hyperwave::waveop::Branch::Plus : parse_branch(branch_name);
        opts.convergence_rel_tol = tol;

        Table t;
        t.columns = {"epsilon", "gamma", "k", "C"};
        auto add_spectrum_rows = [&](const hyperwave::spectra::ParameterSpectrum& spec) {
            for (int side : {-1, +1}) {
                // converged branch values only, indexed per sign side
                std::size_t k = 0;
                for (const auto& v : spec.side_values(side)) {
                    if (v.converged)
                        t.add_row({sig12(spec.epsilon), sig12(spec.gamma), std::to_string(k), sig12(v.c)});
                    ++k;
                }
            }
        };

        if (!dump_tridiag.empty()) {
            const double mu = std::sqrt(-eps);
            const auto m = hyperwave::waveop::build_t_gamma(gamma, mu, opts.branch, trunc);
            json j;
            j["diag"] = std::vector<double>(m.diag.data(), m.diag.data() + m.diag.size());
            j["off"] = std::vector<double>(m.off.data(), m.off.data() + m.off.size());
            std::ofstream f(dump_tridiag);
            if (!f)
                throw std::invalid_argument("cannot open " + dump_tridiag);
            f << j.dump() << "\n";
        }

        if (eps_count > 0) {
            if (eps_window.empty() || std::isnan(eps_max_opt))
                throw std::invalid_argument("window mode needs --eps-min, --eps-max and --eps-count");
            const double a = eps_window[0], b = eps_max_opt;
            if (!(a < 0.0) || !(b < 0.0))
                throw std::invalid_argument("window energies must be < 0");
            Eigen::ArrayXd grid(eps_count);
            const double la = std::log(-a), lb = std::log(-b);
            for (long i = 0; i < eps_count; ++i)
                grid(i) = -std::exp(la + (lb - la) * double(i) / double(std::max(1L, eps_count - 1)));
            const auto curves = hyperwave::spectra::spectral_map(gamma, grid, trunc, 16, opts);
            for (const auto& curve : curves)
                for (const auto& pt : curve.points)
                    t.add_row({sig12(pt.epsilon), sig12(gamma), std::to_string(curve.k), sig12(pt.c)});
        } else {
            if (std::isnan(eps))
                throw std::invalid_argument("pspec needs --eps (or an --eps-min/--eps-max/--eps-count window)");
            add_spectrum_rows(hyperwave::spectra::parameter_spectrum(eps, gamma, trunc, opts));
        }
        emit(t, fmt, out_path);
    });

    // ---- critical ----
    long n_max = 6;
    auto* sc_crit = app.add_subcommand(
        "critical", "zero-energy critical strengths (CSV: gamma,side,n,C_hat). Default --branch minus "
                    "reproduces the published table convention; --branch plus gives the physical "
                    "bound-state transition strengths");
    add_common(sc_crit, false);
    sc_crit->add_option("--n", n_max, "entries per sign side")->check(CLI::PositiveNumber);
    sc_crit->add_option("--branch", branch_name, "basis branch: minus (default) or plus");
    sc_crit->callback([&] {
        const auto branch =
            branch_name.empty() ? hyperwave::waveop::Branch::Minus : parse_branch(branch_name);
        long n_run = trunc;
        if (sc_crit->count("--N") == 0)
            n_run = 8000;  // table-reproduction default
        const auto crit = hyperwave::spectra::critical_strengths(gamma, int(n_max), n_run, delta, branch);
        Table t;
        t.columns = {"gamma", "side", "n", "C_hat"};
        for (std::size_t n = 0; n < crit.positive.size(); ++n)
            t.add_row({sig12(gamma), "positive", std::to_string(n), sig12(crit.positive[n])});
        for (std::size_t n = 0; n < crit.negative.size(); ++n)
            t.add_row({sig12(gamma), "negative", std::to_string(n), sig12(crit.negative[n])});
        emit(t, fmt, out_path);
    });

    // ---- espec ----
    auto* sc_espec = app.add_subcommand("espec", "bound-state energies for a given potential "
                                                 "(CSV: C,gamma,n,epsilon,mu)");
    add_common(sc_espec, true);
    sc_espec->callback([&] {
        const auto es = hyperwave::spectra::energy_spectrum(strength, gamma,
                                                            std::numeric_limits<double>::quiet_NaN(), trunc);
        Table t;
        t.columns = {"C", "gamma", "n", "epsilon", "mu"};
        for (std::size_t n = 0; n < es.energies.size(); ++n)
            t.add_row({sig12(strength), sig12(gamma), std::to_string(n), sig12(es.energies[n]),
                       sig12(es.mu_values[n])});
        emit(t, fmt, out_path);
    });

    // ---- count ----
    auto* sc_count = app.add_subcommand("count", "bound-state count by the critical-strength bracket rule "
                                                 "(CSV: C,gamma,count)");
    add_common(sc_count, true);
    sc_count->callback([&] {
        const int n = hyperwave::spectra::count_bound_states(strength, gamma, trunc, delta);
        Table t;
        t.columns = {"C", "gamma", "count"};
        t.add_row({sig12(strength), sig12(gamma), std::to_string(n)});
        emit(t, fmt, out_path);
    });

    // ---- wavefunction ----
    long state_index = 0;
    auto* sc_wf = app.add_subcommand("wavefunction", "normalized bound-state wavefunction samples "
                                                     "(CSV: x,psi; JSON sidecar with mu/omega/N_star/residual)");
    add_common(sc_wf, true);
    sc_wf->add_option("--state", state_index, "state index (0 = ground)")->check(CLI::NonNegativeNumber);
    sc_wf->add_option("--range", range, "x range: min max")->expected(2);
    sc_wf->add_option("--count", count, "number of samples")->check(CLI::PositiveNumber);
    sc_wf->callback([&] {
        const auto es = hyperwave::spectra::energy_spectrum(strength, gamma,
                                                            std::numeric_limits<double>::quiet_NaN(), trunc);
        if (state_index >= long(es.energies.size()))
            throw std::invalid_argument("state index " + std::to_string(state_index) + " out of range: only " +
                                        std::to_string(es.energies.size()) + " bound state(s)");
        hyperwave::potential::PotentialParams p{strength, gamma, lambda};
        const double eps_n = es.energies[std::size_t(state_index)];
        auto ws = hyperwave::boundstate::make_bound_state(p, eps_n);
        const double residual = hyperwave::boundstate::hamiltonian_residual(ws, eps_n, p);

        double x_lo = -12.0 / lambda, x_hi = 12.0 / lambda;
        if (!range.empty()) {
            x_lo = range[0];
            x_hi = range[1];
        }
        Table t;
        t.columns = {"x", "psi"};
        for (long i = 0; i < count; ++i) {
            const double x = x_lo + (x_hi - x_lo) * double(i) / double(std::max(1L, count - 1));
            t.add_row({sig12(x), sig12(hyperwave::boundstate::evaluate_wavefunction(ws, x))});
        }
        emit(t, fmt, out_path);

        json meta;
        meta["mu"] = std::stod(sig12(ws.mu));
        meta["omega"] = std::stod(sig12(ws.omega));
        meta["N_star"] = long(ws.coeffs.stable_len);
        meta["residual"] = std::stod(sig12(residual));
        if (out_path.empty()) {
            std::cerr << meta.dump(2) << "\n";
        } else {
            emit_json_object(meta, out_path + ".meta.json");
        }
    });

    // ---- scatter ----
    auto* sc_scatter = app.add_subcommand("scatter", "transmission/reflection on a positive-energy grid "
                                                     "(CSV: epsilon,R2,T2)");
    add_common(sc_scatter, true);
    sc_scatter->add_option("--range", range, "energy range: min max (dimensionless, > 0)")
        ->expected(2)
        ->required();
    sc_scatter->add_option("--count", count, "number of grid points")->check(CLI::PositiveNumber);
    sc_scatter->callback([&] {
        hyperwave::potential::PotentialParams p{strength, gamma, lambda};
        Eigen::ArrayXd grid(count);
        for (long i = 0; i < count; ++i)
            grid(i) = range[0] + (range[1] - range[0]) * double(i) / double(std::max(1L, count - 1));
        const auto pts = hyperwave::oracle::transmission_reflection(p, grid, hyperwave::oracle::Grid1D{});
        Table t;
        t.columns = {"epsilon", "R2", "T2"};
        for (const auto& s : pts)
            t.add_row({sig12(s.epsilon), sig12(s.r2), sig12(s.t2)});
        emit(t, fmt, out_path);
    });

    // ---- verify ----
    auto* sc_verify = app.add_subcommand("verify", "cross-check tridiagonal spectra against the "
                                                   "direct-integration oracle (JSON report)");
    add_common(sc_verify, true);
    sc_verify->callback([&] {
        hyperwave::potential::PotentialParams p{strength, gamma, lambda};
        const auto rep = hyperwave::oracle::cpgamma_verify(p, tol);
        json j;
        j["max_energy_diff"] = rep.max_energy_diff;
        j["max_wavefunction_diff"] = rep.max_wavefunction_diff;
        j["counts_match"] = rep.counts_match;
        emit_json_object(j, out_path);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
