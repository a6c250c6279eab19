// vortexsr: angular-momentum-resolved synchrotron emission from Landau
// levels — quantum spectra, classical limits, and canonical/symmetrized
// tensor comparisons.
//
// Exit codes: 0 success, 1 invalid configuration, 2 numerical
// non-convergence, 3 I/O failure.

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "vortexsr/vortexsr.hpp"

namespace {

using namespace vortexsr;
using ordered_json = nlohmann::ordered_json;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Parameter echo, kept in insertion order so output is byte-stable.
struct ParamEcho {
    std::vector<std::pair<std::string, std::string>> kv;
    void add(const std::string& k, const std::string& v) { kv.emplace_back(k, v); }
    void add(const std::string& k, double v) { add(k, fmt17(v)); }
    void add(const std::string& k, long v) { add(k, std::to_string(v)); }

    std::string canonical() const {
        std::string s;
        for (const auto& [k, v] : kv) s += k + "=" + v + "\n";
        return s;
    }
    std::string hash() const { // FNV-1a 64
        std::uint64_t h = 1469598103934665603ull;
        for (const char c : canonical()) {
            h ^= (unsigned char)c;
            h *= 1099511628211ull;
        }
        char buf[20];
        std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
        return buf;
    }
};

struct OutputRow {
    std::vector<std::pair<std::string, std::string>> cols;
};

struct Report {
    ParamEcho params;
    std::vector<std::string> columns;
    std::vector<OutputRow> rows;
    std::vector<std::pair<std::string, std::string>> summary; // trailing '#' block
};

int write_report(const Report& rep, const std::string& path, const std::string& format) {
    std::ostringstream out;
    if (format == "csv") {
        out << "# vortexsr " << version << "\n";
        for (const auto& [k, v] : rep.params.kv) out << "# " << k << "=" << v << "\n";
        out << "# config_hash=" << rep.params.hash() << "\n";
        for (std::size_t i = 0; i < rep.columns.size(); ++i)
            out << (i ? "," : "") << rep.columns[i];
        out << "\n";
        for (const auto& row : rep.rows) {
            for (std::size_t i = 0; i < row.cols.size(); ++i)
                out << (i ? "," : "") << row.cols[i].second;
            out << "\n";
        }
        for (const auto& [k, v] : rep.summary) out << "# " << k << "=" << v << "\n";
    } else {
        ordered_json j;
        j["metadata"]["version"] = version;
        for (const auto& [k, v] : rep.params.kv) j["metadata"]["config"][k] = v;
        j["metadata"]["config_hash"] = rep.params.hash();
        for (const auto& [k, v] : rep.summary) j["metadata"]["diagnostics"][k] = v;
        j["rows"] = ordered_json::array();
        for (const auto& row : rep.rows) {
            ordered_json r;
            for (const auto& [k, v] : row.cols) r[k] = v;
            j["rows"].push_back(std::move(r));
        }
        out << j.dump(2) << "\n";
    }
    if (path.empty() || path == "-") {
        std::cout << out.str();
        return 0;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open output file '" << path << "'\n";
        return 3;
    }
    f << out.str();
    if (!f.flush()) {
        std::cerr << "error: write to '" << path << "' failed\n";
        return 3;
    }
    return 0;
}

std::vector<double> make_theta_grid(int count, const std::vector<double>& explicit_list) {
    if (!explicit_list.empty()) return explicit_list;
    std::vector<double> g;
    g.reserve(count);
    for (int i = 1; i <= count; ++i) g.push_back(pi * i / (count + 1.0));
    return g;
}

const char* pol_name(Polarization p) { return p == Polarization::Plus ? "+" : "-"; }

// ---------------------------------------------------------------- commands

struct CommonOut {
    std::string output;
    std::string format = "csv";
};

void add_output_opts(CLI::App* cmd, CommonOut& o) {
    cmd->add_option("--output,-o", o.output, "Output file (default stdout)");
    cmd->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
}

int run_quantum_spectrum(const FieldConfig& cfg, const ElectronState& st,
                         const SpectrumOptions& opts, const std::string& pol_filter,
                         const CommonOut& out) {
    const auto spec = spectrum_table(st, cfg, opts);
    Report rep;
    rep.params.add("mode", "quantum-spectrum");
    rep.params.add("b", cfg.b);
    rep.params.add("n", st.n);
    rep.params.add("s", st.s);
    rep.params.add("kz", st.kz);
    rep.params.add("zeta", (long)st.zeta);
    rep.params.add("spin_mode",
                   opts.spin_mode == SpinMode::AverageInitial ? "average" : "fixed");
    rep.params.add("tol", opts.tol);
    rep.params.add("include_poles", opts.include_poles ? "true" : "false");
    rep.params.add("polarization", pol_filter);
    rep.columns = {"theta", "nu", "polarization", "emission_density",
                   "L_flux_density", "power_density", "flags"};
    for (const auto& r : spec.rows) {
        if (pol_filter != "both" && pol_filter != pol_name(r.pol)) continue;
        OutputRow row;
        row.cols = {{"theta", fmt17(r.theta)},
                    {"nu", std::to_string(r.nu)},
                    {"polarization", pol_name(r.pol)},
                    {"emission_density", fmt17(r.emission_density)},
                    {"L_flux_density", fmt17(r.L_flux_density)},
                    {"power_density", fmt17(r.power_density)},
                    {"flags", r.forbidden ? "forbidden" : (r.pole ? "pole" : "ok")}};
        rep.rows.push_back(std::move(row));
    }
    rep.summary.emplace_back("rows", std::to_string(rep.rows.size()));
    return write_report(rep, out.output, out.format);
}

int run_classical_spectrum(double beta_perp, double beta_par, double omega0, long nu_max,
                           const std::vector<double>& grid, const CommonOut& out) {
    Report rep;
    rep.params.add("mode", "classical-spectrum");
    rep.params.add("beta_perp", beta_perp);
    rep.params.add("beta_par", beta_par);
    rep.params.add("omega0", omega0);
    rep.params.add("nu_max", nu_max);
    rep.columns = {"theta", "nu", "polarization", "emission_density",
                   "L_flux_density", "power_density", "flags"};
    for (const double th : grid) {
        for (long nu = 1; nu <= nu_max; ++nu) {
            const ClassicalParams p{beta_perp, beta_par, omega0, nu, th};
            for (const auto pol : {Polarization::Plus, Polarization::Minus}) {
                const double L = limit_flux_integrand(p, pol);
                OutputRow row;
                row.cols = {{"theta", fmt17(th)},
                            {"nu", std::to_string(nu)},
                            {"polarization", pol_name(pol)},
                            {"emission_density", fmt17(L / nu)},  // photons carry nu
                            {"L_flux_density", fmt17(L)},
                            {"power_density", fmt17(omega0 * L)}, // energy nu*omega0
                            {"flags", "ok"}};
                rep.rows.push_back(std::move(row));
            }
        }
    }
    return write_report(rep, out.output, out.format);
}

int run_compare_limits(long n, double beta_perp, long nu_max, const std::vector<double>& grid,
                       double tol, const CommonOut& out) {
    // b tuned so the Landau state at (n, kz = 0) has the requested beta_perp
    const double b = beta_perp * beta_perp / (2.0 * n * (1.0 - beta_perp * beta_perp));
    const FieldConfig cfg{b};
    const ElectronState st{n, 0, 0.0, 1};
    const double omega0 = b / energy(st, cfg);

    Report rep;
    rep.params.add("mode", "compare-limits");
    rep.params.add("n", n);
    rep.params.add("beta_perp", beta_perp);
    rep.params.add("b", b);
    rep.params.add("omega0", omega0);
    rep.params.add("nu_max", nu_max);
    rep.params.add("tol", tol);
    rep.columns = {"theta", "nu", "polarization", "quantum_density",
                   "classical_density", "rel_deviation", "flags"};
    double worst = 0.0;
    for (const double th : grid) {
        for (long nu = 1; nu <= nu_max; ++nu) {
            const auto d = harmonic_density(st, nu, th, cfg, SpinMode::AverageInitial, tol);
            ClassicalParams p{beta_perp, 0.0, omega0, nu, th};
            for (const auto pol : {Polarization::Plus, Polarization::Minus}) {
                const double q = pol == Polarization::Plus ? d.L_plus : d.L_minus;
                const double c = limit_flux_integrand(p, pol);
                const double dev = c != 0.0 ? std::fabs(q - c) / std::fabs(c)
                                            : std::fabs(q);
                worst = std::max(worst, dev);
                OutputRow row;
                row.cols = {{"theta", fmt17(th)},
                            {"nu", std::to_string(nu)},
                            {"polarization", pol_name(pol)},
                            {"quantum_density", fmt17(q)},
                            {"classical_density", fmt17(c)},
                            {"rel_deviation", fmt17(dev)},
                            {"flags", d.forbidden ? "forbidden" : "ok"}};
                rep.rows.push_back(std::move(row));
            }
        }
    }
    rep.summary.emplace_back("max_rel_deviation", fmt17(worst));
    return write_report(rep, out.output, out.format);
}

int run_compare_tensors(double beta, long nu_max, const std::vector<double>& grid,
                        double tol, const CommonOut& out) {
    Report rep;
    rep.params.add("mode", "compare-tensors");
    rep.params.add("beta", beta);
    rep.params.add("nu_max", nu_max);
    rep.params.add("tol", tol);
    rep.columns = {"theta", "nu", "symmetrized_density", "canonical_orbital",
                   "canonical_spin", "flags"};
    for (const double th : grid) {
        for (long nu = 1; nu <= nu_max; ++nu) {
            const ClassicalParams p{beta, 0.0, 1.0, nu, th};
            const auto cd = canonical_densities(p);
            OutputRow row;
            row.cols = {{"theta", fmt17(th)},
                        {"nu", std::to_string(nu)},
                        {"symmetrized_density", fmt17(symmetrized_density(p))},
                        {"canonical_orbital", fmt17(cd.orbital)},
                        {"canonical_spin", fmt17(cd.spin)},
                        {"flags", "ok"}};
            rep.rows.push_back(std::move(row));
        }
    }
    // integrated equality residual per harmonic and total
    double sym_tot = 0.0, can_tot = 0.0, worst = 0.0;
    for (long nu = 1; nu <= nu_max; ++nu) {
        ClassicalParams p{beta, 0.0, 1.0, nu, 0.0};
        const double sym = integrate(
            [&](double th) {
                p.theta = th;
                return 2.0 * pi * std::sin(th) * symmetrized_density(p);
            },
            0.0, pi, tol);
        const double can = integrate(
            [&](double th) {
                p.theta = th;
                return 2.0 * pi * std::sin(th) * canonical_densities(p).total();
            },
            0.0, pi, tol);
        sym_tot += sym;
        can_tot += can;
        const double res = can != 0.0 ? std::fabs(sym - can) / std::fabs(can) : 0.0;
        worst = std::max(worst, res);
        rep.summary.emplace_back("residual_nu_" + std::to_string(nu), fmt17(res));
    }
    const double total_res =
        can_tot != 0.0 ? std::fabs(sym_tot - can_tot) / std::fabs(can_tot) : 0.0;
    rep.summary.emplace_back("max_per_harmonic_residual", fmt17(worst));
    rep.summary.emplace_back("integrated_residual", fmt17(total_res));
    return write_report(rep, out.output, out.format);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"vortexsr: angular momentum of synchrotron radiation from Landau levels"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "INI config file with [subcommand] sections (flags override)");

    // ---- eval -------------------------------------------------------
    auto* eval = app.add_subcommand("eval", "Evaluate a single special function")->configurable();
    eval->require_subcommand(1);
    long e_n = 0, e_s = 0, e_l = 0, e_nu = 0;
    double e_x = 0.0;
    int e_digits = 30;

    auto* ev_lag = eval->add_subcommand("laguerre", "Laguerre function I_{n,s}(x)")->configurable();
    ev_lag->add_option("--n", e_n)->required();
    ev_lag->add_option("--s", e_s)->required();
    ev_lag->add_option("--x", e_x)->required();

    auto* ev_lago = eval->add_subcommand("laguerre-oracle", "Arbitrary-precision I_{n,s}(x)")->configurable();
    ev_lago->add_option("--n", e_n)->required();
    ev_lago->add_option("--s", e_s)->required();
    ev_lago->add_option("--x", e_x)->required();
    ev_lago->add_option("--digits", e_digits);

    auto* ev_gen = eval->add_subcommand("genlaguerre", "Generalized Laguerre Q_s^l(x)")->configurable();
    ev_gen->add_option("--s", e_s)->required();
    ev_gen->add_option("--l", e_l)->required();
    ev_gen->add_option("--x", e_x)->required();

    auto* ev_bes = eval->add_subcommand("bessel", "Bessel J_nu(x)")->configurable();
    ev_bes->add_option("--nu", e_nu)->required();
    ev_bes->add_option("--x", e_x)->required();

    auto* ev_besp = eval->add_subcommand("bessel-prime", "Bessel derivative J'_nu(x)")->configurable();
    ev_besp->add_option("--nu", e_nu)->required();
    ev_besp->add_option("--x", e_x)->required();

    // ---- shared sweep options ----------------------------------------
    double b = 1e-3, kz = 0.0, tol = 1e-10;
    long n = 1, s = 0, nu_max = 0;
    int zeta = 1, theta_count = 64;
    std::vector<double> theta_list;
    bool include_poles = false;
    std::string spin_mode = "average", pol_filter = "both";
    CommonOut out_q, out_c, out_l, out_t;

    auto* qs = app.add_subcommand("quantum-spectrum",
                                  "Angular emission spectrum of one Landau state")->configurable();
    qs->add_option("--b", b, "Field strength H/H_c")->required();
    qs->add_option("--n", n)->required();
    qs->add_option("--s", s);
    qs->add_option("--kz", kz);
    qs->add_option("--zeta", zeta)->check(CLI::IsMember({-1, 1}));
    qs->add_option("--nu-max", nu_max, "Harmonic cutoff (0: auto)");
    qs->add_option("--theta-count", theta_count);
    qs->add_option("--theta-list", theta_list)->delimiter(',');
    qs->add_flag("--include-poles", include_poles);
    qs->add_option("--spin-mode", spin_mode)->check(CLI::IsMember({"average", "fixed"}));
    qs->add_option("--pol", pol_filter)->check(CLI::IsMember({"+", "-", "both"}));
    qs->add_option("--tol", tol);
    add_output_opts(qs, out_q);

    double beta_perp = 0.5, beta_par = 0.0, omega0 = 1.0, beta = 0.5;
    auto* cs = app.add_subcommand("classical-spectrum",
                                  "Classical-limit per-harmonic angular spectrum")->configurable();
    cs->add_option("--beta-perp", beta_perp)->required();
    cs->add_option("--beta-par", beta_par);
    cs->add_option("--omega0", omega0);
    cs->add_option("--nu-max", nu_max, "Harmonic cutoff (default 20)");
    cs->add_option("--theta-count", theta_count);
    cs->add_option("--theta-list", theta_list)->delimiter(',');
    add_output_opts(cs, out_c);

    auto* cl = app.add_subcommand("compare-limits",
                                  "Quantum (large n) vs classical-limit flux densities")->configurable();
    cl->add_option("--n", n, "Principal quantum number")->required();
    cl->add_option("--beta-perp", beta_perp)->required();
    cl->add_option("--nu-max", nu_max, "Harmonic range (default 5)");
    cl->add_option("--theta-count", theta_count);
    cl->add_option("--theta-list", theta_list)->delimiter(',');
    cl->add_option("--tol", tol);
    add_output_opts(cl, out_l);

    auto* ct = app.add_subcommand("compare-tensors",
                                  "Symmetrized vs canonical angular-momentum flux densities")->configurable();
    ct->add_option("--beta", beta)->required();
    ct->add_option("--nu-max", nu_max, "Harmonic range (default 20)");
    ct->add_option("--theta-count", theta_count);
    ct->add_option("--theta-list", theta_list)->delimiter(',');
    ct->add_option("--tol", tol);
    add_output_opts(ct, out_t);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (eval->parsed()) {
            double v = 0.0;
            if (ev_lag->parsed()) v = laguerre_function(e_n, e_s, e_x);
            else if (ev_lago->parsed()) v = laguerre_function_oracle(e_n, e_s, e_x, e_digits);
            else if (ev_gen->parsed()) v = generalized_laguerre(e_s, e_l, e_x);
            else if (ev_bes->parsed()) v = bessel_j(e_nu, e_x);
            else if (ev_besp->parsed()) v = bessel_j_prime(e_nu, e_x);
            std::cout << fmt12(v) << "\n";
            return 0;
        }
        if (qs->parsed()) {
            const FieldConfig cfg{b};
            cfg.validate();
            const ElectronState st{n, s, kz, zeta};
            st.validate();
            SpectrumOptions opts;
            opts.theta_grid = make_theta_grid(theta_count, theta_list);
            opts.include_poles = include_poles;
            opts.harmonic_max = nu_max;
            opts.spin_mode =
                spin_mode == "fixed" ? SpinMode::FixedInitial : SpinMode::AverageInitial;
            opts.tol = tol;
            return run_quantum_spectrum(cfg, st, opts, pol_filter, out_q);
        }
        if (cs->parsed()) {
            ClassicalParams probe{beta_perp, beta_par, omega0, 1, pi / 2};
            probe.validate();
            return run_classical_spectrum(beta_perp, beta_par, omega0,
                                          nu_max > 0 ? nu_max : 20,
                                          make_theta_grid(theta_count, theta_list), out_c);
        }
        if (cl->parsed()) {
            if (n < 1 || !(beta_perp > 0.0 && beta_perp < 1.0)) {
                std::cerr << "error: compare-limits requires n >= 1 and 0 < beta_perp < 1\n";
                return 1;
            }
            return run_compare_limits(n, beta_perp, nu_max > 0 ? nu_max : 5,
                                      make_theta_grid(theta_count, theta_list), tol, out_l);
        }
        if (ct->parsed()) {
            ClassicalParams probe{beta, 0.0, 1.0, 1, pi / 2};
            probe.validate();
            return run_compare_tensors(beta, nu_max > 0 ? nu_max : 20,
                                       make_theta_grid(theta_count, theta_list), tol, out_t);
        }
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
