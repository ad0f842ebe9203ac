// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: codeword synthesis for self-interference
// suppression with discrete phase settings.

#include <cstdio>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "sicb/harness.hpp"
#include "sicb/selfcheck.hpp"

namespace {

using namespace sicb;

std::vector<Method> parse_methods(const std::string& csv) {
    std::vector<Method> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(method_from_name(item));
    if (out.empty()) throw ValidationError("empty method list");
    return out;
}

void print_codeword(const char* label, const Codeword& c) {
    std::cout << label << " indices:";
    for (int i : c.indices) std::cout << ' ' << i;
    std::cout << "\n" << label << " phases (rad):";
    for (int i : c.indices) std::cout << ' ' << format_double(c.grid.phase(i));
    std::cout << "\n";
}

int run_solve(const Scenario& s, double theta_deg, const std::vector<Method>& methods,
              const HarnessOptions& opt) {
    const PhaseGrid grid = s.grid();
    const arma::cx_mat h_si = si_channel(s.geometry, s.radio);
    const double alpha = worst_case_path_gain(s.target, s.radio);
    const double theta = theta_deg * M_PI / 180.0;
    const double theta_c = s.comm_direction_deg * M_PI / 180.0;
    const Codeword v0 = quantize_to_codeword(steering(theta_c, s.tx_count()), grid);
    const Codeword w0 = quantize_to_codeword(steering(theta, s.rx_count()), grid);
    const CommConstraint cc = build_comm_constraint(theta_c, s.comm_threshold, s.tx_count(), grid);

    for (Method m : methods) {
        std::cout << "== " << method_name(m) << " @ " << theta_deg << " deg ==\n";
        SearchStats stats;
        switch (m) {
            case Method::fp_ss: {
                auto [w, tr] = fp_ss(build_rx(theta, v0, h_si, s.radio, grid), w0, opt.fp, &stats);
                print_codeword("rx", w);
                std::cout << "rho trace:";
                for (double r : tr.rho_values) std::cout << ' ' << format_double(r);
                std::cout << "\nconverged: " << (tr.converged ? "yes" : "no")
                          << "  iterations: " << tr.iterations << "\nSINR: "
                          << format_double(sinr_db(w, v0, alpha, theta, h_si, s.radio)) << " dB\n";
                break;
            }
            case Method::fp_css: {
                auto [v, tr] =
                    fp_css(build_tx(theta, w0, h_si, s.radio, grid), cc, v0, opt.fp, &stats);
                print_codeword("tx", v);
                std::cout << "rho trace:";
                for (double r : tr.rho_values) std::cout << ' ' << format_double(r);
                std::cout << "\nconverged: " << (tr.converged ? "yes" : "no")
                          << "  iterations: " << tr.iterations << "\nSINR: "
                          << format_double(sinr_db(w0, v, alpha, theta, h_si, s.radio)) << " dB\n";
                break;
            }
            case Method::joint: {
                JointInputs in{theta, theta_c, s.comm_threshold, h_si, s.radio, grid, alpha};
                JointOptions jo = opt.joint;
                jo.fp = opt.fp;
                const JointResult res = joint(in, jo, &stats);
                print_codeword("rx", res.rx);
                print_codeword("tx", res.tx);
                std::cout << "rounds: " << res.outer_rounds << "  per-round SINR (dB):";
                for (double v : res.per_round_sinr_db) std::cout << ' ' << format_double(v);
                std::cout << "\nSINR: " << format_double(res.sinr_db) << " dB\n";
                break;
            }
            case Method::mvdr_cm_hq: {
                const Codeword w = mvdr_cm_hq(build_rx(theta, v0, h_si, s.radio, grid), &stats.flops);
                print_codeword("rx", w);
                std::cout << "SINR: "
                          << format_double(sinr_db(w, v0, alpha, theta, h_si, s.radio)) << " dB\n";
                break;
            }
            case Method::eff_mvdr: {
                const double bound = effective_mvdr_bound(theta, h_si, s.radio, &stats.flops);
                std::cout << "SINR bound: " << format_double(10.0 * std::log10(alpha * alpha * bound))
                          << " dB\n";
                break;
            }
            case Method::es_rx: {
                const Codeword w =
                    exhaustive(build_rx(theta, v0, h_si, s.radio, grid), opt.enumeration_cap, &stats.flops);
                print_codeword("rx", w);
                std::cout << "SINR: "
                          << format_double(sinr_db(w, v0, alpha, theta, h_si, s.radio)) << " dB\n";
                break;
            }
            case Method::es_tx: {
                const Codeword v = exhaustive(build_tx(theta, w0, h_si, s.radio, grid), cc,
                                              opt.enumeration_cap, &stats.flops);
                print_codeword("tx", v);
                std::cout << "SINR: "
                          << format_double(sinr_db(w0, v, alpha, theta, h_si, s.radio)) << " dB\n";
                break;
            }
        }
        std::cout << "FLOPs: " << format_double(stats.flops.total()) << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete RX/TX beamforming codeword synthesis with self-interference suppression"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string scenario_arg = "A";
    std::string methods_arg = "fp-ss,fp-css,joint,mvdr-cm-hq,eff-mvdr";
    std::string out_dir = ".";
    std::uint64_t seed = 42;
    bool tx_first = false, rx_first = false;
    app.add_option("--scenario", scenario_arg, "scenario file path or preset name (A, B)");
    app.add_option("--methods", methods_arg, "comma-separated method list");
    app.add_option("--seed", seed, "seed for randomized checks");
    app.add_option("--out", out_dir, "output directory");
    app.add_flag("--tx-first", tx_first, "joint alternation: only the order fixing TX first");
    app.add_flag("--rx-first", rx_first, "joint alternation: only the order fixing RX first");

    auto* solve_cmd = app.add_subcommand("solve", "solve a single sensing direction");
    double theta_deg = 0.0;
    solve_cmd->add_option("--theta", theta_deg, "sensing direction in degrees")->required();

    auto* sweep_cmd = app.add_subcommand("sweep", "sweep the scenario's sensing directions");
    bool plot = false;
    sweep_cmd->add_flag("--plot", plot, "also emit a gnuplot script");

    auto* cdf_cmd = app.add_subcommand("cdf", "pooled SINR CDF over direction/threshold combinations");
    std::string comm_dirs_arg, c_values_arg;
    cdf_cmd->add_option("--comm-dirs", comm_dirs_arg, "comma-separated comm directions in degrees");
    cdf_cmd->add_option("--c-values", c_values_arg, "comma-separated gain thresholds");

    auto* flops_cmd = app.add_subcommand("flops", "FLOP comparison against exhaustive search");
    auto* check_cmd = app.add_subcommand("check", "run the randomized property suites");
    (void)flops_cmd;
    (void)check_cmd;

    CLI11_PARSE(app, argc, argv);

    try {
        HarnessOptions opt;
        if (tx_first) opt.joint.order = JointOrder::tx_first;
        else if (rx_first) opt.joint.order = JointOrder::rx_first;
        const std::vector<Method> methods = parse_methods(methods_arg);
        std::filesystem::create_directories(out_dir);

        if (app.got_subcommand("check")) {
            return run_self_checks(seed, std::cout) ? 0 : 2;
        }

        const Scenario s = load_scenario(scenario_arg);
        if (app.got_subcommand("solve")) {
            return run_solve(s, theta_deg, methods, opt);
        }
        if (app.got_subcommand("sweep")) {
            const auto rows = run_sweep(s, methods, opt);
            const std::string csv = out_dir + "/sweep_" + s.name + ".csv";
            emit_csv(rows, csv);
            std::cout << "wrote " << csv << " (" << rows.size() << " rows)\n";
            if (plot) {
                const std::string gp = out_dir + "/sweep_" + s.name + ".gp";
                emit_plot_script(csv, gp);
                std::cout << "wrote " << gp << "\n";
            }
            return 0;
        }
        if (app.got_subcommand("cdf")) {
            std::vector<double> comm_dirs, c_values;
            {
                std::stringstream ss(comm_dirs_arg);
                std::string item;
                while (std::getline(ss, item, ','))
                    if (!item.empty()) comm_dirs.push_back(std::stod(item));
                std::stringstream s2(c_values_arg);
                while (std::getline(s2, item, ','))
                    if (!item.empty()) c_values.push_back(std::stod(item));
            }
            if (comm_dirs.empty()) comm_dirs = {30, 40, 50, 60, 70, 80, 90};
            if (c_values.empty())
                c_values = (s.name == "B") ? std::vector<double>{4, 6} : std::vector<double>{2, 3};
            const CdfTable t = run_cdf(s, comm_dirs, c_values, methods, opt);
            const std::string samples = out_dir + "/cdf_samples_" + s.name + ".csv";
            const std::string pooled = out_dir + "/cdf_pooled_" + s.name + ".csv";
            emit_cdf_samples(t, samples);
            emit_cdf_pooled(t, pooled);
            std::cout << "wrote " << samples << " (" << t.samples.size() << " samples)\n"
                      << "wrote " << pooled << "\n";
            return 0;
        }
        if (app.got_subcommand("flops")) {
            const auto rows = flop_report(s, {}, opt);
            std::printf("%-8s %16s %16s %12s %14s %s\n", "method", "measured", "normalizer",
                        "ratio", "reference", "normalizer kind");
            for (const auto& r : rows)
                std::printf("%-8s %16.6g %16.6g %12.4g %14.4g %s\n", r.method.c_str(),
                            r.measured_flops, r.es_flops, r.ratio, r.reference_ratio,
                            r.es_extrapolated ? "extrapolated" : "measured");
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const InvalidBits& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
