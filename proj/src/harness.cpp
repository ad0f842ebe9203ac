// SPDX-License-Identifier: Apache-2.0
#include "sicb/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>

namespace sicb {

namespace {

constexpr double kDegToRad = M_PI / 180.0;

const std::vector<std::pair<Method, const char*>> kMethodNames = {
    {Method::fp_ss, "fp-ss"},         {Method::fp_css, "fp-css"},
    {Method::joint, "joint"},         {Method::mvdr_cm_hq, "mvdr-cm-hq"},
    {Method::eff_mvdr, "eff-mvdr"},   {Method::es_rx, "es-rx"},
    {Method::es_tx, "es-tx"},
};

} // namespace

const std::string& method_name(Method m) {
    static const std::map<Method, std::string> names = [] {
        std::map<Method, std::string> out;
        for (const auto& [k, v] : kMethodNames) out[k] = v;
        return out;
    }();
    return names.at(m);
}

Method method_from_name(const std::string& name) {
    for (const auto& [k, v] : kMethodNames)
        if (name == v) return k;
    throw ValidationError("unknown method name: " + name);
}

namespace {

struct DirectionContext {
    const Scenario* s = nullptr;
    PhaseGrid grid;
    arma::cx_mat h_si;
    double alpha = 0.0;
    double theta_c = 0.0;
    double c = 0.0;
    CommConstraint cc;
    Codeword v0; ///< quantized steering toward the communication direction
};

DirectionContext make_context(const Scenario& s, double comm_dir_deg, double c) {
    DirectionContext ctx;
    ctx.s = &s;
    ctx.grid = s.grid();
    ctx.h_si = si_channel(s.geometry, s.radio);
    ctx.alpha = worst_case_path_gain(s.target, s.radio);
    ctx.theta_c = comm_dir_deg * kDegToRad;
    ctx.c = c;
    ctx.cc = build_comm_constraint(ctx.theta_c, c, s.tx_count(), ctx.grid);
    ctx.v0 = quantize_to_codeword(steering(ctx.theta_c, s.tx_count()), ctx.grid);
    return ctx;
}

SweepRow solve_one(const DirectionContext& ctx, double theta_deg, Method m,
                   const HarnessOptions& opt) {
    const Scenario& s = *ctx.s;
    const double theta = theta_deg * kDegToRad;
    SweepRow row;
    row.theta_deg = theta_deg;
    row.method = method_name(m);

    SearchStats stats;
    try {
        switch (m) {
            case Method::fp_ss: {
                const RxSubproblem p = build_rx(theta, ctx.v0, ctx.h_si, s.radio, ctx.grid);
                const Codeword w0 = quantize_to_codeword(steering(theta, s.rx_count()), ctx.grid);
                auto [w, tr] = fp_ss(p, w0, opt.fp, &stats);
                row.sinr_db = sinr_db(w, ctx.v0, ctx.alpha, theta, ctx.h_si, s.radio);
                row.iterations = tr.iterations;
                row.feasible = comm_feasible(to_complex(ctx.v0), ctx.cc);
                break;
            }
            case Method::mvdr_cm_hq: {
                const RxSubproblem p = build_rx(theta, ctx.v0, ctx.h_si, s.radio, ctx.grid);
                const Codeword w = mvdr_cm_hq(p, &stats.flops);
                row.sinr_db = sinr_db(w, ctx.v0, ctx.alpha, theta, ctx.h_si, s.radio);
                row.iterations = 1;
                row.feasible = comm_feasible(to_complex(ctx.v0), ctx.cc);
                break;
            }
            case Method::es_rx: {
                const RxSubproblem p = build_rx(theta, ctx.v0, ctx.h_si, s.radio, ctx.grid);
                const Codeword w = exhaustive(p, opt.enumeration_cap, &stats.flops);
                row.sinr_db = sinr_db(w, ctx.v0, ctx.alpha, theta, ctx.h_si, s.radio);
                row.iterations = 1;
                row.feasible = comm_feasible(to_complex(ctx.v0), ctx.cc);
                break;
            }
            case Method::fp_css: {
                const Codeword w0 = quantize_to_codeword(steering(theta, s.rx_count()), ctx.grid);
                const TxSubproblem p = build_tx(theta, w0, ctx.h_si, s.radio, ctx.grid);
                auto [v, tr] = fp_css(p, ctx.cc, ctx.v0, opt.fp, &stats);
                row.sinr_db = sinr_db(w0, v, ctx.alpha, theta, ctx.h_si, s.radio);
                row.iterations = tr.iterations;
                row.feasible = comm_feasible(to_complex(v), ctx.cc);
                break;
            }
            case Method::es_tx: {
                const Codeword w0 = quantize_to_codeword(steering(theta, s.rx_count()), ctx.grid);
                const TxSubproblem p = build_tx(theta, w0, ctx.h_si, s.radio, ctx.grid);
                const Codeword v = exhaustive(p, ctx.cc, opt.enumeration_cap, &stats.flops);
                row.sinr_db = sinr_db(w0, v, ctx.alpha, theta, ctx.h_si, s.radio);
                row.iterations = 1;
                row.feasible = comm_feasible(to_complex(v), ctx.cc);
                break;
            }
            case Method::joint: {
                JointInputs in;
                in.theta = theta;
                in.theta_c = ctx.theta_c;
                in.c = ctx.c;
                in.h_si = ctx.h_si;
                in.radio = s.radio;
                in.grid = ctx.grid;
                in.alpha_theta = ctx.alpha;
                JointOptions jo = opt.joint;
                jo.fp = opt.fp;
                const JointResult res = joint(in, jo, &stats);
                row.sinr_db = res.sinr_db;
                row.iterations = res.outer_rounds;
                row.feasible = comm_feasible(to_complex(res.tx), ctx.cc);
                break;
            }
            case Method::eff_mvdr: {
                const double bound = effective_mvdr_bound(theta, ctx.h_si, s.radio, &stats.flops);
                row.sinr_db = 10.0 * std::log10(ctx.alpha * ctx.alpha * bound);
                row.iterations = 1;
                row.feasible = true;
                break;
            }
        }
    } catch (const Error&) {
        row.sinr_db = std::numeric_limits<double>::quiet_NaN();
        row.iterations = 0;
        row.feasible = false;
    }
    row.flops = stats.flops.total();
    return row;
}

std::vector<double> direction_list(double start, double stop, double step) {
    const int count = static_cast<int>(std::floor((stop - start) / step + 0.5)) + 1;
    std::vector<double> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) out.push_back(start + step * i);
    return out;
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const unsigned want = threads > 0 ? static_cast<unsigned>(threads) : hw;
    const unsigned nt = std::max(1u, std::min<unsigned>(want, n));
    if (nt == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (unsigned t = 0; t < nt; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
        });
    for (auto& th : pool) th.join();
}

} // namespace

std::vector<SweepRow> run_sweep(const Scenario& s, const std::vector<Method>& methods,
                                const HarnessOptions& opt) {
    validate_scenario(s);
    const DirectionContext ctx = make_context(s, s.comm_direction_deg, s.comm_threshold);
    const std::vector<double> dirs =
        direction_list(s.sweep.start_deg, s.sweep.stop_deg, s.sweep.step_deg);

    std::vector<SweepRow> rows(dirs.size() * methods.size());
    parallel_for(rows.size(), opt.threads, [&](std::size_t i) {
        const std::size_t d = i / methods.size();
        const std::size_t m = i % methods.size();
        rows[i] = solve_one(ctx, dirs[d], methods[m], opt);
    });
    std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        if (a.theta_deg != b.theta_deg) return a.theta_deg < b.theta_deg;
        return a.method < b.method;
    });
    return rows;
}

CdfTable run_cdf(const Scenario& s, const std::vector<double>& comm_dirs_deg,
                 const std::vector<double>& c_values, const std::vector<Method>& methods,
                 const HarnessOptions& opt, const CdfSpec& spec) {
    validate_scenario(s);
    if (comm_dirs_deg.empty() || c_values.empty())
        throw ValidationError("run_cdf needs nonempty comm direction and threshold lists");
    const std::vector<double> dirs = direction_list(spec.start_deg, spec.stop_deg, spec.step_deg);

    struct Combo {
        double comm_dir, c;
        DirectionContext ctx;
    };
    std::vector<Combo> combos;
    for (double cd : comm_dirs_deg)
        for (double c : c_values) combos.push_back({cd, c, make_context(s, cd, c)});

    CdfTable table;
    table.samples.resize(combos.size() * dirs.size() * methods.size());
    parallel_for(table.samples.size(), opt.threads, [&](std::size_t i) {
        const std::size_t per_combo = dirs.size() * methods.size();
        const Combo& combo = combos[i / per_combo];
        const std::size_t rem = i % per_combo;
        const double theta_deg = dirs[rem / methods.size()];
        const Method m = methods[rem % methods.size()];
        const SweepRow row = solve_one(combo.ctx, theta_deg, m, opt);
        CdfSample& smp = table.samples[i];
        smp.theta_deg = row.theta_deg;
        smp.comm_dir_deg = combo.comm_dir;
        smp.c = combo.c;
        smp.method = row.method;
        smp.sinr_db = row.sinr_db;
        smp.iterations = row.iterations;
        smp.flops = row.flops;
        smp.feasible = row.feasible;
    });
    std::sort(table.samples.begin(), table.samples.end(),
              [](const CdfSample& a, const CdfSample& b) {
                  if (a.comm_dir_deg != b.comm_dir_deg) return a.comm_dir_deg < b.comm_dir_deg;
                  if (a.c != b.c) return a.c < b.c;
                  if (a.theta_deg != b.theta_deg) return a.theta_deg < b.theta_deg;
                  return a.method < b.method;
              });
    for (const auto& smp : table.samples) table.pooled[smp.method].push_back(smp.sinr_db);
    for (auto& [_, v] : table.pooled) std::sort(v.begin(), v.end());
    return table;
}

std::vector<FlopReportRow> flop_report(const Scenario& s,
                                       const std::vector<double>& probe_dirs_deg,
                                       const HarnessOptions& opt) {
    validate_scenario(s);
    std::vector<double> dirs = probe_dirs_deg;
    if (dirs.empty()) dirs = {-60.0, -30.0, 0.0, 30.0, 60.0};
    const DirectionContext ctx = make_context(s, s.comm_direction_deg, s.comm_threshold);

    double fp_ss_total = 0.0, fp_css_total = 0.0, joint_total = 0.0;
    double es_rx_total = 0.0, es_tx_total = 0.0;
    const std::uint64_t sample = 1u << 14;
    for (double deg : dirs) {
        fp_ss_total += solve_one(ctx, deg, Method::fp_ss, opt).flops;
        fp_css_total += solve_one(ctx, deg, Method::fp_css, opt).flops;
        joint_total += solve_one(ctx, deg, Method::joint, opt).flops;
        const double theta = deg * kDegToRad;
        const RxSubproblem pr = build_rx(theta, ctx.v0, ctx.h_si, s.radio, ctx.grid);
        es_rx_total += exhaustive_flops_estimate(pr.numerator, pr.denominator, ctx.grid,
                                                 nullptr, sample);
        const Codeword w0 = quantize_to_codeword(steering(theta, s.rx_count()), ctx.grid);
        const TxSubproblem pt = build_tx(theta, w0, ctx.h_si, s.radio, ctx.grid);
        es_tx_total += exhaustive_flops_estimate(pt.numerator, pt.denominator, ctx.grid,
                                                 &ctx.cc, sample);
    }
    // joint normalizer: per-candidate cost taken from the constrained TX
    // enumeration, extended over the full (2^b)^(N+M-2) pair space
    const double n_free = static_cast<double>(s.rx_count() + s.tx_count() - 2);
    const double pair_space = std::pow(static_cast<double>(ctx.grid.size), n_free);
    const double tx_space =
        std::pow(static_cast<double>(ctx.grid.size), static_cast<double>(s.tx_count() - 1));
    const double es_joint_total = es_tx_total / tx_space * pair_space;

    const bool rx_extrapolated =
        std::pow(2.0, s.bits * (static_cast<double>(s.rx_count()) - 1)) > static_cast<double>(sample);
    const bool tx_extrapolated =
        std::pow(2.0, s.bits * (static_cast<double>(s.tx_count()) - 1)) > static_cast<double>(sample);

    double ref_joint = 0.0, ref_ss = 0.0, ref_css = 0.0;
    if (s.name == "A") { ref_joint = 1.77e-8; ref_ss = 0.11; ref_css = 0.034; }
    if (s.name == "B") { ref_joint = 1.2e-8; ref_ss = 0.12; ref_css = 0.036; }

    std::vector<FlopReportRow> rows;
    rows.push_back({"fp-ss", fp_ss_total, es_rx_total, fp_ss_total / es_rx_total,
                    rx_extrapolated, ref_ss});
    rows.push_back({"fp-css", fp_css_total, es_tx_total, fp_css_total / es_tx_total,
                    tx_extrapolated, ref_css});
    rows.push_back({"joint", joint_total, es_joint_total, joint_total / es_joint_total, true,
                    ref_joint});
    return rows;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    return buf;
}

void emit_csv(const std::vector<SweepRow>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << "theta_deg,method,sinr_db,iterations,flops,feasible\n";
    for (const auto& r : rows) {
        out << format_double(r.theta_deg) << ',' << r.method << ',' << format_double(r.sinr_db)
            << ',' << r.iterations << ',' << format_double(r.flops) << ','
            << (r.feasible ? "true" : "false") << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

std::vector<SweepRow> parse_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty CSV: " + path);
    if (line != "theta_deg,method,sinr_db,iterations,flops,feasible")
        throw ParseError("unexpected CSV header in " + path + ": " + line);
    std::vector<SweepRow> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        SweepRow r;
        auto next = [&](const char* what) {
            if (!std::getline(ss, field, ','))
                throw ParseError("line " + std::to_string(lineno) + ": missing field " + what);
            return field;
        };
        r.theta_deg = std::strtod(next("theta_deg").c_str(), nullptr);
        r.method = next("method");
        r.sinr_db = std::strtod(next("sinr_db").c_str(), nullptr);
        r.iterations = static_cast<int>(std::strtol(next("iterations").c_str(), nullptr, 10));
        r.flops = std::strtod(next("flops").c_str(), nullptr);
        const std::string f = next("feasible");
        if (f != "true" && f != "false")
            throw ParseError("line " + std::to_string(lineno) + ": bad feasible flag " + f);
        r.feasible = (f == "true");
        rows.push_back(std::move(r));
    }
    return rows;
}

void emit_plot_script(const std::string& csv_path, const std::string& script_path) {
    std::ofstream out(script_path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + script_path);
    out << "# gnuplot script: SINR over sensing directions, one curve per method\n"
        << "set datafile separator ','\n"
        << "set key outside\n"
        << "set xlabel 'sensing direction [deg]'\n"
        << "set ylabel 'SINR [dB]'\n"
        << "set grid\n"
        << "csv = '" << csv_path << "'\n"
        << "methods = 'fp-ss fp-css joint mvdr-cm-hq eff-mvdr es-rx es-tx'\n"
        << "plot for [m in methods] csv using 1:(strcol(2) eq m ? $3 : 1/0) "
           "with linespoints title m\n";
    if (!out) throw IoError("write failed: " + script_path);
}

void emit_cdf_samples(const CdfTable& t, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << "theta_deg,comm_dir_deg,c,method,sinr_db,iterations,flops,feasible\n";
    for (const auto& s : t.samples) {
        out << format_double(s.theta_deg) << ',' << format_double(s.comm_dir_deg) << ','
            << format_double(s.c) << ',' << s.method << ',' << format_double(s.sinr_db) << ','
            << s.iterations << ',' << format_double(s.flops) << ','
            << (s.feasible ? "true" : "false") << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

void emit_cdf_pooled(const CdfTable& t, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << "method,sinr_db,cdf\n";
    for (const auto& [method, values] : t.pooled) {
        const double n = static_cast<double>(values.size());
        for (std::size_t i = 0; i < values.size(); ++i)
            out << method << ',' << format_double(values[i]) << ','
                << format_double(static_cast<double>(i + 1) / n) << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

} // namespace sicb
