// SPDX-License-Identifier: Apache-2.0
#ifndef SICB_HARNESS_HPP
#define SICB_HARNESS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sicb/optimize.hpp"
#include "sicb/scenario.hpp"

namespace sicb {

enum class Method { fp_ss, fp_css, joint, mvdr_cm_hq, eff_mvdr, es_rx, es_tx };

const std::string& method_name(Method m);
Method method_from_name(const std::string& name); ///< throws ValidationError on unknown names

struct SweepRow {
    double theta_deg = 0.0;
    std::string method;
    double sinr_db = 0.0;
    int iterations = 0;
    double flops = 0.0;
    bool feasible = true;
};

struct HarnessOptions {
    int threads = 0; ///< 0 = hardware concurrency
    std::uint64_t enumeration_cap = kDefaultEnumerationCap;
    FpOptions fp = {};
    JointOptions joint = {};
};

/// Sensing-direction sweep over the scenario's sweep spec. Solver failures
/// are recorded as infeasible rows with NaN SINR; the run continues.
std::vector<SweepRow> run_sweep(const Scenario& s, const std::vector<Method>& methods,
                                const HarnessOptions& opt = {});

struct CdfSample {
    double theta_deg = 0.0;
    double comm_dir_deg = 0.0;
    double c = 0.0;
    std::string method;
    double sinr_db = 0.0;
    int iterations = 0;
    double flops = 0.0;
    bool feasible = true;
};

struct CdfTable {
    std::vector<CdfSample> samples;
    /// per-method achieved SINRs sorted ascending; CDF value of entry i is (i+1)/n
    std::map<std::string, std::vector<double>> pooled;
};

struct CdfSpec {
    double start_deg = -85.0;
    double stop_deg = 85.0;
    double step_deg = 3.0;
};

/// Pooled empirical CDF over all (sensing direction, comm direction, c)
/// combinations; per-combination samples are retained alongside.
CdfTable run_cdf(const Scenario& s, const std::vector<double>& comm_dirs_deg,
                 const std::vector<double>& c_values, const std::vector<Method>& methods,
                 const HarnessOptions& opt = {}, const CdfSpec& spec = {});

struct FlopReportRow {
    std::string method;
    double measured_flops = 0.0;
    double es_flops = 0.0;       ///< normalizer (measured or extrapolated)
    double ratio = 0.0;
    bool es_extrapolated = false;
    double reference_ratio = 0.0; ///< published reference value for presets, 0 otherwise
};

/// FLOP comparison of the iterative solvers against the matching exhaustive
/// searches, aggregated over probe directions (default {-60,-30,0,30,60} deg).
std::vector<FlopReportRow> flop_report(const Scenario& s,
                                       const std::vector<double>& probe_dirs_deg = {},
                                       const HarnessOptions& opt = {});

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

void emit_csv(const std::vector<SweepRow>& rows, const std::string& path);
std::vector<SweepRow> parse_csv(const std::string& path);
void emit_plot_script(const std::string& csv_path, const std::string& script_path);

void emit_cdf_samples(const CdfTable& t, const std::string& path);
void emit_cdf_pooled(const CdfTable& t, const std::string& path);

} // namespace sicb

#endif
