// SPDX-License-Identifier: Apache-2.0
#ifndef SICB_OPTIMIZE_HPP
#define SICB_OPTIMIZE_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "sicb/problem.hpp"
#include "sicb/search.hpp"

namespace sicb {

/// Trace of one Dinkelbach run: auxiliary values and iterates, oldest first.
struct FpTrace {
    std::vector<double> rho_values;
    std::vector<Codeword> codewords;
    bool converged = false;
    int iterations = 0;
};

struct FpOptions {
    double eps = 1e-6; ///< stop when |rho(t) - rho(t-1)| < eps * max(|rho(t)|, 1e-300)
    int t_max = 30;
};

/// Dinkelbach outer loop around the sphere search; returns the codeword
/// attaining the discrete maximum of the Rayleigh quotient, with its trace.
/// When t_max is hit, the best iterate so far is returned with
/// converged = false.
std::pair<Codeword, FpTrace> fp_ss(const RxSubproblem& p, const Codeword& w_init,
                                   const FpOptions& opt = {}, SearchStats* stats = nullptr);

/// Dinkelbach outer loop around the constrained sphere search. v_init must
/// satisfy the communication constraint.
std::pair<Codeword, FpTrace> fp_css(const TxSubproblem& p, const CommConstraint& cc,
                                    const Codeword& v_init, const FpOptions& opt = {},
                                    SearchStats* stats = nullptr);

/// One Dinkelbach subproblem: shift C = rho*G - B to positive definite,
/// factor, and search within the radius given by the previous iterate.
/// Exposed for property checks on F(rho).
Codeword dinkelbach_step(const arma::cx_mat& numerator, const arma::cx_mat& denominator,
                         double rho, const Codeword& previous, const PhaseGrid& grid,
                         const CommConstraint* cc = nullptr, SearchStats* stats = nullptr);

/// F(rho) = max over the discrete set of (w^H B w - rho * w^H G w), computed
/// exactly through one shifted sphere search seeded at `probe`.
double dinkelbach_value(const arma::cx_mat& numerator, const arma::cx_mat& denominator,
                        double rho, const Codeword& probe, const PhaseGrid& grid,
                        const CommConstraint* cc = nullptr);

struct JointInputs {
    double theta = 0.0;
    double theta_c = 0.0;
    double c = 0.0;
    arma::cx_mat h_si;
    RadioConfig radio;
    PhaseGrid grid;
    double alpha_theta = 1.0;
};

/// Alternation order. Either side can be optimized first (the other starts
/// from its quantized-steering initialization); best_of_both runs both orders
/// and keeps the higher-SINR trajectory, which guarantees the joint result
/// never falls below either single-sided design.
enum class JointOrder { tx_first, rx_first, best_of_both };

struct JointOptions {
    int max_rounds = 10;
    double tol = 1e-6; ///< relative linear-SINR improvement threshold
    JointOrder order = JointOrder::best_of_both;
    FpOptions fp = {};
};

struct JointResult {
    Codeword rx;
    Codeword tx;
    double sinr_db = 0.0;
    int outer_rounds = 0;
    std::vector<double> per_round_sinr_db;
    std::vector<bool> per_round_tx_feasible; ///< direct re-check after each round
};

/// Alternating RX/TX codebook design: repeatedly re-optimizes one side with
/// the other fixed until the SINR improvement falls below tol.
JointResult joint(const JointInputs& in, const JointOptions& opt = {},
                  SearchStats* stats = nullptr);

/// MVDR solution forced to constant modulus and hard-quantized to the grid.
Codeword mvdr_cm_hq(const RxSubproblem& p, FlopCounter* fc = nullptr);

/// Upper bound on the joint problem from the effective MVDR beamformer over
/// the vectorized pair space; linear scale, same normalization as rayleigh.
double effective_mvdr_bound(double theta, const arma::cx_mat& h_si,
                            const RadioConfig& radio, FlopCounter* fc = nullptr);

inline constexpr std::uint64_t kDefaultEnumerationCap = 1ull << 24;

/// Global argmax of the Rayleigh quotient by full enumeration, optional
/// communication constraint. Ties go to the lexicographically smallest index
/// vector. Throws TooLarge beyond the cap.
Codeword exhaustive(const arma::cx_mat& numerator, const arma::cx_mat& denominator,
                    const PhaseGrid& grid, const CommConstraint* cc = nullptr,
                    std::uint64_t cap = kDefaultEnumerationCap, FlopCounter* fc = nullptr);

Codeword exhaustive(const RxSubproblem& p, std::uint64_t cap = kDefaultEnumerationCap,
                    FlopCounter* fc = nullptr);
Codeword exhaustive(const TxSubproblem& p, const CommConstraint& cc,
                    std::uint64_t cap = kDefaultEnumerationCap, FlopCounter* fc = nullptr);

/// FLOP cost of a full enumeration, measured on up to `sample` candidates and
/// extrapolated to the full candidate count.
double exhaustive_flops_estimate(const arma::cx_mat& numerator,
                                 const arma::cx_mat& denominator, const PhaseGrid& grid,
                                 const CommConstraint* cc = nullptr,
                                 std::uint64_t sample = 1ull << 16);

} // namespace sicb

#endif
