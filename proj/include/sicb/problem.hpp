// SPDX-License-Identifier: Apache-2.0
#ifndef SICB_PROBLEM_HPP
#define SICB_PROBLEM_HPP

#include <armadillo>

#include "sicb/channel.hpp"
#include "sicb/numerics.hpp"
#include "sicb/phase_grid.hpp"

namespace sicb {

/// Quadratic-fractional subproblem for the RX codeword at a fixed TX codeword:
/// maximize w^H B w / w^H G w. B = b b^H is PSD rank-1, G is PD.
struct RxSubproblem {
    arma::cx_mat numerator;   ///< B(theta), N x N
    arma::cx_mat denominator; ///< G, N x N
    arma::cx_vec b;           ///< b(theta) = a_r(theta) a_t^H(theta) v0
    arma::cx_vec g_si;        ///< H_SI v0
    double theta = 0.0;
    PhaseGrid grid;

    arma::uword dim() const { return numerator.n_rows; }
};

/// Mirror subproblem for the TX codeword at a fixed RX codeword.
struct TxSubproblem {
    arma::cx_mat numerator;   ///< B~(theta), M x M
    arma::cx_mat denominator; ///< G~, M x M
    arma::cx_vec b;           ///< b~(theta)
    arma::cx_vec g_si;        ///< H_SI^H w0
    double theta = 0.0;
    PhaseGrid grid;

    arma::uword dim() const { return numerator.n_rows; }
};

/// TX communication-gain constraint |v^H a_c|^2 >= c^2, rewritten for a
/// constant-modulus v as ||U_c v||^2 <= c_hat^2 with
/// A_hat = -a_c a_c^H + alpha I positive definite and c_hat^2 = alpha*M - c^2.
struct CommConstraint {
    arma::cx_vec a_c;
    double gain_threshold = 0.0; ///< c
    double shift_alpha = 0.0;    ///< alpha > M
    arma::cx_mat shifted;        ///< A_hat
    double c_hat_sq = 0.0;
    UpperTriangular factor;      ///< U_c with U_c^H U_c = A_hat

    arma::uword dim() const { return a_c.n_elem; }
};

RxSubproblem build_rx(double theta, const Codeword& v0, const arma::cx_mat& h_si,
                      const RadioConfig& radio, const PhaseGrid& grid);

TxSubproblem build_tx(double theta, const Codeword& w0, const arma::cx_mat& h_si,
                      const RadioConfig& radio, const PhaseGrid& grid);

CommConstraint build_comm_constraint(double theta_c, double c, arma::uword m,
                                     const PhaseGrid& grid);

/// Sensing SINR in dB for a codeword pair, with a worst-case echo amplitude.
double sinr_db(const Codeword& w, const Codeword& v, double alpha_theta, double theta,
               const arma::cx_mat& h_si, const RadioConfig& radio);

/// Generalized Rayleigh quotient x^H B x / x^H G x of a codeword.
double rayleigh(const Codeword& x, const arma::cx_mat& numerator,
                const arma::cx_mat& denominator, FlopCounter* fc = nullptr);

/// Direct check of the communication constraint, |v^H a_c|^2 >= c^2 - slack.
bool comm_feasible(const arma::cx_vec& v, const CommConstraint& cc, double slack = 1e-9);

} // namespace sicb

#endif
