// SPDX-License-Identifier: Apache-2.0
#include "sicb/problem.hpp"

#include <cmath>

namespace sicb {

RxSubproblem build_rx(double theta, const Codeword& v0, const arma::cx_mat& h_si,
                      const RadioConfig& radio, const PhaseGrid& grid) {
    const arma::uword n = h_si.n_rows;
    const arma::uword m = h_si.n_cols;
    if (v0.length() != m)
        throw DimensionMismatch("build_rx: TX codeword length " + std::to_string(v0.length()) +
                                " does not match SI channel columns " + std::to_string(m));
    const arma::cx_vec v = to_complex(v0);
    const arma::cx_vec a_r = steering(theta, n);
    const arma::cx_vec a_t = steering(theta, m);

    RxSubproblem p;
    p.b = a_r * arma::cdot(a_t, v); // a_r (a_t^H v)
    p.g_si = h_si * v;
    p.numerator = p.b * p.b.t();
    const double noise_ratio = radio.noise_total_mw() / static_cast<double>(n) / radio.tx_power_mw();
    p.denominator = p.g_si * p.g_si.t() +
                    noise_ratio * arma::eye<arma::cx_mat>(n, n);
    p.theta = theta;
    p.grid = grid;
    return p;
}

TxSubproblem build_tx(double theta, const Codeword& w0, const arma::cx_mat& h_si,
                      const RadioConfig& radio, const PhaseGrid& grid) {
    const arma::uword n = h_si.n_rows;
    const arma::uword m = h_si.n_cols;
    if (w0.length() != n)
        throw DimensionMismatch("build_tx: RX codeword length " + std::to_string(w0.length()) +
                                " does not match SI channel rows " + std::to_string(n));
    const arma::cx_vec w = to_complex(w0);
    const arma::cx_vec a_r = steering(theta, n);
    const arma::cx_vec a_t = steering(theta, m);

    TxSubproblem p;
    p.b = a_t * arma::cdot(a_r, w); // (w^H a_r a_t^H)^H
    p.g_si = h_si.t() * w;
    p.numerator = p.b * p.b.t();
    const double noise_ratio = radio.noise_total_mw() / (static_cast<double>(m) * radio.tx_power_mw());
    p.denominator = p.g_si * p.g_si.t() +
                    noise_ratio * arma::eye<arma::cx_mat>(m, m);
    p.theta = theta;
    p.grid = grid;
    return p;
}

CommConstraint build_comm_constraint(double theta_c, double c, arma::uword m,
                                     const PhaseGrid& grid) {
    (void)grid;
    if (c < 0.0) throw ValidationError("communication threshold c must be nonnegative");
    const double msq = static_cast<double>(m) * static_cast<double>(m);
    if (c * c > msq)
        throw InfeasibleThreshold("c^2 = " + std::to_string(c * c) +
                                  " exceeds the maximum beamforming gain M^2 = " + std::to_string(msq));
    CommConstraint cc;
    cc.a_c = steering(theta_c, m);
    cc.gain_threshold = c;
    cc.shift_alpha = static_cast<double>(m) + 1.0; // any alpha > lambda_max(A_c) = M works
    cc.shifted = -(cc.a_c * cc.a_c.t()) +
                 cc.shift_alpha * arma::eye<arma::cx_mat>(m, m);
    cc.c_hat_sq = -c * c + cc.shift_alpha * static_cast<double>(m);
    cc.factor = cholesky_upper(cc.shifted);
    return cc;
}

double sinr_db(const Codeword& w, const Codeword& v, double alpha_theta, double theta,
               const arma::cx_mat& h_si, const RadioConfig& radio) {
    const arma::uword n = h_si.n_rows;
    const arma::uword m = h_si.n_cols;
    if (w.length() != n || v.length() != m)
        throw DimensionMismatch("sinr_db: codeword lengths do not match the SI channel");
    const arma::cx_vec wv = to_complex(w);
    const arma::cx_vec vv = to_complex(v);
    const arma::cx_double beam = arma::cdot(wv, steering(theta, n)) * arma::cdot(steering(theta, m), vv);
    const arma::cx_double leak = arma::cdot(wv, h_si * vv);
    const double pt = radio.tx_power_mw();
    const double num = pt * std::norm(alpha_theta * beam);
    const double den = pt * std::norm(leak) + radio.noise_total_mw();
    return 10.0 * std::log10(num / den);
}

double rayleigh(const Codeword& x, const arma::cx_mat& numerator,
                const arma::cx_mat& denominator, FlopCounter* fc) {
    const arma::cx_vec xv = to_complex(x);
    const double f = quad_form(xv, numerator, fc);
    const double g = quad_form(xv, denominator, fc);
    if (fc) fc->real_op += 1;
    return f / g;
}

bool comm_feasible(const arma::cx_vec& v, const CommConstraint& cc, double slack) {
    const double gain = std::norm(arma::cdot(v, cc.a_c));
    return gain >= cc.gain_threshold * cc.gain_threshold - slack;
}

} // namespace sicb
