// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sicb/optimize.hpp"
#include "test_util.hpp"

using namespace sicb;
using test::rng_t;

namespace {

std::vector<Codeword> all_codewords(const PhaseGrid& g, int len) {
    std::vector<Codeword> out;
    std::vector<int> d(len - 1, 0);
    while (true) {
        Codeword c = Codeword::zeros(g, len);
        for (int i = 0; i + 1 < len; ++i) c.indices[i] = d[i];
        out.push_back(c);
        int pos = len - 2;
        while (pos >= 0 && ++d[pos] == g.size) d[pos--] = 0;
        if (pos < 0) break;
    }
    return out;
}

struct Instance {
    arma::cx_mat num, den;
    PhaseGrid grid;
};

Instance random_instance(rng_t& rng, int dim, int bits) {
    Instance in;
    in.grid = PhaseGrid::make(bits);
    const arma::cx_vec b = test::random_cvec(rng, dim);
    in.num = b * b.t();
    std::uniform_real_distribution<double> rd(0.05, 0.5);
    in.den = test::random_hpd(rng, dim, rd(rng));
    return in;
}

RxSubproblem as_rx(const Instance& in) {
    RxSubproblem p;
    p.numerator = in.num;
    p.denominator = in.den;
    p.grid = in.grid;
    return p;
}

TxSubproblem as_tx(const Instance& in) {
    TxSubproblem p;
    p.numerator = in.num;
    p.denominator = in.den;
    p.grid = in.grid;
    return p;
}

} // namespace

TEST_CASE("dinkelbach_step at rho = 0 maximizes the numerator quadratic form") {
    rng_t rng(151);
    for (int trial = 0; trial < 20; ++trial) {
        const Instance in = random_instance(rng, 4, 2);
        const Codeword start = test::random_codeword(rng, in.grid, 4);
        const Codeword got = dinkelbach_step(in.num, in.den, 0.0, start, in.grid);
        double best = -1.0;
        for (const auto& c : all_codewords(in.grid, 4))
            best = std::max(best, quad_form(to_complex(c), in.num));
        CHECK(quad_form(to_complex(got), in.num) == doctest::Approx(best).epsilon(1e-9));
    }
}

TEST_CASE("fp_ss: constant quotient converges to 1 immediately") {
    rng_t rng(157);
    const arma::cx_mat a = test::random_hpd(rng, 4);
    RxSubproblem p;
    p.numerator = a;
    p.denominator = a;
    p.grid = PhaseGrid::make(2);
    const Codeword w0 = test::random_codeword(rng, p.grid, 4);
    auto [w, tr] = fp_ss(p, w0);
    CHECK(tr.rho_values.front() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tr.converged);
    CHECK(rayleigh(w, a, a) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fp_ss: zero numerator converges to 0 and keeps the initial codeword") {
    rng_t rng(163);
    RxSubproblem p;
    p.denominator = test::random_hpd(rng, 3);
    p.numerator = arma::cx_mat(3, 3, arma::fill::zeros);
    p.grid = PhaseGrid::make(2);
    const Codeword w0 = test::random_codeword(rng, p.grid, 3);
    auto [w, tr] = fp_ss(p, w0);
    CHECK(tr.converged);
    CHECK(tr.rho_values.back() == 0.0);
    CHECK(w == w0);
}

TEST_CASE("fp_ss equals exhaustive search on random instances") {
    rng_t rng(167);
    for (int trial = 0; trial < 100; ++trial) {
        const int dim = 3 + static_cast<int>(rng() % 4);
        const int bits = 1 + static_cast<int>(rng() % 3);
        const Instance in = random_instance(rng, dim, bits);
        const Codeword w0 = test::random_codeword(rng, in.grid, dim);
        auto [w, tr] = fp_ss(as_rx(in), w0);
        const Codeword we = exhaustive(in.num, in.den, in.grid);
        const double q1 = rayleigh(w, in.num, in.den);
        const double q2 = rayleigh(we, in.num, in.den);
        CHECK(std::abs(q1 - q2) <= 1e-9 * std::max(1.0, std::abs(q2)));
        CHECK(tr.converged);
        for (std::size_t i = 1; i < tr.rho_values.size(); ++i)
            CHECK(tr.rho_values[i] >= tr.rho_values[i - 1]);
    }
}

TEST_CASE("fp_css reduces to fp_ss under a vacuous constraint") {
    rng_t rng(173);
    for (int trial = 0; trial < 30; ++trial) {
        const int dim = 3 + static_cast<int>(rng() % 3);
        const Instance in = random_instance(rng, dim, 2);
        const CommConstraint cc = build_comm_constraint(0.5, 0.0, dim, in.grid);
        const Codeword v0 = test::random_codeword(rng, in.grid, dim);
        auto [v, t1] = fp_css(as_tx(in), cc, v0);
        auto [w, t2] = fp_ss(as_rx(in), v0);
        CHECK(rayleigh(v, in.num, in.den) ==
              doctest::Approx(rayleigh(w, in.num, in.den)).epsilon(1e-12));
    }
}

TEST_CASE("fp_css equals constrained exhaustive search and stays feasible") {
    rng_t rng(179);
    for (int trial = 0; trial < 100; ++trial) {
        const int dim = 3 + static_cast<int>(rng() % 4);
        const int bits = 1 + static_cast<int>(rng() % 3);
        const Instance in = random_instance(rng, dim, bits);
        std::uniform_real_distribution<double> ad(-1.4, 1.4);
        const double theta_c = ad(rng);
        const Codeword v0 = quantize_to_codeword(steering(theta_c, dim), in.grid);
        const double init_gain = std::abs(arma::cdot(to_complex(v0), steering(theta_c, dim)));
        std::uniform_real_distribution<double> cd(0.0, std::min(0.8 * dim, 0.99 * init_gain));
        const CommConstraint cc = build_comm_constraint(theta_c, cd(rng), dim, in.grid);

        auto [v, tr] = fp_css(as_tx(in), cc, v0);
        const Codeword ve = exhaustive(in.num, in.den, in.grid, &cc);
        const double q1 = rayleigh(v, in.num, in.den);
        const double q2 = rayleigh(ve, in.num, in.den);
        CHECK(std::abs(q1 - q2) <= 1e-9 * std::max(1.0, std::abs(q2)));
        CHECK(comm_feasible(to_complex(v), cc, 1e-9));
    }
}

TEST_CASE("fp_css rejects an infeasible start") {
    const PhaseGrid g = PhaseGrid::make(2);
    rng_t rng(181);
    const Instance in = random_instance(rng, 4, 2);
    const double theta_c = 0.8;
    const Codeword aligned = quantize_to_codeword(steering(theta_c, 4), g);
    const double gain = std::abs(arma::cdot(to_complex(aligned), steering(theta_c, 4)));
    const CommConstraint cc = build_comm_constraint(theta_c, 0.97 * gain, 4, g);
    Codeword bad = Codeword::zeros(g, 4);
    bad.indices = {2, 0, 2, 0};
    CHECK_THROWS_AS(fp_css(as_tx(in), cc, bad), InfeasibleConstraint);
}

TEST_CASE("joint: zero self-interference converges to the matched beams") {
    const PhaseGrid g = PhaseGrid::make(3);
    JointInputs in;
    in.theta = 0.0;
    in.theta_c = 0.0;
    in.c = 0.0;
    in.h_si = arma::cx_mat(4, 4, arma::fill::zeros);
    in.radio = RadioConfig::from_carrier(28e9, 20.0, -90.0, 0.16, 0.67);
    in.grid = g;
    in.alpha_theta = 2e-4;
    const JointResult res = joint(in);
    // matched beams: all phases zero, SINR at the closed-form ceiling
    for (int i : res.rx.indices) CHECK(i == 0);
    for (int i : res.tx.indices) CHECK(i == 0);
    const double lin = in.radio.tx_power_mw() * std::norm(in.alpha_theta * cx(16, 0)) /
                       in.radio.noise_total_mw();
    CHECK(res.sinr_db == doctest::Approx(10 * std::log10(lin)).epsilon(1e-9));
    CHECK(res.outer_rounds <= 2);
}

TEST_CASE("joint dominates its first half-step and ascends per round") {
    rng_t rng(191);
    for (int trial = 0; trial < 10; ++trial) {
        const auto gi = test::random_geometry_instance(rng, 4, 4);
        const PhaseGrid g = PhaseGrid::make(2);
        JointInputs in;
        in.theta = gi.theta;
        in.theta_c = gi.theta_c;
        in.c = 0.5 * 4;
        in.h_si = gi.h_si;
        in.radio = gi.radio;
        in.grid = g;
        in.alpha_theta = 1e-4;

        const Codeword v0 = quantize_to_codeword(steering(in.theta_c, 4), g);
        const double init_gain = std::abs(arma::cdot(to_complex(v0), steering(in.theta_c, 4)));
        in.c = std::min(in.c, 0.95 * init_gain);

        const JointResult res = joint(in);
        for (std::size_t i = 1; i < res.per_round_sinr_db.size(); ++i)
            CHECK(res.per_round_sinr_db[i] >= res.per_round_sinr_db[i - 1]);

        // first half-step of round 1 is exactly the fixed-TX optimization
        const RxSubproblem p = build_rx(in.theta, v0, in.h_si, in.radio, g);
        const Codeword w0 = quantize_to_codeword(steering(in.theta, 4), g);
        auto [w, tr] = fp_ss(p, w0);
        const double fp_ss_sinr = sinr_db(w, v0, in.alpha_theta, in.theta, in.h_si, in.radio);
        CHECK(res.sinr_db >= fp_ss_sinr - 1e-9 * std::abs(fp_ss_sinr));

        // never above the effective MVDR bound (common normalization)
        const double bound = effective_mvdr_bound(in.theta, in.h_si, in.radio);
        const double joint_lin = std::pow(10.0, res.sinr_db / 10.0) /
                                 (in.alpha_theta * in.alpha_theta);
        CHECK(joint_lin <= bound * (1 + 1e-9));
    }
}

TEST_CASE("mvdr_cm_hq: identity covariance reduces to the quantized matched filter") {
    rng_t rng(193);
    const PhaseGrid g = PhaseGrid::make(3);
    RxSubproblem p;
    p.grid = g;
    p.b = test::random_cvec(rng, 5);
    p.numerator = p.b * p.b.t();
    p.denominator = arma::eye<arma::cx_mat>(5, 5);
    const Codeword got = mvdr_cm_hq(p);
    CHECK(got == quantize_to_codeword(p.b, g));

    // b aligned with a grid codeword comes back exactly
    const Codeword c = test::random_codeword(rng, g, 5);
    p.b = to_complex(c);
    p.numerator = p.b * p.b.t();
    CHECK(mvdr_cm_hq(p) == c);
}

TEST_CASE("mvdr_cm_hq never beats fp_ss") {
    rng_t rng(197);
    for (int trial = 0; trial < 30; ++trial) {
        const auto gi = test::random_geometry_instance(rng, 4, 3);
        const PhaseGrid g = PhaseGrid::make(1 + static_cast<int>(rng() % 3));
        const Codeword v0 = test::random_codeword(rng, g, 3);
        const RxSubproblem p = build_rx(gi.theta, v0, gi.h_si, gi.radio, g);
        const Codeword base = mvdr_cm_hq(p);
        auto [w, tr] = fp_ss(p, quantize_to_codeword(steering(gi.theta, 4), g));
        const double qb = rayleigh(base, p.numerator, p.denominator);
        const double qw = rayleigh(w, p.numerator, p.denominator);
        CHECK(qw >= qb * (1 - 1e-9));
    }
}

TEST_CASE("effective_mvdr_bound closed form without self-interference") {
    const RadioConfig radio = RadioConfig::from_carrier(28e9, 20.0, -80.0, 0.16, 0.67);
    const arma::cx_mat h0(4, 3, arma::fill::zeros);
    const double bound = effective_mvdr_bound(0.3, h0, radio);
    const double sigma_sq = radio.noise_total_mw() / 4.0;
    const double expect = 4.0 * 3.0 * (3.0 * radio.tx_power_mw() / sigma_sq);
    CHECK(bound == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("effective_mvdr_bound is invariant to a global SI phase") {
    rng_t rng(199);
    const auto gi = test::random_geometry_instance(rng, 4, 4);
    const double b1 = effective_mvdr_bound(gi.theta, gi.h_si, gi.radio);
    const double b2 =
        effective_mvdr_bound(gi.theta, std::polar(1.0, 1.234) * gi.h_si, gi.radio);
    CHECK(b1 == doctest::Approx(b2).epsilon(1e-9));
}

TEST_CASE("exhaustive basics") {
    const PhaseGrid g = PhaseGrid::make(1);
    rng_t rng(211);
    // two candidates at L = 2, b = 1
    const Instance in = random_instance(rng, 2, 1);
    const Codeword got = exhaustive(in.num, in.den, in.grid);
    double q0 = -1, q1 = -1;
    Codeword c0 = Codeword::zeros(g, 2), c1 = Codeword::zeros(g, 2);
    c1.indices[0] = 1;
    q0 = rayleigh(c0, in.num, in.den);
    q1 = rayleigh(c1, in.num, in.den);
    CHECK(rayleigh(got, in.num, in.den) == doctest::Approx(std::max(q0, q1)).epsilon(1e-12));

    // ties resolve to the lexicographically smallest index vector
    const arma::cx_mat a = test::random_hpd(rng, 4);
    const Codeword tie = exhaustive(a, a, PhaseGrid::make(2));
    for (int i : tie.indices) CHECK(i == 0);

    CHECK_THROWS_AS(exhaustive(a, a, PhaseGrid::make(4), nullptr, 100), TooLarge);
}

TEST_CASE("dinkelbach_value sign properties") {
    rng_t rng(223);
    for (int trial = 0; trial < 20; ++trial) {
        const Instance in = random_instance(rng, 4, 2);
        const Codeword probe = test::random_codeword(rng, in.grid, 4);
        const double rho_probe = rayleigh(probe, in.num, in.den);
        // F(rayleigh(probe)) >= 0 up to rounding
        CHECK(dinkelbach_value(in.num, in.den, rho_probe, probe, in.grid) >= -1e-9);
        // F is strictly decreasing in rho
        const double f_lo = dinkelbach_value(in.num, in.den, rho_probe * 0.5, probe, in.grid);
        const double f_hi = dinkelbach_value(in.num, in.den, rho_probe * 2.0 + 1e-6, probe, in.grid);
        CHECK(f_lo > f_hi);
    }
}
