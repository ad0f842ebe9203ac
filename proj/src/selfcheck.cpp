// SPDX-License-Identifier: Apache-2.0
#include "sicb/selfcheck.hpp"

#include <cmath>
#include <ostream>
#include <random>

#include "sicb/optimize.hpp"

namespace sicb {

namespace {

using rng_t = std::mt19937_64;

arma::cx_mat random_hpd(rng_t& rng, int n, double ridge = 1.0) {
    std::normal_distribution<double> nd;
    arma::cx_mat m(n, n);
    for (auto& e : m) e = cx(nd(rng), nd(rng));
    return m.t() * m + ridge * arma::eye<arma::cx_mat>(n, n);
}

arma::cx_vec random_cvec(rng_t& rng, int n) {
    std::normal_distribution<double> nd;
    arma::cx_vec v(n);
    for (auto& e : v) e = cx(nd(rng), nd(rng));
    return v;
}

Codeword random_codeword(rng_t& rng, const PhaseGrid& g, int len) {
    Codeword c = Codeword::zeros(g, len);
    std::uniform_int_distribution<int> ud(0, g.size - 1);
    for (int k = 0; k + 1 < len; ++k) c.indices[k] = ud(rng);
    return c;
}

// Rayleigh-quotient instance with controlled scales.
struct Instance {
    arma::cx_mat num, den;
    PhaseGrid grid;
};

Instance random_instance(rng_t& rng, int dim, int bits) {
    Instance in;
    in.grid = PhaseGrid::make(bits);
    const arma::cx_vec b = random_cvec(rng, dim);
    in.num = b * b.t();
    std::uniform_real_distribution<double> rd(0.05, 0.5);
    in.den = random_hpd(rng, dim, rd(rng));
    return in;
}

bool check_numerics(rng_t& rng, std::ostream& out) {
    bool ok = true;
    for (int trial = 0; trial < 20 && ok; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 9);
        const arma::cx_mat a = random_hpd(rng, n);
        const UpperTriangular u = cholesky_upper(a);
        ok = ok && arma::norm(u.m.t() * u.m - a, "fro") / arma::norm(a, "fro") < 1e-10;
        const arma::cx_vec rhs = random_cvec(rng, n);
        const arma::cx_vec x = solve_hermitian(a, rhs);
        ok = ok && arma::norm(a * x - rhs) / arma::norm(rhs) < 1e-10;
        const double shift = 0.7;
        ok = ok && std::abs(min_eigenvalue(a + shift * arma::eye<arma::cx_mat>(n, n)) -
                            min_eigenvalue(a) - shift) < 1e-9;
    }
    out << (ok ? "PASS" : "FAIL") << " numerics: factor/solve/eigen identities\n";
    return ok;
}

bool check_grid(rng_t& rng, std::ostream& out) {
    bool ok = true;
    std::uniform_real_distribution<double> ad(-4.0 * M_PI, 4.0 * M_PI);
    for (int trial = 0; trial < 1000 && ok; ++trial) {
        const PhaseGrid g = PhaseGrid::make(1 + static_cast<int>(rng() % 6));
        const double angle = ad(rng);
        const int got = nearest_grid(angle, g);
        int exp = 0;
        double bestd = 1e300;
        for (int k = 0; k < g.size; ++k) {
            double d = std::remainder(angle - g.phase(k), 2.0 * M_PI);
            d = std::abs(d);
            if (d < bestd - 1e-15) {
                bestd = d;
                exp = k;
            }
        }
        ok = ok && got == exp;
        const double c = grid_round(angle, RoundMode::ceil, g);
        const double f = grid_round(angle, RoundMode::floor, g);
        ok = ok && c - f < g.step * 1.5 && c >= angle - 1e-6 && f <= angle + 1e-6;
    }
    out << (ok ? "PASS" : "FAIL") << " phase_grid: rounding and nearest-phase oracle\n";
    return ok;
}

bool check_ranges(rng_t& rng, std::ostream& out) {
    bool ok = true;
    std::normal_distribution<double> nd;
    std::uniform_real_distribution<double> rd(0.0, 3.0);
    for (int trial = 0; trial < 2000 && ok; ++trial) {
        const PhaseGrid g = PhaseGrid::make(1 + static_cast<int>(rng() % 4));
        const cx wh(nd(rng), nd(rng));
        const double rp = rd(rng);
        const double unn = 0.1 + rd(rng);
        const PhaseRange r = allowable_range(wh, rp, unn, g);
        for (int k = 0; k < g.size; ++k) {
            const cx w = std::polar(1.0, g.phase(k));
            const bool member = unn * unn * std::norm(w - wh) <= rp * rp;
            bool in = false;
            if (r.kind == PhaseRange::Kind::full) in = true;
            else if (r.kind == PhaseRange::Kind::interval)
                for (long kk = r.klo; kk <= r.khi; ++kk)
                    if (g.wrap_index(kk) == k) { in = true; break; }
            ok = ok && in == member;
        }
    }
    out << (ok ? "PASS" : "FAIL") << " search: allowable-range membership oracle\n";
    return ok;
}

bool check_search(rng_t& rng, std::ostream& out) {
    bool ok = true;
    for (int trial = 0; trial < 30 && ok; ++trial) {
        const int dim = 2 + static_cast<int>(rng() % 4);
        const int bits = 1 + static_cast<int>(rng() % 3);
        const Instance in = random_instance(rng, dim, bits);
        const Codeword w0 = random_codeword(rng, in.grid, dim);

        auto [w, tr] = fp_ss(RxSubproblem{in.num, in.den, {}, {}, 0.0, in.grid}, w0);
        const Codeword we = exhaustive(in.num, in.den, in.grid);
        const double q1 = rayleigh(w, in.num, in.den);
        const double q2 = rayleigh(we, in.num, in.den);
        ok = ok && std::abs(q1 - q2) <= 1e-9 * std::max(1.0, std::abs(q2));
        for (std::size_t i = 1; i < tr.rho_values.size(); ++i)
            ok = ok && tr.rho_values[i] >= tr.rho_values[i - 1];
    }
    out << (ok ? "PASS" : "FAIL") << " optimize: fp-ss equals exhaustive search\n";
    if (!ok) return false;

    for (int trial = 0; trial < 30 && ok; ++trial) {
        const int dim = 2 + static_cast<int>(rng() % 4);
        const int bits = 1 + static_cast<int>(rng() % 3);
        const Instance in = random_instance(rng, dim, bits);
        std::uniform_real_distribution<double> thd(-1.2, 1.2);
        const double theta_c = thd(rng);
        const Codeword v0 = quantize_to_codeword(steering(theta_c, dim), in.grid);
        const double max_gain = std::abs(arma::cdot(to_complex(v0), steering(theta_c, dim)));
        std::uniform_real_distribution<double> cd(0.0, 0.95 * max_gain);
        const CommConstraint cc = build_comm_constraint(theta_c, cd(rng), dim, in.grid);

        auto [v, tr] = fp_css(TxSubproblem{in.num, in.den, {}, {}, 0.0, in.grid}, cc, v0);
        const Codeword ve = exhaustive(in.num, in.den, in.grid, &cc);
        const double q1 = rayleigh(v, in.num, in.den);
        const double q2 = rayleigh(ve, in.num, in.den);
        ok = ok && std::abs(q1 - q2) <= 1e-9 * std::max(1.0, std::abs(q2));
        ok = ok && comm_feasible(to_complex(v), cc, 1e-9);
    }
    out << (ok ? "PASS" : "FAIL") << " optimize: fp-css equals constrained exhaustive search\n";
    return ok;
}

bool check_comm_equivalence(rng_t& rng, std::ostream& out) {
    bool ok = true;
    const int m = 5;
    const PhaseGrid g = PhaseGrid::make(4);
    const CommConstraint cc = build_comm_constraint(0.6, 2.5, m, g);
    std::uniform_real_distribution<double> pd(0.0, 2.0 * M_PI);
    for (int trial = 0; trial < 10000 && ok; ++trial) {
        arma::cx_vec v(m);
        for (auto& e : v) e = std::polar(1.0, pd(rng));
        const double lhs = quad_form(v, cc.shifted);
        const double gain = std::norm(arma::cdot(v, cc.a_c));
        const double c2 = cc.gain_threshold * cc.gain_threshold;
        if (std::abs(lhs - cc.c_hat_sq) < 1e-9 || std::abs(gain - c2) < 1e-9) continue;
        ok = ok && ((lhs <= cc.c_hat_sq) == (gain >= c2));
    }
    out << (ok ? "PASS" : "FAIL") << " problem: communication-constraint equivalence\n";
    return ok;
}

} // namespace

bool run_self_checks(std::uint64_t seed, std::ostream& out) {
    rng_t rng(seed);
    bool ok = true;
    ok &= check_numerics(rng, out);
    ok &= check_grid(rng, out);
    ok &= check_ranges(rng, out);
    ok &= check_comm_equivalence(rng, out);
    ok &= check_search(rng, out);
    out << (ok ? "all checks passed\n" : "CHECK FAILURES PRESENT\n");
    return ok;
}

} // namespace sicb
