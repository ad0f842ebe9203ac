// SPDX-License-Identifier: Apache-2.0
#include "sicb/optimize.hpp"

#include <cmath>
#include <limits>

namespace sicb {

namespace {

struct ShiftedFactor {
    UpperTriangular u;
    arma::cx_mat shifted;
    double shift = 0.0;
};

// C + 2|gamma| I is positive definite in exact arithmetic but can fail the
// pivot test when gamma is at rounding scale; escalate the shift until the
// factorization goes through.
ShiftedFactor shift_and_factor(const arma::cx_mat& c, FlopCounter* fc) {
    const arma::uword n = c.n_rows;
    const double gamma = min_eigenvalue(c, fc);
    double shift = 2.0 * std::abs(gamma);
    double max_diag = 0.0;
    for (arma::uword i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(c(i, i).real()));
    double jitter = 1e-12 * std::max(1.0, max_diag + shift);
    for (int attempt = 0; attempt < 64; ++attempt) {
        arma::cx_mat shifted = c + shift * arma::eye<arma::cx_mat>(n, n);
        try {
            UpperTriangular u = cholesky_upper(shifted, fc);
            return {std::move(u), std::move(shifted), shift};
        } catch (const NotPositiveDefinite&) {
            shift += jitter;
            jitter *= 2.0;
        }
    }
    throw NotPositiveDefinite("dinkelbach shift escalation failed to reach positive definiteness");
}

double search_radius(const arma::cx_vec& prev, const arma::cx_mat& shifted, FlopCounter* fc) {
    const double rsq = std::max(quad_form(prev, shifted, fc), 0.0);
    // inflate so the previous iterate stays strictly inside the sphere
    return std::sqrt(rsq) * (1.0 + 1e-9);
}

void check_codeword_feasible(const arma::cx_vec& v, const CommConstraint& cc) {
    FlopCounter ignore;
    const double nrm = quad_form(v, cc.shifted, &ignore);
    if (nrm > cc.c_hat_sq * (1.0 + 1e-9))
        throw InfeasibleConstraint("initial codeword violates the communication constraint");
}

} // namespace

Codeword dinkelbach_step(const arma::cx_mat& numerator, const arma::cx_mat& denominator,
                         double rho, const Codeword& previous, const PhaseGrid& grid,
                         const CommConstraint* cc, SearchStats* stats) {
    FlopCounter* fc = stats ? &stats->flops : nullptr;
    const arma::cx_mat c = rho * denominator - numerator;
    ShiftedFactor sf = shift_and_factor(c, fc);
    const double radius = search_radius(to_complex(previous), sf.shifted, fc);
    if (cc) return css(sf.u, cc->factor, radius, cc->c_hat_sq, grid, previous, stats);
    return ss(sf.u, radius, grid, previous, stats);
}

double dinkelbach_value(const arma::cx_mat& numerator, const arma::cx_mat& denominator,
                        double rho, const Codeword& probe, const PhaseGrid& grid,
                        const CommConstraint* cc) {
    const arma::uword n = numerator.n_rows;
    const arma::cx_mat c = rho * denominator - numerator;
    ShiftedFactor sf = shift_and_factor(c, nullptr);
    const double radius = search_radius(to_complex(probe), sf.shifted, nullptr);
    const Codeword w_min = cc ? css(sf.u, cc->factor, radius, cc->c_hat_sq, grid, probe, nullptr)
                              : ss(sf.u, radius, grid, probe, nullptr);
    const double min_cost = quad_form(to_complex(w_min), sf.shifted, nullptr);
    return sf.shift * static_cast<double>(n) - min_cost;
}

namespace {

std::pair<Codeword, FpTrace> fp_loop(const arma::cx_mat& numerator,
                                     const arma::cx_mat& denominator, const PhaseGrid& grid,
                                     const Codeword& init, const CommConstraint* cc,
                                     const FpOptions& opt, SearchStats* stats) {
    FlopCounter* fc = stats ? &stats->flops : nullptr;
    Codeword w = init;
    FpTrace trace;
    double rho_prev = 0.0;
    for (int t = 1; t <= opt.t_max; ++t) {
        const double rho = rayleigh(w, numerator, denominator, fc);
        trace.rho_values.push_back(rho);
        trace.codewords.push_back(w);
        trace.iterations = t;
        if (std::abs(rho - rho_prev) < opt.eps * std::max(std::abs(rho), 1e-300)) {
            trace.converged = true;
            break;
        }
        rho_prev = rho;
        const Codeword next = dinkelbach_step(numerator, denominator, rho, w, grid, cc, stats);
        if (!(next == w)) {
            // accept only on a strict quotient improvement; an equal-cost tie
            // found by the search means the fixpoint is reached
            const double q = rayleigh(next, numerator, denominator, fc);
            if (q > rho) w = next;
        }
    }
    return {w, trace};
}

} // namespace

std::pair<Codeword, FpTrace> fp_ss(const RxSubproblem& p, const Codeword& w_init,
                                   const FpOptions& opt, SearchStats* stats) {
    if (w_init.length() != p.dim())
        throw DimensionMismatch("fp_ss: initial codeword length does not match the subproblem");
    return fp_loop(p.numerator, p.denominator, p.grid, w_init, nullptr, opt, stats);
}

std::pair<Codeword, FpTrace> fp_css(const TxSubproblem& p, const CommConstraint& cc,
                                    const Codeword& v_init, const FpOptions& opt,
                                    SearchStats* stats) {
    if (v_init.length() != p.dim())
        throw DimensionMismatch("fp_css: initial codeword length does not match the subproblem");
    if (cc.dim() != p.dim())
        throw DimensionMismatch("fp_css: constraint dimension does not match the subproblem");
    check_codeword_feasible(to_complex(v_init), cc);
    return fp_loop(p.numerator, p.denominator, p.grid, v_init, &cc, opt, stats);
}

namespace {

JointResult joint_one_order(const JointInputs& in, const JointOptions& opt,
                            const CommConstraint& cc, bool rx_first, SearchStats* stats) {
    const arma::uword n = in.h_si.n_rows;
    const arma::uword m = in.h_si.n_cols;
    Codeword w = quantize_to_codeword(steering(in.theta, n), in.grid);
    Codeword v = quantize_to_codeword(steering(in.theta_c, m), in.grid);

    JointResult res;
    double prev_lin = 0.0;
    for (int round = 1; round <= opt.max_rounds; ++round) {
        Codeword w_cand = w, v_cand = v;
        if (rx_first) {
            v_cand = fp_css(build_tx(in.theta, w_cand, in.h_si, in.radio, in.grid), cc, v_cand,
                            opt.fp, stats).first;
            w_cand = fp_ss(build_rx(in.theta, v_cand, in.h_si, in.radio, in.grid), w_cand,
                           opt.fp, stats).first;
        } else {
            w_cand = fp_ss(build_rx(in.theta, v_cand, in.h_si, in.radio, in.grid), w_cand,
                           opt.fp, stats).first;
            v_cand = fp_css(build_tx(in.theta, w_cand, in.h_si, in.radio, in.grid), cc, v_cand,
                            opt.fp, stats).first;
        }
        const double s_db = sinr_db(w_cand, v_cand, in.alpha_theta, in.theta, in.h_si, in.radio);
        const double lin = std::pow(10.0, s_db / 10.0);
        if (round > 1 && lin <= prev_lin * (1.0 + opt.tol)) break;
        w = std::move(w_cand);
        v = std::move(v_cand);
        res.per_round_sinr_db.push_back(s_db);
        res.per_round_tx_feasible.push_back(comm_feasible(to_complex(v), cc, 1e-9));
        res.outer_rounds = round;
        prev_lin = lin;
    }
    res.rx = std::move(w);
    res.tx = std::move(v);
    res.sinr_db = res.per_round_sinr_db.back();
    return res;
}

} // namespace

JointResult joint(const JointInputs& in, const JointOptions& opt, SearchStats* stats) {
    const arma::uword m = in.h_si.n_cols;
    const CommConstraint cc = build_comm_constraint(in.theta_c, in.c, m, in.grid);
    check_codeword_feasible(to_complex(quantize_to_codeword(steering(in.theta_c, m), in.grid)), cc);

    if (opt.order == JointOrder::tx_first)
        return joint_one_order(in, opt, cc, false, stats);
    if (opt.order == JointOrder::rx_first)
        return joint_one_order(in, opt, cc, true, stats);
    JointResult a = joint_one_order(in, opt, cc, false, stats);
    JointResult b = joint_one_order(in, opt, cc, true, stats);
    return b.sinr_db > a.sinr_db ? std::move(b) : std::move(a);
}

Codeword mvdr_cm_hq(const RxSubproblem& p, FlopCounter* fc) {
    const arma::uword n = p.dim();
    const double bn = arma::norm(p.b);
    if (!(bn > 0.0)) return Codeword::zeros(p.grid, n); // flat objective, any codeword is optimal
    const arma::cx_vec x = solve_hermitian(p.denominator, p.b, fc);
    const arma::cx_vec w = x / arma::cdot(p.b, x);
    if (fc) {
        fc->complex_mul += 2 * n;
        fc->complex_add += n;
    }
    return quantize_to_codeword(w, p.grid);
}

double effective_mvdr_bound(double theta, const arma::cx_mat& h_si,
                            const RadioConfig& radio, FlopCounter* fc) {
    const arma::uword n = h_si.n_rows;
    const arma::uword m = h_si.n_cols;
    const arma::cx_vec a_eff = vectorize(steering(theta, n) * steering(theta, m).t());
    const arma::cx_vec h = vectorize(h_si);
    const double sigma_sq = radio.noise_total_mw() / static_cast<double>(n);
    const double loading = sigma_sq / (static_cast<double>(m) * radio.tx_power_mw());
    const arma::cx_mat r_eff =
        h * h.t() + loading * arma::eye<arma::cx_mat>(n * m, n * m);
    const arma::cx_vec x = solve_hermitian(r_eff, a_eff, fc);
    const arma::cx_vec w = x / arma::cdot(a_eff, x);
    const double num = std::norm(arma::cdot(w, a_eff));
    const double den = quad_form(w, r_eff, fc);
    if (fc) {
        const std::uint64_t nm = static_cast<std::uint64_t>(n) * m;
        fc->complex_mul += 3 * nm;
        fc->complex_add += 2 * nm;
        fc->real_op += 2;
    }
    return num / den;
}

namespace {

struct EnumerationResult {
    bool found = false;
    double best_q = -std::numeric_limits<double>::infinity();
    std::vector<int> best_idx;
    std::uint64_t visited = 0;
};

// Odometer enumeration in lexicographic index order (first element most
// significant). Matrix-vector products are maintained incrementally and
// refreshed periodically to bound drift.
EnumerationResult enumerate_quotient(const arma::cx_mat& num, const arma::cx_mat& den,
                                     const PhaseGrid& grid, const CommConstraint* cc,
                                     std::uint64_t max_candidates, FlopCounter* fc) {
    const int L = static_cast<int>(num.n_rows);
    const int size = grid.size;
    std::vector<cx> unit(size);
    for (int k = 0; k < size; ++k) unit[k] = std::polar(1.0, grid.phase(k));
    unit[0] = cx(1.0, 0.0);

    std::vector<int> d(std::max(L - 1, 0), 0);
    arma::cx_vec x(L, arma::fill::ones);
    arma::cx_vec y_num = num * x;
    arma::cx_vec y_den = den * x;
    cx s_c(0.0, 0.0);
    if (cc) s_c = arma::cdot(cc->a_c, x);

    std::uint64_t cmul = 0, cadd = 0, rop = 0;
    EnumerationResult res;

    const std::uint64_t refresh_period = 1u << 16;
    std::uint64_t since_refresh = 0;

    auto evaluate = [&]() {
        cx fa(0.0, 0.0), ga(0.0, 0.0);
        for (int i = 0; i < L; ++i) {
            fa += std::conj(x(i)) * y_num(i);
            ga += std::conj(x(i)) * y_den(i);
        }
        cmul += 2 * static_cast<std::uint64_t>(L);
        cadd += 2 * static_cast<std::uint64_t>(L);
        rop += 3;
        ++res.visited;
        if (cc) {
            rop += 4;
            if (std::norm(s_c) < cc->gain_threshold * cc->gain_threshold) return;
        }
        const double q = fa.real() / ga.real();
        if (!res.found || q > res.best_q) {
            res.found = true;
            res.best_q = q;
            res.best_idx.assign(d.begin(), d.end());
            res.best_idx.push_back(0);
        }
    };

    evaluate();
    while (res.visited < max_candidates) {
        // advance the odometer, least-significant digit last in the vector
        int pos = L - 2;
        while (pos >= 0) {
            const int nv = d[pos] + 1 == size ? 0 : d[pos] + 1;
            d[pos] = nv;
            const cx delta = unit[nv] - x(pos);
            x(pos) = unit[nv];
            y_num += delta * num.col(pos);
            y_den += delta * den.col(pos);
            if (cc) s_c += std::conj(cc->a_c(pos)) * delta;
            cmul += 2 * static_cast<std::uint64_t>(L) + 1;
            cadd += 2 * static_cast<std::uint64_t>(L) + 2;
            if (nv != 0) break;
            --pos;
        }
        if (pos < 0) break; // wrapped around: enumeration complete
        if (++since_refresh >= refresh_period) {
            since_refresh = 0;
            y_num = num * x;
            y_den = den * x;
            if (cc) s_c = arma::cdot(cc->a_c, x);
        }
        evaluate();
    }

    if (fc) {
        fc->complex_mul += cmul;
        fc->complex_add += cadd;
        fc->real_op += rop;
    }
    return res;
}

std::uint64_t candidate_count(int dim, const PhaseGrid& grid, std::uint64_t cap) {
    const int free_levels = dim - 1;
    if (static_cast<long long>(grid.bits) * free_levels >= 63)
        throw TooLarge("enumeration of " + std::to_string(free_levels) + " levels at " +
                       std::to_string(grid.bits) + " bits exceeds the candidate cap");
    const std::uint64_t count = 1ull << (static_cast<long long>(grid.bits) * free_levels);
    if (count > cap)
        throw TooLarge("enumeration needs " + std::to_string(count) +
                       " candidates, cap is " + std::to_string(cap));
    return count;
}

} // namespace

Codeword exhaustive(const arma::cx_mat& numerator, const arma::cx_mat& denominator,
                    const PhaseGrid& grid, const CommConstraint* cc, std::uint64_t cap,
                    FlopCounter* fc) {
    if (numerator.n_rows != denominator.n_rows)
        throw DimensionMismatch("exhaustive: matrix dimensions differ");
    const int dim = static_cast<int>(numerator.n_rows);
    if (dim == 1) {
        Codeword c = Codeword::zeros(grid, 1);
        return c;
    }
    const std::uint64_t count = candidate_count(dim, grid, cap);
    EnumerationResult res = enumerate_quotient(numerator, denominator, grid, cc, count, fc);
    if (!res.found)
        throw InfeasibleConstraint("exhaustive: no codeword satisfies the communication constraint");
    Codeword out;
    out.grid = grid;
    out.indices = std::move(res.best_idx);
    return out;
}

Codeword exhaustive(const RxSubproblem& p, std::uint64_t cap, FlopCounter* fc) {
    return exhaustive(p.numerator, p.denominator, p.grid, nullptr, cap, fc);
}

Codeword exhaustive(const TxSubproblem& p, const CommConstraint& cc, std::uint64_t cap,
                    FlopCounter* fc) {
    return exhaustive(p.numerator, p.denominator, p.grid, &cc, cap, fc);
}

double exhaustive_flops_estimate(const arma::cx_mat& numerator,
                                 const arma::cx_mat& denominator, const PhaseGrid& grid,
                                 const CommConstraint* cc, std::uint64_t sample) {
    const int dim = static_cast<int>(numerator.n_rows);
    if (dim <= 1) return 0.0;
    const double full = std::pow(static_cast<double>(grid.size), dim - 1);
    FlopCounter fc;
    EnumerationResult res =
        enumerate_quotient(numerator, denominator, grid, cc,
                           std::min<std::uint64_t>(sample, 1ull << 22), &fc);
    if (res.visited == 0) return 0.0;
    return fc.total() / static_cast<double>(res.visited) * full;
}

} // namespace sicb
