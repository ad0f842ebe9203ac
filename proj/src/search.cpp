// SPDX-License-Identifier: Apache-2.0
#include "sicb/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sicb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Residual budget r'^2 = rsq - consumed, clamped at zero within rounding.
double budget_of(double rsq, double consumed) {
    if (std::isinf(rsq)) return rsq;
    const double b = rsq - consumed;
    if (b < 0.0) {
        if (b >= -1e-12 * (1.0 + rsq)) return 0.0;
        throw Error("sphere search: residual radicand " + std::to_string(b) +
                    " below rounding tolerance");
    }
    return b;
}

// allowable_range with the residual budget already squared.
PhaseRange range_from_budget(cx w_hat, double budget_sq, double u_nn, const PhaseGrid& g) {
    const double aw = std::abs(w_hat);
    if (aw == 0.0)
        return budget_sq >= u_nn * u_nn ? PhaseRange::full_range() : PhaseRange::empty_range();
    const double eta = (1.0 + aw * aw - budget_sq / (u_nn * u_nn)) / (2.0 * aw);
    if (eta > 1.0) return PhaseRange::empty_range();
    if (eta < -1.0) return PhaseRange::full_range();
    const double ac = std::acos(std::clamp(eta, -1.0, 1.0));
    double ph = std::arg(w_hat);
    if (ph < 0.0) ph += 2.0 * M_PI;
    const long klo = grid_round_index(ph - ac, RoundMode::ceil, g);
    const long khi = grid_round_index(ph + ac, RoundMode::floor, g);
    if (klo > khi) return PhaseRange::empty_range();
    if (khi - klo + 1 >= g.size) return PhaseRange::full_range();
    return PhaseRange::interval(klo, khi);
}

// Appendix-style intersection writing wrapped indices into `out`, deduplicated
// through the `seen` scratch (cleared on exit by replaying `out`).
void intersect_into(const PhaseRange& r1, const PhaseRange& r2, const PhaseGrid& g,
                    std::vector<char>& seen, std::vector<int>& out,
                    std::vector<std::pair<long, long>>* intervals) {
    out.clear();
    if (intervals) intervals->clear();
    if (r1.kind == PhaseRange::Kind::empty || r2.kind == PhaseRange::Kind::empty) return;

    const long size = g.size;
    long l1 = r1.kind == PhaseRange::Kind::full ? 0 : r1.klo;
    long u1 = r1.kind == PhaseRange::Kind::full ? size : r1.khi;
    long l2 = r2.kind == PhaseRange::Kind::full ? 0 : r2.klo;
    long u2 = r2.kind == PhaseRange::Kind::full ? size : r2.khi;

    // STEP 1: shift lower bounds into [0, 2*pi]
    if (l1 < 0) { l1 += size; u1 += size; }
    if (l2 < 0) { l2 += size; u2 += size; }

    // u == size lands exactly on the 2*pi seam: grid index `size` is index 0,
    // so such an interval wraps and belongs with the upper cases
    std::pair<long, long> iv[2];
    int niv = 0;
    if (u1 < size && u2 < size) {
        iv[niv++] = {std::max(l1, l2), std::min(u1, u2)};
    } else if (u1 < size || u2 < size) {
        long la = l1, ua = u1, lb = l2, ub = u2;
        if (u1 >= size) { std::swap(la, lb); std::swap(ua, ub); } // (la, ua) does not wrap
        iv[niv++] = {std::max(la, lb), ua};
        iv[niv++] = {la + size, std::min(ua + size, ub)};
    } else {
        long la = l1, ua = u1, lb = l2, ub = u2;
        if (ua > ub) { std::swap(la, lb); std::swap(ua, ub); }
        iv[niv++] = {std::max(la, lb), ua};
        iv[niv++] = {la + size, ub};
    }

    for (int i = 0; i < niv; ++i) {
        const auto [lo, hi] = iv[i];
        if (lo > hi) continue;
        if (intervals) intervals->push_back(iv[i]);
        for (long k = lo; k <= hi; ++k) {
            const int ki = g.wrap_index(k);
            if (!seen[ki]) {
                seen[ki] = 1;
                out.push_back(ki);
            }
        }
    }
    for (int ki : out) seen[ki] = 0;
}

struct Flat {
    int dim = 0;
    std::vector<cx> u;        // row-major
    std::vector<double> diag; // real positive diagonal

    explicit Flat(const UpperTriangular& t) {
        dim = static_cast<int>(t.dim());
        u.resize(static_cast<std::size_t>(dim) * dim);
        diag.resize(dim);
        for (int r = 0; r < dim; ++r) {
            diag[r] = t.m(r, r).real();
            for (int c = 0; c < dim; ++c) u[static_cast<std::size_t>(r) * dim + c] = t.m(r, c);
        }
    }
};

std::vector<cx> phase_table(const PhaseGrid& g) {
    std::vector<cx> unit(g.size);
    for (int k = 0; k < g.size; ++k) unit[k] = std::polar(1.0, g.phase(k));
    unit[0] = cx(1.0, 0.0);
    return unit;
}

void check_incumbent(const Codeword& inc, int dim, const PhaseGrid& g) {
    if (static_cast<int>(inc.length()) != dim)
        throw DimensionMismatch("search incumbent length does not match factor dimension");
    if (inc.grid.bits != g.bits)
        throw DimensionMismatch("search incumbent grid does not match");
    if (inc.indices.back() != 0)
        throw ValidationError("search incumbent must have its last phase pinned to 0");
}

} // namespace

PhaseRange allowable_range(cx w_hat, double r_prime, double u_nn, const PhaseGrid& g) {
    if (u_nn <= 0.0) throw ValidationError("allowable_range: u_nn must be positive");
    if (r_prime < 0.0) throw ValidationError("allowable_range: r_prime must be nonnegative");
    const double bud = std::isinf(r_prime) ? kInf : r_prime * r_prime;
    return range_from_budget(w_hat, bud, u_nn, g);
}

IntersectResult intersect_ranges(const PhaseRange& r1, const PhaseRange& r2,
                                 const PhaseGrid& g) {
    IntersectResult res;
    std::vector<char> seen(g.size, 0);
    intersect_into(r1, r2, g, seen, res.phases, &res.intervals);
    return res;
}

Codeword ss(const UpperTriangular& u, double radius, const PhaseGrid& grid,
            const Codeword& incumbent, SearchStats* stats) {
    const Flat f(u);
    const int L = f.dim;
    check_incumbent(incumbent, L, grid);
    if (L == 1) return incumbent;

    const int size = grid.size;
    const std::vector<cx> unit = phase_table(grid);
    const double rsq = std::isinf(radius) ? kInf : radius * radius;

    std::vector<cx> D(static_cast<std::size_t>(L) * L, cx(0.0, 0.0));
    std::vector<double> consumed(L, 0.0);
    std::vector<cx> what(L, cx(0.0, 0.0));
    std::vector<long> kcur(L, 0), kend(L, -1);
    std::vector<int> idx(L, 0);

    // pinned last element: w = 1, p = U(L-1, L-1)
    consumed[L - 2] = f.diag[L - 1] * f.diag[L - 1];
    for (int r = 0; r <= L - 2; ++r)
        D[static_cast<std::size_t>(r) * L + (L - 2)] = f.u[static_cast<std::size_t>(r) * L + (L - 1)];

    double best_sq = rsq; // Step-5 incumbent radius (squared)
    bool found = false;
    std::vector<int> best_idx;

    std::uint64_t nodes = 0, leaves = 0, pruned = 0, updates = 0;
    std::uint64_t cmul = 0, cadd = 0, rop = 0;

    int l = L - 2;
    bool entering = true;
    while (true) {
        if (entering) {
            entering = false;
            const cx acc = D[static_cast<std::size_t>(l) * L + l];
            what[l] = -acc / f.diag[l];
            const PhaseRange pr =
                range_from_budget(what[l], budget_of(rsq, consumed[l]), f.diag[l], grid);
            cmul += 1;
            rop += 10;
            switch (pr.kind) {
                case PhaseRange::Kind::empty: ++pruned; kcur[l] = 1; kend[l] = 0; break;
                case PhaseRange::Kind::full: kcur[l] = 0; kend[l] = size - 1; break;
                case PhaseRange::Kind::interval: kcur[l] = pr.klo; kend[l] = pr.khi; break;
            }
        }
        if (kcur[l] > kend[l]) {
            ++l;
            if (l == L - 1) break;
            continue;
        }
        const long k = kcur[l]++;
        const int ki = grid.wrap_index(k);
        const cx w = unit[ki];
        const cx p = f.diag[l] * (w - what[l]);
        const double psq = std::norm(p);
        ++nodes;
        cmul += 1;
        cadd += 1;
        rop += 3;
        if (l == 0) {
            const double cost = consumed[0] + psq;
            ++leaves;
            if (stats && stats->leaf_costs) stats->leaf_costs->push_back(cost);
            if (cost < best_sq) {
                best_sq = cost;
                found = true;
                idx[0] = ki;
                best_idx = idx;
                ++updates;
            }
        } else {
            consumed[l - 1] = consumed[l] + psq;
            idx[l] = ki;
            const std::size_t col = static_cast<std::size_t>(l);
            for (int r = 0; r < l; ++r) {
                const std::size_t base = static_cast<std::size_t>(r) * L;
                D[base + col - 1] = D[base + col] + f.u[base + col] * w;
            }
            cmul += static_cast<std::uint64_t>(l);
            cadd += static_cast<std::uint64_t>(l);
            --l;
            entering = true;
        }
    }

    if (stats) {
        stats->nodes += nodes;
        stats->leaves += leaves;
        stats->pruned_levels += pruned;
        stats->incumbent_updates += updates;
        stats->flops.complex_mul += cmul;
        stats->flops.complex_add += cadd;
        stats->flops.real_op += rop;
    }
    if (!found) return incumbent;
    Codeword out;
    out.grid = grid;
    out.indices = std::move(best_idx);
    return out;
}

Codeword css(const UpperTriangular& u_obj, const UpperTriangular& u_c, double radius,
             double c_hat_sq, const PhaseGrid& grid, const Codeword& incumbent,
             SearchStats* stats) {
    const Flat f(u_obj);
    const Flat fc(u_c);
    const int L = f.dim;
    if (fc.dim != L) throw DimensionMismatch("css: factor dimensions differ");
    check_incumbent(incumbent, L, grid);

    {
        // the incumbent must already satisfy the communication constraint
        const arma::cx_vec vi = to_complex(incumbent);
        double nrm = 0.0;
        for (int r = 0; r < L; ++r) {
            cx acc(0.0, 0.0);
            for (int c = r; c < L; ++c) acc += fc.u[static_cast<std::size_t>(r) * L + c] * vi(c);
            nrm += std::norm(acc);
        }
        if (nrm > c_hat_sq * (1.0 + 1e-9))
            throw InfeasibleConstraint("css incumbent violates the communication constraint: " +
                                       std::to_string(nrm) + " > " + std::to_string(c_hat_sq));
    }
    if (L == 1) return incumbent;

    const int size = grid.size;
    const std::vector<cx> unit = phase_table(grid);
    const double rsq = std::isinf(radius) ? kInf : radius * radius;

    std::vector<cx> D(static_cast<std::size_t>(L) * L, cx(0.0, 0.0));
    std::vector<cx> Dc(static_cast<std::size_t>(L) * L, cx(0.0, 0.0));
    std::vector<double> consumed(L, 0.0), consumed_c(L, 0.0);
    std::vector<cx> what(L), what_c(L);
    std::vector<std::vector<int>> cand(L);
    std::vector<std::size_t> cpos(L, 0);
    std::vector<char> seen(size, 0);
    std::vector<int> idx(L, 0);
    for (auto& cv : cand) cv.reserve(size + 1);

    consumed[L - 2] = f.diag[L - 1] * f.diag[L - 1];
    consumed_c[L - 2] = fc.diag[L - 1] * fc.diag[L - 1];
    for (int r = 0; r <= L - 2; ++r) {
        const std::size_t base = static_cast<std::size_t>(r) * L;
        D[base + (L - 2)] = f.u[base + (L - 1)];
        Dc[base + (L - 2)] = fc.u[base + (L - 1)];
    }

    double best_sq = rsq;
    bool found = false;
    std::vector<int> best_idx;

    std::uint64_t nodes = 0, leaves = 0, pruned = 0, updates = 0;
    std::uint64_t cmul = 0, cadd = 0, rop = 0;

    int l = L - 2;
    bool entering = true;
    while (true) {
        if (entering) {
            entering = false;
            const std::size_t dl = static_cast<std::size_t>(l) * L + l;
            what[l] = -D[dl] / f.diag[l];
            what_c[l] = -Dc[dl] / fc.diag[l];
            const PhaseRange r1 =
                range_from_budget(what[l], budget_of(rsq, consumed[l]), f.diag[l], grid);
            const PhaseRange r2 =
                range_from_budget(what_c[l], budget_of(c_hat_sq, consumed_c[l]), fc.diag[l], grid);
            cmul += 2;
            rop += 20;
            cand[l].clear();
            cpos[l] = 0;
            if (r1.kind == PhaseRange::Kind::empty || r2.kind == PhaseRange::Kind::empty)
                ++pruned;
            else
                intersect_into(r1, r2, grid, seen, cand[l], nullptr);
        }
        if (cpos[l] >= cand[l].size()) {
            ++l;
            if (l == L - 1) break;
            continue;
        }
        const int ki = cand[l][cpos[l]++];
        const cx w = unit[ki];
        const cx p = f.diag[l] * (w - what[l]);
        const cx pc = fc.diag[l] * (w - what_c[l]);
        const double psq = std::norm(p);
        ++nodes;
        cmul += 2;
        cadd += 2;
        rop += 6;
        if (l == 0) {
            const double cost = consumed[0] + psq;
            ++leaves;
            if (stats && stats->leaf_costs) stats->leaf_costs->push_back(cost);
            if (cost < best_sq) {
                best_sq = cost;
                found = true;
                idx[0] = ki;
                best_idx = idx;
                ++updates;
            }
        } else {
            consumed[l - 1] = consumed[l] + psq;
            consumed_c[l - 1] = consumed_c[l] + std::norm(pc);
            idx[l] = ki;
            const std::size_t col = static_cast<std::size_t>(l);
            for (int r = 0; r < l; ++r) {
                const std::size_t base = static_cast<std::size_t>(r) * L;
                D[base + col - 1] = D[base + col] + f.u[base + col] * w;
                Dc[base + col - 1] = Dc[base + col] + fc.u[base + col] * w;
            }
            cmul += 2 * static_cast<std::uint64_t>(l);
            cadd += 2 * static_cast<std::uint64_t>(l);
            --l;
            entering = true;
        }
    }

    if (stats) {
        stats->nodes += nodes;
        stats->leaves += leaves;
        stats->pruned_levels += pruned;
        stats->incumbent_updates += updates;
        stats->flops.complex_mul += cmul;
        stats->flops.complex_add += cadd;
        stats->flops.real_op += rop;
    }
    if (!found) return incumbent;
    Codeword out;
    out.grid = grid;
    out.indices = std::move(best_idx);
    return out;
}

} // namespace sicb
