// SPDX-License-Identifier: Apache-2.0
#ifndef SICB_SEARCH_HPP
#define SICB_SEARCH_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "sicb/flops.hpp"
#include "sicb/numerics.hpp"
#include "sicb/phase_grid.hpp"

namespace sicb {

/// Allowable phase set at one search level, on the unwrapped real line.
/// Interval bounds are exact grid multiples stored in grid units, so
/// lo = klo * step, hi = khi * step with khi - klo < size unless full.
struct PhaseRange {
    enum class Kind { empty, full, interval };
    Kind kind = Kind::empty;
    long klo = 0;
    long khi = 0;

    static PhaseRange empty_range() { return {}; }
    static PhaseRange full_range() { return {Kind::full, 0, 0}; }
    static PhaseRange interval(long klo, long khi) { return {Kind::interval, klo, khi}; }
    double lo(const PhaseGrid& g) const { return g.phase(klo); }
    double hi(const PhaseGrid& g) const { return g.phase(khi); }
};

/// Feasible phases for one antenna element given the per-level residual
/// radius: the set {phi in D : u_nn^2 |e^{j phi} - w_hat|^2 <= r_prime^2}.
/// Empty when the cosine bound exceeds 1, full when it is below -1, otherwise
/// the grid-rounded interval around arg(w_hat). A zero w_hat degenerates to
/// full iff r_prime^2 >= u_nn^2.
PhaseRange allowable_range(cx w_hat, double r_prime, double u_nn, const PhaseGrid& g);

/// Intersection of two allowable ranges as one or two ascending intervals of
/// grid phases, reduced mod 2*pi. Phases are wrapped grid indices in
/// enumeration order, deduplicated.
struct IntersectResult {
    std::vector<std::pair<long, long>> intervals; ///< post-normalization, grid units
    std::vector<int> phases;                      ///< wrapped indices, enumeration order
};
IntersectResult intersect_ranges(const PhaseRange& r1, const PhaseRange& r2,
                                 const PhaseGrid& g);

/// Per-search instrumentation. leaf_costs, when set, records the squared cost
/// of every leaf reached (used by pruning-soundness replay checks).
struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t leaves = 0;
    std::uint64_t pruned_levels = 0;
    std::uint64_t incumbent_updates = 0;
    FlopCounter flops;
    std::vector<double>* leaf_costs = nullptr;
};

/// Depth-first sphere search for the codeword minimizing ||U w||^2 with the
/// last phase pinned to 0, over codewords inside the given radius. Returns
/// the incumbent unchanged when no leaf beats the initial radius strictly.
/// Callers must guarantee radius >= ||U * to_complex(incumbent)||.
Codeword ss(const UpperTriangular& u, double radius, const PhaseGrid& grid,
            const Codeword& incumbent, SearchStats* stats = nullptr);

/// Constrained sphere search: minimizes ||U_obj v||^2 subject to
/// ||U_c v||^2 <= c_hat_sq, exploring per level only the intersection of the
/// two allowable ranges. Throws InfeasibleConstraint when the incumbent
/// violates the constraint.
Codeword css(const UpperTriangular& u_obj, const UpperTriangular& u_c, double radius,
             double c_hat_sq, const PhaseGrid& grid, const Codeword& incumbent,
             SearchStats* stats = nullptr);

} // namespace sicb

#endif
