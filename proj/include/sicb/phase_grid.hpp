// SPDX-License-Identifier: Apache-2.0
#ifndef SICB_PHASE_GRID_HPP
#define SICB_PHASE_GRID_HPP

#include <armadillo>
#include <vector>

#include "sicb/errors.hpp"

namespace sicb {

/// Uniform quantized phase alphabet with 2^bits phases and step 2*pi/2^bits.
struct PhaseGrid {
    int bits = 1;
    int size = 2;
    double step = 3.14159265358979323846;

    static PhaseGrid make(int bits);

    /// Phase of grid index k on the unwrapped line (k may be negative or >= size).
    double phase(long k) const { return step * static_cast<double>(k); }

    int wrap_index(long k) const {
        long m = k % size;
        return static_cast<int>(m < 0 ? m + size : m);
    }
};

enum class RoundMode { ceil, floor };

/// Index of the nearest grid multiple >= angle (ceil) or <= angle (floor) on
/// the unwrapped real line. Angles within 1e-9 relative of an exact multiple
/// snap to it for both modes.
long grid_round_index(double angle, RoundMode mode, const PhaseGrid& g);

/// Same as grid_round_index but returns the phase in radians.
double grid_round(double angle, RoundMode mode, const PhaseGrid& g);

/// Grid index minimizing circular distance to angle; exact ties go to the
/// smaller index.
int nearest_grid(double angle, const PhaseGrid& g);

/// Constant-modulus codeword: phase indices with the last element pinned to 0.
struct Codeword {
    PhaseGrid grid;
    std::vector<int> indices;

    static Codeword zeros(const PhaseGrid& g, std::size_t length);
    std::size_t length() const { return indices.size(); }
    bool operator==(const Codeword& o) const { return indices == o.indices && grid.bits == o.grid.bits; }
};

/// Unit-modulus complex image; entry k = exp(j * indices[k] * step), last entry exactly 1.
arma::cx_vec to_complex(const Codeword& c);

/// Nearest codeword to an arbitrary complex vector: per-entry phases taken
/// relative to the last entry, then rounded to the grid. Zero entries map to
/// phase 0.
Codeword quantize_to_codeword(const arma::cx_vec& v, const PhaseGrid& g);

} // namespace sicb

#endif
