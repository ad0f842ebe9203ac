// SPDX-License-Identifier: Apache-2.0
#include "sicb/phase_grid.hpp"

#include <cmath>

namespace sicb {

PhaseGrid PhaseGrid::make(int bits) {
    if (bits < 1 || bits > 16)
        throw InvalidBits("phase grid bits must lie in [1, 16], got " + std::to_string(bits));
    PhaseGrid g;
    g.bits = bits;
    g.size = 1 << bits;
    g.step = 2.0 * M_PI / static_cast<double>(g.size);
    return g;
}

long grid_round_index(double angle, RoundMode mode, const PhaseGrid& g) {
    const double k = angle / g.step;
    const double kr = std::round(k);
    if (std::abs(k - kr) <= 1e-9 * std::max(1.0, std::abs(k)))
        return static_cast<long>(kr);
    return static_cast<long>(mode == RoundMode::ceil ? std::ceil(k) : std::floor(k));
}

double grid_round(double angle, RoundMode mode, const PhaseGrid& g) {
    return g.phase(grid_round_index(angle, mode, g));
}

int nearest_grid(double angle, const PhaseGrid& g) {
    const double k = angle / g.step;
    const double kf = std::floor(k);
    const double frac = k - kf;
    const long base = static_cast<long>(kf);
    if (std::abs(frac - 0.5) <= 1e-12) {
        const int a = g.wrap_index(base);
        const int b = g.wrap_index(base + 1);
        return std::min(a, b);
    }
    return g.wrap_index(frac < 0.5 ? base : base + 1);
}

Codeword Codeword::zeros(const PhaseGrid& g, std::size_t length) {
    if (length == 0) throw DimensionMismatch("codeword length must be >= 1");
    Codeword c;
    c.grid = g;
    c.indices.assign(length, 0);
    return c;
}

arma::cx_vec to_complex(const Codeword& c) {
    const std::size_t n = c.indices.size();
    arma::cx_vec v(n);
    for (std::size_t k = 0; k + 1 < n; ++k)
        v(k) = std::polar(1.0, c.grid.phase(c.indices[k]));
    v(n - 1) = arma::cx_double(1.0, 0.0);
    return v;
}

Codeword quantize_to_codeword(const arma::cx_vec& v, const PhaseGrid& g) {
    const std::size_t n = v.n_elem;
    if (n == 0) throw DimensionMismatch("cannot quantize an empty vector");
    Codeword c = Codeword::zeros(g, n);
    const double ref = (std::abs(v(n - 1)) > 0.0) ? std::arg(v(n - 1)) : 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double ph = (std::abs(v(k)) > 0.0) ? (std::arg(v(k)) - ref) : 0.0;
        c.indices[k] = nearest_grid(ph, g);
    }
    return c;
}

} // namespace sicb
