// SPDX-License-Identifier: Apache-2.0
#include "sicb/channel.hpp"

#include <cmath>

namespace sicb {

RadioConfig RadioConfig::from_carrier(double carrier_hz, double tx_power_dbm,
                                      double noise_power_dbm, double g2, double g3,
                                      double gt, double gr) {
    if (carrier_hz <= 0.0) throw ValidationError("carrier frequency must be positive");
    if (g2 < 0.0 || g3 < 0.0 || gt < 0.0 || gr < 0.0)
        throw ValidationError("antenna gains must be nonnegative");
    RadioConfig r;
    r.carrier_hz = carrier_hz;
    r.wavelength_m = kSpeedOfLight / carrier_hz;
    r.tx_power_dbm = tx_power_dbm;
    r.noise_power_dbm = noise_power_dbm;
    r.g2 = g2;
    r.g3 = g3;
    r.gt = gt;
    r.gr = gr;
    return r;
}

std::vector<std::array<double, 2>> DeviceGeometry::ula(double cx_, double cy_, double dx,
                                                       double dy, std::size_t count,
                                                       double spacing) {
    const double norm = std::hypot(dx, dy);
    if (norm <= 0.0) throw ValidationError("ULA direction must be nonzero");
    const double ux = dx / norm, uy = dy / norm;
    std::vector<std::array<double, 2>> out(count);
    const double half = 0.5 * static_cast<double>(count - 1);
    for (std::size_t k = 0; k < count; ++k) {
        const double off = (static_cast<double>(k) - half) * spacing;
        out[k] = {cx_ + off * ux, cy_ + off * uy};
    }
    return out;
}

namespace {

void check_ula(const std::vector<std::array<double, 2>>& pos, const char* label) {
    if (pos.empty()) throw ValidationError(std::string(label) + " array has no elements");
    if (pos.size() < 2) return;
    const double ex = pos[1][0] - pos[0][0];
    const double ey = pos[1][1] - pos[0][1];
    const double d = std::hypot(ex, ey);
    if (d <= 0.0) throw ValidationError(std::string(label) + " array has coincident elements");
    for (std::size_t k = 2; k < pos.size(); ++k) {
        const double fx = pos[k][0] - pos[k - 1][0];
        const double fy = pos[k][1] - pos[k - 1][1];
        if (std::abs(fx - ex) > 1e-9 || std::abs(fy - ey) > 1e-9)
            throw ValidationError(std::string(label) + " array is not a uniform linear array");
    }
}

} // namespace

void DeviceGeometry::validate() const {
    check_ula(tx_positions, "TX");
    check_ula(rx_positions, "RX");
    for (const auto& t : tx_positions)
        for (const auto& r : rx_positions)
            if (std::hypot(t[0] - r[0], t[1] - r[1]) <= 0.0)
                throw ValidationError("TX and RX elements coincide; all pairwise distances must be positive");
}

arma::cx_vec steering(double theta, arma::uword n) {
    if (n < 1) throw DimensionMismatch("steering: array size must be >= 1");
    arma::cx_vec a(n);
    const double s = std::sin(theta);
    for (arma::uword k = 0; k < n; ++k)
        a(k) = std::polar(1.0, M_PI * static_cast<double>(k) * s);
    a(0) = arma::cx_double(1.0, 0.0);
    return a;
}

double coupling_coefficient(double d, const RadioConfig& radio) {
    if (d <= 0.0) throw NonPositiveDistance("coupling distance must be positive");
    const double lam = radio.wavelength_m;
    const double g2 = radio.g2, g3 = radio.g3;
    const double t1 = g3 * g3 * lam * lam / (16.0 * M_PI * M_PI * d * d);
    const double t2 = g2 * g2 * lam / (4.0 * M_PI * M_PI * d);
    const double t3 = 2.0 * g3 * g2 * std::pow(lam, 1.5) / (8.0 * M_PI * M_PI * std::pow(d, 1.5));
    return t1 + t2 + t3;
}

arma::cx_mat si_channel(const DeviceGeometry& geom, const RadioConfig& radio) {
    const arma::uword n = geom.rx_positions.size();
    const arma::uword m = geom.tx_positions.size();
    arma::cx_mat h(n, m);
    for (arma::uword i = 0; i < n; ++i) {
        for (arma::uword j = 0; j < m; ++j) {
            const auto& rp = geom.rx_positions[i];
            const auto& tp = geom.tx_positions[j];
            const double d = std::hypot(rp[0] - tp[0], rp[1] - tp[1]);
            if (d <= 0.0) throw NonPositiveDistance("zero TX-RX element distance");
            const double beta = coupling_coefficient(d, radio);
            h(i, j) = std::polar(std::sqrt(beta), -2.0 * M_PI * d / radio.wavelength_m);
        }
    }
    return h;
}

double worst_case_path_gain(const WorstCaseTarget& target, const RadioConfig& radio) {
    if (target.distance_m <= 0.0) throw ValidationError("target distance must be positive");
    const double sigma_lin = std::pow(10.0, target.rcs_dbsm / 10.0);
    const double lam = radio.wavelength_m;
    const double r4 = std::pow(target.distance_m, 4.0);
    const double four_pi_cubed = std::pow(4.0 * M_PI, 3.0);
    return std::sqrt(radio.gt * radio.gr * lam * lam * sigma_lin / (four_pi_cubed * r4));
}

arma::cx_mat sensing_channel(const PathSet& paths, arma::uword n, arma::uword m,
                             const RadioConfig& radio) {
    if (paths.empty()) throw ValidationError("sensing channel needs at least one path");
    arma::cx_mat h(n, m, arma::fill::zeros);
    for (const auto& p : paths) {
        const double amp = worst_case_path_gain({p.distance_m, p.rcs_dbsm}, radio);
        const arma::cx_double alpha = std::polar(amp, p.phase_rad);
        h += alpha * steering(p.angle_rad, n) * steering(p.angle_rad, m).t();
    }
    return h;
}

} // namespace sicb
