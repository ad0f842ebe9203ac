// SPDX-License-Identifier: Apache-2.0
#ifndef SICB_CHANNEL_HPP
#define SICB_CHANNEL_HPP

#include <armadillo>
#include <array>
#include <vector>

#include "sicb/errors.hpp"

namespace sicb {

inline constexpr double kSpeedOfLight = 299792458.0;

/// Radio constants. Powers are stored in dBm; the noise figure is the total
/// post-combining noise term (N * sigma_z^2), see Scenario docs for the
/// per-element alternative reading.
struct RadioConfig {
    double carrier_hz = 28e9;
    double wavelength_m = kSpeedOfLight / 28e9;
    double tx_power_dbm = 20.0;
    double noise_power_dbm = -110.0;
    double g2 = 0.16; ///< surface-propagation antenna gain
    double g3 = 0.67; ///< free-space antenna gain
    double gt = 1.0;  ///< TX element gain toward the sensing direction
    double gr = 1.0;  ///< RX element gain toward the sensing direction

    static RadioConfig from_carrier(double carrier_hz, double tx_power_dbm,
                                    double noise_power_dbm, double g2, double g3,
                                    double gt = 1.0, double gr = 1.0);

    double tx_power_mw() const { return std::pow(10.0, tx_power_dbm / 10.0); }
    /// Total combined noise power N * sigma_z^2, linear (mW).
    double noise_total_mw() const { return std::pow(10.0, noise_power_dbm / 10.0); }
};

/// 2-D element positions in meters; both arrays must be uniform linear arrays.
struct DeviceGeometry {
    std::vector<std::array<double, 2>> tx_positions;
    std::vector<std::array<double, 2>> rx_positions;

    /// Uniform linear array along direction (dx, dy), centered at (cx, cy).
    static std::vector<std::array<double, 2>> ula(double cx, double cy, double dx,
                                                  double dy, std::size_t count,
                                                  double spacing);
    void validate() const; ///< throws ValidationError on non-ULA layouts or coincident elements
};

struct WorstCaseTarget {
    double distance_m = 10.0;
    double rcs_dbsm = -10.0;
};

struct PathSpec {
    double angle_rad = 0.0;
    double distance_m = 10.0;
    double rcs_dbsm = 0.0;
    double phase_rad = 0.0;
};
using PathSet = std::vector<PathSpec>;

/// ULA steering vector, half-wavelength spacing: entry k = exp(j*pi*k*sin(theta)).
arma::cx_vec steering(double theta, arma::uword n);

/// Substrate coupling coefficient between two antennas at distance d.
double coupling_coefficient(double d, const RadioConfig& radio);

/// Near-field LOS self-interference channel, N x M (RX x TX):
/// entry (n, m) = sqrt(beta(d_nm)) * exp(-j*2*pi*d_nm/lambda).
arma::cx_mat si_channel(const DeviceGeometry& geom, const RadioConfig& radio);

/// Worst-case echo amplitude |alpha| from range and RCS requirements.
double worst_case_path_gain(const WorstCaseTarget& target, const RadioConfig& radio);

/// Far-field sensing channel: sum over paths of alpha_l * a_r(theta_l) a_t^H(theta_l).
arma::cx_mat sensing_channel(const PathSet& paths, arma::uword n, arma::uword m,
                             const RadioConfig& radio);

} // namespace sicb

#endif
