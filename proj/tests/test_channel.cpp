// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

using namespace sicb;
using test::rng_t;

namespace {

RadioConfig paper_radio() {
    return RadioConfig::from_carrier(28e9, 20.0, -110.0, 0.16, 0.67);
}

} // namespace

TEST_CASE("steering vector closed forms") {
    const arma::cx_vec broadside = steering(0.0, 4);
    for (auto e : broadside) CHECK(std::abs(e - cx(1, 0)) < 1e-15);

    const arma::cx_vec endfire = steering(M_PI / 2, 2);
    CHECK(std::abs(endfire(1) - cx(-1, 0)) < 1e-12);

    const arma::cx_vec thirty = steering(M_PI / 6, 3); // sin(30 deg) = 1/2
    CHECK(std::abs(thirty(1) - cx(0, 1)) < 1e-12);
    CHECK(std::abs(thirty(2) - cx(-1, 0)) < 1e-12);
}

TEST_CASE("steering properties: unit modulus, conjugate symmetry") {
    rng_t rng(47);
    std::uniform_real_distribution<double> ad(-M_PI / 2, M_PI / 2);
    for (int trial = 0; trial < 50; ++trial) {
        const double th = ad(rng);
        const arma::cx_vec a = steering(th, 6);
        for (auto e : a) CHECK(std::abs(std::abs(e) - 1.0) < 1e-14);
        CHECK(arma::norm(steering(-th, 6) - arma::conj(a)) < 1e-12);
    }
}

TEST_CASE("coupling_coefficient term-by-term oracle") {
    const RadioConfig r = paper_radio();
    RadioConfig zero = r;
    zero.g2 = 0.0;
    zero.g3 = 0.0;
    CHECK(coupling_coefficient(0.01, zero) == 0.0);

    const double lam = r.wavelength_m;
    CHECK(lam == doctest::Approx(0.010707).epsilon(1e-4));
    const double d = 0.01;
    const double t1 = 0.67 * 0.67 * lam * lam / (16 * M_PI * M_PI * d * d);
    const double t2 = 0.16 * 0.16 * lam / (4 * M_PI * M_PI * d);
    const double t3 = 2 * 0.67 * 0.16 * std::pow(lam, 1.5) / (8 * M_PI * M_PI * std::pow(d, 1.5));
    CHECK(coupling_coefficient(d, r) == doctest::Approx(t1 + t2 + t3).epsilon(1e-14));

    double prev = coupling_coefficient(0.001, r);
    for (double dd = 0.002; dd <= 1.0; dd *= 1.5) {
        const double cur = coupling_coefficient(dd, r);
        CHECK(cur < prev);
        prev = cur;
    }
    CHECK_THROWS_AS(coupling_coefficient(0.0, r), NonPositiveDistance);
}

TEST_CASE("si_channel single-pair phases") {
    const RadioConfig r = paper_radio();
    const double lam = r.wavelength_m;

    DeviceGeometry g;
    g.tx_positions = {{0.0, 0.0}};
    g.rx_positions = {{0.0, lam}};
    arma::cx_mat h = si_channel(g, r);
    CHECK(std::abs(std::arg(h(0, 0))) < 1e-9); // full wavelength wraps to phase 0

    g.rx_positions = {{0.0, lam / 2}};
    h = si_channel(g, r);
    CHECK(std::abs(std::abs(std::arg(h(0, 0))) - M_PI) < 1e-9);
}

TEST_CASE("si_channel per-entry oracle and modulus identity") {
    const RadioConfig r = paper_radio();
    DeviceGeometry g;
    const double sp = r.wavelength_m / 2;
    g.tx_positions = DeviceGeometry::ula(0.075, 0.075, 1, 0, 4, sp);
    g.rx_positions = DeviceGeometry::ula(0.075, 0.0, 1, 0, 4, sp);
    const arma::cx_mat h = si_channel(g, r);
    REQUIRE(h.n_rows == 4);
    REQUIRE(h.n_cols == 4);
    for (arma::uword i = 0; i < 4; ++i) {
        for (arma::uword j = 0; j < 4; ++j) {
            const double dx = g.rx_positions[i][0] - g.tx_positions[j][0];
            const double dy = g.rx_positions[i][1] - g.tx_positions[j][1];
            const double d = std::sqrt(dx * dx + dy * dy);
            const double beta = coupling_coefficient(d, r);
            CHECK(std::norm(h(i, j)) == doctest::Approx(beta).epsilon(1e-12));
            const cx expect = std::polar(std::sqrt(beta), -2 * M_PI * d / r.wavelength_m);
            CHECK(std::abs(h(i, j) - expect) < 1e-12 * std::abs(expect));
        }
    }
}

TEST_CASE("worst_case_path_gain formula oracle") {
    const RadioConfig r = paper_radio();
    const double a1 = worst_case_path_gain({5.0, -10.0}, r);
    const double a2 = worst_case_path_gain({10.0, -10.0}, r);
    CHECK(a1 / a2 == doctest::Approx(4.0).epsilon(1e-12));

    RadioConfig unit = r;
    unit.gt = 1.0;
    unit.gr = 1.0;
    const double lam = unit.wavelength_m;
    const double closed = lam / (std::pow(4 * M_PI, 1.5) * 100.0); // sigma = 0 dBsm, r = 10
    CHECK(worst_case_path_gain({10.0, 0.0}, unit) == doctest::Approx(closed).epsilon(1e-12));

    const double sigma_lin = std::pow(10.0, -1.0);
    const double expect =
        std::sqrt(lam * lam * sigma_lin / (std::pow(4 * M_PI, 3.0) * std::pow(10.0, 4.0)));
    CHECK(worst_case_path_gain({10.0, -10.0}, r) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("sensing_channel composition") {
    const RadioConfig r = paper_radio();
    // pick RCS so the path amplitude is exactly 1
    const double lam = r.wavelength_m;
    const double rcs_for_unit = 10.0 * std::log10(std::pow(4 * M_PI, 3.0) / (lam * lam));
    PathSet one = {{0.0, 1.0, rcs_for_unit, 0.0}};
    const arma::cx_mat h = sensing_channel(one, 3, 4, r);
    for (auto e : h) CHECK(std::abs(e - cx(1, 0)) < 1e-9);

    const arma::vec sv = arma::svd(h);
    CHECK(sv(1) < 1e-10 * sv(0)); // rank 1

    rng_t rng(53);
    std::uniform_real_distribution<double> ad(-M_PI / 2, M_PI / 2);
    PathSet two = {{ad(rng), 8.0, -5.0, 0.3}, {ad(rng), 12.0, -12.0, 2.1}};
    const arma::cx_mat h2 = sensing_channel(two, 4, 4, r);
    arma::cx_mat direct(4, 4, arma::fill::zeros);
    for (const auto& p : two) {
        const double amp = worst_case_path_gain({p.distance_m, p.rcs_dbsm}, r);
        direct += std::polar(amp, p.phase_rad) * steering(p.angle_rad, 4) *
                  steering(p.angle_rad, 4).t();
    }
    CHECK(arma::norm(h2 - direct, "fro") < 1e-12 * arma::norm(direct, "fro"));
    CHECK(arma::rank(h2) <= 2);
}

TEST_CASE("geometry validation") {
    DeviceGeometry g;
    g.tx_positions = {{0, 0}, {0.01, 0}, {0.025, 0}}; // non-uniform spacing
    g.rx_positions = {{0, 0.1}};
    CHECK_THROWS_AS(g.validate(), ValidationError);
    g.tx_positions = {{0, 0}, {0.01, 0}, {0.02, 0}};
    CHECK_NOTHROW(g.validate());
    g.rx_positions = {{0.01, 0.0}}; // coincides with a TX element
    CHECK_THROWS_AS(g.validate(), ValidationError);
}

TEST_CASE("radio config wavelength consistency") {
    const RadioConfig r = paper_radio();
    CHECK(r.wavelength_m == doctest::Approx(kSpeedOfLight / 28e9).epsilon(1e-12));
    CHECK(r.tx_power_mw() == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(r.noise_total_mw() == doctest::Approx(1e-11).epsilon(1e-12));
    CHECK_THROWS_AS(RadioConfig::from_carrier(-1, 0, 0, 0, 0), ValidationError);
}
