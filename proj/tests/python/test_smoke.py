# SPDX-License-Identifier: Apache-2.0
"""Smoke tests for the python bindings: the main operations are reachable and
agree with direct numpy evaluation."""

import math

import numpy as np
import pytest

import sicb


def test_steering_matches_numpy():
    theta = 0.37
    a = sicb.steering(theta, 6)
    k = np.arange(6)
    expect = np.exp(1j * math.pi * k * math.sin(theta))
    assert np.allclose(a, expect, atol=1e-14)


def test_codeword_round_trip_and_modulus():
    c = sicb.Codeword([3, 1, 0, 0], bits=2)
    v = c.to_complex()
    assert np.allclose(np.abs(v), 1.0)
    assert v[-1] == 1.0 + 0.0j
    assert sicb.quantize(v, bits=2).indices == [3, 1, 0, 0]


def test_scenario_presets():
    a = sicb.Scenario.load("A")
    assert a.rx_count == 4 and a.tx_count == 4
    assert a.bits == 8
    assert a.comm_threshold == 3.0
    h = a.si_channel()
    assert h.shape == (4, 4)
    assert np.all(np.abs(h) > 0)

    b = sicb.Scenario.load("B")
    assert b.rx_count == 8 and b.bits == 4


def test_fp_ss_beats_mvdr_baseline():
    s = sicb.Scenario.load("A")
    theta = math.radians(30.0)
    theta_c = math.radians(s.comm_direction_deg)
    v0 = sicb.quantize(sicb.steering(theta_c, s.tx_count), s.bits)
    num, den = sicb.build_rx(s, theta, v0)
    w0 = sicb.quantize(sicb.steering(theta, s.rx_count), s.bits)

    w, trace = sicb.fp_ss(num, den, w0)
    assert trace["converged"]
    rho = trace["rho_values"]
    assert all(b >= a for a, b in zip(rho, rho[1:]))

    w_mvdr = sicb.mvdr_cm_hq(s, theta, v0)
    assert sicb.rayleigh(w, num, den) >= sicb.rayleigh(w_mvdr, num, den) * (1 - 1e-9)


def test_fp_css_respects_constraint():
    s = sicb.Scenario.load("A")
    theta = math.radians(-20.0)
    theta_c = math.radians(s.comm_direction_deg)
    w0 = sicb.quantize(sicb.steering(theta, s.rx_count), s.bits)
    num, den = sicb.build_tx(s, theta, w0)
    v0 = sicb.quantize(sicb.steering(theta_c, s.tx_count), s.bits)
    v, trace = sicb.fp_css(num, den, theta_c, s.comm_threshold, v0)
    gain = abs(np.vdot(v.to_complex(), sicb.steering(theta_c, s.tx_count))) ** 2
    assert gain >= s.comm_threshold**2 - 1e-9
    assert trace["converged"]


def test_joint_dominates_and_stays_below_bound():
    s = sicb.Scenario.load("A")
    res = sicb.joint_solve(s, 30.0)
    assert res["outer_rounds"] >= 1
    sinrs = res["per_round_sinr_db"]
    assert all(b >= a for a, b in zip(sinrs, sinrs[1:]))

    alpha = s.worst_case_alpha()
    bound = sicb.effective_mvdr_bound(s, math.radians(30.0))
    assert 10 ** (res["sinr_db"] / 10) <= alpha * alpha * bound * (1 + 1e-9)


def test_exhaustive_small_instance():
    rng = np.random.default_rng(7)
    b = rng.normal(size=4) + 1j * rng.normal(size=4)
    num = np.outer(b, b.conj())
    m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    den = m.conj().T @ m + 0.3 * np.eye(4)
    best = sicb.exhaustive(num, den, bits=2)
    w0 = sicb.Codeword([0, 0, 0, 0], bits=2)
    w, _ = sicb.fp_ss(num, den, w0)
    assert sicb.rayleigh(w, num, den) == pytest.approx(sicb.rayleigh(best, num, den), rel=1e-9)


def test_run_sweep_row_count():
    s = sicb.Scenario.load("A")
    rows = sicb.run_sweep(s, ["mvdr-cm-hq", "eff-mvdr"])
    assert len(rows) == 37 * 2
    assert {r["method"] for r in rows} == {"mvdr-cm-hq", "eff-mvdr"}
    assert all(math.isfinite(r["sinr_db"]) for r in rows)


def test_self_check_passes():
    ok, report = sicb.self_check(seed=42)
    assert ok, report
