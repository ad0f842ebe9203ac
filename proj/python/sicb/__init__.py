# SPDX-License-Identifier: Apache-2.0
"""Discrete RX/TX beamforming codeword synthesis with self-interference
suppression: python bindings over the C++ core."""

from ._sicb import (  # noqa: F401
    Codeword,
    PhaseGrid,
    Scenario,
    SicbError,
    build_rx,
    build_tx,
    effective_mvdr_bound,
    exhaustive,
    fp_css,
    fp_ss,
    joint_solve,
    mvdr_cm_hq,
    quantize,
    rayleigh,
    run_sweep,
    self_check,
    sinr_db,
    steering,
)

__all__ = [
    "Codeword",
    "PhaseGrid",
    "Scenario",
    "SicbError",
    "build_rx",
    "build_tx",
    "effective_mvdr_bound",
    "exhaustive",
    "fp_css",
    "fp_ss",
    "joint_solve",
    "mvdr_cm_hq",
    "quantize",
    "rayleigh",
    "run_sweep",
    "self_check",
    "sinr_db",
    "steering",
]
