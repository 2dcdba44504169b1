"""Evolution families of holomorphic self-maps of the unit disk.

The heavy lifting lives in the compiled ``_evofam`` extension; the helpers
here wrap the command runners so they return parsed reports.
"""

import json

from ._evofam import (  # noqa: F401
    BasisMismatch,
    CertificationFailure,
    ConfigError,
    DiskMap,
    DomainError,
    Error,
    EvolutionFamily,
    IntervalMismatch,
    InversionFailure,
    LatticeError,
    NotDiscontinuous,
    RangeError,
    RunConfig,
    additive_eval,
    center_bound,
    family,
    fixed_origin_growth,
    glue,
    hyperbolic_sum,
    identity_deviation,
    identity_residual,
    landau_radius,
    landau_sigma_for_radius,
    lipschitz_bound,
    lu_distance,
    reverse_round_trip_distance,
    schwarz_pick_upper,
    semigroup_residual,
    univalence_certificate,
    univalence_sample_test,
)
from . import _evofam

__all__ = [name for name in dir(_evofam) if not name.startswith("_")] + [
    "config",
    "verify",
    "scan",
    "bounds",
    "counterexample",
]


def config(**fields):
    """RunConfig with the given fields set, e.g. config(family="radial", seed=3)."""
    cfg = RunConfig()
    for key, value in fields.items():
        if not hasattr(cfg, key):
            raise TypeError(f"unknown RunConfig field {key!r}")
        setattr(cfg, key, value)
    return cfg


def _run(runner, cfg, fields):
    cfg = cfg if cfg is not None else config(**fields)
    code, report, log = runner(cfg)
    return code, (json.loads(report) if report else None), log


def verify(cfg=None, **fields):
    """Axiom checks. Returns (exit_code, report dict or None, log text)."""
    return _run(_evofam.run_verify, cfg, fields)


def scan(cfg=None, **fields):
    """Continuity scan. Returns (exit_code, report dict or None, log text)."""
    return _run(_evofam.run_scan, cfg, fields)


def bounds(cfg=None, **fields):
    """Randomized bound audit. Returns (exit_code, report dict or None, log text)."""
    return _run(_evofam.run_bounds, cfg, fields)


def counterexample(cfg=None, **fields):
    """Hamel counterexample. Returns (exit_code, report dict or None, log text)."""
    return _run(_evofam.run_counterexample, cfg, fields)
