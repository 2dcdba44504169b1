import cmath
import math

import pytest

import evofam


def test_disk_maps():
    f = evofam.DiskMap.mobius(0.3 + 0.2j)
    z = 0.1 - 0.4j
    lam = 0.3 + 0.2j
    assert abs(f(z) - (z + lam) / (1 + lam.conjugate() * z)) < 1e-15
    g = evofam.DiskMap.compose(evofam.DiskMap.rotation(math.pi), evofam.DiskMap.scale(0.5))
    assert abs(g(z) + 0.5 * z) < 1e-15
    assert g.size() == 2
    with pytest.raises(evofam.DomainError):
        f(1.5)


def test_bounds():
    assert evofam.landau_radius(1.0) == pytest.approx(1.0)
    assert evofam.hyperbolic_sum(0.5, 0.0) == pytest.approx(0.5)
    assert evofam.schwarz_pick_upper(0.0, 0.3) == pytest.approx(0.3)


def test_families_and_residuals():
    radial = evofam.family("radial")
    assert radial.interval == (0.0, 1.0)
    assert abs(radial.at(0.0, 1.0)(0.5) - 0.5 * math.exp(-1)) < 1e-15
    assert evofam.semigroup_residual(radial) < 1e-14
    assert evofam.identity_residual(radial) == 0.0
    assert evofam.semigroup_residual(evofam.family("corrupted-demo")) > 0.01
    assert evofam.reverse_round_trip_distance(radial, 0.2, 0.8) < 1e-14
    glued = evofam.glue(evofam.family("radial", (0.0, 1.0)), evofam.family("rotation:t", (1.0, 2.0)))
    assert abs(glued.at(0.5, 1.5)(0.5) - 0.5 * math.exp(-0.5) * cmath.exp(0.5j)) < 1e-15
    with pytest.raises(evofam.IntervalMismatch):
        evofam.glue(radial, radial)
    with pytest.raises(evofam.ConfigError):
        evofam.family("hamel")


def test_univalence():
    cert = evofam.univalence_certificate(evofam.family("radial"), 0.0, 1.0)
    assert all(r > cert["sigma"] for r in cert["ratios"])
    passed, witness = evofam.univalence_sample_test(evofam.DiskMap.mobius(0.5), 0.9, 128)
    assert passed and witness is None


def test_additive_function():
    assert evofam.additive_eval(["3/2", "0"]) == pytest.approx(1.5 * math.pi)
    assert evofam.additive_eval(["0", "7"]) == 0.0
    with pytest.raises(evofam.LatticeError):
        evofam.additive_eval(["pi", "0"])


def test_commands():
    code, report, _ = evofam.verify(family="radial", n_time=5)
    assert code == 0 and report["passed"]
    code, report, _ = evofam.verify(family="corrupted-demo", n_time=5)
    assert code == 1 and not report["verdicts"]["ef3"]["passed"]
    code, report, log = evofam.verify(family="radial", interval=(1.0, 0.0))
    assert code == 2 and report is None and log
    code, report, _ = evofam.scan(family="hamel", n_time=5)
    assert code == 1
    assert not report["verdicts"]["joint_continuity"]["passed"]
    code, report, _ = evofam.counterexample()
    assert code == 0
    assert report["counterexample"]["gap"] >= 0.79
    code, report, _ = evofam.bounds(trials=50, seed=42)
    assert code == 0 and report["violation_count"] == 0


def test_config():
    cfg = evofam.config(family="rotation:sin", seed=5)
    cfg.apply_toml("[grid]\nn_time = 6\n")
    assert cfg.n_time == 6 and cfg.seed == 5
    with pytest.raises(evofam.ConfigError):
        cfg.apply_toml("seed = [")
    with pytest.raises(TypeError):
        evofam.config(colour="blue")
    first = evofam.scan(cfg)[1]
    assert first == evofam.scan(cfg)[1]
