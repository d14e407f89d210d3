import numpy as np
import pytest

from braidcircuit import verify

C_GRID = [-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0]


def test_gate_property_suite_passes_everywhere():
    for c in C_GRID + [0.37, 13.2]:
        for rep in verify.verify_gate_properties(c):
            assert rep.passed, f"{rep.name} failed at c={c}: {rep.max_dev}"


def test_brauer_relations_pass():
    for rep in verify.verify_brauer():
        assert rep.passed, f"{rep.name}: {rep.max_dev}"


def test_skein_and_delooping_pass_on_grid():
    for c in C_GRID:
        for rep in verify.verify_bmw(c):
            assert rep.passed, f"{rep.name} at c={c}: {rep.max_dev}"


def test_r_squared_differs_from_identity_off_degenerate_point():
    # the braid generator is not an involution; the suite records a witness
    reps = {r.name: r for r in verify.verify_bmw(1.0)}
    assert "R^2 != I (witness)" in reps
    assert reps["R^2 != I (witness)"].passed


def test_report_serialization():
    rep = verify.verify_gate_properties(1.0)[0]
    d = rep.to_dict()
    assert set(d) >= {"name", "c", "max_dev", "passed", "tol"}


class TestClosedTwoLoop:
    """The fully contracted two-crossing diagram and its scalar value."""

    def test_dense_value_closed_form(self):
        # independent hand contraction gives 4(c^2-1)/(1+c^2), real
        for c in C_GRID + [0.37, -1.7]:
            res = verify.hopf_invariant(c)
            want = 4 * (c * c - 1) / (1 + c * c)
            assert res.dense == pytest.approx(want, abs=1e-10)
            assert abs(res.dense.imag) < 1e-12

    def test_delooping_route_agrees_with_dense(self):
        for c in C_GRID:
            res = verify.hopf_invariant(c)
            assert res.deloop_value == pytest.approx(res.dense, abs=1e-10)

    def test_reference_formula_at_special_points(self):
        # the quoted closed form matches the contraction only at c in {0, 1}
        assert verify.hopf_invariant(1.0).modulus_dev < 1e-10
        assert verify.hopf_invariant(0.0).modulus_dev < 1e-10
        assert verify.hopf_invariant(0.5).modulus_dev > 1.0

    def test_phase_recorded_at_zero(self):
        res = verify.hopf_invariant(0.0)
        assert res.dense == pytest.approx(-4.0)
        assert res.phase == pytest.approx(-1.0)


def test_run_verification_aggregates():
    reports = verify.run_verification([0.0, 1.0])
    assert all(r.passed for r in reports)
    names = {r.name for r in reports}
    assert "unitarity" in names and "yang_baxter" in names
