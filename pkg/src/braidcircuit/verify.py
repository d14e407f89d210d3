"""Machine checks of the algebraic and topological gate identities.

Everything here is verified as a dense matrix identity on 3 or 4 sites;
failures are reported, never raised.  The report also records any
unit-modulus phase slack so convention differences are visible instead of
silently absorbed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .gates import RParams, arccot, dual_transpose, gate

DEFAULT_TOL = 1e-10


@dataclass
class RelationReport:
    name: str
    c: float | None
    max_dev: float
    passed: bool
    phase_note: complex | None = None
    tol: float = DEFAULT_TOL

    def to_dict(self):
        d = {
            "name": self.name,
            "c": self.c,
            "max_dev": self.max_dev,
            "passed": self.passed,
            "tol": self.tol,
        }
        if self.phase_note is not None:
            d["phase_note"] = [self.phase_note.real, self.phase_note.imag]
        return d


def embed(g4: np.ndarray, site: int, n_sites: int) -> np.ndarray:
    """g4 acting on (site, site+1) of an open n_sites chain, 0-based."""
    m = np.eye(2 ** site, dtype=complex)
    m = np.kron(m, g4)
    m = np.kron(m, np.eye(2 ** (n_sites - site - 2), dtype=complex))
    return m


def _report(name, c, lhs, rhs, tol=DEFAULT_TOL):
    dev = float(np.max(np.abs(lhs - rhs)))
    return RelationReport(name=name, c=c, max_dev=dev, passed=dev < tol,
                          tol=tol)


def verify_gate_properties(c: float, tol: float = DEFAULT_TOL):
    """Unitarity, Yang-Baxter, dual-unitarity, decomposition, XXZ frame."""
    R = gate("R", c)
    Rd = gate("Rdag", c)
    I4 = np.eye(4, dtype=complex)
    reports = [
        _report("unitarity", c, R @ Rd, I4, tol),
    ]

    R12 = embed(R, 0, 3)
    R23 = embed(R, 1, 3)
    reports.append(_report("yang_baxter", c, R12 @ R23 @ R12,
                           R23 @ R12 @ R23, tol))

    # Dual-unitarity: both leg-grouping conventions are tried and the
    # passing one(s) recorded by name.
    for conv in ("oi", "io"):
        dt = dual_transpose(R, convention=conv)
        reports.append(_report(f"dual_unitarity[{conv}]", c,
                               dt @ dt.conj().T, I4, tol))

    alpha = 1.0 + c * c
    decomposed = (1j * I4 - 1j * gate("Pprime") + c * gate("SWAP"))
    reports.append(_report("three_piece_decomposition", c,
                           math.sqrt(alpha) * R, decomposed, tol))

    # XXZ frame: V R V^dag is a pure phase matrix with phi = arccot(c).
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    v1 = math.cos(math.pi / 4) * np.eye(2) + 1j * math.sin(math.pi / 4) * x
    V = np.kron(v1, v1)
    ph = arccot(c)
    ep, em = np.exp(1j * ph), np.exp(-1j * ph)
    target = np.array(
        [[ep, 0, 0, 0],
         [0, 0, em, 0],
         [0, em, 0, 0],
         [0, 0, 0, ep]], dtype=complex)
    reports.append(_report("xxz_frame", c, V @ R @ V.conj().T, target, tol))
    return reports


def verify_brauer(tol: float = DEFAULT_TOL):
    """Relations of the swap/projector (Brauer) algebra on 3-4 sites."""
    S = gate("SWAP")
    Pp = gate("Pprime")
    reports = []

    S1, S2 = embed(S, 0, 3), embed(S, 1, 3)
    P1, P2 = embed(Pp, 0, 3), embed(Pp, 1, 3)
    I8 = np.eye(8, dtype=complex)

    reports.append(_report("S^2 = I", None, S1 @ S1, I8, tol))
    reports.append(_report("P'^2 = 2P'", None, P1 @ P1, 2 * P1, tol))

    S1_4, S3_4 = embed(S, 0, 4), embed(S, 2, 4)
    P1_4, P3_4 = embed(Pp, 0, 4), embed(Pp, 2, 4)
    reports.append(_report("[S_i, S_j] = 0 (|i-j|>1)", None,
                           S1_4 @ S3_4, S3_4 @ S1_4, tol))
    reports.append(_report("[S_i, P'_j] = 0 (|i-j|>1)", None,
                           S1_4 @ P3_4, P3_4 @ S1_4, tol))
    reports.append(_report("[P'_i, P'_j] = 0 (|i-j|>1)", None,
                           P1_4 @ P3_4, P3_4 @ P1_4, tol))

    reports.append(_report("braid relation for S", None,
                           S1 @ S2 @ S1, S2 @ S1 @ S2, tol))
    reports.append(_report("P'_i P'_{i+1} P'_i = P'_i", None,
                           P1 @ P2 @ P1, P1, tol))
    for lbl, (lhs, rhs) in {
        "S_i S_{i+1} P'_i = P'_{i+1} P'_i": (S1 @ S2 @ P1, P2 @ P1),
        "S_{i+1} S_i P'_{i+1} = P'_i P'_{i+1}": (S2 @ S1 @ P2, P1 @ P2),
        "P'_i S_{i+1} S_i = P'_i P'_{i+1}": (P1 @ S2 @ S1, P1 @ P2),
        "P'_{i+1} S_i S_{i+1} = P'_{i+1} P'_i": (P2 @ S1 @ S2, P2 @ P1),
    }.items():
        reports.append(_report(lbl, None, lhs, rhs, tol))
    reports.append(_report("S_i P'_i = P'_i", None, S1 @ P1, P1, tol))
    reports.append(_report("P'_i S_i = P'_i", None, P1 @ S1, P1, tol))
    reports.append(_report("P'_i S_{i+1} P'_i = P'_i", None,
                           P1 @ S2 @ P1, P1, tol))
    reports.append(_report("P'_{i+1} S_i P'_{i+1} = P'_{i+1}", None,
                           P2 @ S1 @ P2, P2, tol))
    return reports


def verify_bmw(c: float, tol: float = DEFAULT_TOL):
    """Relations of the crossing/projector (BMW-type) algebra at one c."""
    par = RParams.from_c(c)
    R = gate("R", c)
    Rd = gate("Rdag", c)
    Pp = gate("Pprime")
    reports = []

    R1, R2 = embed(R, 0, 3), embed(R, 1, 3)
    Rd1, Rd2 = embed(Rd, 0, 3), embed(Rd, 1, 3)
    P1, P2 = embed(Pp, 0, 3), embed(Pp, 1, 3)
    I8 = np.eye(8, dtype=complex)

    skein = (2j / math.sqrt(par.alpha)) * (I8 - P1)
    reports.append(_report("skein: R - R^dag", c, R1 - Rd1, skein, tol))

    for lbl, (lhs, rhs) in {
        "R_i P'_i = k+ P'_i": (R1 @ P1, par.k_plus * P1),
        "P'_i R_i = k+ P'_i": (P1 @ R1, par.k_plus * P1),
        "P'_i R_{i+1} P'_i = k- P'_i": (P1 @ R2 @ P1, par.k_minus * P1),
        "P'_{i+1} R_i P'_{i+1} = k- P'_{i+1}": (P2 @ R1 @ P2,
                                                par.k_minus * P2),
        "R_{i+1} P'_i R_{i+1} = R^dag_i P'_{i+1} R^dag_i":
            (R2 @ P1 @ R2, Rd1 @ P2 @ Rd1),
        "R_i P'_{i+1} R_i = R^dag_{i+1} P'_i R^dag_{i+1}":
            (R1 @ P2 @ R1, Rd2 @ P1 @ Rd2),
        "R_{i+1} P'_i P'_{i+1} = R^dag_i P'_{i+1}":
            (R2 @ P1 @ P2, Rd1 @ P2),
        "R_i P'_{i+1} P'_i = R^dag_{i+1} P'_i":
            (R1 @ P2 @ P1, Rd2 @ P1),
        "P'_{i+1} P'_i R_{i+1} = P'_{i+1} R^dag_i":
            (P2 @ P1 @ R2, P2 @ Rd1),
        "P'_i P'_{i+1} R_i = P'_i R^dag_{i+1}":
            (P1 @ P2 @ R1, P1 @ Rd2),
    }.items():
        reports.append(_report(lbl, c, lhs, rhs, tol))

    # Inequality witness: R is a genuine braid generator, R^2 != I
    # (except in the swap limit), so passed means the deviation is LARGE.
    dev = float(np.max(np.abs(R1 @ R1 - I8)))
    reports.append(RelationReport(name="R^2 != I (witness)", c=c,
                                  max_dev=dev, passed=dev > tol, tol=tol))
    return reports


@dataclass
class HopfResult:
    """Closed-diagram value of the two-crossing (Hopf) link.

    dense        -- 16 <psi| P_23 R_12 R_34 P_23 |psi> by direct contraction
    deloop_value -- the same diagram evaluated by the delooping rules,
                    n^2 + (2i/sqrt(alpha)) n (k_minus - k_plus)
    closed_form  -- reference value 4(c-1)^2/(1+c^2)
    """

    c: float
    dense: complex
    deloop_value: complex
    closed_form: float

    @property
    def modulus_dev(self) -> float:
        return abs(abs(self.dense) - self.closed_form)

    @property
    def phase(self) -> complex:
        a = abs(self.dense)
        return self.dense / a if a > 1e-14 else complex(1.0)

    def to_dict(self):
        return {
            "c": self.c,
            "dense": [self.dense.real, self.dense.imag],
            "deloop_value": [self.deloop_value.real, self.deloop_value.imag],
            "closed_form": self.closed_form,
            "modulus_dev": self.modulus_dev,
        }


def hopf_invariant(c: float) -> HopfResult:
    """Evaluate the Hopf-link diagram three ways.

    The dense route contracts the 4-site operator word directly; the
    deloop route applies the skein relation and curl factors.  Those two
    agree to machine precision for every real c.  The closed_form field is
    the reference expression 4(c-1)^2/(1+c^2); it coincides with the other
    two routes in modulus only at the Clifford points c in {0, +-1} (see
    the acceptance report for the recorded discrepancy off those points).
    """
    par = RParams.from_c(c)
    bell = gate("BellKet")[:, 0]
    psi = np.kron(bell, bell) / 2.0
    P23 = embed(gate("P"), 1, 4)
    R12 = embed(gate("R", c), 0, 4)
    R34 = embed(gate("R", c), 2, 4)
    word = P23 @ R12 @ R34 @ P23
    dense = 16.0 * complex(np.vdot(psi, word @ psi))

    n = par.n
    deloop = n * n + (2j / math.sqrt(par.alpha)) * n * (par.k_minus
                                                        - par.k_plus)
    closed = 4.0 * (c - 1.0) ** 2 / (1.0 + c * c)
    return HopfResult(c=c, dense=dense, deloop_value=deloop,
                      closed_form=closed)


def run_verification(c_values, tol: float = DEFAULT_TOL):
    """All suites over a list of c values; returns a flat report list."""
    reports = list(verify_brauer(tol))
    for c in c_values:
        reports.extend(verify_gate_properties(c, tol))
        reports.extend(verify_bmw(c, tol))
    return reports
