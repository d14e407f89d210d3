"""Exact dense-linear-algebra engine for small instances.

Valid at any real c; serves as the oracle for both the loop and the
stabilizer engines.  States are flat complex vectors over 2^m amplitudes
with qubit 0 the most significant bit.  Forced measurements are applied
without renormalization; norms are tracked explicitly and a trajectory
whose squared norm falls below NORM_TOL is reported as ZeroNormTrajectory
so callers can count the discard.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (DimensionMismatch, InvalidParameter, ResourceLimit,
                     UnsupportedLayout, ZeroNormTrajectory)
from .gates import LOOP_VALUE, entropy_of_operator, gate, von_neumann_entropy
from .layout import CircuitLayout

MAX_OPERATOR_QUBITS = 14
MAX_TFDS_QUBITS = 7
NORM_TOL = 1e-12


def apply_two_site(vec: np.ndarray, m: int, a: int, b: int,
                   g4: np.ndarray) -> np.ndarray:
    """Apply a two-qubit gate at sites (a, b) of an m-qubit vector.

    Also accepts a batch: any array whose last axis has size 2^m.
    """
    shape = vec.shape
    t = vec.reshape(shape[:-1] + (2,) * m)
    nb = len(shape) - 1
    t = np.moveaxis(t, (nb + a, nb + b), (-2, -1))
    moved = t.shape
    t = t.reshape(-1, 4) @ g4.T
    t = t.reshape(moved)
    t = np.moveaxis(t, (-2, -1), (nb + a, nb + b))
    return np.ascontiguousarray(t.reshape(shape))


def _iter_slots(lay: CircuitLayout):
    for t in range(1, lay.T + 1):
        for (a, b), code in zip(lay.bonds(t), lay.layers[t - 1]):
            yield t, a, b, code


def _slot_matrix(code: str, c: float) -> np.ndarray | None:
    if code == "I":
        return None
    if code == "R":
        return gate("R", c)
    if code == "S":
        return gate("SWAP")
    return gate("P")  # P = P'/2


def circuit_operator(lay: CircuitLayout) -> np.ndarray:
    """Ordered product of the layout's slot operators, 2^L x 2^L."""
    if lay.L > MAX_OPERATOR_QUBITS:
        raise ResourceLimit(
            f"dense operator limited to L <= {MAX_OPERATOR_QUBITS}, "
            f"got L = {lay.L}")
    dim = 2 ** lay.L
    U = np.eye(dim, dtype=complex)
    for _, a, b, code in _iter_slots(lay):
        g4 = _slot_matrix(code, lay.c)
        if g4 is None:
            continue
        # left-multiply: act on the output (row) index of U
        U = apply_two_site(U.T, lay.L, a, b, g4).T
    return U


def apply_layout(vec: np.ndarray, lay: CircuitLayout,
                 total_qubits: int | None = None) -> np.ndarray:
    """Apply the layout slot by slot to sites 0..L-1 of a state vector."""
    m = total_qubits if total_qubits is not None else lay.L
    if vec.shape != (2 ** m,):
        raise DimensionMismatch(
            f"state has {vec.shape}, expected ({2 ** m},)")
    for _, a, b, code in _iter_slots(lay):
        g4 = _slot_matrix(code, lay.c)
        if g4 is not None:
            vec = apply_two_site(vec, m, a, b, g4)
    return vec


def trajectory_entropy(lay: CircuitLayout) -> float:
    """Operator entanglement of the Frobenius-normalized circuit, in bits."""
    U = circuit_operator(lay)
    norm = np.linalg.norm(U)
    if norm <= NORM_TOL:
        raise ZeroNormTrajectory(f"circuit norm {norm:.3e}")
    return entropy_of_operator(U)


@dataclass(frozen=True)
class PairingState:
    """State proportional to a product of Bell kets over a site pairing."""

    pairing: tuple

    def __post_init__(self):
        pi = self.pairing
        sites = sorted(pi[i] for i in range(len(pi)))
        if sites != list(range(len(pi))) or any(
                pi[pi[i]] != i or pi[i] == i for i in range(len(pi))):
            raise InvalidParameter("pairing must be a perfect matching")

    @property
    def m(self):
        return len(self.pairing)

    def vector(self, normalized: bool = True) -> np.ndarray:
        """Amplitude 1 on every bitstring where paired sites agree."""
        m = self.m
        vec = np.zeros(2 ** m)
        pairs = [(i, self.pairing[i]) for i in range(m) if i < self.pairing[i]]
        for idx in range(2 ** m):
            bits = [(idx >> (m - 1 - s)) & 1 for s in range(m)]
            if all(bits[a] == bits[b] for a, b in pairs):
                vec[idx] = 1.0
        if normalized:
            vec /= np.sqrt(2.0) ** (m // 2)
        return vec.astype(complex)


def tfds_pairing(L: int) -> PairingState:
    """Thermofield-double pairing: site i paired with mirror site i + L."""
    return PairingState(tuple((i + L) % (2 * L) for i in range(2 * L)))


def evolve_tfds_entropy(lay: CircuitLayout) -> float:
    """Entropy between the system and its mirror after the circuit.

    The circuit acts on sites 0..L-1 of the doubled Bell-pair state;
    sites L..2L-1 are spectators.
    """
    if lay.L > MAX_TFDS_QUBITS:
        raise ResourceLimit(
            f"doubled dense state limited to L <= {MAX_TFDS_QUBITS}, "
            f"got L = {lay.L}")
    L = lay.L
    vec = tfds_pairing(L).vector()
    vec = apply_layout(vec, lay, total_qubits=2 * L)
    nrm2 = float(np.vdot(vec, vec).real)
    if nrm2 <= NORM_TOL:
        raise ZeroNormTrajectory(f"final squared norm {nrm2:.3e}")
    vec = vec / np.sqrt(nrm2)
    sv = np.linalg.svd(vec.reshape(2 ** L, 2 ** L), compute_uv=False)
    return von_neumann_entropy(sv)


def link_entropy(piece: str, c: float) -> float:
    """Entropy produced by one closed worldline feature, in bits.

    piece "two_R" interlinks two unitary crossings (vanishes at Clifford
    points); "swap_R" replaces one of them with a swap (does not vanish).
    The operator word is P'_23 (G_12 x G_34) P'_23 with outer legs open.
    """
    if piece not in ("two_R", "swap_R"):
        raise InvalidParameter(f"unknown piece {piece!r}")
    g12 = gate("R", c) if piece == "two_R" else gate("SWAP")
    g34 = gate("R", c)
    pp = np.kron(np.eye(2), np.kron(gate("Pprime"), np.eye(2)))
    word = pp @ np.kron(g12, g34) @ pp
    return entropy_of_operator(word)


def topological_invariant(bra: PairingState, ket: np.ndarray,
                          num_P: int, L: int) -> complex:
    """Loop-counting invariant n^{L/2 + #P} <bra|ket> with n = 2."""
    vec = bra.vector()
    if vec.shape != ket.shape:
        raise DimensionMismatch(
            f"bra dimension {vec.shape[0]} != ket dimension {ket.shape[0]}")
    return LOOP_VALUE ** (L / 2 + num_P) * complex(np.vdot(vec, ket))


def total_parity(state: np.ndarray) -> float:
    """Expectation of the product of Z over all qubits."""
    m = int(np.log2(state.shape[0]))
    idx = np.arange(2 ** m)
    signs = 1.0 - 2.0 * (np.bitwise_count(idx) & 1)
    return float(np.sum(signs * np.abs(state) ** 2))


def renyi2_counting(lay: CircuitLayout, region) -> int:
    """Renyi-2 entropy of a crossing-only circuit by worldline counting.

    The initial state is a product of nearest-neighbor Bell pairs on
    (0,1), (2,3), ...  Each site of `region` is traced down through the
    crossing pattern, across its Bell arc, and back up; the count of
    sites whose partner ends outside the region equals S2 in bits for
    single-chirality circuits and upper-bounds it otherwise.  Identity
    slots are allowed; measurement slots are not.
    """
    L = lay.L
    region = frozenset(int(s) for s in region)
    if not all(0 <= s < L for s in region):
        raise InvalidParameter("region sites out of range")
    for _, _, _, code in _iter_slots(lay):
        if code == "P":
            raise UnsupportedLayout(
                "worldline counting requires a measurement-free layout")

    def down_up(site, direction):
        layers = range(lay.T, 0, -1) if direction < 0 else range(1, lay.T + 1)
        s = site
        for t in layers:
            for (a, b), code in zip(lay.bonds(t), lay.layers[t - 1]):
                if code in ("R", "S") and s in (a, b):
                    s = b if s == a else a
                    break
        return s

    count = 0
    for site in region:
        bottom = down_up(site, -1)
        partner_bottom = bottom ^ 1
        top = down_up(partner_bottom, +1)
        if top not in region:
            count += 1
    return count
