"""Phase-free stabilizer engine for the Clifford point c = 1.

Entanglement entropies of stabilizer states do not depend on the signs of
the stabilizer generators, so the tableau stores only the X/Z bit matrix
(bit-packed, one uint64 word per 64 qubits).  The circuit acts on a
thermofield-double ladder: 2L qubits, system on 0..L-1, mirror copy on
L..2L-1, initialised in L Bell pairs (i, i+L).

Gate updates were derived from the Heisenberg action at c = 1:

    X1 -> Y1 Z2    X2 -> Z1 Y2    Z1 -> Y1 X2    Z2 -> X1 Y2

which in symplectic bits (x, z) per qubit reads

    x1' = x1^z1^z2   z1' = x1^z1^x2   x2' = z1^x2^z2   z2' = x1^x2^z2

A projector slot is a forced measurement of X1X2 then Z1Z2 with the
outcome discarded (signs are not tracked and entropies do not see them).
Entanglement of a region = GF(2) rank of the generator matrix restricted
to the region's columns, minus the region size; in bits (log base 2).
"""

from __future__ import annotations

import numba
import numpy as np

from . import rng
from .errors import InvalidParameter, UnsupportedParameter
from .layout import CircuitLayout

CODE_R = rng.CODE_R
CODE_S = rng.CODE_S
CODE_P = rng.CODE_P
CODE_I = rng.CODE_I


@numba.njit(inline="always")
def _get(row, qb):
    return (row[qb >> 6] >> numba.uint64(qb & 63)) & numba.uint64(1)


@numba.njit(inline="always")
def _put(row, qb, bit):
    w = qb >> 6
    m = numba.uint64(1) << numba.uint64(qb & 63)
    if bit:
        row[w] |= m
    else:
        row[w] &= ~m


@numba.njit(cache=True)
def _init_tfds(L):
    n = 2 * L
    wq = (n + 63) // 64
    xs = np.zeros((n, wq), dtype=np.uint64)
    zs = np.zeros((n, wq), dtype=np.uint64)
    for i in range(L):
        _put(xs[i], i, 1)
        _put(xs[i], i + L, 1)
        _put(zs[L + i], i, 1)
        _put(zs[L + i], i + L, 1)
    return xs, zs


@numba.njit(cache=True)
def _apply_r(xs, zs, a, b):
    n = xs.shape[0]
    for i in range(n):
        x1 = _get(xs[i], a)
        z1 = _get(zs[i], a)
        x2 = _get(xs[i], b)
        z2 = _get(zs[i], b)
        _put(xs[i], a, x1 ^ z1 ^ z2)
        _put(zs[i], a, x1 ^ z1 ^ x2)
        _put(xs[i], b, z1 ^ x2 ^ z2)
        _put(zs[i], b, x1 ^ x2 ^ z2)


@numba.njit(cache=True)
def _apply_swap(xs, zs, a, b):
    n = xs.shape[0]
    for i in range(n):
        xa = _get(xs[i], a)
        xb = _get(xs[i], b)
        _put(xs[i], a, xb)
        _put(xs[i], b, xa)
        za = _get(zs[i], a)
        zb = _get(zs[i], b)
        _put(zs[i], a, zb)
        _put(zs[i], b, za)


@numba.njit(cache=True)
def _measure_pair(xs, zs, a, b, basis):
    """Forced measurement of XaXb (basis 0) or ZaZb (basis 1)."""
    n = xs.shape[0]
    pivot = -1
    for i in range(n):
        if basis == 0:
            anti = _get(zs[i], a) ^ _get(zs[i], b)
        else:
            anti = _get(xs[i], a) ^ _get(xs[i], b)
        if anti:
            if pivot < 0:
                pivot = i
            else:
                for w in range(xs.shape[1]):
                    xs[i, w] ^= xs[pivot, w]
                    zs[i, w] ^= zs[pivot, w]
    if pivot >= 0:
        for w in range(xs.shape[1]):
            xs[pivot, w] = 0
            zs[pivot, w] = 0
        if basis == 0:
            _put(xs[pivot], a, 1)
            _put(xs[pivot], b, 1)
        else:
            _put(zs[pivot], a, 1)
            _put(zs[pivot], b, 1)


@numba.njit(cache=True)
def _apply_slot(xs, zs, a, b, code):
    if code == CODE_R:
        _apply_r(xs, zs, a, b)
    elif code == CODE_S:
        _apply_swap(xs, zs, a, b)
    elif code == CODE_P:
        _measure_pair(xs, zs, a, b, 0)
        _measure_pair(xs, zs, a, b, 1)
    # CODE_I: nothing


@numba.njit(cache=True)
def _apply_codes(xs, zs, L, codes, first_layer):
    T = codes.shape[0]
    for t in range(T):
        offset = (first_layer + t + 1) % 2
        for j in range(L // 2):
            a = (2 * j + offset) % L
            b = (2 * j + 1 + offset) % L
            _apply_slot(xs, zs, a, b, codes[t, j])


@numba.njit(cache=True)
def _rank_region(xs, zs, region):
    """GF(2) rank of the generator matrix on the region's (x, z) columns."""
    n = xs.shape[0]
    m = 0
    for qb in range(region.shape[0]):
        if region[qb]:
            m += 1
    cols = 2 * m
    wq = (cols + 63) // 64
    packed = np.zeros((n, wq), dtype=np.uint64)
    for i in range(n):
        col = 0
        for qb in range(region.shape[0]):
            if region[qb]:
                if _get(xs[i], qb):
                    packed[i, col >> 6] |= numba.uint64(1) << numba.uint64(col & 63)
                col += 1
                if _get(zs[i], qb):
                    packed[i, col >> 6] |= numba.uint64(1) << numba.uint64(col & 63)
                col += 1
    rank = 0
    for col in range(cols):
        w = col >> 6
        msk = numba.uint64(1) << numba.uint64(col & 63)
        piv = -1
        for i in range(rank, n):
            if packed[i, w] & msk:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            for ww in range(wq):
                tmp = packed[piv, ww]
                packed[piv, ww] = packed[rank, ww]
                packed[rank, ww] = tmp
        for i in range(n):
            if i != rank and (packed[i, w] & msk):
                for ww in range(wq):
                    packed[i, ww] ^= packed[rank, ww]
        rank += 1
    return rank


@numba.njit(cache=True)
def _run_trajectory(L, T, p, q, r, seed):
    xs, zs = _init_tfds(L)
    for t in range(1, T + 1):
        offset = (t + 1) % 2
        for j in range(L // 2):
            a = (2 * j + offset) % L
            b = (2 * j + 1 + offset) % L
            code = rng.slot_gate(seed, numba.uint64(t), numba.uint64(j),
                                 p, q, r)
            _apply_slot(xs, zs, a, b, code)
    region = np.zeros(2 * L, dtype=numba.boolean)
    for i in range(L):
        region[i] = True
    return _rank_region(xs, zs, region) - L


@numba.njit(cache=True)
def _sample_entropies(L, T, p, q, r, seed, samples):
    out = np.empty(samples, dtype=np.int64)
    for s in range(samples):
        sub = rng.substream(seed, numba.uint64(1), numba.uint64(s))
        out[s] = _run_trajectory(L, T, p, q, r, sub)
    return out


class PhaseFreeTableau:
    """2L-qubit sign-free stabilizer state of the doubled system."""

    def __init__(self, L: int):
        if L < 2 or L % 2:
            raise InvalidParameter(f"L must be even and >= 2, got {L}")
        self.L = L
        self.n = 2 * L
        self.xs, self.zs = _init_tfds(L)

    def apply_gate(self, code, a: int, b: int):
        """Apply one slot (code from "RSPI" or the numeric gate codes)."""
        if isinstance(code, str):
            code = {"R": CODE_R, "S": CODE_S, "P": CODE_P, "I": CODE_I}[code]
        _apply_slot(self.xs, self.zs, a, b, code)

    def apply_layout(self, lay: CircuitLayout):
        if lay.L != self.L:
            raise InvalidParameter(
                f"layout width {lay.L} != tableau width {self.L}")
        if lay.c != 1.0:
            raise UnsupportedParameter(
                "stabilizer engine only supports the Clifford point c = 1")
        _apply_codes(self.xs, self.zs, self.L, lay.codes(), 1)

    def entanglement(self, region) -> int:
        """Entanglement entropy of a set of ladder qubits, in bits."""
        mask = np.zeros(self.n, dtype=bool)
        mask[np.asarray(region, dtype=np.intp)] = True
        k = int(mask.sum())
        return int(_rank_region(self.xs, self.zs, mask)) - k

    def system_entropy(self) -> int:
        """Entropy of the system half (qubits 0..L-1): the TFD diagnostic."""
        return self.entanglement(np.arange(self.L))

    def check(self) -> bool:
        """Generators are independent and mutually commuting."""
        full = np.ones(self.n, dtype=bool)
        if int(_rank_region(self.xs, self.zs, full)) != self.n:
            return False
        xb = _unpack(self.xs, self.n)
        zb = _unpack(self.zs, self.n)
        sym = (xb @ zb.T + zb @ xb.T) % 2
        return not sym.any()


def _unpack(packed, n):
    out = np.zeros((packed.shape[0], n), dtype=np.uint8)
    for i in range(packed.shape[0]):
        for qb in range(n):
            out[i, qb] = (int(packed[i, qb >> 6]) >> (qb & 63)) & 1
    return out


def run_layout(lay: CircuitLayout) -> int:
    """System entropy after applying a full layout to the doubled state."""
    tab = PhaseFreeTableau(lay.L)
    tab.apply_layout(lay)
    return tab.system_entropy()


def sample_entropies(L: int, T: int, p: float, q: float, r: float,
                     seed: int, samples: int) -> np.ndarray:
    """System entropies of `samples` independently drawn trajectories."""
    for name, v in (("p", p), ("q", q), ("r", r)):
        if not 0.0 <= v <= 1.0:
            raise InvalidParameter(f"{name} must be in [0, 1], got {v}")
    if L < 2 or L % 2:
        raise InvalidParameter(f"L must be even and >= 2, got {L}")
    return _sample_entropies(L, T, p, q, r, np.uint64(seed), samples)
