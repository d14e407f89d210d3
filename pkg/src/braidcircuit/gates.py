"""Two-qubit gate family and shared spectral primitives.

The central object is the one-parameter unitary family R(c), a braid-group
generator that decomposes into identity, Bell projector and swap pieces:

    sqrt(1 + c^2) * R(c) = i*I - i*P' + c*SWAP

with P' = |uu + dd><uu + dd| (unnormalized, P'^2 = 2 P').  Basis order is
lexicographic with up = 0: (uu, ud, du, dd).  All engines and file formats
inherit this convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvalidParameter, NotNormalized

#: loop value of a closed worldline
LOOP_VALUE = 2.0

#: singular values below this are treated as exact zeros
SVD_TOL = 1e-12


def arccot(c: float) -> float:
    """Continuous arccot branch on (0, pi): arctan(1/c) shifted for c < 0."""
    if c > 0:
        return math.atan(1.0 / c)
    if c < 0:
        return math.pi + math.atan(1.0 / c)
    return math.pi / 2


@dataclass(frozen=True)
class RParams:
    """Derived scalar parameters of the gate family at a given c.

    k_plus / k_minus are the curl factors that appear when a crossing is
    closed on itself; they satisfy R P' = k_plus P' and P'_i R_{i+1} P'_i =
    k_minus P'_i as exact matrix identities, which fixes them to
    exp(-/+ i*phi) with phi = arccot(c).  The factor g = (k_plus+k_minus)/2
    is the weight a swap dot contributes when it sticks two distinct loops
    together.
    """

    c: float
    alpha: float
    a: complex
    b: complex
    theta: float
    phi: float
    k_plus: complex
    k_minus: complex
    g: float
    n: float

    @classmethod
    def from_c(cls, c: float) -> "RParams":
        if not math.isfinite(c):
            raise InvalidParameter(f"gate parameter must be finite, got {c}")
        phi = arccot(c)
        k_plus = complex(math.cos(phi), -math.sin(phi))
        return cls(
            c=c,
            alpha=1.0 + c * c,
            a=1j,
            b=-1j,
            theta=math.atan(c),
            phi=phi,
            k_plus=k_plus,
            k_minus=k_plus.conjugate(),
            g=c / math.sqrt(1.0 + c * c),
            n=LOOP_VALUE,
        )


_I4 = np.eye(4, dtype=complex)
_SWAP = np.array(
    [[1, 0, 0, 0],
     [0, 0, 1, 0],
     [0, 1, 0, 0],
     [0, 0, 0, 1]], dtype=complex)
_BELL = np.array([1, 0, 0, 1], dtype=complex)
_PPRIME = np.outer(_BELL, _BELL)

GATE_KINDS = ("R", "Rdag", "Pprime", "P", "I2", "SWAP", "BellKet", "BellBra")


def gate(kind: str, c: float = 0.0) -> np.ndarray:
    """Dense matrix for one member of the gate family.

    R and Rdag depend on c; the other kinds ignore it.  BellKet/BellBra are
    the unnormalized pair creation/annihilation vectors, returned as (4, 1)
    and (1, 4) arrays so the diagrammatic direction stays visible in shapes.
    """
    if not math.isfinite(c):
        raise InvalidParameter(f"gate parameter must be finite, got {c}")
    if kind == "R" or kind == "Rdag":
        norm = 1.0 / math.sqrt(1.0 + c * c)
        m = norm * (1j * _I4 - 1j * _PPRIME + c * _SWAP)
        return m.conj().T.copy() if kind == "Rdag" else m
    if kind == "Pprime":
        return _PPRIME.copy()
    if kind == "P":
        return _PPRIME / 2.0
    if kind == "I2":
        return _I4.copy()
    if kind == "SWAP":
        return _SWAP.copy()
    if kind == "BellKet":
        return _BELL.reshape(4, 1).copy()
    if kind == "BellBra":
        return _BELL.reshape(1, 4).copy()
    raise InvalidParameter(f"unknown gate kind {kind!r}")


def dual_transpose(m: np.ndarray, convention: str = "oi") -> np.ndarray:
    """Space-time transpose of a two-qubit gate.

    Regroups the 4-leg tensor m[o1 o2, i1 i2] so that both legs of site 1
    index rows and both legs of site 2 index columns.  `convention`
    selects the leg order within each group: "oi" uses (out, in) rows and
    columns, "io" uses (in, out).  The "oi" regrouping is an involution;
    "io" returns to the original tensor after four applications.
    """
    if m.shape != (4, 4):
        raise DimensionMismatch(f"expected a 4x4 gate, got shape {m.shape}")
    t = np.asarray(m, dtype=complex).reshape(2, 2, 2, 2)  # o1 o2 i1 i2
    if convention == "oi":
        return t.transpose(0, 2, 1, 3).reshape(4, 4)
    if convention == "io":
        return t.transpose(2, 0, 3, 1).reshape(4, 4)
    raise InvalidParameter(f"unknown leg convention {convention!r}")


def von_neumann_entropy(spectrum, tol: float = 1e-9) -> float:
    """Entropy in bits of a normalized singular-value spectrum.

    Expects singular values of a Frobenius-normalized operator (squares
    summing to 1); 0*log(0) terms are dropped.
    """
    s = np.asarray(spectrum, dtype=float)
    total = float(np.sum(s * s))
    if abs(total - 1.0) > tol:
        raise NotNormalized(
            f"squared singular values sum to {total}, expected 1")
    p = s[s > SVD_TOL] ** 2
    return float(-np.sum(p * np.log2(p)))


def entropy_of_operator(m: np.ndarray) -> float:
    """Trajectory-style entropy: Frobenius-normalize, SVD, von Neumann."""
    norm = np.linalg.norm(m)
    if norm <= SVD_TOL:
        raise NotNormalized("operator has (near) zero Frobenius norm")
    sv = np.linalg.svd(m / norm, compute_uv=False)
    return von_neumann_entropy(sv)


# ---------------------------------------------------------------------------
# Pauli bookkeeping for the Clifford point c = 1.

_PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def pauli_matrix(word: str, sign: int = 1) -> np.ndarray:
    """Dense matrix of a signed Pauli word, one letter per site."""
    m = np.array([[1.0 + 0j]])
    for ch in word:
        m = np.kron(m, _PAULI[ch])
    return sign * m


@dataclass(frozen=True)
class PauliMap:
    """Conjugation images of the two-site Pauli generators.

    Each image is a (sign, word) pair with word a two-letter string over
    IXYZ; site order in the word is (first qubit, second qubit).
    """

    x1: tuple
    x2: tuple
    z1: tuple
    z2: tuple

    def items(self):
        return (("X1", self.x1), ("X2", self.x2),
                ("Z1", self.z1), ("Z2", self.z2))


_CLIFFORD_TABLES = {
    # R(c=1): X1 -> -Y1 Z2, X2 -> -Z1 Y2, Z1 -> Y1 X2, Z2 -> X1 Y2
    "R_at_c1": PauliMap(x1=(-1, "YZ"), x2=(-1, "ZY"),
                        z1=(+1, "YX"), z2=(+1, "XY")),
    "SWAP": PauliMap(x1=(+1, "IX"), x2=(+1, "XI"),
                     z1=(+1, "IZ"), z2=(+1, "ZI")),
}


def clifford_conjugation(kind: str) -> PauliMap:
    """Pauli conjugation table for the Clifford gates used by the engines."""
    try:
        return _CLIFFORD_TABLES[kind]
    except KeyError:
        raise InvalidParameter(f"no Clifford table for {kind!r}") from None
