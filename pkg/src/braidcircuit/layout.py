"""Brickwall gate realizations: sampling, validation, serialization.

A CircuitLayout is the single source of truth for one trajectory.  The
three engines never draw their own randomness when comparing results;
they all consume the same layout (or, for large sweeps, regenerate it
deterministically from the same seed via the counter-based sampler).

Layer t (1-based) acts on bonds (2j + offset, 2j + 1 + offset) with
offset = (t + 1) % 2, i.e. odd layers start at site 0 and even layers are
shifted by one with periodic wrap.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import rng
from .errors import InvalidParameter, ParseError

GATE_CODES = "RSPI"  # index = engine code (rng.CODE_*)

LAYOUT_VERSION = 1


def _check_prob(name, value):
    if not (0.0 <= value <= 1.0) or not math.isfinite(value):
        raise InvalidParameter(f"{name} must be in [0, 1], got {value}")


@dataclass(frozen=True)
class CircuitLayout:
    """One sampled brickwall realization on a periodic chain.

    layers[t][b] is a single-character gate code ("R", "S", "P" or "I")
    for bond b of layer t+1.
    """

    L: int
    T: int
    c: float
    p: float
    q: float
    r: float
    seed: int
    layers: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if self.L < 2 or self.L % 2:
            raise InvalidParameter(f"L must be even and >= 2, got {self.L}")
        if self.T < 1:
            raise InvalidParameter(f"T must be >= 1, got {self.T}")
        if len(self.layers) != self.T:
            raise InvalidParameter("layer count does not match T")
        for layer in self.layers:
            if len(layer) != self.L // 2:
                raise InvalidParameter("layer width does not match L/2")
            for g in layer:
                if g not in GATE_CODES:
                    raise InvalidParameter(f"unknown gate code {g!r}")

    def codes(self) -> np.ndarray:
        """Gate codes as a (T, L/2) uint8 matrix (see rng.CODE_*)."""
        lut = {ch: i for i, ch in enumerate(GATE_CODES)}
        return np.array([[lut[g] for g in layer] for layer in self.layers],
                        dtype=np.uint8)

    def bonds(self, t: int):
        """Site pairs covered by 1-based layer t, with periodic wrap."""
        offset = (t + 1) % 2
        return [((2 * j + offset) % self.L, (2 * j + 1 + offset) % self.L)
                for j in range(self.L // 2)]

    # -- serialization ----------------------------------------------------

    def to_json(self) -> str:
        doc = {
            "version": LAYOUT_VERSION,
            "L": self.L, "T": self.T, "c": self.c,
            "p": self.p, "q": self.q, "r": self.r,
            "seed": self.seed,
            "layers": [list(layer) for layer in self.layers],
        }
        return json.dumps(doc, separators=(",", ":"))

    def encode(self) -> bytes:
        return self.to_json().encode("utf-8")

    @classmethod
    def from_json(cls, text: str) -> "CircuitLayout":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid layout JSON: {e.msg}",
                             offset=e.pos) from e
        if not isinstance(doc, dict):
            raise ParseError("layout document must be a JSON object", 0)
        if doc.get("version") != LAYOUT_VERSION:
            raise ParseError(
                f"unsupported layout version {doc.get('version')!r}", 0)
        try:
            layers = tuple(tuple(layer) for layer in doc["layers"])
            out = cls(L=int(doc["L"]), T=int(doc["T"]), c=float(doc["c"]),
                      p=float(doc["p"]), q=float(doc["q"]),
                      r=float(doc["r"]), seed=int(doc["seed"]),
                      layers=layers)
        except (KeyError, TypeError, ValueError, InvalidParameter) as e:
            raise ParseError(f"malformed layout fields: {e}", 0) from e
        return out

    @classmethod
    def decode(cls, blob: bytes) -> "CircuitLayout":
        try:
            text = blob.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ParseError("layout bytes are not UTF-8",
                             offset=e.start) from e
        return cls.from_json(text)

    @classmethod
    def load(cls, path) -> "CircuitLayout":
        with open(path, "rb") as f:
            return cls.decode(f.read())

    def save(self, path):
        with open(path, "wb") as f:
            f.write(self.encode())


def sample_layout(L: int, T: int, p: float, q: float, r: float,
                  seed: int, c: float = 1.0) -> CircuitLayout:
    """Draw a brickwall realization with staggered measurement rates.

    Each slot independently becomes a unitary with probability p (then a
    swap with probability r, else R); non-unitary slots are P with
    probability q on odd layers and 1-q on even layers, else I.  All draws
    come from the counter-based generator, so the result is a pure
    function of the arguments.
    """
    for name, value in (("p", p), ("q", q), ("r", r)):
        _check_prob(name, value)
    if L < 2 or L % 2:
        raise InvalidParameter(f"L must be even and >= 2, got {L}")
    if T < 1:
        raise InvalidParameter(f"T must be >= 1, got {T}")
    codes = rng.sample_codes(L, T, p, q, r, np.uint64(seed))
    layers = tuple(tuple(GATE_CODES[c_] for c_ in row) for row in codes)
    return CircuitLayout(L=L, T=T, c=c, p=p, q=q, r=r, seed=int(seed),
                         layers=layers)


def q_prime(p: float, q: float) -> float:
    """Collapsed measurement-rate axis: q' - 1/2 = (q - 1/2)(1 - p)."""
    _check_prob("p", p)
    _check_prob("q", q)
    return 0.5 + (q - 0.5) * (1.0 - p)


def roundtrip(layout: CircuitLayout) -> CircuitLayout:
    """Encode to bytes and decode again (serialization self-check)."""
    return CircuitLayout.decode(layout.encode())


def load(path) -> CircuitLayout:
    """Module-level convenience wrapper around CircuitLayout.load."""
    return CircuitLayout.load(path)
