"""Counter-based pseudo-random numbers for reproducible gate sampling.

Every random draw in the toolkit is a pure function of a 64-bit seed and a
set of integer coordinates (layer, bond, draw index, ...).  That makes
sampling independent of execution order and worker count: the same seed
always produces the same circuit, whether slots are drawn one by one or in
parallel.

The mixing function is the splitmix64 finalizer applied to a chain of
coordinate injections:

    h = seed
    for coord in coords:
        h = splitmix64(h + GAMMA * (coord + 1))

where GAMMA = 0x9E3779B97F4A7C15 (the splitmix64 increment) and
splitmix64(z) is the standard xor-shift-multiply finalizer.  Uniform
doubles take the top 53 bits of the final hash.
"""

from __future__ import annotations

import numba
import numpy as np

GAMMA = np.uint64(0x9E3779B97F4A7C15)

_U64 = np.uint64


@numba.njit(numba.uint64(numba.uint64), cache=True)
def splitmix64(z):
    z = (z ^ (z >> _U64(30))) * _U64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> _U64(27))) * _U64(0x94D049BB133111EB)
    return z ^ (z >> _U64(31))


@numba.njit(numba.uint64(numba.uint64, numba.uint64), cache=True)
def mix(h, coord):
    return splitmix64(h + GAMMA * (coord + _U64(1)))


@numba.njit(numba.float64(numba.uint64), cache=True)
def _to_unit(h):
    return (h >> _U64(11)) * (1.0 / 9007199254740992.0)


@numba.njit(numba.float64(numba.uint64, numba.int64, numba.int64, numba.int64),
            cache=True)
def slot_uniform(seed, layer, bond, draw):
    """Uniform double in [0, 1) for draw number `draw` of slot (layer, bond)."""
    h = mix(seed, _U64(layer))
    h = mix(h, _U64(bond))
    h = mix(h, _U64(draw))
    return _to_unit(h)


@numba.njit(numba.uint64(numba.uint64, numba.uint64, numba.uint64), cache=True)
def substream(seed, a, b):
    """Derived 64-bit seed for an independent sub-stream (a, b)."""
    return mix(mix(seed, a), b)


# Gate codes shared by the samplers and all engines.
CODE_R = 0
CODE_S = 1
CODE_P = 2
CODE_I = 3


@numba.njit(numba.uint8(numba.uint64, numba.int64, numba.int64,
                         numba.float64, numba.float64, numba.float64),
            cache=True)
def slot_gate(seed, layer, bond, p, q, r):
    """Gate code for one brickwall slot.

    `layer` is 1-based; odd layers use measurement probability q, even
    layers 1-q (the staggered setting).  A unitary slot (probability p)
    becomes a swap with probability r, otherwise an R gate.
    """
    u = slot_uniform(seed, layer, bond, 0)
    if u < p:
        if slot_uniform(seed, layer, bond, 1) < r:
            return CODE_S
        return CODE_R
    q_eff = q if layer % 2 == 1 else 1.0 - q
    if slot_uniform(seed, layer, bond, 2) < q_eff:
        return CODE_P
    return CODE_I


@numba.njit(cache=True)
def sample_codes(L, T, p, q, r, seed):
    """Full brickwall realization as a (T, L//2) uint8 code matrix."""
    out = np.empty((T, L // 2), dtype=np.uint8)
    for t in range(1, T + 1):
        for b in range(L // 2):
            out[t - 1, b] = slot_gate(seed, t, b, p, q, r)
    return out
