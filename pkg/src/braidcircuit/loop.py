"""Classical completely-packed-loop engine.

A trajectory at a Clifford point is fully described by how worldlines
connect the bottom and top of the circuit.  A Stripe stores that boundary
matching for a slab of layers; concatenating stripes glues worldlines in
O(L) by walking each strand with a finger, closing loops as they appear.
The spanning number (bottom-to-top strands) upper-bounds the trajectory
entanglement in bits at Clifford points, and equals it except when a
closed loop links a spanning pair (the crossing gate's entangling
decoration then removes a bit the matching cannot see).

Two sampling modes:

* independent -- every sample folds freshly drawn layers, O(L*T) each;
  exactly i.i.d., used as the oracle.
* pooled      -- the knitting-and-shuffling recursion: keep a pool of K
  stripes, double their height by concatenating randomly chosen pairs,
  stopping at height T.  O(L log L) amortized per sample, with weak
  correlations from pool reuse.

Ports 0..L-1 are the bottom boundary, L..2L-1 the top.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numba
import numpy as np

from . import rng
from .errors import DimensionMismatch, InvalidParameter
from .layout import CircuitLayout

CODE_R = rng.CODE_R
CODE_S = rng.CODE_S
CODE_P = rng.CODE_P
CODE_I = rng.CODE_I


@numba.njit(cache=True)
def _layer_match(codes, L, offset, match, slen):
    for j in range(L // 2):
        a = (2 * j + offset) % L
        b = (2 * j + 1 + offset) % L
        code = codes[j]
        if code == CODE_I:
            match[a] = L + a
            match[L + a] = a
            match[b] = L + b
            match[L + b] = b
        elif code == CODE_P:
            match[a] = b
            match[b] = a
            match[L + a] = L + b
            match[L + b] = L + a
        else:  # crossing: R and SWAP connect bonds identically
            match[a] = L + b
            match[L + b] = a
            match[b] = L + a
            match[L + a] = b
    for i in range(2 * L):
        slen[i] = 1


@numba.njit(cache=True)
def _concat(ml, sl, mu, su, L, om, os_, loop_len):
    """Glue lower (ml) top ports to upper (mu) bottom ports.

    Writes the combined matching/strand lengths into om/os_ and closed
    loop lengths into loop_len; returns the number of loops closed.
    """
    visited = np.zeros(L, dtype=numba.boolean)
    for i in range(2 * L):
        om[i] = -1

    # walks starting at the new bottom boundary
    for i in range(L):
        if om[i] >= 0:
            continue
        acc = sl[i]
        cur = ml[i]
        end = -1
        while True:
            if cur < L:          # ends on the lower bottom
                end = cur
                break
            t = cur - L          # interface node (lower top == upper bottom)
            visited[t] = True
            nxt = mu[t]
            acc += su[t]
            if nxt >= L:         # ends on the upper top
                end = nxt
                break
            visited[nxt] = True
            cur = ml[L + nxt]
            acc += sl[L + nxt]
        om[i] = end
        om[end] = i
        os_[i] = acc
        os_[end] = acc

    # walks starting at the new top boundary
    for o in range(L):
        port = L + o
        if om[port] >= 0:
            continue
        acc = su[port]
        cur = mu[port]
        end = -1
        while True:
            if cur >= L:         # another upper top
                end = cur
                break
            visited[cur] = True
            nxt = ml[L + cur]
            acc += sl[L + cur]
            if nxt < L:          # reaches the lower bottom
                end = nxt
                break
            t2 = nxt - L
            visited[t2] = True
            cur = mu[t2]
            acc += su[t2]
        om[port] = end
        om[end] = port
        os_[port] = acc
        os_[end] = acc

    # untouched interface nodes belong to loops closed by this gluing
    n_loops = 0
    for t0 in range(L):
        if visited[t0]:
            continue
        acc = 0
        t = t0
        while True:
            visited[t] = True
            k = mu[t]
            acc += su[t]
            visited[k] = True
            j = ml[L + k]
            acc += sl[L + k]
            t = j - L
            if t == t0:
                break
        loop_len[n_loops] = acc
        n_loops += 1
    return n_loops


@numba.njit(cache=True)
def _fold_layers(codes, L, first_layer, match, slen):
    """Fold a (T, L/2) code matrix into one matching; returns loops closed."""
    T = codes.shape[0]
    lm = np.empty(2 * L, dtype=np.int64)
    ls = np.empty(2 * L, dtype=np.int64)
    om = np.empty(2 * L, dtype=np.int64)
    osl = np.empty(2 * L, dtype=np.int64)
    loop_len = np.empty(L, dtype=np.int64)
    _layer_match(codes[0], L, (first_layer + 1) % 2, match, slen)
    total = 0
    for t in range(1, T):
        offset = (first_layer + t + 1) % 2
        _layer_match(codes[t], L, offset, lm, ls)
        total += _concat(match, slen, lm, ls, L, om, osl, loop_len)
        match[:] = om
        slen[:] = osl
    return total


@numba.njit(cache=True)
def _spanning(match, L):
    s = 0
    for i in range(L):
        if match[i] >= L:
            s += 1
    return s


@numba.njit(cache=True)
def _independent_spanning(L, T, p, q, r, seed, samples):
    out = np.empty(samples, dtype=np.int64)
    match = np.empty(2 * L, dtype=np.int64)
    slen = np.empty(2 * L, dtype=np.int64)
    for s in range(samples):
        sub = rng.substream(seed, numba.uint64(1), numba.uint64(s))
        codes = rng.sample_codes(L, T, p, q, r, sub)
        _fold_layers(codes, L, 1, match, slen)
        out[s] = _spanning(match, L)
    return out


@numba.njit(cache=True)
def _pool_build(L, T, p, q, r, seed, K, pool):
    """Fill pool (K, 2L) with height-T matchings by knitting and shuffling."""
    lm = np.empty(2 * L, dtype=np.int64)
    ls = np.empty(2 * L, dtype=np.int64)
    um = np.empty(2 * L, dtype=np.int64)
    us = np.empty(2 * L, dtype=np.int64)
    om = np.empty(2 * L, dtype=np.int64)
    osl = np.empty(2 * L, dtype=np.int64)
    loop_len = np.empty(L, dtype=np.int64)
    slen_pool = np.empty((K, 2 * L), dtype=np.int64)
    new_pool = np.empty((K, 2 * L), dtype=np.int64)
    new_slen = np.empty((K, 2 * L), dtype=np.int64)

    # leaves: height-2 stripes (one odd + one even layer)
    for k in range(K):
        sub = rng.substream(seed, numba.uint64(2), numba.uint64(k))
        codes = rng.sample_codes(L, 2, p, q, r, sub)
        _layer_match(codes[0], L, 0, lm, ls)
        _layer_match(codes[1], L, 1, um, us)
        _concat(lm, ls, um, us, L, om, osl, loop_len)
        pool[k, :] = om
        slen_pool[k, :] = osl

    height = 2
    level = 0
    while height < T:
        for k in range(K):
            h = rng.substream(seed, numba.uint64(100 + level),
                              numba.uint64(k))
            a = int(h % numba.uint64(K))
            h2 = rng.splitmix64(h)
            b = int(h2 % numba.uint64(K))
            _concat(pool[a], slen_pool[a], pool[b], slen_pool[b],
                    L, om, osl, loop_len)
            new_pool[k, :] = om
            new_slen[k, :] = osl
        pool[:, :] = new_pool
        slen_pool[:, :] = new_slen
        height *= 2
        level += 1


@numba.njit(cache=True)
def _pooled_spanning(L, T, p, q, r, seed, K, builds):
    out = np.empty(K * builds, dtype=np.int64)
    pool = np.empty((K, 2 * L), dtype=np.int64)
    for bld in range(builds):
        sub = rng.substream(seed, numba.uint64(3), numba.uint64(bld))
        _pool_build(L, T, p, q, r, sub, K, pool)
        for k in range(K):
            out[bld * K + k] = _spanning(pool[k], L)
    return out


# ---------------------------------------------------------------------------
# python-level stripe API


@dataclass
class Stripe:
    """Boundary matching of a slab of the loop model.

    match is an involution without fixed points on the 2L ports;
    strand_lengths[i] is the worldline length from port i to its partner.
    """

    L: int
    height: int
    match: np.ndarray
    closed_loops: int = 0
    strand_lengths: np.ndarray | None = None
    loop_lengths: list = field(default_factory=list)

    def check(self):
        m = self.match
        assert m.shape == (2 * self.L,)
        for i in range(2 * self.L):
            assert m[m[i]] == i and m[i] != i
        return True


def layer_stripe(codes, L: int, offset: int,
                 track_lengths: bool = False) -> Stripe:
    """Height-1 stripe for one brickwall layer.

    codes is a length-L/2 sequence of gate codes (ints or "RSPI" chars);
    offset 0 starts bonds at site 0, offset 1 shifts by one with wrap.
    """
    arr = _as_codes(codes)
    if arr.shape[0] != L // 2:
        raise InvalidParameter("need L/2 gate codes per layer")
    match = np.empty(2 * L, dtype=np.int64)
    slen = np.empty(2 * L, dtype=np.int64)
    _layer_match(arr, L, offset, match, slen)
    return Stripe(L=L, height=1, match=match,
                  strand_lengths=slen if track_lengths else None)


def _as_codes(codes):
    if isinstance(codes, (list, tuple)) and codes and isinstance(codes[0], str):
        lut = {"R": CODE_R, "S": CODE_S, "P": CODE_P, "I": CODE_I}
        return np.array([lut[c] for c in codes], dtype=np.uint8)
    return np.asarray(codes, dtype=np.uint8)


def concatenate(lower: Stripe, upper: Stripe) -> Stripe:
    """Glue upper on top of lower; O(L) finger-walk along worldlines."""
    if lower.L != upper.L:
        raise DimensionMismatch(
            f"stripe widths differ: {lower.L} vs {upper.L}")
    L = lower.L
    sl = lower.strand_lengths if lower.strand_lengths is not None \
        else np.ones(2 * L, dtype=np.int64)
    su = upper.strand_lengths if upper.strand_lengths is not None \
        else np.ones(2 * L, dtype=np.int64)
    om = np.empty(2 * L, dtype=np.int64)
    osl = np.empty(2 * L, dtype=np.int64)
    loop_len = np.empty(L, dtype=np.int64)
    n_loops = _concat(lower.match, sl, upper.match, su, L, om, osl, loop_len)
    track = (lower.strand_lengths is not None
             or upper.strand_lengths is not None)
    out = Stripe(
        L=L, height=lower.height + upper.height, match=om,
        closed_loops=lower.closed_loops + upper.closed_loops + n_loops,
        strand_lengths=osl if track else None,
        loop_lengths=(lower.loop_lengths + upper.loop_lengths
                      + [int(x) for x in loop_len[:n_loops]]) if track else [])
    return out


def stripe_from_layout(lay: CircuitLayout,
                       track_lengths: bool = False) -> Stripe:
    """Fold a full layout into one stripe (layer 1 at the bottom)."""
    codes = lay.codes()
    match = np.empty(2 * lay.L, dtype=np.int64)
    slen = np.empty(2 * lay.L, dtype=np.int64)
    loops = _fold_layers(codes, lay.L, 1, match, slen)
    return Stripe(L=lay.L, height=lay.T, match=match, closed_loops=int(loops),
                  strand_lengths=slen if track_lengths else None)


def spanning_number(s: Stripe) -> int:
    """Worldlines connecting the bottom and top boundaries (always even).

    Upper bound on the trajectory entanglement in bits at Clifford points.
    """
    return int(_spanning(s.match, s.L))


def knit_sample(L: int, T: int, p: float, q: float, r: float = 0.0,
                seed: int = 0, mode: str = "independent",
                pool_size: int = 256) -> Stripe:
    """One loop-model sample.

    independent mode folds freshly drawn layers (any L, T); pooled mode
    runs the stripe-doubling recursion (L a power of two, T = L) and
    returns the first stripe of the pool.
    """
    _check_knit_args(L, T, p, q, r, mode)
    if mode == "independent":
        codes = rng.sample_codes(L, T, p, q, r,
                                 rng.substream(np.uint64(seed),
                                               np.uint64(1), np.uint64(0)))
        match = np.empty(2 * L, dtype=np.int64)
        slen = np.empty(2 * L, dtype=np.int64)
        loops = _fold_layers(codes, L, 1, match, slen)
        return Stripe(L=L, height=T, match=match, closed_loops=int(loops))
    pool = np.empty((pool_size, 2 * L), dtype=np.int64)
    _pool_build(L, T, p, q, r,
                rng.substream(np.uint64(seed), np.uint64(3), np.uint64(0)),
                pool_size, pool)
    return Stripe(L=L, height=T, match=pool[0].copy())


def spanning_ensemble(L: int, T: int, p: float, q: float, r: float,
                      seed: int, samples: int, mode: str = "pooled",
                      pool_size: int = 256) -> np.ndarray:
    """Spanning numbers for `samples` trajectories (fast path for sweeps)."""
    _check_knit_args(L, T, p, q, r, mode)
    if mode == "independent":
        return _independent_spanning(L, T, p, q, r, np.uint64(seed), samples)
    builds = (samples + pool_size - 1) // pool_size
    out = _pooled_spanning(L, T, p, q, r, np.uint64(seed), pool_size, builds)
    return out[:samples]


def _check_knit_args(L, T, p, q, r, mode):
    for name, v in (("p", p), ("q", q), ("r", r)):
        if not 0.0 <= v <= 1.0:
            raise InvalidParameter(f"{name} must be in [0, 1], got {v}")
    if L < 2 or L % 2:
        raise InvalidParameter(f"L must be even and >= 2, got {L}")
    if mode not in ("independent", "pooled"):
        raise InvalidParameter(f"unknown mode {mode!r}")
    if mode == "pooled":
        if L & (L - 1):
            raise InvalidParameter("pooled mode requires L a power of two")
        if T & (T - 1) or T < 2:
            raise InvalidParameter(
                "pooled mode requires T a power of two >= 2")
