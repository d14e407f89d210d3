"""Reproducible Monte Carlo sweeps over circuit parameters.

A sweep is a cartesian grid over (p, q, r, L) at fixed c, run on one of
the three engines.  Every trajectory's seed is derived by counter-based
hashing from (master seed, grid-point index, sample index), so results
are identical for any worker count and any execution order.  Aggregates
are written as a CSV with a fixed column schema plus a JSON manifest
that embeds the full configuration; re-running from the manifest
reproduces the CSV byte-for-byte.
"""

from __future__ import annotations

import dataclasses
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__, loop, rng, stabilizer
from .errors import InvalidConfig, ZeroNormTrajectory
from .layout import q_prime, sample_layout

CSV_COLUMNS = ("engine", "L", "T", "c", "p", "q", "r", "q_prime",
               "samples", "discarded", "mean_S", "stderr_S", "master_seed")

ENGINES = ("loop", "stabilizer", "dense")


@dataclass(frozen=True)
class SweepConfig:
    engine: str
    L_values: tuple
    p_values: tuple
    q_values: tuple
    r_values: tuple = (0.0,)
    c: float = 1.0
    T: int | None = None            # default: T = L per point
    samples: int = 1024
    master_seed: int = 0
    mode: str = "pooled"            # loop engine sampling mode
    pool_size: int = 256
    out: str | None = None

    def __post_init__(self):
        if self.engine not in ENGINES:
            raise InvalidConfig(f"unknown engine {self.engine!r}")
        if self.samples < 1:
            raise InvalidConfig("samples must be >= 1")
        if not (self.L_values and self.p_values and self.q_values
                and self.r_values):
            raise InvalidConfig("parameter grid must be non-empty")
        if self.engine == "stabilizer" and self.c != 1.0:
            raise InvalidConfig("stabilizer engine requires c = 1")

    def points(self):
        """Grid points in deterministic enumeration order."""
        idx = 0
        for L in self.L_values:
            for p in self.p_values:
                for q in self.q_values:
                    for r in self.r_values:
                        T = self.T if self.T is not None else L
                        yield idx, (int(L), int(T), float(p), float(q),
                                    float(r))
                        idx += 1

    def to_dict(self):
        d = dataclasses.asdict(self)
        for k in ("L_values", "p_values", "q_values", "r_values"):
            d[k] = list(d[k])
        return d

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        for k in ("L_values", "p_values", "q_values", "r_values"):
            if k in d:
                d[k] = tuple(d[k])
        try:
            return cls(**d)
        except TypeError as exc:
            raise InvalidConfig(str(exc)) from None


@dataclass
class ResultRecord:
    engine: str
    L: int
    T: int
    c: float
    p: float
    q: float
    r: float
    q_prime: float
    samples: int
    discarded: int
    mean_S: float
    stderr_S: float
    master_seed: int
    wall_time: float = 0.0

    def csv_row(self):
        vals = []
        for col in CSV_COLUMNS:
            v = getattr(self, col)
            vals.append(_fmt(v))
        return ",".join(vals)


def _fmt(v):
    if isinstance(v, float):
        return format(v, ".10g")
    return str(v)


def _point_seed(master: int, point_index: int) -> np.uint64:
    return rng.substream(np.uint64(master), np.uint64(0),
                         np.uint64(point_index))


def _run_point(cfg: SweepConfig, point_index: int, point) -> ResultRecord:
    L, T, p, q, r = point
    seed = _point_seed(cfg.master_seed, point_index)
    t0 = time.perf_counter()
    discarded = 0
    if cfg.engine == "loop":
        vals = loop.spanning_ensemble(L, T, p, q, r, seed, cfg.samples,
                                      mode=cfg.mode, pool_size=cfg.pool_size)
        vals = vals.astype(float)
    elif cfg.engine == "stabilizer":
        vals = stabilizer.sample_entropies(L, T, p, q, r, seed,
                                           cfg.samples).astype(float)
    else:
        vals = _dense_point(L, T, p, q, r, cfg.c, seed, cfg.samples)
        discarded = cfg.samples - vals.size
    n = vals.size
    mean = float(vals.mean()) if n else float("nan")
    stderr = float(vals.std(ddof=1) / np.sqrt(n)) if n > 1 else 0.0
    return ResultRecord(
        engine=cfg.engine, L=L, T=T, c=cfg.c, p=p, q=q, r=r,
        q_prime=q_prime(p, q), samples=n, discarded=discarded,
        mean_S=mean, stderr_S=stderr, master_seed=cfg.master_seed,
        wall_time=time.perf_counter() - t0)


def _dense_point(L, T, p, q, r, c, seed, samples):
    from . import dense
    vals = []
    for s in range(samples):
        sub = rng.substream(seed, np.uint64(1), np.uint64(s))
        lay = sample_layout(L, T, p, q, r, int(sub), c=c)
        try:
            vals.append(dense.evolve_tfds_entropy(lay))
        except ZeroNormTrajectory:
            continue
    return np.asarray(vals, dtype=float)


def run_sweep(cfg: SweepConfig, workers: int = 1) -> list:
    """Run every grid point; deterministic for any worker count."""
    points = list(cfg.points())
    if workers > 1 and len(points) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_point, cfg, i, pt)
                       for i, pt in points]
            return [f.result() for f in futures]
    return [_run_point(cfg, i, pt) for i, pt in points]


def records_to_csv(records) -> str:
    lines = [",".join(CSV_COLUMNS)]
    lines.extend(rec.csv_row() for rec in records)
    return "\n".join(lines) + "\n"


def aggregate_write(records, path) -> dict:
    """Write the CSV and its JSON manifest; returns a summary dict."""
    records = list(records)
    if not records:
        raise InvalidConfig("no records to write")
    path = str(path)
    csv_text = records_to_csv(records)
    with open(path, "w") as fh:
        fh.write(csv_text)
    manifest_path = path + ".manifest.json"
    return {"csv": path, "manifest": manifest_path, "rows": len(records)}


def write_sweep(cfg: SweepConfig, path, workers: int = 1) -> dict:
    """Run a sweep and persist CSV + manifest."""
    records = run_sweep(cfg, workers=workers)
    summary = aggregate_write(records, path)
    manifest = {"version": __version__,
                "config": cfg.to_dict()}
    with open(summary["manifest"], "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return summary


def replay_manifest(manifest_path, out_path=None, workers: int = 1) -> dict:
    """Re-run the sweep recorded in a manifest (determinism contract)."""
    with open(manifest_path) as fh:
        manifest = json.load(fh)
    cfg = SweepConfig.from_dict(manifest["config"])
    target = out_path if out_path is not None else cfg.out
    if target is None:
        raise InvalidConfig("manifest config has no output path; pass one")
    return write_sweep(cfg, target, workers=workers)
