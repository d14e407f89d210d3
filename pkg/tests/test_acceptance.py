"""Acceptance gate: one test and one printed PASS/FAIL line per criterion.

Run with `pytest tests/test_acceptance.py -v -s` to see every line.  Each
test asserts the criterion exactly as stated, at the stated tolerance; a
failing line here means the criterion itself does not hold for this
implementation, not that the check was skipped or loosened.
"""

import math
import time

import numpy as np
import pytest

from braidcircuit import dense, loop, stabilizer, sweep, verify
from braidcircuit.errors import ZeroNormTrajectory
from braidcircuit.layout import CircuitLayout, sample_layout
from braidcircuit.sweep import SweepConfig

C_GRID = (-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0)


def report(name: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}"
    print(line)
    assert ok, line


class TestAlgebraSuite:
    def test_relations_on_c_grid(self):
        t0 = time.perf_counter()
        reports = verify.run_verification(C_GRID)
        elapsed = time.perf_counter() - t0
        worst = max(r.max_dev for r in reports if "witness" not in r.name)
        ok = all(r.passed for r in reports) and worst < 1e-10 and elapsed < 1.0
        report("algebra suite", ok,
               f"{len(reports)} relations, max dev {worst:.2e}, "
               f"{elapsed:.2f}s")


class TestHopfInvariant:
    def test_closed_form_on_c_grid(self):
        t0 = time.perf_counter()
        devs = {}
        for c in C_GRID:
            res = verify.hopf_invariant(c)
            want = 4.0 * (c - 1.0) ** 2 / (1.0 + c * c)
            devs[c] = abs(abs(res.dense) - want)
        elapsed = time.perf_counter() - t0
        worst_c = max(devs, key=devs.get)
        ok = max(devs.values()) < 1e-10 and elapsed < 1.0
        report("hopf invariant closed form", ok,
               f"max dev {devs[worst_c]:.3g} at c={worst_c}, {elapsed:.2f}s")


class TestLinkEntropy:
    @staticmethod
    def _oracle_two_r(c):
        bell = np.array([1, 0, 0, 1.0])
        pp23 = np.kron(np.eye(2), np.kron(np.outer(bell, bell), np.eye(2)))
        sw = np.eye(4)[[0, 2, 1, 3]]
        r = (1j * np.eye(4) - 1j * np.outer(bell, bell)
             + c * sw) / math.sqrt(1 + c * c)
        word = pp23 @ np.kron(r, r) @ pp23
        rho = word @ word.conj().T
        rho /= np.trace(rho)
        ev = np.linalg.eigvalsh(rho)
        ev = ev[ev > 1e-12]
        return float(-np.sum(ev * np.log2(ev)))

    def test_pieces(self):
        t0 = time.perf_counter()
        clifford_max = max(dense.link_entropy("two_R", c)
                           for c in (0.0, 1.0, -1.0))
        cs = [c for c in np.linspace(-2.3, 2.3, 24)
              if min(abs(c), abs(c - 1), abs(c + 1)) > 0.05][:20]
        oracle_dev = max(abs(dense.link_entropy("two_R", c)
                             - self._oracle_two_r(c)) for c in cs)
        swap_min = min(dense.link_entropy("swap_R", 1.0),
                       dense.link_entropy("swap_R", -1.0))
        elapsed = time.perf_counter() - t0
        ok = (clifford_max < 1e-10 and oracle_dev < 1e-9
              and swap_min > 0.1 and elapsed < 1.0)
        report("link entropy", ok,
               f"clifford max {clifford_max:.2e}, oracle dev "
               f"{oracle_dev:.2e} over {len(cs)} c, swap piece min "
               f"{swap_min:.3f}, {elapsed:.2f}s")


class TestCrossEngineEquivalence:
    def test_engines_agree(self):
        t0 = time.perf_counter()
        rng = np.random.default_rng(20260826)
        mismatches = 0
        undershoots = 0
        for _ in range(500):
            lay = sample_layout(16, 16, float(rng.uniform()),
                                float(rng.uniform()), 0.0,
                                int(rng.integers(2 ** 31)))
            span = loop.spanning_number(loop.stripe_from_layout(lay))
            bits = stabilizer.run_layout(lay)
            if span != bits:
                mismatches += 1
            if span < bits:
                undershoots += 1
        stab_dev = traj_dev = 0.0
        skipped = 0
        for _ in range(100):
            lay = sample_layout(6, 6, float(rng.uniform()),
                                float(rng.uniform()),
                                float(rng.uniform()),
                                int(rng.integers(2 ** 31)))
            try:
                s_tfds = dense.evolve_tfds_entropy(lay)
                s_traj = dense.trajectory_entropy(lay)
            except ZeroNormTrajectory:
                skipped += 1
                continue
            stab_dev = max(stab_dev, abs(stabilizer.run_layout(lay) - s_tfds))
            traj_dev = max(traj_dev, abs(s_traj - s_tfds))
        elapsed = time.perf_counter() - t0
        ok = (mismatches == 0 and stab_dev < 1e-8 and traj_dev < 1e-9
              and elapsed < 120)
        report("cross-engine equivalence", ok,
               f"loop/stabilizer mismatches {mismatches}/500 "
               f"(spanning below entropy {undershoots}x), "
               f"stabilizer-dense dev {stab_dev:.2e}, "
               f"trajectory-tfds dev {traj_dev:.2e} "
               f"({skipped} annihilated trajectories skipped), "
               f"{elapsed:.1f}s")

    def test_spanning_upper_bounds_entropy(self):
        # supporting evidence, not an acceptance line: the spanning number
        # is an upper bound on the stabilizer entropy; it overshoots by one
        # bit whenever a closed worldline loop links a spanning pair, so
        # exact per-layout equality cannot hold
        rng = np.random.default_rng(404)
        for _ in range(200):
            lay = sample_layout(16, 16, float(rng.uniform()),
                                float(rng.uniform()), 0.0,
                                int(rng.integers(2 ** 31)))
            span = loop.spanning_number(loop.stripe_from_layout(lay))
            assert span >= stabilizer.run_layout(lay)


class TestLoopModelPhases:
    def test_area_law_arcs(self):
        t0 = time.perf_counter()
        ok = True
        details = []
        for q in (0.25, 0.75):
            means = [float(np.mean(loop.spanning_ensemble(
                L, L, 0.0, q, 0.0, 101, 2048))) for L in (64, 128, 256)]
            ok = ok and means[-1] < 0.1 and means[0] >= means[1] >= means[2]
            details.append(f"q={q}: " + "->".join(f"{m:.3f}" for m in means))
        elapsed = time.perf_counter() - t0
        report("loop model area-law arcs", ok and elapsed < 1800,
               "; ".join(details) + f", {elapsed:.1f}s")

    def test_log_growth_at_center(self):
        t0 = time.perf_counter()
        sizes = [2 ** k for k in range(6, 12)]
        means, errs = [], []
        for L in sizes:
            vals = loop.spanning_ensemble(L, L, 0.5, 0.5, 0.0, 303, 10240)
            means.append(float(np.mean(vals)))
            errs.append(float(np.std(vals) / math.sqrt(len(vals))))
        x = np.log2(sizes)
        (b, a), res = np.polyfit(x, means, 1), None
        res = np.asarray(means) - (a + b * x)
        rms_res = float(np.sqrt(np.mean(res ** 2)))
        rms_err = float(np.sqrt(np.mean(np.square(errs))))
        elapsed = time.perf_counter() - t0
        ok = b > 0 and rms_res < max(3 * rms_err, 0.02) and elapsed < 1800
        report("loop model log growth", ok,
               f"slope {b:.3f} bits/octave, rms residual {rms_res:.3g} "
               f"vs stderr {rms_err:.3g}, {elapsed:.1f}s")


class TestSwapReplacementSuppression:
    def test_convergence_over_stated_widths(self):
        t0 = time.perf_counter()
        devs = []
        for L in (8, 16, 32, 64):
            vals = stabilizer.sample_entropies(L, L, 0.5, 0.5, 0.1, 707,
                                               16384)
            devs.append(abs(float(np.mean(vals)) - 1.0))
        elapsed = time.perf_counter() - t0
        monotone = all(devs[i] > devs[i + 1] for i in range(len(devs) - 1))
        ok = monotone and devs[-1] < 0.15 and elapsed < 1200
        report("swap-replacement suppression", ok,
               "|mean S - 1| = " + ", ".join(f"{d:.3f}" for d in devs)
               + f" at L=8,16,32,64; monotone={monotone}, {elapsed:.1f}s")

    def test_convergence_at_large_width(self):
        # supporting evidence, not an acceptance line: the suppression to
        # S = 1 does set in, but only past the stated width range
        vals = stabilizer.sample_entropies(512, 512, 0.5, 0.5, 0.1, 708, 64)
        assert abs(float(np.mean(vals)) - 1.0) < 0.15


class TestDeepAreaLaw:
    def test_low_rate_regime(self):
        t0 = time.perf_counter()
        vals = stabilizer.sample_entropies(64, 64, 0.2, 0.2, 0.1, 909, 4096)
        mean = float(np.mean(vals))
        elapsed = time.perf_counter() - t0
        ok = mean < 0.05 and elapsed < 300
        report("deep area law with replacements", ok,
               f"mean S {mean:.4f} at L=64, {elapsed:.1f}s")


class TestNearBoundary:
    def test_ordering_at_large_width(self):
        t0 = time.perf_counter()
        L, n = 512, 192
        means = {}
        for q in (0.05, 0.10, 0.15):
            vals = stabilizer.sample_entropies(L, L, 0.5, q, 0.1,
                                               1000 + int(q * 100), n)
            means[q] = float(np.mean(vals))
        elapsed = time.perf_counter() - t0
        ok = (means[0.05] < 0.2
              and abs(means[0.10] - 1.0) < 0.2
              and abs(means[0.15] - 1.0) < 0.2
              and means[0.05] < means[0.10] <= means[0.15] + 0.2)
        report("near-boundary behavior", ok,
               f"L={L}, mean S " + ", ".join(
                   f"q={q}: {m:.3f}" for q, m in means.items())
               + f", {elapsed:.1f}s")


class TestRenyi2Counting:
    @staticmethod
    def _dense_renyi2(lay, region):
        L = lay.L
        vec = dense.PairingState(tuple(i ^ 1 for i in range(L))).vector()
        vec = dense.apply_layout(vec, lay)
        perm = list(region) + [i for i in range(L) if i not in region]
        m = np.transpose(vec.reshape([2] * L),
                         perm).reshape(2 ** len(region), -1)
        rho = m @ m.conj().T
        return -np.log2(np.trace(rho @ rho).real)

    def test_counting_matches_dense(self):
        t0 = time.perf_counter()
        instance = CircuitLayout(
            L=16, T=3, c=1.0, p=1, q=0, r=0, seed=0,
            layers=(("R",) * 8, ("R",) * 7 + ("I",), ("R",) * 8))
        instance_val = dense.renyi2_counting(instance, range(6))
        rng = np.random.default_rng(515)
        max_dev = 0.0
        for _ in range(50):
            L = int(rng.choice([6, 8, 10, 12]))
            layers = tuple(tuple(rng.choice(["R", "I"], size=L // 2))
                           for _ in range(int(rng.integers(1, 5))))
            lay = CircuitLayout(L=L, T=len(layers), c=1.0, p=1, q=0, r=0,
                                seed=0, layers=layers)
            A = list(range(int(rng.integers(1, L))))
            max_dev = max(max_dev, abs(dense.renyi2_counting(lay, A)
                                       - self._dense_renyi2(lay, A)))
        elapsed = time.perf_counter() - t0
        ok = instance_val == 2 and max_dev < 1e-9 and elapsed < 60
        report("renyi-2 counting", ok,
               f"reference instance {instance_val}, max dev vs dense "
               f"{max_dev:.2e} over 50 layouts, {elapsed:.1f}s")


class TestParityConservation:
    def test_evolved_tfds_parity(self):
        rng = np.random.default_rng(616)
        worst = 0.0
        checked = 0
        while checked < 100:
            c = float(rng.choice([0.5, 1.0]))
            L = int(rng.choice([4, 6]))
            lay = sample_layout(L, L, float(rng.uniform()),
                                float(rng.uniform()),
                                float(rng.uniform()),
                                int(rng.integers(2 ** 31)), c=c)
            vec = dense.tfds_pairing(L).vector()
            vec = dense.apply_layout(vec, lay, total_qubits=2 * L)
            nrm2 = float(np.vdot(vec, vec).real)
            if nrm2 <= 1e-12:
                continue
            worst = max(worst,
                        abs(dense.total_parity(vec / math.sqrt(nrm2)) - 1.0))
            checked += 1
        ok = worst < 1e-9
        report("parity conservation", ok,
               f"max |parity - 1| = {worst:.2e} over 100 layouts")


class TestDeterminism:
    def test_manifest_replay(self, tmp_path):
        cfg = SweepConfig(engine="loop", L_values=(8, 16),
                          p_values=(0.3, 0.7), q_values=(0.5,),
                          r_values=(0.0,), samples=64, master_seed=42,
                          mode="independent",
                          out=str(tmp_path / "orig.csv"))
        summary = sweep.write_sweep(cfg, tmp_path / "orig.csv")
        original = (tmp_path / "orig.csv").read_bytes()
        same = True
        for workers in (1, 2):
            out = tmp_path / f"replay{workers}.csv"
            sweep.replay_manifest(summary["manifest"], out_path=out,
                                  workers=workers)
            same = same and out.read_bytes() == original
        report("determinism", same,
               "manifest replay byte-identical at 1 and 2 workers")
