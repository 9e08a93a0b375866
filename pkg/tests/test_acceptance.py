"""The ten acceptance criteria, each at its stated tolerance.

Run with ``pytest tests/test_acceptance.py`` (a PASS/FAIL line per
criterion is added to the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""
import time

import numpy as np
import pytest

from dcqd.channel import (
    depolarizing_2q,
    generalized_depolarizing_2q,
    random_channel_1q,
    random_unitary,
    unitary_chi,
)
from dcqd.design import det_surface, error_amplification_study, optimize, write_surface_csv
from dcqd.errors import DCQDError, SingularNoise
from dcqd.faulty import FaultySetting, build_faulty_lambda, reconstruct_faulty, total_map_probabilities
from dcqd.oracle import standard_qpt
from dcqd.protocol import numeric_lambda, reconstruct_ideal, simulate_probabilities
from dcqd.qobj import OPTIMAL_PARAMS, InputParams, concurrence, dcqd_input, is_ppt
from dcqd.shortcuts import (
    BellDiagonalNoise,
    bell_diagonal_invert,
    bell_diagonal_transform,
    corrected_diagonal_uncorrelated,
    corrected_probability_correlated,
    corrected_probability_generalized_u,
    correlated_noisy_inputs,
    reconstruct_correlated,
    reconstruct_generalized_u,
    simulate_bell_diagonal,
    u_conjugated_inputs,
    uncorrelated_noise_chi,
)

P = OPTIMAL_PARAMS
CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)

RESULTS = {}


class Criterion:
    """Collects sub-checks; the criterion passes only if all of them do."""

    def __init__(self, number, title):
        self.number, self.title, self.failures = number, title, []
        self.t0 = time.perf_counter()

    def check(self, ok, what):
        if not ok:
            self.failures.append(what)

    def within(self, budget):
        elapsed = time.perf_counter() - self.t0
        self.check(elapsed <= budget, f"runtime {elapsed:.2f}s > {budget}s")

    def finish(self):
        status = "PASS" if not self.failures else "FAIL"
        line = f"criterion {self.number:2d} {status}: {self.title}"
        if self.failures:
            line += " [" + "; ".join(self.failures) + "]"
        RESULTS[self.number] = line
        print(line)
        assert not self.failures, line


def test_criterion_01_determinant_formula(tmp_path):
    c = Criterion(1, "|det Lambda| = sin^6(4 theta) sin^6(phi) on a 64x64 grid")
    pts = det_surface(64, 64)
    dev = max(abs(pt.absdet - np.sin(4 * pt.theta) ** 6 * np.sin(pt.phi) ** 6) for pt in pts)
    c.check(dev <= 1e-8, f"grid deviation {dev:.2e}")
    opt = numeric_lambda(P).absdet
    c.check(abs(opt - 1) <= 1e-9, f"|det| at optimum {opt!r}")
    c.within(10)
    write_surface_csv(pts, tmp_path / "surface.csv")
    c.finish()


def test_criterion_02_optimal_inputs():
    c = Criterion(2, "optimize() finds (pi/8, pi/2) with concurrence 1/sqrt2")
    res = optimize()
    c.check(abs(res.theta - np.pi / 8) <= 1e-5, f"theta* {res.theta!r}")
    c.check(abs(res.phi - np.pi / 2) <= 1e-5, f"phi* {res.phi!r}")
    conc = concurrence(dcqd_input(1, InputParams(res.theta, res.phi)))
    c.check(abs(conc - 1 / np.sqrt(2)) <= 1e-9, f"concurrence {conc!r}")
    c.within(5)
    c.finish()


def test_criterion_03_ideal_round_trip():
    c = Criterion(3, "ideal round trip and standard-QPT oracle on 100 channels")
    worst_rt = worst_or = 0.0
    for seed in range(100):
        chi = random_channel_1q(seed)
        rec = reconstruct_ideal(simulate_probabilities(chi, P), P).chi
        worst_rt = max(worst_rt, np.abs(rec - chi).max())
        worst_or = max(worst_or, np.abs(standard_qpt(chi) - rec).max())
    c.check(worst_rt <= 1e-9, f"round trip {worst_rt:.2e}")
    c.check(worst_or <= 1e-9, f"oracle {worst_or:.2e}")
    c.within(5)
    c.finish()


def test_criterion_04_correlated_shortcut():
    c = Criterion(4, "correlated depolarizing correction equals ideal data")
    worst_p = worst_chi = 0.0
    for eps in (0.3, 0.7, 1.0):
        for eps2 in (0.3, 0.7, 1.0):
            s = FaultySetting(depolarizing_2q(eps), depolarizing_2q(eps2), P)
            for seed in range(20):
                chi = random_channel_1q(seed, unital=True)
                noisy = total_map_probabilities(chi, s)
                corrected = corrected_probability_correlated(noisy, eps, eps2)
                worst_p = max(worst_p, np.abs(corrected - simulate_probabilities(chi, P)).max())
                worst_chi = max(worst_chi, np.abs(reconstruct_correlated(noisy, eps, eps2, P).chi - chi).max())
    c.check(worst_p <= 1e-12, f"probabilities {worst_p:.2e}")
    c.check(worst_chi <= 1e-9, f"chi {worst_chi:.2e}")
    c.within(5)
    c.finish()


def test_criterion_05_generalized_u():
    c = Criterion(5, "U-twisted depolarizing correction and U-conjugated reconstruction")
    eps, eps2 = 0.6, 0.9
    unitaries = {"I": np.eye(4, dtype=complex), "CNOT": CNOT, "random": random_unitary(np.random.default_rng(5), 4)}
    for name, u in unitaries.items():
        s = FaultySetting(generalized_depolarizing_2q(eps, u), depolarizing_2q(eps2), P)
        inputs = u_conjugated_inputs(u, P)
        worst_p = worst_chi = 0.0
        for seed in range(20):
            chi = random_channel_1q(seed, unital=True)
            noisy = total_map_probabilities(chi, s)
            target = simulate_probabilities(chi, P, inputs)
            worst_p = max(worst_p, np.abs(corrected_probability_generalized_u(noisy, eps, eps2) - target).max())
            try:
                rec = reconstruct_generalized_u(noisy, eps, eps2, u, P).chi
                worst_chi = max(worst_chi, np.abs(rec - chi).max())
            except DCQDError as exc:
                worst_chi = np.inf
                err = type(exc).__name__
        c.check(worst_p <= 1e-12, f"U={name} data {worst_p:.2e}")
        if np.isinf(worst_chi):
            c.check(False, f"U={name} reconstruction raised {err}")
        else:
            c.check(worst_chi <= 1e-8, f"U={name} chi {worst_chi:.2e}")
    c.finish()


def test_criterion_06_uncorrelated_rule():
    c = Criterion(6, "squared-contrast rule for diagonal chi under D x D noise")
    worst = 0.0
    rng = np.random.default_rng(6)
    channels = [unitary_chi(random_unitary(rng, 2)) for _ in range(20)]
    for eps in (0.5, 0.8, 1.0):
        for eps2 in (0.5, 0.8, 1.0):
            s = FaultySetting(uncorrelated_noise_chi(eps), uncorrelated_noise_chi(eps2), P)
            for chi in channels:
                diag = corrected_diagonal_uncorrelated(total_map_probabilities(chi, s), eps, eps2)
                worst = max(worst, np.abs(diag - np.diag(chi).real).max())
    c.check(worst <= 1e-9, f"diagonal {worst:.2e}")
    c.finish()


def test_criterion_07_bell_diagonal():
    c = Criterion(7, "Bell-diagonal transform A = eps x eps' and its inversion")
    rng = np.random.default_rng(7)
    worst_kron = worst_rt = worst_sim = 0.0
    for seed in range(20):
        prep = 0.8 * np.eye(4) + 0.2 * rng.dirichlet(np.ones(4), 4)
        meas = 0.8 * np.eye(4) + 0.2 * rng.dirichlet(np.ones(4), 4)
        n = BellDiagonalNoise(prep, meas)
        a = n.matrix
        entrywise = np.array([[prep[b // 4, d // 4] * meas[b % 4, d % 4] for d in range(16)] for b in range(16)])
        worst_kron = max(worst_kron, np.abs(a - entrywise).max())
        chi = random_channel_1q(seed)
        pv = simulate_probabilities(chi, P)
        worst_rt = max(worst_rt, np.abs(bell_diagonal_invert(bell_diagonal_transform(pv, n), n) - pv).max())
        worst_sim = max(worst_sim, np.abs(bell_diagonal_transform(pv, n) - simulate_bell_diagonal(chi, n, P)).max())
    c.check(worst_kron == 0.0, f"Kronecker {worst_kron:.2e}")
    c.check(worst_rt <= 1e-10, f"round trip {worst_rt:.2e}")
    c.check(worst_sim <= 1e-12, f"brute force {worst_sim:.2e}")
    prep = np.eye(4)
    prep[1] = prep[0]
    try:
        bell_diagonal_invert(np.full(16, 0.25), BellDiagonalNoise(prep, np.eye(4)))
        c.check(False, "singular mixing accepted")
    except SingularNoise:
        pass
    c.finish()


def test_criterion_08_faulty_reduction():
    c = Criterion(8, "noise-aware Lambda reduces to ideal; depolarizing round trip")
    dev = np.abs(build_faulty_lambda(FaultySetting.noiseless(P)).matrix - numeric_lambda(P).matrix).max()
    c.check(dev <= 1e-10, f"reduction {dev:.2e}")
    s = FaultySetting(depolarizing_2q(0.8), depolarizing_2q(0.8), P)
    worst = 0.0
    for seed in range(100):
        chi = random_channel_1q(seed)
        worst = max(worst, np.abs(reconstruct_faulty(total_map_probabilities(chi, s), s).chi - chi).max())
    c.check(worst <= 1e-8, f"round trip {worst:.2e}")
    c.finish()


def test_criterion_09_error_amplification():
    c = Criterion(9, "shot-noise error at (pi/8, pi/2) below (pi/16, pi/2)")
    pts = error_amplification_study(None, 10**4, 50, 0, angles=[(np.pi / 8, np.pi / 2), (np.pi / 16, np.pi / 2)])
    best, other = pts
    c.check(best.mean_error < other.mean_error, f"errors {best.mean_error:.3e} vs {other.mean_error:.3e}")
    c.finish()


def test_criterion_10_separable_inputs():
    c = Criterion(10, "reconstruction with separable (PPT) noisy inputs")
    eps, eps2 = 0.3, 0.3
    noisy_inputs = correlated_noisy_inputs(eps, P)
    c.check(all(is_ppt(rho) for rho in noisy_inputs), "noisy inputs not all PPT")
    s = FaultySetting(depolarizing_2q(eps), depolarizing_2q(eps2), P)
    worst = 0.0
    for seed in range(20):
        chi = random_channel_1q(seed, unital=True)
        pv = total_map_probabilities(chi, s)
        worst = max(worst, np.abs(reconstruct_correlated(pv, eps, eps2, P).chi - chi).max())
        generic = random_channel_1q(seed)
        pv = total_map_probabilities(generic, s)
        worst = max(worst, np.abs(reconstruct_faulty(pv, s).chi - generic).max())
    c.check(worst <= 1e-8, f"chi {worst:.2e}")
    c.finish()


if __name__ == "__main__":
    import tempfile
    from pathlib import Path

    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    for fn in tests:
        try:
            if "tmp_path" in fn.__code__.co_varnames[: fn.__code__.co_argcount]:
                with tempfile.TemporaryDirectory() as d:
                    fn(Path(d))
            else:
                fn()
        except AssertionError:
            pass
    failed = sum("FAIL" in line for line in RESULTS.values())
    print(f"{len(RESULTS) - failed}/{len(RESULTS)} criteria pass")
