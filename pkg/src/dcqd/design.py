"""Choosing input-state angles that keep Lambda far from singular."""
from __future__ import annotations

import csv
from dataclasses import dataclass, replace

import numpy as np

from .channel import random_channel_1q
from .errors import DCQDError
from .faulty import FaultySetting, build_faulty_lambda, reconstruct_faulty, total_map_probabilities
from .linalg import det
from .protocol import (
    LambdaSystem,
    _raw_inputs,
    coefficient_matrix_c,
    numeric_lambda,
    probe_outputs,
    reconstruct_ideal,
    sample_shots,
    simulate_probabilities,
)
from .qobj import InputParams, concurrence, dcqd_input

THETA_RANGE = (0.0, np.pi / 2)
PHI_RANGE = (0.0, np.pi)
# Ideal |det Lambda| = sin^6(4 theta) sin^6(phi) is invariant under these.
SYMMETRY_GENERATORS = ("theta -> theta + pi/4", "theta -> pi/4 - theta", "phi -> phi + pi", "phi -> pi - phi")

_C = coefficient_matrix_c()


def lambda_for(theta: float, phi: float, noise: FaultySetting | None = None) -> LambdaSystem:
    p = InputParams(float(theta), float(phi))
    if noise is None:
        return numeric_lambda(p)
    return build_faulty_lambda(replace(noise, params=p))


def _absdet(theta, phi, noise):
    p = InputParams(float(theta), float(phi))
    if noise is None:
        # skip the condition number; only the determinant is needed here
        return abs(det(_C @ probe_outputs(_raw_inputs(p))))
    return build_faulty_lambda(replace(noise, params=p)).absdet


@dataclass
class SurfacePoint:
    theta: float
    phi: float
    absdet: float
    cond: float


def det_surface(grid_theta: int, grid_phi: int, noise: FaultySetting | None = None) -> list[SurfacePoint]:
    """|det Lambda| and cond on a uniform grid, theta in [0, pi/2], phi in [0, pi]."""
    if grid_theta < 2 or grid_phi < 2:
        raise ValueError("grid sizes must be >= 2")
    out = []
    for theta in np.linspace(*THETA_RANGE, grid_theta):
        for phi in np.linspace(*PHI_RANGE, grid_phi):
            lam = lambda_for(theta, phi, noise)
            out.append(SurfacePoint(float(theta), float(phi), lam.absdet, lam.cond))
    return out


def write_surface_csv(points, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["theta", "phi", "absdet", "cond"])
        for pt in points:
            w.writerow([repr(pt.theta), repr(pt.phi), repr(pt.absdet), repr(pt.cond)])


def read_surface_csv(path) -> list[SurfacePoint]:
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    return [SurfacePoint(*(float(r[k]) for k in ("theta", "phi", "absdet", "cond"))) for r in rows]


@dataclass
class DesignResult:
    theta: float
    phi: float
    absdet: float
    cond: float
    concurrence: float
    symmetries: tuple = SYMMETRY_GENERATORS


def _canonical(theta, phi):
    # fundamental domain theta in (0, pi/4), phi in (0, pi)
    return float(np.mod(theta, np.pi / 4)), float(np.mod(phi, np.pi))


def optimize(noise: FaultySetting | None = None, grid: int = 64, tol: float = 1e-8) -> DesignResult:
    """Maximise |det Lambda| by a coarse grid scan plus coordinate descent.

    The scan covers the fundamental domain; refinement shrinks the step
    along each angle until it drops below ``tol``.
    """
    thetas = np.linspace(0, np.pi / 4, grid + 2)[1:-1]
    phis = np.linspace(0, np.pi, grid + 2)[1:-1]
    best = (-1.0, 0.0, 0.0)
    for th in thetas:
        for ph in phis:
            val = _absdet(th, ph, noise)
            if val > best[0]:
                best = (val, th, ph)
    val, th, ph = best
    step = [thetas[1] - thetas[0], phis[1] - phis[0]]
    x = [th, ph]
    while max(step) > tol:
        improved = False
        for k in range(2):
            for direction in (1, -1):
                trial = list(x)
                trial[k] += direction * step[k]
                v = _absdet(trial[0], trial[1], noise)
                if v > val:
                    val, x, improved = v, trial, True
                    break
        if not improved:
            step = [s / 2 for s in step]
    theta, phi = _canonical(*x)
    lam = lambda_for(theta, phi, noise)
    conc = concurrence(dcqd_input(1, InputParams(theta, phi)))
    return DesignResult(theta, phi, lam.absdet, lam.cond, conc)


@dataclass
class AmplificationPoint:
    theta: float
    phi: float
    absdet: float
    cond: float
    mean_error: float
    errors: list


DEFAULT_STUDY_ANGLES = (
    (np.pi / 8, np.pi / 2),
    (np.pi / 16, np.pi / 2),
    (3 * np.pi / 16, np.pi / 2),
    (np.pi / 8, np.pi / 4),
    (np.pi / 8, 3 * np.pi / 4),
    (np.pi / 12, np.pi / 3),
)


def error_amplification_study(
    noise: FaultySetting | None,
    shots: int,
    trials: int,
    seed: int,
    angles=DEFAULT_STUDY_ANGLES,
) -> list[AmplificationPoint]:
    """Mean entrywise chi error after shot noise, per angle pair.

    Trial ``t`` uses channel seed ``seed + t`` and sampling seed
    ``seed + 10007 + t`` at every angle, so points differ only by the
    inputs. Degenerate angles (phi = k pi etc.) are skipped.
    """
    if shots < 100 or trials < 10:
        raise ValueError("need shots >= 100 and trials >= 10")
    out = []
    for theta, phi in angles:
        p = InputParams(float(theta), float(phi))
        try:
            p.check()
        except DCQDError:
            continue
        setting = None if noise is None else replace(noise, params=p)
        errs = []
        for t in range(trials):
            chi = random_channel_1q(seed + t)
            if setting is None:
                pv = simulate_probabilities(chi, p)
            else:
                pv = total_map_probabilities(chi, setting)
            sampled = sample_shots(pv, shots, seed + 10007 + t)
            if setting is None:
                est = reconstruct_ideal(sampled, p).chi
            else:
                est = reconstruct_faulty(sampled, setting).chi
            errs.append(float(np.abs(est - chi).mean()))
        lam = lambda_for(theta, phi, noise)
        out.append(AmplificationPoint(p.theta, p.phi, lam.absdet, lam.cond, float(np.mean(errs)), errs))
    return out
