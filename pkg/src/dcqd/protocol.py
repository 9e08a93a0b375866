"""Ideal DCQD: outcome probabilities, the arrangement matrix C, Lambda and inversion.

Probability vectors are length-16 real arrays ordered ``4*i + j`` where
``i`` is the input setting and ``j`` the Bell outcome. chi is vectorised
row-major, ``vec(chi)[4*m + n] = chi[m, n]``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .channel import apply_1q_on_a
from .errors import IllConditioned, SingularMatrix
from .linalg import condition_number, det, lu_solve
from .qobj import BELL_PROJECTORS, PAULIS_ON_A, InputParams, dcqd_inputs, input_vector

DET_FLOOR = 1e-10
COND_CEILING = 1e8

# (setting, outcome, sign) terms of each arranged row
_ARRANGEMENT = (
    ((0, 0, 1),), ((0, 1, 1),), ((0, 2, 1),), ((0, 3, 1),),
    ((1, 0, 1), (1, 3, 1)), ((1, 1, 1), (1, 2, 1)),
    ((1, 0, 1), (1, 3, -1)), ((1, 1, 1), (1, 2, -1)),
    ((2, 0, 1), (2, 1, 1)), ((2, 2, 1), (2, 3, 1)),
    ((2, 0, 1), (2, 1, -1)), ((2, 3, 1), (2, 2, -1)),
    ((3, 0, 1), (3, 2, 1)), ((3, 1, 1), (3, 3, 1)),
    ((3, 0, 1), (3, 2, -1)), ((3, 3, 1), (3, 1, -1)),
)


def coefficient_matrix_c() -> np.ndarray:
    """The constant +-1 matrix turning raw Bell-outcome probabilities into
    the sums and differences that isolate chi entries."""
    c = np.zeros((16, 16))
    for row, terms in enumerate(_ARRANGEMENT):
        for i, j, sign in terms:
            c[row, 4 * i + j] = sign
    return c


@dataclass
class LambdaSystem:
    """Lambda with its determinant and 2-norm condition number."""

    matrix: np.ndarray
    det_value: complex = field(init=False)
    cond: float = field(init=False)

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=np.complex128)
        self.det_value = det(self.matrix)
        self.cond = condition_number(self.matrix)

    @property
    def absdet(self) -> float:
        return abs(self.det_value)


_BELL_PROJ_T_FLAT = BELL_PROJECTORS.transpose(0, 2, 1).reshape(4, 16).T


def _raw_inputs(p: InputParams | None) -> np.ndarray:
    # no validity check: Lambda must be computable at degenerate angles
    vecs = [input_vector(i, p) for i in range(4)]
    return np.array([np.outer(v, v.conj()) for v in vecs])


def bell_probabilities(states) -> np.ndarray:
    """Tr[P^jj rho_i] for a (4, 4, 4) stack, flattened to 16 entries."""
    return np.einsum("jab,iba->ij", BELL_PROJECTORS, states).real.reshape(16)


def simulate_probabilities(chi, p: InputParams, inputs=None) -> np.ndarray:
    """p_ij = Tr[P^jj E_A(rho_i)] for the four DCQD inputs.

    ``inputs`` replaces the standard inputs from ``dcqd_inputs`` (e.g. with U-conjugated ones).
    """
    if inputs is None:
        inputs = dcqd_inputs(p)
    return bell_probabilities(apply_1q_on_a(chi, inputs))


def probe_outputs(inputs) -> np.ndarray:
    """Raw outcomes for every chi matrix-unit probe, shape (16 outcomes, 16 probes).

    Column ``4*m + n`` is Tr[P^jj (s_m x I) rho_i (s_n x I)], i.e. the
    pipeline evaluated on ``matrix_unit(m, n)``. Non-Hermitian probes give
    complex values, which are kept.
    """
    inputs = np.asarray(inputs, dtype=np.complex128)
    left = PAULIS_ON_A[:, None] @ inputs[None]  # (m, i, 4, 4)
    full = left[:, None] @ PAULIS_ON_A[None, :, None]  # (m, n, i, 4, 4)
    # Tr[P rho] = sum_ad P[d, a] rho[a, d]
    raw = full.reshape(64, 16) @ _BELL_PROJ_T_FLAT  # ((m, n, i), j)
    return raw.reshape(4, 4, 4, 4).transpose(2, 3, 0, 1).reshape(16, 16)


def numeric_lambda(p: InputParams, c=None, inputs=None) -> LambdaSystem:
    """Lambda built by probing the arranged-measurement pipeline with the 16
    chi matrix units, so that ``C p == Lambda vec(chi)`` for every chi."""
    c = coefficient_matrix_c() if c is None else np.asarray(c)
    if inputs is None:
        inputs = _raw_inputs(p)
    return LambdaSystem(c @ probe_outputs(inputs))


def analytic_lambda(p: InputParams) -> LambdaSystem:
    """Lambda(theta, phi) transcribed entry by entry from the closed form.

    Rows 11 and 15 of the transcription carry the opposite overall sign to
    what the arrangement matrix produces; :func:`numeric_lambda` is the
    reference and this matrix is kept for comparison only.
    """
    x = np.cos(2 * p.theta)
    y = np.sin(2 * p.theta) * np.sin(p.phi)
    z = np.sin(2 * p.theta) * np.cos(p.phi)
    ix, iy = 1j * x, 1j * y
    rows = [
        {0: 1},
        {5: 1},
        {10: 1},
        {15: 1},
        {0: 1, 3: x, 12: x, 15: 1},
        {5: 1, 6: -ix, 9: ix, 10: 1},
        {0: z, 3: iy, 12: -iy, 15: -z},
        {5: z, 6: y, 9: y, 10: -z},
        {0: 1, 1: x, 4: x, 5: 1},
        {10: 1, 11: -ix, 14: ix, 15: 1},
        {0: z, 1: iy, 4: -iy, 5: -z},
        {10: z, 11: y, 14: y, 15: -z},
        {5: 1, 7: -ix, 13: ix, 15: 1},
        {0: 1, 2: -x, 8: -x, 10: 1},
        {5: -z, 7: -y, 13: -y, 15: z},
        {0: -z, 2: iy, 8: -iy, 10: z},
    ]
    lam = np.zeros((16, 16), complex)
    for r, entries in enumerate(rows):
        for col, v in entries.items():
            lam[r, col] = v
    return LambdaSystem(lam)


# Rows where the closed-form transcription and the probed Lambda differ by sign.
ANALYTIC_SIGN_FLIPPED_ROWS = (11, 15)


def analytic_absdet(p: InputParams) -> float:
    """|det Lambda| = sin^6(4 theta) sin^6(phi)."""
    return float(np.sin(4 * p.theta) ** 6 * np.sin(p.phi) ** 6)


@dataclass
class Reconstruction:
    chi: np.ndarray
    method: str
    cond: float
    absdet: float
    hermiticity_residual: float
    psd_min_eig: float
    symmetrized: bool = False

    def as_dict(self):
        return {
            "chi": self.chi,
            "method": self.method,
            "cond": self.cond,
            "absdet": self.absdet,
            "hermiticity_residual": self.hermiticity_residual,
            "psd_min_eig": self.psd_min_eig,
            "symmetrized": self.symmetrized,
        }


def invert_lambda(
    system: LambdaSystem, arranged, method: str, symmetrize: bool = False, det_floor: float | None = DET_FLOOR
) -> Reconstruction:
    """Solve ``Lambda vec(chi) = arranged`` with conditioning guards.

    ``det_floor`` rejects small |det Lambda|; it suits the ideal Lambda,
    whose determinant is at most 1. Noisy Lambdas shrink the determinant
    by many powers of the noise contrast while staying well conditioned,
    so callers pass ``None`` there and rely on LU pivots and ``cond``.
    """
    if (det_floor is not None and system.absdet <= det_floor) or system.det_value == 0:
        raise SingularMatrix(
            f"|det Lambda| = {system.absdet:.3g} is numerically zero", absdet=system.absdet, cond=system.cond
        )
    if system.cond > COND_CEILING:
        raise IllConditioned(
            f"cond(Lambda) = {system.cond:.3g} > {COND_CEILING:.0e}; data errors would be amplified",
            absdet=system.absdet,
            cond=system.cond,
        )
    chi = lu_solve(system.matrix, np.asarray(arranged, dtype=np.complex128)).reshape(4, 4)
    herm_res = float(np.abs(chi - chi.conj().T).max())
    if symmetrize:
        chi = (chi + chi.conj().T) / 2
    psd = float(np.linalg.eigvalsh((chi + chi.conj().T) / 2).min())
    return Reconstruction(chi, method, system.cond, system.absdet, herm_res, psd, symmetrize)


def reconstruct_ideal(pv, p: InputParams, symmetrize: bool = False) -> Reconstruction:
    """chi = Lambda^-1 C p for noiseless preparation and measurement."""
    p.check()
    system = numeric_lambda(p)
    return invert_lambda(system, coefficient_matrix_c() @ np.asarray(pv, float), "ideal", symmetrize)


def sample_shots(pv, shots_per_setting: int, seed: int) -> np.ndarray:
    """Empirical frequencies from one multinomial draw per input setting."""
    if shots_per_setting < 1:
        raise ValueError("shots_per_setting must be >= 1")
    rng = np.random.default_rng(seed)
    probs = np.clip(np.asarray(pv, float).reshape(4, 4), 0.0, None)
    out = np.empty((4, 4))
    for i in range(4):
        counts = rng.multinomial(shots_per_setting, probs[i] / probs[i].sum())
        out[i] = counts / shots_per_setting
    return out.reshape(16)
