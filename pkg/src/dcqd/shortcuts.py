"""Closed-form data-processing corrections for depolarizing-type device noise.

These work in probability space: undo the noise on the measured table,
then reconstruct with an ideal-style Lambda. They are independent of the
general faulty-framework machinery, which is used to cross-check them.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import apply_1q_on_a, apply_2q, depolarizing_1q, tensor_chi
from .errors import OutOfRange, SingularNoise, ZeroContrast
from .linalg import det, lu_solve
from .protocol import (
    Reconstruction,
    _raw_inputs,
    bell_probabilities,
    coefficient_matrix_c,
    invert_lambda,
    numeric_lambda,
    reconstruct_ideal,
)
from .qobj import BELL_PROJECTORS, InputParams, dcqd_inputs

CONTRAST_FLOOR = 1e-9
NOISE_DET_FLOOR = 1e-10


def _contrast(eps, eps2):
    c = eps * eps2
    if abs(c) < CONTRAST_FLOOR:
        raise ZeroContrast(f"eps*eps' = {c:.3g} cannot be inverted")
    return c


def forward_correlated(p_ideal, eps: float, eps2: float):
    """Noisy probability eps eps' p + (1 - eps eps')/4.

    Exact for any trace-preserving channel: the cross term
    Tr[(E(1) x 1) P^jj] = Tr[E(1)]/2 equals 1 without needing unitality.
    """
    c = eps * eps2
    return c * np.asarray(p_ideal, float) + (1 - c) / 4


def corrected_probability_correlated(p_noisy, eps: float, eps2: float):
    """Invert :func:`forward_correlated` (works elementwise on arrays)."""
    c = _contrast(eps, eps2)
    return (np.asarray(p_noisy, float) - (1 - c) / 4) / c


def corrected_probability_generalized_u(p_noisy, eps: float, eps2: float):
    """Recover Tr[E(U rho U^dag) P^jj] from data taken under U-twisted depolarizing noise.

    Same arithmetic as the correlated rule; the difference is that the
    recovered numbers refer to the U-conjugated inputs.
    """
    return corrected_probability_correlated(p_noisy, eps, eps2)


def forward_correlated_general(chi, eps: float, eps2: float, p: InputParams, u=None) -> np.ndarray:
    """Four-term expansion of the noisy data for an arbitrary CP chi.

    (1-e)(1-e')/16 Tr[E(1) x 1] + e'(1-e)/4 Tr[(E(1) x 1) P^jj]
      + e(1-e')/4 Tr[E(rho_i)] + e e' Tr[E(rho_i) P^jj]

    with rho_i replaced by U rho_i U^dag when ``u`` is given.
    """
    inputs = dcqd_inputs(p)
    if u is not None:
        u = np.asarray(u, complex)
        inputs = u @ inputs @ u.conj().T
    e_id = apply_1q_on_a(chi, np.eye(4))
    e_in = apply_1q_on_a(chi, inputs)
    t1 = np.trace(e_id).real
    t2 = np.einsum("jab,ba->j", BELL_PROJECTORS, e_id).real
    t3 = np.trace(e_in, axis1=1, axis2=2).real
    t4 = bell_probabilities(e_in).reshape(4, 4)
    out = (
        (1 - eps) * (1 - eps2) / 16 * t1
        + eps2 * (1 - eps) / 4 * t2[None, :]
        + eps * (1 - eps2) / 4 * t3[:, None]
        + eps * eps2 * t4
    )
    return out.reshape(16)


def u_conjugated_inputs(u, p: InputParams) -> np.ndarray:
    u = np.asarray(u, complex)
    return u @ dcqd_inputs(p) @ u.conj().T


def reconstruct_correlated(pv_noisy, eps: float, eps2: float, p: InputParams, symmetrize=False) -> Reconstruction:
    """Correct data taken under correlated depolarizing noise, then invert the ideal Lambda."""
    rec = reconstruct_ideal(corrected_probability_correlated(pv_noisy, eps, eps2), p, symmetrize)
    rec.method = "shortcut-correlated"
    return rec


def reconstruct_generalized_u(pv_noisy, eps: float, eps2: float, u, p: InputParams, symmetrize=False) -> Reconstruction:
    """Correct U-twisted depolarizing data and invert Lambda built on U rho_i U^dag."""
    p.check()
    corrected = corrected_probability_generalized_u(pv_noisy, eps, eps2)
    u = np.asarray(u, complex)
    system = numeric_lambda(p, inputs=u @ _raw_inputs(p) @ u.conj().T)
    return invert_lambda(system, coefficient_matrix_c() @ corrected, "shortcut-generalized-u", symmetrize)


def check_depolarizing_parameter(eps: float) -> None:
    if not -1 / 3 <= eps <= 1:
        raise OutOfRange(f"single-qubit depolarizing needs -1/3 <= eps <= 1, got {eps}")


def uncorrelated_noise_chi(eps: float) -> np.ndarray:
    """Two-qubit chi of D_eps x D_eps."""
    check_depolarizing_parameter(eps)
    d = depolarizing_1q(eps)
    return tensor_chi(d, d)


def uncorrelated_bell_image(k: int, eps: float) -> np.ndarray:
    """P^kk -> (1 - eps^2)/4 I + eps^2 P^kk under D_eps x D_eps."""
    check_depolarizing_parameter(eps)
    return (1 - eps**2) / 4 * np.eye(4) + eps**2 * BELL_PROJECTORS[k]


def corrected_diagonal_uncorrelated(pv_noisy, eps: float, eps2: float) -> np.ndarray:
    """chi_kk for TP channels from the Phi+ setting under D x D noise.

    Contrast (eps eps')^2 replaces eps eps' in the correlated rule.
    """
    check_depolarizing_parameter(eps)
    check_depolarizing_parameter(eps2)
    row0 = np.asarray(pv_noisy, float)[:4]
    return corrected_probability_correlated(row0, eps**2, eps2**2)


@dataclass(frozen=True)
class BellDiagonalNoise:
    """Row-stochastic mixing of input settings (``eps_prep``) and Bell outcomes (``eps_meas``)."""

    eps_prep: np.ndarray
    eps_meas: np.ndarray
    check: bool = True

    def __post_init__(self):
        for name in ("eps_prep", "eps_meas"):
            m = np.asarray(getattr(self, name), dtype=float)
            if m.shape != (4, 4):
                raise ValueError(f"{name} must be 4x4, got {m.shape}")
            if self.check:
                if np.abs(m.sum(axis=1) - 1).max() > 1e-10:
                    raise ValueError(f"rows of {name} must sum to 1")
                if m.min() < -1e-12:
                    raise ValueError(f"{name} has negative entries")
            object.__setattr__(self, name, m)

    @property
    def matrix(self) -> np.ndarray:
        """A[(i,j), (i',j')] = eps_prep[i,i'] eps_meas[j,j']."""
        return np.kron(self.eps_prep, self.eps_meas)


def bell_diagonal_transform(pv, n: BellDiagonalNoise) -> np.ndarray:
    return n.matrix @ np.asarray(pv, float)


def bell_diagonal_invert(pv_noisy, n: BellDiagonalNoise) -> np.ndarray:
    a = n.matrix
    if abs(det(a)) <= NOISE_DET_FLOOR:
        raise SingularNoise("Bell-diagonal mixing matrix is singular")
    return lu_solve(a, np.asarray(pv_noisy, float)).real


def arranged_transport(n: BellDiagonalNoise) -> np.ndarray:
    """Noise action on arranged data: C A C^-1."""
    c = coefficient_matrix_c()
    return c @ n.matrix @ np.linalg.inv(c)


def bell_diagonal_invert_arranged(q_noisy, n: BellDiagonalNoise) -> np.ndarray:
    """Undo the noise directly on arranged data, via C A^-1 C^-1."""
    a = n.matrix
    if abs(det(a)) <= NOISE_DET_FLOOR:
        raise SingularNoise("Bell-diagonal mixing matrix is singular")
    c = coefficient_matrix_c()
    return c @ lu_solve(a, lu_solve(c, np.asarray(q_noisy, float))).real


def reconstruct_bell_diagonal(pv_noisy, n: BellDiagonalNoise, p: InputParams, symmetrize=False) -> Reconstruction:
    rec = reconstruct_ideal(bell_diagonal_invert(pv_noisy, n), p, symmetrize)
    rec.method = "shortcut-belldiag"
    return rec


def simulate_bell_diagonal(chi, n: BellDiagonalNoise, p: InputParams) -> np.ndarray:
    """Noisy table by brute force: mixed inputs measured with mixed projectors."""
    inputs = np.einsum("ik,kab->iab", n.eps_prep, dcqd_inputs(p))
    projectors = np.einsum("jl,lab->jab", n.eps_meas, BELL_PROJECTORS)
    out = apply_1q_on_a(chi, inputs)
    return np.einsum("jab,iba->ij", projectors, out).real.reshape(16)


def correlated_noisy_inputs(eps: float, p: InputParams, u=None) -> np.ndarray:
    """Preparation states after (generalized) correlated depolarizing noise."""
    inputs = dcqd_inputs(p) if u is None else u_conjugated_inputs(u, p)
    return (1 - eps) / 4 * np.eye(4) + eps * inputs


def apply_uncorrelated(eps: float, rho) -> np.ndarray:
    return apply_2q(uncorrelated_noise_chi(eps), rho)
