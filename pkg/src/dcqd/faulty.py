"""DCQD with known faulty Bell-state preparation and measurement.

The total map on the system-ancilla pair is E_f o (E x id) o E_i with
E_i, E_f known two-qubit chi matrices. Everything here is linear in the
unknown chi, so Lambda is obtained by pushing the 16 chi matrix units
through the pipeline instead of expanding Pauli products symbolically.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import (
    apply_1q_on_a,
    apply_2q,
    apply_2q_adjoint,
    identity_chi_2q,
    matrix_unit,
    validate,
)
from .errors import NotCP
from .protocol import (
    LambdaSystem,
    Reconstruction,
    _raw_inputs,
    bell_probabilities,
    coefficient_matrix_c,
    invert_lambda,
)
from .qobj import BELL_PROJECTORS, BELL_VECTORS, PAULIS, PAULIS_2Q, PAULIS_ON_A, InputParams, dcqd_inputs


@dataclass(frozen=True)
class FaultySetting:
    """Known preparation noise ``chi_i``, measurement noise ``chi_f`` and input angles."""

    chi_i: np.ndarray
    chi_f: np.ndarray
    params: InputParams

    def __post_init__(self):
        for name in ("chi_i", "chi_f"):
            chi = np.asarray(getattr(self, name), dtype=np.complex128)
            if chi.shape != (16, 16):
                raise ValueError(f"{name} must be 16x16, got {chi.shape}")
            if not validate(chi).cp:
                raise NotCP(f"{name} is not completely positive")
            object.__setattr__(self, name, chi)

    @classmethod
    def noiseless(cls, params: InputParams) -> "FaultySetting":
        return cls(identity_chi_2q(), identity_chi_2q(), params)


def total_map_probabilities(chi, s: FaultySetting, inputs=None) -> np.ndarray:
    """p_ij = Tr[P^jj E_f(E_A(E_i(rho_i)))]."""
    if inputs is None:
        inputs = dcqd_inputs(s.params)
    out = apply_2q(s.chi_f, apply_1q_on_a(chi, apply_2q(s.chi_i, inputs)))
    return bell_probabilities(out)


def _raw_total_map(chi, s, inputs):
    # complex-valued variant for non-Hermitian probes
    out = apply_2q(s.chi_f, apply_1q_on_a(chi, apply_2q(s.chi_i, inputs)))
    return np.einsum("jab,iba->ij", BELL_PROJECTORS, out).reshape(16)


def rho_tilde(m: int, n: int, s: FaultySetting, i: int, inputs=None) -> np.ndarray:
    """Operator with E_T(rho_i) = sum_mn chi_mn (s_m x I) rho~_mn (s_n x I).

    Obtained by pushing the (m, n) matrix-unit probe through the total
    map and stripping the outer Pauli factors (each squares to identity).
    """
    if inputs is None:
        inputs = _raw_inputs(s.params)
    image = apply_2q(s.chi_f, apply_1q_on_a(matrix_unit(m, n), apply_2q(s.chi_i, inputs[i])))
    return PAULIS_ON_A[m] @ image @ PAULIS_ON_A[n]


def lambda_coefficients(m: int, n: int, s: FaultySetting, i: int, inputs=None) -> np.ndarray:
    """Bell-basis expansion table lam[k, k2] with rho~_mn = sum lam[k, k2] |B^k><B^k2|.

    lam[k, k2] = <B^k| rho~_mn |B^k2> = Tr[P^{k2 k} rho~_mn].
    """
    rt = rho_tilde(m, n, s, i, inputs)
    return BELL_VECTORS.conj() @ rt @ BELL_VECTORS.T


def build_faulty_lambda(s: FaultySetting, inputs=None, c=None) -> LambdaSystem:
    """Noise-aware Lambda with ``C p == Lambda vec(chi)`` for every chi.

    The 16 matrix-unit probes are evaluated together: preparation noise is
    applied to the inputs once and the measurement noise is folded into
    effective (Heisenberg-picture) Bell projectors.
    """
    c = coefficient_matrix_c() if c is None else np.asarray(c)
    if inputs is None:
        inputs = _raw_inputs(s.params)
    prepared = apply_2q(s.chi_i, inputs)
    effective = apply_2q_adjoint(s.chi_f, BELL_PROJECTORS)
    left = PAULIS_ON_A[:, None] @ prepared[None]
    full = left[:, None] @ PAULIS_ON_A[None, :, None]  # (m, n, i, 4, 4)
    raw = np.einsum("jda,mniad->ijmn", effective, full, optimize=True).reshape(16, 16)
    return LambdaSystem(c @ raw)


def probe_faulty_lambda(s: FaultySetting, inputs=None, c=None) -> np.ndarray:
    """Lambda column by column from :func:`total_map_probabilities`-style runs."""
    c = coefficient_matrix_c() if c is None else np.asarray(c)
    if inputs is None:
        inputs = _raw_inputs(s.params)
    cols = [c @ _raw_total_map(matrix_unit(m, n), s, inputs) for m in range(4) for n in range(4)]
    return np.array(cols).T


def assemble_lambda_from_coefficients(s: FaultySetting, inputs=None, c=None) -> np.ndarray:
    """Lambda via the Bell-basis route: sum_kk2 lam_mn^{kk2} Tr[P^jj s_m P^{kk2} s_n]."""
    c = coefficient_matrix_c() if c is None else np.asarray(c)
    if inputs is None:
        inputs = _raw_inputs(s.params)
    # Tr[P^jj s_m |B^k><B^k2| s_n] = <B^k2| s_n P^jj s_m |B^k>
    ket = np.einsum("mab,kb->mka", PAULIS_ON_A, BELL_VECTORS)  # s_m |B^k>
    proj = np.einsum("jab,mkb->jmka", BELL_PROJECTORS, ket)
    overlap = np.einsum("nlb,jmkb->jmnkl", ket.conj(), proj)  # [j, m, n, k, k2]
    raw = np.empty((4, 4, 4, 4), complex)
    for i in range(4):
        for m in range(4):
            for n in range(4):
                lam = lambda_coefficients(m, n, s, i, inputs)
                raw[i, :, m, n] = np.einsum("kl,jkl->j", lam, overlap[:, m, n])
    return c @ raw.reshape(16, 16)


def reconstruct_faulty(pv, s: FaultySetting, symmetrize: bool = False, inputs=None) -> Reconstruction:
    """chi = Lambda_faulty^-1 C p with conditioning guards."""
    if inputs is None:
        s.params.check()
    system = build_faulty_lambda(s, inputs)
    arranged = coefficient_matrix_c() @ np.asarray(pv, float)
    return invert_lambda(system, arranged, "faulty", symmetrize, det_floor=None)


# Sign table: s_p s_m = w s_m s_p with w = -1 iff both non-identity and different.
def commutation_sign(a: int, b: int) -> int:
    prod_ab = PAULIS[a] @ PAULIS[b]
    prod_ba = PAULIS[b] @ PAULIS[a]
    return 1 if np.allclose(prod_ab, prod_ba) else -1


def omega_printed(m: int, n: int, p2: int, s2: int) -> int:
    """The sign factor exactly as transcribed: exponent
    (d_m0 - 1)(d_p0 - 1) d_mp + (d_n0 - 1)(d_s0 - 1) d_ns."""
    d = lambda a, b: int(a == b)
    e = (d(m, 0) - 1) * (d(p2, 0) - 1) * d(m, p2) + (d(n, 0) - 1) * (d(s2, 0) - 1) * d(n, s2)
    return (-1) ** e


def omega_commutation(m: int, n: int, p2: int, s2: int) -> int:
    """Sign from moving s_m left past s_p2 and s_n right past s_s2."""
    return commutation_sign(p2, m) * commutation_sign(n, s2)


def rho_tilde_via_omega(m: int, n: int, s: FaultySetting, i: int, omega=omega_commutation, inputs=None):
    """rho~_mn from the explicit Pauli-product sum with a given sign rule.

    Reference path for :func:`rho_tilde`; ``omega=omega_printed`` evaluates
    the transcribed sign factor instead of the commutation-derived one.
    """
    if inputs is None:
        inputs = _raw_inputs(s.params)
    prepared = apply_2q(s.chi_i, inputs[i])
    out = np.zeros((4, 4), complex)
    for a in range(16):
        for b in range(16):
            w = s.chi_f[a, b]
            if w == 0:
                continue
            p2, s2 = a // 4, b // 4
            out += w * omega(m, n, p2, s2) * PAULIS_2Q[a] @ prepared @ PAULIS_2Q[b]
    return out
