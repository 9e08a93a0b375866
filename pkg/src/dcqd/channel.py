"""Process (chi) matrices in the Pauli product basis.

A single-qubit chi acts on qubit A of a two-qubit state,

    E(rho) = sum_mn chi[m, n] (s_m x I) rho (s_n x I),

and a two-qubit chi is indexed by flattened Pauli pairs ``4*a + b``,

    E(rho) = sum chi[4a+b, 4c+d] (s_a x s_b) rho (s_c x s_d).

The four-index labelling chi_pqrs with right factor s_r^B s_s^A is
``chi[4p+q, 4s+r]`` in this layout.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotCP, NotUnitary
from .linalg import is_hermitian
from .qobj import PAULIS, PAULIS_2Q, PAULIS_ON_A

CP_ATOL = 1e-9
TP_ATOL = 1e-9
UNITARY_ATOL = 1e-10

_PAULI_2Q_DAG = PAULIS_2Q.conj().transpose(0, 2, 1)


def _as_chi(chi, size):
    chi = np.asarray(chi, dtype=np.complex128)
    if chi.shape != (size, size):
        raise ValueError(f"expected a {size}x{size} chi matrix, got {chi.shape}")
    return chi


def _basis_for(chi):
    n = chi.shape[0]
    if n == 4:
        return PAULIS
    if n == 16:
        return PAULIS_2Q
    raise ValueError(f"chi must be 4x4 or 16x16, got {chi.shape}")


def apply_1q_on_a(chi, rho) -> np.ndarray:
    """Apply a single-qubit chi to qubit A of a 4x4 operator (or a stack of them)."""
    chi = _as_chi(chi, 4)
    rho = np.asarray(rho, dtype=np.complex128)
    return np.einsum("mn,mab,...bc,ncd->...ad", chi, PAULIS_ON_A, rho, PAULIS_ON_A, optimize=True)


def apply_2q(chi, rho) -> np.ndarray:
    """Apply a two-qubit chi to a 4x4 operator (or a stack of them)."""
    chi = _as_chi(chi, 16)
    rho = np.asarray(rho, dtype=np.complex128)
    left = np.einsum("aij,...jk->...aik", PAULIS_2Q, rho)
    return np.einsum("ac,...aik,ckl->...il", chi, left, _PAULI_2Q_DAG, optimize=True)


def apply_2q_adjoint(chi, obs) -> np.ndarray:
    """Heisenberg-picture action: Tr[obs E(rho)] == Tr[E^dag(obs) rho]."""
    chi = _as_chi(chi, 16)
    obs = np.asarray(obs, dtype=np.complex128)
    left = np.einsum("cij,...jk->...cik", _PAULI_2Q_DAG, obs)
    return np.einsum("ac,...cik,akl->...il", chi, left, PAULIS_2Q, optimize=True)


def apply_1q(chi, rho) -> np.ndarray:
    """Apply a single-qubit chi to a bare 2x2 operator."""
    chi = _as_chi(chi, 4)
    return np.einsum("mn,mab,bc,ndc->ad", chi, PAULIS, np.asarray(rho, complex), PAULIS.conj())


@dataclass(frozen=True)
class ChannelReport:
    hermitian: bool
    cp: bool
    tp: bool
    unital: bool

    def as_dict(self):
        return {"hermitian": self.hermitian, "cp": self.cp, "tp": self.tp, "unital": self.unital}


def _sum_dagger_products(chi, basis, tp):
    # TP: sum chi_mn B_n^dag B_m ; unital: sum chi_mn B_m B_n^dag
    bdag = basis.conj().transpose(0, 2, 1)
    if tp:
        return np.einsum("mn,nij,mjk->ik", chi, bdag, basis)
    return np.einsum("mn,mij,njk->ik", chi, basis, bdag)


def validate(chi) -> ChannelReport:
    """Numerical Hermiticity, CP, TP and unitality flags for a 4x4 or 16x16 chi."""
    chi = np.asarray(chi, dtype=np.complex128)
    basis = _basis_for(chi)
    d = basis.shape[1]
    herm = is_hermitian(chi)
    cp = herm and float(np.linalg.eigvalsh((chi + chi.conj().T) / 2).min()) >= -CP_ATOL
    eye = np.eye(d)
    tp = float(np.abs(_sum_dagger_products(chi, basis, True) - eye).max()) <= TP_ATOL
    unital = float(np.abs(_sum_dagger_products(chi, basis, False) / d - eye / d).max()) <= TP_ATOL
    return ChannelReport(herm, cp, tp, unital)


def operator_coefficients(op) -> np.ndarray:
    """Coefficients a with op = sum_k a_k P_k over the Pauli (product) basis."""
    op = np.asarray(op, dtype=np.complex128)
    d = op.shape[0]
    basis = {2: PAULIS, 4: PAULIS_2Q}[d]
    return np.einsum("kji,ji->k", basis.conj(), op) / d


def kraus_to_chi(kraus) -> np.ndarray:
    """chi from a list of Kraus operators (2x2 -> 4x4 chi, 4x4 -> 16x16 chi)."""
    coeffs = np.array([operator_coefficients(k) for k in kraus])
    return np.einsum("km,kn->mn", coeffs, coeffs.conj())


def unitary_chi(u) -> np.ndarray:
    return kraus_to_chi([u])


def chi_to_superop(chi) -> np.ndarray:
    """Row-major superoperator S with vec(E(X)) = S vec(X)."""
    chi = np.asarray(chi, dtype=np.complex128)
    basis = _basis_for(chi)
    d = basis.shape[1]
    return np.einsum("ac,aik,cjl->ijkl", chi, basis, basis.conj()).reshape(d * d, d * d)


def superop_to_chi(s) -> np.ndarray:
    s = np.asarray(s, dtype=np.complex128)
    d = int(round(np.sqrt(s.shape[0])))
    basis = PAULIS if d == 2 else PAULIS_2Q
    s4 = s.reshape(d, d, d, d)
    return np.einsum("aik,cjl,ijkl->ac", basis.conj(), basis, s4) / d**2


def identity_chi_1q() -> np.ndarray:
    chi = np.zeros((4, 4), complex)
    chi[0, 0] = 1
    return chi


def identity_chi_2q() -> np.ndarray:
    chi = np.zeros((16, 16), complex)
    chi[0, 0] = 1
    return chi


def matrix_unit(m: int, n: int, size: int = 4) -> np.ndarray:
    """Non-physical chi probe with a single unit entry."""
    chi = np.zeros((size, size), complex)
    chi[m, n] = 1
    return chi


def tensor_chi(chi_a, chi_b) -> np.ndarray:
    """Two-qubit chi of E_A (x) E_B from single-qubit chis."""
    return np.kron(_as_chi(chi_a, 4), _as_chi(chi_b, 4))


def _check_cp(chi, what):
    if float(np.linalg.eigvalsh((chi + chi.conj().T) / 2).min()) < -CP_ATOL:
        raise NotCP(f"{what} is not completely positive")
    return chi


def depolarizing_1q(eps: float) -> np.ndarray:
    """rho -> (1-eps)/2 I + eps rho, i.e. Pauli weights ((1+3eps)/4, (1-eps)/4 x3)."""
    chi = np.diag([(1 + 3 * eps) / 4] + [(1 - eps) / 4] * 3).astype(complex)
    return _check_cp(chi, f"single-qubit depolarizing eps={eps}")


def depolarizing_2q(eps: float) -> np.ndarray:
    """Correlated two-qubit depolarizing rho -> (1-eps)/4 I x I + eps rho.

    Since sum_ab (s_a x s_b) X (s_a x s_b) = 4 Tr[X] I x I, the chi is
    (1-eps)/16 on the whole diagonal plus eps on the identity entry.
    CP holds for -1/15 <= eps <= 1.
    """
    chi = np.eye(16, dtype=complex) * (1 - eps) / 16
    chi[0, 0] += eps
    return _check_cp(chi, f"two-qubit depolarizing eps={eps}")


def generalized_depolarizing_2q(eps: float, u) -> np.ndarray:
    """rho -> (1-eps)/4 I x I + eps U rho U^dag."""
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (4, 4) or np.abs(u @ u.conj().T - np.eye(4)).max() > UNITARY_ATOL:
        raise NotUnitary("generalized depolarizing needs a 4x4 unitary")
    a = operator_coefficients(u)
    chi = np.eye(16, dtype=complex) * (1 - eps) / 16 + eps * np.outer(a, a.conj())
    return _check_cp(chi, f"generalized depolarizing eps={eps}")


def compose(chi_outer, chi_inner) -> np.ndarray:
    """chi of outer o inner, by probing the composition on the 16 matrix units."""
    chi_outer = _as_chi(chi_outer, 16)
    chi_inner = _as_chi(chi_inner, 16)
    units = np.eye(16, dtype=complex).reshape(16, 4, 4)
    images = apply_2q(chi_outer, apply_2q(chi_inner, units))
    # column 4k+l of the superoperator is vec(E(|k><l|))
    superop = images.reshape(16, 16).T
    return superop_to_chi(superop)


def amplitude_damping_chi(gamma: float) -> np.ndarray:
    k0 = np.array([[1, 0], [0, np.sqrt(1 - gamma)]], complex)
    k1 = np.array([[0, np.sqrt(gamma)], [0, 0]], complex)
    return kraus_to_chi([k0, k1])


def rotation_unitary(axis, angle: float) -> np.ndarray:
    """exp(-i angle/2 n.sigma) for axis 'x'|'y'|'z' or a 3-vector."""
    if isinstance(axis, str):
        n = {"x": (1, 0, 0), "y": (0, 1, 0), "z": (0, 0, 1)}[axis.lower()]
    else:
        n = axis
    n = np.asarray(n, dtype=float)
    n = n / np.linalg.norm(n)
    gen = np.einsum("k,kij->ij", n, PAULIS[1:])
    return np.cos(angle / 2) * np.eye(2) - 1j * np.sin(angle / 2) * gen


def random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Haar-random unitary (QR of a Ginibre matrix with phase fix)."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_kraus_1q(rng: np.random.Generator, rank: int | None = None) -> list[np.ndarray]:
    """Random trace-preserving Kraus set from a Haar-ish isometry."""
    if rank is None:
        rank = int(rng.integers(1, 5))
    g = rng.standard_normal((2 * rank, 2)) + 1j * rng.standard_normal((2 * rank, 2))
    v, _ = np.linalg.qr(g)
    return [v[2 * k:2 * k + 2] for k in range(rank)]


def random_channel_1q(seed: int, tp: bool = True, unital: bool = False) -> np.ndarray:
    """Reproducible random CP single-qubit chi.

    unital channels are convex mixtures of random unitary channels; other
    TP channels come from a random isometry split into Kraus blocks. With
    ``tp=False`` the result is scaled down to be strictly trace-decreasing.
    """
    rng = np.random.default_rng(seed)
    if unital:
        n = int(rng.integers(1, 5))
        weights = rng.dirichlet(np.ones(n))
        chi = sum(w * unitary_chi(random_unitary(rng, 2)) for w in weights)
    else:
        chi = kraus_to_chi(random_kraus_1q(rng))
    if not tp:
        chi = chi * rng.uniform(0.2, 0.9)
    return (chi + chi.conj().T) / 2
