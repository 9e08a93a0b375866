"""Pauli operators, Bell states, the four DCQD input states and concurrence.

Two-qubit operators are 4x4 with the system qubit A as the left
(most significant) tensor factor and the ancilla B on the right.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInput
from .linalg import eig_hermitian, kron

DEGENERACY_TOL = 1e-6

_SQ2 = 1 / np.sqrt(2)

PAULIS = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=np.complex128,
)
PAULIS.flags.writeable = False

# k = 0..3 -> Phi+, Psi+, Psi-, Phi-
BELL_VECTORS = np.array(
    [
        [_SQ2, 0, 0, _SQ2],
        [0, _SQ2, _SQ2, 0],
        [0, _SQ2, -_SQ2, 0],
        [_SQ2, 0, 0, -_SQ2],
    ],
    dtype=np.complex128,
)
BELL_VECTORS.flags.writeable = False

BELL_NAMES = ("Phi+", "Psi+", "Psi-", "Phi-")

# Single-qubit eigenbases (|+>, |->) for the z, x and y inputs. The y pair is
# labelled (|0> - i|1>)/sqrt2, (|0> + i|1>)/sqrt2; see README "Conventions".
_BASES = (
    (np.array([1, 0], complex), np.array([0, 1], complex)),
    (np.array([1, 1], complex) * _SQ2, np.array([1, -1], complex) * _SQ2),
    (np.array([1, -1j], complex) * _SQ2, np.array([1, 1j], complex) * _SQ2),
)

_PRODUCT_BASES = tuple((np.kron(a, a), np.kron(b, b)) for a, b in _BASES)


def _check_index(i, name):
    if int(i) != i or not 0 <= i <= 3:
        raise ValueError(f"{name} must be in 0..3, got {i!r}")
    return int(i)


def pauli(i: int) -> np.ndarray:
    """sigma_i for i in 0..3 = (I, X, Y, Z); sigma_1 sigma_2 = i sigma_3."""
    return PAULIS[_check_index(i, "Pauli index")].copy()


def pauli2(a: int, b: int) -> np.ndarray:
    """sigma_a (x) sigma_b acting on (A, B)."""
    return kron(PAULIS[_check_index(a, "Pauli index")], PAULIS[_check_index(b, "Pauli index")])


# sigma_m (x) I, indexed by m
PAULIS_ON_A = np.array([kron(s, np.eye(2)) for s in PAULIS])
PAULIS_ON_A.flags.writeable = False

# sigma_a (x) sigma_b, flattened 4a+b
PAULIS_2Q = np.array([kron(PAULIS[a], PAULIS[b]) for a in range(4) for b in range(4)])
PAULIS_2Q.flags.writeable = False


def bell_state(k: int) -> np.ndarray:
    return BELL_VECTORS[_check_index(k, "Bell index")].copy()


def bell_projector(k: int, k2: int) -> np.ndarray:
    """|B^k><B^k2|."""
    return np.outer(bell_state(k), bell_state(k2).conj())


BELL_PROJECTORS = np.array([bell_projector(k, k) for k in range(4)])
BELL_PROJECTORS.flags.writeable = False


@dataclass(frozen=True)
class InputParams:
    """Input amplitudes alpha = cos(theta), beta = exp(i phi) sin(theta)."""

    theta: float
    phi: float

    @property
    def alpha(self) -> complex:
        return complex(np.cos(self.theta))

    @property
    def beta(self) -> complex:
        return complex(np.exp(1j * self.phi) * np.sin(self.theta))

    def check(self) -> None:
        a, b = abs(self.alpha), abs(self.beta)
        if b < DEGENERACY_TOL or a < DEGENERACY_TOL:
            raise DegenerateInput(f"theta={self.theta!r} makes alpha or beta vanish")
        if abs(a - b) < DEGENERACY_TOL:
            raise DegenerateInput(f"theta={self.theta!r} gives |alpha| == |beta|")
        if abs((self.alpha.conjugate() * self.beta).imag) < DEGENERACY_TOL:
            raise DegenerateInput(f"phi={self.phi!r} makes Im(conj(alpha) beta) vanish")


OPTIMAL_PARAMS = InputParams(np.pi / 8, np.pi / 2)


def input_vector(i: int, p: InputParams | None = None) -> np.ndarray:
    """State vector of the i-th DCQD input (no validity check)."""
    i = _check_index(i, "input index")
    if i == 0:
        return bell_state(0)
    plus_plus, minus_minus = _PRODUCT_BASES[i - 1]
    return p.alpha * plus_plus + p.beta * minus_minus


def dcqd_input(i: int, p: InputParams | None = None) -> np.ndarray:
    """Density matrix of the i-th DCQD input state.

    i=0 is |Phi+> and ignores ``p``; i=1,2,3 are alpha|++> + beta|-->
    in the sigma_z, sigma_x and sigma_y eigenbases.
    """
    i = _check_index(i, "input index")
    if i:
        if p is None:
            raise ValueError("inputs 1..3 need InputParams")
        p.check()
    v = input_vector(i, p)
    return np.outer(v, v.conj())


def dcqd_inputs(p: InputParams | None) -> np.ndarray:
    """All four inputs stacked as (4, 4, 4)."""
    return np.array([dcqd_input(i, p) for i in range(4)])


def is_density_matrix(rho, atol: float = 1e-9) -> bool:
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape != (4, 4) or np.abs(rho - rho.conj().T).max() > 1e-10:
        return False
    if abs(np.trace(rho) - 1) > 1e-10:
        return False
    return bool(np.linalg.eigvalsh(rho).min() >= -atol)


_YY = kron(PAULIS[2], PAULIS[2])


def concurrence(rho) -> float:
    """Wootters concurrence of a two-qubit density matrix.

    With rho = Psi Psi^dag (columns sqrt(w_k) v_k), the Wootters lambdas are
    the singular values of Psi^T (Y x Y) Psi. Taking them directly avoids
    square roots of round-off-level eigenvalues, which would cost ~1e-8.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    w, v = eig_hermitian(rho)
    psi = v * np.sqrt(np.clip(w, 0.0, None))
    lam = np.linalg.svd(psi.T @ _YY @ psi, compute_uv=False)
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def partial_transpose_b(rho) -> np.ndarray:
    rho = np.asarray(rho).reshape(2, 2, 2, 2)
    return rho.transpose(0, 3, 2, 1).reshape(4, 4)


def is_ppt(rho, atol: float = 1e-12) -> bool:
    """Peres criterion; for two qubits PPT is equivalent to separability."""
    return bool(np.linalg.eigvalsh(partial_transpose_b(rho)).min() >= -atol)
