"""Textbook single-qubit process tomography, kept as an independent cross-check.

Nothing here touches the DCQD Lambda/C machinery: the channel is applied to
four single-qubit inputs, each output is rebuilt from its exact Pauli
expectation values, and chi follows from the standard block-matrix
basis change for the operator basis {I, X, -iY, Z}.

Block (j, k) of M = [[r1, r2], [r3, r4]] is E(|j><k|), so
M[2j+a, 2k+b] = sum_mn chi~_mn (E_m)[a, j] conj(E_n)[b, k], i.e.
M = K^T chi~ conj(K) with K[m, 2j+a] = (E_m)[a, j].
"""
from __future__ import annotations

import numpy as np

_I = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_SIGMA = np.stack([_I, _X, _Y, _Z])

_KET0 = np.array([1, 0], dtype=complex)
_KET1 = np.array([0, 1], dtype=complex)
_PLUS = (_KET0 + _KET1) / np.sqrt(2)
_PLUS_I = (_KET0 + 1j * _KET1) / np.sqrt(2)

# E_m = c_m sigma_m for the basis (I, X, -iY, Z)
_PHASES = np.array([1, 1, -1j, 1])
_K = np.array([(c * s).T.reshape(4) for c, s in zip(_PHASES, _SIGMA)])


def _channel(chi, rho):
    return np.einsum("mn,mab,bc,ndc->ad", chi, _SIGMA, rho, _SIGMA.conj())


def _measured(rho):
    # state rebuilt from exact <I>, <X>, <Y>, <Z>
    expect = np.einsum("kab,ba->k", _SIGMA, rho)
    return np.einsum("k,kab->ab", expect, _SIGMA) / 2


def standard_qpt(chi_true) -> np.ndarray:
    """chi (Pauli basis) recovered from a simulated standard QPT experiment."""
    chi_true = np.asarray(chi_true, dtype=complex)
    out = {
        name: _measured(_channel(chi_true, np.outer(v, v.conj())))
        for name, v in (("0", _KET0), ("1", _KET1), ("+", _PLUS), ("+i", _PLUS_I))
    }
    r1, r4 = out["0"], out["1"]
    # images of the off-diagonal operators |0><1| and |1><0|
    r2 = out["+"] + 1j * out["+i"] - (1 + 1j) * (r1 + r4) / 2
    r3 = out["+"] - 1j * out["+i"] - (1 - 1j) * (r1 + r4) / 2
    m = np.block([[r1, r2], [r3, r4]])
    chi_tilde = np.linalg.solve(_K.T, np.linalg.solve(_K.conj().T, m.T).T)
    return np.outer(_PHASES, _PHASES.conj()) * chi_tilde
