import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dcqd.errors import DegenerateInput
from dcqd.qobj import (
    BELL_PROJECTORS,
    OPTIMAL_PARAMS,
    InputParams,
    bell_projector,
    bell_state,
    concurrence,
    dcqd_input,
    dcqd_inputs,
    is_density_matrix,
    is_ppt,
    pauli,
    pauli2,
)

valid_params = st.builds(
    InputParams,
    st.floats(0.05, np.pi / 4 - 0.05) | st.floats(np.pi / 4 + 0.05, np.pi / 2 - 0.05),
    st.floats(0.05, np.pi - 0.05),
)


def test_pauli_algebra():
    assert np.array_equal(pauli(0), np.eye(2))
    assert np.allclose(pauli(1) @ pauli(1), np.eye(2))
    assert np.allclose(pauli(1) @ pauli(2), 1j * pauli(3))
    for i in range(4):
        s = pauli(i)
        assert np.allclose(s, s.conj().T)
        assert np.allclose(s @ s.conj().T, np.eye(2))


@pytest.mark.parametrize("bad", [-1, 4, 1.5])
def test_pauli_index_checked(bad):
    with pytest.raises(ValueError):
        pauli(bad)


def test_pauli2_ordering():
    # A is the left factor
    assert np.allclose(pauli2(3, 0), np.diag([1, 1, -1, -1]))


def test_pauli_copy_is_independent():
    s = pauli(1)
    s[0, 0] = 7
    assert pauli(1)[0, 0] == 0


def test_bell_states_ordering():
    r = 1 / np.sqrt(2)
    assert np.allclose(bell_state(0), [r, 0, 0, r])
    assert np.allclose(bell_state(1), [0, r, r, 0])
    assert np.allclose(bell_state(2), [0, r, -r, 0])
    assert np.allclose(bell_state(3), [r, 0, 0, -r])


def test_bell_projectors():
    p00 = bell_projector(0, 0)
    assert np.trace(p00) == pytest.approx(1)
    assert np.allclose(p00 @ p00, p00)
    assert np.allclose(sum(bell_projector(k, k) for k in range(4)), np.eye(4))
    p03 = bell_projector(0, 3)
    assert abs(np.trace(p03)) < 1e-15
    assert np.linalg.matrix_rank(p03) == 1
    gram = np.einsum("kab,lba->kl", BELL_PROJECTORS, BELL_PROJECTORS)
    assert np.allclose(gram, np.eye(4))


def test_input_zero_ignores_params():
    assert np.allclose(dcqd_input(0), bell_projector(0, 0))
    assert np.allclose(dcqd_input(0, InputParams(np.pi / 4, 0.0)), bell_projector(0, 0))


@pytest.mark.parametrize(
    "theta, phi",
    [(np.pi / 4, np.pi / 2), (0.0, np.pi / 2), (np.pi / 2, np.pi / 2), (np.pi / 8, 0.0), (np.pi / 8, np.pi)],
)
def test_degenerate_inputs_rejected(theta, phi):
    with pytest.raises(DegenerateInput):
        dcqd_input(1, InputParams(theta, phi))


def test_degeneracy_tolerance():
    with pytest.raises(DegenerateInput):
        dcqd_input(1, InputParams(np.pi / 8, 5e-7))
    dcqd_input(1, InputParams(np.pi / 8, 1e-4))


def test_optimal_input_bell_overlaps():
    rho = dcqd_input(1, OPTIMAL_PARAMS)
    probs = np.einsum("kab,ba->k", BELL_PROJECTORS, rho).real
    assert np.allclose(probs, [0.5, 0, 0, 0.5], atol=1e-12)


def test_input_bases():
    # x-basis input is invariant under X x X, y-basis input under Y x Y
    p = InputParams(0.3, 1.1)
    xx, yy = pauli2(1, 1), pauli2(2, 2)
    for i, op in ((2, xx), (3, yy)):
        rho = dcqd_input(i, p)
        assert np.allclose(op @ rho @ op, rho)
    r3 = dcqd_input(3, p)
    assert not np.allclose(r3, dcqd_input(1, p))


def test_y_basis_convention():
    # |+>_y labelled (|0> - i|1>)/sqrt2, so theta -> 0 gives |+y +y>
    v = np.array([1, -1j]) / np.sqrt(2)
    target = np.kron(v, v)
    rho = dcqd_input(3, InputParams(1e-3, np.pi / 2))
    assert np.vdot(target, rho @ target).real == pytest.approx(1, abs=1e-5)


@settings(max_examples=40, deadline=None)
@given(valid_params)
def test_inputs_are_pure_states(p):
    for rho in dcqd_inputs(p):
        assert is_density_matrix(rho)
        assert np.trace(rho @ rho).real == pytest.approx(1, abs=1e-10)


@settings(max_examples=40, deadline=None)
@given(valid_params)
def test_concurrence_same_for_all_bases(p):
    c = [concurrence(dcqd_input(i, p)) for i in (1, 2, 3)]
    assert max(c) - min(c) <= 1e-10
    assert c[0] == pytest.approx(abs(np.sin(2 * p.theta)), abs=1e-10)


def test_concurrence_values():
    assert concurrence(bell_projector(0, 0)) == pytest.approx(1, abs=1e-12)
    assert concurrence(np.diag([1.0, 0, 0, 0])) == 0
    assert concurrence(dcqd_input(1, OPTIMAL_PARAMS)) == pytest.approx(1 / np.sqrt(2), abs=1e-12)
    assert concurrence(dcqd_input(1, InputParams(0.3, 1.1))) == pytest.approx(0.5646424733950349, abs=1e-12)


@pytest.mark.parametrize("p", [0.2, 1 / 3, 0.5, 0.9])
def test_concurrence_werner(p):
    rho = p * bell_projector(0, 0) + (1 - p) * np.eye(4) / 4
    assert concurrence(rho) == pytest.approx(max(0.0, (3 * p - 1) / 2), abs=1e-12)
    assert is_ppt(rho) == (p <= 1 / 3 + 1e-12)


def test_is_density_matrix_rejects():
    assert not is_density_matrix(np.eye(4))
    assert not is_density_matrix(np.diag([1.5, -0.5, 0, 0]))
    assert not is_density_matrix(np.eye(2) / 2)


def test_input_params_amplitudes():
    p = InputParams(0.3, 1.1)
    assert p.alpha == pytest.approx(np.cos(0.3))
    assert p.beta == pytest.approx(np.exp(1.1j) * np.sin(0.3))
    with pytest.raises(Exception):
        p.theta = 1.0
