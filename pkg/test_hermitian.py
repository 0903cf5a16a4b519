import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from chyperbolic.errors import SingularMatrixError, ZeroVectorError
from chyperbolic.hermitian import (
    CAYLEY,
    Direction,
    FormTag,
    SignClass,
    boxtimes,
    cayley_apply,
    det_normalize,
    herm_inner,
    herm_norm2,
    is_form_unitary,
    sign_class,
)
from chyperbolic.isometries import random_isometry

complex_entry = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)
vectors = st.lists(complex_entry, min_size=3, max_size=3).map(lambda z: np.array(z, dtype=complex))
forms = st.sampled_from([FormTag.FORM1, FormTag.FORM2])


def test_herm_inner_examples():
    assert herm_inner(FormTag.FORM1, [0, 0, 1], [0, 0, 1]) == -1
    assert herm_inner(FormTag.FORM2, [1, 0, 0], [1, 0, 0]) == 0
    assert herm_inner(FormTag.FORM2, [0, 0, 1], [1j, 0, 1]) == -1j


def test_herm_inner_batches():
    z = np.array([[0, 0, 1], [1, 0, 0]], dtype=complex)
    assert np.allclose(herm_inner(FormTag.FORM1, z, z), [-1, 1])


def test_sign_class_examples():
    assert sign_class(FormTag.FORM1, [0, 0, 1], 1e-12) is SignClass.NEGATIVE
    assert sign_class(FormTag.FORM1, [1, 0, 0], 1e-12) is SignClass.POSITIVE
    assert sign_class(FormTag.FORM2, [-1, np.sqrt(2), 1], 1e-12) is SignClass.NULL


def test_sign_class_of_zero_vector():
    with pytest.raises(ZeroVectorError):
        sign_class(FormTag.FORM1, [0, 0, 0])


def test_boxtimes_examples():
    assert np.allclose(boxtimes(FormTag.FORM1, [1, 0, 0], [0, 1, 0]), [0, 0, 1])
    z = np.array([1 + 2j, -1j, 0.5])
    assert np.allclose(boxtimes(FormTag.FORM1, z, z), 0)

    x = boxtimes(FormTag.FORM2, [1j, 0, 1], [1j, 0, 0])
    assert abs(x[0]) < 1e-15 and abs(x[2]) < 1e-15 and abs(x[1]) > 0.5


@settings(max_examples=200)
@given(forms, vectors, vectors)
def test_boxtimes_orthogonal_and_lagrange(form, z, w):
    scale = np.linalg.norm(z) * np.linalg.norm(w)
    assume(scale > 1e-3)
    x = boxtimes(form, z, w)
    assert abs(herm_inner(form, x, z)) <= 1e-9 * scale * np.linalg.norm(z)
    assert abs(herm_inner(form, x, w)) <= 1e-9 * scale * np.linalg.norm(w)
    # <x, x> = |<z, w>|^2 - <z, z><w, w>
    expected = abs(herm_inner(form, z, w)) ** 2 - herm_norm2(form, z) * herm_norm2(form, w)
    assert abs(herm_norm2(form, x) - expected) <= 1e-9 * scale ** 2


def test_boxtimes_equivariance():
    rng = np.random.default_rng(7)
    for form in (FormTag.FORM1, FormTag.FORM2):
        g = random_isometry(form, rng).matrix
        z = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        w = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        assert np.allclose(boxtimes(form, g @ z, g @ w), g @ boxtimes(form, z, w), atol=1e-9)


def test_cayley_examples():
    e1 = np.array([1, 0, 0], dtype=complex)
    assert np.allclose(cayley_apply(e1), np.array([1, 0, 1]) / np.sqrt(2))
    assert abs(herm_inner(FormTag.FORM1, cayley_apply(e1), cayley_apply(e1))) < 1e-15
    assert np.allclose(CAYLEY @ CAYLEY, np.eye(3), atol=1e-15)


@given(vectors, vectors)
def test_cayley_intertwines_forms(z, w):
    scale = max(np.linalg.norm(z) * np.linalg.norm(w), 1.0)
    lhs = herm_inner(FormTag.FORM1, cayley_apply(z), cayley_apply(w))
    assert abs(lhs - herm_inner(FormTag.FORM2, z, w)) <= 1e-12 * scale
    there = cayley_apply(z, Direction.BALL_TO_SIEGEL)
    assert np.allclose(cayley_apply(there, Direction.SIEGEL_TO_BALL), z, atol=1e-12 * max(np.linalg.norm(z), 1))


def test_is_form_unitary_examples():
    assert is_form_unitary(FormTag.FORM2, np.diag([0.5, 1, 2]), 1e-12)
    assert not is_form_unitary(FormTag.FORM2, np.diag([2, 1, 2]), 1e-12)
    assert is_form_unitary(FormTag.FORM1, np.eye(3), 1e-12)


def test_is_form_unitary_rejects_singular_matrices():
    with pytest.raises(SingularMatrixError):
        is_form_unitary(FormTag.FORM1, np.zeros((3, 3)))
    with pytest.raises(ValueError):
        is_form_unitary(FormTag.FORM1, np.eye(2))


def test_det_normalize():
    M = det_normalize(np.diag([2.0, 2.0, 2.0]))
    assert np.allclose(M, np.eye(3))
    assert abs(np.linalg.det(det_normalize(np.diag([1j, 1, 1j]))) - 1) < 1e-12


def test_form_tag_aliases():
    assert FormTag.parse('ball') is FormTag.FORM1
    assert FormTag.parse('SIEGEL') is FormTag.FORM2
    assert FormTag.parse('form2') is FormTag.FORM2
    with pytest.raises(ValueError):
        FormTag.parse('form3')
