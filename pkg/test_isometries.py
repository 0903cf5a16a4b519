import math

import numpy as np
import pytest

from chyperbolic.boundary import BoundaryPoint, HeisenbergPoint, chordal_dist, heis_embed, heis_project, to_form
from chyperbolic.errors import NotLoxodromicError, NotUnitaryError
from chyperbolic.hermitian import FormTag
from chyperbolic.isometries import (
    IsometryClass,
    boost,
    cayley_conjugate,
    classify_isometry,
    fixed_boundary_points,
    iterate_on_boundary,
    loxodromic_diagonal,
    normalize_loxodromic,
    random_isometry,
    random_loxodromic,
    translation_length,
)
from chyperbolic.objects.chain import Chain
from chyperbolic.projective import ProjMap, ProjPoint, apply

CONTRACTION = ProjMap(np.diag([0.5, 1, 2]), FormTag.FORM2)
ROTATION = ProjMap(np.diag([1j, 1, 1j]), FormTag.FORM2)
VERTICAL_TRANSLATION = ProjMap([[1, 0, 1j], [0, 1, 0], [0, 0, 1]], FormTag.FORM2)


def test_classify_examples():
    assert classify_isometry(CONTRACTION) is IsometryClass.LOXODROMIC
    assert classify_isometry(ROTATION) is IsometryClass.ELLIPTIC
    assert classify_isometry(VERTICAL_TRANSLATION) is IsometryClass.PARABOLIC
    assert classify_isometry(ProjMap.identity(FormTag.FORM1)) is IsometryClass.ELLIPTIC


def test_classify_random_maps():
    rng = np.random.default_rng(0)
    for _ in range(20):
        g, _ = random_loxodromic(FormTag.FORM2, rng)
        assert classify_isometry(g) is IsometryClass.LOXODROMIC
        assert classify_isometry(cayley_conjugate(g, FormTag.FORM1)) is IsometryClass.LOXODROMIC
    k = random_isometry(FormTag.FORM2, rng)
    assert classify_isometry(ROTATION.conjugated_by(k)) is IsometryClass.ELLIPTIC


def test_classify_rejects_non_unitary_maps():
    with pytest.raises(NotUnitaryError):
        classify_isometry(ProjMap(np.diag([2, 1, 2]), FormTag.FORM2))


def test_fixed_boundary_points_examples():
    attracting, repelling = fixed_boundary_points(CONTRACTION)
    assert attracting == ProjPoint([0, 0, 1])
    assert repelling == ProjPoint([1, 0, 0])
    with pytest.raises(NotLoxodromicError):
        fixed_boundary_points(ROTATION)


def test_fixed_boundary_points_are_equivariant():
    rng = np.random.default_rng(1)
    h = random_isometry(FormTag.FORM2, rng)
    attracting, repelling = fixed_boundary_points(CONTRACTION.conjugated_by(h))
    assert attracting.equals(ProjPoint(h.matrix @ [0, 0, 1]), 1e-9)
    assert repelling.equals(ProjPoint(h.matrix @ [1, 0, 0]), 1e-9)


def test_fixed_boundary_points_in_the_ball_model():
    ball = cayley_conjugate(CONTRACTION, FormTag.FORM1)
    attracting, repelling = fixed_boundary_points(ball)
    assert attracting.form is FormTag.FORM1
    assert attracting == to_form(BoundaryPoint([0, 0, 1], FormTag.FORM2), FormTag.FORM1)
    assert repelling == to_form(BoundaryPoint([1, 0, 0], FormTag.FORM2), FormTag.FORM1)


def test_normalize_diagonal_examples():
    data = normalize_loxodromic(CONTRACTION)
    assert abs(data.multiplier - 0.25) < 1e-12
    assert data.conjugator.equals(ProjMap.identity(), 1e-12)
    image = heis_project(apply(data.chart_action, heis_embed(HeisenbergPoint(1 + 1j, 2))))
    assert image.equals(HeisenbergPoint(0.5 + 0.5j, 0.5), 1e-12)
    assert abs(data.translation_length - math.log(4)) < 1e-12

    third = normalize_loxodromic(ProjMap(np.diag([1 / 3, 1, 3]), FormTag.FORM2))
    assert abs(third.multiplier - 1 / 9) < 1e-12


def test_normalize_is_conjugation_invariant():
    rng = np.random.default_rng(2)
    for _ in range(20):
        s = 0.6 * np.exp(1j * rng.uniform(-np.pi, np.pi))
        g = loxodromic_diagonal(s)
        k = random_isometry(FormTag.FORM2, rng)
        expected = normalize_loxodromic(g).multiplier
        assert abs(normalize_loxodromic(g.conjugated_by(k)).multiplier - expected) < 1e-10


def test_normal_form_acts_as_complex_dilation():
    rng = np.random.default_rng(3)
    for _ in range(10):
        g, _ = random_loxodromic(FormTag.FORM2, rng)
        data = normalize_loxodromic(g)
        normal = data.conjugator @ g @ data.conjugator.inverse()
        assert normal.equals(data.chart_action, 1e-8)
        assert data.attracting.mapped(data.conjugator.matrix) == ProjPoint([0, 0, 1])
        assert abs(data.translation_length - translation_length(g)) < 1e-8


def test_normalize_in_the_ball_model():
    rng = np.random.default_rng(4)
    g, _ = random_loxodromic(FormTag.FORM1, rng)
    assert g.form is FormTag.FORM1
    data = normalize_loxodromic(g)
    assert abs(data.multiplier - normalize_loxodromic(cayley_conjugate(g, FormTag.FORM2)).multiplier) < 1e-9


def test_translation_length():
    assert translation_length(ROTATION) == 0.0
    assert translation_length(VERTICAL_TRANSLATION) == pytest.approx(0.0, abs=1e-6)
    assert translation_length(CONTRACTION) == pytest.approx(2 * math.log(2))
    assert translation_length(ProjMap(boost(1.5), FormTag.FORM1)) == pytest.approx(3.0)


def test_iterate_on_boundary_examples():
    x = heis_embed(HeisenbergPoint(0.3, -1))
    assert all(p == x for p in iterate_on_boundary(ProjMap.identity(FormTag.FORM2), x, 5))
    assert len(iterate_on_boundary(ProjMap.identity(FormTag.FORM2), x, 5)) == 5

    vertical = Chain([0, 1, 0], FormTag.FORM2)
    on_chain = BoundaryPoint([1j, 0, 1], FormTag.FORM2)
    assert all(vertical.contains(p) for p in iterate_on_boundary(ROTATION, on_chain, 10))


def test_iterates_converge_to_the_attracting_point():
    attracting, _ = fixed_boundary_points(CONTRACTION)
    x = heis_embed(HeisenbergPoint(1 - 2j, 3))
    distances = [chordal_dist(p, attracting) for p in iterate_on_boundary(CONTRACTION, x, 40)]
    assert distances[-1] < 1e-8
    assert all(b <= a for a, b in zip(distances[5:], distances[6:]))


def test_random_isometries_are_unitary():
    rng = np.random.default_rng(5)
    for form in (FormTag.FORM1, FormTag.FORM2):
        for _ in range(10):
            g = random_isometry(form, rng, max_boost=2.0)
            assert g.form is form
            assert g.is_unitary(form, 1e-9)
            assert abs(np.linalg.det(g.matrix) - 1) < 1e-9


def test_cayley_conjugate_round_trip():
    g = random_isometry(FormTag.FORM2, np.random.default_rng(6))
    there = cayley_conjugate(g, FormTag.FORM1)
    assert there.is_unitary(FormTag.FORM1, 1e-9)
    assert cayley_conjugate(there, FormTag.FORM2).equals(g, 1e-12)
    assert cayley_conjugate(g, FormTag.FORM2) is g
