import numpy as np
import pytest

from chyperbolic.boundary import (
    BoundaryPoint,
    HeisenbergPoint,
    chordal_dist,
    heis_complex_dilation,
    heis_coordinates,
    heis_dilation,
    heis_embed,
    heis_inverse,
    heis_multiply,
    heis_project,
    heis_rotation,
    heis_translation,
    radial_project,
    tangent_complex_line,
    to_form,
)
from chyperbolic.errors import FormMismatchError, NotNullError
from chyperbolic.hermitian import FormTag, herm_norm2
from chyperbolic.projective import ProjLine, ProjPoint, apply

SQRT2 = np.sqrt(2)


def random_heisenberg(rng):
    return HeisenbergPoint(complex(*rng.uniform(-2, 2, 2)), float(rng.uniform(-2, 2)))


def random_ball_boundary(rng, n):
    x = rng.standard_normal((n, 2)) + 1j * rng.standard_normal((n, 2))
    x /= np.linalg.norm(x, axis=-1, keepdims=True)
    return [BoundaryPoint([a, b, 1], FormTag.FORM1) for a, b in x]


def test_heis_embed_examples():
    assert heis_embed(HeisenbergPoint(0j, 0.0)) == ProjPoint([0, 0, 1])
    assert heis_embed(HeisenbergPoint(1, 0)) == ProjPoint([-1, SQRT2, 1])
    assert heis_embed(HeisenbergPoint.infinity()) == ProjPoint([1, 0, 0])
    assert heis_embed(HeisenbergPoint(1, 0)).form is FormTag.FORM2


def test_heis_project_examples():
    assert heis_project(BoundaryPoint([-1, SQRT2, 1], FormTag.FORM2)) == HeisenbergPoint(1, 0)
    assert heis_project(BoundaryPoint([1, 0, 0], FormTag.FORM2)).infinite
    assert heis_project(BoundaryPoint([2j, 0, 1], FormTag.FORM2)) == HeisenbergPoint(0, 2)


def test_heis_project_inverts_embed():
    rng = np.random.default_rng(0)
    for _ in range(100):
        h = random_heisenberg(rng)
        assert heis_project(heis_embed(h)).equals(h, 1e-12)


def test_heis_project_reads_ball_points():
    h = HeisenbergPoint(0.5 - 1j, 0.25)
    ball = to_form(heis_embed(h), FormTag.FORM1)
    assert ball.form is FormTag.FORM1
    assert heis_project(ball).equals(h, 1e-12)


def test_heis_project_rejects_interior_points():
    with pytest.raises(NotNullError):
        heis_project(BoundaryPoint([1, 0, 1], FormTag.FORM2, check=False))


def test_boundary_point_requires_null_vector():
    with pytest.raises(NotNullError):
        BoundaryPoint([0, 0, 1], FormTag.FORM1)


def test_heisenberg_group_law():
    rng = np.random.default_rng(1)
    for _ in range(50):
        a, b, c = random_heisenberg(rng), random_heisenberg(rng), random_heisenberg(rng)
        assert (a * b * c).equals(a * (b * c), 1e-12)
        assert heis_multiply(a, heis_inverse(a)).equals(HeisenbergPoint(0, 0), 1e-12)


def test_heisenberg_product_is_not_commutative():
    a, b = HeisenbergPoint(1, 0), HeisenbergPoint(1j, 0)
    assert (a * b).v == -2.0
    assert (b * a).v == 2.0


def test_heis_translation_matches_group_law():
    rng = np.random.default_rng(2)
    for _ in range(50):
        a, h = random_heisenberg(rng), random_heisenberg(rng)
        image = heis_project(apply(heis_translation(a.zeta, a.v), heis_embed(h)), 1e-9)
        assert image.equals(a * h, 1e-9)


def test_chart_similarities():
    h = HeisenbergPoint(1 + 1j, 0.5)
    dilated = heis_project(apply(heis_dilation(2.0), heis_embed(h)))
    assert dilated.equals(HeisenbergPoint(2 + 2j, 2.0), 1e-12)
    rotated = heis_project(apply(heis_rotation(np.pi / 2), heis_embed(h)))
    assert rotated.equals(HeisenbergPoint(-1 + 1j, 0.5), 1e-12)
    mu = 0.5 * np.exp(0.3j)
    scaled = heis_project(apply(heis_complex_dilation(mu), heis_embed(h)))
    assert scaled.equals(HeisenbergPoint(mu * h.zeta, 0.25 * h.v), 1e-12)
    for g in (heis_translation(1j, 2), heis_dilation(3), heis_rotation(1), heis_complex_dilation(2j)):
        assert g.is_unitary(FormTag.FORM2, 1e-12)


def test_heis_coordinates_marks_infinity():
    vectors = np.array([[1, 0, 0], [-1, SQRT2, 1]], dtype=complex)
    zeta, v = heis_coordinates(vectors)
    assert np.isnan(v[0])
    assert abs(zeta[1] - 1) < 1e-15 and abs(v[1]) < 1e-15


def test_chordal_dist_examples():
    p = BoundaryPoint([1, 0, 1], FormTag.FORM1)
    q = BoundaryPoint([-1, 0, 1], FormTag.FORM1)
    assert chordal_dist(p, p) == 0.0
    assert abs(chordal_dist(p, q) - 2.0) < 1e-15
    # the same pair in the Siegel model
    assert abs(chordal_dist(to_form(p, FormTag.FORM2), q) - 2.0) < 1e-12


def test_chordal_dist_triangle_inequality():
    rng = np.random.default_rng(3)
    points = random_ball_boundary(rng, 3000)
    for a, b, c in zip(points[0::3], points[1::3], points[2::3]):
        assert chordal_dist(a, c) <= chordal_dist(a, b) + chordal_dist(b, c) + 1e-12


def test_tangent_complex_line_examples():
    assert tangent_complex_line(BoundaryPoint([1, 0, 0], FormTag.FORM2)) == ProjLine([0, 0, 1])
    assert tangent_complex_line(BoundaryPoint([0, 0, 1], FormTag.FORM2)) == ProjLine([1, 0, 0])
    assert tangent_complex_line(BoundaryPoint([1, 0, 1], FormTag.FORM1)) == ProjLine([1, 0, -1])


def test_tangent_complex_line_touches_boundary_once():
    p = heis_embed(HeisenbergPoint(0.3 + 0.1j, -0.7))
    line = tangent_complex_line(p)
    assert line.contains(p)
    rng = np.random.default_rng(4)
    for _ in range(20):
        q = heis_embed(random_heisenberg(rng))
        assert not line.contains(q, 1e-6)


def test_to_form_round_trip_preserves_null():
    rng = np.random.default_rng(5)
    for p in random_ball_boundary(rng, 20):
        siegel = to_form(p, FormTag.FORM2)
        assert abs(herm_norm2(FormTag.FORM2, siegel.vector)) < 1e-12
        assert to_form(siegel, FormTag.FORM1) == p


def test_radial_project_lands_on_the_sphere():
    rng = np.random.default_rng(6)
    interior = np.concatenate([0.5 * rng.standard_normal((10, 2)), np.ones((10, 1))], axis=-1).astype(complex)
    projected = radial_project(interior, FormTag.FORM1)
    assert np.allclose(herm_norm2(FormTag.FORM1, projected), 0, atol=1e-12)


def test_apply_refuses_mixed_forms():
    with pytest.raises(FormMismatchError):
        apply(heis_dilation(2), BoundaryPoint([1, 0, 1], FormTag.FORM1))
