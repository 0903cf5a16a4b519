"""
The boundary 3-sphere in the ball (FORM1) and Siegel (FORM2) models, the Heisenberg chart
(zeta, v) -> [-|zeta|^2 + iv : sqrt(2) zeta : 1] of the Siegel boundary, and the chordal metric.
"""
import numpy as np
from typing_extensions import Self

from chyperbolic.errors import FormMismatchError, NotNullError
from chyperbolic.hermitian import (
    KERNEL_TOL,
    Direction,
    FormTag,
    SignClass,
    cayley_apply,
    dual,
    sign_class,
)
from chyperbolic.objects.node import Node
from chyperbolic.projective import ProjLine, ProjMap, ProjPoint

SQRT2 = np.sqrt(2.0)

# ball-affine chordal distance to [1:0:0] below which a Siegel point is read as infinity
INFINITY_RADIUS = 1e-8


def eta(z1, z2):
    """Symplectic pairing of the Heisenberg group, normalized to the chart."""
    return 2.0 * np.imag(z1 * np.conj(z2))


class HeisenbergPoint(Node):
    def __init__(self, zeta=0j, v=0.0, infinite=False):
        super().__init__()
        self.infinite = bool(infinite)
        self.zeta = complex(zeta) if not self.infinite else None
        self.v = float(v) if not self.infinite else None

    @classmethod
    def infinity(cls):
        return cls(infinite=True)

    def multiply(self, other) -> Self:
        """(z1, v1) . (z2, v2) = (z1 + z2, v1 + v2 + eta(z1, z2))"""
        if self.infinite or other.infinite:
            raise ValueError('the Heisenberg product is defined on finite points only')
        return HeisenbergPoint(self.zeta + other.zeta, self.v + other.v + eta(self.zeta, other.zeta))

    def __mul__(self, other):
        return self.multiply(other)

    def inverse(self) -> Self:
        if self.infinite:
            raise ValueError('infinity has no inverse')
        return HeisenbergPoint(-self.zeta, -self.v)

    def distance(self, other) -> float:
        if self.infinite or other.infinite:
            return 0.0 if self.infinite == other.infinite else float('inf')
        return float(np.hypot(abs(self.zeta - other.zeta), self.v - other.v))

    def equals(self, other, tol=KERNEL_TOL) -> bool:
        return self.distance(other) <= tol

    def __eq__(self, other):
        if not isinstance(other, HeisenbergPoint):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def as_row(self):
        if self.infinite:
            return ['inf', '', '']
        return [repr(self.zeta.real), repr(self.zeta.imag), repr(self.v)]

    def __str__(self):
        if self.infinite:
            return 'inf'
        return f'({self.zeta:.6g}, {self.v:.6g})'

    def __repr__(self):
        return f'HeisenbergPoint{self}' if not self.infinite else 'HeisenbergPoint(inf)'


def heis_multiply(a: HeisenbergPoint, b: HeisenbergPoint) -> HeisenbergPoint:
    return a.multiply(b)


def heis_inverse(a: HeisenbergPoint) -> HeisenbergPoint:
    return a.inverse()


class BoundaryPoint(ProjPoint):
    def __init__(self, vector, form, tol=KERNEL_TOL, check=True):
        super().__init__(vector)
        self.form = FormTag.parse(form)
        if check and sign_class(self.form, self.vector, tol) is not SignClass.NULL:
            raise NotNullError(f'{self} under {self.form.value}')

    def mapped(self, matrix) -> Self:
        return BoundaryPoint(np.asarray(matrix) @ self.vector, self.form, check=False)

    def to_form(self, form) -> Self:
        return to_form(self, form)

    def __repr__(self):
        return f'BoundaryPoint({self}, {self.form.value})'


def to_form(point, form):
    form = FormTag.parse(form)
    if point.form is form:
        return point
    direction = Direction.BALL_TO_SIEGEL if form is FormTag.FORM2 else Direction.SIEGEL_TO_BALL
    return BoundaryPoint(cayley_apply(point.vector, direction), form, check=False)


def vectors_to_form(vectors, source, target):
    source = FormTag.parse(source)
    target = FormTag.parse(target)
    if source is target:
        return np.asarray(vectors, dtype=complex)
    return cayley_apply(vectors)


def heis_embed(h: HeisenbergPoint) -> BoundaryPoint:
    if h.infinite:
        return BoundaryPoint([1, 0, 0], FormTag.FORM2, check=False)
    return BoundaryPoint(heis_lift(h.zeta, h.v), FormTag.FORM2, check=False)


def heis_lift(zeta, v):
    """Unnormalized chart lift with third coordinate 1; vectorized over zeta and v."""
    zeta = np.asarray(zeta, dtype=complex)
    v = np.asarray(v, dtype=float)
    return np.stack([-np.abs(zeta) ** 2 + 1j * v, SQRT2 * zeta, np.ones_like(zeta)], axis=-1)


def heis_project(b, tol=KERNEL_TOL) -> HeisenbergPoint:
    if b.form is not FormTag.FORM2:
        b = to_form(b, FormTag.FORM2)
    if sign_class(FormTag.FORM2, b.vector, tol) is not SignClass.NULL:
        raise NotNullError(f'{b} is not on the boundary')
    if is_near_infinity(b.vector):
        return HeisenbergPoint.infinity()
    z = b.vector / b.vector[2]
    return HeisenbergPoint(z[1] / SQRT2, z[0].imag)


def heis_coordinates(vectors):
    """Batch chart coordinates (zeta, v) of FORM2 vectors; infinite points give nan."""
    vectors = np.asarray(vectors, dtype=complex)
    out_zeta = np.full(vectors.shape[:-1], np.nan, dtype=complex)
    out_v = np.full(vectors.shape[:-1], np.nan)
    finite = ~is_near_infinity(vectors)
    z = vectors[finite] / vectors[finite][..., 2:3]
    out_zeta[finite] = z[..., 1] / SQRT2
    out_v[finite] = z[..., 0].imag
    return out_zeta, out_v


def is_near_infinity(vectors, radius=INFINITY_RADIUS):
    """Whether FORM2 boundary vectors lie within `radius` of [1:0:0] in the ball-affine chart."""
    a = ball_affine(vectors, FormTag.FORM2)
    return np.linalg.norm(a - np.array([1.0, 0.0]), axis=-1) <= radius


def ball_affine(vectors, form):
    """Ball-model affine coordinates (y1/y3, y2/y3) in C^2."""
    y = vectors_to_form(vectors, form, FormTag.FORM1)
    return y[..., :2] / y[..., 2:3]


def ball_real(vectors, form):
    """Ball-affine coordinates as points of R^4."""
    a = ball_affine(vectors, form)
    return np.concatenate([a.real, a.imag], axis=-1)


def radial_project(vectors, form):
    """Push vectors along ball-model rays onto the unit sphere |y1|^2 + |y2|^2 = 1, y3 = 1."""
    a = ball_affine(vectors, form)
    a = a / np.linalg.norm(a, axis=-1, keepdims=True)
    y = np.concatenate([a, np.ones(a.shape[:-1] + (1,), dtype=complex)], axis=-1)
    return vectors_to_form(y, FormTag.FORM1, form)


def chordal_dist(a, b) -> float:
    pa = ball_affine(a.vector, a.form)
    pb = ball_affine(b.vector, b.form)
    return float(np.linalg.norm(pa - pb))


def tangent_complex_line(p: BoundaryPoint, tol=KERNEL_TOL) -> ProjLine:
    """The complex line {z : <z, p> = 0} meeting the boundary only at p."""
    if sign_class(p.form, p.vector, tol) is not SignClass.NULL:
        raise NotNullError(f'{p} under {p.form.value}')
    return ProjLine(dual(p.form, p.vector))


# chart similarities, all FORM2-unitary

def heis_translation(a, s) -> ProjMap:
    """Left translation (zeta, v) -> (a, s) . (zeta, v)."""
    a = complex(a)
    return ProjMap([
        [1, -SQRT2 * np.conj(a), -abs(a) ** 2 + 1j * s],
        [0, 1, SQRT2 * a],
        [0, 0, 1],
    ], FormTag.FORM2)


def heis_dilation(r) -> ProjMap:
    """(zeta, v) -> (r zeta, r^2 v), r > 0."""
    return ProjMap(np.diag([r, 1.0, 1.0 / r]), FormTag.FORM2)


def heis_rotation(phi) -> ProjMap:
    """(zeta, v) -> (e^{i phi} zeta, v)."""
    return ProjMap(np.diag([1.0, np.exp(1j * phi), 1.0]), FormTag.FORM2)


def heis_complex_dilation(mu) -> ProjMap:
    """(zeta, v) -> (mu zeta, |mu|^2 v)."""
    mu = complex(mu)
    r = abs(mu)
    return ProjMap(np.diag([r, mu / r, 1.0 / r]), FormTag.FORM2)


def check_forms(*points):
    forms = {p.form for p in points}
    if len(forms) > 1:
        raise FormMismatchError(' vs '.join(sorted(f.value for f in forms)))
    return points[0].form
