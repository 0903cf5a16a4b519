import numpy as np
import scipy.linalg
from scipy.spatial.distance import pdist
from typing_extensions import Self

from chyperbolic.boundary import BoundaryPoint, ball_real, check_forms, vectors_to_form
from chyperbolic.errors import CoincidentPointsError, FormMismatchError, InvalidChainError
from chyperbolic.hermitian import KERNEL_TOL, FormTag, SignClass, boxtimes, dual, herm_inner, sign_class
from chyperbolic.objects.node import Node
from chyperbolic.projective import ProjPoint, projective_residual


class Chain(Node):
    """
    A chain, stored by its polar point.

    A positive polar point p stands for the circle {x null : <x, p> = 0}; a null point stands for
    the degenerate chain reduced to that boundary point.
    """

    def __init__(self, point, form, degenerate=False, tol=KERNEL_TOL):
        super().__init__()
        self.form = FormTag.parse(form)
        self.degenerate = bool(degenerate)
        vector = point.vector if isinstance(point, ProjPoint) else point
        sign = sign_class(self.form, vector, tol)
        if self.degenerate:
            if sign is not SignClass.NULL:
                raise InvalidChainError(f'degenerate chain at a {sign.name} point')
            self.point = BoundaryPoint(vector, self.form, check=False)
        else:
            if sign is not SignClass.POSITIVE:
                raise InvalidChainError(f'{sign.name.lower()} polar point of a non-degenerate chain')
            self.point = ProjPoint(vector)

    @classmethod
    def at(cls, b: BoundaryPoint) -> Self:
        return cls(b, b.form, degenerate=True)

    @property
    def polar(self):
        return self.point

    def transformed(self, g) -> Self:
        if g.form is not None and g.form is not self.form:
            raise FormMismatchError(f'{g.form.value} map on a {self.form.value} chain')
        # det-1 lifts send polar points to polar points
        return Chain(g.matrix @ self.point.vector, self.form, self.degenerate)

    def contains(self, x, tol=KERNEL_TOL) -> bool:
        return chain_contains(self, x, tol)

    def points(self, samples=256):
        return chain_points(self, samples)

    def diameter(self, samples=256) -> float:
        return chain_diameter(self, samples)

    def equals(self, other, tol=KERNEL_TOL) -> bool:
        return (self.form is other.form and self.degenerate == other.degenerate
                and self.point.distance(other.point) <= tol)

    def __eq__(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def __str__(self):
        if self.degenerate:
            return f'Degenerate({self.point})'
        return f'Polar({self.point})'

    def __repr__(self):
        return f'Chain({self}, {self.form.value})'


def chain_through(p: BoundaryPoint, q: BoundaryPoint, tol=KERNEL_TOL) -> Chain:
    form = check_forms(p, q)
    x = boxtimes(form, p.vector, q.vector)
    if np.linalg.norm(x) <= tol:
        raise CoincidentPointsError(f'{p} and {q}')
    return Chain(x, form)


def chain_contains(c: Chain, x, tol=KERNEL_TOL) -> bool:
    if getattr(x, 'form', c.form) is not c.form:
        raise FormMismatchError(f'{x.form.value} point against a {c.form.value} chain')
    vector = x.vector if isinstance(x, ProjPoint) else np.asarray(x, dtype=complex)
    if c.degenerate:
        return projective_residual(vector, c.point.vector) <= tol
    pairing = abs(herm_inner(c.form, vector, c.point.vector))
    return pairing <= tol * np.linalg.norm(vector) * np.linalg.norm(c.point.vector)


def chain_vectors(c: Chain, samples=256):
    """Representatives, shape (samples, 3) in the chain's form, swept at uniform phase."""
    if c.degenerate:
        return np.array([c.point.vector])
    polar = vectors_to_form(c.point.vector, c.form, FormTag.FORM1)
    # orthonormal basis of the polar complement {x : <x, p>_1 = 0}
    basis = scipy.linalg.null_space(dual(FormTag.FORM1, polar)[None, :])
    restricted = basis.conj().T @ FormTag.FORM1.matrix @ basis
    values, vectors = np.linalg.eigh(restricted)
    if not values[0] < 0.0 < values[1]:
        raise InvalidChainError(f'polar complement has signature {np.sign(values)}')
    e_minus = basis @ vectors[:, 0] / np.sqrt(-values[0])
    e_plus = basis @ vectors[:, 1] / np.sqrt(values[1])
    # the sweep starts where |x3| is largest, so U(2) x U(1) maps samples to samples
    if abs(e_plus[2]) > 1e-12:
        ratio = e_minus[2] / e_plus[2]
        e_plus = e_plus * ratio / abs(ratio)
    phases = np.exp(2j * np.pi * np.arange(samples) / samples)
    points = e_minus[None, :] + phases[:, None] * e_plus[None, :]
    return vectors_to_form(points, FormTag.FORM1, c.form)


def chain_points(c: Chain, samples=256):
    return [BoundaryPoint(v, c.form, check=False) for v in chain_vectors(c, samples)]


def chain_diameter(c: Chain, samples=256) -> float:
    if c.degenerate:
        return 0.0
    coordinates = ball_real(chain_vectors(c, samples), c.form)
    return float(np.max(pdist(coordinates)))
