"""
R-circles: the PU(2,1)-images of the canonical R-circle, which is the horizontal line (t, 0) in
Heisenberg coordinates and the real circle (cos s, sin s, 1) in the ball.
"""
import numpy as np
from typing_extensions import Self

from chyperbolic.boundary import (
    BoundaryPoint,
    HeisenbergPoint,
    heis_dilation,
    heis_embed,
    heis_project,
    heis_rotation,
    heis_translation,
    vectors_to_form,
)
from chyperbolic.errors import DomainError, FormMismatchError
from chyperbolic.hermitian import CAYLEY, FormTag
from chyperbolic.objects.node import Node
from chyperbolic.projective import ProjMap, canonical

# carries the canonical R-circle onto the standard finite one, diag(1, 1, -i) in the ball
STANDARD_FINITE = ProjMap(CAYLEY @ np.diag([1.0, 1.0, -1j]) @ CAYLEY, FormTag.FORM2)

DOMAIN_SLACK = 1e-12


class RCircle(Node):
    INFINITE = 'infinite'
    FINITE = 'finite'

    def __init__(self, kind, base=None, theta=0.0, matrix=None):
        super().__init__()
        if kind not in (self.INFINITE, self.FINITE):
            raise ValueError(f'unknown R-circle kind `{kind}`')
        self.kind = kind
        if kind == self.INFINITE:
            self.base = base if base is not None else HeisenbergPoint(0j, 0.0)
            if self.base.infinite:
                raise ValueError('an infinite R-circle needs a finite base point')
            self.theta = float(theta)
            self.matrix = None
        else:
            self.base = None
            self.theta = None
            if matrix is None:
                matrix = ProjMap.identity(FormTag.FORM2)
            elif not isinstance(matrix, ProjMap):
                matrix = ProjMap(matrix, FormTag.FORM2)
            if matrix.form not in (None, FormTag.FORM2):
                raise FormMismatchError('R-circle carriers act on the Siegel model')
            self.matrix = matrix

    @classmethod
    def infinite(cls, base=None, theta=0.0) -> Self:
        return cls(cls.INFINITE, base=base, theta=theta)

    @classmethod
    def standard(cls) -> Self:
        return cls(cls.FINITE)

    @classmethod
    def finite(cls, center=(0j, 0.0), radius=1.0, rotation=0.0) -> Self:
        """Standard finite R-circle dilated by `radius`, rotated, then translated to `center`."""
        a, s = center
        g = heis_translation(a, s) @ heis_dilation(radius) @ heis_rotation(rotation)
        return cls(cls.FINITE, matrix=g)

    @property
    def carrier(self) -> ProjMap:
        """FORM2 map sending the canonical R-circle onto this one."""
        if self.kind == self.INFINITE:
            return heis_translation(self.base.zeta, self.base.v) @ heis_rotation(self.theta)
        return self.matrix @ STANDARD_FINITE

    def transformed(self, g) -> Self:
        if g.form is not None and g.form is not FormTag.FORM2:
            raise FormMismatchError('R-circles are transformed by Siegel-model maps')
        return RCircle(self.FINITE, matrix=g @ self.carrier @ STANDARD_FINITE.inverse())

    def vectors(self, samples=256):
        """FORM2 representatives swept uniformly along the circle."""
        s = 2 * np.pi * np.arange(samples) / samples
        real = np.stack([np.cos(s), np.sin(s), np.ones_like(s)], axis=-1).astype(complex)
        canonical_lifts = vectors_to_form(real, FormTag.FORM1, FormTag.FORM2)
        return canonical_lifts @ self.carrier.matrix.T

    def residual(self, x) -> float:
        """Distance of [x] from the real locus after pulling back to the canonical R-circle."""
        vector = x.vector if hasattr(x, 'vector') else x
        y = CAYLEY @ (self.carrier.inverse().matrix @ np.asarray(vector, dtype=complex))
        return float(np.linalg.norm(canonical(y).imag))

    def contains(self, x, tol=1e-9) -> bool:
        return self.residual(x) <= tol

    def equals(self, other, tol=1e-8) -> bool:
        return all(self.contains(v, tol) for v in other.vectors(16)) and \
            all(other.contains(v, tol) for v in self.vectors(16))

    def __str__(self):
        if self.kind == self.INFINITE:
            return f'RCircle(base={self.base}, theta={self.theta:.6g})'
        return f'RCircle(matrix={self.matrix})'

    __repr__ = __str__


def in_finite_domain(theta) -> bool:
    """theta in [-pi/4, pi/4] or [3pi/4, 5pi/4]; the endpoints are limit points."""
    q = np.pi / 4
    return (-q - DOMAIN_SLACK <= theta <= q + DOMAIN_SLACK) or \
        (3 * q - DOMAIN_SLACK <= theta <= 5 * q + DOMAIN_SLACK)


def standard_finite_point(theta) -> HeisenbergPoint:
    c = max(np.cos(2 * theta), 0.0)
    return HeisenbergPoint(1j * np.sqrt(c) * np.exp(1j * theta), -np.sin(2 * theta))


def rcircle_point(spec: RCircle, t) -> HeisenbergPoint:
    if spec.kind == RCircle.INFINITE:
        return spec.base.multiply(HeisenbergPoint(t * np.exp(1j * spec.theta), 0.0))

    if not in_finite_domain(t):
        raise DomainError(f'theta = {t} outside [-pi/4, pi/4] u [3pi/4, 5pi/4]')
    point = standard_finite_point(t)
    if spec.matrix.equals(ProjMap.identity()):
        return point
    image = BoundaryPoint(spec.matrix.matrix @ heis_embed(point).vector, FormTag.FORM2, check=False)
    return heis_project(image, tol=1e-8)


def rcircle_points(spec: RCircle, samples=256):
    return [BoundaryPoint(v, FormTag.FORM2, check=False) for v in spec.vectors(samples)]
