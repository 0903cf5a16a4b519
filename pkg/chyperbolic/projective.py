from typing import Optional

import numpy as np
from typing_extensions import Self

from chyperbolic.errors import CoincidentPointsError, FormMismatchError, ZeroVectorError
from chyperbolic.objects.node import Node
from chyperbolic.hermitian import (
    KERNEL_TOL,
    FormTag,
    boxtimes,
    det_normalize,
    dual,
    form_unitary_residual,
)

# a component counts as significant above this fraction of the vector norm
SIGNIFICANCE = 1e-8


def canonical(vector):
    """
    Canonical representative of [vector]: unit Euclidean norm, first significant component
    real and positive. Applying it to its own output returns the same bits.
    """
    v = np.array(vector, dtype=complex).reshape(3)
    norm = np.linalg.norm(v)
    if norm == 0.0 or not np.isfinite(norm):
        raise ZeroVectorError(f'cannot normalize {vector}')
    pivot = int(np.argmax(np.abs(v) > SIGNIFICANCE * norm))
    c = v[pivot]
    phase = c / abs(c)
    if phase != 1.0:
        v = v * np.conj(phase)
    v[pivot] = abs(v[pivot])
    norm = np.linalg.norm(v)
    if abs(norm - 1.0) > 1e-14:
        v = v / norm
    v.flags.writeable = False
    return v


def projective_residual(a, b):
    """|a - <a, b> b| for unit representatives; zero iff [a] = [b]."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    a = a / np.linalg.norm(a)
    b = b / np.linalg.norm(b)
    return float(np.linalg.norm(a - np.vdot(b, a) * b))


def projective_residuals(a, b):
    """Row-wise projective_residual over broadcast batches of vectors, shape (..., 3)."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    a = a / np.linalg.norm(a, axis=-1, keepdims=True)
    b = b / np.linalg.norm(b, axis=-1, keepdims=True)
    pairing = np.sum(np.conj(b) * a, axis=-1, keepdims=True)
    return np.linalg.norm(a - pairing * b, axis=-1)


class ProjPoint(Node):
    def __init__(self, vector):
        super().__init__()
        self.vector = canonical(vector)

    def mapped(self, matrix) -> Self:
        return ProjPoint(np.asarray(matrix) @ self.vector)

    def distance(self, other) -> float:
        return projective_residual(self.vector, _vector_of(other))

    def equals(self, other, tol=KERNEL_TOL) -> bool:
        return self.distance(other) <= tol

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return self.equals(other)

    __hash__ = None

    def __iter__(self):
        return iter(self.vector)

    def __getitem__(self, item):
        return self.vector[item]

    def __str__(self):
        return '[' + ':'.join(_fmt(z) for z in self.vector) + ']'

    def __repr__(self):
        return f'{self.__class__.__name__}({self})'


class ProjLine(Node):
    """The line {x : A x1 + B x2 + C x3 = 0}."""

    def __init__(self, coefficients):
        super().__init__()
        self.coefficients = canonical(coefficients)

    def contains(self, p, tol=KERNEL_TOL) -> bool:
        return self.incidence(p) <= tol

    def incidence(self, p) -> float:
        x = np.asarray(_vector_of(p), dtype=complex)
        return float(abs(self.coefficients @ x) / np.linalg.norm(x))

    def mapped(self, matrix) -> Self:
        # x -> M x sends the functional L to L M^-1
        return ProjLine(np.linalg.solve(np.asarray(matrix).T, self.coefficients))

    def distance(self, other) -> float:
        return projective_residual(self.coefficients, other.coefficients)

    def __eq__(self, other):
        if not isinstance(other, ProjLine):
            return NotImplemented
        return self.distance(other) <= KERNEL_TOL

    __hash__ = None

    def __str__(self):
        terms = [f'({_fmt(c)})z{i + 1}' for i, c in enumerate(self.coefficients) if abs(c) > SIGNIFICANCE]
        return ' + '.join(terms) + ' = 0'

    def __repr__(self):
        return f'ProjLine({self})'


class ProjMap(Node):
    def __init__(self, matrix, form: Optional[FormTag] = None):
        super().__init__()
        matrix = det_normalize(np.array(matrix, dtype=complex).reshape(3, 3))
        matrix.flags.writeable = False
        self.matrix = matrix
        self.form = FormTag.parse(form) if form is not None else None

    @classmethod
    def identity(cls, form=None):
        return cls(np.eye(3), form)

    def compose(self, other) -> Self:
        form = self.form if self.form is not None else other.form
        if self.form is not None and other.form is not None and self.form is not other.form:
            raise FormMismatchError(f'{self.form.value} vs {other.form.value}')
        return ProjMap(self.matrix @ other.matrix, form)

    def __matmul__(self, other):
        return self.compose(other)

    def inverse(self) -> Self:
        return ProjMap(np.linalg.inv(self.matrix), self.form)

    def power(self, n: int) -> Self:
        if n < 0:
            return self.inverse().power(-n)
        return ProjMap(np.linalg.matrix_power(self.matrix, n), self.form)

    def conjugated_by(self, k) -> Self:
        """k g k^-1"""
        return k @ self @ k.inverse()

    def unitary_residual(self, form=None) -> float:
        return form_unitary_residual(form or self.form, self.matrix)

    def is_unitary(self, form=None, tol=1e-9) -> bool:
        return self.unitary_residual(form) <= tol

    def equals(self, other, tol=KERNEL_TOL) -> bool:
        return projective_residual(self.matrix.reshape(9), other.matrix.reshape(9)) <= tol

    def __str__(self):
        rows = ['[' + ', '.join(_fmt(z) for z in row) + ']' for row in self.matrix]
        return '[' + ', '.join(rows) + ']'

    def __repr__(self):
        form = self.form.value if self.form is not None else None
        return f'ProjMap({self}, form={form})'


def apply(g: ProjMap, p):
    """[g]([v]) = [g v] for points, lines and anything exposing `mapped`."""
    if g.form is not None and getattr(p, 'form', None) is not None and p.form is not g.form:
        raise FormMismatchError(f'{g.form.value} map on a {p.form.value} object')
    return p.mapped(g.matrix)


def line_through(p, q, tol=KERNEL_TOL) -> ProjLine:
    """The line through two distinct points, from the FORM1 cross product of representatives."""
    a = np.asarray(_vector_of(p), dtype=complex)
    b = np.asarray(_vector_of(q), dtype=complex)
    coefficients = dual(FormTag.FORM1, boxtimes(FormTag.FORM1, a, b))
    if np.linalg.norm(coefficients) <= tol * np.linalg.norm(a) * np.linalg.norm(b):
        raise CoincidentPointsError(f'{p} and {q}')
    return ProjLine(coefficients)


def _vector_of(p):
    return p.vector if isinstance(p, ProjPoint) else p


def _fmt(z):
    z = complex(z)
    re = 0.0 if abs(z.real) < 5e-13 else z.real
    im = 0.0 if abs(z.imag) < 5e-13 else z.imag
    if im == 0.0:
        return f'{re:.6g}'
    if re == 0.0:
        return f'{im:.6g}i'
    return f'{re:.6g}{im:+.6g}i'
