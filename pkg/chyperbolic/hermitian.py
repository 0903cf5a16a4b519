"""
Complex 3-dimensional linear algebra for the two Hermitian forms of signature (2,1).

FORM1 is the ball-model form z1 w1* + z2 w2* - z3 w3*, FORM2 the Siegel-model form
z1 w3* + z2 w2* + z3 w1*. All functions accept single vectors of shape (3,) or batches of
shape (..., 3) and never mutate their arguments.
"""
import enum

import numpy as np

from chyperbolic.errors import SingularMatrixError, ZeroVectorError

KERNEL_TOL = 1e-10


class FormTag(enum.Enum):
    FORM1 = 'form1'
    FORM2 = 'form2'

    # aliases
    BALL = 'form1'
    SIEGEL = 'form2'

    @property
    def matrix(self):
        return _FORM_MATRICES[self]

    @property
    def chart(self):
        return 'ball' if self is FormTag.FORM1 else 'siegel'

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            try:
                return cls[str(value).upper()]
            except KeyError:
                raise ValueError(f'unknown form `{value}`') from None


class SignClass(enum.Enum):
    NEGATIVE = -1
    NULL = 0
    POSITIVE = 1


class Direction(enum.Enum):
    BALL_TO_SIEGEL = 'ball_to_siegel'
    SIEGEL_TO_BALL = 'siegel_to_ball'


_FORM_MATRICES = {
    FormTag.FORM1: np.diag([1.0, 1.0, -1.0]).astype(complex),
    FormTag.FORM2: np.array([[0, 0, 1], [0, 1, 0], [1, 0, 0]], dtype=complex),
}

CAYLEY = np.array([
    [1.0, 0.0, 1.0],
    [0.0, np.sqrt(2.0), 0.0],
    [1.0, 0.0, -1.0],
], dtype=complex) / np.sqrt(2.0)


def form_matrix(form):
    return FormTag.parse(form).matrix


def herm_inner(form, z, w):
    """<z, w> = sum_ij z_i J_ij conj(w_j), linear in z and conjugate-linear in w."""
    J = form_matrix(form)
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    out = np.einsum('...i,ij,...j->...', z, J, np.conj(w))
    if out.ndim == 0:
        return complex(out)
    return out


def herm_norm2(form, z):
    """Real quadratic form <z, z>."""
    out = np.real(herm_inner(form, z, z))
    if np.ndim(out) == 0:
        return float(out)
    return out


def sign_class(form, z, tol=KERNEL_TOL) -> SignClass:
    z = np.asarray(z, dtype=complex)
    scale = float(np.real(np.vdot(z, z)))
    if scale == 0.0:
        raise ZeroVectorError('sign of the zero vector')
    q = herm_norm2(form, z)
    if abs(q) <= tol * scale:
        return SignClass.NULL
    return SignClass.POSITIVE if q > 0 else SignClass.NEGATIVE


def dual(form, z):
    """J conj(z): the coefficient vector of the functional x -> <x, z>."""
    return np.conj(np.asarray(z, dtype=complex)) @ form_matrix(form).T


def boxtimes(form, z, w):
    """
    Hermitian cross product z [x] w.

    The result is form-orthogonal to both arguments and vanishes exactly when they are
    linearly dependent. For det-1 form-unitary g, (gz) [x] (gw) = g (z [x] w).
    """
    return np.cross(dual(form, z), dual(form, w))


def cayley_apply(z, direction=Direction.SIEGEL_TO_BALL):
    # the Cayley matrix is an involution, both directions use the same matrix
    Direction(direction)
    z = np.asarray(z, dtype=complex)
    return z @ CAYLEY.T


def det_normalize(M):
    """Rescale M by the principal cube root of det(M)^-1."""
    M = np.asarray(M, dtype=complex)
    det = np.linalg.det(M)
    scale = np.linalg.norm(M, 2) ** 3
    if abs(det) <= 1e-12 * max(scale, 1e-300):
        raise SingularMatrixError(f'det = {det}')
    return M / np.power(complex(det), 1.0 / 3.0)


def form_unitary_residual(form, M):
    """max over the standard basis pairs of |<M e_i, M e_j> - <e_i, e_j>|."""
    M = np.asarray(M, dtype=complex)
    if M.shape != (3, 3):
        raise ValueError(f'expected a 3x3 matrix, got {M.shape}')
    if abs(np.linalg.det(M)) <= 1e-12 * max(np.linalg.norm(M, 2) ** 3, 1e-300):
        raise SingularMatrixError('singular matrix')
    columns = M.T
    basis = np.eye(3, dtype=complex)
    residual = 0.0
    for i in range(3):
        for j in range(3):
            lhs = herm_inner(form, columns[i], columns[j])
            rhs = herm_inner(form, basis[i], basis[j])
            residual = max(residual, abs(lhs - rhs))
    return residual


def is_form_unitary(form, M, tol=KERNEL_TOL) -> bool:
    return form_unitary_residual(form, M) <= tol
