"""
Least-residual recovery of chains and R-circles from boundary samples.
"""
import numpy as np

from chyperbolic.boundary import ball_real, heis_coordinates, vectors_to_form
from chyperbolic.errors import CoincidentPointsError, InvalidChainError
from chyperbolic.hermitian import FormTag, SignClass, boxtimes, herm_inner, herm_norm2, sign_class
from chyperbolic.logger import logger
from chyperbolic.objects.chain import Chain
from chyperbolic.objects.rcircle import RCircle
from chyperbolic.projective import ProjMap, projective_residuals

# samples this close to either normalized anchor carry no line information
ANCHOR_TOL = 1e-6


class ChainFit:
    def __init__(self, polar, residual, chain=None):
        self.polar = polar
        self.residual = residual
        self.chain = chain

    def __repr__(self):
        return f'ChainFit(residual={self.residual:.3g}, chain={self.chain})'


class RCircleFit:
    def __init__(self, rcircle, v_residual, collinearity, theta=None):
        self.rcircle = rcircle
        self.v_residual = v_residual
        self.collinearity = collinearity
        self.theta = theta

    @property
    def residual(self):
        return max(self.v_residual, self.collinearity)

    def __repr__(self):
        return f'RCircleFit(v_residual={self.v_residual:.3g}, collinearity={self.collinearity:.3g})'


def fit_chain(vectors, form) -> ChainFit:
    """
    Polar point minimizing sum_k |<x_k, p>|^2 over unit samples x_k.

    With w_k = J x_k the objective is p^H A p for A = sum_k w_k w_k^H, so the polar point is
    the eigenvector of the smallest eigenvalue; the residual is that eigenvalue over trace(A).
    """
    x = np.asarray(vectors, dtype=complex)
    x = x / np.linalg.norm(x, axis=-1, keepdims=True)
    w = x @ FormTag.parse(form).matrix.T
    accumulated = w.T @ np.conj(w)
    values, eigenvectors = np.linalg.eigh(accumulated)
    polar = eigenvectors[:, 0]
    residual = float(max(values[0], 0.0) / np.real(np.trace(accumulated)))

    chain = None
    try:
        if sign_class(form, polar) is SignClass.POSITIVE:
            chain = Chain(polar, form)
    except InvalidChainError:
        pass
    return ChainFit(polar, residual, chain)


def normalize_pair(origin, infinity, form=FormTag.FORM2) -> ProjMap:
    """
    FORM2-unitary h with h[origin] = [0:0:1] and h[infinity] = [1:0:0].

    The columns (b1, m, b3) of h^-1 are the point sent to infinity, their cross product and the
    point sent to the origin, scaled so the Gram matrix is the FORM2 matrix.
    """
    b1 = vectors_to_form(np.asarray(infinity, dtype=complex), form, FormTag.FORM2)
    b3 = vectors_to_form(np.asarray(origin, dtype=complex), form, FormTag.FORM2)
    b1 = b1 / np.linalg.norm(b1)
    b3 = b3 / np.linalg.norm(b3)
    pairing = herm_inner(FormTag.FORM2, b1, b3)
    if abs(pairing) <= 1e-12:
        raise CoincidentPointsError('cannot normalize coincident boundary points')
    b3 = b3 / np.conj(pairing)
    m = boxtimes(FormTag.FORM2, b1, b3)
    m = m / np.sqrt(herm_norm2(FormTag.FORM2, m))
    basis = np.stack([b1, m, b3], axis=-1)
    return ProjMap(np.linalg.inv(basis), FormTag.FORM2)


def farthest_index(vectors, form, anchor=0) -> int:
    coordinates = ball_real(vectors, form)
    return int(np.argmax(np.linalg.norm(coordinates - coordinates[anchor], axis=-1)))


def fit_rcircle(vectors, form) -> RCircleFit:
    """
    Send the first sample to the origin and the sample farthest from it to infinity; an R-circle
    then becomes a horizontal line through the origin of the Heisenberg chart.
    """
    x = np.asarray(vectors, dtype=complex)
    if len(x) < 3:
        return RCircleFit(None, np.inf, np.inf)
    far = farthest_index(x, form)
    h = normalize_pair(x[0], x[far], form)
    images = vectors_to_form(x, form, FormTag.FORM2) @ h.matrix.T

    keep = (projective_residuals(x, x[0]) > ANCHOR_TOL) & (projective_residuals(x, x[far]) > ANCHOR_TOL)
    zeta, v = heis_coordinates(images[keep])
    finite = np.isfinite(v)
    zeta, v = zeta[finite], v[finite]
    gauge = np.abs(zeta) ** 2 + np.abs(v)
    usable = gauge > 1e-24
    zeta, v, gauge = zeta[usable], v[usable], gauge[usable]
    if len(zeta) == 0:
        logger.debug('R-circle fit has no usable samples after normalization')
        return RCircleFit(None, np.inf, np.inf)

    v_residual = float(np.max(np.abs(v) / gauge))
    modulus = np.abs(zeta)
    if np.all(modulus == 0.0):
        return RCircleFit(None, v_residual, np.inf)
    directions = zeta[modulus > 0] / modulus[modulus > 0]
    theta = float(np.angle(np.sum(directions ** 2)) / 2)
    collinearity = float(np.max(np.abs(np.imag(directions * np.exp(-1j * theta)))))

    rcircle = RCircle.infinite(theta=theta).transformed(h.inverse())
    return RCircleFit(rcircle, v_residual, collinearity, theta)
