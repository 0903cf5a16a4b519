"""
Classification, fixed points and normal forms of holomorphic isometries, given as
form-unitary ProjMaps.
"""
import enum
import math

import numpy as np
from scipy.stats import unitary_group

from chyperbolic.boundary import BoundaryPoint, heis_complex_dilation
from chyperbolic.errors import NotLoxodromicError, NotUnitaryError
from chyperbolic.fitting import normalize_pair
from chyperbolic.hermitian import CAYLEY, FormTag
from chyperbolic.logger import logger
from chyperbolic.projective import ProjMap, apply

# |modulus - 1| below this counts as a unit eigenvalue
UNIT_BAND = 1e-8
# singular values below this fraction of |M| count as zero in the eigenspace rank test
RANK_TOL = 1e-8
# eigenvalues closer than this are one cluster
CLUSTER_TOL = 1e-6


class IsometryClass(enum.Enum):
    LOXODROMIC = 'loxodromic'
    ELLIPTIC = 'elliptic'
    PARABOLIC = 'parabolic'


class LoxodromicData:
    """
    Normal form of a loxodromic map: h g h^-1 acts on the Heisenberg chart as
    (zeta, v) -> (sqrt_multiplier zeta, |multiplier| v), with multiplier = sqrt_multiplier^2.
    """

    def __init__(self, multiplier, sqrt_multiplier, attracting, repelling, conjugator, eigenvalues):
        self.multiplier = complex(multiplier)
        self.sqrt_multiplier = complex(sqrt_multiplier)
        self.attracting = attracting
        self.repelling = repelling
        self.conjugator = conjugator
        self.eigenvalues = eigenvalues

    @property
    def translation_length(self):
        return -math.log(abs(self.multiplier))

    @property
    def chart_action(self) -> ProjMap:
        return heis_complex_dilation(self.sqrt_multiplier)

    def __repr__(self):
        return f'LoxodromicData(multiplier={self.multiplier:.6g}, attracting={self.attracting}, ' \
               f'repelling={self.repelling})'


def _require_unitary(g, tol):
    form = g.form or FormTag.FORM2
    residual = g.unitary_residual(form)
    if residual > tol:
        raise NotUnitaryError(f'form-unitarity residual {residual:.3g}')
    return form


def _eigen(g):
    values, vectors = np.linalg.eig(g.matrix)
    order = np.argsort(np.abs(values), kind='stable')
    return values[order], vectors[:, order]


def classify_isometry(g: ProjMap, tol=UNIT_BAND, unitary_tol=1e-9) -> IsometryClass:
    _require_unitary(g, unitary_tol)
    values, _ = _eigen(g)
    if np.max(np.abs(values)) > 1 + tol:
        return IsometryClass.LOXODROMIC
    return IsometryClass.ELLIPTIC if is_diagonalizable(g.matrix, values) else IsometryClass.PARABOLIC


def is_diagonalizable(matrix, values):
    """Sum of geometric multiplicities over eigenvalue clusters equals 3."""
    scale = np.linalg.norm(matrix, 2)
    clusters = []
    for value in values:
        if not any(abs(value - c) <= CLUSTER_TOL for c in clusters):
            clusters.append(value)
    nullity = 0
    for c in clusters:
        singular = np.linalg.svd(matrix - c * np.eye(3), compute_uv=False)
        nullity += int(np.sum(singular <= RANK_TOL * scale))
    return nullity == 3


def fixed_boundary_points(g: ProjMap, tol=UNIT_BAND):
    """(attracting, repelling): eigenvectors of the largest and smallest eigenvalue moduli."""
    form = _require_unitary(g, 1e-9)
    values, vectors = _eigen(g)
    if abs(values[-1]) <= 1 + tol:
        raise NotLoxodromicError(f'spectral radius {abs(values[-1]):.12g}')
    attracting = BoundaryPoint(vectors[:, -1], form, tol=1e-8)
    repelling = BoundaryPoint(vectors[:, 0], form, tol=1e-8)
    return attracting, repelling


def normalize_loxodromic(g: ProjMap, tol=UNIT_BAND) -> LoxodromicData:
    attracting, repelling = fixed_boundary_points(g, tol)
    form = attracting.form
    h = normalize_pair(attracting.vector, repelling.vector, form)
    g2 = cayley_conjugate(g, FormTag.FORM2) if form is FormTag.FORM1 else g
    normal = h.matrix @ g2.matrix @ np.linalg.inv(h.matrix)
    diagonal = np.diag(normal)
    off = np.linalg.norm(normal - np.diag(diagonal)) / np.linalg.norm(normal)
    if off > 1e-6:
        logger.warning(f'normal form is diagonal only to {off:.3g}')
    sqrt_multiplier = diagonal[1] / diagonal[2]
    logger.debug(f'normalized loxodromic: diagonal {diagonal}')
    return LoxodromicData(sqrt_multiplier ** 2, sqrt_multiplier, attracting, repelling, h,
                          np.linalg.eigvals(g.matrix))


def iterate_on_boundary(g: ProjMap, x: BoundaryPoint, n: int):
    points = []
    current = x
    for _ in range(n):
        current = apply(g, current)
        points.append(current)
    return points


def cayley_conjugate(g: ProjMap, form) -> ProjMap:
    """The same isometry written in the other model."""
    form = FormTag.parse(form)
    if g.form is form:
        return g
    return ProjMap(CAYLEY @ g.matrix @ CAYLEY, form)


def boost(s) -> np.ndarray:
    """Hyperbolic rotation in the (z1, z3) plane of the ball model."""
    return np.array([
        [math.cosh(s), 0.0, math.sinh(s)],
        [0.0, 1.0, 0.0],
        [math.sinh(s), 0.0, math.cosh(s)],
    ], dtype=complex)


def random_ball_unitary(rng) -> np.ndarray:
    block = np.eye(3, dtype=complex)
    block[:2, :2] = unitary_group.rvs(2, random_state=rng)
    block[2, 2] = np.exp(2j * np.pi * rng.uniform())
    return block


def random_isometry(form=FormTag.FORM2, rng=None, max_boost=1.0) -> ProjMap:
    """k1 a k2 with k1, k2 in U(2) x U(1) and a a boost bounded by `max_boost`."""
    rng = rng if rng is not None else np.random.default_rng()
    g = random_ball_unitary(rng) @ boost(rng.uniform(-max_boost, max_boost)) @ random_ball_unitary(rng)
    ball = ProjMap(g, FormTag.FORM1)
    return cayley_conjugate(ball, form)


def loxodromic_diagonal(s) -> ProjMap:
    """diag(s, conj(s)/s, 1/conj(s)) in the Siegel model, attracting [0:0:1] when |s| < 1."""
    s = complex(s)
    return ProjMap(np.diag([s, np.conj(s) / s, 1 / np.conj(s)]), FormTag.FORM2)


def random_loxodromic(form=FormTag.FORM2, rng=None, modulus=(0.2, 0.8), max_boost=1.0):
    """A random conjugate of a random diagonal loxodromic; returns (g, diagonal s)."""
    rng = rng if rng is not None else np.random.default_rng()
    s = rng.uniform(*modulus) * np.exp(1j * rng.uniform(-np.pi, np.pi))
    k = random_isometry(FormTag.FORM2, rng, max_boost)
    g = loxodromic_diagonal(s).conjugated_by(k)
    return cayley_conjugate(g, form), s


def translation_length(g: ProjMap) -> float:
    """2 log of the dominant eigenvalue modulus; zero for elliptic and parabolic maps."""
    values, _ = _eigen(g)
    return float(2.0 * math.log(max(abs(values[-1]), 1.0)))
