import enum

import numpy as np

from chyperbolic.boundary import check_forms
from chyperbolic.errors import CoincidentPointsError
from chyperbolic.hermitian import KERNEL_TOL, herm_inner
from chyperbolic.projective import projective_residual, projective_residuals

HALF_PI = np.pi / 2


class TripleClass(enum.Enum):
    CHAIN = 'chain'
    RCIRCLE = 'rcircle'
    GENERIC = 'generic'


def cartan_invariants(form, p, q, r):
    """arg(-<p,q><q,r><r,p>) for batches of null vectors, clipped to [-pi/2, pi/2]."""
    product = herm_inner(form, p, q) * herm_inner(form, q, r) * herm_inner(form, r, p)
    return np.clip(np.angle(-product), -HALF_PI, HALF_PI)


def cartan_invariant(p, q, r, tol=KERNEL_TOL) -> float:
    form = check_forms(p, q, r)
    for a, b in ((p, q), (q, r), (r, p)):
        if projective_residual(a.vector, b.vector) <= tol:
            raise CoincidentPointsError(f'{a} and {b}')
    return float(cartan_invariants(form, p.vector, q.vector, r.vector))


def classify_triple(p, q, r, tol=1e-8) -> TripleClass:
    value = cartan_invariant(p, q, r)
    return triple_class(value, tol)


def triple_class(value, tol=1e-8) -> TripleClass:
    if abs(abs(value) - HALF_PI) <= tol:
        return TripleClass.CHAIN
    if abs(value) <= tol:
        return TripleClass.RCIRCLE
    return TripleClass.GENERIC


def sample_triples(n, count, rng):
    """Index triples with pairwise distinct entries, drawn uniformly from range(n); at most `count`."""
    triples = np.stack([rng.integers(0, n, count) for _ in range(3)], axis=-1)
    distinct = (triples[:, 0] != triples[:, 1]) & (triples[:, 1] != triples[:, 2]) & (triples[:, 0] != triples[:, 2])
    return triples[distinct]


def distinct_triples(vectors, triples, tol=KERNEL_TOL):
    """Index triples whose three points are pairwise projectively distinct, not just distinct indices."""
    x = np.asarray(vectors, dtype=complex)
    apart = np.ones(len(triples), dtype=bool)
    for i, j in ((0, 1), (1, 2), (2, 0)):
        apart &= projective_residuals(x[triples[:, i]], x[triples[:, j]]) > tol
    return triples[apart]
