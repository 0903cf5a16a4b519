import enum

import numpy as np
from scipy.spatial import cKDTree

from chyperbolic.boundary import ball_real
from chyperbolic.fitting import fit_chain, fit_rcircle
from chyperbolic.limitset.sampler import LimitSample
from chyperbolic.logger import logger
from chyperbolic.objects.node import Node
from chyperbolic.objects.triples import HALF_PI, cartan_invariants, distinct_triples, sample_triples
from chyperbolic.utils import make_rng


class LimitVerdict(enum.Enum):
    ELEMENTARY = 'ELEMENTARY'
    CHAIN = 'CHAIN'
    RCIRCLE = 'RCIRCLE'
    UNKNOWN = 'UNKNOWN'


class LimitClassification(Node):
    def __init__(self, verdict, residuals, fitted=None, tol=None):
        super().__init__()
        self.verdict = verdict
        self.residuals = residuals
        self.fitted = fitted
        self.tol = tol

    def __repr__(self):
        return f'LimitClassification({self.verdict.name}, {self.residuals})'


def legendrian_proxy(vectors, form):
    """Mean |cartan| / (pi/2) over each point and its two nearest neighbours: 0 on R-circles, 1 on chains."""
    if len(vectors) < 3:
        return np.nan
    _, neighbours = cKDTree(ball_real(vectors, form)).query(ball_real(vectors, form), k=3)
    values = cartan_invariants(form, vectors, vectors[neighbours[:, 1]], vectors[neighbours[:, 2]])
    return float(np.mean(np.abs(values)) / HALF_PI)


def classify_limit_sample(S: LimitSample,
                          tol=1e-8,
                          triple_samples=10_000,
                          triple_fraction=0.99,
                          seed=0) -> LimitClassification:
    x = S.vectors
    residuals = {}
    if len(x) <= 2:
        return LimitClassification(LimitVerdict.ELEMENTARY, residuals, None, tol)

    fit = fit_chain(x, S.form)
    residuals['chain'] = fit.residual
    residuals['legendrian_proxy'] = legendrian_proxy(x, S.form)
    if fit.residual <= tol and fit.chain is not None:
        return LimitClassification(LimitVerdict.CHAIN, residuals, fit.chain, tol)

    triples = distinct_triples(x, sample_triples(len(x), triple_samples, make_rng(seed)))
    cartan = np.abs(cartan_invariants(S.form, x[triples[:, 0]], x[triples[:, 1]], x[triples[:, 2]]))
    residuals['cartan'] = float(np.max(cartan)) if len(cartan) else np.inf
    residuals['cartan_fraction'] = float(np.mean(cartan <= tol)) if len(cartan) else 0.0

    line = fit_rcircle(x, S.form)
    residuals['line_v'] = line.v_residual
    residuals['line_collinearity'] = line.collinearity
    if residuals['cartan_fraction'] >= triple_fraction and line.residual <= tol:
        return LimitClassification(LimitVerdict.RCIRCLE, residuals, line.rcircle, tol)

    logger.info(f'limit set left unclassified, residuals {residuals}')
    return LimitClassification(LimitVerdict.UNKNOWN, residuals, None, tol)
