import enum

import numpy as np

from chyperbolic.boundary import heis_coordinates, vectors_to_form
from chyperbolic.curves.contact import scale_free_defects
from chyperbolic.curves.lift import CurveLift
from chyperbolic.errors import IrregularCurveError
from chyperbolic.fitting import fit_chain, fit_rcircle
from chyperbolic.hermitian import KERNEL_TOL, FormTag, boxtimes
from chyperbolic.logger import logger
from chyperbolic.objects.node import Node
from chyperbolic.objects.triples import cartan_invariants, distinct_triples, sample_triples
from chyperbolic.utils import make_rng


class CurveVerdict(enum.Enum):
    CHAIN = 'CHAIN'
    RCIRCLE = 'RCIRCLE'
    NEITHER = 'NEITHER'


class CurveClassification(Node):
    def __init__(self, verdict, residuals, fitted=None, grid=None, tol=None):
        super().__init__()
        self.verdict = verdict
        self.residuals = residuals
        self.fitted = fitted
        self.grid = grid
        self.tol = tol

    def __repr__(self):
        return f'CurveClassification({self.verdict.name}, {self.residuals})'


def classify_curve(c: CurveLift,
                   grid=512,
                   tol=1e-8,
                   sampled_tol=1e-2,
                   triple_samples=2000,
                   seed=0,
                   workers=1) -> CurveClassification:
    ts = c.grid(grid)
    values, derivatives = c.evaluate_grid(ts, workers)

    cross = boxtimes(c.form, values, derivatives)
    scale = np.linalg.norm(values, axis=-1) * np.linalg.norm(derivatives, axis=-1)
    irregular = np.linalg.norm(cross, axis=-1) <= KERNEL_TOL * scale
    if np.any(irregular):
        raise IrregularCurveError(f'{c} at t={ts[int(np.argmax(irregular))]:.6g}')

    residuals = {}
    fit = fit_chain(values, c.form)
    residuals['chain'] = fit.residual
    if fit.residual <= tol and fit.chain is not None:
        logger.debug(f'{c} fits a chain with residual {fit.residual:.3g}')
        return CurveClassification(CurveVerdict.CHAIN, residuals, fit.chain, len(ts), tol)

    defects = scale_free_defects(c.form, values, derivatives)
    residuals['legendrian'] = float(np.max(defects))
    legendrian_tol = sampled_tol if c.sampled else tol

    rng = make_rng(seed)
    triples = distinct_triples(values, sample_triples(len(values), triple_samples, rng))
    cartan = cartan_invariants(c.form, values[triples[:, 0]], values[triples[:, 1]], values[triples[:, 2]])
    residuals['cartan'] = float(np.max(np.abs(cartan))) if len(cartan) else np.inf

    projection_degenerate = _projection_degenerate(values, c.form, tol)
    residuals['projection_degenerate'] = projection_degenerate
    fitted = None
    if projection_degenerate:
        residuals['line_v'] = residuals['line_collinearity'] = np.inf
    else:
        line = fit_rcircle(values, c.form)
        residuals['line_v'] = line.v_residual
        residuals['line_collinearity'] = line.collinearity
        fitted = line.rcircle

    if residuals['legendrian'] <= legendrian_tol and residuals['cartan'] <= tol \
            and residuals['line_v'] <= tol and residuals['line_collinearity'] <= tol:
        return CurveClassification(CurveVerdict.RCIRCLE, residuals, fitted, len(ts), tol)
    return CurveClassification(CurveVerdict.NEITHER, residuals, None, len(ts), tol)


def _projection_degenerate(values, form, tol):
    zeta, _ = heis_coordinates(vectors_to_form(values, form, FormTag.FORM2))
    zeta = zeta[np.isfinite(zeta)]
    if len(zeta) < 2:
        return False
    return bool(np.max(np.abs(zeta - zeta[0])) <= tol * (1 + abs(zeta[0])))
