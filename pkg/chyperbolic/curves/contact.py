"""
Tangent chains, Legendrian tests and vertical projections of boundary curves.
"""
import enum
import math

import numpy as np

from chyperbolic.boundary import SQRT2, eta
from chyperbolic.curves.lift import FD_STEP, CurveLift
from chyperbolic.errors import ChartInfinityError, IrregularCurveError, InvalidChainError
from chyperbolic.hermitian import KERNEL_TOL, FormTag, SignClass, boxtimes, herm_inner, sign_class
from chyperbolic.objects.chain import Chain, chain_through
from chyperbolic.projective import projective_residual


class LegendrianVerdict(enum.Enum):
    LEGENDRIAN = 'legendrian'
    NOT_LEGENDRIAN = 'not-legendrian'


class LegendrianReport:
    def __init__(self, max_defect, argmax, tolerance):
        self.max_defect = float(max_defect)
        self.argmax = float(argmax)
        self.tolerance = float(tolerance)
        self.verdict = LegendrianVerdict.LEGENDRIAN if self.max_defect <= self.tolerance \
            else LegendrianVerdict.NOT_LEGENDRIAN

    def __repr__(self):
        return f'LegendrianReport({self.verdict.name}, max_defect={self.max_defect:.3g} at t={self.argmax:.4g})'


def tangent_chain(c: CurveLift, t, tol=KERNEL_TOL) -> Chain:
    v = c.evaluate(t)
    dv = c.derivative(t)
    x = boxtimes(c.form, v, dv)
    if np.linalg.norm(x) <= tol * np.linalg.norm(v) * np.linalg.norm(dv):
        raise IrregularCurveError(f'{c} at t={t}')
    sign = sign_class(c.form, x, tol)
    if sign is SignClass.NULL:
        return Chain(x, c.form, degenerate=True)
    if sign is SignClass.NEGATIVE:
        raise InvalidChainError(f'negative tangent polar point at t={t}')
    return Chain(x, c.form)


def legendrian_defect(c: CurveLift, t) -> float:
    """|<v(t), v'(t)>| on the lift as given; the contact form value when v3 = 1."""
    return float(abs(herm_inner(c.form, c.evaluate(t), c.derivative(t))))


def scale_free_defects(form, values, derivatives):
    """|<v, v'>| / (|v| |v' - proj_v v'|): unchanged by rescaling the lift or the parameter."""
    pairing = np.abs(herm_inner(form, values, derivatives))
    norms = np.linalg.norm(values, axis=-1)
    along = np.einsum('...i,...i->...', np.conj(values), derivatives) / norms ** 2
    transverse = np.linalg.norm(derivatives - along[..., None] * values, axis=-1)
    with np.errstate(divide='ignore', invalid='ignore'):
        out = pairing / (norms * transverse)
    return np.where(transverse > 0, out, np.inf)


def contact_defect(c: CurveLift, t) -> float:
    """|v' - eta(zeta, zeta')| computed in the Heisenberg chart."""
    if c.form is not FormTag.FORM2:
        raise ValueError('the Heisenberg chart lives on the Siegel model')
    v = c.evaluate(t)
    dv = c.derivative(t)
    if abs(v[2]) <= 1e-8 * np.linalg.norm(v):
        raise ChartInfinityError(f'{c} at t={t}')
    chart = v / v[2]
    dchart = (dv * v[2] - v * dv[2]) / v[2] ** 2
    zeta = chart[1] / SQRT2
    dzeta = dchart[1] / SQRT2
    return float(abs(dchart[0].imag - eta(zeta, dzeta)))


def legendrian_report(c: CurveLift, grid=512, tol=1e-8, workers=1) -> LegendrianReport:
    ts = c.grid(grid)
    values, derivatives = c.evaluate_grid(ts, workers)
    defects = scale_free_defects(c.form, values, derivatives)
    k = int(np.argmax(defects))
    return LegendrianReport(defects[k], ts[k], tol)


def secant_chain(c: CurveLift, t, h) -> Chain:
    return chain_through(c.point(t), c.point(t + h))


def secant_order(c: CurveLift, t, steps=(1e-2, 1e-3, 1e-4)):
    """
    Projective distances between secant and tangent polar points, and the smallest observed
    convergence order between consecutive steps (inf when the secants are already exact).
    """
    tangent = tangent_chain(c, t).point.vector
    distances = [projective_residual(secant_chain(c, t, h).point.vector, tangent) for h in steps]
    if max(distances) <= 1e-12:
        return distances, math.inf
    orders = []
    for (h1, d1), (h2, d2) in zip(zip(steps, distances), zip(steps[1:], distances[1:])):
        orders.append(math.log(d1 / d2) / math.log(h1 / h2))
    return distances, min(orders)


class PlaneCurve:
    """Evaluators t -> zeta(t), zeta'(t), zeta''(t) of a plane curve."""

    def __init__(self, zeta, dzeta, ddzeta=None, degenerate=False):
        self.zeta = zeta
        self.dzeta = dzeta
        self.ddzeta = ddzeta if ddzeta is not None else \
            (lambda t: (dzeta(t + FD_STEP) - dzeta(t - FD_STEP)) / (2 * FD_STEP))
        self.degenerate = degenerate

    def scaled(self, mu):
        """Image under z -> mu z, at the same parameter."""
        mu = complex(mu)
        return PlaneCurve(lambda t: mu * self.zeta(t),
                          lambda t: mu * self.dzeta(t),
                          lambda t: mu * self.ddzeta(t),
                          self.degenerate)

    def __call__(self, t):
        return self.zeta(t)


def vertical_projection(c: CurveLift, window=(0.0, 1.0), grid=512, tol=1e-10) -> PlaneCurve:
    """zeta(t) = z2 / (sqrt(2) z3) with exact quotient-rule derivatives."""
    if c.form is not FormTag.FORM2:
        raise ValueError('vertical projection is taken in the Siegel model')
    ts = np.linspace(window[0], window[1], grid, endpoint=False)
    for t in ts:
        v = c.evaluate(t)
        if abs(v[2]) <= 1e-8 * np.linalg.norm(v):
            raise ChartInfinityError(f'{c} reaches infinity at t={t:.6g}')

    def zeta(t):
        v = c.evaluate(t)
        return complex(v[1] / v[2]) / SQRT2

    def dzeta(t):
        v, dv = c.evaluate(t), c.derivative(t)
        return complex((dv[1] * v[2] - v[1] * dv[2]) / v[2] ** 2) / SQRT2

    def ddzeta(t):
        v, dv, ddv = c.evaluate(t), c.derivative(t), c.second_derivative(t)
        numerator = dv[1] * v[2] - v[1] * dv[2]
        first = (ddv[1] * v[2] - v[1] * ddv[2]) / v[2] ** 2
        return complex(first - 2 * dv[2] * numerator / v[2] ** 3) / SQRT2

    values = np.array([zeta(t) for t in ts])
    degenerate = bool(np.max(np.abs(values - values[0])) <= tol * (1 + abs(values[0])))
    return PlaneCurve(zeta, dzeta, ddzeta, degenerate)


def plane_curvature(curve: PlaneCurve, t) -> float:
    d1 = complex(curve.dzeta(t))
    d2 = complex(curve.ddzeta(t))
    speed = abs(d1)
    if speed <= 1e-12:
        raise IrregularCurveError(f'singular point at t={t}')
    return abs((np.conj(d1) * d2).imag) / speed ** 3
