"""
Property batteries behind `verify`. Every suite draws its cases from a seeded generator, checks
one geometric identity or mechanism on each case and reports the worst residual it saw.
"""
import datetime
import math
from typing import Callable, Dict

import numpy as np
from prettytable import PrettyTable
from tqdm import tqdm

from chyperbolic.boundary import BoundaryPoint, heis_coordinates, heis_lift
from chyperbolic.config import RunConfig
from chyperbolic.curves.builtins import builtin_curve, canonical_rcircle, fourier_curve, legendrian_fourier_curve
from chyperbolic.curves.classifier import CurveVerdict, classify_curve
from chyperbolic.curves.contact import (
    PlaneCurve,
    contact_defect,
    legendrian_defect,
    plane_curvature,
    secant_order,
    tangent_chain,
    vertical_projection,
)
from chyperbolic.curves.lift import CurveLift
from chyperbolic.errors import UnknownSuiteError
from chyperbolic.hermitian import CAYLEY, FormTag, boxtimes, herm_inner, herm_norm2
from chyperbolic.isometries import loxodromic_diagonal, normalize_loxodromic, random_isometry, random_loxodromic
from chyperbolic.logger import logger
from chyperbolic.objects.chain import chain_diameter, chain_through, chain_vectors
from chyperbolic.objects.rcircle import RCircle
from chyperbolic.objects.triples import HALF_PI, cartan_invariants, distinct_triples, sample_triples
from chyperbolic.projective import projective_residual
from chyperbolic.utils import make_rng, random_vectors
from chyperbolic.visitors.serializer import real_json

# weight of the second coordinate of the (1, 2) torus knot used by the triples suite
TORUS_WEIGHT = 1 / 2.2
# smallest cyclic parameter gap between torus knot triple members
TRIPLE_GAP = 0.1
# distance generic invariants keep from 0 and +-pi/2
SEPARATION = 1e-2


class SuiteResult:
    def __init__(self, name, cases, max_residual, threshold, failures=0, rows=None, header=None):
        self.name = name
        self.cases = cases
        self.max_residual = float(max_residual)
        self.threshold = threshold
        self.failures = int(failures)
        self.seconds = 0.0
        # optional detail table
        self.rows = rows or []
        self.header = header

    @property
    def passed(self):
        return self.failures == 0

    def as_dict(self):
        return {
            'suite': self.name,
            'cases': self.cases,
            'max_residual': real_json(self.max_residual),
            'threshold': real_json(self.threshold),
            'failures': self.failures,
            'passed': self.passed,
            'seconds': round(self.seconds, 3),
        }

    def __repr__(self):
        status = 'pass' if self.passed else f'FAIL ({self.failures})'
        return f'SuiteResult({self.name}, {status}, max_residual={self.max_residual:.3g})'


def _count(base, config):
    return max(1, int(round(base * config.verify_scale)))


def _random_null(rng, n, form=FormTag.FORM1):
    """Uniform points of the ball boundary, written in `form`."""
    x = random_vectors(rng, n, 2)
    x = x / np.linalg.norm(x, axis=-1, keepdims=True)
    y = np.concatenate([x, np.ones((n, 1), dtype=complex)], axis=-1)
    return y if form is FormTag.FORM1 else y @ CAYLEY.T


def _random_curve(rng, k):
    kind = k % 3
    if kind == 0:
        return fourier_curve(rng)
    if kind == 1:
        return legendrian_fourier_curve(rng)
    return builtin_curve(('vertical-chain', 'canonical-rcircle', 'finite-rcircle')[rng.integers(3)])


def cross_product(config: RunConfig, rng) -> SuiteResult:
    """Orthogonality, equivariance and the Lagrange identity of the Hermitian cross product."""
    n = _count(10_000, config)
    threshold = 1e-9
    worst = 0.0
    for form in tqdm(list(FormTag), desc='cross-product', disable=None):
        z = random_vectors(rng, n)
        w = random_vectors(rng, n)
        x = boxtimes(form, z, w)
        scale = np.linalg.norm(z, axis=-1) * np.linalg.norm(w, axis=-1)

        orthogonal = np.maximum(np.abs(herm_inner(form, x, z)) / np.linalg.norm(z, axis=-1),
                                np.abs(herm_inner(form, x, w)) / np.linalg.norm(w, axis=-1)) / scale
        lagrange = np.abs(herm_norm2(form, x) - (np.abs(herm_inner(form, z, w)) ** 2
                                                 - herm_norm2(form, z) * herm_norm2(form, w))) / scale ** 2
        g = random_isometry(form, rng).matrix
        equivariant = np.linalg.norm(boxtimes(form, z @ g.T, w @ g.T) - x @ g.T, axis=-1) \
            / (np.linalg.norm(g, 2) ** 2 * scale)
        worst = max(worst, float(np.max(orthogonal)), float(np.max(lagrange)), float(np.max(equivariant)))
    return SuiteResult('cross-product', 2 * n, worst, threshold, int(worst > threshold))


def cayley(config: RunConfig, rng) -> SuiteResult:
    n = _count(10_000, config)
    threshold = 1e-12
    z = random_vectors(rng, n)
    w = random_vectors(rng, n)
    scale = np.linalg.norm(z, axis=-1) * np.linalg.norm(w, axis=-1)
    pairing = np.abs(herm_inner(FormTag.FORM1, z @ CAYLEY.T, w @ CAYLEY.T) - herm_inner(FormTag.FORM2, z, w)) / scale
    involution = np.linalg.norm(CAYLEY @ CAYLEY - np.eye(3))
    worst = max(float(np.max(pairing)), float(involution))
    return SuiteResult('cayley', n, worst, threshold, int(np.sum(pairing > threshold)) + int(involution > 1e-14))


def tangent_chain_equivariance(config: RunConfig, rng) -> SuiteResult:
    """Tangent chains of g c agree with g applied to tangent chains of c."""
    n = _count(1000, config)
    threshold = 1e-9
    worst, failures = 0.0, 0
    for k in tqdm(range(n), desc='tangent-chain', disable=None):
        c = _random_curve(rng, k)
        g = random_isometry(FormTag.FORM2, rng)
        t = float(rng.uniform(0.01, 0.99))
        expected = g.matrix @ tangent_chain(c, t).point.vector
        actual = tangent_chain(c.transformed(g), t).point.vector
        residual = projective_residual(actual, expected)
        worst = max(worst, residual)
        failures += residual > threshold
    return SuiteResult('tangent-chain', n, worst, threshold, failures)


def legendrian(config: RunConfig, rng) -> SuiteResult:
    """
    The contact form, the pairing <v, v'> and degeneracy of the tangent chain agree on exactly
    Legendrian curves and on curves pushed off the contact planes by a known drift.
    """
    n = _count(1000, config)
    low, high = 1e-10, 1e-2
    worst, failures = 0.0, 0
    for k in tqdm(range(n), desc='legendrian', disable=None):
        drift = 0.0 if k % 2 == 0 else float(rng.choice([-1, 1]) * rng.uniform(0.05, 1.0))
        c = legendrian_fourier_curve(rng, drift=drift)
        t = float(rng.uniform())
        contact = contact_defect(c, t)
        pairing = legendrian_defect(c, t)
        degenerate = tangent_chain(c, t).degenerate
        if drift == 0.0:
            ok = contact <= low and pairing <= low and degenerate
            worst = max(worst, contact, pairing)
        else:
            ok = contact >= high and pairing >= high and not degenerate and abs(contact - abs(drift)) <= 1e-9
            worst = max(worst, abs(contact - pairing))
        failures += not ok
    return SuiteResult('legendrian', n, worst, low, failures)


def contraction(config: RunConfig, rng) -> SuiteResult:
    """Iterates of a chain under a loxodromic map shrink to its attracting point."""
    n = _count(20, config)
    threshold = 1e-3
    worst, failures = 0.0, 0
    for _ in tqdm(range(n), desc='contraction', disable=None):
        g, _ = random_loxodromic(FormTag.FORM2, rng, modulus=(0.2, 0.5))
        p, q = _random_null(rng, 2, FormTag.FORM2)
        chain = chain_through(BoundaryPoint(p, FormTag.FORM2, check=False),
                              BoundaryPoint(q, FormTag.FORM2, check=False))
        diameters = []
        for _ in range(100):
            chain = chain.transformed(g)
            diameters.append(chain_diameter(chain, config.diameter_samples))
            if diameters[-1] < threshold:
                break
        monotone = all(b <= a * (1 + 1e-9) for a, b in zip(diameters[9:], diameters[10:]))
        worst = max(worst, diameters[-1])
        failures += not (diameters[-1] < threshold and monotone)
    return SuiteResult('contraction', n, worst, threshold, failures)


def _lifted_circle(radius):
    """Heisenberg curve whose vertical projection is the circle of `radius` through 0."""
    tau = 2 * np.pi
    return CurveLift.from_heisenberg(
        zeta=lambda t: radius * (np.exp(1j * tau * t) - 1),
        dzeta=lambda t: radius * 1j * tau * np.exp(1j * tau * t),
        height=lambda t: 0.0,
        dheight=lambda t: 0.0,
        ddzeta=lambda t: -radius * tau ** 2 * np.exp(1j * tau * t),
        ddheight=lambda t: 0.0,
        name='circle',
    )


def curvature(config: RunConfig, rng) -> SuiteResult:
    """Curvature at the n-th homothety image of a circle arc grows like |lambda|^-n."""
    threshold = 1e-6
    radius = float(rng.uniform(0.5, 2.0))
    base = vertical_projection(_lifted_circle(radius), window=(0.05, 0.45), grid=32)
    t = 0.2
    k0 = plane_curvature(base, t)
    worst, failures, rows = abs(k0 * radius - 1.0), 0, []
    for lam in (0.5, 1 / 3, np.exp(1j * np.pi / 4) / 2):
        for n in range(1, 6):
            k = plane_curvature(base.scaled(lam ** n), t)
            ratio = k / (abs(lam) ** (-n) * k0)
            rows.append([f'{complex(lam):.4g}', n, f'{k:.10g}', f'{ratio:.12f}'])
            worst = max(worst, abs(ratio - 1.0))
            failures += abs(ratio - 1.0) > threshold

    direction = complex(*rng.standard_normal(2))
    segment = PlaneCurve(lambda s: direction * s, lambda s: direction, lambda s: 0j)
    straight = max(plane_curvature(segment, s) for s in np.linspace(-1.0, 1.0, 11))
    failures += straight > 1e-10
    return SuiteResult('curvature', len(rows) + 11, worst, threshold, failures, rows,
                       ['lambda', 'n', 'curvature', 'ratio to |lambda|^-n k0'])


def normal_form(config: RunConfig, rng) -> SuiteResult:
    """h g h^-1 acts on the Heisenberg chart as (lambda^1/2 zeta, |lambda| v)."""
    n = _count(100, config)
    per_map = _count(100, config)
    threshold = 1e-7
    worst, failures = 0.0, 0
    for _ in tqdm(range(n), desc='normal-form', disable=None):
        g, _ = random_loxodromic(FormTag.FORM2, rng)
        data = normalize_loxodromic(g, config.unit_band)
        normal = data.conjugator.matrix @ g.matrix @ np.linalg.inv(data.conjugator.matrix)
        zeta = rng.uniform(-1, 1, per_map) + 1j * rng.uniform(-1, 1, per_map)
        v = rng.uniform(-1, 1, per_map)
        image_zeta, image_v = heis_coordinates(heis_lift(zeta, v) @ normal.T)
        residual = float(np.max(np.hypot(np.abs(image_zeta - data.sqrt_multiplier * zeta),
                                         image_v - abs(data.multiplier) * v)))
        worst = max(worst, residual)
        failures += residual > threshold

    # a loxodromic with real multiplier preserves the R-circle through its fixed points
    k = random_isometry(FormTag.FORM2, rng)
    s = float(rng.uniform(0.2, 0.8))
    g = loxodromic_diagonal(s).conjugated_by(k)
    invariant = canonical_rcircle().transformed(k)
    image = invariant.transformed(g)
    line = RCircle.infinite().transformed(k)
    drift = max(line.residual(image.evaluate(t)) for t in np.linspace(0.05, 0.95, 19))
    verdict = classify_curve(invariant, grid=config.samples, tol=config.classifier_tol, seed=config.seed).verdict
    failures += drift > 1e-8 or verdict is not CurveVerdict.RCIRCLE
    return SuiteResult('normal-form', n * per_map, worst, threshold, failures)


def _torus_knot(ts):
    """Ball-boundary points (sqrt(1-s) e^{2 pi i t}, sqrt(s) e^{4 pi i t}, 1) with s = TORUS_WEIGHT."""
    angle = 2 * np.pi * np.asarray(ts, dtype=float)
    return np.stack([np.sqrt(1 - TORUS_WEIGHT) * np.exp(1j * angle),
                     np.sqrt(TORUS_WEIGHT) * np.exp(2j * angle),
                     np.ones(angle.shape, dtype=complex)], axis=-1)


def _separated_parameters(rng, n, gap):
    """n parameter triples in [0, 1), unsorted, whose cyclic gaps are all at least `gap`."""
    kept = np.zeros((0, 3))
    while len(kept) < n:
        ts = rng.uniform(0.0, 1.0, (2 * n, 3))
        ordered = np.sort(ts, axis=-1)
        gaps = np.diff(np.concatenate([ordered, ordered[:, :1] + 1.0], axis=-1), axis=-1)
        kept = np.concatenate([kept, ts[np.min(gaps, axis=-1) >= gap]])
    return kept[:n]


def triples(config: RunConfig, rng) -> SuiteResult:
    """
    Cartan invariants are +-pi/2 on chains, 0 on R-circles, and at least SEPARATION away from
    both on a transverse torus knot.

    Torus knot triples keep cyclic parameter gaps of at least TRIPLE_GAP; nearly coincident pairs on
    a transverse curve give values near +-pi/2.
    """
    n = _count(10_000, config)
    threshold = config.classifier_tol
    form = FormTag.FORM2

    p, q = _random_null(rng, 2, form)
    on_chain = chain_vectors(chain_through(BoundaryPoint(p, form, check=False),
                                           BoundaryPoint(q, form, check=False)), 4096)
    chain_values = _random_cartan(on_chain, n, rng, form)
    chain_residual = float(np.max(np.abs(np.abs(chain_values) - HALF_PI)))

    on_rcircle = RCircle.infinite().transformed(random_isometry(form, rng)).vectors(4096)
    rcircle_residual = float(np.max(np.abs(_random_cartan(on_rcircle, n, rng, form))))

    knot = _torus_knot(_separated_parameters(rng, n, TRIPLE_GAP))
    values = cartan_invariants(FormTag.FORM1, knot[:, 0], knot[:, 1], knot[:, 2])
    distance = np.minimum(np.abs(values), np.abs(np.abs(values) - HALF_PI))
    close = float(np.mean(distance < SEPARATION))
    failures = int(chain_residual > threshold) + int(rcircle_residual > threshold) + int(close > 0.01)
    rows = [['chain', f'{chain_residual:.3g}'], ['R-circle', f'{rcircle_residual:.3g}'],
            [f'torus knot, fraction within {SEPARATION:g} of 0 or +-pi/2', f'{close:.4f}'],
            ['torus knot, closest approach to 0 or +-pi/2', f'{float(np.min(distance)):.4f}']]
    return SuiteResult('triples', 3 * n, max(chain_residual, rcircle_residual), threshold, failures, rows,
                       ['sample', 'value'])


def _random_cartan(vectors, n, rng, form):
    index = distinct_triples(vectors, sample_triples(len(vectors), n, rng))
    return cartan_invariants(form, vectors[index[:, 0]], vectors[index[:, 1]], vectors[index[:, 2]])


def secant(config: RunConfig, rng) -> SuiteResult:
    """Secant chains converge to the tangent chain at first order or better."""
    threshold = 0.9
    worst, failures, rows = math.inf, 0, []
    for name in ('vertical-chain', 'canonical-rcircle', 'finite-rcircle'):
        c = builtin_curve(name)
        for t in (0.13, 0.37, 0.71):
            distances, order = secant_order(c, t)
            rows.append([name, t] + [f'{d:.3e}' for d in distances] + [f'{order:.3f}'])
            worst = min(worst, order)
            failures += order < threshold
    return SuiteResult('secant', len(rows), worst, threshold, failures, rows,
                       ['curve', 't', 'h=1e-2', 'h=1e-3', 'h=1e-4', 'order'])


SUITES: Dict[str, Callable] = {
    'cross-product': cross_product,
    'cayley': cayley,
    'tangent-chain': tangent_chain_equivariance,
    'legendrian': legendrian,
    'contraction': contraction,
    'curvature': curvature,
    'normal-form': normal_form,
    'triples': triples,
    'secant': secant,
}


def suite_names():
    return list(SUITES) + ['all']


def run_suites(name, config: RunConfig):
    if name == 'all':
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise UnknownSuiteError(name, suite_names())

    results = []
    for suite in names:
        rng = make_rng(config.seed)
        start = datetime.datetime.now()
        result = SUITES[suite](config, rng)
        result.seconds = (datetime.datetime.now() - start).total_seconds()
        logger.debug(f'{result} in {result.seconds:.2f}s')
        results.append(result)
    return results


def report(results) -> str:
    table = PrettyTable(['suite', 'cases', 'max residual', 'threshold', 'seconds', 'status'])
    for r in results:
        table.add_row([r.name, r.cases, f'{r.max_residual:.3e}', f'{r.threshold:.1e}', f'{r.seconds:.2f}',
                       'pass' if r.passed else f'FAIL ({r.failures})'])
    out = [table.get_string()]
    for r in results:
        if r.rows:
            detail = PrettyTable(r.header)
            for row in r.rows:
                detail.add_row(row)
            out.append(f'{r.name}\n{detail.get_string()}')
    return '\n'.join(out)
