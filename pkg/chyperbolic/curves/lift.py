from typing import Callable, Optional

import multiprocess.pool
import numpy as np
from typing_extensions import Self

from chyperbolic.boundary import SQRT2, BoundaryPoint, heis_lift
from chyperbolic.hermitian import KERNEL_TOL, FormTag
from chyperbolic.logger import logger
from chyperbolic.objects.node import Node
from chyperbolic.projective import projective_residual
from chyperbolic.utils import chunkify

# central-difference step for lifts given without derivatives
FD_STEP = 1e-5


class CurveLift(Node):
    """
    A closed curve of period 1 on the boundary, given by a lift t -> v(t) in C^3 and its
    derivatives. Sampled curves carry `sampled=True`; their derivatives are neighbour differences.
    """

    def __init__(self,
                 v: Callable,
                 dv: Callable,
                 ddv: Optional[Callable] = None,
                 form=FormTag.FORM2,
                 sampled=False,
                 name=None,
                 size=None):
        super().__init__()
        self.v = v
        self.dv = dv
        self.ddv = ddv
        self.form = FormTag.parse(form)
        self.sampled = sampled
        self.name = name
        # number of samples for sampled curves
        self.size = size

    @classmethod
    def from_function(cls, v: Callable, form=FormTag.FORM2, name=None, step=FD_STEP) -> Self:
        def dv(t):
            return (np.asarray(v(t + step)) - np.asarray(v(t - step))) / (2 * step)

        def ddv(t):
            return (np.asarray(v(t + step)) - 2 * np.asarray(v(t)) + np.asarray(v(t - step))) / step ** 2

        return cls(v, dv, ddv, form=form, name=name)

    @classmethod
    def from_heisenberg(cls, zeta, dzeta, height, dheight, ddzeta=None, ddheight=None, name=None) -> Self:
        """Chart lift (-|zeta|^2 + i v, sqrt(2) zeta, 1) of a Heisenberg curve t -> (zeta(t), v(t))."""
        def v(t):
            return heis_lift(zeta(t), height(t))

        def dv(t):
            z, dz = complex(zeta(t)), complex(dzeta(t))
            return np.array([-2 * (np.conj(z) * dz).real + 1j * dheight(t), SQRT2 * dz, 0.0])

        ddv = None
        if ddzeta is not None and ddheight is not None:
            def ddv(t):
                z, dz, ddz = complex(zeta(t)), complex(dzeta(t)), complex(ddzeta(t))
                real = -2 * (abs(dz) ** 2 + (np.conj(z) * ddz).real)
                return np.array([real + 1j * ddheight(t), SQRT2 * ddz, 0.0])

        return cls(v, dv, ddv, form=FormTag.FORM2, name=name)

    @classmethod
    def from_samples(cls, points, name=None) -> Self:
        """
        Closed curve through Heisenberg samples (zeta, v) taken at t = k/n. Evaluation snaps t to
        the nearest sample; derivatives are periodic central differences. A last sample repeating
        the first one closes the curve and is dropped.
        """
        rows = np.asarray([(complex(z), float(h)) for z, h in points], dtype=complex)
        lifts = heis_lift(rows[:, 0], rows[:, 1].real) if len(rows) else np.zeros((0, 3), dtype=complex)
        while len(lifts) > 1 and projective_residual(lifts[-1], lifts[0]) <= KERNEL_TOL:
            lifts = lifts[:-1]
        if len(lifts) < 3:
            raise ValueError('a sampled curve needs at least three points')
        n = len(lifts)
        spacing = 1.0 / n
        first = (np.roll(lifts, -1, axis=0) - np.roll(lifts, 1, axis=0)) / (2 * spacing)
        second = (np.roll(lifts, -1, axis=0) - 2 * lifts + np.roll(lifts, 1, axis=0)) / spacing ** 2

        def index(t):
            return int(np.round(t * n)) % n

        return cls(lambda t: lifts[index(t)],
                   lambda t: first[index(t)],
                   lambda t: second[index(t)],
                   form=FormTag.FORM2, sampled=True, name=name, size=n)

    def evaluate(self, t):
        return np.asarray(self.v(t), dtype=complex)

    def derivative(self, t):
        return np.asarray(self.dv(t), dtype=complex)

    def second_derivative(self, t):
        if self.ddv is not None:
            return np.asarray(self.ddv(t), dtype=complex)
        return (self.derivative(t + FD_STEP) - self.derivative(t - FD_STEP)) / (2 * FD_STEP)

    def point(self, t) -> BoundaryPoint:
        return BoundaryPoint(self.evaluate(t), self.form, check=False)

    def grid(self, grid=512):
        if self.sampled:
            grid = self.size
        return np.arange(grid) / grid

    def evaluate_grid(self, ts, workers=1):
        """(v, v') at every parameter, shapes (n, 3); workers > 1 spreads the grid over processes."""
        ts = list(ts)
        if workers <= 1 or len(ts) < 2 * workers:
            return self._evaluate_chunk(ts)

        logger.debug(f'evaluating {len(ts)} parameters on {workers} workers')
        with multiprocess.pool.Pool(workers) as pool:
            results = pool.map(self._evaluate_chunk, chunkify(ts, workers))
        values = np.concatenate([r[0] for r in results if len(r[0])])
        derivatives = np.concatenate([r[1] for r in results if len(r[1])])
        return values, derivatives

    def _evaluate_chunk(self, ts):
        values = np.array([self.evaluate(t) for t in ts], dtype=complex).reshape(-1, 3)
        derivatives = np.array([self.derivative(t) for t in ts], dtype=complex).reshape(-1, 3)
        return values, derivatives

    def transformed(self, g) -> Self:
        matrix = g.matrix
        ddv = (lambda t: matrix @ self.second_derivative(t)) if self.ddv is not None else None
        return CurveLift(lambda t: matrix @ self.evaluate(t),
                         lambda t: matrix @ self.derivative(t),
                         ddv,
                         form=self.form, sampled=self.sampled, name=self.name, size=self.size)

    def rescaled(self, scale: Callable, dscale: Callable) -> Self:
        """The lift t -> scale(t) v(t) of the same curve."""
        return CurveLift(lambda t: scale(t) * self.evaluate(t),
                         lambda t: dscale(t) * self.evaluate(t) + scale(t) * self.derivative(t),
                         None,
                         form=self.form, sampled=self.sampled, name=self.name, size=self.size)

    def __repr__(self):
        kind = 'sampled' if self.sampled else 'analytic'
        return f'CurveLift({self.name or "anonymous"}, {kind}, {self.form.value})'
