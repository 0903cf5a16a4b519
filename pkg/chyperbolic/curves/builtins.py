import numpy as np

from chyperbolic.boundary import eta
from chyperbolic.curves.lift import CurveLift
from chyperbolic.hermitian import CAYLEY, FormTag

TWO_PI = 2 * np.pi


def _ball_circle(last, name):
    """Siegel lift of the ball curve s -> (cos s, sin s, last) or (e^{is}, 0, last), s = 2 pi t."""
    def v(t):
        s = TWO_PI * t
        return CAYLEY @ np.array([np.cos(s), np.sin(s), last], dtype=complex)

    def dv(t):
        s = TWO_PI * t
        return CAYLEY @ (TWO_PI * np.array([-np.sin(s), np.cos(s), 0.0], dtype=complex))

    def ddv(t):
        s = TWO_PI * t
        return CAYLEY @ (-TWO_PI ** 2 * np.array([np.cos(s), np.sin(s), 0.0], dtype=complex))

    return CurveLift(v, dv, ddv, form=FormTag.FORM2, name=name)


def vertical_chain() -> CurveLift:
    """The chain {z2 = 0}, i.e. the v-axis of the Heisenberg chart closed up through infinity."""
    def v(t):
        return CAYLEY @ np.array([np.exp(1j * TWO_PI * t), 0.0, 1.0])

    def dv(t):
        return CAYLEY @ np.array([1j * TWO_PI * np.exp(1j * TWO_PI * t), 0.0, 0.0])

    def ddv(t):
        return CAYLEY @ np.array([-TWO_PI ** 2 * np.exp(1j * TWO_PI * t), 0.0, 0.0])

    return CurveLift(v, dv, ddv, form=FormTag.FORM2, name='vertical-chain')


def canonical_rcircle() -> CurveLift:
    """The real points of the ball boundary, (t, 0) in the Heisenberg chart."""
    return _ball_circle(1.0, 'canonical-rcircle')


def finite_rcircle() -> CurveLift:
    """The standard finite R-circle, through (i, 0) and (0, -1) in the Heisenberg chart."""
    return _ball_circle(-1j, 'finite-rcircle')


BUILTINS = {
    'vertical-chain': vertical_chain,
    'canonical-rcircle': canonical_rcircle,
    'finite-rcircle': finite_rcircle,
}


def builtin_curve(name) -> CurveLift:
    try:
        return BUILTINS[name]()
    except KeyError:
        raise KeyError(f'unknown builtin curve `{name}`, known: {", ".join(sorted(BUILTINS))}') from None


class TrigPolynomial:
    """zeta(t) = sum_k a_k exp(2 pi i k t) with exact derivatives."""

    def __init__(self, coefficients, frequencies):
        self.coefficients = np.asarray(coefficients, dtype=complex)
        self.frequencies = np.asarray(frequencies, dtype=float)

    @classmethod
    def random(cls, rng, modes=2, amplitude=0.5):
        frequencies = np.arange(-modes, modes + 1)
        coefficients = amplitude * (rng.standard_normal(len(frequencies)) + 1j * rng.standard_normal(len(frequencies)))
        coefficients /= np.sqrt(len(frequencies))
        return cls(coefficients, frequencies)

    def __call__(self, t, order=0):
        omega = 1j * TWO_PI * self.frequencies
        return complex(np.sum(self.coefficients * omega ** order * np.exp(omega * t)))

    def height_integral(self, t):
        """int_0^t eta(zeta, zeta') dt in closed form."""
        a = self.coefficients
        omega = TWO_PI * self.frequencies
        # zeta conj(zeta') = sum_jk a_j conj(a_k) (-i omega_k) e^{i (omega_j - omega_k) t}
        c = np.outer(a, np.conj(a) * (-1j * omega))
        gap = omega[:, None] - omega[None, :]
        same = np.isclose(gap, 0.0)
        safe = np.where(same, 1.0, gap)
        integrals = np.where(same, c * t, c * (np.exp(1j * safe * t) - 1.0) / (1j * safe))
        return 2.0 * float(np.imag(np.sum(integrals)))


def fourier_curve(rng, modes=2, amplitude=0.5, name='fourier') -> CurveLift:
    """A generic Heisenberg curve with trigonometric zeta and v."""
    zeta = TrigPolynomial.random(rng, modes, amplitude)
    height = TrigPolynomial.random(rng, modes, amplitude)
    return CurveLift.from_heisenberg(
        zeta=lambda t: zeta(t),
        dzeta=lambda t: zeta(t, 1),
        height=lambda t: height(t).real,
        dheight=lambda t: height(t, 1).real,
        ddzeta=lambda t: zeta(t, 2),
        ddheight=lambda t: height(t, 2).real,
        name=name,
    )


def legendrian_fourier_curve(rng, modes=2, amplitude=0.5, drift=0.0, name='legendrian') -> CurveLift:
    """
    The horizontal lift of a random trigonometric plane curve, v' = eta(zeta, zeta'), plus
    `drift` in v'. The contact defect |v' - eta(zeta, zeta')| is exactly |drift|.
    """
    zeta = TrigPolynomial.random(rng, modes, amplitude)
    start = float(rng.uniform(-0.5, 0.5))

    def dheight(t):
        return float(eta(zeta(t), zeta(t, 1))) + drift

    def ddheight(t):
        return float(eta(zeta(t), zeta(t, 2)))

    return CurveLift.from_heisenberg(
        zeta=lambda t: zeta(t),
        dzeta=lambda t: zeta(t, 1),
        height=lambda t: start + zeta.height_integral(t) + drift * t,
        dheight=dheight,
        ddzeta=lambda t: zeta(t, 2),
        ddheight=ddheight,
        name=name,
    )
