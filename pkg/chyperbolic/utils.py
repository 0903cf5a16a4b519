import numpy as np


def chunkify(ts, n):
    """Consecutive pieces of a parameter grid, one per worker, in grid order; empty pieces are dropped."""
    return [list(piece) for piece in np.array_split(np.asarray(ts, dtype=float), n) if len(piece)]


def make_rng(seed=None):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_vectors(rng, n, dim=3):
    """Complex Gaussian vectors, shape (n, dim)."""
    return rng.standard_normal((n, dim)) + 1j * rng.standard_normal((n, dim))


def complex_pair(z):
    z = complex(z)
    return [z.real, z.imag]


def from_pair(pair):
    re, im = pair
    return complex(float(re), float(im))
