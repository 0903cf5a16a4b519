"""
Limit sets of finitely generated groups, sampled by breadth-first enumeration of reduced words
applied to an interior base point.
"""
from typing import List, Optional

import numpy as np
from scipy.spatial import cKDTree

from chyperbolic.boundary import BoundaryPoint, ball_real, heis_coordinates, radial_project, vectors_to_form
from chyperbolic.errors import GeometryError, NotNegativeError, NotUnitaryError
from chyperbolic.hermitian import FormTag, SignClass, herm_norm2, sign_class
from chyperbolic.logger import logger
from chyperbolic.objects.node import Node
from chyperbolic.projective import ProjMap

# enumeration stops growing once a level holds more words than this
MAX_FRONTIER = 2_000_000


class GroupPresentation(Node):
    """
    Generators of a group of isometries. Letters interleave generators and inverses,
    g0, g0^-1, g1, g1^-1, ..., so letter j cancels against letter j ^ 1.
    """

    def __init__(self, generators: List[ProjMap], labels: Optional[List[str]] = None, form=FormTag.FORM2,
                 tol=1e-9):
        super().__init__()
        if len(generators) == 0:
            raise GeometryError('no generators')
        self.form = FormTag.parse(form)
        for index, g in enumerate(generators):
            if g.form is not None and g.form is not self.form:
                raise NotUnitaryError(f'expected a {self.form.value} matrix, got {g.form.value}', index)
            residual = g.unitary_residual(self.form)
            if residual > tol:
                raise NotUnitaryError(f'form-unitarity residual {residual:.3g}', index)
        self.generators = [ProjMap(g.matrix, self.form) for g in generators]
        self.labels = list(labels) if labels is not None else [f'g{i}' for i in range(len(generators))]
        if len(self.labels) != len(self.generators):
            raise ValueError(f'{len(self.labels)} labels for {len(self.generators)} generators')

    @property
    def letters(self):
        out = []
        for g in self.generators:
            out.extend([g, g.inverse()])
        return out

    @property
    def letter_names(self):
        out = []
        for label in self.labels:
            out.extend([label, f'{label}^-1'])
        return out

    def words(self, max_len):
        """Reduced words of length 1..max_len in enumeration order, as tuples of letter indices."""
        level = [(j,) for j in range(2 * len(self.generators))]
        for _ in range(max_len):
            yield from level
            level = [(a,) + w for a in range(2 * len(self.generators)) for w in level if w[0] != a ^ 1]

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        return f'GroupPresentation({", ".join(self.labels)}, {self.form.value})'


class LimitSample(Node):
    def __init__(self, vectors, form, max_len, dedup_tol, depth_tol, count_before, truncated=False):
        super().__init__()
        self.vectors = np.asarray(vectors, dtype=complex).reshape(-1, 3)
        self.form = FormTag.parse(form)
        self.max_len = max_len
        self.dedup_tol = dedup_tol
        self.depth_tol = depth_tol
        self.count_before = count_before
        self.truncated = truncated
        # Hausdorff distance to the sample's images under the generators, once measured
        self.invariance = None

    @property
    def count_after(self):
        return len(self.vectors)

    def __len__(self):
        return len(self.vectors)

    @property
    def points(self):
        return [BoundaryPoint(v, self.form, check=False) for v in self.vectors]

    def heisenberg(self):
        """Chart coordinates (zeta, v); nan marks the point at infinity."""
        return heis_coordinates(vectors_to_form(self.vectors, self.form, FormTag.FORM2))

    def metadata(self):
        return {
            'max_word_length': self.max_len,
            'dedup_tol': self.dedup_tol,
            'depth_tol': self.depth_tol,
            'count_before_dedup': self.count_before,
            'count_after_dedup': self.count_after,
            'truncated': self.truncated,
            'invariance_defect': self.invariance,
        }

    def __repr__(self):
        return f'LimitSample({self.count_after} points from {self.count_before}, max_len={self.max_len})'


def default_base(form):
    """The centre of the ball, written in `form`."""
    return vectors_to_form(np.array([0.0, 0.0, 1.0], dtype=complex), FormTag.FORM1, form)


def depth(vectors, form):
    """|<x, x>| / |x|^2, zero exactly on the boundary."""
    return np.abs(herm_norm2(form, vectors)) / np.real(np.einsum('...i,...i->...', np.conj(vectors), vectors))


def enumerate_orbit(G: GroupPresentation, max_len, base):
    """
    Yields (level, vectors) for word lengths 1..max_len. A word a w is evaluated as L_a (w base),
    so every level needs one matrix product per letter; vectors are kept at unit norm.
    """
    letters = [g.matrix for g in G.letters]
    n = len(letters)
    x = np.asarray(base, dtype=complex)[None, :] / np.linalg.norm(base)
    first = np.full(1, -1)
    for level in range(1, max_len + 1):
        blocks, firsts = [], []
        for a in range(n):
            keep = first != (a ^ 1)
            if not np.any(keep):
                continue
            y = x[keep] @ letters[a].T
            blocks.append(y / np.linalg.norm(y, axis=-1, keepdims=True))
            firsts.append(np.full(len(y), a))
        x = np.concatenate(blocks)
        first = np.concatenate(firsts)
        yield level, x
        if len(x) * (n - 1) > MAX_FRONTIER and level < max_len:
            logger.warning(f'word enumeration stopped at length {level}: next level exceeds {MAX_FRONTIER} words')
            return


def greedy_dedup(coordinates, tol):
    """Indices kept by scanning in order and dropping anything within `tol` of an earlier kept point."""
    if len(coordinates) == 0:
        return np.zeros(0, dtype=int)
    tree = cKDTree(coordinates)
    suppressed = np.zeros(len(coordinates), dtype=bool)
    kept = []
    for i in range(len(coordinates)):
        if suppressed[i]:
            continue
        kept.append(i)
        suppressed[tree.query_ball_point(coordinates[i], tol)] = True
    return np.asarray(kept, dtype=int)


def sample_limit_set(G: GroupPresentation,
                     max_len=12,
                     base=None,
                     dedup_tol=1e-3,
                     depth_tol=1e-3) -> LimitSample:
    form = G.form
    base = default_base(form) if base is None else np.asarray(getattr(base, 'vector', base), dtype=complex)
    if sign_class(form, base) is not SignClass.NEGATIVE:
        raise NotNegativeError(f'base point {base} is not interior')

    deep = []
    truncated = False
    reached = 0
    for level, x in enumerate_orbit(G, max_len, base):
        reached = level
        near = x[depth(x, form) <= depth_tol]
        if len(near):
            deep.append(near)
        logger.debug(f'length {level}: {len(x)} words, {len(near)} near the boundary')
    if reached < max_len:
        truncated = True

    if not deep:
        logger.info('no orbit point came near the boundary')
        return LimitSample(np.zeros((0, 3)), form, max_len, dedup_tol, depth_tol, 0, truncated)

    candidates = radial_project(np.concatenate(deep), form)
    kept = greedy_dedup(ball_real(candidates, form), dedup_tol)
    logger.info(f'limit set sample: {len(kept)} points from {len(candidates)} deep words')
    return LimitSample(candidates[kept], form, max_len, dedup_tol, depth_tol, len(candidates), truncated)


def invariance_defect(S: LimitSample, G: GroupPresentation) -> float:
    """
    Largest Hausdorff chordal distance between the sample and its image under a letter of G,
    the image deduplicated at the sample's tolerance. Zero for an exactly invariant sample.
    """
    if len(S) == 0:
        return 0.0
    coordinates = ball_real(S.vectors, S.form)
    tree = cKDTree(coordinates)
    worst = 0.0
    for g in G.letters:
        images = ball_real(S.vectors @ g.matrix.T, S.form)
        images = images[greedy_dedup(images, S.dedup_tol)]
        forward, _ = tree.query(images)
        backward, _ = cKDTree(images).query(coordinates)
        worst = max(worst, float(np.max(forward)), float(np.max(backward)))
    return worst
