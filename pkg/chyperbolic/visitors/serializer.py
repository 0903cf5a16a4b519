"""
Plain JSON values for geometric objects: complex numbers as [re, im], matrices row-major.
"""
import numpy as np
from bidict import bidict

from chyperbolic.utils import complex_pair

# JSON "kind" <-> class name
KINDS = bidict({
    'heisenberg': 'HeisenbergPoint',
    'boundary-point': 'BoundaryPoint',
    'point': 'ProjPoint',
    'map': 'ProjMap',
    'chain': 'Chain',
    'limit-sample': 'LimitSample',
    'limit-classification': 'LimitClassification',
    'curve-classification': 'CurveClassification',
})

# JSON "kind" <-> R-circle kind
RCIRCLE_KINDS = bidict({
    'rcircle-inf': 'infinite',
    'rcircle-fin': 'finite',
})


def vector_json(vector):
    return [complex_pair(z) for z in vector]


def matrix_json(matrix):
    return [[complex_pair(z) for z in row] for row in np.asarray(matrix)]


def real_json(value):
    """Floats for JSON; non-finite values as the strings "inf", "-inf" and "nan"."""
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    value = float(value)
    if np.isnan(value):
        return 'nan'
    if np.isinf(value):
        return 'inf' if value > 0 else '-inf'
    return value


class Serializer:
    def visit(self, node):
        raise NotImplementedError(f'cannot serialize {node.__class__.__name__}')

    def _kind(self, node):
        return {'kind': KINDS.inverse[node.__class__.__name__]}

    def visit_HeisenbergPoint(self, node):
        out = self._kind(node)
        if node.infinite:
            out['infinite'] = True
        else:
            out['zeta'] = complex_pair(node.zeta)
            out['v'] = node.v
        return out

    def visit_BoundaryPoint(self, node):
        out = self._kind(node)
        out['form'] = node.form.value
        out['vector'] = vector_json(node.vector)
        return out

    def visit_ProjPoint(self, node):
        out = self._kind(node)
        out['vector'] = vector_json(node.vector)
        return out

    def visit_ProjMap(self, node):
        out = self._kind(node)
        out['form'] = node.form.value if node.form is not None else None
        out['matrix'] = matrix_json(node.matrix)
        return out

    def visit_Chain(self, node):
        out = self._kind(node)
        out['form'] = node.form.value
        out['degenerate'] = node.degenerate
        out['polar'] = vector_json(node.point.vector)
        return out

    def visit_RCircle(self, node):
        out = {'kind': RCIRCLE_KINDS.inverse[node.kind]}
        if node.kind == node.INFINITE:
            out['base'] = complex_pair(node.base.zeta) + [float(node.base.v)]
            out['theta'] = node.theta
        else:
            out['matrix'] = matrix_json(node.matrix.matrix)
        return out

    def visit_LimitSample(self, node):
        out = self._kind(node)
        out['form'] = node.form.value
        out.update({k: real_json(v) if v is not None else None for k, v in node.metadata().items()})
        return out

    def _classification(self, node):
        out = self._kind(node)
        out['verdict'] = node.verdict.value
        out['residuals'] = {k: real_json(v) for k, v in node.residuals.items()}
        out['tol'] = node.tol
        out['fitted'] = node.fitted.accept(self) if node.fitted is not None else None
        return out

    def visit_LimitClassification(self, node):
        return self._classification(node)

    def visit_CurveClassification(self, node):
        out = self._classification(node)
        out['grid'] = node.grid
        return out


def to_json(node):
    return node.accept(Serializer())
