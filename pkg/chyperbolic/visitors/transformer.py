from chyperbolic.boundary import heis_embed, heis_project
from chyperbolic.errors import FormMismatchError
from chyperbolic.hermitian import FormTag
from chyperbolic.isometries import cayley_conjugate
from chyperbolic.projective import ProjMap


class IsometryTransformer:
    """Pushes geometric objects through one isometry, converting it to the object's model as needed."""

    def __init__(self, g: ProjMap):
        self.g = g

    def _in(self, form):
        if self.g.form is None or self.g.form is form:
            return self.g
        return cayley_conjugate(self.g, form)

    def visit(self, node):
        raise FormMismatchError(f'no action on {node.__class__.__name__}')

    def visit_BoundaryPoint(self, node):
        return node.mapped(self._in(node.form).matrix)

    def visit_HeisenbergPoint(self, node):
        return heis_project(self.visit_BoundaryPoint(heis_embed(node)), tol=1e-8)

    def visit_Chain(self, node):
        return node.transformed(self._in(node.form))

    def visit_RCircle(self, node):
        return node.transformed(self._in(FormTag.FORM2))

    def visit_CurveLift(self, node):
        return node.transformed(self._in(node.form))

    def visit_ProjMap(self, node):
        h = self._in(node.form)
        return node.conjugated_by(h)


def transform(g: ProjMap, node):
    return node.accept(IsometryTransformer(g))
