"""
Readers for everything the command line consumes: point literals, curve specs, group files,
chain and R-circle documents, matrices and Heisenberg CSV rows.
"""
import cmath
import math
from functools import cache

import numpy as np
import ujson
from lark import Lark, Transformer
from lark.exceptions import LarkError

from chyperbolic.boundary import HeisenbergPoint
from chyperbolic.curves.builtins import builtin_curve
from chyperbolic.curves.lift import CurveLift
from chyperbolic.errors import SpecSyntaxError
from chyperbolic.hermitian import FormTag
from chyperbolic.limitset.sampler import GroupPresentation
from chyperbolic.objects.chain import Chain
from chyperbolic.objects.rcircle import RCircle
from chyperbolic.projective import ProjMap
from chyperbolic.utils import from_pair
from chyperbolic.visitors.serializer import RCIRCLE_KINDS

HEADER = ['zeta_re', 'zeta_im', 'v']


class LiteralVisitor(Transformer):
    def point(self, tree):
        return np.array([complex(z) for z in tree], dtype=complex)

    def heisenberg(self, tree):
        zeta, v = tree
        if abs(complex(v).imag) > 0.0:
            raise ValueError(f'height {v} is not real')
        return HeisenbergPoint(zeta, complex(v).real)

    def infinity(self, tree):
        return HeisenbergPoint.infinity()

    def add(self, tree):
        return tree[0] + tree[1]

    def sub(self, tree):
        return tree[0] - tree[1]

    def mul(self, tree):
        return tree[0] * tree[1]

    def div(self, tree):
        return tree[0] / tree[1]

    def neg(self, tree):
        return -tree[0]

    def number(self, tree):
        return complex(float(tree[0]))

    def imaginary(self, tree):
        return complex(0.0, float(tree[0]))

    def unit(self, tree):
        return 1j

    def sqrt(self, tree):
        return cmath.sqrt(tree[0])

    def exp(self, tree):
        return cmath.exp(tree[0])

    def pi(self, tree):
        return complex(math.pi)


class LiteralParser:
    """
    Literals in the notation of the command line:

        [-1 : sqrt(2) : 1]      homogeneous point
        (1+2i, 0.5)             Heisenberg point (zeta, v)
        inf                     the point at infinity of the Heisenberg chart
        exp(i*pi/4)/2           complex number
    """

    def __init__(self):
        self._visitor = LiteralVisitor()
        self._parser = Lark(
            r'''
            ?literal : point
                     | heisenberg
                     | infinity
                     | expr

            point : "[" expr ":" expr ":" expr "]"
            heisenberg : "(" expr "," expr ")"
            infinity : "inf" | "INF" | "oo"

            ?expr : term
                  | expr "+" term   -> add
                  | expr "-" term   -> sub
            ?term : factor
                  | term "*" factor -> mul
                  | term "/" factor -> div
            ?factor : atom
                    | "-" factor    -> neg
                    | "+" factor
            ?atom : NUMBER              -> number
                  | NUMBER IMAG         -> imaginary
                  | IMAG                -> unit
                  | "sqrt" "(" expr ")" -> sqrt
                  | "exp" "(" expr ")"  -> exp
                  | "pi"                -> pi
                  | "(" expr ")"

            IMAG : "i" | "j"

            %import common.NUMBER
            %import common.WS
            %ignore WS
            ''',
            start='literal')

    def parse(self, text):
        try:
            return self._visitor.transform(self._parser.parse(text))
        except (LarkError, ValueError, ZeroDivisionError):
            raise SpecSyntaxError(text) from None

    def parse_complex(self, text) -> complex:
        value = self.parse(text)
        if not isinstance(value, complex):
            raise SpecSyntaxError(text)
        return value

    def parse_point(self, text) -> np.ndarray:
        value = self.parse(text)
        if not isinstance(value, np.ndarray):
            raise SpecSyntaxError(text)
        return value

    def parse_heisenberg(self, text) -> HeisenbergPoint:
        value = self.parse(text)
        if not isinstance(value, HeisenbergPoint):
            raise SpecSyntaxError(text)
        return value


@cache
def literal_parser() -> LiteralParser:
    return LiteralParser()


def load_json(source):
    """A JSON document from a path, an open file or a string that starts with `{` or `[`."""
    try:
        if hasattr(source, 'read'):
            return ujson.loads(source.read())
        text = str(source)
        if text.lstrip().startswith(('{', '[')):
            return ujson.loads(text)
        with open(text, 'r') as reader:
            return ujson.loads(reader.read())
    except ValueError:
        raise SpecSyntaxError(str(source)[:80]) from None


def parse_complex(value) -> complex:
    """[re, im] pairs, plain numbers, or literal strings such as "1-2i"."""
    if isinstance(value, str):
        return literal_parser().parse_complex(value)
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise SpecSyntaxError(str(value))
        return from_pair(value)
    if isinstance(value, (int, float)):
        return complex(value)
    raise SpecSyntaxError(str(value))


def parse_matrix(value) -> np.ndarray:
    """Row-major 3x3 complex matrix, either 3 rows of 3 entries or 9 entries."""
    try:
        if len(value) == 3 and all(isinstance(row, (list, tuple)) and len(row) == 3 for row in value):
            entries = [entry for row in value for entry in row]
        else:
            entries = list(value)
        if len(entries) != 9:
            raise SpecSyntaxError(f'{len(entries)} matrix entries')
        return np.array([parse_complex(entry) for entry in entries], dtype=complex).reshape(3, 3)
    except TypeError:
        raise SpecSyntaxError(str(value)[:80]) from None


def parse_map(value, form=None) -> ProjMap:
    if isinstance(value, dict):
        if 'matrix' not in value:
            raise SpecSyntaxError('a map document needs a "matrix"')
        return ProjMap(parse_matrix(value['matrix']), FormTag.parse(value.get('form', form or 'form2')))
    return ProjMap(parse_matrix(value), FormTag.parse(form or 'form2'))


def parse_group(data) -> GroupPresentation:
    if not isinstance(data, dict) or 'generators' not in data:
        raise SpecSyntaxError('group files need a "generators" list')
    form = FormTag.parse(data.get('form', 'form2'))
    generators = [parse_map(g, form) for g in data['generators']]
    return GroupPresentation(generators, data.get('labels'), form)


def parse_curve(data) -> CurveLift:
    if not isinstance(data, dict):
        raise SpecSyntaxError(str(data)[:80])
    kind = data.get('kind')
    if kind == 'builtin':
        try:
            return builtin_curve(data['name'])
        except KeyError as err:
            raise SpecSyntaxError(str(err)) from None
    if kind == 'heis-samples':
        rows = data.get('points', [])
        try:
            points = [(complex(float(re), float(im)), float(v)) for re, im, v in rows]
        except (TypeError, ValueError):
            raise SpecSyntaxError('heis-samples points must be [re, im, v] rows') from None
        if len(points) < 3:
            raise SpecSyntaxError('heis-samples needs at least three points')
        try:
            return CurveLift.from_samples(points, name=data.get('name', 'heis-samples'))
        except ValueError as err:
            raise SpecSyntaxError(str(err)) from None
    raise SpecSyntaxError(f'unknown curve kind `{kind}`')


def parse_chain(data) -> Chain:
    """`{"kind": "chain", "polar": [...]}` with optional `form` (default form2) and `degenerate`."""
    if not isinstance(data, dict) or data.get('kind') != 'chain':
        raise SpecSyntaxError(str(data)[:80])
    polar = data.get('polar')
    if not isinstance(polar, (list, tuple)) or len(polar) != 3:
        raise SpecSyntaxError('a chain needs a polar vector of three entries')
    vector = np.array([parse_complex(z) for z in polar], dtype=complex)
    return Chain(vector, FormTag.parse(data.get('form', 'form2')), degenerate=bool(data.get('degenerate', False)))


def parse_rcircle(data) -> RCircle:
    """`{"kind": "rcircle-inf", "base": [re, im, v], "theta": x}` or `{"kind": "rcircle-fin", "matrix": [...]}`."""
    if not isinstance(data, dict) or data.get('kind') not in RCIRCLE_KINDS:
        raise SpecSyntaxError(str(data)[:80])
    kind = RCIRCLE_KINDS[data['kind']]
    if kind == RCircle.FINITE:
        if 'matrix' not in data:
            raise SpecSyntaxError('a finite R-circle needs a carrier matrix')
        return RCircle(kind, matrix=ProjMap(parse_matrix(data['matrix']), FormTag.FORM2))
    try:
        re, im, v = data.get('base', [0.0, 0.0, 0.0])
        return RCircle(kind, base=HeisenbergPoint(complex(float(re), float(im)), float(v)),
                       theta=float(data.get('theta', 0.0)))
    except (TypeError, ValueError):
        raise SpecSyntaxError('an infinite R-circle needs base [re, im, v] and a real theta') from None


def parse_heisenberg_row(row) -> HeisenbergPoint:
    """One CSV row `zeta_re,zeta_im,v`, or `inf,,` for infinity."""
    cells = [c.strip() for c in row]
    if len(cells) >= 1 and cells[0].lower() == 'inf' and all(c == '' for c in cells[1:]):
        return HeisenbergPoint.infinity()
    if len(cells) != 3:
        raise SpecSyntaxError(','.join(row))
    try:
        return HeisenbergPoint(complex(float(cells[0]), float(cells[1])), float(cells[2]))
    except ValueError:
        raise SpecSyntaxError(','.join(row)) from None
