import datetime
import traceback

import multiprocess
import numpy as np
from bidict import bidict

from chyperbolic.boundary import BoundaryPoint, HeisenbergPoint, heis_embed, heis_project, to_form, vectors_to_form
from chyperbolic.config import RunConfig
from chyperbolic.curves.classifier import CurveClassification, classify_curve
from chyperbolic.errors import GeometryError, SpecSyntaxError
from chyperbolic.hermitian import FormTag
from chyperbolic.limitset.classifier import classify_limit_sample
from chyperbolic.limitset.sampler import GroupPresentation, LimitSample, invariance_defect, sample_limit_set
from chyperbolic.logger import logger
from chyperbolic.objects.chain import Chain, chain_vectors
from chyperbolic.objects.rcircle import RCircle
from chyperbolic.objects.triples import cartan_invariant, triple_class
from chyperbolic.projective import ProjMap, canonical
from chyperbolic.spec_parser import literal_parser, parse_complex, parse_curve, parse_heisenberg_row
from chyperbolic.verifiers.suites import run_suites
from chyperbolic.visitors.serializer import real_json, to_json
from chyperbolic.visitors.transformer import transform

CHARTS = bidict({'ball': FormTag.FORM1, 'siegel': FormTag.FORM2})
HEISENBERG = 'heisenberg'


def chart_names():
    return sorted(CHARTS) + [HEISENBERG]


class ConvertedRow:
    def __init__(self, index, cells=None, error=None):
        self.index = index
        self.cells = cells
        self.error = error

    @property
    def ok(self):
        return self.error is None


class Environment:
    def __init__(self, config: RunConfig = None):
        self.config = config if config is not None else RunConfig()
        self.stats = {}

    # conversion

    def read_point(self, cells, chart):
        """One input row in `chart` as a HeisenbergPoint or a BoundaryPoint."""
        if chart == HEISENBERG:
            if len(cells) == 1:
                return literal_parser().parse_heisenberg(cells[0])
            return parse_heisenberg_row(cells)
        form = CHARTS[chart]
        if len(cells) == 1:
            vector = literal_parser().parse_point(cells[0])
        elif len(cells) == 3:
            vector = np.array([parse_complex(c) for c in cells])
        elif len(cells) == 6:
            values = [float(c) for c in cells]
            vector = np.array(values[0::2]) + 1j * np.array(values[1::2])
        else:
            raise SpecSyntaxError(','.join(cells))
        return BoundaryPoint(vector, form, check=False)

    def write_point(self, point, chart):
        if chart == HEISENBERG:
            return point.as_row()
        vector = point.vector
        # chart representative with last coordinate 1 when there is one
        if abs(vector[2]) > 1e-8 * np.linalg.norm(vector):
            vector = vector / vector[2]
        else:
            vector = canonical(vector)
        cells = []
        for z in vector:
            cells.extend([repr(float(z.real)), repr(float(z.imag))])
        return cells

    def convert_point(self, point, source, target):
        if source == HEISENBERG:
            point = heis_embed(point)
        if target == HEISENBERG:
            return heis_project(point, tol=self.config.kernel_tol)
        return to_form(point, CHARTS[target])

    def convert(self, rows, source, target):
        """Converts every row it can; failures become per-row error records."""
        for chart in (source, target):
            if chart not in chart_names():
                raise SpecSyntaxError(f'chart `{chart}` is not one of {", ".join(chart_names())}')
        out = []
        for index, cells in enumerate(rows):
            try:
                point = self.read_point(cells, source)
                out.append(ConvertedRow(index, self.write_point(self.convert_point(point, source, target), target)))
            except (GeometryError, SpecSyntaxError, ValueError) as e:
                logger.error(f'row {index}: {e}')
                out.append(ConvertedRow(index, error=str(e)))
        return out

    # classification

    def classify_curve(self, spec, g: ProjMap = None) -> CurveClassification:
        """Classifies the curve of `spec`, or its image under `g` when one is given."""
        c = parse_curve(spec)
        if g is not None:
            c = self.transform(g, c)
        return classify_curve(c,
                              grid=self.config.samples,
                              tol=self.config.classifier_tol,
                              sampled_tol=self.config.sampled_tol,
                              triple_samples=self.config.triple_samples,
                              seed=self.config.seed,
                              workers=self.config.workers)

    def limitset(self, G: GroupPresentation):
        """(LimitSample, LimitClassification); with a time budget the sampler runs in a child process."""
        if self.config.time_budget <= 0:
            sample = self._sample(G)
        else:
            sample = self._sample_with_budget(G)
        sample.invariance = invariance_defect(sample, G)
        logger.debug(f'sample moves by at most {sample.invariance:.3g} under the generators')
        classification = classify_limit_sample(sample,
                                               tol=self.config.classifier_tol,
                                               triple_samples=self.config.triple_samples,
                                               triple_fraction=self.config.triple_fraction,
                                               seed=self.config.seed)
        return sample, classification

    def _sample(self, G):
        start = datetime.datetime.now()
        sample = sample_limit_set(G,
                                  max_len=self.config.max_word_length,
                                  dedup_tol=self.config.dedup_tol,
                                  depth_tol=self.config.depth_tol)
        self.stats['sampling_time'] = (datetime.datetime.now() - start).total_seconds()
        return sample

    def _sample_with_budget(self, G):
        def task(ret):
            try:
                ret['sample'] = self._sample(G)
                ret['status'] = 'OK'
            except Exception as e:
                logger.error(''.join(traceback.format_tb(e.__traceback__)) + str(e))
                ret['error'] = str(e)
                ret['status'] = 'ERR'

        with multiprocess.Manager() as manager:
            ret = manager.dict()
            ret['status'] = None

            process = multiprocess.Process(target=task, args=(ret,))
            process.start()
            start = datetime.datetime.now()
            process.join(self.config.time_budget)

            if process.is_alive():
                process.terminate()
                ret['status'] = 'TMO'
            self.stats['sampling_time'] = (datetime.datetime.now() - start).total_seconds()
            self.stats['status'] = ret['status']

            if ret['status'] == 'TMO':
                raise TimeoutError(f'limit set sampling exceeded {self.config.time_budget}s')
            if ret['status'] != 'OK':
                raise GeometryError(ret.get('error', 'sampling process failed'))
            return ret['sample']

    def verify(self, name):
        return run_suites(name, self.config)

    def cartan(self, points):
        """Cartan invariant and triple class of three Heisenberg or boundary points."""
        if len(points) != 3:
            raise SpecSyntaxError(f'expected three points, got {len(points)}')
        boundary = [heis_embed(p) if isinstance(p, HeisenbergPoint) else to_form(p, FormTag.FORM2) for p in points]
        value = cartan_invariant(*boundary, tol=self.config.kernel_tol)
        return value, triple_class(value, self.config.classifier_tol)

    def transform(self, g: ProjMap, node):
        """`node` pushed through `g`; ball-model maps act on Siegel-model objects and back."""
        return transform(g, node)

    def rcircle(self, spec: RCircle, samples=None):
        samples = samples or self.config.samples
        vectors = spec.vectors(samples)
        return [heis_project(BoundaryPoint(v, FormTag.FORM2, check=False), tol=1e-8) for v in vectors]

    def chain(self, spec: Chain, samples=None):
        """Heisenberg points swept along a chain; a vertical chain passes through infinity."""
        samples = samples or self.config.samples
        vectors = vectors_to_form(chain_vectors(spec, samples), spec.form, FormTag.FORM2)
        return [heis_project(BoundaryPoint(v, FormTag.FORM2, check=False), tol=1e-8) for v in vectors]

    # reports

    def serialize(self, node):
        return to_json(node)

    def sidecar_config(self):
        return {k: real_json(v) if isinstance(v, float) else v for k, v in self.config.as_dict().items()}

    def sidecar(self, classification, sample: LimitSample = None):
        """JSON sidecar: verdict, residuals, the fitted object and every setting used."""
        out = to_json(classification)
        out['config'] = self.sidecar_config()
        if sample is not None:
            out['sample'] = to_json(sample)
        return out

    def __repr__(self):
        return f'Environment({self.config})'
