import csv
import io
import math

import numpy as np
import pytest
import ujson

from chyperbolic.boundary import heis_translation
from chyperbolic.cli import main
from chyperbolic.visitors.serializer import to_json

CYCLIC = '{"generators": [[[0.5, 0, 0], [0, 1, 0], [0, 0, 2]]], "labels": ["a"]}'
COSH = '(exp(1.5)+exp(-1.5))/2'
SINH = '(exp(1.5)-exp(-1.5))/2'
# two ball boosts along perpendicular axes of the disc {z2 = 0}
BLOCK = ujson.dumps({
    'form': 'form1',
    'labels': ['a', 'b'],
    'generators': [
        [[COSH, 0, SINH], [0, 1, 0], [SINH, 0, COSH]],
        [[COSH, 0, 'i*' + SINH], [0, 1, 0], ['-i*' + SINH, 0, COSH]],
    ],
})
TRANSLATION = ujson.dumps(to_json(heis_translation(1.0, 0.0)))


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def csv_rows(text):
    return list(csv.reader(io.StringIO(text)))


def tilted_circle_spec(n=200):
    ts = 2 * math.pi * np.arange(n) / n
    points = [[math.cos(t), math.sin(t), math.sin(t)] for t in ts]
    return ujson.dumps({'kind': 'heis-samples', 'points': points})


def test_usage_errors(capsys):
    assert main([]) == 2
    assert main(['nonsense']) == 2
    assert main(['convert', '--from', 'klein', '--to', 'ball']) == 2
    assert main(['--help']) == 0
    capsys.readouterr()


def test_convert_heisenberg_to_siegel(capsys):
    code, out = run(capsys, 'convert', '--from', 'heisenberg', '--to', 'siegel', '(1, 0)')
    assert code == 0
    header, row = csv_rows(out)
    assert header == ['z1_re', 'z1_im', 'z2_re', 'z2_im', 'z3_re', 'z3_im']
    assert [float(c) for c in row] == pytest.approx([-1, 0, math.sqrt(2), 0, 1, 0])


def test_convert_infinity(capsys):
    code, out = run(capsys, 'convert', '--from', 'siegel', '--to', 'heisenberg', '[1:0:0]')
    assert code == 0
    assert csv_rows(out) == [['zeta_re', 'zeta_im', 'v'], ['inf', '', '']]


def test_convert_reports_rows_it_cannot_convert(capsys):
    code, out = run(capsys, 'convert', '--from', 'ball', '--to', 'heisenberg', '[1:0:0]')
    assert code == 0
    assert csv_rows(out) == [['zeta_re', 'zeta_im', 'v']]

    code, out = run(capsys, 'convert', '--from', 'ball', '--to', 'heisenberg', '--format', 'json',
                    '[1:0:0]', '[0:0:1]', '[1:0:1]')
    records = ujson.loads(out)
    assert [r['row'] for r in records] == [0, 1, 2]
    assert 'NotNullError' in records[0]['error'] and 'NotNullError' in records[1]['error']
    assert records[2]['cells'] == ['inf', '', '']


def test_convert_csv_input_file(capsys, tmp_path):
    source = tmp_path / 'points.csv'
    source.write_text('zeta_re,zeta_im,v\n0.5,-1,2\ninf,,\n# comment\n')
    output = tmp_path / 'siegel.csv'
    assert main(['convert', '--from', 'heisenberg', '--to', 'siegel', '--input', str(source),
                 '--output', str(output)]) == 0
    rows = csv_rows(output.read_text())
    assert len(rows) == 3
    assert [float(c) for c in rows[2]] == pytest.approx([1, 0, 0, 0, 0, 0])
    capsys.readouterr()


def test_verify(capsys):
    code, out = run(capsys, 'verify', 'cayley', '--scale', '0.01')
    assert code == 0
    assert 'cayley' in out and 'pass' in out

    code, out = run(capsys, 'verify', 'curvature', '--format', 'json')
    assert code == 0
    document = ujson.loads(out)
    assert document['suites'][0]['suite'] == 'curvature'
    assert document['suites'][0]['passed']

    code, _ = run(capsys, 'verify', 'bogus')
    assert code == 2


def test_limitset_cyclic_group(capsys, tmp_path):
    group = tmp_path / 'group.json'
    group.write_text(CYCLIC)
    output = tmp_path / 'points.csv'
    code, _ = run(capsys, 'limitset', str(group), '--max-word-length', '30', '--output', str(output))
    assert code == 0
    rows = csv_rows(output.read_text())
    assert len(rows) == 3
    assert ['inf', '', ''] in rows[1:]

    sidecar = ujson.loads((tmp_path / 'points.csv.json').read_text())
    assert sidecar['verdict'] == 'ELEMENTARY'
    assert sidecar['config']['max_word_length'] == 30
    assert sidecar['sample']['count_after_dedup'] == 2


def test_limitset_json_output(capsys):
    code, out = run(capsys, 'limitset', CYCLIC, '--max-word-length', '20', '--format', 'json')
    assert code == 0
    document = ujson.loads(out)
    assert document['verdict'] == 'ELEMENTARY'
    assert len(document['points']) == 2


def test_limitset_errors(capsys, tmp_path):
    assert main(['limitset', '{"generators": []}']) == 2
    assert main(['limitset', '{"generators": [[[2, 0, 0], [0, 1, 0], [0, 0, 2]]]}']) == 2
    assert main(['limitset', '{"generators": ']) == 2
    assert main(['limitset', str(tmp_path / 'missing.json')]) == 2
    capsys.readouterr()


def test_classify_curve(capsys):
    code, out = run(capsys, 'classify-curve', '{"kind": "builtin", "name": "vertical-chain"}', '--samples', '256')
    assert code == 0
    document = ujson.loads(out)
    assert document['verdict'] == 'CHAIN'
    assert document['fitted']['kind'] == 'chain'
    assert document['config']['samples'] == 256


def test_classify_sampled_curve(capsys, tmp_path):
    spec = tmp_path / 'tilted.json'
    spec.write_text(tilted_circle_spec())
    code, out = run(capsys, 'classify-curve', '--input', str(spec))
    assert code == 0
    assert ujson.loads(out)['verdict'] == 'NEITHER'


def test_classify_curve_errors(capsys):
    assert main(['classify-curve', '{"kind": "builtin", "name": "nope"}']) == 2
    assert main(['classify-curve', '{"kind": "heis-samples", "points": [[0, 0, 0]]}']) == 2
    capsys.readouterr()


def test_cartan(capsys):
    code, out = run(capsys, 'cartan', '(0, 0)', '(1, 0)', 'inf')
    assert code == 0
    header, row = csv_rows(out)
    assert header == ['cartan', 'class']
    assert abs(float(row[0])) < 1e-12
    assert row[1] == 'rcircle'

    code, out = run(capsys, 'cartan', '(0, 0)', '(0, 1)', 'inf', '--format', 'json')
    document = ujson.loads(out)
    assert document['class'] == 'chain'
    assert document['cartan'] == pytest.approx(math.pi / 2)

    code, _ = run(capsys, 'cartan', '(0, 0)', '(1, 0)')
    assert code == 2
    code, _ = run(capsys, 'cartan', '(0, 0)', '(0, 0)', 'inf')
    assert code == 2


def test_rcircle(capsys):
    code, out = run(capsys, 'rcircle', '--samples', '8')
    assert code == 0
    rows = csv_rows(out)
    assert len(rows) == 9
    assert rows[1] == ['inf', '', '']
    assert all(float(r[2]) == pytest.approx(0.0, abs=1e-12) for r in rows[2:])


def test_rcircle_finite(capsys):
    code, out = run(capsys, 'rcircle', '--center', '(0, 0)', '--samples', '16', '--format', 'json')
    assert code == 0
    document = ujson.loads(out)
    assert document['rcircle']['kind'] == 'rcircle-fin'
    assert len(document['rcircle']['matrix']) == 3
    assert len(document['points']) == 16


def test_config_file(capsys, tmp_path):
    config = tmp_path / 'run.yaml'
    config.write_text('classifier_tol: 1e-10\nsamples: 8\n')
    code, out = run(capsys, 'rcircle', '--config', str(config))
    assert code == 0
    assert len(csv_rows(out)) == 9

    config.write_text('samples: -3\n')
    assert main(['rcircle', '--config', str(config)]) == 2
    config.write_text('sample_count: 3\n')
    assert main(['rcircle', '--config', str(config)]) == 2
    capsys.readouterr()


def test_limitset_block_group_is_a_chain(capsys, tmp_path):
    output = tmp_path / 'block.csv'
    code, _ = run(capsys, 'limitset', BLOCK, '--max-word-length', '8', '--output', str(output))
    assert code == 0
    sidecar = ujson.loads((tmp_path / 'block.csv.json').read_text())
    assert sidecar['verdict'] == 'CHAIN'
    assert sidecar['residuals']['chain'] <= 1e-6
    assert sidecar['fitted']['kind'] == 'chain'
    rows = csv_rows(output.read_text())[1:]
    assert len(rows) > 10
    assert all(r[0] == 'inf' or math.hypot(float(r[0]), float(r[1])) < 1e-6 for r in rows)


def test_limitset_output_is_reproducible(capsys, tmp_path):
    output = tmp_path / 'block.csv'
    sidecar = tmp_path / 'block.csv.json'
    argv = ['limitset', BLOCK, '--max-word-length', '6', '--output', str(output)]
    assert main(argv) == 0
    first = output.read_bytes(), sidecar.read_bytes()
    assert main(argv) == 0
    assert (output.read_bytes(), sidecar.read_bytes()) == first

    spec = '{"kind": "builtin", "name": "finite-rcircle"}'
    assert run(capsys, 'classify-curve', spec) == run(capsys, 'classify-curve', spec)


def test_chain(capsys):
    code, out = run(capsys, 'chain', '{"kind": "chain", "polar": [0, 1, 0]}', '--samples', '8')
    assert code == 0
    rows = csv_rows(out)
    assert rows[0] == ['zeta_re', 'zeta_im', 'v'] and len(rows) == 9
    assert all(r[0] == 'inf' or math.hypot(float(r[0]), float(r[1])) < 1e-9 for r in rows[1:])


def test_chain_with_a_map(capsys):
    code, out = run(capsys, 'chain', '{"kind": "chain", "polar": [0, 1, 0]}', '--map', TRANSLATION,
                    '--samples', '8', '--format', 'json')
    assert code == 0
    document = ujson.loads(out)
    assert document['chain']['kind'] == 'chain'
    finite = [p for p in document['points'] if p[0] != 'inf']
    assert finite and all(float(p[0]) == pytest.approx(1.0) and abs(float(p[1])) < 1e-9 for p in finite)


def test_chain_errors(capsys):
    assert main(['chain', '{"kind": "chain", "polar": [1, 0, 0]}']) == 2
    assert main(['chain', '{"kind": "chain", "polar": [0, 1]}']) == 2
    assert main(['chain', '{"kind": "chain", "polar": [0, 1, 0]}', '--map', '[[2, 0, 0], [0, 1, 0], [0, 0, 2]]']) == 2
    assert main(['chain', '{"kind": "chain", "polar": [0, 1, 0]}', '--map', '{"form": "form2"}']) == 2
    capsys.readouterr()


def test_rcircle_spec_and_map(capsys):
    spec = '{"kind": "rcircle-inf", "base": [0, 0, 1], "theta": 0}'
    code, out = run(capsys, 'rcircle', '--spec', spec, '--samples', '8')
    assert code == 0
    rows = csv_rows(out)[1:]
    assert all(float(r[2]) == pytest.approx(1.0) for r in rows if r[0] != 'inf')

    code, out = run(capsys, 'rcircle', '--spec', spec, '--map', TRANSLATION, '--samples', '8', '--format', 'json')
    assert code == 0
    document = ujson.loads(out)
    assert document['rcircle']['kind'] == 'rcircle-fin'
    finite = [p for p in document['points'] if p[0] != 'inf']
    assert all(float(p[1]) == pytest.approx(0.0, abs=1e-9) for p in finite)
    assert main(['rcircle', '--spec', '{"kind": "rcircle-inf", "base": [0, 0]}']) == 2
    capsys.readouterr()


def test_classify_curve_with_a_map(capsys):
    code, out = run(capsys, 'classify-curve', '{"kind": "builtin", "name": "vertical-chain"}', '--map', TRANSLATION,
                    '--samples', '256')
    assert code == 0
    document = ujson.loads(out)
    assert document['verdict'] == 'CHAIN'
    polar = [complex(*z) for z in document['fitted']['polar']]
    assert abs(polar[0]) > 1e-3
