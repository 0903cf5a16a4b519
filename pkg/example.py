import logging

from chyperbolic.boundary import HeisenbergPoint, heis_translation
from chyperbolic.config import RunConfig
from chyperbolic.environment import Environment
from chyperbolic.logger import logger
from chyperbolic.objects.rcircle import RCircle
from chyperbolic.spec_parser import parse_chain, parse_group


def main():
    logger.setLevel(logging.DEBUG)

    env = Environment(RunConfig(samples=256, max_word_length=30, time_budget=60))

    rows = env.convert([['(1, 0)'], ['inf']], 'heisenberg', 'siegel')
    for row in rows:
        print(row.cells if row.ok else row.error)

    value, kind = env.cartan([HeisenbergPoint(0, 0), HeisenbergPoint(1, 0), HeisenbergPoint.infinity()])
    print('cartan', value, kind.value)

    for name in ('vertical-chain', 'canonical-rcircle', 'finite-rcircle'):
        result = env.classify_curve({'kind': 'builtin', 'name': name})
        print(name, result.verdict.value)

    group = parse_group({
        'generators': [
            [[0.5, 0, 0], [0, 1, 0], [0, 0, 2]],
        ],
        'labels': ['a'],
    })
    sample, classification = env.limitset(group)
    print(len(sample), 'limit points', classification.verdict.value, env.stats)
    logger.info(env.sidecar(classification, sample))

    for point in env.rcircle(RCircle.finite((0.5j, 1.0), radius=2.0), samples=8):
        print(point)

    chain = parse_chain({'kind': 'chain', 'polar': [0, 1, 0]})
    shift = heis_translation(1.0, 0.0)
    for point in env.chain(env.transform(shift, chain), samples=8):
        print(point)


if __name__ == '__main__':
    main()
