import dataclasses
import numbers
from typing import Optional

import yaml

from chyperbolic.errors import ConfigError

TOLERANCES = ('kernel_tol', 'classifier_tol', 'sampled_tol', 'unit_band', 'dedup_tol', 'depth_tol')
COUNTS = ('samples', 'diameter_samples', 'max_word_length', 'triple_samples', 'workers')
REALS = TOLERANCES + ('triple_fraction', 'time_budget', 'verify_scale')
FORMATS = ('csv', 'json')


@dataclasses.dataclass
class RunConfig:
    kernel_tol: float = 1e-10
    classifier_tol: float = 1e-8
    sampled_tol: float = 1e-2
    unit_band: float = 1e-8
    samples: int = 512
    diameter_samples: int = 256
    max_word_length: int = 12
    dedup_tol: float = 1e-3
    depth_tol: float = 1e-3
    triple_samples: int = 10_000
    triple_fraction: float = 0.99
    seed: int = 0
    format: str = 'csv'
    workers: int = 1
    # seconds; 0 runs the sampler inline
    time_budget: float = 0
    # multiplies the batch sizes of the verification suites
    verify_scale: float = 1.0
    input: Optional[str] = None
    output: Optional[str] = None

    def __post_init__(self):
        self.validate()

    def validate(self):
        for name in TOLERANCES:
            value = getattr(self, name)
            if not isinstance(value, numbers.Real) or isinstance(value, bool) or not value > 0:
                raise ConfigError(f'{name} must be a positive number, got {value!r}')
        for name in COUNTS:
            value = getattr(self, name)
            if not isinstance(value, numbers.Integral) or isinstance(value, bool) or value < 1:
                raise ConfigError(f'{name} must be a positive integer, got {value!r}')
        if not 0.0 < self.triple_fraction <= 1.0:
            raise ConfigError(f'triple_fraction must lie in (0, 1], got {self.triple_fraction!r}')
        if not isinstance(self.seed, numbers.Integral) or self.seed < 0:
            raise ConfigError(f'seed must be a non-negative integer, got {self.seed!r}')
        if self.format not in FORMATS:
            raise ConfigError(f'format must be one of {", ".join(FORMATS)}, got {self.format!r}')
        if self.time_budget < 0:
            raise ConfigError(f'time_budget must be non-negative, got {self.time_budget!r}')
        if not self.verify_scale > 0:
            raise ConfigError(f'verify_scale must be positive, got {self.verify_scale!r}')

    @classmethod
    def fields(cls):
        return [f.name for f in dataclasses.fields(cls)]

    @classmethod
    def from_file(cls, file, **overrides):
        """Settings from a YAML or JSON mapping, then `overrides` (None values are ignored)."""
        try:
            with open(file, 'r') as reader:
                data = yaml.safe_load(reader)
        except FileNotFoundError:
            raise ConfigError(f'no such config file {file}') from None
        except yaml.YAMLError:
            raise ConfigError(f'cannot parse {file}') from None
        if data is None:
            data = {}
        if not isinstance(data, dict):
            raise ConfigError(f'{file} does not hold a mapping')
        return cls.from_dict(data, **overrides)

    @classmethod
    def from_dict(cls, data, **overrides):
        data = {k.replace('-', '_'): v for k, v in data.items()}
        unknown = sorted(set(data) - set(cls.fields()))
        if unknown:
            raise ConfigError(f'unknown settings {", ".join(unknown)}')
        data.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**{k: _coerce(k, v) for k, v in data.items()})

    def replace(self, **overrides):
        return dataclasses.replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def as_dict(self):
        return dataclasses.asdict(self)


def _coerce(name, value):
    # PyYAML reads exponent literals such as 1e-10 as strings
    if not isinstance(value, str):
        return value
    try:
        if name in REALS:
            return float(value)
        if name in COUNTS or name == 'seed':
            return int(value)
    except ValueError:
        raise ConfigError(f'{name} must be numeric, got {value!r}') from None
    return value
