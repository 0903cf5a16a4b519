class GeometryError(ValueError):
    def __init__(self, messages: str = None):
        if messages is None:
            messages = self.__class__.__name__
        else:
            messages = f'{self.__class__.__name__}: `{messages}`'
        super(ValueError, self).__init__(messages)


class FormMismatchError(GeometryError):
    pass


class ZeroVectorError(GeometryError):
    pass


class SingularMatrixError(GeometryError):
    pass


class NotNullError(GeometryError):
    pass


class NotNegativeError(GeometryError):
    pass


class CoincidentPointsError(GeometryError):
    pass


class DomainError(GeometryError):
    pass


class IrregularCurveError(GeometryError):
    pass


class ChartInfinityError(GeometryError):
    pass


class NotLoxodromicError(GeometryError):
    pass


class NotUnitaryError(GeometryError):
    def __init__(self, messages: str = None, index: int = None):
        self.index = index
        if index is not None:
            messages = f'generator {index}: {messages}'
        super().__init__(messages)


class SpecSyntaxError(SyntaxError):
    def __init__(self, messages: str):
        messages = f'{self.__class__.__name__}: cannot parse `{messages}`'
        super(SyntaxError, self).__init__(messages)


class ConfigError(ValueError):
    def __init__(self, messages: str):
        messages = f'{self.__class__.__name__}: `{messages}`'
        super(ValueError, self).__init__(messages)


class UnknownSuiteError(KeyError):
    def __init__(self, name: str, valid):
        self.name = name
        self.valid = list(valid)
        messages = f'{self.__class__.__name__}: unknown suite `{name}`, valid suites are {", ".join(self.valid)}'
        super(KeyError, self).__init__(messages)

    def __str__(self):
        return self.args[0]


class InvalidChainError(GeometryError):
    pass
