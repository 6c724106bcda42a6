"""Exception hierarchy shared by every module of the package."""


class LVMBError(Exception):
    """Base class for all errors raised by lvmbkit."""


class FieldMismatch(LVMBError, TypeError):
    pass


class DivisionByZero(LVMBError, ZeroDivisionError):
    pass


class InvalidField(LVMBError, ValueError):
    """Minimal polynomial / isolating interval pair is not a valid field."""


class UnsupportedField(LVMBError, TypeError):
    pass


class DimensionError(LVMBError, ValueError):
    pass


class DegenerateConfiguration(LVMBError, ValueError):
    pass


class TorusCase(DegenerateConfiguration):
    """n = 2m + 1: the dual vector configuration lives in dimension 0."""


class NotBalancedOdd(LVMBError, ValueError):
    pass


class NotALattice(LVMBError, ValueError):
    pass


class NotAMember(LVMBError, ValueError):
    pass


class NotValidated(LVMBError, ValueError):
    pass


class CapExceeded(LVMBError, RuntimeError):
    pass


class WrongCardinality(LVMBError, ValueError):
    pass


class CardinalityMismatch(LVMBError, ValueError):
    pass


class NotABasis(LVMBError, ValueError):
    pass


class NotAVirtualChamber(LVMBError, ValueError):
    pass


class OracleDisagreement(LVMBError, AssertionError):
    """Two independent polytopality oracles returned different answers."""


class Unbounded(LVMBError, ValueError):
    pass


class NotFullDimensional(LVMBError, ValueError):
    pass


class NotSimple(LVMBError, ValueError):
    def __init__(self, message, vertex=None, facets=None):
        super().__init__(message)
        self.vertex = vertex
        self.facets = facets


class SchemaError(LVMBError, ValueError):
    pass
