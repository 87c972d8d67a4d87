"""Exception hierarchy shared by all hypcf modules."""


class HypcfError(Exception):
    """Base class; the CLI maps these to exit code 2 unless noted."""


class FieldMismatch(HypcfError):
    pass


class NegativeValuation(HypcfError):
    def __init__(self, msg, index=None):
        super().__init__(msg)
        self.index = index


class ZeroInput(HypcfError):
    pass


class UnsupportedValuation(HypcfError):
    """Residue characteristic 2, composite p, or similar."""


class OddDegree(HypcfError):
    pass


class BadLeadingCoefficient(HypcfError):
    pass


class SquareD(HypcfError):
    pass


class RationalInput(HypcfError):
    pass


class PositiveOrder(HypcfError):
    pass


class WindowError(HypcfError):
    """An operation needed a coefficient outside the known window."""


class NotConstant(HypcfError):
    def __init__(self, msg, residual=None):
        super().__init__(msg)
        self.residual = residual


class PeriodNotFound(HypcfError):
    pass


class SquareReduction(HypcfError):
    pass


class NotSquareFree(HypcfError):
    pass


class BadPrime(HypcfError):
    pass


class RankDeficient(HypcfError):
    def __init__(self, msg, kernel_dim=None):
        super().__init__(msg)
        self.kernel_dim = kernel_dim


class ParseError(HypcfError):
    def __init__(self, msg, offset=None):
        super().__init__(msg if offset is None else f"{msg} at offset {offset}")
        self.offset = offset


class InternalError(HypcfError):
    """Broken invariant; the CLI maps this to exit code 1."""
