"""Exception hierarchy.

``InputError`` subclasses describe malformed or out-of-domain inputs (CLI exit
code 2); ``ComputationError`` subclasses describe inputs that are well formed
but for which a quantity does not exist or a hypothesis fails (exit code 1).
"""

from __future__ import annotations


class MixboundError(Exception):
    exit_code = 1


class InputError(MixboundError, ValueError):
    exit_code = 2


class ComputationError(MixboundError, ArithmeticError):
    exit_code = 1


# -- matrix ingest -----------------------------------------------------------

class ParseError(InputError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class NonSquare(InputError):
    def __init__(self, shape: tuple[int, ...]):
        self.shape = shape
        super().__init__(f"transition matrix must be square with N >= 1, got shape {shape}")


class NonFiniteEntry(InputError):
    def __init__(self, row: int, col: int):
        self.row, self.col = row, col
        super().__init__(f"entry ({row}, {col}) is not finite")


class RowSumViolation(InputError):
    def __init__(self, row: int, deviation: float):
        self.row, self.deviation = row, deviation
        super().__init__(f"row {row} sums to 1 {deviation:+.3g}")


class NegativeEntry(InputError):
    def __init__(self, row: int, col: int, value: float):
        self.row, self.col, self.value = row, col, value
        super().__init__(f"entry ({row}, {col}) is negative: {value!r}")


class DimensionMismatch(InputError):
    pass


class NotAProbabilityVector(InputError):
    pass


# -- chain analysis ----------------------------------------------------------

class NonUniqueStationary(ComputationError):
    def __init__(self, multiplicity: int):
        self.multiplicity = multiplicity
        super().__init__(f"eigenvalue 1 has geometric multiplicity {multiplicity}; "
                         "the stationary distribution is not unique")


class EigensolverFailure(ComputationError):
    pass


class ZeroStationaryMass(ComputationError):
    def __init__(self, state: int):
        self.state = state
        super().__init__(f"stationary mass of state {state} is zero")


# -- distances ---------------------------------------------------------------

class BudgetExceeded(InputError):
    pass


class HorizonTooShort(ComputationError):
    pass


# -- bounds ------------------------------------------------------------------

class EpsilonOutOfRange(InputError):
    def __init__(self, epsilon: float, allowed: str):
        self.epsilon = epsilon
        super().__init__(f"epsilon={epsilon!r} outside {allowed}")


class ZeroPiMin(ComputationError):
    def __init__(self) -> None:
        super().__init__("pi_min = 0: the bound is infinite")


class InfiniteRelaxation(ComputationError):
    def __init__(self) -> None:
        super().__init__("beta_star = 1: relaxation time is infinite")


class TimeTooSmall(InputError):
    pass


class BetaOutOfRange(InputError):
    pass


class DeltaNegative(ComputationError):
    pass


class StateSpaceTooLarge(InputError):
    pass


class ZeroPhi(ComputationError):
    def __init__(self) -> None:
        super().__init__("Cheeger constant is zero: the bound is infinite")


class AlphaOne(ComputationError):
    def __init__(self) -> None:
        super().__init__("alpha = 1: the multiplicative reversibilization does not converge")


# -- duality -----------------------------------------------------------------

class NotSorted(InputError):
    pass


class NegativeSpectrum(ComputationError):
    pass


class NegativeLinkEntry(ComputationError):
    def __init__(self, row: int, col: int, value: float):
        self.row, self.col, self.value = row, col, value
        super().__init__(f"link entry ({row}, {col}) = {value:.3g} is negative beyond tolerance")


class DegenerateGap(ComputationError):
    pass


class IntertwiningFailure(ComputationError):
    pass


class NotSkipFree(InputError):
    pass


# -- schur -------------------------------------------------------------------

class IndexOutOfRange(InputError):
    pass


class LegTooLong(InputError):
    pass


class TooLarge(InputError):
    pass


# -- examples ----------------------------------------------------------------

class NotAProbabilityTriple(InputError):
    pass


class NTooSmall(InputError):
    pass


class DimensionTooLarge(InputError):
    pass
