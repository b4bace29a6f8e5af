"""Exception hierarchy shared by all koszul modules."""


class KoszulError(Exception):
    """Base class for every error raised by the library."""


class PreconditionError(KoszulError):
    """Input violates the documented precondition of an operation."""


class ArithmeticFailure(KoszulError):
    """Exact arithmetic could not be carried out (e.g. reduction mod p)."""


class DenominatorDivisibleByP(ArithmeticFailure):
    def __init__(self, value, p):
        super().__init__(f"cannot reduce {value} modulo {p}: denominator divisible by {p}")
        self.value = value
        self.p = p


class DimensionMismatch(PreconditionError):
    pass


class BudgetExceeded(ArithmeticFailure):
    def __init__(self, what, size, budget):
        super().__init__(f"{what}: size {size} exceeds budget {budget}")
        self.size = size
        self.budget = budget


class InternalInconsistency(KoszulError):
    """Two independent computations disagreed; indicates a bug."""


class PreconditionFailed(PreconditionError):
    pass


class RankDeficient(ArithmeticFailure):
    def __init__(self, expected, achieved, characteristic):
        super().__init__(
            f"reduced span has dimension {achieved} < {expected} in characteristic {characteristic}"
        )
        self.expected = expected
        self.achieved = achieved
        self.characteristic = characteristic


class DuplicateHyperplane(PreconditionError):
    pass


class ZeroForm(PreconditionError):
    pass


class NonSimpleGraph(PreconditionError):
    pass


class AxiomViolation(PreconditionError):
    def __init__(self, axiom, detail):
        super().__init__(f"multinet axiom ({axiom}) violated: {detail}")
        self.axiom = axiom
        self.detail = detail
