"""Exception types shared across the package.

Cap violations derive from ``CapExceeded`` so the CLI can map them to a
single exit code.
"""


class ExactQaoaError(Exception):
    pass


class SchemaError(ExactQaoaError, ValueError):
    pass


class InvalidEdge(ExactQaoaError, ValueError):
    pass


class DuplicateEdge(ExactQaoaError, ValueError):
    pass


class NotAnEdge(ExactQaoaError, KeyError):
    pass


class EdgeNotInHypergraph(ExactQaoaError, KeyError):
    pass


class NotASimpleGraph(ExactQaoaError, ValueError):
    pass


class NonUnitWeights(ExactQaoaError, ValueError):
    pass


class ImaginaryResidue(ExactQaoaError, ArithmeticError):
    pass


class CapExceeded(ExactQaoaError):
    pass


class FamilyTooLarge(CapExceeded):
    def __init__(self, dimension, cap):
        super().__init__(f"enumeration dimension {dimension} exceeds cap {cap}")
        self.dimension = dimension
        self.cap = cap


class TooManyQubits(CapExceeded):
    def __init__(self, n, cap):
        super().__init__(f"{n} qubits exceeds oracle cap {cap}")
        self.n = n
        self.cap = cap


class TooManyPoints(CapExceeded):
    def __init__(self, points, cap):
        super().__init__(f"grid of {points} points exceeds cap {cap}")
        self.points = points
        self.cap = cap
