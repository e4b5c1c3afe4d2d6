class SemigroupError(ValueError):
    """Base class for domain errors raised by sdpower."""


class ParseError(SemigroupError):
    pass


class AssociativityError(SemigroupError):
    def __init__(self, triple):
        self.triple = triple
        i, j, k = triple
        super().__init__(f"associativity fails at (i, j, k) = ({i}, {j}, {k})")


class SizeCapError(SemigroupError):
    pass


class NotClosedError(SemigroupError):
    pass


class PreconditionError(SemigroupError):
    pass


class IsomorphismTimeout(SemigroupError):
    """Raised when the isomorphism search exhausts its node budget.

    The answer is then unknown; the search never reports a wrong result.
    """

    def __init__(self, budget):
        self.budget = budget
        super().__init__(f"isomorphism search exceeded node budget {budget}")
