"""Exception types shared across the package."""


class CentlabError(Exception):
    """Base class for every error raised by this library."""


class MalformedTableError(CentlabError):
    """Structure-constant table has the wrong shape or out-of-range entries."""


class OrderIncompatibleError(CentlabError):
    """A generator product has an additive order the generator orders forbid."""

    def __init__(self, i: int, j: int):
        self.i = i
        self.j = j
        super().__init__(
            f"additive order of the product of generators {i} and {j} "
            f"does not divide the gcd of their orders"
        )


class NotAssociativeError(CentlabError):
    """Generator associativity fails for some triple."""

    def __init__(self, i: int, j: int, k: int, left: int, right: int):
        self.triple = (i, j, k)
        self.left = left
        self.right = right
        super().__init__(
            f"associativity fails on generator triple ({i}, {j}, {k}): "
            f"(ei*ej)*ek = element {left} but ei*(ej*ek) = element {right}"
        )


class NotSubgroupError(CentlabError):
    """An element set lacking the additive-subgroup flag was used as one."""


class NotSubringError(CentlabError):
    """An element set lacking the subring flag was used as one."""


class NotMemberError(CentlabError):
    """An element lies outside the set it was required to belong to."""


class NotPairwiseNoncommutingError(CentlabError):
    """A supposedly pairwise non-commuting family contains a commuting pair."""

    def __init__(self, x: int, y: int):
        self.pair = (x, y)
        super().__init__(f"elements {x} and {y} commute")


class BadParameterError(CentlabError):
    """A constructor received an out-of-range or unsupported parameter."""


class OrderTooLargeError(CentlabError):
    """The requested order exceeds what this operation supports."""


class CeilingExceededError(CentlabError):
    """The additive type lies beyond the enumeration ceiling."""


class UnknownTheoremError(CentlabError):
    """No checker is registered under the requested theorem id."""


class RingSyntaxError(CentlabError):
    """A ring or catalog file violates the text format."""

    def __init__(self, message: str, line: int):
        self.line = line
        super().__init__(f"line {line}: {message}")


class RingValidationError(CentlabError):
    """A parsed table failed ring validation."""
