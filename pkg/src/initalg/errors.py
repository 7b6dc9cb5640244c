"""Exception hierarchy.

Every error raised by the library derives from :class:`InitalgError`. Errors
that describe a bad input carry the offending witness as attributes so that
callers (and the CLI) can report it without string parsing.
"""


class InitalgError(Exception):
    pass


class CapExceeded(InitalgError):
    def __init__(self, what, size, cap):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class InternalInvariant(InitalgError):
    """A property that holds on every valid input failed; indicates a bug."""


# -- orders ------------------------------------------------------------------

class OrderError(InitalgError):
    pass


class DuplicateElement(OrderError):
    def __init__(self, x):
        super().__init__(f"duplicate element {x!r}")
        self.x = x


class UnknownElement(OrderError):
    def __init__(self, x):
        super().__init__(f"unknown element {x!r}")
        self.x = x


class AntisymmetryViolation(OrderError):
    def __init__(self, x, y):
        super().__init__(f"{x!r} <= {y!r} and {y!r} <= {x!r} but they differ")
        self.x, self.y = x, y


class TransitivityViolation(OrderError):
    def __init__(self, x, y, z):
        super().__init__(f"{x!r} <= {y!r} <= {z!r} but not {x!r} <= {z!r}")
        self.x, self.y, self.z = x, y, z


class MonotonicityViolation(OrderError):
    def __init__(self, x, y):
        super().__init__(f"{x!r} <= {y!r} but the images are not ordered")
        self.x, self.y = x, y


class NotTotal(InitalgError):
    def __init__(self, x):
        super().__init__(f"map undefined at {x!r}")
        self.x = x


class NoBottom(OrderError):
    pass


class NoTop(OrderError):
    pass


class NoMaximum(OrderError):
    pass


class NotACompleteLattice(OrderError):
    def __init__(self, x=None, y=None):
        msg = "not a complete lattice"
        if x is not None:
            msg += f": {x!r} and {y!r} have no join"
        super().__init__(msg)
        self.x, self.y = x, y


class UnitNotBottom(OrderError):
    pass


class NotStrict(OrderError):
    pass


class SquareDoesNotCommute(InitalgError):
    def __init__(self, x):
        super().__init__(f"g(h(x)) != h(f(x)) at x = {x!r}")
        self.x = x


class NotDirected(InitalgError):
    def __init__(self, x=None, y=None):
        msg = "family is not directed"
        if x is not None:
            msg += f": no upper bound for {x!r} and {y!r}"
        super().__init__(msg)
        self.x, self.y = x, y


# -- finite sets and functors --------------------------------------------------

class NotMono(InitalgError):
    pass


class NotIso(InitalgError):
    pass


class NotFunctorial(InitalgError):
    pass


class LawViolation(InitalgError):
    def __init__(self, law, details):
        super().__init__(f"{law} law fails: {details}")
        self.law = law
        self.details = details


class FunctorMismatch(InitalgError):
    pass


# -- coalgebras and initial algebras -----------------------------------------

class NotWellFounded(InitalgError):
    def __init__(self, cycle):
        super().__init__(f"dependency graph has a cycle {list(cycle)!r}")
        self.cycle = tuple(cycle)


class NotHomomorphism(InitalgError):
    def __init__(self, edge, x):
        super().__init__(f"connecting map {edge!r} is not a coalgebra homomorphism at {x!r}")
        self.edge = edge
        self.x = x


class NotConverged(InitalgError):
    pass


# -- order-enriched ------------------------------------------------------------

class EnrichmentViolation(InitalgError):
    def __init__(self, equation, witness):
        super().__init__(f"enrichment equation {equation} fails: {witness}")
        self.equation = equation
        self.witness = witness


class NotACocone(InitalgError):
    def __init__(self, edge):
        super().__init__(f"cocone does not commute along {edge!r}")
        self.edge = edge


class NotLocallyMonotone(InitalgError):
    pass


class NotAnEmbedding(InitalgError):
    pass


class NotAMetric(InitalgError):
    pass


class NotNonExpanding(InitalgError):
    def __init__(self, x, y):
        super().__init__(f"map expands the distance between {x!r} and {y!r}")
        self.x, self.y = x, y


# -- instance files ----------------------------------------------------------------

class InstanceError(InitalgError):
    """Schema error in an instance file; ``pointer`` is a JSON pointer."""

    def __init__(self, pointer, message):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer
        self.message = message


class HashMismatch(InitalgError):
    pass
