"""Exception hierarchy shared by every module of the package."""


class LatticeError(Exception):
    """Base class for all errors raised by tenselat."""


class ValidationError(LatticeError, ValueError):
    pass


class CycleError(ValidationError):
    def __init__(self, a, b):
        super().__init__(f"order has a cycle: {a} <= {b} and {b} <= {a}")
        self.pair = (a, b)


class NoBottom(ValidationError):
    def __init__(self):
        super().__init__("order has no bottom element (empty join does not exist)")


class NoJoin(ValidationError):
    def __init__(self, a, b):
        super().__init__(f"elements {a} and {b} have no least upper bound")
        self.pair = (a, b)


class DuplicateLabel(ValidationError):
    def __init__(self, label):
        super().__init__(f"duplicate label {label!r}")
        self.label = label


class UnknownLabel(ValidationError):
    def __init__(self, label, where=""):
        msg = f"unknown label {label!r}"
        if where:
            msg = f"{where}: {msg}"
        super().__init__(msg)
        self.label = label


class UnknownNode(UnknownLabel):
    pass


class EmptyNodeSet(ValidationError):
    def __init__(self):
        super().__init__("node set must be nonempty")


class ForeignElement(LatticeError, ValueError):
    def __init__(self, x, lattice=None):
        super().__init__(f"{x!r} is not an element of {lattice!r}")
        self.element = x


class CarrierMismatch(LatticeError, ValueError):
    pass


class CarrierTooLarge(LatticeError):
    def __init__(self, size, cap):
        super().__init__(f"carrier of size {size} exceeds the cap of {cap} elements")
        self.size = size
        self.cap = cap


class NotJoinPreserving(ValidationError):
    def __init__(self, witness):
        super().__init__(f"map does not preserve joins; witness {witness}")
        self.witness = witness


class NotACongruence(ValidationError):
    def __init__(self, witness):
        super().__init__(f"partition is not closed under joins; witness {witness}")
        self.witness = witness


class NotConstantOnX(LatticeError, ValueError):
    def __init__(self, pair):
        super().__init__(f"map separates the identified pair {pair}")
        self.pair = pair


class FiberConflict(LatticeError):
    """A map that should factor through a quotient is not constant on a fiber.

    Raised only if a law claimed for the constructions is violated; the
    witness is the base element whose image differs from that of its closure.
    """

    def __init__(self, x, closed, gx, gclosed):
        super().__init__(
            f"g({x!r}) = {gx!r} but g(n({x!r})) = g({closed!r}) = {gclosed!r}"
        )
        self.witness = (x, closed, gx, gclosed)


class ParseError(LatticeError, ValueError):
    """A structure file could not be read; carries a source location."""

    def __init__(self, message, *, source="<input>", line=None, field=None):
        where = source
        if line is not None:
            where += f":{line}"
        if field:
            where += f": {field}"
        super().__init__(f"{where}: {message}")
        self.source = source
        self.line = line
        self.field = field
        self.detail = message


class GoldenMismatch(LatticeError):
    """A regenerated table differs from its stored reference."""

    def __init__(self, name, diffs):
        super().__init__(f"{name}: {len(diffs)} differing cell(s)")
        self.name = name
        self.diffs = list(diffs)
