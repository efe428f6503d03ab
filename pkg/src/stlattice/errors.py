"""Exception types raised across the package."""


class LatticeError(ValueError):
    """Base class for invalid lattice inputs and violated preconditions."""


class NotALattice(LatticeError):
    def __init__(self, i, j, kind="meet"):
        self.i, self.j, self.kind = i, j, kind
        super().__init__(f"elements {i!r} and {j!r} have no unique {kind}")


class NoBounds(LatticeError):
    pass


class NotClosed(LatticeError):
    pass


class TooLarge(LatticeError):
    pass


class BadN(LatticeError):
    pass


class NotMaximalChain(LatticeError):
    pass


class NotHomomorphism(LatticeError):
    pass


class ParseError(LatticeError):
    pass


class DimensionMismatch(ValueError):
    pass


class PreconditionCNotInA(ValueError):
    pass
