"""Exception hierarchy shared by every module of the package."""


class BpsError(Exception):
    """Base class for all errors raised by bpsrh."""


# -- structure validation -------------------------------------------------

class ValidationError(BpsError, ValueError):
    pass


class AsymmetricForm(ValidationError):
    pass


class SymmetryViolation(ValidationError):
    pass


class ZeroCentralCharge(ValidationError):
    pass


class ParseError(ValidationError):
    pass


class SchemaError(ValidationError):
    pass


# -- special functions ----------------------------------------------------

class PoleAt(BpsError, ValueError):
    def __init__(self, w):
        super().__init__(f"pole (or zero of the entire factor) at w={w!r}")
        self.w = w


class BranchCut(BpsError, ValueError):
    def __init__(self, w):
        super().__init__(f"w={w!r} lies on the branch cut (-inf, 0]")
        self.w = w


class OutOfRange(BpsError, ValueError):
    pass


class PoleAtOne(BpsError, ValueError):
    pass


# -- torus maps -----------------------------------------------------------

class PoleOnDivisor(BpsError, ArithmeticError):
    pass


class NotGeneric(BpsError):
    pass


class NotIntegral(BpsError):
    pass


class FlowDiverged(BpsError, ArithmeticError):
    pass


# -- formal engine --------------------------------------------------------

class ClassOutsideCone(BpsError, ValueError):
    pass


class ConeMismatch(BpsError, ValueError):
    pass


class BoundaryActive(BpsError, ValueError):
    pass


class NotFactorizable(BpsError, ArithmeticError):
    pass


# -- Riemann-Hilbert solver -----------------------------------------------

class ActiveRay(BpsError, ValueError):
    pass


class OutsideHalfPlane(BpsError, ValueError):
    pass


class NotUncoupled(BpsError, ValueError):
    pass


class NotFinite(BpsError, ValueError):
    pass


class DomainViolation(BpsError, ValueError):
    pass


class DegenerateForm(BpsError, ValueError):
    pass


class NonconvergentInput(BpsError, ValueError):
    pass
