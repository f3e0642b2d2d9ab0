"""Error hierarchy shared by every module.

``KernelError`` marks a mathematical failure (CLI exit code 1); usage
problems are left to argparse (exit code 2).
"""


class KernelError(Exception):
    """Base class for all mathematical errors raised by the kernel."""

    @property
    def name(self) -> str:
        return type(self).__name__


class DivisionByZero(KernelError, ZeroDivisionError):
    pass


class NonCanonical(KernelError, ValueError):
    pass


class InvalidDigit(KernelError, ValueError):
    pass


class LeadingZero(KernelError, ValueError):
    pass


class NotEnoughTerms(KernelError, ValueError):
    pass


class BudgetExceeded(KernelError):
    pass


# taylor
class CenterMismatch(KernelError, ValueError):
    pass


class OrderMismatch(KernelError, ValueError):
    pass


class ZeroConstantTerm(KernelError, ValueError):
    pass


class CenterIncompatible(KernelError, ValueError):
    pass


class AllZero(KernelError, ValueError):
    pass


class UnboundedDerivatives(KernelError, ValueError):
    pass


# expr
class ExprSyntaxError(KernelError, ValueError):
    """Malformed expression text; ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset

    @property
    def name(self) -> str:
        return "SyntaxError"


class UnknownIdentifier(ExprSyntaxError):
    @property
    def name(self) -> str:
        return "UnknownIdentifier"


class DomainError(KernelError, ValueError):
    """A guard failed: ``guard`` names it, ``path`` locates the subexpression."""

    def __init__(self, guard: str, path: tuple = (), detail: str = ""):
        msg = guard if not path else f"{guard} at {format_path(path)}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.guard = guard
        self.path = tuple(path)


class Uncertain(KernelError):
    """A guard could not be decided at the maximum working precision."""

    def __init__(self, guard: str, path: tuple = (), bits: int = 0):
        super().__init__(f"{guard} undecided at {format_path(path)} after {bits} bits")
        self.guard = guard
        self.path = tuple(path)
        self.bits = bits


class ExpansionError(KernelError, ValueError):
    pass


class UnsupportedExpansionPoint(ExpansionError):
    def __init__(self, reason: str, path: tuple = ()):
        super().__init__(f"{reason} at {format_path(path)}")
        self.reason = reason
        self.path = tuple(path)


class PoleAtZero(ExpansionError):
    def __init__(self, path: tuple = ()):
        super().__init__(f"pole at 0 at {format_path(path)}; use the Laurent path")
        self.path = tuple(path)


# limits
class AllZeroDenominator(KernelError, ValueError):
    pass


# series / fekete
class CertificateViolated(KernelError, ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotRiemannian(KernelError, ValueError):
    pass


class NotRiemannianProduct(KernelError, ValueError):
    pass


# transcendental
class ZeroValue(KernelError, ValueError):
    pass


class ZeroAtAlpha(KernelError, ValueError):
    pass


def format_path(path) -> str:
    return "root" + "".join(f".{p}" for p in path)
