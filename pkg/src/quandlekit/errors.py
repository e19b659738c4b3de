"""Exception hierarchy shared by every quandlekit module."""


class QuandleKitError(Exception):
    """Base class for all toolkit errors."""


class DimensionMismatch(QuandleKitError, ValueError):
    pass


class TableError(QuandleKitError, ValueError):
    """Ragged table or out-of-range entry."""


class AxiomViolation(QuandleKitError):
    """A quandle axiom fails; ``axiom`` is 'Q1', 'Q2' or 'Q3' and ``witness`` the offending indices."""

    def __init__(self, axiom, witness, message=None):
        self.axiom = axiom
        self.witness = tuple(witness)
        if message is None:
            message = f"{axiom} violated at {self.witness}"
        super().__init__(message)


class Q1Violation(AxiomViolation):
    def __init__(self, witness, message=None):
        super().__init__("Q1", witness, message)


class Q2Violation(AxiomViolation):
    def __init__(self, witness, message=None):
        super().__init__("Q2", witness, message)


class Q3Violation(AxiomViolation):
    def __init__(self, witness, message=None):
        super().__init__("Q3", witness, message)


class NotAnAutomorphism(QuandleKitError, ValueError):
    pass


class RingMismatch(QuandleKitError, ValueError):
    """Operands live in different quandle rings."""


class NotIntegralDomain(QuandleKitError, ValueError):
    """The operation needs an integral domain and was given Z/m with composite m."""


class BudgetExceeded(QuandleKitError):
    pass


class HypothesisFailed(QuandleKitError):
    """A result was requested for an input outside its hypotheses."""


class FamilyRejected(QuandleKitError):
    """A parametric family fails an identity at a grid point."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class CertificateError(QuandleKitError):
    pass


class ParseError(QuandleKitError, ValueError):
    pass


class UnknownName(QuandleKitError, KeyError):
    pass


class RelationFailure(CertificateError):
    """A group relation does not hold; ``instance`` is the failing relation text."""

    def __init__(self, instance, message=None):
        self.instance = instance
        super().__init__(message or f"relation fails: {instance}")
