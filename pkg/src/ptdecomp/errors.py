"""Exception hierarchy.

Every error carries a machine-readable ``witness`` so that the CLI can put it
in a report without parsing messages.
"""


class PtDecompError(Exception):
    witness = None

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class MalformedInput(PtDecompError):
    """Input that cannot even be read as the requested kind of object."""


class BadTable(MalformedInput):
    pass


class UnknownKey(MalformedInput):
    pass


class AxiomViolation(PtDecompError):
    def __init__(self, law, witness):
        super().__init__(f"axiom violated: {law} at {witness}", witness)
        self.law = law


class VarietyMismatch(PtDecompError):
    pass


class NotHomomorphism(PtDecompError):
    def __init__(self, op, witness):
        super().__init__(f"not a homomorphism: {op} fails at {witness}", witness)
        self.op = op


class NotSubalgebra(PtDecompError):
    def __init__(self, op, witness):
        super().__init__(f"not closed under {op} at {witness}", witness)
        self.op = op


class NotSection(PtDecompError):
    def __init__(self, witness):
        super().__init__(f"f(s(y)) != y for y = {witness}", witness)


class SquareFails(PtDecompError):
    def __init__(self, which, witness):
        super().__init__(f"square fails: {which} at {witness}", witness)
        self.which = which


class NotMono(PtDecompError):
    def __init__(self, leg, witness=None):
        super().__init__(f"leg {leg} is not injective", witness)
        self.leg = leg


class NotSchreier(PtDecompError):
    def __init__(self, y, reason, witness):
        super().__init__(f"not Schreier at fiber y = {y}: {reason} ({witness})", witness)
        self.y = y
        self.reason = reason


class NotEquivalence(PtDecompError):
    pass


class NotNormal(PtDecompError):
    pass


class NotCommuting(PtDecompError):
    pass


class SimplicialViolation(PtDecompError):
    def __init__(self, identity, witness):
        super().__init__(f"simplicial identity {identity} fails at {witness}", witness)
        self.identity = identity


class InternalAssertion(PtDecompError):
    """A construction produced something the theory says it cannot."""


class BudgetExceeded(PtDecompError):
    def __init__(self, enumerated, message="enumeration budget exceeded"):
        super().__init__(f"{message} (enumerated {enumerated})", enumerated)
        self.enumerated = enumerated
