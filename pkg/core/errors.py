class TropError(Exception):
    """
    Generic domain error. Carries an optional witness object that is reported
    alongside the message.
    """
    def __init__(self, message='', witness=None):
        super(TropError, self).__init__(message)
        self.witness = witness

class TagMismatch(TropError):
    """
    Operands belong to different semirings.
    """
    pass

class UnsupportedSemiring(TropError):
    """
    Operation has no meaning over the given semiring.
    """
    pass

class DivisionByBottom(TropError):
    """
    Residuation by the semiring zero.
    """
    pass

class Divergent(TropError):
    """
    Star series is unbounded.
    """
    pass

class DimensionMismatch(TropError):
    """
    Shapes do not agree.
    """
    pass

class ZeroColumn(TropError):
    """
    A matrix column is entirely zero.
    """
    pass

class NoCycle(TropError):
    """
    The graph of finite entries has no cycle.
    """
    pass

class Unbounded(TropError):
    """
    Collatz-Wielandt number is unbounded.
    """
    pass

class EmptySupport(TropError):
    """
    Residual taken over an empty index set.
    """
    pass

class NotSeparable(TropError):
    """
    Semimodules share a nonzero point, given as witness.
    """
    pass

class Infeasible(TropError):
    """
    System has only the zero solution.
    """
    pass

class TooLarge(TropError):
    """
    Instance exceeds an enumeration cap.
    """
    pass

class Inconsistent(TropError):
    """
    Reconstructed function violates the Plucker relations.
    """
    pass

class NoFlow(TropError):
    """
    No normal flow exists.
    """
    pass

class NotStronglyRegular(TropError):
    """
    Assignment optimum is not unique.
    """
    pass

class CertificateInvalid(TropError):
    """
    Regularity certificate fails its strict inequalities.
    """
    pass

class ImprovingCycle(TropError):
    """
    Bijection is not an optimal assignment.
    """
    pass

class Diverged(TropError):
    """
    Iteration left the configured bounds or never became periodic.
    """
    pass

class BadConfig(TropError):
    """
    Invalid configuration.
    """
    pass

class SchemaError(Exception):
    """
    Input file does not match its schema.
    """
    pass
