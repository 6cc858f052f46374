"""Exception hierarchy shared by every module."""


class NvkError(Exception):
    """Base class for all errors raised by nvk."""


class DomainError(NvkError, ValueError):
    """An argument lies outside the domain of the operation."""


class PoleError(DomainError):
    """An argument hits an excluded pole of a Möbius map."""


class NonConvergent(NvkError, ArithmeticError):
    """An iterative or adaptive procedure ran out of budget."""


class GrowthViolation(NvkError, ValueError):
    """A measure does not satisfy the growth condition."""


class HermitianViolation(NvkError, ValueError):
    """A sampled kernel is too far from Hermitian to be a PSD candidate."""


class Unstable(NvkError):
    """A negative-squares estimate is still increasing at the largest sample."""


class CertificateFailure(NvkError):
    """A decomposition certificate exceeded its residual tolerance.

    The offending certificate is kept on ``self.certificate``.
    """

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate
