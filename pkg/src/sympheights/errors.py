"""Exception hierarchy shared by every module of the package."""


class SymplError(Exception):
    """Base class for all errors raised by sympheights."""


class DomainError(SymplError, ValueError):
    """An argument lies outside the domain of the operation (zero vector, k < 1, ...)."""


class InvalidPlaceError(SymplError, ValueError):
    pass


class BackendMismatchError(SymplError, TypeError):
    """Objects from different ground fields were combined."""


class RankError(SymplError, ValueError):
    pass


class DimensionError(SymplError, ValueError):
    pass


class FormError(SymplError, ValueError):
    """The bilinear form is not alternating."""


class RegularityError(SymplError, ValueError):
    """The symplectic space (Z, F) is singular."""


class CliqueViolationError(RegularityError):
    """The pair sweep found a working set that is a clique.

    ``clique`` holds the offending (1-based) vertex indices, which certify a
    complete subgraph on k + 1 vertices.
    """

    def __init__(self, message, clique=()):
        super().__init__(message)
        self.clique = tuple(clique)


class CertificationError(SymplError, RuntimeError):
    """No basis meeting the Siegel bound was found; ``best`` is the best attempt."""

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class ScaleError(SymplError, ValueError):
    pass


class GenerationError(SymplError, RuntimeError):
    pass


class UnsupportedError(SymplError, NotImplementedError):
    pass


class ContractError(SymplError, ValueError):
    """An input object violates its documented invariants."""
