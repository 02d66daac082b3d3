"""Exception hierarchy shared by every ghdiff module."""


class GhDiffError(Exception):
    """Base class for all library errors."""


class InvalidInterval(GhDiffError, ValueError):
    """Endpoints out of order or not finite."""


class NegativeWidth(InvalidInterval):
    """A half-width below zero was supplied or produced by an IVF."""


class EmptySet(GhDiffError, ValueError):
    pass


class OffManifold(GhDiffError, ValueError):
    """A point is not on the manifold it claims to belong to."""


class BadTangent(GhDiffError, ValueError):
    """A direction is not an admissible tangent vector at its base point."""


class NotPositiveDefinite(GhDiffError, ValueError):
    pass


class EvaluationFailed(GhDiffError, RuntimeError):
    """A curve raised or returned a non-finite value during limit estimation."""


class DerivativeMissing(GhDiffError, RuntimeError):
    """A check needed a directional derivative that did not converge."""


class UnknownCase(GhDiffError, KeyError):
    pass
