"""Exception hierarchy shared by every module of the package."""


class HilbtreesError(Exception):
    """Base class for all package errors."""


class ZeroInverse(HilbtreesError, ZeroDivisionError):
    pass


class DegenerateSpan(HilbtreesError, ValueError):
    """Two points that should span a line are proportional."""


class BasePoint(HilbtreesError, ValueError):
    """The coordinate forms of a parametrization share a root."""


class LeadingZero(HilbtreesError, ValueError):
    """The divisor has vanishing coefficient of u**deg; reparametrize first."""


class ZeroForm(HilbtreesError, ValueError):
    pass


class BadRank(HilbtreesError, ValueError):
    pass


class NotOnQuadric(HilbtreesError, ValueError):
    pass


class PointNotOnW(HilbtreesError, ValueError):
    pass


class DuplicatePoint(HilbtreesError, ValueError):
    pass


class ComponentContained(HilbtreesError, ValueError):
    """A component of the curve lies inside the hypersurface."""


class NotATree(HilbtreesError, ValueError):
    pass


class RetryExhausted(HilbtreesError, RuntimeError):
    pass


class Infeasible(RetryExhausted):
    """A constraint set that can never be met (not just unlucky sampling)."""


class UnknownConstruction(HilbtreesError, KeyError):
    pass


class NoRationalLinkingCandidate(HilbtreesError, RuntimeError):
    pass


class SearchExhausted(HilbtreesError, RuntimeError):
    pass


class SchemaMismatch(HilbtreesError, ValueError):
    pass


class ReplayDivergence(HilbtreesError, RuntimeError):
    pass


class InvariantViolation(HilbtreesError, AssertionError):
    """A mathematical identity that must always hold did not."""
