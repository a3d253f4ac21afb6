"""Exception hierarchy shared by all modules."""


class BetweennessError(Exception):
    """Base class for every error raised by this package."""


class DegenerateInput(BetweennessError, ValueError):
    pass


class DegenerateTriangle(DegenerateInput):
    pass


class DuplicatePoints(BetweennessError, ValueError):
    pass


class NotConvexIndependent(BetweennessError, ValueError):
    pass


class ShapeMismatch(BetweennessError, TypeError):
    """Two order values of different shapes were compared."""


class EmptyInterval(BetweennessError, ValueError):
    pass


class NotInjective(BetweennessError, ValueError):
    pass


class VanishingDenominator(BetweennessError, ZeroDivisionError):
    """The point lies on the vanishing line of a projective transform."""


class SingularMatrix(BetweennessError, ValueError):
    pass


class DegenerateCorrespondence(BetweennessError, ValueError):
    pass


class PolygonCrossesBoundary(BetweennessError, ValueError):
    pass


class InvalidBase(BetweennessError, ValueError):
    pass


class ImageDegeneracy(BetweennessError, ValueError):
    """Replaying a closure rule on the image side did not give a single point."""


class OutsideDomain(BetweennessError, ValueError):
    pass


class InvalidV(BetweennessError, ValueError):
    pass


class NotOnFamily(BetweennessError, ValueError):
    pass


class SearchExhausted(BetweennessError, RuntimeError):
    pass


class CapExceeded(BetweennessError, ValueError):
    pass


class UnknownPlugin(BetweennessError, KeyError):
    pass


class EmptyScene(BetweennessError, ValueError):
    pass


class Unsatisfiable(BetweennessError):
    """No total order satisfies the betweenness constraints.

    ``conflict`` holds an irreducible subset of the constraints that is
    already unsatisfiable on its own.
    """

    def __init__(self, conflict):
        self.conflict = tuple(conflict)
        super().__init__(f"unsatisfiable; conflicting constraints: {list(self.conflict)}")
