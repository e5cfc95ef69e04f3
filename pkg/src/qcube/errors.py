class QCubeError(Exception):
    pass


class OutcomeNotOnAxis(QCubeError, ValueError):
    """A face outcome was supplied for a measurement along a different axis."""


class OutsideOctahedron(QCubeError, ValueError):
    """Bloch vector with l1 norm above 1."""


class NotEpistemic(QCubeError, ValueError):
    """Probability vector outside the hull of the six face states."""


class InvalidWeights(QCubeError, ValueError):
    pass
