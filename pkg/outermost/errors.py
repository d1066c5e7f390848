"""
Exceptions
"""


class OutermostError(Exception):
    pass


class InvalidArgument(OutermostError, ValueError):
    pass


class NotPrimitive(InvalidArgument):
    pass


class RankMismatch(InvalidArgument):
    pass


class NotSpacelike(InvalidArgument):
    pass


class DegenerateLattice(OutermostError):
    pass


class NotAcuteAngled(OutermostError):
    pass


class NotCoxeter(OutermostError):
    pass


class DegenerateVertex(OutermostError):
    pass


class IllposedAngleSet(OutermostError):
    pass
