"""Exception hierarchy.

Every error raised on bad input derives from ``SLCError``, which is itself a
``ValueError`` so callers that only care about "bad argument" can catch that.
"""


class SLCError(ValueError):
    pass


class GraphError(SLCError):
    pass


class NonPositiveWeight(GraphError):
    pass


class NonIntegerWeight(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class VertexOutOfRange(GraphError, IndexError):
    pass


class Disconnected(GraphError):
    pass


class CurveModeMismatch(SLCError):
    pass


class CurveNotDistanceMode(CurveModeMismatch):
    pass


class CurveNotSimilarityMode(CurveModeMismatch):
    pass


class KTooSmall(SLCError):
    pass


class EpsOutOfRange(SLCError):
    pass


class NTooSmall(SLCError):
    pass


class WTooLarge(SLCError):
    pass


class NotMonotone(SLCError):
    pass


class IndexOutOfRange(SLCError, IndexError):
    pass


class KOutOfRange(SLCError, IndexError):
    pass


class ParamOutOfTheoremRange(SLCError):
    pass


class ParseError(SLCError):
    def __init__(self, message, *, path=None, line=None):
        where = ""
        if path is not None:
            where = f"{path}:{line}: " if line is not None else f"{path}: "
        super().__init__(where + message)
        self.path = path
        self.line = line


class EmptyGraph(SLCError):
    pass


class SizeGuardError(SLCError):
    pass
