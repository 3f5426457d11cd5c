"""Exception hierarchy. Every error raised on purpose by the package derives from SdbError."""


class SdbError(Exception):
    pass


# complexes and morphisms


class ComplexError(SdbError):
    pass


class MissingSingleton(ComplexError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"vertex {vertex} has no singleton face")


class NotDownwardClosed(ComplexError):
    def __init__(self, face, missing):
        self.face, self.missing = face, missing
        super().__init__(f"face {_f(face)} is present but its subface {_f(missing)} is not")


class UnknownVertex(ComplexError):
    def __init__(self, face, vertex):
        self.face, self.vertex = face, vertex
        super().__init__(f"face {_f(face)} mentions unknown vertex {vertex}")


class MorphismError(SdbError):
    pass


class InvalidMorphism(MorphismError):
    pass


class NonComposable(MorphismError):
    pass


class IndexOutOfRange(MorphismError):
    pass


class NotDisplay(MorphismError):
    pass


# instances and full tuples


class InstanceError(SdbError):
    pass


class UnknownFace(InstanceError):
    def __init__(self, face):
        self.face = face
        super().__init__(f"{_f(face)} is not a face of the base complex")


class BadRowShape(InstanceError):
    def __init__(self, face, value):
        self.face, self.value = face, value
        super().__init__(f"row {value} at face {_f(face)} is not a tuple over that face")


class ClosureViolation(InstanceError):
    def __init__(self, face, row, subface):
        self.face, self.row, self.subface = face, row, subface
        super().__init__(f"row {row} at face {_f(face)} restricts to a missing row at {_f(subface)}")


class NotRelational(InstanceError):
    def __init__(self, face, k1, k2):
        self.face, self.k1, self.k2 = face, k1, k2
        super().__init__(f"keys {k1!r} and {k2!r} at face {_f(face)} have identical attribute values")


class BaseMismatch(InstanceError):
    pass


class InvalidFullTuple(InstanceError):
    pass


# eliminators


class EliminationError(SdbError):
    pass


class KindMismatch(EliminationError):
    pass


class ComponentTypeMismatch(EliminationError):
    pass


class MissingComponent(EliminationError):
    pass


class EquationPremiseViolated(EliminationError):
    def __init__(self, equation, detail=""):
        self.equation = equation
        super().__init__(f"premise {equation} does not hold{': ' + detail if detail else ''}")


# surface language and checker


class SdbSyntaxError(SdbError):
    def __init__(self, line, column, expected, found=""):
        self.line, self.column, self.expected, self.found = line, column, expected, found
        msg = f"{line}:{column}: expected {expected}"
        if found:
            msg += f", found {found!r}"
        super().__init__(msg)


class ElaborationError(SdbError):
    pos = None


class UnboundName(ElaborationError):
    pass


class DuplicateName(ElaborationError):
    pass


class ContextMismatch(ElaborationError):
    pass


class TypeMismatch(ElaborationError):
    pass


class CannotInfer(ElaborationError):
    pass


class EquationContextMismatch(ElaborationError):
    pass


class PathNotIntoBase(ElaborationError):
    pass


class Exhausted(SdbError):
    pass


class InternalBreach(SdbError):
    """An invariant the model guarantees was violated: a bug, not a user error."""


def _f(face):
    try:
        from .values import format_vertex

        return "{" + ",".join(format_vertex(v) for v in face) + "}"
    except Exception:  # pragma: no cover - defensive printing only
        return repr(face)
