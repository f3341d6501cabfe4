"""Exception hierarchy. Every domain error derives from :class:`FibraError`."""


class FibraError(ValueError):
    """Base class for domain errors."""


class InvalidStructure(FibraError):
    """A constructor was given data violating the type's invariants."""


class InvalidTopology(InvalidStructure):
    pass


class InvalidFilter(InvalidStructure):
    pass


class EmptyTarget(FibraError):
    pass


class SpaceMismatch(FibraError):
    pass


class LabelMismatch(FibraError):
    pass


class ShapeMismatch(FibraError):
    pass


class EmptyImageBase(FibraError):
    pass


class SignatureMismatch(FibraError):
    pass


class NotContained(FibraError):
    def __init__(self, point, detail=""):
        self.point = point
        super().__init__(f"not contained at {point!r}" + (f": {detail}" if detail else ""))


class BaseMismatch(FibraError):
    pass


class EmptyFiber(FibraError):
    def __init__(self, point):
        self.point = point
        super().__init__(f"empty fiber over {point!r}")


class MissingTrivialization(FibraError):
    pass


class NonInjectiveBase(FibraError):
    def __init__(self, which):
        self.which = which
        super().__init__(f"base of {which} is not an injective map")


class BundleMismatch(FibraError):
    pass


class SingularFiber(FibraError):
    def __init__(self, x, y):
        self.pair = (x, y)
        super().__init__(f"fiber relation over {(x, y)!r} differs from the others under the charts")


class NonUniformSubbundle(FibraError):
    pass


class NotOverDiagonal(FibraError):
    pass


class NotEndorelation(FibraError):
    pass


class PartialDomain(FibraError):
    pass


class ArityMismatch(FibraError):
    pass


class NotAnEquivalence(FibraError):
    pass


class UnknownPoint(FibraError):
    pass


class UnknownElement(FibraError):
    pass


class SectionMismatch(FibraError):
    pass


class BrokenChain(FibraError):
    def __init__(self, level, detail=""):
        self.level = level
        super().__init__(f"tower chain broken at level {level}" + (f": {detail}" if detail else ""))


class EnumerationBound(FibraError):
    pass


class TheoremViolation(FibraError):
    """An embedded postcondition (a theorem of the theory) failed. Indicates a bug."""
