"""Exception hierarchy.  The CLI reports domain errors by class name."""


class MflError(Exception):
    """Base class of every domain error raised by this package."""


class ExcludedClass(MflError, ValueError):
    pass


class OutOfRange(MflError, ValueError):
    pass


class NotHyperbolic(MflError, ValueError):
    pass


class TypeSetSyntaxError(MflError, ValueError):
    def __init__(self, message, text, position):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


class GenusZeroUnsupported(MflError):
    pass


class UnknownName(MflError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class WrongSpace(MflError, ValueError):
    pass


class InvalidCurveType(MflError, ValueError):
    pass


class ForbiddenTacnodalType(InvalidCurveType):
    pass


class IllPosedPairing(MflError, ArithmeticError):
    pass


class CapExceeded(MflError):
    def __init__(self, required, cap):
        super().__init__(f"requires {required} nodes, cap is {cap}")
        self.required = required
        self.cap = cap


class NotApplicable(MflError):
    def __init__(self, cite):
        super().__init__(cite)
        self.cite = cite
