"""Exception hierarchy shared by every folcheck module."""


class FolError(Exception):
    """Base class for all folcheck errors."""


class CommonFactor(FolError):
    pass


class NotAUnit(FolError):
    pass


class NotYGeneral(FolError):
    pass


class Unachievable(FolError):
    pass


class UnsupportedExtension(FolError):
    """A Newton-Puiseux step needs a root outside the rationals."""


class NotSquareFree(FolError):
    pass


class TruncationInsufficient(FolError):
    """The truncation order is too small to certify the requested quantity."""


class InvalidSequence(FolError):
    pass


class InfiniteIntersection(FolError):
    """The two germs share a component."""


class DegreeTooLarge(FolError):
    pass


class NotInvariant(FolError):
    pass


class HypothesisFailed(FolError):
    pass


class NotLorayShape(FolError):
    pass


class NotDistinguished(FolError):
    """A series is not a Weierstrass-type polynomial in y."""


class PolynomialSyntaxError(FolError, SyntaxError):
    def __init__(self, message, text="", line=1, column=1):
        self.message = message
        self.text_value = text
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")
