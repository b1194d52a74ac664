"""Exception hierarchy shared by the pipeline."""


class HFError(Exception):
    """Base class for every error raised by hfcontact."""


class InvalidPage(HFError):
    pass


class InvalidCurve(HFError):
    pass


class CoincidentPosition(HFError):
    """Two curves occupy the same exact position on a basis arc."""


class NotClosed(HFError):
    pass


class InvalidRoute(HFError):
    pass


class NonMinimalPosition(HFError):
    pass


class NonDiskRegion(HFError):
    pass


class NotADomain(HFError):
    pass


class NotNice(HFError):
    def __init__(self, message, offenders=()):
        super().__init__(message)
        self.offenders = list(offenders)


class NicenessLost(NotNice):
    pass


class NotAComplex(HFError):
    pass


class NotACycle(HFError):
    pass


class InconsistentDiagram(HFError):
    """Internal consistency check failed while assembling a diagram."""


class ParseError(HFError):
    def __init__(self, message, line=None, column=None):
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
        self.column = column
