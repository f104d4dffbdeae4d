"""Exception hierarchy shared by every module."""


class CycpresError(ValueError):
    """Base class for all errors raised by this package."""


class WordParseError(CycpresError):
    def __init__(self, text, position, message):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}: {text!r}")


class IndexOutOfAlphabet(CycpresError):
    pass


class EmptyWord(CycpresError):
    pass


class NotCyclicallyReduced(CycpresError):
    pass


class InvalidRelator(CycpresError):
    pass


class NotMagnus(CycpresError):
    pass


class DegeneratePair(CycpresError):
    pass


class TooLong(CycpresError):
    pass


class Condition3Violated(CycpresError):
    pass


class OracleContradiction(CycpresError):
    """Two independent computations disagree, or an oracle refutes a certificate."""
