class SubwordLogicError(Exception):
    """Base class for all errors raised by this package."""


class AlphabetError(SubwordLogicError, ValueError):
    pass


class ParseError(SubwordLogicError, ValueError):
    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class FragmentError(SubwordLogicError, ValueError):
    """The formula lies outside the fragment an operation accepts."""


class EvaluationError(SubwordLogicError, ValueError):
    pass
