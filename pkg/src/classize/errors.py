"""Exception hierarchy shared by every module."""


class ClassizeError(Exception):
    """Base class for library errors."""


class DomainError(ClassizeError, ValueError):
    """An argument lies outside the domain of an operation."""


class SizeUndefined(DomainError):
    """theta_f cannot be evaluated because f is undefined at every usable modulus."""


class ParseError(ClassizeError, ValueError):
    """Malformed set expression, f-spec or formula."""

    def __init__(self, message, text=None, pos=None):
        self.text = text
        self.pos = pos
        if text is not None and pos is not None:
            line = text.count("\n", 0, pos) + 1
            col = pos - (text.rfind("\n", 0, pos) + 1) + 1
            self.line, self.column = line, col
            message = f"{message} (line {line}, column {col})"
        else:
            self.line = self.column = None
        super().__init__(message)


class EvaluationError(ClassizeError):
    """A formula cannot be evaluated (unbound variable, unsupported construct)."""


class UnsupportedFragment(EvaluationError):
    """The formula lies outside the fragment an evaluator handles."""
