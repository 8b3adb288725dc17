"""
Exception hierarchy shared by every toolkit module
"""


class ToolkitError(ValueError):
    """Base class for data and argument problems (CLI exit status 1)"""


class RangeError(ToolkitError):
    """Index or range outside the series"""


class ArgumentError(ToolkitError):
    """Invalid configuration or inconsistent inputs"""


class InsufficientDataError(ToolkitError):
    """Stream ended before a window could settle"""


class ParseError(ToolkitError):
    """Malformed input file"""

    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        location = []
        if line is not None:
            location.append(f"line {line}")
        if field is not None:
            location.append(f"field '{field}'")
        if location:
            message = f"{message} ({', '.join(location)})"
        super().__init__(message)
