# exceptions.py

# Custom Exceptions
class EngineError(Exception):
    """Base class for engine errors"""
    pass

class MonoidError(EngineError):
    pass

class CompositionError(MonoidError):
    """A sum was requested for a multiset that is not composable."""
    pass

class ParseError(EngineError):
    """Malformed description or interchange file."""

    def __init__(self, message: str, path: str | None = None, line_number: int | None = None):
        self.path = path
        self.line_number = line_number
        location = ""
        if path is not None:
            location += f"{path}"
        if line_number is not None:
            location += f":{line_number}"
        super().__init__(f"{location}: {message}" if location else message)

class SimplicialError(EngineError):
    pass

class DepthError(SimplicialError):
    """Materialization depth is too small for the request."""
    pass

class BoundaryError(EngineError):
    pass

class ComparisonError(EngineError):
    pass

class ConfigError(EngineError):
    """A settings value that cannot be converted to its setting's type."""
    pass
