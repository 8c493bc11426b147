"""Exception hierarchy. The CLI maps InputError to exit 2, TooLargeError to 3."""


class BalfactorError(Exception):
    pass


class InputError(BalfactorError, ValueError):
    """Bad user input: malformed files, inconsistent sizes, invalid moves."""


class InvalidPaletteError(InputError):
    pass


class DimensionError(InputError):
    pass


class EdgeError(InputError):
    pass


class DivisibilityError(InputError):
    pass


class InvalidSwapError(InputError):
    pass


class PatternError(InputError):
    pass


class ParseError(InputError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.reason = message


class TooLargeError(BalfactorError):
    """An exhaustive enumeration would exceed its guard."""

    def __init__(self, what: str, count: int, limit: int):
        super().__init__(f"{what}: {count} exceeds the limit of {limit}")
        self.count = count
        self.limit = limit
