from typing import Iterable, Optional


class QLambertError(Exception):
    def __init__(self, msg):
        self.msg = msg

    def __str__(self):
        return self.msg


class DomainError(QLambertError, ValueError):
    def __init__(self, param: str, reason: str):
        self.param = param
        self.reason = reason
        super().__init__(f'parameter `{param}`: {reason}')


class IllFormedShift(QLambertError):
    def __init__(self, shift: int, valuation: Optional[int]):
        self.shift = shift
        self.valuation = valuation
        super().__init__(
            f'cannot multiply by q^{shift}: series valuation is '
            f'{"infinite" if valuation is None else valuation}'
        )


class ParseError(QLambertError):
    def __init__(self, text: str, pos: int, expected: Iterable[str]):
        self.line = text.count('\n', 0, pos) + 1
        self.column = pos - (text.rfind('\n', 0, pos) + 1) + 1
        self.expected = tuple(expected)
        found = text[pos:pos + 1] or 'end of input'
        super().__init__(
            f'syntax error at line {self.line}, column {self.column}: '
            f'expected {" or ".join(self.expected)}, found {found!r}'
        )


class UnknownBuilder(QLambertError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f'unknown builder `{name}`')


class UnboundParameter(QLambertError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f'parameter `${name}` is not bound')


class EvaluationError(QLambertError):
    def __init__(self, path: str, cause: Exception):
        self.path = path
        self.cause = cause
        super().__init__(f'in `{path}`: {cause}')


class SamplingError(QLambertError):
    def __init__(self, identity: str, rejects: int):
        super().__init__(
            f'{identity}: no admissible parameters after {rejects} rejected '
            f'draws, the constraint set looks unsatisfiable'
        )


class CatalogError(QLambertError):
    def __init__(self, entry: Optional[str], line: int, reason: str):
        self.entry = entry
        self.line = line
        super().__init__(
            f'catalog entry {entry or "<unnamed>"} (line {line}): {reason}'
        )


class UnknownIdentity(QLambertError):
    def __init__(self, identity: str):
        super().__init__(f'no identity `{identity}` in the catalog')


class UnknownReportFormat(QLambertError):
    def __init__(self, fmt):
        super().__init__(
            f'no Format registered in `:py:class:qlambert.ReportFormat` for '
            f'format {fmt}.'
        )
