"""
The identity catalog: record types and the block-format loader.

A catalog file is a sequence of blocks::

    id: prop21-m2
    lhs: A($x,$y,$z,$w) + A($y,$x,$w,$z)
    rhs: L($x,$w)*L($y,$z) + L($x*$y,$z,$w)
    mode: equal
    param: z ne1
    param: w ne1
    degree: 40
    cite: the T-relation

Each ``id:`` opens a new record. Lines indented by whitespace continue the
previous field, ``#`` starts a comment.
"""
import dataclasses
import functools
import importlib.resources
import logging
import re
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from flexio import FilePointer

from qlambert import dsl
from qlambert.builders import Param
from qlambert.errors import CatalogError, QLambertError, UnknownIdentity
from qlambert.formats.base import Target
from qlambert.scalars import parse_rational

logger = logging.getLogger(__name__)

ENV_CATALOG = 'QLAMBERT_CATALOG'

_FIELDS = ('id', 'lhs', 'rhs', 'mode', 'param', 'intparam', 'degree', 'cite')


@dataclasses.dataclass(frozen=True)
class Constraint:
    """
    One predicate on a sampled coefficient: ``nonzero``, ``ne1``, ``abs<1``,
    ``ne(<param>)`` or ``fixed(<c>[,<e>])``.
    """

    kind: str
    arg: Optional[str] = None

    _SYNTAX = re.compile(r'^(nonzero|ne1|abs<1|ne|fixed)(?:\((.*)\))?$')

    @staticmethod
    def parse(text: str) -> 'Constraint':
        match = Constraint._SYNTAX.match(text.strip())
        if not match:
            raise ValueError(f'unknown constraint {text!r}')
        kind, arg = match.groups()
        if (kind in ('ne', 'fixed')) != (arg is not None):
            raise ValueError(f'constraint {text!r} has the wrong arity')
        constraint = Constraint(kind, arg)
        if kind == 'fixed':
            constraint.fixed_value()
        return constraint

    def fixed_value(self) -> Param:
        c, _, e = self.arg.partition(',')
        return Param(parse_rational(c), int(e) if e.strip() else 0)

    def holds(self, value: Param, bindings: Mapping[str, Param]) -> bool:
        c = value.c
        if self.kind == 'nonzero':
            return c != 0
        if self.kind == 'ne1':
            return not (value.e == 0 and c == 1)
        if self.kind == 'abs<1':
            return value.e > 0 or abs(c) < 1
        if self.kind == 'ne':
            other = bindings[self.arg]
            return (other.c, other.e) != (c, value.e)
        return value == self.fixed_value()

    def __str__(self):
        return self.kind if self.arg is None else f'{self.kind}({self.arg})'


@dataclasses.dataclass(frozen=True)
class ParamSpec:
    name: str
    constraints: Tuple[Constraint, ...] = ()

    @property
    def fixed(self) -> Optional[Param]:
        for c in self.constraints:
            if c.kind == 'fixed':
                return c.fixed_value()
        return None


@dataclasses.dataclass(frozen=True)
class IntParam:
    name: str
    lo: int
    hi: int

    def values(self) -> range:
        return range(self.lo, self.hi + 1)


@dataclasses.dataclass(frozen=True)
class ComparisonMode:
    """
    How the two sides are compared.

    ``equal`` compares every coefficient, ``odd`` requires even-indexed
    coefficients to vanish, ``even`` compares even-indexed coefficients, and
    ``subseq`` checks ``[q^(s*n)] == target(n)`` for ``n >= 1``.
    """

    kind: str
    stride: Optional[dsl.Expr] = None
    target: Optional[str] = None
    target_arg: Optional[str] = None

    _SUBSEQ = re.compile(r'^subseq\((.+),\s*(sigma|wdivsum)\(\s*([\w$]+)\s*\)\s*\)$')

    @staticmethod
    def parse(text: str) -> 'ComparisonMode':
        text = text.strip()
        if text in ('equal', 'odd', 'even'):
            return ComparisonMode(text)
        match = ComparisonMode._SUBSEQ.match(text)
        if not match:
            raise ValueError(f'unknown comparison mode {text!r}')
        stride, target, arg = match.groups()
        if target == 'sigma' and not arg.isdigit():
            raise ValueError(f'sigma(k) needs an integer k, got {arg!r}')
        return ComparisonMode('subseq', dsl.parse(stride), target,
                              arg.lstrip('$'))

    @property
    def needs_rhs(self) -> bool:
        return self.kind in ('equal', 'even')

    def __str__(self):
        if self.kind != 'subseq':
            return self.kind
        return f'subseq({self.stride}, {self.target}({self.target_arg}))'


@dataclasses.dataclass(frozen=True)
class IdentityRecord:
    id: str
    lhs: dsl.Expr
    rhs: Optional[dsl.Expr]
    mode: ComparisonMode
    params: Tuple[ParamSpec, ...] = ()
    int_params: Tuple[IntParam, ...] = ()
    degree: int = 40
    cite: str = ''
    line: int = 0

    @property
    def sampled(self) -> Tuple[ParamSpec, ...]:
        return tuple(p for p in self.params if p.fixed is None)


_INTPARAM = re.compile(r'^(\w+)\s+(-?\d+)\s*\.\.\s*(-?\d+)$')


class _Block:
    def __init__(self, line: int):
        self.line = line
        self.fields: Dict[str, List[str]] = {}
        self.last: Optional[str] = None

    def add(self, key: str, value: str):
        self.fields.setdefault(key, []).append(value)
        self.last = key

    def extend(self, text: str):
        values = self.fields[self.last]
        values[-1] = f'{values[-1]} {text}'

    def one(self, key: str, required: bool = True) -> Optional[str]:
        values = self.fields.get(key, [])
        if len(values) > 1:
            raise ValueError(f'field `{key}` given {len(values)} times')
        if not values:
            if required:
                raise ValueError(f'missing field `{key}`')
            return None
        return values[0]


def _record(block: _Block) -> IdentityRecord:
    ident = block.fields.get('id', [None])[0]
    try:
        lhs = dsl.parse(block.one('lhs'))
        rhs_text = block.one('rhs', required=False)
        rhs = dsl.parse(rhs_text) if rhs_text is not None else None
        mode = ComparisonMode.parse(block.one('mode', required=False) or 'equal')
        if mode.needs_rhs and rhs is None:
            raise ValueError(f'mode {mode} needs an rhs')
        params = []
        for text in block.fields.get('param', []):
            name, *constraints = text.split()
            params.append(ParamSpec(name.lstrip('$'), tuple(
                Constraint.parse(c) for c in constraints)))
        int_params = []
        for text in block.fields.get('intparam', []):
            match = _INTPARAM.match(text.strip())
            if not match:
                raise ValueError(f'malformed intparam {text!r}, expected `N lo..hi`')
            name, lo, hi = match.groups()
            int_params.append(IntParam(name.lstrip('$'), int(lo), int(hi)))
        degree = int(block.one('degree', required=False) or 40)
        if degree < 1:
            raise ValueError('degree must be >= 1')
    except (QLambertError, ValueError) as e:
        raise CatalogError(ident, block.line, str(e)) from e

    record = IdentityRecord(
        id=ident, lhs=lhs, rhs=rhs, mode=mode, params=tuple(params),
        int_params=tuple(int_params), degree=degree,
        cite=block.one('cite', required=False) or '', line=block.line,
    )
    _validate(record)
    return record


def _validate(record: IdentityRecord):
    declared = {p.name for p in record.params} | \
               {p.name for p in record.int_params}
    used = dsl.free_params(record.lhs)
    if record.rhs is not None:
        used |= dsl.free_params(record.rhs)
    if record.mode.stride is not None:
        used |= dsl.free_params(record.mode.stride)
    missing = sorted(used - declared)
    if missing:
        raise CatalogError(record.id, record.line,
                           f'undeclared parameters {", ".join(missing)}')
    names = {p.name for p in record.params}
    for p in record.params:
        for c in p.constraints:
            if c.kind == 'ne' and c.arg not in names:
                raise CatalogError(record.id, record.line,
                                   f'constraint {c} names an unknown parameter')
    if record.mode.target == 'wdivsum' and record.mode.target_arg not in names:
        raise CatalogError(record.id, record.line,
                           f'mode {record.mode} names an unknown parameter')


def parse_catalog(text: str) -> List[IdentityRecord]:
    """
    Parse catalog text into records, in file order.

    :raises CatalogError: with the entry id and line of the first bad block.
    """
    blocks: List[_Block] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split('#', 1)[0].rstrip()
        if not line.strip():
            continue
        if line[0].isspace():
            if not blocks or blocks[-1].last is None:
                raise CatalogError(None, lineno, 'continuation line without a field')
            blocks[-1].extend(line.strip())
            continue
        key, sep, value = line.partition(':')
        key = key.strip()
        if not sep or key not in _FIELDS:
            entry = blocks[-1].fields.get('id', [None])[0] if blocks else None
            raise CatalogError(entry, lineno, f'unknown field {key!r}')
        if key == 'id':
            blocks.append(_Block(lineno))
        elif not blocks:
            raise CatalogError(None, lineno, 'field before the first `id:`')
        blocks[-1].add(key, value.strip())

    records = [_record(b) for b in blocks]
    seen = set()
    for r in records:
        if r.id in seen:
            raise CatalogError(r.id, r.line, 'duplicate id')
        seen.add(r.id)
    logger.debug('parsed %d catalog records', len(records))
    return records


def load_catalog(src: Union[FilePointer, None] = None) -> List[IdentityRecord]:
    """
    Load a catalog file; `None` loads the packaged catalog.
    """
    if src is None:
        return list(catalog())
    with Target(src).open('rt') as f:
        return parse_catalog(f.read())


@functools.lru_cache(maxsize=None)
def catalog() -> Tuple[IdentityRecord, ...]:
    """
    The packaged identity catalog.
    """
    text = importlib.resources.files('qlambert') \
        .joinpath('data').joinpath('identities.txt').read_text(encoding='utf-8')
    return tuple(parse_catalog(text))


def select(records: Iterable[IdentityRecord],
           ids: Iterable[str] = ()) -> List[IdentityRecord]:
    """
    Pick records by id in the order asked; no ids selects everything.

    :raises UnknownIdentity: for an id not in `records`.
    """
    records = list(records)
    ids = list(ids)
    if not ids:
        return records
    by_id = {r.id: r for r in records}
    try:
        return [by_id[i] for i in ids]
    except KeyError as e:
        raise UnknownIdentity(e.args[0]) from None


def resolve_catalog_path(flag: Optional[str],
                         environ: Mapping[str, str]) -> Optional[Path]:
    """
    Flag beats the environment variable beats the packaged catalog (`None`).
    """
    value = flag or environ.get(ENV_CATALOG)
    return Path(value) if value else None
