import dataclasses
from abc import abstractmethod
from pathlib import Path, PurePath
from typing import Any, Dict, IO, List, Optional, Union

import flexio
from flexio import FilePointer
from flexio.flexio import is_file_pointer
from registry import SubclassRegistry

from qlambert.errors import UnknownReportFormat


@dataclasses.dataclass
class Target:
    """
    Where a report goes or a catalog comes from: a path, an open stream or
    `None` for an in-memory buffer.
    """

    src: Union[IO, FilePointer, None] = None
    stream = None

    @property
    def suffix(self) -> str:
        if self.src is None:
            return ''
        name = self.src if is_file_pointer(self.src) \
            else getattr(self.src, 'name', None)
        return Path(name).suffix if isinstance(name, (str, PurePath)) else ''

    def open(self, mode: str):
        # a buffer is read back after writing, so it stays open
        self.stream = flexio.flex_open(
            f=self.src, mode=mode, close_io=False if self.src is None else None)
        return self.stream

    def getvalue(self) -> str:
        self.stream.seek(0)
        return self.stream.read()


@dataclasses.dataclass
class Document:
    """
    One command result in the three shapes the writers need.

    :ivar data: builtins (dicts, lists, strings) for structured formats.
    :ivar rows: a flat table for csv; every row has the same keys.
    :ivar text: the human readable rendering.
    """

    data: Any
    rows: List[Dict[str, Any]]
    text: str


class ReportFormat(SubclassRegistry):
    """
    Writer of command results.

    Derive :py:class:`ReportFormat` with ``exts=[...]`` to add a format.
    """

    @abstractmethod
    def write(self, doc: Document, f):
        """
        Write the document to an open text stream.
        """
        pass

    def dump(self, doc: Document, target: Target) -> Optional[str]:
        """
        Write to `target`; returns the text when it is an in-memory buffer.
        """
        with target.open('wt+') as f:
            self.write(doc, f)

            if target.src is None:
                return target.getvalue()
        return None

    @staticmethod
    def instance_by(fmt: str, **kwargs) -> 'ReportFormat':
        """
        Find a registered format class and instantiate.

        :param fmt: format name or file extension, with or without the dot.
        :return: the matched formatter instance
        :raises UnknownReportFormat: if not matched
        """
        if not fmt.startswith('.'):
            fmt = '.' + fmt

        for cls, meta in ReportFormat.center().items():
            if fmt in meta['exts']:
                return cls(**kwargs)

        raise UnknownReportFormat(fmt)


def render(doc: Document, dst: Union[IO, FilePointer, None] = None, *,
           fmt: Optional[str] = None) -> Optional[str]:
    """
    Render a document to `dst` (a path, an open file or `None` for a string).

    :param fmt: format name; if `None`, inferred from the file extension.
    :raises UnknownReportFormat: when no format is registered for `fmt`.
    """
    target = Target(dst)
    fmt = fmt or target.suffix

    try:
        formatter = ReportFormat.instance_by(fmt)
        return formatter.dump(doc, target)

    except ModuleNotFoundError as err:
        err.msg += f' - required by report format {fmt}.'
        raise err

    except UnknownReportFormat as err:
        if not fmt:
            err.msg = 'Cannot infer the report format, specify it explicitly.'
        raise err
