"""Exact truncated q-series engine for double Lambert series identities."""

__all__ = ['QSeries', 'Dual', 'Param', 'Weight', 'BilinearSpec',
           'OrderedDoubleSpec', 'parse', 'evaluate', 'catalog', 'select',
           'verify', 'verify_all', 'ReportFormat']

try:
    import importlib.metadata as _importlib_metadata
except ModuleNotFoundError:
    # noinspection PyUnresolvedReferences
    import importlib_metadata as _importlib_metadata

try:
    __version__ = _importlib_metadata.version("qlambert")
except _importlib_metadata.PackageNotFoundError:
    __version__ = "unknown version"

from .builders import BilinearSpec, OrderedDoubleSpec, Param, Weight
from .catalog import catalog, select
from .dsl import evaluate, parse
from .formats import ReportFormat
from .qseries import QSeries
from .scalars import Dual
from .verifier import verify, verify_all
