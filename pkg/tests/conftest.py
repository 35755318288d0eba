import dataclasses
from typing import Any, Tuple, Union

import pytest

from qlambert.catalog import catalog


@dataclasses.dataclass
class Raises:
    """
    Expected exception of a table case; `kwargs` go to `pytest.raises`.
    """
    exc: Union[Any, Tuple[Any, ...]]
    kwargs: dict = dataclasses.field(default_factory=dict)


def case_name(case):
    return case.name


@pytest.fixture(scope='session')
def packaged():
    """
    The packaged catalog keyed by id.
    """
    return {r.id: r for r in catalog()}
