import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from tworay import (AlgebraBasis, StringModules, WordCalculus, build_quiver,
                    build_relations, validate)

SYSTEMS = {
    "fund21": {"p": [2], "q": [1], "S": [[]], "T": [[]]},
    "fund32": {"p": [3, 2], "q": [1, 1], "S": [[], []], "T": [[], []]},
    "fund22": {"p": [2, 2], "q": [2, 1], "S": [[], []], "T": [[], []]},
    "s_only": {"p": [2], "q": [1], "S": [[2]], "T": [[]]},
    "s24": {"p": [5], "q": [1], "S": [[2, 4]], "T": [[]]},
    "tsys": {"p": [2], "q": [1], "S": [[2]], "T": [[2]]},
    "ex14": {"p": [6, 3], "q": [2, 2], "S": [[2, 4, 6, 8], [2]],
             "T": [[4, 6], []]},
    "ex14_display": {"p": [6, 3], "q": [2, 2], "S": [[2, 4, 6, 8], [2]],
                     "T": [[2, 6], []]},
}


class Ctx:
    """One defining system with everything built on top of it."""

    def __init__(self, raw, field=None):
        self.ds = validate(raw)
        self.quiver = build_quiver(self.ds)
        self.relations = build_relations(self.ds, self.quiver)
        self.calc = WordCalculus(self.quiver)
        self.modules = StringModules(self.calc, field)
        self._algebra = None
        self.field = self.modules.field

    @property
    def algebra(self):
        if self._algebra is None:
            self._algebra = AlgebraBasis(self.quiver, self.relations,
                                         self.field)
        return self._algebra


_cache = {}


def ctx(name) -> Ctx:
    if name not in _cache:
        _cache[name] = Ctx(SYSTEMS[name])
    return _cache[name]


@pytest.fixture
def fund21():
    return ctx("fund21")


@pytest.fixture
def tsys():
    return ctx("tsys")


@pytest.fixture
def ex14():
    return ctx("ex14")
