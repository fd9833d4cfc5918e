from __future__ import annotations

import time
from random import Random

import pytest

from lsl import GF, decompose_projectives, enumerate_group, simples
from lsl.groups import catalog_group
from lsl.modules import default_seeds


class Pipeline:
    """Everything downstream tests need for one (group, field) pair."""

    def __init__(self, name: str):
        self.name = name
        self.presentation = catalog_group(name)
        self.field = GF(*self.presentation.default_field)
        self.table = enumerate_group(self.presentation)
        self.rng = Random(0)
        rounds = 2 if self.table.order > 500 else 0
        self.registry = simples(
            self.table,
            self.field,
            default_seeds(self.table, self.field, self.rng),
            self.rng,
            tensor_rounds=rounds,
        )
        self.pims = decompose_projectives(self.table, self.field, self.registry, self.rng)


_cache: dict[str, Pipeline] = {}


def get_pipeline(name: str) -> Pipeline:
    if name not in _cache:
        _cache[name] = Pipeline(name)
    return _cache[name]


@pytest.fixture(scope="session")
def pipeline():
    return get_pipeline


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when == "call" and item.module.__name__ == "test_acceptance":
        label = item.name.replace("test_", "")
        print(f"\nACCEPTANCE {label}: {'PASS' if report.passed else 'FAIL'}")


def timed(fn, limit: float):
    """Run fn, assert wall time under limit (the stated budget), return result."""
    t0 = time.time()
    out = fn()
    elapsed = time.time() - t0
    assert elapsed < limit, f"took {elapsed:.1f}s, budget {limit}s"
    return out
