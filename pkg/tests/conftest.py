import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tensor_envelope.diagram import DiagramCategory  # noqa: E402
from tensor_envelope.monoidal import MonoidalChecker  # noqa: E402
from tensor_envelope.regular import make_backend  # noqa: E402
from tensor_envelope.ringel import RingelEngine  # noqa: E402
from tensor_envelope.scalar import make_field  # noqa: E402
from tensor_envelope.weights import build_algebra, highest_weight_category  # noqa: E402


# (criterion number, passed, seconds, limit) rows filled by the acceptance module
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k, ok, secs, limit in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {secs:7.2f}s  (limit {limit}s)")


@lru_cache(maxsize=None)
def finset():
    return make_backend("finset_op")


@lru_cache(maxsize=None)
def finvec(q=2):
    return make_backend("finvec", q)


@lru_cache(maxsize=None)
def diagram(t="generic", backend="finset_op", q=2):
    cat = finset() if backend == "finset_op" else finvec(q)
    return DiagramCategory(cat, make_field(t))


@lru_cache(maxsize=None)
def algebra_hw(t="generic", N=2):
    A = build_algebra(finset(), make_field(t), N)
    return A, highest_weight_category(A)


@lru_cache(maxsize=None)
def engine(t="generic", N=2):
    return RingelEngine(algebra_hw(t, N)[1])


@lru_cache(maxsize=None)
def checker(t="generic", N=2):
    A, hw = algebra_hw(t, N)
    return MonoidalChecker(hw, A)


@pytest.fixture
def fresh_hw():
    """An algebra and category built from scratch, safe to corrupt."""
    def build(t="generic", N=2):
        A = build_algebra(make_backend("finset_op"), make_field(t), N)
        return A, highest_weight_category(A)
    return build
