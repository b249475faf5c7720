import pytest

from evoalg import linalg
from evoalg.field import COMPLEX, RATIONAL, evaluate


def mat(rows, F=COMPLEX, **env):
    """Matrix from scalars or scalar-grammar strings, with optional named parameters."""
    return [[evaluate(x, F, env) if isinstance(x, str) else F.coerce(x) for x in r] for r in rows]


def close(A, B, F=COMPLEX):
    return linalg.mat_eq(A, B, F, scale=max(1.0, linalg.max_abs(A), linalg.max_abs(B)))


@pytest.fixture(params=["complex", "rational"])
def field(request):
    return COMPLEX if request.param == "complex" else RATIONAL


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(mod.RESULTS):
            terminalreporter.write_line(mod.RESULTS[n])
