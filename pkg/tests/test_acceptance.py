"""The ten acceptance criteria, one test each.

Each check prints a PASS/FAIL line (collected again in the terminal summary).
Run this file directly to print just those lines.
"""

import sys

import pytest

from mvcycles import reproduce

RESULTS: dict = {}



@pytest.fixture(scope="module")
def a5_cache(tmp_path_factory):
    return str(tmp_path_factory.mktemp("cluster") / "a5.jsonl")


@pytest.mark.parametrize("key", list(reproduce.CHECKS))
def test_criterion(key, a5_cache, capsys):
    kwargs = {"cache": a5_cache} if key in ("2", "5") else {}
    res = reproduce.run(key, **kwargs)
    RESULTS[key] = res
    with capsys.disabled():
        print("\n" + res.line())
    assert res.passed, res.line()


if __name__ == "__main__":
    failed = 0
    for key in reproduce.CHECKS:
        res = reproduce.run(key)
        print(res.line(), flush=True)
        failed += not res.passed
    sys.exit(1 if failed else 0)
