"""Acceptance criteria, one test each; prints a PASS/FAIL line per criterion.

Run standalone with ``python3 tests/test_acceptance.py [--seed N]``.
"""

import argparse
import sys
import time

import pytest

from qfalg import verify

OPTIONS = verify.Options(seed=0, trials=8, max_order=8)
TOTAL_BUDGET = 120.0
_elapsed = []


@pytest.fixture(scope="module", autouse=True)
def _jit():
    verify.warm_up()


@pytest.mark.parametrize("number", range(1, len(verify.CRITERIA) + 1))
def test_criterion(number, capsys):
    res = verify.run_one(verify.CRITERIA[number - 1], OPTIONS)
    _elapsed.append(res.seconds)
    with capsys.disabled():
        print("\n" + res.line())
    assert res.error is None, res.error
    assert not res.failures(), res.failures()
    assert res.seconds <= res.budget, "runtime %.2fs over budget %gs" % (res.seconds, res.budget)
    assert res.passed


def test_total_runtime():
    assert len(_elapsed) == len(verify.CRITERIA)
    assert sum(_elapsed) < TOTAL_BUDGET


def main(argv=None):
    ap = argparse.ArgumentParser(description="Run the acceptance criteria and print one line each.")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    t0 = time.perf_counter()
    results = verify.run_all(verify.Options(seed=args.seed))
    for r in results:
        print(r.line())
    ok = all(r.passed for r in results)
    print("%d/%d passed in %.1fs" % (sum(r.passed for r in results), len(results), time.perf_counter() - t0))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
