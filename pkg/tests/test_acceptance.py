"""One test per acceptance criterion; each prints its pass/fail line."""

import pytest

from lrcbounds.acceptance import CHECKS, CheckResult, _timed

RESULTS = []


@pytest.mark.parametrize("num,name,group,fn", CHECKS, ids=[f"criterion{c[0]}" for c in CHECKS])
def test_criterion(num, name, group, fn):
    ok, detail, secs = _timed(fn)
    res = CheckResult(num, name, bool(ok), detail, secs)
    RESULTS.append(res)
    print(res.line())
    assert res.passed, res.line()
