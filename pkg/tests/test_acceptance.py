"""Acceptance gate: every criterion at its pinned tolerance.

Run with `pytest tests/test_acceptance.py -v -s` to see one pass/fail
line per criterion, or `lpfourier verify all` for the same table.
LPFOURIER_WORKERS controls sample-level parallelism.
"""

import pytest

from lpfourier import decay, verify

WORKERS = decay.default_workers()

CRITERIA = [
    ("c1", "oracle-triangle"),
    ("c2", "closed-forms"),
    ("c3", "geometry"),
    ("c4", "van-der-corput"),
    ("c5", "stationary-fresnel"),
    ("c6", "upper-bound"),
    ("c7", "sequence-convergence"),
    ("c8", "blowup-exponent"),
    ("c9", "l1-sharpness"),
    ("c10", "conjecture-probe"),
    ("c11", "determinism"),
]


@pytest.mark.parametrize("cid,name", CRITERIA, ids=[f"{c}-{n}" for c, n in CRITERIA])
def test_acceptance_criterion(cid, name):
    result = verify.run_criterion(cid, workers=WORKERS)
    status = "PASS" if result.passed else "FAIL"
    print(f"{status}  {cid:<4} {name:<22} {result.seconds:7.1f}s  {result.detail}")
    assert result.passed, f"{cid} {name}: {result.detail}"
