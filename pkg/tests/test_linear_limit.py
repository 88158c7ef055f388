import pytest

from boundary_lax.monodromy.linear_limit import linear_limit_check
from boundary_lax.pcm import build_pcm
from boundary_lax.sigma import AntiAutomorphism
from boundary_lax.tensor import MatrixRF, identity

PCM = build_pcm("gl(2)")
CASES = [
    (AntiAutomorphism.reflection(), MatrixRF.diag([1, -1])),
    (AntiAutomorphism.twisted(), identity(2)),
]
IDS = ["reflection", "twisted"]


@pytest.fixture(scope="module", params=range(2), ids=IDS)
def report(request):
    sigma, k = CASES[request.param]
    return linear_limit_check(PCM.L, k, sigma, PCM.table, PCM.r, PCM.s)


def test_left_side_is_integrated_local_algebra(report):
    assert report.summary()["lhs_minus_gen_zero"]


def test_right_side_drops_the_symmetric_part(report):
    # the first-order quadratic algebra only sees r: it equals the local one with s = 0
    s = report.summary()
    assert s["rhs_minus_gen_s0_zero"]
    assert not s["lhs_minus_rhs_zero"]


def test_zeroth_order_side_condition(report):
    assert report.order0.is_zero()

