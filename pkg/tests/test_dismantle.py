import pytest

from dismantle import convex_hull
from dismantle import DismantlingOrder
from dismantle import dominated_vertex
from dismantle import greedy_dismantle
from dismantle import projection_dismantle
from dismantle import sigma_convex_hull
from dismantle import verify_dismantling
from errors import InputError
from flag_complex import complete
from flag_complex import cycle
from flag_complex import FlagComplex


def test_greedy_on_path(p3):
    order = greedy_dismantle(p3)
    assert order.order == (0, 1, 2)
    assert order.witness == {0: 1, 1: 2}
    assert order.lines() == ["order 0 1 2", "witness 0 1", "witness 1 2"]


def test_greedy_on_simplex(k3):
    assert greedy_dismantle(k3).order == (0, 1, 2)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_greedy_gets_stuck_on_cycles(n):
    assert greedy_dismantle(cycle(n)) is None


def test_greedy_single_vertex():
    order = greedy_dismantle(FlagComplex(1, ()))
    assert order.order == (0,)
    assert order.witness == {}


def test_greedy_disconnected_is_stuck():
    assert greedy_dismantle(FlagComplex(2, ())) is None


def test_greedy_empty_complex():
    with pytest.raises(InputError):
        greedy_dismantle(FlagComplex(0, ()))


def test_dominated_vertex_prefers_lowest_ids(p3, c4):
    assert dominated_vertex(p3, (0, 1, 2)) == (0, 1)
    assert dominated_vertex(p3, (1, 2)) == (1, 2)
    assert dominated_vertex(c4, (0, 1, 2, 3)) is None


def test_projection_dismantle_chain(chain3_ps):
    order = projection_dismantle(chain3_ps, 0)
    assert order.order == (2, 1, 0)
    assert order.lines() == ["order 2 1 0", "witness 2 1", "witness 1 0"]


def test_projection_dismantle_f1(f1_ps):
    order = projection_dismantle(f1_ps, 2)
    assert order.order == (1, 0, 2)
    assert order.witness == {0: 1, 1: 2}
    assert verify_dismantling(f1_ps.complex, order).passed


def test_certificate_rejects_cycle_order(c4):
    report = verify_dismantling(c4, DismantlingOrder((0, 1, 2, 3), {0: 1, 1: 2, 2: 3}))
    assert not report.passed
    assert report.witness == (0, 1, 3)
    assert "(ii)" in report.detail


def test_certificate_rejects_backward_witness(p3):
    report = verify_dismantling(p3, DismantlingOrder((0, 1, 2), {0: 1, 1: 0}))
    assert not report.passed
    assert report.witness == (1, 0)


def test_certificate_rejects_non_adjacent_witness(p3):
    report = verify_dismantling(p3, DismantlingOrder((0, 2, 1), {0: 1, 1: 2}))
    assert not report.passed
    assert report.witness == (0, 2)
    assert "(i)" in report.detail


def test_certificate_input_errors(p3):
    with pytest.raises(InputError):
        verify_dismantling(p3, DismantlingOrder((0, 1), {0: 1}))
    with pytest.raises(InputError):
        verify_dismantling(p3, DismantlingOrder((0, 1, 2), {0: 1}))


def test_certificate_on_simplex():
    c = complete(4)
    report = verify_dismantling(c, DismantlingOrder((3, 2, 1, 0), {0: 3, 1: 3, 2: 3}))
    assert report.passed
    assert report.cases == 3


def test_sigma_convex_hull(chain3_ps):
    assert sigma_convex_hull(chain3_ps, (0, 2), 0) == (0, 1, 2)
    assert sigma_convex_hull(chain3_ps, (1, 2), 1) == (1, 2)
    with pytest.raises(InputError):
        sigma_convex_hull(chain3_ps, (1, 2), 0)


def test_convex_hull(f1_ps, chain3_ps):
    assert convex_hull(f1_ps, (1, 2)) == (0, 1, 2)
    assert convex_hull(chain3_ps, (1,)) == (1,)
    with pytest.raises(InputError):
        convex_hull(f1_ps, ())
