import pytest

from cover_model import column_symmetries
from cover_model import generate_random
from dismantle import projection_dismantle
from dismantle import verify_dismantling
from errors import CapExceededError
from errors import InputError
from errors import StructureError
from flag_complex import complete
from flag_complex import path
from group_action import action_from_symmetries
from group_action import big_project
from group_action import check_action
from group_action import find_invariant_simplex
from group_action import fix_complex
from group_action import fix_dismantle
from group_action import FixComplexVertex
from group_action import GroupAction
from group_action import is_semi_convex
from group_action import layer_chain_stat
from group_action import strongly_dominated
from group_action import verify_distance_sum_decrease
from homology import is_homology_point
from projection import ModelProjection
from projection import TableProjection

SWAP = GroupAction(((0, 2, 1),), 3)


def edge_swap_table():
    """K_2 with each endpoint the larger one for its own base"""
    c = complete(2)
    proj = {(0, 1): 0, (1, 0): 1}
    order = {
        (0, 0, 1): False,
        (0, 1, 0): True,
        (1, 0, 1): True,
        (1, 1, 0): False,
    }
    return TableProjection(c, proj, order)


def path_table(proj_overrides=None, ord_overrides=None):
    """Path 0 - 1 - 2 with the model chain's projections unless overridden"""
    c = path(3)
    proj = {(0, 1): 0, (0, 2): 1, (1, 0): 1, (1, 2): 1, (2, 0): 1, (2, 1): 2}
    order = {}
    for sigma in range(3):
        for a, b in ((0, 1), (1, 0), (1, 2), (2, 1)):
            order[(sigma, a, b)] = c.distance(sigma, a) > c.distance(sigma, b)
    proj.update(proj_overrides or {})
    order.update(ord_overrides or {})
    return TableProjection(c, proj, order)


def test_generators_must_be_permutations():
    with pytest.raises(InputError):
        GroupAction(((0, 0, 1),), 3)
    with pytest.raises(InputError):
        GroupAction(((1, 0),), 3)


def test_orbits():
    assert SWAP.orbit(1) == (1, 2)
    assert SWAP.orbit(0) == (0,)
    assert SWAP.orbits() == [(0,), (1, 2)]
    assert GroupAction.identity(3).orbit(2) == (2,)
    with pytest.raises(InputError):
        SWAP.orbit(3)


def test_group_elements():
    rotation = GroupAction(((1, 2, 0),), 3)
    assert rotation.elements() == [(0, 1, 2), (1, 2, 0), (2, 0, 1)]
    assert GroupAction.identity(2).elements() == [(0, 1)]
    with pytest.raises(CapExceededError):
        rotation.elements(cap=2)


def test_invariance():
    assert SWAP.is_invariant((1, 2))
    assert not SWAP.is_invariant((0, 1))


def test_action_from_symmetries(f1):
    action = action_from_symmetries(f1, column_symmetries(f1))
    assert action.generators == ((0, 2, 1),)
    assert action.vertex_count == 3


def test_check_action_passes_on_swap(f1_ps):
    reports = check_action(f1_ps, SWAP)
    assert [report.name for report in reports] == [
        "action.automorphism",
        "action.projection-equivariance",
        "action.order-equivariance",
    ]
    assert all(report.passed for report in reports)


def test_check_action_identity(f1_ps, chain3_ps):
    for ps in (f1_ps, chain3_ps):
        assert all(report.passed for report in check_action(ps, GroupAction.identity(3)))


def test_check_action_rejects_non_automorphism(f1_ps):
    reports = check_action(f1_ps, GroupAction(((1, 0, 2),), 3))
    assert not reports[0].passed
    assert reports[0].witness == (0, 0, 2)


def test_check_action_size_mismatch(f1_ps):
    with pytest.raises(InputError):
        check_action(f1_ps, GroupAction.identity(2))


def test_semi_convex(chain3_ps):
    assert is_semi_convex(chain3_ps, (0, 1, 2)).passed
    assert is_semi_convex(chain3_ps, (1,)).passed
    report = is_semi_convex(chain3_ps, (0, 2))
    assert not report.passed
    assert report.witness == (0, 2)
    with pytest.raises(InputError):
        is_semi_convex(chain3_ps, ())


def test_strongly_dominated(f1, c4, k3):
    assert strongly_dominated(f1.complex, (0, 1, 2)) == (1, 2)
    assert strongly_dominated(k3, (0, 1, 2)) == ()
    assert strongly_dominated(c4, (0, 1, 2, 3)) == ()


def test_layer_chain_stat(f1_ps, triangle):
    assert layer_chain_stat(f1_ps, (0, 1, 2)) == 1
    ps = ModelProjection(triangle)
    assert layer_chain_stat(ps, (0, 1, 2)) == 2
    assert layer_chain_stat(ps, (1,)) == 0


def test_invariant_simplex_on_f1(f1_ps):
    result = find_invariant_simplex(f1_ps, SWAP, 1)
    assert result.simplex == (0,)
    first, second = result.trace
    assert first.vertices == (0, 1, 2)
    assert first.diameter == 2
    assert first.chain == 1
    assert second.removed == (1, 2)
    assert all(ok for _, ok in second.checks)
    assert result.lines()[-1] == "simplex 0"
    assert result.lines()[0] == "step 0 vertices=0,1,2 diameter=2 l=1 removed=- hull-diameter=ok"


def test_invariant_simplex_of_a_fixed_seed(chain3_ps):
    result = find_invariant_simplex(chain3_ps, GroupAction.identity(3), 2)
    assert result.simplex == (2,)
    assert len(result.trace) == 1


def test_invariant_simplex_refuses_broken_action(f1_ps):
    with pytest.raises(StructureError):
        find_invariant_simplex(f1_ps, GroupAction(((1, 0, 2),), 3), 0)


def test_fix_complex_of_swap(f1):
    fix = fix_complex(f1.complex, SWAP)
    assert fix.vertices == (FixComplexVertex((0,)),)
    assert fix.complex.vertex_count == 1
    assert fix.lines() == ["vertex 0 {0}"]


def test_fix_complex_of_identity_is_the_complex(chain3):
    fix = fix_complex(chain3.complex, GroupAction.identity(3))
    assert fix.complex == chain3.complex


def test_fix_complex_of_swapped_edge():
    ps = edge_swap_table()
    action = GroupAction(((1, 0),), 2)
    assert all(report.passed for report in check_action(ps, action))
    fix = fix_complex(ps.complex, action)
    assert fix.vertices == (FixComplexVertex((0, 1)),)


def test_big_project_identity_is_the_projection(chain3_ps):
    result = big_project(
        chain3_ps, GroupAction.identity(3), FixComplexVertex((0,)), FixComplexVertex((2,))
    )
    assert result == FixComplexVertex((1,))
    with pytest.raises(InputError):
        big_project(
            chain3_ps, GroupAction.identity(3), FixComplexVertex((0,)), FixComplexVertex((0,))
        )


def test_distance_sum_decrease_identity(chain3_ps):
    report = verify_distance_sum_decrease(
        chain3_ps, GroupAction.identity(3), FixComplexVertex((0,)), FixComplexVertex((2,))
    )
    assert report.passed
    assert report.cases == 1


def test_distance_sum_violation_is_reported():
    ps = path_table({(0, 1): 2}, {(0, 1, 2): True, (0, 2, 1): False})
    report = verify_distance_sum_decrease(
        ps, GroupAction.identity(3), FixComplexVertex((0,)), FixComplexVertex((1,))
    )
    assert not report.passed
    assert report.witness == (0,)
    assert report.detail == "sum 2 not below 1"


def test_big_project_checks_the_order():
    ps = path_table({(0, 1): 2})
    with pytest.raises(StructureError):
        big_project(ps, GroupAction.identity(3), FixComplexVertex((0,)), FixComplexVertex((1,)))


def test_fix_dismantle_identity_matches_projection_order(chain3_ps):
    order = fix_dismantle(chain3_ps, GroupAction.identity(3), FixComplexVertex((2,)))
    expected = projection_dismantle(chain3_ps, 2)
    assert order.order == expected.order
    assert order.witness == expected.witness


def test_fix_dismantle_single_vertex(f1_ps):
    order = fix_dismantle(f1_ps, SWAP, FixComplexVertex((0,)))
    assert order.order == (0,)
    assert order.witness == {}


def test_fix_dismantle_unknown_sigma(f1_ps):
    with pytest.raises(InputError):
        fix_dismantle(f1_ps, SWAP, FixComplexVertex((1, 2)))


@pytest.mark.parametrize("seed", [1, 2, 3, 4])
def test_symmetric_families(seed):
    family = generate_random(3, 5, 2, seed=seed, symmetry=[(1, 0, 2)])
    ps = ModelProjection(family)
    action = action_from_symmetries(family, [(1, 0, 2)])
    assert all(report.passed for report in check_action(ps, action))

    result = find_invariant_simplex(ps, action, 0)
    assert ps.complex.is_clique(result.simplex)
    assert action.is_invariant(result.simplex)
    for before, after in zip(result.trace, result.trace[1:]):
        assert (after.diameter, after.chain) < (before.diameter, before.chain)

    fix = fix_complex(ps.complex, action)
    assert fix.vertices
    sigma_vertex = fix.vertices[0]
    order = fix_dismantle(ps, action, sigma_vertex, fix)
    assert verify_dismantling(fix.complex, order).passed
    for delta_vertex in fix.vertices[1:]:
        assert verify_distance_sum_decrease(ps, action, sigma_vertex, delta_vertex).passed
    assert is_homology_point(fix.complex)
