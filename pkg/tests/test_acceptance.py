"""
Property replay on generated families. The default run uses a reduced seed
list; `pytest -m slow` replays the full one.
"""
import numpy as np
import pytest

from cover_model import close_convex
from cover_model import generate_random
from cover_model import HeightFamily
from cover_model import normalize
from cover_model import order_less
from cover_model import project
from dismantle import greedy_dismantle
from dismantle import verify_dismantling
from flag_complex import cycle
from group_action import action_from_symmetries
from group_action import check_action
from group_action import find_invariant_simplex
from group_action import fix_complex
from group_action import fix_dismantle
from group_action import verify_distance_sum_decrease
from homology import reduced_homology
from homology import smith_normal_form
from instance_io import serialize
from projection import chain_length_stats
from projection import ModelProjection
from suite import run_suite

QUICK = list(range(1, 11))
FULL = list(range(1, 101))


def family_for(seed: int, full: bool) -> HeightFamily:
    if full:
        return generate_random(
            2 + seed % 3, 4 + seed % 5, 2 + seed % 4, seed, vertex_cap=300
        )
    return generate_random(3, 4, 2, seed)


def assert_all_pass(reports):
    failures = [report.line() for report in reports if not report.passed]
    assert not failures, "\n".join(failures)


def replay_suite(seed: int, full: bool):
    family = family_for(seed, full)
    ps = ModelProjection(family)
    assert_all_pass(run_suite(ps, "all", family))
    assert greedy_dismantle(ps.complex) is not None
    stats = chain_length_stats(ps)
    assert stats.verdict
    assert stats.max_ratio <= 1


def replay_hull(seed: int):
    rng = np.random.default_rng(seed)
    rows = rng.integers(0, 4, size=(int(rng.integers(2, 5)), 3)).tolist()
    members = list(dict.fromkeys(normalize(row) for row in rows))
    family = HeightFamily(3, tuple(members))
    assert close_convex(family).diameter() == family.diameter()


def replay_fixed_point(seed: int):
    family = generate_random(3, 5, 2, seed, symmetry=[(1, 0, 2)])
    ps = ModelProjection(family)
    action = action_from_symmetries(family, [(1, 0, 2)])
    assert_all_pass(check_action(ps, action))

    for start in range(ps.vertex_count):
        result = find_invariant_simplex(ps, action, start)
        assert ps.complex.is_clique(result.simplex)
        assert action.is_invariant(result.simplex)
        for before, after in zip(result.trace, result.trace[1:]):
            assert (after.diameter, after.chain) < (before.diameter, before.chain)

    fix = fix_complex(ps.complex, action)
    assert fix.vertices
    for sigma_vertex in fix.vertices:
        order = fix_dismantle(ps, action, sigma_vertex, fix)
        assert verify_dismantling(fix.complex, order).passed
        assert_all_pass(
            verify_distance_sum_decrease(ps, action, sigma_vertex, delta_vertex)
            for delta_vertex in fix.vertices
            if delta_vertex != sigma_vertex
        )


def replay_agreement(seed: int):
    family = generate_random(3, 4, 2, seed)
    ps = ModelProjection(family)
    members = family.members
    for sigma, f in enumerate(members):
        for rho, g in enumerate(members):
            if sigma != rho:
                assert members[ps.proj(sigma, rho)] == project(f, g)
        for u, v in ps.complex.edges:
            assert ps.ord(sigma, u, v) == order_less(f, members[u], members[v])


def test_negative_controls():
    assert greedy_dismantle(cycle(4)) is None
    assert greedy_dismantle(cycle(5)) is None
    assert reduced_homology(cycle(4)).betti[1] == 1
    assert smith_normal_form(np.diag([2, 3]))[0] == [1, 6]


@pytest.mark.parametrize("seed", QUICK)
def test_axiom_suite(seed):
    replay_suite(seed, full=False)


@pytest.mark.parametrize("seed", QUICK)
def test_hull_diameter(seed):
    replay_hull(seed)


@pytest.mark.parametrize("seed", QUICK[:5])
def test_fixed_points(seed):
    replay_fixed_point(seed)


@pytest.mark.parametrize("seed", QUICK[:5])
def test_model_agreement(seed):
    replay_agreement(seed)


def test_generation_is_byte_identical():
    for seed in QUICK[:3]:
        first = generate_random(3, 6, 3, seed)
        second = generate_random(3, 6, 3, seed)
        assert serialize(first) == serialize(second)
        assert serialize(ModelProjection(first)) == serialize(ModelProjection(second))


@pytest.mark.slow
@pytest.mark.parametrize("seed", FULL)
def test_axiom_suite_full(seed):
    replay_suite(seed, full=True)


@pytest.mark.slow
@pytest.mark.parametrize("seed", FULL)
def test_hull_diameter_full(seed):
    replay_hull(seed + 1000)


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(1, 21))
def test_fixed_points_full(seed):
    replay_fixed_point(seed)
