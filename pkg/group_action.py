"""
Finite group actions on flag complexes by vertex permutations: equivariance
checks, the search for an invariant simplex by repeatedly stripping
strongly dominated vertices from an invariant hull, and the complex of
minimal invariant simplices with its projection Π_Σ and dismantling order
"""
import logging
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

import networkx as nx
import numpy as np

from const import DEFAULT_GROUP_CAP
from const import DEFAULT_ITERATION_CAP
from cover_model import HeightFamily
from cover_model import vertex_permutation
from dismantle import convex_hull
from dismantle import DismantlingOrder
from dismantle import verify_dismantling
from errors import CapExceededError
from errors import InputError
from errors import StructureError
from flag_complex import FlagComplex
from flag_complex import VertexSet
from flag_complex import vertex_set
from projection import CheckReport
from projection import clique_minimum
from projection import failed
from projection import linear_extension
from projection import passed
from projection import ProjectionStructure
from utils import log_execution_time

logger = logging.getLogger(__name__)

Permutation = Tuple[int, ...]


def compose(p: Sequence[int], q: Sequence[int]) -> Permutation:
    """p∘q: apply q first"""
    return tuple(p[v] for v in q)


@dataclass(frozen=True)
class GroupAction:
    """Group generated by vertex permutations of a complex on n vertices"""

    generators: Tuple[Permutation, ...]
    vertex_count: int

    def __post_init__(self):
        for generator in self.generators:
            if sorted(generator) != list(range(self.vertex_count)):
                raise InputError(
                    f"generator {generator} is not a permutation of {self.vertex_count} vertices"
                )

    @classmethod
    def identity(cls, n: int) -> "GroupAction":
        """The trivial action"""
        return cls((), n)

    def _check(self, v: int):
        if not 0 <= v < self.vertex_count:
            raise InputError(f"invalid vertex id {v} (action on {self.vertex_count})")

    def orbit(self, v: int) -> VertexSet:
        """Closure of {v} under the generators"""
        self._check(v)
        seen = {v}
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for generator in self.generators:
                if generator[u] not in seen:
                    seen.add(generator[u])
                    queue.append(generator[u])
        return vertex_set(seen)

    def orbits(self) -> List[VertexSet]:
        """Partition of the vertices into orbits, ordered by smallest member"""
        result = []
        covered = set()
        for v in range(self.vertex_count):
            if v not in covered:
                orbit = self.orbit(v)
                covered.update(orbit)
                result.append(orbit)
        return result

    def elements(self, cap: int = DEFAULT_GROUP_CAP) -> List[Permutation]:
        """All group elements, identity first, generated breadth first"""
        identity = tuple(range(self.vertex_count))
        seen = {identity}
        result = [identity]
        queue = deque([identity])
        while queue:
            element = queue.popleft()
            for generator in self.generators:
                product = compose(generator, element)
                if product not in seen:
                    if len(seen) >= cap:
                        raise CapExceededError("group", cap)
                    seen.add(product)
                    result.append(product)
                    queue.append(product)
        return result

    def image(self, generator: Sequence[int], vertices: Iterable[int]) -> VertexSet:
        """Image of a vertex set under one permutation"""
        return vertex_set(generator[v] for v in vertices)

    def is_invariant(self, vertices: Iterable[int]) -> bool:
        """True when every generator maps the set onto itself"""
        members = vertex_set(vertices)
        return all(self.image(g, members) == members for g in self.generators)


def action_from_symmetries(
    family: HeightFamily, permutations: Iterable[Sequence[int]]
) -> GroupAction:
    """Vertex action induced by column symmetries of a family"""
    identity = tuple(range(len(family)))
    generators = []
    for permutation in permutations:
        generator = vertex_permutation(family, permutation)
        if generator != identity and generator not in generators:
            generators.append(generator)
    return GroupAction(tuple(generators), len(family))


@log_execution_time("check_action")
def check_action(ps: ProjectionStructure, a: GroupAction) -> List[CheckReport]:
    """
    Every generator is an automorphism, commutes with the projections and
    preserves the orders. Witnesses lead with the generator index.
    """
    if a.vertex_count != ps.vertex_count:
        raise InputError(
            f"action on {a.vertex_count} vertices, complex has {ps.vertex_count}"
        )
    n = ps.vertex_count
    proj = ps.proj_matrix
    arcs = ps.arcs
    sig, rho = np.nonzero(~np.eye(n, dtype=bool))

    automorphism = projection = order = None
    edge_cases = proj_cases = order_cases = 0
    for index, generator in enumerate(a.generators):
        g = np.array(generator, dtype=np.int64)
        if automorphism is None:
            for u, v in ps.complex.edges:
                edge_cases += 1
                if not ps.complex.adjacent(generator[u], generator[v]):
                    automorphism = failed(
                        "action.automorphism", (index, u, v), edge_cases, "edge not preserved"
                    )
                    break

        if projection is None:
            image = proj[sig, rho]
            moved = np.where(image >= 0, g[np.where(image >= 0, image, 0)], image)
            ok = moved == proj[g[sig], g[rho]]
            if not ok.all():
                first = int(np.argmin(ok))
                projection = failed(
                    "action.projection-equivariance",
                    (index, sig[first], rho[first]),
                    proj_cases + first + 1,
                    f"g(π)={moved[first]} π_g(σ)(g(ρ))={proj[g[sig[first]], g[rho[first]]]}",
                )
            proj_cases += len(ok)

        if order is None:
            mapped = ps.arc_index[g[arcs[:, 0]], g[arcs[:, 1]]]
            for sigma in range(n):
                ok = (mapped >= 0) & (
                    ps.less[sigma] == ps.less[g[sigma]][np.where(mapped >= 0, mapped, 0)]
                )
                if not ok.all():
                    first = int(np.argmin(ok))
                    order = failed(
                        "action.order-equivariance",
                        (index, sigma, arcs[first, 0], arcs[first, 1]),
                        order_cases + first + 1,
                    )
                    break
                order_cases += len(ok)

    return [
        automorphism or passed("action.automorphism", edge_cases),
        projection or passed("action.projection-equivariance", proj_cases),
        order or passed("action.order-equivariance", order_cases),
    ]


def _induced_metric(c: FlagComplex, vertices: VertexSet):
    sub, remap = c.induced(vertices)
    position = {v: i for i, v in enumerate(remap)}
    return sub, position


def is_semi_convex(ps: ProjectionStructure, vertices: Iterable[int]) -> CheckReport:
    """
    For all σ != ρ in Y some π in Y has N_Y(π_σ(ρ)) ⊆ N_Y(π) and lies at
    distance d(π_σ(ρ), σ) from σ inside Y. A disconnected Y fails with a
    pair from different components.
    """
    name = "semi-convex"
    members = ps.complex.check_vertices(vertices)
    if not members:
        raise InputError("semi-convexity of the empty set is undefined")
    sub, position = _induced_metric(ps.complex, members)
    inner = sub.distance_matrix()
    outer = ps.complex.distance_matrix()
    balls = {v: set(ps.complex.closed_neighborhood(v, members)) for v in members}
    cases = 0
    for sigma in members:
        for rho in members:
            if rho == sigma:
                continue
            cases += 1
            if not math.isfinite(inner[position[sigma], position[rho]]):
                return failed(name, (sigma, rho), cases, "disconnected")
            image = int(ps.proj_matrix[sigma, rho])
            if image < 0:
                return failed(name, (sigma, rho), cases, "image outside the vertex set")
            target = outer[image, sigma]
            ball = set(ps.complex.closed_neighborhood(image, members))
            if not any(
                ball.issubset(balls[pi]) and inner[position[pi], position[sigma]] == target
                for pi in members
            ):
                return failed(name, (sigma, rho), cases, f"no witness for π_σ(ρ)={image}")
    return passed(name, cases)


def strongly_dominated(c: FlagComplex, vertices: Iterable[int]) -> VertexSet:
    """Vertices v of Y with N_Y(v) ⊊ N_Y(w) for some w in Y"""
    members = c.check_vertices(vertices)
    balls = {v: set(c.closed_neighborhood(v, members)) for v in members}
    return tuple(
        v
        for v in members
        if any(balls[v] < balls[w] for w in balls[v] if w != v)
    )


def layer_chain_stat(ps: ProjectionStructure, vertices: Iterable[int]) -> int:
    """
    l(Y): the longest <_σ chain among vertices of Y at distance diam(Y) from
    σ inside Y, maximized over σ in Y; 0 when Y is a single vertex
    """
    members = ps.complex.check_vertices(vertices)
    if not members:
        raise InputError("l(Y) of the empty set is undefined")
    sub, position = _induced_metric(ps.complex, members)
    inner = sub.distance_matrix()
    diameter = sub.diameter()
    if diameter == 0:
        return 0
    if not math.isfinite(diameter):
        raise InputError(f"{members} does not span a connected subcomplex")
    best = 0
    for sigma in members:
        layer = [v for v in members if inner[position[sigma], position[v]] == diameter]
        if not layer:
            continue
        sub_order = ps.order_digraph(sigma).subgraph(layer)
        if not nx.is_directed_acyclic_graph(sub_order):
            raise StructureError(
                f"<_{sigma} has a cycle on {tuple(layer)}", witness=(sigma,) + tuple(layer)
            )
        best = max(best, nx.dag_longest_path_length(sub_order) + 1)
    return best


@dataclass(frozen=True)
class TraceStep:
    """One round of the invariant simplex search"""

    iteration: int
    vertices: VertexSet
    diameter: float
    chain: int
    removed: VertexSet
    checks: Tuple[Tuple[str, bool], ...]

    def line(self) -> str:
        """step <i> vertices=... diameter=... l=... removed=... <check>=ok|FAIL"""
        text = (
            f"step {self.iteration} vertices={','.join(map(str, self.vertices))} "
            f"diameter={self.diameter} l={self.chain} "
            f"removed={','.join(map(str, self.removed)) or '-'}"
        )
        for check, ok in self.checks:
            text += f" {check}={'ok' if ok else 'FAIL'}"
        return text


@dataclass(frozen=True)
class InvariantSimplexResult:
    """The invariant clique found and the trace of the rounds leading to it"""

    simplex: VertexSet
    trace: Tuple[TraceStep, ...]

    def lines(self) -> List[str]:
        """Trace lines followed by the simplex line"""
        return [step.line() for step in self.trace] + [
            "simplex " + " ".join(str(v) for v in self.simplex)
        ]


def _diameter(c: FlagComplex, vertices: VertexSet):
    sub, _ = c.induced(vertices)
    return sub.diameter()


## pylint: disable=too-many-locals
@log_execution_time("find_invariant_simplex")
def find_invariant_simplex(
    ps: ProjectionStructure,
    a: GroupAction,
    seed: int,
    iteration_cap: int = DEFAULT_ITERATION_CAP,
) -> InvariantSimplexResult:
    """
    Start from the convex hull of the orbit of seed and strip strongly
    dominated vertices until the diameter drops below 2. Each round must
    leave a nonempty, invariant, semi-convex set and lower (diameter, l)
    lexicographically; any failed check raises StructureError with the trace.
    """
    ps.complex.check_vertex(seed)
    broken = [report for report in check_action(ps, a) if not report.passed]
    if broken:
        raise StructureError(
            f"action is not equivariant: {broken[0].line()}", witness=broken[0].witness
        )
    orbit = a.orbit(seed)
    current = convex_hull(ps, orbit)
    diameter = _diameter(ps.complex, current)
    chain = layer_chain_stat(ps, current)
    hull_ok = diameter == _diameter_in(ps.complex, orbit)
    trace = [
        TraceStep(0, current, diameter, chain, (), (("hull-diameter", hull_ok),))
    ]
    if not hull_ok:
        raise StructureError("convex hull changed the diameter of the orbit", trace=trace)

    iteration = 0
    while diameter >= 2:
        iteration += 1
        if iteration > iteration_cap:
            raise StructureError(f"no invariant simplex after {iteration_cap} rounds", trace=trace)
        removed = strongly_dominated(ps.complex, current)
        remaining = tuple(v for v in current if v not in removed)
        checks = [("nonempty", bool(remaining))]
        if remaining:
            checks.append(("invariant", a.is_invariant(remaining)))
            semi_convex = is_semi_convex(ps, remaining).passed
            checks.append(("semi-convex", semi_convex))
        if all(ok for _, ok in checks):
            next_diameter = _diameter(ps.complex, remaining)
            next_chain = layer_chain_stat(ps, remaining)
            checks.append(("progress", (next_diameter, next_chain) < (diameter, chain)))
        else:
            next_diameter, next_chain = diameter, chain
        trace.append(
            TraceStep(iteration, remaining, next_diameter, next_chain, removed, tuple(checks))
        )
        failing = [check for check, ok in checks if not ok]
        if failing:
            raise StructureError(
                f"round {iteration} failed the {failing[0]} check", trace=trace
            )
        current, diameter, chain = remaining, next_diameter, next_chain

    if not ps.complex.is_clique(current) or not a.is_invariant(current):
        raise StructureError(f"{current} is not an invariant simplex", trace=trace)
    logger.info("invariant simplex %s after %d rounds", current, iteration)
    return InvariantSimplexResult(current, tuple(trace))


def _diameter_in(c: FlagComplex, vertices: VertexSet):
    """Largest ambient distance between members"""
    dist = c.distance_matrix()
    index = list(vertices)
    return int(dist[np.ix_(index, index)].max()) if index else 0


@dataclass(frozen=True, order=True)
class FixComplexVertex:
    """A minimal invariant simplex: one vertex orbit that spans a clique"""

    orbit: VertexSet

    def __str__(self):
        return "{" + ",".join(str(v) for v in self.orbit) + "}"


@dataclass(frozen=True)
class FixComplex:
    """Flag complex whose vertex i stands for vertices[i]"""

    complex: FlagComplex
    vertices: Tuple[FixComplexVertex, ...]

    def index(self, vertex: FixComplexVertex) -> int:
        """Vertex id of a minimal invariant simplex"""
        try:
            return self.vertices.index(vertex)
        except ValueError as exc:
            raise InputError(f"{vertex} is not a vertex of the fixed point complex") from exc

    def lines(self) -> List[str]:
        """One line per vertex, then one per edge"""
        lines = [f"vertex {i} {vertex}" for i, vertex in enumerate(self.vertices)]
        lines.extend(f"edge {u} {v}" for u, v in self.complex.edges)
        return lines


def fix_complex(c: FlagComplex, a: GroupAction) -> FixComplex:
    """
    Vertices are the orbits spanning cliques; two are joined when their
    union spans a clique. May be empty.
    """
    if a.vertex_count != c.vertex_count:
        raise InputError(f"action on {a.vertex_count} vertices, complex has {c.vertex_count}")
    vertices = tuple(FixComplexVertex(orbit) for orbit in a.orbits() if c.is_clique(orbit))
    edges = tuple(
        (i, j)
        for i, first in enumerate(vertices)
        for j in range(i + 1, len(vertices))
        if c.is_clique(first.orbit + vertices[j].orbit)
    )
    logger.debug("fixed point complex with %d vertices, %d edges", len(vertices), len(edges))
    return FixComplex(FlagComplex(len(vertices), edges), vertices)


def _projected_orbit(
    ps: ProjectionStructure, a: GroupAction, sigma: int, delta: FixComplexVertex
) -> Tuple[int, FixComplexVertex]:
    lowest = clique_minimum(ps, sigma, delta.orbit)
    return lowest, FixComplexVertex(a.orbit(ps.proj(sigma, lowest)))


def big_project(
    ps: ProjectionStructure,
    a: GroupAction,
    sigma_vertex: FixComplexVertex,
    delta_vertex: FixComplexVertex,
) -> FixComplexVertex:
    """
    Π_Σ(Δ): the orbit of π_σ(δ) with σ the lowest vertex of Σ and δ the
    <_σ-minimum of Δ. The result must span a clique, span a clique together
    with Δ, and lie above δ in ≤_σ.
    """
    if sigma_vertex == delta_vertex:
        raise InputError(f"Π_Σ(Δ) needs Σ != Δ, got {sigma_vertex} twice")
    sigma = sigma_vertex.orbit[0]
    lowest, result = _projected_orbit(ps, a, sigma, delta_vertex)
    if not ps.complex.is_clique(result.orbit):
        raise StructureError(f"Π_Σ({delta_vertex}) = {result} is not a simplex", witness=result.orbit)
    if not ps.complex.is_clique(result.orbit + delta_vertex.orbit):
        raise StructureError(
            f"Π_Σ({delta_vertex}) = {result} does not span a simplex with Δ",
            witness=result.orbit + delta_vertex.orbit,
        )
    for pi in result.orbit:
        if not ps.leq(sigma, lowest, pi):
            raise StructureError(
                f"δ={lowest} is not below {pi} in ≤_{sigma}", witness=(sigma, lowest, pi)
            )
    return result


def verify_distance_sum_decrease(
    ps: ProjectionStructure,
    a: GroupAction,
    sigma_vertex: FixComplexVertex,
    delta_vertex: FixComplexVertex,
) -> CheckReport:
    """
    The distances from a vertex of Σ to Π_Σ(Δ) sum to less than those to Δ,
    and neither the sums nor Π_Σ(Δ) depend on the vertex of Σ chosen
    """
    name = "fix.distance-sum"
    dist = ps.complex.distance_matrix()
    try:
        result = big_project(ps, a, sigma_vertex, delta_vertex)
    except StructureError as exc:
        return failed(name, exc.witness or (), 0, str(exc))
    sums = set()
    for cases, sigma in enumerate(sigma_vertex.orbit, start=1):
        new = sum(dist[sigma, pi] for pi in result.orbit)
        old = sum(dist[sigma, delta] for delta in delta_vertex.orbit)
        if not new < old:
            return failed(name, (sigma,), cases, f"sum {new:g} not below {old:g}")
        _, alternative = _projected_orbit(ps, a, sigma, delta_vertex)
        if alternative != result:
            return failed(name, (sigma,), cases, f"Π_Σ(Δ) = {alternative} from this vertex")
        sums.add((new, old))
        if len(sums) > 1:
            return failed(name, (sigma,), cases, "sums depend on the vertex of Σ")
    return passed(name, len(sigma_vertex.orbit))


@log_execution_time("fix_dismantle")
def fix_dismantle(
    ps: ProjectionStructure,
    a: GroupAction,
    sigma_vertex: FixComplexVertex,
    fix: Optional[FixComplex] = None,
) -> DismantlingOrder:
    """
    Dismantling order of the fixed point complex: its vertices sorted by the
    rank of their lowest member in the linear extension of <_σ, each one
    retracting to Π_Σ of itself
    """
    fix = fix or fix_complex(ps.complex, a)
    fix.index(sigma_vertex)
    sigma = sigma_vertex.orbit[0]
    rank = {v: i for i, v in enumerate(linear_extension(ps, sigma))}
    order = tuple(
        sorted(
            range(len(fix.vertices)),
            key=lambda i: min(rank[v] for v in fix.vertices[i].orbit),
        )
    )
    position = {v: i for i, v in enumerate(order)}
    witness = {}
    for i, vertex_id in enumerate(order[:-1]):
        delta_vertex = fix.vertices[vertex_id]
        if delta_vertex == sigma_vertex:
            raise StructureError(
                f"Σ={sigma_vertex} is not last in the fixed point order", witness=sigma_vertex.orbit
            )
        image = big_project(ps, a, sigma_vertex, delta_vertex)
        if image not in fix.vertices:
            raise StructureError(
                f"Π_Σ({delta_vertex}) = {image} is not a vertex of the fixed point complex",
                witness=image.orbit,
            )
        witness[i] = position[fix.index(image)]
    result = DismantlingOrder(order, witness)
    report = verify_dismantling(fix.complex, result)
    if not report.passed:
        raise StructureError(
            f"fixed point dismantling rejected: {report.line()}", witness=report.witness
        )
    return result
