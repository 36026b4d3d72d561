"""
Dismantling orders of flag complexes: the greedy domination recognizer, the
order produced by the projections π_σ, certificate checking, and σ-convex
and convex hulls inside a projection structure
"""
import logging
from dataclasses import dataclass
from typing import Dict
from typing import Iterable
from typing import List
from typing import Optional
from typing import Tuple

from errors import InputError
from errors import StructureError
from flag_complex import FlagComplex
from flag_complex import VertexSet
from flag_complex import vertex_set
from projection import CheckReport
from projection import failed
from projection import linear_extension
from projection import passed
from projection import ProjectionStructure
from utils import log_execution_time

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DismantlingOrder:
    """
    Vertices x_0..x_m and, for every i < m, the position j > i of the vertex
    x_i retracts to
    """

    order: Tuple[int, ...]
    witness: Dict[int, int]

    def witness_vertex(self, i: int) -> int:
        """x_j for the witness j of position i"""
        return self.order[self.witness[i]]

    def lines(self) -> List[str]:
        """Report lines: the order, then one witness x_i x_j pair per step"""
        lines = ["order " + " ".join(str(v) for v in self.order)]
        lines.extend(
            f"witness {self.order[i]} {self.witness_vertex(i)}"
            for i in sorted(self.witness)
        )
        return lines


def dominated_vertex(
    c: FlagComplex, live: Iterable[int]
) -> Optional[Tuple[int, int]]:
    """
    Lowest v in live, then lowest w != v, with N[v] ∩ live ⊆ N[w] ∩ live;
    None when no live vertex is dominated
    """
    live = c.check_vertices(live)
    if not live:
        raise InputError("live vertex set is empty")
    for v in live:
        ball = set(c.closed_neighborhood(v, live))
        ## a dominating w contains v in its ball, so it is a live neighbour of v
        for w in sorted(ball - {v}):
            if ball.issubset(c.closed_neighborhood(w, live)):
                return v, w
    return None


@log_execution_time("greedy_dismantle")
def greedy_dismantle(c: FlagComplex) -> Optional[DismantlingOrder]:
    """Remove dominated vertices one at a time; None when stuck above one vertex"""
    if c.vertex_count == 0:
        raise InputError("cannot dismantle the empty complex")
    live = list(c.vertices)
    removed: List[Tuple[int, int]] = []
    while len(live) > 1:
        found = dominated_vertex(c, live)
        if found is None:
            logger.debug("greedy dismantling stuck with %d live vertices", len(live))
            return None
        removed.append(found)
        live.remove(found[0])
    order = tuple(v for v, _ in removed) + (live[0],)
    position = {v: i for i, v in enumerate(order)}
    witness = {i: position[w] for i, (_, w) in enumerate(removed)}
    result = DismantlingOrder(order, witness)
    _require_certificate(c, result)
    return result


def _require_certificate(c: FlagComplex, result: DismantlingOrder):
    report = verify_dismantling(c, result)
    if not report.passed:
        raise StructureError(
            f"dismantling certificate rejected: {report.line()}", witness=report.witness
        )


@log_execution_time("projection_dismantle")
def projection_dismantle(ps: ProjectionStructure, sigma: int) -> DismantlingOrder:
    """
    Order the vertices along the linear extension of <_σ and retract every
    vertex but σ to its projection π_σ
    """
    order = tuple(linear_extension(ps, sigma))
    position = {v: i for i, v in enumerate(order)}
    witness = {i: position[ps.proj(sigma, v)] for i, v in enumerate(order[:-1])}
    result = DismantlingOrder(order, witness)
    _require_certificate(ps.complex, result)
    return result


def verify_dismantling(c: FlagComplex, d: DismantlingOrder) -> CheckReport:
    """
    Every x_i with i < m has a later neighbour x_j adjacent or equal to
    every later neighbour of x_i. Witness vertices are reported as ids.
    """
    name = "dismantle.certificate"
    order = tuple(d.order)
    if sorted(order) != list(c.vertices) or not order:
        raise InputError(f"order {order} is not a permutation of the vertices")
    last = len(order) - 1
    if set(d.witness) != set(range(last)):
        raise InputError("witness map must cover positions 0..m-1 exactly")
    for j in d.witness.values():
        if not 0 <= j <= last:
            raise InputError(f"witness position {j} out of range")
    cases = 0
    for i in range(last):
        j = d.witness[i]
        x_i, x_j = order[i], order[j]
        cases += 1
        if j <= i:
            return failed(name, (x_i, x_j), cases, "witness precedes the vertex")
        if not c.adjacent(x_i, x_j):
            return failed(name, (x_i, x_j), cases, "(i) witness not adjacent")
        for x_k in order[i + 1 :]:
            if c.adjacent(x_i, x_k) and not c.adjacent_or_equal(x_j, x_k):
                return failed(
                    name, (x_i, x_j, x_k), cases, "(ii) later neighbour not dominated"
                )
    return passed(name, cases)


def sigma_convex_hull(
    ps: ProjectionStructure, seed: Iterable[int], sigma: int
) -> VertexSet:
    """Closure of seed under ρ ↦ π_σ(ρ)"""
    hull = set(ps.complex.check_vertices(seed))
    if sigma not in hull:
        raise InputError(f"base {sigma} is not in the seed")
    frontier = sorted(hull - {sigma})
    while frontier:
        images = {ps.proj(sigma, rho) for rho in frontier}
        frontier = sorted(images - hull)
        hull.update(frontier)
    return vertex_set(hull)


def convex_hull(ps: ProjectionStructure, seed: Iterable[int]) -> VertexSet:
    """Closure of seed under π_a(b) for all ordered pairs of its members"""
    members = list(ps.complex.check_vertices(seed))
    if not members:
        raise InputError("cannot take the hull of an empty set")
    known = set(members)
    settled = 0
    while settled < len(members):
        fresh = set()
        for i, a in enumerate(members):
            others = members if i >= settled else members[settled:]
            for b in others:
                if a != b:
                    image = ps.proj(a, b)
                    if image not in known:
                        fresh.add(image)
        known.update(fresh)
        settled = len(members)
        members.extend(sorted(fresh))
    return vertex_set(members)
