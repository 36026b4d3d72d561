"""
Projection structures: a flag complex together with the projections π_σ and
the base point orders <_σ, backed either by the height model or by explicit
tables, and exhaustive checkers for the properties the dismantling and fixed
point algorithms rely on.

Checkers never raise on content. Each returns CheckReport values whose
failing witness is the first violation in lexicographic order of the
quantified vertices.
"""
import functools
import logging
import math
from dataclasses import dataclass
from dataclasses import field
from typing import Dict
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

import networkx as nx
import numpy as np
import pandas as pd

from const import Backing
from const import DEFAULT_CLIQUE_CAP
from cover_model import HeightFamily
from cover_model import order_less
from cover_model import project
from cover_model import project_rows
from errors import ConvexityError
from errors import InputError
from errors import StructureError
from flag_complex import FlagComplex
from utils import log_execution_time

logger = logging.getLogger(__name__)

## entries of the projection matrix that are not vertex ids
NO_IMAGE = -1
OUTSIDE = -2


def _fmt(value) -> str:
    if isinstance(value, float) and not math.isfinite(value):
        return "inf"
    return str(int(value))


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one exhaustive check"""

    name: str
    passed: bool
    witness: Optional[Tuple[int, ...]] = None
    cases: int = 0
    detail: str = ""

    def line(self) -> str:
        """One report line: PASS <name> cases=<n> [detail] or FAIL <name> <witness> <detail>"""
        if self.passed:
            text = f"PASS {self.name} cases={self.cases}"
            return f"{text} {self.detail}" if self.detail else text
        text = f"FAIL {self.name}"
        if self.witness:
            text += " " + ",".join(str(v) for v in self.witness)
        if self.detail:
            text += f" {self.detail}"
        return text


def passed(name: str, cases: int, detail: str = "") -> CheckReport:
    """A passing report"""
    return CheckReport(name, True, None, cases, detail)


def failed(name: str, witness: Sequence[int], cases: int, detail: str = "") -> CheckReport:
    """A failing report with its witness"""
    return CheckReport(name, False, tuple(int(v) for v in witness), cases, detail)


class ProjectionStructure:
    """
    A flag complex with π_σ defined on all ordered pairs of distinct vertices
    and <_σ defined on all ordered adjacent pairs, for every base σ.

    Both are materialized as arrays: proj_matrix[σ, ρ] is π_σ(ρ) (NO_IMAGE on
    the diagonal, OUTSIDE when the image is not a vertex) and less[σ, k] is
    arcs[k, 0] <_σ arcs[k, 1] over the lexicographically sorted list of
    directed edges.
    """

    backing: Backing

    def __init__(self, flag_complex: FlagComplex):
        self.complex = flag_complex
        self._digraphs: Dict[int, nx.DiGraph] = {}

    @property
    def vertex_count(self) -> int:
        """Number of vertices"""
        return self.complex.vertex_count

    @functools.cached_property
    def arcs(self) -> np.ndarray:
        """Directed edges (a, b), both orientations, sorted"""
        pairs = sorted(
            [(u, v) for u, v in self.complex.edges]
            + [(v, u) for u, v in self.complex.edges]
        )
        return np.array(pairs, dtype=np.int64).reshape(len(pairs), 2)

    @functools.cached_property
    def arc_index(self) -> np.ndarray:
        """Position of (a, b) in arcs, -1 for non-adjacent pairs"""
        n = self.vertex_count
        index = np.full((n, n), -1, dtype=np.int64)
        index[self.arcs[:, 0], self.arcs[:, 1]] = np.arange(len(self.arcs))
        return index

    @functools.cached_property
    def proj_matrix(self) -> np.ndarray:
        """π_σ(ρ) for all pairs"""
        matrix = self._build_proj_matrix()
        matrix.setflags(write=False)
        return matrix

    @functools.cached_property
    def less(self) -> np.ndarray:
        """<_σ on every directed edge, one row per base"""
        matrix = self._build_less()
        matrix.setflags(write=False)
        return matrix

    def _build_proj_matrix(self) -> np.ndarray:
        raise NotImplementedError

    def _build_less(self) -> np.ndarray:
        raise NotImplementedError

    def proj(self, sigma: int, rho: int) -> int:
        """π_σ(ρ)"""
        self.complex.check_vertex(sigma)
        self.complex.check_vertex(rho)
        if sigma == rho:
            raise InputError(f"π_{sigma} is not defined at the base itself")
        image = int(self.proj_matrix[sigma, rho])
        if image == OUTSIDE:
            raise ConvexityError(
                f"π_{sigma}({rho}) lies outside the vertex set", witness=(sigma, rho)
            )
        return image

    def ord(self, sigma: int, rho: int, rho2: int) -> bool:
        """ρ <_σ ρ2 for adjacent ρ, ρ2"""
        self.complex.check_vertex(sigma)
        self.complex.check_vertex(rho)
        self.complex.check_vertex(rho2)
        arc = self.arc_index[rho, rho2]
        if arc < 0:
            raise InputError(f"order is defined on adjacent pairs only, got ({rho}, {rho2})")
        return bool(self.less[sigma, arc])

    def leq(self, sigma: int, a: int, b: int) -> bool:
        """a ≤_σ b: a <_σ b or a = b"""
        if a == b:
            return True
        arc = self.arc_index[a, b]
        return arc >= 0 and bool(self.less[sigma, arc])

    def order_digraph(self, sigma: int) -> nx.DiGraph:
        """All vertices, with an arc a -> b whenever a <_σ b"""
        if sigma not in self._digraphs:
            self.complex.check_vertex(sigma)
            digraph = nx.DiGraph()
            digraph.add_nodes_from(range(self.vertex_count))
            digraph.add_edges_from(map(tuple, self.arcs[self.less[sigma]].tolist()))
            self._digraphs[sigma] = digraph
        return self._digraphs[sigma]


class ModelProjection(ProjectionStructure):
    """Projection structure read off a height family"""

    backing = Backing.MODEL

    def __init__(self, family: HeightFamily):
        super().__init__(family.complex)
        self.family = family

    def _build_proj_matrix(self) -> np.ndarray:
        n = self.vertex_count
        heights = self.family.heights
        matrix = np.full((n, n), NO_IMAGE, dtype=np.int64)
        for sigma, base in enumerate(self.family.members):
            others = [rho for rho in range(n) if rho != sigma]
            images = project_rows(base, heights[others])
            for rho, image in zip(others, images):
                matrix[sigma, rho] = self.family.index.get(image, OUTSIDE)
        return matrix

    def _build_less(self) -> np.ndarray:
        heights = self.family.heights
        lower = heights[self.arcs[:, 0]]
        upper = heights[self.arcs[:, 1]]
        ## shift of the lower end into [upper - 1, upper]
        shift = (upper - lower).min(axis=1, keepdims=True)
        less = np.zeros((self.vertex_count, len(self.arcs)), dtype=bool)
        for sigma, base in enumerate(heights):
            less[sigma] = (lower + shift - base).max(axis=1) == (upper - base).max(
                axis=1
            )
        return less


class TableProjection(ProjectionStructure):
    """
    Projection structure given by explicit tables. proj maps (σ, ρ) for all
    distinct pairs, ord maps (σ, ρ, ρ') for every base and every ordered
    adjacent pair; anything missing or extra is an InputError.
    """

    backing = Backing.TABLE

    def __init__(
        self,
        flag_complex: FlagComplex,
        proj: Dict[Tuple[int, int], int],
        ord: Dict[Tuple[int, int, int], bool],  # pylint: disable=redefined-builtin
    ):
        super().__init__(flag_complex)
        n = flag_complex.vertex_count
        expected = {(s, r) for s in range(n) for r in range(n) if s != r}
        if set(proj) != expected:
            missing = sorted(expected - set(proj))
            extra = sorted(set(proj) - expected)
            raise InputError(
                f"projection table mismatch, missing {missing[:3]} extra {extra[:3]}"
            )
        for key, image in proj.items():
            if not 0 <= image < n:
                raise InputError(f"projection {key} -> {image} is not a vertex id")
        expected_ord = {
            (s, int(a), int(b)) for s in range(n) for a, b in self.arcs.tolist()
        }
        if set(ord) != expected_ord:
            missing = sorted(expected_ord - set(ord))
            extra = sorted(set(ord) - expected_ord)
            raise InputError(
                f"order table mismatch, missing {missing[:3]} extra {extra[:3]}"
            )
        self.proj_table = dict(proj)
        self.ord_table = {key: bool(value) for key, value in ord.items()}

    def _build_proj_matrix(self) -> np.ndarray:
        n = self.vertex_count
        matrix = np.full((n, n), NO_IMAGE, dtype=np.int64)
        for (sigma, rho), image in self.proj_table.items():
            matrix[sigma, rho] = image
        return matrix

    def _build_less(self) -> np.ndarray:
        less = np.zeros((self.vertex_count, len(self.arcs)), dtype=bool)
        for (sigma, a, b), value in self.ord_table.items():
            less[sigma, self.arc_index[a, b]] = value
        return less


def tabulate(ps: ProjectionStructure) -> TableProjection:
    """Explicit table form of any projection structure; tables come back as they are"""
    if ps.backing is Backing.TABLE:
        return ps
    n = ps.vertex_count
    outside = np.argwhere(ps.proj_matrix == OUTSIDE)
    if len(outside):
        sigma, rho = outside[0].tolist()
        raise ConvexityError(
            f"π_{sigma}({rho}) lies outside the vertex set", witness=(sigma, rho)
        )
    proj = {
        (s, r): int(ps.proj_matrix[s, r]) for s in range(n) for r in range(n) if s != r
    }
    ord_table = {
        (s, int(a), int(b)): bool(ps.less[s, k])
        for s in range(n)
        for k, (a, b) in enumerate(ps.arcs.tolist())
    }
    return TableProjection(ps.complex, proj, ord_table)


def _first_failure(ok: np.ndarray) -> Optional[int]:
    if ok.all():
        return None
    return int(np.argmin(ok))


@log_execution_time("verify_projection_decrement")
def verify_projection_decrement(ps: ProjectionStructure) -> CheckReport:
    """
    d(ρ, π_σ(ρ)) <= 1 and d(σ, π_σ(ρ)) = d(σ, ρ) - 1 for all σ != ρ; a pair
    in different components fails
    """
    name = "projection.decrement"
    n = ps.vertex_count
    dist = ps.complex.distance_matrix()
    sig, rho = np.nonzero(~np.eye(n, dtype=bool))
    image = ps.proj_matrix[sig, rho]
    inside = image >= 0
    connected = np.isfinite(dist[sig, rho])
    safe = np.where(inside, image, 0)
    ok = (
        inside
        & connected
        & (dist[rho, safe] <= 1)
        & (dist[sig, safe] == dist[sig, rho] - 1)
    )
    first = _first_failure(ok)
    if first is None:
        return passed(name, len(ok))
    s, r, p = int(sig[first]), int(rho[first]), int(image[first])
    if not connected[first]:
        return failed(name, (s, r), len(ok), "complex is disconnected")
    if p == OUTSIDE:
        return failed(name, (s, r), len(ok), "image outside the vertex set")
    return failed(
        name,
        (s, r),
        len(ok),
        f"π={p} d(ρ,π)={_fmt(dist[r, p])} d(σ,π)={_fmt(dist[s, p])} "
        f"d(σ,ρ)={_fmt(dist[s, r])}",
    )


def _cycle_witness(digraph: nx.DiGraph) -> Optional[Tuple[int, ...]]:
    """A directed cycle rotated to start at its smallest vertex, None if acyclic"""
    try:
        cycle = [u for u, _ in nx.find_cycle(digraph)]
    except nx.NetworkXNoCycle:
        return None
    start = cycle.index(min(cycle))
    return tuple(cycle[start:] + cycle[:start])


@log_execution_time("verify_order_axioms")
def verify_order_axioms(ps: ProjectionStructure) -> List[CheckReport]:
    """Comparability, acyclicity and the distance rule, for every base"""
    n = ps.vertex_count
    arcs = ps.arcs
    dist = ps.complex.distance_matrix()
    forward = arcs[:, 0] < arcs[:, 1]
    lower, upper = arcs[forward, 0], arcs[forward, 1]
    reports = []

    ## comparability: exactly one orientation of every edge
    comparability = None
    for sigma in range(n):
        ok = ps.less[sigma, ps.arc_index[lower, upper]] != ps.less[sigma, ps.arc_index[upper, lower]]
        first = _first_failure(ok)
        if first is not None:
            comparability = failed(
                "order.comparability",
                (sigma, lower[first], upper[first]),
                sigma * len(ok) + first + 1,
                "both or neither orientation holds",
            )
            break
    reports.append(comparability or passed("order.comparability", n * len(lower)))

    acyclicity = None
    for sigma in range(n):
        cycle = _cycle_witness(ps.order_digraph(sigma))
        if cycle is not None:
            acyclicity = failed("order.acyclicity", (sigma,) + cycle, sigma + 1, "cycle")
            break
    reports.append(acyclicity or passed("order.acyclicity", n))

    ## distance rule: the endpoint farther from σ is the smaller one
    distance_rule = None
    cases = 0
    for sigma in range(n):
        farther = dist[sigma, arcs[:, 0]] > dist[sigma, arcs[:, 1]]
        ok = ps.less[sigma][farther]
        cases += len(ok)
        first = _first_failure(ok)
        if first is not None:
            a, b = arcs[farther][first]
            distance_rule = failed(
                "order.distance-rule",
                (sigma, a, b),
                cases,
                f"d(σ,{a})={_fmt(dist[sigma, a])} > d(σ,{b})={_fmt(dist[sigma, b])}",
            )
            break
    reports.append(distance_rule or passed("order.distance-rule", cases))
    return reports


def linear_extension(ps: ProjectionStructure, sigma: int) -> List[int]:
    """
    Topological order of <_σ, ties broken by vertex id with σ held back;
    σ must come out last
    """
    ps.complex.check_vertex(sigma)
    if not ps.complex.is_connected():
        raise InputError("a linear extension needs a connected complex")
    digraph = ps.order_digraph(sigma)
    cycle = _cycle_witness(digraph)
    if cycle is not None:
        raise StructureError(
            f"<_{sigma} has the cycle {cycle}", witness=(sigma,) + cycle
        )
    order = list(
        nx.lexicographical_topological_sort(digraph, key=lambda v: (v == sigma, v))
    )
    if order[-1] != sigma:
        raise StructureError(
            f"base {sigma} is not the largest vertex of <_{sigma}", witness=(sigma,)
        )
    return order


@log_execution_time("verify_domination")
def verify_domination(ps: ProjectionStructure) -> List[CheckReport]:
    """Same-layer domination, monotonicity of π_σ and the same-projection rule"""
    n = ps.vertex_count
    proj = ps.proj_matrix
    adjacent = ps.complex.adjacent_or_equal

    same_layer = None
    cases = 0
    for sigma in range(n):
        for rho in range(n):
            if rho == sigma or same_layer:
                continue
            image = int(proj[sigma, rho])
            upper = [rho] + sorted(ps.order_digraph(sigma).successors(rho))
            for rho2 in sorted(upper):
                cases += 1
                if image < 0 or not (
                    rho2 == image or (adjacent(rho2, image) and ps.leq(sigma, rho2, image))
                ):
                    same_layer = failed(
                        "domination.same-layer",
                        (sigma, rho, rho2),
                        cases,
                        f"π_σ(ρ)={image}",
                    )
                    break
        if same_layer:
            break
    reports = [same_layer or passed("domination.same-layer", cases)]

    monotonicity = None
    cases = 0
    for sigma in range(n):
        for rho, rho2 in ps.arcs[ps.less[sigma]].tolist():
            if sigma in (rho, rho2):
                continue
            cases += 1
            a, b = int(proj[sigma, rho]), int(proj[sigma, rho2])
            if a < 0 or b < 0 or not ps.leq(sigma, a, b):
                monotonicity = failed(
                    "domination.monotonicity",
                    (sigma, rho, rho2),
                    cases,
                    f"π_σ(ρ)={a} π_σ(ρ')={b}",
                )
                break
        if monotonicity:
            break
    reports.append(monotonicity or passed("domination.monotonicity", cases))
    reports.append(_verify_same_projection(ps))
    return reports


def _verify_same_projection(ps: ProjectionStructure) -> CheckReport:
    """
    Along any <_σ chain inside one sphere around σ whose ends share their
    projection, all projections agree and the vertices are pairwise adjacent.
    Chains are covered through reachability: a pair is checked when b is
    reachable from a, together with every vertex lying on an a -> b path.
    """
    name = "domination.same-projection"
    proj = ps.proj_matrix
    cases = 0
    for sigma in range(ps.vertex_count):
        digraph = ps.order_digraph(sigma)
        radius = 1
        while True:
            layer = ps.complex.sphere(sigma, radius)
            if not layer:
                break
            sub = digraph.subgraph(layer)
            for a in layer:
                below = nx.descendants(sub, a)
                for b in sorted(below):
                    if proj[sigma, a] != proj[sigma, b]:
                        continue
                    cases += 1
                    if not ps.complex.adjacent(a, b):
                        return failed(name, (sigma, a, b), cases, "not adjacent")
                    between = below & nx.ancestors(sub, b)
                    for c in sorted(between):
                        if proj[sigma, c] != proj[sigma, a]:
                            return failed(
                                name, (sigma, a, c, b), cases, "projection differs"
                            )
            radius += 1
    return passed(name, cases)


@dataclass
class ChainStats:
    """
    Longest <_σ chain inside each sphere of radius n around each base,
    against the bound (L+1)^n with L the dimension of the largest simplex
    """

    rows: List[Tuple[int, int, int, int]] = field(default_factory=list)
    top_dimension: int = 0

    @property
    def verdict(self) -> bool:
        """Every chain within its bound"""
        return all(chain <= bound for _, _, chain, bound in self.rows)

    @property
    def max_ratio(self) -> float:
        """Largest chain / bound"""
        return max((chain / bound for _, _, chain, bound in self.rows), default=0.0)

    def to_frame(self) -> pd.DataFrame:
        """One row per (sigma, radius)"""
        frame = pd.DataFrame(self.rows, columns=["sigma", "radius", "chain", "bound"])
        frame["ratio"] = frame["chain"] / frame["bound"]
        return frame

    def report(self) -> CheckReport:
        """chains.bound report, carrying L and the largest chain / bound ratio"""
        name = "chains.bound"
        summary = f"L={self.top_dimension} max-ratio={self.max_ratio:.3f}"
        for index, (sigma, radius, chain, bound) in enumerate(self.rows, start=1):
            if chain > bound:
                return failed(
                    name, (sigma, radius), index, f"chain={chain} bound={bound} {summary}"
                )
        return passed(name, len(self.rows), summary)


@log_execution_time("chain_length_stats")
def chain_length_stats(ps: ProjectionStructure, cap: int = DEFAULT_CLIQUE_CAP) -> ChainStats:
    """Measure the longest chain in every layer around every base"""
    top_dimension = max(ps.complex.clique_number(cap) - 1, 0)
    stats = ChainStats(top_dimension=top_dimension)
    for sigma in range(ps.vertex_count):
        digraph = ps.order_digraph(sigma)
        radius = 1
        while True:
            layer = ps.complex.sphere(sigma, radius)
            if not layer:
                break
            sub = digraph.subgraph(layer)
            if not nx.is_directed_acyclic_graph(sub):
                raise StructureError(
                    f"<_{sigma} has a cycle in the sphere of radius {radius}",
                    witness=(sigma,) + (_cycle_witness(sub) or ()),
                )
            chain = nx.dag_longest_path_length(sub) + 1
            stats.rows.append((sigma, radius, chain, (top_dimension + 1) ** radius))
            radius += 1
    logger.debug("chain table of %d rows, max ratio %.3f", len(stats.rows), stats.max_ratio)
    return stats


@log_execution_time("verify_ball_retention")
def verify_ball_retention(ps: ProjectionStructure) -> CheckReport:
    """d(σ', π_σ(ρ)) <= max(d(σ', ρ), d(σ', σ)) for all σ != ρ and all σ'"""
    name = "projection.ball-retention"
    n = ps.vertex_count
    dist = ps.complex.distance_matrix()
    cases = 0
    for sigma in range(n):
        rho = np.array([r for r in range(n) if r != sigma], dtype=np.int64)
        if not len(rho):
            continue
        image = ps.proj_matrix[sigma, rho]
        inside = image >= 0
        safe = np.where(inside, image, 0)
        ## rows ρ, columns σ'
        bound = np.maximum(dist[rho, :], dist[sigma, :][None, :])
        ok = (dist[safe, :] <= bound) & inside[:, None]
        if not ok.all():
            r_pos, sigma2 = np.unravel_index(int(np.argmin(ok)), ok.shape)
            r = int(rho[r_pos])
            p = int(image[r_pos])
            cases += r_pos * n + sigma2 + 1
            if p == OUTSIDE:
                return failed(name, (sigma, r, sigma2), cases, "image outside the vertex set")
            return failed(
                name,
                (sigma, r, sigma2),
                cases,
                f"π={p} d(σ',π)={_fmt(dist[sigma2, p])} bound={_fmt(bound[r_pos, sigma2])}",
            )
        cases += ok.size
    return passed(name, cases)


@log_execution_time("verify_change_of_basis")
def verify_change_of_basis(ps: ProjectionStructure) -> CheckReport:
    """
    For adjacent σ, σ' and adjacent ρ, ρ' with ρ' <_σ' ρ, ρ <_σ ρ' and
    σ' != ρ': (i) π_σ'(ρ') equals ρ or is adjacent to it with ρ <_σ π_σ'(ρ');
    (ii) d(σ, π_σ'(ρ')) <= d(σ, ρ') when σ != ρ'
    """
    name = "projection.change-of-basis"
    arcs = ps.arcs
    arc_index = ps.arc_index
    dist = ps.complex.distance_matrix()
    reverse = arc_index[arcs[:, 1], arcs[:, 0]]
    cases = 0
    for sigma, sigma2 in arcs.tolist():
        mask = ps.less[sigma] & ps.less[sigma2][reverse] & (arcs[:, 1] != sigma2)
        rho, rho2 = arcs[mask, 0], arcs[mask, 1]
        image = ps.proj_matrix[sigma2, rho2]
        inside = image >= 0
        safe = np.where(inside, image, 0)
        arc = arc_index[rho, safe]
        ordered = (arc >= 0) & ps.less[sigma][np.where(arc >= 0, arc, 0)]
        first_ok = inside & ((safe == rho) | ordered)
        second_ok = (rho2 == sigma) | (dist[sigma, safe] <= dist[sigma, rho2])
        first = _first_failure(first_ok & second_ok)
        if first is None:
            cases += len(rho)
            continue
        cases += first + 1
        witness = (sigma, sigma2, rho[first], rho2[first])
        p = int(image[first])
        if not inside[first]:
            return failed(name, witness, cases, "image outside the vertex set")
        if not first_ok[first]:
            return failed(name, witness, cases, f"(i) π_σ'(ρ')={p}")
        return failed(
            name,
            witness,
            cases,
            f"(ii) d(σ,{p})={_fmt(dist[sigma, p])} > "
            f"d(σ,ρ')={_fmt(dist[sigma, rho2[first]])}",
        )
    return passed(name, cases)


@log_execution_time("verify_model_agreement")
def verify_model_agreement(ps: ProjectionStructure, family: HeightFamily) -> CheckReport:
    """
    Compare a structure against cover_model.project and cover_model.order_less
    on every input, one scalar evaluation at a time
    """
    name = "model.agreement"
    if ps.complex != family.complex:
        return failed(name, (), 0, "complex differs from the family's")
    members = family.members
    cases = 0
    for sigma, base in enumerate(members):
        for rho, other in enumerate(members):
            if rho == sigma:
                continue
            cases += 1
            expected = family.index.get(project(base, other), OUTSIDE)
            if int(ps.proj_matrix[sigma, rho]) != expected:
                return failed(name, (sigma, rho), cases, f"proj expected {expected}")
    for sigma, base in enumerate(members):
        for k, (a, b) in enumerate(ps.arcs.tolist()):
            cases += 1
            expected = order_less(base, members[a], members[b])
            if bool(ps.less[sigma, k]) != expected:
                return failed(name, (sigma, a, b), cases, f"ord expected {int(expected)}")
    return passed(name, cases)


def clique_minimum(ps: ProjectionStructure, sigma: int, clique: Sequence[int]) -> int:
    """
    The <_σ-minimum of a clique. The order restricted to a clique must be
    total; anything else is a StructureError.
    """
    members = ps.complex.check_vertices(clique)
    if not members:
        raise InputError("empty clique")
    if not ps.complex.is_clique(members):
        raise InputError(f"{members} is not a clique")
    sub = ps.order_digraph(sigma).subgraph(members)
    size = len(members)
    if sub.number_of_edges() != size * (size - 1) // 2 or not nx.is_directed_acyclic_graph(sub):
        raise StructureError(
            f"<_{sigma} is not a total order on {members}", witness=(sigma,) + members
        )
    return next(v for v in members if sub.in_degree(v) == 0)
