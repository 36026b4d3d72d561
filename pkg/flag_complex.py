"""
Finite simple graphs, the flag complexes spanned on them and the path metric
on their 1-skeleton
"""
import functools
import logging
import math
from dataclasses import dataclass
from typing import Iterable
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple
from typing import Union

import networkx as nx
import numpy as np

from const import DEFAULT_CLIQUE_CAP
from errors import CapExceededError
from errors import InputError

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]
VertexSet = Tuple[int, ...]
Distance = Union[int, float]


def vertex_set(vertices: Iterable[int]) -> VertexSet:
    """Sorted tuple of distinct vertex ids"""
    return tuple(sorted(set(vertices)))


@dataclass(frozen=True)
class FlagComplex:
    """
    Flag simplicial complex given by its 1-skeleton. Vertices are 0..n-1,
    edges are normalized pairs (i < j) in lexicographic order and the
    simplices are exactly the cliques.
    """

    vertex_count: int
    edges: Tuple[Edge, ...]

    @functools.cached_property
    def graph(self) -> nx.Graph:
        """networkx view of the 1-skeleton"""
        graph = nx.Graph()
        graph.add_nodes_from(range(self.vertex_count))
        graph.add_edges_from(self.edges)
        return graph

    @functools.cached_property
    def _adjacency(self) -> Tuple[frozenset, ...]:
        return tuple(frozenset(self.graph.adj[v]) for v in range(self.vertex_count))

    @functools.cached_property
    def _distances(self) -> np.ndarray:
        matrix = np.full((self.vertex_count, self.vertex_count), np.inf)
        for source, lengths in nx.all_pairs_shortest_path_length(self.graph):
            for target, length in lengths.items():
                matrix[source, target] = length
        matrix.setflags(write=False)
        return matrix

    @property
    def vertices(self) -> VertexSet:
        """All vertex ids"""
        return tuple(range(self.vertex_count))

    def check_vertex(self, v: int):
        """Raise InputError unless v is a vertex id"""
        if not isinstance(v, (int, np.integer)) or not 0 <= v < self.vertex_count:
            raise InputError(f"invalid vertex id {v} (complex has {self.vertex_count})")

    def check_vertices(self, vertices: Iterable[int]) -> VertexSet:
        """Validate ids and return them as a VertexSet"""
        result = vertex_set(vertices)
        for v in result:
            self.check_vertex(v)
        return result

    def neighbors(self, v: int) -> VertexSet:
        """Vertices adjacent to v"""
        self.check_vertex(v)
        return tuple(sorted(self._adjacency[v]))

    def adjacent(self, u: int, v: int) -> bool:
        """True when {u, v} is an edge"""
        return v in self._adjacency[u]

    def adjacent_or_equal(self, u: int, v: int) -> bool:
        """True when u = v or {u, v} is an edge"""
        return u == v or v in self._adjacency[u]

    def distance(self, u: int, v: int) -> Distance:
        """
        Length of a shortest path between u and v in the 1-skeleton,
        math.inf when they lie in different components
        """
        self.check_vertex(u)
        self.check_vertex(v)
        value = self._distances[u, v]
        return int(value) if math.isfinite(value) else math.inf

    def distance_matrix(self) -> np.ndarray:
        """Read-only dense matrix of all pairwise distances (inf when disconnected)"""
        return self._distances

    def diameter(self) -> Distance:
        """Largest pairwise distance, math.inf for a disconnected complex"""
        if self.vertex_count == 0:
            raise InputError("diameter of the empty complex is undefined")
        value = self._distances.max()
        return int(value) if math.isfinite(value) else math.inf

    def is_connected(self) -> bool:
        """True for a nonempty connected 1-skeleton"""
        return self.vertex_count > 0 and nx.is_connected(self.graph)

    def sphere(self, v: int, radius: int) -> VertexSet:
        """Vertices at distance exactly radius from v"""
        self.check_vertex(v)
        return tuple(np.flatnonzero(self._distances[v] == radius).tolist())

    def closed_neighborhood(
        self, v: int, restrict: Optional[Iterable[int]] = None
    ) -> VertexSet:
        """
        N(v) = {v} with all its neighbours, intersected with restrict when
        given; v itself need not lie in restrict
        """
        self.check_vertex(v)
        ball = self._adjacency[v] | {v}
        if restrict is None:
            return vertex_set(ball)
        return vertex_set(ball.intersection(self.check_vertices(restrict)))

    def is_clique(self, vertices: Iterable[int]) -> bool:
        """True when the vertices are pairwise adjacent"""
        members = self.check_vertices(vertices)
        return all(
            self.adjacent(u, v)
            for i, u in enumerate(members)
            for v in members[i + 1 :]
        )

    def enumerate_cliques(
        self, max_dim: int, cap: int = DEFAULT_CLIQUE_CAP
    ) -> List[VertexSet]:
        """
        All cliques with at most max_dim + 1 vertices, singletons included,
        ordered by size and then lexicographically
        """
        if max_dim < 0:
            raise InputError(f"max_dim must be nonnegative, got {max_dim}")
        cliques = []
        for clique in nx.enumerate_all_cliques(self.graph):
            ## cliques come out in nondecreasing size
            if len(clique) > max_dim + 1:
                break
            cliques.append(tuple(sorted(clique)))
            if len(cliques) > cap:
                raise CapExceededError("cliques", cap)
        cliques.sort(key=lambda clique: (len(clique), clique))
        logger.debug("%d cliques up to dimension %d", len(cliques), max_dim)
        return cliques

    def clique_number(self, cap: int = DEFAULT_CLIQUE_CAP) -> int:
        """Size of a largest clique (0 for the empty complex)"""
        best = 0
        for count, clique in enumerate(nx.find_cliques(self.graph), start=1):
            if count > cap:
                raise CapExceededError("cliques", cap)
            best = max(best, len(clique))
        return best

    def induced(self, vertices: Iterable[int]) -> Tuple["FlagComplex", VertexSet]:
        """
        Subcomplex spanned by the given vertices. Returns the complex on
        0..k-1 and the remap table: new id i stands for remap[i].
        """
        remap = self.check_vertices(vertices)
        if not remap:
            raise InputError("cannot induce on an empty vertex set")
        position = {v: i for i, v in enumerate(remap)}
        edges = tuple(
            (position[u], position[v])
            for u, v in self.edges
            if u in position and v in position
        )
        return FlagComplex(len(remap), edges), remap


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> FlagComplex:
    """
    Validate a vertex count and an edge list and return the normalized complex
    """
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise InputError(f"vertex count must be a nonnegative integer, got {n!r}")
    normalized = set()
    for pair in edges:
        if len(pair) != 2:
            raise InputError(f"edge {tuple(pair)} does not have two endpoints")
        i, j = (int(x) for x in pair)
        if not (0 <= i < n and 0 <= j < n):
            raise InputError(f"edge ({i}, {j}) has an endpoint outside 0..{n - 1}")
        if i == j:
            raise InputError(f"self-loop at vertex {i}")
        edge = (min(i, j), max(i, j))
        if edge in normalized:
            raise InputError(f"duplicate edge {edge}")
        normalized.add(edge)
    return FlagComplex(int(n), tuple(sorted(normalized)))


def from_networkx(graph: nx.Graph) -> FlagComplex:
    """Complex of a networkx graph, nodes relabelled 0..n-1 in sorted order"""
    nodes = sorted(graph.nodes)
    position = {node: i for i, node in enumerate(nodes)}
    return build_graph(
        len(nodes), [(position[u], position[v]) for u, v in graph.edges]
    )


def cycle(n: int) -> FlagComplex:
    """The cycle C_n"""
    return from_networkx(nx.cycle_graph(n))


def path(n: int) -> FlagComplex:
    """The path P_n on n vertices"""
    return from_networkx(nx.path_graph(n))


def complete(n: int) -> FlagComplex:
    """The complete graph K_n (the full simplex)"""
    return from_networkx(nx.complete_graph(n))
