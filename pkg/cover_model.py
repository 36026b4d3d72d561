"""
Height function model of the infinite cyclic cover.

A vertex is an integer function on a finite column set, taken modulo adding a
constant (the deck transformation) and stored normalized with minimum 0. The
lift of one surface meets the k-th translate of the complement of another
exactly when k is one of the values of the difference of their height
functions, so the Kakimizu distance is the spread of that difference.
"""
import functools
import itertools
import logging
from dataclasses import dataclass
from typing import Dict
from typing import Iterable
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

import numpy as np

from const import DEFAULT_GENERATOR_RETRIES
from const import DEFAULT_MAX_PERMUTATION_COLUMNS
from const import DEFAULT_VERTEX_CAP
from errors import CapExceededError
from errors import InputError
from errors import ModelViolationError
from flag_complex import FlagComplex
from utils import log_execution_time

logger = logging.getLogger(__name__)

HeightFunction = Tuple[int, ...]
Permutation = Tuple[int, ...]


@dataclass(frozen=True)
class DistanceCertificate:
    """
    Extreme translate indices met by the lift: r = max(g - f),
    m_low = min(g - f) and the distance d = r - m_low
    """

    r: int
    m_low: int
    d: int


def normalize(values: Iterable[int]) -> HeightFunction:
    """Shift a height function so that its minimum is 0"""
    values = tuple(int(v) for v in values)
    if not values:
        raise InputError("a height function needs at least one column")
    low = min(values)
    return tuple(v - low for v in values)


def is_normalized(values: Sequence[int]) -> bool:
    """True when the minimum value is 0"""
    return len(values) > 0 and min(values) == 0


def _check_columns(f: Sequence[int], g: Sequence[int]):
    if len(f) != len(g):
        raise InputError(f"column count mismatch: {len(f)} != {len(g)}")
    if not f:
        raise InputError("a height function needs at least one column")


def kakimizu_distance(f: Sequence[int], g: Sequence[int]) -> DistanceCertificate:
    """Distance certificate of the pair (f, g)"""
    _check_columns(f, g)
    diffs = [b - a for a, b in zip(f, g)]
    r, m_low = max(diffs), min(diffs)
    return DistanceCertificate(r=r, m_low=m_low, d=r - m_low)


def distance(f: Sequence[int], g: Sequence[int]) -> int:
    """Kakimizu distance d(f, g)"""
    return kakimizu_distance(f, g).d


def project(f: Sequence[int], g: Sequence[int]) -> HeightFunction:
    """
    π_f(g): with g shifted so that min(g - f) = 0 (hence r = d),
    P = min(g, f + r - 1) pointwise, then normalized. P = f when d(f, g) = 1.
    """
    cert = kakimizu_distance(f, g)
    if cert.d == 0:
        raise InputError(f"cannot project {tuple(g)} towards itself")
    shifted = [b - cert.m_low for b in g]
    return normalize(min(b, a + cert.d - 1) for a, b in zip(f, shifted))


def projection_path(f: Sequence[int], g: Sequence[int]) -> List[HeightFunction]:
    """g, π_f(g), π_f(π_f(g)), ... down to f; has d(f, g) + 1 entries"""
    f, current = normalize(f), normalize(g)
    path = [current]
    while current != f:
        current = project(f, current)
        path.append(current)
    return path


def _step_shift(g: Sequence[int], g2: Sequence[int]) -> int:
    """The t with g2 - 1 <= g + t <= g2 for an adjacent pair"""
    cert = kakimizu_distance(g, g2)
    if cert.d != 1:
        raise InputError(
            f"order is defined on adjacent pairs only, d({tuple(g)}, {tuple(g2)}) = {cert.d}"
        )
    return cert.m_low


def order_less(f: Sequence[int], g: Sequence[int], g2: Sequence[int]) -> bool:
    """
    g <_f g2 for adjacent g, g2: after shifting g into [g2 - 1, g2], the two
    reach the same top translate of f
    """
    _check_columns(f, g)
    t = _step_shift(g, g2)
    return max(b + t - a for a, b in zip(f, g)) == max(b - a for a, b in zip(f, g2))


def top_aligned(f: Sequence[int], g: Sequence[int]) -> Tuple[int, ...]:
    """Representative of g with max(g - f) = 0"""
    cert = kakimizu_distance(f, g)
    return tuple(b - cert.r for b in g)


def order_potential(f: Sequence[int], g: Sequence[int]) -> int:
    """
    Sum of the top-aligned representative of g. Strictly increases along <_f
    and is largest at f itself.
    """
    return sum(top_aligned(f, g))


def apply_permutation(f: Sequence[int], permutation: Sequence[int]) -> HeightFunction:
    """f∘p⁻¹: the value of column c moves to column p[c]"""
    if sorted(permutation) != list(range(len(f))):
        raise InputError(f"{tuple(permutation)} is not a permutation of {len(f)} columns")
    image = [0] * len(f)
    for column, target in enumerate(permutation):
        image[target] = f[column]
    return normalize(image)


@dataclass(frozen=True)
class HeightFamily:
    """
    Finite set of normalized height functions on a common column set. The
    member at position i is vertex i of the derived flag complex, whose
    edges join members at Kakimizu distance 1.
    """

    columns: int
    members: Tuple[HeightFunction, ...]
    closed: bool = False

    def __post_init__(self):
        if self.columns < 1:
            raise InputError(f"need at least one column, got {self.columns}")
        seen = set()
        for member in self.members:
            if len(member) != self.columns:
                raise InputError(
                    f"member {member} has {len(member)} columns, expected {self.columns}"
                )
            if not is_normalized(member):
                raise InputError(f"member {member} is not normalized")
            if member in seen:
                raise InputError(f"duplicate member {member}")
            seen.add(member)

    @classmethod
    def from_members(
        cls, columns: int, members: Iterable[Sequence[int]], closed: bool = False
    ) -> "HeightFamily":
        """Family of the given functions, normalized, in the given order"""
        return cls(columns, tuple(normalize(member) for member in members), closed)

    def __len__(self):
        return len(self.members)

    def __contains__(self, member):
        return tuple(member) in self.index

    @functools.cached_property
    def index(self) -> Dict[HeightFunction, int]:
        """Vertex id of every member"""
        return {member: i for i, member in enumerate(self.members)}

    def vertex_id(self, member: Sequence[int]) -> int:
        """Vertex id of a member"""
        try:
            return self.index[tuple(member)]
        except KeyError as exc:
            raise InputError(f"{tuple(member)} is not a member of the family") from exc

    @functools.cached_property
    def heights(self) -> np.ndarray:
        """Members as an (n, columns) integer array"""
        return np.array(self.members, dtype=np.int64).reshape(len(self.members), self.columns)

    @functools.cached_property
    def distance_table(self) -> np.ndarray:
        """Pairwise Kakimizu distances"""
        diffs = self.heights[None, :, :] - self.heights[:, None, :]
        table = diffs.max(axis=2) - diffs.min(axis=2)
        table.setflags(write=False)
        return table

    @functools.cached_property
    def complex(self) -> FlagComplex:
        """Flag complex with an edge for every pair at distance 1"""
        rows, cols = np.nonzero(np.triu(self.distance_table == 1, k=1))
        edges = tuple(sorted(zip(rows.tolist(), cols.tolist())))
        return FlagComplex(len(self.members), edges)

    def diameter(self) -> int:
        """Largest Kakimizu distance between members"""
        if not self.members:
            raise InputError("diameter of the empty family is undefined")
        return int(self.distance_table.max())

    def max_height(self) -> int:
        """Largest value taken by any member"""
        return int(self.heights.max()) if self.members else 0

    def is_convex(self) -> bool:
        """True when every projection between members stays in the family"""
        for f in self.members:
            for member in project_rows(f, self.heights):
                if member not in self.index:
                    return False
        return True


def project_rows(f: Sequence[int], rows: np.ndarray) -> List[HeightFunction]:
    """π_f of every row of rows other than f itself, in row order"""
    f = np.asarray(f, dtype=np.int64)
    diffs = rows - f
    spread = diffs.max(axis=1) - diffs.min(axis=1)
    keep = spread > 0
    shifted = rows[keep] - diffs[keep].min(axis=1, keepdims=True)
    projected = np.minimum(shifted, f + spread[keep, None] - 1)
    projected -= projected.min(axis=1, keepdims=True)
    return [tuple(row) for row in projected.tolist()]


def _height_limit(family: HeightFamily) -> int:
    return family.max_height() + family.diameter() + 1


def _extend(
    family: HeightFamily, added: List[HeightFunction], closed: bool
) -> HeightFamily:
    ## existing ids are kept, new members follow in sorted order
    return HeightFamily(family.columns, family.members + tuple(sorted(added)), closed)


def _admit(
    member: HeightFunction, limit: int, known: Dict[HeightFunction, int], max_members
):
    if max(member) > limit:
        raise ModelViolationError(
            f"closure produced {member}, outside the height box [0, {limit}]"
        )
    if max_members is not None and len(known) >= max_members:
        raise CapExceededError("vertices", max_members)
    known[member] = len(known)


@log_execution_time("close_sigma_convex")
def close_sigma_convex(
    family: HeightFamily, sigma: Sequence[int], max_members: Optional[int] = None
) -> HeightFamily:
    """Smallest superset of family closed under ρ ↦ π_σ(ρ)"""
    sigma = tuple(sigma)
    if sigma not in family:
        raise InputError(f"base {sigma} is not a member of the family")
    limit = _height_limit(family)
    known = dict(family.index)
    added = []
    frontier = [member for member in family.members if member != sigma]
    while frontier:
        projected = project_rows(sigma, np.array(frontier, dtype=np.int64))
        frontier = []
        for member in projected:
            if member not in known:
                _admit(member, limit, known, max_members)
                added.append(member)
                frontier.append(member)
    logger.debug("σ-convex closure added %d members", len(added))
    if not added:
        return family
    return _extend(family, added, family.closed)


@log_execution_time("close_convex")
def close_convex(
    family: HeightFamily, max_members: Optional[int] = None
) -> HeightFamily:
    """
    Smallest superset of family closed under π_f(g) for every ordered pair of
    members. Pairs are visited in id order; each round only revisits pairs
    touching a member added in the previous round.
    """
    if not family.members:
        raise InputError("cannot close an empty family")
    limit = _height_limit(family)
    known = dict(family.index)
    members = list(family.members)
    settled = 0
    while settled < len(members):
        heights = np.array(members, dtype=np.int64)
        fresh = []
        for i, f in enumerate(members):
            rows = heights if i >= settled else heights[settled:]
            for member in project_rows(f, rows):
                if member not in known:
                    _admit(member, limit, known, max_members)
                    fresh.append(member)
        settled = len(members)
        members.extend(sorted(fresh))
    added = members[len(family.members) :]
    logger.debug("convex closure added %d members", len(added))
    return HeightFamily(family.columns, tuple(members), True)


def _close_under_permutations(
    members: Iterable[HeightFunction], permutations: Sequence[Sequence[int]]
) -> List[HeightFunction]:
    closure = set(members)
    frontier = list(closure)
    while frontier:
        images = [apply_permutation(f, p) for f in frontier for p in permutations]
        frontier = [image for image in images if image not in closure]
        closure.update(frontier)
    return sorted(closure)


## pylint: disable=too-many-arguments
@log_execution_time("generate_random")
def generate_random(
    m: int,
    count: int,
    h_max: int,
    seed: int,
    symmetry: Optional[Sequence[Sequence[int]]] = None,
    vertex_cap: int = DEFAULT_VERTEX_CAP,
    retries: int = DEFAULT_GENERATOR_RETRIES,
    permutation_cap: int = DEFAULT_MAX_PERMUTATION_COLUMNS,
) -> HeightFamily:
    """
    Reproducible convex-closed family grown from count random draws with
    heights in 0..h_max, closed under the given column permutations first.
    Draws whose closure passes vertex_cap are discarded and redrawn from the
    same random stream.
    """
    if m < 1 or count < 1 or h_max < 1:
        raise InputError(
            f"need columns >= 1, count >= 1 and max height >= 1, got {m}, {count}, {h_max}"
        )
    symmetry = [tuple(p) for p in symmetry or []]
    if symmetry and m > permutation_cap:
        raise CapExceededError(
            "permutation_columns",
            permutation_cap,
            f"{m} columns exceed the permutation cap of {permutation_cap}",
        )
    for permutation in symmetry:
        if sorted(permutation) != list(range(m)):
            raise InputError(f"{permutation} is not a permutation of {m} columns")

    rng = np.random.default_rng(seed)
    for attempt in range(1, retries + 1):
        draws = rng.integers(0, h_max + 1, size=(count, m))
        members = sorted({normalize(row) for row in draws.tolist()})
        if symmetry:
            members = _close_under_permutations(members, symmetry)
        try:
            if len(members) > vertex_cap:
                raise CapExceededError("vertices", vertex_cap)
            closed = close_convex(
                HeightFamily(m, tuple(members)), max_members=vertex_cap
            )
        except CapExceededError as exc:
            logger.warning("Attempt %d of seed %d discarded: %s", attempt, seed, exc)
            continue
        logger.info(
            "Generated %d members from %d draws (seed %d)", len(closed), count, seed
        )
        return HeightFamily(m, tuple(sorted(closed.members)), True)
    raise CapExceededError(
        "generator_retries",
        retries,
        f"no draw of seed {seed} closed within {vertex_cap} vertices after {retries} attempts",
    )


@log_execution_time("grow_family")
def grow_family(
    m: int,
    target: int,
    h_max: int,
    seed: int,
    vertex_cap: int = DEFAULT_VERTEX_CAP,
) -> HeightFamily:
    """
    Reproducible convex-closed family with at least target members. Random
    draws are added in batches and the union is closed after each batch; a
    batch that brings nothing new raises the height range by one. The last
    closure may overshoot target.
    """
    if m < 1 or target < 1 or h_max < 1:
        raise InputError(
            f"need columns >= 1, target >= 1 and max height >= 1, got {m}, {target}, {h_max}"
        )
    if m == 1 and target > 1:
        raise InputError("a single column gives a one-vertex family")
    if target > vertex_cap:
        raise CapExceededError(
            "vertices", vertex_cap, f"target of {target} vertices exceeds the cap of {vertex_cap}"
        )

    rng = np.random.default_rng(seed)
    height = h_max
    members: Tuple[HeightFunction, ...] = ()
    while len(members) < target:
        batch = max(1, (target - len(members)) // 2)
        draws = rng.integers(0, height + 1, size=(batch, m))
        known = set(members)
        fresh = sorted({normalize(row) for row in draws.tolist()} - known)
        if not fresh:
            height += 1
            logger.debug("no new draws, height range raised to %d", height)
            continue
        members = close_convex(
            HeightFamily(m, members + tuple(fresh)), max_members=vertex_cap
        ).members
    logger.info(
        "Grew %d members for a target of %d (seed %d, heights up to %d)",
        len(members),
        target,
        seed,
        height,
    )
    return HeightFamily(m, tuple(sorted(members)), True)


def column_symmetries(
    family: HeightFamily, cap: int = DEFAULT_MAX_PERMUTATION_COLUMNS
) -> List[Permutation]:
    """Column permutations mapping the family onto itself, identity first"""
    if family.columns > cap:
        raise CapExceededError(
            "permutation_columns",
            cap,
            f"{family.columns} columns exceed the permutation cap of {cap}",
        )
    members = set(family.members)
    return [
        permutation
        for permutation in itertools.permutations(range(family.columns))
        if all(apply_permutation(f, permutation) in members for f in members)
    ]


def vertex_permutation(family: HeightFamily, permutation: Sequence[int]) -> Permutation:
    """Vertex permutation induced by a column symmetry"""
    try:
        return tuple(
            family.index[apply_permutation(f, permutation)] for f in family.members
        )
    except KeyError as exc:
        raise InputError(
            f"{tuple(permutation)} does not map the family onto itself"
        ) from exc
