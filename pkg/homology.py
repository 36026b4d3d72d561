"""
Reduced simplicial homology of flag complexes over the integers, through
Smith normal forms of the boundary matrices
"""
import logging
from dataclasses import dataclass
from typing import Dict
from typing import List
from typing import Optional
from typing import Set
from typing import Tuple

import numpy as np

from const import DEFAULT_CLIQUE_CAP
from errors import InputError
from errors import StructureError
from flag_complex import FlagComplex
from utils import log_execution_time

logger = logging.getLogger(__name__)


def integer_matrix(rows: int, cols: int) -> np.ndarray:
    """Zero matrix of arbitrary precision integers"""
    matrix = np.empty((rows, cols), dtype=object)
    matrix.fill(0)
    return matrix


@log_execution_time("boundary_matrices")
def boundary_matrices(
    c: FlagComplex, max_dim: int, cap: int = DEFAULT_CLIQUE_CAP
) -> List[np.ndarray]:
    """
    [∂_0, ∂_1, ..., ∂_max_dim] where ∂_k maps k-simplices to (k-1)-simplices
    with alternating signs and ∂_0 is the augmentation onto Z. Entries are
    0 and ±1, stored as int8.
    """
    cliques = c.enumerate_cliques(max_dim, cap)
    by_dim: Dict[int, List[Tuple[int, ...]]] = {k: [] for k in range(max_dim + 1)}
    for clique in cliques:
        by_dim[len(clique) - 1].append(clique)

    augmentation = np.ones((1, len(by_dim[0])), dtype=np.int8)
    boundaries = [augmentation]
    for k in range(1, max_dim + 1):
        row = {face: i for i, face in enumerate(by_dim[k - 1])}
        matrix = np.zeros((len(by_dim[k - 1]), len(by_dim[k])), dtype=np.int8)
        for col, simplex in enumerate(by_dim[k]):
            for i in range(len(simplex)):
                face = simplex[:i] + simplex[i + 1 :]
                matrix[row[face], col] = (-1) ** i
        boundaries.append(matrix)

    for k in range(1, max_dim + 1):
        ## exact in floating point, every entry is a short sum of ±1
        product = boundaries[k - 1].astype(float) @ boundaries[k].astype(float)
        if np.any(product != 0):
            raise StructureError(f"∂_{k - 1}∂_{k} is not zero")
    return boundaries


def _sparse_rows(matrix) -> Tuple[Dict[int, Dict[int, int]], Dict[int, Set[int]]]:
    array = np.asarray(matrix)
    if array.ndim != 2:
        raise InputError(f"expected a 2-d matrix, got {array.ndim} dimensions")
    rows: Dict[int, Dict[int, int]] = {}
    cols: Dict[int, Set[int]] = {}
    for r, c in zip(*np.nonzero(array)):
        r, c = int(r), int(c)
        rows.setdefault(r, {})[c] = int(array[r, c])
        cols.setdefault(c, set()).add(r)
    return rows, cols


def _eliminate_units(rows, cols) -> int:
    """
    Pivot on ±1 entries until none is left. A unit pivot clears its column by
    row operations, after which its row is cleared by column operations that
    touch nothing else, so the pivot row and column simply drop out.
    """
    units = 0
    progress = True
    while progress:
        progress = False
        for r in sorted(rows):
            row = rows.get(r)
            if row is None:
                continue
            c = next((c for c in sorted(row) if abs(row[c]) == 1), None)
            if c is None:
                continue
            pivot = row[c]
            for x in sorted(cols[c] - {r}):
                target = rows[x]
                factor = target[c] * pivot
                for c2, value in row.items():
                    updated = target.get(c2, 0) - factor * value
                    if updated:
                        target[c2] = updated
                        cols.setdefault(c2, set()).add(x)
                    else:
                        target.pop(c2, None)
                        cols[c2].discard(x)
                if not target:
                    del rows[x]
            for c2 in row:
                cols[c2].discard(r)
            del rows[r]
            units += 1
            progress = True
    return units


def _dense_smith(a: np.ndarray) -> List[int]:
    """Smallest-pivot reduction of a dense object matrix, in place"""
    rows, cols = a.shape
    divisors = []
    t = 0
    while t < min(rows, cols):
        sub = a[t:, t:]
        nonzero = np.argwhere(sub != 0)
        if not len(nonzero):
            break
        values = [abs(sub[i, j]) for i, j in nonzero.tolist()]
        i, j = nonzero[values.index(min(values))].tolist()
        a[[t, t + i], :] = a[[t + i, t], :]
        a[:, [t, t + j]] = a[:, [t + j, t]]
        pivot = a[t, t]
        for r in range(t + 1, rows):
            if a[r, t] != 0:
                a[r, :] = a[r, :] - (a[r, t] // pivot) * a[t, :]
        for col in range(t + 1, cols):
            if a[t, col] != 0:
                a[:, col] = a[:, col] - (a[t, col] // pivot) * a[:, t]
        if any(value != 0 for value in a[t + 1 :, t]) or any(
            value != 0 for value in a[t, t + 1 :]
        ):
            ## a remainder smaller than the pivot is left, pivot again
            continue
        stray = next(
            (
                r
                for r in range(t + 1, rows)
                if any(value % pivot != 0 for value in a[r, t + 1 :])
            ),
            None,
        )
        if stray is not None:
            a[t, :] = a[t, :] + a[stray, :]
            continue
        divisors.append(abs(pivot))
        t += 1
    return divisors


def smith_normal_form(matrix) -> Tuple[List[int], int]:
    """
    Nonzero invariant factors d_1 | d_2 | ... of an integer matrix and its rank.

    Unit entries are eliminated first on a sparse copy; whatever remains is
    reduced densely with the smallest nonzero entry as pivot. All arithmetic
    is on Python ints.
    """
    rows, cols = _sparse_rows(matrix)
    units = _eliminate_units(rows, cols)
    live_rows = sorted(rows)
    live_cols = sorted({c for row in rows.values() for c in row})
    rest = integer_matrix(len(live_rows), len(live_cols))
    position = {c: j for j, c in enumerate(live_cols)}
    for i, r in enumerate(live_rows):
        for c, value in rows[r].items():
            rest[i, position[c]] = value
    divisors = [1] * units + _dense_smith(rest)
    return divisors, len(divisors)


@dataclass(frozen=True)
class HomologyProfile:
    """Reduced betti numbers and torsion divisors, one entry per dimension"""

    betti: Tuple[int, ...]
    torsion: Tuple[Tuple[int, ...], ...]

    @property
    def is_trivial(self) -> bool:
        """Every reduced group vanishes"""
        return not any(self.betti) and not any(self.torsion)

    def lines(self) -> List[str]:
        """betti k = b for every k, torsion k = d ... where present"""
        lines = [f"betti {k} = {b}" for k, b in enumerate(self.betti)]
        lines.extend(
            f"torsion {k} = " + " ".join(str(d) for d in divisors)
            for k, divisors in enumerate(self.torsion)
            if divisors
        )
        return lines


@log_execution_time("reduced_homology")
def reduced_homology(
    c: FlagComplex, max_dim: Optional[int] = None, cap: int = DEFAULT_CLIQUE_CAP
) -> HomologyProfile:
    """
    Reduced homology in dimensions 0..max_dim, by default up to the dimension
    of the largest simplex
    """
    if c.vertex_count == 0:
        raise InputError("homology of the empty complex is not computed")
    if max_dim is None:
        max_dim = c.clique_number(cap) - 1
    if max_dim < 0:
        raise InputError(f"max_dim must be nonnegative, got {max_dim}")
    boundaries = boundary_matrices(c, max_dim + 1, cap)
    forms = [smith_normal_form(matrix) for matrix in boundaries]
    betti = []
    torsion = []
    for k in range(max_dim + 1):
        chains = boundaries[k].shape[1]
        rank_k = forms[k][1]
        divisors_above, rank_above = forms[k + 1]
        betti.append(chains - rank_k - rank_above)
        torsion.append(tuple(d for d in divisors_above if d > 1))
    profile = HomologyProfile(tuple(betti), tuple(torsion))
    logger.debug("reduced homology %s", profile)
    return profile


def is_homology_point(c: FlagComplex, cap: int = DEFAULT_CLIQUE_CAP) -> bool:
    """True when all reduced homology up to the top dimension vanishes"""
    return reduced_homology(c, cap=cap).is_trivial

