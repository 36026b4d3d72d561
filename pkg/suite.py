"""
Check suites: the checkers behind each --axioms choice, run on one instance
and flattened into report lines
"""
import logging
from typing import Callable
from typing import Dict
from typing import List
from typing import Optional
from typing import Tuple

from const import Backing
from const import DEFAULT_CAPS
from cover_model import HeightFamily
from dismantle import greedy_dismantle
from dismantle import projection_dismantle
from errors import CapExceededError
from errors import InputError
from errors import StructureError
from homology import is_homology_point
from projection import chain_length_stats
from projection import CheckReport
from projection import failed
from projection import linear_extension
from projection import ModelProjection
from projection import passed
from projection import ProjectionStructure
from projection import TableProjection
from projection import verify_ball_retention
from projection import verify_change_of_basis
from projection import verify_domination
from projection import verify_model_agreement
from projection import verify_order_axioms
from projection import verify_projection_decrement
from utils import AXIOMS

logger = logging.getLogger(__name__)

Caps = Dict[str, int]


def projection_structure(instance) -> Tuple[ProjectionStructure, Optional[HeightFamily]]:
    """Projection structure of a height family or projection table, with the family if any"""
    if isinstance(instance, HeightFamily):
        if not instance.closed:
            logger.warning("height family is not marked closed, projections may leave it")
        return ModelProjection(instance), instance
    if isinstance(instance, TableProjection):
        return instance, None
    raise InputError(
        f"expected a height family or projection table, got {type(instance).__name__}"
    )


def guard_vertices(ps: ProjectionStructure, cap: int):
    """CapExceededError when the instance has more vertices than the cap"""
    if ps.vertex_count > cap:
        raise CapExceededError(
            "vertices", cap, f"instance has {ps.vertex_count} vertices, cap is {cap}"
        )


def _structural(name: str, exc: StructureError, cases: int = 0) -> CheckReport:
    return failed(name, exc.witness or (), cases, str(exc))


def _disconnected(ps: ProjectionStructure, name: str) -> Optional[CheckReport]:
    if ps.complex.is_connected():
        return None
    return failed(name, (), 0, "complex is disconnected")


def _linear(ps: ProjectionStructure, family, caps: Caps) -> List[CheckReport]:
    name = "order.linear-extension"
    broken = _disconnected(ps, name)
    if broken:
        return [broken]
    for sigma in range(ps.vertex_count):
        try:
            linear_extension(ps, sigma)
        except StructureError as exc:
            return [_structural(name, exc, sigma + 1)]
    return [passed(name, ps.vertex_count)]


def _chains(ps: ProjectionStructure, family, caps: Caps) -> List[CheckReport]:
    try:
        return [chain_length_stats(ps, caps["cliques"]).report()]
    except StructureError as exc:
        return [_structural("chains.bound", exc)]


def _agreement(ps: ProjectionStructure, family, caps: Caps) -> List[CheckReport]:
    if family is None and ps.backing is Backing.MODEL:
        family = ps.family
    if family is None:
        logger.info("model agreement needs a height family, skipped")
        return []
    return [verify_model_agreement(ps, family)]


def _dismantle(ps: ProjectionStructure, family, caps: Caps) -> List[CheckReport]:
    reports = []
    name = "dismantle.projection"
    broken = _disconnected(ps, name)
    if broken:
        return [broken]
    report = passed(name, ps.vertex_count)
    for sigma in range(ps.vertex_count):
        try:
            projection_dismantle(ps, sigma)
        except StructureError as exc:
            report = _structural(name, exc, sigma + 1)
            break
    reports.append(report)

    greedy = greedy_dismantle(ps.complex)
    if greedy is None:
        reports.append(failed("dismantle.greedy", (), 1, "greedy domination got stuck"))
    else:
        reports.append(passed("dismantle.greedy", 1))

    if is_homology_point(ps.complex, caps["cliques"]):
        reports.append(passed("homology.point", 1))
    else:
        reports.append(failed("homology.point", (), 1, "nonzero reduced homology"))
    return reports


SUITES: Dict[str, Callable[[ProjectionStructure, Optional[HeightFamily], Caps], List[CheckReport]]] = {
    "decrement": lambda ps, family, caps: [verify_projection_decrement(ps)],
    "order": lambda ps, family, caps: verify_order_axioms(ps),
    "linear": _linear,
    "domination": lambda ps, family, caps: verify_domination(ps),
    "chains": _chains,
    "ball": lambda ps, family, caps: [verify_ball_retention(ps)],
    "basis": lambda ps, family, caps: [verify_change_of_basis(ps)],
    "agreement": _agreement,
    "dismantle": _dismantle,
}


def suite_names(axioms: str) -> List[str]:
    """Suites selected by an --axioms value, in their fixed order"""
    if axioms == "all":
        return [name for name in AXIOMS if name != "all"]
    if axioms not in SUITES:
        raise InputError(f"unknown check suite {axioms!r}")
    return [axioms]


def run_suite(
    ps: ProjectionStructure,
    axioms: str = "all",
    family: Optional[HeightFamily] = None,
    caps: Optional[Caps] = None,
) -> List[CheckReport]:
    """All reports of the selected suites, in suite order"""
    caps = caps or DEFAULT_CAPS
    guard_vertices(ps, caps["vertices"])
    reports = []
    for name in suite_names(axioms):
        logger.debug("running suite %s on %d vertices", name, ps.vertex_count)
        reports.extend(SUITES[name](ps, family, caps))
    return reports
