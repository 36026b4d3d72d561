"""
Command line of the Kakimizu complex toolkit: generate height families, run
the projection and order checkers, dismantle, compute homology, take hulls,
and replay the fixed point constructions. Reports go to stdout, logs to
stderr.
"""
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Dict
from typing import List
from typing import Tuple

from bench import run_bench
from const import ExitCode
from cover_model import close_convex
from cover_model import close_sigma_convex
from cover_model import generate_random
from cover_model import HeightFamily
from dismantle import greedy_dismantle
from dismantle import projection_dismantle
from dismantle import verify_dismantling
from errors import CapExceededError
from errors import InputError
from errors import ModelViolationError
from errors import StructureError
from flag_complex import FlagComplex
from group_action import check_action
from group_action import find_invariant_simplex
from group_action import fix_complex
from group_action import fix_dismantle
from group_action import verify_distance_sum_decrease
from homology import is_homology_point
from homology import reduced_homology
from instance_io import load_instance
from instance_io import parse_action
from instance_io import write_instance
from projection import ModelProjection
from suite import projection_structure
from suite import run_suite
from utils import configure_logger
from utils import full_stack
from utils import get_worker_count
from utils import load_settings
from utils import parse_args

logger = logging.getLogger(__name__)

Settings = Dict[str, Dict[str, int]]


def emit(lines: List[str]):
    """Write report lines to stdout"""
    for line in lines:
        print(line)


def _exit_code(reports) -> ExitCode:
    return ExitCode.OK if all(report.passed for report in reports) else ExitCode.CHECK_FAILED


def _complex_of(instance) -> FlagComplex:
    if isinstance(instance, FlagComplex):
        return instance
    if isinstance(instance, HeightFamily):
        return instance.complex
    return projection_structure(instance)[0].complex


def _family_of(path: str) -> HeightFamily:
    instance = load_instance(path)
    if not isinstance(instance, HeightFamily):
        raise InputError(f"{path} is not a height family file")
    return instance


def _vertex(instance_size: int, vertex: int, what: str) -> int:
    if not 0 <= vertex < instance_size:
        raise InputError(f"{what} {vertex} is not a vertex id (instance has {instance_size})")
    return vertex


def run_gen(args, settings: Settings) -> ExitCode:
    """gen: seeded random convex-closed family, or its projection table"""
    generator = settings["generator"]
    caps = settings["caps"]
    family = generate_random(
        args.columns if args.columns is not None else generator["columns"],
        args.count if args.count is not None else generator["count"],
        args.max_height if args.max_height is not None else generator["max_height"],
        args.seed if args.seed is not None else generator["seed"],
        symmetry=args.symmetry or None,
        vertex_cap=caps["vertices"],
        retries=caps["generator_retries"],
        permutation_cap=caps["permutation_columns"],
    )
    instance = ModelProjection(family) if args.table else family
    text = write_instance(instance, args.output)
    if args.output is None:
        sys.stdout.write(text)
    return ExitCode.OK


def check_file(path: str, axioms: str, caps: Dict[str, int]) -> Tuple[List[str], int]:
    """Report lines and exit code of one file; runs inside worker processes"""
    try:
        ps, family = projection_structure(load_instance(path))
        logger.info("%s: %s-backed structure on %d vertices", path, ps.backing, ps.vertex_count)
        reports = run_suite(ps, axioms, family, caps)
    except CapExceededError as exc:
        return [f"SKIPPED(cap) {exc.cap} {exc}"], int(ExitCode.USAGE)
    except InputError as exc:
        return [f"ERROR {exc}"], int(ExitCode.USAGE)
    return [report.line() for report in reports], int(_exit_code(reports))


def run_check(args, settings: Settings) -> ExitCode:
    """check: run the selected checkers on every file, in argument order"""
    caps = dict(settings["caps"])
    if args.cap_vertices is not None:
        caps["vertices"] = args.cap_vertices
    jobs = get_worker_count(args.jobs)
    tasks = [(path, args.axioms, caps) for path in args.files]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            results = list(executor.map(check_file, *zip(*tasks)))
    else:
        results = [check_file(*task) for task in tasks]
    code = ExitCode.OK
    for path, (lines, file_code) in zip(args.files, results):
        emit([f"== {path}"] + lines)
        code = max(code, ExitCode(file_code))
    return code


def run_dismantle(args, settings: Settings) -> ExitCode:
    """dismantle: greedy for plain complexes or on request, by projections otherwise"""
    instance = load_instance(args.file)
    if args.greedy or isinstance(instance, FlagComplex):
        c = _complex_of(instance)
        order = greedy_dismantle(c)
        if order is None:
            emit(["FAIL dismantle.greedy no dominated vertex left"])
            return ExitCode.CHECK_FAILED
    else:
        ps, _ = projection_structure(instance)
        c = ps.complex
        base = _vertex(ps.vertex_count, args.base if args.base is not None else 0, "base")
        order = projection_dismantle(ps, base)
    report = verify_dismantling(c, order)
    emit(order.lines() + [report.line()])
    return _exit_code([report])


def run_homology(args, settings: Settings) -> ExitCode:
    """homology: reduced integer homology, reported rather than judged"""
    c = _complex_of(load_instance(args.file))
    profile = reduced_homology(c, args.max_dim, settings["caps"]["cliques"])
    emit(profile.lines())
    return ExitCode.OK


def run_hull(args, settings: Settings) -> ExitCode:
    """hull: convex closure of a family, or σ-convex closure with --base"""
    family = _family_of(args.file)
    cap = settings["caps"]["vertices"]
    if args.base is None:
        hull = close_convex(family, max_members=cap)
    else:
        base = _vertex(len(family), args.base, "base")
        hull = close_sigma_convex(family, family.members[base], max_members=cap)
    logger.info("hull has %d members, %d new", len(hull), len(hull) - len(family))
    text = write_instance(hull, args.output)
    if args.output is None:
        sys.stdout.write(text)
    return ExitCode.OK


def _action_setup(args, settings: Settings):
    ps, _ = projection_structure(load_instance(args.file))
    with open(args.action, encoding="utf-8") as action_file:
        action = parse_action(action_file.read(), ps.vertex_count)
    ## finite groups only, enumerated up to the group cap
    order = len(action.elements(settings["caps"]["group"]))
    logger.info("action of a group of order %d on %d vertices", order, ps.vertex_count)
    reports = check_action(ps, action)
    return ps, action, reports


def run_fixpoint(args, settings: Settings) -> ExitCode:
    """fixpoint: invariant simplex of the action, with the trace of every round"""
    ps, action, reports = _action_setup(args, settings)
    emit([report.line() for report in reports])
    if not all(report.passed for report in reports):
        return ExitCode.CHECK_FAILED
    seed = _vertex(ps.vertex_count, args.base, "seed")
    result = find_invariant_simplex(ps, action, seed, settings["caps"]["iterations"])
    emit(result.lines())
    return ExitCode.OK


def run_fixcomplex(args, settings: Settings) -> ExitCode:
    """fixcomplex: the complex of minimal invariant simplices, dismantled towards Σ"""
    ps, action, reports = _action_setup(args, settings)
    emit([report.line() for report in reports])
    if not all(report.passed for report in reports):
        return ExitCode.CHECK_FAILED
    fix = fix_complex(ps.complex, action)
    emit(fix.lines())
    if not fix.vertices:
        emit(["fixed point complex is empty"])
        return ExitCode.OK
    base = args.base if args.base is not None else 0
    if not 0 <= base < len(fix.vertices):
        raise InputError(f"Σ index {base} out of range (fixed point complex has {len(fix.vertices)})")
    sigma_vertex = fix.vertices[base]
    order = fix_dismantle(ps, action, sigma_vertex, fix)
    checks = [
        verify_distance_sum_decrease(ps, action, sigma_vertex, delta_vertex)
        for delta_vertex in fix.vertices
        if delta_vertex != sigma_vertex
    ]
    checks.append(verify_dismantling(fix.complex, order))
    point = is_homology_point(fix.complex, settings["caps"]["cliques"])
    emit(order.lines() + [report.line() for report in checks])
    emit([("PASS" if point else "FAIL") + " homology.point"])
    if not point:
        return ExitCode.CHECK_FAILED
    return _exit_code(checks)


def run_bench_command(args, settings: Settings) -> ExitCode:
    """bench: timing table of the checkers on generated families"""
    caps = dict(settings["caps"])
    if args.cap_vertices is not None:
        caps["vertices"] = args.cap_vertices
    generator = settings["generator"]
    frame = run_bench(
        args.suite,
        args.sizes,
        args.seeds,
        columns=args.columns if args.columns is not None else generator["columns"],
        max_height=args.max_height if args.max_height is not None else generator["max_height"],
        jobs=get_worker_count(args.jobs),
        caps=caps,
    )
    text = frame.to_csv(index=False, lineterminator="\n")
    if args.output is None:
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as csv_file:
            csv_file.write(text)
        logger.info("bench table written to %s", args.output)
    return ExitCode.OK


COMMANDS = {
    "gen": run_gen,
    "check": run_check,
    "dismantle": run_dismantle,
    "homology": run_homology,
    "hull": run_hull,
    "fixpoint": run_fixpoint,
    "fixcomplex": run_fixcomplex,
    "bench": run_bench_command,
}


def _failure_lines(command: str, exc: Exception) -> List[str]:
    lines = [step.line() for step in getattr(exc, "trace", None) or []]
    witness = getattr(exc, "witness", None)
    text = f"FAIL {command}"
    if witness:
        text += " " + ",".join(str(v) for v in witness)
    return lines + [f"{text} {exc}"]


def main(args) -> int:
    """
    Main function
    """
    configure_logger(args.log_level, "kakimizu")
    logger.debug("Input Arguments: %s", json.dumps(vars(args), indent=2, default=str))
    try:
        settings = load_settings(args.settings)
        code = COMMANDS[args.command](args, settings)
    except CapExceededError as exc:
        logger.error("Cap exceeded: %s", exc)
        code = ExitCode.USAGE
    except InputError as exc:
        logger.error("Input error: %s", exc)
        code = ExitCode.USAGE
    except OSError as exc:
        logger.error("I/O error: %s", exc)
        code = ExitCode.USAGE
    except (StructureError, ModelViolationError) as exc:
        emit(_failure_lines(args.command, exc))
        code = ExitCode.CHECK_FAILED
    except Exception as exc:  ## pylint: disable=broad-except
        logger.debug(full_stack())
        logger.error("Unexpected error: %s", exc)
        code = ExitCode.USAGE
    return int(code)


if __name__ == "__main__":
    sys.exit(main(parse_args()))
