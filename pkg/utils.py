"""
Utility functions for the Kakimizu complex toolkit
"""
import argparse
import datetime
import logging
import os
import pathlib
import sys
import time
import traceback
from functools import wraps
from typing import Dict
from typing import List

import colorlog
import yaml

from const import DEFAULT_CAPS
from const import DEFAULT_GENERATOR
from const import WORKER_ENV
from errors import InputError

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(levelname)s:%(name)s:%(asctime)s.%(msecs)d %(filename)s:%(lineno)d:%(funcName)s() %(message)s"
LOG_DATE_FORMAT = "%A,%d/%m/%Y|%H:%M:%S"

AXIOMS = [
    "all",
    "decrement",
    "order",
    "linear",
    "domination",
    "chains",
    "ball",
    "basis",
    "agreement",
    "dismantle",
]


def log_execution_time(message):
    """Log the execution time of the function"""

    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            start_time = time.perf_counter()
            result = func(*args, **kwargs)
            end_time = time.perf_counter()
            execution_time = (end_time - start_time) * 1000  # convert to milliseconds
            logger.info("%s executed in %.2f milliseconds", message, execution_time)
            return result

        return wrapper

    return decorator


def full_stack():
    """
    Get the full stack trace
    """
    exc = sys.exc_info()[0]
    stack = traceback.extract_stack()[:-1]  # last one would be full_stack()
    if exc is not None:  # i.e. an exception is present
        del stack[-1]  # remove call of full_stack, the printed exception
        # will contain the caught exception caller instead
    trc = "Traceback (most recent call last):\n"
    stackstr = trc + "".join(traceback.format_list(stack))
    if exc is not None:
        stackstr += "  " + traceback.format_exc()
    return stackstr


def configure_logger(log_level, prefix_log_file: str = "kakimizu", log_dir=None):
    """
    Configure the logger. Records go to stderr in colour, and to
    <log_dir>/<prefix>_<YYYYMMDD>.log when a log directory is given.
    """
    log_colors_config = {
        "DEBUG": "cyan",
        "INFO": "green",
        "WARNING": "yellow",
        "ERROR": "red",
        "CRITICAL": "red",
    }

    # stdout carries the reports, keep the logs on stderr
    color_stream_handler = colorlog.StreamHandler(sys.stderr)
    color_stream_handler.setFormatter(
        colorlog.ColoredFormatter(
            fmt="%(log_color)s" + LOG_FORMAT,
            datefmt=LOG_DATE_FORMAT,
            log_colors=log_colors_config,
        )
    )
    handlers = [color_stream_handler]

    if log_dir is not None:
        pathlib.Path.mkdir(pathlib.Path(log_dir), parents=True, exist_ok=True)
        log_file = pathlib.Path(log_dir) / (
            f"{prefix_log_file}_{datetime.datetime.now().strftime('%Y%m%d')}.log"
        )
        handlers.append(logging.FileHandler(log_file))

    logging.basicConfig(
        format=LOG_FORMAT,
        datefmt=LOG_DATE_FORMAT,
        handlers=handlers,
        level=log_level,
        force=True,
    )
    ## pandas pulls in numexpr, which announces its thread count
    set_module_logger("numexpr.utils", logging.WARNING)

    return logging.getLogger(prefix_log_file)


def set_module_logger(module_name, level=logging.CRITICAL):
    """
    Quiet a third-party module logger
    """
    logging.getLogger(module_name).setLevel(level)


def load_settings(path=None) -> Dict[str, Dict[str, int]]:
    """
    Caps and generator defaults, overridden by the YAML settings file at path
    """
    settings = {"caps": dict(DEFAULT_CAPS), "generator": dict(DEFAULT_GENERATOR)}
    if path is None:
        return settings
    try:
        with open(path, encoding="utf-8") as yml_file:
            yml_config = yaml.safe_load(yml_file) or {}
    except OSError as exc:
        raise InputError(f"cannot read settings file {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise InputError(f"settings file {path} is not valid YAML: {exc}") from exc

    if not isinstance(yml_config, dict):
        raise InputError(f"settings file {path} must hold a mapping")
    for section, overrides in yml_config.items():
        if section not in settings:
            raise InputError(f"unknown settings section {section!r}")
        if not isinstance(overrides, dict):
            raise InputError(f"settings section {section!r} must be a mapping")
        for key, value in overrides.items():
            if key not in settings[section]:
                raise InputError(f"unknown setting {section}.{key}")
            if not isinstance(value, int) or isinstance(value, bool):
                raise InputError(f"setting {section}.{key} must be an integer")
            settings[section][key] = value
    logger.debug("Settings loaded from %s: %s", path, settings)
    return settings


def get_worker_count(jobs=None) -> int:
    """
    Worker count from --jobs, else from the environment, else 1
    """
    if jobs is None:
        env_value = os.environ.get(WORKER_ENV)
        if env_value is None:
            return 1
        try:
            jobs = int(env_value)
        except ValueError as exc:
            raise InputError(f"{WORKER_ENV} must be an integer, got {env_value!r}") from exc
    if jobs < 1:
        raise InputError(f"worker count must be positive, got {jobs}")
    return jobs


def parse_int_list(text: str) -> List[int]:
    """
    Parse a comma separated integer list such as 50,100,200
    """
    try:
        values = [int(item) for item in text.split(",") if item.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer list: {text!r}") from exc
    if not values:
        raise argparse.ArgumentTypeError("empty integer list")
    return values


def parse_permutation(text: str) -> List[int]:
    """
    Parse a column permutation written as 1,0,2
    """
    values = parse_int_list(text)
    if sorted(values) != list(range(len(values))):
        raise argparse.ArgumentTypeError(f"not a permutation: {text!r}")
    return values


## pylint: disable=too-many-statements
def build_parser() -> argparse.ArgumentParser:
    """
    Argument parser of the kakimizu command line
    """
    args = argparse.ArgumentParser(
        prog="kakimizu",
        description="Projection, order and dismantling checks on flag complexes "
        "and the height function model of the Kakimizu complex",
    )
    args.add_argument(
        "--log-level",
        default="WARNING",
        help="Log level | default WARNING",
        choices=["DEBUG", "INFO", "WARNING"],
    )
    args.add_argument(
        "--settings",
        default=None,
        help="YAML settings file overriding caps and generator defaults",
    )
    commands = args.add_subparsers(dest="command", required=True)

    gen = commands.add_parser("gen", help="Generate a convex-closed height family")
    gen.add_argument("--columns", type=int, default=None, help="Number of columns")
    gen.add_argument("--max-height", type=int, default=None, help="Largest height drawn")
    gen.add_argument("--count", type=int, default=None, help="Number of random draws")
    gen.add_argument("--seed", type=int, default=None, help="Random seed")
    gen.add_argument(
        "--symmetry",
        type=parse_permutation,
        action="append",
        default=[],
        help="Column permutation the family must be invariant under, e.g. 1,0,2",
    )
    gen.add_argument(
        "--table",
        action="store_true",
        default=False,
        help="Write the projection table instead of the height family",
    )
    gen.add_argument("-o", "--output", default=None, help="Output file | default stdout")

    check = commands.add_parser("check", help="Run the projection and order checkers")
    check.add_argument("--axioms", default="all", choices=AXIOMS, help="Checks to run")
    check.add_argument("--jobs", type=int, default=None, help="Worker processes")
    check.add_argument("--cap-vertices", type=int, default=None, help="Vertex cap")
    check.add_argument("files", nargs="+", help="Height family or projection table files")

    dismantle = commands.add_parser("dismantle", help="Dismantle a complex")
    dismantle.add_argument("--base", type=int, default=None, help="Base vertex σ")
    dismantle.add_argument(
        "--greedy",
        action="store_true",
        default=False,
        help="Use greedy domination instead of projections",
    )
    dismantle.add_argument("file")

    homology = commands.add_parser("homology", help="Reduced integer homology")
    homology.add_argument("--max-dim", type=int, default=None, help="Top dimension")
    homology.add_argument("file")

    hull = commands.add_parser("hull", help="Convex or σ-convex hull of a family")
    hull.add_argument("--base", type=int, default=None, help="Close under π_σ only")
    hull.add_argument("-o", "--output", default=None, help="Output file | default stdout")
    hull.add_argument("file")

    fixpoint = commands.add_parser("fixpoint", help="Find a G-invariant simplex")
    fixpoint.add_argument("--action", required=True, help="Action file")
    fixpoint.add_argument("--base", type=int, default=0, help="Seed vertex")
    fixpoint.add_argument("file")

    fixcomplex = commands.add_parser("fixcomplex", help="Fixed point set complex")
    fixcomplex.add_argument("--action", required=True, help="Action file")
    fixcomplex.add_argument("--base", type=int, default=None, help="Fix-vertex Σ")
    fixcomplex.add_argument("file")

    bench = commands.add_parser("bench", help="Time the checkers on generated families")
    bench.add_argument("--suite", default="all", choices=AXIOMS, help="Checks to time")
    bench.add_argument("--sizes", type=parse_int_list, required=True, help="e.g. 50,100")
    bench.add_argument("--seeds", type=parse_int_list, required=True, help="e.g. 1,2")
    bench.add_argument("--columns", type=int, default=None, help="Number of columns")
    bench.add_argument("--max-height", type=int, default=None, help="Largest height")
    bench.add_argument("--jobs", type=int, default=None, help="Worker processes")
    bench.add_argument("--cap-vertices", type=int, default=None, help="Vertex cap")
    bench.add_argument("-o", "--output", default=None, help="CSV file | default stdout")
    return args


def parse_args(argv=None):
    """
    Parse the arguments
    """
    return build_parser().parse_args(argv)
