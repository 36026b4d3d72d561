"""
Constants for the Kakimizu complex toolkit
"""
import enum


DEFAULT_CLIQUE_CAP = 10**6
DEFAULT_VERTEX_CAP = 400
DEFAULT_GROUP_CAP = 10**4
DEFAULT_MAX_PERMUTATION_COLUMNS = 8
DEFAULT_GENERATOR_RETRIES = 16
DEFAULT_ITERATION_CAP = 10**4

DEFAULT_CAPS = {
    "cliques": DEFAULT_CLIQUE_CAP,
    "vertices": DEFAULT_VERTEX_CAP,
    "group": DEFAULT_GROUP_CAP,
    "permutation_columns": DEFAULT_MAX_PERMUTATION_COLUMNS,
    "generator_retries": DEFAULT_GENERATOR_RETRIES,
    "iterations": DEFAULT_ITERATION_CAP,
}

DEFAULT_GENERATOR = {
    "columns": 3,
    "max_height": 2,
    "count": 4,
    "seed": 1,
}

## Versioned magic lines of the instance files
MAGIC = {
    "flagcomplex": "%flagcomplex v1",
    "heightfamily": "%heightfamily v1",
    "action": "%action v1",
    "projtable": "%projtable v1",
}

WORKER_ENV = "KAKIMIZU_JOBS"

BENCH_COLUMNS = [
    "suite",
    "check",
    "size",
    "seed",
    "vertices",
    "cases",
    "seconds",
    "status",
]


class Backing(enum.Enum):
    """
    Where a projection structure gets its π_σ and <_σ from
    """

    MODEL = "model"
    TABLE = "table"

    def __str__(self):
        return self.value


class ExitCode(enum.IntEnum):
    """
    Process exit codes of the command line
    """

    OK = 0
    CHECK_FAILED = 1
    USAGE = 2
