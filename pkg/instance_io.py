"""
Line based instance files: flag complexes, height families, group actions
and projection tables. Each file opens with a versioned magic line; '#'
lines and blank lines are ignored. Serializing writes the normalized form
(vertices ascending, edges lexicographic) so parse and serialize round-trip.
"""
import logging
import re
from typing import Dict
from typing import Iterator
from typing import List
from typing import Optional
from typing import Tuple
from typing import Union

from const import MAGIC
from cover_model import HeightFamily
from cover_model import is_normalized
from errors import InputError
from errors import ParseError
from flag_complex import FlagComplex
from group_action import GroupAction
from projection import ProjectionStructure
from projection import TableProjection
from projection import tabulate

logger = logging.getLogger(__name__)

Instance = Union[FlagComplex, HeightFamily, GroupAction, TableProjection]

TOKEN = re.compile(r"\S+")


class Line:
    """A meaningful input line split into tokens with their 1-based columns"""

    def __init__(self, number: int, text: str):
        self.number = number
        self.tokens = [(match.group(), match.start() + 1) for match in TOKEN.finditer(text)]

    @property
    def keyword(self) -> str:
        """First token"""
        return self.tokens[0][0]

    def error(self, message: str, position: int = 0, hint: Optional[str] = None) -> ParseError:
        """ParseError pointing at token number position"""
        column = self.tokens[position][1] if position < len(self.tokens) else self._end()
        return ParseError(message, self.number, column, hint)

    def _end(self) -> int:
        token, column = self.tokens[-1]
        return column + len(token)

    def integers(self, count: Optional[int] = None) -> List[int]:
        """The arguments after the keyword as nonnegative integers"""
        arguments = self.tokens[1:]
        if count is not None and len(arguments) != count:
            raise self.error(
                f"{self.keyword} takes {count} arguments, got {len(arguments)}",
                min(len(arguments), count) + 1,
            )
        values = []
        for position, (token, _) in enumerate(arguments, start=1):
            if not (token.isascii() and token.isdigit()):
                raise self.error(
                    f"{token!r} is not a nonnegative integer",
                    position,
                    hint="write ids and heights in decimal",
                )
            values.append(int(token))
        return values


def _lines(text: str) -> Iterator[Line]:
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped and not stripped.startswith("#"):
            yield Line(number, raw)


def detect_format(text: str) -> str:
    """Format key of MAGIC named by the first meaningful line"""
    first = next(_lines(text), None)
    if first is None:
        raise ParseError("empty instance file", 1, hint="start with a magic line such as %flagcomplex v1")
    header = " ".join(token for token, _ in first.tokens)
    for kind, magic in MAGIC.items():
        if header == magic:
            return kind
    known = ", ".join(MAGIC.values())
    if first.keyword.lstrip("%") in MAGIC:
        raise first.error(f"unsupported version {header!r}", 1, hint=f"supported: {known}")
    raise first.error(f"unknown magic line {header!r}", hint=f"expected one of: {known}")


def _body(text: str, kind: str) -> Tuple[List[Line], int]:
    found = detect_format(text)
    if found != kind:
        raise ParseError(f"expected a {kind} file, found {found}", 1, hint=f"first line {MAGIC[kind]}")
    lines = list(_lines(text))
    return lines[1:], len(text.splitlines()) + 1


def _unknown(line: Line, allowed: str) -> ParseError:
    return line.error(f"unknown keyword {line.keyword!r}", hint=f"expected {allowed}")


def _header_value(line: Line, current: Optional[int]) -> int:
    if current is not None:
        raise line.error(f"{line.keyword} given twice")
    (value,) = line.integers(1)
    return value


def _edge(line: Line, vertices: Optional[int], seen: set) -> Tuple[int, int]:
    if vertices is None:
        raise line.error("edge before the vertices line", hint="declare 'vertices N' first")
    u, v = line.integers(2)
    for position, w in ((1, u), (2, v)):
        if w >= vertices:
            raise line.error(
                f"vertex id {w} out of range", position, hint=f"vertex ids run 0..{vertices - 1}"
            )
    if u == v:
        raise line.error(f"self-loop at {u}", 2, hint="flag complexes have no loops")
    edge = (min(u, v), max(u, v))
    if edge in seen:
        raise line.error(f"duplicate edge {edge}", hint="list every edge once")
    seen.add(edge)
    return edge


def parse_flag_complex(text: str) -> FlagComplex:
    """%flagcomplex v1, then 'vertices N' and 'edge u v' lines"""
    lines, _ = _body(text, "flagcomplex")
    vertices = None
    edges = set()
    for line in lines:
        if line.keyword == "vertices":
            vertices = _header_value(line, vertices)
        elif line.keyword == "edge":
            _edge(line, vertices, edges)
        else:
            raise _unknown(line, "vertices or edge")
    if vertices is None:
        raise ParseError("missing vertices line", 1, hint="add 'vertices N'")
    return FlagComplex(vertices, tuple(sorted(edges)))


def parse_height_family(text: str) -> HeightFamily:
    """%heightfamily v1, then 'columns M', an optional 'closed' and 'vertex i h_1 .. h_M' lines"""
    lines, _ = _body(text, "heightfamily")
    columns = None
    closed = False
    members: List[Tuple[int, ...]] = []
    seen: Dict[Tuple[int, ...], int] = {}
    for line in lines:
        if line.keyword == "columns":
            columns = _header_value(line, columns)
            if columns < 1:
                raise line.error("need at least one column", 1)
        elif line.keyword == "closed":
            line.integers(0)
            closed = True
        elif line.keyword == "vertex":
            if columns is None:
                raise line.error("vertex before the columns line", hint="declare 'columns M' first")
            values = line.integers(columns + 1)
            index, heights = values[0], tuple(values[1:])
            if index != len(members):
                raise line.error(
                    f"vertex id {index} out of sequence",
                    1,
                    hint=f"vertex ids are listed as 0, 1, 2, ...; expected {len(members)}",
                )
            if not is_normalized(heights):
                low = min(heights)
                fixed = " ".join(str(h - low) for h in heights)
                raise line.error(
                    f"heights {heights} are not normalized",
                    2,
                    hint=f"subtract {low} from every height: vertex {index} {fixed}",
                )
            if heights in seen:
                raise line.error(
                    f"vertex {index} repeats vertex {seen[heights]}", 2, hint="members must be distinct"
                )
            seen[heights] = index
            members.append(heights)
        else:
            raise _unknown(line, "columns, closed or vertex")
    if columns is None:
        raise ParseError("missing columns line", 1, hint="add 'columns M'")
    return HeightFamily(columns, tuple(members), closed)


def parse_action(text: str, vertex_count: Optional[int] = None) -> GroupAction:
    """%action v1, then an optional 'vertices N' and 'generator p_0 .. p_{N-1}' lines"""
    lines, end = _body(text, "action")
    vertices = None
    generators = []
    for line in lines:
        if line.keyword == "vertices":
            if generators:
                raise line.error("vertices after the generators", hint="put 'vertices N' first")
            vertices = _header_value(line, vertices)
        elif line.keyword == "generator":
            images = line.integers()
            expected = vertices if vertices is not None else len(generators[0]) if generators else None
            if expected is not None and len(images) != expected:
                raise line.error(
                    f"generator moves {len(images)} vertices, expected {expected}",
                    hint="every generator lists the image of each vertex",
                )
            if sorted(images) != list(range(len(images))):
                raise line.error(
                    "generator is not a permutation",
                    1,
                    hint=f"list each of 0..{len(images) - 1} exactly once",
                )
            generators.append(tuple(images))
        else:
            raise _unknown(line, "vertices or generator")
    if vertices is None:
        if not generators:
            raise ParseError("an action without generators needs a vertices line", end)
        vertices = len(generators[0])
    if vertex_count is not None and vertices != vertex_count:
        raise InputError(f"action on {vertices} vertices, instance has {vertex_count}")
    return GroupAction(tuple(generators), vertices)


## pylint: disable=too-many-branches
def parse_projection_table(text: str) -> TableProjection:
    """
    %projtable v1, then 'vertices N', 'edge u v', 'proj σ ρ v' for every
    σ != ρ and 'ord σ ρ ρ' b' for every σ and ordered adjacent pair
    """
    lines, end = _body(text, "projtable")
    vertices = None
    edges = set()
    proj: Dict[Tuple[int, int], int] = {}
    order: Dict[Tuple[int, int, int], bool] = {}
    for line in lines:
        if line.keyword == "vertices":
            vertices = _header_value(line, vertices)
        elif line.keyword == "edge":
            if proj or order:
                raise line.error("edge after the tables", hint="list edges before proj and ord lines")
            _edge(line, vertices, edges)
        elif line.keyword in ("proj", "ord"):
            if vertices is None:
                raise line.error(f"{line.keyword} before the vertices line")
            if line.keyword == "proj":
                sigma, rho, image = line.integers(3)
                values = (sigma, rho, image)
            else:
                sigma, rho, rho2, bit = line.integers(4)
                values = (sigma, rho, rho2)
                if bit > 1:
                    raise line.error(f"order bit {bit}", 4, hint="write 0 or 1")
            for position, w in enumerate(values, start=1):
                if w >= vertices:
                    raise line.error(
                        f"vertex id {w} out of range", position, hint=f"vertex ids run 0..{vertices - 1}"
                    )
            if line.keyword == "proj":
                if sigma == rho:
                    raise line.error("π_σ(σ) is undefined", 2, hint="list σ != ρ only")
                if (sigma, rho) in proj:
                    raise line.error(f"proj {sigma} {rho} given twice")
                proj[(sigma, rho)] = image
            else:
                if (min(rho, rho2), max(rho, rho2)) not in edges:
                    raise line.error(
                        f"{rho} and {rho2} are not adjacent", 2, hint="ord lines cover edges only"
                    )
                if (sigma, rho, rho2) in order:
                    raise line.error(f"ord {sigma} {rho} {rho2} given twice")
                order[(sigma, rho, rho2)] = bool(bit)
        else:
            raise _unknown(line, "vertices, edge, proj or ord")
    if vertices is None:
        raise ParseError("missing vertices line", 1, hint="add 'vertices N'")
    missing_proj = [
        (s, r) for s in range(vertices) for r in range(vertices) if s != r and (s, r) not in proj
    ]
    if missing_proj:
        s, r = missing_proj[0]
        raise ParseError(
            f"{len(missing_proj)} proj entries missing", end, hint=f"add 'proj {s} {r} <v>'"
        )
    missing_ord = [
        (s, a, b)
        for s in range(vertices)
        for u, v in sorted(edges)
        for a, b in ((u, v), (v, u))
        if (s, a, b) not in order
    ]
    if missing_ord:
        s, a, b = missing_ord[0]
        raise ParseError(
            f"{len(missing_ord)} ord entries missing", end, hint=f"add 'ord {s} {a} {b} <0|1>'"
        )
    return TableProjection(FlagComplex(vertices, tuple(sorted(edges))), proj, order)


PARSERS = {
    "flagcomplex": parse_flag_complex,
    "heightfamily": parse_height_family,
    "action": parse_action,
    "projtable": parse_projection_table,
}


def parse_instance(text: str) -> Instance:
    """Parse any of the four formats, chosen by the magic line"""
    return PARSERS[detect_format(text)](text)


def load_instance(path: str) -> Instance:
    """Read and parse an instance file"""
    try:
        with open(path, encoding="utf-8") as instance_file:
            text = instance_file.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    instance = parse_instance(text)
    logger.debug("loaded %s from %s", type(instance).__name__, path)
    return instance


def _join(lines: List[str]) -> str:
    return "\n".join(lines) + "\n"


def serialize_flag_complex(c: FlagComplex) -> str:
    """Normalized %flagcomplex v1 text"""
    lines = [MAGIC["flagcomplex"], f"vertices {c.vertex_count}"]
    lines.extend(f"edge {u} {v}" for u, v in sorted(c.edges))
    return _join(lines)


def serialize_height_family(family: HeightFamily) -> str:
    """Normalized %heightfamily v1 text"""
    lines = [MAGIC["heightfamily"], f"columns {family.columns}"]
    if family.closed:
        lines.append("closed")
    lines.extend(
        f"vertex {i} " + " ".join(str(h) for h in member)
        for i, member in enumerate(family.members)
    )
    return _join(lines)


def serialize_action(a: GroupAction) -> str:
    """Normalized %action v1 text"""
    lines = [MAGIC["action"], f"vertices {a.vertex_count}"]
    lines.extend("generator " + " ".join(str(v) for v in g) for g in a.generators)
    return _join(lines)


def serialize_projection_table(ps: ProjectionStructure) -> str:
    """Normalized %projtable v1 text of any projection structure"""
    table = tabulate(ps)
    lines = [MAGIC["projtable"], f"vertices {table.vertex_count}"]
    lines.extend(f"edge {u} {v}" for u, v in sorted(table.complex.edges))
    lines.extend(f"proj {s} {r} {v}" for (s, r), v in sorted(table.proj_table.items()))
    lines.extend(
        f"ord {s} {a} {b} {int(bit)}" for (s, a, b), bit in sorted(table.ord_table.items())
    )
    return _join(lines)


def serialize(instance) -> str:
    """Serialize any instance type"""
    if isinstance(instance, FlagComplex):
        return serialize_flag_complex(instance)
    if isinstance(instance, HeightFamily):
        return serialize_height_family(instance)
    if isinstance(instance, GroupAction):
        return serialize_action(instance)
    if isinstance(instance, ProjectionStructure):
        return serialize_projection_table(instance)
    raise InputError(f"cannot serialize {type(instance).__name__}")


def write_instance(instance, path: Optional[str]) -> str:
    """Serialize to path, or return the text for stdout when path is None"""
    text = serialize(instance)
    if path is not None:
        with open(path, "w", encoding="utf-8") as instance_file:
            instance_file.write(text)
        logger.info("wrote %s", path)
    return text
