import os

import pytest

from errors import InputError
from errors import ParseError
from flag_complex import FlagComplex
from group_action import GroupAction
from instance_io import detect_format
from instance_io import load_instance
from instance_io import parse_action
from instance_io import parse_flag_complex
from instance_io import parse_height_family
from instance_io import parse_instance
from instance_io import parse_projection_table
from instance_io import serialize
from instance_io import write_instance
from projection import tabulate
from projection import TableProjection

FIXTURES = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "fixtures")


def test_detect_format():
    assert detect_format("%flagcomplex v1\nvertices 1\n") == "flagcomplex"
    assert detect_format("# leading comment\n\n%action v1\n") == "action"
    assert detect_format("%heightfamily v1\n") == "heightfamily"
    assert detect_format("%projtable v1\n") == "projtable"


def test_unknown_magic_line():
    with pytest.raises(ParseError) as info:
        detect_format("%foo v1\n")
    assert (info.value.line, info.value.column) == (1, 1)
    assert info.value.message.startswith("unknown magic line")


def test_unsupported_version():
    with pytest.raises(ParseError) as info:
        detect_format("%flagcomplex v2\n")
    assert info.value.column == 14
    assert "unsupported version" in info.value.message
    assert "%flagcomplex v1" in info.value.hint


def test_empty_file():
    with pytest.raises(ParseError):
        detect_format("# nothing here\n\n")


def test_parse_flag_complex_ignores_comments():
    text = "# a single edge\n\n%flagcomplex v1\nvertices 2\n# the edge\nedge 1 0\n"
    assert parse_flag_complex(text) == FlagComplex(2, ((0, 1),))


def test_flag_complex_text(p3):
    assert serialize(p3) == "%flagcomplex v1\nvertices 3\nedge 0 1\nedge 1 2\n"
    assert parse_instance(serialize(p3)) == p3


def test_non_integer_token():
    with pytest.raises(ParseError) as info:
        parse_flag_complex("%flagcomplex v1\nvertices 3\nedge 0 x\n")
    error = info.value
    assert (error.line, error.column) == (3, 8)
    assert error.hint == "write ids and heights in decimal"
    assert str(error).startswith("line 3, column 8: 'x' is not a nonnegative integer")


def test_edge_errors():
    with pytest.raises(ParseError) as info:
        parse_flag_complex("%flagcomplex v1\nvertices 2\nedge 0 2\n")
    assert info.value.column == 8
    assert "out of range" in info.value.message
    with pytest.raises(ParseError):
        parse_flag_complex("%flagcomplex v1\nvertices 2\nedge 0 1\nedge 1 0\n")
    with pytest.raises(ParseError):
        parse_flag_complex("%flagcomplex v1\nvertices 2\nedge 1 1\n")
    with pytest.raises(ParseError):
        parse_flag_complex("%flagcomplex v1\nedge 0 1\nvertices 2\n")
    with pytest.raises(ParseError):
        parse_flag_complex("%flagcomplex v1\n")


def test_wrong_argument_count():
    with pytest.raises(ParseError) as info:
        parse_flag_complex("%flagcomplex v1\nvertices 3\nedge 0\n")
    assert info.value.line == 3
    assert "takes 2 arguments" in info.value.message


def test_wrong_file_kind():
    with pytest.raises(ParseError):
        parse_flag_complex("%heightfamily v1\ncolumns 2\n")


def test_height_family_text(f1):
    text = serialize(f1)
    assert text == (
        "%heightfamily v1\ncolumns 2\nclosed\n"
        "vertex 0 0 0\nvertex 1 0 1\nvertex 2 1 0\n"
    )
    assert parse_height_family(text) == f1


def test_unnormalized_heights_get_a_hint():
    with pytest.raises(ParseError) as info:
        parse_height_family("%heightfamily v1\ncolumns 2\nvertex 0 1 2\n")
    error = info.value
    assert (error.line, error.column) == (3, 10)
    assert error.hint == "subtract 1 from every height: vertex 0 0 1"


def test_height_family_errors():
    with pytest.raises(ParseError) as info:
        parse_height_family("%heightfamily v1\ncolumns 2\nvertex 1 0 0\n")
    assert info.value.column == 8
    with pytest.raises(ParseError):
        parse_height_family("%heightfamily v1\ncolumns 2\nvertex 0 0 0\nvertex 1 0 0\n")
    with pytest.raises(ParseError):
        parse_height_family("%heightfamily v1\ncolumns 2\nvertex 0 0 0 0\n")
    with pytest.raises(ParseError):
        parse_height_family("%heightfamily v1\nvertex 0 0 0\n")


def test_parse_action():
    action = parse_action("%action v1\ngenerator 1 0\n")
    assert action == GroupAction(((1, 0),), 2)
    assert parse_action("%action v1\nvertices 3\n") == GroupAction.identity(3)
    with pytest.raises(InputError):
        parse_action("%action v1\ngenerator 1 0\n", vertex_count=3)


def test_action_errors():
    with pytest.raises(ParseError) as info:
        parse_action("%action v1\ngenerator 0 0\n")
    assert info.value.column == 11
    with pytest.raises(ParseError):
        parse_action("%action v1\nvertices 3\ngenerator 1 0\n")
    with pytest.raises(ParseError):
        parse_action("%action v1\n")


def test_action_text():
    action = GroupAction(((0, 2, 1),), 3)
    assert serialize(action) == "%action v1\nvertices 3\ngenerator 0 2 1\n"
    assert parse_instance(serialize(action)) == action


def test_projection_table_text(f1_ps):
    table = parse_projection_table(serialize(f1_ps))
    assert isinstance(table, TableProjection)
    assert (table.proj_matrix == f1_ps.proj_matrix).all()
    assert (table.less == f1_ps.less).all()
    assert serialize(table) == serialize(tabulate(f1_ps))


def test_projection_table_missing_entries():
    text = "%projtable v1\nvertices 2\nedge 0 1\nproj 0 1 0\n"
    with pytest.raises(ParseError) as info:
        parse_projection_table(text)
    assert info.value.line == 5
    assert info.value.hint == "add 'proj 1 0 <v>'"

    text += "proj 1 0 1\nord 0 0 1 0\n"
    with pytest.raises(ParseError) as info:
        parse_projection_table(text)
    assert "3 ord entries missing" in info.value.message


def test_projection_table_order_lines_need_edges():
    with pytest.raises(ParseError) as info:
        parse_projection_table("%projtable v1\nvertices 3\nedge 0 1\nord 0 0 2 1\n")
    assert "not adjacent" in info.value.message
    with pytest.raises(ParseError):
        parse_projection_table("%projtable v1\nvertices 2\nedge 0 1\nord 0 0 1 2\n")
    with pytest.raises(ParseError):
        parse_projection_table("%projtable v1\nvertices 2\nproj 0 0 1\n")


def test_write_and_load(tmp_path, chain3):
    target = tmp_path / "chain.kak"
    text = write_instance(chain3, str(target))
    assert target.read_text(encoding="utf-8") == text
    assert load_instance(str(target)) == chain3
    assert write_instance(chain3, None) == text


def test_load_missing_file(tmp_path):
    with pytest.raises(InputError) as info:
        load_instance(str(tmp_path / "absent.kak"))
    assert not isinstance(info.value, ParseError)


@pytest.mark.parametrize("name", sorted(os.listdir(FIXTURES)))
def test_shipped_fixtures_round_trip(name):
    with open(os.path.join(FIXTURES, name), encoding="utf-8") as fixture:
        text = fixture.read()
    assert serialize(parse_instance(text)) == text
