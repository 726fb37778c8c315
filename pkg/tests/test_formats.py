# tests/test_formats.py

from __future__ import annotations

import pytest

from app.models.dfa import Dfa
from app.models.errors import ParseError
from app.services.formats import (
    DfaDocument,
    load_dfa,
    parse_dfa_text,
    parse_semigroup_file,
    parse_transformation,
    serialize_dfa,
    serialize_semigroup,
)
from app.services.semigroup import candidate_b
from tests.helpers import A_SIGMA_STAR_B_TEXT, T


def test_parse_transformation():
    assert parse_transformation("(2,3,3)") == T(2, 3, 3)
    assert parse_transformation("  ( 2 , 3,3 ) ") == T(2, 3, 3)


@pytest.mark.parametrize(
    "text, position",
    [
        ("2,3,3)", 1),
        ("(2,3,3", 6),
        ("(2,x,3)", 4),
        ("(²,1)", 2),
        ("(1,1,٣)", 6),
    ],
)
def test_parse_transformation_errors(text, position):
    with pytest.raises(ParseError) as info:
        parse_transformation(text)
    assert info.value.position == position


def test_parse_transformation_out_of_range():
    with pytest.raises(ParseError):
        parse_transformation("(2,4,3)")


def test_semigroup_file():
    text = "# B для n = 3\ndegree: 3\n(1,1,1)\n(2,2,2)  # коментар\n\n(3,3,3)\n"
    degree, items = parse_semigroup_file(text)
    assert degree == 3
    assert items == [T(1, 1, 1), T(2, 2, 2), T(3, 3, 3)]


def test_semigroup_file_errors():
    with pytest.raises(ParseError) as info:
        parse_semigroup_file("degree: 3\n(1,1)\n")
    assert info.value.line == 2
    with pytest.raises(ParseError):
        parse_semigroup_file("(1,1)\n")
    with pytest.raises(ParseError):
        parse_semigroup_file("# лише коментар\n")


def test_serialize_semigroup_reads_back():
    B = candidate_b(3)
    degree, items = parse_semigroup_file(serialize_semigroup(B, comment="B"))
    assert degree == 3 and items == list(B)


def test_parse_dfa_text(a_sigma_star_b):
    A = parse_dfa_text(A_SIGMA_STAR_B_TEXT)
    assert A.state_count == 4
    assert A.finals == {3}
    # нумерація у файлі: 2 = x, 3 = мертвий, 4 = y
    assert A == a_sigma_star_b


def test_parse_dfa_text_errors():
    missing = "states: 2\nalphabet: a\nstart: 1\nfinal:\n1 a 2\n"
    with pytest.raises(ParseError):
        parse_dfa_text(missing)
    duplicate = "states: 1\nalphabet: a\nstart: 1\nfinal: 1\n1 a 1\n1 a 1\n"
    with pytest.raises(ParseError) as info:
        parse_dfa_text(duplicate)
    assert info.value.line == 6
    unknown = "states: 1\nalphabet: a\nstart: 1\nfinal: 1\n1 b 1\n"
    with pytest.raises(ParseError):
        parse_dfa_text(unknown)
    bad_header = "states: 1\nsymbols: a\nstart: 1\nfinal: 1\n1 a 1\n"
    with pytest.raises(ParseError) as info:
        parse_dfa_text(bad_header)
    assert info.value.line == 2
    with pytest.raises(ParseError):
        parse_dfa_text("states: 1\nalphabet: a\n")


@pytest.mark.parametrize(
    "text, line",
    [
        ("states: ²\nalphabet: a\nstart: 1\nfinal: 1\n1 a 1\n", 1),
        ("states: 1\nalphabet: a\nstart: ¹\nfinal: 1\n1 a 1\n", 3),
        ("states: 1\nalphabet: a\nstart: 1\nfinal: 1\n1 a ¹\n", 5),
    ],
)
def test_parse_dfa_text_rejects_non_ascii_digits(text, line):
    with pytest.raises(ParseError) as info:
        parse_dfa_text(text)
    assert info.value.line == line


def test_semigroup_file_rejects_non_ascii_degree():
    with pytest.raises(ParseError) as info:
        parse_semigroup_file("degree: ³\n(1,1,1)\n")
    assert info.value.line == 1


def test_parse_dfa_text_complete():
    partial = "states: 2\nalphabet: a b\nstart: 1\nfinal: 2\n1 a 2\n"
    A = parse_dfa_text(partial, complete=True)
    assert A.state_count == 3
    assert A.delta[0] == (1, 2)
    assert A.delta[1] == (2, 2)
    assert A.delta[2] == (2, 2)


def test_serialize_dfa_reads_back(a_sigma_star_b):
    assert parse_dfa_text(serialize_dfa(a_sigma_star_b, comment="aΣ*b")) == a_sigma_star_b


def test_empty_final_line():
    text = serialize_dfa(Dfa(state_count=2, alphabet=("a",), delta=((1,), (0,))))
    assert "final:\n" in text
    assert parse_dfa_text(text).finals == frozenset()


def test_json_mirror(a_sigma_star_b):
    doc = DfaDocument.from_dfa(a_sigma_star_b)
    text = doc.model_dump_json()
    assert load_dfa(text) == a_sigma_star_b
    assert load_dfa(text, json_input=True) == a_sigma_star_b


def test_json_mirror_errors():
    with pytest.raises(ParseError):
        load_dfa('{"states": 1, "alphabet": ["a"], "start": 1}')
    bad_symbol = '{"states": 1, "alphabet": ["a"], "start": 1, "final": [], "transitions": [[1, "b", 1]]}'
    with pytest.raises(ParseError) as info:
        load_dfa(bad_symbol)
    assert info.value.position == 1
