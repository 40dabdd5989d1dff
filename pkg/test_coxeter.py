import pytest

from shardlab.engine.coxeter import CoxeterType, build_group, parse_word
from shardlab.engine.errors import UnsupportedType


@pytest.mark.parametrize("name, size, reflections", [
    ("A1", 2, 1),
    ("A2", 6, 3),
    ("A3", 24, 6),
    ("B2", 8, 4),
    ("B3", 48, 9),
    ("I2(5)", 10, 5),
    ("A1xA1", 4, 2),
    ("H3", 120, 15),
])
def test_group_sizes(name, size, reflections):
    group = build_group(name)
    assert group.size == size
    assert group.hyperplane_count == reflections
    assert group.length(group.longest) == reflections


@pytest.mark.parametrize("text", ["", "A0", "E6", "I2(1)", "D3", "H5", "I2"])
def test_unsupported_types(text):
    with pytest.raises(UnsupportedType):
        CoxeterType.parse(text)


def test_type_strings_round_trip():
    assert str(CoxeterType.parse("I2(5)")) == "I2(5)"
    assert str(CoxeterType.parse("A1xA1")) == "A1xA1"
    assert str(CoxeterType.parse("C3")) == "B3"
    assert CoxeterType.parse("A1xA2").rank == 3
    assert not CoxeterType.parse("A1xA1").is_irreducible


def test_one_line_notation(a3):
    group = a3.group
    w = group.element_from_word([0, 1])
    assert group.label(w) == "2314"
    assert group.parse_element("2314") == w
    assert group.parse_element("s1,s2") == w
    assert group.label(group.longest) == "4321"
    assert group.descents(group.parse_element("3124")) == {0}


def test_inverse_and_multiply(b3):
    group = b3.group
    for w in range(group.size):
        assert group.multiply(w, group.inverse(w)) == group.identity
        assert group.length(group.inverse(w)) == group.length(w)


def test_coxeter_element_has_full_reflection_length(a3):
    group = a3.group
    c = group.coxeter_element([0, 1, 2])
    assert group.length(c) == 3
    assert group.absolute_lengths_bfs[c] == 3
    with pytest.raises(ValueError):
        group.coxeter_element([0, 0, 1])


def test_reflection_length_by_search_matches_fixed_space(a3):
    group = a3.group
    assert all(group.absolute_lengths_bfs[w] == group.absolute_length(w) for w in range(group.size))


def test_fix_mask_of_reflections(b2):
    group = b2.group
    assert group.fix_mask(group.identity) == 0
    for t in group.reflections():
        assert group.fix_mask(t.element) == 1 << t.root_index


def test_flat_closure_of_simple_hyperplanes(a2):
    group = a2.group
    assert group.flat_closure(0b011) == 0b111
    assert group.flat_rank(0b111) == 2


def test_parse_word():
    assert parse_word("s2,s1") == [1, 0]
    assert parse_word("2, 1, 3") == [1, 0, 2]
    with pytest.raises(ValueError):
        parse_word("s0")
    with pytest.raises(ValueError):
        parse_word("x1")


def test_non_crystallographic_dihedral_without_geometry():
    group = build_group("I2(7)")
    assert group.size == 14
    assert not group.roots.is_geometric
    with pytest.raises(UnsupportedType):
        group.arrangement


def test_standard_parabolic_subgroups(a3):
    group = a3.group
    assert len(group.standard_parabolic([])) == 1
    assert len(group.standard_parabolic([0, 1])) == 6
    assert len(group.standard_parabolic([0, 2])) == 4
    assert len(group.standard_parabolic([0, 1, 2])) == 24


def test_cover_reflections(a3):
    group = a3.group
    s1 = group.parse_element("s1")
    assert [t.root_index for t in group.cover_reflections(s1)] == [0]
    assert group.cover_reflections(s1)[0].element == s1
    assert len(group.cover_reflections(group.longest)) == 3
    assert group.cover_reflections(group.identity) == []


def test_fixed_spaces(a3):
    group = a3.group
    assert group.fixed_space(group.identity).dim == 3
    assert group.fixed_space(group.parse_element("s1")).dim == 2
    assert group.fixed_space(group.coxeter_element([0, 1, 2])).dim == 0
