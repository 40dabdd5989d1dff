import pytest

from shardlab.engine.weakorder import SubSystem, WeakOrder, popcount


def labels(built, elements):
    return {built.weak.label(x) for x in elements}


def test_weak_order_is_a_lattice(a3, i25):
    assert a3.weak.check_lattice_axioms() == []
    assert i25.weak.check_lattice_axioms() == []
    assert a3.weak.poset().is_lattice()


def test_bottom_and_top(a3):
    weak = a3.weak
    assert weak.label(weak.bottom) == "1234"
    assert weak.label(weak.top) == "4321"
    assert weak.rank(weak.top) == 6


@pytest.mark.parametrize("name, count", [("a2", 4), ("a3", 11), ("b2", 6), ("i25", 8), ("a1xa1", 2)])
def test_join_irreducible_counts(request, name, count):
    built = request.getfixturevalue(name)
    assert len(built.weak.join_irreducibles) == count


def test_canonical_join_representation(a3):
    w = a3.element("4312")
    joinands = [j.element for j in a3.weak.canonical_join_rep(w)]
    assert labels(a3, joinands) == {"3124", "1243"}
    assert a3.weak.join_all(joinands) == w


def test_canonical_joinands_match_descents(b3):
    weak = b3.weak
    for w in range(weak.size):
        assert len(weak.canonical_join_rep(w)) == len(weak.lower[w]) == len(b3.group.descents(w))


def test_meet_and_join_of_atoms(a2):
    weak = a2.weak
    s1, s2 = a2.group.element_from_word([0]), a2.group.element_from_word([1])
    assert weak.join(s1, s2) == weak.top
    assert weak.meet(s1, s2) == weak.bottom


def test_minimal_with_requires_a_separating_hyperplane(a2):
    weak = a2.weak
    s1 = a2.group.element_from_word([0])
    assert weak.minimal_with(s1, 0) == s1
    with pytest.raises(ValueError):
        weak.minimal_with(s1, 1)


def test_lower_facial_interval(a3):
    weak = a3.weak
    interval = weak.lower_facial_interval(weak.top)
    assert interval.size == 24
    assert interval.bottom == weak.bottom
    w = a3.element("3124")
    assert weak.L(w) == a3.element("1324")
    assert popcount(weak.lower_facial_interval(w).flat) == 1


def test_subsystem_of_a_rank_two_face(a3):
    weak = a3.weak
    w = a3.element("1432")
    system = SubSystem(weak, weak.lower_facial_interval(w))
    local = WeakOrder(system)
    assert local.size == 6
    assert len(system.basic_hyperplanes) == 2
    assert system.parent_elements[local.top] == w
