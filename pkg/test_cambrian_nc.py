import pytest

from shardlab.engine.cambrian_nc import (bipartite_cone_restriction, build_nc, cambrian_congruence,
                                         cambrian_generators, coxeter_catalan, initial_final, is_bipartite, nc_map,
                                         nc_mobius, one_shard_per_hyperplane_failures, sortable_pattern_check,
                                         verify_isomorphism)
from shardlab.engine.coxeter import CoxeterType
from shardlab.engine.errors import NotBipartite, UnsupportedType


@pytest.mark.parametrize("name, count", [("A1", 2), ("A2", 5), ("A3", 14), ("B2", 6), ("B3", 20),
                                         ("I2(5)", 7), ("A1xA1", 4)])
def test_coxeter_catalan(name, count):
    assert coxeter_catalan(CoxeterType.parse(name)) == count


def test_cambrian_generators_for_a_linear_order():
    m = [[1, 3, 2], [3, 1, 3], [2, 3, 1]]
    assert cambrian_generators(m, [0, 1, 2]) == [[1, 0], [2, 1]]
    assert cambrian_generators(m, [2, 1, 0]) == [[1, 2], [0, 1]]


@pytest.mark.parametrize("name, order, sortables", [
    ("a2", (0, 1), 5),
    ("a3", (0, 1, 2), 14),
    ("a3", (0, 2, 1), 14),
    ("b2", (0, 1), 6),
    ("b3", (0, 1, 2), 20),
    ("i25", (1, 0), 7),
])
def test_sortable_count_is_the_coxeter_catalan_number(name, order, sortables, request):
    built = request.getfixturevalue(name)
    data = cambrian_congruence(built.shards, order)
    assert len(data.sortables) == sortables
    assert len(data.congruence.removed) == len(built.shards) - built.group.hyperplane_count
    assert not one_shard_per_hyperplane_failures(data)


def test_sortables_avoid_patterns(a3):
    assert sortable_pattern_check(cambrian_congruence(a3.shards, (0, 2, 1)))
    with pytest.raises(UnsupportedType):
        sortable_pattern_check(cambrian_congruence(a3.shards, (0, 1, 2)))


def test_nc_lattice_of_s4(a3):
    nc = build_nc(a3.group, (0, 1, 2))
    assert len(nc) == 14
    assert nc.rank_sizes() == [1, 6, 6, 1]
    assert nc.poset.is_lattice()
    assert nc.poset.is_graded()
    assert nc.is_self_dual()
    assert nc.fix_is_injective()
    assert not nc.absolute_length_failures()


def test_fix_masks_agree_with_exact_fixed_spaces(b3):
    nc = build_nc(b3.group, (0, 1, 2))
    assert nc.fix_mask_failures() == []
    group = b3.group
    for w in range(group.size):
        assert group.fix_mask_geometric(w) == group.fix_mask(w)


def test_nc_lattice_of_s3(a2):
    nc = build_nc(a2.group, (0, 1))
    assert len(nc) == 5
    assert a2.group.identity in nc
    assert nc.c in nc


@pytest.mark.parametrize("name, order, value", [("a1", (0,), -1), ("a2", (0, 1), 2), ("a3", (0, 1, 2), -5),
                                                ("b2", (0, 1), 3)])
def test_nc_mobius_two_ways(name, order, value, request):
    built = request.getfixturevalue(name)
    assert nc_mobius(build_nc(built.group, order)) == (value, value)


def test_nc_map_of_identity(a3):
    nc = build_nc(a3.group, (0, 1, 2))
    assert nc_map(a3.group, nc, a3.group.identity) == a3.group.identity


@pytest.mark.parametrize("name, order", [("a2", (1, 0)), ("a3", (0, 1, 2)), ("a3", (1, 0, 2)), ("b2", (0, 1)),
                                         ("i25", (0, 1))])
def test_sortables_under_shard_order_match_noncrossing_partitions(name, order, request):
    built = request.getfixturevalue(name)
    data = cambrian_congruence(built.shards, order)
    report = verify_isomorphism(data, build_nc(built.group, order), built.order)
    assert report.bijection
    assert report.passed, report.failures


@pytest.mark.parametrize("order", [(0, 1), (1, 0)])
def test_dihedral_sortables_match_noncrossing_partitions(dihedral, order):
    m = dihedral.group.hyperplane_count
    data = cambrian_congruence(dihedral.shards, order)
    nc = build_nc(dihedral.group, order)
    assert len(data.sortables) == len(nc) == m + 2
    report = verify_isomorphism(data, nc, dihedral.order)
    assert report.bijection
    assert report.passed, report.failures


def test_bipartite_coxeter_elements(a3):
    assert is_bipartite(a3.group, (0, 2, 1))
    assert initial_final(a3.group, (0, 2, 1)) == ({0, 2}, {1})
    assert not is_bipartite(a3.group, (0, 1, 2))


def test_bipartite_cone_restriction(a3):
    restriction = bipartite_cone_restriction(cambrian_congruence(a3.shards, (0, 2, 1)), a3.order)
    assert restriction.isomorphic
    with pytest.raises(NotBipartite):
        bipartite_cone_restriction(cambrian_congruence(a3.shards, (0, 1, 2)), a3.order)


def test_cambrian_rows(a2):
    row = cambrian_congruence(a2.shards, (0, 1)).to_dict()
    assert row["coxeter_element"] == "s1,s2"
    assert row["removed_shards"] == 1
    assert row["sortables"] == 5
