import pytest

from shardlab.engine.shards import Shards
from shardlab.engine.weakorder import WeakOrder
from shardlab.engine.exactgeom import ingest_arrangement


@pytest.mark.parametrize("name, count", [("a1", 1), ("a2", 4), ("a3", 11), ("b2", 6), ("i25", 8), ("a1xa1", 2)])
def test_shard_counts(request, name, count):
    assert len(request.getfixturevalue(name).shards) == count


def test_basic_hyperplanes_are_not_cut(a3, b3):
    for built in (a3, b3):
        for b in built.group.basic_hyperplanes:
            assert built.shards.count_per_hyperplane(b) == 1


def test_shards_per_hyperplane_in_a3(a3):
    counts = sorted(a3.shards.count_per_hyperplane(h) for h in range(a3.group.hyperplane_count))
    assert counts == [1, 1, 1, 2, 2, 4]


def test_sign_vectors_recover_the_shards(a3, b3):
    for built in (a3, b3):
        assert built.shards.sign_partition() == built.shards.lattice_partition()


def test_exact_sign_vectors_recover_the_shards(a3, i25):
    for built in (a3, i25):
        arrangement = built.group.arrangement
        assert built.shards.sign_partition(arrangement) == built.shards.lattice_partition()


def test_shards_of_an_ingested_arrangement():
    arrangement = ingest_arrangement([(1, -1, 0), (0, 1, -1), (1, 0, -1)], [3, 2, 1])
    shards = Shards(WeakOrder(arrangement))
    assert len(shards) == 4
    assert shards.sign_partition(arrangement) == shards.lattice_partition()


def test_shard_cones_have_codimension_one(a3):
    arrangement = a3.group.arrangement
    for ji in a3.shards.ids:
        assert a3.shards.shard_cone(ji, arrangement).codim == 1


def test_antipodal_shards(b3):
    for ji in b3.shards.ids:
        other = b3.shards.antipodal_shard(ji)
        assert other is not None
        assert b3.shards.antipodal_shard(other) == ji


def test_depth_and_parabolic_cutting(a3, b3, i25):
    for built in (a3, b3, i25):
        assert built.shards.depth_lemma_failures() == []
        assert built.shards.parabolic_cutting_failures() == []


def test_shard_digraph_is_acyclic(a3, b3):
    assert a3.shards.digraph.acyclic
    assert b3.shards.digraph.acyclic
    assert len(a3.shards.digraph.arrows) > 0


def test_forced_shards_include_sources(a3):
    digraph = a3.shards.digraph
    source = a3.element("1243")
    assert source in digraph.forced([source])


def test_shard_rows(a3):
    row = a3.shards.shards[a3.element("3124")].to_dict(a3.weak)
    assert row["ji"] == "3124"
    assert row["covers"] >= 1


def test_shard_of_a_cover_on_a_basic_hyperplane(a2):
    s1 = a2.element("s1")
    shard = a2.shards.shard_of_cover(a2.weak.bottom, s1)
    assert shard.ji == s1
    assert a2.shards.shard_sign_vector(a2.weak.bottom, s1) == (0, ())
    assert a2.shards.upper_regions(s1) == {s1, a2.weak.top}


def test_cut_hyperplane_has_two_shards_with_opposite_signs(a2):
    first = a2.shards.shard_sign_vector(a2.element("s1"), a2.element("s1s2"))
    second = a2.shards.shard_sign_vector(a2.element("s2"), a2.element("s2s1"))
    assert first[0] == second[0]
    assert dict(first[1]) == {0: "-", 1: "+"}
    assert dict(second[1]) == {0: "+", 1: "-"}
    assert a2.shards.upper_regions(a2.element("s1s2")) == {a2.element("s1s2")}
