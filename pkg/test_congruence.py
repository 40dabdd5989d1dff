import pytest

from shardlab.engine.congruence import (Congruence, QuotientShardOrder, closure_agreement, congruence_degree,
                                        cover_lemma_failures, degree2_check, generate_congruence,
                                        parabolic_congruence, parabolic_homomorphism_failures, quotient_lattice,
                                        quotient_mobius, sample_congruences)


@pytest.mark.parametrize("K, classes", [([], 1), ([0], 2), ([0, 1], 6), ([0, 2], 4), ([0, 1, 2], 24)])
def test_parabolic_congruence_classes(a3, K, classes):
    congruence = parabolic_congruence(a3.shards, K)
    assert len(congruence) == classes
    assert not congruence.interval_failures()


def test_parabolic_congruence_rejects_non_basic(a3):
    with pytest.raises(ValueError):
        parabolic_congruence(a3.shards, [5])


def test_identity_congruence(a3):
    congruence = Congruence(a3.shards, [])
    assert congruence.is_identity
    assert len(congruence) == a3.group.size
    assert all(congruence.is_bottom(x) for x in range(a3.group.size))


def test_single_generator_congruences_are_well_formed(a3):
    for j in a3.weak.join_irreducibles:
        congruence = generate_congruence(a3.shards, [j.element])
        assert j.element in congruence.removed
        assert not congruence.monotonicity_failures()
        assert not congruence.good_enough_failures()
        assert not congruence.bottom_characterization_failures()
        assert closure_agreement(a3.shards, [j.element])


def test_contracting_an_atom_merges_it_with_the_identity(a2):
    atom = a2.element("s1")
    congruence = generate_congruence(a2.shards, [atom])
    assert len(congruence) == 2
    assert congruence.congruent(a2.weak.bottom, atom)
    assert congruence.pi_down(atom) == a2.weak.bottom
    assert congruence.pi_up(a2.weak.bottom) == a2.element("s1s2")


def test_generate_congruence_rejects_non_join_irreducible(a3):
    with pytest.raises(ValueError):
        generate_congruence(a3.shards, [a3.weak.top])


def test_removing_a_basic_shard_alone_is_not_good_enough(a2):
    removed = Congruence(a2.shards, [a2.element("s1")])
    assert removed.good_enough_failures()
    assert removed.monotonicity_failures()


def test_quotient_lattice_and_cover_lemma(a3):
    congruence = parabolic_congruence(a3.shards, [0, 1])
    quotient = quotient_lattice(congruence)
    assert quotient.is_lattice()
    assert len(quotient.nodes) == 6
    assert not cover_lemma_failures(congruence, quotient)


def test_quotient_cones(a2):
    congruence = generate_congruence(a2.shards, [a2.element("s1")])
    assert not congruence.quotient_cone_failures()


@pytest.mark.parametrize("name", ["a2", "a3", "b2"])
def test_quotient_shard_order_is_restriction_and_join_sublattice(name, request):
    built = request.getfixturevalue(name)
    for congruence in sample_congruences(built.shards)[:12]:
        quotient = QuotientShardOrder(congruence, built.order)
        assert not quotient.restriction_failures()
        assert not quotient.join_sublattice_failures()
        assert quotient.poset.is_lattice()
        assert quotient.is_graded_by_descents()


def test_quotient_mobius_two_ways(a3):
    for K in ([0, 1], [0, 2], [0, 1, 2]):
        direct, formula = quotient_mobius(parabolic_congruence(a3.shards, K), a3.order)
        assert direct == formula


def test_quotient_lower_intervals(a2):
    congruence = generate_congruence(a2.shards, [a2.element("s1s2")])
    assert not QuotientShardOrder(congruence, a2.order).lower_interval_failures()


def test_parabolic_homomorphism(a3):
    for K in ([0], [0, 1], [1, 2], [0, 2]):
        assert not parabolic_homomorphism_failures(a3.shards, K)


@pytest.mark.parametrize("name", ["a2", "a3"])
def test_sublattice_quotients_have_degree_at_most_two(name, request):
    built = request.getfixturevalue(name)
    report = degree2_check(built.order, sample_congruences(built.shards))
    assert report["checked"] > 0
    assert report["sublattices"] > 0
    assert report["counterexamples"] == []


def test_congruence_degree_of_parabolic_generator(a3):
    congruence = generate_congruence(a3.shards, [a3.element("s1")])
    assert congruence_degree(congruence, a3.order) == 1


def test_congruence_rows(a2):
    row = generate_congruence(a2.shards, [a2.element("s1")]).to_dict()
    assert row["generators"] == ["213"]
    assert row["classes"] == 2
