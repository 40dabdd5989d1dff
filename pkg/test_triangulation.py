import pytest

from shardlab.engine.cambrian_nc import cambrian_congruence
from shardlab.engine.congruence import Congruence, generate_congruence
from shardlab.engine.errors import NoUniqueMinimalVertex
from shardlab.engine.triangulation import (FanFace, FanFacePoset, PulledTriangulation, check_delta,
                                           check_quotient_delta, coxeter_fan_faces, coxeter_triangulation, delta_map,
                                           fan_faces_by_facets, gamma_map, geometric_fan_counts,
                                           geometric_quotient_counts, pulling_triangulation, quotient_fan,
                                           quotient_fan_interval_failures, quotient_triangulation,
                                           shelling_interval_partition, star_property_failures, subcomplex_probe)


@pytest.mark.parametrize("name, counts", [("a1", [2, 1]), ("a2", [6, 6, 1]), ("a3", [24, 36, 14, 1]),
                                          ("b2", [8, 8, 1]), ("a1xa1", [4, 4, 1])])
def test_coxeter_fan_face_counts(name, counts, request):
    built = request.getfixturevalue(name)
    fan = coxeter_fan_faces(built.weak)
    assert fan.counts_by_dim() == counts
    assert set(fan.cells()) == fan_faces_by_facets(built.weak)


def test_fan_counts_from_exact_geometry(a2):
    assert geometric_fan_counts(a2.weak) == [6, 6, 1]


def test_shelling_intervals_partition_the_faces(a3):
    report = shelling_interval_partition(a3.weak)
    assert report["faces"] == 75
    assert report["partition"]


@pytest.mark.parametrize("name, maximal", [("a1", 1), ("a2", 4), ("a3", 34), ("b2", 6), ("i25", 8)])
def test_pulled_triangulation_counts_maximal_chains(name, maximal, request):
    built = request.getfixturevalue(name)
    triangulation = coxeter_triangulation(built.weak)
    assert triangulation.maximal_count() == maximal
    assert triangulation.f_vector == built.order.poset.order_complex_f_vector()


@pytest.mark.parametrize("name", ["a2", "a3", "b2"])
def test_delta_is_a_dimension_preserving_bijection(name, request):
    built = request.getfixturevalue(name)
    report = check_delta(built.order, coxeter_triangulation(built.weak))
    assert report.passed, report.failures
    assert report.chains == report.simplices


def test_delta_of_a_maximal_chain(a2):
    chain = [a2.weak.bottom, a2.element("s1"), a2.weak.top]
    simplex = delta_map(a2.order, chain)
    assert len(simplex) == 3
    assert a2.weak.top in simplex
    assert gamma_map(a2.order, simplex) == frozenset(chain)


def test_pulling_needs_a_unique_first_vertex():
    with pytest.raises(NoUniqueMinimalVertex):
        pulling_triangulation({frozenset({1, 2}): 1, frozenset({1}): 0, frozenset({2}): 0}, lambda u, v: False)


def test_pulling_a_square():
    square = {frozenset({0, 1, 2, 3}): 2}
    square.update({frozenset(e): 1 for e in ({0, 1}, {1, 2}, {2, 3}, {0, 3})})
    square.update({frozenset({v}): 0 for v in range(4)})
    triangulation = pulling_triangulation(square, lambda u, v: u < v)
    assert triangulation.simplices == {frozenset({0, 1, 2}), frozenset({0, 2, 3})}
    assert triangulation.f_vector == [4, 5, 2]


@pytest.mark.parametrize("name, order, counts, maximal", [
    ("a2", (0, 1), [5, 5, 1], 3),
    ("a3", (0, 1, 2), [14, 21, 9, 1], 16),
    ("b2", (0, 1), [6, 6, 1], 4),
])
def test_cambrian_quotient_fan(name, order, counts, maximal, request):
    built = request.getfixturevalue(name)
    congruence = cambrian_congruence(built.shards, order).congruence
    qfan = quotient_fan(congruence)
    assert qfan.counts_by_dim() == counts
    assert not quotient_fan_interval_failures(congruence, qfan)
    assert not star_property_failures(qfan)
    triangulation = quotient_triangulation(congruence, qfan)
    assert triangulation.maximal_count() == maximal
    assert check_quotient_delta(built.order, congruence, triangulation).passed


def test_quotient_delta_walks_back_through_gamma(a2):
    congruence = cambrian_congruence(a2.shards, (0, 1)).congruence
    triangulation = quotient_triangulation(congruence)
    assert check_quotient_delta(a2.order, congruence, triangulation).round_trip
    without_lifts = check_quotient_delta(a2.order, congruence, triangulation, full=PulledTriangulation(set()))
    assert without_lifts.bijective
    assert not without_lifts.round_trip
    assert not without_lifts.passed
    assert without_lifts.failures


def test_quotient_delta_rejects_a_wrong_triangulation(a2):
    congruence = cambrian_congruence(a2.shards, (0, 1)).congruence
    wrong = PulledTriangulation({frozenset(congruence.bottoms)})
    report = check_quotient_delta(a2.order, congruence, wrong)
    assert not report.bijective
    assert not report.passed


def _rank_two_fan(ridges):
    faces = [FanFace(frozenset({i}), 2) for i in range(4)]
    faces += [FanFace(frozenset(r), 1) for r in ridges]
    faces.append(FanFace(frozenset(range(4)), 0, 0b11))
    return FanFacePoset(2, faces)


def test_star_must_be_a_cycle_of_cones():
    assert star_property_failures(_rank_two_fan([{0, 1}, {1, 2}, {2, 3}, {0, 3}])) == []
    tangled = _rank_two_fan([{0, 1}, {0, 2}, {0, 3}, {1, 2}])
    assert star_property_failures(tangled) == [frozenset(range(4))]


def test_cambrian_subcomplex_in_the_s4_triangulation(a3):
    full = coxeter_triangulation(a3.weak)
    identity = Congruence(a3.shards, [])
    result = subcomplex_probe(full, quotient_triangulation(identity), identity)
    assert result.subcomplex and result.induced

    ji = a3.shards.cover_shard[(a3.element("2143"), a3.element("2413"))]
    assert ji == a3.element("2413")
    single = generate_congruence(a3.shards, [ji])
    assert single.congruent(a3.element("2143"), a3.element("2413"))
    result = subcomplex_probe(full, quotient_triangulation(single), single)
    assert not result.subcomplex
    assert not result.induced


def test_quotient_fan_from_exact_geometry(a2):
    congruence = cambrian_congruence(a2.shards, (0, 1)).congruence
    assert geometric_quotient_counts(congruence) == [5, 5, 1]


def test_triangulation_rows(a2):
    row = coxeter_triangulation(a2.weak).to_dict(a2.weak.label)
    assert row["f_vector"] == [6, 9, 4]
    assert len(row["simplices"]) == 4
