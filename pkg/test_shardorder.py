import pytest

from shardlab.engine.shardorder import ShardOrder


@pytest.mark.parametrize("name, polynomial", [
    ("a1", [1, 1]),
    ("a2", [1, 4, 1]),
    ("a3", [1, 11, 11, 1]),
    ("i25", [1, 8, 1]),
    ("b2", [1, 6, 1]),
])
def test_rank_generating_polynomial(request, name, polynomial):
    built = request.getfixturevalue(name)
    assert built.order.rank_generating_polynomial() == polynomial
    assert built.order.poset.rank_sizes() == polynomial


def test_shard_order_is_a_graded_lattice(a3):
    poset = a3.order.poset
    assert poset.is_lattice()
    assert all(poset.heights[w] == a3.order.rank(w) for w in range(a3.weak.size))
    assert poset.is_atomic()
    assert poset.is_coatomic()


def test_atoms_are_the_join_irreducibles(b3):
    assert sorted(b3.order.poset.atoms) == sorted(b3.order.ji_elements)


def test_shard_order_is_weaker_than_weak_order(a3):
    order, weak = a3.order, a3.weak
    for u in range(weak.size):
        for v in range(weak.size):
            if order.preceq(u, v):
                assert weak.leq(u, v)


def test_label_sets(a3):
    order = a3.order
    assert order.label_set(a3.weak.bottom) == []
    assert len(order.label_set(a3.weak.top)) == 11
    w = a3.element("3124")
    assert [a3.weak.label(j) for j in order.label_set(w)] == ["3124"]


@pytest.mark.parametrize("name, value", [("a1", -1), ("a2", 3), ("a3", -13), ("i25", 7), ("b2", 5), ("a1xa1", 1),
                                         ("a1xa1xa1", -1)])
def test_mobius_two_ways(request, name, value):
    direct, formula = request.getfixturevalue(name).order.mobius_bottom_top()
    assert direct == formula == value


@pytest.mark.parametrize("name, value", [("a1", 1), ("a2", 4), ("a3", 34), ("b2", 6), ("i25", 8), ("a1xa1", 2),
                                         ("a1xa1xa1", 6)])
def test_maximal_chains_two_ways(request, name, value):
    direct, recursion = request.getfixturevalue(name).order.maximal_chain_count()
    assert direct == recursion == value


def test_dihedral_mobius_and_chains(dihedral):
    m = dihedral.group.hyperplane_count
    assert dihedral.order.mobius_bottom_top() == (2 * m - 3, 2 * m - 3)
    assert dihedral.order.maximal_chain_count() == (2 * m - 2, 2 * m - 2)


def test_join_irreducible_degrees(a3):
    assert a3.order.ji_degree(a3.element("3124")) == 2
    assert a3.order.ji_degree(a3.element("2341")) == 3
    assert a3.order.ji_degree(a3.element("2134")) == 1


def test_parabolic_sizes(a3):
    assert a3.order.parabolic_size([]) == 1
    assert a3.order.parabolic_size([0, 1]) == 6
    assert a3.order.parabolic_size([0, 2]) == 4
    assert a3.order.parabolic_size([0, 1, 2]) == 24


def test_lower_intervals_are_shard_orders_of_parabolics(a3):
    for w in range(a3.weak.size):
        assert a3.order.lower_interval(w).is_isomorphism()


def test_translate_round_trip(a3):
    order = a3.order
    w = a3.element("4231")
    for u in range(a3.weak.size):
        if order.preceq(u, w):
            assert order.untranslate(w, order.translate(w, u)) == u


def test_rho_inverts_psi(b3):
    order = b3.order
    for w in range(b3.weak.size):
        assert order.rho(order.label_set(w)) == w


def test_psi_cones_in_i25(i25):
    codims = sorted(i25.order.psi(w).codim for w in range(i25.weak.size))
    assert codims == [0] + [1] * 8 + [2]


def test_psi_containment_matches_the_order(a3):
    cones = {w: a3.order.psi(w).cone for w in range(a3.weak.size)}
    for u in cones:
        for v in cones:
            assert cones[u].contains(cones[v]) == a3.order.preceq(u, v)


def test_psi_without_geometry(a3):
    assert a3.order.psi(a3.weak.top, geometric=False).cone is None


def test_shard_order_of_a_product(a1xa1):
    poset = a1xa1.order.poset
    assert len(poset) == 4
    assert poset.rank_sizes() == [1, 2, 1]


def test_rows(a2):
    rows = a2.order.to_rows()
    assert len(rows) == 6
    assert {row["rank"] for row in rows} == {0, 1, 2}
