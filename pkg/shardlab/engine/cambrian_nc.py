"""
Cambrian congruences, sortable elements and noncrossing partition lattices.

The map from sortable elements to the noncrossing partition lattice sends w to
the unique element of [1, c]_T whose fixed space is the intersection of the
hyperplanes of the cover reflections of w. Fixed spaces are carried as masks of
the reflecting hyperplanes that contain them.
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import prod
from typing import Dict, List, Optional, Sequence, Set, Tuple

from shardlab.engine.congruence import Congruence, QuotientShardOrder, generate_congruence
from shardlab.engine.coxeter import CoxeterGroup, CoxeterType
from shardlab.engine.errors import NonUnique, NoPreimage, NotBipartite, UnsupportedType
from shardlab.engine.exactgeom import Cone
from shardlab.engine.poset import PosetView
from shardlab.engine.shardorder import ShardOrder
from shardlab.engine.shards import Shards

logger = logging.getLogger(__name__)

S4_SORTABLE_FORBIDDEN = ((3, 1, 2), (4, 1, 2), (3, 4, 2), (3, 4, 1))


def _degrees(factor: Tuple[str, int]) -> List[int]:
    family, n = factor
    if family == "A":
        return list(range(2, n + 2))
    if family == "B":
        return list(range(2, 2 * n + 1, 2))
    if family == "D":
        return list(range(2, 2 * n - 1, 2)) + [n]
    if family == "I2":
        return [2, n]
    return {("F", 4): [2, 6, 8, 12], ("G", 2): [2, 6], ("H", 3): [2, 6, 10], ("H", 4): [2, 12, 20, 30]}[factor]


def coxeter_catalan(ctype: CoxeterType) -> int:
    """Product over factors of prod (h + d_i) / d_i, h the Coxeter number."""
    total = 1
    for factor in ctype.factors:
        degrees = _degrees(factor)
        h = max(degrees)
        total *= prod(h + d for d in degrees) // prod(degrees)
    return total


def _require_coxeter(shards: Shards) -> CoxeterGroup:
    group = shards.weak.system
    if not isinstance(group, CoxeterGroup):
        raise UnsupportedType("Cambrian congruences need a Coxeter group")
    return group


def cambrian_generators(coxeter_matrix: Sequence[Sequence[int]], order: Sequence[int]) -> List[List[int]]:
    """
    Words of the contracted join-irreducibles.

    For s_i before s_j in the order: the alternating words s_j s_i s_j ... of
    length 2 through m(i, j) - 1.
    """
    words = []
    for a, b in combinations(range(len(order)), 2):
        i, j = order[a], order[b]
        m = coxeter_matrix[i][j]
        for length in range(2, m):
            words.append([(j, i)[k % 2] for k in range(length)])
    return words


@dataclass
class CambrianData:
    order: Tuple[int, ...]
    c: int
    generators: List[int]
    congruence: Congruence
    sortables: List[int] = field(default_factory=list)

    def to_dict(self) -> Dict:
        weak = self.congruence.weak
        return {
            "coxeter_element": ",".join(f"s{s + 1}" for s in self.order),
            "generators": [weak.label(j) for j in self.generators],
            "removed_shards": len(self.congruence.removed),
            "sortables": len(self.sortables),
        }


def cambrian_congruence(shards: Shards, order: Sequence[int]) -> CambrianData:
    group = _require_coxeter(shards)
    c = group.coxeter_element(order)
    generators = [group.element_from_word(word) for word in cambrian_generators(group.roots.coxeter_matrix, order)]
    congruence = generate_congruence(shards, generators)
    logger.info(f"Cambrian congruence for c={group.label(c)}: {len(congruence)} sortable elements")
    return CambrianData(tuple(order), c, generators, congruence, list(congruence.bottoms))


def one_shard_per_hyperplane_failures(data: CambrianData) -> List[int]:
    """Hyperplanes not carrying exactly one kept shard."""
    shards = data.congruence.shards
    kept: Dict[int, int] = {}
    for ji, shard in shards.shards.items():
        if ji not in data.congruence.removed:
            kept[shard.hyperplane] = kept.get(shard.hyperplane, 0) + 1
    return [h for h in range(shards.weak.hyperplane_count) if kept.get(h, 0) != 1]


def _contains_subsequence(perm: Sequence[int], pattern: Sequence[int]) -> bool:
    it = iter(perm)
    return all(any(x == p for x in it) for p in pattern)


def sortable_pattern_check(data: CambrianData) -> bool:
    """In S4 with c = s1 s3 s2, sortables are the permutations with none of 312, 412, 342, 341 as a subsequence."""
    group = _require_coxeter(data.congruence.shards)
    if str(group.ctype) != "A3" or tuple(data.order) not in ((0, 2, 1), (2, 0, 1)):
        raise UnsupportedType("the pattern description covers S4 with c = s1 s3 s2 only")
    by_pattern = {w for w in range(group.size)
                  if not any(_contains_subsequence(group.one_line(w), p) for p in S4_SORTABLE_FORBIDDEN)}
    return by_pattern == set(data.sortables)


class NCLattice:
    """[1, c]_T in the absolute order."""

    def __init__(self, group: CoxeterGroup, c: int):
        self.group = group
        self.c = c
        lengths = group.absolute_lengths_bfs
        self.lengths = lengths
        top = lengths[c]
        self.elements = [u for u in range(group.size)
                         if lengths[u] + lengths[group.multiply(group.inverse(u), c)] == top]
        self.fix: Dict[int, int] = {u: group.fix_mask(u) for u in self.elements}
        self._by_fix: Dict[int, List[int]] = {}
        for u, mask in self.fix.items():
            self._by_fix.setdefault(mask, []).append(u)
        logger.info(f"NC lattice for c={group.label(c)}: {len(self.elements)} elements")

    def __repr__(self) -> str:
        return f"NCLattice(size={len(self.elements)})"

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, u: int) -> bool:
        return u in self.fix

    def rank(self, u: int) -> int:
        return self.lengths[u]

    def leq(self, u: int, v: int) -> bool:
        g = self.group
        return self.lengths[u] + self.lengths[g.multiply(g.inverse(u), v)] == self.lengths[v]

    @cached_property
    def poset(self) -> PosetView:
        return PosetView.from_relation(self.elements, self.leq)

    def rank_sizes(self) -> List[int]:
        sizes = [0] * (self.lengths[self.c] + 1)
        for u in self.elements:
            sizes[self.lengths[u]] += 1
        return sizes

    def kreweras(self, u: int) -> int:
        return self.group.multiply(self.group.inverse(u), self.c)

    def by_fix(self, mask: int) -> List[int]:
        return self._by_fix.get(mask, [])

    def fix_is_injective(self) -> bool:
        return len(self._by_fix) == len(self.elements)

    def is_self_dual(self) -> bool:
        """u -> u^-1 c is a bijection of [1, c]_T reversing the order."""
        image = {u: self.kreweras(u) for u in self.elements}
        if set(image.values()) != set(self.elements):
            return False
        return all(self.leq(u, v) == self.leq(image[v], image[u]) for u in self.elements for v in self.elements)

    def absolute_length_failures(self) -> List[int]:
        """Elements where reflection length by search differs from the codimension of the fixed space."""
        g = self.group
        if not g.roots.is_geometric:
            return []
        return [u for u in range(g.size) if g.absolute_length(u) != self.lengths[u]]

    def fix_mask_failures(self) -> List[int]:
        """Elements whose reflections below them in absolute order differ from the hyperplanes containing Fix(u)."""
        g = self.group
        if not g.roots.is_geometric:
            return []
        return [u for u in self.elements if g.fix_mask_geometric(u) != self.fix[u]]

    def to_rows(self) -> List[Dict]:
        g = self.group
        return [{"element": g.label(u), "rank": self.rank(u),
                 "reflections": sorted(g.root_label(t) for t in range(g.roots.count) if self.fix[u] >> t & 1)}
                for u in self.elements]


def build_nc(group: CoxeterGroup, order: Sequence[int]) -> NCLattice:
    return NCLattice(group, group.coxeter_element(order))


def nc_map(group: CoxeterGroup, nc: NCLattice, w: int) -> int:
    """The element of [1, c]_T fixing exactly the intersection of the cover reflection hyperplanes of w."""
    mask = 0
    for t in group.cover_reflections(w):
        mask |= 1 << t.root_index
    target = group.flat_closure(mask) if mask else 0
    found = nc.by_fix(target)
    if not found:
        raise NoPreimage(f"no noncrossing partition fixes the cover hyperplanes of {group.label(w)}")
    if len(found) > 1:
        raise NonUnique(f"{len(found)} noncrossing partitions match {group.label(w)}")
    return found[0]


@dataclass
class IsomorphismReport:
    bijection: bool
    failures: Dict[str, List[str]]

    @property
    def passed(self) -> bool:
        return self.bijection and not any(self.failures.values())


def verify_isomorphism(data: CambrianData, nc: NCLattice, order: ShardOrder) -> IsomorphismReport:
    group = nc.group
    weak = order.weak
    failures: Dict[str, List[str]] = {"map": [], "order": [], "rank": [], "sublattice": [],
                                      "meet_sublattice": [], "inverse_monotone": []}
    image: Dict[int, int] = {}
    for w in data.sortables:
        try:
            image[w] = nc_map(group, nc, w)
        except (NoPreimage, NonUnique) as e:
            failures["map"].append(str(e))
    bijection = (len(image) == len(data.sortables) and len(set(image.values())) == len(image)
                 and set(image.values()) == set(nc.elements))
    if not bijection:
        logger.warning(f"nc map is not a bijection: {len(image)} images onto {len(nc)} noncrossing partitions")
    for u in image:
        if nc.rank(image[u]) != order.rank(u):
            failures["rank"].append(group.label(u))
        for v in image:
            if order.preceq(u, v) != nc.leq(image[u], image[v]):
                failures["order"].append(f"{group.label(u)}, {group.label(v)}")
    quotient = QuotientShardOrder(data.congruence, order)
    if not quotient.is_sublattice():
        failures["sublattice"].append("bottoms are not closed under meet and join")
    fix_values = set(nc.fix.values())
    for x, y in combinations(nc.elements, 2):
        meet = nc.fix[x] & nc.fix[y]
        if meet not in fix_values:
            failures["meet_sublattice"].append(f"{group.label(x)}, {group.label(y)}")
    preimage = {v: k for k, v in image.items()}
    for x in nc.elements:
        for y in nc.elements:
            if x in preimage and y in preimage and nc.leq(x, y) and not weak.leq(preimage[x], preimage[y]):
                failures["inverse_monotone"].append(f"{group.label(x)} <= {group.label(y)}")
    return IsomorphismReport(bijection, failures)


def nc_mobius(nc: NCLattice) -> Tuple[int, int]:
    """(recursion on [1, c]_T, signed count of elements with full support)."""
    group = nc.group
    direct = nc.poset.mobius(group.identity, nc.c)
    full = set(range(group.rank))
    count = sum(1 for u in nc.elements if group.support(u) == full)
    formula = (-1) ** group.rank * count
    if direct != formula:
        logger.warning(f"NC Moebius mismatch: recursion {direct}, support count {formula}")
    return direct, formula


# Bipartite Coxeter elements

def commutation_class(group: CoxeterGroup, word: Sequence[int]) -> Set[Tuple[int, ...]]:
    m = group.roots.coxeter_matrix
    seen = {tuple(word)}
    frontier = [tuple(word)]
    while frontier:
        nxt = []
        for w in frontier:
            for k in range(len(w) - 1):
                if m[w[k]][w[k + 1]] == 2:
                    v = w[:k] + (w[k + 1], w[k]) + w[k + 2:]
                    if v not in seen:
                        seen.add(v)
                        nxt.append(v)
        frontier = nxt
    return seen


def initial_final(group: CoxeterGroup, order: Sequence[int]) -> Tuple[Set[int], Set[int]]:
    """Generators that start some reduced word of c, and the remaining ones that end one."""
    words = commutation_class(group, order)
    initial = {w[0] for w in words}
    final = {w[-1] for w in words} - initial
    return initial, final


def is_bipartite(group: CoxeterGroup, order: Sequence[int]) -> bool:
    initial, final = initial_final(group, order)
    return len(initial | final) == group.rank


@dataclass
class BipartiteRestriction:
    cones: Dict[int, Cone]
    distinct: int
    isomorphic: bool
    mapping: Optional[Dict[int, int]] = None


def bipartite_cone_restriction(data: CambrianData, order: ShardOrder) -> BipartiteRestriction:
    """Intersect each kept-shard cone with the cone above initial and below final simple hyperplanes."""
    group = _require_coxeter(data.congruence.shards)
    if not is_bipartite(group, data.order):
        raise NotBipartite(f"c = {group.label(data.c)} is not bipartite")
    arrangement = group.arrangement
    initial, final = initial_final(group, data.order)
    sides = [arrangement.side(s, below=False) for s in sorted(initial)]
    sides += [arrangement.side(s, below=True) for s in sorted(final)]
    C = Cone.from_hyperplanes(arrangement.field, arrangement.dim, inequalities=sides)
    cones = {w: order.psi(w).cone.intersect(C) for w in data.sortables}
    keys = {w: cone.key() for w, cone in cones.items()}
    restricted = PosetView.from_relation(data.sortables, lambda u, v: cones[u].contains(cones[v]))
    quotient = QuotientShardOrder(data.congruence, order).poset
    mapping = restricted.isomorphism(quotient)
    logger.info(f"Bipartite restriction: {len(set(keys.values()))} distinct cones")
    return BipartiteRestriction(cones, len(set(keys.values())), mapping is not None, mapping)
