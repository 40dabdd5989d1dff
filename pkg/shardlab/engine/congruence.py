"""
Lattice congruences of the weak order.

A congruence is carried by its set of removed shards. Covers whose shard is
removed are contracted, and the classes are the connected components of the
contracted covers.
"""
import logging
from functools import cached_property
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from shardlab.config.settings import settings
from shardlab.engine.errors import CongruenceError
from shardlab.engine.exactgeom import Cone
from shardlab.engine.poset import PosetView
from shardlab.engine.shardorder import ShardOrder
from shardlab.engine.shards import Shards, geometry_of
from shardlab.engine.weakorder import WeakOrder

logger = logging.getLogger(__name__)


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        a, b = self.find(x), self.find(y)
        if a == b:
            return False
        if a > b:
            a, b = b, a
        self.parent[b] = a
        return True


class Congruence:
    """A congruence of the weak order, given by removed shards."""

    def __init__(self, shards: Shards, removed: Iterable[int], generators: Iterable[int] = ()):
        self.shards = shards
        self.weak: WeakOrder = shards.weak
        self.removed: FrozenSet[int] = frozenset(removed)
        self.generators: Tuple[int, ...] = tuple(sorted(generators))
        weak = self.weak
        uf = _UnionFind(weak.size)
        for q, r, _ in weak.covers:
            if self.shards.cover_shard[(q, r)] in self.removed:
                uf.union(q, r)
        grouped: Dict[int, List[int]] = {}
        for x in range(weak.size):
            grouped.setdefault(uf.find(x), []).append(x)
        self.classes: Tuple[Tuple[int, ...], ...] = tuple(sorted(tuple(sorted(c)) for c in grouped.values()))
        self.node_to_class: List[int] = [0] * weak.size
        for i, c in enumerate(self.classes):
            for x in c:
                self.node_to_class[x] = i
        self.class_bottom: List[int] = [weak.meet_all(c) for c in self.classes]
        self.class_top: List[int] = [weak.join_all(c) for c in self.classes]
        failures = self.interval_failures()
        if failures:
            raise CongruenceError(f"classes are not intervals: {failures[:3]}")
        logger.info(f"Congruence: {len(self.removed)} removed shards, {len(self.classes)} classes")

    def __repr__(self) -> str:
        return f"Congruence(removed={len(self.removed)}, classes={len(self.classes)})"

    def __len__(self) -> int:
        return len(self.classes)

    def is_contracted(self, q: int, r: int) -> bool:
        return self.shards.cover_shard[(q, r)] in self.removed

    def class_of(self, x: int) -> Tuple[int, ...]:
        return self.classes[self.node_to_class[x]]

    def pi_down(self, x: int) -> int:
        return self.class_bottom[self.node_to_class[x]]

    def pi_up(self, x: int) -> int:
        return self.class_top[self.node_to_class[x]]

    def congruent(self, x: int, y: int) -> bool:
        return self.node_to_class[x] == self.node_to_class[y]

    @cached_property
    def bottoms(self) -> List[int]:
        return sorted(self.class_bottom, key=lambda x: (self.weak.rank(x), x))

    def is_bottom(self, x: int) -> bool:
        return self.pi_down(x) == x

    @property
    def is_identity(self) -> bool:
        return not self.removed

    # Structural checks

    def interval_failures(self) -> List[str]:
        weak = self.weak
        failures = []
        for i, c in enumerate(self.classes):
            bottom, top = self.class_bottom[i], self.class_top[i]
            if bottom not in c or top not in c:
                failures.append(f"class of {weak.label(c[0])} has no bottom or top")
            elif len(weak.interval(bottom, top)) != len(c):
                failures.append(f"class [{weak.label(bottom)}, {weak.label(top)}] is not an interval")
        return failures

    def monotonicity_failures(self) -> List[str]:
        weak = self.weak
        return [f"{weak.label(q)} < {weak.label(r)}"
                for q, r, _ in weak.covers
                if not (weak.leq(self.pi_down(q), self.pi_down(r)) and weak.leq(self.pi_up(q), self.pi_up(r)))]

    def good_enough_failures(self) -> List[Tuple[int, int]]:
        """Arrows leaving a removed shard for a shard that is kept."""
        return [(a, b) for a, b in self.shards.digraph.arrows if a in self.removed and b not in self.removed]

    def bottom_characterization_failures(self) -> List[int]:
        """Elements where "bottom of its class" disagrees with "no canonical joinand contracted"."""
        weak = self.weak
        failures = []
        for x in range(weak.size):
            clean = all(j.element not in self.removed for j in weak.canonical_join_rep(x))
            if clean != self.is_bottom(x):
                failures.append(x)
        return failures

    def forcing_minimal(self) -> List[int]:
        """Removed shards not forced by any other removed shard outside their own cycle."""
        closure = self.shards.digraph.transitive_closure
        out = []
        for s in sorted(self.removed):
            forced_by = [t for t in self.removed if t != s and closure.has_edge(t, s) and not closure.has_edge(s, t)]
            if not forced_by:
                out.append(s)
        return out

    def quotient_cone_failures(self) -> List[str]:
        """Each class is the cone cut out by the lower facets of its bottom and the upper facets of its top."""
        arrangement = geometry_of(self.weak.system)
        if arrangement is None:
            return []
        weak = self.weak
        failures = []
        points = [arrangement.interior_point(weak.seps[x]) for x in range(weak.size)]
        for i, c in enumerate(self.classes):
            cone = self.class_cone(i)
            inside = {x for x in range(weak.size) if cone.contains_point(points[x])}
            if inside != set(c):
                failures.append(f"class of {weak.label(self.class_bottom[i])}")
        return failures

    def class_cone(self, i: int) -> Cone:
        weak = self.weak
        arrangement = geometry_of(weak.system)
        bottom, top = self.class_bottom[i], self.class_top[i]
        sides = [arrangement.side(h, below=False) for h in weak.lower_hyperplanes(bottom)]
        sides += [arrangement.side(h, below=True) for _, h in weak.upper[top]]
        return Cone.from_hyperplanes(arrangement.field, arrangement.dim, inequalities=sides)

    def to_dict(self) -> Dict:
        weak = self.weak
        return {
            "generators": [weak.label(j) for j in self.generators],
            "removed_shards": [weak.label(j) for j in sorted(self.removed)],
            "classes": len(self.classes),
            "bottoms": [weak.label(x) for x in self.bottoms],
        }


# Generation

def generic_closure(weak: WeakOrder, pairs: Iterable[Tuple[int, int]],
                    budget: Optional[int] = None) -> List[int]:
    """
    Finest lattice congruence identifying the given pairs.

    Returns the class representative of every element. Each merge is propagated
    through meets and joins with every element; the worklist order is deterministic.
    """
    budget = settings.CLOSURE_ITERATION_BUDGET if budget is None else budget
    uf = _UnionFind(weak.size)
    worklist = []
    for x, y in pairs:
        if uf.union(x, y):
            worklist.append((x, y))
    steps = 0
    while worklist:
        x, y = worklist.pop(0)
        steps += 1
        if steps > budget:
            raise CongruenceError(f"generic closure exceeded {budget} iterations")
        for z in range(weak.size):
            for a, b in ((weak.meet(x, z), weak.meet(y, z)), (weak.join(x, z), weak.join(y, z))):
                if uf.union(a, b):
                    worklist.append((a, b))
    return [uf.find(x) for x in range(weak.size)]


def removed_from_partition(shards: Shards, representative: Sequence[int]) -> Set[int]:
    return {shards.cover_shard[(q, r)] for q, r, _ in shards.weak.covers if representative[q] == representative[r]}


def generate_congruence(shards: Shards, generators: Iterable[int]) -> Congruence:
    """Finest congruence contracting the given join-irreducibles."""
    weak = shards.weak
    generators = sorted(set(generators))
    for j in generators:
        if not weak.is_join_irreducible(j):
            raise ValueError(f"{weak.label(j)} is not join-irreducible")
    digraph = shards.digraph
    removed = digraph.forced(generators)
    if not digraph.acyclic:
        generic = removed_from_partition(shards, generic_closure(weak, [(j, weak.ji(j).j_star) for j in generators]))
        if generic != removed:
            logger.warning(f"Cyclic shard digraph: forcing closure removes {len(removed)} shards, "
                           f"lattice closure removes {len(generic)}; using the lattice closure")
            removed = generic
    return Congruence(shards, removed, generators)


def closure_agreement(shards: Shards, generators: Iterable[int]) -> bool:
    """Forcing-closure and lattice-closure remove the same shards."""
    weak = shards.weak
    generators = list(generators)
    forced = shards.digraph.forced(generators)
    generic = removed_from_partition(shards, generic_closure(weak, [(j, weak.ji(j).j_star) for j in generators]))
    if forced != generic:
        logger.debug(f"closure mismatch for {[weak.label(j) for j in generators]}: {sorted(forced ^ generic)}")
    return forced == generic


def parabolic_congruence(shards: Shards, K: Iterable[int]) -> Congruence:
    """Congruence removing every shard in a hyperplane outside the flat of K."""
    K = list(K)
    basic = set(shards.system.basic_hyperplanes)
    if not set(K) <= basic:
        raise ValueError(f"{sorted(set(K) - basic)} are not basic hyperplanes")
    mask = sum(1 << b for b in K)
    flat = shards.system.flat_closure(mask) if mask else 0
    removed = {ji for ji, s in shards.shards.items() if not flat >> s.hyperplane & 1}
    return Congruence(shards, removed)


def parabolic_homomorphism_failures(shards: Shards, K: Iterable[int],
                                    sample: Optional[Iterable[Tuple[int, int]]] = None) -> List[str]:
    """w -> w_K, the region with separating set S(w) restricted to A_K, preserves meets and joins."""
    weak = shards.weak
    mask = sum(1 << b for b in K)
    flat = shards.system.flat_closure(mask) if mask else 0

    def project(w):
        return weak.index[weak.seps[w] & flat]

    pairs = sample if sample is not None else combinations(range(weak.size), 2)
    failures = []
    for x, y in pairs:
        px, py = project(x), project(y)
        if project(weak.join(x, y)) != weak.join(px, py):
            failures.append(f"join of {weak.label(x)}, {weak.label(y)}")
        if project(weak.meet(x, y)) != weak.meet(px, py):
            failures.append(f"meet of {weak.label(x)}, {weak.label(y)}")
    return failures


# Quotients

def quotient_lattice(congruence: Congruence) -> PosetView:
    """The weak order restricted to class bottoms."""
    return congruence.weak.poset().subposet(congruence.bottoms)


def cover_lemma_failures(congruence: Congruence, quotient: Optional[PosetView] = None) -> List[int]:
    """Bottoms whose lower covers in the quotient are not the projected lower covers in W."""
    weak = congruence.weak
    quotient = quotient if quotient is not None else quotient_lattice(congruence)
    failures = []
    for x in congruence.bottoms:
        expected = {congruence.pi_down(y) for y, _ in weak.lower[x]}
        if set(quotient.lower_covers(x)) != expected or len(expected) != len(weak.lower[x]):
            failures.append(x)
    return failures


class QuotientShardOrder:
    """The shard intersection order restricted to the bottoms of a congruence."""

    def __init__(self, congruence: Congruence, order: ShardOrder):
        self.congruence = congruence
        self.order = order
        self.weak = congruence.weak
        self.elements: List[int] = congruence.bottoms
        self.labels: Dict[int, FrozenSet[int]] = {w: self._label(w) for w in self.elements}

    def __repr__(self) -> str:
        return f"QuotientShardOrder(size={len(self.elements)})"

    def _label(self, w: int) -> FrozenSet[int]:
        bottom = self.congruence.pi_down(self.weak.L(w))
        shards = self.order.shards
        return frozenset(ji for ji in (shards.cover_shard[c] for c in self.order.interval_covers(bottom, w))
                         if ji not in self.congruence.removed)

    def preceq(self, u: int, v: int) -> bool:
        return self.labels[u] <= self.labels[v]

    def rank(self, w: int) -> int:
        return len(self.weak.lower[w])

    @cached_property
    def poset(self) -> PosetView:
        return PosetView.from_relation(self.elements, self.preceq)

    def restriction_failures(self) -> List[Tuple[int, int]]:
        """Pairs where the quotient labels disagree with the restriction of the full shard order."""
        return [(u, v) for u in self.elements for v in self.elements
                if self.preceq(u, v) != self.order.preceq(u, v)]

    def join_sublattice_failures(self) -> List[Tuple[int, int]]:
        full = self.order.poset
        members = set(self.elements)
        return [(u, v) for u, v in combinations(self.elements, 2) if full.join(u, v) not in members]

    def is_sublattice(self) -> bool:
        full = self.order.poset
        members = set(self.elements)
        return all(full.join(u, v) in members and full.meet(u, v) in members
                   for u, v in combinations(self.elements, 2))

    def is_graded_by_descents(self) -> bool:
        heights = self.poset.heights
        return all(heights[w] == self.rank(w) for w in self.elements)

    def mobius(self) -> Tuple[int, int]:
        """(recursion on the poset, signed count of projected parabolic subsets over kept basic hyperplanes)."""
        congruence = self.congruence
        weak = self.weak
        direct = self.poset.mobius(weak.bottom, congruence.pi_down(weak.top))
        kept = [b for b in weak.system.basic_hyperplanes
                if weak.minimal_with(weak.index[1 << b], b) not in congruence.removed]
        formula = 0
        for size in range(len(kept) + 1):
            for K in combinations(kept, size):
                mask = sum(1 << b for b in K)
                flat = weak.system.flat_closure(mask) if mask else 0
                projected = {congruence.pi_down(x) for x in range(weak.size) if weak.seps[x] & ~flat == 0}
                formula += (-1) ** size * len(projected)
        if direct != formula:
            logger.warning(f"Quotient Moebius mismatch: recursion {direct}, parabolic sum {formula}")
        return direct, formula

    def lower_interval_failures(self) -> List[int]:
        """Bottoms w whose lower interval is not the quotient order of the subarrangement at [L(w), w]."""
        failures = []
        for w in self.elements:
            system, local, translation = self.order.sub_context(w)
            back = {v: k for k, v in translation.items()}
            local_removed = {j for j in local.shards.shards if back[j] in self.congruence.removed}
            local_quotient = QuotientShardOrder(Congruence(local.shards, local_removed), local)
            members = [u for u in self.elements if self.preceq(u, w)]
            if not self.poset.subposet(members).is_isomorphic(local_quotient.poset):
                failures.append(w)
        return failures

    def to_rows(self) -> List[Dict]:
        weak = self.weak
        return [{"element": weak.label(w), "rank": self.rank(w),
                 "label_set": sorted(weak.label(j) for j in self.labels[w])} for w in self.elements]


def quotient_shard_order(congruence: Congruence, order: ShardOrder) -> QuotientShardOrder:
    return QuotientShardOrder(congruence, order)


def quotient_mobius(congruence: Congruence, order: ShardOrder) -> Tuple[int, int]:
    return QuotientShardOrder(congruence, order).mobius()


# Degree

def congruence_degree(congruence: Congruence, order: ShardOrder) -> int:
    return max((order.ji_degree(s) for s in congruence.forcing_minimal()), default=0)


def sample_congruences(shards: Shards, extra: Iterable[Iterable[int]] = ()) -> List[Congruence]:
    """Single-generator congruences, plus generator pairs on small groups, plus any extra generator sets."""
    weak = shards.weak
    jis = [j.element for j in weak.join_irreducibles]
    seen: Set[FrozenSet[int]] = set()
    out = []
    candidates: List[Tuple[int, ...]] = [(j,) for j in jis]
    if weak.size <= settings.DEGREE2_EXHAUSTIVE_MAX:
        candidates += list(combinations(jis, 2))
    candidates += [tuple(g) for g in extra]
    for generators in candidates:
        congruence = generate_congruence(shards, generators)
        if congruence.removed not in seen:
            seen.add(congruence.removed)
            out.append(congruence)
    return out


def degree2_check(order: ShardOrder, congruences: Iterable[Congruence]) -> Dict:
    """Every congruence whose bottoms form a sublattice of the shard order has degree at most two."""
    checked = 0
    sublattices = 0
    counterexamples = []
    for congruence in congruences:
        checked += 1
        if not QuotientShardOrder(congruence, order).is_sublattice():
            continue
        sublattices += 1
        degree = congruence_degree(congruence, order)
        if degree > 2:
            counterexamples.append({"generators": [order.weak.label(j) for j in congruence.generators],
                                    "degree": degree})
    if counterexamples:
        logger.warning(f"degree-2 counterexamples: {counterexamples}")
    return {"checked": checked, "sublattices": sublattices, "counterexamples": counterexamples}

