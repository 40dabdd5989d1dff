"""
The shard intersection order.

Each element w is labelled by the set of join-irreducibles whose shards contain
the intersection of its lower shards. That set is read off the covers inside the
interval [L(w), w], and the order is containment of labels.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from shardlab.engine.errors import PosetException
from shardlab.engine.exactgeom import Cone
from shardlab.engine.poset import PosetView
from shardlab.engine.shards import Shards, geometry_of
from shardlab.engine.weakorder import SubSystem, WeakOrder, bits

logger = logging.getLogger(__name__)


@dataclass
class ShardIntersectionCone:
    element: int
    containing_shards: Tuple[int, ...]
    cone: Optional[Cone] = None

    @property
    def codim(self) -> Optional[int]:
        return None if self.cone is None else self.cone.codim


@dataclass
class LowerInterval:
    """[e, w] in the shard order with an explicit isomorphism onto the order of a subarrangement."""
    poset: PosetView
    mapping: Dict[int, int]
    local: 'ShardOrder'
    system: SubSystem

    def is_isomorphism(self) -> bool:
        values = set(self.mapping.values())
        if len(values) != len(self.mapping) or len(values) != self.local.weak.size:
            return False
        return all(
            self.poset.leq(u, v) == self.local.leq(self.mapping[u], self.mapping[v])
            for u in self.mapping for v in self.mapping)


class ShardOrder:
    """(W, shard intersection order) over the elements of a weak order."""

    def __init__(self, shards: Shards):
        self.shards = shards
        self.weak: WeakOrder = shards.weak
        weak = self.weak
        self.ji_elements = [j.element for j in weak.join_irreducibles]
        self.ji_bit = {x: k for k, x in enumerate(self.ji_elements)}
        self.labels: List[int] = [self._label(w) for w in range(weak.size)]
        self.by_label = {mask: w for w, mask in enumerate(self.labels)}
        if len(self.by_label) != weak.size:
            raise PosetException("shard intersection labels are not distinct")
        self._sub: Dict[int, Tuple[SubSystem, 'ShardOrder', Dict[int, int]]] = {}

    def __repr__(self) -> str:
        return f"ShardOrder(size={self.weak.size})"

    def interval_covers(self, bottom: int, top: int) -> List[Tuple[int, int]]:
        """Covers q < r with bottom <= q and r <= top, found by walking down from top."""
        weak = self.weak
        floor = weak.seps[bottom]
        seen = {top}
        stack = [top]
        covers = []
        while stack:
            x = stack.pop()
            for y, _ in weak.lower[x]:
                if weak.seps[y] & floor != floor:
                    continue
                covers.append((y, x))
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return covers

    def _label(self, w: int) -> int:
        mask = 0
        for cover in self.interval_covers(self.weak.L(w), w):
            mask |= 1 << self.ji_bit[self.shards.cover_shard[cover]]
        return mask

    def label_set(self, w: int) -> List[int]:
        return [self.ji_elements[k] for k in bits(self.labels[w])]

    def preceq(self, u: int, v: int) -> bool:
        return self.labels[u] & ~self.labels[v] == 0

    leq = preceq

    def rank(self, w: int) -> int:
        return len(self.weak.lower[w])

    @cached_property
    def poset(self) -> PosetView:
        table = np.zeros((self.weak.size, len(self.ji_elements)), dtype=np.int64)
        for w, mask in enumerate(self.labels):
            for k in bits(mask):
                table[w, k] = 1
        leq = (table @ (1 - table).T) == 0
        return PosetView(list(range(self.weak.size)), leq)

    def build_shard_order(self) -> PosetView:
        return self.poset

    def rank_generating_polynomial(self) -> List[int]:
        coefficients = [0] * (max((self.rank(w) for w in range(self.weak.size)), default=0) + 1)
        for w in range(self.weak.size):
            coefficients[self.rank(w)] += 1
        return coefficients

    # Parabolic data

    def parabolic_size(self, K: Sequence[int]) -> int:
        """|R_K|: regions whose separating set lies in the flat of K."""
        mask = sum(1 << b for b in K)
        flat = self.weak.system.flat_closure(mask) if mask else 0
        return sum(1 for sep in self.weak.seps if sep & ~flat == 0)

    def mobius_bottom_top(self) -> Tuple[int, int]:
        """(recursion on the poset, signed sum of |R_K| over subsets K of basic hyperplanes)."""
        direct = self.poset.mobius(self.weak.bottom, self.weak.top)
        basic = list(self.weak.system.basic_hyperplanes)
        formula = 0
        for size in range(len(basic) + 1):
            for K in combinations(basic, size):
                formula += (-1) ** size * self.parabolic_size(K)
        if direct != formula:
            logger.warning(f"Moebius mismatch: recursion {direct}, parabolic sum {formula}")
        return direct, formula

    def maximal_chain_count(self) -> Tuple[int, Optional[int]]:
        """(count on the poset, parabolic recursion over maximal standard parabolics)."""
        direct = self.poset.maximal_chain_count()
        basic = tuple(sorted(self.weak.system.basic_hyperplanes))
        sizes: Dict[Tuple[int, ...], int] = {}
        memo: Dict[Tuple[int, ...], Optional[Fraction]] = {(): Fraction(1)}

        def size_of(K):
            if K not in sizes:
                sizes[K] = self.parabolic_size(K)
            return sizes[K]

        def chains(K):
            if K in memo:
                return memo[K]
            total = Fraction(0)
            for b in K:
                rest = tuple(x for x in K if x != b)
                sub = chains(rest)
                total += (Fraction(size_of(K), size_of(rest)) - 1) * sub
            memo[K] = total
            return total

        value = chains(basic)
        recursion = int(value) if value.denominator == 1 else None
        if recursion != direct:
            logger.warning(f"Maximal chain mismatch: poset {direct}, parabolic recursion {value}")
        return direct, recursion

    # Lower intervals

    def sub_context(self, w: int) -> Tuple[SubSystem, 'ShardOrder', Dict[int, int]]:
        """Subarrangement of the lower facets of w with the translation of join-irreducibles."""
        if w in self._sub:
            return self._sub[w]
        system = SubSystem(self.weak, self.weak.lower_facial_interval(w))
        local = ShardOrder(Shards(WeakOrder(system)))
        translation: Dict[int, int] = {}
        for q, r in self.interval_covers(self.weak.L(w), w):
            parent_ji = self.shards.cover_shard[(q, r)]
            local_ji = local.shards.cover_shard[(system.local_element[q], system.local_element[r])]
            if translation.setdefault(parent_ji, local_ji) != local_ji:
                raise PosetException(f"shard of {self.weak.label(parent_ji)} splits in the subarrangement")
        self._sub[w] = (system, local, translation)
        return self._sub[w]

    def translate(self, w: int, u: int) -> int:
        """Image of u in [e, w] under the isomorphism onto the subarrangement's order."""
        _, local, translation = self.sub_context(w)
        mask = 0
        for k in bits(self.labels[u]):
            mask |= 1 << local.ji_bit[translation[self.ji_elements[k]]]
        if mask not in local.by_label:
            raise PosetException(f"{self.weak.label(u)} has no image below {self.weak.label(w)}")
        return local.by_label[mask]

    def untranslate(self, w: int, local_element: int) -> int:
        _, local, translation = self.sub_context(w)
        back = {v: k for k, v in translation.items()}
        mask = 0
        for k in bits(local.labels[local_element]):
            mask |= 1 << self.ji_bit[back[local.ji_elements[k]]]
        return self.by_label[mask]

    def lower_interval(self, w: int) -> LowerInterval:
        members = [u for u in range(self.weak.size) if self.preceq(u, w)]
        system, local, _ = self.sub_context(w)
        mapping = {u: self.translate(w, u) for u in members}
        return LowerInterval(self.poset.subposet(members), mapping, local, system)

    # Geometric realisation

    def psi(self, w: int, geometric: bool = True) -> ShardIntersectionCone:
        cone = None
        arrangement = geometry_of(self.weak.system) if geometric else None
        if arrangement is not None:
            lower_shards = [self.shards.cover_shard[(q, w)] for q, _ in self.weak.lower[w]]
            cone = Cone(arrangement.field, arrangement.dim)
            for ji in lower_shards:
                cone = cone.intersect(self.shards.shard_cone(ji, arrangement))
        return ShardIntersectionCone(w, tuple(self.label_set(w)), cone)

    def rho(self, containing_shards: Sequence[int]) -> int:
        """Join of the join-irreducibles of the shards containing a cone."""
        return self.weak.join_all(containing_shards)

    def ji_degree(self, j: int) -> int:
        """Least |K| with j in R_K, K a set of basic hyperplanes."""
        basic = list(self.weak.system.basic_hyperplanes)
        sep = self.weak.seps[j]
        for size in range(len(basic) + 1):
            for K in combinations(basic, size):
                mask = sum(1 << b for b in K)
                flat = self.weak.system.flat_closure(mask) if mask else 0
                if sep & ~flat == 0:
                    return size
        return len(basic)

    def to_rows(self) -> List[Dict]:
        return [{"element": self.weak.label(w), "rank": self.rank(w),
                 "label_set": [self.weak.label(j) for j in self.label_set(w)]}
                for w in range(self.weak.size)]
