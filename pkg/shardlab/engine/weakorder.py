"""
The poset of regions (weak order) of a simplicial region system.

A region system is anything exposing `hyperplane_count`, `seps` (separating sets as
bitmasks, index 0 the base region), `facets(i)`, `flat_closure(mask)`, `flat_rank(mask)`
and `label(i)`: a CoxeterGroup, an ingested Arrangement, or a SubSystem below.
"""
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Set, Tuple

import numpy as np

from shardlab.engine.errors import NonUniqueMinimal, PosetException
from shardlab.engine.poset import PosetView

logger = logging.getLogger(__name__)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def bits(mask: int) -> List[int]:
    out = []
    k = 0
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return out


@dataclass(frozen=True)
class JoinIrreducible:
    element: int
    j_star: int
    hyperplane: int


@dataclass(frozen=True)
class FacialInterval:
    """Regions containing a face: the interval [bottom, top] and the flat of the face."""
    bottom: int
    top: int
    flat: int
    members: Tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.members)


class WeakOrder:
    """Regions ordered by containment of separating sets."""

    def __init__(self, system):
        self.system = system
        self.hyperplane_count = system.hyperplane_count
        self.seps: List[int] = list(system.seps)
        self.size = len(self.seps)
        self.index: Dict[int, int] = {sep: i for i, sep in enumerate(self.seps)}
        self.full = (1 << self.hyperplane_count) - 1
        self.upper: List[List[Tuple[int, int]]] = [[] for _ in range(self.size)]
        self.lower: List[List[Tuple[int, int]]] = [[] for _ in range(self.size)]
        for i, sep in enumerate(self.seps):
            for h in system.facets(i):
                j = self.index[sep ^ (1 << h)]
                if sep >> h & 1:
                    self.lower[i].append((j, h))
                else:
                    self.upper[i].append((j, h))
        self._meets: Dict[Tuple[int, int], int] = {}
        self._minimal: Dict[Tuple[int, int], int] = {}
        logger.debug(f"Weak order on {self.size} regions, {len(self.covers)} covers")

    def __repr__(self) -> str:
        return f"WeakOrder(size={self.size})"

    def label(self, x: int) -> str:
        return self.system.label(x)

    @property
    def bottom(self) -> int:
        return 0

    @cached_property
    def top(self) -> int:
        return self.index[self.full]

    @cached_property
    def covers(self) -> List[Tuple[int, int, int]]:
        """All covers (lower, upper, hyperplane)."""
        return [(i, j, h) for i in range(self.size) for j, h in self.upper[i]]

    def rank(self, x: int) -> int:
        return popcount(self.seps[x])

    def leq(self, x: int, y: int) -> bool:
        return self.seps[x] & ~self.seps[y] == 0

    def lower_hyperplanes(self, x: int) -> List[int]:
        return sorted(h for _, h in self.lower[x])

    def descents(self, x: int) -> Set[int]:
        """Lower hyperplanes of x (for a Coxeter group these index the cover reflections)."""
        return set(self.lower_hyperplanes(x))

    def antipode(self, x: int) -> int:
        return self.index[self.full ^ self.seps[x]]

    # Lattice operations

    def meet(self, x: int, y: int) -> int:
        """Greatest region whose separating set lies in both: climb from the base."""
        if x > y:
            x, y = y, x
        key = (x, y)
        if key in self._meets:
            return self._meets[key]
        allowed = self.seps[x] & self.seps[y]
        z = 0
        moved = True
        while moved:
            moved = False
            for j, h in self.upper[z]:
                if allowed >> h & 1:
                    z = j
                    moved = True
                    break
        self._meets[key] = z
        return z

    def join(self, x: int, y: int) -> int:
        return self.antipode(self.meet(self.antipode(x), self.antipode(y)))

    def meet_all(self, items: Iterable[int]) -> int:
        items = list(items)
        if not items:
            return self.top
        z = items[0]
        for x in items[1:]:
            z = self.meet(z, x)
        return z

    def join_all(self, items: Iterable[int]) -> int:
        items = list(items)
        if not items:
            return self.bottom
        z = items[0]
        for x in items[1:]:
            z = self.join(z, x)
        return z

    # Join-irreducibles and canonical joins

    @cached_property
    def join_irreducibles(self) -> List[JoinIrreducible]:
        return [JoinIrreducible(x, self.lower[x][0][0], self.lower[x][0][1])
                for x in range(self.size) if len(self.lower[x]) == 1]

    @cached_property
    def ji_position(self) -> Dict[int, int]:
        return {j.element: k for k, j in enumerate(self.join_irreducibles)}

    def is_join_irreducible(self, x: int) -> bool:
        return len(self.lower[x]) == 1

    def ji(self, x: int) -> JoinIrreducible:
        return self.join_irreducibles[self.ji_position[x]]

    def minimal_with(self, r: int, h: int) -> int:
        """The unique minimal P <= r with h in S(P)."""
        key = (r, h)
        if key in self._minimal:
            return self._minimal[key]
        if not self.seps[r] >> h & 1:
            raise ValueError(f"hyperplane {h} does not separate {self.label(r)} from the base")
        seen = {r}
        stack = [r]
        minima = []
        while stack:
            p = stack.pop()
            below = [q for q, g in self.lower[p] if g != h]
            if not below:
                minima.append(p)
            for q in below:
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
        if len(minima) != 1:
            raise NonUniqueMinimal(
                f"regions below {self.label(r)} cut by hyperplane {h} have minima "
                f"{[self.label(m) for m in minima]}")
        self._minimal[key] = minima[0]
        return minima[0]

    def canonical_join_rep(self, w: int) -> List[JoinIrreducible]:
        return [self.ji(self.minimal_with(w, h)) for h in self.lower_hyperplanes(w)]

    def L(self, w: int) -> int:
        """Meet of the lower covers; the base maps to itself."""
        if w == self.bottom:
            return self.bottom
        return self.meet_all(q for q, _ in self.lower[w])

    # Intervals

    def facial_interval(self, w: int, hyperplanes: Iterable[int]) -> FacialInterval:
        """Regions containing the face of w cut out by the given facet hyperplanes."""
        mask = 0
        facets = set(self.system.facets(w))
        for h in hyperplanes:
            if h not in facets:
                raise ValueError(f"hyperplane {h} is not a facet of {self.label(w)}")
            mask |= 1 << h
        flat = self.system.flat_closure(mask) if mask else 0
        outside = self.seps[w] & ~flat
        members = tuple(x for x, sep in enumerate(self.seps) if sep & ~flat == outside)
        return FacialInterval(self.index[outside], self.index[outside | flat], flat, members)

    def lower_facial_interval(self, w: int) -> FacialInterval:
        """[L(w), w]: regions containing the intersection of the lower facets of w."""
        return self.facial_interval(w, self.lower_hyperplanes(w))

    def interval(self, x: int, y: int) -> List[int]:
        return [z for z in range(self.size) if self.leq(x, z) and self.leq(z, y)]

    # Views

    @cached_property
    def inversion_bits(self) -> np.ndarray:
        table = np.zeros((self.size, self.hyperplane_count), dtype=bool)
        for i, sep in enumerate(self.seps):
            for h in bits(sep):
                table[i, h] = True
        return table

    def poset(self) -> PosetView:
        """The weak order as a PosetView over element ids."""
        inv = self.inversion_bits.astype(np.int64)
        leq = (inv @ (1 - inv).T) == 0
        return PosetView(list(range(self.size)), leq)

    def check_lattice_axioms(self, sample: Optional[Iterable[Tuple[int, int]]] = None) -> List[str]:
        """Failures of meet/join against the order, over all pairs or a sample."""
        pairs = sample if sample is not None else ((x, y) for x in range(self.size) for y in range(x, self.size))
        failures = []
        for x, y in pairs:
            m, j = self.meet(x, y), self.join(x, y)
            if not (self.leq(m, x) and self.leq(m, y) and self.leq(x, j) and self.leq(y, j)):
                failures.append(f"bounds of {self.label(x)}, {self.label(y)}")
                continue
            common = self.seps[x] & self.seps[y]
            if any(self.seps[z] & ~common == 0 and not self.leq(z, m) for z in range(self.size)):
                failures.append(f"meet of {self.label(x)}, {self.label(y)} is not greatest")
        return failures


class SubSystem:
    """
    The regions of a full subarrangement, realised on a facial interval of a parent weak order.

    A parent region x in the interval becomes the local region with separating set
    S(x) restricted to the flat's hyperplanes, renumbered locally.
    """

    def __init__(self, parent: WeakOrder, interval: FacialInterval):
        self.parent = parent
        self.interval = interval
        self.parent_hyperplanes = bits(interval.flat)
        self.local_hyperplane = {h: k for k, h in enumerate(self.parent_hyperplanes)}
        outside = parent.seps[interval.bottom]
        members = sorted(interval.members, key=lambda x: (parent.rank(x), x))
        self.parent_elements = members
        self.local_element = {x: k for k, x in enumerate(members)}
        self.seps = [self.to_local_mask(parent.seps[x] & ~outside) for x in members]
        if self.seps[0] != 0:
            raise PosetException("facial interval has no bottom")

    def __repr__(self) -> str:
        return f"SubSystem(size={self.size}, hyperplanes={self.hyperplane_count})"

    @property
    def hyperplane_count(self) -> int:
        return len(self.parent_hyperplanes)

    @property
    def size(self) -> int:
        return len(self.seps)

    @property
    def identity(self) -> int:
        return 0

    @cached_property
    def longest(self) -> int:
        return self.local_element[self.interval.top]

    def to_local_mask(self, mask: int) -> int:
        return sum(1 << self.local_hyperplane[h] for h in bits(mask))

    def to_parent_mask(self, mask: int) -> int:
        return sum(1 << self.parent_hyperplanes[k] for k in bits(mask))

    def facets(self, i: int) -> List[int]:
        x = self.parent_elements[i]
        out = []
        for y, h in self.parent.upper[x] + self.parent.lower[x]:
            if y in self.local_element:
                out.append(self.local_hyperplane[h])
        return sorted(out)

    def flat_closure(self, mask: int) -> int:
        if not mask:
            return 0
        return self.to_local_mask(self.parent.system.flat_closure(self.to_parent_mask(mask)))

    def flat_rank(self, mask: int) -> int:
        return self.parent.system.flat_rank(self.to_parent_mask(mask)) if mask else 0

    @cached_property
    def basic_hyperplanes(self) -> List[int]:
        return self.facets(0)

    def label(self, i: int) -> str:
        return self.parent.label(self.parent_elements[i])
