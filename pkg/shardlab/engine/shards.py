"""
Shards of a simplicial arrangement.

A shard is identified by its join-irreducible element: the unique minimal region
above any of its covers. The geometric description (hyperplane plus the side of
each cutting hyperplane) is computed independently and used as a validator.
"""
import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

import networkx as nx

from shardlab.engine.errors import MidpointOnCutLocus
from shardlab.engine.exactgeom import Arrangement, Cone
from shardlab.engine.weakorder import WeakOrder, bits, popcount

logger = logging.getLogger(__name__)

SignVector = Tuple[Tuple[int, str], ...]


@dataclass(frozen=True)
class Shard:
    ji: int
    hyperplane: int
    sign_vector: SignVector
    covers: Tuple[Tuple[int, int], ...]

    def to_dict(self, weak: WeakOrder) -> Dict:
        return {
            "ji": weak.label(self.ji),
            "hyperplane": self.hyperplane,
            "sign_vector": {str(h): s for h, s in self.sign_vector},
            "covers": len(self.covers),
        }


@dataclass
class ShardDigraph:
    graph: nx.DiGraph

    @property
    def arrows(self) -> List[Tuple[int, int]]:
        return sorted(self.graph.edges())

    @cached_property
    def acyclic(self) -> bool:
        return nx.is_directed_acyclic_graph(self.graph)

    @cached_property
    def transitive_closure(self) -> nx.DiGraph:
        if self.acyclic:
            return nx.transitive_closure_dag(self.graph)
        return nx.transitive_closure(self.graph, reflexive=False)

    def forced(self, sources: Iterable[int]) -> Set[int]:
        """Sources together with every shard reachable from them."""
        out = set()
        for s in sources:
            out.add(s)
            out |= nx.descendants(self.graph, s)
        return out


def geometry_of(system) -> Optional[Arrangement]:
    """The exact arrangement behind a region system, when it has one."""
    if isinstance(system, Arrangement):
        return system
    roots = getattr(system, "roots", None)
    if roots is not None and roots.is_geometric:
        return system.arrangement
    return None


class Shards:
    """Shards of the weak order's arrangement, keyed by join-irreducible element."""

    def __init__(self, weak: WeakOrder):
        self.weak = weak
        self.system = weak.system
        self._basic_of_flat: Dict[int, FrozenSet[int]] = {}
        self.cover_shard: Dict[Tuple[int, int], int] = {}
        for q, r, h in weak.covers:
            self.cover_shard[(q, r)] = weak.minimal_with(r, h)
        grouped: Dict[int, List[Tuple[int, int]]] = {}
        for cover, ji in self.cover_shard.items():
            grouped.setdefault(ji, []).append(cover)
        self.shards: Dict[int, Shard] = {}
        for ji in sorted(grouped):
            h = weak.ji(ji).hyperplane
            q, r = grouped[ji][0]
            self.shards[ji] = Shard(ji, h, self.sign_vector(q, r), tuple(sorted(grouped[ji])))
        logger.info(f"Found {len(self.shards)} shards over {len(self.cover_shard)} covers")

    def __len__(self) -> int:
        return len(self.shards)

    @property
    def ids(self) -> List[int]:
        return list(self.shards)

    # Cutting relation

    def basic_of_flat(self, flat: int) -> FrozenSet[int]:
        """Basic hyperplanes of the full subarrangement on a flat: facets of the region containing the base."""
        if flat not in self._basic_of_flat:
            restricted = {sep & flat for sep in self.weak.seps}
            self._basic_of_flat[flat] = frozenset(h for h in bits(flat) if (1 << h) in restricted)
        return self._basic_of_flat[flat]

    def cuts(self, h: int, h2: int) -> bool:
        if h == h2:
            return False
        flat = self.system.flat_closure((1 << h) | (1 << h2))
        basic = self.basic_of_flat(flat)
        return h in basic and h2 not in basic

    @cached_property
    def cut_matrix(self) -> List[List[bool]]:
        n = self.weak.hyperplane_count
        return [[self.cuts(a, b) for b in range(n)] for a in range(n)]

    def cutting_hyperplanes(self, h: int) -> List[int]:
        return [a for a in range(self.weak.hyperplane_count) if self.cut_matrix[a][h]]

    # Shards of covers

    def shard_of_cover(self, q: int, r: int) -> Shard:
        return self.shards[self.cover_shard[(q, r)]]

    def hyperplane_of_cover(self, q: int, r: int) -> int:
        return (self.weak.seps[q] ^ self.weak.seps[r]).bit_length() - 1

    def sign_vector(self, q: int, r: int) -> SignVector:
        """Side of every hyperplane cutting H(q, r); "+" is the base side."""
        h = self.hyperplane_of_cover(q, r)
        sep = self.weak.seps[r]
        return tuple((a, "-" if sep >> a & 1 else "+") for a in self.cutting_hyperplanes(h))

    def shard_sign_vector(self, q: int, r: int) -> Tuple[int, SignVector]:
        return self.hyperplane_of_cover(q, r), self.sign_vector(q, r)

    def geometric_sign_vector(self, q: int, r: int, arrangement: Arrangement) -> Tuple[int, SignVector]:
        """Sign vector read off an exact point in the relative interior of the shared facet."""
        h = self.hyperplane_of_cover(q, r)
        point = arrangement.facet_point(self.weak.seps[r], h)
        field = arrangement.field
        signs = []
        for a in self.cutting_hyperplanes(h):
            value = field.sign(field.dot(arrangement.hyperplanes[a].normal, point))
            if value == 0:
                raise MidpointOnCutLocus(f"facet point of cover {q}->{r} lies on hyperplane {a}")
            signs.append((a, "+" if value == arrangement.base_signs[a] else "-"))
        return h, tuple(signs)

    def sign_partition(self, arrangement: Optional[Arrangement] = None) -> Set[FrozenSet[Tuple[int, int]]]:
        """Covers grouped by (hyperplane, sign vector)."""
        groups: Dict[Tuple, Set[Tuple[int, int]]] = {}
        for q, r, _ in self.weak.covers:
            key = self.geometric_sign_vector(q, r, arrangement) if arrangement else self.shard_sign_vector(q, r)
            groups.setdefault(key, set()).add((q, r))
        return {frozenset(g) for g in groups.values()}

    def lattice_partition(self) -> Set[FrozenSet[Tuple[int, int]]]:
        return {frozenset(s.covers) for s in self.shards.values()}

    def count_per_hyperplane(self, h: int) -> int:
        return sum(1 for s in self.shards.values() if s.hyperplane == h)

    def upper_regions(self, ji: int) -> Set[int]:
        return {r for _, r in self.shards[ji].covers}

    def depth(self, h: int) -> int:
        return min(popcount(sep) for sep in self.weak.seps if sep >> h & 1)

    # Geometry of shards

    def shard_cone(self, ji: int, arrangement: Arrangement) -> Cone:
        shard = self.shards[ji]
        sides = [arrangement.side(a, sign == "+") for a, sign in shard.sign_vector]
        return Cone.from_hyperplanes(arrangement.field, arrangement.dim,
                                     equalities=[arrangement.hyperplanes[shard.hyperplane]],
                                     inequalities=sides)

    # Shard digraph

    @cached_property
    def rank_two_faces(self) -> List[Tuple[int, Tuple[int, ...]]]:
        """Codimension-2 faces as (flat, members of the facial interval), each listed once."""
        seen = {}
        for w in range(self.weak.size):
            for pair in combinations(self.weak.lower_hyperplanes(w), 2):
                interval = self.weak.facial_interval(w, pair)
                seen[(interval.bottom, interval.top)] = (interval.flat, interval.members)
        return [seen[k] for k in sorted(seen)]

    @cached_property
    def digraph(self) -> ShardDigraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.shards)
        for _, members in self.rank_two_faces:
            inside = set(members)
            present = {self.cover_shard[(q, r)] for q, r, _ in self.weak.covers if q in inside and r in inside}
            for a in present:
                for b in present:
                    if a != b and self.cuts(self.shards[a].hyperplane, self.shards[b].hyperplane):
                        graph.add_edge(a, b)
        digraph = ShardDigraph(graph)
        logger.info(f"Shard digraph: {graph.number_of_edges()} arrows, acyclic={digraph.acyclic}")
        return digraph

    def shard_digraph(self) -> ShardDigraph:
        return self.digraph

    # Structural checks

    def antipodal_shard(self, ji: int) -> Optional[int]:
        """The shard -Sigma, found through the antipodal images of the covers."""
        weak = self.weak
        images = {(weak.antipode(r), weak.antipode(q)) for q, r in self.shards[ji].covers}
        owners = {self.cover_shard[c] for c in images}
        if len(owners) != 1:
            return None
        other = owners.pop()
        return other if set(self.shards[other].covers) == images else None

    def depth_lemma_failures(self) -> List[int]:
        """Non-basic hyperplanes with no rank-2 flat whose two basic hyperplanes are shallower."""
        failures = []
        basic = set(self.system.basic_hyperplanes)
        for h in range(self.weak.hyperplane_count):
            if h in basic:
                continue
            found = False
            for h2 in range(self.weak.hyperplane_count):
                if h2 == h:
                    continue
                flat = self.system.flat_closure((1 << h) | (1 << h2))
                if popcount(flat) < 3:
                    continue
                pair = self.basic_of_flat(flat)
                if h not in pair and all(self.depth(b) < self.depth(h) for b in pair):
                    found = True
                    break
            if not found:
                failures.append(h)
        return failures

    def parabolic_cutting_failures(self) -> List[Tuple[int, int, int]]:
        """Triples (K, a, b) where a hyperplane outside A_K cuts a hyperplane of A_K."""
        basic = list(self.system.basic_hyperplanes)
        failures = []
        for size in range(len(basic) + 1):
            for K in combinations(basic, size):
                mask = sum(1 << b for b in K)
                flat = self.system.flat_closure(mask) if mask else 0
                for b in bits(flat):
                    for a in range(self.weak.hyperplane_count):
                        if not flat >> a & 1 and self.cut_matrix[a][b]:
                            failures.append((mask, a, b))
        return failures
