"""
Finite posets over opaque node ids.

The order is held as a boolean numpy matrix `leq[i, j]` (node i <= node j), which
keeps joins, meets, Moebius values and chain counts vectorised at desk scale.
"""
import logging
from functools import cached_property
from typing import Any, Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from networkx.algorithms.isomorphism import DiGraphMatcher

from shardlab.engine.errors import PosetException

logger = logging.getLogger(__name__)


class PosetView:
    """A finite poset: nodes, the order matrix, and everything derived from it."""

    def __init__(self, nodes: Sequence[Hashable], leq: np.ndarray):
        self.nodes = list(nodes)
        self.index = {node: i for i, node in enumerate(self.nodes)}
        if len(self.index) != len(self.nodes):
            raise PosetException("poset nodes must be distinct")
        self.leq_matrix = np.asarray(leq, dtype=bool)
        self.leq_matrix.flags.writeable = False
        self.payload: Dict[Hashable, Any] = {}

    @classmethod
    def from_relation(cls, nodes: Sequence[Hashable], relation: Callable[[Any, Any], bool]) -> 'PosetView':
        nodes = list(nodes)
        leq = np.array([[a == b or bool(relation(a, b)) for b in nodes] for a in nodes], dtype=bool).reshape(len(nodes), len(nodes))
        return cls(nodes, leq)

    @classmethod
    def from_covers(cls, nodes: Sequence[Hashable], covers: Iterable[Tuple[Hashable, Hashable]]) -> 'PosetView':
        """Order generated by cover pairs (lower, upper)."""
        nodes = list(nodes)
        graph = nx.DiGraph()
        graph.add_nodes_from(nodes)
        graph.add_edges_from(covers)
        if not nx.is_directed_acyclic_graph(graph):
            raise PosetException("cover relation has a cycle")
        index = {node: i for i, node in enumerate(nodes)}
        leq = np.eye(len(nodes), dtype=bool)
        for node in nodes:
            for above in nx.descendants(graph, node):
                leq[index[node], index[above]] = True
        return cls(nodes, leq)

    def __len__(self) -> int:
        return len(self.nodes)

    def __repr__(self) -> str:
        return f"PosetView(size={len(self.nodes)})"

    # Relations

    def leq(self, a: Hashable, b: Hashable) -> bool:
        return bool(self.leq_matrix[self.index[a], self.index[b]])

    def lt(self, a: Hashable, b: Hashable) -> bool:
        return a != b and self.leq(a, b)

    @cached_property
    def strict(self) -> np.ndarray:
        return self.leq_matrix & ~np.eye(len(self.nodes), dtype=bool)

    @cached_property
    def cover_matrix(self) -> np.ndarray:
        lt = self.strict.astype(np.int64)
        return self.strict & ((lt @ lt) == 0)

    @cached_property
    def covers(self) -> List[Tuple[Hashable, Hashable]]:
        return [(self.nodes[i], self.nodes[j]) for i, j in zip(*np.nonzero(self.cover_matrix))]

    def upper_covers(self, a: Hashable) -> List[Hashable]:
        return [self.nodes[j] for j in np.flatnonzero(self.cover_matrix[self.index[a]])]

    def lower_covers(self, a: Hashable) -> List[Hashable]:
        return [self.nodes[i] for i in np.flatnonzero(self.cover_matrix[:, self.index[a]])]

    def bottom(self) -> Hashable:
        candidates = np.flatnonzero(self.leq_matrix.all(axis=1))
        if len(candidates) != 1:
            raise PosetException("poset has no bottom element")
        return self.nodes[candidates[0]]

    def top(self) -> Hashable:
        candidates = np.flatnonzero(self.leq_matrix.all(axis=0))
        if len(candidates) != 1:
            raise PosetException("poset has no top element")
        return self.nodes[candidates[0]]

    def is_bounded(self) -> bool:
        return bool(self.leq_matrix.all(axis=1).any() and self.leq_matrix.all(axis=0).any())

    # Lattice operations

    def _least(self, mask: np.ndarray) -> Optional[int]:
        ids = np.flatnonzero(mask)
        if len(ids) == 0:
            return None
        block = self.leq_matrix[np.ix_(ids, ids)]
        rows = np.flatnonzero(block.all(axis=1))
        return int(ids[rows[0]]) if len(rows) == 1 else None

    def _greatest(self, mask: np.ndarray) -> Optional[int]:
        ids = np.flatnonzero(mask)
        if len(ids) == 0:
            return None
        block = self.leq_matrix[np.ix_(ids, ids)]
        cols = np.flatnonzero(block.all(axis=0))
        return int(ids[cols[0]]) if len(cols) == 1 else None

    def join(self, a: Hashable, b: Hashable) -> Hashable:
        found = self._least(self.leq_matrix[self.index[a]] & self.leq_matrix[self.index[b]])
        if found is None:
            raise PosetException(f"{a} and {b} have no join")
        return self.nodes[found]

    def meet(self, a: Hashable, b: Hashable) -> Hashable:
        found = self._greatest(self.leq_matrix[:, self.index[a]] & self.leq_matrix[:, self.index[b]])
        if found is None:
            raise PosetException(f"{a} and {b} have no meet")
        return self.nodes[found]

    def join_all(self, items: Iterable[Hashable]) -> Hashable:
        mask = np.ones(len(self.nodes), dtype=bool)
        for item in items:
            mask &= self.leq_matrix[self.index[item]]
        found = self._least(mask)
        if found is None:
            raise PosetException("set has no join")
        return self.nodes[found]

    def meet_all(self, items: Iterable[Hashable]) -> Hashable:
        mask = np.ones(len(self.nodes), dtype=bool)
        for item in items:
            mask &= self.leq_matrix[:, self.index[item]]
        found = self._greatest(mask)
        if found is None:
            raise PosetException("set has no meet")
        return self.nodes[found]

    def is_lattice(self) -> bool:
        if not self.nodes or not self.is_bounded():
            return False
        n = len(self.nodes)
        for i in range(n):
            for j in range(i + 1, n):
                if self._least(self.leq_matrix[i] & self.leq_matrix[j]) is None:
                    return False
                if self._greatest(self.leq_matrix[:, i] & self.leq_matrix[:, j]) is None:
                    return False
        return True

    @cached_property
    def atoms(self) -> List[Hashable]:
        return self.upper_covers(self.bottom())

    @cached_property
    def coatoms(self) -> List[Hashable]:
        return self.lower_covers(self.top())

    def is_atomic(self) -> bool:
        """Every element is the join of the atoms below it."""
        bottom = self.bottom()
        for node in self.nodes:
            below = [a for a in self.atoms if self.leq(a, node)]
            if (self.join_all(below) if below else bottom) != node:
                return False
        return True

    def is_coatomic(self) -> bool:
        top = self.top()
        for node in self.nodes:
            above = [a for a in self.coatoms if self.leq(node, a)]
            if (self.meet_all(above) if above else top) != node:
                return False
        return True

    # Grading and chains

    @cached_property
    def linear_extension(self) -> List[Hashable]:
        below = self.leq_matrix.sum(axis=0)
        order = sorted(range(len(self.nodes)), key=lambda i: (int(below[i]), i))
        return [self.nodes[i] for i in order]

    @cached_property
    def heights(self) -> Dict[Hashable, int]:
        """Length of the longest chain from a minimal element."""
        height: Dict[Hashable, int] = {}
        for node in self.linear_extension:
            lower = self.lower_covers(node)
            height[node] = 1 + max(height[x] for x in lower) if lower else 0
        return height

    def is_graded(self) -> bool:
        return all(self.heights[b] == self.heights[a] + 1 for a, b in self.covers)

    def rank_sizes(self) -> List[int]:
        if not self.nodes:
            return []
        sizes = [0] * (max(self.heights.values()) + 1)
        for h in self.heights.values():
            sizes[h] += 1
        return sizes

    def mobius_from(self, a: Hashable) -> Dict[Hashable, int]:
        """mu(a, x) for every x >= a."""
        values: Dict[Hashable, int] = {}
        for node in self.linear_extension:
            if not self.leq(a, node):
                continue
            if node == a:
                values[node] = 1
                continue
            values[node] = -sum(m for z, m in values.items() if self.leq(z, node))
        return values

    def mobius(self, a: Hashable, b: Hashable) -> int:
        if not self.leq(a, b):
            return 0
        return self.mobius_from(a)[b]

    def maximal_chain_count(self) -> int:
        """Number of saturated chains from bottom to top."""
        count: Dict[Hashable, int] = {}
        bottom = self.bottom()
        for node in self.linear_extension:
            if node == bottom:
                count[node] = 1
                continue
            count[node] = sum(count.get(x, 0) for x in self.lower_covers(node))
        return count[self.top()]

    def maximal_chains(self) -> List[Tuple[Hashable, ...]]:
        top = self.top()
        chains = []
        stack = [(self.bottom(),)]
        while stack:
            chain = stack.pop()
            if chain[-1] == top:
                chains.append(chain)
                continue
            for nxt in self.upper_covers(chain[-1]):
                stack.append(chain + (nxt,))
        return sorted(chains, key=lambda c: [self.index[x] for x in c])

    def chains(self) -> List[Tuple[Hashable, ...]]:
        """All nonempty chains, each listed bottom-up."""
        result = []
        order = self.linear_extension
        position = {node: k for k, node in enumerate(order)}

        def extend(chain):
            result.append(chain)
            last = self.index[chain[-1]]
            for j in np.flatnonzero(self.strict[last]):
                extend(chain + (self.nodes[j],))

        for node in sorted(self.nodes, key=position.get):
            extend((node,))
        return result

    def order_complex_f_vector(self) -> List[int]:
        """f_0, f_1, ... of the order complex (chains by number of elements minus one)."""
        sizes: Dict[int, int] = {}
        for chain in self.chains():
            sizes[len(chain) - 1] = sizes.get(len(chain) - 1, 0) + 1
        return [sizes[k] for k in range(len(sizes))]

    # Derived posets

    def subposet(self, nodes: Iterable[Hashable]) -> 'PosetView':
        chosen = [n for n in self.nodes if n in set(nodes)]
        ids = [self.index[n] for n in chosen]
        return PosetView(chosen, self.leq_matrix[np.ix_(ids, ids)])

    def interval(self, a: Hashable, b: Hashable) -> 'PosetView':
        i, j = self.index[a], self.index[b]
        mask = self.leq_matrix[i] & self.leq_matrix[:, j]
        return self.subposet(self.nodes[k] for k in np.flatnonzero(mask))

    def dual(self) -> 'PosetView':
        return PosetView(self.nodes, self.leq_matrix.T)

    def hasse_graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.nodes)
        graph.add_edges_from(self.covers)
        return graph

    def isomorphism(self, other: 'PosetView') -> Optional[Dict[Hashable, Hashable]]:
        """An order isomorphism self -> other, or None."""
        if len(self) != len(other) or len(self.covers) != len(other.covers):
            return None
        matcher = DiGraphMatcher(self.hasse_graph(), other.hasse_graph())
        for mapping in matcher.isomorphisms_iter():
            return dict(mapping)
        return None

    def is_isomorphic(self, other: 'PosetView') -> bool:
        return self.isomorphism(other) is not None

    def is_order_preserving(self, other: 'PosetView', mapping: Dict[Hashable, Hashable]) -> bool:
        return all(other.leq(mapping[a], mapping[b]) for a, b in self.covers)
