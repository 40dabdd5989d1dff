"""
Fans, their dual cell complexes and pulling triangulations.

The dual of a complete simplicial fan is handled purely combinatorially: a cell
is the set of maximal cones containing a face of the fan, the origin giving the
top cell of the ball. Pulling needs only these vertex sets and a vertex order.
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Callable, Dict, FrozenSet, Hashable, Iterable, List, Optional, Set, Tuple

import networkx as nx

from shardlab.config.settings import settings
from shardlab.engine.congruence import Congruence
from shardlab.engine.errors import NoPreimage, NoUniqueMinimalVertex
from shardlab.engine.shardorder import ShardOrder
from shardlab.engine.shards import geometry_of
from shardlab.engine.weakorder import WeakOrder, popcount

logger = logging.getLogger(__name__)

Cell = FrozenSet[int]


def ambient_rank(weak: WeakOrder) -> int:
    return weak.system.flat_rank(weak.full) if weak.full else 0


@dataclass(frozen=True)
class FanFace:
    """A face of a fan: the maximal cones containing it, its dimension and its flat."""
    cell: Cell
    dim: int
    flat: int = 0


@dataclass
class FanFacePoset:
    rank: int
    faces: List[FanFace]

    def __len__(self) -> int:
        return len(self.faces)

    @cached_property
    def by_cell(self) -> Dict[Cell, FanFace]:
        return {f.cell: f for f in self.faces}

    def counts_by_dim(self) -> List[int]:
        """Number of faces of each dimension, from the maximal cones down to dimension 0."""
        counts = [0] * (self.rank + 1)
        for f in self.faces:
            counts[self.rank - f.dim] += 1
        return counts

    def cells(self) -> Dict[Cell, int]:
        """Dual cells with their dimension; the face at the origin is the top cell."""
        return {f.cell: self.rank - f.dim for f in self.faces}

    def to_dict(self) -> Dict:
        return {"rank": self.rank, "faces": len(self.faces), "counts_by_codim": self.counts_by_dim()}


def coxeter_fan_faces(weak: WeakOrder) -> FanFacePoset:
    """Faces as facial intervals: a region R with a subset K of its lower facets, dimension n - |K|."""
    n = ambient_rank(weak)
    faces = []
    for w in range(weak.size):
        lower = weak.lower_hyperplanes(w)
        for size in range(len(lower) + 1):
            for K in combinations(lower, size):
                interval = weak.facial_interval(w, K)
                faces.append(FanFace(frozenset(interval.members), n - size, interval.flat))
    logger.info(f"Fan with {len(faces)} faces")
    return FanFacePoset(n, faces)


def fan_faces_by_facets(weak: WeakOrder) -> Set[Cell]:
    """Every face of every region, enumerated through all subsets of its facets."""
    cells = set()
    for w in range(weak.size):
        facets = weak.system.facets(w)
        for size in range(len(facets) + 1):
            for S in combinations(facets, size):
                cells.add(frozenset(weak.facial_interval(w, S).members))
    return cells


def geometric_fan_counts(weak: WeakOrder) -> Optional[List[int]]:
    """Face counts by codimension from exact face enumeration of every region cone."""
    arrangement = geometry_of(weak.system)
    if arrangement is None or arrangement.rank > settings.GEOMETRY_MAX_RANK:
        return None
    return _face_counts([arrangement.region_cone(sep) for sep in weak.seps], arrangement.dim)


def _face_counts(cones, dim: int) -> List[int]:
    seen: Dict[Tuple, int] = {}
    for cone in cones:
        view = cone.faces()
        for rs in view.nodes:
            face = view.payload[rs]
            seen[face.key()] = face.dim
    counts = [0] * (dim + 1)
    for d in seen.values():
        counts[dim - d] += 1
    return counts


def shelling_interval_partition(weak: WeakOrder) -> Dict:
    """Each face F lies in exactly one interval [G(R), R], G(R) the intersection of the lower facets of R."""
    faces = fan_faces_by_facets(weak)
    owners: Dict[Cell, int] = {cell: 0 for cell in faces}
    for w in range(weak.size):
        lower = weak.lower_hyperplanes(w)
        for size in range(len(lower) + 1):
            for K in combinations(lower, size):
                cell = frozenset(weak.facial_interval(w, K).members)
                owners[cell] = owners.get(cell, 0) + 1
    bad = [cell for cell, count in owners.items() if count != 1]
    return {"faces": len(faces), "intervals": weak.size, "partition": not bad and len(owners) == len(faces)}


# Quotient fans

def quotient_fan(congruence: Congruence, fan: Optional[FanFacePoset] = None) -> FanFacePoset:
    """
    Faces of the coarsened fan, each recorded by the classes meeting a Coxeter-fan face.

    Cells are sets of class indices; the dimension is the largest over the preimages.
    """
    fan = fan if fan is not None else coxeter_fan_faces(congruence.weak)
    merged: Dict[Cell, FanFace] = {}
    for face in fan.faces:
        cell = frozenset(congruence.node_to_class[x] for x in face.cell)
        known = merged.get(cell)
        if known is None or face.dim > known.dim:
            merged[cell] = FanFace(cell, face.dim, face.flat)
    return FanFacePoset(fan.rank, list(merged.values()))


def quotient_fan_interval_failures(congruence: Congruence, qfan: FanFacePoset) -> List[Cell]:
    """Faces whose set of maximal cones is not an interval of the quotient lattice."""
    weak = congruence.weak
    failures = []
    for face in qfan.faces:
        bottoms = [congruence.class_bottom[i] for i in face.cell]
        low = [b for b in bottoms if all(weak.leq(b, x) for x in bottoms)]
        high = [b for b in bottoms if all(weak.leq(x, b) for x in bottoms)]
        if len(low) != 1 or len(high) != 1:
            failures.append(face.cell)
            continue
        between = {i for i, b in enumerate(congruence.class_bottom) if weak.leq(low[0], b) and weak.leq(b, high[0])}
        if between != set(face.cell):
            failures.append(face.cell)
    return failures


def geometric_quotient_counts(congruence: Congruence) -> Optional[List[int]]:
    arrangement = geometry_of(congruence.weak.system)
    if arrangement is None or arrangement.rank > settings.GEOMETRY_MAX_RANK:
        return None
    return _face_counts([congruence.class_cone(i) for i in range(len(congruence.classes))], arrangement.dim)


def star_property_failures(qfan: FanFacePoset) -> List[Cell]:
    """
    Codimension-2 faces whose star is not a rank-two Cambrian fan.

    With m hyperplanes through the face, the star has m + 2 maximal cones and
    walking across its codimension-1 faces visits them in a single cycle.
    """
    ridges = [f.cell for f in qfan.faces if f.dim == qfan.rank - 1 and len(f.cell) == 2]
    failures = []
    for face in qfan.faces:
        if face.dim != qfan.rank - 2:
            continue
        size = popcount(face.flat) + 2
        if len(face.cell) != size:
            failures.append(face.cell)
            continue
        star = nx.Graph()
        star.add_nodes_from(face.cell)
        star.add_edges_from(tuple(r) for r in ridges if r <= face.cell)
        if not nx.is_isomorphic(star, nx.cycle_graph(size)):
            failures.append(face.cell)
    return failures



# Pulling

@dataclass
class PulledTriangulation:
    simplices: Set[FrozenSet[Hashable]]

    @cached_property
    def all_simplices(self) -> Set[FrozenSet[Hashable]]:
        """Every nonempty face of every simplex."""
        out = set()
        for s in self.simplices:
            items = sorted(s, key=repr)
            for size in range(1, len(items) + 1):
                out.update(frozenset(c) for c in combinations(items, size))
        return out

    @property
    def f_vector(self) -> List[int]:
        sizes: Dict[int, int] = {}
        for s in self.all_simplices:
            sizes[len(s) - 1] = sizes.get(len(s) - 1, 0) + 1
        return [sizes.get(k, 0) for k in range(max(sizes) + 1)] if sizes else []

    def maximal_count(self) -> int:
        return len(self.simplices)

    def to_dict(self, label: Callable[[Hashable], str] = str) -> Dict:
        return {"f_vector": self.f_vector, "f_minus_1": 1,
                "simplices": sorted(sorted(label(v) for v in s) for s in self.simplices)}


def pulling_triangulation(cells: Dict[Cell, int], precedes: Callable[[Hashable, Hashable], bool]) -> PulledTriangulation:
    """
    Pulling triangulation of a regular cell complex given by vertex sets and dimensions.

    The maximal cells are triangulated; precedes(u, v) means u comes before v.
    """
    by_dim: Dict[int, List[Cell]] = {}
    for cell, d in cells.items():
        by_dim.setdefault(d, []).append(cell)
    memo: Dict[Cell, Set[FrozenSet]] = {}

    def first_vertex(cell: Cell):
        minima = [v for v in cell if not any(precedes(u, v) for u in cell if u != v)]
        if len(minima) != 1:
            raise NoUniqueMinimalVertex(cell, minima)
        return minima[0]

    def pull(cell: Cell) -> Set[FrozenSet]:
        if cell in memo:
            return memo[cell]
        d = cells[cell]
        if d == 0:
            memo[cell] = {frozenset(cell)}
            return memo[cell]
        v0 = first_vertex(cell)
        out = set()
        for facet in by_dim.get(d - 1, []):
            if facet < cell and v0 not in facet:
                out.update(s | {v0} for s in pull(facet))
        memo[cell] = out
        return out

    top = [c for c in cells if not any(c < other for other in cells)]
    simplices = set()
    for cell in top:
        simplices |= pull(cell)
    return PulledTriangulation(simplices)


def reverse_weak_order(weak: WeakOrder) -> Callable[[int, int], bool]:
    return lambda u, v: u != v and weak.leq(v, u)


def coxeter_triangulation(weak: WeakOrder, fan: Optional[FanFacePoset] = None) -> PulledTriangulation:
    fan = fan if fan is not None else coxeter_fan_faces(weak)
    return pulling_triangulation(fan.cells(), reverse_weak_order(weak))


def quotient_triangulation(congruence: Congruence, qfan: Optional[FanFacePoset] = None) -> PulledTriangulation:
    """Pulling triangulation of the dual ball of the quotient fan; vertices are class bottoms."""
    qfan = qfan if qfan is not None else quotient_fan(congruence)
    bottom = congruence.class_bottom
    cells = {frozenset(bottom[i] for i in f.cell): qfan.rank - f.dim for f in qfan.faces}
    return pulling_triangulation(cells, reverse_weak_order(congruence.weak))


# The chain-to-simplex map

def delta_map(order: ShardOrder, chain: Iterable[int]) -> FrozenSet[int]:
    """Simplex of the pulled triangulation attached to a chain of the shard intersection order."""
    weak = order.weak
    rest = set(chain)
    out = set()
    if weak.top in rest:
        out.add(weak.top)
        rest.discard(weak.top)
    if not rest:
        return frozenset(out)
    R = max(rest, key=order.rank)
    system, local, _ = order.sub_context(R)
    for x in delta_map(local, [order.translate(R, u) for u in rest]):
        out.add(system.parent_elements[x])
    return frozenset(out)


def gamma_map(order: ShardOrder, simplex: Iterable[int]) -> FrozenSet[int]:
    """Inverse of delta_map."""
    weak = order.weak
    rest = set(simplex)
    out = set()
    if weak.top in rest:
        out.add(weak.top)
        rest.discard(weak.top)
    if not rest:
        return frozenset(out)
    tops = [x for x in rest if all(weak.leq(y, x) for y in rest)]
    if len(tops) != 1:
        raise NoPreimage(f"simplex {sorted(weak.label(x) for x in rest)} has no largest vertex")
    R = tops[0]
    system, local, _ = order.sub_context(R)
    if not all(x in system.local_element for x in rest):
        raise NoPreimage(f"simplex leaves the cell below {weak.label(R)}")
    for y in gamma_map(local, [system.local_element[x] for x in rest]):
        out.add(order.untranslate(R, y))
    return frozenset(out)


@dataclass
class DeltaReport:
    chains: int
    simplices: int
    bijective: bool
    dimension_preserving: bool
    round_trip: bool
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.bijective and self.dimension_preserving and self.round_trip


def check_delta(order: ShardOrder, triangulation: PulledTriangulation) -> DeltaReport:
    chains = order.poset.chains()
    images = {}
    failures = []
    for chain in chains:
        try:
            images[chain] = delta_map(order, chain)
        except Exception as e:
            failures.append(f"delta failed on {[order.weak.label(x) for x in chain]}: {e}")
    targets = triangulation.all_simplices
    image_set = set(images.values())
    bijective = image_set == targets and len(image_set) == len(images) == len(chains)
    dims = all(len(s) == len(c) for c, s in images.items())
    round_trip = True
    for chain, simplex in images.items():
        try:
            if gamma_map(order, simplex) != frozenset(chain):
                round_trip = False
        except NoPreimage as e:
            round_trip = False
            failures.append(str(e))
    return DeltaReport(len(chains), len(targets), bijective, dims, round_trip, failures)


def check_quotient_delta(order: ShardOrder, congruence: Congruence, triangulation: PulledTriangulation,
                         full: Optional[PulledTriangulation] = None) -> DeltaReport:
    """
    delta on chains of bottoms, read through the classes, matches the quotient triangulation.

    The way back lifts each quotient simplex to the simplices of the full
    triangulation with the same classes and applies gamma there; exactly one
    lift must return a chain of bottoms, and it must be the chain delta started from.
    """
    full = full if full is not None else coxeter_triangulation(order.weak)
    poset = order.poset.subposet(congruence.bottoms)
    chains = poset.chains()
    images = {}
    for chain in chains:
        images[chain] = frozenset(congruence.pi_down(x) for x in delta_map(order, chain))
    targets = triangulation.all_simplices
    image_set = set(images.values())
    bijective = image_set == targets and len(image_set) == len(chains)
    dims = all(len(s) == len(c) for c, s in images.items())

    lifts: Dict[FrozenSet[int], List[FrozenSet[int]]] = {}
    for sigma in full.all_simplices:
        projected = frozenset(congruence.pi_down(x) for x in sigma)
        if len(projected) == len(sigma):
            lifts.setdefault(projected, []).append(sigma)
    bottoms = set(congruence.bottoms)
    preimage = {simplex: frozenset(chain) for chain, simplex in images.items()}
    failures = []
    round_trip = True
    for simplex in targets:
        back = set()
        for sigma in lifts.get(simplex, []):
            try:
                chain = gamma_map(order, sigma)
            except NoPreimage:
                continue
            if chain <= bottoms:
                back.add(chain)
        if back != ({preimage[simplex]} if simplex in preimage else set()) or not back:
            round_trip = False
            failures.append(f"gamma gives {len(back)} chains of bottoms for {sorted(order.weak.label(x) for x in simplex)}")
    return DeltaReport(len(chains), len(targets), bijective, dims, round_trip, failures)



@dataclass
class SubcomplexProbe:
    subcomplex: bool
    induced: bool


def subcomplex_probe(full: PulledTriangulation, quotient: PulledTriangulation,
                     congruence: Congruence) -> SubcomplexProbe:
    """Whether the quotient triangulation, with classes read as their bottoms, sits inside the full one."""
    inside = quotient.all_simplices <= full.all_simplices
    bottoms = set(congruence.bottoms)
    induced = inside and all(s in quotient.all_simplices for s in full.all_simplices if s <= bottoms)
    return SubcomplexProbe(inside, induced)
