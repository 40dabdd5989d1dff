"""
Exact scalars, linear algebra, polyhedral cones and simplicial arrangements.

Scalars live in a sympy domain: the rationals, or a quadratic field Q(sqrt d).
No floating point is used anywhere; signs of quadratic irrationals are decided
exactly once zero has been excluded.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Any, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import Rational, sqrt, sympify
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from shardlab.engine.errors import ArrangementFileError, BasePointOnHyperplane, DimensionMismatch, NonSimplicialRegion
from shardlab.engine.poset import PosetView

logger = logging.getLogger(__name__)

Vector = Tuple[Any, ...]

BELOW, ON, ABOVE = "below", "on", "above"


class ScalarField:
    """Exact scalar backend: QQ, or QQ(sqrt d) for a square-free d."""

    def __init__(self, d: Optional[int] = None):
        self.d = d
        self.domain = QQ if d is None else QQ.algebraic_field(sqrt(d))
        self.zero = self.domain.zero
        self.one = self.domain.one

    def __repr__(self) -> str:
        return "QQ" if self.d is None else f"QQ<sqrt({self.d})>"

    def __eq__(self, other) -> bool:
        return isinstance(other, ScalarField) and other.d == self.d

    def __hash__(self) -> int:
        return hash(("ScalarField", self.d))

    # Elements

    def convert(self, value: Any) -> Any:
        """Convert an int, Fraction, sympy number or string such as "3/4" or "sqrt(5)/2"."""
        if isinstance(value, str):
            value = sympify(value.strip())
        elif isinstance(value, Fraction):
            value = Rational(value.numerator, value.denominator)
        return self.domain.convert(value)

    def lift(self, x: Any, source: "ScalarField") -> Any:
        if source == self:
            return x
        return self.domain.from_sympy(source.domain.to_sympy(x))

    def sign(self, x: Any) -> int:
        if x == self.zero:
            return 0
        if self.d is None:
            return 1 if x > self.zero else -1
        positive = self.domain.to_sympy(x).is_positive
        if positive is None:
            raise ValueError(f"could not decide the sign of {self.domain.to_sympy(x)}")
        return 1 if positive else -1

    def key(self, x: Any) -> Hashable:
        if self.d is None:
            return (int(x.numerator), int(x.denominator))
        return self.domain.to_sympy(x)

    def to_str(self, x: Any) -> str:
        return str(self.domain.to_sympy(x))

    # Vectors

    def vector(self, values: Iterable[Any]) -> Vector:
        return tuple(self.convert(v) for v in values)

    def vector_key(self, v: Vector) -> Tuple[Hashable, ...]:
        return tuple(self.key(x) for x in v)

    def dot(self, u: Vector, v: Vector) -> Any:
        """Exact inner product."""
        if len(u) != len(v):
            raise DimensionMismatch(f"dimension mismatch: {len(u)} != {len(v)}")
        total = self.zero
        for a, b in zip(u, v):
            total += a * b
        return total

    def add(self, u: Vector, v: Vector) -> Vector:
        if len(u) != len(v):
            raise DimensionMismatch(f"dimension mismatch: {len(u)} != {len(v)}")
        return tuple(a + b for a, b in zip(u, v))

    def scale(self, c: Any, v: Vector) -> Vector:
        return tuple(c * a for a in v)

    def neg(self, v: Vector) -> Vector:
        return tuple(-a for a in v)

    def is_zero(self, v: Vector) -> bool:
        return all(a == self.zero for a in v)

    def vector_sum(self, vectors: Sequence[Vector], dim: int) -> Vector:
        total = tuple(self.zero for _ in range(dim))
        for v in vectors:
            total = self.add(total, v)
        return total

    def primitive(self, v: Vector) -> Vector:
        """Canonical representative of the line through v: first nonzero coordinate positive."""
        lead = next((a for a in v if a != self.zero), None)
        if lead is None:
            raise ValueError("zero vector has no canonical form")
        direction = self.direction(v)
        return direction if self.sign(lead) > 0 else self.neg(direction)

    def direction(self, v: Vector) -> Vector:
        """Canonical representative of the ray through v (positive rescaling only)."""
        lead = next((a for a in v if a != self.zero), None)
        if lead is None:
            raise ValueError("zero vector has no direction")
        if self.d is not None:
            factor = self.one / (lead if self.sign(lead) > 0 else -lead)
            return self.scale(factor, v)
        lcm = 1
        for a in v:
            lcm = lcm * int(a.denominator) // math.gcd(lcm, int(a.denominator))
        ints = [int(a.numerator) * (lcm // int(a.denominator)) for a in v]
        g = 0
        for i in ints:
            g = math.gcd(g, abs(i))
        return tuple(self.domain.convert(i // g) for i in ints)

    # Linear algebra

    def rref(self, rows: Sequence[Vector], ncols: int) -> Tuple[List[List[Any]], Tuple[int, ...]]:
        """Reduced row echelon form over the field, with pivot columns."""
        if not rows:
            return [], ()
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch(f"rows must all have length {ncols}")
        matrix = DomainMatrix([list(r) for r in rows], (len(rows), ncols), self.domain)
        reduced, pivots = matrix.rref()
        entries = [[reduced[i, j].element for j in range(ncols)] for i in range(len(rows))]
        return entries, tuple(pivots)

    def rank(self, rows: Sequence[Vector], ncols: Optional[int] = None) -> int:
        if not rows:
            return 0
        _, pivots = self.rref(rows, ncols if ncols is not None else len(rows[0]))
        return len(pivots)

    def nullspace(self, rows: Sequence[Vector], ncols: int) -> List[Vector]:
        """Basis of {x : r.x = 0 for every row r}."""
        if not rows:
            return [tuple(self.one if i == j else self.zero for j in range(ncols)) for i in range(ncols)]
        reduced, pivots = self.rref(rows, ncols)
        basis = []
        for free in (c for c in range(ncols) if c not in pivots):
            x = [self.zero] * ncols
            x[free] = self.one
            for i, p in enumerate(pivots):
                x[p] = -reduced[i][free]
            basis.append(tuple(x))
        return basis

    def row_basis(self, rows: Sequence[Vector], ncols: int) -> List[Vector]:
        reduced, pivots = self.rref(rows, ncols)
        return [tuple(reduced[i]) for i in range(len(pivots))]

    def in_span(self, rows: Sequence[Vector], v: Vector) -> bool:
        if not rows:
            return self.is_zero(v)
        return self.rank(list(rows) + [v], len(v)) == self.rank(rows, len(v))

    def solve_coordinates(self, basis: Sequence[Vector], v: Vector) -> Vector:
        """Coefficients c with sum c_i basis_i = v; basis must be independent."""
        k, dim = len(basis), len(v)
        columns = [tuple(basis[i][row] for i in range(k)) + (v[row],) for row in range(dim)]
        reduced, pivots = self.rref(columns, k + 1)
        if k in pivots:
            raise ValueError("vector is not in the span of the basis")
        coords = [self.zero] * k
        for i, p in enumerate(pivots):
            coords[p] = reduced[i][k]
        return tuple(coords)


QQ_FIELD = ScalarField()


def field_for(d: Optional[int]) -> ScalarField:
    return QQ_FIELD if d is None else ScalarField(d)


@dataclass(frozen=True)
class Hyperplane:
    """Linear hyperplane {x : normal . x = 0} with a canonical normal."""
    normal: Vector
    index: int


@dataclass(frozen=True)
class Subspace:
    """A linear subspace stored by a row-reduced basis."""
    field: ScalarField
    ambient: int
    basis: Tuple[Vector, ...]

    @classmethod
    def span(cls, field: ScalarField, ambient: int, vectors: Sequence[Vector]) -> 'Subspace':
        return cls(field, ambient, tuple(field.row_basis(list(vectors), ambient)) if vectors else ())

    @classmethod
    def from_equations(cls, field: ScalarField, ambient: int, normals: Sequence[Vector]) -> 'Subspace':
        return cls.span(field, ambient, field.nullspace(list(normals), ambient))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def codim(self) -> int:
        return self.ambient - self.dim

    def annihilator(self) -> List[Vector]:
        return self.field.nullspace(list(self.basis), self.ambient)

    def contains_vector(self, v: Vector) -> bool:
        return self.field.in_span(self.basis, v)

    def contains(self, other: 'Subspace') -> bool:
        return all(self.contains_vector(v) for v in other.basis)

    def key(self) -> Tuple:
        return tuple(self.field.vector_key(v) for v in self.basis)

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self.ambient == other.ambient and self.key() == other.key()

    def __hash__(self) -> int:
        return hash((self.ambient, self.key()))


def side_of(p: Vector, hyperplane: Hyperplane, base: Vector, field: ScalarField = QQ_FIELD) -> str:
    """Position of p relative to a hyperplane, where "below" is the side of the base point."""
    if len(p) != len(hyperplane.normal) or len(base) != len(hyperplane.normal):
        raise DimensionMismatch("point, base and normal must have the same dimension")
    base_sign = field.sign(field.dot(hyperplane.normal, base))
    if base_sign == 0:
        raise BasePointOnHyperplane(hyperplane.index)
    value = field.sign(field.dot(hyperplane.normal, p))
    if value == 0:
        return ON
    return BELOW if value == base_sign else ABOVE


def linear_rank(vectors: Sequence[Vector], field: ScalarField = QQ_FIELD) -> int:
    if not vectors:
        return 0
    dim = len(vectors[0])
    if any(len(v) != dim for v in vectors):
        raise DimensionMismatch("vectors must share a dimension")
    return field.rank(list(vectors), dim)


class Cone:
    """
    Closed polyhedral cone {x : e.x = 0 for e in equalities, a.x >= 0 for a in inequalities}.

    Rays are extreme rays of the pointed part (the intersection with the orthogonal
    complement of the lineality space), each stored by its canonical direction.
    """

    def __init__(self, field: ScalarField, ambient: int,
                 equalities: Sequence[Vector] = (), inequalities: Sequence[Vector] = ()):
        for v in list(equalities) + list(inequalities):
            if len(v) != ambient:
                raise DimensionMismatch(f"constraint of length {len(v)} in a cone of dimension {ambient}")
        self.field = field
        self.ambient = ambient
        self.equalities = tuple(v for v in equalities if not field.is_zero(v))
        self.inequalities = tuple(v for v in inequalities if not field.is_zero(v))

    @classmethod
    def from_hyperplanes(cls, field: ScalarField, ambient: int,
                         equalities: Sequence[Hyperplane] = (),
                         inequalities: Sequence[Tuple[Hyperplane, int]] = ()) -> 'Cone':
        """Inequalities are (hyperplane, side) pairs, side +1 for normal.x >= 0 and -1 for <= 0."""
        return cls(field, ambient,
                   [h.normal for h in equalities],
                   [h.normal if side > 0 else field.neg(h.normal) for h, side in inequalities])

    def __repr__(self) -> str:
        return f"Cone(dim={self.dim}, rays={len(self.rays)}, lineality={len(self.lineality)})"

    @cached_property
    def lineality(self) -> List[Vector]:
        return self.field.nullspace(list(self.equalities) + list(self.inequalities), self.ambient)

    @cached_property
    def rays(self) -> List[Vector]:
        field = self.field
        fixed = list(self.equalities) + list(self.lineality)
        needed = self.ambient - 1 - field.rank(fixed, self.ambient)
        found: Dict[Tuple, Vector] = {}
        if needed < 0:
            return []
        for tight in combinations(self.inequalities, needed):
            null = field.nullspace(fixed + list(tight), self.ambient)
            if len(null) != 1:
                continue
            for candidate in (null[0], field.neg(null[0])):
                if all(field.sign(field.dot(a, candidate)) >= 0 for a in self.inequalities):
                    ray = field.direction(candidate)
                    found[field.vector_key(ray)] = ray
        return [found[k] for k in sorted(found, key=str)]

    @cached_property
    def dim(self) -> int:
        return self.field.rank(self.rays + self.lineality, self.ambient) if (self.rays or self.lineality) else 0

    @property
    def codim(self) -> int:
        return self.ambient - self.dim

    def generators(self) -> List[Vector]:
        return self.rays + self.lineality + [self.field.neg(v) for v in self.lineality]

    def linear_span(self) -> Subspace:
        return Subspace.span(self.field, self.ambient, self.rays + self.lineality)

    def lineality_space(self) -> Subspace:
        return Subspace.span(self.field, self.ambient, self.lineality)

    def contains_point(self, p: Vector) -> bool:
        field = self.field
        return (all(field.dot(e, p) == field.zero for e in self.equalities)
                and all(field.sign(field.dot(a, p)) >= 0 for a in self.inequalities))

    def contains(self, other: 'Cone') -> bool:
        return all(self.contains_point(g) for g in other.generators())

    def same_as(self, other: 'Cone') -> bool:
        return self.contains(other) and other.contains(self)

    def interior_point(self) -> Vector:
        """A point in the relative interior: sum of the rays (lineality adds nothing)."""
        return self.field.vector_sum(self.rays, self.ambient)

    def intersect(self, other: 'Cone') -> 'Cone':
        return Cone(self.field, self.ambient,
                    self.equalities + other.equalities, self.inequalities + other.inequalities)

    def key(self) -> Tuple:
        return (tuple(sorted(str(self.field.vector_key(r)) for r in self.rays)),
                self.lineality_space().key())

    def faces(self) -> PosetView:
        """Face poset by inclusion; each node is a ray-set key and carries its face Cone."""
        field = self.field
        all_rays = frozenset(range(len(self.rays)))
        tight_sets = []
        for a in self.inequalities:
            tight_sets.append(frozenset(i for i, r in enumerate(self.rays) if field.dot(a, r) == field.zero))
        ray_sets = {all_rays}
        for tight in tight_sets:
            ray_sets |= {rs & tight for rs in ray_sets}
        faces: Dict[frozenset, Cone] = {}
        for rs in ray_sets:
            tight = [a for a, t in zip(self.inequalities, tight_sets) if rs <= t]
            loose = [a for a, t in zip(self.inequalities, tight_sets) if not rs <= t]
            faces[rs] = Cone(field, self.ambient, list(self.equalities) + tight, loose)
        nodes = sorted(faces, key=lambda rs: (len(rs), sorted(rs)))
        view = PosetView.from_relation(nodes, lambda a, b: a <= b)
        view.payload = {rs: faces[rs] for rs in nodes}
        return view

    def is_eulerian(self) -> bool:
        """Alternating sum of face counts by dimension vanishes (pointed cones of positive dimension)."""
        view = self.faces()
        return sum((-1) ** view.payload[rs].dim for rs in view.nodes) == 0


def flats_by_rank(hyperplane_count: int, closure, rank_of) -> Dict[int, List[int]]:
    """All flats of an arrangement, as hyperplane masks grouped by rank."""
    flats = {0: [0]}
    seen = {0}
    frontier = [0]
    rank = 0
    while frontier:
        rank += 1
        nxt = []
        for flat in frontier:
            for h in range(hyperplane_count):
                if flat >> h & 1:
                    continue
                bigger = closure(flat | (1 << h))
                if bigger not in seen:
                    seen.add(bigger)
                    nxt.append(bigger)
        if nxt:
            flats[rank] = sorted(nxt)
        frontier = sorted(nxt)
    return flats


def zaslavsky_region_count(hyperplane_count: int, closure, rank_of) -> int:
    """Number of regions as the sum of |mu(0, X)| over flats X."""
    by_rank = flats_by_rank(hyperplane_count, closure, rank_of)
    mu: Dict[int, int] = {}
    for rank in sorted(by_rank):
        for flat in by_rank[rank]:
            if flat == 0:
                mu[flat] = 1
                continue
            mu[flat] = -sum(m for f, m in mu.items() if f != flat and f & flat == f)
    return sum(abs(m) for m in mu.values())


@dataclass(frozen=True)
class Region:
    """A region of an arrangement: separating set, extreme rays and facet hyperplanes."""
    sep: int
    rays: Tuple[Vector, ...]
    facets: Tuple[int, ...]


class Arrangement:
    """
    Central, essential, simplicial hyperplane arrangement over an exact field.

    Regions are enumerated at construction by walking facets from the base region,
    and every region is checked to be simplicial.
    """

    def __init__(self, field: ScalarField, hyperplanes: Sequence[Hyperplane], base_point: Vector,
                 source_indices: Optional[Sequence[int]] = None, validate: bool = True):
        self.field = field
        self.hyperplanes = list(hyperplanes)
        self.base_point = tuple(base_point)
        self.dim = len(self.base_point)
        self.source_indices = list(source_indices) if source_indices is not None else list(range(len(hyperplanes)))
        self.base_signs = []
        for h in self.hyperplanes:
            s = field.sign(field.dot(h.normal, self.base_point))
            if s == 0:
                raise BasePointOnHyperplane(h.index)
            self.base_signs.append(s)
        self.rank = field.rank([h.normal for h in self.hyperplanes], self.dim) if self.hyperplanes else 0
        self._closure: Dict[int, int] = {}
        if validate:
            self.regions

    def __repr__(self) -> str:
        return f"Arrangement(hyperplanes={len(self.hyperplanes)}, rank={self.rank}, field={self.field})"

    # Region-system interface

    @property
    def hyperplane_count(self) -> int:
        return len(self.hyperplanes)

    @property
    def size(self) -> int:
        return len(self.regions)

    @cached_property
    def seps(self) -> List[int]:
        return [r.sep for r in self.regions]

    def normals(self) -> List[Vector]:
        return [h.normal for h in self.hyperplanes]

    def flat_closure(self, mask: int) -> int:
        """All hyperplanes containing the intersection of the hyperplanes in mask."""
        if mask in self._closure:
            return self._closure[mask]
        rows = [self.hyperplanes[h].normal for h in range(self.hyperplane_count) if mask >> h & 1]
        rank = self.field.rank(rows, self.dim) if rows else 0
        closed = mask
        for h, hyperplane in enumerate(self.hyperplanes):
            if not closed >> h & 1 and rows and self.field.rank(rows + [hyperplane.normal], self.dim) == rank:
                closed |= 1 << h
        self._closure[mask] = closed
        return closed

    def flat_rank(self, mask: int) -> int:
        rows = [self.hyperplanes[h].normal for h in range(self.hyperplane_count) if mask >> h & 1]
        return self.field.rank(rows, self.dim) if rows else 0

    @cached_property
    def basic_hyperplanes(self) -> List[int]:
        return list(self.regions[0].facets)

    @property
    def identity(self) -> int:
        return 0

    @cached_property
    def longest(self) -> int:
        return self.region_index[(1 << self.hyperplane_count) - 1]

    def facets(self, i: int) -> List[int]:
        return list(self.regions[i].facets)

    def label(self, i: int) -> str:
        return f"R{i}"

    # Geometry

    @cached_property
    def candidate_rays(self) -> List[Vector]:
        """Both directions of every rank-(n-1) flat."""
        field, n = self.field, self.dim
        if n == 1:
            return [(field.one,), (-field.one,)]
        by_rank = flats_by_rank(self.hyperplane_count, self.flat_closure, self.flat_rank)
        rays: Dict[Tuple, Vector] = {}
        for flat in by_rank.get(n - 1, []):
            rows = [self.hyperplanes[h].normal for h in range(self.hyperplane_count) if flat >> h & 1]
            null = field.nullspace(rows, n)
            if len(null) != 1:
                continue
            for v in (null[0], field.neg(null[0])):
                d = field.direction(v)
                rays[field.vector_key(d)] = d
        return [rays[k] for k in sorted(rays, key=str)]

    @cached_property
    def ray_signs(self) -> np.ndarray:
        """int8 matrix: sign of normal_h . ray_r, oriented so that +1 is the base side."""
        signs = np.zeros((len(self.candidate_rays), self.hyperplane_count), dtype=np.int8)
        for i, ray in enumerate(self.candidate_rays):
            for h, hyperplane in enumerate(self.hyperplanes):
                signs[i, h] = self.field.sign(self.field.dot(hyperplane.normal, ray)) * self.base_signs[h]
        signs.flags.writeable = False
        return signs

    def orientation(self, sep: int) -> np.ndarray:
        return np.array([-1 if sep >> h & 1 else 1 for h in range(self.hyperplane_count)], dtype=np.int8)

    def _region(self, sep: int) -> Region:
        field, n = self.field, self.dim
        oriented = self.ray_signs * self.orientation(sep)
        inside = np.flatnonzero(np.all(oriented >= 0, axis=1))
        rays = tuple(self.candidate_rays[i] for i in inside)
        facets = []
        for h in range(self.hyperplane_count):
            on = [self.candidate_rays[i] for i in inside if self.ray_signs[i, h] == 0]
            if (field.rank(on, n) if on else 0) == n - 1:
                facets.append(h)
        if len(rays) != n or len(facets) != n:
            raise NonSimplicialRegion(sep, f"{len(rays)} rays and {len(facets)} facets in dimension {n}")
        if field.rank([self.hyperplanes[h].normal for h in facets], n) != n:
            raise NonSimplicialRegion(sep, "facet normals are dependent")
        return Region(sep, rays, tuple(facets))

    @cached_property
    def regions(self) -> List[Region]:
        """Regions in breadth-first order from the base region."""
        if self.rank != self.dim:
            raise ValueError("arrangement must be essential; ingest it to project it first")
        start = self._region(0)
        regions = [start]
        seen = {0: 0}
        queue = [start]
        while queue:
            region = queue.pop(0)
            for h in region.facets:
                sep = region.sep ^ (1 << h)
                if sep not in seen:
                    nxt = self._region(sep)
                    seen[sep] = len(regions)
                    regions.append(nxt)
                    queue.append(nxt)
        logger.debug(f"Enumerated {len(regions)} regions of {self!r}")
        return regions

    @cached_property
    def region_index(self) -> Dict[int, int]:
        return {r.sep: i for i, r in enumerate(self.regions)}

    def region_count_by_flats(self) -> int:
        return zaslavsky_region_count(self.hyperplane_count, self.flat_closure, self.flat_rank)

    def region_of(self, sep: int) -> Region:
        return self.regions[self.region_index[sep]]

    def interior_point(self, sep: int) -> Vector:
        return self.field.vector_sum(self.region_of(sep).rays, self.dim)

    def facet_point(self, sep: int, h: int) -> Vector:
        """Relative-interior point of the facet of a region lying in hyperplane h."""
        region = self.region_of(sep)
        on = [r for r in region.rays if self.field.dot(self.hyperplanes[h].normal, r) == self.field.zero]
        if len(on) != self.dim - 1:
            raise ValueError(f"hyperplane {h} is not a facet of region {sep}")
        return self.field.vector_sum(on, self.dim)

    def sep_of_point(self, p: Vector) -> int:
        """Separating set of a point off every hyperplane."""
        sep = 0
        for h, hyperplane in enumerate(self.hyperplanes):
            s = self.field.sign(self.field.dot(hyperplane.normal, p))
            if s == 0:
                raise ValueError(f"point lies on hyperplane {h}")
            if s != self.base_signs[h]:
                sep |= 1 << h
        return sep

    def side(self, h: int, below: bool) -> Tuple[Hyperplane, int]:
        """(hyperplane, side) pair for the closed half-space on (or opposite) the base side."""
        return self.hyperplanes[h], self.base_signs[h] if below else -self.base_signs[h]

    def region_cone(self, sep: int) -> Cone:
        sides = [self.side(h, not sep >> h & 1) for h in self.region_of(sep).facets]
        return Cone.from_hyperplanes(self.field, self.dim, inequalities=sides)


def _canonical_hyperplanes(field: ScalarField, normals: Sequence[Vector]) -> Tuple[List[Vector], List[int]]:
    seen: Dict[Tuple, int] = {}
    kept, origin = [], []
    for i, normal in enumerate(normals):
        if field.is_zero(normal):
            raise ValueError(f"normal {i} is zero")
        canonical = field.primitive(normal)
        key = field.vector_key(canonical)
        if key in seen:
            logger.warning(f"Normal {i} repeats hyperplane {seen[key]}; keeping one copy")
            continue
        seen[key] = i
        kept.append(canonical)
        origin.append(i)
    return kept, origin


def ingest_arrangement(normals: Sequence[Sequence[Any]], base_point: Sequence[Any],
                       field: ScalarField = QQ_FIELD) -> Arrangement:
    """
    Validate and build an arrangement from raw normals and a base point.

    The arrangement is projected onto the span of its normals so that it is essential;
    inequalities and separating sets are unchanged by the projection.
    """
    vectors = [tuple(field.convert(x) for x in normal) for normal in normals]
    base = tuple(field.convert(x) for x in base_point)
    for i, v in enumerate(vectors):
        if len(v) != len(base):
            raise DimensionMismatch(f"normal {i} has dimension {len(v)}, base point has {len(base)}")
    kept, origin = _canonical_hyperplanes(field, vectors)
    for normal, i in zip(kept, origin):
        if field.dot(normal, base) == field.zero:
            raise BasePointOnHyperplane(i)
    dim = len(base)
    basis = field.row_basis(kept, dim) if kept else []
    if len(basis) < dim:
        logger.info(f"Projecting arrangement from dimension {dim} onto its rank {len(basis)}")
        projected = [field.primitive(field.solve_coordinates(basis, v)) for v in kept]
        base = tuple(field.dot(b, base) for b in basis)
        kept = projected
    hyperplanes = [Hyperplane(normal, i) for i, normal in enumerate(kept)]
    arrangement = Arrangement(field, hyperplanes, base, source_indices=origin)
    logger.info(f"Ingested {arrangement!r} with {arrangement.size} regions")
    return arrangement


def full_subarrangement(arrangement: Arrangement, X: Union[Subspace, Cone]) -> Arrangement:
    """
    Hyperplanes of the arrangement containing X, with the base region they inherit.

    The result is projected to be essential; its source_indices name the parent
    hyperplanes, so `basic_hyperplanes` of the result map back through them.
    """
    field = arrangement.field
    generators = list(X.basis) if isinstance(X, Subspace) else X.generators()
    members = [h for h in arrangement.hyperplanes
               if all(field.dot(h.normal, g) == field.zero for g in generators)]
    if not members:
        return Arrangement(field, [], (), source_indices=[], validate=False)
    basis = field.row_basis([h.normal for h in members], arrangement.dim)
    projected = [Hyperplane(field.primitive(field.solve_coordinates(basis, h.normal)), i)
                 for i, h in enumerate(members)]
    base = tuple(field.dot(b, arrangement.base_point) for b in basis)
    return Arrangement(field, projected, base, source_indices=[h.index for h in members])


def basic_of_subarrangement(sub: Arrangement) -> List[int]:
    """Parent indices of the facet hyperplanes of the sub-arrangement region containing the base."""
    if not sub.hyperplanes:
        return []
    return sorted(sub.source_indices[h] for h in sub.basic_hyperplanes)


def parse_arrangement_file(path: str) -> Tuple[List[List[Fraction]], List[Fraction]]:
    """
    Read the text format: the first data line is the base point, then one normal per line.

    Entries are rationals such as 2 or -3/4; '#' starts a comment.
    """
    rows = []
    try:
        with open(path, encoding="utf-8") as handle:
            for number, line in enumerate(handle, start=1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                try:
                    rows.append([Fraction(token) for token in line.split()])
                except ValueError:
                    raise ArrangementFileError(f"{path}:{number}: entries must be rationals, got {line!r}")
    except OSError as e:
        raise ArrangementFileError(f"{path}: {e.strerror or e}")
    if not rows:
        raise ArrangementFileError(f"{path}: no base point")
    if len(rows) == 1:
        raise ArrangementFileError(f"{path}: no hyperplanes after the base point")
    return rows[1:], rows[0]


def load_arrangement(path: str) -> Arrangement:
    normals, base = parse_arrangement_file(path)
    logger.info(f"Loading {len(normals)} hyperplanes from {path}")
    return ingest_arrangement(normals, base, QQ_FIELD)
