"""
Finite Coxeter groups as reflection groups.

Roots are stored in simple-root coordinates; an element is identified by its
inversion set, a bitmask over positive-root indices, and acts on roots through a
table of signed root indices (root r is r, its negative is r + N).
"""
import logging
import re
from dataclasses import dataclass, field as dataclass_field
from functools import cached_property
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from shardlab.config.settings import settings
from shardlab.engine.errors import UnsupportedType
from shardlab.engine.exactgeom import (
    QQ_FIELD,
    Arrangement,
    Hyperplane,
    ScalarField,
    Subspace,
    Vector,
    field_for,
)

logger = logging.getLogger(__name__)

GOLDEN = "(1+sqrt(5))/2"

_TYPE_PATTERN = re.compile(r"^(A|B|C|D|F|G|H|I2)(\d+)?(?:\((\d+)\))?$")


@dataclass(frozen=True)
class CoxeterType:
    """A finite Coxeter type: a product of irreducible factors (family, rank or m)."""
    factors: Tuple[Tuple[str, int], ...]

    @classmethod
    def parse(cls, text: str) -> 'CoxeterType':
        """Parse strings like "A3", "B3", "I2(5)", "H3" or "A1xA1"."""
        if not text or not text.strip():
            raise UnsupportedType("empty Coxeter type")
        factors = []
        for part in re.split(r"[x×*]", text.replace(" ", "")):
            match = _TYPE_PATTERN.match(part)
            if not match:
                raise UnsupportedType(f"cannot parse Coxeter type {part!r}")
            family, rank, m = match.groups()
            if family == "I2":
                if m is None or rank is not None:
                    raise UnsupportedType(f"dihedral type needs the form I2(m): {part!r}")
                if int(m) < 2:
                    raise UnsupportedType(f"I2(m) needs m >= 2: {part!r}")
                factors.append(("I2", int(m)))
                continue
            if m is not None or rank is None:
                raise UnsupportedType(f"cannot parse Coxeter type {part!r}")
            n = int(rank)
            family = "B" if family == "C" else family
            valid = {
                "A": n >= 1,
                "B": n >= 2,
                "D": n >= 4,
                "F": n == 4,
                "G": n == 2,
                "H": n in (3, 4),
            }[family]
            if not valid:
                raise UnsupportedType(f"no finite Coxeter type {part!r}")
            factors.append((family, n))
        return cls(tuple(factors))

    def __str__(self) -> str:
        return "x".join(f"I2({r})" if f == "I2" else f"{f}{r}" for f, r in self.factors)

    @staticmethod
    def factor_rank(factor: Tuple[str, int]) -> int:
        return 2 if factor[0] == "I2" else factor[1]

    @property
    def rank(self) -> int:
        return sum(self.factor_rank(f) for f in self.factors)

    @property
    def is_irreducible(self) -> bool:
        return len(self.factors) == 1

    @property
    def is_type_a(self) -> bool:
        return self.is_irreducible and self.factors[0][0] == "A"

    @property
    def is_crystallographic(self) -> bool:
        return all(f in "ABDFG" or (f == "I2" and m in (2, 3, 4, 6)) for f, m in self.factors)

    @property
    def needs_sqrt5(self) -> bool:
        return any(f == "H" or (f == "I2" and m == 5) for f, m in self.factors)

    @property
    def is_geometric(self) -> bool:
        """Every factor has an exact realisation over QQ or QQ(sqrt 5)."""
        return all(f != "I2" or m in (2, 3, 4, 5, 6) for f, m in self.factors)


def _chain_gram(n: int, diagonal: Sequence[str], off: Dict[Tuple[int, int], str]) -> List[List[str]]:
    gram = [["0"] * n for _ in range(n)]
    for i in range(n):
        gram[i][i] = diagonal[i]
    for (i, j), value in off.items():
        gram[i][j] = gram[j][i] = value
    return gram


def _factor_data(family: str, n: int) -> Tuple[List[List[int]], Optional[List[List[str]]]]:
    """Coxeter matrix and Gram matrix (strings of exact numbers) of an irreducible factor."""
    if family == "I2":
        m = n
        coxeter = [[1, m], [m, 1]]
        gram = {
            2: [["2", "0"], ["0", "2"]],
            3: [["2", "-1"], ["-1", "2"]],
            4: [["2", "-1"], ["-1", "1"]],
            5: [["2", f"-{GOLDEN}"], [f"-{GOLDEN}", "2"]],
            6: [["2", "-3"], ["-3", "6"]],
        }.get(m)
        return coxeter, gram
    coxeter = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    off: Dict[Tuple[int, int], str] = {}
    diagonal = ["2"] * n
    if family == "D":
        for i in range(n - 2):
            off[(i, i + 1)] = "-1"
        off[(n - 3, n - 1)] = "-1"
    else:
        for i in range(n - 1):
            off[(i, i + 1)] = "-1"
    if family == "B":
        diagonal[n - 1] = "1"
    elif family == "F":
        diagonal = ["2", "2", "1", "1"]
        off[(2, 3)] = "-1/2"
    elif family == "G":
        diagonal = ["2", "6"]
        off[(0, 1)] = "-3"
    elif family == "H":
        off[(0, 1)] = f"-{GOLDEN}"
    for (i, j) in off:
        coxeter[i][j] = coxeter[j][i] = 3
    if family == "B":
        coxeter[n - 2][n - 1] = coxeter[n - 1][n - 2] = 4
    elif family == "F":
        coxeter[1][2] = coxeter[2][1] = 4
    elif family == "G":
        coxeter[0][1] = coxeter[1][0] = 6
    elif family == "H":
        coxeter[0][1] = coxeter[1][0] = 5
    return coxeter, _chain_gram(n, diagonal, off)


def _dihedral_table(m: int) -> Tuple[List[Tuple[int, ...]], List[Set[int]]]:
    """
    Signed action of the two simple reflections on the m positive roots of I2(m).

    Root k (counterclockwise from alpha_1 to alpha_2) gets index 0 for k = 0, 1 for
    k = m - 1 and k + 1 otherwise, so the simple roots come first.
    """
    index = {0: 0, m - 1: 1}
    for k in range(1, m - 1):
        index[k] = k + 1
    s1 = [0] * m
    s2 = [0] * m
    for k in range(m):
        s1[index[k]] = index[m - k] if k >= 1 else index[0] + m
        s2[index[k]] = index[m - 2 - k] if k <= m - 2 else index[m - 1] + m
    supports = [{0}, {1}] + [{0, 1} for _ in range(m - 2)]
    return [tuple(s1), tuple(s2)], supports


@dataclass
class RootSystem:
    """Positive roots with the signed action of each simple reflection."""
    field: ScalarField
    rank: int
    coxeter_matrix: List[List[int]]
    simple_action: List[Tuple[int, ...]]
    factor_of_root: List[int]
    factor_of_simple: List[int]
    support: List[frozenset]
    gram: Optional[List[List]] = None
    vectors: Optional[List[Vector]] = None
    factor_geometric: List[bool] = dataclass_field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.factor_of_root)

    @property
    def is_geometric(self) -> bool:
        return self.vectors is not None

    def negate(self, signed: int) -> int:
        return (signed + self.count) % (2 * self.count)

    def reflect(self, s: int, signed: int) -> int:
        """Signed index of s applied to the signed root."""
        n = self.count
        if signed < n:
            return self.simple_action[s][signed]
        return self.negate(self.simple_action[s][signed - n])

    def signed_vector(self, signed: int) -> Vector:
        n = self.count
        vector = self.vectors[signed % n]
        return vector if signed < n else self.field.neg(vector)

    def to_dict(self) -> Dict:
        data = {
            "rank": self.rank,
            "positive_roots": self.count,
            "coxeter_matrix": self.coxeter_matrix,
            "simple_action": [list(row) for row in self.simple_action],
        }
        if self.vectors is not None:
            data["roots"] = [[self.field.to_str(x) for x in v] for v in self.vectors]
        return data


def _irreducible_roots(field: ScalarField, gram: List[List]) -> List[Vector]:
    """Positive roots in simple-root coordinates, simple roots first, then breadth-first."""
    n = len(gram)

    def reflect(i: int, v: Vector) -> Vector:
        pairing = field.dot(tuple(gram[i]), v)
        coefficient = (pairing + pairing) / gram[i][i]
        return tuple(v[k] - coefficient if k == i else v[k] for k in range(n))

    simple = [tuple(field.one if k == i else field.zero for k in range(n)) for i in range(n)]
    roots = list(simple)
    seen = {field.vector_key(v) for v in roots}
    frontier = list(simple)
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(n):
                image = reflect(i, v)
                if any(field.sign(x) < 0 for x in image):
                    continue
                key = field.vector_key(image)
                if key not in seen:
                    seen.add(key)
                    roots.append(image)
                    nxt.append(image)
        frontier = nxt
    return roots


def build_root_system(ctype: CoxeterType, field: Optional[ScalarField] = None) -> RootSystem:
    """Roots of a product type, with all simple roots first and the other roots factor by factor."""
    if field is None:
        if ctype.needs_sqrt5:
            if settings.SQRT_FIELD_D != 5:
                raise UnsupportedType(f"{ctype} needs QQ(sqrt 5) but SQRT_FIELD_D={settings.SQRT_FIELD_D}")
            field = field_for(5)
        else:
            field = QQ_FIELD
    rank = ctype.rank
    coxeter = [[1 if i == j else 2 for j in range(rank)] for i in range(rank)]
    simple_offset = 0
    local_tables = []
    for f, (family, r) in enumerate(ctype.factors):
        n = CoxeterType.factor_rank((family, r))
        matrix, gram = _factor_data(family, r)
        for i in range(n):
            for j in range(n):
                coxeter[simple_offset + i][simple_offset + j] = matrix[i][j]
        if gram is not None:
            gram = [[field.convert(x) for x in row] for row in gram]
            roots = _irreducible_roots(field, gram)
            keys = {field.vector_key(v): k for k, v in enumerate(roots)}
            action = []
            for i in range(n):
                row = []
                for v in roots:
                    pairing = field.dot(tuple(gram[i]), v)
                    coefficient = (pairing + pairing) / gram[i][i]
                    image = tuple(v[k] - coefficient if k == i else v[k] for k in range(n))
                    if any(field.sign(x) < 0 for x in image):
                        row.append(keys[field.vector_key(field.neg(image))] + len(roots))
                    else:
                        row.append(keys[field.vector_key(image)])
                action.append(tuple(row))
            supports = [frozenset(k for k in range(n) if v[k] != field.zero) for v in roots]
            local_tables.append((n, gram, roots, action, supports))
        else:
            action, supports = _dihedral_table(r)
            local_tables.append((n, None, None, action, [frozenset(s) for s in supports]))
        simple_offset += n

    # Global numbering: simple roots of every factor, then the remaining roots.
    global_index: List[Dict[int, int]] = []
    next_simple, next_other = 0, rank
    for n, _, _, action, _ in local_tables:
        count = len(action[0])
        mapping = {}
        for k in range(count):
            if k < n:
                mapping[k] = next_simple + k
            else:
                mapping[k] = next_other
                next_other += 1
        next_simple += n
        global_index.append(mapping)
    total = next_other

    simple_action: List[List[int]] = []
    factor_of_root = [0] * total
    factor_of_simple = []
    support: List[frozenset] = [frozenset()] * total
    vectors: Optional[List[Vector]] = [None] * total if ctype.is_geometric else None
    gram_full = [[field.zero] * rank for _ in range(rank)] if ctype.is_geometric else None
    simple_offset = 0
    for f, (n, gram, roots, action, supports) in enumerate(local_tables):
        mapping = global_index[f]
        count = len(action[0])
        for local, g in mapping.items():
            factor_of_root[g] = f
            support[g] = frozenset(simple_offset + k for k in supports[local])
            if vectors is not None:
                vectors[g] = tuple([field.zero] * simple_offset + list(roots[local])
                                   + [field.zero] * (rank - simple_offset - n))
        if gram_full is not None:
            for i in range(n):
                for j in range(n):
                    gram_full[simple_offset + i][simple_offset + j] = gram[i][j]
        for i in range(n):
            factor_of_simple.append(f)
            row = list(range(total))
            for local in range(count):
                image = action[i][local]
                row[mapping[local]] = mapping[image] if image < count else mapping[image - count] + total
            simple_action.append(row)
        simple_offset += n

    system = RootSystem(
        field=field,
        rank=rank,
        coxeter_matrix=coxeter,
        simple_action=[tuple(row) for row in simple_action],
        factor_of_root=factor_of_root,
        factor_of_simple=factor_of_simple,
        support=support,
        gram=gram_full,
        vectors=vectors,
        factor_geometric=[t[1] is not None for t in local_tables],
    )
    logger.debug(f"Built root system of {ctype}: {total} positive roots")
    return system


@dataclass(frozen=True)
class GroupElement:
    """An element of W, identified by its inversion set."""
    id: int
    inversions: int
    word: Tuple[int, ...]

    @property
    def length(self) -> int:
        return bin(self.inversions).count("1")


@dataclass(frozen=True)
class Reflection:
    root_index: int
    element: int


def _bits(mask: int) -> List[int]:
    out = []
    k = 0
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return out


class CoxeterGroup:
    """
    A finite Coxeter group with all elements enumerated.

    Element ids are stable: breadth-first order over right multiplication by simple
    generators, so id 0 is the identity and words are lexicographically first reduced words.
    """

    def __init__(self, ctype: CoxeterType, field: Optional[ScalarField] = None):
        self.ctype = ctype
        self.roots = build_root_system(ctype, field)
        self.field = self.roots.field
        self.rank = ctype.rank
        self._closure: Dict[int, int] = {}
        self._enumerate()
        logger.info(f"Built Coxeter group {ctype}: {self.size} elements, {self.roots.count} reflections")

    def __repr__(self) -> str:
        return f"CoxeterGroup({self.ctype}, size={self.size})"

    def _enumerate(self) -> None:
        roots = self.roots
        n, N = self.rank, roots.count
        identity = tuple(range(N))
        acts = [identity]
        seps = [0]
        words: List[Tuple[int, ...]] = [()]
        index = {0: 0}
        reflection_witness: Dict[int, Tuple[int, int]] = {}
        queue = 0
        while queue < len(acts):
            act = acts[queue]
            for s in range(n):
                image = act[s]
                if image >= N:
                    continue
                reflection_witness.setdefault(image, (queue, s))
                sep = seps[queue] | (1 << image)
                if sep in index:
                    continue
                new_act = tuple(self._apply(act, roots.simple_action[s][i]) for i in range(N))
                index[sep] = len(acts)
                acts.append(new_act)
                seps.append(sep)
                words.append(words[queue] + (s,))
            queue += 1
        self.acts = acts
        self.seps = seps
        self.index = index
        self.elements = [GroupElement(i, sep, words[i]) for i, sep in enumerate(seps)]
        self.right_mult = []
        for w, act in enumerate(acts):
            row = []
            for s in range(n):
                image = act[s]
                row.append(index[seps[w] | (1 << image)] if image < N else index[seps[w] & ~(1 << (image - N))])
            self.right_mult.append(tuple(row))
        self.reflection_ids = [0] * N
        for t in range(N):
            w, s = reflection_witness[t]
            self.reflection_ids[t] = self.multiply(self.right_mult[w][s], self.inverse(w))

    def _apply(self, act: Tuple[int, ...], signed: int) -> int:
        N = self.roots.count
        return act[signed] if signed < N else self.roots.negate(act[signed - N])

    def _from_act(self, act: Sequence[int]) -> int:
        N = self.roots.count
        sep = 0
        for image in act:
            if image >= N:
                sep |= 1 << (image - N)
        return self.index[sep]

    # Region-system interface

    @property
    def size(self) -> int:
        return len(self.seps)

    @property
    def hyperplane_count(self) -> int:
        return self.roots.count

    @property
    def identity(self) -> int:
        return 0

    @cached_property
    def longest(self) -> int:
        return self.index[(1 << self.roots.count) - 1]

    def facets(self, w: int) -> List[int]:
        N = self.roots.count
        return sorted(self.acts[w][s] % N for s in range(self.rank))

    @cached_property
    def basic_hyperplanes(self) -> List[int]:
        return list(range(self.rank))

    def flat_closure(self, mask: int) -> int:
        """All reflecting hyperplanes containing the intersection of those in mask."""
        if mask in self._closure:
            return self._closure[mask]
        roots = self.roots
        closed = 0
        for f in range(len(self.ctype.factors)):
            members = [r for r in _bits(mask) if roots.factor_of_root[r] == f]
            in_factor = [r for r in range(roots.count) if roots.factor_of_root[r] == f]
            if len(members) <= 1 or not roots.factor_geometric[f]:
                if len(members) >= 2:
                    members = in_factor
                for r in members:
                    closed |= 1 << r
                continue
            rows = [roots.vectors[r] for r in members]
            rank = self.field.rank(rows, self.rank)
            for r in in_factor:
                if r in members or self.field.rank(rows + [roots.vectors[r]], self.rank) == rank:
                    closed |= 1 << r
        self._closure[mask] = closed
        return closed

    def flat_rank(self, mask: int) -> int:
        roots = self.roots
        total = 0
        for f in range(len(self.ctype.factors)):
            members = [r for r in _bits(mask) if roots.factor_of_root[r] == f]
            if not members:
                continue
            if roots.factor_geometric[f]:
                total += self.field.rank([roots.vectors[r] for r in members], self.rank)
            else:
                total += min(len(members), 2)
        return total

    def label(self, w: int) -> str:
        if self.ctype.is_type_a:
            return "".join(str(x) for x in self.one_line(w))
        word = self.elements[w].word
        return "e" if not word else "".join(f"s{s + 1}" for s in word)

    def root_label(self, r: int) -> str:
        if self.ctype.is_type_a:
            a, b = self.transposition(r)
            return f"({a} {b})"
        if self.roots.is_geometric:
            return "[" + ",".join(self.field.to_str(x) for x in self.roots.vectors[r]) + "]"
        return f"r{r}"

    # Group operations

    def descents(self, w: int) -> Set[int]:
        """Right descent set as simple indices."""
        N = self.roots.count
        return {s for s in range(self.rank) if self.acts[w][s] >= N}

    def lower_hyperplane(self, w: int, s: int) -> int:
        return self.acts[w][s] % self.roots.count

    def length(self, w: int) -> int:
        return self.elements[w].length

    def element_from_word(self, word: Iterable[int]) -> int:
        w = 0
        for s in word:
            if not 0 <= s < self.rank:
                raise ValueError(f"simple index {s + 1} out of range for {self.ctype}")
            w = self.right_mult[w][s]
        return w

    def inverse(self, w: int) -> int:
        roots = self.roots
        N = roots.count
        inv = [0] * N
        for j, image in enumerate(self.acts[w]):
            if image < N:
                inv[image] = j
            else:
                inv[image - N] = roots.negate(j)
        return self._from_act(inv)

    def multiply(self, u: int, v: int) -> int:
        act_u = self.acts[u]
        return self._from_act([self._apply(act_u, image) for image in self.acts[v]])

    def reflections(self) -> List[Reflection]:
        return [Reflection(t, self.reflection_ids[t]) for t in range(self.roots.count)]

    def cover_reflections(self, w: int) -> List[Reflection]:
        """The reflections w s w^-1 for s a descent of w."""
        out = []
        for s in sorted(self.descents(w)):
            t = self.lower_hyperplane(w, s)
            out.append(Reflection(t, self.reflection_ids[t]))
        return out

    def coxeter_element(self, order: Sequence[int]) -> int:
        if sorted(order) != list(range(self.rank)):
            raise ValueError(f"Coxeter element order must list every simple generator once: {order}")
        return self.element_from_word(order)

    def standard_parabolic(self, J: Iterable[int]) -> List[int]:
        mask = self.parabolic_root_mask(J)
        return [w for w, sep in enumerate(self.seps) if sep & ~mask == 0]

    def parabolic_root_mask(self, J: Iterable[int]) -> int:
        J = set(J)
        mask = 0
        for r, supp in enumerate(self.roots.support):
            if supp <= J:
                mask |= 1 << r
        return mask

    def support(self, w: int) -> Set[int]:
        return set(self.elements[w].word)

    # Reflection length and fixed spaces

    @cached_property
    def absolute_lengths_bfs(self) -> List[int]:
        """Reflection length by breadth-first search over the reflections."""
        lengths = [-1] * self.size
        lengths[0] = 0
        frontier = [0]
        while frontier:
            nxt = []
            for w in frontier:
                for t in self.reflection_ids:
                    v = self.multiply(t, w)
                    if lengths[v] < 0:
                        lengths[v] = lengths[w] + 1
                        nxt.append(v)
            frontier = nxt
        return lengths

    def matrix_rows(self, w: int) -> List[Vector]:
        """Matrix of w in simple-root coordinates; column j is w(alpha_j)."""
        if not self.roots.is_geometric:
            raise UnsupportedType(f"{self.ctype} has no exact realisation")
        columns = [self.roots.signed_vector(self.acts[w][j]) for j in range(self.rank)]
        return [tuple(columns[j][i] for j in range(self.rank)) for i in range(self.rank)]

    def fixed_space(self, w: int) -> Subspace:
        rows = self.matrix_rows(w)
        shifted = [tuple(x - self.field.one if i == j else x for j, x in enumerate(row)) for i, row in enumerate(rows)]
        return Subspace.span(self.field, self.rank, self.field.nullspace(shifted, self.rank))

    def reflecting_normal(self, t: int) -> Vector:
        """Normal of H_t in simple-root coordinates under the invariant form."""
        gram = self.roots.gram
        alpha = self.roots.vectors[t]
        return tuple(self.field.dot(tuple(gram[i]), alpha) for i in range(self.rank))

    def absolute_length(self, w: int) -> int:
        if self.roots.is_geometric:
            return self.fixed_space(w).codim
        return self.absolute_lengths_bfs[w]

    def fix_mask(self, w: int) -> int:
        """Hyperplanes H_t containing Fix(w): the reflections t below w in absolute order."""
        lengths = self.absolute_lengths_bfs
        mask = 0
        for t, element in enumerate(self.reflection_ids):
            if lengths[self.multiply(element, w)] == lengths[w] - 1:
                mask |= 1 << t
        return mask

    def fix_mask_geometric(self, w: int) -> int:
        space = self.fixed_space(w)
        mask = 0
        for t in range(self.roots.count):
            normal = self.reflecting_normal(t)
            if all(self.field.dot(normal, b) == self.field.zero for b in space.basis):
                mask |= 1 << t
        return mask

    # Geometry bridge

    @cached_property
    def arrangement(self) -> Arrangement:
        """The Coxeter arrangement; regions carry the same separating sets as elements."""
        if not self.roots.is_geometric:
            raise UnsupportedType(f"{self.ctype} has no exact realisation")
        hyperplanes = [Hyperplane(self.field.primitive(v), i) for i, v in enumerate(self.roots.vectors)]
        base = tuple(self.field.one for _ in range(self.rank))
        return Arrangement(self.field, hyperplanes, base)

    # Permutations (type A)

    def _require_type_a(self) -> None:
        if not self.ctype.is_type_a:
            raise UnsupportedType(f"permutation notation needs an irreducible type A, not {self.ctype}")

    def one_line(self, w: int) -> Tuple[int, ...]:
        self._require_type_a()
        perm = list(range(1, self.rank + 2))
        for s in self.elements[w].word:
            perm[s], perm[s + 1] = perm[s + 1], perm[s]
        return tuple(perm)

    def from_one_line(self, perm: Sequence[int]) -> int:
        self._require_type_a()
        perm = list(perm)
        if sorted(perm) != list(range(1, self.rank + 2)):
            raise ValueError(f"not a permutation of 1..{self.rank + 1}: {perm}")
        word = []
        while True:
            k = next((i for i in range(len(perm) - 1) if perm[i] > perm[i + 1]), None)
            if k is None:
                break
            word.append(k)
            perm[k], perm[k + 1] = perm[k + 1], perm[k]
        return self.element_from_word(reversed(word))

    def transposition(self, r: int) -> Tuple[int, int]:
        """Root e_a - e_b of type A as the transposition (a b)."""
        self._require_type_a()
        supp = sorted(self.roots.support[r])
        return supp[0] + 1, supp[-1] + 2

    def parse_element(self, text: str) -> int:
        """An element from one-line notation ("3124") or a word ("s2,s1", "2,1", "e")."""
        text = text.strip()
        if text in ("", "e"):
            return 0
        if self.ctype.is_type_a and text.isdigit() and len(text) == self.rank + 1:
            return self.from_one_line([int(ch) for ch in text])
        return self.element_from_word(parse_word(text))


def parse_word(text: str) -> List[int]:
    """Comma-separated simple indices, 1-based, with an optional "s": "s2,s1" -> [1, 0]."""
    word = []
    for token in text.replace(" ", "").split(","):
        if not token:
            continue
        token = token[1:] if token[0] in "sS" else token
        if not token.isdigit() or int(token) < 1:
            raise ValueError(f"bad simple generator {token!r}")
        word.append(int(token) - 1)
    return word


def build_group(t: str, field: Optional[ScalarField] = None) -> CoxeterGroup:
    ctype = t if isinstance(t, CoxeterType) else CoxeterType.parse(t)
    return CoxeterGroup(ctype, field)
