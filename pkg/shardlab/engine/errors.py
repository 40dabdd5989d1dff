from typing import Any, Optional


class ShardlabError(Exception):
    """Base class for engine failures"""


class DimensionMismatch(ShardlabError, ValueError):
    """Vectors or points of different lengths were combined"""


class UnsupportedType(ShardlabError, ValueError):
    """A Coxeter type string that cannot be built"""


class BasePointOnHyperplane(ShardlabError):
    """The chosen base point lies on one of the hyperplanes"""

    def __init__(self, index: int):
        super().__init__(f"base point lies on hyperplane {index}")
        self.index = index


class NonSimplicialRegion(ShardlabError):
    """A region whose facet normals are not linearly independent"""

    def __init__(self, witness: Any, detail: str = ""):
        message = f"region {witness} is not simplicial"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)
        self.witness = witness


class NonUniqueMinimal(ShardlabError):
    """Two different minimal regions found where exactly one must exist"""


class MidpointOnCutLocus(ShardlabError):
    """A cover's facet point landed on a cutting hyperplane"""


class NoPreimage(ShardlabError):
    """A sortable element has no noncrossing partition with the required fixed space"""


class NonUnique(ShardlabError):
    """A fixed space is shared by several noncrossing partitions"""


class NotBipartite(ShardlabError):
    """A Coxeter element that is not bipartite"""


class NoUniqueMinimalVertex(ShardlabError):
    """A cell whose vertices have no unique minimum in the pulling order"""

    def __init__(self, face: Any, minima: Optional[list] = None):
        super().__init__(f"face {sorted(face)} has minimal vertices {minima}")
        self.face = face
        self.minima = minima or []


class UnknownTarget(ShardlabError, ValueError):
    """An export target that does not exist"""


class CongruenceError(ShardlabError):
    """An equivalence relation failed the lattice congruence axioms"""


class PosetException(ShardlabError):
    """A poset operation that does not exist for this poset (missing join, no bottom, ...)"""


class ArrangementFileError(ShardlabError, ValueError):
    """An arrangement file that cannot be read as a base point followed by normals"""
