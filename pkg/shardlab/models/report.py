from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional


@dataclass
class CheckResult:
    """Outcome of one theorem check"""
    name: str
    theorem: str
    passed: bool
    detail: str = ""
    value: Optional[Any] = None

    def to_dict(self) -> dict:
        """Convert check result to dictionary"""
        return {
            "name": self.name,
            "theorem": self.theorem,
            "passed": self.passed,
            "detail": self.detail,
            "value": self.value,
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'CheckResult':
        """Create check result from dictionary"""
        return cls(
            name=data.get("name", ""),
            theorem=data.get("theorem", ""),
            passed=bool(data.get("passed", False)),
            detail=data.get("detail", ""),
            value=data.get("value"),
        )


@dataclass
class ShardRow:
    """One shard as reported in a bundle"""
    ji: str
    hyperplane: int
    sign_vector: Dict[str, str]
    covers: int

    def to_dict(self) -> dict:
        return {"ji": self.ji, "hyperplane": self.hyperplane,
                "sign_vector": self.sign_vector, "covers": self.covers}

    @classmethod
    def from_dict(cls, data: dict) -> 'ShardRow':
        return cls(
            ji=data.get("ji", ""),
            hyperplane=int(data.get("hyperplane", -1)),
            sign_vector=dict(data.get("sign_vector", {})),
            covers=int(data.get("covers", 0)),
        )


@dataclass
class BundleSummary:
    """Everything `build` writes for one configuration"""
    type: str
    group_size: int
    reflections: int
    shard_count: int
    shards: List[ShardRow] = field(default_factory=list)
    rank_polynomial: List[int] = field(default_factory=list)
    mobius: Optional[int] = None
    maximal_chains: Optional[int] = None
    psi_by_codim: List[int] = field(default_factory=list)
    congruence: Optional[Dict[str, Any]] = None
    cambrian: Optional[Dict[str, Any]] = None
    nc: Optional[Dict[str, Any]] = None
    triangulation: Optional[Dict[str, Any]] = None

    def to_dict(self) -> dict:
        """Convert bundle summary to dictionary"""
        return {
            "type": self.type,
            "group_size": self.group_size,
            "reflections": self.reflections,
            "shard_count": self.shard_count,
            "shards": [s.to_dict() for s in self.shards],
            "rank_polynomial": self.rank_polynomial,
            "mobius": self.mobius,
            "maximal_chains": self.maximal_chains,
            "psi_by_codim": self.psi_by_codim,
            "congruence": self.congruence,
            "cambrian": self.cambrian,
            "nc": self.nc,
            "triangulation": self.triangulation,
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'BundleSummary':
        """Create bundle summary from dictionary"""
        return cls(
            type=data.get("type", ""),
            group_size=int(data.get("group_size", 0)),
            reflections=int(data.get("reflections", 0)),
            shard_count=int(data.get("shard_count", 0)),
            shards=[ShardRow.from_dict(s) for s in data.get("shards", [])],
            rank_polynomial=list(data.get("rank_polynomial", [])),
            mobius=data.get("mobius"),
            maximal_chains=data.get("maximal_chains"),
            psi_by_codim=list(data.get("psi_by_codim", [])),
            congruence=data.get("congruence"),
            cambrian=data.get("cambrian"),
            nc=data.get("nc"),
            triangulation=data.get("triangulation"),
        )
