import json
import logging
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Union

from shardlab.api.models import RunConfig
from shardlab.config.settings import settings
from shardlab.engine.cambrian_nc import CambrianData, NCLattice, build_nc, cambrian_congruence, nc_mobius
from shardlab.engine.congruence import Congruence, QuotientShardOrder, generate_congruence
from shardlab.engine.coxeter import CoxeterGroup, build_group
from shardlab.engine.exactgeom import Arrangement, load_arrangement
from shardlab.engine.shardorder import ShardOrder
from shardlab.engine.shards import Shards, geometry_of
from shardlab.engine.triangulation import (FanFacePoset, PulledTriangulation, ambient_rank, coxeter_fan_faces,
                                           coxeter_triangulation, quotient_fan, quotient_triangulation)
from shardlab.engine.weakorder import WeakOrder
from shardlab.models.report import BundleSummary, ShardRow

logger = logging.getLogger(__name__)


@dataclass
class Pipeline:
    """All objects built for one configuration; derived objects are computed on first use"""
    config: RunConfig
    system: Union[CoxeterGroup, Arrangement]
    weak: WeakOrder
    shards: Shards
    order: ShardOrder
    contracted: List[int] = field(default_factory=list)

    @property
    def group(self) -> Optional[CoxeterGroup]:
        """The Coxeter group, or None when the regions come from an arrangement file"""
        return self.system if isinstance(self.system, CoxeterGroup) else None

    @cached_property
    def arrangement(self) -> Optional[Arrangement]:
        """The exact arrangement behind the regions, when there is one"""
        return geometry_of(self.system)

    @property
    def geometric(self) -> bool:
        if not self.config.geometry:
            return False
        if self.group is not None:
            return self.group.roots.is_geometric and self.group.rank <= settings.GEOMETRY_MAX_RANK
        return self.system.rank <= settings.GEOMETRY_MAX_RANK

    @cached_property
    def coxeter_order(self) -> Optional[List[int]]:
        if self.group is None:
            return None
        return self.config.coxeter_order(self.group.rank)

    @cached_property
    def congruence(self) -> Optional[Congruence]:
        if not self.contracted:
            return None
        return generate_congruence(self.shards, self.contracted)

    @cached_property
    def cambrian(self) -> Optional[CambrianData]:
        if self.coxeter_order is None:
            return None
        return cambrian_congruence(self.shards, self.coxeter_order)

    @cached_property
    def nc(self) -> Optional[NCLattice]:
        if self.coxeter_order is None:
            return None
        return build_nc(self.group, self.coxeter_order)

    @cached_property
    def fan(self) -> FanFacePoset:
        return coxeter_fan_faces(self.weak)

    @cached_property
    def triangulation(self) -> PulledTriangulation:
        return coxeter_triangulation(self.weak, self.fan)

    def quotient_congruence(self) -> Optional[Congruence]:
        """The congruence a quotient report is about: the contracted one, else the Cambrian one."""
        if self.congruence is not None:
            return self.congruence
        return self.cambrian.congruence if self.cambrian is not None else None

    def quotient_triangulation(self, congruence: Congruence) -> PulledTriangulation:
        return quotient_triangulation(congruence, quotient_fan(congruence, self.fan))


class BuildService:
    """Service for building bundles"""

    def __init__(self):
        self._cache: Dict[str, Pipeline] = {}

    def load(self, config: RunConfig) -> Pipeline:
        key = config.model_dump_json(exclude={"format", "out", "jobs"})
        if key in self._cache:
            return self._cache[key]
        system = build_group(config.type) if config.type is not None else load_arrangement(config.arrangement)
        weak = WeakOrder(system)
        shards = Shards(weak)
        order = ShardOrder(shards)
        contracted = []
        for text in config.contract:
            j = self._parse_region(system, weak, text)
            if not weak.is_join_irreducible(j):
                raise ValueError(f"contract: {text} is not join-irreducible")
            contracted.append(j)
        pipeline = Pipeline(config, system, weak, shards, order, contracted)
        self._cache[key] = pipeline
        logger.info(f"Pipeline ready for {config.name}: {weak.size} regions, {len(shards)} shards")
        return pipeline

    @staticmethod
    def _parse_region(system, weak: WeakOrder, text: str) -> int:
        """Group elements by word or permutation; arrangement regions by their label such as R3"""
        if isinstance(system, CoxeterGroup):
            return system.parse_element(text)
        by_label = {weak.label(x): x for x in range(weak.size)}
        if text.strip() not in by_label:
            raise ValueError(f"contract: no region labelled {text!r}")
        return by_label[text.strip()]

    def build(self, config: RunConfig) -> BundleSummary:
        p = self.load(config)
        mobius, _ = p.order.mobius_bottom_top()
        chains, _ = p.order.maximal_chain_count()
        rank_polynomial = p.order.rank_generating_polynomial()
        bundle = BundleSummary(
            type=str(p.group.ctype) if p.group is not None else config.name,
            group_size=p.weak.size,
            reflections=p.weak.hyperplane_count,
            shard_count=len(p.shards),
            shards=[ShardRow.from_dict(s.to_dict(p.weak)) for s in p.shards.shards.values()],
            rank_polynomial=rank_polynomial,
            mobius=mobius,
            maximal_chains=chains,
            psi_by_codim=rank_polynomial,
        )
        if p.geometric:
            bundle.psi_by_codim = self._psi_by_codim(p)
        if p.congruence is not None:
            bundle.congruence = self._congruence_report(p, p.congruence)
        if p.cambrian is not None:
            bundle.cambrian = p.cambrian.to_dict()
            bundle.cambrian.update(self._congruence_report(p, p.cambrian.congruence))
            direct, _ = nc_mobius(p.nc)
            bundle.nc = {"elements": len(p.nc), "rank_sizes": p.nc.rank_sizes(), "mobius": direct,
                         "rows": p.nc.to_rows()}
        if p.weak.size <= settings.ORACLE_MAX_ELEMENTS:
            bundle.triangulation = {"fan": p.fan.to_dict(), "f_vector": p.triangulation.f_vector,
                                    "maximal_simplices": p.triangulation.maximal_count()}
            congruence = p.quotient_congruence()
            if congruence is not None:
                quotient = p.quotient_triangulation(congruence)
                bundle.triangulation["quotient_f_vector"] = quotient.f_vector
                bundle.triangulation["quotient_maximal_simplices"] = quotient.maximal_count()
        return bundle

    def _psi_by_codim(self, p: Pipeline) -> List[int]:
        counts = [0] * (ambient_rank(p.weak) + 1)
        for w in range(p.weak.size):
            counts[p.order.psi(w).codim] += 1
        return counts

    def _congruence_report(self, p: Pipeline, congruence: Congruence) -> Dict:
        report = congruence.to_dict()
        quotient = QuotientShardOrder(congruence, p.order)
        report["quotient_mobius"] = quotient.mobius()[0]
        report["quotient_maximal_chains"] = quotient.poset.maximal_chain_count()
        return report

    def write(self, bundle: BundleSummary, out: Optional[str] = None) -> str:
        """Write the bundle as sorted JSON; returns the file path"""
        out = out or settings.OUTPUT_DIR
        os.makedirs(out, exist_ok=True)
        path = os.path.join(out, "bundle_" + bundle.type.replace("(", "").replace(")", "") + ".json")
        with open(path, "w") as f:
            json.dump(bundle.to_dict(), f, indent=2, sort_keys=True)
        logger.info(f"Wrote {path}")
        return path
