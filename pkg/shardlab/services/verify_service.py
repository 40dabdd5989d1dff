import logging
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations, permutations, product
from typing import Callable, Dict, List, Optional

from shardlab.api.models import RunConfig
from shardlab.config.settings import settings
from shardlab.engine.cambrian_nc import (NCLattice, bipartite_cone_restriction, coxeter_catalan, is_bipartite,
                                         nc_mobius, one_shard_per_hyperplane_failures, sortable_pattern_check,
                                         verify_isomorphism)
from shardlab.engine.congruence import (Congruence, QuotientShardOrder, closure_agreement, cover_lemma_failures,
                                        degree2_check, parabolic_congruence, parabolic_homomorphism_failures,
                                        quotient_lattice, sample_congruences)
from shardlab.engine.coxeter import CoxeterType, build_group
from shardlab.engine.exactgeom import Subspace, zaslavsky_region_count
from shardlab.engine.poset import PosetView
from shardlab.engine.shardorder import ShardOrder
from shardlab.engine.shards import Shards, geometry_of
from shardlab.engine.triangulation import (ambient_rank, check_delta, check_quotient_delta, fan_faces_by_facets,
                                           geometric_fan_counts, geometric_quotient_counts, quotient_fan,
                                           quotient_fan_interval_failures, quotient_triangulation,
                                           shelling_interval_partition, star_property_failures, subcomplex_probe)
from shardlab.engine.weakorder import WeakOrder
from shardlab.models.report import CheckResult
from shardlab.services.build_service import BuildService, Pipeline

logger = logging.getLogger(__name__)


def _sample_pairs(size: int):
    """All pairs on small groups, a deterministic spread of pairs otherwise"""
    if size <= settings.ORACLE_MAX_ELEMENTS:
        return [(x, y) for x in range(size) for y in range(x, size)]
    return [(x, (x * 7919 + 13) % size) for x in range(size)]


def canonical_join_oracle(weak: WeakOrder, w: int) -> Optional[List[int]]:
    """The lowest irredundant antichain of join-irreducibles joining to w, by exhaustive search"""
    below = [j.element for j in weak.join_irreducibles if weak.leq(j.element, w)]
    candidates = []
    for size in range(len(weak.system.basic_hyperplanes) + 1):
        for subset in combinations(below, size):
            if any(weak.leq(a, b) for a in subset for b in subset if a != b):
                continue
            if weak.join_all(subset) != w:
                continue
            if any(weak.join_all([x for x in subset if x != y]) == w for y in subset):
                continue
            candidates.append(subset)

    def lower(a, b):
        return all(any(weak.leq(x, y) for y in b) for x in a)

    lowest = [a for a in candidates if all(lower(a, b) for b in candidates)]
    return sorted(lowest[0]) if len(lowest) == 1 else None


class VerifyService:
    """Service running every theorem check that applies to a configuration"""

    def __init__(self, build_service: Optional[BuildService] = None):
        self.build_service = build_service or BuildService()

    def run(self, config: RunConfig) -> List[CheckResult]:
        p = self.build_service.load(config)
        self._prepare(p)
        suites: List[Callable[[Pipeline], List[CheckResult]]] = [
            self.weak_suite, self.shard_suite, self.shard_order_suite,
            self.congruence_suite, self.cambrian_suite, self.triangulation_suite,
        ]
        jobs = max(1, config.jobs or settings.JOBS)
        if jobs == 1:
            results = [suite(p) for suite in suites]
        else:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(lambda suite: suite(p), suites))
        checks = [c for batch in results for c in batch]
        failed = [c.name for c in checks if not c.passed]
        if failed:
            logger.warning(f"{len(failed)} of {len(checks)} checks failed: {failed}")
        else:
            logger.info(f"All {len(checks)} checks passed for {config.name}")
        return checks

    def headline(self, config: RunConfig) -> Dict[str, int]:
        """The numbers a verify run reports next to its pass/fail line"""
        p = self.build_service.load(config)
        values = {"elements": p.weak.size, "shards": len(p.shards),
                  "mobius": p.order.mobius_bottom_top()[0], "MC": p.order.maximal_chain_count()[0]}
        if p.cambrian is not None:
            values["sortables"] = len(p.cambrian.sortables)
            values["nc"] = len(p.nc)
        congruence = p.quotient_congruence()
        if congruence is not None:
            values["classes"] = len(congruence)
            if p.weak.size <= settings.ORACLE_MAX_ELEMENTS:
                values["MC_quotient"] = p.quotient_triangulation(congruence).maximal_count()
        return values

    def _prepare(self, p: Pipeline) -> None:
        """Build shared objects up front so suites running in parallel only read them"""
        p.shards.digraph
        p.order.poset
        p.congruence
        p.cambrian
        p.nc
        if p.weak.size <= settings.ORACLE_MAX_ELEMENTS:
            p.triangulation

    def _check(self, name: str, theorem: str, fn: Callable[[], object]) -> CheckResult:
        """Run one check; a returned bool/tuple/list decides pass or fail, exceptions fail the check"""
        try:
            outcome = fn()
        except Exception as e:
            logger.error(f"Check {name} raised: {e}", exc_info=True)
            return CheckResult(name, theorem, False, f"{type(e).__name__}: {e}")
        if isinstance(outcome, tuple) and len(outcome) == 2 and isinstance(outcome[0], bool):
            passed, value = outcome
            result = CheckResult(name, theorem, passed, "" if passed else f"got {value}", value)
        elif isinstance(outcome, list):
            result = CheckResult(name, theorem, not outcome, "" if not outcome else f"failures: {outcome[:5]}",
                                 len(outcome))
        else:
            result = CheckResult(name, theorem, bool(outcome))
        level = logging.DEBUG if result.passed else logging.WARNING
        logger.log(level, f"{name}: {'pass' if result.passed else 'FAIL'} {result.detail}")
        return result

    # Suites

    def weak_suite(self, p: Pipeline) -> List[CheckResult]:
        weak, system = p.weak, p.weak.system
        checks = [
            self._check("weak_lattice", 'Thm. "R can join rep": the poset of regions of a simplicial arrangement is a lattice',
                        lambda: weak.check_lattice_axioms(_sample_pairs(weak.size))),
            self._check("region_count", 'Lemma. "RK": regions counted through the intersection lattice',
                        lambda: self._equal(zaslavsky_region_count(system.hyperplane_count, system.flat_closure,
                                                                   system.flat_rank), weak.size)),
            self._check("canonical_join_is_join", 'Thm. "R can join rep": an element is the join of its canonical joinands',
                        lambda: [weak.label(w) for w in range(weak.size)
                                 if weak.join_all(j.element for j in weak.canonical_join_rep(w)) != w]),
        ]
        if weak.size <= settings.DEGREE2_EXHAUSTIVE_MAX:
            checks.append(self._check(
                "canonical_join_oracle", 'Thm. "R can join rep": canonical join representation is the lowest irredundant join',
                lambda: [weak.label(w) for w in range(weak.size)
                         if canonical_join_oracle(weak, w) != sorted(j.element for j in weak.canonical_join_rep(w))]))
        if p.geometric:
            arrangement = p.arrangement
            checks.append(self._check("geometric_regions", 'Prop. "facial": exact region enumeration matches the group',
                                      lambda: self._equal(sorted(arrangement.seps), sorted(weak.seps))))
        return checks

    def shard_suite(self, p: Pipeline) -> List[CheckResult]:
        shards, weak = p.shards, p.weak
        checks = [
            self._check("shard_count", 'Prop. "shard ji": shards are in bijection with join-irreducibles',
                        lambda: self._equal(len(shards), len(weak.join_irreducibles))),
            self._check("shard_partition", 'Prop. "recover cone": covers sharing a shard are those with the same sign vector',
                        lambda: shards.sign_partition() == shards.lattice_partition()),
            self._check("basic_single_shard", 'Lemma. "whole": a basic hyperplane is not cut',
                        lambda: [b for b in weak.system.basic_hyperplanes if shards.count_per_hyperplane(b) != 1]),
            self._check("antipodal_shards", 'Prop. "auto": the negative of a shard is a shard',
                        lambda: [weak.label(j) for j in shards.shards if shards.antipodal_shard(j) is None]),
            self._check("depth", 'Lemma. "depth": a non-basic hyperplane sits in a rank-two flat with shallower basic hyperplanes',
                        lambda: shards.depth_lemma_failures()),
            self._check("parabolic_cutting", 'Lemma. "para cutting": hyperplanes outside a standard parabolic never cut one inside',
                        lambda: shards.parabolic_cutting_failures()),
        ]
        if p.group is not None:
            checks.append(self._check("digraph_acyclic",
                                      'Thm. "acyclic shard cong": the shard digraph of a Coxeter arrangement is acyclic',
                                      lambda: shards.digraph.acyclic))
        elif not shards.digraph.acyclic:
            logger.info("Shard digraph has cycles; congruences follow the forcing closure only")
        if p.geometric:
            arrangement = p.arrangement
            checks.append(self._check("shard_partition_geometric", 'Prop. "recover cone": exact sign vectors recover the shards',
                                      lambda: shards.sign_partition(arrangement) == shards.lattice_partition()))
        return checks

    def shard_order_suite(self, p: Pipeline) -> List[CheckResult]:
        order, weak = p.order, p.weak
        poset = order.poset
        size = weak.size
        checks = [
            self._check("shard_order_lattice", 'Prop. "preceq combin": the shard intersection order is a lattice', poset.is_lattice),
            self._check("shard_order_graded", 'Prop. "W graded": rank is the number of descents',
                        lambda: [weak.label(w) for w in range(size) if poset.heights[w] != order.rank(w)]),
            self._check("rank_polynomial", 'Prop. "W graded": rank sizes are the Eulerian numbers of W',
                        lambda: self._equal(poset.rank_sizes(), order.rank_generating_polynomial())),
            self._check("atomic_coatomic", 'Prop. "atomic coatomic": the shard intersection order is atomic and coatomic',
                        lambda: poset.is_atomic() and poset.is_coatomic()),
            self._check("atoms_are_join_irreducibles", 'Prop. "atomic coatomic": atoms are the join-irreducibles of the weak order',
                        lambda: sorted(poset.atoms) == sorted(order.ji_elements)),
            self._check("weaker_than_weak_order", 'Prop. "bijection": u below v in the shard order implies u <= v',
                        lambda: [(u, v) for u in range(size) for v in range(size)
                                 if order.preceq(u, v) and not weak.leq(u, v)]),
            self._check("mobius", 'Thm. "mobius": Moebius value is the signed sum of parabolic sizes',
                        lambda: self._pair(order.mobius_bottom_top())),
            self._check("maximal_chains", 'Prop. "num max": maximal chains follow the parabolic recursion',
                        lambda: self._pair(order.maximal_chain_count())),
            self._check("rho_inverts_psi", 'Prop. "bijection": the join of the containing join-irreducibles recovers w',
                        lambda: [weak.label(w) for w in range(size) if order.rho(order.label_set(w)) != w]),
            self._check("negation_automorphism", 'Prop. "auto": negating cones is an automorphism of the shard order',
                        lambda: self._negation_failures(p)),
            self._check("face_labels_surjective", 'Prop. "psi fib": every shard intersection is cut out by a face of the fan',
                        lambda: self._fiber_failures(p)),
        ]
        if size <= settings.DEGREE2_EXHAUSTIVE_MAX:
            sample = list(range(size))
        else:
            sample = [weak.top] + [j.element for j in weak.join_irreducibles[:5]]
        checks.append(self._check("lower_intervals", 'Prop. "W lower int": lower intervals are shard orders of standard parabolics',
                                  lambda: [weak.label(w) for w in sample if not order.lower_interval(w).is_isomorphism()]))
        if p.group is not None and not p.group.ctype.is_irreducible and size <= settings.ORACLE_MAX_ELEMENTS:
            checks.append(self._check("product", 'Prop. "reducible": the shard order of a product is the product of shard orders',
                                      lambda: self._product_isomorphic(p)))
        if p.geometric and size <= settings.ORACLE_MAX_ELEMENTS:
            checks.extend(self._psi_geometry(p))
        return checks

    def congruence_suite(self, p: Pipeline) -> List[CheckResult]:
        shards, weak, order = p.shards, p.weak, p.order
        checks = []
        if weak.size <= settings.ORACLE_MAX_ELEMENTS:
            checks.append(self._check(
                "closure_agreement", 'Prop. "good enough": forcing in the shard digraph generates the same congruence as lattice closure',
                lambda: [weak.label(j.element) for j in weak.join_irreducibles
                         if not closure_agreement(shards, [j.element])]))
            basic = list(weak.system.basic_hyperplanes)
            for size in range(len(basic) + 1):
                for K in combinations(basic, size):
                    checks.extend(self._parabolic_checks(p, K))
        for label, congruence in self._targets(p):
            checks.extend(self._congruence_checks(p, congruence, label))
        return checks

    def cambrian_suite(self, p: Pipeline) -> List[CheckResult]:
        data, nc, group, order = p.cambrian, p.nc, p.group, p.order
        if data is None:
            return []
        checks = [
            self._check("one_kept_shard_per_hyperplane", 'Prop. "one": each hyperplane keeps exactly one shard',
                        lambda: one_shard_per_hyperplane_failures(data)),
            self._check("sortables_count", 'Thm. "nc": sortable elements and noncrossing partitions are equinumerous',
                        lambda: self._equal((len(data.sortables), len(nc)),
                                            (coxeter_catalan(group.ctype), coxeter_catalan(group.ctype)))),
            self._check("nc_lattice", 'Cor. "lattice": the noncrossing partition lattice is a lattice', nc.poset.is_lattice),
            self._check("nc_graded", 'Thm. "nc": the noncrossing partition lattice is graded by reflection length',
                        lambda: [u for u in nc.elements if nc.poset.heights[u] != nc.rank(u)]),
            self._check("nc_self_dual", 'Prop. "nc inv op": u -> u^-1 c reverses the noncrossing order', nc.is_self_dual),
            self._check("fix_injective", 'Thm. "isom": fixed spaces separate noncrossing partitions', nc.fix_is_injective),
            self._check("absolute_length", 'Thm. "isom": reflection length is the codimension of the fixed space',
                        nc.absolute_length_failures),
            self._check("fix_mask", 'Thm. "isom": the reflections below u are those whose hyperplanes contain Fix(u)',
                        nc.fix_mask_failures),
            self._check("nc_mobius", 'Cor. "nc mobius": Moebius value counts noncrossing partitions of full support',
                        lambda: self._pair(nc_mobius(nc))),
        ]
        report = verify_isomorphism(data, nc, order)
        checks.append(CheckResult("nc_isomorphism", 'Thm. "isom": nc is an isomorphism from the sortable shard order',
                                  report.passed, "" if report.passed else str({k: v[:3] for k, v in report.failures.items() if v}),
                                  {k: len(v) for k, v in report.failures.items()}))
        if str(group.ctype) == "A3" and tuple(data.order) in ((0, 2, 1), (2, 0, 1)):
            checks.append(self._check("sortable_patterns", 'Thm. "nc": sortables avoid 312, 412, 342 and 341',
                                      lambda: sortable_pattern_check(data)))
        if group.rank <= 3 and group.size <= settings.ORACLE_MAX_ELEMENTS:
            checks.append(self._check("nc_independent_of_c", 'Thm. "isom": the isomorphism type of NC does not depend on c',
                                      lambda: self._nc_independent(p)))
        if p.geometric and is_bipartite(group, data.order):
            checks.append(self._check("bipartite_restriction", 'Prop. "sublattice": restricting to the bipartite cone keeps the order',
                                      lambda: bipartite_cone_restriction(data, order).isomorphic))
        if group.size <= settings.DEGREE2_EXHAUSTIVE_MAX:
            checks.append(self._check("degree_two", 'Prop. "degree 2": a sublattice quotient has degree at most two',
                                      lambda: self._degree2(p)))
        if group.size <= settings.ORACLE_MAX_ELEMENTS:
            checks.append(self._check("star_property", 'Prop. "star camb": the star of a codimension-two face is a rank-two Cambrian fan',
                                      lambda: star_property_failures(quotient_fan(data.congruence, p.fan))))
        return checks

    def triangulation_suite(self, p: Pipeline) -> List[CheckResult]:
        weak, order = p.weak, p.order
        if weak.size > settings.ORACLE_MAX_ELEMENTS:
            return []
        fan, tri = p.fan, p.triangulation
        checks = [
            self._check("fan_faces", 'Prop. "facial": faces are the facial intervals',
                        lambda: self._equal(len(fan), len(fan_faces_by_facets(weak)))),
            self._check("shelling_partition", 'Thm. "shelling": faces partition into the intervals [G(R), R]',
                        lambda: shelling_interval_partition(weak)["partition"]),
            self._check("pulled_maximal", 'Thm. "zon chain tri": maximal simplices correspond to maximal chains',
                        lambda: self._equal(tri.maximal_count(), order.poset.maximal_chain_count())),
            self._check("pulled_f_vector", 'Thm. "zon chain tri": the pulling triangulation and the order complex share f-vectors',
                        lambda: self._equal(tri.f_vector, order.poset.order_complex_f_vector())),
            self._check("delta_bijection", 'Thm. "zon chain tri": delta is a dimension-preserving bijection with inverse gamma',
                        lambda: check_delta(order, tri).passed),
        ]
        if p.geometric:
            checks.append(self._check("fan_geometric_counts", 'Prop. "facial": exact face enumeration agrees with facial intervals',
                                      lambda: self._equal(geometric_fan_counts(weak), fan.counts_by_dim())))
        for label, congruence in self._targets(p):
            checks.extend(self._quotient_triangulation_checks(p, congruence, label))
        return checks

    # Pieces

    def _targets(self, p: Pipeline) -> List:
        targets = []
        if p.congruence is not None:
            targets.append(("contracted", p.congruence))
        if p.cambrian is not None:
            targets.append(("cambrian", p.cambrian.congruence))
        return targets

    def _congruence_checks(self, p: Pipeline, congruence: Congruence, label: str) -> List[CheckResult]:
        order = p.order
        quotient = QuotientShardOrder(congruence, order)
        qlattice = quotient_lattice(congruence)
        checks = [
            self._check(f"{label}_classes_are_intervals", 'Prop. "cong char": congruence classes are intervals',
                        congruence.interval_failures),
            self._check(f"{label}_projections_monotone", 'Prop. "cong char": class projections are order-preserving',
                        congruence.monotonicity_failures),
            self._check(f"{label}_forcing_closed", 'Prop. "good enough": removing a shard removes everything it forces',
                        congruence.good_enough_failures),
            self._check(f"{label}_bottoms", 'Prop. "bottom char": bottoms are the elements with no contracted canonical joinand',
                        congruence.bottom_characterization_failures),
            self._check(f"{label}_quotient_lattice", 'Prop. "bottoms": the quotient is a lattice', qlattice.is_lattice),
            self._check(f"{label}_cover_lemma", 'Prop. "cover lemma": covers of a bottom match covers of its class',
                        lambda: cover_lemma_failures(congruence, qlattice)),
            self._check(f"{label}_restriction", 'Prop. "restrict bijection": quotient labels agree with the restricted shard order',
                        quotient.restriction_failures),
            self._check(f"{label}_join_sublattice", 'Prop. "cong sub": bottoms form a join-sublattice of the shard order',
                        quotient.join_sublattice_failures),
            self._check(f"{label}_quotient_graded", 'Prop. "quotient graded": the quotient shard order is graded by descents',
                        quotient.is_graded_by_descents),
            self._check(f"{label}_quotient_atomic", 'Prop. "quotient atomic coatomic": the quotient shard order is atomic and coatomic',
                        lambda: quotient.poset.is_atomic() and quotient.poset.is_coatomic()),
            self._check(f"{label}_quotient_mobius", 'Thm. "quotient mobius": quotient Moebius value is the signed sum of projected parabolics',
                        lambda: self._pair(quotient.mobius())),
        ]
        if ambient_rank(p.weak) <= settings.GEOMETRY_MAX_RANK and p.weak.size <= settings.ORACLE_MAX_ELEMENTS:
            checks.append(self._check(f"{label}_lower_intervals", 'Prop. "lower int quotient": lower intervals are quotients of subarrangements',
                                      quotient.lower_interval_failures))
        if p.geometric:
            checks.append(self._check(f"{label}_class_cones", 'Prop. "cong char": a class is the cone of its bottom\'s lower and top\'s upper facets',
                                      congruence.quotient_cone_failures))
        return checks

    def _parabolic_checks(self, p: Pipeline, K) -> List[CheckResult]:
        name = "parabolic_" + ("".join(str(b + 1) for b in K) or "empty")
        congruence = parabolic_congruence(p.shards, K)
        return [
            self._check(f"{name}_classes", 'Thm. "parabolic quotient": the parabolic quotient is the weak order of W_K',
                        lambda: self._equal(len(congruence), p.order.parabolic_size(K))),
            self._check(f"{name}_homomorphism", 'Thm. "parabolic quotient": w -> w_K preserves meets and joins',
                        lambda: parabolic_homomorphism_failures(p.shards, K)),
        ]

    def _quotient_triangulation_checks(self, p: Pipeline, congruence: Congruence, label: str) -> List[CheckResult]:
        qfan = quotient_fan(congruence, p.fan)
        qtri = quotient_triangulation(congruence, qfan)
        quotient = QuotientShardOrder(congruence, p.order)
        checks = [
            self._check(f"{label}_fan_intervals", 'Prop. "facial": maximal cones around a face form an interval',
                        lambda: quotient_fan_interval_failures(congruence, qfan)),
            self._check(f"{label}_quotient_f_vector", 'Thm. "chain tri cong": the quotient triangulation and the quotient order complex share f-vectors',
                        lambda: self._equal(qtri.f_vector, quotient.poset.order_complex_f_vector())),
            self._check(f"{label}_quotient_delta", 'Thm. "chain tri cong": delta restricts to the quotient triangulation',
                        lambda: check_quotient_delta(p.order, congruence, qtri, p.triangulation).passed),
        ]
        if p.geometric:
            checks.append(self._check(f"{label}_quotient_fan_geometric", 'Prop. "facial": exact faces of the class cones',
                                      lambda: self._equal(geometric_quotient_counts(congruence), qfan.counts_by_dim())))
        probe = subcomplex_probe(p.triangulation, qtri, congruence)
        checks.append(CheckResult(f"{label}_subcomplex_probe", 'Thm. "chain tri cong": exploratory: quotient triangulation inside the full one',
                                  True, f"subcomplex={probe.subcomplex}, induced={probe.induced}", probe.subcomplex))
        return checks

    def _negation_failures(self, p: Pipeline) -> List[str]:
        order, shards = p.order, p.shards
        negate = {j: shards.antipodal_shard(j) for j in order.ji_elements}
        image = {}
        for w in range(p.weak.size):
            mask = sum(1 << order.ji_bit[negate[j]] for j in order.label_set(w))
            if mask not in order.by_label:
                return [p.weak.label(w)]
            image[w] = order.by_label[mask]
        return [p.weak.label(u) for u in image for v in image
                if order.preceq(u, v) != order.preceq(image[u], image[v])][:10]

    def _fiber_failures(self, p: Pipeline) -> List[str]:
        order = p.order
        labels = set()
        for face in p.fan.faces:
            cell = face.cell
            mask = 0
            for q, r, _ in p.weak.covers:
                if q in cell and r in cell:
                    mask |= 1 << order.ji_bit[p.shards.cover_shard[(q, r)]]
            labels.add(mask)
        return [p.weak.label(w) for w in range(p.weak.size) if order.labels[w] not in labels]

    def _psi_geometry(self, p: Pipeline) -> List[CheckResult]:
        order, weak = p.order, p.weak
        arrangement = geometry_of(weak.system)
        cones = {w: order.psi(w).cone for w in range(weak.size)}
        basic = list(weak.system.basic_hyperplanes)
        flats = set()
        for size in range(len(basic) + 1):
            for K in combinations(basic, size):
                normals = [arrangement.hyperplanes[b].normal for b in K]
                flats.add(Subspace.from_equations(arrangement.field, arrangement.dim, normals).key())

        def faces_in_psi():
            keys = {cone.key() for cone in cones.values()}
            missing = []
            for w, cone in cones.items():
                view = cone.faces()
                if any(view.payload[rs].key() not in keys for rs in view.nodes):
                    missing.append(weak.label(w))
            return missing

        return [
            self._check("psi_codim", 'Prop. "bijection": codimension of psi(w) is the number of descents',
                        lambda: [weak.label(w) for w, c in cones.items() if c.codim != order.rank(w)]),
            self._check("psi_containment", 'Prop. "preceq combin": psi(u) contains psi(v) exactly when u is below v',
                        lambda: [(u, v) for u in cones for v in cones
                                 if cones[u].contains(cones[v]) != order.preceq(u, v)]),
            self._check("psi_faces", 'Prop. "shard face": every face of a shard intersection is a shard intersection', faces_in_psi),
            self._check("psi_minimal_face", 'Prop. "standard face": the minimal face of psi(w) is an intersection of basic hyperplanes',
                        lambda: [weak.label(w) for w, c in cones.items() if c.lineality_space().key() not in flats]),
        ]

    def _product_isomorphic(self, p: Pipeline) -> bool:
        posets = []
        for family, n in p.group.ctype.factors:
            factor = build_group(CoxeterType(((family, n),)))
            posets.append(ShardOrder(Shards(WeakOrder(factor))).poset)
        nodes = list(product(*[range(len(q)) for q in posets]))
        combined = PosetView.from_relation(
            nodes, lambda a, b: all(q.leq(q.nodes[i], q.nodes[j]) for q, i, j in zip(posets, a, b)))
        return p.order.poset.is_isomorphic(combined)

    def _nc_independent(self, p: Pipeline) -> bool:
        reference = p.nc.poset
        for order in permutations(range(p.group.rank)):
            if not NCLattice(p.group, p.group.coxeter_element(order)).poset.is_isomorphic(reference):
                return False
        return True

    def _degree2(self, p: Pipeline):
        result = degree2_check(p.order, sample_congruences(p.shards, [p.cambrian.generators]))
        return not result["counterexamples"], result

    @staticmethod
    def _equal(got, expected):
        return got == expected, got

    @staticmethod
    def _pair(values):
        return values[0] == values[1], values
