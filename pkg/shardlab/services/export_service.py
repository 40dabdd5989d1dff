import json
import logging
import os
from typing import Dict, List, Optional, Sequence, Tuple

from jinja2 import Environment, FileSystemLoader, select_autoescape

from shardlab.api.models import RunConfig
from shardlab.config.settings import settings
from shardlab.engine.errors import UnknownTarget
from shardlab.engine.poset import PosetView
from shardlab.models.report import CheckResult
from shardlab.services.build_service import BuildService, Pipeline

logger = logging.getLogger(__name__)

TEMPLATES_DIR = os.path.join(os.path.dirname(os.path.dirname(__file__)), "templates")

TARGETS = ("weak", "shard_order", "nc", "digraph", "triangulation")


class Graph:
    """Nodes and edges ready for rendering; everything is sorted so output is reproducible"""

    def __init__(self, name: str, nodes: List[Dict], edges: List[Dict], hasse: bool = True):
        self.name = name
        self.nodes = sorted(nodes, key=lambda n: n["id"])
        self.edges = sorted(edges, key=lambda e: (e["source"], e["target"]))
        self.hasse = hasse

    def to_dict(self) -> Dict:
        return {"name": self.name, "nodes": self.nodes, "edges": self.edges}


class ExportService:
    """Service for exporting posets, the shard digraph and triangulations"""

    def __init__(self, build_service: Optional[BuildService] = None):
        self.build_service = build_service or BuildService()
        self.env = Environment(
            loader=FileSystemLoader(TEMPLATES_DIR),
            autoescape=select_autoescape(enabled_extensions=("xml.j2",), default_for_string=False, default=False),
            keep_trailing_newline=True,
        )

    def export(self, config: RunConfig, target: str) -> str:
        if target not in TARGETS:
            raise UnknownTarget(f"unknown export target {target!r}; expected one of {', '.join(TARGETS)}")
        p = self.build_service.load(config)
        if target == "triangulation":
            return self._triangulation(p, config.format)
        graph = self._graph(p, target)
        if config.format == "json":
            return json.dumps(graph.to_dict(), indent=2, sort_keys=True)
        if config.format == "dot":
            return self.env.get_template("hasse.dot.j2").render(
                name=graph.name, nodes=graph.nodes, edges=graph.edges, hasse=graph.hasse)
        lines = [f"# {graph.name}: {len(graph.nodes)} nodes, {len(graph.edges)} edges"]
        labels = {n["id"]: n["label"] for n in graph.nodes}
        lines += [f"{labels[e['source']]} -> {labels[e['target']]}" for e in graph.edges]
        return "\n".join(lines) + "\n"

    def write(self, content: str, config: RunConfig, target: str) -> str:
        """Write an export next to the bundles; returns the file path"""
        out = config.out or settings.OUTPUT_DIR
        os.makedirs(out, exist_ok=True)
        extension = {"json": "json", "dot": "dot", "text": "txt"}[config.format]
        path = os.path.join(out, f"{target}_{config.stem}.{extension}")
        with open(path, "w") as f:
            f.write(content)
        logger.info(f"Wrote {path}")
        return path

    def render_junit(self, checks: Sequence[CheckResult], name: str) -> str:
        failures = sum(1 for c in checks if not c.passed)
        return self.env.get_template("junit.xml.j2").render(name=name, checks=checks, failures=failures)

    # Targets

    def _graph(self, p: Pipeline, target: str) -> Graph:
        weak = p.weak
        if target == "weak":
            nodes = [{"id": w, "label": weak.label(w)} for w in range(weak.size)]
            hyperplane = p.group.root_label if p.group is not None else (lambda h: f"H{h}")
            edges = [{"source": q, "target": r, "label": hyperplane(h)} for q, r, h in weak.covers]
            return Graph("weak_order", nodes, edges)
        if target == "shard_order":
            return self._hasse("shard_order", p.order.poset, weak.label)
        if target == "nc":
            if p.nc is None:
                raise ValueError("coxeter_element: the nc export needs a Coxeter element")
            return self._hasse("noncrossing", p.nc.poset, p.group.label)
        nodes = [{"id": j, "label": weak.label(j)} for j in p.shards.ids]
        edges = [{"source": a, "target": b, "label": ""} for a, b in p.shards.digraph.arrows]
        return Graph("shard_digraph", nodes, edges, hasse=False)

    @staticmethod
    def _hasse(name: str, poset: PosetView, label) -> Graph:
        nodes = [{"id": x, "label": label(x)} for x in poset.nodes]
        edges = [{"source": a, "target": b, "label": ""} for a, b in poset.covers]
        return Graph(name, nodes, edges)

    def _triangulation(self, p: Pipeline, fmt: str) -> str:
        tri = p.triangulation
        label = p.weak.label
        if fmt == "json":
            return json.dumps(tri.to_dict(label), indent=2, sort_keys=True)
        vertices = sorted({v for s in tri.simplices for v in s})
        facets: List[Tuple[int, ...]] = sorted(tuple(sorted(s)) for s in tri.simplices)
        if fmt == "dot":
            edges = {(a, b) for s in facets for i, a in enumerate(s) for b in s[i + 1:]}
            nodes = [{"id": v, "label": label(v)} for v in vertices]
            graph = Graph("triangulation", nodes, [{"source": a, "target": b, "label": ""} for a, b in edges])
            return self.env.get_template("hasse.dot.j2").render(
                name=graph.name, nodes=graph.nodes, edges=graph.edges, hasse=True)
        position = {v: k for k, v in enumerate(vertices)}
        lines = ["SIMPLICIAL", f"{len(vertices)} {len(facets)}"]
        lines += [label(v) for v in vertices]
        lines += [" ".join([str(len(s))] + [str(position[v]) for v in s]) for s in facets]
        return "\n".join(lines) + "\n"
