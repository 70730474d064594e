"""Checks for DAG decompositions: coverage, connectivity, edge covering.

Two formulations of the edge-covering condition are implemented. The
per-arc/per-source form asks that whenever a vertex u is introduced at a
node j, every graph edge (u, v) has v in some bag at or below j. The
guarding form asks that for every arc (i, j) the intersection of the two
bags guards everything at or below j that is missing from bag i. They are
equivalent on decompositions satisfying connectivity; the test suite checks
the equivalence empirically on valid and randomly damaged samples.

All set work runs on integer bitmasks, one bit per graph vertex, so
validation stays near linear in the decomposition size.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .decomposition import DagDecomposition


@dataclass
class ValidationReport:
    acyclic: bool
    vertices_covered: bool
    connectivity: bool
    edges_covered_3a: bool  # source bags cover their vertices' edges
    edges_covered_3b: bool  # arcs cover their introduced vertices' edges
    d3_original: bool | None  # guarding form; None when not evaluated
    width: int
    violations: list[tuple[str, tuple]] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return (
            self.acyclic
            and self.vertices_covered
            and self.connectivity
            and self.edges_covered_3a
            and self.edges_covered_3b
        )

    def to_json_dict(self) -> dict:
        return {
            "acyclic": self.acyclic,
            "vertices_covered": self.vertices_covered,
            "connectivity": self.connectivity,
            "edges_covered_3a": self.edges_covered_3a,
            "edges_covered_3b": self.edges_covered_3b,
            "d3_original": self.d3_original,
            "width": self.width,
            "valid": self.valid,
            "violations": [[kind, list(w)] for kind, w in self.violations],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"


class _Mask:
    """Vertex set <-> bitmask translation for one fixed vertex universe."""

    def __init__(self, vertices):
        self.order = sorted(vertices)
        self.index = {v: i for i, v in enumerate(self.order)}
        self.full = (1 << len(self.order)) - 1

    def of(self, vertices) -> int:
        m = 0
        for v in vertices:
            m |= 1 << self.index[v]
        return m

    def set_of(self, mask: int) -> set:
        out = set()
        i = 0
        while mask:
            if mask & 1:
                out.add(self.order[i])
            mask >>= 1
            i += 1
        return out


def _reach_masks(decomp: DagDecomposition, order: list[int], mask: _Mask) -> dict[int, int]:
    """For each node, the union of bags over all nodes reachable from it."""
    succ = decomp.successors()
    reach: dict[int, int] = {}
    for n in reversed(order):
        m = mask.of(decomp.bags[n])
        for s in succ[n]:
            m |= reach[s]
        reach[n] = m
    return reach


def check_vertices_covered(decomp: DagDecomposition, vertices) -> bool:
    return set().union(*decomp.bags.values()) == set(vertices) if decomp.bags else not set(vertices)


def check_connectivity(decomp: DagDecomposition) -> bool:
    """Bags containing any given vertex must be convex under reachability."""
    ok, _ = _connectivity(decomp)
    return ok


def _connectivity(decomp: DagDecomposition):
    order = decomp.topological_order()
    if order is None:
        return False, [("acyclic", ())]
    universe = set().union(*decomp.bags.values()) if decomp.bags else set()
    mask = _Mask(universe)
    reach = _reach_masks(decomp, order, mask)
    violations = []
    # Once a vertex is dropped along an arc it may never reappear below:
    # a reappearance at k with i -> j on a path i..k shows X_i and X_k
    # sharing a vertex that bag j lacks.
    for i, j in decomp.arcs:
        dropped = mask.of(decomp.bags[i]) & ~mask.of(decomp.bags[j])
        bad = dropped & reach[j]
        if bad:
            for v in sorted(mask.set_of(bad)):
                violations.append(("connectivity", (i, j, v)))
    return not violations, violations


def check_edges_covered(decomp: DagDecomposition, edges) -> tuple[bool, bool]:
    """(source condition, arc condition); see the module docstring."""
    _, _, ok_a, ok_b, viol = _edges_covered(decomp, edges)
    return ok_a, ok_b


def _edges_covered(decomp: DagDecomposition, edges):
    order = decomp.topological_order()
    if order is None:
        return None, None, False, False, [("acyclic", ())]
    universe = set().union(*decomp.bags.values()) if decomp.bags else set()
    edges = [e for e in edges]
    for u, v in edges:
        universe.add(u)
        universe.add(v)
    mask = _Mask(universe)
    reach = _reach_masks(decomp, order, mask)

    out_edges: dict[int, list[int]] = {}
    for u, v in edges:
        out_edges.setdefault(u, []).append(v)

    violations = []
    ok_a = True
    has_pred = {n: False for n in decomp.nodes}
    for _, j in decomp.arcs:
        has_pred[j] = True
    for j in decomp.nodes:
        if has_pred[j]:
            continue
        for u in decomp.bags[j]:
            for v in out_edges.get(u, ()):
                if not (reach[j] >> mask.index[v]) & 1:
                    ok_a = False
                    violations.append(("edges_covered_3a", (j, u, v)))

    ok_b = True
    for i, j in decomp.arcs:
        introduced = decomp.bags[j] - decomp.bags[i]
        for u in introduced:
            for v in out_edges.get(u, ()):
                if not (reach[j] >> mask.index[v]) & 1:
                    ok_b = False
                    violations.append(("edges_covered_3b", (i, j, u, v)))
    return mask, reach, ok_a, ok_b, violations


def guards(w: set, vp: set, edges) -> bool:
    """True iff every edge leaving vp lands back in vp or in w."""
    for u, v in edges:
        if u in vp and v not in vp and v not in w:
            return False
    return True


def check_d3(decomp: DagDecomposition, edges) -> bool:
    """Original guarding form of the edge-covering condition.

    For every arc (i, j): bags(i) intersect bags(j) guards everything in
    bags at or below j minus bag i. For every source j: the union of bags
    at or below j is guarded by the empty set.
    """
    order = decomp.topological_order()
    if order is None:
        return False
    edges = list(edges)
    universe = set().union(*decomp.bags.values()) if decomp.bags else set()
    for u, v in edges:
        universe.add(u)
        universe.add(v)
    mask = _Mask(universe)
    reach = _reach_masks(decomp, order, mask)

    has_pred = {n: False for n in decomp.nodes}
    for _, j in decomp.arcs:
        has_pred[j] = True
    for j in decomp.nodes:
        if not has_pred[j]:
            below = mask.set_of(reach[j])
            if not guards(set(), below, edges):
                return False
    for i, j in decomp.arcs:
        below_minus_i = mask.set_of(reach[j] & ~mask.of(decomp.bags[i]))
        w = decomp.bags[i] & decomp.bags[j]
        if not guards(set(w), below_minus_i, edges):
            return False
    return True


def validate_decomposition(
    decomp: DagDecomposition,
    vertices,
    edges,
    with_d3: bool = False,
) -> ValidationReport:
    """Run every check against the given graph and collect witnesses."""
    edges = list(edges)
    order = decomp.topological_order()
    acyclic = order is not None
    width = decomp.width()
    covered = check_vertices_covered(decomp, vertices)
    violations: list[tuple[str, tuple]] = []
    if not covered:
        missing = set(vertices) - set().union(*decomp.bags.values())
        extra = set().union(*decomp.bags.values()) - set(vertices)
        for v in sorted(missing):
            violations.append(("vertices_covered_missing", (v,)))
        for v in sorted(extra):
            violations.append(("vertices_covered_extra", (v,)))

    if acyclic:
        conn_ok, conn_viol = _connectivity(decomp)
        violations.extend(conn_viol)
        _, _, ok_a, ok_b, edge_viol = _edges_covered(decomp, edges)
        violations.extend(edge_viol)
        d3 = check_d3(decomp, edges) if with_d3 else None
    else:
        conn_ok = ok_a = ok_b = False
        d3 = False if with_d3 else None
        violations.append(("acyclic", ()))

    return ValidationReport(
        acyclic=acyclic,
        vertices_covered=covered,
        connectivity=conn_ok,
        edges_covered_3a=ok_a,
        edges_covered_3b=ok_b,
        d3_original=d3,
        width=width,
        violations=violations,
    )


def validate_cfg_decomposition(decomp: DagDecomposition, cfg, with_d3: bool = False) -> ValidationReport:
    return validate_decomposition(decomp, cfg.vertex_ids(), cfg.edges(), with_d3=with_d3)
