"""Trimming and generic trimming, with replayable traces and type classifiers."""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import (
    Edge,
    Graph,
    GraphError,
    components,
    delete_edges,
    delete_vertices,
    find_minimal_cut,
    induced_subgraph,
)

DELETE_VERTEX = "delete-low-degree-vertex"
CUT_SMALL = "remove-cut-of-size-1-or-2"
CUT_THREE = "remove-3-cut-no-common-vertex"


class NoMissingPairError(GraphError):
    """All three neighbours of the chosen vertex are already pairwise adjacent."""


@dataclass(frozen=True)
class TrimStep:
    kind: str
    removed_vertices: tuple[int, ...]
    removed_edges: tuple[Edge, ...]
    degree: int | None = None  # degree at removal time, vertex steps only

    def to_dict(self) -> dict:
        d = {
            "kind": self.kind,
            "vertices": list(self.removed_vertices),
            "edges": [list(e) for e in self.removed_edges],
        }
        if self.degree is not None:
            d["degree"] = self.degree
        return d


@dataclass(frozen=True)
class TrimTrace:
    steps: tuple[TrimStep, ...]
    initial_graph: Graph
    final_graph: Graph
    label_map: tuple[int, ...]  # final index -> original index

    def to_dict(self) -> dict:
        return {
            "steps": [s.to_dict() for s in self.steps],
            "final": {
                "vertex_count": self.final_graph.vertex_count,
                "edges": [list(e) for e in self.final_graph.edge_list],
                "labels": list(self.label_map),
            },
        }


@dataclass(frozen=True)
class ClassificationFlags:
    is_trimmed: bool
    is_generically_trimmed: bool
    is_type_a4: bool
    is_type_b4: bool
    n4: int
    degree3_count_per_component: tuple[int, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "is_trimmed": self.is_trimmed,
            "is_generically_trimmed": self.is_generically_trimmed,
            "is_type_a4": self.is_type_a4,
            "is_type_b4": self.is_type_b4,
            "n4": self.n4,
            "degree3_count_per_component": list(self.degree3_count_per_component),
        }


def classify(g: Graph) -> ClassificationFlags:
    degs = g.degrees()
    comps = components(g)
    d3 = tuple(sum(1 for v in c if degs[v] == 3) for c in comps)
    no_small_cut = find_minimal_cut(g, 2) is None if g.edge_count else True
    trimmed = all(d >= 3 for d in degs) and no_small_cut
    gen_trimmed = trimmed and (g.edge_count == 0 or find_minimal_cut(g, 3, True) is None)
    degs34 = all(d in (3, 4) for d in degs)
    a4 = degs34 and all(c >= 1 for c in d3) and no_small_cut
    b4 = degs34 and all(c >= 4 for c in d3) and gen_trimmed
    return ClassificationFlags(
        trimmed, gen_trimmed, a4, b4, sum(1 for d in degs if d == 4), d3
    )


def _run(g: Graph, generic: bool) -> TrimTrace:
    cur = g
    labels = list(range(g.vertex_count))
    steps: list[TrimStep] = []
    while True:
        degs = cur.degrees()
        low = next((v for v, d in enumerate(degs) if d <= 2), None)
        if low is not None:
            # isolated vertices are dropped by this rule as well
            removed = tuple(
                sorted((labels[i], labels[j]) for i, j in cur.edges if low in (i, j))
            )
            steps.append(TrimStep(DELETE_VERTEX, (labels[low],), removed, degs[low]))
            cur, kept = delete_vertices(cur, [low])
            labels = [labels[k] for k in kept]
            continue
        if cur.edge_count == 0:
            break
        cut = find_minimal_cut(cur, 3 if generic else 2, require_no_common_vertex=True)
        if cut is None:
            break
        kind = CUT_THREE if len(cut.edges_removed) == 3 else CUT_SMALL
        removed = tuple(sorted((labels[i], labels[j]) for i, j in cut.edges_removed))
        steps.append(TrimStep(kind, (), removed))
        cur = delete_edges(cur, cut.edges_removed)
    return TrimTrace(tuple(steps), g, cur, tuple(labels))


def trim(g: Graph) -> TrimTrace:
    """Delete vertices of degree <= 2 (lowest index first), otherwise remove the
    lexicographically smallest minimal cut of size <= 2, until trimmed."""
    return _run(g, generic=False)


def generic_trim(g: Graph) -> TrimTrace:
    """As :func:`trim`, plus removal of 3-edge cuts with no common vertex."""
    return _run(g, generic=True)


def replay(trace: TrimTrace) -> tuple[Graph, tuple[int, ...]]:
    """Re-apply a trace's steps to its initial graph."""
    g = trace.initial_graph
    alive = set(range(g.vertex_count))
    edges = set(g.edges)
    for s in trace.steps:
        for e in s.removed_edges:
            if e not in edges:
                raise GraphError(f"step removes absent edge {e}")
            edges.discard(e)
        for v in s.removed_vertices:
            if v not in alive:
                raise GraphError(f"step removes absent vertex {v}")
            if any(v in e for e in edges):
                raise GraphError(f"vertex {v} removed with edges still attached")
            alive.discard(v)
    kept = sorted(alive)
    new = {old: k for k, old in enumerate(kept)}
    return Graph(len(kept), frozenset((new[i], new[j]) for i, j in edges)), tuple(kept)


def reverse_one_extension(g: Graph, t: int) -> Graph:
    """Delete degree-3 vertex ``t`` and join its first non-adjacent neighbour pair."""
    nb = sorted(g.neighbors(t))
    if len(nb) != 3:
        raise GraphError(f"vertex {t} has degree {len(nb)}, expected 3")
    i, j, k = nb
    pair = next(((a, b) for a, b in ((i, j), (i, k), (j, k)) if not g.has_edge(a, b)), None)
    if pair is None:
        raise NoMissingPairError(f"neighbours of {t} are pairwise adjacent")
    h = Graph(g.vertex_count, g.edges | {pair})
    return delete_vertices(h, [t])[0]


def k4_neighbourhood(g: Graph, t: int) -> bool:
    """True iff ``t`` has degree 3 and its closed neighbourhood induces K4."""
    nb = sorted(g.neighbors(t))
    if len(nb) != 3:
        return False
    sub, _ = induced_subgraph(g, [t, *nb])
    return sub.edge_count == 6
