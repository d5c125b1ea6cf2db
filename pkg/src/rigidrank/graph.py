"""Simple undirected graphs, connectivity and small edge cuts."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable

Edge = tuple[int, int]

MAX_EDGE_CONN_CAP = 8
MAX_VERTEX_CONN_CAP = 5

# fixed seed for cycle-space labels; results never depend on it, only speed
_LABEL_SEED = 0x5EED


class GraphError(ValueError):
    """Invalid graph construction or a violated precondition."""


def _norm(e) -> Edge:
    i, j = int(e[0]), int(e[1])
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Graph:
    """Finite simple graph on vertices ``0..vertex_count-1``.

    Edges are stored as sorted pairs ``(i, j)`` with ``i < j``.
    """

    vertex_count: int
    edges: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.vertex_count < 0:
            raise GraphError("vertex_count must be non-negative")
        edges = frozenset(self.edges)
        for i, j in edges:
            if not (0 <= i < j < self.vertex_count):
                raise GraphError(f"invalid edge ({i}, {j}) for {self.vertex_count} vertices")
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable) -> "Graph":
        """Build from arbitrary-order pairs, rejecting loops and repeated edges."""
        seen: set[Edge] = set()
        for e in edges:
            if int(e[0]) == int(e[1]):
                raise GraphError(f"self-loop at vertex {e[0]}")
            ne = _norm(e)
            if ne in seen:
                raise GraphError(f"parallel edge {ne}")
            seen.add(ne)
        return cls(n, frozenset(seen))

    @cached_property
    def edge_list(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return tuple(frozenset(a) for a in adj)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> frozenset[int]:
        _check_vertex(self, v)
        return self.adjacency[v]

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def has_edge(self, i: int, j: int) -> bool:
        return _norm((i, j)) in self.edges

    def __repr__(self):
        return f"Graph(n={self.vertex_count}, m={self.edge_count})"


def _check_vertex(g: Graph, v: int) -> None:
    if not (0 <= v < g.vertex_count):
        raise IndexError(f"vertex {v} out of range for {g.vertex_count} vertices")


def degree(g: Graph, v: int) -> int:
    _check_vertex(g, v)
    return len(g.adjacency[v])


def is_regular(g: Graph, d: int) -> bool:
    return all(x == d for x in g.degrees())


def components(g: Graph) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by smallest vertex."""
    seen = [False] * g.vertex_count
    out = []
    for s in range(g.vertex_count):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            u = stack.pop()
            for w in g.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        out.append(sorted(comp))
    return out


def component_count(g: Graph) -> int:
    return len(components(g))


def is_connected(g: Graph) -> bool:
    return g.vertex_count > 0 and component_count(g) == 1


def _count_components(n: int, edges: Iterable[Edge]) -> int:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    count = n
    for i, j in edges:
        a, b = find(i), find(j)
        if a != b:
            parent[a] = b
            count -= 1
    return count


# ---------------------------------------------------------------- subgraphs


def delete_vertex(g: Graph, v: int, return_map: bool = False):
    """Remove ``v`` and its incident edges, compacting indices.

    With ``return_map`` also returns ``kept`` where ``kept[new] == old``.
    """
    g2, kept = delete_vertices(g, [v])
    return (g2, kept) if return_map else g2


def delete_vertices(g: Graph, vs: Iterable[int]) -> tuple[Graph, list[int]]:
    drop = set()
    for v in vs:
        _check_vertex(g, v)
        drop.add(v)
    kept = [u for u in range(g.vertex_count) if u not in drop]
    new = {old: k for k, old in enumerate(kept)}
    edges = frozenset(
        (new[i], new[j]) for i, j in g.edges if i not in drop and j not in drop
    )
    return Graph(len(kept), edges), kept


def delete_edges(g: Graph, F: Iterable) -> Graph:
    F = {_norm(e) for e in F}
    missing = F - g.edges
    if missing:
        raise IndexError(f"edges not in graph: {sorted(missing)}")
    return Graph(g.vertex_count, g.edges - F)


def induced_subgraph(g: Graph, vs: Iterable[int]) -> tuple[Graph, list[int]]:
    keep = set(vs)
    return delete_vertices(g, [u for u in range(g.vertex_count) if u not in keep])


def disjoint_union(*gs: Graph) -> Graph:
    edges = []
    off = 0
    for h in gs:
        edges.extend((i + off, j + off) for i, j in h.edges)
        off += h.vertex_count
    return Graph(off, frozenset(edges))


def cartesian_product(g1: Graph, g2: Graph) -> Graph:
    """Cartesian product; vertex ``(u1, u2)`` gets index ``u1 * |V2| + u2``."""
    if g1.vertex_count == 0 or g2.vertex_count == 0:
        raise GraphError("cartesian product needs nonempty factors")
    n2 = g2.vertex_count
    edges = set()
    for u1 in range(g1.vertex_count):
        for a, b in g2.edges:
            edges.add((u1 * n2 + a, u1 * n2 + b))
    for a, b in g1.edges:
        for u2 in range(n2):
            edges.add((a * n2 + u2, b * n2 + u2))
    return Graph(g1.vertex_count * n2, frozenset(edges))


# ---------------------------------------------------------------- small cuts


@dataclass(frozen=True)
class CutWitness:
    edges_removed: tuple[Edge, ...]
    components_before: int
    components_after: int
    minimal: bool = True

    def __post_init__(self):
        if self.components_after <= self.components_before:
            raise GraphError("cut witness does not increase the component count")


def _cycle_labels(g: Graph, edges: list[Edge]) -> dict[Edge, int]:
    """Random GF(2) cycle-space labels.

    Every edge cut XORs to zero over its labels; the converse holds with high
    probability, so callers re-check candidates exactly.
    """
    rng = random.Random(_LABEL_SEED)
    n = g.vertex_count
    adj: list[list[Edge]] = [[] for _ in range(n)]
    for e in edges:
        adj[e[0]].append(e)
        adj[e[1]].append(e)
    parent_edge: list[Edge | None] = [None] * n
    order = []
    seen = [False] * n
    tree = set()
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        stack = [s]
        while stack:
            u = stack.pop()
            order.append(u)
            for e in adj[u]:
                w = e[0] + e[1] - u
                if not seen[w]:
                    seen[w] = True
                    parent_edge[w] = e
                    tree.add(e)
                    stack.append(w)
    label: dict[Edge, int] = {}
    acc = [0] * n
    for e in edges:
        if e not in tree:
            r = rng.getrandbits(64) | 1
            label[e] = r
            acc[e[0]] ^= r
            acc[e[1]] ^= r
    for u in reversed(order):
        pe = parent_edge[u]
        if pe is not None:
            label[pe] = acc[u]
            p = pe[0] + pe[1] - u
            acc[p] ^= acc[u]
    return label


def _is_cut(g: Graph, F: Iterable[Edge], before: int) -> bool:
    F = set(F)
    return _count_components(g.vertex_count, (e for e in g.edges if e not in F)) > before


def bridges(g: Graph) -> list[Edge]:
    edges = list(g.edge_list)
    lab = _cycle_labels(g, edges)
    c = component_count(g)
    return [e for e in edges if lab[e] == 0 and _is_cut(g, [e], c)]


def _two_cuts(g: Graph, edges: list[Edge], lab: dict[Edge, int], c: int):
    groups: dict[int, list[Edge]] = {}
    for e in edges:
        groups.setdefault(lab[e], []).append(e)
    out = []
    for grp in groups.values():
        for a, b in combinations(grp, 2):
            if _is_cut(g, (a, b), c):
                out.append((a, b))
    return sorted(out)


def _share_vertex(F: Iterable[Edge]) -> bool:
    F = list(F)
    common = set(F[0])
    for e in F[1:]:
        common &= set(e)
    return bool(common)


def _three_cuts(g: Graph, edges: list[Edge], lab: dict[Edge, int], c: int):
    # assumes no cut of size < 3 exists, so every 3-edge cut is minimal
    by_label: dict[int, list[Edge]] = {}
    for e in edges:
        by_label.setdefault(lab[e], []).append(e)
    out = []
    for a, b in combinations(edges, 2):
        for e in by_label.get(lab[a] ^ lab[b], ()):
            if e > b and _is_cut(g, (a, b, e), c):
                out.append((a, b, e))
    return out


def small_cuts(g: Graph, size: int) -> list[tuple[Edge, ...]]:
    """All edge sets of exactly ``size`` (1..3) whose removal increases the
    component count, assuming no smaller such set exists for sizes 2 and 3.
    Returned sorted lexicographically."""
    edges = list(g.edge_list)
    c = component_count(g)
    lab = _cycle_labels(g, edges)
    if size == 1:
        return [(e,) for e in edges if lab[e] == 0 and _is_cut(g, [e], c)]
    if size == 2:
        return _two_cuts(g, edges, lab, c)
    if size == 3:
        return sorted(_three_cuts(g, edges, lab, c))
    raise GraphError("cut size must be 1, 2 or 3")


def find_minimal_cut(
    g: Graph, max_size: int = 3, require_no_common_vertex: bool = False
) -> CutWitness | None:
    """Smallest minimal edge cut of size at most ``max_size``.

    Smaller cuts are preferred; ties go to the lexicographically smallest
    sorted edge tuple. With ``require_no_common_vertex``, 3-edge cuts whose
    edges all meet at one vertex are skipped. Disconnected input is allowed;
    a cut is any set that increases the component count.
    """
    if not 1 <= max_size <= 3:
        raise GraphError("max_size must be 1, 2 or 3")
    edges = list(g.edge_list)
    c = component_count(g)
    lab = _cycle_labels(g, edges)
    found: tuple[Edge, ...] | None = None
    for e in edges:
        if lab[e] == 0 and _is_cut(g, [e], c):
            found = (e,)
            break
    if found is None and max_size >= 2:
        two = _two_cuts(g, edges, lab, c)
        if two:
            found = two[0]
    if found is None and max_size >= 3:
        three = _three_cuts(g, edges, lab, c)
        if require_no_common_vertex:
            three = [t for t in three if not _share_vertex(t)]
        if three:
            found = min(three)
    if found is None:
        return None
    after = _count_components(g.vertex_count, (e for e in g.edges if e not in set(found)))
    return CutWitness(found, c, after, True)


def is_minimal_cut(g: Graph, F: Iterable[Edge]) -> bool:
    """Removal of ``F`` increases components and no proper subset does (checked directly)."""
    F = tuple(_norm(e) for e in F)
    c = component_count(g)
    if not _is_cut(g, F, c):
        return False
    for k in range(1, len(F)):
        for sub in combinations(F, k):
            if _is_cut(g, sub, c):
                return False
    return True


# ------------------------------------------------------------ connectivity


def _max_flow_capped(n: int, adj: list[list[int]], s: int, t: int, cap: int) -> int:
    """Unit-capacity undirected max flow from s to t, stopping at ``cap``."""
    flow: dict[tuple[int, int], int] = {}
    total = 0
    while total < cap:
        prev = [-1] * n
        prev[s] = s
        q = deque([s])
        while q and prev[t] == -1:
            u = q.popleft()
            for w in adj[u]:
                if prev[w] == -1 and flow.get((u, w), 0) < 1:
                    prev[w] = u
                    q.append(w)
        if prev[t] == -1:
            break
        v = t
        while v != s:
            u = prev[v]
            flow[(u, v)] = flow.get((u, v), 0) + 1
            flow[(v, u)] = flow.get((v, u), 0) - 1
            v = u
        total += 1
    return total


def edge_connectivity(g: Graph, cap: int = 5) -> int:
    """Edge connectivity, reported as ``min(lambda(g), cap)``.

    A return value equal to ``cap`` means "at least cap".
    """
    if cap < 1 or cap > MAX_EDGE_CONN_CAP:
        raise GraphError(f"cap must be in 1..{MAX_EDGE_CONN_CAP}")
    if not is_connected(g):
        raise GraphError("edge connectivity needs a connected nonempty graph")
    n = g.vertex_count
    if n == 1:
        return cap
    adj = [sorted(a) for a in g.adjacency]
    best = min(cap, min(len(a) for a in adj))
    for t in range(1, n):
        best = min(best, _max_flow_capped(n, adj, 0, t, best))
        if best == 0:
            break
    return best


def vertex_connectivity(g: Graph, cap: int = 4) -> int:
    """Vertex connectivity, reported as ``min(kappa(g), cap)``.

    Complete graphs have no separating vertex set and always report ``cap``.
    """
    import networkx as nx

    if cap < 1 or cap > MAX_VERTEX_CONN_CAP:
        raise GraphError(f"cap must be in 1..{MAX_VERTEX_CONN_CAP}")
    if not is_connected(g):
        raise GraphError("vertex connectivity needs a connected nonempty graph")
    n = g.vertex_count
    if g.edge_count == n * (n - 1) // 2:
        return cap
    return min(cap, nx.node_connectivity(to_networkx(g)))


def to_networkx(g: Graph):
    import networkx as nx

    h = nx.Graph()
    h.add_nodes_from(range(g.vertex_count))
    h.add_edges_from(g.edge_list)
    return h


# ---------------------------------------------------------------- text I/O


def write_edge_list(g: Graph) -> str:
    lines = [f"{g.vertex_count} {g.edge_count}"]
    lines.extend(f"{i} {j}" for i, j in g.edge_list)
    return "\n".join(lines) + "\n"


class ParseError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)


def parse_edge_list(text: str) -> Graph:
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty input", 1)
    head = lines[0].split()
    if len(head) != 2:
        raise ParseError("expected 'n m'", 1)
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise ParseError("expected two integers", 1) from None
    if n < 0 or m < 0:
        raise ParseError("negative count", 1)
    body = lines[1:]
    while body and not body[-1].strip():
        body.pop()
    if len(body) != m:
        raise ParseError(f"expected {m} edge lines, found {len(body)}", len(lines))
    edges: set[Edge] = set()
    for k, ln in enumerate(body, start=2):
        parts = ln.split()
        if len(parts) != 2:
            raise ParseError("expected 'i j'", k)
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError("expected two integers", k) from None
        if not (0 <= i < j < n):
            raise ParseError(f"edge ({i}, {j}) needs 0 <= i < j < {n}", k)
        if (i, j) in edges:
            raise ParseError(f"duplicate edge ({i}, {j})", k)
        edges.add((i, j))
    return Graph(n, frozenset(edges))


def to_dot(g: Graph, name: str = "G") -> str:
    body = "".join(f"  {i} -- {j};\n" for i, j in g.edge_list)
    nodes = "".join(f"  {v};\n" for v in range(g.vertex_count))
    return f"graph {name} {{\n{nodes}{body}}}\n"
