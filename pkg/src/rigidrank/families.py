"""Generators for the graph families and product configurations used as test beds."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .graph import Graph, GraphError, cartesian_product, edge_connectivity, is_connected
from .rigidity import Configuration, SamplingError, is_general_position, sample_general_position


class ParameterError(ValueError):
    pass


def complete_graph(l: int) -> Graph:
    if l < 1:
        raise ParameterError("complete graph needs l >= 1")
    return Graph(l, frozenset((i, j) for i in range(l) for j in range(i + 1, l)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ParameterError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    if n < 1:
        raise ParameterError("path needs n >= 1")
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def chained_k5_minus_edge(k: int) -> Graph:
    """Ring of ``k`` copies of K5 minus an edge.

    In copy ``i`` (vertices ``5i..5i+4``) the edge ``(5i, 5i+1)`` is missing;
    ``5i+1`` is joined to ``5(i+1)`` of the next copy.
    """
    if k < 2:
        raise ParameterError("chained K5-e needs k >= 2")
    edges = []
    for i in range(k):
        b = 5 * i
        edges += [(b + x, b + y) for x in range(5) for y in range(x + 1, 5) if (x, y) != (0, 1)]
        edges.append((b + 1, 5 * ((i + 1) % k)))
    return Graph.from_edges(5 * k, edges)


def chained_k4(k: int) -> Graph:
    """Ring of ``k`` copies of K4, two edges between consecutive copies.

    Copy ``i`` is ``(a, b, c, d) = 4i..4i+3`` with ``c_i - a_{i+1}`` and
    ``d_i - b_{i+1}``. For ``k = 2`` the copies are joined by a perfect
    matching instead, giving K4 x K2.
    """
    if k < 2:
        raise ParameterError("chained K4 needs k >= 2")
    edges = []
    for i in range(k):
        b = 4 * i
        edges += [(b + x, b + y) for x in range(4) for y in range(x + 1, 4)]
    if k == 2:
        edges += [(x, 4 + x) for x in range(4)]
    else:
        for i in range(k):
            nxt = 4 * ((i + 1) % k)
            edges += [(4 * i + 2, nxt), (4 * i + 3, nxt + 1)]
    return Graph.from_edges(4 * k, edges)


def k3_prism(n: int) -> Graph:
    """K3 x C_n; vertex ``(u, t)`` is ``u * n + t``."""
    if n < 3:
        raise ParameterError("k3 prism needs n >= 3")
    return cartesian_product(complete_graph(3), cycle(n))


def random_regular(
    d: int,
    n: int,
    seed: int = 0,
    require_connected: bool = False,
    require_edge_connectivity: int | None = None,
    max_attempts: int = 100_000,
) -> Graph:
    """d-regular simple graph from the pairing model, rejecting loops and repeats."""
    if d < 0 or n < 1 or d >= n or (d * n) % 2:
        raise ParameterError(f"need d*n even and 0 <= d < n, got d={d}, n={n}")
    rng = random.Random(seed)
    stubs = [v for v in range(n) for _ in range(d)]
    for _ in range(max_attempts):
        rng.shuffle(stubs)
        edges = set()
        ok = True
        for a, b in zip(stubs[::2], stubs[1::2]):
            e = (a, b) if a < b else (b, a)
            if a == b or e in edges:
                ok = False
                break
            edges.add(e)
        if not ok:
            continue
        g = Graph(n, frozenset(edges))
        if (require_connected or require_edge_connectivity) and not is_connected(g):
            continue
        if require_edge_connectivity:
            k = require_edge_connectivity
            if edge_connectivity(g, cap=k) < k:
                continue
        return g
    raise SamplingError(f"no suitable {d}-regular graph on {n} vertices in {max_attempts} attempts")


def convex_polygon(n: int) -> Configuration:
    """Points ``(t, t^2)``, t = 0..n-1: convex position, no three collinear."""
    return Configuration(tuple((Fraction(t), Fraction(t * t)) for t in range(n)))


def product_configuration(
    g1: Graph,
    p1: Configuration,
    g2: Graph,
    p2: Configuration,
    seed: int = 0,
    max_retries: int = 200,
) -> Configuration:
    """``p(u1, u2) = a p1(u1) + b p2(u2)`` for random nonzero rationals a, b,
    resampled until the result is in general position."""
    if len(p1) != g1.vertex_count or len(p2) != g2.vertex_count:
        raise ParameterError("configuration sizes do not match the factors")
    if not (is_connected(g1) and is_connected(g2)):
        raise GraphError("product configuration needs connected factors")
    if not (is_general_position(p1) and is_general_position(p2)):
        raise ParameterError("factor configurations must be in general position")
    rng = random.Random(seed)

    def nonzero():
        while True:
            num = rng.randint(-100, 100)
            if num:
                return Fraction(num, rng.randint(1, 100))

    for _ in range(max_retries):
        a, b = nonzero(), nonzero()
        pts = tuple(
            (a * x1 + b * x2, a * y1 + b * y2) for x1, y1 in p1.points for x2, y2 in p2.points
        )
        cfg = Configuration(pts)
        if is_general_position(cfg):
            return cfg
    raise SamplingError("no general-position product configuration found")


# ---------------------------------------------------------------- specs


_FAMILY_PARAMS = {
    "chained-k5me": ("k",),
    "chained-k4": ("k",),
    "k3-prism": ("n",),
    "complete": ("l",),
    "cycle": ("n",),
    "random-regular": ("d", "n", "seed", "connected", "conn"),
    "cartesian-product": (),
}
_ALIASES = {"chained-complete-minus-edge": "chained-k5me"}


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: dict = field(default_factory=dict)
    factors: tuple["FamilySpec", ...] = ()

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        """Parse strings like ``chained-k5me:k=3`` or
        ``cartesian-product:complete:l=3+cycle:n=6``."""
        text = text.strip()
        family, _, rest = text.partition(":")
        family = _ALIASES.get(family, family)
        if family not in _FAMILY_PARAMS:
            raise ParameterError(f"unknown family {family!r}")
        if family == "cartesian-product":
            parts = rest.split("+")
            if len(parts) != 2:
                raise ParameterError("cartesian-product needs two factors joined by '+'")
            return cls(family, {}, tuple(cls.parse(p) for p in parts))
        params = {}
        if rest:
            for item in rest.split(","):
                key, eq, val = item.partition("=")
                key = key.strip()
                if not eq or key not in _FAMILY_PARAMS[family]:
                    raise ParameterError(f"bad parameter {item!r} for {family}")
                try:
                    params[key] = int(val)
                except ValueError:
                    raise ParameterError(f"parameter {key} must be an integer") from None
        required = {"random-regular": ("d", "n")}.get(family, _FAMILY_PARAMS[family])
        missing = [k for k in required if k not in params]
        if missing:
            raise ParameterError(f"{family} missing parameters {missing}")
        return cls(family, params)

    def __str__(self):
        if self.factors:
            return f"{self.family}:" + "+".join(str(f) for f in self.factors)
        return f"{self.family}:" + ",".join(f"{k}={v}" for k, v in self.params.items())

    def with_seed(self, seed: int) -> "FamilySpec":
        if self.family != "random-regular":
            return self
        return FamilySpec(self.family, {**self.params, "seed": seed})

    def build(self) -> Graph:
        p = self.params
        if self.family == "chained-k5me":
            return chained_k5_minus_edge(p["k"])
        if self.family == "chained-k4":
            return chained_k4(p["k"])
        if self.family == "k3-prism":
            return k3_prism(p["n"])
        if self.family == "complete":
            return complete_graph(p["l"])
        if self.family == "cycle":
            return cycle(p["n"])
        if self.family == "random-regular":
            return random_regular(
                p["d"],
                p["n"],
                seed=p.get("seed", 0),
                require_connected=bool(p.get("connected", 1)),
                require_edge_connectivity=p.get("conn"),
            )
        return cartesian_product(self.factors[0].build(), self.factors[1].build())

    def configuration(self, seed: int = 0) -> Configuration:
        """A general-position configuration suited to the family.

        Products (including ``k3-prism``) get a product configuration built
        from general-position factor configurations.
        """
        if self.family == "k3-prism":
            n = self.params["n"]
            tri = Configuration.of([(0, 0), (1, 0), (0, 1)])
            return product_configuration(complete_graph(3), tri, cycle(n), convex_polygon(n), seed)
        if self.family == "cartesian-product":
            f1, f2 = self.factors
            g1, g2 = f1.build(), f2.build()
            p1 = sample_general_position(g1.vertex_count, seed)
            p2 = sample_general_position(g2.vertex_count, seed + 1)
            return product_configuration(g1, p1, g2, p2, seed)
        return sample_general_position(self.build().vertex_count, seed)
