"""Planar rigidity matrices and their exact / modular ranks."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2
import numpy as np

from .graph import Graph

Point = tuple[Fraction, Fraction]

DEFAULT_TRIALS = 5
DEFAULT_COORD_RANGE = 2**20
PRIME_BITS = 62
CERT_PRIME = (1 << 61) - 1

EXACT = "exact-at-configuration"
ESTIMATE = "generic-estimate"


class ConfigurationError(ValueError):
    pass


class SamplingError(RuntimeError):
    pass


@dataclass(frozen=True)
class Configuration:
    """One exact rational planar point per vertex."""

    points: tuple[Point, ...]

    def __post_init__(self):
        pts = tuple((Fraction(x), Fraction(y)) for x, y in self.points)
        object.__setattr__(self, "points", pts)

    @classmethod
    def of(cls, pts: Iterable) -> "Configuration":
        return cls(tuple(pts))

    def __len__(self):
        return len(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def restrict(self, labels: Sequence[int]) -> "Configuration":
        """Sub-configuration ``q[k] = p[labels[k]]``."""
        return Configuration(tuple(self.points[v] for v in labels))

    def affine(self, a, tx=0, ty=0) -> "Configuration":
        a, tx, ty = Fraction(a), Fraction(tx), Fraction(ty)
        return Configuration(tuple((a * x + tx, a * y + ty) for x, y in self.points))

    def integer_points(self) -> list[tuple[int, int]]:
        """Points scaled by the common denominator (rank preserving)."""
        den = 1
        for x, y in self.points:
            den = math.lcm(den, x.denominator, y.denominator)
        return [(int(x * den), int(y * den)) for x, y in self.points]


def _check_sizes(g: Graph, p: Configuration) -> None:
    if len(p) != g.vertex_count:
        raise ConfigurationError(
            f"configuration has {len(p)} points, graph has {g.vertex_count} vertices"
        )


@dataclass(frozen=True)
class RigidityMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]
    row_order: tuple[tuple[int, int], ...]


def build_rigidity_matrix(g: Graph, p: Configuration) -> RigidityMatrix:
    """Row for edge (i, j): ``p_i - p_j`` at block i and ``p_j - p_i`` at block j."""
    _check_sizes(g, p)
    n2 = 2 * g.vertex_count
    rows = []
    for i, j in g.edge_list:
        row = [Fraction(0)] * n2
        dx = p[i][0] - p[j][0]
        dy = p[i][1] - p[j][1]
        row[2 * i], row[2 * i + 1] = dx, dy
        row[2 * j], row[2 * j + 1] = -dx, -dy
        rows.append(tuple(row))
    return RigidityMatrix(len(rows), n2, tuple(rows), g.edge_list)


def _integer_rows(g: Graph, pts: Sequence[tuple[int, int]]) -> list[list[int]]:
    n2 = 2 * g.vertex_count
    rows = []
    for i, j in g.edge_list:
        row = [0] * n2
        dx = pts[i][0] - pts[j][0]
        dy = pts[i][1] - pts[j][1]
        row[2 * i], row[2 * i + 1] = dx, dy
        row[2 * j], row[2 * j + 1] = -dx, -dy
        rows.append(row)
    return rows


def bareiss_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    A = [list(r) for r in rows]
    m = len(A)
    if m == 0:
        return 0
    n = len(A[0])
    r = 0
    prev = 1
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        # rows >= r are zero left of column c
        top = A[r][c:]
        p = top[0]
        for i in range(r + 1, m):
            row = A[i]
            a = row[c]
            if a:
                row[c:] = [(p * x - a * y) // prev for x, y in zip(row[c:], top)]
            else:
                row[c:] = [(p * x) // prev for x in row[c:]]
        prev = p
        r += 1
        if r == m:
            break
    return r


def rank_mod_prime(rows: Sequence[Sequence[int]], prime: int) -> int:
    """Rank over GF(prime), with sparse rows."""
    pivots: dict[int, dict[int, int]] = {}
    r = 0
    for raw in rows:
        row = {c: v % prime for c, v in enumerate(raw) if v % prime}
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                inv = pow(row[c], -1, prime)
                pivots[c] = {k: v * inv % prime for k, v in row.items()}
                r += 1
                break
            f = row[c]
            for k, v in prow.items():
                nv = (row.get(k, 0) - f * v) % prime
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return r


@dataclass(frozen=True)
class RankResult:
    rank: int
    stress_count: int
    method: str
    trials: int = 0
    certified: bool = True

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "stress_count": self.stress_count,
            "method": self.method,
            "trials": self.trials,
            "certified": self.certified,
        }


def laman_ceiling(g: Graph) -> int:
    n = g.vertex_count
    return min(g.edge_count, max(0, 2 * n - 3)) if n >= 2 else 0


def rank_at(g: Graph, p: Configuration) -> RankResult:
    """Exact rank of ``R(p)``."""
    _check_sizes(g, p)
    rows = _integer_rows(g, p.integer_points())
    # rank over Q is at least the rank mod any prime and at most the ceiling,
    # so a modular rank that reaches the ceiling is already exact
    ceiling = laman_ceiling(g)
    if ceiling and rank_mod_prime(rows, CERT_PRIME) == ceiling:
        return RankResult(ceiling, g.edge_count - ceiling, EXACT)
    r = bareiss_rank(rows)
    return RankResult(r, g.edge_count - r, EXACT)


def stress_at(g: Graph, p: Configuration) -> int:
    return rank_at(g, p).stress_count


def random_prime(rng: random.Random, bits: int = PRIME_BITS) -> int:
    lo = 1 << (bits - 1)
    while True:
        q = int(gmpy2.next_prime(rng.randrange(lo, 1 << bits)))
        if q < 1 << bits:
            return q


def trial_streams(seed: int, trials: int) -> list[random.Random]:
    """Independent per-trial generators derived from ``seed`` and trial index only."""
    children = np.random.SeedSequence(seed).spawn(trials)
    return [random.Random(int(c.generate_state(2, dtype=np.uint64)[0])) for c in children]


def random_integer_configuration(n: int, rng: random.Random, coord_range: int = DEFAULT_COORD_RANGE):
    return [
        (rng.randint(-coord_range, coord_range), rng.randint(-coord_range, coord_range))
        for _ in range(n)
    ]


def generic_trial(g: Graph, rng: random.Random, coord_range: int = DEFAULT_COORD_RANGE):
    """One Monte-Carlo trial: returns ``(integer points, prime, rank mod prime)``."""
    pts = random_integer_configuration(g.vertex_count, rng, coord_range)
    prime = random_prime(rng)
    return pts, prime, rank_mod_prime(_integer_rows(g, pts), prime)


def generic_rank(
    g: Graph,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    coord_range: int = DEFAULT_COORD_RANGE,
) -> RankResult:
    """Monte-Carlo estimate of the generic rank.

    Every trial rank is a lower bound on r(G). The result is flagged
    ``certified`` when it reaches ``min(|E|, 2|V| - 3)``.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    best = 0
    ceiling = laman_ceiling(g)
    if g.edge_count:
        for rng in trial_streams(seed, trials):
            best = max(best, generic_trial(g, rng, coord_range)[2])
    return RankResult(best, g.edge_count - best, ESTIMATE, trials, best == ceiling)


def rank_at_trial(g: Graph, pts) -> int:
    return bareiss_rank(_integer_rows(g, pts))


# ---------------------------------------------------------- general position


def _direction(dx: int, dy: int) -> tuple[int, int]:
    d = math.gcd(dx, dy)
    dx, dy = dx // d, dy // d
    if dx < 0 or (dx == 0 and dy < 0):
        dx, dy = -dx, -dy
    return dx, dy


def is_general_position(p: Configuration) -> bool:
    """True iff no three points are collinear (coincident points count as collinear)."""
    if len(p) < 3:
        return True
    pts = p.integer_points()
    n = len(pts)
    for i in range(n - 2):
        xi, yi = pts[i]
        seen = set()
        for j in range(i + 1, n):
            dx, dy = pts[j][0] - xi, pts[j][1] - yi
            if dx == 0 and dy == 0:
                return False
            d = _direction(dx, dy)
            if d in seen:
                return False
            seen.add(d)
    return True


GRID = 1024  # common denominator of sampled coordinates; keeps exact arithmetic small


def sample_general_position(n: int, seed: int = 0, max_retries: int = 100) -> Configuration:
    """Perturbed moment-curve points, re-verified to be in general position."""
    if n < 0:
        raise ValueError("n must be non-negative")
    rng = random.Random(seed)
    span = 4 * n + 16
    for _ in range(max_retries):
        ts: set[Fraction] = set()
        while len(ts) < n:
            ts.add(Fraction(rng.randint(-span * 8, span * 8), 8))
        jitter = GRID // 8
        pts = []
        for t in sorted(ts, key=lambda _: rng.random()):
            pts.append((
                t + Fraction(rng.randint(-jitter, jitter), GRID),
                t * t + Fraction(rng.randint(-jitter, jitter), GRID),
            ))
        cfg = Configuration(tuple(pts))
        if is_general_position(cfg):
            return cfg
    raise SamplingError(f"no general-position sample after {max_retries} attempts")


# ---------------------------------------------------------------- text I/O


def format_configuration(p: Configuration) -> str:
    return "".join(f"{x} {y}\n" for x, y in p.points)


def _parse_rational(tok: str, line: int) -> Fraction:
    from .graph import ParseError

    try:
        if "/" in tok:
            a, b = tok.split("/")
            num, den = int(a), int(b)
            if den <= 0 or math.gcd(num, den) != 1:
                raise ParseError(f"{tok!r} is not a reduced fraction with positive denominator", line)
            return Fraction(num, den)
        return Fraction(int(tok))
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad coordinate {tok!r}", line) from None


def parse_configuration(text: str) -> Configuration:
    from .graph import ParseError

    pts = []
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    for k, ln in enumerate(lines, start=1):
        parts = ln.split()
        if len(parts) != 2:
            raise ParseError("expected 'x y'", k)
        pts.append((_parse_rational(parts[0], k), _parse_rational(parts[1], k)))
    return Configuration(tuple(pts))
