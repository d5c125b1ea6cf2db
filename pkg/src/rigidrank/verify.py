"""Lower-bound checks, lemma property checks and random surveys."""

from __future__ import annotations

import csv
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, TextIO

import numpy as np

from .families import FamilySpec
from .graph import (
    Graph,
    component_count,
    delete_edges,
    delete_vertices,
    edge_connectivity,
    is_connected,
    is_regular,
    small_cuts,
    vertex_connectivity,
)
from .rigidity import (
    Configuration,
    ConfigurationError,
    _integer_rows,
    bareiss_rank,
    generic_rank,
    is_general_position,
    laman_ceiling,
    rank_at,
    random_prime,
    rank_mod_prime,
    sample_general_position,
    trial_streams,
)
from .trimming import (
    classify,
    generic_trim,
    k4_neighbourhood,
    reverse_one_extension,
    trim,
)

EDGE_CONN_CAP = 5
VERTEX_CONN_CAP = 5

CSV_COLUMNS = (
    "n",
    "m",
    "edge_conn",
    "vertex_conn",
    "r_generic",
    "r_at_p",
    "bound_t1",
    "bound_t3",
    "bound_t4",
    "slack_min",
    "all_satisfied",
)


def bound_generic(n: int) -> Fraction:
    """r(G) and r(G(p)) >= 8n/5 - 1 for connected 4-regular G."""
    return Fraction(8 * n, 5) - 1


def bound_generic_4ec(n: int) -> Fraction:
    """r(G) >= (7n - 7)/4 when also 4-edge-connected."""
    return Fraction(7 * n - 7, 4)


def bound_general_4ec(n: int) -> Fraction:
    """r(G(p)) >= (5n - 4)/3 when also 4-edge-connected and p in general position."""
    return Fraction(5 * n - 4, 3)


@dataclass(frozen=True)
class BoundEntry:
    theorem: str
    rank_kind: str  # "generic" or "general-position"
    bound: Fraction
    applies: bool
    rank: int | None = None
    satisfied: bool | None = None
    slack: Fraction | None = None
    certified: bool = False  # a failure here would be a genuine counterexample
    via: str | None = None

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "rank_kind": self.rank_kind,
            "bound": str(self.bound),
            "applies": self.applies,
            "rank": self.rank,
            "satisfied": self.satisfied,
            "slack": None if self.slack is None else str(self.slack),
            "certified": self.certified,
            "via": self.via,
        }


@dataclass(frozen=True)
class BoundReport:
    vertex_count: int
    edge_count: int
    edge_conn: int | None
    vertex_conn: int | None
    general_position_rank: int | None
    generic_rank_estimate: int
    bounds: tuple[BoundEntry, ...]

    @property
    def applicable(self) -> list[BoundEntry]:
        return [b for b in self.bounds if b.applies]

    @property
    def all_satisfied(self) -> bool:
        return all(b.satisfied for b in self.applicable)

    @property
    def violations(self) -> list[BoundEntry]:
        """Failures established by exact ranks (inconclusive estimates excluded)."""
        return [b for b in self.applicable if not b.satisfied and b.certified]

    @property
    def slack_min(self) -> Fraction | None:
        s = [b.slack for b in self.applicable]
        return min(s) if s else None

    def entry(self, theorem: str) -> BoundEntry:
        return next(b for b in self.bounds if b.theorem == theorem)

    def to_dict(self) -> dict:
        return {
            "vertex_count": self.vertex_count,
            "edge_count": self.edge_count,
            "connectivity": {
                "edge_conn": self.edge_conn,
                "edge_conn_cap": EDGE_CONN_CAP,
                "vertex_conn": self.vertex_conn,
                "vertex_conn_cap": VERTEX_CONN_CAP,
            },
            "general_position_rank": self.general_position_rank,
            "generic_rank_estimate": self.generic_rank_estimate,
            "bounds": [b.to_dict() for b in self.bounds],
            "all_satisfied": self.all_satisfied,
        }


def _entry(theorem, kind, bound, applies, rank, certified_rank, via=None) -> BoundEntry:
    if not applies or rank is None:
        return BoundEntry(theorem, kind, bound, False, rank, via=via)
    slack = rank - bound
    ok = slack >= 0
    # a passing lower-bound estimate certifies the true rank passes too
    return BoundEntry(theorem, kind, bound, True, rank, ok, slack, ok or certified_rank, via)


def check_bounds(
    g: Graph, p: Configuration | None = None, seed: int = 0, trials: int = 5
) -> BoundReport:
    """Evaluate the four lower bounds (and the vertex-connectivity variant)."""
    if p is not None:
        if len(p) != g.vertex_count:
            raise ConfigurationError("configuration size does not match graph")
        if not is_general_position(p):
            raise ConfigurationError("configuration is not in general position")
    n = g.vertex_count
    eligible = is_connected(g) and is_regular(g, 4)
    econn = edge_connectivity(g, EDGE_CONN_CAP) if is_connected(g) else None
    vconn = vertex_connectivity(g, VERTEX_CONN_CAP) if is_connected(g) else None

    est = generic_rank(g, trials, seed)
    r_gen, gen_exact = est.rank, est.certified
    if eligible:
        needed = [bound_generic(n)]
        if (econn or 0) >= 4 or (vconn or 0) >= 3:
            needed.append(bound_generic_4ec(n))
        if r_gen < max(needed):
            # escalate before reporting anything
            more = generic_rank(g, 4 * trials, seed + 1)
            r_gen = max(r_gen, more.rank)
            rng = random.Random(seed + 2)
            pts = [(rng.randint(-2**30, 2**30), rng.randint(-2**30, 2**30)) for _ in range(n)]
            r_gen = max(r_gen, bareiss_rank(_integer_rows(g, pts)))
            gen_exact = r_gen == laman_ceiling(g)

    r_p = rank_at(g, p).rank if p is not None else None

    strong = eligible and ((econn or 0) >= 4 or (vconn or 0) >= 3)
    via = None
    if strong:
        via = "edge-connectivity" if (econn or 0) >= 4 else "vertex-connectivity"
    bounds = (
        _entry("T1", "generic", bound_generic(n), eligible, r_gen, gen_exact),
        _entry("T2", "general-position", bound_generic(n), eligible and p is not None, r_p, True),
        _entry("T3", "generic", bound_generic_4ec(n), strong, r_gen, gen_exact, via),
        _entry("T4", "general-position", bound_general_4ec(n), strong and p is not None, r_p, True, via),
    )
    return BoundReport(n, g.edge_count, econn, vconn, r_p, r_gen, bounds)


# ------------------------------------------------------------ lemma checks


@dataclass
class CheckResult:
    passed: bool = True
    checks: int = 0
    failures: list[dict] = field(default_factory=list)
    counts: dict[str, int] = field(default_factory=dict)

    def record(self, ok: bool, **detail) -> None:
        self.checks += 1
        name = detail.get("check", "")
        self.counts[name] = self.counts.get(name, 0) + 1
        if not ok:
            self.passed = False
            self.failures.append(detail)

    def merge(self, other: "CheckResult") -> None:
        self.passed = self.passed and other.passed
        self.checks += other.checks
        self.failures.extend(other.failures)
        for k, v in other.counts.items():
            self.counts[k] = self.counts.get(k, 0) + v

    def to_dict(self) -> dict:
        return {"passed": self.passed, "checks": self.checks, "counts": self.counts, "failures": self.failures}


def matched_generic_stress(graphs: Sequence[Graph], labels: Sequence[Sequence[int]], n: int, seed: int, trials: int = 5) -> list[int]:
    """Generic stress estimates of several subgraphs of one n-vertex graph, using
    the same random integer configuration and prime in every trial.

    ``labels[k][i]`` is the original vertex of vertex ``i`` of ``graphs[k]``.
    """
    best = [0] * len(graphs)
    for rng in trial_streams(seed, trials):
        pts = [(rng.randint(-2**20, 2**20), rng.randint(-2**20, 2**20)) for _ in range(n)]
        prime = random_prime(rng)
        for k, (h, lab) in enumerate(zip(graphs, labels)):
            sub = [pts[v] for v in lab]
            best[k] = max(best[k], rank_mod_prime(_integer_rows(h, sub), prime))
    return [h.edge_count - r for h, r in zip(graphs, best)]


def _s_at(g: Graph, p: Configuration, labels: Sequence[int]) -> int:
    return rank_at(g, p.restrict(labels)).stress_count


def check_stress_invariance(
    g: Graph, seed: int = 0, vertex_samples: int | None = None, trials: int = 5
) -> CheckResult:
    """Check stress preservation for every reduction that applies to ``g``.

    Exact at a sampled general-position configuration: deleting a vertex of
    degree <= 2, deleting any vertex (change within ``[0, max(deg-2, 0)]``),
    removing a bridge, removing a minimal 2-edge cut, and every step of the
    trimming process. Modular estimates: minimal 3-edge cuts with no common
    vertex and every rule-3 step of the generic trimming process.
    """
    res = CheckResult()
    n = g.vertex_count
    p = sample_general_position(n, seed)
    ident = list(range(n))
    s0 = _s_at(g, p, ident)
    degs = g.degrees()

    verts = range(n) if vertex_samples is None else random.Random(seed).sample(range(n), min(n, vertex_samples))
    for v in verts:
        h, kept = delete_vertices(g, [v])
        d = s0 - _s_at(h, p, kept)
        hi = max(degs[v] - 2, 0)
        res.record(0 <= d <= hi, check="vertex-deletion", vertex=v, degree=degs[v], delta=d)
        if degs[v] in (1, 2):
            res.record(d == 0, check="deleting-lemma", vertex=v, delta=d)

    for (e,) in small_cuts(g, 1):
        s1 = _s_at(delete_edges(g, [e]), p, ident)
        res.record(s1 == s0, check="bridge", edges=[e], before=s0, after=s1)

    if not small_cuts(g, 1):
        for F in small_cuts(g, 2):
            s1 = _s_at(delete_edges(g, F), p, ident)
            res.record(s1 == s0, check="two-cut", edges=list(F), before=s0, after=s1)
        if not small_cuts(g, 2):
            three = [F for F in small_cuts(g, 3) if not set(F[0]) & set(F[1]) & set(F[2])]
            if three:
                hs = [g] + [delete_edges(g, F) for F in three]
                ss = matched_generic_stress(hs, [ident] * len(hs), n, seed, trials)
                for F, s in zip(three, ss[1:]):
                    res.record(s == ss[0], check="three-cut-generic", edges=list(F), before=ss[0], after=s)

    res.merge(_check_trace(g, p, seed, trials))
    return res


def _check_trace(g: Graph, p: Configuration, seed: int, trials: int) -> CheckResult:
    """Walk the trimming and generic trimming traces, checking each step."""
    res = CheckResult()
    n = g.vertex_count
    # exact: trimming steps preserve s_p
    cur_edges = set(g.edges)
    alive = set(range(n))
    prev = _s_at(g, p, list(range(n)))
    for k, step in enumerate(trim(g).steps):
        cur_edges -= set(step.removed_edges)
        alive -= set(step.removed_vertices)
        h, lab = _relabel(alive, cur_edges)
        s = _s_at(h, p, lab)
        res.record(s == prev, check="trim-step", step=k, kind=step.kind, before=prev, after=s)
        prev = s
    # generic: every generic trimming step preserves s
    gt = generic_trim(g)
    graphs, labels = [g], [list(range(n))]
    cur_edges = set(g.edges)
    alive = set(range(n))
    for step in gt.steps:
        cur_edges -= set(step.removed_edges)
        alive -= set(step.removed_vertices)
        h, lab = _relabel(alive, cur_edges)
        graphs.append(h)
        labels.append(lab)
    if len(graphs) > 1:
        ss = matched_generic_stress(graphs, labels, n, seed + 7, trials)
        for k, step in enumerate(gt.steps):
            ok = ss[k + 1] == ss[k]
            res.record(ok, check="generic-trim-step", step=k, kind=step.kind, before=ss[k], after=ss[k + 1])
    return res


def _relabel(alive: set[int], edges: set) -> tuple[Graph, list[int]]:
    kept = sorted(alive)
    new = {old: i for i, old in enumerate(kept)}
    return Graph(len(kept), frozenset((new[a], new[b]) for a, b in edges)), kept


def check_one_extension(g: Graph, t: int, seed: int = 0, trials: int = 3) -> dict:
    """Check ``s(G) <= s(G')`` for the reverse one-extension at ``t``.

    Equivalently ``r(G') <= r(G) - 2``, since G' has two fewer edges. Ranks
    are exact at matched random integer configurations (the best over
    ``trials``); raises whatever :func:`reverse_one_extension` raises.
    """
    h = reverse_one_extension(g, t)
    n = g.vertex_count
    kept = [v for v in range(n) if v != t]
    rg = rh = 0
    for rng in trial_streams(seed, trials):
        pts = [(rng.randint(-2**20, 2**20), rng.randint(-2**20, 2**20)) for _ in range(n)]
        rg = max(rg, bareiss_rank(_integer_rows(g, pts)))
        rh = max(rh, bareiss_rank(_integer_rows(h, [pts[v] for v in kept])))
    sg, sh = g.edge_count - rg, h.edge_count - rh
    return {
        "passed": sg <= sh and rh <= rg - 2,
        "rank_g": rg,
        "rank_reduced": rh,
        "stress_g": sg,
        "stress_reduced": sh,
    }


# --------------------------------------------------------- A4 / B4 bounds


def check_a4_bound(g: Graph, p: Configuration) -> dict:
    """``s_p(G) <= n4/3 + c`` for a type-A4 graph, exact."""
    flags = classify(g)
    s = rank_at(g, p).stress_count
    bound = Fraction(flags.n4, 3) + component_count(g)
    return {"applies": flags.is_type_a4, "stress": s, "bound": bound, "passed": (not flags.is_type_a4) or s <= bound}


def check_b4_bound(g: Graph, seed: int = 0, trials: int = 5) -> dict:
    """``s(G) <= n4/4 + c`` for a type-B4 graph; the estimate over-counts s,
    so a pass is conclusive."""
    flags = classify(g)
    s = generic_rank(g, trials, seed).stress_count
    bound = Fraction(flags.n4, 4) + component_count(g)
    return {"applies": flags.is_type_b4, "stress": s, "bound": bound, "passed": (not flags.is_type_b4) or s <= bound}


def check_k4_lemma(g: Graph) -> bool:
    """Connected B4 graph with a degree-3 vertex in a K4 must itself be K4."""
    if g.vertex_count == 0 or component_count(g) != 1 or not classify(g).is_type_b4:
        return True
    degs = g.degrees()
    if any(degs[t] == 3 and k4_neighbourhood(g, t) for t in range(g.vertex_count)):
        return g.vertex_count == 4 and g.edge_count == 6
    return True


def trimmed_instances(g: Graph, seed: int = 0):
    """A4 candidates (trimmed ``g - v`` and ``g - e``) and B4 candidates
    (generically trimmed ``g - v``) derived from ``g``, as
    ``(kind, graph, original labels)``."""
    rng = random.Random(seed)
    out = []
    if g.vertex_count:
        v = rng.randrange(g.vertex_count)
        h, kept = delete_vertices(g, [v])
        tr = trim(h)
        out.append(("A4", tr.final_graph, [kept[i] for i in tr.label_map]))
        gt = generic_trim(h)
        out.append(("B4", gt.final_graph, [kept[i] for i in gt.label_map]))
    if g.edge_count:
        e = g.edge_list[rng.randrange(g.edge_count)]
        tr = trim(delete_edges(g, [e]))
        out.append(("A4", tr.final_graph, list(tr.label_map)))
    return out


# ---------------------------------------------------------------- surveys


def instance_seeds(seed: int, count: int) -> list[int]:
    ss = np.random.SeedSequence(seed)
    return [int(c.generate_state(1)[0]) for c in ss.spawn(count)]


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    return str(x)


def survey_row(spec: FamilySpec, inst_seed: int) -> dict:
    g = spec.with_seed(inst_seed).build()
    p = spec.configuration(inst_seed) if g.vertex_count else None
    if p is not None and not is_general_position(p):
        p = None
    rep = check_bounds(g, p, seed=inst_seed)
    n = g.vertex_count
    strong = rep.entry("T3").applies
    return {
        "n": n,
        "m": g.edge_count,
        "edge_conn": rep.edge_conn,
        "vertex_conn": rep.vertex_conn,
        "r_generic": rep.generic_rank_estimate,
        "r_at_p": rep.general_position_rank,
        "bound_t1": bound_generic(n) if rep.entry("T1").applies else None,
        "bound_t3": bound_generic_4ec(n) if strong else None,
        "bound_t4": bound_general_4ec(n) if strong and p is not None else None,
        "slack_min": rep.slack_min,
        "all_satisfied": rep.all_satisfied,
    }


def _row_job(args):
    return survey_row(*args)


def survey(
    specs: FamilySpec | Iterable[FamilySpec],
    count: int,
    seed: int = 0,
    sink: TextIO | None = None,
    workers: int = 1,
) -> list[dict]:
    """One CSV row per instance, ``count`` instances per spec, in instance order."""
    if isinstance(specs, FamilySpec):
        specs = [specs]
    jobs = []
    for k, spec in enumerate(specs):
        for s in instance_seeds(seed + k, count):
            jobs.append((spec, s))
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(workers) as ex:
            rows = list(ex.map(_row_job, jobs))
    else:
        rows = [_row_job(j) for j in jobs]
    if sink is not None:
        w = csv.writer(sink, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in rows:
            w.writerow([_fmt(r[c]) for c in CSV_COLUMNS])
    return rows
