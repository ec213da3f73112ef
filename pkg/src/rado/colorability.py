"""Hypergraph coloring search and witness verdicts.

A solution is monochromatic exactly when its support is, so "does a finite
set admit an r-coloring with no monochromatic solution" is proper coloring
of the solution hypergraph (property B when r = 2).  The searcher is a
plain backtracker: superset edges are dropped (their constraint is
implied), variables are ordered by descending edge degree, forward
checking prunes the last uncolored vertex of an otherwise uniform edge,
and for r = 2 that pruning propagates as forced assignments.  Color
symmetry is broken by allowing a new color index only once all smaller
indices appear.

Every coloring produced here can be re-checked edge by edge; nothing is
trusted to the search itself.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .equations import (
    DEFAULT_SET_LIMIT,
    Equation,
    enumerate_solutions_in_set,
    exists_mono_solution,
    solution_supports,
)
from .errors import (
    BudgetExceeded,
    CapExceeded,
    DomainError,
    EdgeOutsideDomain,
)

DEFAULT_COLORING_CAP = 10**7


@dataclass(frozen=True)
class Coloring:
    """An assignment of colors 0..r-1 to an ordered finite domain."""

    domain: tuple[int, ...]
    colors: tuple[int, ...]
    r: int

    def __post_init__(self) -> None:
        if len(self.domain) != len(self.colors):
            raise DomainError("domain and colors must have equal length")
        if len(set(self.domain)) != len(self.domain):
            raise DomainError("domain values must be distinct")
        if self.r < 1:
            raise DomainError(f"color count must be >= 1, got {self.r}")
        if any(c < 0 or c >= self.r for c in self.colors):
            raise DomainError("every color index must lie in [0, r)")

    @classmethod
    def from_mapping(cls, assignment: Mapping[int, int], r: int) -> "Coloring":
        items = sorted(assignment.items())
        return cls(tuple(v for v, _ in items), tuple(c for _, c in items), r)

    @cached_property
    def _index(self) -> dict[int, int]:
        return dict(zip(self.domain, self.colors))

    def color_of(self, value: int) -> int:
        return self._index[value]

    def as_mapping(self) -> dict[int, int]:
        return dict(self._index)

    def classes(self) -> list[tuple[int, ...]]:
        """Values per color, each sorted ascending."""
        buckets: list[list[int]] = [[] for _ in range(self.r)]
        for v, c in zip(self.domain, self.colors):
            buckets[c].append(v)
        return [tuple(sorted(b)) for b in buckets]

    def monochromatic_edges(
        self, edges: Iterable[frozenset[int]]
    ) -> list[frozenset[int]]:
        idx = self._index
        out = []
        for e in edges:
            it = iter(e)
            first = idx[next(it)]
            if all(idx[v] == first for v in it):
                out.append(frozenset(e))
        return out

    def is_proper(self, edges: Iterable[frozenset[int]]) -> bool:
        return not self.monochromatic_edges(edges)


@dataclass
class SearchStats:
    nodes: int = 0
    edges: int = 0
    elapsed: float = 0.0


@dataclass
class ColorSearchResult:
    colorable: bool
    coloring: Coloring | None
    stats: SearchStats


@dataclass
class WitnessVerdict:
    """Either every r-coloring has a monochromatic solution (IsWitness) or
    a counterexample coloring is attached."""

    is_witness: bool
    counterexample: Coloring | None
    stats: SearchStats

    @property
    def outcome(self) -> str:
        return "IsWitness" if self.is_witness else "NotWitness"


def _subsumption_reduce(masks: list[int]) -> list[int]:
    """Drop any edge that contains another edge; the subset's constraint
    already implies the superset's."""
    ordered = sorted(set(masks), key=lambda m: m.bit_count())
    kept: list[int] = []
    for m in ordered:
        if any(f & m == f for f in kept):
            continue
        kept.append(m)
    return kept


class _Backtracker:
    """Single-threaded search core over variable indices 0..n-1.

    Per-edge state tracks whether the assigned part is still uniform:
    state -1 = nothing assigned, c >= 0 = every assigned vertex has color
    c (ucount of them), -2 = two colors present, the edge can never go
    monochromatic and is skipped for the rest of the subtree.
    """

    def __init__(
        self,
        n_vars: int,
        r: int,
        edge_vars: list[tuple[int, ...]],
        order: list[int],
        max_nodes: int | None = None,
        deadline: float | None = None,
    ):
        self.n = n_vars
        self.r = r
        self.edge_vars = edge_vars
        self.order = order
        self.max_nodes = max_nodes
        self.deadline = deadline
        self.nodes = 0

        self.color = [-1] * n_vars
        full = (1 << r) - 1
        self.domain = [full] * n_vars
        self.var_edges: list[list[int]] = [[] for _ in range(n_vars)]
        for ei, vs in enumerate(edge_vars):
            for v in vs:
                self.var_edges[v].append(ei)
        self.edge_state = [-1] * len(edge_vars)
        self.edge_ucount = [0] * len(edge_vars)
        self.color_used = [0] * r
        self.used_distinct = 0

    def _check_budget(self) -> None:
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise BudgetExceeded(f"coloring search exceeded {self.max_nodes} nodes")
        if self.deadline is not None and self.nodes % 1024 == 0:
            if time.monotonic() > self.deadline:
                raise BudgetExceeded("coloring search hit its deadline")

    def _assign(self, var: int, col: int, trail: list) -> bool:
        """Assign and propagate; False on wipeout.  Every mutation lands on
        the trail, so undo is exact even after a mid-propagation failure.
        For r = 2 a pruned singleton domain becomes a forced assignment."""
        color = self.color
        domain = self.domain
        edge_state = self.edge_state
        edge_ucount = self.edge_ucount
        edge_vars = self.edge_vars
        two = self.r == 2
        stack = [(var, col)]
        while stack:
            v, c = stack.pop()
            if color[v] != -1:
                if color[v] != c:
                    return False
                continue
            if not (domain[v] >> c) & 1:
                return False
            self.nodes += 1
            self._check_budget()
            color[v] = c
            trail.append((0, v, c))
            if self.color_used[c] == 0:
                self.used_distinct += 1
            self.color_used[c] += 1
            for ei in self.var_edges[v]:
                s = edge_state[ei]
                if s == -2:
                    continue
                u = edge_ucount[ei]
                trail.append((2, ei, s, u))
                if s != -1 and s != c:
                    edge_state[ei] = -2
                    continue
                edge_state[ei] = c
                u += 1
                edge_ucount[ei] = u
                vs = edge_vars[ei]
                sz = len(vs)
                if u == sz:
                    return False
                if u == sz - 1:
                    for w in vs:
                        if color[w] == -1:
                            m = domain[w]
                            if (m >> c) & 1:
                                m &= ~(1 << c)
                                trail.append((1, w, domain[w]))
                                domain[w] = m
                                if m == 0:
                                    return False
                                if two:
                                    stack.append((w, m.bit_length() - 1))
                            break
        return True

    def _undo(self, trail: list) -> None:
        color = self.color
        domain = self.domain
        edge_state = self.edge_state
        edge_ucount = self.edge_ucount
        color_used = self.color_used
        while trail:
            rec = trail.pop()
            tag = rec[0]
            if tag == 2:
                edge_state[rec[1]] = rec[2]
                edge_ucount[rec[1]] = rec[3]
            elif tag == 0:
                c = rec[2]
                color[rec[1]] = -1
                color_used[c] -= 1
                if color_used[c] == 0:
                    self.used_distinct -= 1
            else:
                domain[rec[1]] = rec[2]

    def preassign(self, pairs: Sequence[tuple[int, int]]) -> bool:
        trail: list = []
        for v, c in pairs:
            if self.color[v] == c:
                continue
            if not self._assign(v, c, trail):
                return False
        return True

    def solve(self) -> list[int] | None:
        if self._dfs(0):
            return list(self.color)
        return None

    def _dfs(self, pos: int) -> bool:
        color = self.color
        order = self.order
        n = self.n
        while pos < n and color[order[pos]] != -1:
            pos += 1
        if pos == n:
            return True
        v = order[pos]
        allowed = self.domain[v] & ((1 << min(self.r, self.used_distinct + 1)) - 1)
        while allowed:
            c = (allowed & -allowed).bit_length() - 1
            allowed &= allowed - 1
            trail: list = []
            if self._assign(v, c, trail):
                if self._dfs(pos + 1):
                    return True
            self._undo(trail)
        return False

    def branch_tasks(self, depth: int) -> list[list[tuple[int, int]]]:
        """Partial assignments covering the first ``depth`` decision levels;
        used to split the search across workers."""
        tasks: list[list[tuple[int, int]]] = []

        def rec(pos: int, prefix: list[tuple[int, int]], level: int) -> None:
            color = self.color
            while pos < self.n and color[self.order[pos]] != -1:
                pos += 1
            if pos == self.n or level == depth:
                tasks.append(list(prefix))
                return
            v = self.order[pos]
            allowed = self.domain[v] & (
                (1 << min(self.r, self.used_distinct + 1)) - 1
            )
            while allowed:
                c = (allowed & -allowed).bit_length() - 1
                allowed &= allowed - 1
                trail: list = []
                if self._assign(v, c, trail):
                    prefix.append((v, c))
                    rec(pos + 1, prefix, level + 1)
                    prefix.pop()
                self._undo(trail)

        rec(0, [], 0)
        return tasks


def _prepare(
    edges: Iterable[Iterable[int]], domain: Iterable[int], r: int
) -> tuple[list[int], dict[int, int], list[int], int]:
    dom = sorted({int(v) for v in domain})
    if not dom:
        raise DomainError("coloring domain must be nonempty")
    if r < 1:
        raise DomainError(f"color count must be >= 1, got {r}")
    pos = {v: i for i, v in enumerate(dom)}
    masks: list[int] = []
    n_edges = 0
    seen: set[frozenset[int]] = set()
    for e in edges:
        s = frozenset(e)
        if s in seen:
            continue
        seen.add(s)
        n_edges += 1
        m = 0
        for v in s:
            if v not in pos:
                raise EdgeOutsideDomain(f"edge value {v} is not in the domain")
            m |= 1 << pos[v]
        masks.append(m)
    return dom, pos, masks, n_edges


def _mask_to_vars(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def _build_backtracker(
    dom: list[int],
    reduced: list[int],
    r: int,
    max_nodes: int | None,
    deadline: float | None,
) -> _Backtracker:
    edge_vars = [_mask_to_vars(m) for m in reduced]
    degree = [0] * len(dom)
    for vs in edge_vars:
        for v in vs:
            degree[v] += 1
    order = sorted(range(len(dom)), key=lambda i: (-degree[i], dom[i]))
    return _Backtracker(len(dom), r, edge_vars, order, max_nodes, deadline)


def _solve_subtask(args) -> tuple[str, int]:
    dom, reduced, r, prefix, remaining = args
    deadline = time.monotonic() + remaining if remaining is not None else None
    bt = _build_backtracker(dom, reduced, r, None, deadline)
    try:
        if not bt.preassign(prefix):
            return ("unsat", bt.nodes)
        colors = bt.solve()
    except BudgetExceeded:
        return ("budget", bt.nodes)
    if colors is None:
        return ("unsat", bt.nodes)
    return ("sat:" + ",".join(map(str, colors)), bt.nodes)


def find_coloring(
    edges: Iterable[Iterable[int]],
    domain: Iterable[int],
    r: int,
    *,
    threads: int = 1,
    max_nodes: int | None = None,
    deadline: float | None = None,
) -> ColorSearchResult:
    """Search for a coloring of ``domain`` with no monochromatic edge.

    Single-threaded runs are deterministic: with fixed variable and color
    orders the first coloring found is always the same.  With threads > 1
    the verdict is unchanged but the returned coloring may differ.
    """
    started = time.monotonic()
    dom, _, masks, n_edges = _prepare(edges, domain, r)

    def stats(nodes: int) -> SearchStats:
        return SearchStats(nodes, n_edges, time.monotonic() - started)

    if any(m.bit_count() <= 1 for m in masks):
        return ColorSearchResult(False, None, stats(0))
    reduced = _subsumption_reduce(masks)

    if threads > 1 and reduced:
        result = _find_coloring_parallel(
            dom, reduced, r, threads, deadline, started, n_edges
        )
        if result is not None:
            return result
        # fall through to the sequential search when splitting was futile

    bt = _build_backtracker(dom, reduced, r, max_nodes, deadline)
    colors = bt.solve()
    if colors is None:
        return ColorSearchResult(False, None, stats(bt.nodes))
    coloring = Coloring(tuple(dom), tuple(colors), r)
    return ColorSearchResult(True, coloring, stats(bt.nodes))


def _find_coloring_parallel(
    dom: list[int],
    reduced: list[int],
    r: int,
    threads: int,
    deadline: float | None,
    started: float,
    n_edges: int,
) -> ColorSearchResult | None:
    import concurrent.futures as cf

    probe = _build_backtracker(dom, reduced, r, None, None)
    depth = 1
    tasks = probe.branch_tasks(depth)
    while len(tasks) < 2 * threads and depth < 8 and tasks:
        depth += 1
        tasks = probe.branch_tasks(depth)
    if len(tasks) <= 1:
        return None

    remaining = None if deadline is None else max(deadline - time.monotonic(), 0.01)
    total_nodes = probe.nodes
    budget_hit = False
    with cf.ProcessPoolExecutor(max_workers=threads) as pool:
        futures = [
            pool.submit(_solve_subtask, (dom, reduced, r, t, remaining))
            for t in tasks
        ]
        try:
            for fut in cf.as_completed(futures):
                verdict, nodes = fut.result()
                total_nodes += nodes
                if verdict.startswith("sat:"):
                    colors = [int(x) for x in verdict[4:].split(",")]
                    coloring = Coloring(tuple(dom), tuple(colors), r)
                    return ColorSearchResult(
                        True,
                        coloring,
                        SearchStats(total_nodes, n_edges, time.monotonic() - started),
                    )
                if verdict == "budget":
                    budget_hit = True
        finally:
            for fut in futures:
                fut.cancel()
    if budget_hit:
        raise BudgetExceeded("coloring search hit its deadline")
    return ColorSearchResult(
        False, None, SearchStats(total_nodes, n_edges, time.monotonic() - started)
    )


def is_witness(
    eq: Equation,
    values: Iterable[int],
    r: int,
    *,
    limit: int = DEFAULT_SET_LIMIT,
    threads: int = 1,
    max_nodes: int | None = None,
    deadline: float | None = None,
) -> WitnessVerdict:
    """Decide whether every r-coloring of the set has a monochromatic
    solution, by enumerating solutions and coloring their supports."""
    vals = sorted({int(v) for v in values})
    solutions = enumerate_solutions_in_set(eq, vals, limit=limit)
    edges = solution_supports(solutions)
    res = find_coloring(
        edges, vals, r, threads=threads, max_nodes=max_nodes, deadline=deadline
    )
    return WitnessVerdict(not res.colorable, res.coloring, res.stats)


def brute_force_is_witness(
    eq: Equation,
    values: Iterable[int],
    r: int,
    *,
    cap: int = DEFAULT_COLORING_CAP,
) -> WitnessVerdict:
    """Same verdict as is_witness, by iterating all r^|A| colorings and
    testing each color class with the exactly-k oracle (so it scales to
    large k where enumeration is infeasible).

    The first element's color is fixed to 0; color permutations preserve
    both verdicts and counterexamples.  Class lookups are memoized and use
    monotonicity both ways: supersets of a solution-containing class
    contain a solution, subsets of a solution-free class are free.
    """
    started = time.monotonic()
    vals = sorted({int(v) for v in values})
    m = len(vals)
    if not vals:
        raise DomainError("value set must be nonempty")
    if r < 1:
        raise DomainError(f"color count must be >= 1, got {r}")
    total = r**m
    if total > cap:
        raise CapExceeded(f"r^|A| = {total} exceeds the cap {cap}")

    memo: dict[int, bool] = {}
    positives: list[int] = []  # minimal masks known to contain a solution
    negatives: list[int] = []  # maximal masks known solution-free

    def class_has_solution(mask: int) -> bool:
        cached = memo.get(mask)
        if cached is not None:
            return cached
        for p in positives:
            if p & mask == p:
                memo[mask] = True
                return True
        for q in negatives:
            if mask & ~q == 0:
                memo[mask] = False
                return False
        subset = [vals[i] for i in _mask_to_vars(mask)]
        res = exists_mono_solution(eq, subset)
        memo[mask] = res
        if res:
            positives[:] = [p for p in positives if p & mask != mask]
            positives.append(mask)
        else:
            negatives[:] = [q for q in negatives if q & mask != q]
            negatives.append(mask)
        return res

    nodes = 0
    codes = range(r ** (m - 1)) if m > 1 else range(1)
    for code in codes:
        nodes += 1
        class_masks = [0] * r
        class_masks[0] |= 1
        x = code
        for i in range(1, m):
            x, c = divmod(x, r)
            class_masks[c] |= 1 << i
        if any(msk and class_has_solution(msk) for msk in class_masks):
            continue
        colors = [0] * m
        x = code
        for i in range(1, m):
            x, c = divmod(x, r)
            colors[i] = c
        coloring = Coloring(tuple(vals), tuple(colors), r)
        elapsed = time.monotonic() - started
        return WitnessVerdict(False, coloring, SearchStats(nodes, len(positives), elapsed))

    elapsed = time.monotonic() - started
    return WitnessVerdict(True, None, SearchStats(nodes, len(positives), elapsed))


def export_cnf(
    edges: Sequence[Iterable[int]], domain: Sequence[int], r: int
) -> str:
    """DIMACS CNF encoding of the coloring instance.

    Variable (i, c) -> i*r + c + 1 for domain position i and color c.
    Clause order: one at-least-one clause per value, all pairwise
    at-most-one clauses per value, then for each edge (input order) and
    color the all-different-from-c clause.  Satisfiable iff find_coloring
    reports Colorable.
    """
    dom = [int(v) for v in domain]
    if not dom:
        raise DomainError("coloring domain must be nonempty")
    if len(set(dom)) != len(dom):
        raise DomainError("domain values must be distinct")
    if r < 1:
        raise DomainError(f"color count must be >= 1, got {r}")
    pos = {v: i for i, v in enumerate(dom)}
    edge_rows: list[list[int]] = []
    for e in edges:
        vs = {int(v) for v in e}
        for v in vs:
            if v not in pos:
                raise EdgeOutsideDomain(f"edge value {v} is not in the domain")
        edge_rows.append(sorted(vs, key=pos.__getitem__))

    def var(i: int, c: int) -> int:
        return i * r + c + 1

    n_vars = len(dom) * r
    n_clauses = len(dom) + len(dom) * (r * (r - 1) // 2) + len(edge_rows) * r
    lines = [f"p cnf {n_vars} {n_clauses}"]
    for i in range(len(dom)):
        lines.append(" ".join(str(var(i, c)) for c in range(r)) + " 0")
    for i in range(len(dom)):
        for c in range(r):
            for c2 in range(c + 1, r):
                lines.append(f"-{var(i, c)} -{var(i, c2)} 0")
    for row in edge_rows:
        for c in range(r):
            lines.append(" ".join(f"-{var(pos[v], c)}" for v in row) + " 0")
    return "\n".join(lines) + "\n"
