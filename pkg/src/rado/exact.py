"""Exact Rado numbers by incremental interval search, plus the block
lower-bound coloring and monochromatic-solution verification.

The interval search grows n one step at a time.  Solutions whose largest
value is n join the edge set, the previous coloring is extended by trying
each color on n, and only when that fails does a full search run.  The
first n whose hypergraph is uncolorable is the Rado number; the retained
(n-1)-coloring is the lower certificate.  Edges only accumulate, so
stopping at the first uncolorable n is sound.

verify_no_mono never enumerates the whole interval: a monochromatic
solution lives inside a single color class, so each class is searched on
its own, which keeps the block colorings (classes [k^i, k^(i+1)) that
provably contain no solution) verifiable at domain sizes where full
enumeration is hopeless.
"""

from __future__ import annotations

import time
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction

from .colorability import Coloring, find_coloring
from .equations import (
    Equation,
    Family,
    SolutionInstance,
    _exact_root,
    enumerate_solutions_in_interval,
)
from .errors import BudgetExceeded, DomainError

DEFAULT_MAX_N = 100_000
DEFAULT_MAX_LINEAR_K = 8
DEFAULT_DOMAIN_CAP = 10**7
DEFAULT_VERIFY_NODES = 10**8


def lower_bound_coloring(k: int, r: int, *, domain_cap: int = DEFAULT_DOMAIN_CAP) -> Coloring:
    """The block coloring of [1, k^r - 1]: value x gets color i where
    k^i <= x < k^(i+1).  No color class contains a unit-fraction solution,
    so f_r(k) >= k^r."""
    if k < 2 or r < 2:
        raise DomainError(f"block coloring needs k, r >= 2, got k={k}, r={r}")
    top = k**r - 1
    if top > domain_cap:
        raise DomainError(f"domain [1, {top}] exceeds the cap {domain_cap}")
    colors: list[int] = []
    for i in range(r):
        width = min(k ** (i + 1) - 1, top) - k**i + 1
        colors.extend([i] * width)
    return Coloring(tuple(range(1, top + 1)), tuple(colors), r)


class _NodeBudget:
    __slots__ = ("left",)

    def __init__(self, left: int):
        self.left = left

    def spend(self) -> None:
        self.left -= 1
        if self.left < 0:
            raise BudgetExceeded("verification enumeration cap hit")


def _first_linear_in_class(vals: list[int], k: int, budget: _NodeBudget) -> SolutionInstance | None:
    """First (target, values)-ordered sum solution inside one color class."""
    if len(vals) < 2:
        return None
    max_v = vals[-1]
    min_sum = k * vals[0]
    prefix: list[int] = []

    def rec(start: int, left: int, acc: int, target: int) -> bool:
        budget.spend()
        if left == 0:
            return acc == target
        for i in range(start, len(vals)):
            v = vals[i]
            if acc + v * left > target:
                break
            if acc + v + (left - 1) * max_v < target:
                continue
            prefix.append(v)
            if rec(i, left - 1, acc + v, target):
                return True
            prefix.pop()
        return False

    for y in vals:
        if y < min_sum:
            continue
        if rec(0, k, 0, y):
            return SolutionInstance.from_values(prefix, y)
    return None


def _first_unit_in_class(vals: list[int], k: int, budget: _NodeBudget) -> SolutionInstance | None:
    """First (target, values)-ordered unit-fraction solution inside one
    color class.  Dies at depth zero whenever even max-valued terms cannot
    reach the target, which is what makes block classes cheap."""
    if len(vals) < 2:
        return None
    max_v = vals[-1]
    prefix: list[int] = []

    def rec(start: int, left: int, t: Fraction) -> bool:
        budget.spend()
        if left == 0:
            return t == 0
        if t <= 0:
            return False
        p, q = t.numerator, t.denominator
        if p * max_v < left * q:  # t < left/max_v: unreachable
            return False
        lo = -(-q // p)
        hi = (left * q) // p
        i0 = max(start, bisect_left(vals, lo))
        i1 = bisect_right(vals, hi)
        for i in range(i0, i1):
            x = vals[i]
            prefix.append(x)
            if rec(i, left - 1, t - Fraction(1, x)):
                return True
            prefix.pop()
        return False

    for y in vals:
        if rec(0, k, Fraction(1, y)):
            return SolutionInstance.from_values(prefix, y)
    return None


def verify_no_mono(
    eq: Equation, coloring: Coloring, *, max_nodes: int = DEFAULT_VERIFY_NODES
) -> SolutionInstance | None:
    """First monochromatic solution in canonical (target, values) order, or
    None when the coloring avoids them all.

    Equivalent to filtering the full interval enumeration, but searched
    class by class since a monochromatic solution cannot straddle classes.
    """
    budget = _NodeBudget(max_nodes)
    best: SolutionInstance | None = None
    for cls in coloring.classes():
        if len(cls) < 2:
            continue
        if eq.family is Family.LINEAR_SUM:
            cand = _first_linear_in_class(list(cls), eq.k, budget)
        elif eq.family is Family.UNIT_FRACTION:
            cand = _first_unit_in_class(list(cls), eq.k, budget)
        else:
            roots = sorted(
                r for r in (_exact_root(v, eq.ell) for v in cls) if r is not None
            )
            inner = _first_unit_in_class(roots, eq.k, budget)
            cand = None
            if inner is not None:
                ell = eq.ell
                cand = SolutionInstance.from_counts(
                    {v**ell: c for v, c in inner.counts}, inner.target**ell
                )
        if cand is not None and (best is None or cand.sort_key() < best.sort_key()):
            best = cand
    return best


@dataclass
class LevelStats:
    n: int
    nodes: int
    new_edges: int


@dataclass
class RadoResult:
    """The exact Rado number plus a re-checkable lower certificate."""

    equation: Equation
    r: int
    value: int
    certificate_low: Coloring
    stats: list[LevelStats] = field(default_factory=list)


@dataclass
class Exhausted:
    """Search stopped by max_n or budget; reports the progress made."""

    equation: Equation
    r: int
    best_colorable: int
    coloring: Coloring | None
    undecided: int | None
    stats: list[LevelStats] = field(default_factory=list)


def _extend_coloring(
    prev: Coloring | None, n: int, new_edges: list[frozenset[int]], r: int
) -> Coloring | None:
    """Try each color on the new value n against the edges that mention it;
    old edges are untouched by the extension."""
    mapping = prev.as_mapping() if prev is not None else {}
    for c in range(r):
        ok = True
        for e in new_edges:
            rest = [mapping[v] for v in e if v != n]
            if rest and all(x == c for x in rest):
                ok = False
                break
        if ok:
            domain = tuple(range(1, n + 1))
            colors = tuple(mapping.get(v, c) for v in domain)
            return Coloring(domain, colors, r)
    return None


def rado_number(
    eq: Equation,
    r: int,
    *,
    max_n: int = DEFAULT_MAX_N,
    budget_seconds: float | None = None,
    threads: int = 1,
    max_linear_k: int = DEFAULT_MAX_LINEAR_K,
) -> RadoResult | Exhausted:
    """Smallest n such that every r-coloring of [1, n] has a monochromatic
    solution, by incremental interval search.

    Returns Exhausted when max_n or the time budget is reached first; a
    budget hit inside one n-level leaves that n flagged undecided.  For
    the sum family with large k the interval's edge count explodes, so
    k > max_linear_k is refused (the exactly-k oracle is the supported
    path there).
    """
    if eq.family is Family.FRACTIONAL_POWER:
        raise DomainError("interval search covers the sum and unit-fraction families")
    if r < 2:
        raise DomainError(f"color count must be >= 2, got {r}")
    if eq.family is Family.LINEAR_SUM and eq.k > max_linear_k:
        raise DomainError(
            f"interval search for the sum family is refused above k = {max_linear_k}"
        )

    deadline = time.monotonic() + budget_seconds if budget_seconds else None
    edges: list[frozenset[int]] = []
    edge_seen: set[frozenset[int]] = set()
    prev: Coloring | None = None
    levels: list[LevelStats] = []

    for n in range(1, max_n + 1):
        if deadline is not None and time.monotonic() > deadline:
            return Exhausted(eq, r, n - 1, prev, None, levels)

        new_edges: list[frozenset[int]] = []
        for sol in enumerate_solutions_in_interval(eq, n):
            sup = sol.support
            if max(sup) == n and sup not in edge_seen:
                edge_seen.add(sup)
                new_edges.append(sup)
        edges.extend(new_edges)

        extended = _extend_coloring(prev, n, new_edges, r)
        if extended is not None:
            prev = extended
            levels.append(LevelStats(n, 0, len(new_edges)))
            continue

        try:
            res = find_coloring(
                edges, range(1, n + 1), r, threads=threads, deadline=deadline
            )
        except BudgetExceeded:
            return Exhausted(eq, r, n - 1, prev, n, levels)
        levels.append(LevelStats(n, res.stats.nodes, len(new_edges)))
        if res.colorable:
            prev = res.coloring
            continue
        assert prev is not None  # n = 1 is always colorable
        return RadoResult(eq, r, n, prev, levels)

    return Exhausted(eq, r, max_n, prev, None, levels)
