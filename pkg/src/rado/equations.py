"""Equation families, solution checking, enumeration, and the exact-k oracle.

Three families are supported: the k-term sum equation x_1 + ... + x_k = y,
its unit-fraction counterpart 1/x_1 + ... + 1/x_k = 1/y, and the
fractional-power variant 1/x_1^(1/ell) + ... + 1/x_k^(1/ell) = 1/y^(1/ell)
restricted to perfect ell-th powers (any other integer is refused, not
silently treated as a non-solution).

Solutions are canonical multisets: a value -> multiplicity map for the x
side plus the target y.  All arithmetic is exact; unit fractions use
fractions.Fraction, and the set enumerator reduces the unit-fraction case
to the sum case through the lcm transform a -> L/a.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .errors import (
    BudgetExceeded,
    DomainError,
    FractionalPowerNotAPower,
    SetTooLarge,
)

DEFAULT_SET_LIMIT = 64
DEFAULT_SOLUTION_CAP = 10**8

# Above this sum cap the exactly-k DP drops int bitmasks for plain sets
# (a bitmask of ~cap bits stops being an optimization).
_BITSET_CAP = 10**7


class Family(str, Enum):
    LINEAR_SUM = "linear-sum"
    UNIT_FRACTION = "unit-fraction"
    FRACTIONAL_POWER = "fractional-power"


@dataclass(frozen=True)
class Equation:
    """An equation family together with its term count k.

    ``ell`` is the root exponent and is only meaningful for
    ``FRACTIONAL_POWER``; the other families require ell == 1.
    """

    family: Family
    k: int
    ell: int = 1

    def __post_init__(self) -> None:
        if self.k < 2:
            raise DomainError(f"term count k must be >= 2, got {self.k}")
        if self.ell < 1:
            raise DomainError(f"root exponent ell must be >= 1, got {self.ell}")
        if self.family is not Family.FRACTIONAL_POWER and self.ell != 1:
            raise DomainError("ell != 1 only makes sense for the fractional-power family")


@dataclass(frozen=True)
class SolutionInstance:
    """A solution as a multiset: (value, multiplicity) pairs plus target y.

    ``counts`` is sorted by value, multiplicities are positive, and the
    canonical sort key is (target, nondecreasing value tuple).
    """

    counts: tuple[tuple[int, int], ...]
    target: int

    @classmethod
    def from_counts(cls, counts: Mapping[int, int], target: int) -> "SolutionInstance":
        items = tuple(sorted((int(v), int(c)) for v, c in counts.items()))
        return cls(items, int(target))

    @classmethod
    def from_values(cls, values: Iterable[int], target: int) -> "SolutionInstance":
        return cls(tuple(sorted(Counter(values).items())), int(target))

    @property
    def k(self) -> int:
        return sum(c for _, c in self.counts)

    def values(self) -> tuple[int, ...]:
        """The x side expanded to a nondecreasing tuple."""
        out: list[int] = []
        for v, c in self.counts:
            out.extend([v] * c)
        return tuple(out)

    @property
    def support(self) -> frozenset[int]:
        """Distinct values occurring in the solution, target included."""
        return frozenset(v for v, _ in self.counts) | {self.target}

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (self.target, self.values())

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)


def _nth_root_floor(n: int, ell: int) -> int:
    """Floor of the ell-th root, exact integer arithmetic (Newton)."""
    if n < 0:
        raise DomainError("root of a negative value")
    if ell == 1 or n in (0, 1):
        return n
    x = 1 << ((n.bit_length() + ell - 1) // ell)
    while True:
        y = ((ell - 1) * x + n // x ** (ell - 1)) // ell
        if y >= x:
            return x
        x = y


def _exact_root(value: int, ell: int) -> int | None:
    r = _nth_root_floor(value, ell)
    return r if r**ell == value else None


def _validate_positive(values: Iterable[int], what: str = "value") -> None:
    for v in values:
        if v < 1:
            raise DomainError(f"{what}s must be >= 1, got {v}")


def _root_map(values: Iterable[int], ell: int) -> dict[int, int]:
    """value -> exact ell-th root; raises on any non-power."""
    roots: dict[int, int] = {}
    for v in values:
        r = _exact_root(v, ell)
        if r is None:
            raise FractionalPowerNotAPower(
                f"{v} is not a perfect {ell}-th power; such values are not classified"
            )
        roots[v] = r
    return roots


def check_solution(eq: Equation, counts: Mapping[int, int], target: int) -> bool:
    """Exact satisfaction check.

    Returns False (not an error) when the multiplicities do not sum to
    eq.k.  For the fractional-power family every value and the target must
    be a perfect ell-th power; otherwise FractionalPowerNotAPower is raised.
    """
    if target < 1:
        raise DomainError(f"target must be >= 1, got {target}")
    for v, c in counts.items():
        if v < 1:
            raise DomainError(f"values must be >= 1, got {v}")
        if c < 1:
            raise DomainError(f"multiplicities must be >= 1, got {c}")

    if eq.family is Family.FRACTIONAL_POWER:
        roots = _root_map(list(counts) + [target], eq.ell)
        root_counts = {roots[v]: c for v, c in counts.items()}
        inner = Equation(Family.UNIT_FRACTION, eq.k)
        return check_solution(inner, root_counts, roots[target])

    if sum(counts.values()) != eq.k:
        return False
    if eq.family is Family.LINEAR_SUM:
        return sum(v * c for v, c in counts.items()) == target
    return sum(Fraction(c, v) for v, c in counts.items()) == Fraction(1, target)


def _instance(values: Iterable[int], target: int) -> SolutionInstance:
    return SolutionInstance.from_values(values, target)


def _linear_in_set(vals: list[int], k: int) -> list[SolutionInstance]:
    """All k-term sum solutions with values and target drawn from vals
    (sorted ascending)."""
    vset = set(vals)
    max_v = vals[-1]
    out: list[SolutionInstance] = []
    prefix: list[int] = []

    def rec(start: int, left: int, acc: int) -> None:
        if left == 0:
            if acc in vset:
                out.append(_instance(prefix, acc))
            return
        for i in range(start, len(vals)):
            v = vals[i]
            if acc + v * left > max_v:
                break
            prefix.append(v)
            rec(i, left - 1, acc + v)
            prefix.pop()

    rec(0, k, 0)
    return out


def _unit_fraction_in_set(vals: list[int], k: int) -> list[SolutionInstance]:
    """Unit-fraction solutions within vals via the lcm transform: with
    L = lcm(vals), sum c_a/a = 1/y iff sum c_a*(L/a) = L/y."""
    lcm = math.lcm(*vals)
    transformed = sorted(lcm // a for a in vals)
    back = {lcm // a: a for a in vals}
    out: list[SolutionInstance] = []
    for sol in _linear_in_set(transformed, k):
        counts = {back[v]: c for v, c in sol.counts}
        out.append(SolutionInstance.from_counts(counts, back[sol.target]))
    return out


def enumerate_solutions_in_set(
    eq: Equation, values: Iterable[int], *, limit: int = DEFAULT_SET_LIMIT
) -> list[SolutionInstance]:
    """Exactly the solutions with all values and the target inside the
    given set, deduplicated as multisets, sorted by (target, values)."""
    vals = sorted({int(v) for v in values})
    if not vals:
        raise DomainError("value set must be nonempty")
    _validate_positive(vals)
    if len(vals) > limit:
        raise SetTooLarge(f"|A| = {len(vals)} exceeds the limit {limit}")

    if eq.family is Family.LINEAR_SUM:
        sols = _linear_in_set(vals, eq.k)
    elif eq.family is Family.UNIT_FRACTION:
        sols = _unit_fraction_in_set(vals, eq.k)
    else:
        roots = _root_map(vals, eq.ell)
        inner = _unit_fraction_in_set(sorted(roots.values()), eq.k)
        ell = eq.ell
        sols = [
            SolutionInstance.from_counts(
                {v**ell: c for v, c in sol.counts}, sol.target**ell
            )
            for sol in inner
        ]
    return sorted(sols, key=SolutionInstance.sort_key)


def _linear_interval_iter(n: int, k: int, cap: int) -> Iterator[SolutionInstance]:
    """Nondecreasing k-tuples from [1,n] with sum <= n; target is the sum."""
    count = 0
    prefix: list[int] = []

    def rec(minv: int, left: int, acc: int) -> Iterator[SolutionInstance]:
        nonlocal count
        if left == 0:
            count += 1
            if count > cap:
                raise BudgetExceeded(f"more than {cap} solutions in [1,{n}]")
            yield _instance(prefix, acc)
            return
        for v in range(minv, n + 1):
            if acc + v * left > n:
                break
            prefix.append(v)
            yield from rec(v, left - 1, acc + v)
            prefix.pop()

    yield from rec(1, k, 0)


def _unit_interval_iter(n: int, k: int, cap: int) -> Iterator[SolutionInstance]:
    """Unit-fraction solutions within [1,n] in canonical order.

    For each target y the nondecreasing x-prefixes are extended with
    ceil(1/t) <= x <= floor(j/t) where t is the remaining rational target
    and j the remaining term count; a branch dies when even n-valued terms
    overshoot (t < j/n).
    """
    count = 0
    prefix: list[int] = []

    def rec(minv: int, left: int, t: Fraction) -> Iterator[tuple[int, ...]]:
        if left == 0:
            if t == 0:
                yield tuple(prefix)
            return
        if t <= 0:
            return
        p, q = t.numerator, t.denominator
        if p * n < left * q:  # t < left/n: j smallest-possible terms overshoot
            return
        lo = max(minv, -(-q // p))
        hi = min(n, (left * q) // p)
        for x in range(lo, hi + 1):
            prefix.append(x)
            yield from rec(x, left - 1, t - Fraction(1, x))
            prefix.pop()

    for y in range(1, n + 1):
        for tup in rec(y + 1, k, Fraction(1, y)):
            count += 1
            if count > cap:
                raise BudgetExceeded(f"more than {cap} solutions in [1,{n}]")
            yield _instance(tup, y)


def enumerate_solutions_in_interval(
    eq: Equation, n: int, *, max_solutions: int = DEFAULT_SOLUTION_CAP
) -> list[SolutionInstance]:
    """All solutions with every value in [1,n], in (target, values) order.

    For the fractional-power family only perfect ell-th powers can occur
    in a solution, so the interval reduces to roots in [1, floor(n^(1/ell))].
    """
    if n < 1:
        raise DomainError(f"interval bound must be >= 1, got {n}")
    if eq.family is Family.LINEAR_SUM:
        sols = list(_linear_interval_iter(n, eq.k, max_solutions))
        sols.sort(key=SolutionInstance.sort_key)
        return sols
    if eq.family is Family.UNIT_FRACTION:
        return list(_unit_interval_iter(n, eq.k, max_solutions))
    root_bound = _nth_root_floor(n, eq.ell)
    if root_bound < 1:
        return []
    inner = enumerate_solutions_in_interval(
        Equation(Family.UNIT_FRACTION, eq.k), root_bound, max_solutions=max_solutions
    )
    ell = eq.ell
    return [
        SolutionInstance.from_counts({v**ell: c for v, c in s.counts}, s.target**ell)
        for s in inner
    ]


def _exactly_k_sum_hits(vals: list[int], k: int) -> bool:
    """True iff some target in vals is a sum of exactly k values from vals
    (repetition allowed).  Layered reachability over sums, truncated at
    max(vals) minus the cheapest possible completion."""
    min_v, max_v = vals[0], vals[-1]
    if min_v * k > max_v:
        return False

    if max_v <= _BITSET_CAP:
        targets = 0
        for v in vals:
            targets |= 1 << v
        cap = max_v - (k - 1) * min_v
        layer = 0
        for v in vals:
            if v > cap:
                break
            layer |= 1 << v
        if layer == 0:
            return False
        for j in range(2, k + 1):
            cap = max_v - (k - j) * min_v
            mask = (1 << (cap + 1)) - 1
            nxt = 0
            for v in vals:
                nxt |= layer << v
            layer = nxt & mask
            if layer == 0:
                return False
        return bool(layer & targets)

    target_set = set(vals)
    cap = max_v - (k - 1) * min_v
    layer = {v for v in vals if v <= cap}
    if not layer:
        return False
    for j in range(2, k + 1):
        cap = max_v - (k - j) * min_v
        layer = {s + v for s in layer for v in vals if s + v <= cap}
        if not layer:
            return False
    return bool(layer & target_set)


def exists_mono_solution(eq: Equation, values: Iterable[int]) -> bool:
    """Whether some solution lies entirely inside the given set.

    Agrees with enumerate_solutions_in_set but never materializes
    solutions; this is the path that scales to large k, where sums stay
    quadratic while the enumeration tree explodes.
    """
    vals = sorted({int(v) for v in values})
    if not vals:
        raise DomainError("value set must be nonempty")
    _validate_positive(vals)

    if eq.family is Family.UNIT_FRACTION:
        lcm = math.lcm(*vals)
        vals = sorted(lcm // a for a in vals)
    elif eq.family is Family.FRACTIONAL_POWER:
        roots = sorted(_root_map(vals, eq.ell).values())
        lcm = math.lcm(*roots)
        vals = sorted(lcm // a for a in roots)
    return _exactly_k_sum_hits(vals, eq.k)


def solution_supports(solutions: Iterable[SolutionInstance]) -> list[frozenset[int]]:
    """Distinct supports in first-seen order (a solution is monochromatic
    iff its support is monochromatic)."""
    seen: set[frozenset[int]] = set()
    out: list[frozenset[int]] = []
    for sol in solutions:
        sup = sol.support
        if sup not in seen:
            seen.add(sup)
            out.append(sup)
    return out
