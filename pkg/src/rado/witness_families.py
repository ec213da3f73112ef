"""Constructors for the explicit witness families and their lcm-quotient
duals.

Two twelve-expression families certify the sum equation under 2-colorings
(lemma33 trades the 3k element for 2k and needs k even), the 30-expression
chi family certifies it under 3-colorings, and plain intervals cover the
classical case.  Expression collisions at small k are merged by set
semantics; chi_collisions reports them rather than assuming all 30 values
stay distinct.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError


def lemma31_set(k: int) -> list[int]:
    """{1, 2, 3, k+1, k+2, 2(k+1), 2(k+2), 3k, k(k+1), k(k+2), 2k(k+1),
    2k(k+2)} for k >= 4.  At k = 4 the expressions 3k and 2(k+2) collide,
    leaving 11 distinct values; for k >= 5 all 12 are distinct."""
    if k < 4:
        raise DomainError(f"lemma31 family needs k >= 4, got {k}")
    exprs = [
        1, 2, 3,
        k + 1, k + 2,
        2 * (k + 1), 2 * (k + 2),
        3 * k,
        k * (k + 1), k * (k + 2),
        2 * k * (k + 1), 2 * k * (k + 2),
    ]
    return sorted(set(exprs))


def lemma33_set(k: int) -> list[int]:
    """{1, 2, 3, k+1, k+2, 2k, 2(k+1), 2(k+2), k(k+1), k(k+2), 2k(k+1),
    2k(k+2)} for even k >= 4."""
    if k < 4:
        raise DomainError(f"lemma33 family needs k >= 4, got {k}")
    if k % 2 != 0:
        raise DomainError(f"lemma33 family needs k even, got {k}")
    exprs = [
        1, 2, 3,
        k + 1, k + 2,
        2 * k, 2 * (k + 1), 2 * (k + 2),
        k * (k + 1), k * (k + 2),
        2 * k * (k + 1), 2 * k * (k + 2),
    ]
    return sorted(set(exprs))


_CHI_EXPRESSIONS: tuple[tuple[str, object], ...] = (
    ("1", lambda k: 1),
    ("2", lambda k: 2),
    ("k", lambda k: k),
    ("k+1", lambda k: k + 1),
    ("k+2", lambda k: k + 2),
    ("2k", lambda k: 2 * k),
    ("k^2-k+1", lambda k: k * k - k + 1),
    ("k^2-1", lambda k: k * k - 1),
    ("k^2", lambda k: k * k),
    ("k^2+1", lambda k: k * k + 1),
    ("k^2+k-1", lambda k: k * k + k - 1),
    ("k^2+k", lambda k: k * k + k),
    ("k^2+k+1", lambda k: k * k + k + 1),
    ("2k^2-2k+1", lambda k: 2 * k * k - 2 * k + 1),
    ("2k^2-k", lambda k: 2 * k * k - k),
    ("2k^2-k+1", lambda k: 2 * k * k - k + 1),
    ("2k^2-1", lambda k: 2 * k * k - 1),
    ("2k^2+k-2", lambda k: 2 * k * k + k - 2),
    ("3k^2-2k", lambda k: 3 * k * k - 2 * k),
    ("3k^2-k-1", lambda k: 3 * k * k - k - 1),
    ("3k^2-2", lambda k: 3 * k * k - 2),
    ("k^3", lambda k: k**3),
    ("k^3+1", lambda k: k**3 + 1),
    ("k^3+k-1", lambda k: k**3 + k - 1),
    ("k^3+k", lambda k: k**3 + k),
    ("k^3+k^2-k", lambda k: k**3 + k * k - k),
    ("k^3+k^2-1", lambda k: k**3 + k * k - 1),
    ("k^3+k^2+k-2", lambda k: k**3 + k * k + k - 2),
    ("k^3+2k^2-k-1", lambda k: k**3 + 2 * k * k - k - 1),
    ("k^3+2k^2-2", lambda k: k**3 + 2 * k * k - 2),
)


def chi_set(k: int) -> list[int]:
    """The 30-expression 3-coloring witness family, k >= 3; collisions at
    small k are merged (see chi_collisions)."""
    if k < 3:
        raise DomainError(f"chi family needs k >= 3, got {k}")
    return sorted({fn(k) for _, fn in _CHI_EXPRESSIONS})


def chi_collisions(k: int) -> dict[int, tuple[str, ...]]:
    """Values hit by more than one chi expression, with the expression
    labels that collide."""
    if k < 3:
        raise DomainError(f"chi family needs k >= 3, got {k}")
    hits: dict[int, list[str]] = {}
    for label, fn in _CHI_EXPRESSIONS:
        hits.setdefault(fn(k), []).append(label)
    return {v: tuple(labels) for v, labels in sorted(hits.items()) if len(labels) > 1}


def interval_set(n: int) -> list[int]:
    """{1, ..., n}."""
    if n < 1:
        raise DomainError(f"interval endpoint must be >= 1, got {n}")
    return list(range(1, n + 1))


FAMILY_NAMES = ("lemma31", "lemma33", "chi", "interval")


@dataclass(frozen=True)
class FamilySpec:
    """A named witness family plus its parameter (k, or n for interval)."""

    family: str
    param: int

    def __post_init__(self) -> None:
        if self.family not in FAMILY_NAMES:
            raise DomainError(
                f"unknown family {self.family!r}; expected one of {FAMILY_NAMES}"
            )


def family_set(spec: FamilySpec) -> list[int]:
    """Evaluate the family at its parameter; duplicates merged, ascending."""
    if spec.family == "lemma31":
        return lemma31_set(spec.param)
    if spec.family == "lemma33":
        return lemma33_set(spec.param)
    if spec.family == "chi":
        return chi_set(spec.param)
    return interval_set(spec.param)


def dual_set(values) -> list[int]:
    """{L/a : a in A} with L = lcm(A); same cardinality as A (the map is
    injective on a set).  Carries sum-equation solutions within A to
    unit-fraction solutions and vice versa."""
    vals = sorted({int(v) for v in values})
    if not vals:
        raise DomainError("value set must be nonempty")
    if vals[0] < 1:
        raise DomainError("all values must be >= 1")
    lcm = math.lcm(*vals)
    return sorted(lcm // a for a in vals)
