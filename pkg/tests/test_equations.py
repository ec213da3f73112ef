import itertools
import random
from fractions import Fraction

import pytest

from rado.equations import (
    Equation,
    Family,
    SolutionInstance,
    check_solution,
    enumerate_solutions_in_interval,
    enumerate_solutions_in_set,
    exists_mono_solution,
)
from rado.errors import (
    BudgetExceeded,
    DomainError,
    FractionalPowerNotAPower,
    SetTooLarge,
)

LIN = Family.LINEAR_SUM
UF = Family.UNIT_FRACTION
FP = Family.FRACTIONAL_POWER


# -- independent oracles ---------------------------------------------------

def brute_solutions_in_set(family, values, k):
    """All (x-multiset, y) with values drawn from the set, by raw product."""
    values = sorted(set(values))
    out = set()
    for tup in itertools.combinations_with_replacement(values, k):
        if family is LIN:
            total = sum(tup)
            if total in values:
                out.add((tup, total))
        else:
            s = sum(Fraction(1, x) for x in tup)
            if s.numerator == 1 and s.denominator in values:
                out.add((tup, s.denominator))
    return out


def brute_solutions_in_interval(family, n, k):
    return brute_solutions_in_set(family, range(1, n + 1), k) if family is LIN else {
        (tup, y)
        for tup in itertools.combinations_with_replacement(range(1, n + 1), k)
        for s in [sum(Fraction(1, x) for x in tup)]
        if s.numerator == 1 and s.denominator <= n
        for y in [s.denominator]
    }


def as_pairs(solutions):
    return {(s.values(), s.target) for s in solutions}


# -- Equation / SolutionInstance -------------------------------------------

def test_equation_invariants():
    with pytest.raises(DomainError):
        Equation(LIN, 1)
    with pytest.raises(DomainError):
        Equation(LIN, 2, ell=2)
    with pytest.raises(DomainError):
        Equation(FP, 3, ell=0)
    assert Equation(FP, 3, ell=2).ell == 2


def test_solution_instance_canonical():
    s = SolutionInstance.from_counts({2: 1, 1: 3}, 5)
    assert s.counts == ((1, 3), (2, 1))
    assert s.values() == (1, 1, 1, 2)
    assert s.k == 4
    assert s.support == frozenset({1, 2, 5})
    assert s.sort_key() == (5, (1, 1, 1, 2))


# -- check_solution ---------------------------------------------------------

def test_check_solution_examples():
    assert check_solution(Equation(LIN, 4), {1: 3, 2: 1}, 5)
    assert check_solution(Equation(UF, 2), {3: 1, 6: 1}, 2)
    assert not check_solution(Equation(UF, 2), {2: 1, 3: 1}, 1)


def test_check_solution_wrong_multiplicity_is_false_not_error():
    assert not check_solution(Equation(LIN, 4), {1: 2, 2: 1}, 4)


def test_check_solution_validates_positivity():
    with pytest.raises(DomainError):
        check_solution(Equation(LIN, 2), {0: 2}, 1)
    with pytest.raises(DomainError):
        check_solution(Equation(LIN, 2), {1: 2}, 0)


def test_check_solution_fractional_power():
    # 1/3 + 1/6 = 1/2 lifted by ell = 2: values 9, 36, target 4
    eq = Equation(FP, 2, ell=2)
    assert check_solution(eq, {9: 1, 36: 1}, 4)
    assert not check_solution(eq, {9: 1, 25: 1}, 4)
    with pytest.raises(FractionalPowerNotAPower):
        check_solution(eq, {8: 1, 36: 1}, 4)


# -- enumerate_solutions_in_set ---------------------------------------------

def test_enumerate_in_set_examples():
    got = enumerate_solutions_in_set(Equation(LIN, 2), {1, 2, 3})
    assert [(s.as_dict(), s.target) for s in got] == [({1: 2}, 2), ({1: 1, 2: 1}, 3)]

    got = enumerate_solutions_in_set(Equation(LIN, 4), {1, 2, 6})
    assert [(s.as_dict(), s.target) for s in got] == [({1: 2, 2: 2}, 6)]

    got = enumerate_solutions_in_set(Equation(UF, 2), {2, 3, 6})
    assert [(s.as_dict(), s.target) for s in got] == [({3: 1, 6: 1}, 2), ({6: 2}, 3)]


@pytest.mark.parametrize("family", [LIN, UF])
@pytest.mark.parametrize("seed", range(6))
def test_enumerate_in_set_matches_brute_force(family, seed):
    rng = random.Random(seed)
    values = rng.sample(range(1, 25), rng.randint(2, 8))
    k = rng.randint(2, 4)
    got = enumerate_solutions_in_set(Equation(family, k), values)
    assert as_pairs(got) == brute_solutions_in_set(family, values, k)
    for s in got:
        assert s.k == k
        assert check_solution(Equation(family, k), s.as_dict(), s.target)


def test_enumerate_in_set_errors():
    with pytest.raises(SetTooLarge):
        enumerate_solutions_in_set(Equation(LIN, 2), range(1, 100), limit=64)
    with pytest.raises(DomainError):
        enumerate_solutions_in_set(Equation(LIN, 2), [])
    with pytest.raises(DomainError):
        enumerate_solutions_in_set(Equation(LIN, 2), [0, 1])


def test_enumerate_in_set_fractional_power():
    # squares of {2,3,6}: the lifted solutions of 1/3+1/6=1/2 and 1/6+1/6=1/3
    got = enumerate_solutions_in_set(Equation(FP, 2, ell=2), {4, 9, 36})
    assert [(s.as_dict(), s.target) for s in got] == [({9: 1, 36: 1}, 4), ({36: 2}, 9)]
    with pytest.raises(FractionalPowerNotAPower):
        enumerate_solutions_in_set(Equation(FP, 2, ell=2), {4, 8, 36})


# -- enumerate_solutions_in_interval ----------------------------------------

def test_enumerate_in_interval_examples():
    got = enumerate_solutions_in_interval(Equation(UF, 2), 6)
    assert [(s.as_dict(), s.target) for s in got] == [
        ({2: 2}, 1), ({3: 1, 6: 1}, 2), ({4: 2}, 2), ({6: 2}, 3),
    ]

    got = enumerate_solutions_in_interval(Equation(LIN, 2), 5)
    assert [(s.as_dict(), s.target) for s in got] == [
        ({1: 2}, 2), ({1: 1, 2: 1}, 3), ({1: 1, 3: 1}, 4),
        ({2: 2}, 4), ({1: 1, 4: 1}, 5), ({2: 1, 3: 1}, 5),
    ]

    got = enumerate_solutions_in_interval(Equation(UF, 2), 3)
    assert [(s.as_dict(), s.target) for s in got] == [({2: 2}, 1)]


@pytest.mark.parametrize("family,n,k", [(LIN, 12, 3), (UF, 20, 3), (UF, 15, 4)])
def test_enumerate_in_interval_matches_brute_force(family, n, k):
    got = enumerate_solutions_in_interval(Equation(family, k), n)
    assert as_pairs(got) == brute_solutions_in_interval(family, n, k)


def test_enumerate_in_interval_canonical_order():
    for family, n, k in [(LIN, 15, 3), (UF, 24, 2)]:
        got = enumerate_solutions_in_interval(Equation(family, k), n)
        keys = [s.sort_key() for s in got]
        assert keys == sorted(keys)
        assert len(set(keys)) == len(keys)


def test_enumerate_in_interval_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_solutions_in_interval(Equation(LIN, 2), 30, max_solutions=10)


def test_enumerate_in_interval_fractional_power():
    # within [1, 40] and ell = 2 only root values up to 6 can occur
    got = enumerate_solutions_in_interval(Equation(FP, 2, ell=2), 40)
    assert [(s.as_dict(), s.target) for s in got] == [
        ({4: 2}, 1), ({9: 1, 36: 1}, 4), ({16: 2}, 4), ({36: 2}, 9),
    ]


# -- properties: dilation closure and the lcm transform ---------------------

@pytest.mark.parametrize("family", [LIN, UF])
@pytest.mark.parametrize("t", [2, 3, 5])
def test_dilation_closure(family, t):
    eq = Equation(family, 3)
    base = enumerate_solutions_in_interval(eq, 8)
    scaled_interval = as_pairs(enumerate_solutions_in_interval(eq, 8 * t))
    for s in base:
        scaled_counts = {v * t: c for v, c in s.counts}
        assert check_solution(eq, scaled_counts, s.target * t)
        scaled = SolutionInstance.from_counts(scaled_counts, s.target * t)
        assert (scaled.values(), scaled.target) in scaled_interval


@pytest.mark.parametrize("seed", range(5))
def test_lcm_transform_bijection(seed):
    import math

    rng = random.Random(100 + seed)
    values = sorted(rng.sample(range(1, 30), rng.randint(3, 8)))
    k = rng.randint(2, 4)
    lcm = math.lcm(*values)
    dual = sorted(lcm // a for a in values)
    uf = enumerate_solutions_in_set(Equation(UF, k), values)
    lin = enumerate_solutions_in_set(Equation(LIN, k), dual)
    mapped = {
        (tuple(sorted(lcm // v for v, c in s.counts for _ in range(c))), lcm // s.target)
        for s in uf
    }
    assert mapped == as_pairs(lin)


# -- exists_mono_solution ----------------------------------------------------

def test_exists_mono_examples():
    assert not exists_mono_solution(Equation(LIN, 4), {2, 3})
    assert exists_mono_solution(Equation(LIN, 4), {1, 2, 5, 6})
    assert exists_mono_solution(Equation(UF, 2), {2, 3, 6})


@pytest.mark.parametrize("family", [LIN, UF])
@pytest.mark.parametrize("seed", range(10))
def test_exists_mono_agrees_with_enumeration(family, seed):
    rng = random.Random(1000 + seed)
    universe = range(1, 13) if family is UF else range(1, 40)
    values = rng.sample(universe, rng.randint(2, 12))
    k = rng.randint(2, 12)
    eq = Equation(family, k)
    assert exists_mono_solution(eq, values) == bool(
        enumerate_solutions_in_set(eq, values)
    )


def test_exists_mono_large_k():
    # 299 ones plus a two reach 301; sums from {2,3} can never reach 599
    eq = Equation(LIN, 300)
    assert exists_mono_solution(eq, {1, 2, 301})
    assert exists_mono_solution(eq, {2, 3, 601})
    assert not exists_mono_solution(eq, {2, 3, 599})


def test_support_size_at_least_two():
    for family in (LIN, UF):
        for s in enumerate_solutions_in_interval(Equation(family, 3), 15):
            assert len(s.support) >= 2
