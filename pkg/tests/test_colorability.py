import itertools
import random

import pytest

from rado.colorability import (
    Coloring,
    brute_force_is_witness,
    export_cnf,
    find_coloring,
    is_witness,
)
from rado.equations import (
    Equation,
    Family,
    enumerate_solutions_in_interval,
    enumerate_solutions_in_set,
    exists_mono_solution,
    solution_supports,
)
from rado.errors import CapExceeded, DomainError, EdgeOutsideDomain
from rado.witness_families import lemma31_set, lemma33_set

LIN = Family.LINEAR_SUM
UF = Family.UNIT_FRACTION


def interval_edges(family, n, k):
    eq = Equation(family, k)
    return solution_supports(enumerate_solutions_in_interval(eq, n))


def random_instance(rng):
    n_vals = rng.randint(3, 9)
    domain = rng.sample(range(1, 30), n_vals)
    n_edges = rng.randint(0, 10)
    edges = []
    for _ in range(n_edges):
        size = rng.randint(1, min(4, n_vals))
        edges.append(frozenset(rng.sample(domain, size)))
    return edges, domain


def brute_force_colorable(edges, domain, r):
    domain = sorted(set(domain))
    for combo in itertools.product(range(r), repeat=len(domain)):
        assignment = dict(zip(domain, combo))
        if all(len({assignment[v] for v in e}) > 1 for e in edges):
            return True
    return False


# -- Coloring ----------------------------------------------------------------

def test_coloring_validation():
    with pytest.raises(DomainError):
        Coloring((1, 2), (0,), 2)
    with pytest.raises(DomainError):
        Coloring((1, 1), (0, 0), 2)
    with pytest.raises(DomainError):
        Coloring((1, 2), (0, 2), 2)
    c = Coloring((1, 2, 3), (0, 1, 0), 2)
    assert c.color_of(2) == 1
    assert c.classes() == [(1, 3), (2,)]
    assert c.is_proper([{1, 2}])
    assert not c.is_proper([{1, 3}])


# -- find_coloring ------------------------------------------------------------

def test_find_coloring_interval_examples():
    edges = interval_edges(LIN, 4, 2)
    res = find_coloring(edges, range(1, 5), 2)
    assert res.colorable
    assert res.coloring.is_proper(edges)

    res5 = find_coloring(interval_edges(LIN, 5, 2), range(1, 6), 2)
    assert not res5.colorable
    assert res5.coloring is None
    assert res5.stats.edges >= 1


def test_find_coloring_no_edges_gives_all_zero():
    res = find_coloring([], {1, 2, 3}, 2)
    assert res.colorable
    assert res.coloring.colors == (0, 0, 0)


def test_find_coloring_singleton_edge():
    res = find_coloring([{2}], {1, 2, 3}, 3)
    assert not res.colorable


def test_find_coloring_edge_outside_domain():
    with pytest.raises(EdgeOutsideDomain):
        find_coloring([{1, 9}], {1, 2}, 2)


def test_find_coloring_deterministic():
    edges = interval_edges(LIN, 4, 2)
    first = find_coloring(edges, range(1, 5), 2)
    second = find_coloring(edges, range(1, 5), 2)
    assert first.coloring == second.coloring


@pytest.mark.parametrize("seed", range(30))
@pytest.mark.parametrize("r", [2, 3])
def test_find_coloring_matches_brute_force(seed, r):
    rng = random.Random(seed)
    edges, domain = random_instance(rng)
    res = find_coloring(edges, domain, r)
    assert res.colorable == brute_force_colorable(edges, domain, r)
    if res.colorable:
        assert res.coloring.is_proper(edges)


@pytest.mark.parametrize("seed", range(10))
def test_subsumption_safety(seed):
    # adding superset edges never changes the verdict
    rng = random.Random(500 + seed)
    edges, domain = random_instance(rng)
    edges = [e for e in edges if len(e) >= 2]
    base = find_coloring(edges, domain, 2).colorable
    padded = list(edges)
    for e in edges[: len(edges) // 2]:
        extra = [v for v in domain if v not in e]
        if extra:
            padded.append(frozenset(e | {rng.choice(extra)}))
    assert find_coloring(padded, domain, 2).colorable == base


def test_find_coloring_parallel_same_verdict():
    edges = interval_edges(LIN, 5, 2)
    seq = find_coloring(edges, range(1, 6), 2)
    par = find_coloring(edges, range(1, 6), 2, threads=2)
    assert seq.colorable == par.colorable

    edges4 = interval_edges(LIN, 4, 2)
    par4 = find_coloring(edges4, range(1, 5), 2, threads=2)
    assert par4.colorable
    assert par4.coloring.is_proper(edges4)


# -- is_witness ----------------------------------------------------------------

def test_is_witness_examples():
    assert is_witness(Equation(LIN, 2), range(1, 6), 2).is_witness
    assert is_witness(Equation(LIN, 5), lemma31_set(5), 2).is_witness

    verdict = is_witness(Equation(LIN, 2), {1, 2, 3}, 2)
    assert not verdict.is_witness
    cm = verdict.counterexample
    classes = [set(c) for c in cm.classes() if c]
    for cls in classes:
        assert not exists_mono_solution(Equation(LIN, 2), cls)


def test_is_witness_stats_edges_positive_when_witness():
    verdict = is_witness(Equation(LIN, 2), range(1, 6), 2)
    assert verdict.stats.edges >= 1


def test_is_witness_monotone_under_superset():
    base = list(range(1, 6))
    assert is_witness(Equation(LIN, 2), base, 2).is_witness
    assert is_witness(Equation(LIN, 2), base + [6, 7], 2).is_witness


# -- brute_force_is_witness ------------------------------------------------------

def test_brute_force_examples():
    assert brute_force_is_witness(Equation(LIN, 4), lemma31_set(4), 2).is_witness
    assert brute_force_is_witness(Equation(LIN, 4), lemma33_set(4), 2).is_witness

    verdict = brute_force_is_witness(Equation(LIN, 2), range(1, 5), 2)
    assert not verdict.is_witness
    for cls in verdict.counterexample.classes():
        if cls:
            assert not exists_mono_solution(Equation(LIN, 2), cls)


def test_brute_force_cap():
    with pytest.raises(CapExceeded):
        brute_force_is_witness(Equation(LIN, 2), range(1, 30), 2, cap=10**6)


@pytest.mark.parametrize("family", [LIN, UF])
@pytest.mark.parametrize("seed", range(12))
def test_oracle_equivalence_small(family, seed):
    # r^|A| <= 10^5 instances: both deciders agree
    rng = random.Random(2000 + seed)
    universe = range(1, 13) if family is UF else range(1, 25)
    values = rng.sample(universe, rng.randint(2, 8))
    r = rng.choice([2, 3])
    k = rng.randint(2, 5)
    eq = Equation(family, k)
    a = is_witness(eq, values, r)
    b = brute_force_is_witness(eq, values, r)
    assert a.is_witness == b.is_witness
    for verdict in (a, b):
        if verdict.counterexample is not None:
            for cls in verdict.counterexample.classes():
                if cls:
                    assert not exists_mono_solution(eq, cls)


# -- export_cnf --------------------------------------------------------------

def test_export_cnf_headers():
    assert export_cnf([{1, 2}, {1, 2, 3}], [1, 2, 3], 2).splitlines()[0] == "p cnf 6 10"
    assert export_cnf([], [1], 1).splitlines()[0] == "p cnf 1 1"
    assert export_cnf([{1, 2}], [1, 2], 3).splitlines()[0] == "p cnf 6 11"


def test_export_cnf_shape():
    text = export_cnf([{1, 2}], [1, 2], 2)
    lines = text.splitlines()
    assert lines == [
        "p cnf 4 6",
        "1 2 0",
        "3 4 0",
        "-1 -2 0",
        "-3 -4 0",
        "-1 -3 0",
        "-2 -4 0",
    ]
    assert text.endswith("0\n")


def cnf_satisfiable(text):
    """Exhaustive truth-table check of a DIMACS string (<= 20 variables)."""
    lines = text.strip().splitlines()
    n_vars, n_clauses = map(int, lines[0].split()[2:])
    clauses = []
    for line in lines[1:]:
        lits = [int(x) for x in line.split()]
        assert lits[-1] == 0
        clauses.append(lits[:-1])
    assert len(clauses) == n_clauses
    assert n_vars <= 20
    for bits in range(1 << n_vars):
        if all(
            any((bits >> (abs(l) - 1)) & 1 == (l > 0) for l in clause)
            for clause in clauses
        ):
            return True
    return False


@pytest.mark.parametrize("seed", range(10))
def test_cnf_fidelity(seed):
    rng = random.Random(3000 + seed)
    n_vals = rng.randint(2, 6)
    domain = sorted(rng.sample(range(1, 20), n_vals))
    r = rng.choice([2, 3])
    while n_vals * r > 20:
        n_vals -= 1
        domain = domain[:n_vals]
    edges = []
    for _ in range(rng.randint(1, 6)):
        size = rng.randint(2, min(3, n_vals))
        edges.append(frozenset(rng.sample(domain, size)))
    text = export_cnf(edges, domain, r)
    assert cnf_satisfiable(text) == find_coloring(edges, domain, r).colorable


def test_cnf_fidelity_on_witness_instance():
    values = sorted(enumerate_solutions_in_set(Equation(LIN, 2), range(1, 6))[0].support | set(range(1, 6)))
    edges = solution_supports(enumerate_solutions_in_set(Equation(LIN, 2), values))
    text = export_cnf(edges, values, 2)
    assert cnf_satisfiable(text) == find_coloring(edges, values, 2).colorable
