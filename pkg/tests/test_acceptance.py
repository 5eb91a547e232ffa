"""Acceptance criteria, one test each; every test records a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` (lines appear in the terminal
summary) or ``python tests/test_acceptance.py`` (lines go to stdout).
"""
import itertools
import math
import random
from fractions import Fraction
from importlib import resources

import sympy

from shamoduli import gallery, io
from shamoduli.chow import (
    component_disagreements,
    cycle_class,
    generic_class,
    stabilizer_dimension,
    stabilizer_relations,
    unique_contributor,
)
from shamoduli.enumeration import component_models, enumerate_combinatorial_types, replacement_outcomes, shape
from shamoduli.linalg import rank
from shamoduli.projgeom import generic_base_params, h_locus_equations, verify_universal_family
from shamoduli.rational import random_nonzero_rational, random_rational
from shamoduli.sha import ShaComponent, is_maximally_degenerate, stable_replacement
from shamoduli.weights import WeightVector, exclusion_certificate
from shamoduli.wonderful import building_set, strata, zero_dimensional

from acceptance_log import check
from support import invariant_violations, random_run
from test_chow import standard_arrangement

FIXTURES = resources.files("shamoduli") / "fixtures"


def five_line_census():
    w = WeightVector.ones(5)
    elems = building_set(5, w)
    sizes = sorted(len(e.I) for e in elems)
    assert len(elems) == 15 and sizes.count(3) == 10 and sizes.count(4) == 5, sizes
    zero = zero_dimensional(strata(5, w), 5)
    pairs = [L for L in zero if len(L.factors) == 2 and all(len(f) == 3 for f in L.factors)
             and len(set(L.factors[0]) & set(L.factors[1])) == 1]
    quads = [L for L in zero if len(L.factors) == 1 and len(L.factors[0]) == 4]
    assert len(zero) == 20 and len(pairs) == 15 and len(quads) == 5, (len(zero), len(pairs), len(quads))
    return "15 elements; 20 points = 15 pairs + 5 quadruples"


def dimension_law():
    checked = 0
    for n in range(5, 9):
        a = generic_base_params(n)
        for size in range(3, n):
            for I in itertools.combinations(range(1, n + 1), size):
                eqs = h_locus_equations(n, a, I)
                want = size - 2
                assert rank(eqs) == want, (n, I)
                assert sympy.Matrix(eqs).rank() == want, (n, I)
                checked += 1
    return f"{checked} loci"


def universal_identities():
    for n in range(5, 9):
        rng = random.Random(f"acceptance/zeta/{n}")
        a = generic_base_params(n)
        for _ in range(100):
            s = [random_nonzero_rational(rng) for _ in range(n - 2)]
            t = [random_nonzero_rational(rng), random_rational(rng), random_rational(rng)]
            assert verify_universal_family(n, a, s, t), (n, s, t)
    return "400 evaluations"


def exclusion():
    for n in range(5, 9):
        cert = exclusion_certificate(n)
        assert cert.infeasible, n
        assert cert.relaxed_feasible and cert.relaxed_witness == (Fraction(1),) * n, (n, cert.relaxed_witness)
    return "n = 5..8 infeasible; relaxed witness 1^n"


def quadruple_replacement():
    golden = {name: io.load_sha(str(FIXTURES / f"{name}.json")) for name in
              ("six_line_quadruple", "six_line_generic_replacement", "six_line_chain_replacement")}
    x = golden["six_line_quadruple"]
    assert x.skeleton() == gallery.six_line_quadruple().skeleton()
    outcomes = replacement_outcomes(x, 0, (1, 2, 3, 4), WeightVector.ones(6))
    shapes = sorted({shape(y) for y in outcomes})
    assert shapes == [(6, ((4, ()),)), (6, ((4, ((3, ()),)),))], shapes
    skeletons = {y.skeleton() for y in outcomes}
    for name in ("six_line_generic_replacement", "six_line_chain_replacement"):
        y = golden[name]
        assert y.skeleton() in skeletons, name
        assert io.sha_to_json(y) == io.sha_to_json(gallery.FIXTURES[name]()), name
    chain = golden["six_line_chain_replacement"]
    assert [len(c.lines) for c in chain.components] == [6, 4, 3]
    # a triple point: every admissible replacement is the same point of a zero-dimensional space
    t = gallery.with_multiple_points(6, [(1, 2, 3)])
    replaced = {io.dumps(io.sha_to_json(stable_replacement(t, 0, (1, 2, 3), seed=k))) for k in range(10)}
    assert len(replaced) == 1
    assert len(replacement_outcomes(t, 0, (1, 2, 3), WeightVector.ones(6))) == 1
    y = stable_replacement(t, 0, (1, 2, 3))
    assert y.components[1].moduli_dimension() == 0
    return f"{len(outcomes)} labelled outcomes, 2 shapes; triple replacement unique"


def oracle_agreement():
    total = 0
    for n in range(3, 8):
        for lines, model, family in component_models(n, max_depth=3):
            comp = ShaComponent.build(0, n, lines, dict(zip(lines, model)))
            assert comp.multiple_sets == tuple(sorted(family)), (n, lines, family)
            bad = component_disagreements(comp, seed=0)
            assert not bad, (n, lines, family, bad[:3])
            total += 1
    return f"{total} component models, 0 disagreements"


def maximal_classes():
    counts = []
    for n in (5, 6, 7):
        gen = generic_class(n)
        support = gen.support()
        assert len(support) == math.comb(n, 3)
        xs = enumerate_combinatorial_types(n, maximal_only=True)
        for x in xs:
            assert is_maximally_degenerate(x)
            assert cycle_class(x) == gen, x.skeleton()
            for m in support:
                unique_contributor(x, m)
        counts.append(len(xs))
    return f"{counts} maximal types"


def random_replacements():
    rng = random.Random("acceptance/runs")
    steps = 0
    for k in range(10_000):
        n = rng.randint(4, 7)
        for x in random_run(rng, n):
            bad = invariant_violations(x)
            assert not bad, (k, n, bad)
            steps += 1
    return f"10000 runs, {steps} shas checked"


def stabilizers():
    rng = random.Random("acceptance/stabilizer")
    for k in range(100):
        arr = standard_arrangement(rng.randint(3, 8), rng)
        if k % 2:
            while True:
                m = [[random_rational(rng) for _ in range(3)] for _ in range(3)]
                if sympy.Matrix(m).det() != 0:
                    break
            arr = arr.transformed(m)
        assert stabilizer_dimension(arr) == 1
        assert stabilizer_relations(arr) == [(1, -1)]
    return "100 inputs, relation g1 = g2"


CRITERIA = [
    (1, "five-line building set and zero-dimensional strata", 1, five_line_census),
    (2, "rank of the concurrency loci", 10, dimension_law),
    (3, "universal family identities", 5, universal_identities),
    (4, "exclusion system", 5, exclusion),
    (5, "quadruple point replacement outcomes", None, quadruple_replacement),
    (6, "combinatorial coefficients agree with the linear oracle", 300, oracle_agreement),
    (7, "maximally degenerate classes", 300, maximal_classes),
    (8, "random replacement sequences keep the tree invariants", None, random_replacements),
    (9, "stabilizer dimension", None, stabilizers),
]


def test_criterion_1():
    check(*CRITERIA[0])


def test_criterion_2():
    check(*CRITERIA[1])


def test_criterion_3():
    check(*CRITERIA[2])


def test_criterion_4():
    check(*CRITERIA[3])


def test_criterion_5():
    check(*CRITERIA[4])


def test_criterion_6():
    check(*CRITERIA[5])


def test_criterion_7():
    check(*CRITERIA[6])


def test_criterion_8():
    check(*CRITERIA[7])


def test_criterion_9():
    check(*CRITERIA[8])


if __name__ == "__main__":
    failed = 0
    for crit in CRITERIA:
        try:
            check(*crit)
        except AssertionError:
            failed += 1
    raise SystemExit(1 if failed else 0)
