import random
from fractions import Fraction

import pytest
from scipy.optimize import linprog

from shamoduli import fourier_motzkin as fm
from shamoduli.weights import exclusion_certificate, exclusion_system


def lp_feasible(system, nvars):
    """Oracle: maximize a slack e <= 1 with a.x + c >= e on strict rows, >= 0 on the others."""
    a_ub, b_ub = [], []
    for q in system:
        row = [-float(c) for c in q.coeffs] + [1.0 if q.strict else 0.0]
        a_ub.append(row)
        b_ub.append(float(q.const))
    res = linprog([0.0] * nvars + [-1.0], A_ub=a_ub, b_ub=b_ub,
                  bounds=[(-50, 50)] * nvars + [(None, 1)], method="highs")
    if res.status != 0:
        return False
    strict = any(q.strict for q in system)
    return -res.fun > 1e-9 if strict else True


def random_system(rng, nvars, rows):
    out = []
    for _ in range(rows):
        coeffs = [rng.randint(-3, 3) for _ in range(nvars)]
        out.append(fm.Inequality.make(coeffs, rng.randint(-4, 4), strict=rng.random() < 0.5))
    return out


@pytest.mark.parametrize("seed", range(60))
def test_feasibility_matches_lp(seed):
    rng = random.Random(seed)
    nvars = rng.randint(1, 3)
    system = random_system(rng, nvars, rng.randint(2, 6))
    # bound the box so both methods see the same region
    for i in range(nvars):
        e = [0] * nvars
        e[i] = 1
        system.append(fm.Inequality.make(e, 50))
        e = [0] * nvars
        e[i] = -1
        system.append(fm.Inequality.make(e, 50))
    res = fm.solve(system, nvars)
    assert res.feasible == lp_feasible(system, nvars)
    if res.feasible:
        assert all(q.holds(res.witness) for q in system)


def test_strictness_is_tracked():
    # x > 0 and -x >= 0 is infeasible, x >= 0 and -x >= 0 is not
    strict = [fm.Inequality.make([1], 0, strict=True), fm.Inequality.make([-1], 0)]
    loose = [fm.Inequality.make([1], 0), fm.Inequality.make([-1], 0)]
    assert not fm.solve(strict, 1).feasible
    res = fm.solve(loose, 1)
    assert res.feasible and res.witness == (0,)


def test_upper_preference():
    system = [fm.Inequality.make([1], 0, strict=True), fm.Inequality.make([-1], 1)]
    assert fm.solve(system, 1).witness == (Fraction(1, 2),)
    assert fm.solve(system, 1, prefer="upper").witness == (1,)


@pytest.mark.parametrize("n", [5, 6])
def test_exclusion_system_matches_lp(n):
    assert not lp_feasible(exclusion_system(n, True), n)
    assert lp_feasible(exclusion_system(n, False), n)


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_exclusion_certificate(n):
    cert = exclusion_certificate(n)
    assert cert.infeasible and cert.relaxed_feasible
    assert cert.relaxed_witness == (1,) * n
    assert set(cert.triple) <= set(cert.destabilized_set) & set(cert.stable_set)
    assert cert.to_json()["verdict"] == "INFEASIBLE"
