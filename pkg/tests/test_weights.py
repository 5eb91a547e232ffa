import itertools
import random
from fractions import Fraction

import pytest

from shamoduli.errors import BadN, EndpointOnWall, LengthMismatch, PreconditionError
from shamoduli.weights import (
    COINCIDENCE,
    MULTIPLE_POINT,
    Wall,
    WeightVector,
    adjacent,
    all_walls,
    default_base_weight,
    destabilizes,
    exclusion_certificate,
    is_admissible,
    is_base_weight,
    walls_between,
    weight_chain,
)


def test_weight_vector_validation():
    with pytest.raises(PreconditionError):
        WeightVector([1, 1, 0])
    with pytest.raises(PreconditionError):
        WeightVector([1, "1/2", "1/2"])
    with pytest.raises(PreconditionError):
        WeightVector([2, 1, 1])
    assert WeightVector.ones(4).total((1, 2, 3)) == 3


@pytest.mark.parametrize("n", range(3, 9))
def test_default_base_weight_is_a_base_weight(n):
    w0 = default_base_weight(n)
    assert is_base_weight(w0)
    # proper subsets weigh at most 2, the whole set more than 2
    for k in range(1, n):
        for I in itertools.combinations(range(1, n + 1), k):
            assert w0.total(I) <= 2
    assert w0.total(range(1, n + 1)) > 2
    # no wall passes through it
    assert all(wall.value(w0) != 0 for wall in all_walls(n))


def test_admissibility():
    w0 = default_base_weight(5)
    assert is_admissible(WeightVector.ones(5), w0)
    assert is_admissible(w0, w0)
    low = WeightVector([w0[0] - Fraction(1, 1000)] + list(w0.w[1:]))
    assert not is_admissible(low, w0)
    with pytest.raises(LengthMismatch):
        is_admissible(WeightVector.ones(6), w0)


def test_destabilizes():
    assert destabilizes(WeightVector.ones(5), (1, 2, 3))
    w0 = default_base_weight(6)
    assert not any(destabilizes(w0, I) for k in range(2, 6) for I in itertools.combinations(range(1, 7), k))
    w = WeightVector([1, 1, "2/3", "2/3", "2/3"])
    assert not destabilizes(w, (3, 4, 5))


def test_walls_between_crosses_the_triples():
    u = WeightVector([Fraction(11, 20)] * 5)
    v = WeightVector.ones(5)
    crossed = walls_between(u, v)
    assert sorted(crossed, key=lambda w: w.indices) == [Wall(MULTIPLE_POINT, I) for I in itertools.combinations(range(1, 6), 3)]
    assert walls_between(u, u) == []


def test_walls_between_reports_coincidence_walls():
    u = default_base_weight(5)
    crossed = walls_between(u, WeightVector.ones(5))
    kinds = {w.kind for w in crossed}
    assert kinds == {MULTIPLE_POINT, COINCIDENCE}
    assert sum(w.kind == MULTIPLE_POINT for w in crossed) == 15


def test_endpoint_on_wall():
    on = WeightVector([1, "1/2", "1/2", "1/2", "1/2"])  # {1,2,3} sums to exactly 2
    with pytest.raises(EndpointOnWall):
        walls_between(on, WeightVector.ones(5))


def test_adjacent():
    base = WeightVector(["7/10"] * 5)  # triples 21/10 already above 2, pairs 7/5 above 1
    u = WeightVector(["3/5", "3/5", "3/5", "11/20", "11/20"])  # {1,2,3} = 9/5
    v = WeightVector(["7/10", "7/10", "7/10", "11/20", "11/20"])  # {1,2,3} = 21/10
    assert adjacent(u, v) == Wall(MULTIPLE_POINT, (1, 2, 3))
    assert adjacent(v, v) is None
    assert adjacent(u, base) is None  # more than one triple wall in between


@pytest.mark.parametrize("n", [4, 5, 6])
def test_weight_chain_crosses_one_wall_at_a_time(n):
    w0 = default_base_weight(n)
    target = WeightVector.ones(n)
    chain = weight_chain(w0, target)
    assert chain[-1] == target
    assert not walls_between(w0, chain[0]) or all(w.kind == COINCIDENCE for w in walls_between(w0, chain[0]))
    mp_walls = [w for w in walls_between(w0, target) if w.kind == MULTIPLE_POINT]
    assert len(chain) == 1 + len(mp_walls)
    crossed = []
    for a, b in zip(chain, chain[1:]):
        assert all(x <= y for x, y in zip(a, b))
        wall = adjacent(a, b)
        assert wall is not None
        crossed.append(wall)
    assert sorted(crossed, key=lambda w: w.indices) == sorted(mp_walls, key=lambda w: w.indices)


def test_chain_inside_one_chamber():
    w0 = default_base_weight(5)
    assert weight_chain(w0, w0) == [w0]


@pytest.mark.parametrize("seed", range(20))
def test_monotonicity_and_chamber_equivalence(seed):
    rng = random.Random(seed)
    n = 5
    u = WeightVector([Fraction(rng.randint(45, 100), 100) for _ in range(n)])
    v = WeightVector([min(Fraction(1), x + Fraction(rng.randint(0, 30), 100)) for x in u])
    for k in range(3, n):
        for I in itertools.combinations(range(1, n + 1), k):
            if destabilizes(u, I):
                assert destabilizes(v, I)
    try:
        crossed = walls_between(u, v)
    except EndpointOnWall:
        return
    if not crossed:
        assert all(destabilizes(u, I) == destabilizes(v, I)
                   for k in range(3, n) for I in itertools.combinations(range(1, n + 1), k))


def test_exclusion_needs_five_lines():
    with pytest.raises(BadN):
        exclusion_certificate(4)
