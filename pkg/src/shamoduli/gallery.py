"""Small named shas used as fixtures and in examples."""
from __future__ import annotations

import random
from typing import Sequence

from .enumeration import realize
from .errors import PreconditionError
from .projgeom import IndexSet, arrangement_from_s, generic_base_params, root_directions
from .sha import Sha, child_directions, stable_replacement


def with_multiple_points(n: int, family: Sequence[IndexSet], seed: int = 0) -> Sha:
    """A single-plane sha whose multiple points are exactly ``family``."""
    a = generic_base_params(n, seed)
    s = realize(root_directions(n, a), tuple(range(1, n + 1)), [tuple(J) for J in family],
                random.Random(f"gallery/{n}/{seed}/{family}"))
    if s is None:
        raise PreconditionError(f"no arrangement realizes {family}")
    return Sha.from_arrangement(arrangement_from_s(n, a, s))


def degenerate_replacement(x: Sha, vertex: int, I: IndexSet, family: Sequence[IndexSet], seed: int = 0) -> Sha:
    """Replace ``p(I)`` by a plane whose own multiple points are exactly ``family``."""
    mu = realize(child_directions(x, vertex, I), tuple(I), [tuple(J) for J in family],
                 random.Random(f"gallery/{vertex}/{I}/{family}/{seed}"))
    if mu is None:
        raise PreconditionError(f"no replacement realizes {family}")
    return stable_replacement(x, vertex, I, mu=mu)


def two_triples_sha() -> Sha:
    """Five lines; triple points {1,2,3} and {1,4,5}, each blown up."""
    x = with_multiple_points(5, [(1, 2, 3), (1, 4, 5)])
    x = stable_replacement(x, 0, (1, 2, 3), mu=[1])
    return stable_replacement(x, 0, (1, 4, 5), mu=[1])


def quadruple_sha() -> Sha:
    """Five lines; the quadruple point {1,2,3,4} replaced by a generic plane."""
    x = with_multiple_points(5, [(1, 2, 3, 4)])
    return degenerate_replacement(x, 0, (1, 2, 3, 4), [])


def quadruple_chain_sha() -> Sha:
    """Five lines; the quadruple point {1,2,3,4} replaced by a plane with triple point {2,3,4}, then that one too."""
    x = with_multiple_points(5, [(1, 2, 3, 4)])
    x = degenerate_replacement(x, 0, (1, 2, 3, 4), [(2, 3, 4)])
    return stable_replacement(x, 1, (2, 3, 4), mu=[1])


def six_line_quadruple() -> Sha:
    """Six lines with a single quadruple point {1,2,3,4}."""
    return with_multiple_points(6, [(1, 2, 3, 4)])


def six_line_generic_replacement() -> Sha:
    return degenerate_replacement(six_line_quadruple(), 0, (1, 2, 3, 4), [])


def six_line_chain_replacement() -> Sha:
    x = degenerate_replacement(six_line_quadruple(), 0, (1, 2, 3, 4), [(2, 3, 4)])
    return stable_replacement(x, 1, (2, 3, 4), mu=[1])


FIXTURES = {
    "two_triples": two_triples_sha,
    "quadruple": quadruple_sha,
    "quadruple_chain": quadruple_chain_sha,
    "six_line_quadruple": six_line_quadruple,
    "six_line_generic_replacement": six_line_generic_replacement,
    "six_line_chain_replacement": six_line_chain_replacement,
}
