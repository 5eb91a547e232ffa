"""Building sets of concurrency loci and the strata they cut out.

The base is ``P^(n-3)`` with coordinates ``s``; ``H(I)`` is the locus where
the lines of ``I`` concur. Strata are labelled by families of index sets in
normal form (pairwise sharing at most one index), and a family is kept only
if an exact rational point realizes exactly those multiple points.
"""
from __future__ import annotations

import random
from itertools import combinations
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .enumeration import label_families, realize
from .errors import BudgetExceeded, DimensionUnderflow, EmptyIntersection, FirstWeightNotOne, PreconditionError
from .projgeom import IndexSet, generic_base_params, root_directions
from .weights import WeightVector, as_weights


@dataclass(frozen=True, order=True)
class BuildingSetElement:
    I: IndexSet

    @property
    def codim(self) -> int:
        return len(self.I) - 2

    def dim(self, n: int) -> int:
        return n - len(self.I) - 1


@dataclass(frozen=True, order=True)
class StratumLabel:
    factors: tuple[IndexSet, ...]

    def __init__(self, factors: Iterable[Iterable[int]] = ()):
        object.__setattr__(self, "factors", tuple(sorted(tuple(sorted(J)) for J in factors)))

    def __len__(self) -> int:
        return len(self.factors)

    @property
    def codim(self) -> int:
        return sum(len(J) - 2 for J in self.factors)

    def dim(self, n: int) -> int:
        return n - 3 - self.codim

    def is_normal(self) -> bool:
        f = self.factors
        return all(len(set(a) & set(b)) <= 1 for k, a in enumerate(f) for b in f[k + 1:])


@dataclass(frozen=True, order=True)
class HassettElement:
    I: IndexSet

    @property
    def codim(self) -> int:
        return len(self.I) - 1


def building_set(n: int, w) -> list[BuildingSetElement]:
    """Index sets ``I`` with ``3 <= |I| <= n-1`` and weight above 2, by codimension."""
    w = as_weights(w)
    if w.n != n:
        raise PreconditionError("weight vector length differs from n")

    out = [BuildingSetElement(I) for k in range(3, n) for I in combinations(range(1, n + 1), k) if w.total(I) > 2]
    return sorted(out, key=lambda e: (e.codim, e.I))


def g_factors(family: Iterable[Iterable[int]], n: Optional[int] = None) -> StratumLabel:
    """Merge sets sharing two or more indices until none do."""
    sets = [frozenset(J) for J in family]
    if not sets:
        raise PreconditionError("g_factors needs a nonempty family")
    changed = True
    while changed:
        changed = False
        for a in range(len(sets)):
            for b in range(a + 1, len(sets)):
                if len(sets[a] & sets[b]) >= 2:
                    merged = sets[a] | sets[b]
                    sets = [s for k, s in enumerate(sets) if k not in (a, b)] + [merged]
                    changed = True
                    break
            if changed:
                break
    # a set swallowed by a larger one that shares two indices with it is gone already;
    # drop exact duplicates
    sets = sorted(set(sets), key=sorted)
    if n is not None and any(len(J) >= n for J in sets):
        raise EmptyIntersection("a merged set contains every line; its locus is empty")
    return StratumLabel(sets)


def transversal_codims(label: StratumLabel, n: int) -> list[int]:
    out = [0]
    for J in label.factors:
        out.append(out[-1] + len(J) - 2)
    if out[-1] > n - 3:
        raise DimensionUnderflow(f"codimension {out[-1]} exceeds the base dimension {n - 3}")
    return out


def realizable(label: StratumLabel, n: int, a: Optional[Sequence] = None, seed: int = 0) -> bool:
    """Does an exact point of the base have exactly these multiple points?"""
    if not label.is_normal() or label.codim > n - 3:
        return False
    if any(not 3 <= len(J) <= n - 1 for J in label.factors):
        return False
    a = tuple(a) if a is not None else generic_base_params(n, seed)
    rng = random.Random(f"stratum/{seed}/{n}/{label.factors}")
    return realize(root_directions(n, a), tuple(range(1, n + 1)), label.factors, rng) is not None


def strata(n: int, w, depth: Optional[int] = None, budget: int = 10 ** 6, seed: int = 0) -> list[StratumLabel]:
    """Realizable labels over the building set, the empty label first."""
    w = as_weights(w)
    a = generic_base_params(n, seed) if n > 3 else ()
    out = []
    for k, fam in enumerate(label_families(tuple(range(1, n + 1)), w)):
        if k >= budget:
            raise BudgetExceeded(f"node budget of {budget} exhausted")
        if depth is not None and len(fam) > depth:
            continue
        label = StratumLabel(fam)
        if realizable(label, n, a, seed):
            out.append(label)
    return sorted(out, key=lambda L: (len(L), L.factors))


def zero_dimensional(labels: Iterable[StratumLabel], n: int) -> list[StratumLabel]:
    return [L for L in labels if L.dim(n) == 0]


def contains(big: StratumLabel, small: StratumLabel) -> bool:
    """Closure of ``big`` contains ``small``: each factor of ``big`` is forced by ``small``."""
    return all(any(set(J) <= set(K) for K in small.factors) for J in big.factors)


def stratum_poset(labels: Sequence[StratumLabel]) -> list[tuple[StratumLabel, StratumLabel]]:
    """Cover relations ``(big, small)`` of the containment order."""
    rel = [(b, s) for b in labels for s in labels if b != s and contains(b, s)]
    strict = set(rel)
    return [(b, s) for b, s in rel
            if not any((b, m) in strict and (m, s) in strict for m in labels)]


def blow_up_sequence(n: int, w) -> list[BuildingSetElement]:
    """Building set in order of increasing dimension, ties broken lexicographically."""
    return sorted(building_set(n, w), key=lambda e: (-len(e.I), e.I))


def hassett_weights(n: int) -> WeightVector:
    """Weights for which the weighted stable curves space is ``P^(n-3)``, with index 1 heavy."""
    return WeightVector([Fraction(1), Fraction(3, 2 * (n - 1))] + [Fraction(1, n - 1)] * (n - 2))


def hassett_building_set(n: int, w) -> list[HassettElement]:
    """Diagonals ``delta_I``, ``I`` in ``{2..n}``, made unstable by ``w``."""
    w = as_weights(w)

    out = [HassettElement(I) for k in range(2, n - 1) for I in combinations(range(2, n + 1), k) if w.total(I) > 1]
    return sorted(out, key=lambda e: (e.codim, e.I))


def hassett_split(n: int, w) -> tuple[list[HassettElement], list[BuildingSetElement]]:
    """Split the building set by whether index 1 is present; those that are map to ``delta_(I-1)``."""
    w = as_weights(w)
    if w[0] != 1:
        raise FirstWeightNotOne("the first weight must equal 1")
    hassett, rest = [], []
    for e in building_set(n, w):
        if 1 in e.I:
            rest_I = tuple(i for i in e.I if i != 1)
            if not (w.total(e.I) > 2) == (w.total(rest_I) > 1):
                raise PreconditionError("weight equivalence failed")
            h = HassettElement(rest_I)
            if h.codim != e.codim:
                raise PreconditionError("codimensions disagree")
            hassett.append(h)
        else:
            rest.append(e)
    return sorted(hassett, key=lambda e: (e.codim, e.I)), rest
