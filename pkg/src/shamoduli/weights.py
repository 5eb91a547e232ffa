"""Weight vectors, walls and chambers of the admissible weight domain.

A weight vector ``w`` gives the lines ``l_1..l_n`` their coefficients; the
special line always has weight 1. Two families of walls cut the domain:

* multiple-point walls ``W(I)``: ``sum_{i in I} w_i = 2`` (``|I| >= 3``),
* coincidence walls ``Wt(I)``: ``sum_{i in I} w_i = 1`` (``|I| >= 2``),

for ``I`` a subset of ``{1..n}`` of size at most ``n - 1``.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from . import fourier_motzkin as fm
from .errors import BadN, EndpointOnWall, LengthMismatch, NoChainFound, PreconditionError
from .projgeom import IndexSet, index_set
from .rational import RationalLike, rationals

MULTIPLE_POINT = "W"
COINCIDENCE = "Wtilde"


@dataclass(frozen=True)
class WeightVector:
    w: tuple[Fraction, ...]

    def __init__(self, w: Iterable[RationalLike]):
        w = rationals(w)
        if not w:
            raise PreconditionError("empty weight vector")
        if any(not (0 < x <= 1) for x in w):
            raise PreconditionError("weights must satisfy 0 < w_i <= 1")
        if sum(w) <= 2:
            raise PreconditionError("weights must sum to more than 2")
        object.__setattr__(self, "w", w)

    @property
    def n(self) -> int:
        return len(self.w)

    def __len__(self):
        return len(self.w)

    def __getitem__(self, i):
        return self.w[i]

    def __iter__(self):
        return iter(self.w)

    def total(self, I: Iterable[int]) -> Fraction:
        """Sum of the weights of the 1-based indices in ``I``."""
        return sum((self.w[i - 1] for i in I), Fraction(0))

    @classmethod
    def ones(cls, n: int) -> "WeightVector":
        return cls([1] * n)


def as_weights(w) -> WeightVector:
    return w if isinstance(w, WeightVector) else WeightVector(w)


@dataclass(frozen=True)
class Wall:
    kind: str
    indices: IndexSet

    def value(self, w: WeightVector) -> Fraction:
        target = 2 if self.kind == MULTIPLE_POINT else 1
        return w.total(self.indices) - target

    def to_json(self) -> dict:
        return {"kind": self.kind, "I": list(self.indices)}


def all_walls(n: int) -> list[Wall]:
    out = []
    for size in range(2, n):
        for I in itertools.combinations(range(1, n + 1), size):
            if size >= 3:
                out.append(Wall(MULTIPLE_POINT, I))
            out.append(Wall(COINCIDENCE, I))
    return out


def walls_through(w: WeightVector) -> list[Wall]:
    return [wall for wall in all_walls(w.n) if wall.value(w) == 0]


def default_base_weight(n: int) -> WeightVector:
    """Smallest-chamber weight: every proper subset sums to less than 2.

    Uses ``2/(n-1) - eps`` with ``eps`` small and chosen off every wall.
    """
    if n < 3:
        raise BadN("n must be at least 3")
    if n == 3:
        return WeightVector([Fraction(9, 10)] * 3)
    k = 1
    while True:
        eps = Fraction(1, n * n * (n - 1) + k)
        w = WeightVector([Fraction(2, n - 1) - eps] * n)
        if not walls_through(w):
            return w
        k += 1


def is_base_weight(w0: WeightVector) -> bool:
    n = w0.n
    return all(w0.total(I) <= 2 for size in range(1, n) for I in itertools.combinations(range(1, n + 1), size))


def is_admissible(w, w0) -> bool:
    w, w0 = as_weights(w), as_weights(w0)
    if w.n != w0.n:
        raise LengthMismatch(f"lengths differ: {w.n} vs {w0.n}")
    return all(0 < x <= 1 for x in w) and sum(w.w) >= 2 and all(x >= y for x, y in zip(w, w0))


def destabilizes(w, I: Iterable[int]) -> bool:
    w = as_weights(w)
    I = index_set(I, w.n)
    if len(I) < 2:
        raise PreconditionError("a multiple point involves at least two lines")
    return w.total(I) > 2


def walls_between(u, v) -> list[Wall]:
    """Walls whose defining function changes sign strictly from ``u`` to ``v``."""
    u, v = as_weights(u), as_weights(v)
    if u.n != v.n:
        raise LengthMismatch(f"lengths differ: {u.n} vs {v.n}")
    out = []
    for wall in all_walls(u.n):
        fu, fv = wall.value(u), wall.value(v)
        if fu == 0 or fv == 0:
            raise EndpointOnWall(f"endpoint lies on wall {wall.kind}{list(wall.indices)}")
        if (fu > 0) != (fv > 0):
            out.append(wall)
    return out


def adjacent(u, v) -> Optional[Wall]:
    mp = [wall for wall in walls_between(u, v) if wall.kind == MULTIPLE_POINT]
    return mp[0] if len(mp) == 1 else None


def _crossing_params(start: WeightVector, end: WeightVector) -> list[tuple[Fraction, Wall]]:
    out = []
    for wall in all_walls(start.n):
        f0, f1 = wall.value(start), wall.value(end)
        if (f0 > 0) != (f1 > 0):
            out.append((f0 / (f0 - f1), wall))
    return sorted(out, key=lambda p: p[0])


def _lerp(u: WeightVector, v: WeightVector, lam: Fraction) -> WeightVector:
    return WeightVector([a + lam * (b - a) for a, b in zip(u, v)])


def weight_chain(w0, w, seed: int = 0, attempts: int = 64) -> list[WeightVector]:
    """Monotone chain of pairwise adjacent weights from the chamber of ``w0`` to ``w``.

    The straight segment is used when it crosses the multiple-point walls at
    distinct parameters; otherwise the start is jittered inside its chamber.
    """
    w0, w = as_weights(w0), as_weights(w)
    if not is_admissible(w, w0):
        raise PreconditionError("target weight is not admissible for this base weight")
    if not walls_between(w0, w):
        return [w]
    rng = random.Random(f"chain/{seed}")
    start = w0
    for attempt in range(attempts + 1):
        if attempt:
            scale = Fraction(1, 10 ** (2 + attempt // 8))
            start = _jitter(w0, w, rng, scale)
            if start is None:
                continue
        crossings = _crossing_params(start, w)
        mp = [lam for lam, wall in crossings if wall.kind == MULTIPLE_POINT]
        if len(set(mp)) != len(mp):
            continue
        critical = sorted(set(lam for lam, _ in crossings))
        chain = [start]
        for lam_a, lam_b in zip(mp, mp[1:]):
            # first gap between consecutive critical parameters after lam_a
            nxt = critical[critical.index(lam_a) + 1]
            chain.append(_lerp(start, w, (lam_a + nxt) / 2))
            if nxt > lam_b:
                raise NoChainFound("inconsistent crossing order")
        chain.append(w)
        for x, y in zip(chain, chain[1:]):
            if adjacent(x, y) is None:
                break
        else:
            return chain
    raise NoChainFound("could not find a wall-generic segment")


def _jitter(w0: WeightVector, w: WeightVector, rng: random.Random, scale: Fraction) -> Optional[WeightVector]:
    vals = []
    for a, b in zip(w0, w):
        room = b - a
        if room <= 0:
            vals.append(a)
            continue
        step = min(room / 2, scale) * Fraction(rng.randint(1, 997), 997)
        vals.append(a + step)
    try:
        cand = WeightVector(vals)
        if walls_between(w0, cand):
            return None
    except EndpointOnWall:
        return None
    return cand


# --------------------------------------------------------------------------
# the exclusion system


@dataclass
class InfeasibilityWitness:
    n: int
    triple: IndexSet
    destabilized_set: IndexSet
    stable_set: IndexSet
    infeasible: bool
    contradiction: Optional[str]
    relaxed_feasible: bool
    relaxed_witness: Optional[tuple[Fraction, ...]]

    def to_json(self) -> dict:
        from .rational import fmt_all

        return {
            "n": self.n,
            "verdict": "INFEASIBLE" if self.infeasible else "FEASIBLE",
            "triple": list(self.triple),
            "destabilized_set": list(self.destabilized_set),
            "stable_set": list(self.stable_set),
            "relaxed_feasible": self.relaxed_feasible,
            "relaxed_witness": None if self.relaxed_witness is None else fmt_all(self.relaxed_witness),
        }


def exclusion_system(n: int, include_stable_bound: bool = True) -> list[fm.Inequality]:
    """Inequalities asking for weights that destabilize ``n - 1`` of the
    ``(n-1)``-subsets together with all their triples, but keep
    ``{2..n}`` stable."""
    stable = tuple(range(2, n + 1))
    others = [tuple(i for i in range(1, n + 1) if i != j) for j in range(2, n + 1)]
    triples = sorted({t for I in others for t in itertools.combinations(I, 3)})
    rows = []
    for t in triples:
        coeffs = [1 if i + 1 in t else 0 for i in range(n)]
        rows.append(fm.Inequality.make(coeffs, -2, strict=True, tag=("triple", t)))
    if include_stable_bound:
        rows.append(fm.Inequality.make([0 if i == 0 else -1 for i in range(n)], 2, tag=("stable", stable)))
    for i in range(n):
        e = [0] * n
        e[i] = 1
        rows.append(fm.Inequality.make(e, 0, strict=True, tag=("positive", i + 1)))
        e = [0] * n
        e[i] = -1
        rows.append(fm.Inequality.make(e, 1, tag=("at_most_one", i + 1)))
    return rows


def exclusion_certificate(n: int) -> InfeasibilityWitness:
    if n < 5:
        raise BadN("the exclusion argument needs n >= 5")
    stable = tuple(range(2, n + 1))
    destab = tuple(i for i in range(1, n + 1) if i != 2)
    common = [i for i in destab if i in stable]
    triple = tuple(common[:3])
    full = fm.solve(exclusion_system(n, True), n)
    relaxed = fm.solve(exclusion_system(n, False), n, prefer="upper")
    return InfeasibilityWitness(
        n=n,
        triple=triple,
        destabilized_set=destab,
        stable_set=stable,
        infeasible=not full.feasible,
        contradiction=None if full.contradiction is None else str(full.contradiction),
        relaxed_feasible=relaxed.feasible,
        relaxed_witness=relaxed.witness,
    )
