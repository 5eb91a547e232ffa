"""Fourier-Motzkin elimination over the rationals with strict inequalities.

A constraint ``c . x + b > 0`` (strict) or ``c . x + b >= 0`` is eliminated
variable by variable. Strictness propagates through combinations (a sum
containing a strict term is strict). Chernikov's rule drops combinations
built from more than ``k + 1`` original rows after ``k`` eliminations,
which keeps the projection exact while taming the blow-up.

When the system is feasible a rational witness is reconstructed by
back-substitution through the stored projections.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .rational import RationalLike, rationals, to_rational


@dataclass(frozen=True)
class Inequality:
    coeffs: tuple[Fraction, ...]
    const: Fraction
    strict: bool = False
    origin: frozenset = field(default=frozenset(), compare=False)

    @classmethod
    def make(cls, coeffs: Sequence[RationalLike], const: RationalLike, strict: bool = False, tag=None):
        origin = frozenset() if tag is None else frozenset([tag])
        return cls(rationals(coeffs), to_rational(const), strict, origin)

    def value(self, x: Sequence[Fraction]) -> Fraction:
        return sum((c * v for c, v in zip(self.coeffs, x)), Fraction(0)) + self.const

    def holds(self, x: Sequence[Fraction]) -> bool:
        v = self.value(x)
        return v > 0 if self.strict else v >= 0

    def __str__(self):
        terms = " + ".join(f"{c}*x{j}" for j, c in enumerate(self.coeffs) if c)
        return f"{terms or '0'} + {self.const} {'>' if self.strict else '>='} 0"


def _normalize(q: Inequality, var: Optional[int] = None) -> Inequality:
    """Scale by a positive rational so the first nonzero coefficient is +-1."""
    lead = next((c for c in q.coeffs if c), None)
    if lead is None:
        return q
    f = 1 / abs(lead)
    return Inequality(tuple(c * f for c in q.coeffs), q.const * f, q.strict, q.origin)


def _dedupe(rows: list[Inequality]) -> list[Inequality]:
    best: dict[tuple, Inequality] = {}
    for q in rows:
        q = _normalize(q)
        key = q.coeffs
        old = best.get(key)
        # keep the tightest: smaller constant, strict wins on ties
        if old is None or q.const < old.const or (q.const == old.const and q.strict and not old.strict):
            best[key] = q
    return list(best.values())


def _trivially_false(q: Inequality) -> bool:
    if any(q.coeffs):
        return False
    return q.const < 0 or (q.const == 0 and q.strict)


def _trivially_true(q: Inequality) -> bool:
    return not any(q.coeffs) and not _trivially_false(q)


@dataclass
class FMResult:
    feasible: bool
    witness: Optional[tuple[Fraction, ...]]
    contradiction: Optional[Inequality] = None
    stages: list = field(default_factory=list, repr=False)


def eliminate(system: Sequence[Inequality], var: int, step: int) -> list[Inequality]:
    pos, neg, keep = [], [], []
    for q in system:
        c = q.coeffs[var]
        (pos if c > 0 else neg if c < 0 else keep).append(q)
    out = list(keep)
    for p in pos:
        for m in neg:
            origin = p.origin | m.origin
            if len(origin) > step + 1:
                continue  # Chernikov: redundant
            fp, fm = -m.coeffs[var], p.coeffs[var]
            coeffs = tuple(fp * a + fm * b for a, b in zip(p.coeffs, m.coeffs))
            coeffs = coeffs[:var] + (Fraction(0),) + coeffs[var + 1:]
            out.append(Inequality(coeffs, fp * p.const + fm * m.const, p.strict or m.strict, origin))
    return _dedupe(out)


def solve(system: Sequence[Inequality], nvars: Optional[int] = None, prefer: str = "middle") -> FMResult:
    """Decide feasibility of ``system`` exactly; return a witness when feasible.

    ``prefer="upper"`` makes the witness take each variable at its upper
    bound whenever that bound is attained.
    """
    if prefer not in ("middle", "upper"):
        raise ValueError(f"unknown preference {prefer!r}")
    rows = []
    for k, q in enumerate(system):
        rows.append(Inequality(q.coeffs, q.const, q.strict, q.origin or frozenset([k])))
    if nvars is None:
        nvars = len(rows[0].coeffs) if rows else 0
    stages = [_dedupe(rows)]
    for var in range(nvars):
        current = stages[-1]
        bad = next((q for q in current if _trivially_false(q)), None)
        if bad is not None:
            return FMResult(False, None, bad, stages)
        stages.append(eliminate([q for q in current if not _trivially_true(q)], var, var + 1))
    bad = next((q for q in stages[-1] if _trivially_false(q)), None)
    if bad is not None:
        return FMResult(False, None, bad, stages)
    return FMResult(True, _back_substitute(stages, nvars, prefer), None, stages)


def _back_substitute(stages: list[list[Inequality]], nvars: int, prefer: str = "middle") -> tuple[Fraction, ...]:
    x = [Fraction(0)] * nvars
    for var in reversed(range(nvars)):
        lo: Optional[Fraction] = None
        lo_strict = False
        hi: Optional[Fraction] = None
        hi_strict = False
        for q in stages[var]:
            c = q.coeffs[var]
            if c == 0:
                continue
            rest = sum((q.coeffs[j] * x[j] for j in range(var + 1, nvars)), Fraction(0)) + q.const
            bound = -rest / c
            if c > 0:  # x >= bound
                if lo is None or bound > lo or (bound == lo and q.strict):
                    lo, lo_strict = bound, q.strict
            else:  # x <= bound
                if hi is None or bound < hi or (bound == hi and q.strict):
                    hi, hi_strict = bound, q.strict
        if lo is None and hi is None:
            val = Fraction(0)
        elif lo is None:
            val = hi - 1 if hi_strict else hi
        elif hi is None:
            val = lo + 1 if lo_strict else lo
        elif lo == hi:
            val = lo
        elif prefer == "upper" and not hi_strict:
            val = hi
        else:
            val = (lo + hi) / 2
        x[var] = val
    return tuple(x)


def feasible(system: Sequence[Inequality]) -> bool:
    return solve(system).feasible
