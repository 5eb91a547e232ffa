"""Enumeration of combinatorial types of shas.

A type is grown component by component. For a component with lines ``L``
(placed on a chart by their directions on the special line) a *label* is a
family of destabilized subsets of ``L`` that are to be its multiple points.
A label is kept when a seeded point of the solved concurrency locus has
exactly those multiple points; every set of the label then gets a child
component, whose own labels are enumerated in turn.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from . import linalg
from .projgeom import (
    Direction,
    IndexSet,
    LineArrangement,
    ProjLine,
    arrangement_from_s,
    chart_lines,
    concurrency_equations,
    concurrency_sets,
    generic_base_params,
    root_directions,
)
from .rational import random_nonzero_rational
from .errors import BudgetExceeded, NotDestabilized, PreconditionError
from .sha import Sha, child_directions, pencil_directions, stable_replacement
from .weights import WeightVector, as_weights

DEFAULT_BUDGET = 2_000_000


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self, k: int = 1) -> None:
        self.used += k
        if self.used > self.limit:
            raise BudgetExceeded(f"node budget of {self.limit} exhausted")


def candidate_sets(lines: IndexSet, w: Optional[WeightVector]) -> list[IndexSet]:
    """Subsets that may become multiple points of a component carrying ``lines``."""
    out = []
    for size in range(3, len(lines)):
        for J in itertools.combinations(lines, size):
            if w is None or w.total(J) > 2:
                out.append(J)
    return out


def label_families(lines: IndexSet, w: Optional[WeightVector], exact_codim: Optional[int] = None) -> list[tuple[IndexSet, ...]]:
    """Families with pairwise intersections of at most one line and room left in the moduli."""
    cands = candidate_sets(lines, w)
    room = len(lines) - 3
    found: list[tuple[IndexSet, ...]] = []

    def grow(start: int, fam: list[IndexSet], used: int) -> None:
        if exact_codim is None or used == exact_codim:
            found.append(tuple(fam))
        for k in range(start, len(cands)):
            J = cands[k]
            c = len(J) - 2
            if used + c > room or any(len(set(J) & set(K)) > 1 for K in fam):
                continue
            fam.append(J)
            grow(k + 1, fam, used + c)
            fam.pop()

    grow(0, [], 0)
    return found


def realize(directions: Sequence[Direction], lines: IndexSet, family: Sequence[IndexSet],
            rng: random.Random, tries: int = 6) -> Optional[tuple]:
    """Chart parameters whose lines have exactly ``family`` as multiple points."""
    pos = {i: k for k, i in enumerate(lines)}
    eqs = []
    for J in family:
        eqs.extend(concurrency_equations(directions, [pos[i] for i in J]))
    basis = linalg.nullspace(eqs, len(lines) - 2) if eqs else [
        [1 if r == c else 0 for c in range(len(lines) - 2)] for r in range(len(lines) - 2)]
    if not basis:
        return None
    want = sorted(tuple(J) for J in family)
    for _ in range(tries):
        coef = [random_nonzero_rational(rng) for _ in basis]
        params = tuple(sum(c * v[k] for c, v in zip(coef, basis)) for k in range(len(lines) - 2))
        lead = next((x for x in params if x != 0), None)
        if lead is None:
            continue
        params = tuple(x / lead for x in params)
        model = chart_lines(directions, params)
        got = sorted(concurrency_sets(dict(zip(lines, model))).values())
        if got == want:
            return params
    return None


@dataclass(frozen=True)
class ComponentOption:
    """One realized component together with the options for each of its children."""

    lines: IndexSet
    params: tuple
    model: tuple[ProjLine, ...]
    family: tuple[IndexSet, ...]
    children: tuple[tuple[IndexSet, tuple["ComponentOption", ...]], ...]

    def count(self) -> int:
        total = 1
        for _, opts in self.children:
            total *= sum(o.count() for o in opts)
        return total

    def walk(self) -> Iterator["ComponentOption"]:
        yield self
        for _, opts in self.children:
            for o in opts:
                yield from o.walk()


def _options(directions: Sequence[Direction], lines: IndexSet, depth: int, max_depth: int,
             w: Optional[WeightVector], maximal_only: bool, seed: int, budget: _Budget) -> list[ComponentOption]:
    exact = len(lines) - 3 if maximal_only else None
    fams = label_families(lines, w, exact) if depth < max_depth else ([()] if exact in (None, 0) else [])
    out = []
    for fam in fams:
        budget.spend()
        rng = random.Random(f"realize/{seed}/{lines}/{fam}/{directions}")
        params = realize(directions, lines, fam, rng)
        if params is None:
            continue
        model = tuple(chart_lines(directions, params))
        by_label = dict(zip(lines, model))
        points = {J: p for p, J in concurrency_sets(by_label).items()}
        kids = []
        for J in fam:
            sub = _options(pencil_directions([by_label[i] for i in J], points[J]), J, depth + 1,
                           max_depth, w, maximal_only, seed, budget)
            if not sub:
                break
            kids.append((J, tuple(sub)))
        else:
            out.append(ComponentOption(lines, params, model, fam, tuple(kids)))
    return out


def option_tree(n: int, w=None, max_depth: int = 3, maximal_only: bool = False, seed: int = 0,
                budget: int = DEFAULT_BUDGET, a: Optional[Sequence] = None) -> tuple[tuple, list[ComponentOption]]:
    """Base parameters and the root options for ``n`` lines."""
    if n < 3 or n > 8:
        raise PreconditionError("enumeration is limited to 3 <= n <= 8")
    w = as_weights(w) if w is not None else None
    if w is not None and w.n != n:
        raise PreconditionError("weight vector length differs from n")
    if n == 3:
        a = ()
    a = tuple(a) if a is not None else generic_base_params(n, seed)
    roots = _options(root_directions(n, a), tuple(range(1, n + 1)), 0, max_depth, w,
                     maximal_only, seed, _Budget(budget))
    return a, roots


def _attach(x: Sha, vertex: int, opt: ComponentOption) -> Iterator[Sha]:
    def go(x: Sha, pending: list[tuple[int, IndexSet, tuple[ComponentOption, ...]]]) -> Iterator[Sha]:
        if not pending:
            yield x
            return
        (v, J, opts), rest = pending[0], pending[1:]
        for o in opts:
            y = stable_replacement(x, v, J, mu=o.params)
            child = len(y.components) - 1
            yield from go(y, [(child, K, oo) for K, oo in o.children] + rest)

    yield from go(x, [(vertex, J, opts) for J, opts in opt.children])


def _root_sha(n: int, a, opt: ComponentOption) -> Sha:
    if n == 3:
        return Sha.from_arrangement(LineArrangement(3, opt.model))
    return Sha.from_arrangement(arrangement_from_s(n, a, opt.params))


def enumerate_combinatorial_types(n: int, w=None, max_depth: int = 3, budget: int = DEFAULT_BUDGET,
                                  maximal_only: bool = False, seed: int = 0) -> list[Sha]:
    """One realized sha per skeleton, sorted by skeleton.

    With ``w`` omitted, every multiple point counts as destabilized.
    """
    a, roots = option_tree(n, w, max_depth, maximal_only, seed, budget)
    spent = _Budget(budget)
    found = {}
    for opt in roots:
        for x in _attach(_root_sha(n, a, opt), 0, opt):
            spent.spend()
            found.setdefault(x.skeleton(), x)
    return [found[k] for k in sorted(found)]


def component_models(n: int, w=None, max_depth: int = 3, maximal_only: bool = False, seed: int = 0,
                     budget: int = DEFAULT_BUDGET) -> list[tuple[IndexSet, tuple[ProjLine, ...], tuple[IndexSet, ...]]]:
    """Distinct component plane models met while enumerating, without expanding the product."""
    _, roots = option_tree(n, w, max_depth, maximal_only, seed, budget)
    seen = {}
    for r in roots:
        for o in r.walk():
            seen.setdefault((o.lines, o.model), o.family)
    return [(lines, model, seen[(lines, model)]) for lines, model in sorted(seen, key=lambda t: (t[0], [l.coeffs for l in t[1]]))]


def replacement_outcomes(x: Sha, vertex: int, I: Sequence[int], w=None, max_depth: int = 3,
                         seed: int = 0, budget: int = DEFAULT_BUDGET) -> list[Sha]:
    """Every combinatorially distinct stable replacement of ``p(I)`` at ``vertex``."""
    w = as_weights(w) if w is not None else None
    I = tuple(sorted(I))
    if I not in x.free_multiple_sets(vertex):
        raise NotDestabilized(f"{list(I)} is not an unresolved multiple point of component {vertex}")
    opts = _options(child_directions(x, vertex, I), I, 0, max_depth, w, False, seed, _Budget(budget))
    found = {}
    for o in opts:
        y = stable_replacement(x, vertex, I, mu=o.params)
        for z in _attach(y, len(y.components) - 1, o):
            found.setdefault(z.skeleton(), z)
    return [found[k] for k in sorted(found)]


def shape(x: Sha, v: int = 0) -> tuple:
    """Skeleton with labels forgotten: line counts and child shapes."""
    return (len(x.components[v].lines), tuple(sorted(shape(x, c) for c in x.children(v))))
