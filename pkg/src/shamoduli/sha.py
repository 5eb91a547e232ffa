"""Stable hyperplane arrangements (shas) as rooted trees of plane components.

Each component stores its contraction image: a plane model with the special
line (the image of ``l_A`` for the root, the gluing line otherwise) at
``x0 = 0``. Marked lines that live elsewhere in the tree collapse onto that
line and are stored as ``(1, 0, 0)``. Multiple points of a component are
computed once, from its plane model, when the component is built.

A stable replacement at a multiple point ``p(I)`` attaches a new leaf whose
plane model is a chart: line ``i`` meets the gluing line at the tangent
direction of ``l_i`` at ``p(I)``, the last two lines of ``I`` pass through
``[1:0:0]`` and the other ``|I| - 2`` lines are moved by the moduli point
``mu``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from . import linalg
from .errors import InvalidSha, NotDestabilized, PreconditionError, UnstableReplacement
from .projgeom import (
    SPECIAL_LINE,
    Direction,
    IndexSet,
    LineArrangement,
    ProjLine,
    ProjPoint,
    chart_lines,
    check_directions,
    concurrency_sets,
    index_set,
    meet,
)
from .rational import RationalLike, random_nonzero_rational, rationals
from .weights import WeightVector, as_weights


ModuliPoint = tuple[Fraction, ...]


def moduli_point(mu: Iterable[RationalLike], size: int) -> ModuliPoint:
    """Homogeneous coordinates of a point of ``P^(size - 3)``, first nonzero entry 1."""
    mu = rationals(mu)
    if len(mu) != size - 2:
        raise PreconditionError(f"a replacement at {size} lines takes {size - 2} moduli coordinates, got {len(mu)}")
    lead = next((x for x in mu if x != 0), None)
    if lead is None:
        raise UnstableReplacement("the zero moduli point makes every line concur")
    return tuple(x / lead for x in mu)


@dataclass(frozen=True)
class ShaComponent:
    id: int
    n: int
    lines: IndexSet
    plane_model: tuple[ProjLine, ...]
    parent: Optional[int] = None
    attachments: tuple[tuple[int, ProjPoint], ...] = ()
    moduli: Optional[ModuliPoint] = None
    multiple_sets: tuple[IndexSet, ...] = field(default=(), compare=False)
    multiple_points: tuple[tuple[ProjPoint, IndexSet], ...] = field(default=(), compare=False)

    @classmethod
    def build(cls, id: int, n: int, lines: Iterable[int], model: Mapping[int, ProjLine],
              parent: Optional[int] = None, moduli: Optional[ModuliPoint] = None) -> "ShaComponent":
        lines = index_set(lines, n)
        plane = tuple(model[i] if i in lines else SPECIAL_LINE for i in range(1, n + 1))
        for i in lines:
            if plane[i - 1] == SPECIAL_LINE:
                raise InvalidSha(f"line {i} overlaps the special line in component {id}")
        found = concurrency_sets({i: plane[i - 1] for i in lines})
        pts = tuple(sorted(((p, I) for p, I in found.items() if not SPECIAL_LINE.contains(p)), key=lambda t: t[1]))
        return cls(id, n, lines, plane, parent, (), moduli, tuple(I for _, I in pts), pts)

    @property
    def collapsed(self) -> IndexSet:
        """Marked lines whose image coincides with the special line."""
        return tuple(i for i in range(1, self.n + 1) if i not in self.lines)

    def line(self, i: int) -> ProjLine:
        return self.plane_model[i - 1]

    def point_of(self, I: Sequence[int]) -> ProjPoint:
        for p, J in self.multiple_points:
            if J == tuple(I):
                return p
        raise NotDestabilized(f"lines {list(I)} are not a multiple point of component {self.id}")

    def dual_points(self) -> tuple[ProjPoint, ...]:
        return tuple(ProjPoint(l.coeffs) for l in self.plane_model)

    def moduli_dimension(self) -> int:
        return len(self.lines) - 3 - sum(len(J) - 2 for J in self.multiple_sets)


@dataclass(frozen=True)
class Sha:
    n: int
    components: tuple[ShaComponent, ...]

    # -- construction -----------------------------------------------------

    @classmethod
    def from_arrangement(cls, arr: LineArrangement) -> "Sha":
        if arr.special_line != SPECIAL_LINE:
            raise PreconditionError("the special line must be x0 = 0")
        model = {i: arr.line(i) for i in range(1, arr.n + 1)}
        root = ShaComponent.build(0, arr.n, range(1, arr.n + 1), model, None, arr.s)
        return cls(arr.n, (root,))

    # -- tree structure ---------------------------------------------------

    @property
    def root(self) -> ShaComponent:
        return self.components[0]

    def component(self, v: int) -> ShaComponent:
        return self.components[v]

    def children(self, v: int) -> list[int]:
        return [c.id for c in self.components if c.parent == v]

    def attached_sets(self, v: int) -> dict[IndexSet, int]:
        return {self.components[c].lines: c for c in self.children(v)}

    def free_multiple_sets(self, v: int) -> list[IndexSet]:
        attached = self.attached_sets(v)
        return [J for J in self.components[v].multiple_sets if J not in attached]

    def markings(self, v: int) -> IndexSet:
        taken = set()
        for J in self.attached_sets(v):
            taken.update(J)
        return tuple(i for i in self.components[v].lines if i not in taken)

    def line_home(self) -> dict[int, frozenset]:
        """Line ``i`` -> the components where its broken line terminates."""
        home: dict[int, set] = {i: set() for i in range(1, self.n + 1)}
        for c in self.components:
            for i in self.markings(c.id):
                home[i].add(c.id)
        return {i: frozenset(vs) for i, vs in home.items()}

    def depth(self, v: int) -> int:
        d = 0
        while self.components[v].parent is not None:
            v = self.components[v].parent
            d += 1
        return d

    # -- canonical form ---------------------------------------------------

    def skeleton(self, v: int = 0) -> tuple:
        """Labelled-tree canonical form; children ordered by their forms."""
        kids = sorted(self.skeleton(c) for c in self.children(v))
        return (self.components[v].lines, tuple(self.free_multiple_sets(v)), tuple(kids))

    def validate(self) -> None:
        """Raise :class:`InvalidSha` unless the structural invariants hold."""
        if not self.components or self.components[0].parent is not None:
            raise InvalidSha("component 0 must be the root")
        for k, c in enumerate(self.components):
            if c.id != k:
                raise InvalidSha("component ids must be consecutive")
            if c.n != self.n:
                raise InvalidSha("component line count mismatch")
            if k and (c.parent is None or not 0 <= c.parent < k):
                raise InvalidSha("parents must precede children (rooted tree)")
            models = [c.line(i) for i in c.lines]
            if len(set(models)) != len(models):
                raise InvalidSha(f"overlapping lines in component {k}")
            if len({meet(l, SPECIAL_LINE) for l in models}) != len(models):
                raise InvalidSha(f"base points collide in component {k}")
            if len(c.lines) < 3:
                raise InvalidSha(f"component {k} carries fewer than three lines")
            if k:
                par = self.components[c.parent]
                if c.lines not in par.multiple_sets:
                    raise InvalidSha(f"component {k} is not attached at a multiple point of its parent")
                if dict(par.attachments).get(k) != par.point_of(c.lines):
                    raise InvalidSha(f"attachment point of component {k} is wrong")
        if self.root.lines != tuple(range(1, self.n + 1)):
            raise InvalidSha("the root must carry every marked line")
        for i in range(1, self.n + 1):
            holders = {c.id for c in self.components if i in c.lines}
            for v in holders:
                par = self.components[v].parent
                if par is not None and par not in holders:
                    raise InvalidSha(f"broken line {i} is disconnected")
        for v in range(len(self.components)):
            sets = list(self.attached_sets(v))
            if len(sets) != len(self.children(v)):
                raise InvalidSha(f"two children share a multiple point at component {v}")


# --------------------------------------------------------------------------
# stability


def destabilized_loci(x: Sha, w) -> list[tuple[int, IndexSet]]:
    w = as_weights(w)
    return [(c.id, J) for c in x.components for J in x.free_multiple_sets(c.id) if w.total(J) > 2]


def is_stable(x: Sha, w) -> bool:
    w = as_weights(w)
    if destabilized_loci(x, w):
        return False
    for c in x.components:
        ls = [c.line(i) for i in c.lines]
        if len(set(ls)) != len(ls) or SPECIAL_LINE in ls:
            return False
    return True


# --------------------------------------------------------------------------
# stable replacement


def pencil_directions(lines: Sequence[ProjLine], p: ProjPoint) -> list[Direction]:
    """Coordinates of lines through ``p`` in a fixed basis of the pencil at ``p``."""
    e1, e2 = linalg.nullspace([list(p.coords)])
    k, l = next((k, l) for k, l in ((0, 1), (0, 2), (1, 2)) if e1[k] * e2[l] != e1[l] * e2[k])
    det = e1[k] * e2[l] - e1[l] * e2[k]
    out = []
    for line in lines:
        c = line.coeffs
        alpha = (c[k] * e2[l] - c[l] * e2[k]) / det
        beta = (e1[k] * c[l] - e1[l] * c[k]) / det
        if any(alpha * x + beta * y != z for x, y, z in zip(e1, e2, c)):
            raise PreconditionError(f"line {line} does not pass through {p}")
        out.append((alpha, beta))
    return out


def child_directions(x: Sha, vertex: int, I: Sequence[int]) -> list[Direction]:
    comp = x.components[vertex]
    p = comp.point_of(tuple(I))
    return pencil_directions([comp.line(i) for i in I], p)


def generic_moduli(directions: Sequence[Direction], rng: random.Random, tries: int = 100) -> ModuliPoint:
    """A moduli point for which the chart lines have only double points."""
    k = len(directions)
    for _ in range(tries):
        mu = tuple(random_nonzero_rational(rng) for _ in range(k - 2))
        lines = chart_lines(directions, mu)
        if not concurrency_sets(dict(enumerate(lines))):
            return mu
    raise PreconditionError("failed to find a generic moduli point")


def stable_replacement(x: Sha, vertex: int, I: Iterable[int], mu: Optional[Iterable[RationalLike]] = None,
                       w: Optional[WeightVector] = None, seed: int = 0) -> Sha:
    """Blow up the multiple point ``p(I)`` of ``vertex`` and attach a new plane.

    ``mu`` selects the new component among the ``P^(|I|-3)`` of choices; when
    omitted a seeded generic point is used.
    """
    I = index_set(I, x.n)
    if not 0 <= vertex < len(x.components):
        raise NotDestabilized(f"no component {vertex}")
    if I not in x.free_multiple_sets(vertex):
        raise NotDestabilized(f"{list(I)} is not an unresolved multiple point of component {vertex}")
    if w is not None and not as_weights(w).total(I) > 2:
        raise NotDestabilized(f"{list(I)} is not destabilized by the given weights")
    directions = child_directions(x, vertex, I)
    check_directions(directions)
    if mu is None:
        mu = generic_moduli(directions, random.Random(f"mu/{seed}/{vertex}/{I}"))
    mu = moduli_point(mu, len(I))
    lines = chart_lines(directions, mu)
    if len(concurrency_sets(dict(zip(I, lines))).get(ProjPoint(1, 0, 0), ())) == len(I):
        raise UnstableReplacement("this moduli point makes every line of I concur again")
    new_id = len(x.components)
    child = ShaComponent.build(new_id, x.n, I, dict(zip(I, lines)), vertex, mu)
    parent = x.components[vertex]
    parent = replace(parent, attachments=parent.attachments + ((new_id, parent.point_of(I)),))
    comps = list(x.components)
    comps[vertex] = parent
    comps.append(child)
    return Sha(x.n, tuple(comps))


# --------------------------------------------------------------------------
# dual graphs and degeneracy


@dataclass(frozen=True)
class DualGraph:
    root: int
    markings: tuple[tuple[int, IndexSet], ...]
    edges: tuple[tuple[int, int], ...]

    def marking(self, v: int) -> IndexSet:
        return dict(self.markings)[v]

    def vertices(self) -> list[int]:
        return [v for v, _ in self.markings]

    def canonical(self, v: Optional[int] = None) -> tuple:
        v = self.root if v is None else v
        kids = sorted(self.canonical(b) for a, b in self.edges if a == v)
        return (self.marking(v), tuple(kids))

    def is_rooted_tree(self) -> bool:
        vs = set(self.vertices())
        if len(self.edges) != len(vs) - 1:
            return False
        parents = {}
        for a, b in self.edges:
            if b in parents or b == self.root:
                return False
            parents[b] = a
        for v in vs:
            seen = set()
            while v != self.root:
                if v in seen or v not in parents:
                    return False
                seen.add(v)
                v = parents[v]
        return True


def dual_graph(x: Sha) -> DualGraph:
    marks = tuple((c.id, x.markings(c.id)) for c in x.components)
    edges = tuple((c.parent, c.id) for c in x.components if c.parent is not None)
    return DualGraph(0, marks, edges)


def is_maximally_degenerate(x: Sha) -> bool:
    """Every component is rigid: its lines leave no moduli once the
    multiple points are imposed (three lines in general position)."""
    return all(c.moduli_dimension() == 0 for c in x.components)


def stratum_dimension(x: Sha) -> int:
    return sum(c.moduli_dimension() for c in x.components)
