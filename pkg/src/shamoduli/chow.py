"""The group fixing the special line pointwise, configuration cycles and their classes.

``G`` acts on the dual plane by ``[a0:a1:a2] -> [t^-3 a0 + (s0/t) a1 + (s1/t) a2 : a1 : a2]``.
Membership of ``g . p_i`` in a linear space ``L_i`` becomes linear in
``u = t^-3``, ``v0 = s0/t``, ``v1 = s1/t``, which gives an exact oracle for the
coefficients of the configuration cycle.
"""
from __future__ import annotations

import enum
import functools
import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import linalg
from .errors import (
    DegenerateInput,
    InternalInvariantError,
    MultipleContributors,
    NoContributor,
    NonGenericConditions,
    NotMaximallyDegenerate,
    PreconditionError,
)
from .projgeom import SPECIAL_LINE, LineArrangement, ProjLine, ProjPoint, meet
from .rational import RationalLike, to_rational
from .sha import Sha, ShaComponent, is_maximally_degenerate

COLLAPSED = ProjPoint(1, 0, 0)


# --------------------------------------------------------------------------
# the group


@dataclass(frozen=True)
class GroupElement:
    t: Fraction
    s0: Fraction = Fraction(0)
    s1: Fraction = Fraction(0)

    def __init__(self, t: RationalLike, s0: RationalLike = 0, s1: RationalLike = 0):
        t = to_rational(t)
        if t == 0:
            raise PreconditionError("t must be nonzero")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "s0", to_rational(s0))
        object.__setattr__(self, "s1", to_rational(s1))

    @classmethod
    def identity(cls) -> "GroupElement":
        return cls(1)

    def matrix(self) -> list[list[Fraction]]:
        """Dual-plane matrix, up to the scalar ``t`` that projectivity ignores."""
        t = self.t
        return [[t ** -3, self.s0 / t, self.s1 / t], [0, 1, 0], [0, 0, 1]]

    def point_matrix(self) -> list[list[Fraction]]:
        """Action on the plane itself; fixes ``x0 = 0`` pointwise."""
        t = self.t
        return [[t ** -2, 0, 0], [self.s0, t, 0], [self.s1, 0, t]]

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return compose(self, other)

    def inverse(self) -> "GroupElement":
        return GroupElement(1 / self.t, -self.s0 * self.t, -self.s1 * self.t)


def compose(g1: GroupElement, g2: GroupElement) -> GroupElement:
    """``g1 * g2``, acting as ``act(g1, act(g2, p))``."""
    t = g1.t * g2.t
    return GroupElement(t, g2.t * g1.s0 + g2.s0 * g1.t ** -2, g2.t * g1.s1 + g2.s1 * g1.t ** -2)


def act(g: GroupElement, p: ProjPoint) -> ProjPoint:
    a0, a1, a2 = p.coords
    t = g.t
    return ProjPoint(t ** -3 * a0 + g.s0 / t * a1 + g.s1 / t * a2, a1, a2)


def base_point(p: ProjPoint) -> ProjPoint:
    """Intersection of the line dual to ``p`` with ``x0 = 0``."""
    return meet(ProjLine(p.coords), SPECIAL_LINE)


# --------------------------------------------------------------------------
# configurations, m-vectors and conditions


@dataclass(frozen=True)
class DualConfig:
    """Dual points of a component's lines; collapsed lines sit at ``[1:0:0]``."""

    points: tuple[ProjPoint, ...]

    @classmethod
    def of(cls, lines: Sequence[ProjLine]) -> "DualConfig":
        return cls(tuple(ProjPoint(l.coeffs) for l in lines))

    @classmethod
    def of_component(cls, comp: ShaComponent) -> "DualConfig":
        return cls(comp.dual_points())

    @property
    def n(self) -> int:
        return len(self.points)

    def base_points(self) -> list[Optional[ProjPoint]]:
        return [None if p == COLLAPSED else base_point(p) for p in self.points]

    def validate(self) -> None:
        seen = [b for b in self.base_points() if b is not None]
        if len(set(seen)) != len(seen):
            raise PreconditionError("base points on the special line must be distinct")

    def moved(self, g: GroupElement) -> "DualConfig":
        return DualConfig(tuple(act(g, p) for p in self.points))


@functools.lru_cache(maxsize=None)
def _m_vectors(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(m for m in itertools.product(range(2, -1, -1), repeat=n) if sum(m) == 3)


def m_vectors(n: int) -> list[tuple[int, ...]]:
    """All ``m`` with entries in ``0..2`` summing to three, lexicographically descending."""
    return list(_m_vectors(n))


def check_m(m: Sequence[int], n: Optional[int] = None) -> tuple[int, ...]:
    m = tuple(int(x) for x in m)
    if n is not None and len(m) != n:
        raise PreconditionError(f"m needs {n} entries, got {len(m)}")
    if any(x < 0 or x > 2 for x in m) or sum(m) != 3:
        raise PreconditionError("m needs entries in 0..2 summing to 3")
    return m


class Verdict(enum.IntEnum):
    NONE = 0
    UNIQUE = 1
    INFINITE = -1


@dataclass(frozen=True)
class LinearConditions:
    """``rows[i]`` spans the equations of ``L_i``; only the first ``m_i`` rows are used."""

    rows: tuple[tuple[tuple[int, int, int], ...], ...]
    seed: int = 0

    @classmethod
    def generate(cls, n: int, seed: int = 0, bound: int = 10 ** 6) -> "LinearConditions":
        rng = random.Random(f"conditions/{n}/{seed}")
        rows = tuple(tuple(tuple(rng.randint(-bound, bound) for _ in range(3)) for _ in range(2)) for _ in range(n))
        return cls(rows, seed)

    def certificates(self, config: DualConfig) -> list[str]:
        """Failed genericity checks; empty when the conditions are usable."""
        bad = []
        for i, (p, rs) in enumerate(zip(config.points, self.rows), 1):
            q = p.coords
            for r in rs:
                if r[0] == 0:
                    bad.append(f"L_{i} passes through [1:0:0]")
                if sum(x * y for x, y in zip(r, q)) == 0:
                    bad.append(f"L_{i} contains p_{i}")
            pt = linalg.cross(rs[0], rs[1])
            if pt == (0, 0, 0):
                bad.append(f"L_{i} rows are dependent")
            elif p != COLLAPSED and linalg.det3([(1, 0, 0), q, pt]) == 0:
                bad.append(f"the point L_{i} lies on the orbit line of p_{i}")
        return bad


def generic_conditions(config: DualConfig, seed: int = 0, attempts: int = 16) -> LinearConditions:
    for k in range(attempts):
        cond = LinearConditions.generate(config.n, seed * attempts + k)
        if not cond.certificates(config):
            return cond
    raise NonGenericConditions("no generic conditions found")


def _integral(p: ProjPoint) -> tuple[int, int, int]:
    d = math.lcm(*(c.denominator for c in p.coords))
    return tuple(int(c * d) for c in p.coords)


def _condition_rows(config: DualConfig, conditions: LinearConditions) -> list[list[list[int]]]:
    """Per point, rows ``[cu, cv0, cv1, rhs]`` in the unknowns ``(u, v0, v1)``."""
    out = []
    for p, rs in zip(config.points, conditions.rows):
        a0, a1, a2 = _integral(p)
        out.append([[b[0] * a0, b[0] * a1, b[0] * a2, -(b[1] * a1 + b[2] * a2)] for b in rs])
    return out


def _system(rows: Sequence[Sequence[Sequence[int]]], m: Sequence[int]) -> list[list[int]]:
    return [r for per, mi in zip(rows, m) for r in per[:mi]]


def _det3(r):
    return (r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
            - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
            + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]))


def _int_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank by fraction-free elimination."""
    m = [list(r) for r in rows]
    rank = 0
    for c in range(len(m[0]) if m else 0):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank]
        for i in range(rank + 1, len(m)):
            f = m[i][c]
            if f:
                m[i] = [x * p[c] - y * f for x, y in zip(m[i], p)]
        rank += 1
    return rank


def solve_orbit_system(rows: Sequence[Sequence[int]]) -> Verdict:
    """Verdict for integer rows ``[cu, cv0, cv1, rhs]``."""
    a = [r[:3] for r in rows]
    if len(rows) == 3:
        d = _det3(a)
        if d:
            du = _det3([[r[3], r[1], r[2]] for r in rows])
            return Verdict.UNIQUE if du else Verdict.NONE
        # rank(a) <= 2, so any nonzero minor through the right-hand side is a contradiction
        for c1, c2 in ((0, 1), (0, 2), (1, 2)):
            if _det3([[r[c1], r[c2], r[3]] for r in rows]):
                return Verdict.NONE
    ra = _int_rank(a)
    if _int_rank(rows) > ra:
        return Verdict.NONE
    if ra == 3:
        sol, _ = linalg.solve_affine(a, [r[3] for r in rows])
        return Verdict.UNIQUE if sol[0] != 0 else Verdict.NONE
    if _int_rank(a + [[1, 0, 0]]) > ra:
        return Verdict.INFINITE
    # u is pinned by the equations; it is nonzero iff adding u = 0 is inconsistent
    return Verdict.INFINITE if _int_rank(list(rows) + [[1, 0, 0, 0]]) > ra else Verdict.NONE


def reparametrized_orbit_system(config: DualConfig, conditions: LinearConditions, m: Sequence[int]) -> Verdict:
    """Number of ``g`` with ``g . p_i`` in ``L_i`` for all ``i`` (``INFINITE`` if a continuum)."""
    m = check_m(m, config.n)
    failed = conditions.certificates(config)
    if failed:
        raise NonGenericConditions("; ".join(failed))
    return solve_orbit_system(_system(_condition_rows(config, conditions), m))


# --------------------------------------------------------------------------
# combinatorial coefficients


def component_coefficient(comp: ShaComponent, m: Sequence[int]) -> int:
    m = check_m(m, comp.n)
    if any(x > 1 for x in m):
        return 0
    if any(m[k - 1] for k in comp.collapsed):
        return 0
    for J in comp.multiple_sets:
        if sum(m[k - 1] for k in J) > 2:
            return 0
    return 1


@dataclass(frozen=True)
class CycleClass:
    n: int
    coeffs: tuple[tuple[tuple[int, ...], int], ...]

    def __getitem__(self, m) -> int:
        return dict(self.coeffs)[tuple(m)]

    def support(self) -> list[tuple[int, ...]]:
        return [m for m, c in self.coeffs if c]

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return dict(self.coeffs)


def generic_class(n: int) -> CycleClass:
    return CycleClass(n, tuple((m, int(max(m) <= 1)) for m in m_vectors(n)))


def cycle_class(x: Sha) -> CycleClass:
    return CycleClass(x.n, tuple((m, sum(component_coefficient(c, m) for c in x.components)) for m in m_vectors(x.n)))


def oracle_class(x: Sha, seed: int = 0) -> CycleClass:
    """The class summed from linear-system verdicts, one component at a time."""
    total = {m: 0 for m in m_vectors(x.n)}
    for c in x.components:
        config = DualConfig.of_component(c)
        rows = _condition_rows(config, generic_conditions(config, seed))
        for m in total:
            v = solve_orbit_system(_system(rows, m))
            if v == Verdict.INFINITE:
                raise NonGenericConditions(f"underdetermined orbit system at component {c.id}")
            total[m] += int(v)
    return CycleClass(x.n, tuple(total.items()))


def component_disagreements(comp: ShaComponent, seed: int = 0) -> list[tuple[tuple[int, ...], int, int]]:
    """``(m, combinatorial, oracle)`` for every ``m`` where the two verdicts differ."""
    config = DualConfig.of_component(comp)
    rows = _condition_rows(config, generic_conditions(config, seed))
    out = []
    for m in m_vectors(comp.n):
        want = component_coefficient(comp, m)
        got = int(solve_orbit_system(_system(rows, m)))
        if want != got:
            out.append((m, want, got))
    return out


def _mass(m: Sequence[int], idx: Iterable[int]) -> int:
    return sum(m[k - 1] for k in idx)


def unique_contributor(x: Sha, m: Sequence[int]) -> int:
    """The component carrying ``c_m`` of a maximally degenerate sha.

    Starting at the root, move into the child attached at the multiple point
    holding all of ``m`` until no multiple point holds mass three.
    """
    m = check_m(m, x.n)
    if any(k > 1 for k in m):
        raise PreconditionError("m must have entries at most 1")
    if not is_maximally_degenerate(x):
        raise NotMaximallyDegenerate("the sha has a component with moduli")
    v = 0
    while True:
        comp = x.components[v]
        full = [J for J in comp.multiple_sets if _mass(m, J) == 3]
        if not full:
            break
        if len(full) > 1:
            raise MultipleContributors(f"two multiple points hold all of m at component {v}")
        nxt = x.attached_sets(v).get(full[0])
        if nxt is None:
            raise NoContributor(f"multiple point {list(full[0])} of component {v} has no child")
        v = nxt
    hits = [c.id for c in x.components if component_coefficient(c, m)]
    if hits != [v]:
        if not hits:
            raise NoContributor("no component contributes")
        raise MultipleContributors(f"the descent ends at {v} but {hits} contribute")
    return v


# --------------------------------------------------------------------------
# stabilizers


def _coordinates(arr: LineArrangement) -> list[list[Fraction]]:
    """Rows are the linear forms of ``l_A``, ``l_(n-1)``, ``l_n``: new coordinates ``y = M x``."""
    m = [list(arr.special_line.coeffs), list(arr.line(arr.n - 1).coeffs), list(arr.line(arr.n).coeffs)]
    if linalg.det3(m) == 0:
        raise DegenerateInput("the special line and the last two lines are not in general position")
    return m


def fixing_equations(arr: LineArrangement, fixed: Optional[Iterable[int]] = None) -> list[list[Fraction]]:
    """Linear equations in ``(g1, g2)`` for ``diag((g1 g2)^-1, g1, g2)`` to fix the base points.

    Coordinates are chosen so the special line and the last two lines are the
    coordinate lines; ``[0:b1:b2]`` is fixed iff ``b1 b2 (g1 - g2) = 0``.
    """
    m = _coordinates(arr)
    fixed = range(1, arr.n + 1) if fixed is None else fixed
    rows = []
    for i in fixed:
        q = arr.base_point(i).coords
        y = [sum(m[r][c] * q[c] for c in range(3)) for r in range(3)]
        if y[0] != 0:
            raise InternalInvariantError("base point left the special line")
        rows.append([y[1] * y[2], -y[1] * y[2]])
    return rows


def stabilizer_relations(arr: LineArrangement, fixed: Optional[Iterable[int]] = None) -> list[tuple[Fraction, ...]]:
    """Reduced relations among ``(g1, g2)``; ``[(1, -1)]`` means ``g1 = g2``."""
    rows = fixing_equations(arr, fixed)
    if not rows:
        return []
    red, pivots = linalg.rref(rows, 2)
    return [tuple(red[k]) for k in range(len(pivots))]


def stabilizer_dimension(arr: LineArrangement, fixed: Optional[Iterable[int]] = None) -> int:
    """Dimension of the diagonal stabilizer: two torus parameters minus independent relations."""
    return 2 - len(stabilizer_relations(arr, fixed))


# --------------------------------------------------------------------------
# orbit canonical forms


def orbit_canonical_form(config: DualConfig) -> tuple:
    """A representative of the ``G``-orbit of a configuration.

    Each point is scaled so its ``(a1, a2)`` part starts with 1; translations
    zero the ``a0`` of the last two non-collapsed points and the scaling makes
    the first remaining nonzero ``a0`` equal to 1.
    """
    pts = []
    for p in config.points:
        if p == COLLAPSED:
            pts.append(None)
            continue
        a0, a1, a2 = p.coords
        lead = a1 if a1 != 0 else a2
        pts.append((a0 / lead, a1 / lead, a2 / lead))
    live = [k for k, p in enumerate(pts) if p is not None]
    if len(live) < 2:
        return tuple(None if p is None else p for p in pts)
    i, j = live[-2], live[-1]
    # v0 a1 + v1 a2 = -a0 at both anchors
    sol, _ = linalg.solve_affine([[pts[i][1], pts[i][2]], [pts[j][1], pts[j][2]]], [-pts[i][0], -pts[j][0]])
    if sol is None:
        raise DegenerateInput("anchor points share a base point")
    shifted = [None if p is None else (p[0] + sol[0] * p[1] + sol[1] * p[2], p[1], p[2]) for p in pts]
    scale = next((p[0] for p in shifted if p is not None and p[0] != 0), Fraction(1))
    return tuple(None if p is None else (p[0] / scale, p[1], p[2]) for p in shifted)


def cycle_data(x: Sha) -> tuple:
    """Per-component orbit data of a sha, as a sorted tuple."""
    return tuple(sorted((c.lines, orbit_canonical_form(DualConfig.of_component(c))) for c in x.components))
