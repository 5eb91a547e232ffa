"""Exact projective geometry of the plane and its dual.

Points and lines are homogeneous rational triples kept in canonical form
(first nonzero coordinate equal to 1), so projective equality is plain
tuple equality.

The coordinate model: the special line is ``t0 = 0`` and the marked lines
are written in a *chart*

    l_i = sigma_i * t0 + beta_i * t1 - alpha_i * t2,

where ``[0 : alpha_i : beta_i]`` is the (fixed) point where ``l_i`` meets
the special line, the last two lines of the chart have ``sigma = 0`` and
the remaining ``sigma_i`` are the homogeneous moduli coordinates.  The
standard model with base parameters ``a`` and coordinates ``s`` is the
chart with directions ``(a_1, 1), ..., (a_{n-3}, 1), (0, 1), (-1, 0), (1, 1)``.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from . import linalg
from .errors import (
    BadIndexSize,
    BasePointOnSpecialLine,
    DegenerateBasePoints,
    PreconditionError,
    ProportionalLines,
    TooFewPoints,
)
from .rational import RationalLike, random_nonzero_rational, rationals

IndexSet = tuple[int, ...]
Direction = tuple[Fraction, Fraction]


def index_set(items: Iterable[int], n: Optional[int] = None) -> IndexSet:
    """Sorted, deduplicated index tuple; checks ``1 <= i <= n`` when ``n`` is given."""
    out = tuple(sorted(set(int(i) for i in items)))
    if n is not None and out and (out[0] < 1 or out[-1] > n):
        raise PreconditionError(f"index set {list(out)} not contained in 1..{n}")
    return out


def _canonical(coords: Sequence[RationalLike]) -> tuple[Fraction, Fraction, Fraction]:
    c = rationals(coords)
    if len(c) != 3:
        raise PreconditionError("homogeneous triples need exactly three coordinates")
    lead = next((x for x in c if x != 0), None)
    if lead is None:
        raise PreconditionError("all homogeneous coordinates are zero")
    return (c[0] / lead, c[1] / lead, c[2] / lead)


@dataclass(frozen=True)
class ProjPoint:
    coords: tuple[Fraction, Fraction, Fraction]

    def __init__(self, *coords):
        if len(coords) == 1 and not isinstance(coords[0], (int, str, Fraction)):
            coords = tuple(coords[0])
        object.__setattr__(self, "coords", _canonical(coords))

    def __iter__(self):
        return iter(self.coords)

    def __repr__(self):
        return "[" + ":".join(str(x) for x in self.coords) + "]"


@dataclass(frozen=True)
class ProjLine:
    coeffs: tuple[Fraction, Fraction, Fraction]

    def __init__(self, *coeffs):
        if len(coeffs) == 1 and not isinstance(coeffs[0], (int, str, Fraction)):
            coeffs = tuple(coeffs[0])
        object.__setattr__(self, "coeffs", _canonical(coeffs))

    def __iter__(self):
        return iter(self.coeffs)

    def contains(self, p: ProjPoint) -> bool:
        return linalg_dot(self.coeffs, p.coords) == 0

    def __repr__(self):
        return "(" + ", ".join(str(x) for x in self.coeffs) + ")"


def linalg_dot(u, v) -> Fraction:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


SPECIAL_LINE = ProjLine(1, 0, 0)


def dualize_line(l: ProjLine) -> ProjPoint:
    return ProjPoint(l.coeffs)


def dualize_point(p: ProjPoint) -> ProjLine:
    return ProjLine(p.coords)


def meet(l1: ProjLine, l2: ProjLine) -> ProjPoint:
    """Intersection point of two distinct lines."""
    c = linalg.cross(l1.coeffs, l2.coeffs)
    if not any(c):
        raise ProportionalLines(f"lines {l1} and {l2} coincide")
    return ProjPoint(c)


def join(p1: ProjPoint, p2: ProjPoint) -> ProjLine:
    c = linalg.cross(p1.coords, p2.coords)
    if not any(c):
        raise ProportionalLines(f"points {p1} and {p2} coincide")
    return ProjLine(c)


def collinear(pts: Sequence[ProjPoint]) -> bool:
    if len(pts) < 3:
        raise TooFewPoints("collinearity needs at least three points")
    return linalg.rank([list(p.coords) for p in pts]) <= 2


def concurrent(lines: Sequence[ProjLine]) -> bool:
    return collinear([dualize_line(l) for l in lines])


# --------------------------------------------------------------------------
# charts and the standard coordinate model


def root_directions(n: int, a: Sequence[RationalLike]) -> list[Direction]:
    """Base-point directions of the standard model, one per marked line."""
    a = rationals(a)
    if len(a) != n - 3:
        raise PreconditionError(f"need {n - 3} base parameters for n={n}, got {len(a)}")
    one, zero = Fraction(1), Fraction(0)
    return [(x, one) for x in a] + [(zero, one), (-one, zero), (one, one)]


def check_directions(directions: Sequence[Direction]) -> None:
    seen = set()
    for alpha, beta in directions:
        if alpha == 0 and beta == 0:
            raise DegenerateBasePoints("zero direction")
        seen.add(ProjPoint(0, alpha, beta))
    if len(seen) != len(directions):
        raise DegenerateBasePoints("base points on the special line are not distinct")


def chart_lines(directions: Sequence[Direction], params: Sequence[RationalLike]) -> list[ProjLine]:
    """Lines of a chart; ``params`` gives sigma for all but the last two lines."""
    k = len(directions)
    params = rationals(params)
    if len(params) != k - 2:
        raise PreconditionError(f"a chart with {k} lines has {k - 2} parameters, got {len(params)}")
    sig = list(params) + [Fraction(0), Fraction(0)]
    return [ProjLine(s, beta, -alpha) for s, (alpha, beta) in zip(sig, directions)]


def _chart_anchors(k: int, positions: Sequence[int]) -> tuple[int, int]:
    """Two positions of ``positions`` used as the collinearity reference."""
    pref = [p for p in (k - 1, k - 2) if p in positions]
    rest = sorted((p for p in positions if p not in pref), reverse=True)
    chosen = (pref + rest)[:2]
    return chosen[0], chosen[1]


def concurrency_equations(directions: Sequence[Direction], positions: Sequence[int]) -> list[list[Fraction]]:
    """Linear forms in the chart parameters vanishing iff the given lines concur.

    ``positions`` are 0-based line positions in the chart. One equation per
    line beyond a reference pair, so the forms are independent.
    """
    k = len(directions)
    pos = sorted(set(positions))
    if len(pos) < 3:
        raise BadIndexSize("concurrency needs at least three lines")
    a1, a2 = _chart_anchors(k, pos)
    rows = [(d[1], -d[0]) for d in directions]  # (beta, -alpha) part of each line
    eqs = []
    for p in pos:
        if p in (a1, a2):
            continue
        trio = sorted((a1, a2, p))
        form = [Fraction(0)] * (k - 2)
        for place, q in enumerate(trio):
            if q >= k - 2:
                continue  # sigma is identically zero on the last two chart lines
            o1, o2 = [r for r in trio if r != q]
            minor = rows[o1][0] * rows[o2][1] - rows[o1][1] * rows[o2][0]
            form[q] += minor if place % 2 == 0 else -minor
        eqs.append(form)
    return eqs


# --------------------------------------------------------------------------
# arrangements


@dataclass(frozen=True)
class LineArrangement:
    """``n`` labelled lines plus the distinguished special line."""

    n: int
    lines: tuple[ProjLine, ...]
    special_line: ProjLine = SPECIAL_LINE
    base_params: Optional[tuple[Fraction, ...]] = None
    s: Optional[tuple[Fraction, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.lines) != self.n:
            raise PreconditionError(f"expected {self.n} lines, got {len(self.lines)}")
        pts = set()
        for i, l in enumerate(self.lines, 1):
            if l == self.special_line:
                raise DegenerateBasePoints(f"line {i} coincides with the special line")
            pts.add(meet(l, self.special_line))
        if len(pts) != self.n:
            raise DegenerateBasePoints("base points on the special line are not distinct")

    def line(self, i: int) -> ProjLine:
        return self.lines[i - 1]

    def base_point(self, i: int) -> ProjPoint:
        return meet(self.line(i), self.special_line)

    def transformed(self, matrix: Sequence[Sequence[RationalLike]]) -> "LineArrangement":
        """Image under the point transformation ``x -> matrix @ x``."""
        m = [list(rationals(r)) for r in matrix]
        inv = linalg.inverse(m)
        # a line c.x = 0 maps to (c @ inv).y = 0
        def push(l: ProjLine) -> ProjLine:
            return ProjLine([sum(l.coeffs[i] * inv[i][j] for i in range(3)) for j in range(3)])
        return LineArrangement(self.n, tuple(push(l) for l in self.lines), push(self.special_line))


def check_base_params(n: int, a: Sequence[RationalLike]) -> tuple[Fraction, ...]:
    a = rationals(a)
    if len(a) != n - 3:
        raise PreconditionError(f"need {n - 3} base parameters for n={n}, got {len(a)}")
    if len(set(a)) != len(a) or any(x in (0, 1) for x in a):
        raise DegenerateBasePoints("base parameters must be pairwise distinct and avoid 0 and 1")
    return a


def check_s(n: int, s: Sequence[RationalLike]) -> tuple[Fraction, ...]:
    s = rationals(s)
    if len(s) != n - 2:
        raise PreconditionError(f"need {n - 2} coordinates s for n={n}, got {len(s)}")
    if not any(s):
        raise PreconditionError("s = 0 would put all lines through one point")
    return s


def arrangement_from_s(n: int, a: Sequence[RationalLike], s: Sequence[RationalLike]) -> LineArrangement:
    """Arrangement parametrized by ``s`` in the standard model."""
    if n < 3:
        raise PreconditionError("n must be at least 3")
    a = check_base_params(n, a)
    s = check_s(n, s)
    one, zero = Fraction(1), Fraction(0)
    lines = [ProjLine(s[i], one, -a[i]) for i in range(n - 3)]
    lines.append(ProjLine(s[n - 3], one, zero))
    lines.append(ProjLine(zero, zero, one))
    lines.append(ProjLine(zero, one, -one))
    return LineArrangement(n, tuple(lines), SPECIAL_LINE, a, s)


def _integer_triple(c: Sequence[Fraction]) -> tuple[int, int, int]:
    d = math.lcm(c[0].denominator, c[1].denominator, c[2].denominator)
    return (int(c[0] * d), int(c[1] * d), int(c[2] * d))


def _primitive(x: int, y: int, z: int) -> tuple[int, int, int]:
    g = math.gcd(x, y, z)
    lead = x or y or z
    if lead < 0:
        g = -g
    return (x // g, y // g, z // g)


def concurrency_sets(lines: Mapping[int, ProjLine]) -> dict[ProjPoint, IndexSet]:
    """Points where at least three of the given lines meet, with the maximal label set."""
    through: dict[tuple[int, int, int], set[int]] = {}
    labels = sorted(lines)
    ints = {i: _integer_triple(lines[i].coeffs) for i in labels}
    for i, j in itertools.combinations(labels, 2):
        (a0, a1, a2), (b0, b1, b2) = ints[i], ints[j]
        x, y, z = a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0
        if x == y == z == 0:
            continue
        bucket = through.setdefault(_primitive(x, y, z), set())
        bucket.add(i)
        bucket.add(j)
    return {ProjPoint(p): tuple(sorted(ls)) for p, ls in through.items() if len(ls) >= 3}


def multiple_points(arr: LineArrangement) -> dict[ProjPoint, IndexSet]:
    found = concurrency_sets({i: arr.line(i) for i in range(1, arr.n + 1)})
    return {p: I for p, I in found.items() if not arr.special_line.contains(p)}


def h_locus_equations(n: int, a: Sequence[RationalLike], I: Iterable[int]) -> list[list[Fraction]]:
    """Linear forms in ``s_1..s_{n-2}`` cutting out the locus where the lines of ``I`` concur."""
    I = index_set(I, n)
    if not 3 <= len(I) <= n - 1:
        raise BadIndexSize(f"|I| must lie in [3, {n - 1}], got {len(I)}")
    return concurrency_equations(root_directions(n, a), [i - 1 for i in I])


# --------------------------------------------------------------------------
# generic choices


def generic_base_params(n: int, seed: int = 0) -> tuple[Fraction, ...]:
    """Seeded base parameters, pairwise distinct and different from 0 and 1."""
    rng = random.Random(f"base-params/{n}/{seed}")
    out: list[Fraction] = []
    while len(out) < n - 3:
        x = random_nonzero_rational(rng, 89, 11)
        if x != 1 and x not in out:
            out.append(x)
    return check_base_params(n, out)


# --------------------------------------------------------------------------
# universal family over the base


def zeta_map(n: int, a: Sequence[RationalLike], s: Sequence[RationalLike], t: Sequence[RationalLike]) -> list[Fraction]:
    """Values ``zeta_1..zeta_n`` of the fibre map at the plane point ``t``."""
    if n < 5:
        raise PreconditionError("the fibre map is only set up for n >= 5")
    a = rationals(a)
    s = check_s(n, s)
    t0, t1, t2 = rationals(t)
    if t0 == 0:
        raise BasePointOnSpecialLine("the fibre map is undefined on t0 = 0")
    z = [Fraction(0)] * (n + 1)
    z[1] = t1 - a[0] * t2 + s[0] * t0
    z[2] = t1 - a[1] * t2 + s[1] * t0
    for m in range(2, n // 2 + 2):
        if 2 * m - 1 <= n:
            z[2 * m - 1] = z[1] - t0 * sum((s[2 * k] for k in range(m - 1)), Fraction(0))
        if 2 * m <= n:
            z[2 * m] = z[2] - t0 * sum((s[2 * k - 1] for k in range(1, m)), Fraction(0))
    return z[1:]


def verify_universal_family(n: int, a, s, t) -> bool:
    """Check the three linear identities satisfied by the fibre map at ``t``."""
    a = rationals(a)
    z = zeta_map(n, a, s, t)
    s = rationals(s)
    t0, t1, t2 = rationals(t)
    zeta = lambda i: z[i - 1]
    ok = a[1] * zeta(3) - a[0] * zeta(4) == (a[1] - a[0]) * t1
    ok = ok and zeta(3) - zeta(4) == (a[1] - a[0]) * t2
    ok = ok and all(zeta(i) - zeta(i + 2) == s[i - 1] * t0 for i in range(1, n - 1))
    return ok


def family_hyperplanes(n: int, a: Sequence[RationalLike], z: Sequence[Fraction]) -> list[Fraction]:
    """Values of the ``n`` hyperplane forms of the universal family at ``z`` in P^{n-1}."""
    a = rationals(a)
    zz = [None] + list(z)
    a1, a2 = a[0], a[1]
    base = a2 * zz[3] - a1 * zz[4]
    out = [base - a[i - 1] * (zz[3] - zz[4]) + (a2 - a1) * (zz[i] - zz[i + 2]) for i in range(1, n - 2)]
    out.append((a2 - a1) * (zz[n - 2] - zz[n]) + base)
    out.append(zz[3] - zz[4])
    out.append((a2 - 1) * zz[3] - (a1 - 1) * zz[4])
    return out
