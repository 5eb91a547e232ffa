"""Exact rational scalars and their string form.

``fractions.Fraction`` is the scalar type everywhere; it is always reduced
with a positive denominator. Serialization uses ``"p/q"`` (or ``"p"`` for
integers) and never goes through floats.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Sequence, Union

RationalLike = Union[Fraction, int, str]


def to_rational(x: RationalLike) -> Fraction:
    """Coerce ``x`` to a Fraction, refusing floats."""
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not s:
            raise ValueError("empty rational string")
        # Fraction accepts decimals like "0.55"; that is exact, so allow it.
        return Fraction(s)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def rationals(xs: Iterable[RationalLike]) -> tuple[Fraction, ...]:
    return tuple(to_rational(x) for x in xs)


def fmt(x: Fraction) -> str:
    x = to_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def fmt_all(xs: Iterable[Fraction]) -> list[str]:
    return [fmt(x) for x in xs]


def parse_list(text: str) -> tuple[Fraction, ...]:
    """Parse a comma separated list such as ``"1,1,2/3"``."""
    parts = [p for p in text.replace(" ", "").split(",") if p]
    return tuple(to_rational(p) for p in parts)


def random_rational(rng: random.Random, bound: int = 97, den: int = 13) -> Fraction:
    """Random rational with numerator in [-bound, bound] and denominator in [1, den]."""
    return Fraction(rng.randint(-bound, bound), rng.randint(1, den))


def random_nonzero_rational(rng: random.Random, bound: int = 97, den: int = 13) -> Fraction:
    while True:
        x = random_rational(rng, bound, den)
        if x:
            return x


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))
