"""Exact rank of sparse integer matrices over Q or GF(p).

Rows are dicts ``{column: value}``.  Over Q the elimination is
fraction-free: a row is reduced as ``a*row - b*pivot`` and then divided by
the gcd of its entries, so entries stay small integers and no rational
arithmetic is ever needed.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Mapping

from .errors import InvalidInputError

Row = Mapping[int, int]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def check_characteristic(characteristic: int) -> None:
    if characteristic != 0 and not is_prime(characteristic):
        raise InvalidInputError(f"field characteristic must be 0 or prime, got {characteristic}")


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    return {c: v // g for c, v in row.items()}


def _rank_rational(rows: Iterable[Row]) -> int:
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        r = {c: v for c, v in row.items() if v}
        while r:
            lead = min(r)
            p = pivots.get(lead)
            if p is None:
                pivots[lead] = _primitive(r)
                break
            a, b = p[lead], r[lead]
            new: dict[int, int] = {}
            for c in r.keys() | p.keys():
                v = a * r.get(c, 0) - b * p.get(c, 0)
                if v:
                    new[c] = v
            r = _primitive(new) if new else new
    return len(pivots)


def _rank_mod_p(rows: Iterable[Row], p: int) -> int:
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        r = {c: v % p for c, v in row.items() if v % p}
        while r:
            lead = min(r)
            piv = pivots.get(lead)
            if piv is None:
                inv = pow(r[lead], -1, p)
                pivots[lead] = {c: v * inv % p for c, v in r.items()}
                break
            b = r[lead]
            new: dict[int, int] = {}
            for c in r.keys() | piv.keys():
                v = (r.get(c, 0) - b * piv.get(c, 0)) % p
                if v:
                    new[c] = v
            r = new
    return len(pivots)


def rank(rows: Iterable[Row], characteristic: int = 0) -> int:
    """Rank of the matrix whose rows are given, over Q (0) or GF(p)."""
    check_characteristic(characteristic)
    if characteristic == 0:
        return _rank_rational(rows)
    return _rank_mod_p(rows, characteristic)
