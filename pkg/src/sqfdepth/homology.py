"""Depth of S/I through Hochster's formula.

For a squarefree monomial ideal I with Stanley-Reisner complex Delta,

    beta_{i,sigma}(S/I) = dim H~_{|sigma|-i-1}(Delta|_sigma; K),

so pd(S/I) is the largest i with a nonzero entry and
depth(S/I) = n - pd(S/I) by Auslander-Buchsbaum.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable

from .errors import CapExceededError, DegenerateError, InvalidInputError
from .ideal import MonomialIdeal, indices_of, mask_of
from .linalg import check_characteristic, rank


@dataclass(frozen=True)
class SimplicialComplex:
    """A simplicial complex on vertices 1..n, faces held as bitmasks."""

    n: int
    faces: frozenset[int]

    def __post_init__(self) -> None:
        for f in self.faces:
            g = f
            while g:
                low = g & -g
                if f & ~low not in self.faces:
                    raise InvalidInputError(f"face family not down-closed at {indices_of(f)}")
                g ^= low

    @classmethod
    def from_facets(cls, n: int, facets: Iterable[Iterable[int]]) -> "SimplicialComplex":
        faces: set[int] = set()
        for facet in facets:
            m = mask_of(facet)
            sub = m
            while True:
                faces.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & m
        return cls(n, frozenset(faces))

    def is_face(self, mask: int) -> bool:
        return mask in self.faces

    @cached_property
    def facets(self) -> tuple[int, ...]:
        full = (1 << self.n) - 1
        out = []
        for f in self.faces:
            free = full & ~f
            maximal = True
            while free:
                bit = free & -free
                free ^= bit
                if f | bit in self.faces:
                    maximal = False
                    break
            if maximal:
                out.append(f)
        return tuple(sorted(out, key=indices_of))

    @cached_property
    def _sorted_faces(self) -> tuple[int, ...]:
        return tuple(sorted(self.faces, key=lambda f: (f.bit_count(), f)))

    def restricted_faces(self, sigma: int, max_size: int | None = None) -> list[list[int]]:
        """Faces of Delta|_sigma bucketed by size (bucket 0 holds the empty face)."""
        top = sigma.bit_count() if max_size is None else min(max_size, sigma.bit_count())
        buckets: list[list[int]] = [[] for _ in range(top + 1)]
        for f in self._sorted_faces:
            s = f.bit_count()
            if s > top:
                break
            if f & ~sigma == 0:
                buckets[s].append(f)
        return buckets


def independence_complex(ideal: MonomialIdeal, max_faces: int | None = None) -> SimplicialComplex:
    """Stanley-Reisner complex of ``ideal``: all sigma with x_sigma not in I."""
    if ideal.is_unit:
        raise DegenerateError("the unit ideal has no Stanley-Reisner complex")
    n = ideal.n
    by_var: list[list[int]] = [[] for _ in range(n)]
    for g in ideal.gens:
        for v in indices_of(g):
            by_var[v - 1].append(g)
    faces = [0]
    stack = [(0, 0)]  # (face, next vertex to try)
    while stack:
        face, start = stack.pop()
        for v in range(start, n):
            new = face | (1 << v)
            if any(g & ~new == 0 for g in by_var[v]):
                continue
            faces.append(new)
            if max_faces is not None and len(faces) > max_faces:
                raise CapExceededError(f"more than {max_faces} faces")
            stack.append((new, v + 1))
    return SimplicialComplex(n, frozenset(faces))


def _boundary_rows(faces: list[int], index: dict[int, int], characteristic: int) -> list[dict[int, int]]:
    rows = []
    for f in faces:
        row = {}
        sign = 1
        g = f
        while g:
            low = g & -g
            row[index[f ^ low]] = sign
            sign = -sign
            g ^= low
        if characteristic:
            row = {c: v % characteristic for c, v in row.items()}
        rows.append(row)
    return rows


class _ChainRanks:
    """Lazily computed boundary ranks of Delta|_sigma."""

    def __init__(self, cx: SimplicialComplex, sigma: int, characteristic: int, max_size: int | None):
        self.buckets = cx.restricted_faces(sigma, max_size)
        self.characteristic = characteristic
        self._ranks: dict[int, int] = {}

    def chain_dim(self, d: int) -> int:
        s = d + 1
        return len(self.buckets[s]) if 0 <= s < len(self.buckets) else 0

    def boundary_rank(self, d: int) -> int:
        # rank of C_d -> C_{d-1}; zero for d <= -1 or beyond the computed range
        if d <= -1 or d + 1 >= len(self.buckets):
            return 0
        if d not in self._ranks:
            lower = self.buckets[d]
            index = {f: j for j, f in enumerate(lower)}
            self._ranks[d] = rank(_boundary_rows(self.buckets[d + 1], index, self.characteristic), self.characteristic)
        return self._ranks[d]

    def reduced_betti(self, d: int) -> int:
        return self.chain_dim(d) - self.boundary_rank(d) - self.boundary_rank(d + 1)


def reduced_homology_ranks(cx: SimplicialComplex, sigma: int | Iterable[int], characteristic: int = 0) -> list[int]:
    """Ranks of H~_d(Delta|_sigma) for d = -1 .. |sigma|-1 (list index d+1)."""
    check_characteristic(characteristic)
    if not isinstance(sigma, int):
        sigma = mask_of(sigma)
    if sigma >> cx.n:
        raise InvalidInputError("sigma not contained in the vertex set")
    chains = _ChainRanks(cx, sigma, characteristic, None)
    return [chains.reduced_betti(d) for d in range(-1, sigma.bit_count())]


def _is_cone(gens_in: list[int], sigma: int) -> bool:
    covered = 0
    for g in gens_in:
        if g & ~sigma == 0:
            covered |= g
    return covered != sigma


@dataclass
class BettiTable:
    """Multigraded Betti numbers beta_{i,sigma}(I) of the ideal I.

    These are shifted by one from those of S/I: beta_{i,sigma}(I) =
    beta_{i+1,sigma}(S/I), so row 0 sits exactly on the generators.
    """

    n: int
    entries: dict[tuple[int, int], int] = field(default_factory=dict)

    def total(self, i: int) -> int:
        return sum(v for (j, _), v in self.entries.items() if j == i)

    def positions(self, i: int) -> set[int]:
        return {s for (j, s), v in self.entries.items() if j == i and v}

    def rows(self) -> list[tuple[int, tuple[int, ...], int]]:
        return sorted((i, indices_of(s), v) for (i, s), v in self.entries.items())

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "sigma", "beta"])
        for i, sigma, v in self.rows():
            w.writerow([i, " ".join(map(str, sigma)), v])
        return buf.getvalue()


def betti_table(ideal: MonomialIdeal, characteristic: int = 0) -> BettiTable:
    """All nonzero beta_{i,sigma}(I), by Hochster's formula over every sigma."""
    check_characteristic(characteristic)
    cx = independence_complex(ideal)
    table = BettiTable(ideal.n)
    supp = indices_of(ideal.support)
    for size in range(1, len(supp) + 1):
        for combo in combinations(supp, size):
            sigma = mask_of(combo)
            if _is_cone(list(ideal.gens), sigma):
                continue
            ranks = reduced_homology_ranks(cx, sigma, characteristic)
            for d, r in enumerate(ranks, start=-1):
                i = size - d - 2
                if r and i >= 0:
                    table.entries[(i, sigma)] = r
    return table


def pd_with_witness(ideal: MonomialIdeal, characteristic: int = 0) -> tuple[int, int]:
    """(pd(S/I), sigma) with beta_{pd,sigma}(S/I) != 0.

    Subsets of supp(I) are scanned by decreasing size.  For a subset of
    size s only homology in degrees d <= s - 2 - best can raise the current
    maximum, and cones (a vertex of sigma lying in no generator inside
    sigma) are skipped because they are acyclic.
    """
    check_characteristic(characteristic)
    if ideal.is_unit:
        raise DegenerateError("S/I is zero for the unit ideal")
    if ideal.is_zero:
        return 0, 0
    cx = independence_complex(ideal)
    supp = indices_of(ideal.support)
    gens = list(ideal.gens)
    best, witness = 0, 0
    for size in range(len(supp), 0, -1):
        if size <= best:
            break
        for combo in combinations(supp, size):
            sigma = mask_of(combo)
            if _is_cone(gens, sigma):
                continue
            max_d = size - 2 - best
            chains = _ChainRanks(cx, sigma, characteristic, max_d + 2)
            for d in range(-1, max_d + 1):
                if chains.reduced_betti(d):
                    best, witness = size - 1 - d, sigma
                    break
            if size <= best:
                break
    return best, witness


def projective_dimension(ideal: MonomialIdeal, characteristic: int = 0) -> int:
    """pd(S/I)."""
    return pd_with_witness(ideal, characteristic)[0]


def depth_quotient(ideal: MonomialIdeal, characteristic: int = 0) -> int:
    """depth(S/I) = n - pd(S/I)."""
    return ideal.n - projective_dimension(ideal, characteristic)


def depth_ideal(ideal: MonomialIdeal, characteristic: int = 0) -> int:
    """depth(I) = depth(S/I) + 1 for a nonzero proper ideal."""
    if ideal.is_zero:
        raise DegenerateError("depth(I) requested for the zero ideal")
    return depth_quotient(ideal, characteristic) + 1


def betti_nonzero(ideal: MonomialIdeal, i: int, sigma: int, characteristic: int = 0) -> bool:
    """Whether beta_{i,sigma}(S/I) != 0; a single Hochster evaluation."""
    cx = independence_complex(ideal)
    d = sigma.bit_count() - i - 1
    if d < -1:
        return False
    chains = _ChainRanks(cx, sigma, characteristic, d + 2)
    return chains.reduced_betti(d) != 0
