"""Squarefree monomials and monomial ideals encoded as bitmasks.

Variables are 1-based at the API surface (``x_1 .. x_n``) and 0-based inside
masks: bit ``i`` set means ``x_{i+1}`` divides the monomial.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import InvalidInputError

MAX_VARS = 64


def mask_of(indices: Iterable[int]) -> int:
    """Bitmask of 1-based variable indices."""
    m = 0
    for i in indices:
        if i < 1:
            raise InvalidInputError(f"variable index must be >= 1, got {i}")
        m |= 1 << (i - 1)
    return m


def indices_of(mask: int) -> tuple[int, ...]:
    """Sorted 1-based variable indices of a mask."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _check_n(n: int) -> None:
    if not isinstance(n, int) or not 1 <= n <= MAX_VARS:
        raise InvalidInputError(f"ambient variable count must be in 1..{MAX_VARS}, got {n!r}")


def _mask_key(mask: int) -> tuple[int, ...]:
    return indices_of(mask)


@dataclass(frozen=True)
class SqfMonomial:
    """The squarefree monomial x_sigma for sigma = set bits of ``mask``."""

    mask: int
    n: int

    def __post_init__(self) -> None:
        _check_n(self.n)
        if self.mask < 0 or self.mask >> self.n:
            raise InvalidInputError(f"mask {self.mask:#x} has bits outside {self.n} variables")

    @classmethod
    def from_indices(cls, indices: Iterable[int], n: int) -> "SqfMonomial":
        return cls(mask_of(indices), n)

    @property
    def degree(self) -> int:
        return self.mask.bit_count()

    @property
    def support(self) -> tuple[int, ...]:
        return indices_of(self.mask)

    def divides(self, other: "SqfMonomial") -> bool:
        return self.mask & ~other.mask == 0

    def __str__(self) -> str:
        if not self.mask:
            return "1"
        return "*".join(f"x{i}" for i in self.support)


def _minimal_masks(masks: Iterable[int]) -> tuple[int, ...]:
    kept: list[int] = []
    for m in sorted(set(masks), key=lambda v: (v.bit_count(), v)):
        if not any(g & ~m == 0 for g in kept):
            kept.append(m)
    if 0 in kept:
        return (0,)
    return tuple(sorted(kept, key=_mask_key))


@dataclass(frozen=True)
class MonomialIdeal:
    """A squarefree monomial ideal of K[x_1..x_n] held by its minimal generators.

    Any generator masks may be passed in; they are reduced to the unique
    minimal generating set G(I) and stored in canonical order, so ``==``
    is ideal equality.
    """

    n: int
    gens: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        _check_n(self.n)
        for g in self.gens:
            if g < 0 or g >> self.n:
                raise InvalidInputError(f"generator {g:#x} has bits outside {self.n} variables")
        object.__setattr__(self, "gens", _minimal_masks(self.gens))

    @classmethod
    def from_lists(cls, gens: Iterable[Iterable[int]], n: int | None = None) -> "MonomialIdeal":
        masks = [mask_of(g) for g in gens]
        if n is None:
            n = max((m.bit_length() for m in masks), default=1) or 1
        return cls(n, tuple(masks))

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return self.gens == (0,)

    @property
    def support(self) -> int:
        """Mask of supp(I): variables dividing some minimal generator."""
        s = 0
        for g in self.gens:
            s |= g
        return s

    def generators(self) -> list[SqfMonomial]:
        return [SqfMonomial(g, self.n) for g in self.gens]

    def contains_mask(self, mask: int) -> bool:
        for g in self.gens:
            if g & ~mask == 0:
                return True
        return False

    def __contains__(self, m: SqfMonomial) -> bool:
        return contains(self, m)

    def issubideal(self, other: "MonomialIdeal") -> bool:
        """True if self is contained in ``other`` (same ambient ring)."""
        if self.n != other.n:
            raise InvalidInputError("ideals live in different ambient rings")
        return all(other.contains_mask(g) for g in self.gens)

    def with_ambient(self, n: int) -> "MonomialIdeal":
        """The same generators viewed in K[x_1..x_n]; n must cover supp(I)."""
        if self.support >> n:
            raise InvalidInputError(f"support does not fit in {n} variables")
        return MonomialIdeal(n, self.gens)

    def to_lists(self) -> list[list[int]]:
        return [list(indices_of(g)) for g in self.gens]

    def to_json(self) -> str:
        return json.dumps(self.to_lists(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str, n: int | None = None) -> "MonomialIdeal":
        data = json.loads(text)
        if not isinstance(data, list) or not all(isinstance(g, list) for g in data):
            raise InvalidInputError("ideal JSON must be a list of index lists")
        return cls.from_lists(data, n)

    def __str__(self) -> str:
        if self.is_zero:
            return "(0)"
        return "(" + ", ".join(str(m) for m in self.generators()) + ")"


def minimalize(gens: Iterable[SqfMonomial | int], n: int | None = None) -> MonomialIdeal:
    """Minimal generating set of the ideal generated by ``gens``.

    ``gens`` may hold SqfMonomial values (which must agree on their ambient
    ring) or raw masks, in which case ``n`` is required.
    """
    masks: list[int] = []
    for g in gens:
        if isinstance(g, SqfMonomial):
            if n is None:
                n = g.n
            elif g.n != n:
                raise InvalidInputError(f"mixed ambient sizes {n} and {g.n}")
            masks.append(g.mask)
        else:
            masks.append(int(g))
    if n is None:
        raise InvalidInputError("ambient size unknown: pass n for an empty or mask-only input")
    return MonomialIdeal(n, tuple(masks))


def contains(ideal: MonomialIdeal, m: SqfMonomial) -> bool:
    if m.n != ideal.n:
        raise InvalidInputError("monomial and ideal live in different ambient rings")
    return ideal.contains_mask(m.mask)


def colon_by_variable(ideal: MonomialIdeal, i: int) -> MonomialIdeal:
    """(I : x_i), computed generator-wise as g / gcd(g, x_i)."""
    if not 1 <= i <= ideal.n:
        raise InvalidInputError(f"variable x_{i} not in 1..{ideal.n}")
    bit = 1 << (i - 1)
    return MonomialIdeal(ideal.n, tuple(g & ~bit for g in ideal.gens))


def add_primes(ideal: MonomialIdeal, variables: Iterable[int]) -> MonomialIdeal:
    """(I, x_j : j in variables)."""
    extra = []
    for j in variables:
        if not 1 <= j <= ideal.n:
            raise InvalidInputError(f"variable x_{j} not in 1..{ideal.n}")
        extra.append(1 << (j - 1))
    return MonomialIdeal(ideal.n, ideal.gens + tuple(extra))


def ideal_sum(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    if a.n != b.n:
        raise InvalidInputError("ideals live in different ambient rings")
    return MonomialIdeal(a.n, a.gens + b.gens)


def variable_ideal(n: int, variables: Iterable[int]) -> MonomialIdeal:
    """The prime ideal generated by the listed variables (zero ideal if none)."""
    return add_primes(MonomialIdeal(n), variables)


@dataclass(frozen=True)
class VariableRenaming:
    """An injective map between 1-based variable indices."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        pairs = tuple(sorted((int(a), int(b)) for a, b in self.pairs))
        src = [a for a, _ in pairs]
        dst = [b for _, b in pairs]
        if len(set(src)) != len(src):
            raise InvalidInputError("renaming assigns a variable twice")
        if len(set(dst)) != len(dst):
            raise InvalidInputError("renaming is not injective")
        if any(v < 1 for v in src + dst):
            raise InvalidInputError("variable indices are 1-based")
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int]) -> "VariableRenaming":
        return cls(tuple(mapping.items()))

    @classmethod
    def identity(cls, variables: Iterable[int]) -> "VariableRenaming":
        return cls(tuple((v, v) for v in variables))

    @classmethod
    def shift(cls, variables: Iterable[int], offset: int) -> "VariableRenaming":
        return cls(tuple((v, v + offset) for v in variables))

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(a for a, _ in self.pairs)

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)

    def apply_mask(self, mask: int) -> int:
        table = self.as_dict()
        out = 0
        for i in indices_of(mask):
            if i not in table:
                raise InvalidInputError(f"renaming undefined on x_{i}")
            out |= 1 << (table[i] - 1)
        return out


def ideals_isomorphic(a: MonomialIdeal, b: MonomialIdeal, renaming: VariableRenaming) -> bool:
    """True iff ``renaming`` carries G(a) onto G(b) as sets.

    The renaming must be defined on every variable of supp(a); an
    incomplete renaming is rejected rather than treated as a mismatch.
    """
    image = set()
    for g in a.gens:
        h = renaming.apply_mask(g)
        if h >> b.n:
            return False
        image.add(h)
    return image == set(b.gens)
