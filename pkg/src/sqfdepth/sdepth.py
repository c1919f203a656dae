"""Exact Stanley depth of S/I, I and J/I via interval partitions.

A squarefree module J/I is encoded by its characteristic poset: the subsets
sigma of [n] with x_sigma in J and not in I, ordered by inclusion.  Stanley
decompositions correspond to partitions of this poset into intervals
[A, B], and sdepth is the best achievable minimum of |B|.

Deciding ``sdepth >= d`` only needs intervals whose top has size exactly d
covering the elements of size < d; every larger element can stand alone.
Any interval [A, B] with |A| <= d <= |B| splits into such pieces, so the
restriction loses nothing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Iterable, Literal

from .errors import CapExceededError, DegenerateError, InvalidInputError
from .homology import independence_complex
from .ideal import MonomialIdeal, indices_of, mask_of
from .lpbound import refute_cover, solve_cover

Kind = Literal["quotient", "ideal", "pair"]

DEFAULT_CAP = 1 << 20
ORACLE_CAP = 25
SEARCH_BUDGET = 20000
MILP_TIME_LIMIT = 300.0


def _key(mask: int) -> tuple[int, tuple[int, ...]]:
    return mask.bit_count(), indices_of(mask)


@dataclass(frozen=True)
class CharPoset:
    n: int
    elements: tuple[int, ...]
    kind: str = "custom"

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", tuple(sorted(set(self.elements), key=_key)))

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]], kind: str = "custom") -> "CharPoset":
        return cls(n, tuple(mask_of(s) for s in sets), kind)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, mask: int) -> bool:
        return mask in self.element_set

    @cached_property
    def element_set(self) -> frozenset[int]:
        return frozenset(self.elements)

    @cached_property
    def maximal_elements(self) -> tuple[int, ...]:
        full = (1 << self.n) - 1
        return tuple(e for e in self.elements if not _has_cover(e, full & ~e, self.element_set))

    def is_convex(self) -> bool:
        for a in self.elements:
            for b in self.elements:
                if a != b and a & ~b == 0:
                    if any(s not in self.element_set for s in _interval(a, b)):
                        return False
        return True


def _has_cover(e: int, free: int, elements: frozenset[int]) -> bool:
    while free:
        bit = free & -free
        free ^= bit
        if e | bit in elements:
            return True
    return False


def _interval(a: int, b: int) -> Iterable[int]:
    """All sets between a and b (a must be a subset of b)."""
    diff = b & ~a
    sub = diff
    while True:
        yield a | sub
        if sub == 0:
            return
        sub = (sub - 1) & diff


def _upset(n: int, gens: Iterable[int], cap: int) -> set[int]:
    seen = set(gens)
    stack = list(seen)
    full = (1 << n) - 1
    while stack:
        m = stack.pop()
        free = full & ~m
        while free:
            bit = free & -free
            free ^= bit
            up = m | bit
            if up not in seen:
                seen.add(up)
                if len(seen) > cap:
                    raise CapExceededError(f"characteristic poset exceeds {cap} elements")
                stack.append(up)
    if len(seen) > cap:
        raise CapExceededError(f"characteristic poset exceeds {cap} elements")
    return seen


def char_poset(kind: Kind, ideal: MonomialIdeal, upper: MonomialIdeal | None = None, cap: int = DEFAULT_CAP) -> CharPoset:
    """Characteristic poset of S/I ("quotient"), I ("ideal") or J/I ("pair").

    For the pair kind ``ideal`` is I and ``upper`` is J; I must lie in J.
    """
    if kind == "quotient":
        if ideal.is_unit:
            return CharPoset(ideal.n, (), kind)
        cx = independence_complex(ideal, max_faces=cap)
        return CharPoset(ideal.n, tuple(cx.faces), kind)
    if kind == "ideal":
        return CharPoset(ideal.n, tuple(_upset(ideal.n, ideal.gens, cap)), kind)
    if kind == "pair":
        if upper is None:
            raise InvalidInputError("pair kind needs the larger ideal J")
        if upper.n != ideal.n or not ideal.issubideal(upper):
            raise InvalidInputError("pair kind needs I contained in J")
        elems = [s for s in _upset(upper.n, upper.gens, cap) if not ideal.contains_mask(s)]
        return CharPoset(ideal.n, tuple(elems), kind)
    raise InvalidInputError(f"unknown poset kind {kind!r}")


@dataclass(frozen=True)
class IntervalPartition:
    intervals: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "intervals", tuple(sorted(self.intervals, key=lambda ab: (_key(ab[0]), _key(ab[1]))))
        )

    @property
    def value(self) -> int | None:
        if not self.intervals:
            return None
        return min(b.bit_count() for _, b in self.intervals)

    def to_list(self) -> list[dict[str, list[int]]]:
        return [{"A": list(indices_of(a)), "B": list(indices_of(b))} for a, b in self.intervals]

    def to_json(self) -> str:
        return json.dumps(self.to_list(), separators=(",", ":"))

    @classmethod
    def from_list(cls, data: list[dict]) -> "IntervalPartition":
        try:
            return cls(tuple((mask_of(d["A"]), mask_of(d["B"])) for d in data))
        except (KeyError, TypeError) as exc:
            raise InvalidInputError(f"malformed interval list: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> "IntervalPartition":
        return cls.from_list(json.loads(text))


@dataclass(frozen=True)
class SdepthResult:
    value: int
    certificate: IntervalPartition
    method: str
    found_by: str = ""
    refuted: tuple[tuple[int, str], ...] = ()


def validate_partition(poset: CharPoset, partition: IntervalPartition) -> bool:
    """True iff the intervals lie in the poset, are disjoint, and cover it."""
    seen: set[int] = set()
    elems = poset.element_set
    for a, b in partition.intervals:
        if a & ~b:
            return False
        for s in _interval(a, b):
            if s not in elems or s in seen:
                return False
            seen.add(s)
    return len(seen) == len(elems)


def level_counts(masks: Iterable[int], top: int) -> list[int]:
    counts = [0] * (top + 1)
    for m in masks:
        s = m.bit_count()
        if s <= top:
            counts[s] += 1
    return counts


def counting_feasible(counts: list[int], d: int) -> bool:
    """Necessary condition for covering all sets of size < d with top-d intervals.

    With b_i intervals whose bottom has size i, level j < d holds
    sum_i b_i * C(d-i, j-i) sets, which determines every b_i; they must be
    non-negative and their total cannot exceed the sets available at level d.
    """
    bottoms: list[int] = []
    for j in range(d):
        b = counts[j] - sum(bi * comb(d - i, j - i) for i, bi in enumerate(bottoms))
        if b < 0:
            return False
        bottoms.append(b)
    return sum(bottoms) <= counts[d]


class _Cover:
    """Search for a partition of the sets below level d into top-d intervals."""

    def __init__(self, poset: CharPoset, d: int):
        self.d = d
        lower = [e for e in poset.elements if e.bit_count() < d]
        tops = [e for e in poset.elements if e.bit_count() == d]
        self.local = lower + tops
        self.pos = {e: j for j, e in enumerate(self.local)}
        self.n_lower = len(lower)
        self.lower_all = (1 << len(lower)) - 1
        self.level_masks = [0] * (d + 1)
        for j, e in enumerate(self.local):
            self.level_masks[e.bit_count()] |= 1 << j
        top_keys = sorted(tops, key=indices_of)
        elems = poset.element_set
        # candidate (top, interval-mask) pairs per lower element, lexicographic tops first
        self.options: list[list[tuple[int, int]]] = []
        for e in lower:
            opts = []
            for b in top_keys:
                if e & ~b:
                    continue
                members = list(_interval(e, b))
                if all(s in elems for s in members):
                    im = 0
                    for s in members:
                        im |= 1 << self.pos[s]
                    opts.append((b, im))
            self.options.append(opts)
        self.nodes = 0

    def lp_refutes(self, covered: int = 0) -> bool:
        """Exactly verified LP refutation of the residual problem."""
        keep = [j for j in range(len(self.local)) if not covered >> j & 1]
        remap = {j: r for r, j in enumerate(keep)}
        n_exact = sum(1 for j in keep if j < self.n_lower)
        opts = []
        for j in keep:
            if j >= self.n_lower:
                break
            for _, im in self.options[j]:
                if im & covered:
                    continue
                new = 0
                m = im
                while m:
                    bit = m & -m
                    m ^= bit
                    new |= 1 << remap[bit.bit_length() - 1]
                opts.append(new)
        return refute_cover(opts, len(keep), n_exact) is not None

    def _counts_ok(self, covered: int) -> bool:
        counts = [(lm & ~covered).bit_count() for lm in self.level_masks]
        return counting_feasible(counts, self.d)

    def _branch(self, covered: int) -> tuple[int, list[tuple[int, int]]] | None:
        uncovered = self.lower_all & ~covered
        level = None
        for j, lm in enumerate(self.level_masks[: self.d]):
            if lm & uncovered:
                level = j
                break
        pick, best = -1, None
        pool = self.level_masks[level] & uncovered
        while pool:
            bit = pool & -pool
            pool ^= bit
            j = bit.bit_length() - 1
            live = [(b, im) for b, im in self.options[j] if not im & covered]
            if best is None or len(live) < len(best):
                pick, best = j, live
                if not live:
                    break
        return pick, best

    def run(self, budget: int | None = None) -> list[tuple[int, int]] | None:
        """A cover, or None once the search space is exhausted.

        Raises _BudgetSpent after ``budget`` node expansions.
        """
        if self.lower_all == 0:
            return []
        failed: set[int] = set()
        # frame: (covered set before the choice, element index, untried options);
        # chosen[i] is the interval currently picked by frame i
        stack: list[tuple[int, int, list[tuple[int, int]]]] = []
        chosen: list[tuple[int, int]] = []

        def expand(cov: int) -> None:
            if cov in failed or not self._counts_ok(cov):
                return
            j, opts = self._branch(cov)
            if not opts:
                failed.add(cov)
                return
            stack.append((cov, j, list(reversed(opts))))

        expand(0)
        while stack:
            self.nodes += 1
            if budget is not None and self.nodes > budget:
                raise _BudgetSpent
            cov, j, opts = stack[-1]
            if len(chosen) == len(stack):
                chosen.pop()
            if not opts:
                failed.add(cov)
                stack.pop()
                continue
            b, im = opts.pop()
            chosen.append((self.local[j], b))
            new = cov | im
            if new & self.lower_all == self.lower_all:
                return chosen
            expand(new)
        return None

    def milp(self, time_limit: float) -> list[tuple[int, int]] | None:
        flat = [(self.local[j], b, im) for j in range(self.n_lower) for b, im in self.options[j]]
        picked = solve_cover([im for _, _, im in flat], len(self.local), self.n_lower, time_limit)
        if picked is False:
            raise CapExceededError(f"MILP hit its {time_limit}s limit at target {self.d}")
        if picked is None:
            return None
        return [(a, b) for a, b, _ in (flat[o] for o in picked)]


class _BudgetSpent(Exception):
    pass


def _complete(poset: CharPoset, intervals: list[tuple[int, int]]) -> IntervalPartition:
    used = set()
    for a, b in intervals:
        used.update(_interval(a, b))
    rest = [(e, e) for e in poset.elements if e not in used]
    return IntervalPartition(tuple(intervals) + tuple(rest))


def decide_target(
    poset: CharPoset, d: int, node_budget: int = SEARCH_BUDGET, time_limit: float = MILP_TIME_LIMIT
) -> tuple[IntervalPartition | None, str]:
    """Decide whether some partition reaches d; returns (partition or None, how).

    Stages: level counting, an exactly verified LP refutation, a budgeted
    branch-and-bound, then the MILP solver.  Any partition returned has
    been validated; ``how`` says which stage settled the question.
    """
    if not counting_feasible(level_counts(poset.elements, d), d):
        return None, "counting"
    cover = _Cover(poset, d)
    if cover.lp_refutes():
        return None, "lp"
    try:
        found = cover.run(node_budget)
        how = "search"
    except _BudgetSpent:
        found = cover.milp(time_limit)
        how = "milp"
    if found is None:
        return None, how
    part = _complete(poset, found)
    if not validate_partition(poset, part) or part.value < d:
        raise AssertionError(f"{how} produced an invalid partition at target {d}")
    return part, how


def sdepth_upper_bound(poset: CharPoset) -> int:
    """min |M| over maximal elements M; each must top its own interval."""
    return min(m.bit_count() for m in poset.maximal_elements)


def sdepth_exact(poset: CharPoset, cap: int = DEFAULT_CAP, node_budget: int = SEARCH_BUDGET) -> SdepthResult:
    """Optimal interval partition by a descending scan over the target d.

    ``found_by`` names the stage that produced the certificate and
    ``refuted`` lists, for each target above the answer, the stage that
    ruled it out.
    """
    if not poset.elements:
        raise DegenerateError("empty characteristic poset: the module is zero")
    if len(poset) > cap:
        raise CapExceededError(f"poset has {len(poset)} elements, cap is {cap}")
    lo = poset.elements[0].bit_count()
    hi = sdepth_upper_bound(poset)
    refuted = []
    for d in range(hi, lo - 1, -1):
        part, how = decide_target(poset, d, node_budget)
        if part is not None:
            return SdepthResult(part.value, part, "branch-and-bound", how, tuple(refuted))
        refuted.append((d, how))
    raise AssertionError("unreachable: the singleton partition always has value >= min size")


def sdepth_oracle(poset: CharPoset, max_elements: int = ORACLE_CAP) -> SdepthResult:
    """sdepth by exhaustive enumeration of all interval partitions.

    Memoised on the set of still-uncovered elements; the only pruning is
    dropping intervals that leave the poset or hit a covered element.
    """
    if not poset.elements:
        raise DegenerateError("empty characteristic poset: the module is zero")
    if len(poset) > max_elements:
        raise CapExceededError(f"oracle limited to {max_elements} elements, got {len(poset)}")
    elems = list(poset.elements)
    pos = {e: j for j, e in enumerate(elems)}
    below = [[a for a in elems if a & ~e == 0] for e in elems]
    above = [[b for b in elems if e & ~b == 0] for e in elems]
    memo: dict[int, tuple[int, tuple[tuple[int, int], ...]]] = {}
    inf = poset.n + 1

    def best(state: int) -> tuple[int, tuple[tuple[int, int], ...]]:
        if state == 0:
            return inf, ()
        if state in memo:
            return memo[state]
        low = state & -state
        j = low.bit_length() - 1
        result = (-1, ())
        for a in below[j]:
            if not state >> pos[a] & 1:
                continue
            for b in above[j]:
                if a & ~b:
                    continue
                im = 0
                for s in _interval(a, b):
                    p = pos.get(s)
                    if p is None or not state >> p & 1:
                        im = -1
                        break
                    im |= 1 << p
                if im < 0:
                    continue
                sub_value, sub_parts = best(state & ~im)
                value = min(b.bit_count(), sub_value)
                if value > result[0]:
                    result = (value, ((a, b),) + sub_parts)
        memo[state] = result
        return result

    value, parts = best((1 << len(elems)) - 1)
    return SdepthResult(value, IntervalPartition(parts), "oracle", "oracle")
