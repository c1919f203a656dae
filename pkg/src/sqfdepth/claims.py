"""Replays the closed forms, bounds and ideal identities for the path and
cycle power families over a parameter grid.

Each check is a ``ClaimCheck``.  A check is only emitted for parameters
inside the hypothesis of the statement it tests; an instance that exceeds
a size cap is reported as skipped, never dropped.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Sequence

from .cache import Calculator
from .errors import CapExceededError
from .graphs import (
    edge_ideal,
    f_exponent,
    is_maximal_independent,
    path_power,
    prime_A,
    prime_B,
    prime_D,
)
from .ideal import (
    MonomialIdeal,
    VariableRenaming,
    add_primes,
    colon_by_variable,
    ideal_sum,
    ideals_isomorphic,
    indices_of,
    variable_ideal,
)
from .invariants import family_graph, family_ideal
from .sdepth import IntervalPartition, char_poset, validate_partition

DEPTH_N_MAX = 12
SDEPTH_N_MAX = 10
LEMMA_N_MAX = 14
K_MAX = 4


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True)
class Expected:
    kind: str  # eq, ge, le, range, bool
    lo: int | None = None
    hi: int | None = None

    @classmethod
    def eq(cls, v: int) -> "Expected":
        return cls("eq", v, v)

    @classmethod
    def ge(cls, v: int) -> "Expected":
        return cls("ge", v, None)

    @classmethod
    def le(cls, v: int) -> "Expected":
        return cls("le", None, v)

    @classmethod
    def between(cls, lo: int, hi: int) -> "Expected":
        return cls("range", lo, hi)

    @classmethod
    def true(cls) -> "Expected":
        return cls("bool")

    def holds(self, observed) -> bool:
        if self.kind == "bool":
            return observed is True
        if isinstance(observed, bool) or not isinstance(observed, int):
            return False
        if self.lo is not None and observed < self.lo:
            return False
        if self.hi is not None and observed > self.hi:
            return False
        return True

    def __str__(self) -> str:
        if self.kind == "eq":
            return f"={self.lo}"
        if self.kind == "ge":
            return f">={self.lo}"
        if self.kind == "le":
            return f"<={self.hi}"
        if self.kind == "range":
            return f"in[{self.lo},{self.hi}]"
        return "true"


@dataclass(frozen=True)
class ClaimCheck:
    claim_id: str
    n: int
    k: int
    i: int | None
    expected: Expected
    observed: object
    status: str  # pass, fail, skipped
    reason: str = ""

    def sort_key(self) -> tuple:
        return (self.claim_id, self.n, self.k, -1 if self.i is None else self.i)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["expected"] = {k: v for k, v in asdict(self.expected).items() if v is not None}
        return d


@dataclass
class PendingClaim:
    claim_id: str
    n: int
    k: int
    i: int | None
    expected: Expected
    observe: Callable[[], object] = field(repr=False)

    def run(self) -> ClaimCheck:
        try:
            obs = self.observe()
        except CapExceededError as exc:
            return ClaimCheck(self.claim_id, self.n, self.k, self.i, self.expected, None, "skipped", str(exc))
        status = "pass" if self.expected.holds(obs) else "fail"
        return ClaimCheck(self.claim_id, self.n, self.k, self.i, self.expected, obs, status)


def claim_selected(claim_id: str, selectors: Sequence[str] | None) -> bool:
    """A selector matches its own id and every id extending it by '-...'."""
    if not selectors:
        return True
    return any(claim_id == s or claim_id.startswith(s + "-") for s in selectors)


def _run(pending: Iterable[PendingClaim], selectors: Sequence[str] | None) -> list[ClaimCheck]:
    out = [p.run() for p in pending if claim_selected(p.claim_id, selectors)]
    return sorted(out, key=ClaimCheck.sort_key)


def _congruence_window(n: int, k: int) -> Expected:
    """Value pattern for the cycle family: exact or the two-point window."""
    c = ceil_div(n, 2 * k + 1)
    if n <= 2 * k + 1:
        return Expected.eq(1)
    r = n % (2 * k + 1)
    if r == 0 or r >= k + 1:
        return Expected.eq(c)
    return Expected.between(c - 1, c)


# -- closed forms for the path family -------------------------------------


def _path_pending(n_range, k_range, calc: Calculator, sdepth_n_max: int | None) -> list[PendingClaim]:
    out = []
    for n in n_range:
        if n < 2:
            continue
        for k in k_range:
            c = ceil_div(n, 2 * k + 1)
            out.append(PendingClaim("path-depth", n, k, None, Expected.eq(c), lambda n=n, k=k: calc.value("depth-quotient", "path", n, k)))
            if sdepth_n_max is not None and n > sdepth_n_max:
                continue
            out.append(PendingClaim("path-sdepth", n, k, None, Expected.eq(c), lambda n=n, k=k: calc.value("sdepth-quotient", "path", n, k)))
            out.append(
                PendingClaim(
                    "path-equality",
                    n,
                    k,
                    None,
                    Expected.true(),
                    lambda n=n, k=k: calc.value("depth-quotient", "path", n, k) == calc.value("sdepth-quotient", "path", n, k),
                )
            )
    return out


def verify_path_theorems(
    n_range: Iterable[int], k_range: Iterable[int], calc: Calculator | None = None, claims=None, sdepth_n_max: int | None = None
) -> list[ClaimCheck]:
    """depth(S/I(P_n^k)) = sdepth(S/I(P_n^k)) = ceil(n/(2k+1))."""
    calc = calc or Calculator()
    return _run(_path_pending(list(n_range), list(k_range), calc, sdepth_n_max), claims)


# -- cycle family ---------------------------------------------------------


def _cycle_pending(n_range, k_range, calc: Calculator, sdepth_n_max: int | None) -> list[PendingClaim]:
    out = []
    for n in n_range:
        if n < 3:
            continue
        for k in k_range:
            window = _congruence_window(n, k)
            lower = ceil_div(n - k, 2 * k + 1)
            with_sdepth = sdepth_n_max is None or n <= sdepth_n_max
            out.append(PendingClaim("cycle-depth", n, k, None, window, lambda n=n, k=k: calc.value("depth-quotient", "cycle", n, k)))
            if with_sdepth:
                out.append(PendingClaim("cycle-sdepth", n, k, None, window, lambda n=n, k=k: calc.value("sdepth-quotient", "cycle", n, k)))
            if n >= 2 * k + 2:
                out.append(
                    PendingClaim("cycle-depth-lower", n, k, None, Expected.ge(lower), lambda n=n, k=k: calc.value("depth-quotient", "cycle", n, k))
                )
                if with_sdepth:
                    out.append(
                        PendingClaim(
                            "cycle-sdepth-lower", n, k, None, Expected.ge(lower), lambda n=n, k=k: calc.value("sdepth-quotient", "cycle", n, k)
                        )
                    )
    return out


def verify_cycle_results(
    n_range: Iterable[int], k_range: Iterable[int], calc: Calculator | None = None, claims=None, sdepth_n_max: int | None = None
) -> list[ClaimCheck]:
    """Congruence-case values and lower bounds for S/I(C_n^k)."""
    calc = calc or Calculator()
    return _run(_cycle_pending(list(n_range), list(k_range), calc, sdepth_n_max), claims)


# -- ideals, the pair module and the Herzog inequality ---------------------


def pair_partition(n: int, k: int) -> IntervalPartition:
    """Intervals [x_j x_{n+1-s}, x_j x_{j+k+1} x_{n+1-s}] plus singletons for the rest.

    Meant for k >= 2 and 3k+2 <= n <= 4k+1.
    """
    poset = char_poset("pair", family_ideal("path", n, k), family_ideal("cycle", n, k))
    intervals = []
    used = set()
    for s in range(1, k + 1):
        for j in range(1, k + 2 - s):
            a = (1 << (j - 1)) | (1 << (n - s))
            b = a | (1 << (j + k))
            intervals.append((a, b))
            used.update((a, b))
    rest = [(e, e) for e in poset.elements if e not in used]
    return IntervalPartition(tuple(intervals) + tuple(rest))


def _pair_decomposition_ok(n: int, k: int) -> bool:
    poset = char_poset("pair", family_ideal("path", n, k), family_ideal("cycle", n, k))
    part = pair_partition(n, k)
    singles_ok = all(a.bit_count() >= 3 for a, b in part.intervals if a == b)
    return singles_ok and validate_partition(poset, part) and part.value >= 3


def _ideal_pending(n_range, k_range, calc: Calculator) -> list[PendingClaim]:
    out = []
    for n in n_range:
        for k in k_range:
            if n >= 2:
                c = ceil_div(n, 2 * k + 1)
                out.append(
                    PendingClaim("path-ideal-sdepth", n, k, None, Expected.ge(c + 1), lambda n=n, k=k: calc.value("sdepth-ideal", "path", n, k))
                )
                out.append(
                    PendingClaim(
                        "herzog-path",
                        n,
                        k,
                        None,
                        Expected.true(),
                        lambda n=n, k=k: calc.value("sdepth-ideal", "path", n, k) >= calc.value("sdepth-quotient", "path", n, k),
                    )
                )
            if n < 3:
                continue
            bound = 2 if n <= 2 * k + 1 else ceil_div(n - k, 2 * k + 1) + 1
            out.append(PendingClaim("cycle-ideal-sdepth", n, k, None, Expected.ge(bound), lambda n=n, k=k: calc.value("sdepth-ideal", "cycle", n, k)))
            out.append(
                PendingClaim(
                    "herzog-cycle",
                    n,
                    k,
                    None,
                    Expected.true(),
                    lambda n=n, k=k: calc.value("sdepth-ideal", "cycle", n, k) >= calc.value("sdepth-quotient", "cycle", n, k),
                )
            )
            # the gap between sdepth(I) and sdepth(S/I) by congruence class
            r = n % (2 * k + 1)
            gap = 1 if n <= 2 * k + 1 or r == 0 or r >= k + 1 else 0
            out.append(
                PendingClaim(
                    "cycle-ideal-gap",
                    n,
                    k,
                    None,
                    Expected.true(),
                    lambda n=n, k=k, gap=gap: calc.value("sdepth-ideal", "cycle", n, k) >= calc.value("sdepth-quotient", "cycle", n, k) + gap,
                )
            )
            if n >= 2 * k + 1:
                out.append(
                    PendingClaim(
                        "pair-sdepth",
                        n,
                        k,
                        None,
                        Expected.ge(ceil_div(n + k + 1, 2 * k + 1)),
                        lambda n=n, k=k: calc.value("sdepth-pair", "cycle-vs-path", n, k),
                    )
                )
    return out


def verify_ideal_bounds(n_range: Iterable[int], k_range: Iterable[int], calc: Calculator | None = None, claims=None) -> list[ClaimCheck]:
    """Lower bounds for sdepth of I(P_n^k), I(C_n^k) and I(C_n^k)/I(P_n^k)."""
    calc = calc or Calculator()
    return _run(_ideal_pending(list(n_range), list(k_range), calc), claims)


# -- ideal identities -----------------------------------------------------


def _a_vars(n: int, k: int, i: int) -> list[int]:
    return indices_of(prime_A(n, k, i).support) if i >= 0 else []


def _path_in(n: int, m: int, k: int) -> MonomialIdeal:
    """I(P_m^k) on x_1..x_m inside n variables."""
    return edge_ideal(path_power(m, k), n) if m >= 2 else MonomialIdeal(n, ())


def _is_free(ideal: MonomialIdeal, var: int) -> bool:
    return not ideal.support >> (var - 1) & 1


def path_quotient_identity(n: int, k: int) -> bool:
    """(I(P_n^k), A_{n-1}) = (I(P_{n-k-1}^k), A_{n-1}) with x_n free."""
    a = _a_vars(n, k, k - 1)
    lhs = add_primes(family_ideal("path", n, k), a)
    rhs = add_primes(_path_in(n, n - k - 1, k), a)
    return lhs == rhs and _is_free(lhs, n)


def path_colon_identity(n: int, k: int, i: int, with_a: bool) -> bool:
    """(I(P_n^k) [+ A_{n-k+i-1}] : x_{n-k+i}) = (I(P_{n-2k-1+i}^k), B_{n-k+i})."""
    base = family_ideal("path", n, k)
    if with_a:
        base = add_primes(base, _a_vars(n, k, i - 1))
    lhs = colon_by_variable(base, n - k + i)
    rhs = ideal_sum(_path_in(n, n - 2 * k - 1 + i, k), prime_B(n, k, i))
    return lhs == rhs and _is_free(lhs, n - k + i)


def path_small_colon_identity(n: int, k: int, i: int) -> bool:
    """Colon identities for 2k+2 <= n <= 3k+1."""
    c = n - k + i
    lhs = colon_by_variable(family_ideal("path", n, k), c)
    if n == 2 * k + 2:
        rhs = variable_ideal(n, list(range(2, n - k)) + list(range(n - k + 1, n + 1)))
        return lhs == rhs
    with_a = colon_by_variable(add_primes(family_ideal("path", n, k), _a_vars(n, k, i - 1)), c)
    m = n - 2 * k - 1 + i
    rhs = ideal_sum(_path_in(n, m, f_exponent(n, k, i)), prime_B(n, k, i))
    return lhs == with_a == rhs and _is_free(lhs, c)


def cycle_quotient_renaming(n: int, k: int) -> VariableRenaming:
    """x_j -> x_{n-k-j} for j < n-k, and x_n -> x_{n-k}."""
    pairs = {j: n - k - j for j in range(1, n - k)}
    pairs[n] = n - k
    return VariableRenaming.from_mapping(pairs)


def cycle_quotient_identity(n: int, k: int) -> bool:
    """Modulo A_{n-1}, I(C_n^k) is I(P_{n-k}^k) after renaming the survivors."""
    a = _a_vars(n, k, k - 1)
    whole = add_primes(family_ideal("cycle", n, k), a)
    a_mask = prime_A(n, k, k - 1).support
    rest = MonomialIdeal(n, tuple(g for g in whole.gens if g & a_mask == 0))
    if set(whole.gens) - set(rest.gens) != {1 << (v - 1) for v in a}:
        return False
    return ideals_isomorphic(rest, family_ideal("path", n - k, k), cycle_quotient_renaming(n, k))


def cycle_colon_identity(n: int, k: int, i: int, with_a: bool) -> bool:
    """(I(C_n^k) [+ A] : x_{n-k+i}) = (E, D_{n-k+i}), E the path on x_{i+1}..x_{n-2k-1+i}."""
    base = family_ideal("cycle", n, k)
    if with_a:
        base = add_primes(base, _a_vars(n, k, i - 1))
    lhs = colon_by_variable(base, n - k + i)
    m = n - 2 * k - 1
    shift = VariableRenaming.shift(range(1, m + 1), i)
    e = MonomialIdeal(n, tuple(shift.apply_mask(g) for g in family_ideal("path", m, k).gens))
    return lhs == ideal_sum(e, prime_D(n, k, i)) and _is_free(lhs, n - k + i)


def _lemma_pending(n_range, k_range) -> list[PendingClaim]:
    out = []
    t = Expected.true()
    for n in n_range:
        for k in k_range:
            if k < 2:
                continue
            if n >= 2 * k + 2:
                out.append(PendingClaim("path-quotient-A", n, k, None, t, lambda n=n, k=k: path_quotient_identity(n, k)))
            if 2 * k + 2 <= n <= 3 * k + 1:
                idx = [0] if n == 2 * k + 2 else range(k)
                for i in idx:
                    out.append(PendingClaim("path-colon-small", n, k, i, t, lambda n=n, k=k, i=i: path_small_colon_identity(n, k, i)))
            if 3 * k + 2 <= n <= 4 * k + 1:
                out.append(PendingClaim("pair-decomposition", n, k, None, t, lambda n=n, k=k: _pair_decomposition_ok(n, k)))
            if n < 3 * k + 2:
                continue
            out.append(PendingClaim("cycle-quotient-A", n, k, None, t, lambda n=n, k=k: cycle_quotient_identity(n, k)))
            for i in range(k):
                out.append(PendingClaim("path-colon", n, k, i, t, lambda n=n, k=k, i=i: path_colon_identity(n, k, i, False)))
                out.append(PendingClaim("path-colon-A", n, k, i, t, lambda n=n, k=k, i=i: path_colon_identity(n, k, i, True)))
                out.append(PendingClaim("cycle-colon", n, k, i, t, lambda n=n, k=k, i=i: cycle_colon_identity(n, k, i, False)))
                out.append(PendingClaim("cycle-colon-A", n, k, i, t, lambda n=n, k=k, i=i: cycle_colon_identity(n, k, i, True)))
    return out


def verify_structural_lemmas(n_range: Iterable[int], k_range: Iterable[int], claims=None) -> list[ClaimCheck]:
    """Quotient and colon identities as generator-set equalities."""
    return _run(_lemma_pending(list(n_range), list(k_range)), claims)


# -- witnesses and generator counts ---------------------------------------


def path_witness(n: int, k: int) -> list[int]:
    """Maximal independent set of size ceil(n/(2k+1)) in P_n^k, n >= 2k+2."""
    step = 2 * k + 1
    l, r = divmod(n, step)
    if r == 0:
        return [step * j + k + 1 for j in range(l)]
    if r <= k + 1:
        return [step * j + k + 1 for j in range(l)] + [n]
    return [step * j + k + 1 for j in range(l + 1)]


def _witness_ok(n: int, k: int) -> bool:
    v = path_witness(n, k)
    return len(v) == ceil_div(n, 2 * k + 1) and is_maximal_independent(family_graph("path", n, k), v)


def _witness_pending(n_range, k_range, calc: Calculator, sdepth_n_max: int | None) -> list[PendingClaim]:
    out = []
    for n in n_range:
        for k in k_range:
            if n >= 2:
                c = ceil_div(n, 2 * k + 1)
                out.append(PendingClaim("path-mmis", n, k, None, Expected.eq(c), lambda n=n, k=k: calc.value("mmis", "path", n, k)))
                if n >= k + 1:
                    g = n * k - k * (k + 1) // 2
                    out.append(
                        PendingClaim("path-gens-count", n, k, None, Expected.eq(g), lambda n=n, k=k: len(family_ideal("path", n, k).gens))
                    )
            if n >= 2 * k + 2:
                out.append(PendingClaim("path-witness", n, k, None, Expected.true(), lambda n=n, k=k: _witness_ok(n, k)))
            if n >= 3 and n >= 2 * k + 1:
                out.append(
                    PendingClaim("cycle-gens-count", n, k, None, Expected.eq(n * k), lambda n=n, k=k: len(family_ideal("cycle", n, k).gens))
                )
            if sdepth_n_max is not None and n > sdepth_n_max:
                continue
            for fam in ("path", "cycle"):
                if n < (2 if fam == "path" else 3):
                    continue
                out.append(
                    PendingClaim(
                        f"mmis-bound-{fam}",
                        n,
                        k,
                        None,
                        Expected.true(),
                        lambda n=n, k=k, fam=fam: max(calc.value("sdepth-quotient", fam, n, k), calc.value("depth-quotient", fam, n, k))
                        <= calc.value("mmis", fam, n, k),
                    )
                )
    return out


def witness_upper_bounds(
    n_range: Iterable[int], k_range: Iterable[int], calc: Calculator | None = None, claims=None, sdepth_n_max: int | None = None
) -> list[ClaimCheck]:
    """Explicit witnesses, minimum maximal independent sets and the bounds they give."""
    calc = calc or Calculator()
    return _run(_witness_pending(list(n_range), list(k_range), calc, sdepth_n_max), claims)


CLAIM_IDS = (
    "cycle-colon",
    "cycle-colon-A",
    "cycle-depth",
    "cycle-depth-lower",
    "cycle-gens-count",
    "cycle-ideal-gap",
    "cycle-ideal-sdepth",
    "cycle-quotient-A",
    "cycle-sdepth",
    "cycle-sdepth-lower",
    "herzog-cycle",
    "herzog-path",
    "mmis-bound-cycle",
    "mmis-bound-path",
    "pair-decomposition",
    "pair-sdepth",
    "path-colon",
    "path-colon-A",
    "path-colon-small",
    "path-depth",
    "path-equality",
    "path-gens-count",
    "path-ideal-sdepth",
    "path-mmis",
    "path-quotient-A",
    "path-sdepth",
    "path-witness",
)


def run_verification(
    n_max: int | None = None, k_max: int = K_MAX, claims: Sequence[str] | None = None, calc: Calculator | None = None
) -> list[ClaimCheck]:
    """All claims on the default grids, or on n <= n_max for everything."""
    calc = calc or Calculator()
    ks = range(1, k_max + 1)
    depth_n = range(2, (n_max or DEPTH_N_MAX) + 1)
    sdepth_n = range(2, (n_max or SDEPTH_N_MAX) + 1)
    lemma_n = range(2, (n_max or LEMMA_N_MAX) + 1)
    cap = None if n_max else SDEPTH_N_MAX
    pending = (
        _path_pending(depth_n, ks, calc, cap)
        + _cycle_pending(depth_n, ks, calc, cap)
        + _ideal_pending(sdepth_n, ks, calc)
        + _lemma_pending(lemma_n, ks)
        + _witness_pending(lemma_n, ks, calc, cap)
    )
    return _run(pending, claims)


def summarize(checks: Iterable[ClaimCheck]) -> dict[str, int]:
    counts = {"pass": 0, "fail": 0, "skipped": 0}
    for c in checks:
        counts[c.status] += 1
    return counts


def report_json(checks: Sequence[ClaimCheck]) -> str:
    body = {"summary": summarize(checks), "checks": [c.to_dict() for c in checks]}
    return json.dumps(body, indent=1, sort_keys=True) + "\n"


def report_csv(checks: Sequence[ClaimCheck]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["claim_id", "n", "k", "i", "expected", "observed", "status"])
    for c in checks:
        w.writerow([c.claim_id, c.n, c.k, "" if c.i is None else c.i, str(c.expected), c.observed, c.status])
    return buf.getvalue()


def report_table(checks: Sequence[ClaimCheck]) -> str:
    """Per claim: rows n, columns k, each cell the observed value and its expectation."""
    lines = []
    by_claim: dict[str, list[ClaimCheck]] = {}
    for c in checks:
        by_claim.setdefault(c.claim_id, []).append(c)
    for cid in sorted(by_claim):
        rows = by_claim[cid]
        ks = sorted({c.k for c in rows})
        lines.append(f"{cid}")
        lines.append("n\\k " + "".join(f"{k:>16}" for k in ks))
        cells: dict[tuple[int, int], list[str]] = {}
        for c in rows:
            mark = {"pass": "", "fail": "!", "skipped": "?"}[c.status]
            obs = "T" if c.observed is True else "F" if c.observed is False else c.observed
            text = f"{obs}{'' if c.expected.kind == 'bool' else str(c.expected)}{mark}"
            cells.setdefault((c.n, c.k), []).append(text)
        for n in sorted({c.n for c in rows}):
            lines.append(f"{n:<4}" + "".join(f"{','.join(cells.get((n, k), ['.'])):>16}" for k in ks))
        lines.append("")
    s = summarize(checks)
    lines.append(f"pass {s['pass']}  fail {s['fail']}  skipped {s['skipped']}")
    return "\n".join(lines) + "\n"
