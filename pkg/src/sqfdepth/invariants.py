"""Named invariants of the path/cycle families, with checkable certificates.

Every invariant comes back with a JSON-able certificate:

* depth: ``{"pd": p, "sigma": [...]}`` with beta_{p,sigma}(S/I) != 0, which
  proves pd >= p and so depth <= the reported value;
* sdepth: an interval partition whose value is the reported sdepth, which
  proves sdepth >= value;
* mmis: a maximal independent set of the reported size.

``check_certificate`` re-derives each of these from scratch.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .errors import InvalidInputError
from .graphs import Graph, GraphSpec, build_power_graph, edge_ideal, is_maximal_independent, min_maximal_independent_set
from .homology import betti_nonzero, pd_with_witness
from .ideal import MonomialIdeal, indices_of, mask_of
from .sdepth import DEFAULT_CAP, CharPoset, IntervalPartition, char_poset, sdepth_exact, validate_partition

INVARIANTS = ("depth-quotient", "depth-ideal", "sdepth-quotient", "sdepth-ideal", "sdepth-pair", "mmis")
PAIR_FAMILY = "cycle-vs-path"


@dataclass(frozen=True)
class InvariantValue:
    value: int
    certificate: Any


def field_name(characteristic: int) -> str:
    return "q" if characteristic == 0 else f"p:{characteristic}"


def parse_field(text: str) -> int:
    """'q' -> 0, 'p:<prime>' -> the prime."""
    from .linalg import check_characteristic

    if text == "q":
        return 0
    if text.startswith("p:"):
        try:
            p = int(text[2:])
        except ValueError:
            raise InvalidInputError(f"bad field {text!r}") from None
        check_characteristic(p)
        return p
    raise InvalidInputError(f"field must be q or p:<prime>, got {text!r}")


def family_graph(family: str, n: int, k: int) -> Graph:
    return build_power_graph(GraphSpec(family, n, k))  # type: ignore[arg-type]


def family_ideal(family: str, n: int, k: int) -> MonomialIdeal:
    return edge_ideal(family_graph(family, n, k))


def _check_family(invariant: str, family: str) -> None:
    if invariant not in INVARIANTS:
        raise InvalidInputError(f"unknown invariant {invariant!r}")
    if invariant == "sdepth-pair":
        if family != PAIR_FAMILY:
            raise InvalidInputError(f"sdepth-pair needs family {PAIR_FAMILY}")
    elif family not in ("path", "cycle"):
        raise InvalidInputError(f"family must be path or cycle for {invariant}")


def invariant_poset(invariant: str, family: str, n: int, k: int, cap: int = DEFAULT_CAP) -> CharPoset:
    _check_family(invariant, family)
    if invariant == "sdepth-pair":
        return char_poset("pair", family_ideal("path", n, k), family_ideal("cycle", n, k), cap=cap)
    if invariant == "sdepth-quotient":
        return char_poset("quotient", family_ideal(family, n, k), cap=cap)
    if invariant == "sdepth-ideal":
        return char_poset("ideal", family_ideal(family, n, k), cap=cap)
    raise InvalidInputError(f"{invariant} has no characteristic poset")


def compute_invariant(
    invariant: str, family: str, n: int, k: int, characteristic: int = 0, cap: int = DEFAULT_CAP
) -> InvariantValue:
    _check_family(invariant, family)
    if invariant.startswith("depth"):
        ideal = family_ideal(family, n, k)
        pd, sigma = pd_with_witness(ideal, characteristic)
        value = n - pd + (1 if invariant == "depth-ideal" else 0)
        return InvariantValue(value, {"pd": pd, "sigma": list(indices_of(sigma))})
    if invariant == "mmis":
        size, witness = min_maximal_independent_set(family_graph(family, n, k))
        return InvariantValue(size, sorted(witness))
    result = sdepth_exact(invariant_poset(invariant, family, n, k, cap), cap)
    return InvariantValue(result.value, result.certificate.to_list())


def check_certificate(
    invariant: str,
    family: str,
    n: int,
    k: int,
    value: int,
    certificate: Any,
    characteristic: int = 0,
    cap: int = DEFAULT_CAP,
) -> bool:
    """Re-derive what the certificate proves and compare with ``value``."""
    _check_family(invariant, family)
    try:
        if invariant.startswith("depth"):
            pd = int(certificate["pd"])
            sigma = mask_of(certificate["sigma"])
            shift = 1 if invariant == "depth-ideal" else 0
            if n - pd + shift != value or sigma >> n:
                return False
            return betti_nonzero(family_ideal(family, n, k), pd, sigma, characteristic)
        if invariant == "mmis":
            verts = [int(v) for v in certificate]
            return len(set(verts)) == value and is_maximal_independent(family_graph(family, n, k), verts)
        part = IntervalPartition.from_list(certificate)
        poset = invariant_poset(invariant, family, n, k, cap)
        return part.value == value and validate_partition(poset, part)
    except (KeyError, TypeError, ValueError):
        return False
