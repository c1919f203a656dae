"""Powers of paths and cycles, their edge ideals, and the auxiliary primes.

Vertices are 1..n.  The helper primes ``prime_A``, ``prime_B``, ``prime_D``
and ``f_exponent`` are indexed the way the induction on the last k vertices
uses them: index ``n-k+i`` for ``0 <= i <= k-1``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Literal

from .errors import InvalidInputError
from .ideal import MonomialIdeal, indices_of, mask_of, variable_ideal

Family = Literal["path", "cycle"]


@dataclass(frozen=True)
class GraphSpec:
    family: Family
    n: int
    k: int

    def __post_init__(self) -> None:
        if self.family not in ("path", "cycle"):
            raise InvalidInputError(f"unknown family {self.family!r}")
        if self.k < 1:
            raise InvalidInputError(f"power k must be >= 1, got {self.k}")
        lo = 2 if self.family == "path" else 3
        if self.n < lo:
            raise InvalidInputError(f"{self.family} needs n >= {lo}, got {self.n}")
        if self.n > 64:
            raise InvalidInputError("at most 64 vertices are supported")


@dataclass(frozen=True)
class Graph:
    """A simple graph on [n] with 1-based sorted edges."""

    n: int
    edges: frozenset[tuple[int, int]]
    spec: GraphSpec | None = None

    def __post_init__(self) -> None:
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise InvalidInputError(f"loop at vertex {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise InvalidInputError(f"edge {(u, v)} outside [1, {self.n}]")
            norm.add((min(u, v), max(u, v)))
        if not norm:
            raise InvalidInputError("edge set must be non-empty")
        object.__setattr__(self, "edges", frozenset(norm))

    def adjacency_masks(self) -> list[int]:
        """adj[v-1] is the mask of neighbours of vertex v."""
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u - 1] |= 1 << (v - 1)
            adj[v - 1] |= 1 << (u - 1)
        return adj

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def to_dict(self) -> dict:
        spec = self.spec
        return {
            "family": spec.family if spec else None,
            "n": self.n,
            "k": spec.k if spec else None,
            "edges": [list(e) for e in self.sorted_edges()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> "Graph":
        spec = None
        if data.get("family") is not None:
            spec = GraphSpec(data["family"], data["n"], data["k"])
        return cls(data["n"], frozenset(tuple(e) for e in data["edges"]), spec)


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)))


def build_power_graph(spec: GraphSpec) -> Graph:
    n, k = spec.n, spec.k
    edges = set()
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            d = j - i
            if d <= k or (spec.family == "cycle" and d >= n - k):
                edges.add((i, j))
    return Graph(n, frozenset(edges), spec)


def path_power(n: int, k: int) -> Graph:
    return build_power_graph(GraphSpec("path", n, k))


def cycle_power(n: int, k: int) -> Graph:
    return build_power_graph(GraphSpec("cycle", n, k))


def edge_ideal(g: Graph, n: int | None = None) -> MonomialIdeal:
    """I(G) = (x_i x_j : ij in E(G)), optionally inside a larger ring."""
    ambient = g.n if n is None else n
    return MonomialIdeal(ambient, tuple(mask_of(e) for e in g.edges))


def neighborhood(g: Graph, i: int) -> frozenset[int]:
    if not 1 <= i <= g.n:
        raise InvalidInputError(f"vertex {i} not in [1, {g.n}]")
    return frozenset(indices_of(g.adjacency_masks()[i - 1]))


def _check_prime_range(n: int, k: int, i: int, lo: int = 0) -> None:
    if k < 2:
        raise InvalidInputError("auxiliary primes need k >= 2")
    if n < 2 * k + 2:
        raise InvalidInputError(f"auxiliary primes need n >= 2k+2, got n={n}, k={k}")
    if not lo <= i <= k - 1:
        raise InvalidInputError(f"index i={i} outside {lo}..{k - 1}")


def prime_A(n: int, k: int, i: int) -> MonomialIdeal:
    """A_{n-k+i} = (x_{n-k}, ..., x_{n-k+i}); i = -1 gives the zero ideal."""
    _check_prime_range(n, k, i, lo=-1)
    return variable_ideal(n, range(n - k, n - k + i + 1))


def prime_B(n: int, k: int, i: int) -> MonomialIdeal:
    """B_{n-k+i}: the neighbours of x_{n-k+i} in P_n^k."""
    _check_prime_range(n, k, i)
    c = n - k + i
    return variable_ideal(n, [j for j in range(n - 2 * k + i, n + 1) if j != c])


def prime_D(n: int, k: int, i: int) -> MonomialIdeal:
    """D_{n-k+i}: the neighbours of x_{n-k+i} in C_n^k."""
    _check_prime_range(n, k, i)
    c = n - k + i
    variables = [j for j in range(n - 2 * k + i, n + 1) if j != c]
    variables += range(1, i + 1)
    return variable_ideal(n, variables)


def f_exponent(n: int, k: int, i: int) -> int:
    """Power used for the reduced path after coloning by x_{n-k+i}.

    Defined for k >= 2, 0 <= i <= k-1, 2k+2 <= n <= 3k+1 and only where
    one of its two branches applies.
    """
    if k < 2 or not 0 <= i <= k - 1 or not 2 * k + 2 <= n <= 3 * k + 1:
        raise InvalidInputError(f"f undefined at n={n}, k={k}, i={i}")
    m = n - 2 * k - 1 + i
    if m >= k + 1:
        return k
    if 2 <= m < k + 1:
        return n - 2 * k - 2 + i
    raise InvalidInputError(f"f undefined at n={n}, k={k}, i={i}: n-2k-1+i = {m} < 2")


def is_maximal_independent(g: Graph, vertices: Iterable[int]) -> bool:
    """Independent and dominating."""
    adj = g.adjacency_masks()
    s = mask_of(vertices)
    full = (1 << g.n) - 1
    dominated = s
    for v in indices_of(s):
        if adj[v - 1] & s:
            return False
        dominated |= adj[v - 1]
    return dominated == full


def min_maximal_independent_set(g: Graph) -> tuple[int, frozenset[int]]:
    """Smallest maximal independent set, by exhaustive search.

    Iterative deepening on the size; each level branches on the closed
    neighbourhood of the lowest undominated vertex, keeping only vertices
    not adjacent to the partial set.  Exact for any graph, practical up to
    roughly 20 vertices.
    """
    n = g.n
    adj = g.adjacency_masks()
    closed = [adj[v] | (1 << v) for v in range(n)]
    full = (1 << n) - 1

    def search(chosen: int, dominated: int, budget: int) -> int | None:
        if dominated == full:
            return chosen
        if budget == 0:
            return None
        low = (~dominated & full) & -(~dominated & full)
        v = low.bit_length() - 1
        cand = closed[v] & ~dominated  # dominated vertices are in or next to chosen
        while cand:
            bit = cand & -cand
            cand ^= bit
            u = bit.bit_length() - 1
            found = search(chosen | bit, dominated | closed[u], budget - 1)
            if found is not None:
                return found
        return None

    for size in range(1, n + 1):
        found = search(0, 0, size)
        if found is not None:
            return size, frozenset(indices_of(found))
    raise AssertionError("unreachable: every graph has a maximal independent set")
