"""Brute-force reference implementations used only by the tests.

They work on explicit sets of subsets and never call the package's own
ideal arithmetic, so agreement is a real cross-check.
"""

from itertools import combinations


def all_masks(n):
    return range(1 << n)


def multiples(gens, n):
    """Every squarefree monomial divisible by some generator."""
    return {m for m in all_masks(n) if any(g & m == g for g in gens)}


def minimal_elements(masks):
    masks = set(masks)
    return {m for m in masks if not any(o != m and o & m == o for o in masks)}


def brute_colon(gens, n, var):
    """Generators of (I : x_var) from membership of m * x_var."""
    members = multiples(gens, n)
    bit = 1 << (var - 1)
    return minimal_elements(m for m in all_masks(n) if m | bit in members)


def independent_sets(n, edges):
    out = []
    for size in range(n + 1):
        for combo in combinations(range(1, n + 1), size):
            s = set(combo)
            if not any(u in s and v in s for u, v in edges):
                out.append(s)
    return out


def brute_mmis(n, edges):
    """Minimum size of an independent dominating set by plain enumeration."""
    adj = {v: set() for v in range(1, n + 1)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    best = None
    for s in independent_sets(n, edges):
        if all(v in s or adj[v] & s for v in adj):
            if best is None or len(s) < best:
                best = len(s)
    return best


def power_edges(family, n, k):
    """Edge list straight from the distance definition."""
    out = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            d = j - i
            if family == "path":
                if d <= k:
                    out.append((i, j))
            elif min(d, n - d) <= k:
                out.append((i, j))
    return out
