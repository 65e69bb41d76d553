"""Worked examples (orderings, listed edges) and independent test oracles."""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import combinations, product
from math import comb

from gammaflag.ordering import ordering_from_listing, find_flag_ordering
from gammaflag.setcore import ElementSet, named_building_set, to_mask

INTERVAL_D5 = [[1], [2], [3], [4], [5], [1, 2], [1, 2, 3], [1, 2, 3, 4], [1, 2, 3, 4, 5]]

# B(Path_5) worked example
PATH5_ORDER = [[3, 4], [2, 3, 4], [2, 3], [2, 3, 4, 5], [3, 4, 5], [4, 5]]

# B(Cyc_5), two orderings with the same D.  The second reference listing
# has 14 entries with {3,4,5} and {3,4} repeated; dropping the repeats gives
# the 12-element ordering below.
CYC5_ORDER_1 = [
    [2, 3], [2, 3, 4], [2, 3, 4, 5], [4, 5], [3, 4, 5], [3, 4],
    [3, 4, 5, 1], [4, 5, 1, 2], [5, 1, 2, 3], [4, 5, 1], [5, 1, 2], [1, 5],
]
CYC5_ORDER_2 = [
    [2, 3], [2, 3, 4], [2, 3, 4, 5], [3, 4], [3, 4, 5], [4, 5],
    [3, 4, 5, 1], [4, 5, 1, 2], [5, 1, 2, 3], [4, 5, 1], [5, 1, 2], [1, 5],
]
# expected edges as index pairs (1-based b_i)
CYC5_EXPECTED_EDGES_1 = {(1, 4), (1, 9), (3, 6), (6, 7), (5, 12), (8, 12)}
CYC5_EXPECTED_EDGES_2 = {(1, 9), (1, 6), (6, 7), (8, 12), (4, 12), (3, 4)}

# Gamma(S-hat_5), vertices written as the part after the peak
SN5_ADJACENCY = {
    (1, 2, 3, 4): [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)],
    (1, 2, 3, 5): [(1, 2), (1, 3), (1, 5), (2, 3), (2, 5)],
    (1, 2, 4, 5): [(1, 4), (1, 5), (2, 4), (2, 5)],
    (1, 3, 4, 5): [(3, 4), (3, 5)],
}

PN5_EDGES = [
    ((1, 3), (2, 4)), ((3, 1), (4, 2)), ((1, 2), (3, 4)),
    ((1, 2), (4, 3)), ((2, 1), (4, 3)), ((2, 1), (3, 4)),
]

# Gamma(B(K_5)) for the max/size/symmetric-difference ordering: three cycles
KN5_CYCLES = [
    [[1, 4], [1, 2, 4, 5], [2, 4], [2, 3, 4, 5], [3, 4], [1, 3, 4, 5], [1, 4]],
    [[1, 3], [1, 2, 3, 5], [2, 3], [4, 5], [1, 3]],
    [[1, 2, 4], [1, 5], [1, 3, 4], [3, 5], [2, 3, 4], [2, 5], [1, 2, 4]],
]

STAR5_LISTED_EDGES = [
    ([1, 5], [1, 2, 4]), ([1, 5], [1, 3, 4]),
    ([1, 3, 4, 5], [1, 4]), ([1, 2, 4, 5], [1, 4]),
]


def S(*xs: int) -> ElementSet:
    return ElementSet(to_mask(xs))


def edge_set(pairs) -> set[frozenset]:
    return {frozenset((S(*a), S(*b))) for a, b in pairs}


def cycle_edges(cycles) -> set[frozenset]:
    out = set()
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:]):
            out.add(frozenset((S(*a), S(*b))))
    return out


def path5_ordering():
    return ordering_from_listing(named_building_set("path:5"), INTERVAL_D5, PATH5_ORDER)


def cyc5_orderings():
    B = named_building_set("cyc:5")
    return (
        ordering_from_listing(B, INTERVAL_D5, CYC5_ORDER_1),
        ordering_from_listing(B, INTERVAL_D5, CYC5_ORDER_2),
    )


# -- independent oracles ----------------------------------------------------


def brute_clique_counts(vertices, edges) -> list[int]:
    """Count cliques by checking every vertex subset."""
    vs = list(vertices)
    counts = [0] * (len(vs) + 1)
    for mask in range(1 << len(vs)):
        members = [vs[i] for i in range(len(vs)) if mask >> i & 1]
        if all(frozenset((a, b)) in edges for a, b in combinations(members, 2)):
            counts[len(members)] += 1
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    return counts


def _complexes_on(m: int):
    """Every simplicial complex on vertex set range(m) using all vertices."""
    subs = [frozenset(c) for k in range(2, m + 1) for c in combinations(range(m), k)]
    faces: set = set()

    def rec(i):
        if i == len(subs):
            yield list(faces)
            return
        yield from rec(i + 1)
        s = subs[i]
        if len(s) == 2 or all(s - {x} in faces for x in s):
            faces.add(s)
            yield from rec(i + 1)
            faces.discard(s)

    yield from rec(0)


def _chromatic_number(m: int, edges) -> int:
    for c in range(1, m + 1):
        for col in product(range(c), repeat=m):
            if all(col[u] != col[v] for u, v in edges):
                return c
    return max(m, 1)


@lru_cache(maxsize=None)
def balanced_f_vectors(max_vertices: int) -> frozenset:
    """f-vectors of complexes whose 1-skeleton is (dimension + 1)-colorable."""
    found = {(1,)}
    for m in range(1, max_vertices + 1):
        chrom: dict = {}
        for faces in _complexes_on(m):
            f = [1, m] + [0] * m
            for s in faces:
                f[len(s)] += 1
            while f[-1] == 0:
                f.pop()
            edges = tuple(sorted(tuple(sorted(s)) for s in faces if len(s) == 2))
            if edges not in chrom:
                chrom[edges] = _chromatic_number(m, edges)
            if chrom[edges] <= len(f) - 1:
                found.add(tuple(f))
    return frozenset(found)


def candidate_f_vectors(max_vertices: int):
    """All vectors (1, m, f_2, ...) with m <= max_vertices and f_i <= C(m, i)."""
    yield (1,)
    for m in range(1, max_vertices + 1):
        for rest in product(*(range(comb(m, i) + 1) for i in range(2, m + 1))):
            f = [1, m, *rest]
            while f[-1] == 0:
                f.pop()
            yield tuple(f)


def random_graph_edges(n: int, p: float, rng: random.Random):
    return [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]


def distinct_random_orderings(B, count: int, seed: int, max_tries: int = 60):
    seen, out = set(), []
    s = seed
    while len(out) < count and s < seed + max_tries:
        O = find_flag_ordering(B, strategy="random", seed=s)
        s += 1
        key = (O.D.members, O.order)
        if key not in seen:
            seen.add(key)
            out.append(O)
    return out
