"""Nevo-Petersen comparison complexes and closed-form adjacency for B(K_n), B(K_{1,n-1})."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .gammacomplex import FlagComplex
from .ordering import _cmp_max_size_symdiff, _interval_decomposition
from .setcore import (
    ElementSet,
    complete_graph,
    graphical_building_set,
    highest,
    lowest,
    popcount,
    star_graph,
    to_mask,
)


@dataclass(frozen=True)
class PeakPermutation:
    """A one-peak permutation ``w_1..w_i | w_{i+1}..w_n``, both runs increasing."""

    word: tuple[int, ...]
    peak: int

    def __post_init__(self) -> None:
        w, i = self.word, self.peak
        if sorted(w) != list(range(1, len(w) + 1)):
            raise ValueError(f"{w} is not a permutation")
        if not 1 <= i <= len(w) - 2:
            raise ValueError(f"peak position {i} outside 1..{len(w) - 2}")
        head, tail = w[:i], w[i:]
        if list(head) != sorted(head) or list(tail) != sorted(tail) or head[-1] < tail[0]:
            raise ValueError(f"{w} does not have a single peak at {i}")

    @classmethod
    def from_tail(cls, n: int, tail) -> "PeakPermutation":
        t = sorted(tail)
        head = sorted(set(range(1, n + 1)) - set(t))
        return cls(tuple(head + t), len(head))

    @property
    def head(self) -> tuple[int, ...]:
        return self.word[: self.peak]

    @property
    def tail(self) -> tuple[int, ...]:
        return self.word[self.peak:]

    @property
    def tail_set(self) -> frozenset:
        return frozenset(self.tail)

    def __str__(self) -> str:
        return "".join(map(str, self.head)) + "|" + "".join(map(str, self.tail))


def peaks(w) -> list[int]:
    """1-based peak positions with ``w_0 = 0``."""
    ext = (0,) + tuple(w)
    return [i for i in range(1, len(w)) if ext[i - 1] < ext[i] > ext[i + 1]]


def descents(w) -> list[int]:
    return [i for i in range(1, len(w)) if w[i - 1] > w[i]]


def in_s_hat(w) -> bool:
    """No double descents and no final descent."""
    d = descents(w)
    if d and d[-1] == len(w) - 1:
        return False
    return all(b - a > 1 for a, b in zip(d, d[1:]))


def sn_hat_vertices(n: int) -> list[PeakPermutation]:
    """One-peak elements of S-hat_n, generated from S_n and cross-checked by tails."""
    verts = []
    for w in permutations(range(1, n + 1)):
        if in_s_hat(w):
            p = peaks(w)
            if len(p) == 1:
                verts.append(PeakPermutation(w, p[0]))
    by_tail = {v.tail_set: v for v in verts}
    for size in range(2, n):
        for t in combinations(range(1, n + 1), size):
            if t != tuple(range(n - size + 1, n + 1)):
                assert PeakPermutation.from_tail(n, t) == by_tail[frozenset(t)]
    assert len(by_tail) == len(verts)
    return sorted(verts, key=lambda v: (v.peak, v.word))


def _sn_adjacent(u: PeakPermutation, v: PeakPermutation) -> bool:
    if len(u.head) > len(v.head):
        u, v = v, u
    if len(u.head) == len(v.head):
        return False
    u2, v2 = u.tail_set, v.tail_set
    if not v2 <= u2:
        return False
    a = u2 - v2
    return len(a) >= 2 and min(a) < max(u.head) and max(a) > min(v2)


def gamma_complex_sn_hat(n: int) -> FlagComplex:
    verts = sn_hat_vertices(n) if n >= 3 else []
    edges = [(u, v) for u, v in combinations(verts, 2) if _sn_adjacent(u, v)]
    return FlagComplex.from_edges(verts, edges)


def gamma_complex_sn_hat_bruteforce(n: int) -> FlagComplex:
    """Edges from two-peak words ``w = u_1 | a | v_2`` enumerated over S_n."""
    verts = sn_hat_vertices(n) if n >= 3 else []
    by_tail = {v.tail_set: v for v in verts}
    edges = set()
    for w in permutations(range(1, n + 1)):
        if not in_s_hat(w):
            continue
        p = peaks(w)
        if len(p) != 2:
            continue
        u = by_tail[frozenset(w[p[0]:])]
        v = by_tail[frozenset(w[p[1]:])]
        if u.head == w[: p[0]] and v.tail == w[p[1]:]:
            edges.add((u, v))
    return FlagComplex.from_edges(verts, edges)


def gamma_complex_s312(n: int) -> FlagComplex:
    """Pairs ``(a, b)``, ``1 <= a < b <= n-1``; adjacent iff distinct endpoints, nested or separated."""
    verts = [(a, b) for a in range(1, n) for b in range(a + 1, n)]
    edges = []
    for (a, b), (c, d) in combinations(verts, 2):
        if len({a, b, c, d}) < 4:
            continue
        if a < c < d < b or c < a < b < d or b < c or d < a:
            edges.append(((a, b), (c, d)))
    return FlagComplex.from_edges(verts, edges)


def gamma_complex_pn(n: int) -> FlagComplex:
    verts = [(l, r) for l in range(1, n) for r in range(1, n) if l != r]
    verts.sort(key=lambda p: (p[0] > p[1], p))
    edges = []
    for (l1, r1), (l2, r2) in combinations(verts, 2):
        if len({l1, l2, r1, r2}) == 4 and ((l1 < l2 and r1 < r2) or (l2 < l1 and r2 < r1)):
            edges.append(((l1, r1), (l2, r2)))
    return FlagComplex.from_edges(verts, edges)


def _rule(a: int, b: int) -> bool:
    if a & ~b == 0 and a != b:
        return lowest(b & ~a) < highest(a)
    top = 1 << (highest(a) - 1)
    return (
        not b & top
        and popcount(a & ~b) >= 2
        and b & ~a != 0
        and lowest(b & ~a) > highest(a)
    )


def closed_form_adjacent(a: int, b: int) -> bool:
    """Adjacency of v(a), v(b) for the K_n / star recipe orderings.

    The two bullets are read with ``a`` the earlier of the pair under the
    recipe comparator; the symmetric reading adds spurious edges from n = 4.
    """
    if _cmp_max_size_symdiff(a, b) > 0:
        a, b = b, a
    return _rule(a, b)


def _closed_form_complex(B, n: int) -> FlagComplex:
    D = _interval_decomposition(n)
    verts = [ElementSet(b) for b in B.family if b not in D.members]
    edges = [(a, b) for a, b in combinations(verts, 2) if closed_form_adjacent(a, b)]
    return FlagComplex.from_edges(verts, edges)


def combinatorial_kn_complex(n: int) -> FlagComplex:
    return _closed_form_complex(graphical_building_set(complete_graph(n)), n)


def combinatorial_star_complex(n: int) -> FlagComplex:
    return _closed_form_complex(graphical_building_set(star_graph(n)), n)


def star_to_kn_label(s: int) -> ElementSet:
    """``{1} + {x+1 : x in a}`` back to ``a``; identifies the |set| >= 3 part with the K_{n-1} complex."""
    return ElementSet(s >> 1)


def path_to_s312_label(s: int) -> tuple[int, int]:
    """``v([a+1, b+1]) -> (a, b)``."""
    return lowest(s) - 1, highest(s) - 1


def cyclohedron_formula_gamma(n: int) -> list[int]:
    """The multinomial ``n! / (r! r! (n-2r)!)`` , r = 0..n//2, with no index shift."""
    from math import factorial

    return [factorial(n) // (factorial(r) ** 2 * factorial(n - 2 * r)) for r in range(n // 2 + 1)]


def sn_tail_label(v: PeakPermutation) -> ElementSet:
    return ElementSet(to_mask(v.tail))

