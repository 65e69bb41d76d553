"""Flag orderings: a decomposition D plus an order on B - D keeping every prefix flag."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from functools import cmp_to_key
from typing import Callable, Iterator, Sequence, Union

from .setcore import (
    BuildingSet,
    Decomposition,
    ElementSet,
    NotConnected,
    NotFlag,
    SetCoreError,
    SetLike,
    _data_lines,
    _parse_header,
    _parse_ints,
    as_mask,
    canonical_key,
    elements,
    find_binary_decomposition,
    fmt_set,
    from_masks,
    full_mask,
    graphical_building_set,
    has_split,
    highest,
    is_flag,
    popcount,
    random_decomposition,
    complete_graph,
    path_graph,
    star_graph,
    to_mask,
)

log = logging.getLogger(__name__)


class OrderingDeadEnd(RuntimeError):
    """Greedy construction found no addable element (should be impossible)."""


@dataclass(frozen=True)
class FlagOrdering:
    B: BuildingSet
    D: Decomposition
    order: tuple[ElementSet, ...]

    @property
    def k(self) -> int:
        return len(self.order)

    def truncate(self, k: int) -> "FlagOrdering":
        """Ordering of the prefix building set ``B_k``."""
        if not 0 <= k <= self.k:
            raise IndexError(f"prefix length {k} outside 0..{self.k}")
        masks = list(self.D.members) + list(self.order[:k])
        return FlagOrdering(from_masks(self.B.n, self.B.ground, masks), self.D, self.order[:k])

    def __str__(self) -> str:
        return "D=" + ", ".join(map(fmt_set, self.D.members)) + "; order=" + ", ".join(
            map(fmt_set, self.order)
        )


def build_prefix_families(O: FlagOrdering) -> Iterator[frozenset]:
    """Yield ``B_{j-1}`` as a frozenset of masks, for j = 1..k."""
    cur = set(int(d) for d in O.D.members)
    for b in O.order:
        yield frozenset(cur)
        cur.add(int(b))


def addable(members: set | frozenset, b: int) -> bool:
    """True iff ``members + {b}`` is still a flag building set."""
    for c in members:
        if c & b and (c | b) not in members and (c | b) != b:
            return False
    return has_split(members, b, members)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    index: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_flag_ordering(O: FlagOrdering) -> Verdict:
    """Check every flag-ordering invariant; report the first failure.

    ``index`` is 0 for problems with D or coverage, else the 1-based prefix.
    """
    B, D = O.B, O.D
    if D.base != B.ground:
        return Verdict(False, 0, f"D is based on {fmt_set(D.base)}, not the ground set")
    problem = D.check()
    if problem:
        return Verdict(False, 0, f"D is not a minimal flag building set: {problem}")
    members = B.masks()
    for d in D.members:
        if d not in members:
            return Verdict(False, 0, f"D member {fmt_set(d)} is not in B")
    seen = set(int(d) for d in D.members)
    for j, b in enumerate(O.order, start=1):
        if b not in members:
            return Verdict(False, j, f"b_{j}={fmt_set(b)} is not in B")
        if b in seen:
            return Verdict(False, j, f"b_{j}={fmt_set(b)} repeats")
        for c in seen:
            if c & b and (c | b) not in seen and (c | b) != b:
                return Verdict(
                    False, j,
                    f"union axiom: {fmt_set(c)} | {fmt_set(b)} = {fmt_set(c | b)} missing",
                )
        if not has_split(seen, b, seen):
            return Verdict(False, j, f"flagness: b_{j}={fmt_set(b)} has no disjoint split")
        seen.add(int(b))
    if len(seen) != len(members):
        return Verdict(False, 0, f"order covers {len(seen)} of {len(members)} members")
    return Verdict(True)


Strategy = Union[str, Callable[[int], object]]


def find_flag_ordering(
    B: BuildingSet,
    strategy: Strategy = "lex",
    seed: int = 0,
    D: Decomposition | None = None,
    backtrack: bool = False,
) -> FlagOrdering:
    """Greedy flag ordering of a connected flag building set.

    ``strategy`` is ``"lex"`` (canonical member order), ``"random"``
    (seeded: random decomposition and random scan order) or a key function
    on masks.  At each step the first addable candidate in scan order is
    taken.  Volodin's lemma says a candidate always exists; ``backtrack``
    turns a dead end into a depth-first search instead of an error.
    """
    if not B.is_connected:
        raise NotConnected("flag orderings need a connected building set")
    if not is_flag(B):
        raise NotFlag("building set is not flag")
    rng = random.Random(seed)
    if D is None:
        if strategy == "random":
            D = random_decomposition(B, B.ground, rng)
        else:
            D = find_binary_decomposition(B, B.ground)
    rest = [int(b) for b in B.family if b not in D.members]
    if strategy == "lex":
        pass
    elif strategy == "random":
        rng.shuffle(rest)
    elif callable(strategy):
        rest.sort(key=strategy)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")

    cur = set(int(d) for d in D.members)
    order: list[int] = []
    while rest:
        for pos, b in enumerate(rest):
            if addable(cur, b):
                break
        else:
            if not backtrack:
                raise OrderingDeadEnd(f"no addable element after {len(order)} steps")
            log.warning("greedy flag ordering dead-ended; backtracking")
            tail = _backtrack(cur, rest)
            if tail is None:
                raise OrderingDeadEnd("no flag ordering extends this prefix")
            order += tail
            break
        order.append(b)
        cur.add(b)
        del rest[pos]
    return FlagOrdering(B, D, tuple(ElementSet(b) for b in order))


def _backtrack(cur: set, rest: list[int]) -> list[int] | None:
    if not rest:
        return []
    for pos, b in enumerate(rest):
        if addable(cur, b):
            cur.add(b)
            tail = _backtrack(cur, rest[:pos] + rest[pos + 1:])
            cur.discard(b)
            if tail is not None:
                return [b] + tail
    return None


# -- the named orderings ----------------------------------------------------


def _interval_decomposition(n: int) -> Decomposition:
    masks = [1 << i for i in range(n)] + [full_mask(j) for j in range(2, n + 1)]
    return Decomposition(ElementSet(full_mask(n)), tuple(
        ElementSet(m) for m in sorted(set(masks), key=canonical_key)
    ))


def _cmp_max_size_symdiff(a: int, b: int) -> int:
    """max ascending, then larger first, then ``min(a ^ b) in a`` goes first."""
    if highest(a) != highest(b):
        return -1 if highest(a) < highest(b) else 1
    if popcount(a) != popcount(b):
        return -1 if popcount(a) > popcount(b) else 1
    if a == b:
        return 0
    return -1 if a & ((a ^ b) & -(a ^ b)) else 1


def _cmp_max_size(a: int, b: int) -> int:
    if highest(a) != highest(b):
        return -1 if highest(a) < highest(b) else 1
    if popcount(a) != popcount(b):
        return -1 if popcount(a) > popcount(b) else 1
    return 0


def _recipe_ordering(B: BuildingSet, n: int, cmp: Callable[[int, int], int]) -> FlagOrdering:
    D = _interval_decomposition(n)
    rest = sorted((int(b) for b in B.family if b not in D.members), key=cmp_to_key(cmp))
    for a, b in zip(rest, rest[1:]):
        if cmp(a, b) == 0:
            raise AssertionError(f"comparator tie between {fmt_set(a)} and {fmt_set(b)}")
    O = FlagOrdering(B, D, tuple(ElementSet(b) for b in rest))
    verdict = verify_flag_ordering(O)
    if not verdict:
        raise AssertionError(f"recipe ordering invalid at {verdict.index}: {verdict.reason}")
    return O


def ordering_kn(n: int) -> FlagOrdering:
    """The max/size/symmetric-difference ordering of B(K_n)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return _recipe_ordering(graphical_building_set(complete_graph(n)), n, _cmp_max_size_symdiff)


def ordering_pathn(n: int) -> FlagOrdering:
    """The max-then-size ordering of the intervals of B(Path_n)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return _recipe_ordering(graphical_building_set(path_graph(n)), n, _cmp_max_size)


def ordering_star(n: int) -> FlagOrdering:
    """Ordering of B(K_{1,n-1}), hub 1, same comparator as for K_n."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return _recipe_ordering(graphical_building_set(star_graph(n)), n, _cmp_max_size_symdiff)


def ordering_from_listing(
    B: BuildingSet, D: Sequence[SetLike], order: Sequence[SetLike]
) -> FlagOrdering:
    """Wrap explicitly listed D and order; no validation (use verify_flag_ordering)."""
    dm = [as_mask(d) for d in D]
    base = max(dm, key=popcount) if dm else 0
    return FlagOrdering(
        B,
        Decomposition(ElementSet(base), tuple(ElementSet(m) for m in sorted(set(dm), key=canonical_key))),
        tuple(ElementSet(as_mask(b)) for b in order),
    )


# -- text format ------------------------------------------------------------


def format_ordering(O: FlagOrdering) -> str:
    out = [f"n {O.B.n}", "D:"]
    out += [" ".join(map(str, elements(d))) for d in O.D.members]
    out.append("order:")
    out += [" ".join(map(str, elements(b))) for b in O.order]
    return "\n".join(out) + "\n"


def parse_ordering(text: str) -> FlagOrdering:
    """Read an ordering file; B is taken to be ``D`` plus the listed order."""
    lines = _data_lines(text)
    if not lines:
        raise SetCoreError("empty ordering file")
    n = _parse_header(lines[0])
    section = None
    D: list[int] = []
    order: list[int] = []
    for line in lines[1:]:
        key = line.replace(" ", "").lower()
        if key in ("d:", "order:"):
            section = key
            continue
        if section is None:
            raise SetCoreError(f"set line before 'D:' or 'order:': {line!r}")
        (D if section == "d:" else order).append(to_mask(_parse_ints(line)))
    if not D:
        raise SetCoreError("ordering file has no D section")
    from .setcore import make_building_set

    base = max(D, key=popcount)
    B = make_building_set(n, D + order, ground=base)
    return ordering_from_listing(B, D, order)
