"""Subsets of a small ground set as bitmasks, and building sets over them.

Element ``i`` (1-indexed) lives in bit ``i - 1``.  A ground set never
exceeds 64 elements, so every set is a single machine word.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence, Union

MAX_N = 64


class SetCoreError(ValueError):
    """Base class for malformed building-set input."""


class UnionAxiomViolation(SetCoreError):
    def __init__(self, first: int, second: int):
        self.first = ElementSet(first)
        self.second = ElementSet(second)
        super().__init__(
            f"{self.first} and {self.second} intersect but their union "
            f"{ElementSet(first | second)} is missing"
        )


class EmptySetMember(SetCoreError):
    pass


class OutOfRange(SetCoreError):
    pass


class FullContraction(SetCoreError):
    pass


class NotFlag(SetCoreError):
    pass


class NotConnected(SetCoreError):
    pass


class MalformedTree(SetCoreError):
    pass


class ElementSet(int):
    """An ``int`` bitmask that prints as ``{1,3}``.

    Arithmetic on it returns plain ints; wrap again where a label is needed.
    """

    __slots__ = ()

    @classmethod
    def of(cls, elements: Iterable[int]) -> "ElementSet":
        return cls(to_mask(elements))

    def elements(self) -> list[int]:
        return elements(self)

    def __repr__(self) -> str:
        return fmt_set(self)

    __str__ = __repr__


SetLike = Union[int, Iterable[int]]


def to_mask(elements: Iterable[int]) -> int:
    mask = 0
    for i in elements:
        if not 1 <= i <= MAX_N:
            raise OutOfRange(f"element {i} outside 1..{MAX_N}")
        mask |= 1 << (i - 1)
    return mask


def as_mask(s: SetLike) -> int:
    if isinstance(s, int):
        return int(s)
    return to_mask(s)


def elements(mask: int) -> list[int]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def lowest(mask: int) -> int:
    """Smallest element of a nonempty mask."""
    return (mask & -mask).bit_length()


def highest(mask: int) -> int:
    return mask.bit_length()


def full_mask(n: int) -> int:
    return (1 << n) - 1


def fmt_set(mask: int) -> str:
    return "{" + ",".join(str(i) for i in elements(mask)) + "}"


def canonical_key(mask: int) -> tuple[int, int]:
    return popcount(mask), mask


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def is_laminar(family: Iterable[int]) -> bool:
    fam = list(family)
    for a, b in combinations(fam, 2):
        c = a & b
        if c and c != a and c != b:
            return False
    return True


@dataclass(frozen=True)
class BuildingSet:
    """A validated building set.

    ``ground`` is the mask of the ground set; it is ``[n]`` for sets built
    from scratch, but restriction and contraction keep the original labels
    and shrink ``ground`` instead of re-indexing.
    """

    n: int
    ground: int
    family: tuple[ElementSet, ...]
    _members: frozenset = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_members", frozenset(self.family))

    def __contains__(self, s: object) -> bool:
        return s in self._members

    def __iter__(self):
        return iter(self.family)

    def __len__(self) -> int:
        return len(self.family)

    @property
    def size(self) -> int:
        """Number of ground-set elements."""
        return popcount(self.ground)

    @property
    def is_connected(self) -> bool:
        return self.ground in self._members

    def masks(self) -> frozenset:
        return self._members

    def non_singletons(self) -> list[ElementSet]:
        return [b for b in self.family if b & (b - 1)]

    def __str__(self) -> str:
        return "{" + ", ".join(fmt_set(b) for b in self.family) + "}"


def _sorted_family(masks: Iterable[int]) -> tuple[ElementSet, ...]:
    return tuple(ElementSet(m) for m in sorted(set(masks), key=canonical_key))


def _check_members(n: int, ground: int, family: Iterable[SetLike]) -> list[int]:
    if not 1 <= n <= MAX_N:
        raise OutOfRange(f"ground-set size {n} outside 1..{MAX_N}")
    out = []
    for s in family:
        m = as_mask(s)
        if m == 0:
            raise EmptySetMember("building-set members must be nonempty")
        if m & ~ground:
            raise OutOfRange(f"{fmt_set(m)} is not inside the ground set {fmt_set(ground)}")
        out.append(m)
    return out


def _singletons(ground: int) -> list[int]:
    return [1 << (i - 1) for i in elements(ground)]


def from_masks(n: int, ground: int, masks: Iterable[int]) -> BuildingSet:
    """Wrap masks already known to satisfy the axioms; no validation."""
    return BuildingSet(n, ground, _sorted_family(masks))


_build = from_masks


def make_building_set(
    n: int, family: Iterable[SetLike] = (), ground: SetLike | None = None
) -> BuildingSet:
    """Validate ``family`` as a building set on ``ground`` (default ``[n]``).

    Singletons are added automatically.  A missing union is reported, never
    repaired; use :func:`closure` for that.
    """
    g = full_mask(n) if ground is None else as_mask(ground)
    masks = set(_check_members(n, g, family))
    masks.update(_singletons(g))
    ordered = sorted(masks, key=canonical_key)
    for a, b in combinations(ordered, 2):
        if a & b and (a | b) not in masks:
            raise UnionAxiomViolation(a, b)
    return _build(n, g, masks)


def closure(
    n: int, family: Iterable[SetLike] = (), ground: SetLike | None = None
) -> BuildingSet:
    """Smallest building set containing ``family``."""
    g = full_mask(n) if ground is None else as_mask(ground)
    masks = set(_check_members(n, g, family))
    masks.update(_singletons(g))
    frontier = list(masks)
    while frontier:
        new = []
        current = list(masks)
        for a in frontier:
            for b in current:
                if a & b:
                    u = a | b
                    if u not in masks:
                        masks.add(u)
                        new.append(u)
        frontier = new
    return _build(n, g, masks)


# -- graphs -----------------------------------------------------------------


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``1..n``."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise SetCoreError(f"loop at vertex {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise OutOfRange(f"edge ({u}, {v}) outside 1..{self.n}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    def neighbor_masks(self) -> list[int]:
        nbr = [0] * (self.n + 1)
        for u, v in self.edges:
            nbr[u] |= 1 << (v - 1)
            nbr[v] |= 1 << (u - 1)
        return nbr


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(combinations(range(1, n + 1), 2)))


def path_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(1, n)))


def cycle_graph(n: int) -> Graph:
    edges = [(i, i + 1) for i in range(1, n)]
    if n >= 3:
        edges.append((1, n))
    return Graph(n, tuple(edges))


def star_graph(n: int) -> Graph:
    """K_{1,n-1} with hub 1."""
    return Graph(n, tuple((1, i) for i in range(2, n + 1)))


def _connected(mask: int, nbr: Sequence[int]) -> bool:
    start = mask & -mask
    seen = start
    frontier = start
    while frontier:
        grow = 0
        for v in elements(frontier):
            grow |= nbr[v]
        grow &= mask & ~seen
        seen |= grow
        frontier = grow
    return seen == mask


def graphical_building_set(graph: Graph) -> BuildingSet:
    """All vertex sets inducing a connected subgraph."""
    nbr = graph.neighbor_masks()
    masks = [m for m in range(1, 1 << graph.n) if _connected(m, nbr)]
    return _build(graph.n, full_mask(graph.n), masks)


# -- structural operations --------------------------------------------------


def restriction(B: BuildingSet, I: SetLike) -> BuildingSet:
    i = as_mask(I)
    if i == 0:
        raise EmptySetMember("cannot restrict to the empty set")
    if i & ~B.ground:
        raise OutOfRange(f"{fmt_set(i)} is not inside the ground set")
    return BuildingSet(B.n, i, tuple(b for b in B.family if b & ~i == 0))


def contraction(B: BuildingSet, I: SetLike) -> BuildingSet:
    i = as_mask(I)
    if i == 0:
        raise EmptySetMember("cannot contract by the empty set")
    if i & ~B.ground:
        raise OutOfRange(f"{fmt_set(i)} is not inside the ground set")
    if i == B.ground:
        raise FullContraction("contraction by the whole ground set is empty")
    return _build(B.n, B.ground & ~i, (b & ~i for b in B.family if b & ~i))


def maximal_elements(B: BuildingSet) -> list[ElementSet]:
    out: list[ElementSet] = []
    for b in reversed(B.family):
        if not any(b & ~m == 0 for m in out):
            out.append(b)
    return sorted(out, key=lowest)


def splitting_pairs(B: BuildingSet, b: int) -> list[tuple[int, int]]:
    """All ``(d1, d2)`` in B with ``d1 | d2 == b``, disjoint, ``min(b) in d1``."""
    lo = b & -b
    members = B.masks()
    out = []
    for d in B.family:
        if d != b and d & lo and d & ~b == 0 and (b & ~d) in members:
            out.append((int(d), b & ~d))
    return out


def has_split(members: frozenset | set, b: int, candidates: Iterable[int]) -> bool:
    for d in candidates:
        if d != b and d & ~b == 0 and (b & ~d) in members:
            return True
    return False


def is_flag(B: BuildingSet) -> bool:
    members = B.masks()
    family = B.family
    return all(has_split(members, b, family) for b in B.non_singletons())


# -- decompositions ---------------------------------------------------------


@dataclass(frozen=True)
class Decomposition:
    """A minimal flag building set on ``base`` drawn from some building set."""

    base: ElementSet
    members: tuple[ElementSet, ...]

    def __contains__(self, s: object) -> bool:
        return s in self.members

    def maximal_components(self) -> tuple[ElementSet, ElementSet] | None:
        if popcount(self.base) == 1:
            return None
        proper = [m for m in self.members if m != self.base]
        tops = [m for m in proper if not any(m != o and m & ~o == 0 for o in proper)]
        a, b = sorted(tops, key=lowest)
        return a, b

    def as_building_set(self, n: int) -> BuildingSet:
        return BuildingSet(n, self.base, self.members)

    def check(self) -> str | None:
        """Return a description of the first broken invariant, or None."""
        base = int(self.base)
        mem = set(self.members)
        if len(mem) != len(self.members):
            return "duplicate members"
        if len(mem) != 2 * popcount(base) - 1:
            return f"has {len(mem)} members, expected {2 * popcount(base) - 1}"
        if base not in mem:
            return "base missing"
        for s in _singletons(base):
            if s not in mem:
                return f"singleton {fmt_set(s)} missing"
        for m in mem:
            if m & ~base:
                return f"{fmt_set(m)} leaves the base"
        if not is_laminar(mem):
            return "not laminar"
        for m in mem:
            if m & (m - 1) and not has_split(mem, m, mem):
                return f"{fmt_set(m)} is not a disjoint union of two members"
        return None


def _split(B: BuildingSet, b: int, must_contain: int) -> list[int]:
    if b & (b - 1) == 0:
        return [b]
    pairs = splitting_pairs(B, b)
    if must_contain and must_contain != b:
        pairs = [
            (d1, d2) for d1, d2 in pairs
            if must_contain & ~d1 == 0 or must_contain & ~d2 == 0
        ]
    if not pairs:
        raise NotFlag(f"{fmt_set(b)} has no disjoint splitting pair")
    d1, d2 = min(pairs, key=lambda p: (canonical_key(p[0]), canonical_key(p[1])))
    inner1 = must_contain if must_contain and must_contain & ~d1 == 0 else 0
    inner2 = must_contain if must_contain and must_contain & ~d2 == 0 else 0
    return [b] + _split(B, d1, inner1) + _split(B, d2, inner2)


def find_binary_decomposition(
    B: BuildingSet, b: SetLike, must_contain: SetLike | None = None
) -> Decomposition:
    """A decomposition of ``b`` inside ``B``, optionally containing ``must_contain``.

    Each level takes the splitting pair with the smallest ``(size, mask)``
    key for the part holding ``min(b)``.  With ``must_contain``, only splits
    that keep it inside one part are eligible; flagness guarantees such a
    split exists at every level.
    """
    bm = as_mask(b)
    if bm not in B:
        raise SetCoreError(f"{fmt_set(bm)} is not a member of the building set")
    a = 0
    if must_contain is not None:
        a = as_mask(must_contain)
        if a not in B or a & ~bm:
            raise SetCoreError(f"{fmt_set(a)} must be a member inside {fmt_set(bm)}")
    members = _split(B, bm, a)
    return Decomposition(ElementSet(bm), _sorted_family(members))


def random_decomposition(B: BuildingSet, b: SetLike, rng) -> Decomposition:
    """Like :func:`find_binary_decomposition` but with uniformly chosen splits."""
    stack = [as_mask(b)]
    members = []
    while stack:
        x = stack.pop()
        members.append(x)
        if x & (x - 1):
            pairs = splitting_pairs(B, x)
            if not pairs:
                raise NotFlag(f"{fmt_set(x)} has no disjoint splitting pair")
            d1, d2 = pairs[rng.randrange(len(pairs))]
            stack += [d1, d2]
    return Decomposition(ElementSet(as_mask(b)), _sorted_family(members))


Tree = Union[int, tuple]


def minimal_flag_from_tree(tree: Tree, n: int | None = None) -> BuildingSet:
    """Descendant-leaf sets of a proper binary tree given as nested pairs.

    ``((1, 2), 3)`` is the caterpillar with leaves 1, 2, 3.
    """
    masks: list[int] = []

    def walk(node) -> int:
        if isinstance(node, int) and not isinstance(node, bool):
            if node < 1 or node > MAX_N:
                raise MalformedTree(f"leaf {node} outside 1..{MAX_N}")
            m = 1 << (node - 1)
        elif isinstance(node, (tuple, list)) and len(node) == 2:
            left, right = walk(node[0]), walk(node[1])
            if left & right:
                raise MalformedTree("leaf labels repeat")
            m = left | right
        else:
            raise MalformedTree(f"node {node!r} is neither a leaf nor a pair")
        masks.append(m)
        return m

    root = walk(tree)
    size = highest(root) if n is None else n
    if highest(root) > size:
        raise MalformedTree(f"leaves exceed n={size}")
    return _build(size, root, masks)


# -- text formats -----------------------------------------------------------


def _data_lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]


def _parse_header(line: str) -> int:
    parts = line.split()
    if len(parts) != 2 or parts[0] != "n":
        raise SetCoreError(f"expected 'n <int>' header, got {line!r}")
    try:
        return int(parts[1])
    except ValueError:
        raise SetCoreError(f"bad ground-set size in {line!r}") from None


def _parse_ints(line: str) -> list[int]:
    try:
        return [int(x) for x in line.split()]
    except ValueError:
        raise SetCoreError(f"bad set line {line!r}") from None


def parse_building_set(text: str) -> BuildingSet:
    """Read the building-set text format.

    An optional ``ground`` line (extension) records a ground set other than
    ``[n]``, as produced by restriction and contraction.
    """
    lines = _data_lines(text)
    if not lines:
        raise SetCoreError("empty building-set file")
    n = _parse_header(lines[0])
    ground = None
    sets = []
    for line in lines[1:]:
        if line.startswith("ground"):
            ground = _parse_ints(line[len("ground"):])
        else:
            sets.append(_parse_ints(line))
    return make_building_set(n, sets, ground)


def format_building_set(B: BuildingSet) -> str:
    out = [f"n {B.n}"]
    if B.ground != full_mask(B.n):
        out.append("ground " + " ".join(map(str, elements(B.ground))))
    out += [" ".join(map(str, elements(b))) for b in B.family]
    return "\n".join(out) + "\n"


def parse_graph(text: str) -> Graph:
    lines = _data_lines(text)
    if not lines:
        raise SetCoreError("empty graph file")
    n = _parse_header(lines[0])
    edges = []
    for line in lines[1:]:
        pair = _parse_ints(line)
        if len(pair) != 2:
            raise SetCoreError(f"edge line needs two vertices: {line!r}")
        edges.append((pair[0], pair[1]))
    return Graph(n, tuple(edges))


def format_graph(graph: Graph) -> str:
    return "\n".join([f"n {graph.n}"] + [f"{u} {v}" for u, v in graph.edges]) + "\n"


NAMED_FAMILIES = {
    "kn": complete_graph,
    "path": path_graph,
    "cyc": cycle_graph,
    "star": star_graph,
}


def named_building_set(selector: str) -> BuildingSet:
    """``kn:5``, ``path:4``, ``cyc:5`` or ``star:5`` to a graphical building set."""
    kind, _, num = selector.partition(":")
    if kind not in NAMED_FAMILIES or not num.isdigit():
        raise SetCoreError(f"unknown selector {selector!r}")
    n = int(num)
    if n < 2:
        raise SetCoreError(f"selector {selector!r} needs N >= 2")
    return graphical_building_set(NAMED_FAMILIES[kind](n))
