"""The flag complex Gamma(O) of a flag ordering, plus the graph-level tools it needs.

A :class:`FlagComplex` is stored as its 1-skeleton; faces are the cliques.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Hashable, Iterable, Mapping, Sequence

from .ordering import FlagOrdering, build_prefix_families
from .polyvec import CoeffVector
from .setcore import (
    Decomposition,
    ElementSet,
    canonical_key,
    fmt_set,
    from_masks,
)


class UnknownLabel(KeyError):
    pass


@dataclass(frozen=True)
class FlagComplex:
    vertices: tuple[Hashable, ...]
    edges: frozenset  # of frozenset pairs

    @classmethod
    def from_edges(cls, vertices: Iterable[Hashable], edges: Iterable[tuple]) -> "FlagComplex":
        verts = tuple(vertices)
        vs = set(verts)
        if len(vs) != len(verts):
            raise ValueError("duplicate vertex labels")
        es = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at {u!r}")
            if u not in vs or v not in vs:
                raise UnknownLabel(f"edge ({u!r}, {v!r}) uses an unknown vertex")
            es.add(frozenset((u, v)))
        return cls(verts, frozenset(es))

    def has_edge(self, u, v) -> bool:
        return frozenset((u, v)) in self.edges

    def neighbors(self, v) -> set:
        out = set()
        for e in self.edges:
            if v in e:
                out |= e - {v}
        return out

    def degrees(self) -> dict:
        deg = {v: 0 for v in self.vertices}
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return deg

    def adjacency_masks(self) -> list[int]:
        """Neighbor bitmasks indexed by vertex position."""
        idx = {v: i for i, v in enumerate(self.vertices)}
        adj = [0] * len(self.vertices)
        for e in self.edges:
            u, v = tuple(e)
            adj[idx[u]] |= 1 << idx[v]
            adj[idx[v]] |= 1 << idx[u]
        return adj

    def relabel(self, mapping: Mapping) -> "FlagComplex":
        return FlagComplex(
            tuple(mapping[v] for v in self.vertices),
            frozenset(frozenset(mapping[v] for v in e) for e in self.edges),
        )

    def same_graph(self, other: "FlagComplex") -> bool:
        return set(self.vertices) == set(other.vertices) and self.edges == other.edges


# -- U_j, V_j and Gamma(O) --------------------------------------------------


@dataclass(frozen=True)
class UVSets:
    j: int
    U: tuple[int, ...]
    V: tuple[int, ...]


def _uv_all(O: FlagOrdering) -> list[UVSets]:
    order = [int(b) for b in O.order]
    prefixes = list(build_prefix_families(O))
    out = []
    for j, bj in enumerate(order, start=1):
        U, V = [], []
        for i in range(1, j):
            bi = order[i - 1]
            earlier = prefixes[i - 1]  # B_{i-1}
            if bi & ~bj:
                image = bi & ~bj
                if not any(b & ~bj == image for b in earlier):
                    U.append(i)
            else:
                if any(bi & ~b == 0 and b != bi and b & ~bj == 0 and b != bj for b in earlier):
                    V.append(i)
        out.append(UVSets(j, tuple(U), tuple(V)))
    return out


def compute_uv(O: FlagOrdering, j: int) -> UVSets:
    """U_j and V_j, 1-based ``j``."""
    if not 1 <= j <= O.k:
        raise IndexError(f"index {j} outside 1..{O.k}")
    return _uv_all(O.truncate(j))[j - 1]


def all_uv(O: FlagOrdering) -> list[UVSets]:
    return _uv_all(O)


def build_gamma_complex(O: FlagOrdering) -> FlagComplex:
    """Vertices v(b_1)..v(b_k), labelled by the sets; i < j adjacent iff i in U_j or V_j."""
    labels = tuple(ElementSet(b) for b in O.order)
    edges = []
    for uv in _uv_all(O):
        for i in uv.U + uv.V:
            edges.append((labels[i - 1], labels[uv.j - 1]))
    return FlagComplex.from_edges(labels, edges)


# -- clique counting --------------------------------------------------------


def _degeneracy_order(adj: Sequence[int]) -> list[int]:
    n = len(adj)
    remaining = (1 << n) - 1
    order = []
    while remaining:
        best, best_deg = -1, None
        m = remaining
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            d = bin(adj[v] & remaining).count("1")
            if best_deg is None or d < best_deg:
                best, best_deg = v, d
        order.append(best)
        remaining &= ~(1 << best)
    return order


def _count_cliques(adj: Sequence[int]) -> list[int]:
    n = len(adj)
    counts = [0] * (n + 1)
    counts[0] = 1

    def expand(P: int, holds: int, pivots: int) -> None:
        if not P:
            for r in range(pivots + 1):
                counts[holds + r] += comb(pivots, r)
            return
        best, best_deg = -1, -1
        m = P
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            d = bin(adj[v] & P).count("1")
            if d > best_deg:
                best, best_deg = v, d
        expand(P & adj[best], holds, pivots + 1)
        rest = P & ~adj[best] & ~(1 << best)
        P &= ~(1 << best)
        while rest:
            v = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            expand(P & adj[v], holds + 1, pivots)
            P &= ~(1 << v)

    later = (1 << n) - 1
    for v in _degeneracy_order(adj):
        later &= ~(1 << v)
        expand(adj[v] & later, 1, 0)
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    return counts


def f_vector_cliques(G: FlagComplex) -> CoeffVector:
    """Clique counts by size, ``t^0`` coefficient 1 for the empty face."""
    return CoeffVector(_count_cliques(G.adjacency_masks()))


# -- subcomplexes and joins -------------------------------------------------


def induced_subcomplex(G: FlagComplex, labels: Iterable[Hashable]) -> FlagComplex:
    keep = list(labels)
    known = set(G.vertices)
    for v in keep:
        if v not in known:
            raise UnknownLabel(f"{v!r} is not a vertex")
    ks = set(keep)
    verts = tuple(v for v in G.vertices if v in ks)
    return FlagComplex(verts, frozenset(e for e in G.edges if e <= ks))


def join(G1: FlagComplex, G2: FlagComplex) -> FlagComplex:
    """Disjoint union plus every cross edge; colliding labels become (1, v) / (2, v)."""
    if set(G1.vertices) & set(G2.vertices):
        G1 = G1.relabel({v: (1, v) for v in G1.vertices})
        G2 = G2.relabel({v: (2, v) for v in G2.vertices})
    cross = frozenset(frozenset((u, v)) for u in G1.vertices for v in G2.vertices)
    return FlagComplex(G1.vertices + G2.vertices, G1.edges | G2.edges | cross)


# -- induced orderings ------------------------------------------------------


def contracted_ordering(O: FlagOrdering, k: int) -> tuple[FlagOrdering, dict]:
    """Ordering of ``B_k / b_k`` from the images of U_k, with the vertex map back.

    Returns ``(ordering, mapping)`` where ``mapping`` sends each new vertex
    label ``b_i \\ b_k`` to the original ``b_i``.
    """
    if not 1 <= k <= O.k:
        raise IndexError(f"index {k} outside 1..{O.k}")
    T = O.truncate(k)
    bk = int(T.order[-1])
    uv = _uv_all(T)[-1]
    ground = T.B.ground & ~bk
    d_masks = sorted({int(d) & ~bk for d in T.D.members if d & ~bk}, key=canonical_key)
    images = [int(T.order[u - 1]) & ~bk for u in uv.U]
    D = Decomposition(ElementSet(ground), tuple(ElementSet(m) for m in d_masks))
    B = from_masks(T.B.n, ground, d_masks + images)
    new = FlagOrdering(B, D, tuple(ElementSet(m) for m in images))
    mapping = {ElementSet(m): T.order[u - 1] for m, u in zip(images, uv.U)}
    return new, mapping


def restricted_ordering(O: FlagOrdering, k: int) -> FlagOrdering:
    """Ordering of ``B|_{b_k}`` with decomposition D_k and order from V_k.

    Labels are unchanged.  Raises AssertionError if D_k fails to be a
    decomposition of ``b_k``.
    """
    if not 1 <= k <= O.k:
        raise IndexError(f"index {k} outside 1..{O.k}")
    T = O.truncate(k)
    bk = int(T.order[-1])
    uv = _uv_all(T)[-1]
    vset = set(uv.V)
    d_masks = [int(d) for d in T.D.members if d & ~bk == 0]
    d_masks += [int(b) for j, b in enumerate(T.order, start=1) if b & ~bk == 0 and j not in vset]
    D = Decomposition(
        ElementSet(bk), tuple(ElementSet(m) for m in sorted(set(d_masks), key=canonical_key))
    )
    problem = D.check()
    if problem:
        raise AssertionError(f"D_k for {fmt_set(bk)} is not a decomposition: {problem}")
    order = [int(T.order[v - 1]) for v in uv.V]
    B = from_masks(T.B.n, bk, d_masks + order)
    return FlagOrdering(B, D, tuple(ElementSet(m) for m in order))


# -- export -----------------------------------------------------------------


def label_text(v) -> str:
    if isinstance(v, ElementSet):
        return fmt_set(v)
    if isinstance(v, tuple) and all(isinstance(x, int) for x in v):
        return "(" + ",".join(map(str, v)) + ")"
    return str(v)


def _sorted_vertices(G: FlagComplex) -> list:
    return sorted(G.vertices, key=_vertex_key)


def _vertex_key(v):
    if isinstance(v, ElementSet):
        return (0, canonical_key(v), ())
    return (1, (0, 0), label_text(v))


def _sorted_edges(G: FlagComplex) -> list[tuple]:
    rank = {v: i for i, v in enumerate(_sorted_vertices(G))}
    pairs = [tuple(sorted(e, key=rank.__getitem__)) for e in G.edges]
    return sorted(pairs, key=lambda p: (rank[p[0]], rank[p[1]]))


def format_complex(G: FlagComplex) -> str:
    """Plain listing: ``vertices <m>``, one label per line, ``edges <e>``, one pair per line."""
    verts = _sorted_vertices(G)
    out = [f"vertices {len(verts)}"] + [label_text(v) for v in verts]
    edges = _sorted_edges(G)
    out.append(f"edges {len(edges)}")
    out += [f"{label_text(u)} -- {label_text(v)}" for u, v in edges]
    return "\n".join(out) + "\n"


def format_dot(G: FlagComplex, name: str = "G") -> str:
    out = [f"graph {name} {{"]
    out += [f'  "{label_text(v)}";' for v in _sorted_vertices(G)]
    out += [f'  "{label_text(u)}" -- "{label_text(v)}";' for u, v in _sorted_edges(G)]
    out.append("}")
    return "\n".join(out) + "\n"


def parse_complex(text: str) -> FlagComplex:
    """Read :func:`format_complex` output.  Labels come back as strings."""
    lines = [ln.rstrip("\n") for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or not lines[0].startswith("vertices"):
        raise ValueError("complex file must start with 'vertices <m>'")
    m = int(lines[0].split()[1])
    verts = [ln.strip() for ln in lines[1:1 + m]]
    rest = lines[1 + m:]
    if not rest or not rest[0].startswith("edges"):
        raise ValueError("missing 'edges <e>' section")
    e = int(rest[0].split()[1])
    edges = []
    for ln in rest[1:1 + e]:
        u, sep, v = ln.partition(" -- ")
        if not sep:
            raise ValueError(f"bad edge line {ln!r}")
        edges.append((u.strip(), v.strip()))
    if len(edges) != e:
        raise ValueError("edge count does not match header")
    return FlagComplex.from_edges(verts, edges)
