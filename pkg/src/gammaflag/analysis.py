"""Isomorphism of small complexes, the Frankl-Furedi-Kalai check, and the
three-way gamma verification harness."""

from __future__ import annotations

import json
import random
import time
from dataclasses import asdict, dataclass, field
from typing import Sequence

from .gammacomplex import FlagComplex, build_gamma_complex, f_vector_cliques, join
from .npcomplexes import cyclohedron_formula_gamma
from .oracle import gamma_oracle
from .ordering import find_flag_ordering
from .polyvec import CoeffVector, format_vector, gamma_via_volodin
from .setcore import BuildingSet, NotFlag, is_flag, maximal_elements, restriction

ISO_VERTEX_LIMIT = 40


class SizeLimit(ValueError):
    pass


class MalformedVector(ValueError):
    pass


# -- isomorphism ------------------------------------------------------------


def graphs_isomorphic(G1: FlagComplex, G2: FlagComplex) -> dict | None:
    """An edge-exact vertex bijection G1 -> G2, or None.

    Backtracking over G1's vertices (most constrained first), candidates
    pruned by degree and sorted neighbor-degree signature.
    """
    n = len(G1.vertices)
    if max(n, len(G2.vertices)) > ISO_VERTEX_LIMIT:
        raise SizeLimit(f"isomorphism search is limited to {ISO_VERTEX_LIMIT} vertices")
    if n != len(G2.vertices) or len(G1.edges) != len(G2.edges):
        return None
    a1, a2 = G1.adjacency_masks(), G2.adjacency_masks()
    deg1 = [bin(m).count("1") for m in a1]
    deg2 = [bin(m).count("1") for m in a2]

    def signature(adj, deg, v):
        nb = [deg[u] for u in range(n) if adj[v] >> u & 1]
        return deg[v], tuple(sorted(nb))

    sig1 = [signature(a1, deg1, v) for v in range(n)]
    sig2 = [signature(a2, deg2, v) for v in range(n)]
    if sorted(sig1) != sorted(sig2):
        return None

    # visit high-degree vertices first, then neighbors of placed ones
    order: list[int] = []
    placed = 0
    remaining = set(range(n))
    while remaining:
        v = max(remaining, key=lambda x: (bin(a1[x] & placed).count("1"), deg1[x], -x))
        order.append(v)
        placed |= 1 << v
        remaining.discard(v)

    image = [-1] * n
    used = 0

    def extend(pos: int) -> bool:
        nonlocal used
        if pos == n:
            return True
        v = order[pos]
        for w in range(n):
            if used >> w & 1 or sig2[w] != sig1[v]:
                continue
            ok = True
            for u in order[:pos]:
                if (a1[v] >> u & 1) != (a2[w] >> image[u] & 1):
                    ok = False
                    break
            if ok:
                image[v] = w
                used |= 1 << w
                if extend(pos + 1):
                    return True
                used &= ~(1 << w)
                image[v] = -1
        return False

    if not extend(0):
        return None
    mapping = {G1.vertices[v]: G2.vertices[image[v]] for v in range(n)}
    if G1.relabel(mapping).edges != G2.edges:
        raise AssertionError("isomorphism witness failed edge check")
    return mapping


def degree_multiset(G: FlagComplex) -> dict[int, int]:
    out: dict[int, int] = {}
    for d in G.degrees().values():
        out[d] = out.get(d, 0) + 1
    return dict(sorted(out.items()))


# -- Frankl-Furedi-Kalai ----------------------------------------------------


def turan_cliques(parts: int, n: int, k: int) -> int:
    """Number of k-cliques in the complete ``parts``-partite graph on n vertices, parts balanced."""
    if k == 0:
        return 1
    q, rem = divmod(n, parts)
    sizes = [q + 1] * rem + [q] * (parts - rem)
    e = [1] + [0] * k
    for s in sizes:
        for j in range(k, 0, -1):
            e[j] += e[j - 1] * s
    return e[k]


def colored_representation(m: int, k: int, r: int) -> list[tuple[int, int, int]]:
    """Greedy ``m = sum C_{r-k+j}(n_j, j)`` as triples ``(parts, n_j, j)``, j descending."""
    out = []
    parts, j = r, k
    while m > 0:
        if j == 0:
            raise AssertionError("representation did not terminate")
        n = j
        while turan_cliques(parts, n + 1, j) <= m:
            n += 1
        out.append((parts, n, j))
        m -= turan_cliques(parts, n, j)
        parts -= 1
        j -= 1
    return out


def colored_shadow(m: int, k: int, r: int) -> int:
    """Least number of (k-1)-sets under m k-sets of an r-colorable complex."""
    return sum(turan_cliques(p, n, j - 1) for p, n, j in colored_representation(m, k, r))


def ffk_check(f: CoeffVector | Sequence[int]) -> bool:
    """True iff f is the f-vector of a balanced complex (colors = dimension + 1)."""
    coeffs = list(f.trimmed() if isinstance(f, CoeffVector) else f)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs or coeffs[0] != 1:
        raise MalformedVector("f-vector must start with 1")
    if any(not isinstance(c, int) or c < 0 for c in coeffs):
        raise MalformedVector("f-vector entries must be nonnegative integers")
    r = len(coeffs) - 1
    for k in range(1, r + 1):
        if coeffs[k - 1] < colored_shadow(coeffs[k], k, r):
            return False
    return True


# -- verification harness --------------------------------------------------


@dataclass
class VerifyReport:
    identifier: str
    orderings: list[str]
    gamma_oracle: list[int]
    gamma_volodin: list[int]
    gamma_complex: list[list[int]]
    agreement: bool
    ffk: bool
    timings_ms: dict[str, float] = field(default_factory=dict)
    formula_gamma: list[int] | None = None
    formula_note: str = ""

    def to_text(self) -> str:
        lines = [
            f"building set: {self.identifier}",
            f"orderings:    {len(self.orderings)}",
            f"gamma oracle:  {format_vector(self.gamma_oracle)}",
            f"gamma volodin: {format_vector(self.gamma_volodin)}",
        ]
        for i, g in enumerate(self.gamma_complex, start=1):
            lines.append(f"f(Gamma(O_{i})):  {format_vector(g)}")
        lines.append(f"agreement: {'yes' if self.agreement else 'NO'}")
        lines.append(f"ffk: {'passes' if self.ffk else 'fails'}")
        if self.formula_gamma is not None:
            lines.append(f"formula gamma: {format_vector(self.formula_gamma)}")
            lines.append(f"note: {self.formula_note}")
        if self.timings_ms:
            lines.append(
                "timings ms: " + ", ".join(f"{k}={v:.1f}" for k, v in self.timings_ms.items())
            )
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2) + "\n"


def _component_complex(B: BuildingSet, rng_seed: int) -> tuple[FlagComplex, str]:
    parts = []
    desc = []
    for top in maximal_elements(B):
        comp = restriction(B, top)
        O = find_flag_ordering(comp, strategy="random", seed=rng_seed)
        parts.append(build_gamma_complex(O))
        desc.append(str(O))
    G = FlagComplex((), frozenset())
    for P in parts:
        G = join(G, P)
    return G, " * ".join(desc)


def verify_triple(
    B: BuildingSet,
    num_orderings: int = 3,
    seed: int = 0,
    identifier: str = "",
    max_tries: int = 50,
) -> VerifyReport:
    """gamma three ways: nested-set oracle, the add-one recursion, clique counts.

    Orderings come from the seeded random strategy; duplicates are resampled
    up to ``max_tries`` seeds, so a set with few orderings reports fewer.
    Disconnected sets use one ordering per component and the join.
    """
    if not is_flag(B):
        raise NotFlag("verification needs a flag building set")
    timings = {}
    t0 = time.perf_counter()
    g_oracle = gamma_oracle(B)
    timings["oracle"] = (time.perf_counter() - t0) * 1000
    t0 = time.perf_counter()
    g_vol = gamma_via_volodin(B)
    timings["volodin"] = (time.perf_counter() - t0) * 1000

    t0 = time.perf_counter()
    seen: set[str] = set()
    complexes = []
    s = seed
    while len(seen) < num_orderings and s < seed + max_tries:
        G, desc = _component_complex(B, s)
        s += 1
        if desc in seen:
            continue
        seen.add(desc)
        complexes.append((desc, f_vector_cliques(G)))
    timings["complex"] = (time.perf_counter() - t0) * 1000

    vectors = [g_oracle, g_vol] + [f for _, f in complexes]
    agreement = all(v == g_oracle for v in vectors)
    report = VerifyReport(
        identifier=identifier or str(B),
        orderings=[d for d, _ in complexes],
        gamma_oracle=g_oracle.tolist(),
        gamma_volodin=g_vol.tolist(),
        gamma_complex=[f.tolist() for _, f in complexes],
        agreement=agreement,
        ffk=all(ffk_check(v) for v in vectors),
        timings_ms=timings,
    )
    if identifier.startswith("cyc:"):
        n = int(identifier.split(":")[1])
        formula = cyclohedron_formula_gamma(n)
        report.formula_gamma = formula
        if CoeffVector(formula) == g_oracle:
            report.formula_note = "multinomial closed form agrees with the oracle"
        else:
            shifted = cyclohedron_formula_gamma(n - 1)
            report.formula_note = (
                f"multinomial closed form n!/(r!r!(n-2r)!) diverges from the oracle; "
                f"with n-1 in place of n it gives {format_vector(shifted)}"
            )
    return report


def random_flag_building_set(n: int, rng: random.Random, density: float | None = None) -> BuildingSet:
    """Random connected flag building set on [n]: a random graph's building
    set plus closed-in random extra sets, kept only if still flag."""
    from .setcore import Graph, closure, graphical_building_set

    while True:
        p = rng.uniform(0.3, 0.9) if density is None else density
        edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.random() < p]
        base = graphical_building_set(Graph(n, tuple(edges)))
        extra = [
            [i for i in range(1, n + 1) if rng.random() < 0.5] for _ in range(rng.randrange(3))
        ]
        extra = [e for e in extra if len(e) >= 2]
        B = closure(n, list(base.family) + extra + [list(range(1, n + 1))])
        if is_flag(B):
            return B
