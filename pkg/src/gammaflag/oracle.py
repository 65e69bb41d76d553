"""Ground-truth gamma vectors from the nested set complex.

Nothing here touches flag orderings: faces of the nestohedron's dual are
enumerated directly and pushed through the f -> h -> gamma transforms.
"""

from __future__ import annotations

from .polyvec import CoeffVector, f_to_h, h_to_gamma
from .setcore import BuildingSet, maximal_elements, popcount


def _compatible(I: int, chosen: list[int], members: frozenset, above: list[int]) -> bool:
    for J in chosen:
        c = I & J
        if c and c != I and c != J:
            return False
    # Any new bad union contains I: some c in B that is I plus disjoint members.
    for c in above:
        rest = c & ~I
        inside = [J for J in chosen if J & ~rest == 0]
        cover = 0
        for J in inside:
            cover |= J
        if cover == rest:
            return False
    return True


def nested_f_vector(B: BuildingSet) -> CoeffVector:
    """Face counts of the nested set complex on ``B - B_max``.

    A nested set has pairwise nested-or-disjoint members, and no union of two
    or more pairwise disjoint members lies in B.
    """
    maxes = set(maximal_elements(B))
    cands = [int(b) for b in B.family if b not in maxes]
    members = B.masks()
    supersets = {
        I: [int(c) for c in B.family if c != I and I & ~c == 0] for I in cands
    }
    counts = [1]

    def dfs(start: int, chosen: list[int]) -> None:
        for idx in range(start, len(cands)):
            I = cands[idx]
            if _compatible(I, chosen, members, supersets[I]):
                size = len(chosen) + 1
                if size == len(counts):
                    counts.append(0)
                counts[size] += 1
                chosen.append(I)
                dfs(idx + 1, chosen)
                chosen.pop()

    dfs(0, [])
    return CoeffVector(counts)


def gamma_oracle(B: BuildingSet) -> CoeffVector:
    d = popcount(B.ground) - len(maximal_elements(B))
    return h_to_gamma(f_to_h(nested_f_vector(B), d), d)
