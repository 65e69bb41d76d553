"""Integer polynomials and the f -> h -> gamma transforms.

Also the gamma recursion over flag building sets: adding one element ``b``
to a flag building set ``B`` raises gamma by ``t * gamma(B|b) * gamma(B/b)``.
"""

from __future__ import annotations

import re
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from .setcore import (
    BuildingSet,
    NotFlag,
    contraction,
    elements,
    from_masks,
    is_flag,
    maximal_elements,
    restriction,
)


class NotSymmetric(ValueError):
    pass


class DegreeTooHigh(ValueError):
    pass


class CoeffVector:
    """Integer coefficient vector, index = degree.

    Equality ignores trailing zeros and the optional ambient parameter ``d``.
    """

    __slots__ = ("coeffs", "d")

    def __init__(self, coeffs: Iterable[int] = (1,), d: int | None = None):
        self.coeffs = tuple(int(c) for c in coeffs)
        self.d = d

    def trimmed(self) -> tuple[int, ...]:
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        return tuple(c)

    @property
    def degree(self) -> int:
        return len(self.trimmed()) - 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if i < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CoeffVector):
            return self.trimmed() == other.trimmed()
        if isinstance(other, (tuple, list)):
            return self.trimmed() == CoeffVector(other).trimmed()
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.trimmed())

    def __add__(self, other: "CoeffVector") -> "CoeffVector":
        return poly_add(self, other)

    def __mul__(self, other: "CoeffVector") -> "CoeffVector":
        return poly_mul(self, other)

    def __repr__(self) -> str:
        return f"CoeffVector({list(self.trimmed())})"

    def __str__(self) -> str:
        return format_vector(self)

    def tolist(self) -> list[int]:
        return list(self.trimmed())


def format_vector(v: CoeffVector | Sequence[int]) -> str:
    coeffs = v.trimmed() if isinstance(v, CoeffVector) else tuple(v)
    return "(" + ", ".join(str(c) for c in coeffs) + ")"


def parse_vector(text: str) -> CoeffVector:
    """Lenient reader: ``(1, 22, 16)``, ``1,22,16`` and ``1 22 16`` all work."""
    body = text.strip().strip("()[]")
    parts = [p for p in re.split(r"[,\s]+", body) if p]
    if not parts:
        raise ValueError(f"no coefficients in {text!r}")
    try:
        return CoeffVector(int(p) for p in parts)
    except ValueError:
        raise ValueError(f"bad coefficient vector {text!r}") from None


def _as_vec(a) -> CoeffVector:
    return a if isinstance(a, CoeffVector) else CoeffVector(a)


def poly_add(a, b) -> CoeffVector:
    a, b = _as_vec(a), _as_vec(b)
    n = max(len(a), len(b))
    return CoeffVector(a[i] + b[i] for i in range(n))


def poly_mul(a, b) -> CoeffVector:
    a, b = _as_vec(a), _as_vec(b)
    ac, bc = a.trimmed(), b.trimmed()
    if not ac or not bc:
        return CoeffVector(())
    out = [0] * (len(ac) + len(bc) - 1)
    for i, x in enumerate(ac):
        if x:
            for j, y in enumerate(bc):
                out[i + j] += x * y
    return CoeffVector(out)


def poly_shift_mul_t(a) -> CoeffVector:
    return CoeffVector((0,) + tuple(_as_vec(a).coeffs))


def f_to_h(f, d: int) -> CoeffVector:
    """Coefficients of ``(t-1)^d f(1/(t-1)) = sum_i f_i (t-1)^(d-i)``."""
    fc = _as_vec(f).trimmed()
    if len(fc) - 1 > d:
        raise DegreeTooHigh(f"f has degree {len(fc) - 1} > d={d}")
    h = [0] * (d + 1)
    for i, fi in enumerate(fc):
        e = d - i
        for j in range(e + 1):
            h[j] += fi * comb(e, j) * (-1) ** (e - j)
    return CoeffVector(h, d=d)


def h_to_f(h, d: int | None = None) -> CoeffVector:
    """Inverse of :func:`f_to_h`: ``f(s) = sum_j h_j s^(d-j) (1+s)^j``."""
    hv = _as_vec(h)
    if d is None:
        d = hv.d if hv.d is not None else len(hv) - 1
    hc = hv.trimmed()
    if len(hc) - 1 > d:
        raise DegreeTooHigh(f"h has degree {len(hc) - 1} > d={d}")
    f = [0] * (d + 1)
    for j, hj in enumerate(hc):
        for m in range(j + 1):
            f[d - j + m] += hj * comb(j, m)
    return CoeffVector(f, d=d)


def gamma_to_h(gamma, d: int) -> CoeffVector:
    h = [0] * (d + 1)
    for i, g in enumerate(_as_vec(gamma).trimmed()):
        e = d - 2 * i
        if e < 0:
            if g:
                raise DegreeTooHigh(f"gamma_{i} nonzero but d={d}")
            continue
        for m in range(e + 1):
            h[i + m] += g * comb(e, m)
    return CoeffVector(h, d=d)


def h_to_gamma(h, d: int | None = None) -> CoeffVector:
    """Peel ``gamma_i t^i (1+t)^(d-2i)`` off a symmetric h, lowest degree first."""
    hv = _as_vec(h)
    if d is None:
        d = hv.d if hv.d is not None else len(hv) - 1
    res = [hv[i] for i in range(d + 1)]
    if len(hv.trimmed()) > d + 1:
        raise DegreeTooHigh(f"h has degree above d={d}")
    if any(res[i] != res[d - i] for i in range(d + 1)):
        raise NotSymmetric(f"h = {format_vector(res)} is not palindromic")
    gamma = []
    for i in range(d // 2 + 1):
        g = res[i]
        gamma.append(g)
        e = d - 2 * i
        for m in range(e + 1):
            res[i + m] -= g * comb(e, m)
    if any(res):
        raise NotSymmetric(f"residual {res} after peeling")
    return CoeffVector(gamma, d=d)


# -- gamma by the add-one-element recursion ---------------------------------


def dense_key(B: BuildingSet) -> tuple[int, tuple[int, ...]]:
    """Relabel the ground set to ``1..m`` in increasing order; sorted masks."""
    pos = {e: k for k, e in enumerate(elements(B.ground))}
    masks = []
    for b in B.family:
        m = 0
        for e in elements(b):
            m |= 1 << pos[e]
        masks.append(m)
    return len(pos), tuple(sorted(masks))


def gamma_via_volodin(B: BuildingSet, form: str = "pre") -> CoeffVector:
    """gamma of a flag building set, folding over a flag ordering.

    Disconnected sets multiply over their maximal components.  ``form``
    picks ``gamma(B|b) gamma(B/b)`` on the set before adding ``b`` ("pre")
    or after ("post"); both must agree.
    """
    if form not in ("pre", "post"):
        raise ValueError("form must be 'pre' or 'post'")
    if not is_flag(B):
        raise NotFlag("gamma recursion needs a flag building set")
    return CoeffVector(_gamma_cached(dense_key(B), form == "post"))


@lru_cache(maxsize=None)
def _gamma_cached(key: tuple[int, tuple[int, ...]], post: bool) -> tuple[int, ...]:
    from .ordering import build_prefix_families, find_flag_ordering

    m, masks = key
    B = from_masks(m, (1 << m) - 1, masks)
    maxes = maximal_elements(B)
    if len(maxes) > 1:
        g = CoeffVector((1,))
        for top in maxes:
            g = poly_mul(g, _gamma_cached(dense_key(restriction(B, top)), post))
        return g.trimmed()
    O = find_flag_ordering(B, strategy="lex")
    g = CoeffVector((1,))
    for j, (before, b) in enumerate(zip(build_prefix_families(O), O.order)):
        cur = before | {int(b)} if post else before
        Bj = from_masks(m, B.ground, cur)
        term = poly_mul(
            _gamma_part(restriction(Bj, b), post),
            _gamma_part(contraction(Bj, b), post),
        )
        g = poly_add(g, poly_shift_mul_t(term))
    return g.trimmed()


def _gamma_part(B: BuildingSet, post: bool) -> tuple[int, ...]:
    return _gamma_cached(dense_key(B), post)
