"""Sign functions of permutations: quadratic forms over the two-element field.

The summand of the super weight system indexed by ``(i_1, ..., i_k)`` carries
the sign ``(-1)**f(p_1, ..., p_k)`` where ``p_a`` is the parity of ``i_a`` and

    f = sum(p_a for a in linear) + sum(p_a * p_b for {a, b} in quadratic).

Variable ``a`` belongs to the edge entering vertex ``a`` of the digraph.
Since ``p * p = p`` over GF(2), every form has a unique representation with
distinct linear indices and pairs of distinct indices; all constructors
reduce to it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .perm import Permutation, merge_neighbors


def _reduce(linear: Iterable[int], quadratic: Iterable[tuple[int, int]]):
    lin: set[int] = set()
    quad: set[tuple[int, int]] = set()
    for a in linear:
        lin ^= {a}
    for a, b in quadratic:
        if a == b:
            lin ^= {a}
        else:
            quad ^= {(min(a, b), max(a, b))}
    return frozenset(lin), frozenset(quad)


@dataclass(frozen=True)
class SignFunction:
    k: int
    linear: frozenset[int]
    quadratic: frozenset[tuple[int, int]]

    def __post_init__(self):
        lin, quad = _reduce(self.linear, self.quadratic)
        for a in lin | {x for p in quad for x in p}:
            if not 1 <= a <= self.k:
                raise ValueError(f"index {a} outside 1..{self.k}")
        object.__setattr__(self, "linear", lin)
        object.__setattr__(self, "quadratic", quad)

    @classmethod
    def build(cls, k: int, linear=(), quadratic=()) -> SignFunction:
        """Like the constructor, but duplicates cancel mod 2 and ``{a, a}`` counts as ``a``."""
        lin, quad = _reduce(linear, quadratic)
        return cls(k, lin, quad)

    def __call__(self, parities: Sequence[int]) -> int:
        return evaluate_sign(self, parities)

    def __add__(self, other: SignFunction) -> SignFunction:
        if self.k != other.k:
            raise ValueError("arity mismatch")
        return SignFunction.build(
            self.k, list(self.linear) + list(other.linear), list(self.quadratic) + list(other.quadratic)
        )

    def add_product(self, left: Iterable[int], right: Iterable[int]) -> SignFunction:
        """``self + (sum p_left) * (sum p_right)``."""
        left, right = list(left), list(right)
        return SignFunction.build(
            self.k,
            self.linear,
            list(self.quadratic) + [(a, b) for a in left for b in right],
        )

    def relabel(self, mapping: Mapping[int, int], k: int | None = None) -> SignFunction:
        """Rename variables; merged names combine with ``p * p = p``."""
        return SignFunction.build(
            self.k if k is None else k,
            [mapping[a] for a in self.linear],
            [(mapping[a], mapping[b]) for a, b in self.quadratic],
        )

    def is_zero(self) -> bool:
        return not self.linear and not self.quadratic

    def __str__(self):
        parts = [f"i{a}" for a in sorted(self.linear)]
        parts += [f"i{a}*i{b}" for a, b in sorted(self.quadratic)]
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {
            "linear": sorted(self.linear),
            "quadratic": [list(p) for p in sorted(self.quadratic)],
        }

    @classmethod
    def from_json(cls, data: dict, k: int) -> SignFunction:
        return cls.build(k, data.get("linear", ()), [tuple(p) for p in data.get("quadratic", ())])

    @classmethod
    def parse(cls, text: str, k: int) -> SignFunction:
        """Parse sums of products of linear forms, e.g. ``"i4 + (i1+i3)*(i4+i2)"``.

        Products are expanded over GF(2); at most two factors per product.
        """
        text = text.replace(" ", "")
        if text in ("", "0"):
            return cls(k, frozenset(), frozenset())
        lin: list[int] = []
        quad: list[tuple[int, int]] = []
        for term in _split_top(text, "+"):
            factors = [_linear_form(f) for f in _split_top(term, "*")]
            if len(factors) == 1:
                lin.extend(factors[0])
            elif len(factors) == 2:
                quad.extend((a, b) for a in factors[0] for b in factors[1])
            else:
                raise ValueError(f"term {term!r} is not quadratic")
        return cls.build(k, lin, quad)


def _split_top(text: str, sep: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    return out


def _linear_form(text: str) -> list[int]:
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    out = []
    for tok in text.split("+"):
        m = re.fullmatch(r"i_?\{?(\d+)\}?", tok)
        if not m:
            raise ValueError(f"bad variable {tok!r}")
        out.append(int(m.group(1)))
    return out


def distinguished_indices(sigma: Permutation) -> frozenset[int]:
    """Targets of the edges pointing to the right: ``{a : sigma^-1(a) < a}``."""
    inv = sigma.inverse()
    return frozenset(a for a in range(1, sigma.k + 1) if inv(a) < a)


def _shifted_edges(sigma: Permutation) -> list[tuple[int, int]]:
    # edge into a, source moved right by 1/3 and target left by 1/3, scaled by 3
    inv = sigma.inverse()
    out = []
    for a in range(1, sigma.k + 1):
        s, t = 3 * inv(a) + 1, 3 * a - 1
        out.append((min(s, t), max(s, t)))
    return out


def distinguished_pairs(sigma: Permutation) -> frozenset[tuple[int, int]]:
    """Pairs ``(a, b)``, ``a < b``, whose shifted edges have alternating ends."""
    spans = _shifted_edges(sigma)
    out = set()
    for a in range(sigma.k):
        lo, hi = spans[a]
        for b in range(a + 1, sigma.k):
            s, t = spans[b]
            if (lo < s < hi) != (lo < t < hi):
                out.add((a + 1, b + 1))
    return frozenset(out)


def sign_function(sigma: Permutation) -> SignFunction:
    return SignFunction(sigma.k, distinguished_indices(sigma), distinguished_pairs(sigma))


def evaluate_sign(f: SignFunction, parities: Sequence[int]) -> int:
    if len(parities) != f.k:
        raise ValueError(f"expected {f.k} parities, got {len(parities)}")
    total = 0
    for a in f.linear:
        total ^= parities[a - 1] & 1
    for a, b in f.quadratic:
        total ^= parities[a - 1] & parities[b - 1] & 1
    return total


def neighbor_edges(sigma: Permutation, l: int) -> tuple[int, int, int, int]:
    """Edges ``(a, b, c, d)`` at vertices ``l, l+1``.

    ``a`` enters ``l+1``, ``b`` enters ``l``, ``c`` leaves ``l`` and ``d``
    leaves ``l+1``; edges are named by their targets, so some may coincide.
    """
    return l + 1, l, sigma(l), sigma(l + 1)


def swap_neighbors_sign(f: SignFunction, sigma: Permutation, l: int) -> SignFunction:
    """Sign function of ``(l l+1) sigma (l l+1)`` obtained from ``f = f_sigma``.

    The four pairs ``{a,c}, {a,d}, {b,c}, {b,d}`` toggle; afterwards the
    variables are renamed to the edges of the swapped permutation.
    """
    if not 1 <= l < sigma.k:
        raise ValueError(f"position {l} out of range 1..{sigma.k - 1}")
    a, b, c, d = neighbor_edges(sigma, l)
    toggled = f.add_product((a, d), (b, c))
    swap = {i: i for i in range(1, sigma.k + 1)}
    swap[l], swap[l + 1] = l + 1, l
    return toggled.relabel(swap)


def sign_after_merge(f: SignFunction, edge_map: Mapping[int, int], k: int) -> SignFunction:
    """Substitute ``f`` along a merge's edge map (glued edges share a variable)."""
    return f.relabel(edge_map, k)


def merge_neighbors_sign(f: SignFunction, sigma: Permutation, l: int, glue: str = "ac") -> SignFunction:
    """Sign function of ``merge_neighbors(sigma, l, glue).perm`` obtained from ``f = f_sigma``.

    The glued variables are set equal. For ``"bd"`` the same four pairs as in
    :func:`swap_neighbors_sign` toggle first. If the merge closes a loop the
    loop variable must occur in ``f`` only as a linear term, which is dropped:
    summing it out gives the factor ``m - n``.
    """
    merged = merge_neighbors(sigma, l, glue)
    g = f
    if glue == "bd":
        a, b, c, d = neighbor_edges(sigma, l)
        g = g.add_product((a, d), (b, c))
    if merged.loop:
        (loop,) = set(range(1, sigma.k + 1)) - set(merged.edge_map)
        g = SignFunction.build(g.k, list(g.linear) + [loop], g.quadratic)
        if any(loop in pair for pair in g.quadratic) or loop in g.linear:
            raise ValueError(f"loop variable i{loop} does not split off")
    return g.relabel(merged.edge_map, sigma.k - 1)


def sign_parities(indices: Sequence[int], m: int) -> list[int]:
    """Parities of 1-based indices in gl(m|n): 0 for ``i <= m``, else 1."""
    return [0 if i <= m else 1 for i in indices]


__all__ = [
    "SignFunction",
    "distinguished_indices",
    "distinguished_pairs",
    "sign_function",
    "evaluate_sign",
    "swap_neighbors_sign",
    "neighbor_edges",
    "sign_after_merge",
    "merge_neighbors_sign",
    "sign_parities",
]
