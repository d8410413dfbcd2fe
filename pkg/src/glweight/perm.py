"""Permutations, their digraphs and chord diagrams.

Elements are named 1..k in every public interface. A permutation is stored as
the tuple of its images ``(sigma(1), ..., sigma(k))``.

The digraph of a permutation has the elements as vertices placed left to right
and an edge ``i -> sigma(i)`` for every ``i``. An edge is named by its target
vertex, so vertex ``p`` carries the incoming edge ``p`` and the outgoing edge
``sigma(p)``.  Reading vertex ``p`` as the matrix unit ``E[x_p, x_sigma(p)]``
gives the word that the weight systems sum over; the structural operations
below (neighbour swap, the two neighbour merges) are phrased on such words.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from itertools import permutations as _permutations
from typing import Iterable, Iterator, NamedTuple, Sequence


class ParseError(ValueError):
    """Malformed permutation or chord diagram text."""


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a bijection of 1..{len(images)}: {list(images)}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, k: int) -> Permutation:
        return cls(tuple(range(1, k + 1)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], k: int | None = None) -> Permutation:
        cycles = [list(c) for c in cycles]
        seen = [x for c in cycles for x in c]
        if len(seen) != len(set(seen)):
            raise ValueError(f"repeated element in cycles {cycles}")
        if k is None:
            k = max(seen, default=0)
        images = list(range(1, k + 1))
        for c in cycles:
            for pos, x in enumerate(c):
                if not 1 <= x <= k:
                    raise ValueError(f"element {x} outside 1..{k}")
                images[x - 1] = c[(pos + 1) % len(c)]
        return cls(tuple(images))

    @property
    def k(self) -> int:
        return len(self.images)

    def __len__(self):
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def inverse(self) -> Permutation:
        inv = [0] * self.k
        for i, v in enumerate(self.images, 1):
            inv[v - 1] = i
        return Permutation(tuple(inv))

    def compose(self, other: Permutation) -> Permutation:
        """``self o other``: apply ``other`` first."""
        if self.k != other.k:
            raise ValueError("size mismatch")
        return Permutation(tuple(self(other(i)) for i in range(1, self.k + 1)))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        """Cycles, each starting at its minimum, sorted by minimum."""
        seen = set()
        out = []
        for start in range(1, self.k + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self(start)
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self(x)
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def is_involution(self) -> bool:
        return all(self(self(i)) == i for i in range(1, self.k + 1))

    def fixed_points(self) -> list[int]:
        return [i for i in range(1, self.k + 1) if self(i) == i]

    def cycle_string(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "Id" if self.k else "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __str__(self):
        return self.cycle_string()

    def to_json(self) -> dict:
        return {"k": self.k, "images": list(self.images)}

    @classmethod
    def from_json(cls, data: dict) -> Permutation:
        images = tuple(data["images"])
        if "k" in data and data["k"] != len(images):
            raise ValueError(f"k={data['k']} does not match {len(images)} images")
        return cls(images)


@dataclass(frozen=True)
class Digraph:
    vertices: tuple[int, ...]
    edges: frozenset[tuple[int, int]]


def digraph(sigma: Permutation) -> Digraph:
    return Digraph(
        tuple(range(1, sigma.k + 1)),
        frozenset((i, sigma(i)) for i in range(1, sigma.k + 1)),
    )


@dataclass(frozen=True)
class ChordDiagram:
    """``n`` chords on the points 1..2n of a circle cut at its base point."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple(sorted(tuple(sorted((int(a), int(b)))) for a, b in self.pairs))
        pts = [x for p in pairs for x in p]
        if sorted(pts) != list(range(1, 2 * len(pairs) + 1)):
            raise ValueError(f"chords {list(pairs)} do not pair up 1..{2 * len(pairs)}")
        object.__setattr__(self, "pairs", pairs)

    @property
    def n(self) -> int:
        return len(self.pairs)

    def to_json(self) -> dict:
        return {"n": self.n, "pairs": [list(p) for p in self.pairs]}

    @classmethod
    def from_json(cls, data) -> ChordDiagram:
        if isinstance(data, dict):
            d = cls(tuple(tuple(p) for p in data["pairs"]))
            if "n" in data and data["n"] != d.n:
                raise ValueError(f"n={data['n']} does not match {d.n} chords")
            return d
        return cls(tuple(tuple(p) for p in data))

    @classmethod
    def from_involution(cls, sigma: Permutation) -> ChordDiagram:
        if not sigma.is_involution() or sigma.fixed_points():
            raise ValueError(f"{sigma} is not a fixed-point-free involution")
        return cls(tuple(c for c in sigma.cycles()))


# -- parsing ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(\(|\)|\d+|,|\S)")


def parse_permutation(text: str, k: int | None = None) -> Permutation:
    """Parse cycle notation ``"(1 3 2)(4 5)"`` or one-line notation ``"3 1 2"``.

    In cycle notation unmentioned elements are fixed points up to ``k`` (or up
    to the largest element mentioned). ``"()"`` is the empty permutation and
    ``"Id"`` the identity of ``S_k``.

    >>> parse_permutation("(1 3 2)").images
    (3, 1, 2)
    >>> parse_permutation("2 1 3").images
    (2, 1, 3)
    """
    text = text.strip()
    if not text:
        raise ParseError("empty input")
    if text.startswith("{") or text.startswith("["):
        return _parse_json_perm(text, k)
    if text.lower() in ("id", "e"):
        return Permutation.identity(k or 0)
    tokens = [m.group(1) for m in _TOKEN.finditer(text)]
    if "(" in tokens or ")" in tokens:
        return _parse_cycles(tokens, k)
    values = []
    for tok in tokens:
        if tok == ",":
            continue
        if not tok.isdigit():
            raise ParseError(f"unexpected token {tok!r}")
        values.append(int(tok))
    for v in values:
        if not 1 <= v <= len(values):
            raise ParseError(f"image {v} outside 1..{len(values)}")
    dup = [v for v in values if values.count(v) > 1]
    if dup:
        raise ParseError(f"duplicate image {dup[0]}")
    if k is not None and k != len(values):
        raise ParseError(f"one-line notation has {len(values)} entries, expected {k}")
    return Permutation(tuple(values))


def _parse_cycles(tokens: list[str], k: int | None) -> Permutation:
    cycles: list[list[int]] = []
    current: list[int] | None = None
    for tok in tokens:
        if tok == "(":
            if current is not None:
                raise ParseError("nested '('")
            current = []
        elif tok == ")":
            if current is None:
                raise ParseError("unbalanced ')'")
            if current:
                cycles.append(current)
            current = None
        elif tok == ",":
            if current is None:
                raise ParseError("',' outside a cycle")
        elif tok.isdigit():
            if current is None:
                raise ParseError(f"element {tok!r} outside a cycle")
            if int(tok) < 1:
                raise ParseError(f"element {tok!r} must be at least 1")
            current.append(int(tok))
        else:
            raise ParseError(f"unexpected token {tok!r}")
    if current is not None:
        raise ParseError("unterminated cycle, missing ')'")
    seen: set[int] = set()
    for c in cycles:
        for x in c:
            if x in seen:
                raise ParseError(f"duplicate element {x}")
            seen.add(x)
    if k is not None and seen and max(seen) > k:
        raise ParseError(f"element {max(seen)} exceeds k={k}")
    return Permutation.from_cycles(cycles, k)


def _parse_json_perm(text: str, k: int | None) -> Permutation:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON: {exc}") from None
    if isinstance(data, list):
        data = {"images": data}
    try:
        sigma = Permutation.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(str(exc)) from None
    if k is not None and sigma.k != k:
        raise ParseError(f"expected k={k}, got {sigma.k}")
    return sigma


def parse_diagram(text: str) -> ChordDiagram:
    """Parse ``"[[1,3],[2,4]]"`` / ``{"n": 2, "pairs": ...}`` or ``"(1 3)(2 4)"``."""
    text = text.strip()
    if text.startswith("[") or text.startswith("{"):
        try:
            return ChordDiagram.from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON: {exc}") from None
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(str(exc)) from None
    sigma = parse_permutation(text)
    try:
        return ChordDiagram.from_involution(sigma)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


# -- structure -------------------------------------------------------------

def diagram_to_involution(d: ChordDiagram) -> Permutation:
    """The product of the transpositions ``(l r)`` over the chords."""
    return Permutation.from_cycles(d.pairs, 2 * d.n)


def base_point_rotation(sigma: Permutation) -> Permutation:
    """Conjugate by the cyclic shift ``i -> i-1`` (with ``1 -> k``)."""
    k = sigma.k
    if k == 0:
        raise ValueError("cannot rotate the empty permutation")
    shift = lambda i: (i - 2) % k + 1
    images = [0] * k
    for i in range(1, k + 1):
        images[shift(i) - 1] = shift(sigma(i))
    return Permutation(tuple(images))


def rotate_diagram(d: ChordDiagram) -> ChordDiagram:
    return ChordDiagram.from_involution(base_point_rotation(diagram_to_involution(d)))


def _blocks0(images: Sequence[int]) -> list[tuple[int, int]]:
    # 0-based images; returns [start, stop) of the finest closed intervals
    out = []
    start = 0
    reach = -1
    for i, v in enumerate(images):
        reach = max(reach, v)
        if reach == i:
            out.append((start, i + 1))
            start = i + 1
    return out


def concatenation_blocks(sigma: Permutation) -> list[Permutation]:
    """Split ``sigma`` into its finest consecutive sigma-closed intervals."""
    zero = [v - 1 for v in sigma.images]
    return [
        Permutation(tuple(zero[i] - a + 1 for i in range(a, b)))
        for a, b in _blocks0(zero)
    ]


def concatenate(*parts: Permutation) -> Permutation:
    images: list[int] = []
    for p in parts:
        off = len(images)
        images.extend(v + off for v in p.images)
    return Permutation(tuple(images))


def _is_standard_cycle0(images: Sequence[int]) -> bool:
    k = len(images)
    return k > 0 and all(images[i] == (i + 1) % k for i in range(k))


def standard_cycle_length(sigma: Permutation) -> int | None:
    """``k`` if ``sigma`` is ``1 -> 2 -> ... -> k -> 1`` (a fixed point counts), else None."""
    zero = [v - 1 for v in sigma.images]
    return sigma.k if _is_standard_cycle0(zero) else None


# -- neighbour operations on 0-based image tuples ---------------------------

def _swap0(images: tuple[int, ...], l: int) -> tuple[int, ...]:
    # conjugation by the transposition (l, l+1), 0-based l
    t = lambda x: l + 1 if x == l else (l if x == l + 1 else x)
    out = list(images)
    out[l], out[l + 1] = images[l + 1], images[l]
    return tuple(t(v) for v in out)


def _word_to_perm0(word: Sequence[tuple[int, int]]) -> tuple[tuple[int, ...], dict[int, int]]:
    # each variable occurs once as a first and once as a second index
    pos = {u: p for p, (u, _) in enumerate(word)}
    return tuple(pos[v] for _, v in word), pos


def _merge0(images: tuple[int, ...], l: int, glue: str):
    """Contract the factors at ``l, l+1`` of the word of ``images`` (0-based).

    ``glue="ac"`` identifies the edge entering ``l+1`` with the edge leaving
    ``l``; ``glue="bd"`` identifies the edge entering ``l`` with the edge
    leaving ``l+1``. Returns ``(images', loop, edge_map)``: ``loop`` is True when
    the two glued edges are the same edge (a closed loop, worth one ``C0``),
    and ``edge_map`` sends each old edge to its edge in the result.
    """
    u1, v1 = l, images[l]
    u2, v2 = l + 1, images[l + 1]
    if glue == "ac":
        new, old, repl = (u1, v2), u2, v1
    elif glue == "bd":
        new, old, repl = (u2, v1), u1, v2
    else:
        raise ValueError(f"glue must be 'ac' or 'bd', not {glue!r}")
    loop = old == repl
    word = [(p, images[p]) for p in range(len(images))]
    word[l : l + 2] = [new]
    if not loop:
        word = [(repl if u == old else u, repl if v == old else v) for u, v in word]
    result, pos = _word_to_perm0(word)
    edge_map = {e: pos[repl if e == old else e] for e in range(len(images)) if not (loop and e == old)}
    return result, loop, edge_map


class Merge(NamedTuple):
    perm: Permutation
    loop: bool
    edge_map: dict[int, int]


def swap_neighbors(sigma: Permutation, l: int) -> Permutation:
    """``(l l+1) sigma (l l+1)``: the two neighbouring vertices trade places."""
    if not 1 <= l < sigma.k:
        raise ValueError(f"position {l} out of range 1..{sigma.k - 1}")
    return Permutation(tuple(v + 1 for v in _swap0(tuple(v - 1 for v in sigma.images), l - 1)))


def merge_neighbors(sigma: Permutation, l: int, glue: str = "ac") -> Merge:
    """Merge vertices ``l`` and ``l+1`` into one, gluing two of their edges.

    The merged vertex keeps position ``l``; later vertices shift down by one.
    With ``glue="ac"`` the merged vertex keeps the incoming edge of ``l`` and
    the outgoing edge of ``l+1``; with ``"bd"`` the other two. ``edge_map``
    is 1-based, old edge name to new edge name.
    """
    if not 1 <= l < sigma.k:
        raise ValueError(f"position {l} out of range 1..{sigma.k - 1}")
    images, loop, emap = _merge0(tuple(v - 1 for v in sigma.images), l - 1, glue)
    return Merge(
        Permutation(tuple(v + 1 for v in images)),
        loop,
        {e + 1: f + 1 for e, f in emap.items()},
    )


def all_permutations(k: int) -> Iterator[Permutation]:
    """S_k in lexicographic order of image lists."""
    for p in _permutations(range(1, k + 1)):
        yield Permutation(p)


def all_chord_diagrams(n: int) -> Iterator[ChordDiagram]:
    """All perfect matchings of 1..2n."""

    def rec(points):
        if not points:
            yield ()
            return
        first, rest = points[0], points[1:]
        for j, partner in enumerate(rest):
            for tail in rec(rest[:j] + rest[j + 1 :]):
                yield ((first, partner),) + tail

    for pairs in rec(tuple(range(1, 2 * n + 1))):
        yield ChordDiagram(pairs)


class FourTerm(NamedTuple):
    """``plus_p - minus_p + plus_q - minus_q`` vanishes for every weight system.

    A free end of one chord sits just after (``plus``) or just before
    (``minus``) each endpoint ``p``, ``q`` of another chord.
    """

    plus_p: ChordDiagram
    minus_p: ChordDiagram
    plus_q: ChordDiagram
    minus_q: ChordDiagram


def _word_to_diagram(word: Sequence) -> ChordDiagram:
    ends: dict = {}
    for pos, label in enumerate(word, 1):
        ends.setdefault(label, []).append(pos)
    return ChordDiagram(tuple(tuple(v) for v in ends.values()))


def four_term_relation(d: ChordDiagram, moving: int, free_end: int, other: int) -> FourTerm:
    """Slide ``free_end`` (an endpoint of chord ``moving``) around chord ``other``.

    Chords are given by index into ``d.pairs``; the remaining chords stay put.
    """
    if moving == other:
        raise ValueError("the moving chord must differ from the other chord")
    if free_end not in d.pairs[moving]:
        raise ValueError(f"{free_end} is not an endpoint of chord {d.pairs[moving]}")
    word = [None] * (2 * d.n)
    for c, (a, b) in enumerate(d.pairs):
        word[a - 1] = word[b - 1] = c
    del word[free_end - 1]
    p, q = (i for i, c in enumerate(word) if c == other)
    out = []
    for at in (p, q):
        for offset in (1, 0):
            w = list(word)
            w.insert(at + offset, moving)
            out.append(_word_to_diagram(w))
    return FourTerm(*out)


def all_four_term_relations(n: int) -> Iterator[FourTerm]:
    """Every relation on diagrams with ``n`` chords: all ordered chord pairs, both free ends."""
    for d in all_chord_diagrams(n):
        for moving, pair in enumerate(d.pairs):
            for free_end in pair:
                for other in range(d.n):
                    if other != moving:
                        yield four_term_relation(d, moving, free_end, other)
