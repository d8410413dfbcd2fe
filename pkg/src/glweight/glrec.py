"""The universal GL weight system on permutations, by recurrence.

Values are polynomials in C0, C1, C2, ...  The evaluation rules:

* the empty permutation has value 1;
* the value is multiplicative over concatenation blocks;
* the standard cycle ``1 -> 2 -> ... -> k -> 1`` has value ``C_k``;
* for neighbouring vertices ``l, l+1``::

      w(sigma) = w(swap) + w(merge_ac) - w(merge_bd)

  where ``swap`` conjugates by ``(l l+1)`` and the merges are those of
  :func:`glweight.perm.merge_neighbors`. A merge whose glued edges coincide
  closes a loop and contributes a factor ``C0`` (this is the special case
  with an edge between ``l`` and ``l+1``).

Reduction always moves towards the permutation's *target order*: cycles by
increasing minimum, each read from its minimum along the cycle. Swapping an
adjacent pair that is out of target order lowers the number of target
inversions by exactly one, and the merges have one vertex less, so the
recursion terminates.
"""

from __future__ import annotations

import json
import logging
import random
import threading
from pathlib import Path
from typing import Callable, Sequence

from .perm import (
    ChordDiagram,
    Permutation,
    _blocks0,
    _is_standard_cycle0,
    _merge0,
    _swap0,
    diagram_to_involution,
)
from .poly import Polynomial, substitute_c0

log = logging.getLogger(__name__)

_ONE = Polynomial.one()
_C0 = Polynomial.var(0)


class IntegralityError(AssertionError):
    """A weight-system value came out with a non-integer coefficient."""


def target_ranks(images: Sequence[int]) -> list[int]:
    """Rank of each vertex (0-based) in the target order."""
    k = len(images)
    rank = [-1] * k
    r = 0
    for start in range(k):
        if rank[start] >= 0:
            continue
        v = start
        while rank[v] < 0:
            rank[v] = r
            r += 1
            v = images[v]
    return rank


def target_inversions(images: Sequence[int]) -> int:
    rank = target_ranks(images)
    k = len(rank)
    return sum(1 for i in range(k) for j in range(i + 1, k) if rank[i] > rank[j])


def reducible_positions(images: Sequence[int]) -> list[int]:
    """0-based ``l`` with ``l, l+1`` out of target order."""
    rank = target_ranks(images)
    return [l for l in range(len(rank) - 1) if rank[l] > rank[l + 1]]


def _leftmost(positions, images):
    return positions[0]


def _rightmost(positions, images):
    return positions[-1]


POLICIES: dict[str, Callable] = {"leftmost": _leftmost, "rightmost": _rightmost}


class GLWeightSystem:
    """Memoised evaluator. One instance per reduction policy.

    ``policy`` is ``"leftmost"``, ``"rightmost"``, ``"random"`` (seeded by
    ``seed``) or a callable ``(positions, images) -> position``.
    """

    def __init__(self, policy="leftmost", seed: int | None = None):
        if policy == "random":
            rng = random.Random(seed)
            self._choose = lambda positions, images: rng.choice(positions)
        elif callable(policy):
            self._choose = policy
        else:
            self._choose = POLICIES[policy]
        self.policy = policy
        self._cache: dict[tuple[int, ...], Polynomial] = {}
        self._pending: dict[tuple[int, ...], object] = {}
        self._persisted: set[tuple[int, ...]] = set()
        self._lock = threading.Lock()

    # -- evaluation --------------------------------------------------------
    def __call__(self, sigma: Permutation) -> Polynomial:
        value = self._w(tuple(v - 1 for v in sigma.images))
        if not value.is_integral():
            raise IntegralityError(f"non-integer coefficient in w({sigma}) = {value}")
        return value

    def diagram(self, d: ChordDiagram) -> Polynomial:
        return self(diagram_to_involution(d))

    def _lookup(self, key):
        hit = self._cache.get(key)
        if hit is not None or not self._pending:
            return hit
        raw = self._pending.pop(key, None)
        if raw is None:
            return None
        try:
            value = Polynomial.from_json(raw)
            if not value.is_integral():
                raise ValueError("non-integer coefficient")
        except (KeyError, TypeError, ValueError) as exc:
            log.warning("dropping bad cache record for %s: %s", [v + 1 for v in key], exc)
            return None
        self._store(key, value)
        return value

    def _store(self, key, value):
        with self._lock:
            self._cache[key] = value

    def _w(self, images: tuple[int, ...]) -> Polynomial:
        k = len(images)
        if k == 0:
            return _ONE
        hit = self._lookup(images)
        if hit is not None:
            return hit
        blocks = _blocks0(images)
        if len(blocks) > 1:
            value = _ONE
            for a, b in blocks:
                value = value * self._w(tuple(images[i] - a for i in range(a, b)))
        elif _is_standard_cycle0(images):
            value = Polynomial.var(k)
        else:
            positions = reducible_positions(images)
            l = self._choose(positions, images)
            # the 2-cycle (l l+1) is a standard cycle or a separate block, never reached here
            assert not (images[l] == l + 1 and images[l + 1] == l), images
            value = self._w(_swap0(images, l))
            for glue, sign in (("ac", 1), ("bd", -1)):
                merged, loop, _ = _merge0(images, l, glue)
                term = self._w(merged)
                if loop:
                    term = _C0 * term
                value = value + term if sign > 0 else value - term
        self._store(images, value)
        return value

    # -- cache management --------------------------------------------------
    def __len__(self):
        return len(self._cache) + len(self._pending)

    def clear(self):
        with self._lock:
            self._cache.clear()
            self._pending.clear()
            self._persisted.clear()

    def load(self, path) -> int:
        """Read a JSON-lines cache file; records are validated on first use."""
        path = Path(path)
        if not path.exists():
            return 0
        count = 0
        with path.open() as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    rec = json.loads(line)
                    key = tuple(int(v) - 1 for v in rec["key"])
                    Permutation(tuple(v + 1 for v in key))
                    value = rec["value"]
                except (ValueError, KeyError, TypeError) as exc:
                    log.warning("%s:%d: skipping malformed record (%s)", path, lineno, exc)
                    continue
                if key not in self._cache:
                    self._pending[key] = value
                self._persisted.add(key)
                count += 1
        return count

    def save(self, path) -> int:
        """Append every value not yet on disk; returns the number written."""
        path = Path(path)
        with self._lock:
            new = [(k, v) for k, v in self._cache.items() if k not in self._persisted]
        with path.open("a") as fh:
            for key, value in sorted(new, key=lambda kv: (len(kv[0]), kv[0])):
                rec = {"key": [v + 1 for v in key], "value": value.to_json()}
                fh.write(json.dumps(rec, sort_keys=True) + "\n")
        self._persisted.update(k for k, _ in new)
        return len(new)


_default = GLWeightSystem()


def default_system() -> GLWeightSystem:
    return _default


def w_gl(sigma: Permutation) -> Polynomial:
    """The universal GL weight system of ``sigma``."""
    return _default(sigma)


def w_gl_diagram(d: ChordDiagram) -> Polynomial:
    return _default.diagram(d)


def specialize(sigma: Permutation, m: int, n: int) -> Polynomial:
    """``w_gl(sigma)`` with ``C0 = m - n``."""
    if m < 0 or n < 0:
        raise ValueError("m and n must be non-negative")
    return substitute_c0(w_gl(sigma), m - n)


def recurrence_terms(sigma: Permutation, l: int):
    """The three permutations of the rule at position ``l`` (1-based).

    Returns ``(swap, (merge_ac, loop_ac), (merge_bd, loop_bd))``.
    """
    images = tuple(v - 1 for v in sigma.images)
    if not 1 <= l < sigma.k:
        raise ValueError(f"position {l} out of range 1..{sigma.k - 1}")
    lift = lambda t: Permutation(tuple(v + 1 for v in t))
    swap = lift(_swap0(images, l - 1))
    out = []
    for glue in ("ac", "bd"):
        merged, loop, _ = _merge0(images, l - 1, glue)
        out.append((lift(merged), loop))
    return swap, out[0], out[1]
