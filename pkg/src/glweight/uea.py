"""Exact arithmetic in the universal enveloping superalgebra U(gl(m|n)).

Elements are linear combinations of PBW monomials in the matrix units
``E[i, j]`` (1 <= i, j <= m+n) with respect to a fixed total order on the
generators.  Products are brought to normal form by adjacent transpositions

    x y = (-1)**(|x| |y|) y x + [x, y],

with the super bracket of matrix units, until every monomial is
non-decreasing; an odd generator squared is zero.  Two orders are supported:
``"lex"`` (by ``(i, j)``) and ``"triangular"`` (strictly lower, then
diagonal, then strictly upper), the latter being the one in which the
Harish-Chandra projection reads off term by term.

This module is deliberately naive: it is the brute-force oracle against
which the recurrence is checked.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping, Sequence

from .perm import Permutation
from .poly import Polynomial, _norm
from .signfn import evaluate_sign, sign_function

DEFAULT_BUDGET = 10**6

Mono = tuple[int, ...]


class BudgetExceeded(RuntimeError):
    """A brute-force sum would visit more index tuples than allowed."""


class GL:
    """Structure constants and normal-form caches of U(gl(m|n)) for one PBW order.

    Use :func:`algebra` to get the shared instance for ``(m, n, order)``.
    """

    def __init__(self, m: int, n: int, order: str = "lex"):
        if m < 0 or n < 0 or m + n == 0:
            raise ValueError(f"need m, n >= 0 and m + n >= 1, got ({m}, {n})")
        if order not in ("lex", "triangular"):
            raise ValueError(f"unknown order {order!r}")
        self.m, self.n, self.order = m, n, order
        N = self.dim = m + n
        pairs = [(i, j) for i in range(1, N + 1) for j in range(1, N + 1)]
        if order == "triangular":
            pairs.sort(key=lambda p: (0 if p[0] > p[1] else 1 if p[0] == p[1] else 2, p))
        self.gens: list[tuple[int, int]] = pairs
        self.rank = {p: r for r, p in enumerate(pairs)}
        self.odd = [(self.parity(i) + self.parity(j)) % 2 for i, j in pairs]
        self._bracket = {}
        for r, (i, j) in enumerate(pairs):
            for s, (k, l) in enumerate(pairs):
                terms = []
                if j == k:
                    terms.append((1, self.rank[(i, l)]))
                if i == l:
                    sgn = -1 if self.odd[r] and self.odd[s] else 1
                    terms.append((-sgn, self.rank[(k, j)]))
                self._bracket[(r, s)] = terms
        self._mg: dict[tuple[Mono, int], dict[Mono, int]] = {}
        self._mm: dict[tuple[Mono, Mono], dict[Mono, int]] = {}

    def parity(self, i: int) -> int:
        return 0 if i <= self.m else 1

    def gen(self, i: int, j: int) -> int:
        return self.rank[(i, j)]

    def bracket(self, r: int, s: int) -> list[tuple[int, int]]:
        """Super bracket of generators ``r, s`` as ``[(coeff, generator)]``."""
        return self._bracket[(r, s)]

    def mul_gen(self, mono: Mono, g: int) -> dict[Mono, int]:
        """Normal form of ``mono * g``."""
        key = (mono, g)
        hit = self._mg.get(key)
        if hit is not None:
            return hit
        if not mono or mono[-1] < g:
            res = {mono + (g,): 1}
        elif mono[-1] == g:
            res = {} if self.odd[g] else {mono + (g,): 1}
        else:
            x, head = mono[-1], mono[:-1]
            sgn = -1 if self.odd[x] and self.odd[g] else 1
            acc: dict[Mono, int] = {}
            for m1, c1 in self.mul_gen(head, g).items():
                for m2, c2 in self.mul_gen(m1, x).items():
                    acc[m2] = acc.get(m2, 0) + sgn * c1 * c2
            for cb, h in self._bracket[(x, g)]:
                for m2, c2 in self.mul_gen(head, h).items():
                    acc[m2] = acc.get(m2, 0) + cb * c2
            res = {m: c for m, c in acc.items() if c}
        self._mg[key] = res
        return res

    def mul_mono(self, a: Mono, b: Mono) -> dict[Mono, int]:
        """Normal form of ``a * b`` for normal monomials ``a, b``."""
        if not b:
            return {a: 1}
        key = (a, b)
        hit = self._mm.get(key)
        if hit is not None:
            return hit
        acc: dict[Mono, int] = {}
        for m1, c1 in self.mul_mono(a, b[:-1]).items():
            for m2, c2 in self.mul_gen(m1, b[-1]).items():
                acc[m2] = acc.get(m2, 0) + c1 * c2
        res = {m: c for m, c in acc.items() if c}
        self._mm[key] = res
        return res

    def word(self, letters: Sequence[int]) -> dict[Mono, int]:
        """Normal form of an arbitrary word of generators."""
        cur: dict[Mono, int] = {(): 1}
        for g in letters:
            nxt: dict[Mono, int] = {}
            for mono, c in cur.items():
                for m2, c2 in self.mul_gen(mono, g).items():
                    nxt[m2] = nxt.get(m2, 0) + c * c2
            cur = {m: c for m, c in nxt.items() if c}
        return cur


@lru_cache(maxsize=None)
def algebra(m: int, n: int, order: str = "lex") -> GL:
    return GL(m, n, order)


class UEAElement:
    """An element of U(gl(m|n)) in PBW normal form."""

    __slots__ = ("alg", "_terms")

    def __init__(self, alg: GL, terms: Mapping[Mono, object] | None = None):
        self.alg = alg
        self._terms = {}
        for mono, c in (terms or {}).items():
            c = _norm(c)
            if c:
                self._terms[tuple(mono)] = c

    @classmethod
    def _raw(cls, alg, terms):
        e = cls.__new__(cls)
        e.alg = alg
        e._terms = terms
        return e

    @property
    def signature(self) -> tuple[int, int]:
        return self.alg.m, self.alg.n

    @property
    def terms(self) -> dict[Mono, object]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def _check(self, other: UEAElement):
        if (other.alg.m, other.alg.n) != (self.alg.m, self.alg.n):
            raise ValueError(f"signature mismatch: {self.signature} vs {other.signature}")
        if other.alg is not self.alg:
            raise ValueError("elements use different PBW orders; use reorder() first")

    def _scalar(self, c) -> UEAElement:
        return UEAElement(self.alg, {(): c})

    def __add__(self, other):
        if not isinstance(other, UEAElement):
            other = self._scalar(other)
        self._check(other)
        out = dict(self._terms)
        for mono, c in other._terms.items():
            s = _norm(out.get(mono, 0) + c)
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return UEAElement._raw(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return UEAElement._raw(self.alg, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, UEAElement):
            other = self._scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, UEAElement):
            c = _norm(other)
            if not c:
                return UEAElement._raw(self.alg, {})
            return UEAElement._raw(self.alg, {m: _norm(v * c) for m, v in self._terms.items()})
        self._check(other)
        acc: dict[Mono, object] = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                for mono, c in self.alg.mul_mono(ma, mb).items():
                    acc[mono] = acc.get(mono, 0) + ca * cb * c
        return UEAElement(self.alg, acc)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, e: int):
        out = unit(self.alg.m, self.alg.n, self.alg.order)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, UEAElement):
            return self.alg is other.alg and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == self._scalar(other)._terms
        return NotImplemented

    __hash__ = None

    def reorder(self, order: str) -> UEAElement:
        """The same element, re-straightened in another PBW order."""
        target = algebra(self.alg.m, self.alg.n, order)
        if target is self.alg:
            return self
        acc: dict[Mono, object] = {}
        for mono, c in self._terms.items():
            letters = [target.rank[self.alg.gens[g]] for g in mono]
            for m2, c2 in target.word(letters).items():
                acc[m2] = acc.get(m2, 0) + c * c2
        return UEAElement(target, acc)

    def monomial_factors(self, mono: Mono) -> list[tuple[int, int, int]]:
        """``[(i, j, exponent)]`` for a monomial, in PBW order."""
        out: list[tuple[int, int, int]] = []
        for g in mono:
            i, j = self.alg.gens[g]
            if out and out[-1][:2] == (i, j):
                out[-1] = (i, j, out[-1][2] + 1)
            else:
                out.append((i, j, 1))
        return out

    def _sort_key(self, mono: Mono):
        return (-len(mono), mono)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for mono in sorted(self._terms, key=self._sort_key):
            c = self._terms[mono]
            body = "*".join(
                f"E{i}{j}" + (f"^{e}" if e > 1 else "") for i, j, e in self.monomial_factors(mono)
            )
            if not body:
                parts.append(f"{c}")
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c} * {body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"UEAElement[gl({self.alg.m}|{self.alg.n}), {self.alg.order}]({self})"

    def to_json(self) -> dict:
        terms = []
        for mono in sorted(self._terms, key=self._sort_key):
            f = Fraction(self._terms[mono])
            terms.append(
                {
                    "coeff_num": f.numerator,
                    "coeff_den": f.denominator,
                    "monomial": [list(t) for t in self.monomial_factors(mono)],
                }
            )
        return {"m": self.alg.m, "n": self.alg.n, "order": self.alg.order, "terms": terms}

    @classmethod
    def from_json(cls, data: dict) -> UEAElement:
        alg = algebra(data["m"], data["n"], data.get("order", "lex"))
        out = cls(alg)
        for t in data["terms"]:
            letters = [alg.gen(i, j) for i, j, e in t["monomial"] for _ in range(e)]
            out = out + cls(alg, alg.word(letters)) * Fraction(t["coeff_num"], t["coeff_den"])
        return out


# -- constructors ------------------------------------------------------------

def unit(m: int, n: int, order: str = "lex") -> UEAElement:
    return UEAElement(algebra(m, n, order), {(): 1})


def scalar(c, m: int, n: int, order: str = "lex") -> UEAElement:
    return UEAElement(algebra(m, n, order), {(): c})


def generator(i: int, j: int, m: int, n: int, order: str = "lex") -> UEAElement:
    alg = algebra(m, n, order)
    return UEAElement(alg, {(alg.gen(i, j),): 1})


def generators(m: int, n: int, order: str = "lex") -> list[UEAElement]:
    N = m + n
    return [generator(i, j, m, n, order) for i in range(1, N + 1) for j in range(1, N + 1)]


def word_element(pairs: Iterable[tuple[int, int]], m: int, n: int, order: str = "lex") -> UEAElement:
    """The product ``E[i1, j1] E[i2, j2] ...`` in normal form."""
    alg = algebra(m, n, order)
    return UEAElement(alg, alg.word([alg.gen(i, j) for i, j in pairs]))


def uea_mul(a: UEAElement, b: UEAElement) -> UEAElement:
    return a * b


def supertrace_dim(m: int, n: int) -> int:
    """Supertrace of the identity matrix of gl(m|n)."""
    return m - n


def _check_budget(N: int, k: int, budget: int):
    if N**k > budget:
        raise BudgetExceeded(f"{N}^{k} = {N**k} index tuples exceeds budget {budget}")


def casimir_element(k: int, m: int, n: int, order: str = "lex", budget: int = DEFAULT_BUDGET) -> UEAElement:
    """``sum (-1)**(p2 + ... + pk) E[i1,i2] E[i2,i3] ... E[ik,i1]`` over all index tuples."""
    if k <= 0:
        raise ValueError(f"Casimir index must be positive, got {k}")
    return _casimir(k, m, n, order, budget)


@lru_cache(maxsize=None)
def _casimir(k, m, n, order, budget):
    alg = algebra(m, n, order)
    N = m + n
    _check_budget(N, k, budget)
    acc: dict[Mono, int] = {}
    for idx in product(range(1, N + 1), repeat=k):
        sgn = -1 if sum(alg.parity(i) for i in idx[1:]) % 2 else 1
        letters = [alg.gen(idx[p], idx[(p + 1) % k]) for p in range(k)]
        for mono, c in alg.word(letters).items():
            acc[mono] = acc.get(mono, 0) + sgn * c
    return UEAElement(alg, acc)


def w_glmn_bruteforce(
    sigma: Permutation, m: int, n: int, order: str = "lex", budget: int = DEFAULT_BUDGET
) -> UEAElement:
    """``sum (-1)**f_sigma E[i1, i_sigma(1)] ... E[ik, i_sigma(k)]`` over all index tuples."""
    alg = algebra(m, n, order)
    N, k = m + n, sigma.k
    _check_budget(N, k, budget)
    f = sign_function(sigma)
    images = sigma.images
    acc: dict[Mono, int] = {}
    for idx in product(range(1, N + 1), repeat=k):
        parities = [alg.parity(i) for i in idx]
        sgn = -1 if evaluate_sign(f, parities) else 1
        letters = [alg.gen(idx[p], idx[images[p] - 1]) for p in range(k)]
        for mono, c in alg.word(letters).items():
            acc[mono] = acc.get(mono, 0) + sgn * c
    return UEAElement(alg, acc)


def evaluate_in_uea(
    p: Polynomial, m: int, n: int, order: str = "lex", budget: int = DEFAULT_BUDGET
) -> UEAElement:
    """Substitute ``C0 -> m - n`` and ``C_k ->`` the k-th Casimir element."""
    if p.symbol != "C":
        raise ValueError("expected a polynomial in the Casimir variables")
    total = UEAElement(algebra(m, n, order))
    for mono, c in p.items():
        term = scalar(c, m, n, order)
        for v, e in mono:
            if v == 0:
                term = term * (supertrace_dim(m, n) ** e)
            else:
                term = term * casimir_element(v, m, n, order, budget) ** e
        total = total + term
    return total


def commutator(x: UEAElement, y: UEAElement) -> UEAElement:
    """Plain commutator ``xy - yx``."""
    return x * y - y * x


def is_central(x: UEAElement) -> bool:
    """True iff ``x`` commutes (plainly) with every matrix unit."""
    m, n, order = x.alg.m, x.alg.n, x.alg.order
    return all(not commutator(x, g) for g in generators(m, n, order))


