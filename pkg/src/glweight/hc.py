"""Harish-Chandra images of the Casimir elements of gl(m|n).

Second, independent check on the Casimir elements: their projections to the
diagonal part of U(gl(m|n)) are read from a generating series in shifted
variables ``x_i = E_ii + r_i``,

    1 - sum_k phi(C_k) z**(k+1) = prod_i (1 - z / (1 - s_i x_i z)) ** s_i,

with ``s_i = (-1)**parity(i)``.  For gl(1|1) the same series lets every
higher Casimir be written as a rational function of C1 and C2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .poly import Polynomial
from .uea import UEAElement, casimir_element, scalar

DEFAULT_ORDER = 8


@dataclass(frozen=True)
class Shifts:
    m: int
    n: int
    r: tuple[Fraction, ...]


def hc_shifts(m: int, n: int) -> Shifts:
    """``r_i = sum_{j>i} (-1)**(p_i + p_j) + (1 - (-1)**p_i) / 2``."""
    N = m + n
    if N < 1:
        raise ValueError("need m + n >= 1")
    par = [0 if i < m else 1 for i in range(N)]
    r = []
    for i in range(N):
        s = sum((-1) ** (par[i] + par[j]) for j in range(i + 1, N))
        r.append(Fraction(s) + Fraction(1 - (-1) ** par[i], 2))
    return Shifts(m, n, tuple(r))


class TruncatedSeries:
    """Power series in ``z`` with polynomial coefficients, exact modulo ``z**(K+1)``."""

    def __init__(self, coeffs: Sequence[Polynomial], K: int, symbol: str = "x"):
        if K < 0:
            raise ValueError("truncation order must be >= 0")
        self.K = K
        self.symbol = symbol
        cs = [c if isinstance(c, Polynomial) else Polynomial.const(c, symbol) for c in coeffs[: K + 1]]
        cs += [Polynomial.zero(symbol)] * (K + 1 - len(cs))
        self.coeffs = tuple(cs)

    @classmethod
    def one(cls, K: int, symbol: str = "x") -> TruncatedSeries:
        return cls([Polynomial.one(symbol)], K, symbol)

    @classmethod
    def geometric(cls, ratio: Polynomial, K: int) -> TruncatedSeries:
        """``1 / (1 - ratio * z)``."""
        coeffs = [Polynomial.one(ratio.symbol)]
        for _ in range(K):
            coeffs.append(coeffs[-1] * ratio)
        return cls(coeffs, K, ratio.symbol)

    def __getitem__(self, i: int) -> Polynomial:
        return self.coeffs[i]

    def _match(self, other: TruncatedSeries) -> int:
        if other.symbol != self.symbol:
            raise ValueError("namespace mismatch")
        return min(self.K, other.K)

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        K = self._match(other)
        return TruncatedSeries([self[i] + other[i] for i in range(K + 1)], K, self.symbol)

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs], self.K, self.symbol)

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries([c * other for c in self.coeffs], self.K, self.symbol)
        K = self._match(other)
        out = []
        for d in range(K + 1):
            acc = Polynomial.zero(self.symbol)
            for i in range(d + 1):
                if self[i] and other[d - i]:
                    acc = acc + self[i] * other[d - i]
            out.append(acc)
        return TruncatedSeries(out, K, self.symbol)

    def shift(self, s: int = 1) -> TruncatedSeries:
        """Multiply by ``z**s``."""
        return TruncatedSeries([Polynomial.zero(self.symbol)] * s + list(self.coeffs), self.K, self.symbol)

    def reciprocal(self) -> TruncatedSeries:
        if self[0] != 1:
            raise ValueError("reciprocal needs constant term 1")
        inv = [Polynomial.one(self.symbol)]
        for d in range(1, self.K + 1):
            acc = Polynomial.zero(self.symbol)
            for i in range(1, d + 1):
                if self[i]:
                    acc = acc + self[i] * inv[d - i]
            inv.append(-acc)
        return TruncatedSeries(inv, self.K, self.symbol)

    def __eq__(self, other):
        return isinstance(other, TruncatedSeries) and self.K == other.K and self.coeffs == other.coeffs

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            body = c.to_string()
            if i and len(c) > 1:
                body = f"({body})"
            if i == 0:
                parts.append(body)
            elif i == 1:
                parts.append(f"{body} z")
            else:
                parts.append(f"{body} z^{i}")
        parts.append(f"O(z^{self.K + 1})")
        return " + ".join(parts)


def casimir_series(m: int, n: int, K: int) -> TruncatedSeries:
    """The product side of the generating identity, modulo ``z**(K+1)``."""
    series = TruncatedSeries.one(K)
    for i in range(1, m + n + 1):
        s = 1 if i <= m else -1
        factor = TruncatedSeries.one(K) - TruncatedSeries.geometric(Polynomial.var(i, "x") * s, K).shift(1)
        series = series * (factor if s == 1 else factor.reciprocal())
    return series


def casimir_hc_images(m: int, n: int, K: int = DEFAULT_ORDER) -> list[Polynomial]:
    """``[phi(C_0), ..., phi(C_K)]`` as polynomials in ``x_1..x_{m+n}``."""
    if K < 0:
        raise ValueError("K must be >= 0")
    series = casimir_series(m, n, K + 1)
    return [-series[k + 1] for k in range(K + 1)]


def is_supersymmetric(f: Polynomial, m: int, n: int) -> bool:
    """Symmetric in each block, and free of ``t`` after ``x_m = t, x_{m+n} = -t``.

    With an empty block only ordinary symmetry in the other block is tested.
    """
    if f.symbol != "x":
        raise ValueError("expected a polynomial in x")
    N = m + n
    if f.variables() - set(range(1, N + 1)):
        raise ValueError(f"variables outside x1..x{N}")
    for block in (range(1, m + 1), range(m + 1, N + 1)):
        block = list(block)
        # adjacent transpositions generate the symmetric group of the block
        for a, b in zip(block, block[1:]):
            swapped = f.substitute({a: Polynomial.var(b, "x"), b: Polynomial.var(a, "x")})
            if swapped != f:
                return False
    if m == 0 or n == 0:
        return True
    # a spare variable index plays t
    t = N + 1
    g = f.substitute({m: Polynomial.var(t, "x"), N: -Polynomial.var(t, "x")})
    return t not in g.variables()


def hc_project(x: UEAElement) -> Polynomial:
    """Diagonal part of ``x`` once written in lower < diagonal < upper order.

    Returned in the ``"h"`` namespace: variable ``i`` stands for ``E_ii``.
    """
    tri = x.reorder("triangular")
    alg = tri.alg
    terms: dict = {}
    for mono, c in tri.items():
        pairs = [alg.gens[g] for g in mono]
        if any(i != j for i, j in pairs):
            continue
        exps: dict[int, int] = {}
        for i, _ in pairs:
            exps[i] = exps.get(i, 0) + 1
        key = tuple(sorted(exps.items()))
        terms[key] = terms.get(key, 0) + c
    return Polynomial(terms, "h")


def to_shifted(p: Polynomial, m: int, n: int) -> Polynomial:
    """Rewrite a polynomial in ``E_ii`` through ``E_ii = x_i - r_i``."""
    r = hc_shifts(m, n).r
    N = m + n
    return p.substitute({i: Polynomial.var(i, "x") - r[i - 1] for i in range(1, N + 1)})


def from_shifted(p: Polynomial, m: int, n: int) -> Polynomial:
    r = hc_shifts(m, n).r
    N = m + n
    return p.substitute({i: Polynomial.var(i, "h") + r[i - 1] for i in range(1, N + 1)})


def hc_image(x: UEAElement) -> Polynomial:
    """``hc_project`` in the shifted variables ``x_i``."""
    return to_shifted(hc_project(x), x.alg.m, x.alg.n)


# -- gl(1|1): higher Casimirs through C1 and C2 -------------------------------

@dataclass(frozen=True)
class C1Fraction:
    """``numerator / C1**c1_power`` with ``numerator`` a polynomial in C1, C2."""

    numerator: Polynomial
    c1_power: int

    def to_string(self) -> str:
        """Expanded as a sum of terms, each with its own power of C1."""
        if not self.numerator:
            return "0"
        terms = {}
        for mono, c in self.numerator.items():
            exps = dict(mono)
            e1 = exps.get(1, 0) - self.c1_power
            exps[1] = e1
            terms[tuple(sorted(exps.items()))] = c
        parts = []
        for mono, c in sorted(terms.items(), key=lambda mc: (-sum(max(v, 1) * e for v, e in mc[0]), mc[0])):
            num = [f"C{v}" + (f"^{e}" if e > 1 else "") for v, e in mono if e > 0]
            den = [f"C{v}" + (f"^{-e}" if e < -1 else "") for v, e in mono if e < 0]
            a = abs(c)
            frac = Fraction(a)
            top = "*".join(([str(frac.numerator)] if frac.numerator != 1 or not num else []) + num)
            bottom = "*".join(([str(frac.denominator)] if frac.denominator != 1 else []) + den)
            body = top if not bottom else f"{top}/({bottom})" if "*" in bottom else f"{top}/{bottom}"
            parts.append(("-" if c < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_string()


def _reduce_c1(num: Polynomial, power: int) -> C1Fraction:
    while power > 0 and num and all(dict(m).get(1, 0) > 0 for m, _ in num.items()):
        num = Polynomial(
            {tuple((v, e - 1 if v == 1 else e) for v, e in m): c for m, c in num.items()}, "C"
        )
        power -= 1
    return C1Fraction(num, power)


def gl11_casimir_in_c1_c2(k: int) -> C1Fraction:
    """Coefficient of ``z**k`` in ``C1 z / ((1 - a z)(1 - b z))`` for gl(1|1),

    with ``a = (C2 - C1**2 + C1) / (2 C1)`` and ``b = (C2 + C1**2 - C1) / (2 C1)``.
    """
    if k <= 0:
        raise ValueError(f"k must be positive, got {k}")
    C1, C2 = Polynomial.var(1), Polynomial.var(2)
    # a, b without their common denominator 2*C1
    a = C2 - C1 * C1 + C1
    b = C2 + C1 * C1 - C1
    h = Polynomial.zero()
    for j in range(k):
        h = h + a**j * b ** (k - 1 - j)
    num = C1 * h * Fraction(1, 2 ** (k - 1))
    return _reduce_c1(num, k - 1)


def gl11_identity_sides(k: int) -> tuple[UEAElement, UEAElement]:
    """``(C1**p * C_k, numerator(C1, C2))`` in U(gl(1|1)) for ``gl11_casimir_in_c1_c2(k)``.

    The two sides agree iff the rational expression holds (C1 is central).
    """
    frac = gl11_casimir_in_c1_c2(k)
    c1 = casimir_element(1, 1, 1)
    c2 = casimir_element(2, 1, 1)
    lhs = c1**frac.c1_power * casimir_element(k, 1, 1)
    rhs = scalar(0, 1, 1)
    for mono, c in frac.numerator.items():
        term = scalar(c, 1, 1)
        for v, e in mono:
            term = term * (c1 if v == 1 else c2) ** e
        rhs = rhs + term
    return lhs, rhs
