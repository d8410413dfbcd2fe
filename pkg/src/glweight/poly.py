"""Exact sparse multivariate polynomials with rational coefficients.

A monomial is a tuple of ``(variable_index, exponent)`` pairs sorted by index;
the constant monomial is ``()``.  Coefficients are exact: ``int`` when the
value is integral, otherwise ``fractions.Fraction``.  No zero coefficient is
ever stored.

Each polynomial lives in a variable namespace given by its ``symbol``:
``"C"`` for the Casimir variables C0, C1, ..., ``"x"`` for the shifted
diagonal variables x1, x2, ... and ``"h"`` for the diagonal matrix units
(printed ``E11``, ``E22``, ...).  Mixing namespaces in one operation is an
error.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Mapping

Monomial = tuple[tuple[int, int], ...]


def _norm(c):
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    if isinstance(c, Rational):
        return _norm(Fraction(c.numerator, c.denominator))
    raise TypeError(f"inexact coefficient {c!r}")


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def _var_name(symbol: str, i: int) -> str:
    if symbol == "h":
        return f"E{i}{i}" if i < 10 else f"E{i},{i}"
    return f"{symbol}{i}"


class Polynomial:
    """Immutable exact polynomial. Supports ``+ - *`` and integer powers."""

    __slots__ = ("_terms", "symbol", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None, symbol: str = "C"):
        clean = {}
        for mono, c in (terms or {}).items():
            c = _norm(c)
            if c:
                clean[tuple(sorted((v, e) for v, e in mono if e))] = c
        self._terms = clean
        self.symbol = symbol
        self._hash = None

    # -- constructors ------------------------------------------------------
    @classmethod
    def const(cls, c, symbol: str = "C") -> Polynomial:
        return cls({(): c}, symbol)

    @classmethod
    def var(cls, i: int, symbol: str = "C") -> Polynomial:
        return cls({((i, 1),): 1}, symbol)

    @classmethod
    def zero(cls, symbol: str = "C") -> Polynomial:
        return cls({}, symbol)

    @classmethod
    def one(cls, symbol: str = "C") -> Polynomial:
        return cls.const(1, symbol)

    @classmethod
    def _raw(cls, terms: dict, symbol: str) -> Polynomial:
        # terms already canonical
        p = cls.__new__(cls)
        p._terms = terms
        p.symbol = symbol
        p._hash = None
        return p

    # -- access ------------------------------------------------------------
    @property
    def terms(self) -> dict[Monomial, object]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def coefficient(self, mono: Monomial):
        return self._terms.get(tuple(sorted(mono)), 0)

    def variables(self) -> set[int]:
        return {v for mono in self._terms for v, _ in mono}

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._terms.values())

    def is_constant(self) -> bool:
        return all(mono == () for mono in self._terms)

    def constant_term(self):
        return self._terms.get((), 0)

    def degree(self) -> int:
        return max((sum(e for _, e in m) for m in self._terms), default=0)

    def weighted_degree(self) -> int:
        """Degree with C_i of weight i (C0 of weight 1)."""
        return max((_weight(m) for m in self._terms), default=0)

    # -- arithmetic --------------------------------------------------------
    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.symbol != self.symbol:
                raise ValueError(f"namespace mismatch: {self.symbol!r} vs {other.symbol!r}")
            return other
        if isinstance(other, (int, Rational)):
            return Polynomial.const(other, self.symbol)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for mono, c in other._terms.items():
            s = _norm(out.get(mono, 0) + c)
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return Polynomial._raw(out, self.symbol)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self._terms.items()}, self.symbol)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                m = _mono_mul(ma, mb)
                out[m] = out.get(m, 0) + ca * cb
        return Polynomial._raw({m: _norm(c) for m, c in out.items() if c}, self.symbol)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("only non-negative integer powers")
        result = Polynomial.one(self.symbol)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.symbol == other.symbol and self._terms == other._terms
        if isinstance(other, (int, Rational)):
            return self._terms == Polynomial.const(other, self.symbol)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.symbol, frozenset(self._terms.items())))
        return self._hash

    # -- substitution ------------------------------------------------------
    def substitute(self, values: Mapping[int, object]) -> Polynomial:
        """Replace variables by scalars or by polynomials of any namespace.

        The result namespace is that of the polynomial values if any are
        given, otherwise unchanged. Variables not in ``values`` must then be
        absent.
        """
        target = next((v.symbol for v in values.values() if isinstance(v, Polynomial)), self.symbol)
        result = Polynomial.zero(target)
        cache: dict[tuple[int, int], Polynomial] = {}
        for mono, c in self._terms.items():
            term = Polynomial.const(c, target)
            keep = []
            for v, e in mono:
                if v in values:
                    key = (v, e)
                    if key not in cache:
                        val = values[v]
                        if not isinstance(val, Polynomial):
                            val = Polynomial.const(val, target)
                        cache[key] = val ** e
                    term = term * cache[key]
                else:
                    keep.append((v, e))
            if keep:
                if target != self.symbol:
                    raise ValueError(f"variables {keep} left unsubstituted across namespaces")
                term = term * Polynomial({tuple(keep): 1}, target)
            result = result + term
        return result

    def evaluate(self, values: Mapping[int, object]):
        """Exact value at a point; every variable present must be assigned."""
        total = 0
        for mono, c in self._terms.items():
            t = c
            for v, e in mono:
                t = t * Fraction(values[v]) ** e
            total += t
        return _norm(total)

    def map_coefficients(self, f: Callable) -> Polynomial:
        return Polynomial({m: f(c) for m, c in self._terms.items()}, self.symbol)

    # -- formatting --------------------------------------------------------
    def sorted_terms(self) -> list[tuple[Monomial, object]]:
        return sorted(self._terms.items(), key=lambda mc: _order_key(mc[0], self.symbol))

    def to_string(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            sign = "-" if c < 0 else "+"
            a = -c if c < 0 else c
            factors = [
                _var_name(self.symbol, v) + (f"^{e}" if e > 1 else "") for v, e in mono
            ]
            if not factors:
                body = str(a)
            elif a == 1:
                body = "*".join(factors)
            else:
                body = str(a) + "*" + "*".join(factors)
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Polynomial({self.to_string()!r}, symbol={self.symbol!r})"

    def to_json(self) -> list[dict]:
        out = []
        for mono, c in self.sorted_terms():
            f = Fraction(c)
            out.append(
                {
                    "coeff_num": f.numerator,
                    "coeff_den": f.denominator,
                    "monomial": [[v, e] for v, e in mono],
                }
            )
        return out

    @classmethod
    def from_json(cls, data: Iterable[dict], symbol: str = "C") -> Polynomial:
        terms: dict = {}
        for t in data:
            if t["coeff_den"] == 0:
                raise ValueError("zero denominator")
            mono = tuple(sorted((int(v), int(e)) for v, e in t["monomial"]))
            terms[mono] = terms.get(mono, 0) + Fraction(t["coeff_num"], t["coeff_den"])
        return cls(terms, symbol)

    @classmethod
    def parse(cls, text: str, symbol: str = "C") -> Polynomial:
        """Inverse of :meth:`to_string` (also accepts ``**`` and spaces freely)."""
        return _parse(text, symbol)


def _weight(mono: Monomial) -> int:
    return sum(max(v, 1) * e for v, e in mono)


def _order_key(mono: Monomial, symbol: str):
    if symbol == "C":
        # heaviest first; ties: higher-index variables first
        dense = sorted(mono, reverse=True)
        return (-_weight(mono), tuple((-v, -e) for v, e in dense))
    deg = sum(e for _, e in mono)
    nvar = max((v for v, _ in mono), default=0) + 1
    exps = [0] * nvar
    for v, e in mono:
        exps[v] = e
    return (-deg, tuple(-e for e in exps))


_TERM_RE = re.compile(r"\s*([+-])?\s*([^+-]+)")


def _parse(text: str, symbol: str) -> Polynomial:
    src = text.replace("**", "^").strip()
    if not src:
        raise ValueError("empty polynomial text")
    if src == "0":
        return Polynomial.zero(symbol)
    pos = 0
    total = Polynomial.zero(symbol)
    first = True
    while pos < len(src):
        m = _TERM_RE.match(src, pos)
        if not m or (m.group(1) is None and not first):
            raise ValueError(f"cannot parse polynomial near {src[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = Fraction(sign)
        mono: dict[int, int] = {}
        for factor in m.group(2).split("*"):
            factor = factor.strip()
            if not factor:
                raise ValueError(f"empty factor in {text!r}")
            base, _, exp = factor.partition("^")
            e = int(exp) if exp else 1
            if re.fullmatch(r"\d+(/\d+)?", base):
                coeff *= Fraction(base) ** e
                continue
            if symbol == "h":
                vm = re.fullmatch(r"E(\d+),?(\d+)", base)
                ok = vm and vm.group(1) == vm.group(2)
                idx = int(vm.group(1)) if ok else None
            else:
                vm = re.fullmatch(re.escape(symbol) + r"(\d+)", base)
                idx = int(vm.group(1)) if vm else None
            if idx is None:
                raise ValueError(f"unknown factor {factor!r}")
            mono[idx] = mono.get(idx, 0) + e
        total = total + Polynomial({tuple(sorted(mono.items())): coeff}, symbol)
        pos = m.end()
        first = False
    return total


# -- module-level operations -----------------------------------------------

def C(i: int) -> Polynomial:
    """The Casimir variable C_i."""
    return Polynomial.var(i, "C")


def x(i: int) -> Polynomial:
    return Polynomial.var(i, "x")


def poly_add(a: Polynomial, b: Polynomial) -> Polynomial:
    return a + b


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    return a * b


def substitute_c0(p: Polynomial, v) -> Polynomial:
    """Replace C0 by the rational number ``v``."""
    return p.substitute({0: v})


def poly_to_string(p: Polynomial) -> str:
    return p.to_string()
