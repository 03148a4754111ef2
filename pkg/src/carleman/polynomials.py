"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Polynomial` stores a map from exponent vectors to non-zero
:class:`fractions.Fraction` coefficients.  Monomials are ordered
graded-lexicographically with ``x1 > x2 > ... > xn``; every printed form and
every tie-break downstream follows that order.

Variables are addressed by 0-based index in the Python API and printed
1-based (``x1 .. xn``) in the text grammar.

Text grammar::

    3/2*x1^2*x2 - x3 + (x1 + x2)^2

JSON form: ``[{"coeff": "3/2", "exps": [2, 1, 0]}, ...]``.
"""

from __future__ import annotations

import heapq
import operator
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import DimensionMismatch, NotDivisible, ParseError

Exponent = tuple[int, ...]
Scalar = Union[int, Fraction]


def grlex_key(exps: Exponent) -> tuple[int, Exponent]:
    return (sum(exps), exps)


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"expected an exact rational, got {type(c).__name__}")


def _add_exps(a: Exponent, b: Exponent) -> Exponent:
    return tuple(map(operator.add, a, b))


class Polynomial:
    """Immutable sparse polynomial in ``nvars`` variables over Q."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Scalar] | None = None):
        if nvars < 0:
            raise DimensionMismatch("nvars must be non-negative")
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for exps, c in terms.items():
                exps = tuple(exps)
                if len(exps) != nvars:
                    raise DimensionMismatch(
                        f"exponent {exps} does not have length {nvars}")
                if any(e < 0 for e in exps):
                    raise ValueError(f"negative exponent in {exps}")
                c = _as_fraction(c)
                if c:
                    clean[exps] = clean.get(exps, 0) + c
                    if not clean[exps]:
                        del clean[exps]
        self.nvars = nvars
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exponent, Fraction]) -> "Polynomial":
        # trusted constructor: terms already clean
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c: Scalar) -> "Polynomial":
        c = _as_fraction(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "Polynomial":
        if not 0 <= i < nvars:
            raise DimensionMismatch(f"variable index {i} out of range for {nvars} variables")
        exps = [0] * nvars
        exps[i] = 1
        return cls._raw(nvars, {tuple(exps): Fraction(1)})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: Scalar = 1) -> "Polynomial":
        return cls(len(exps), {tuple(exps): coeff})

    @classmethod
    def gens(cls, nvars: int) -> list["Polynomial"]:
        return [cls.variable(nvars, i) for i in range(nvars)]

    # -- inspection -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_constant(self) -> bool:
        return self.degree <= 0

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[Exponent, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms, key=grlex_key)
        return exps, self.terms[exps]

    def leading_coefficient(self) -> Fraction:
        return self.leading_term()[1]

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(1 / self.leading_coefficient())

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def variables_used(self) -> set[int]:
        return {i for e in self.terms for i, k in enumerate(e) if k}

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise DimensionMismatch(
                    f"polynomials in {self.nvars} and {other.nvars} variables")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Polynomial._raw(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def scale(self, c: Scalar) -> "Polynomial":
        c = _as_fraction(c)
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(self.nvars, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(self.terms) > len(other.terms):
            a, b = self.terms, other.terms
        else:
            a, b = other.terms, self.terms
        out: dict[Exponent, Fraction] = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(map(operator.add, ea, eb))
                out[e] = get(e, 0) + ca * cb
        return Polynomial._raw(self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(1 / _as_fraction(other))
        if isinstance(other, Polynomial):
            return divide_exact(self, other)
        return NotImplemented

    def __pow__(self, k: int) -> "Polynomial":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == Polynomial.constant(self.nvars, other).terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __call__(self, *point):
        return evaluate(self, point)

    def __repr__(self) -> str:
        return f"Polynomial({self.nvars}, {format_polynomial(self)!r})"

    def __str__(self) -> str:
        return format_polynomial(self)

    # -- convenience ----------------------------------------------------
    def diff(self, i: int) -> "Polynomial":
        return partial_derivative(self, i)

    def compose(self, gs: Sequence["Polynomial"]) -> "Polynomial":
        return compose(self, gs)

    def extend(self, nvars: int, offset: int = 0) -> "Polynomial":
        """Embed into a ring with ``nvars`` variables, shifting indices by ``offset``."""
        if offset + self.nvars > nvars:
            raise DimensionMismatch("target ring too small")
        pad_r = nvars - offset - self.nvars
        return Polynomial._raw(nvars, {
            (0,) * offset + e + (0,) * pad_r: c for e, c in self.terms.items()})


@dataclass(frozen=True)
class LinearForm:
    """A non-zero linear form ``sum(c_i x_i)``."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(_as_fraction(c) for c in self.coefficients)
        if not any(coeffs):
            raise ValueError("a linear form needs a non-zero coefficient")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def nvars(self) -> int:
        return len(self.coefficients)

    def to_polynomial(self) -> Polynomial:
        n = self.nvars
        terms = {}
        for i, c in enumerate(self.coefficients):
            if c:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = c
        return Polynomial(n, terms)

    @classmethod
    def difference(cls, nvars: int, i: int, j: int) -> "LinearForm":
        """The form ``x_i - x_j``."""
        c = [0] * nvars
        c[i] = 1
        c[j] = -1
        return cls(tuple(c))


# -- ring operations ------------------------------------------------------
def add(f: Polynomial, g: Polynomial) -> Polynomial:
    return f + g


def mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def scale(f: Polynomial, c: Scalar) -> Polynomial:
    return f.scale(c)


def partial_derivative(f: Polynomial, i: int) -> Polynomial:
    if not 0 <= i < f.nvars:
        raise DimensionMismatch(f"no variable {i} in a polynomial of {f.nvars} variables")
    out = {}
    for e, c in f.terms.items():
        k = e[i]
        if k:
            out[e[:i] + (k - 1,) + e[i + 1:]] = c * k
    return Polynomial._raw(f.nvars, out)


def evaluate(f: Polynomial, point: Sequence):
    """Evaluate at ``point``; exact for rational input."""
    if len(point) != f.nvars:
        raise DimensionMismatch(f"point has {len(point)} coordinates, expected {f.nvars}")
    pts = [_as_fraction(p) if isinstance(p, (int, str)) else p for p in point]
    total = Fraction(0)
    for e, c in f.terms.items():
        v = c
        for p, k in zip(pts, e):
            if k:
                v = v * p ** k
        total = total + v
    return total


def compose(f: Polynomial, gs: Sequence[Polynomial]) -> Polynomial:
    """Substitute ``gs[i]`` for variable ``i`` of ``f``."""
    if len(gs) != f.nvars:
        raise DimensionMismatch(f"compose needs {f.nvars} polynomials, got {len(gs)}")
    if not gs:
        # f is a constant in zero variables; there is no target ring to infer
        raise DimensionMismatch("cannot compose a polynomial in zero variables")
    m = gs[0].nvars
    if any(g.nvars != m for g in gs):
        raise DimensionMismatch("substituted polynomials must share a variable count")
    powers: list[list[Polynomial]] = [[Polynomial.constant(m, 1)] for _ in gs]

    def power(i: int, k: int) -> Polynomial:
        cache = powers[i]
        while len(cache) <= k:
            cache.append(cache[-1] * gs[i])
        return cache[k]

    out: dict[Exponent, Fraction] = {}
    for e, c in f.terms.items():
        term = None
        for i, k in enumerate(e):
            if k:
                term = power(i, k) if term is None else term * power(i, k)
        if term is None:
            term = powers[0][0]
        for te, tc in term.terms.items():
            s = out.get(te, 0) + c * tc
            if s:
                out[te] = s
            else:
                out.pop(te, None)
    return Polynomial._raw(m, out)


def _neg_key(e: Exponent):
    return (-sum(e), tuple(-k for k in e))


def divide_exact(f: Polynomial, g: Polynomial) -> Polynomial:
    """Return ``q`` with ``f == q * g``; raise :class:`NotDivisible` otherwise.

    Long division by the single divisor ``g`` in graded-lex order.
    """
    if f.nvars != g.nvars:
        raise DimensionMismatch("divide_exact: variable counts differ")
    if not g.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    lm, lc = g.leading_term()
    if len(g.terms) == 1:
        out = {}
        for e, c in f.terms.items():
            d = tuple(a - b for a, b in zip(e, lm))
            if min(d, default=0) < 0:
                raise NotDivisible(f"{format_polynomial(g)} does not divide the dividend")
            out[d] = c / lc
        return Polynomial._raw(f.nvars, out)
    g_rest = [(e, c) for e, c in g.terms.items() if e != lm]
    rem = dict(f.terms)
    heap = [_neg_key(e) for e in rem]
    heapq.heapify(heap)
    quot: dict[Exponent, Fraction] = {}
    while rem:
        key = heapq.heappop(heap)
        e = tuple(-k for k in key[1])
        c = rem.get(e)
        if c is None:
            continue
        d = tuple(a - b for a, b in zip(e, lm))
        if min(d, default=0) < 0:
            raise NotDivisible(f"{format_polynomial(g)} does not divide the dividend")
        t = c / lc
        quot[d] = t
        del rem[e]
        for ge, gc in g_rest:
            ne = _add_exps(d, ge)
            s = rem.get(ne, 0) - t * gc
            if s:
                if ne not in rem:
                    heapq.heappush(heap, _neg_key(ne))
                rem[ne] = s
            else:
                rem.pop(ne, None)
    return Polynomial._raw(f.nvars, quot)


def divides(g: Polynomial, f: Polynomial) -> bool:
    try:
        divide_exact(f, g)
    except NotDivisible:
        return False
    return True


def homogeneous_components(f: Polynomial) -> list[tuple[int, Polynomial]]:
    """``[(degree, component), ...]`` in increasing degree; empty for zero."""
    parts: dict[int, dict[Exponent, Fraction]] = {}
    for e, c in f.terms.items():
        parts.setdefault(sum(e), {})[e] = c
    return [(d, Polynomial._raw(f.nvars, parts[d])) for d in sorted(parts)]


def monomials_of_degree(nvars: int, d: int) -> Iterator[Exponent]:
    """All exponent vectors of total degree ``d``, descending graded-lex."""
    if nvars == 0:
        if d == 0:
            yield ()
        return
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(nvars - 1, d - first):
            yield (first,) + rest


def linear_substitution(f: Polynomial, matrix: Sequence[Sequence[Fraction]]) -> Polynomial:
    """``f(A v)`` for a square rational matrix ``A``."""
    n = f.nvars
    if len(matrix) != n or any(len(r) != n for r in matrix):
        raise DimensionMismatch("matrix shape does not match the polynomial")
    rows = [LinearForm(tuple(r)).to_polynomial() if any(r) else Polynomial.zero(n)
            for r in matrix]
    return compose(f, rows)


# -- text grammar ---------------------------------------------------------
_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]+)(\d+)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        num, name, idx, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif name is not None:
            tokens.append(("var", (name, int(idx))))
        else:
            tokens.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens, nvars):
        self.tokens = tokens
        self.i = 0
        self.nvars = nvars

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}")

    def expr(self) -> Polynomial:
        result = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self) -> Polynomial:
        result = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            _, op = self.take()
            rhs = self.unary()
            if op == "*":
                result = result * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise ParseError("division only by a non-zero rational constant")
                result = result.scale(1 / rhs.constant_value())
        return result

    def unary(self) -> Polynomial:
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            inner = self.unary()
            return -inner if val == "-" else inner
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ParseError("exponent must be a non-negative integer literal")
            return base ** val
        return base

    def atom(self) -> Polynomial:
        kind, val = self.take()
        if kind == "num":
            return Polynomial.constant(self.nvars, val)
        if kind == "var":
            _, idx = val
            if idx < 1:
                raise ParseError("variable indices start at 1")
            return Polynomial.variable(self.nvars, idx - 1)
        if (kind, val) == ("op", "("):
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected token {val!r}")


def parse_polynomial(text: str, nvars: int | None = None, prefix: str | None = None) -> Polynomial:
    """Parse the text grammar.

    ``nvars`` defaults to the largest variable index present.  All variables
    must share one name prefix (``prefix`` if given).
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial text")
    names = {v[0] for k, v in tokens if k == "var"}
    if prefix is not None and names - {prefix}:
        raise ParseError(f"expected variables named {prefix}1.., found {sorted(names)}")
    if len(names) > 1:
        raise ParseError(f"mixed variable prefixes {sorted(names)}")
    top = max((v[1] for k, v in tokens if k == "var"), default=0)
    if nvars is None:
        nvars = top
    elif top > nvars:
        raise DimensionMismatch(f"variable index {top} exceeds nvars={nvars}")
    parser = _Parser(tokens, nvars)
    result = parser.expr()
    if parser.i != len(tokens):
        raise ParseError(f"trailing input at token {parser.i}")
    return result


def _format_monomial(exps: Exponent, prefix: str) -> str:
    parts = []
    for i, k in enumerate(exps):
        if k == 1:
            parts.append(f"{prefix}{i + 1}")
        elif k > 1:
            parts.append(f"{prefix}{i + 1}^{k}")
    return "*".join(parts)


def format_polynomial(f: Polynomial, prefix: str = "x") -> str:
    if not f.terms:
        return "0"
    out = []
    for n, (e, c) in enumerate(f.sorted_terms()):
        mono = _format_monomial(e, prefix)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if n == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


# -- JSON form ------------------------------------------------------------
def to_json(f: Polynomial) -> list[dict]:
    return [{"coeff": str(c), "exps": list(e)} for e, c in f.sorted_terms()]


def from_json(data: Iterable[Mapping], nvars: int | None = None) -> Polynomial:
    data = list(data)
    if nvars is None:
        if not data:
            raise ParseError("nvars is required to read an empty term list")
        nvars = len(data[0]["exps"])
    terms: dict[Exponent, Fraction] = {}
    for item in data:
        try:
            e = tuple(int(k) for k in item["exps"])
            c = Fraction(str(item["coeff"]))
        except (KeyError, ValueError, TypeError) as exc:
            raise ParseError(f"bad JSON term {item!r}") from exc
        if e in terms:
            raise ParseError(f"duplicate exponent {list(e)}")
        terms[e] = c
    return Polynomial(nvars, terms)
