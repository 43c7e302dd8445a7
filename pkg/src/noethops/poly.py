"""Sparse multivariate polynomials with exact rational coefficients.

A monomial is an exponent tuple with one entry per ambient variable; a
polynomial maps monomials to nonzero coefficients.  Coefficients are
`fractions.Fraction` in the ordinary case, but every arithmetic routine only
ever combines coefficients that are already present, so the same container
works verbatim over other exact fields (see `RationalFunction`, used as the
coefficient field Q(u) when computing over the fraction field of a set of
independent variables).

Nothing here ever rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Mapping, Sequence, Union

Mono = tuple[int, ...]

# Result values of monomial_compare.
LT, EQ, GT = -1, 0, 1


# ---------------------------------------------------------------------------
# monomials


def mono_zero(nvars: int) -> Mono:
    return (0,) * nvars


def mono_unit(nvars: int, i: int) -> Mono:
    e = [0] * nvars
    e[i] = 1
    return tuple(e)


def mono_mul(a: Mono, b: Mono) -> Mono:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Mono, b: Mono) -> bool:
    """True when x^a divides x^b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Mono, b: Mono) -> Mono:
    """Exponent vector of x^a / x^b; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Mono, b: Mono) -> Mono:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_degree(a: Mono) -> int:
    return sum(a)


def monomials_up_to(nvars: int, degree: int) -> list[Mono]:
    """All monomials of total degree <= degree, ascending in grevlex."""
    out: list[Mono] = []

    def rec(prefix: list[int], remaining: int, slot: int) -> None:
        if slot == nvars - 1:
            for e in range(remaining + 1):
                out.append(tuple(prefix + [e]))
            return
        for e in range(remaining + 1):
            rec(prefix + [e], remaining - e, slot + 1)

    if nvars == 0:
        return [()]
    rec([], degree, 0)
    out.sort(key=GrevLex().key)
    return out


# ---------------------------------------------------------------------------
# monomial orders


@dataclass(frozen=True)
class GrevLex:
    """Graded reverse lexicographic order."""

    def key(self, m: Mono):
        return (sum(m), tuple(-e for e in reversed(m)))


@dataclass(frozen=True)
class Lex:
    def key(self, m: Mono):
        return m


@dataclass(frozen=True)
class Block:
    """Block order: the eliminated positions dominate (compared in grevlex),
    ties fall through to the inner order on the remaining positions."""

    eliminated: tuple[int, ...]
    inner: "MonomialOrder"

    def key(self, m: Mono):
        elim = tuple(m[i] for i in self.eliminated)
        dropped = set(self.eliminated)
        keep = tuple(e for i, e in enumerate(m) if i not in dropped)
        return (GrevLex().key(elim), self.inner.key(keep))


MonomialOrder = Union[GrevLex, Lex, Block]


def monomial_compare(a: Mono, b: Mono, order: MonomialOrder) -> int:
    """-1 (LT), 0 (EQ) or 1 (GT) comparing a against b under `order`."""
    if len(a) != len(b):
        raise ValueError(f"exponent length mismatch: {len(a)} vs {len(b)}")
    ka, kb = order.key(a), order.key(b)
    if ka < kb:
        return LT
    if ka > kb:
        return GT
    return EQ


# ---------------------------------------------------------------------------
# polynomials


def _falling(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= n - i
    return out


class Poly:
    """Immutable sparse polynomial: {exponent tuple: nonzero coefficient}."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Mono, object] | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for m, c in terms.items():
                if len(m) != nvars:
                    raise ValueError(f"monomial {m} has wrong length for {nvars} variables")
                if c:
                    clean[m] = c
        self.terms = clean

    # construction -----------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars, {})

    @classmethod
    def one(cls, nvars: int) -> "Poly":
        return cls(nvars, {mono_zero(nvars): Fraction(1)})

    @classmethod
    def constant(cls, nvars: int, c) -> "Poly":
        return cls(nvars, {mono_zero(nvars): c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "Poly":
        return cls(nvars, {mono_unit(nvars, i): Fraction(1)})

    @classmethod
    def monomial(cls, nvars: int, m: Mono, c=Fraction(1)) -> "Poly":
        return cls(nvars, {m: c})

    # predicates ---------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(mono_degree(m) == 0 for m in self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(mono_degree(m) for m in self.terms)

    def coefficient(self, m: Mono):
        return self.terms.get(m, Fraction(0))

    def constant_term(self):
        return self.terms.get(mono_zero(self.nvars), Fraction(0))

    def leading(self, order: MonomialOrder) -> tuple[Mono, object]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def variables_used(self) -> set[int]:
        used: set[int] = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(i)
        return used

    # arithmetic ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __add__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            elif m in out:
                del out[m]
        return Poly(self.nvars, out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, Poly):
            out: dict[Mono, object] = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = mono_mul(m1, m2)
                    c = c1 * c2
                    s = out.get(m)
                    s = c if s is None else s + c
                    if s:
                        out[m] = s
                    elif m in out:
                        del out[m]
            return Poly(self.nvars, out)
        # scalar
        if not other:
            return Poly.zero(self.nvars)
        return Poly(self.nvars, {m: c * other for m, c in self.terms.items()})

    def __rmul__(self, other) -> "Poly":
        return self.__mul__(other)

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative polynomial power")
        if n == 0:
            return Poly.one(self.nvars)
        half = self ** (n // 2)
        sq = half * half
        return sq * self if n % 2 else sq

    def scale_term(self, m: Mono, c) -> "Poly":
        """self * c*x^m without building an intermediate Poly."""
        return Poly(self.nvars, {mono_mul(t, m): tc * c for t, tc in self.terms.items()})

    # calculus and evaluation --------------------------------------------

    def derivative(self, alpha: Mono) -> "Poly":
        """Iterated partial derivative d^alpha (no factorial normalization)."""
        out = {}
        for m, c in self.terms.items():
            if not mono_divides(alpha, m):
                continue
            factor = 1
            for e, a in zip(m, alpha):
                factor *= _falling(e, a)
            out[mono_div(m, alpha)] = c * factor
        return Poly(self.nvars, out)

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for e, p in zip(m, point):
                if e:
                    v = v * p**e
            total += v
        return total

    def substitute(self, values: Mapping[int, "Poly | RationalFunction"]):
        """Evaluate with variable i replaced by values[i]; missing variables
        are kept.  Returns a Poly, or a RationalFunction when any value is one."""
        for i in values:
            if not 0 <= i < self.nvars:
                raise ValueError(f"unassigned variable index {i}")
        rational = any(isinstance(v, RationalFunction) for v in values.values())

        def lift(p):
            if rational and isinstance(p, Poly):
                return RationalFunction(p)
            return p

        acc = None
        for m, c in self.terms.items():
            term = lift(Poly.constant(self.nvars, c))
            for i, e in enumerate(m):
                if not e:
                    continue
                base = values.get(i)
                base = lift(base) if base is not None else lift(Poly.variable(self.nvars, i))
                for _ in range(e):
                    term = term * base
            acc = term if acc is None else acc + term
        if acc is None:
            return Poly.zero(self.nvars)
        return acc

    def shift(self, point: Sequence[Fraction]) -> "Poly":
        """f(x + point), used to translate a point to the origin."""
        values = {
            i: Poly(self.nvars, {mono_unit(self.nvars, i): Fraction(1), mono_zero(self.nvars): Fraction(p)})
            for i, p in enumerate(point)
            if p
        }
        out = self.substitute(values) if values else self
        assert isinstance(out, Poly)
        return out

    # variable bookkeeping ------------------------------------------------

    def extend(self, extra: int) -> "Poly":
        """Append `extra` fresh variables (exponent 0 everywhere)."""
        pad = (0,) * extra
        return Poly(self.nvars + extra, {m + pad: c for m, c in self.terms.items()})

    def restrict(self, keep: Sequence[int]) -> "Poly":
        """Project onto the listed variable positions; caller guarantees the
        dropped positions carry exponent 0 in every term."""
        out = {}
        for m, c in self.terms.items():
            for i, e in enumerate(m):
                if e and i not in keep:
                    raise ValueError(f"term {m} uses dropped variable {i}")
            out[tuple(m[i] for i in keep)] = c
        return Poly(len(keep), out)

    # printing -------------------------------------------------------------

    def format(self, var_names: Sequence[str], order: MonomialOrder = GrevLex()) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=order.key, reverse=True):
            c = self.terms[m]
            factors = []
            for name, e in zip(var_names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            body = "*".join(factors)
            if not body:
                text = str(c)
            elif c == 1:
                text = body
            elif c == -1:
                text = f"-{body}"
            else:
                text = f"{c}*{body}"
            parts.append(text)
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self) -> str:
        names = [f"x{i}" for i in range(self.nvars)]
        return f"Poly({self.format(names)})"


# ---------------------------------------------------------------------------
# rational functions


def _poly_content(p: Poly) -> Fraction:
    """Positive rational c such that p/c has coprime integer coefficients."""
    num = 0
    den = 1
    for c in p.terms.values():
        num = gcd(num, c.numerator)
        den = den * c.denominator // gcd(den, c.denominator)
    if num == 0:
        return Fraction(1)
    return Fraction(num, den)


def _univariate_slot(p: Poly) -> int | None:
    used = p.variables_used()
    if len(used) == 1:
        return used.pop()
    if not used:
        return -1  # constant
    return None


def _poly_gcd_univariate(a: Poly, b: Poly, slot: int) -> Poly:
    """Monic gcd of two nonzero polynomials in the single variable `slot`."""

    def deg(p):
        return max((m[slot] for m in p.terms), default=-1)

    def lc(p):
        d = deg(p)
        return next(c for m, c in p.terms.items() if m[slot] == d)

    def monic(p):
        return p * (1 / lc(p))

    while b:
        # remainder of a by b
        r = a
        db, cb = deg(b), lc(b)
        while r and deg(r) >= db:
            dr, cr = deg(r), lc(r)
            m = tuple(e * (dr - db) for e in mono_unit(a.nvars, slot))
            r = r - b.scale_term(m, cr / cb)
        a, b = b, r
    return monic(a)


class RationalFunction:
    """Quotient of two polynomials over the same variable set.

    Reduction is deliberately cheap: content and sign normalization always,
    a full gcd cancellation only when both parts are univariate in the same
    variable.  Equality is decided by cross multiplication, so unreduced
    representatives compare correctly.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly.one(num.nvars)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            den = Poly.one(num.nvars)
        else:
            slot = _univariate_slot(den)
            if slot is not None and slot >= 0 and _univariate_slot(num) in (slot, -1):
                g = _poly_gcd_univariate(num, den, slot)
                if g.degree() > 0:
                    num = _poly_div_exact(num, g)
                    den = _poly_div_exact(den, g)
            c = _poly_content(den)
            lead = den.leading(GrevLex())[1]
            if lead < 0:
                c = -c
            num = num * (1 / c)
            den = den * (1 / c)
        self.num = num
        self.den = den

    @classmethod
    def lift(cls, value, nvars: int) -> "RationalFunction":
        if isinstance(value, RationalFunction):
            return value
        if isinstance(value, Poly):
            return cls(value)
        return cls(Poly.constant(nvars, Fraction(value)))

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Poly)):
            other = RationalFunction.lift(other, self.num.nvars)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        raise TypeError("unhashable: RationalFunction")

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def _coerce(self, other) -> "RationalFunction | None":
        if isinstance(other, (int, Fraction, Poly)):
            return RationalFunction.lift(other, self.num.nvars)
        if isinstance(other, RationalFunction):
            return other
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(o.num * self.den - self.num * o.den, self.den * o.den)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def is_polynomial(self) -> bool:
        return self.den == Poly.one(self.den.nvars)

    def format(self, var_names: Sequence[str]) -> str:
        if self.is_polynomial():
            return self.num.format(var_names)
        return f"({self.num.format(var_names)})/({self.den.format(var_names)})"

    def __repr__(self) -> str:
        names = [f"x{i}" for i in range(self.num.nvars)]
        return f"RationalFunction({self.format(names)})"


def _poly_div_exact(a: Poly, b: Poly) -> Poly:
    """Exact quotient a/b for univariate b dividing a; used by gcd reduction."""
    order = GrevLex()
    out = {}
    r = a
    mb, cb = b.leading(order)
    while r:
        mr, cr = r.leading(order)
        if not mono_divides(mb, mr):
            raise ValueError("inexact polynomial division")
        m = mono_div(mr, mb)
        c = cr / cb
        out[m] = c
        r = r - b.scale_term(m, c)
    return Poly(a.nvars, out)


# ---------------------------------------------------------------------------
# parsing


class PolyParseError(ValueError):
    """Syntax or name error while parsing polynomial text; carries `position`."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN_SYMBOLS = "+-*^()/"


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _TOKEN_SYMBOLS:
            tokens.append(("sym", ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        raise PolyParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, var_names: Sequence[str]):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.nvars = len(var_names)
        self.index = {name: i for i, name in enumerate(var_names)}

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, value: str):
        kind, val, at = self.advance()
        if val != value:
            raise PolyParseError(f"expected {value!r}", at)

    def parse(self) -> Poly:
        p = self.expr()
        kind, val, at = self.peek()
        if kind != "end":
            raise PolyParseError(f"unexpected trailing {val!r}", at)
        return p

    def expr(self) -> Poly:
        kind, val, _ = self.peek()
        sign = 1
        if kind == "sym" and val in "+-":
            self.advance()
            sign = -1 if val == "-" else 1
        p = self.term() * sign
        while True:
            kind, val, _ = self.peek()
            if kind == "sym" and val in "+-":
                self.advance()
                q = self.term()
                p = p + q if val == "+" else p - q
            else:
                return p

    def term(self) -> Poly:
        p = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "sym" and val == "*":
                self.advance()
                p = p * self.factor()
            else:
                return p

    def factor(self) -> Poly:
        p = self.atom()
        kind, val, _ = self.peek()
        if kind == "sym" and val == "^":
            self.advance()
            kind, val, at = self.advance()
            if kind != "int":
                raise PolyParseError("expected integer exponent", at)
            p = p ** int(val)
        return p

    def atom(self) -> Poly:
        kind, val, at = self.advance()
        if kind == "int":
            num = int(val)
            kind2, val2, _ = self.peek()
            if kind2 == "sym" and val2 == "/":
                self.advance()
                kind3, val3, at3 = self.advance()
                if kind3 != "int" or int(val3) == 0:
                    raise PolyParseError("expected positive integer denominator", at3)
                return Poly.constant(self.nvars, Fraction(num, int(val3)))
            return Poly.constant(self.nvars, Fraction(num))
        if kind == "name":
            if val not in self.index:
                raise PolyParseError(f"unknown variable {val!r}", at)
            return Poly.variable(self.nvars, self.index[val])
        if kind == "sym" and val == "(":
            p = self.expr()
            self.expect(")")
            return p
        raise PolyParseError(f"unexpected {val!r}" if val else "unexpected end of input", at)


def parse_polynomial(text: str, var_names: Sequence[str]) -> Poly:
    """Parse `text` over the given variables.

    Grammar: expr := ['+'|'-'] term (('+'|'-') term)*, term := factor ('*'
    factor)*, factor := atom ('^' nat)?, atom := rational | var | '(' expr ')'.
    Rational literals are written n/d with a positive integer denominator.
    """
    return _Parser(text, var_names).parse()
