"""Differential operators with polynomial coefficients on Q[x1..xn] and its
quotients.

An operator is a finite sum of coefficient * d^alpha terms where d^alpha is
the plain iterated partial derivative (no factorial normalization).  An
optional target modulus realizes operators into a quotient: applying the
operator reduces the result by that ideal, so "delta(f) = 0 in R_red" is a
normal-form test.

The text syntax writes d<var> for the derivative in that variable, e.g.
"y*dx*dy + 1" or "dx^2"; juxtaposition with '*' is formal (coefficients to
the left of derivatives), not composition in the Weyl algebra.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .groebner import IdealHandle, ideal_power, ideal_sum, split_poly_list
from .poly import GrevLex, Mono, Poly, mono_degree, monomials_up_to, parse_polynomial


def _alpha_key(alpha: Mono):
    return (mono_degree(alpha), GrevLex().key(alpha))


class DiffOp:
    """Sum of (polynomial coefficient, derivative multi-index) terms, with an
    optional post-composed reduction modulus."""

    __slots__ = ("nvars", "terms", "modulus")

    def __init__(self, nvars: int, terms, modulus: IdealHandle | None = None):
        self.nvars = nvars
        merged: dict[Mono, Poly] = {}
        for alpha, coeff in terms.items() if isinstance(terms, dict) else terms:
            if coeff:
                prev = merged.get(alpha)
                merged[alpha] = coeff if prev is None else prev + coeff
        self.terms = {a: c for a, c in sorted(merged.items(), key=lambda kv: _alpha_key(kv[0])) if c}
        self.modulus = modulus

    # construction --------------------------------------------------------

    @classmethod
    def identity(cls, nvars: int, modulus: IdealHandle | None = None) -> "DiffOp":
        return cls(nvars, {(0,) * nvars: Poly.one(nvars)}, modulus)

    @classmethod
    def partial(cls, nvars: int, alpha: Mono, modulus: IdealHandle | None = None) -> "DiffOp":
        return cls(nvars, {tuple(alpha): Poly.one(nvars)}, modulus)

    # structure -----------------------------------------------------------

    @property
    def order(self) -> int:
        """Max |alpha| over surviving terms; the zero operator has order 0."""
        if not self.terms:
            return 0
        return max(mono_degree(a) for a in self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DiffOp)
            and self.nvars == other.nvars
            and self.terms == other.terms
            and _same_modulus(self.modulus, other.modulus)
        )

    def with_modulus(self, modulus: IdealHandle | None) -> "DiffOp":
        return DiffOp(self.nvars, self.terms, modulus)

    def scale(self, factor) -> "DiffOp":
        """Multiply every coefficient by a scalar or polynomial factor."""
        return DiffOp(self.nvars, {a: c * factor for a, c in self.terms.items()}, self.modulus)

    def reduce_coefficients(self, ideal: IdealHandle) -> "DiffOp":
        return DiffOp(self.nvars, {a: ideal.normal_form(c) for a, c in self.terms.items()}, self.modulus)

    # action ----------------------------------------------------------------

    def apply(self, f: Poly) -> Poly:
        if f.nvars != self.nvars:
            raise ValueError("operator and argument live over different variable sets")
        out = Poly.zero(self.nvars)
        for alpha, coeff in self.terms.items():
            out = out + coeff * f.derivative(alpha)
        if self.modulus is not None:
            out = self.modulus.normal_form(out)
        return out

    def bracket(self, f: Poly) -> "DiffOp":
        """[delta, f]: g -> delta(f*g) - f*delta(g); drops the order by at
        least one for operators of positive order."""
        terms: list[tuple[Mono, Poly]] = []
        for alpha, coeff in self.terms.items():
            for gamma in _sub_indices(alpha):
                binom = 1
                for a, g in zip(alpha, gamma):
                    binom *= math.comb(a, g)
                df = f.derivative(gamma)
                if df:
                    terms.append((tuple(x - y for x, y in zip(alpha, gamma)), coeff * (binom * df)))
        return DiffOp(self.nvars, terms, self.modulus)

    # printing ---------------------------------------------------------------

    def format(self, var_names: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        parts = []
        for alpha in sorted(self.terms, key=_alpha_key, reverse=True):
            coeff = self.terms[alpha]
            dfactors = []
            for name, e in zip(var_names, alpha):
                if e == 1:
                    dfactors.append(f"d{name}")
                elif e > 1:
                    dfactors.append(f"d{name}^{e}")
            dpart = "*".join(dfactors)
            ctext = coeff.format(var_names)
            if not dpart:
                text = f"({ctext})" if len(coeff.terms) > 1 else ctext
            elif ctext == "1":
                text = dpart
            elif ctext == "-1":
                text = f"-{dpart}"
            elif len(coeff.terms) > 1:
                text = f"({ctext})*{dpart}"
            else:
                text = f"{ctext}*{dpart}"
            parts.append(text)
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self) -> str:
        names = [f"x{i}" for i in range(self.nvars)]
        return f"DiffOp({self.format(names)})"


def _same_modulus(a: IdealHandle | None, b: IdealHandle | None) -> bool:
    if a is None or b is None:
        return a is b
    return a is b or list(a.gb) == list(b.gb)


def _sub_indices(alpha: Mono) -> list[Mono]:
    """Nonzero gamma with gamma <= alpha componentwise."""
    ranges = [range(a + 1) for a in alpha]
    out = []

    def rec(i, acc):
        if i == len(alpha):
            g = tuple(acc)
            if any(g):
                out.append(g)
            return
        for v in ranges[i]:
            rec(i + 1, acc + [v])

    rec(0, [])
    return out


# ---------------------------------------------------------------------------
# operator sets


@dataclass
class OperatorSet:
    """Operators sharing one target modulus; `meta` optionally records the
    primary component the set was computed from."""

    ops: list[DiffOp]
    modulus: IdealHandle | None
    meta: object = None

    def __post_init__(self):
        self.ops = [op.with_modulus(self.modulus) for op in self.ops]

    @property
    def max_order(self) -> int:
        return max((op.order for op in self.ops), default=0)

    def __iter__(self):
        return iter(self.ops)

    def __len__(self):
        return len(self.ops)

    def format(self, var_names: Sequence[str]) -> str:
        return "; ".join(op.format(var_names) for op in self.ops)


# ---------------------------------------------------------------------------
# parsing


def parse_operator(text: str, var_names: Sequence[str], modulus: IdealHandle | None = None) -> DiffOp:
    """Parse operator text; d<var> is the derivative in that variable."""
    names = list(var_names) + [f"d{v}" for v in var_names]
    p = parse_polynomial(text, names)
    n = len(var_names)
    terms: list[tuple[Mono, Poly]] = []
    for m, c in p.terms.items():
        coeff_mono, alpha = m[:n], m[n:]
        terms.append((alpha, Poly.monomial(n, coeff_mono, c)))
    return DiffOp(n, terms, modulus)


def parse_operator_set(text: str, var_names: Sequence[str], modulus: IdealHandle | None = None) -> OperatorSet:
    ops = [parse_operator(part, var_names) for part in split_poly_list(text)]
    return OperatorSet(ops, modulus)


# ---------------------------------------------------------------------------
# truncated kernels


def operator_kernel(
    ops: Sequence[DiffOp], cond: IdealHandle, D: int
) -> tuple[list[Mono], list[list[Fraction]]]:
    """Basis vectors of {f in P_<=D : NF(op(f), cond) = 0 for every op},
    over the ascending monomial enumeration of P_<=D.

    `cond` must contain each operator's own modulus so that reducing the
    applied value by `cond` is the intended condition.
    """
    from . import linalg

    nvars = cond.nvars
    monos = monomials_up_to(nvars, D)
    col_index = {m: j for j, m in enumerate(monos)}
    rows: dict[tuple[int, Mono], list[Fraction]] = {}
    for j, m in enumerate(monos):
        basis_poly = Poly.monomial(nvars, m)
        for i, op in enumerate(ops):
            value = cond.normal_form(op.apply(basis_poly))
            for out_mono, c in value.terms.items():
                row = rows.get((i, out_mono))
                if row is None:
                    row = [Fraction(0)] * len(monos)
                    rows[(i, out_mono)] = row
                row[j] += c
    ordered = [rows[k] for k in sorted(rows, key=lambda k: (k[0], _alpha_key(k[1])))]
    vectors = linalg.kernel_basis(ordered, len(monos))
    return monos, vectors


def kernel_polynomials(monos: list[Mono], vectors: list[list[Fraction]], nvars: int) -> list[Poly]:
    return [Poly(nvars, {m: c for m, c in zip(monos, v) if c}) for v in vectors]


# ---------------------------------------------------------------------------
# order lemma regression


@dataclass
class OrderLemmaReport:
    passed: bool
    samples: int
    witness: Poly | None = None


def random_polynomial(rng: random.Random, nvars: int, max_degree: int, max_terms: int = 4) -> Poly:
    monos = monomials_up_to(nvars, max_degree)
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        m = monos[rng.randrange(len(monos))]
        c = Fraction(rng.randint(-4, 4))
        if c:
            terms[m] = terms.get(m, Fraction(0)) + c
    return Poly(nvars, terms)


def random_ideal_element(rng: random.Random, I: IdealHandle, coeff_degree: int = 2) -> Poly:
    """Random combination of the generators with small random coefficients."""
    out = Poly.zero(I.nvars)
    for g in I.gens:
        out = out + random_polynomial(rng, I.nvars, coeff_degree) * g
    return out


def check_order_lemma(
    delta: DiffOp,
    J: IdealHandle,
    I: IdealHandle,
    t: int,
    samples: int,
    seed: int = 0,
) -> OrderLemmaReport:
    """Sample elements f of J^(e+t), e = order(delta), and verify that
    delta(f) lands in I^t (modulo the operator's target modulus).  The
    containment is a theorem, so any counterexample is an arithmetic bug.
    """
    rng = random.Random(seed)
    e = delta.order
    source = ideal_power(J, e + t)
    target = ideal_power(I, t)
    if delta.modulus is not None:
        target = ideal_sum(target, delta.modulus)
    for _ in range(samples):
        f = random_ideal_element(rng, source)
        if target.normal_form(delta.apply(f)):
            return OrderLemmaReport(False, samples, f)
    return OrderLemmaReport(True, samples, None)
