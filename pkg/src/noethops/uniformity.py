"""Differential colon subspaces and empirical uniform constants.

The central computation: for an ideal J of R = P/N with image I in R_red and
a set of operators into R_red, find the least shift c such that every
polynomial of degree at most D killed into I^(n+c) by all operators already
lies in J^n.  Witnesses refuting a candidate shift are exact counterexamples
(re-verified by independent normal-form checks); a "contained" verdict is
certified only up to the degree bound, and every report records that bound.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import linalg
from .diffops import (
    DiffOp,
    OperatorSet,
    kernel_polynomials,
    operator_kernel,
    random_ideal_element,
    random_polynomial,
)
from .groebner import (
    IdealHandle,
    RingSpec,
    ideal_equal,
    ideal_power,
    ideal_sum,
    is_subideal,
)
from .noetherian import NoetherianCertificate, verify_noetherian_ops
from .poly import Mono, Poly, RationalFunction, monomials_up_to


# ---------------------------------------------------------------------------
# truncated subspaces


class TruncatedSubspace:
    """Linear subspace of P_<=D, held as a row-reduced basis over the fixed
    ascending monomial enumeration."""

    def __init__(self, nvars: int, degree_bound: int, vectors: list[list[Fraction]], monos: list[Mono] | None = None):
        self.nvars = nvars
        self.degree_bound = degree_bound
        self.monos = monos if monos is not None else monomials_up_to(nvars, degree_bound)
        self._index = {m: j for j, m in enumerate(self.monos)}
        self._rref, self._pivots = linalg.rref(vectors, len(self.monos))
        self.basis = kernel_polynomials(self.monos, self._rref, nvars)

    @classmethod
    def from_polynomials(cls, nvars: int, degree_bound: int, polys: Sequence[Poly]) -> "TruncatedSubspace":
        monos = monomials_up_to(nvars, degree_bound)
        index = {m: j for j, m in enumerate(monos)}
        vectors = []
        for p in polys:
            v = [Fraction(0)] * len(monos)
            for m, c in p.terms.items():
                if m not in index:
                    raise ValueError("polynomial exceeds the degree bound")
                v[index[m]] = c
            vectors.append(v)
        return cls(nvars, degree_bound, vectors, monos)

    @property
    def dim(self) -> int:
        return len(self._rref)

    def contains_poly(self, f: Poly) -> bool:
        v = [Fraction(0)] * len(self.monos)
        for m, c in f.terms.items():
            j = self._index.get(m)
            if j is None:
                return False
            v[j] = c
        return linalg.in_row_space(self._rref, self._pivots, v)

    def contains_subspace(self, other: "TruncatedSubspace") -> bool:
        return all(self.contains_poly(f) for f in other.basis)


# ---------------------------------------------------------------------------
# differential colon


def diff_colon_of_ideal(source: IdealHandle, ops: OperatorSet, ring: RingSpec, D: int) -> TruncatedSubspace:
    """{f in P_<=D : op(f) = 0 mod (source + rad) for every op}."""
    cond = ideal_sum(source, ring.rad)
    monos, vectors = operator_kernel(list(ops), cond, D)
    return TruncatedSubspace(ring.nvars, D, vectors, monos)


def diff_colon(I: IdealHandle, m: int, ops: OperatorSet, ring: RingSpec, D: int) -> TruncatedSubspace:
    """The degree-truncated differential colon of I^m by the operator set:
    all f of degree <= D with every op(f) in I^m + rad."""
    if ops.modulus is None or not ideal_equal(ops.modulus, ring.rad):
        raise ValueError("operator set modulus differs from the ring radical")
    if D < 1:
        raise ValueError("degree bound must be at least 1")
    return diff_colon_of_ideal(ideal_power(I, m), ops, ring, D)


@dataclass
class ContainmentResult:
    contained: bool
    witness: Poly | None = None


def subspace_in_ideal(S: TruncatedSubspace, J: IdealHandle, ring: RingSpec) -> ContainmentResult:
    """Is every basis element of S in J (as an ideal of R, so modulo N too)?

    A witness refutes containment absolutely; `contained` certifies it only
    for elements of degree <= S.degree_bound.
    """
    T = ideal_sum(J, ring.N)
    for f in S.basis:
        if T.normal_form(f):
            return ContainmentResult(False, f)
    return ContainmentResult(True, None)


# ---------------------------------------------------------------------------
# minimal uniform shift search


@dataclass
class ConstantRow:
    n: int
    c_min: int | None  # None: no c <= c_max worked
    c_searched: int
    witness: Poly | None = None

    def c_label(self) -> str:
        return str(self.c_min) if self.c_min is not None else f"NOT_FOUND(<={self.c_searched})"


@dataclass
class ConstantReport:
    ideal_name: str
    rows: list[ConstantRow]
    degree_bound: int
    n_max: int
    c_max: int
    verdict: str = ""
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.verdict:
            if any(r.c_min is None for r in self.rows):
                self.verdict = "exhausted"
            else:
                self.verdict = f"c = {max((r.c_min for r in self.rows), default=0)}"

    @property
    def max_c(self) -> int | None:
        if any(r.c_min is None for r in self.rows):
            return None
        return max((r.c_min for r in self.rows), default=0)

    def to_dict(self, var_names: Sequence[str]) -> dict:
        out = {
            "ideal": self.ideal_name,
            "degree_bound": self.degree_bound,
            "n_max": self.n_max,
            "c_max": self.c_max,
            "verdict": self.verdict,
            "rows": [
                {
                    "n": r.n,
                    "c_min": r.c_label(),
                    "witness": r.witness.format(var_names) if r.witness is not None else "",
                }
                for r in self.rows
            ],
        }
        out.update(self.extras)
        return out


PowerSchedule = Callable[[IdealHandle, int, int], IdealHandle]


def _ordinary_powers(I: IdealHandle, n: int, c: int) -> IdealHandle:
    return ideal_power(I, n + c)


def find_min_c(
    J: IdealHandle,
    ops: OperatorSet,
    ring: RingSpec,
    n_max: int,
    c_max: int,
    D: int,
    *,
    schedule: PowerSchedule = _ordinary_powers,
    ideal_name: str = "J",
    extras: dict | None = None,
) -> ConstantReport:
    """Least c (per n <= n_max, searching upward from 0) with the colon of
    schedule(I, n, c) contained in J^n at degree D; the default schedule is
    the ordinary power I^(n+c).

    Each recorded witness is re-verified: it is killed into schedule(I,n,c-1)
    by every operator yet lies outside J^n, independent of the search path.
    """
    I = ring.image_in_reduced(J)
    rows = []
    for n in range(1, n_max + 1):
        Jn = ideal_power(J, n)
        c_min = None
        last_witness = None
        for c in range(c_max + 1):
            S = diff_colon_of_ideal(schedule(I, n, c), ops, ring, D)
            res = subspace_in_ideal(S, Jn, ring)
            if res.contained:
                c_min = c
                break
            last_witness = (c, res.witness)
        witness = None
        if last_witness is not None:
            witness_c, witness_poly = last_witness
            _assert_exact_witness(witness_poly, schedule(I, n, witness_c), Jn, ops, ring)
            witness = witness_poly
        rows.append(ConstantRow(n, c_min, c_max, witness))
    return ConstantReport(ideal_name, rows, D, n_max, c_max, extras=extras or {})


def _assert_exact_witness(f: Poly, source: IdealHandle, Jn: IdealHandle, ops: OperatorSet, ring: RingSpec) -> None:
    cond = ideal_sum(source, ring.rad)
    for op in ops:
        if cond.normal_form(op.apply(f)):
            raise AssertionError("recorded witness is not killed into the colon source")
    if not ideal_sum(Jn, ring.N).normal_form(f):
        raise AssertionError("recorded witness lies in the target power after all")


# ---------------------------------------------------------------------------
# reverse containment


@dataclass
class ReverseReport:
    n: int
    passed: bool
    witness: Poly | None = None


def check_reverse(J: IdealHandle, ops: OperatorSet, ring: RingSpec, n: int, D: int) -> ReverseReport:
    """Check J^(n+e) inside the colon of I^n, e the max operator order: every
    product g of n+e generators (of degree <= D) must satisfy op(h*g) in
    I^n + rad for all h, verified exactly on monomials h of degree up to the
    operator order.  Failure signals an arithmetic bug, not a math fact."""
    e = ops.max_order
    I = ring.image_in_reduced(J)
    target = ideal_sum(ideal_power(I, n), ring.rad)
    for g in ideal_power(J, n + e).gens:
        if g.degree() > D:
            continue
        for op in ops:
            for beta in monomials_up_to(ring.nvars, op.order):
                value = op.apply(Poly.monomial(ring.nvars, beta) * g)
                if target.normal_form(value):
                    return ReverseReport(n, False, Poly.monomial(ring.nvars, beta) * g)
    return ReverseReport(n, True, None)


# ---------------------------------------------------------------------------
# separating operators


@dataclass
class SeparatingOperatorResult:
    found: bool
    delta: DiffOp | None = None
    order: int | None = None
    d_value: RationalFunction | None = None
    psi_spec: list[Poly] = field(default_factory=list)
    linearity_checked: int = 0
    message: str = ""


class PsiInconsistencyError(ValueError):
    pass


def separating_operator(
    a: IdealHandle,
    b: IdealHandle,
    ring: RingSpec,
    p: IdealHandle,
    psi: Sequence[Poly],
    t_max: int,
    coeff_deg: int,
    *,
    seed: int = 0,
    linearity_samples: int = 50,
) -> SeparatingOperatorResult:
    """Search, by increasing order t then the fixed unknown enumeration, for
    an operator killing a (exactly, via the monomial-multiples check) whose
    value on some generator of b is nonzero mod p.

    psi lists the claimed images in R/p of b's generators under an R-linear
    embedding of b/a; the returned d satisfies delta(g) = psi(g) * d mod p
    for every generator, and the restricted linearity identity
    delta(f*g) = f*delta(g) mod p is sampled on random pairs.
    """
    nvars = ring.nvars
    a_full = ideal_sum(a, ring.N)
    b_full = ideal_sum(b, ring.N)
    if not is_subideal(a_full, b_full) or ideal_equal(a_full, b_full):
        raise ValueError("need a strictly inside b")
    if len(psi) != len(b.gens):
        raise ValueError("psi must list one image per generator of b")
    if ring.minimal_primes and not any(ideal_equal(p, q) for q in ring.minimal_primes):
        raise ValueError("p is not among the declared minimal primes")

    for t in range(t_max + 1):
        for cd in range(coeff_deg + 1):
            coeff_monos = monomials_up_to(nvars, cd)
            alphas = monomials_up_to(nvars, t)
            unknowns = [(alpha, mu) for alpha in alphas for mu in coeff_monos]
            columns = {u: j for j, u in enumerate(unknowns)}
            rows: dict[tuple[int, Mono, Mono], list[Fraction]] = {}
            for gi, g in enumerate(a_full.gens):
                for beta in monomials_up_to(nvars, t):
                    shifted = Poly.monomial(nvars, beta) * g
                    for (alpha, mu), j in columns.items():
                        contrib = ring.rad.normal_form(Poly.monomial(nvars, mu) * shifted.derivative(alpha))
                        for m, c in contrib.terms.items():
                            key = (gi, beta, m)
                            if key not in rows:
                                rows[key] = [Fraction(0)] * len(unknowns)
                            rows[key][j] += c
            ordered = [rows[k] for k in sorted(rows)]
            vectors = linalg.kernel_basis(ordered, len(unknowns))
            for v in vectors:
                terms: dict[Mono, Poly] = {}
                for (alpha, mu), j in columns.items():
                    if v[j]:
                        prev = terms.get(alpha, Poly.zero(nvars))
                        terms[alpha] = prev + Poly.monomial(nvars, mu, v[j])
                delta = DiffOp(nvars, terms, ring.rad)
                if delta.order != t:
                    continue  # operators of lower order were covered at their own t
                if any(p.normal_form(delta.apply(h)) for h in b.gens):
                    return _finish_separating(delta, a_full, b, ring, p, list(psi), seed, linearity_samples)
    return SeparatingOperatorResult(False, message=f"no operator up to order {t_max} with coefficient degree {coeff_deg}")


def _finish_separating(
    delta: DiffOp,
    a_full: IdealHandle,
    b: IdealHandle,
    ring: RingSpec,
    p: IdealHandle,
    psi: list[Poly],
    seed: int,
    samples: int,
) -> SeparatingOperatorResult:
    rng = random.Random(seed)
    nvars = ring.nvars
    for _ in range(samples):
        f = random_polynomial(rng, nvars, 3)
        g = random_ideal_element(rng, b, 2)
        lhs = delta.apply(f * g)
        rhs = f * delta.apply(g)
        if p.normal_form(lhs - rhs):
            raise AssertionError("restricted linearity failed; separating operator search is buggy")

    pivot = None
    for h, psi_h in zip(b.gens, psi):
        dh = p.normal_form(delta.apply(h))
        ph = p.normal_form(psi_h)
        if dh and not ph:
            raise PsiInconsistencyError("operator separates a generator whose claimed image is zero")
        if dh and ph:
            pivot = (dh, ph)
            break
    if pivot is None:
        raise PsiInconsistencyError("no generator with nonzero image to normalize d against")
    d_num, d_den = pivot
    for h, psi_h in zip(b.gens, psi):
        dh = p.normal_form(delta.apply(h))
        ph = p.normal_form(psi_h)
        if p.normal_form(dh * d_den - ph * d_num):
            raise PsiInconsistencyError("d is not consistent across the generators; psi is not the claimed embedding")
    d_value = RationalFunction(d_num, d_den)
    return SeparatingOperatorResult(
        True, delta=delta, order=delta.order, d_value=d_value, psi_spec=psi, linearity_checked=samples
    )


# ---------------------------------------------------------------------------
# filtration checks


@dataclass
class FiltrationStep:
    index: int
    strictly_increasing: bool
    module_structure: bool
    prime_declared: bool
    failure: Poly | None = None


@dataclass
class FiltrationReport:
    steps: list[FiltrationStep]
    last_term_is_minimal_prime: bool
    passed: bool
    note: str = "associated-prime condition on the quotients is user-asserted, not checked"


def verify_filtration(chain: Sequence[IdealHandle], primes: Sequence[IdealHandle], ring: RingSpec) -> FiltrationReport:
    """Structural checks for a chain N = a_0 < a_1 < ... < a_k = (1) with a
    declared prime per step: strictness, p_i * a_i inside a_(i-1) (so each
    quotient is a module over R/p_i), each p_i among the declared minimal
    primes, and a_(k-1) itself a declared minimal prime."""
    if len(chain) < 2:
        raise ValueError("chain needs at least two terms")
    if len(primes) != len(chain) - 1:
        raise ValueError("need one prime per chain step")
    if not ideal_equal(chain[0], ring.N):
        raise ValueError("chain must start at the defining ideal")
    if not chain[-1].contains_one():
        raise ValueError("chain must end at the unit ideal")

    steps = []
    ok = True
    for i in range(1, len(chain)):
        prev, cur, prime = chain[i - 1], chain[i], primes[i - 1]
        strict = is_subideal(prev, cur) and not ideal_equal(prev, cur)
        module_ok = True
        failure = None
        for pg in prime.gens:
            for cg in cur.gens:
                if not prev.contains(pg * cg):
                    module_ok = False
                    failure = pg * cg
                    break
            if not module_ok:
                break
        declared = any(ideal_equal(prime, q) for q in ring.minimal_primes)
        ok = ok and strict and module_ok and declared
        steps.append(FiltrationStep(i, strict, module_ok, declared, failure))
    last_ok = any(ideal_equal(chain[-2], q) for q in ring.minimal_primes)
    ok = ok and last_ok
    return FiltrationReport(steps, last_ok, ok)


# ---------------------------------------------------------------------------
# experiment orchestration


@dataclass
class ExperimentBundle:
    mode: str
    seed: int
    degree_bound: int
    n_max: int
    c_max: int
    certificate: NoetherianCertificate
    reports: list[ConstantReport]
    reverse: list[ReverseReport]
    aggregate_c: int | None
    verdict: str
    max_op_order: int

    def to_dict(self, var_names: Sequence[str]) -> dict:
        return {
            "mode": self.mode,
            "seed": self.seed,
            "parameters": {"degree_bound": self.degree_bound, "n_max": self.n_max, "c_max": self.c_max},
            "operator_certificate": self.certificate.to_dict(var_names),
            "max_operator_order": self.max_op_order,
            "reports": [r.to_dict(var_names) for r in self.reports],
            "reverse_checks": [
                {"ideal": name, "n": r.n, "passed": r.passed} for name, r in self.reverse_named()
            ],
            "aggregate_c": self.aggregate_c if self.aggregate_c is not None else "NOT_FOUND",
            "verdict": self.verdict,
        }

    def reverse_named(self):
        # reverse checks are stored flat in report order, n ascending
        out = []
        idx = 0
        per = len(self.reverse) // len(self.reports) if self.reports else 0
        for rep in self.reports:
            for _ in range(per):
                out.append((rep.ideal_name, self.reverse[idx]))
                idx += 1
        return out

    def csv_rows(self, var_names: Sequence[str]) -> list[list[str]]:
        rows = [["J_id", "n", "c_min", "witness", "degree_bound"]]
        for rep in self.reports:
            for r in rep.rows:
                rows.append(
                    [
                        rep.ideal_name,
                        str(r.n),
                        r.c_label(),
                        r.witness.format(var_names) if r.witness is not None else "",
                        str(rep.degree_bound),
                    ]
                )
        return rows


def run_constant_experiment(
    ring: RingSpec,
    ops: OperatorSet,
    named_ideals: Sequence[tuple[str, IdealHandle]],
    n_max: int,
    c_max: int,
    D: int,
    *,
    mode: str = "artin_rees",
    seed: int = 0,
    jobs: int = 1,
    report_fn: Callable[[str, IdealHandle], ConstantReport] | None = None,
    include_reverse: bool = True,
    verify_degree: int | None = None,
) -> ExperimentBundle:
    """Verify the operator set against the defining ideal, run the per-ideal
    minimal-shift searches (optionally on a thread pool; results merge in
    input order), optionally run the reverse containment checks, and report
    the aggregate empirical constant (the max over the family)."""
    cert = verify_noetherian_ops(ring.N, ops, verify_degree or D)
    if not cert.ok:
        raise ValueError("operator set refuted against the defining ideal; not a Noetherian set for R")

    def run_one(item: tuple[str, IdealHandle]) -> tuple[ConstantReport, list[ReverseReport]]:
        name, J = item
        if report_fn is not None:
            rep = report_fn(name, J)
        else:
            rep = find_min_c(J, ops, ring, n_max, c_max, D, ideal_name=name)
        rev = []
        if include_reverse:
            rev = [check_reverse(J, ops, ring, n, D) for n in range(1, n_max + 1)]
        return rep, rev

    if jobs > 1 and len(named_ideals) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_one, named_ideals))
    else:
        results = [run_one(item) for item in named_ideals]

    reports = [r for r, _ in results]
    reverse = [x for _, rv in results for x in rv]
    if any(rep.max_c is None for rep in reports):
        aggregate = None
        verdict = "exhausted: some rows hit c_max without containment"
    else:
        aggregate = max((rep.max_c for rep in reports), default=0)
        verdict = f"aggregate c = {aggregate} over {len(reports)} ideal(s), degree bound {D}"
    if include_reverse and any(not r.passed for r in reverse):
        verdict += "; REVERSE CHECK FAILED (arithmetic bug)"
    return ExperimentBundle(
        mode, seed, D, n_max, c_max, cert, reports, reverse, aggregate, verdict, ops.max_order
    )


def artin_rees_experiment(
    ring: RingSpec,
    ops: OperatorSet,
    named_ideals: Sequence[tuple[str, IdealHandle]],
    n_max: int,
    c_max: int,
    D: int,
    *,
    seed: int = 0,
    jobs: int = 1,
) -> ExperimentBundle:
    """Ordinary-powers experiment: per-ideal minimal shifts, reverse checks,
    aggregate constant."""
    return run_constant_experiment(
        ring, ops, named_ideals, n_max, c_max, D, mode="artin_rees", seed=seed, jobs=jobs
    )
