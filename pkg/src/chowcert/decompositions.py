"""Permanents, determinants, and their expressions as sums of products of linear forms."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, comb, factorial
from typing import List, Optional, Sequence, Tuple

from .certificate import Certificate, Timer
from .poly import (
    NotMultihomogeneous,
    Polynomial,
    Ring,
    exact_rank,
    format_polynomial,
    is_linear_form,
    linear_form,
    matrix_ring,
)


def _sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _generic_matrix_form(n: int, signed: bool) -> Polynomial:
    if n < 1:
        raise ValueError("n must be at least 1")
    ring = matrix_ring("x", n, row_graded=True)
    terms = {}
    for perm in itertools.permutations(range(n)):
        m = tuple(sorted((ring.index(f"x{i + 1}{perm[i] + 1}"), 1) for i in range(n)))
        terms[m] = Fraction(_sign(perm) if signed else 1)
    return Polynomial(ring, terms)


def make_permanent(n: int) -> Polynomial:
    return _generic_matrix_form(n, signed=False)


def make_determinant(n: int) -> Polynomial:
    return _generic_matrix_form(n, signed=True)


@dataclass(frozen=True)
class ProductTerm:
    coefficient: Fraction
    factors: Tuple[Polynomial, ...]

    def __post_init__(self):
        for l in self.factors:
            linear_form(l)

    def expand(self) -> Polynomial:
        out = self.factors[0].ring.const(self.coefficient)
        for l in self.factors:
            out = out * l
        return out

    def to_dict(self) -> dict:
        return {"coefficient": str(self.coefficient), "factors": [format_polynomial(l) for l in self.factors]}


@dataclass
class ProductDecomposition:
    name: str
    n: int
    terms: List[ProductTerm]
    target: Polynomial
    notes: List[str] = field(default_factory=list)

    def expand(self) -> Polynomial:
        total = self.target.ring.zero()
        for t in self.terms:
            total = total + t.expand()
        return total

    def __len__(self):
        return len(self.terms)


@dataclass(frozen=True)
class WaringTerm:
    coefficient: Fraction
    form: Polynomial
    exponent: int

    def expand(self) -> Polynomial:
        return (self.form ** self.exponent).scale(self.coefficient)

    def to_dict(self) -> dict:
        return {"coefficient": str(self.coefficient), "form": format_polynomial(self.form), "exponent": self.exponent}


@dataclass
class WaringDecomposition:
    name: str
    terms: List[WaringTerm]
    target: Polynomial

    def expand(self) -> Polynomial:
        total = self.target.ring.zero()
        for t in self.terms:
            total = total + t.expand()
        return total

    def __len__(self):
        return len(self.terms)


def ryser(n: int) -> ProductDecomposition:
    """sum over nonempty S of (-1)^(n-|S|) prod_i sum_{j in S} x_ij; the empty S contributes 0."""
    target = make_permanent(n)
    ring = target.ring
    x = {(i, j): ring.var(f"x{i}{j}") for i in range(1, n + 1) for j in range(1, n + 1)}
    terms = []
    for size in range(n, 0, -1):
        for S in itertools.combinations(range(1, n + 1), size):
            factors = tuple(sum((x[i, j] for j in S), ring.zero()) for i in range(1, n + 1))
            terms.append(ProductTerm(Fraction((-1) ** (n - size)), factors))
    return ProductDecomposition("ryser", n, terms, target)


GLYNN_NORMALIZATIONS = ("corrected", "paper-display")


def glynn(n: int, normalization: str = "corrected") -> ProductDecomposition:
    """prod_i sum_j eps_i eps_j x_ij over eps in {+-1}^n with eps_1 = 1.

    ``"paper-display"`` uses the bare sum; ``"corrected"`` multiplies every
    term by 2^(1-n), which is what makes the sum equal the permanent.
    """
    if normalization not in GLYNN_NORMALIZATIONS:
        raise ValueError(f"normalization must be one of {GLYNN_NORMALIZATIONS}")
    target = make_permanent(n)
    ring = target.ring
    coeff = Fraction(1, 2 ** (n - 1)) if normalization == "corrected" else Fraction(1)
    terms = []
    for tail in itertools.product((1, -1), repeat=n - 1):
        eps = (1,) + tail
        factors = []
        for i in range(1, n + 1):
            row = ring.zero()
            for j in range(1, n + 1):
                row = row + ring.var(f"x{i}{j}").scale(eps[i - 1] * eps[j - 1])
            factors.append(row)
        terms.append(ProductTerm(coeff, tuple(factors)))
    return ProductDecomposition(f"glynn-{normalization}", n, terms, target)


def derksen_det3() -> ProductDecomposition:
    """Five products of linear forms summing to det_3, each carrying the global 1/2."""
    target = make_determinant(3)
    R = target.ring
    rows = [
        ("x13 + x12", "x21 - x22", "x31 + x32"),
        ("x11 + x12", "x22 - x23", "x32 + x33"),
        ("2*x12", "x23 - x21", "x33 + x31"),
        ("x13 - x12", "x22 + x21", "x32 - x31"),
        ("x11 - x12", "x23 + x22", "x33 - x32"),
    ]
    half = Fraction(1, 2)
    terms = [ProductTerm(half, tuple(R(f) for f in fs)) for fs in rows]
    return ProductDecomposition("derksen", 3, terms, target)


def waring_of_product(forms: Sequence[Polynomial]) -> WaringDecomposition:
    """l_1...l_d as a combination of 2^(d-1) d-th powers of sum_i eps_i l_i."""
    d = len(forms)
    if d < 1:
        raise ValueError("need at least one linear form")
    for l in forms:
        linear_form(l)
    ring = forms[0].ring
    target = ring.one()
    for l in forms:
        target = target * l
    scale = Fraction(1, 2 ** (d - 1) * factorial(d))
    terms = []
    for tail in itertools.product((1, -1), repeat=d - 1):
        eps = (1,) + tail
        sign = 1
        for e in eps:
            sign *= e
        form = ring.zero()
        for e, l in zip(eps, forms):
            form = form + l.scale(e)
        terms.append(WaringTerm(scale * sign, form, d))
    return WaringDecomposition(f"waring-product-d{d}", terms, target)


def generic_linear_forms(d: int, seed: int = 0, nvars: Optional[int] = None) -> List[Polynomial]:
    """d linearly independent forms with small random integer coefficients."""
    nvars = d + 1 if nvars is None else nvars
    ring = Ring(f"z{i}" for i in range(1, nvars + 1))
    rng = random.Random(seed)
    while True:
        rows = [[rng.randint(-5, 5) for _ in range(nvars)] for _ in range(d)]
        if exact_rank(rows) == d:
            break
    gens = ring.gens()
    return [sum((g.scale(c) for g, c in zip(gens, row)), ring.zero()) for row in rows]


def _first_difference(a: Polynomial, b: Polynomial):
    diff = a - b
    m, _ = diff.sorted_terms()[0]
    mono = Polynomial(a.ring, {m: Fraction(1)})
    return {"monomial": format_polynomial(mono), "expanded": str(a.coefficient(m)), "target": str(b.coefficient(m))}


def scalar_ratio(p: Polynomial, q: Polynomial) -> Optional[Fraction]:
    """The scalar c with p = c*q, or None."""
    if not q:
        return None
    m, c = q.sorted_terms()[0]
    ratio = p.coefficient(m) / c
    return ratio if p == q.scale(ratio) else None


def verify_decomposition(dec) -> Certificate:
    timer = Timer()
    expanded = dec.expand()
    ok = expanded == dec.target
    kind = "waring" if isinstance(dec, WaringDecomposition) else "product"
    cert = Certificate(
        claim=f"identity-{dec.name}" + (f"-n{dec.n}" if kind == "product" else ""),
        verdict="verified" if ok else "falsified",
        inputs={
            "kind": kind,
            "target": format_polynomial(dec.target),
            "terms": [t.to_dict() for t in dec.terms],
        },
        data={"term_count": len(dec.terms), "expanded_terms": len(expanded)},
    )
    if not ok:
        cert.witness = _first_difference(expanded, dec.target)
        ratio = scalar_ratio(expanded, dec.target)
        cert.data["scalar_ratio"] = None if ratio is None else str(ratio)
    cert.elapsed_ms = timer.ms()
    return cert


def glynn_display_ratio(n: int) -> Certificate:
    """The bare Glynn sum is a single scalar multiple of perm_n; the scalar is recorded."""
    timer = Timer()
    dec = glynn(n, "paper-display")
    ratio = scalar_ratio(dec.expand(), dec.target)
    return Certificate(
        claim=f"glynn-display-ratio-n{n}",
        verdict="verified" if ratio is not None else "falsified",
        inputs={"n": n, "normalization": "paper-display"},
        data={"scalar_ratio": None if ratio is None else str(ratio), "expected_from_corrected": str(2 ** (n - 1))},
        notes=["the bare sum over eps with eps_1 = 1 equals 2^(n-1) perm_n; the corrected form divides by 2^(n-1)"],
        elapsed_ms=timer.ms(),
    )


@dataclass
class TensorCheck:
    ok: bool
    terms: List[Tuple[Polynomial, ...]] = field(default_factory=list)
    witness: Optional[dict] = None


def to_tensor_terms(dec: ProductDecomposition) -> TensorCheck:
    """Order each term's factors by row; succeeds iff factor k has multidegree e_k for distinct k."""
    out = []
    for t_idx, term in enumerate(dec.terms):
        by_row = {}
        for f_idx, l in enumerate(term.factors):
            try:
                deg = l.multidegree()
            except NotMultihomogeneous as exc:
                a, b = exc.witnesses
                return TensorCheck(False, witness={"term": t_idx, "factor": f_idx, "witnesses": [str(a), str(b)]})
            if sum(deg) != 1:
                return TensorCheck(False, witness={"term": t_idx, "factor": f_idx, "multidegree": list(deg)})
            row = deg.index(1)
            if row in by_row:
                return TensorCheck(
                    False,
                    witness={"term": t_idx, "factor": f_idx, "repeated_row": row + 1, "multidegree": list(deg)},
                )
            by_row[row] = l
        factors = tuple(by_row[r] for r in sorted(by_row))
        # absorb the scalar into the first tensor factor
        factors = (factors[0].scale(term.coefficient),) + factors[1:]
        out.append(factors)
    return TensorCheck(True, out)


def tensor_certificate(dec: ProductDecomposition) -> Certificate:
    timer = Timer()
    check = to_tensor_terms(dec)
    ok = check.ok
    if ok:
        rebuilt = dec.target.ring.zero()
        for fs in check.terms:
            prod = dec.target.ring.one()
            for l in fs:
                prod = prod * l
            rebuilt = rebuilt + prod
        ok = rebuilt == dec.target
    cert = Certificate(
        claim=f"tensor-{dec.name}-n{dec.n}",
        verdict="verified" if ok else "falsified",
        inputs={"decomposition": dec.name, "n": dec.n},
        data={"tensor_terms": len(check.terms) if check.ok else None},
        witness=check.witness,
        elapsed_ms=timer.ms(),
    )
    return cert


@dataclass(frozen=True)
class RankBounds:
    n: int
    wr_perm_lower: int
    wr_det_lower: int
    pr_perm_lower: int
    pr_det_lower: int
    pr_perm_upper: int
    pr_det3_upper: Optional[int]

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def rank_bounds(n: int) -> RankBounds:
    """Waring lower bounds for perm_n and det_n and the product-rank bounds they imply."""
    if n < 1:
        raise ValueError("n must be at least 1")
    wr_perm = Fraction(comb(2 * n, n), 2)
    wr_det = comb(2 * n, n) - (comb(2 * n - 2, n - 1) if n >= 1 else 0)
    assert wr_perm.denominator == 1
    share = Fraction(2 ** (n - 1))
    return RankBounds(
        n=n,
        wr_perm_lower=int(wr_perm),
        wr_det_lower=wr_det,
        pr_perm_lower=ceil(wr_perm / share),
        pr_det_lower=ceil(Fraction(wr_det) / share),
        pr_perm_upper=2 ** (n - 1),
        pr_det3_upper=5 if n == 3 else None,
    )


def bounds_certificate(n: int) -> Certificate:
    timer = Timer()
    b = rank_bounds(n)
    checks = {
        "pr_perm_lower_from_wr": b.pr_perm_lower == ceil(Fraction(b.wr_perm_lower, 2 ** (n - 1))),
        "pr_det_lower_from_wr": b.pr_det_lower == ceil(Fraction(b.wr_det_lower, 2 ** (n - 1))),
        "lower_le_glynn_upper": b.pr_perm_lower <= b.pr_perm_upper,
        "positive": min(b.wr_perm_lower, b.wr_det_lower, b.pr_perm_lower, b.pr_det_lower) > 0,
    }
    return Certificate(
        claim=f"rank-bounds-n{n}",
        verdict="verified" if all(checks.values()) else "falsified",
        inputs={"n": n},
        steps=[checks],
        data=b.to_dict(),
        elapsed_ms=timer.ms(),
    )


__all__ = [
    "ProductTerm", "ProductDecomposition", "WaringTerm", "WaringDecomposition", "RankBounds", "TensorCheck",
    "make_permanent", "make_determinant", "ryser", "glynn", "derksen_det3", "waring_of_product",
    "generic_linear_forms", "verify_decomposition", "glynn_display_ratio", "to_tensor_terms",
    "tensor_certificate", "rank_bounds", "bounds_certificate", "scalar_ratio", "is_linear_form",
]
