"""Exact sparse multivariate polynomials over the rationals.

A polynomial is a map from monomials to :class:`fractions.Fraction`
coefficients.  Monomials are tuples of ``(variable_index, exponent)`` pairs
sorted by index, so they are hashable and carry no zero exponents.  All
canonical ordering uses graded reverse lexicographic order with respect to
the ring's variable order.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

Monomial = Tuple[Tuple[int, int], ...]
ONE_MONOMIAL: Monomial = ()


class RingMismatchError(ValueError):
    pass


class NotMultihomogeneous(ValueError):
    """Raised by :meth:`Polynomial.multidegree` with two offending terms."""

    def __init__(self, first, second):
        self.witnesses = (first, second)
        super().__init__(f"terms {first} and {second} have different multidegrees")


class Ring:
    """An ordered list of named variables, optionally multigraded.

    Rings compare equal when names and grading agree, so two independently
    built copies of the same ring are interchangeable.
    """

    __slots__ = ("names", "grading", "_index", "_hash")

    def __init__(self, names: Iterable[str], grading: Optional[Sequence[Sequence[int]]] = None):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be unique")
        if grading is not None:
            grading = tuple(tuple(int(g) for g in vec) for vec in grading)
            if len(grading) != len(self.names):
                raise ValueError("grading needs one vector per variable")
            if len({len(vec) for vec in grading}) > 1:
                raise ValueError("grading vectors must share one length")
        self.grading = grading
        self._index = {name: i for i, name in enumerate(self.names)}
        self._hash = hash((self.names, self.grading))

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, Ring) and self.names == other.names and self.grading == other.grading

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if len(self.names) > 8:
            return f"Ring({self.names[0]}..{self.names[-1]}, nvars={len(self.names)})"
        return f"Ring({', '.join(self.names)})"

    def __len__(self):
        return len(self.names)

    def __reduce__(self):
        return (Ring, (self.names, self.grading))

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"no variable {name!r} in {self!r}") from None

    def __contains__(self, name):
        return name in self._index

    def var(self, name: str) -> "Polynomial":
        return Polynomial(self, {((self.index(name), 1),): Fraction(1)})

    def gens(self):
        return [Polynomial(self, {((i, 1),): Fraction(1)}) for i in range(len(self.names))]

    def const(self, c) -> "Polynomial":
        return Polynomial(self, {ONE_MONOMIAL: Fraction(c)})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def __call__(self, text: str) -> "Polynomial":
        return parse(text, self)

    def monomial_key(self, m: Monomial):
        return _grevlex_key(m, len(self.names))

    def extend(self, names: Iterable[str]) -> "Ring":
        """Ring with ``names`` appended (grading is dropped)."""
        return Ring(self.names + tuple(names))

    def subring(self, keep: Iterable[int]) -> "Ring":
        keep = sorted(set(keep))
        grading = None if self.grading is None else [self.grading[i] for i in keep]
        return Ring([self.names[i] for i in keep], grading)


@lru_cache(maxsize=1 << 16)
def _grevlex_key(m: Monomial, nvars: int):
    # larger key means larger in grevlex
    deg = 0
    neg = [0] * nvars
    for i, e in m:
        deg += e
        neg[nvars - 1 - i] = -e
    return (deg, tuple(neg))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for i, e in b:
        d[i] = d.get(i, 0) + e
    return tuple(sorted(d.items()))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, str)):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient {c!r}")


class Polynomial:
    """Immutable sparse polynomial.  Equality is structural."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[Monomial, Fraction] = None):
        self.ring = ring
        if terms:
            self.terms: Dict[Monomial, Fraction] = {
                m: (c if isinstance(c, Fraction) else _as_fraction(c)) for m, c in terms.items() if c != 0
            }
        else:
            self.terms = {}
        self._hash = None

    @classmethod
    def _raw(cls, ring, terms):
        # caller guarantees no zero coefficients
        p = cls.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._hash = None
        return p

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.terms
            return self.terms == {ONE_MONOMIAL: other}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __reduce__(self):
        return (Polynomial._raw, (self.ring, self.terms))

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        c = _as_fraction(c)
        if not c:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __truediv__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(Fraction(1) / _as_fraction(c))
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- inspection ---------------------------------------------------------
    def sorted_terms(self):
        """Terms in decreasing graded reverse lexicographic order."""
        key = self.ring.monomial_key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = self.ring.monomial_key
        m = max(self.terms, key=key)
        return m, self.terms[m]

    def sort_key(self):
        key = self.ring.monomial_key
        return tuple((key(m), c) for m, c in self.sorted_terms())

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(mono_degree(m) for m in self.terms)

    def min_degree(self) -> int:
        if not self.terms:
            return -1
        return min(mono_degree(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({mono_degree(m) for m in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(not m for m in self.terms)

    def constant_coefficient(self) -> Fraction:
        return self.terms.get(ONE_MONOMIAL, Fraction(0))

    def is_term(self) -> bool:
        return len(self.terms) == 1

    def variables(self) -> frozenset:
        return frozenset(i for m in self.terms for i, _ in m)

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(m, Fraction(0))

    def coefficient_of(self, text: str) -> Fraction:
        """Coefficient of the monomial written as e.g. ``"x11*x22^2"``."""
        p = parse(text, self.ring)
        (m,) = p.terms
        return self.terms.get(m, Fraction(0))

    # -- homomorphisms ------------------------------------------------------
    def substitute(self, images: Mapping, target: Ring = None) -> "Polynomial":
        """Apply the ring map sending each variable to its image.

        ``images`` maps variable names (or indices) to polynomials in one
        common target ring.  Every variable occurring in ``self`` needs an
        image.
        """
        imgs = {}
        for k, v in images.items():
            idx = self.ring.index(k) if isinstance(k, str) else k
            imgs[idx] = v
        if target is None:
            rings = {v.ring for v in imgs.values() if isinstance(v, Polynomial)}
            if len(rings) > 1:
                raise RingMismatchError("images live in different rings")
            target = rings.pop() if rings else self.ring
        for idx, v in list(imgs.items()):
            if not isinstance(v, Polynomial):
                imgs[idx] = target.const(v)
            elif v.ring != target:
                raise RingMismatchError("images live in different rings")
        missing = self.variables() - imgs.keys()
        if missing:
            names = sorted(self.ring.names[i] for i in missing)
            raise KeyError(f"no image for variable(s) {', '.join(names)}")
        powers: Dict[Tuple[int, int], Polynomial] = {}
        result: Dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            term = target.const(c)
            for i, e in m:
                pw = powers.get((i, e))
                if pw is None:
                    pw = powers[(i, e)] = imgs[i] ** e
                term = term * pw
                if not term:
                    break
            for tm, tc in term.terms.items():
                result[tm] = result.get(tm, 0) + tc
        return Polynomial(target, result)

    def partial_substitute(self, images: Mapping) -> "Polynomial":
        """Substitute some variables, keeping the rest, within the same ring."""
        full = {i: self.ring.gens()[i] for i in self.variables()}
        for k, v in images.items():
            idx = self.ring.index(k) if isinstance(k, str) else k
            full[idx] = v if isinstance(v, Polynomial) else self.ring.const(v)
        return self.substitute(full, self.ring)

    def drop_variables(self, zero_vars) -> "Polynomial":
        """Fast path for substituting 0 for every variable in ``zero_vars``."""
        zero_vars = frozenset(zero_vars)
        if not zero_vars:
            return self
        out = {m: c for m, c in self.terms.items() if not any(i in zero_vars for i, _ in m)}
        if len(out) == len(self.terms):
            return self
        return Polynomial._raw(self.ring, out)

    def coefficients_wrt(self, names: Iterable[str]):
        """Split ``self`` as a sum of monomials in ``names`` times coefficients.

        Returns ``[(monomial, coefficient), ...]`` sorted in decreasing grevlex
        order of the monomial part.  Monomials are polynomials over the subring
        of ``names``; coefficients live over the subring of the remaining
        variables.
        """
        chosen = {self.ring.index(n) for n in names}
        rest = [i for i in range(len(self.ring)) if i not in chosen]
        sel_ring = self.ring.subring(chosen)
        rest_ring = self.ring.subring(rest)
        sel_pos = {old: new for new, old in enumerate(sorted(chosen))}
        rest_pos = {old: new for new, old in enumerate(rest)}
        buckets: Dict[Monomial, Dict[Monomial, Fraction]] = {}
        for m, c in self.terms.items():
            sel = tuple((sel_pos[i], e) for i, e in m if i in chosen)
            oth = tuple((rest_pos[i], e) for i, e in m if i not in chosen)
            buckets.setdefault(sel, {})[oth] = c
        key = sel_ring.monomial_key
        out = []
        for sel in sorted(buckets, key=key, reverse=True):
            coeff = Polynomial(rest_ring, buckets[sel])
            if coeff:
                out.append((Polynomial._raw(sel_ring, {sel: Fraction(1)}), coeff))
        return out

    def multidegree(self):
        """Common multidegree of all terms under the ring's grading.

        Raises :class:`NotMultihomogeneous` carrying two witness terms when
        the terms disagree.  The zero polynomial has no multidegree.
        """
        grading = self.ring.grading
        if grading is None:
            raise ValueError(f"{self.ring!r} carries no multigrading")
        if not self.terms:
            raise ValueError("zero polynomial has no multidegree")
        width = len(grading[0])
        seen = None
        for m, c in self.sorted_terms():
            deg = [0] * width
            for i, e in m:
                for k, g in enumerate(grading[i]):
                    deg[k] += g * e
            deg = tuple(deg)
            if seen is None:
                seen = (deg, m, c)
            elif deg != seen[0]:
                first = Polynomial._raw(self.ring, {seen[1]: seen[2]})
                second = Polynomial._raw(self.ring, {m: c})
                raise NotMultihomogeneous(first, second)
        return seen[0]

    # -- normalization helpers ----------------------------------------------
    def content(self) -> Fraction:
        """Positive rational c such that self / c has coprime integer coefficients."""
        from math import gcd

        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den) if num else Fraction(0)

    def primitive(self) -> "Polynomial":
        """Coprime integer coefficients with positive leading coefficient."""
        if not self.terms:
            return self
        c = self.content()
        if self.leading_term()[1] < 0:
            c = -c
        if c == 1:
            return self
        return self.scale(1 / c)

    def monic(self) -> "Polynomial":
        return self.scale(1 / self.leading_term()[1])

    # -- text ---------------------------------------------------------------
    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def format_monomial(m: Monomial, ring: Ring) -> str:
    parts = []
    for i, e in m:
        parts.append(ring.names[i] if e == 1 else f"{ring.names[i]}^{e}")
    return "*".join(parts)


def format_polynomial(p: Polynomial) -> str:
    """Deterministic text such as ``1/2*x11*x22*x33 - x12*x21*x33``."""
    if not p.terms:
        return "0"
    out = []
    for k, (m, c) in enumerate(p.sorted_terms()):
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        mono = format_monomial(m, p.ring)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if k == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f"{sign} {body}")
    return " ".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\^)|(\*)|([+-]))")


def parse(text: str, ring: Ring) -> Polynomial:
    """Parse the format produced by :func:`format_polynomial`.

    Accepts sums of terms, each a ``*``-separated product of rationals and
    variables with optional ``^exponent``.  No parentheses.
    """
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            raise ValueError(f"cannot parse {text!r} at offset {pos}")
        pos = mt.end()
        num, name, caret, star, sign = mt.groups()
        if num is not None:
            tokens.append(("num", Fraction(num)))
        elif name is not None:
            tokens.append(("var", name))
        elif caret:
            tokens.append(("^", None))
        elif star:
            tokens.append(("*", None))
        else:
            tokens.append(("sign", sign))
    terms: Dict[Monomial, Fraction] = {}
    k = 0
    if not tokens:
        raise ValueError("empty polynomial text")
    while k < len(tokens):
        sgn = 1
        while k < len(tokens) and tokens[k][0] == "sign":
            if tokens[k][1] == "-":
                sgn = -sgn
            k += 1
        coef = Fraction(sgn)
        expo: Dict[int, int] = {}
        expect_factor = True
        while k < len(tokens) and tokens[k][0] != "sign":
            kind, val = tokens[k]
            if kind == "*":
                if expect_factor:
                    raise ValueError(f"dangling '*' in {text!r}")
                expect_factor = True
                k += 1
                continue
            if not expect_factor:
                raise ValueError(f"missing '*' in {text!r}")
            if kind == "num":
                coef *= val
                k += 1
            elif kind == "var":
                idx = ring.index(val)
                e = 1
                k += 1
                if k < len(tokens) and tokens[k][0] == "^":
                    if k + 1 >= len(tokens) or tokens[k + 1][0] != "num" or tokens[k + 1][1].denominator != 1:
                        raise ValueError(f"bad exponent in {text!r}")
                    e = int(tokens[k + 1][1])
                    k += 2
                if e:
                    expo[idx] = expo.get(idx, 0) + e
            else:
                raise ValueError(f"unexpected '^' in {text!r}")
            expect_factor = False
        if expect_factor:
            raise ValueError(f"incomplete term in {text!r}")
        m = tuple(sorted(expo.items()))
        terms[m] = terms.get(m, 0) + coef
    return Polynomial(ring, terms)


def is_linear_form(p: Polynomial, homogeneous: bool = True) -> bool:
    if any(mono_degree(m) > 1 for m in p.terms):
        return False
    return not (homogeneous and ONE_MONOMIAL in p.terms)


def linear_form(p: Polynomial, homogeneous: bool = True) -> Polynomial:
    """Validate ``p`` as a linear form and return it unchanged."""
    if not is_linear_form(p, homogeneous):
        raise ValueError(f"not a linear form: {p}")
    return p


def audit(p: Polynomial) -> None:
    """Structural invariant check: no zero coefficients or exponents, sorted monomials."""
    n = len(p.ring)
    for m, c in p.terms.items():
        assert isinstance(c, Fraction) and c != 0, (m, c)
        assert all(e > 0 for _, e in m), m
        assert list(m) == sorted(m) and len({i for i, _ in m}) == len(m), m
        assert all(0 <= i < n for i, _ in m), m


def ring_of(prefix: str, count: int, start: int = 1) -> Ring:
    return Ring(f"{prefix}{i}" for i in range(start, start + count))


def matrix_ring(prefix: str, n: int, m: int = None, row_graded: bool = False) -> Ring:
    """Variables ``{prefix}{i}{j}`` in row-major order, optionally row-graded."""
    m = n if m is None else m
    names = [f"{prefix}{i}{j}" for i in range(1, n + 1) for j in range(1, m + 1)]
    grading = None
    if row_graded:
        grading = [tuple(int(r == i) for r in range(n)) for i in range(n) for _ in range(m)]
    return Ring(names, grading)


def exact_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    m = [list(map(Fraction, r)) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col] / m[rank][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank
