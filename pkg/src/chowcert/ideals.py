"""Ideals with a light canonical form, monomial extraction, and minimal primes.

There is no Groebner engine here.  An ideal is normalized by repeatedly
zeroing variables that appear as generators, row-reducing the linear
generators, and rewriting everything else modulo both.  Minimal primes are
only ever computed for monomial ideals, where they are the minimal
transversals of the supports.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import FrozenSet, Iterable, List, Sequence, Tuple

from .poly import Monomial, Polynomial, Ring, format_polynomial, parse

DEBUG_CHECKS = False


@dataclass(frozen=True)
class Ideal:
    ring: Ring
    generators: Tuple[Polynomial, ...]

    def __init__(self, ring: Ring, generators: Iterable[Polynomial] = ()):
        gens = []
        seen = set()
        for g in generators:
            if g.ring != ring:
                raise ValueError("generator from a different ring")
            if not g:
                continue
            key = g.primitive()
            if key not in seen:
                seen.add(key)
                gens.append(g)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "generators", tuple(gens))

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, self.generators + other.generators)

    def __len__(self):
        return len(self.generators)


@dataclass(frozen=True, order=False)
class NormalizedIdeal:
    """Canonical data of an ideal under the light normalization.

    ``zero_variables`` are variable indices in the ideal, ``linear_part`` is in
    reduced row echelon form (pivot = first ring variable, coefficient 1 after
    division by content), and ``higher_part`` holds the remaining generators,
    reduced modulo both and made primitive, deduplicated and sorted.
    """

    ring: Ring
    zero_variables: FrozenSet[int]
    linear_part: Tuple[Polynomial, ...]
    higher_part: Tuple[Polynomial, ...]
    _key: tuple = field(default=None, compare=False, repr=False)

    def key(self):
        k = self._key
        if k is None:
            k = (
                tuple(sorted(self.zero_variables)),
                tuple(p.sort_key() for p in self.linear_part),
                tuple(p.sort_key() for p in self.higher_part),
            )
            object.__setattr__(self, "_key", k)
        return k

    def __eq__(self, other):
        if not isinstance(other, NormalizedIdeal):
            return NotImplemented
        return self.ring == other.ring and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        # fewer constraints first, then lexicographic on the canonical data
        return (len(self.zero_variables), len(self.linear_part), len(self.higher_part), self.key())

    def generators(self) -> List[Polynomial]:
        gens = self.ring.gens()
        return [gens[i] for i in sorted(self.zero_variables)] + list(self.linear_part) + list(self.higher_part)

    def as_ideal(self) -> Ideal:
        return Ideal(self.ring, self.generators())

    def zero_names(self) -> List[str]:
        return [self.ring.names[i] for i in sorted(self.zero_variables)]

    def reduce(self, p: Polynomial) -> Polynomial:
        """Remainder of ``p`` against zero variables then the linear part."""
        return _reduce(p, self.zero_variables, _pivots(self.linear_part))

    def to_dict(self) -> dict:
        return {
            "zero_variables": self.zero_names(),
            "linear_part": [format_polynomial(p) for p in self.linear_part],
            "higher_part": [format_polynomial(p) for p in self.higher_part],
        }

    @classmethod
    def from_dict(cls, ring: Ring, data: dict) -> "NormalizedIdeal":
        return cls(
            ring,
            frozenset(ring.index(n) for n in data["zero_variables"]),
            tuple(parse(t, ring) for t in data["linear_part"]),
            tuple(parse(t, ring) for t in data["higher_part"]),
        )

    def __str__(self):
        parts = self.zero_names() + [str(p) for p in self.linear_part] + [str(p) for p in self.higher_part]
        return "<" + ", ".join(parts) + ">"


def _leading_var(p: Polynomial) -> int:
    return min(i for m in p.terms for i, _ in m)


def _pivots(linear: Sequence[Polynomial]):
    """Rewrite rules ``pivot -> -(rest)/c`` for an echelon linear part."""
    rules = {}
    for g in linear:
        piv = _leading_var(g)
        c = g.terms[((piv, 1),)]
        rest = {m: -v / c for m, v in g.terms.items() if m != ((piv, 1),)}
        rules[piv] = rest
    return rules


def _reduce(p: Polynomial, zeros: FrozenSet[int], rules) -> Polynomial:
    p = p.drop_variables(zeros)
    if not rules or not (p.variables() & rules.keys()):
        return p
    ring = p.ring
    images = {}
    gens = ring.gens()
    for i in p.variables():
        if i in rules:
            images[i] = Polynomial(ring, rules[i])
        else:
            images[i] = gens[i]
    # rules are fully reduced, so one pass suffices
    return p.substitute(images, ring)


def _row_reduce(linear: List[Polynomial]) -> List[Polynomial]:
    """Reduced row echelon form of homogeneous-or-not linear polynomials."""
    rows = [dict(g.terms) for g in linear if g]
    ring = linear[0].ring if linear else None
    done: List[Tuple[int, dict]] = []
    for row in rows:
        # reduce by existing pivots
        for piv, prow in done:
            c = row.get(((piv, 1),))
            if c:
                for m, v in prow.items():
                    s = row.get(m, 0) - c * v
                    if s:
                        row[m] = s
                    else:
                        row.pop(m, None)
        if not row:
            continue
        var_idx = [i for m in row for i, _ in m]
        if not var_idx:
            # nonzero constant: unit ideal
            return [Polynomial(ring, {(): Fraction(1)})]
        piv = min(var_idx)
        c = row[((piv, 1),)]
        row = {m: v / c for m, v in row.items()}
        for k, (opiv, orow) in enumerate(done):
            oc = orow.get(((piv, 1),))
            if oc:
                for m, v in row.items():
                    s = orow.get(m, 0) - oc * v
                    if s:
                        orow[m] = s
                    else:
                        orow.pop(m, None)
        done.append((piv, row))
    out = [Polynomial(ring, row) for _, row in done]
    return sorted(out, key=_leading_var_or_const)


def _leading_var_or_const(p: Polynomial):
    idx = [i for m in p.terms for i, _ in m]
    return min(idx) if idx else -1


def _is_variable(p: Polynomial) -> bool:
    """A nonzero scalar multiple of a single variable."""
    if len(p.terms) != 1:
        return False
    (m,) = p.terms
    return len(m) == 1 and m[0][1] == 1


def _single_var(p: Polynomial) -> int:
    (m,) = p.terms
    return m[0][0]


def _unit(ring: Ring) -> NormalizedIdeal:
    return NormalizedIdeal(ring, frozenset(), (ring.one(),), ())


def normalize(ideal) -> NormalizedIdeal:
    """Light canonical form of ``ideal`` (an :class:`Ideal` or a normalized one).

    Iterates to a fixpoint: variables occurring as single-term generators are
    zeroed everywhere, the linear generators are row-reduced and used to
    rewrite the rest, and generators that drop to degree one feed back in.
    The result is content- and sign-normalized, deduplicated and sorted.
    """
    if isinstance(ideal, NormalizedIdeal):
        ring = ideal.ring
        gens = ideal.generators()
    else:
        ring = ideal.ring
        gens = list(ideal.generators)
    zeros = set()
    linear: List[Polynomial] = []
    while True:
        gens = [g.drop_variables(zeros) for g in gens]
        gens = [g for g in gens if g]
        if any(g.is_constant() for g in gens):
            return _unit(ring)
        new_zeros = {_single_var(g) for g in gens if _is_variable(g)}
        if new_zeros:
            zeros |= new_zeros
            continue
        lin = [g for g in gens if g.total_degree() <= 1]
        rest = [g for g in gens if g.total_degree() > 1]
        linear = _row_reduce(lin) if lin else []
        if any(g.is_constant() for g in linear):
            return _unit(ring)
        if any(_is_variable(g) for g in linear):
            gens = linear + rest
            continue
        rules = _pivots(linear)
        reduced = [_reduce(g, frozenset(), rules) for g in rest]
        reduced = [g for g in reduced if g]
        if any(g.total_degree() <= 1 for g in reduced):
            gens = linear + reduced
            continue
        break
    linear_t = tuple(g.primitive() for g in linear)
    higher = {g.primitive() for g in reduced}
    higher_t = tuple(sorted(higher, key=lambda p: p.sort_key()))
    return NormalizedIdeal(ring, frozenset(zeros), linear_t, higher_t)


def reduces_into(n: NormalizedIdeal, source: Iterable[Polynomial]) -> bool:
    """Every source generator reduces to 0 or to a scalar multiple of a higher-part member."""
    higher = set(n.higher_part)
    for g in source:
        r = n.reduce(g)
        if r and r.primitive() not in higher:
            return False
    return True


def monomial_generators(n: NormalizedIdeal) -> List[Monomial]:
    """Supports of the single-term generators plus the zero variables, minimized."""
    supports = {((i, 1),) for i in n.zero_variables}
    for g in n.linear_part + n.higher_part:
        if g.is_term():
            (m,) = g.terms
            supports.add(tuple((i, 1) for i, _ in m))
    return minimize_monomials(supports)


def minimize_monomials(monos: Iterable[Monomial]) -> List[Monomial]:
    sets = sorted({frozenset(i for i, _ in m) for m in monos}, key=lambda s: (len(s), sorted(s)))
    kept: List[frozenset] = []
    for s in sets:
        if not any(k <= s for k in kept):
            kept.append(s)
    return [tuple((i, 1) for i in sorted(s)) for s in sorted(kept, key=lambda s: (len(s), sorted(s)))]


def minimal_transversals(edges: Iterable[Iterable[int]]) -> List[FrozenSet[int]]:
    """All minimal vertex sets meeting every edge.

    Branches on the variables of an uncovered edge; in the k-th branch the
    edge's earlier variables are forbidden, so each minimal transversal is
    reached through its first variable in that edge.  Non-minimal covers are
    filtered at the end.
    """
    edges = [frozenset(e) for e in edges]
    if not edges:
        return []
    if any(not e for e in edges):
        raise ValueError("empty edge has no transversal")
    found = set()

    def grow(chosen: frozenset, forbidden: frozenset):
        best = None
        for e in edges:
            if e & chosen:
                continue
            allowed = e - forbidden
            if not allowed:
                return
            if best is None or len(allowed) < len(best):
                best = allowed
        if best is None:
            found.add(chosen)
            return
        banned = set(forbidden)
        for v in sorted(best):
            grow(chosen | {v}, frozenset(banned))
            banned.add(v)

    grow(frozenset(), frozenset())
    result = [t for t in found if all(any(not ((t - {v}) & e) for e in edges) for v in t)]
    result.sort(key=lambda s: (len(s), sorted(s)))
    if DEBUG_CHECKS:
        _check_transversals(edges, result)
    return result


def _check_transversals(edges, result):
    for t in result:
        assert all(t & e for e in edges), t
    for a in result:
        for b in result:
            assert a is b or not (a <= b), (a, b)


@dataclass(frozen=True)
class VariablePrime:
    variables: FrozenSet[int]

    def __post_init__(self):
        if not self.variables:
            raise ValueError("a variable prime needs at least one variable")

    def names(self, ring: Ring) -> List[str]:
        return [ring.names[i] for i in sorted(self.variables)]


def minimal_primes_monomial(monos: Iterable[Monomial]) -> List[VariablePrime]:
    monos = list(monos)
    if not monos:
        return []
    edges = [{i for i, _ in m} for m in monos]
    return [VariablePrime(t) for t in minimal_transversals(edges)]


def add_prime(n: NormalizedIdeal, prime: VariablePrime) -> NormalizedIdeal:
    for v in prime.variables:
        if not 0 <= v < len(n.ring):
            raise ValueError(f"variable index {v} outside the ring")
    if prime.variables <= n.zero_variables:
        return n
    gens = n.ring.gens()
    extra = [gens[i] for i in sorted(prime.variables)]
    return normalize(Ideal(n.ring, n.generators() + extra))


def ideal_equal(a: NormalizedIdeal, b: NormalizedIdeal) -> bool:
    if a.ring != b.ring:
        raise ValueError("ideals over different rings")
    return a == b


def is_unit(n: NormalizedIdeal) -> bool:
    return any(g.is_constant() and g for g in n.linear_part)
