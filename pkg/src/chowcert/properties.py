"""Seeded randomized property checks, packaged as certificates for ``chowcert all``."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, List

from .certificate import Certificate, Timer
from .ideals import minimal_transversals, normalize
from .poly import Polynomial, Ring, audit

SMALL_RING = Ring(("u", "v", "w", "t"))


def random_polynomial(rng: random.Random, ring: Ring = SMALL_RING, max_terms: int = 4, max_deg: int = 3) -> Polynomial:
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        expo = {}
        for _ in range(rng.randint(0, max_deg)):
            i = rng.randrange(len(ring))
            expo[i] = expo.get(i, 0) + 1
        m = tuple(sorted(expo.items()))
        terms[m] = terms.get(m, 0) + Fraction(rng.randint(-6, 6), rng.randint(1, 4))
    return Polynomial(ring, terms)


def ring_axioms(cases: int = 1000, seed: int = 1) -> Certificate:
    timer = Timer()
    rng = random.Random(seed)
    failures = []
    target = Ring(("e", "f", "g"))
    for k in range(cases):
        a, b, c = (random_polynomial(rng) for _ in range(3))
        images = {n: random_polynomial(rng, target, 3, 2) for n in SMALL_RING.names}
        checks = {
            "add_assoc": (a + b) + c == a + (b + c),
            "mul_assoc": (a * b) * c == a * (b * c),
            "add_comm": a + b == b + a,
            "mul_comm": a * b == b * a,
            "distrib": (a + b) * c == a * c + b * c,
            "additive_identity": a + SMALL_RING.zero() == a,
            "hom_mul": (a * b).substitute(images, target) == a.substitute(images, target) * b.substitute(images, target),
            "hom_add": (a + b).substitute(images, target) == a.substitute(images, target) + b.substitute(images, target),
        }
        rebuilt = SMALL_RING.zero()
        sub = ["u", "w"]
        for mono, coeff in a.coefficients_wrt(sub):
            mono_full = mono.substitute({n: SMALL_RING.var(n) for n in mono.ring.names}, SMALL_RING)
            coeff_full = coeff.substitute({n: SMALL_RING.var(n) for n in coeff.ring.names}, SMALL_RING)
            rebuilt = rebuilt + mono_full * coeff_full
        checks["coefficients_reconstruct"] = rebuilt == a
        for p in (a + b, a * b, a - c):
            audit(p)
        bad = [name for name, ok in checks.items() if not ok]
        if bad:
            failures.append({"case": k, "failed": bad, "a": str(a), "b": str(b), "c": str(c)})
    return Certificate(
        claim="property-ring-axioms",
        verdict="falsified" if failures else "verified",
        inputs={"cases": cases, "seed": seed},
        data={"failures": len(failures)},
        witness=failures[0] if failures else None,
        elapsed_ms=timer.ms(),
    )


def brute_force_transversals(edges: List[frozenset], nvars: int) -> List[frozenset]:
    """Every subset of range(nvars) that meets all edges, filtered to minimal ones."""
    covers = []
    for mask in range(1 << nvars):
        s = frozenset(i for i in range(nvars) if mask >> i & 1)
        if all(s & e for e in edges):
            covers.append(s)
    minimal = [s for s in covers if not any(t < s for t in covers)]
    return sorted(minimal, key=lambda s: (len(s), sorted(s)))


def random_edge_sets(count: int, seed: int = 2, max_edges: int = 6, nvars: int = 8):
    rng = random.Random(seed)
    for _ in range(count):
        k = rng.randint(1, max_edges)
        yield [frozenset(rng.sample(range(nvars), rng.randint(1, 4))) for _ in range(k)]


def transversal_oracle(cases: int = 200, seed: int = 2) -> Certificate:
    timer = Timer()
    failures = []
    for k, edges in enumerate(random_edge_sets(cases, seed)):
        fast = minimal_transversals(edges)
        slow = brute_force_transversals(edges, 8)
        if fast != slow:
            failures.append({"case": k, "edges": [sorted(e) for e in edges]})
    return Certificate(
        claim="property-minimal-transversals",
        verdict="falsified" if failures else "verified",
        inputs={"cases": cases, "seed": seed, "max_edges": 6, "nvars": 8},
        data={"failures": len(failures)},
        witness=failures[0] if failures else None,
        elapsed_ms=timer.ms(),
    )


def normalization_idempotence(ideals: Iterable, label: str) -> Certificate:
    timer = Timer()
    count = 0
    failures = []
    for n in ideals:
        count += 1
        again = normalize(n)
        if again != n:
            failures.append(n.to_dict())
    return Certificate(
        claim=f"property-normalize-idempotent-{label}",
        verdict="falsified" if failures else "verified",
        inputs={"source": label},
        data={"ideals_checked": count, "failures": len(failures)},
        witness=failures[0] if failures else None,
        elapsed_ms=timer.ms(),
    )
