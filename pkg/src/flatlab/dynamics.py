"""Points of P^1, projective evaluation, ramification indices, the critical
locus, and the forward orbit graph of the critical points.

P^1 over a field k is identified with k plus a single point at infinity.
The critical locus is located by factoring the Wronskian numerator
W = P'Q - PQ' and collecting its roots inside one extension F_{p^k}
(k = lcm of the irreducible factor degrees); forward orbits stay inside
that extension because the map has prime-field coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BadCharacteristic, Inseparable, WildRamification
from .exactnum import FFElem, field_create
from .ratfunc import Poly, RatFunc, poly_factor, poly_roots, valuation_at_zero


class P1Point:
    """A field element or the point at infinity (value None)."""

    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value

    @classmethod
    def of(cls, value):
        return cls(value)

    @property
    def is_infinity(self):
        return self.value is None

    def __eq__(self, other):
        if not isinstance(other, P1Point):
            return NotImplemented
        return self.value == other.value

    def __hash__(self):
        return hash(("P1", self.value))

    def __str__(self):
        return "inf" if self.value is None else str(self.value)

    def __repr__(self):
        return f"P1Point({self})"


INFINITY = P1Point(None)


def point_key(pt: P1Point):
    """Deterministic sort key; infinity sorts last."""
    if pt.is_infinity:
        return (1, ())
    v = pt.value
    if isinstance(v, FFElem):
        return (0, v.coeffs)
    return (0, (v,))


@dataclass(frozen=True)
class CriticalDatum:
    point: P1Point
    e: int


def p1_eval(sigma: RatFunc, pt: P1Point) -> P1Point:
    """Evaluate a non-constant map at a point of P^1 (total on P^1)."""
    if pt.is_infinity:
        dn, dd = sigma.num.degree, sigma.den.degree
        if dn > dd:
            return INFINITY
        if dn < dd:
            return P1Point(sigma.field.zero)
        return P1Point(sigma.num.lc() / sigma.den.lc())
    nv = sigma.num.eval(pt.value)
    dv = sigma.den.eval(pt.value)
    if not dv:
        return INFINITY
    return P1Point(nv / dv)


def ram_index(sigma: RatFunc, pt: P1Point) -> int:
    """Ramification index e of sigma at pt: the valuation at pt of the
    pulled-back local parameter at sigma(pt).

    Computed by explicit Moebius moves (t -> 1/t for infinity, otherwise a
    translation, plus target inversion/translation), never by degree
    formulas.  Raises Inseparable if the derivative vanishes identically
    and WildRamification if the characteristic divides e.
    """
    if sigma.is_constant:
        raise ValueError("ramification index of a constant map")
    if sigma.derivative().is_zero:
        raise Inseparable("the map has identically zero derivative")
    field = sigma.field
    target = p1_eval(sigma, pt)
    t = RatFunc.gen(field)
    if pt.is_infinity:
        work = sigma.compose(t.reciprocal())
    elif pt.value:
        work = sigma.compose(RatFunc(Poly(field, (pt.value, 1))))
    else:
        work = sigma
    if target.is_infinity:
        g = work.reciprocal()
    else:
        g = work - target.value
    e = valuation_at_zero(g.num)
    if e < 1:
        raise RuntimeError("moved point is not a zero")  # internal guard
    p = field.p
    if p and e % p == 0:
        raise WildRamification(f"e = {e} divisible by the characteristic {p}")
    return e


def critical_locus(sigma: RatFunc):
    """All critical points of sigma over F_p inside one extension.

    Returns (extension field, [CriticalDatum...]) sorted by point; the tame
    Riemann-Hurwitz budget sum(e - 1) = 2 deg - 2 is asserted.
    """
    field = sigma.field
    if field.is_rationals or field.k != 1:
        raise ValueError("critical_locus expects a map over a prime field F_p")
    d = sigma.degree
    if d < 2:
        raise ValueError("critical_locus needs degree >= 2")
    if field.p <= d:
        raise BadCharacteristic(f"p = {field.p} <= deg sigma = {d}")
    n, q = sigma.num, sigma.den
    wron = n.derivative() * q - n * q.derivative()
    if wron.is_zero:
        raise Inseparable("identically zero derivative")  # unreachable for p > d
    factors = poly_factor(wron)
    k = 1
    for g, _ in factors:
        k = math.lcm(k, g.degree)
    ext = field_create(field.p, k) if k > 1 else field
    sig = sigma.lift_to(ext)
    data = []
    for g, _ in factors:
        for root, _ in poly_roots(g.lift_to(ext)):
            pt = P1Point(root)
            data.append(CriticalDatum(pt, ram_index(sig, pt)))
    e_inf = ram_index(sig, INFINITY)
    if e_inf >= 2:
        data.append(CriticalDatum(INFINITY, e_inf))
    budget = sum(c.e - 1 for c in data)
    if budget != 2 * d - 2:
        raise RuntimeError(f"Riemann-Hurwitz budget violated: {budget} != {2 * d - 2}")
    data.sort(key=lambda c: point_key(c.point))
    return ext, data


@dataclass(frozen=True)
class OrbitGraph:
    """Forward orbits of the critical points as a weighted functional graph.

    vertices: critical points and all their forward images, sorted;
    edges: vertex -> sigma(vertex); weights: vertex -> ramification index;
    postcritical: vertices reachable by at least one edge from a critical
    vertex.  sigma and field are the lifted map and its extension field.
    """

    sigma: RatFunc
    field: object
    vertices: tuple
    edges: dict
    weights: dict
    critical: tuple
    postcritical: frozenset


def postcritical_graph(sigma: RatFunc) -> OrbitGraph:
    """Critical points plus their forward orbits, weights, and marks."""
    ext, crits = critical_locus(sigma)
    sig = sigma.lift_to(ext)
    edges = {}
    for c in crits:
        v = c.point
        while v not in edges:
            nxt = p1_eval(sig, v)
            edges[v] = nxt
            v = nxt
    weights = {v: ram_index(sig, v) for v in edges}
    postcritical = set()
    for c in crits:
        v = edges[c.point]
        while v not in postcritical:
            postcritical.add(v)
            v = edges[v]
    vertices = tuple(sorted(edges, key=point_key))
    return OrbitGraph(
        sigma=sig,
        field=ext,
        vertices=vertices,
        edges=edges,
        weights=weights,
        critical=crits if isinstance(crits, tuple) else tuple(crits),
        postcritical=frozenset(postcritical),
    )
