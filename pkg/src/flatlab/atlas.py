"""Constructors for the flat families and their closed-form certificates.

Power maps t^(+-d) carry the invariant form (dt/t)^(p-1); Chebyshev maps
carry (dt)^(p-1) / (t^2-4)^((p-1)/2); Lattes maps (the order-2 quotient of
multiplication by m on a short Weierstrass curve) carry the weight-2 form
(dx)^2 / (x^3 + a x + b), semi-invariant with lambda = m^2.  Every
certificate is re-verified by exact pullback at construction time; a
mismatch raises instead of warning.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadCharacteristic, BadPrime, IdentityCheckFailed, SingularCurve
from .exactnum import Field
from .forms import TupleForm, invariance_check
from .ratfunc import Poly, RatFunc


@dataclass(frozen=True)
class FlatCertificate:
    """A flat map together with a verified (semi-)invariant form."""

    family: str
    sigma: RatFunc
    form: TupleForm
    lam: object

    @property
    def invariant(self):
        return self.lam == self.sigma.field.one


def _certify(family, sigma, form, lam):
    res = invariance_check(sigma, form)
    if res.lam is None or res.lam != lam:
        raise IdentityCheckFailed(f"{family} certificate failed: got {res.lam}, want {lam}")
    return FlatCertificate(family, sigma, form, lam)


def power_map(d: int, field: Field):
    """sigma = t^d (d <= -2 means 1/t^|d|).

    Over F_p (p not dividing d) returns the certificate with the invariant
    form (dt/t)^(p-1); over Q returns the bare map.
    """
    if abs(d) < 2:
        raise ValueError("power maps need |d| >= 2")
    t = Poly.gen(field)
    if d > 0:
        sigma = RatFunc(t ** d)
    else:
        sigma = RatFunc(Poly.one(field), t ** (-d))
    if field.is_rationals:
        return sigma
    p = field.p
    if d % p == 0:
        raise BadPrime(p, f"p divides d = {d}")
    form = TupleForm(RatFunc(Poly.one(field), t ** (p - 1)), p - 1)
    return _certify("power", sigma, form, field.one)


def _cheb_recurrence(d: int, field: Field) -> Poly:
    # Cheb_0 = 2, Cheb_1 = t, Cheb_{k+1} = t Cheb_k - Cheb_{k-1}
    t = Poly.gen(field)
    prev, cur = Poly.constant(field, 2), t
    for _ in range(d - 1):
        prev, cur = cur, t * cur - prev
    return cur


def _check_cheb_identity(cheb: Poly, d: int):
    # Cheb_d(t + 1/t) = t^d + t^(-d), checked symbolically over the field
    field = cheb.field
    t = Poly.gen(field)
    lhs = RatFunc(cheb).compose(RatFunc(t * t + 1, t))  # t + 1/t
    rhs = RatFunc(t ** (2 * d) + 1, t ** d)
    if lhs != rhs:
        raise IdentityCheckFailed(f"Cheb_{d} does not satisfy its defining identity")


def chebyshev_poly(d: int, sign: int = 1, field: Field | None = None):
    """The degree-d Chebyshev map, normalized by Cheb_d(t + 1/t) = t^d + t^(-d).

    Over Q (field None or the rationals) returns the polynomial +-Cheb_d.
    Over F_p (p odd, p not dividing d) returns the certificate whose
    invariant form is (dt)^(p-1) / (t^2-4)^((p-1)/2).  The defining
    identity is always re-checked symbolically.
    """
    if d < 2:
        raise ValueError("chebyshev_poly needs d >= 2")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    from .exactnum import rationals

    if field is None:
        field = rationals()
    if not field.is_rationals:
        p = field.p
        if p == 2:
            raise BadPrime(p, "Chebyshev certificates need an odd prime")
        if d % p == 0:
            raise BadPrime(p, f"p divides d = {d}")
    cheb = _cheb_recurrence(d, field)
    _check_cheb_identity(cheb, d)
    signed = cheb if sign == 1 else -cheb
    if field.is_rationals:
        return signed
    p = field.p
    t = Poly.gen(field)
    den = (t * t - 4) ** ((p - 1) // 2)
    form = TupleForm(RatFunc(Poly.one(field), den), p - 1)
    return _certify("chebyshev", RatFunc(signed), form, field.one)


# ----------------------------------------------------------------------
# Elliptic curves, division polynomials, Lattes maps
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class EllipticCurve:
    """Short Weierstrass curve y^2 = x^3 + a x + b over a field."""

    field: Field
    a: object
    b: object

    def __post_init__(self):
        a = self.field.elem(self.a)
        b = self.field.elem(self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if not (4 * a * a * a + 27 * b * b):
            raise SingularCurve(f"4a^3 + 27b^2 = 0 for a={a}, b={b}")

    def rhs_poly(self):
        return Poly(self.field, (self.b, self.a, 0, 1))


def _division_pairs(E: EllipticCurve, mmax: int):
    """Division polynomials psi_m as (g, s) meaning g(x) * y^s, s in {0, 1}.

    y^2 is eliminated through the curve equation, so odd-index psi are
    plain x-polynomials and even-index ones are y times an x-polynomial.
    """
    field = E.field
    a, b = E.a, E.b
    ex = E.rhs_poly()
    x = Poly.gen(field)
    one = Poly.one(field)

    def mul(u, v):
        g, s = u[0] * v[0], u[1] + v[1]
        if s == 2:
            return (g * ex, 0)
        return (g, s)

    def sub(u, v):
        if u[1] != v[1]:
            raise RuntimeError("division polynomial parity mismatch (internal)")
        return (u[0] - v[0], u[1])

    inv2 = field.one / field.elem(2)
    psi = {
        0: (Poly.zero(field), 0),
        1: (one, 0),
        2: (Poly.constant(field, 2), 1),
        3: (Poly(field, (-(a * a), 12 * b, 6 * a, 0, 3)), 0),
        4: (
            Poly(
                field,
                (
                    -4 * (a * a * a + 8 * b * b),
                    -16 * a * b,
                    -20 * a * a,
                    80 * b,
                    20 * a,
                    0,
                    4,
                ),
            ),
            1,
        ),
    }

    def get(m):
        if m in psi:
            return psi[m]
        n, r = divmod(m, 2)
        if r:
            value = sub(mul(get(n + 2), _pair_pow(get(n), 3, mul)), mul(get(n - 1), _pair_pow(get(n + 1), 3, mul)))
        else:
            u = sub(mul(get(n + 2), _pair_pow(get(n - 1), 2, mul)), mul(get(n - 2), _pair_pow(get(n + 1), 2, mul)))
            prod = mul(get(n), u)
            if prod[1] != 0:
                raise RuntimeError("even division polynomial parity (internal)")
            quo, rem = divmod(prod[0], ex)
            if not rem.is_zero:
                raise RuntimeError("even division polynomial not divisible by the curve (internal)")
            value = (quo.scale(inv2), 1)
        psi[m] = value
        return value

    for m in range(mmax + 1):
        get(m)
    return psi


def _pair_pow(u, e, mul):
    out = u
    for _ in range(e - 1):
        out = mul(out, u)
    return out


def ec_mul_x(E: EllipticCurve, m: int) -> RatFunc:
    """x-coordinate of multiplication by m: xi_m(x(P)) = x(mP), degree m^2.

    Built from the division polynomials, xi_m = (x psi_m^2 - psi_{m-1}
    psi_{m+1}) / psi_m^2, with y eliminated via the curve equation.
    Requires characteristic 0 or p > 2 m^2.
    """
    if m < 2:
        raise ValueError("ec_mul_x needs m >= 2")
    field = E.field
    if field.p and field.p <= 2 * m * m:
        raise BadCharacteristic(f"need p > 2 m^2 = {2 * m * m}, got p = {field.p}")
    psi = _division_pairs(E, m + 1)
    ex = E.rhs_poly()

    def squared_x(pair):
        g, s = pair
        out = g * g
        return out * ex if s else out

    def product_x(u, v):
        g, s = u[0] * v[0], u[1] + v[1]
        if s == 1:
            raise RuntimeError("odd y-parity in x-projection (internal)")
        return g * ex if s else g

    den = squared_x(psi[m])
    num = Poly.gen(field) * den - product_x(psi[m - 1], psi[m + 1])
    xi = RatFunc(num, den)
    if xi.degree != m * m:
        raise RuntimeError(f"multiplication map degree {xi.degree} != m^2 (internal)")
    return xi


def lattes_map(E: EllipticCurve, m: int) -> FlatCertificate:
    """The order-2 Lattes map: x(P) -> x(mP) on P^1 = E/(y -> -y).

    Certificate: omega = (dx)^2 / (x^3 + a x + b) of weight 2 with
    lambda = m^2, from [m]^* omega_E = m omega_E and omega_E^2 = pi^* omega.
    """
    sigma = ec_mul_x(E, m)
    field = E.field
    form = TupleForm(RatFunc(Poly.one(field), E.rhs_poly()), 2)
    lam = field.elem(m) * field.elem(m)
    return _certify("lattes", sigma, form, lam)
