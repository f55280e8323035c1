"""Exact number kernels: arbitrary-precision rationals, prime fields F_p,
extensions F_{p^k}, and exact null spaces of dense matrices.

Rationals are plain ``fractions.Fraction`` values (always reduced, positive
denominator).  Finite-field elements are immutable, carry a reference to
their field, and refuse arithmetic with elements of a different field: the
only embedding offered is the explicit ``Field.lift`` of a prime-field
element into an extension.  Extension fields store a monic irreducible
modulus found by a deterministic search, so the same (p, k) always yields
the same field.
"""

from __future__ import annotations

import functools
from fractions import Fraction

from .errors import DivisionByZero, FieldMismatch, NotPrime

Rational = Fraction

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for every n below 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_factors(n):
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


# ----------------------------------------------------------------------
# Dense polynomials over F_p as plain int lists, constant term first,
# no trailing zeros ([] is the zero polynomial).  These back the modulus
# search, FFElem arithmetic, and the fast prime-field kernel path.
# ----------------------------------------------------------------------

def _gf_trim(a):
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return a[:n]


def _gf_add(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i in range(n):
        av = a[i] if i < len(a) else 0
        bv = b[i] if i < len(b) else 0
        out[i] = (av + bv) % p
    return _gf_trim(out)


def _gf_sub(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i in range(n):
        av = a[i] if i < len(a) else 0
        bv = b[i] if i < len(b) else 0
        out[i] = (av - bv) % p
    return _gf_trim(out)


def _gf_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _gf_trim([c % p for c in out])


def _gf_divmod(a, b, p):
    if not b:
        raise DivisionByZero("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], _gf_trim(a)
    inv = pow(b[-1], -1, p)
    quo = [0] * (len(a) - db)
    for i in range(len(a) - 1 - db, -1, -1):
        c = a[i + db] % p
        if c:
            c = c * inv % p
            quo[i] = c
            for j, bj in enumerate(b):
                a[i + j] = (a[i + j] - c * bj) % p
    return _gf_trim(quo), _gf_trim(a[:db])


def _gf_gcd(a, b, p):
    a, b = _gf_trim(list(a)), _gf_trim(list(b))
    while b:
        a, b = b, _gf_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _gf_pow_mod(a, e, m, p):
    r = [1]
    a = _gf_divmod(a, m, p)[1]
    while e:
        if e & 1:
            r = _gf_divmod(_gf_mul(r, a, p), m, p)[1]
        a = _gf_divmod(_gf_mul(a, a, p), m, p)[1]
        e >>= 1
    return r


def _gf_irreducible(f, p):
    """Rabin test: x^(p^k) = x mod f and gcd(x^(p^(k/l)) - x, f) = 1."""
    k = len(f) - 1
    if k < 1:
        return False
    x = [0, 1]
    if _gf_sub(_gf_pow_mod(x, p ** k, f, p), _gf_divmod(x, f, p)[1], p):
        return False
    for ell in _prime_factors(k):
        g = _gf_pow_mod(x, p ** (k // ell), f, p)
        if len(_gf_gcd(_gf_sub(g, x, p), f, p)) != 1:
            return False
    return True


def _find_modulus(p, k):
    # first irreducible monic f = c_0 + c_1 x + ... + x^k in lexicographic
    # order of (c_0, ..., c_{k-1}); reproducible without Conway tables
    for idx in range(p ** k):
        coeffs = []
        t = idx
        for pos in range(k - 1, -1, -1):
            q, t = divmod(t, p ** pos)
            coeffs.append(q)
        f = coeffs + [1]
        if _gf_irreducible(f, p):
            return tuple(f)
    raise RuntimeError("no irreducible modulus found")  # unreachable


# ----------------------------------------------------------------------
# Fields and elements
# ----------------------------------------------------------------------

class Field:
    """The rationals (p == 0) or F_{p^k} with a stored irreducible modulus.

    Use :func:`rationals` and :func:`field_create` to obtain instances.
    """

    __slots__ = ("p", "k", "modulus")

    def __init__(self, p, k, modulus):
        self.p = p
        self.k = k
        self.modulus = modulus  # tuple, constant first, monic; None if k == 1

    @property
    def is_rationals(self):
        return self.p == 0

    @property
    def order(self):
        return None if self.p == 0 else self.p ** self.k

    def elem(self, x):
        """Coerce an int, Fraction, or same-field element into this field."""
        if self.p == 0:
            if isinstance(x, FFElem):
                raise FieldMismatch("finite-field element in rational context")
            return Fraction(x)
        if isinstance(x, FFElem):
            if x.field != self:
                raise FieldMismatch(f"element of {x.field} used in {self}")
            return x
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise DivisionByZero(f"denominator of {x} vanishes mod {self.p}")
            n = x.numerator % self.p
            d = pow(x.denominator % self.p, -1, self.p)
            x = n * d
        v = x % self.p
        return FFElem(self, (v,) + (0,) * (self.k - 1))

    @property
    def zero(self):
        return self.elem(0)

    @property
    def one(self):
        return self.elem(1)

    def elem_from_index(self, i):
        """The i-th element (0 <= i < order) in base-p digit order."""
        coeffs = []
        for _ in range(self.k):
            i, r = divmod(i, self.p)
            coeffs.append(r)
        return FFElem(self, tuple(coeffs))

    def elements(self):
        """Iterate all elements of a finite field in a fixed order."""
        for i in range(self.order):
            yield self.elem_from_index(i)

    def lift(self, a):
        """Explicit canonical embedding of a prime-field element into self."""
        if self.p == 0:
            raise FieldMismatch("cannot lift into the rationals")
        if not isinstance(a, FFElem) or a.field.p != self.p or a.field.k != 1:
            raise FieldMismatch("lift expects an element of the prime subfield")
        return FFElem(self, (a.coeffs[0],) + (0,) * (self.k - 1))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Field):
            return NotImplemented
        return (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        if self.p == 0:
            return "Q"
        if self.k == 1:
            return f"F({self.p})"
        return f"F({self.p}^{self.k})"


_RATIONALS = Field(0, 1, None)


def rationals() -> Field:
    """The field of exact rationals."""
    return _RATIONALS


@functools.lru_cache(maxsize=None)
def field_create(p: int, k: int = 1) -> Field:
    """Create F_{p^k}; the modulus for k > 1 is deterministic in (p, k)."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    modulus = None if k == 1 else _find_modulus(p, k)
    return Field(p, k, modulus)


class FFElem:
    """Immutable element of F_{p^k}: a residue vector of length k."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    def _coerce(self, other):
        if isinstance(other, FFElem):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, int):
            return self.field.elem(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return FFElem(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return FFElem(self.field, tuple((a - b) % p for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        p = self.field.p
        return FFElem(self.field, tuple(-a % p for a in self.coeffs))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        f = self.field
        if f.k == 1:
            return FFElem(f, ((self.coeffs[0] * o.coeffs[0]) % f.p,))
        prod = _gf_mul(list(self.coeffs), list(o.coeffs), f.p)
        rem = _gf_divmod(prod, list(f.modulus), f.p)[1]
        return FFElem(f, tuple(rem) + (0,) * (f.k - len(rem)))

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise DivisionByZero("inverse of zero")
        f = self.field
        if f.k == 1:
            return FFElem(f, (pow(self.coeffs[0], -1, f.p),))
        # extended Euclid in F_p[x] against the modulus
        a, b = list(f.modulus), _gf_trim(list(self.coeffs))
        s0, s1 = [], [1]
        while b:
            q, r = _gf_divmod(a, b, f.p)
            a, b = b, r
            s0, s1 = s1, _gf_sub(s0, _gf_mul(q, s1, f.p), f.p)
        inv_lc = pow(a[-1], -1, f.p)
        s0 = [c * inv_lc % f.p for c in s0]
        return FFElem(f, tuple(s0) + (0,) * (f.k - len(s0)))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if not self:
            if e > 0:
                return self
            if e == 0:
                return self.field.one
            raise DivisionByZero("0 to a negative power")
        base = self if e >= 0 else self.inverse()
        e = abs(e) % (self.field.order - 1)
        result = self.field.one
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def pth_root(self):
        """The unique b with b^p = self (Frobenius is bijective)."""
        f = self.field
        if f.k == 1:
            return self
        return self ** (f.p ** (f.k - 1))

    def min_poly(self):
        """Minimal polynomial over F_p as an int tuple, constant first, monic."""
        f = self.field
        orbit = [self]
        nxt = self ** f.p
        while nxt != self:
            orbit.append(nxt)
            nxt = nxt ** f.p
        # product of (x - c) over the Frobenius orbit, in F_{p^k}[x]
        poly = [f.one]
        for c in orbit:
            poly = [f.zero] + poly
            for i in range(len(poly) - 1):
                poly[i] = poly[i] - c * poly[i + 1]
        out = []
        for c in poly:
            if any(c.coeffs[1:]):
                raise RuntimeError("minimal polynomial not over F_p")
            out.append(c.coeffs[0])
        return tuple(out)

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, FFElem):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.coeffs))

    def __str__(self):
        if self.field.k == 1:
            return str(self.coeffs[0])
        parts = []
        for i in range(self.field.k - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                v = "g" if i == 1 else f"g^{i}"
                parts.append(v if c == 1 else f"{c}*{v}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"<{self} in {self.field}>"


# ----------------------------------------------------------------------
# Exact null spaces
# ----------------------------------------------------------------------

def mat_kernel(rows, field):
    """Reduced-echelon basis of the right null space {v : Mv = 0}.

    Deterministic: pivots on the first nonzero entry per column in row
    order (arithmetic is exact, no pivot-magnitude heuristics).  Entries
    may be field elements or plain ints.  Raises FieldMismatch on ragged
    or foreign-field input.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return []
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise FieldMismatch("ragged matrix")
    if ncols == 0:
        return []
    if not field.is_rationals and field.k == 1:
        p = field.p
        m = [[_as_residue(e, field) for e in r] for r in rows]
        return [[FFElem(field, (c,)) for c in v] for v in _kernel_mod_p(m, p)]
    m = [[_as_elem(e, field) for e in r] for r in rows]
    return _kernel_generic(m, field)


def _as_residue(e, field):
    if isinstance(e, FFElem):
        if e.field != field:
            raise FieldMismatch("mixed-field matrix entry")
        return e.coeffs[0]
    if isinstance(e, int):
        return e % field.p
    raise FieldMismatch(f"bad matrix entry {e!r}")


def _as_elem(e, field):
    if isinstance(e, (int, Fraction, FFElem)):
        return field.elem(e)
    raise FieldMismatch(f"bad matrix entry {e!r}")


def _kernel_mod_p(m, p):
    nrows, ncols = len(m), len(m[0])
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, nrows):
            if m[r][col] % p:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], -1, p)
        m[rank] = [x * inv % p for x in m[rank]]
        prow = m[rank]
        for r in range(nrows):
            f = m[r][col]
            if r != rank and f:
                m[r] = [(x - f * y) % p for x, y in zip(m[r], prow)]
        pivots.append(col)
        rank += 1
        if rank == nrows:
            break
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [0] * ncols
        v[free] = 1
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][free] % p
        basis.append(v)
    return basis


def _kernel_generic(m, field):
    nrows, ncols = len(m), len(m[0])
    zero, one = field.zero, field.one
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, nrows):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = one / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        prow = m[rank]
        for r in range(nrows):
            f = m[r][col]
            if r != rank and f:
                m[r] = [x - f * y for x, y in zip(m[r], prow)]
        pivots.append(col)
        rank += 1
        if rank == nrows:
            break
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [zero] * ncols
        v[free] = one
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][free]
        basis.append(v)
    return basis
