"""Coefficient rings with explicit divisibility.

A ring is an object carrying the arithmetic; elements are plain immutable
Python values so they can be hashed, compared with ``==`` and shared freely:

* ``ZZ``: Python ``int``.
* ``QQx`` / ``PrimeFieldPolynomials(p)``: tuples of coefficients in ascending
  degree order with no trailing zeros (the zero polynomial is ``()``).
  Coefficients are ``Fraction`` over Q and ints in ``[0, p)`` over F_p.

Generic algorithms (gcd, extended gcd, gdco, Krull witnesses) live on the
``Ring`` base class and only rely on the capability flags of the instance.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, NamedTuple, Optional

from .errors import CapabilityError, InvariantError, ParseError

Element = Any


class ExtGcd(NamedTuple):
    """Extended gcd witness: g = u*a + v*b, a = a1*g, b = b1*g, u*a1 + v*b1 = 1."""

    g: Element
    u: Element
    v: Element
    a1: Element
    b1: Element


class ExtGcd3(NamedTuple):
    g: Element
    u: Element
    v: Element
    w: Element
    a1: Element
    b1: Element
    c1: Element


@dataclass(frozen=True)
class RingCapabilities:
    """Structure available on a ring.

    The flags must be closed under the inclusion chain
    euclidean => pid => bezout => gcd => divisibility; pid or krull1 imply
    gdco (adequacy) and gdco implies bezout.
    """

    divisibility: bool = True
    gcd: bool = False
    bezout: bool = False
    pid: bool = False
    euclidean: bool = False
    gdco: bool = False
    krull1: bool = False

    def __post_init__(self):
        implications = [
            ("euclidean", "pid"),
            ("pid", "bezout"),
            ("pid", "gdco"),
            ("krull1", "gdco"),
            ("gdco", "bezout"),
            ("bezout", "gcd"),
            ("gcd", "divisibility"),
        ]
        for strong, weak in implications:
            if getattr(self, strong) and not getattr(self, weak):
                raise ValueError(f"capability {strong!r} requires {weak!r}")

    @classmethod
    def euclidean_domain(cls, krull1=True):
        return cls(True, True, True, True, True, True, krull1)


class Ring:
    """Base class for discrete integral domains with explicit divisibility."""

    name = "ring"
    symbol = "R"
    caps = RingCapabilities()
    zero: Element
    one: Element

    # -- arithmetic (provided by instances) ---------------------------------
    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        return a == self.zero

    def pow(self, a, n: int):
        result = self.one
        for _ in range(n):
            result = self.mul(result, a)
        return result

    def sum(self, items):
        total = self.zero
        for x in items:
            total = self.add(total, x)
        return total

    # -- units and associates ------------------------------------------------
    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def unit_normal(self, a):
        """Unit ``w`` with ``w * a == canon(a)`` (``one`` for zero)."""
        raise NotImplementedError

    def canon(self, a):
        return self.mul(self.unit_normal(a), a)

    def associates(self, a, b) -> bool:
        return self.canon(a) == self.canon(b)

    def inverse(self, unit):
        q = self.div_opt(self.one, unit)
        if q is None:
            raise ValueError(f"{self.format(unit)} is not a unit")
        return q

    # -- divisibility ---------------------------------------------------------
    def div_opt(self, a, b) -> Optional[Element]:
        """Return ``x`` with ``a == x * b`` if ``b`` divides ``a``, else ``None``."""
        raise NotImplementedError

    def divides(self, b, a) -> bool:
        return self.div_opt(a, b) is not None

    def div_exact(self, a, b):
        q = self.div_opt(a, b)
        if q is None:
            raise InvariantError(
                f"expected {self.format(b)} to divide {self.format(a)}")
        return q

    def strictly_divides(self, a, b) -> bool:
        return self.divides(a, b) and not self.divides(b, a)

    # -- Euclidean structure ---------------------------------------------------
    def enorm(self, a) -> int:
        raise CapabilityError(f"{self.name} has no Euclidean norm")

    def ediv(self, a, b):
        raise CapabilityError(f"{self.name} has no Euclidean division")

    def exponent_bound(self, b) -> int:
        """Upper bound on the multiplicity of any non-unit factor of ``b``."""
        raise CapabilityError(f"{self.name} has no exponent bound")

    # -- gcd / Bezout -----------------------------------------------------------
    def egcdr(self, a, b) -> ExtGcd:
        """Extended gcd by Euclid's algorithm (Euclidean rings)."""
        if not self.caps.euclidean:
            raise CapabilityError(f"{self.name} has no extended gcd")
        r0, r1 = a, b
        s0, s1 = self.one, self.zero
        t0, t1 = self.zero, self.one
        while not self.is_zero(r1):
            q, r = self.ediv(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, self.sub(s0, self.mul(q, s1))
            t0, t1 = t1, self.sub(t0, self.mul(q, t1))
        if self.is_zero(r0):
            return ExtGcd(self.zero, self.one, self.zero, self.one, self.zero)
        w = self.unit_normal(r0)
        g, u, v = self.mul(w, r0), self.mul(w, s0), self.mul(w, t0)
        return ExtGcd(g, u, v, self.div_exact(a, g), self.div_exact(b, g))

    def gcd(self, a, b):
        if not self.caps.gcd:
            raise CapabilityError(f"{self.name} has no gcd")
        return self.egcdr(a, b).g

    def gcd_many(self, items):
        g = self.zero
        for x in items:
            g = self.gcd(g, x)
        return g

    def coprime(self, a, b) -> bool:
        return self.is_unit(self.gcd(a, b))

    def egcdr3(self, a, b, c) -> ExtGcd3:
        g1, u1, v1, a1, b1 = self.egcdr(a, b)
        g, u2, w, g1c, c1 = self.egcdr(g1, c)
        return ExtGcd3(
            g,
            self.mul(u2, u1),
            self.mul(u2, v1),
            w,
            self.mul(a1, g1c),
            self.mul(b1, g1c),
            c1,
        )

    # -- adequacy and Krull dimension -------------------------------------------
    def gdco(self, a, b):
        """Greatest divisor of ``b`` coprime to ``a`` (``0`` when ``b == 0``).

        Divides out ``gcd(c, a)`` from ``c = b`` until it becomes a unit. Each
        round strictly divides ``c``, which the PID structure makes finite.
        """
        if not self.caps.pid:
            raise CapabilityError(f"{self.name} supplies no gdco")
        if self.is_zero(b):
            return self.zero
        c = b
        while True:
            g = self.gcd(c, a)
            if self.is_unit(g):
                return self.canon(c)
            nxt = self.div_exact(c, g)
            if self.caps.euclidean:
                if self.enorm(nxt) >= self.enorm(c):
                    raise InvariantError("gdco: Euclidean norm failed to decrease")
            elif not self.strictly_divides(nxt, c):
                raise InvariantError("gdco: step is not a strict division")
            c = nxt

    def krull1_witness(self, a, u):
        """Return ``(m, v)`` with ``a | u**m * (1 - u*v)``.

        ``a`` factors as ``b1 * b2`` with ``b1 = gdco(u, a)`` coprime to ``u`` and
        ``b2 | u**m``; ``v`` is an inverse of ``u`` modulo ``b1``.
        """
        if not self.caps.krull1:
            raise CapabilityError(f"{self.name} has no Krull dimension witness")
        if self.is_zero(a):
            if self.is_zero(u):
                return 1, self.zero
            if self.is_unit(u):
                return 0, self.inverse(u)
            raise ValueError("no witness for a = 0 when u is a nonzero non-unit")
        b1 = self.gdco(u, a)
        b2 = self.div_exact(a, b1)
        cap = self.exponent_bound(b2)
        m, power = 0, self.one
        while not self.divides(b2, power):
            m += 1
            if m > cap:
                raise InvariantError("krull1_witness: exponent search exceeded bound")
            power = self.mul(power, u)
        g, x, _, _, _ = self.egcdr(u, b1)
        v = self.mul(x, self.inverse(g))
        if self.caps.euclidean:
            v = self.ediv(v, b1)[1]
        return m, v

    # -- text -----------------------------------------------------------------
    tag = "?"

    def parse(self, token: str):
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    def to_json(self, a):
        return self.format(a)

    def from_json(self, value):
        return self.parse(str(value))

    def random_element(self, rng, size):
        raise NotImplementedError

    def __repr__(self):
        return self.name


class Integers(Ring):
    """The integers with nonnegative canonical associates."""

    name = "Z"
    symbol = "Z"
    tag = "int"
    caps = RingCapabilities.euclidean_domain()
    zero = 0
    one = 1

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def from_int(self, n):
        return int(n)

    def pow(self, a, n):
        return a ** n

    def is_unit(self, a):
        return a == 1 or a == -1

    def unit_normal(self, a):
        return -1 if a < 0 else 1

    def canon(self, a):
        return abs(a)

    def div_opt(self, a, b):
        if b == 0:
            return 0 if a == 0 else None
        q, r = divmod(a, b)
        return q if r == 0 else None

    def enorm(self, a):
        return abs(a)

    def ediv(self, a, b):
        if b == 0:
            raise ZeroDivisionError("Euclidean division by zero")
        q, r = divmod(a, b)
        if r < 0:
            # divmod follows the sign of b; shift to the nonnegative remainder
            r -= b
            q += 1
        return q, r

    def exponent_bound(self, b):
        return max(1, abs(b).bit_length())

    def gcd(self, a, b):
        return math.gcd(a, b)

    def parse(self, token):
        token = token.strip()
        if not re.fullmatch(r"[+-]?\d+", token):
            raise ParseError(f"invalid integer {token!r}")
        return int(token)

    def format(self, a):
        return str(a)

    def to_json(self, a):
        return a

    def from_json(self, value):
        if isinstance(value, bool):
            raise ParseError(f"invalid integer {value!r}")
        if isinstance(value, int):
            return value
        return self.parse(str(value))

    def random_element(self, rng, size):
        return rng.randint(-size, size)


class PolynomialRing(Ring):
    """Univariate polynomials over a field, canonical associates monic.

    Subclasses fix the coefficient field through ``_c`` (coercion into the
    field) and ``_cinv`` (field inverse).
    """

    caps = RingCapabilities.euclidean_domain()
    zero = ()

    @property
    def one(self):
        return (self._c(1),)

    def _c(self, x):
        raise NotImplementedError

    def _cinv(self, x):
        raise NotImplementedError

    @staticmethod
    def _trim(coeffs):
        n = len(coeffs)
        while n and not coeffs[n - 1]:
            n -= 1
        return tuple(coeffs[:n])

    def from_int(self, n):
        c = self._c(n)
        return (c,) if c else ()

    def from_coeffs(self, coeffs):
        return self._trim([self._c(c) for c in coeffs])

    def x(self):
        return self.from_coeffs([0, 1])

    def degree(self, a):
        return len(a) - 1

    def add(self, a, b):
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = self._c(out[i] + c)
        return self._trim(out)

    def neg(self, a):
        return tuple(self._c(-c) for c in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a or not b:
            return ()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return self._trim([self._c(c) for c in out])

    def scale(self, c, a):
        c = self._c(c)
        return self._trim([self._c(c * x) for x in a])

    def is_unit(self, a):
        return len(a) == 1

    def unit_normal(self, a):
        if not a:
            return self.one
        return (self._cinv(a[-1]),)

    def canon(self, a):
        if not a or a[-1] == 1:
            return a
        return self.scale(self._cinv(a[-1]), a)

    def _divmod(self, a, b):
        lead_inv = self._cinv(b[-1])
        r = list(a)
        db = len(b) - 1
        q = [self._c(0)] * max(0, len(a) - db)
        for k in range(len(a) - 1, db - 1, -1):
            c = r[k]
            if not c:
                continue
            f = self._c(c * lead_inv)
            q[k - db] = f
            for j, y in enumerate(b):
                r[k - db + j] = self._c(r[k - db + j] - f * y)
        return self._trim(q), self._trim(r[:db])

    def div_opt(self, a, b):
        if not b:
            return () if not a else None
        q, r = self._divmod(a, b)
        return q if not r else None

    def enorm(self, a):
        return len(a)

    def ediv(self, a, b):
        if not b:
            raise ZeroDivisionError("Euclidean division by the zero polynomial")
        return self._divmod(a, b)

    def exponent_bound(self, b):
        return max(1, len(b))

    def _parse_coeff(self, token):
        raise NotImplementedError

    def parse(self, token):
        token = token.strip()
        if not (token.startswith("[") and token.endswith("]")):
            raise ParseError(f"polynomial must be written [c0,c1,...], got {token!r}")
        body = token[1:-1].strip()
        if not body:
            return ()
        return self._trim([self._parse_coeff(t) for t in body.split(",")])

    def format(self, a):
        if not a:
            return "[0]"
        return "[" + ",".join(str(c) for c in a) + "]"


class RationalPolynomials(PolynomialRing):
    name = "Q[x]"
    symbol = "Q[x]"
    tag = "qpoly"

    def _c(self, x):
        return Fraction(x)

    def _cinv(self, x):
        return 1 / Fraction(x)

    def _parse_coeff(self, token):
        token = token.strip()
        if not re.fullmatch(r"[+-]?\d+(/[+-]?\d+)?", token):
            raise ParseError(f"invalid rational coefficient {token!r}")
        try:
            return Fraction(token)
        except ZeroDivisionError:
            raise ParseError(f"zero denominator in {token!r}") from None

    def random_element(self, rng, size):
        deg = rng.randint(-1, size)
        return self._trim([Fraction(rng.randint(-5, 5), rng.randint(1, 3))
                           for _ in range(deg + 1)])


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class PrimeFieldPolynomials(PolynomialRing):
    """Polynomials over F_p for a prime ``p`` (checked by trial division)."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"F_{p}[x]"
        self.symbol = self.name
        self.tag = f"fppoly:{p}"

    def _c(self, x):
        return x % self.p

    def _cinv(self, x):
        return pow(x, -1, self.p)

    def _parse_coeff(self, token):
        token = token.strip()
        if not re.fullmatch(r"[+-]?\d+", token):
            raise ParseError(f"invalid F_{self.p} coefficient {token!r}")
        return int(token) % self.p

    def random_element(self, rng, size):
        deg = rng.randint(-1, size)
        return self._trim([rng.randrange(self.p) for _ in range(deg + 1)])

    def __eq__(self, other):
        return isinstance(other, PrimeFieldPolynomials) and other.p == self.p

    def __hash__(self):
        return hash(("fppoly", self.p))


ZZ = Integers()
QQx = RationalPolynomials()


def ring_from_tag(tag: str) -> Ring:
    """Resolve a ring tag: ``int``, ``qpoly`` or ``fppoly:<p>``."""
    tag = tag.strip()
    if tag == "int":
        return ZZ
    if tag == "qpoly":
        return QQx
    m = re.fullmatch(r"fppoly:(\d+)", tag)
    if m:
        try:
            return PrimeFieldPolynomials(int(m.group(1)))
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    raise ParseError(f"unknown ring tag {tag!r}")
