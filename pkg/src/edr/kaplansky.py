"""Smith normal form through the Kaplansky condition.

Arbitrary matrices are reduced to 2 x 2 problems (``smithmxn``), and the
2 x 2 problems are solved from witnesses ``p, q`` with
``gcd(p*a, p*b + q*c) = 1`` (``kap_smith2x2``). The witnesses come from the
gdco operation, which every constructive PID provides.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapabilityError, InvariantError
from .matrix import COL, ROW, Axpy, Combine, Matrix, apply_elementary, identity
from .smith import SmithResult, bezout_mx, bezout_step, normalize_units


@dataclass(frozen=True)
class KapWitness:
    p: object
    q: object
    x1: object
    y1: object


@dataclass(frozen=True)
class Krull1Factorization:
    n: int
    b1: object
    b2: object


def _require_gdco(ring):
    if not ring.caps.gdco:
        raise CapabilityError(f"{ring.name} has no gdco operation")


def kap(ring, a, b, c):
    """Return ``(p, q)`` with ``gcd(p*a, p*b + q*c)`` a unit.

    Requires ``gcd(a, b, c)`` to be a unit. For ``a != 0`` the choice is
    ``p = 1`` and ``q`` the greatest divisor of ``a`` coprime to ``b``.
    """
    _require_gdco(ring)
    if not ring.is_unit(ring.gcd(a, ring.gcd(b, c))):
        raise ValueError("kap needs gcd(a, b, c) to be a unit")
    if ring.is_unit(a):
        return ring.one, ring.zero
    if ring.is_zero(a):
        _, u, v, _, _ = ring.egcdr(b, c)
        return u, v
    return ring.one, ring.gdco(b, a)


def kap_witness(ring, a, b, c) -> KapWitness:
    p, q = kap(ring, a, b, c)
    pa = ring.mul(p, a)
    pbqc = ring.add(ring.mul(p, b), ring.mul(q, c))
    g, x1, y1, _, _ = ring.egcdr(pa, pbqc)
    if not ring.is_unit(g):
        raise InvariantError("kap returned a pair that is not coprime")
    ginv = ring.inverse(g)
    return KapWitness(p, q, ring.mul(x1, ginv), ring.mul(y1, ginv))


def kapW(ring, a, b, c):
    """``(x1, y1)`` with ``x1*p*a + y1*(p*b + q*c) = 1`` for ``(p, q) = kap(a, b, c)``."""
    w = kap_witness(ring, a, b, c)
    return w.x1, w.y1


def _mx2(ring, a, b, c, d):
    return Matrix(ring, 2, 2, [a, b, c, d])


def kap_smith2x2(m: Matrix) -> SmithResult:
    """Smith form of a 2 x 2 matrix from a Kaplansky witness."""
    ring = m.ring
    if m.shape != (2, 2):
        raise ValueError("kap_smith2x2 needs a 2x2 matrix")
    _require_gdco(ring)
    m00, m10 = m[0, 0], m[1, 0]
    A = bezout_step(m00, m10, m, 1)
    E = bezout_mx(ring, m00, m10, 2, 1)
    d, _, _, _, a, b, c = ring.egcdr3(A[0, 0], A[0, 1], A[1, 1])
    if ring.is_zero(d):
        return SmithResult(E, (), identity(ring, 2))
    mul, add, neg = ring.mul, ring.add, ring.neg
    w = kap_witness(ring, a, b, c)
    p, q, x1, y1 = w.p, w.q, w.x1, w.y1
    x = add(mul(a, x1), mul(y1, b))
    y = mul(c, y1)
    P = _mx2(ring, p, q, neg(y), x) @ E
    Q = _mx2(ring, x1, add(mul(p, b), mul(q, c)), y1, neg(mul(p, a)))
    second = mul(d, neg(mul(a, c)))
    diag = [d] if ring.is_zero(second) else [d, second]
    P, diag = normalize_units(P, diag)
    return SmithResult(P, tuple(diag), Q)


# -- reduction of m x n matrices to 2 x 2 problems --------------------------------------

class _Work:
    """Working triple with ``P @ M0 @ Q == W`` maintained by every operation."""

    def __init__(self, m: Matrix):
        self.ring = m.ring
        self.W = m
        self.P = identity(m.ring, m.nrows)
        self.Q = identity(m.ring, m.ncols)
        self.gates = 0

    def row_op(self, op):
        self.W = apply_elementary(self.W, op, ROW)
        self.P = apply_elementary(self.P, op, ROW)

    def col_op(self, op):
        self.W = apply_elementary(self.W, op, COL)
        self.Q = apply_elementary(self.Q, op, COL)

    def bezout(self, i, k, a, b, side):
        ring = self.ring
        if ring.is_zero(b):
            return
        _, u, v, a1, b1 = ring.egcdr(a, b)
        op = Combine(i, k, u, v, ring.neg(b1), a1)
        if side == ROW:
            self.row_op(op)
        else:
            self.col_op(op)

    def gate(self, smith2x2, rows, cols):
        """Apply a 2 x 2 Smith solve to the submatrix on ``rows`` x ``cols``."""
        ring = self.ring
        (i, k), (j, l) = rows, cols
        sub = _mx2(ring, self.W[i, j], self.W[i, l], self.W[k, j], self.W[k, l])
        self.gates += 1
        if sub.is_zero():
            return
        r = smith2x2(sub)
        p, q = r.P, r.Q
        self.row_op(Combine(i, k, p[0, 0], p[0, 1], p[1, 0], p[1, 1]))
        self.col_op(Combine(j, l, q[0, 0], q[1, 0], q[0, 1], q[1, 1]))


def _gather_content(work: _Work, smith2x2, t):
    """Move the gcd of the active block W[t:, t:] to position (t, t).

    Row t is first reduced to (h, 0, ..., 0) by column Bezout steps. Each later
    row i is reduced into columns t and t+1, and a 2 x 2 solve on rows (t, i)
    and columns (t, t+1) merges its content into the pivot. Row t stays zero
    outside column t throughout.
    """
    m, n = work.W.shape
    if n - t == 1:
        for i in range(t + 1, m):
            work.bezout(t, i, work.W[t, t], work.W[i, t], ROW)
        return
    for j in range(t + 1, n):
        work.bezout(t, j, work.W[t, t], work.W[t, j], COL)
    for i in range(t + 1, m):
        for j in range(t + 2, n):
            work.bezout(t + 1, j, work.W[i, t + 1], work.W[i, j], COL)
        work.gate(smith2x2, (t, i), (t, t + 1))


def chain_fix(work: _Work, smith2x2, k):
    """Bubble-sort network of 2 x 2 solves over the leading k diagonal entries.

    Each gate replaces an adjacent pair by (gcd, lcm) up to units; the
    network therefore leaves a divisibility chain. Uses k(k-1)/2 gates.
    """
    before = work.gates
    for rnd in range(k - 1):
        for j in range(k - 1 - rnd):
            work.gate(smith2x2, (j, j + 1), (j, j + 1))
    return work.gates - before


def smithmxn(smith2x2, m: Matrix) -> SmithResult:
    """Smith normal form of any matrix given a Smith solver for 2 x 2 matrices.

    For each diagonal position the content of the remaining block is gathered
    into the pivot, then the pivot row and column are cleared by exact
    subtraction. A final chain-fix network enforces the divisibility order.
    """
    ring = m.ring
    if m.shape == (2, 2):
        return smith2x2(m)
    work = _Work(m)
    nr, nc = m.shape
    t = 0
    while t < min(nr, nc):
        _gather_content(work, smith2x2, t)
        g = work.W[t, t]
        if ring.is_zero(g):
            # the content of the active block is zero
            break
        for j in range(t + 1, nc):
            c = ring.div_exact(work.W[t, j], g)
            if not ring.is_zero(c):
                work.col_op(Axpy(j, t, ring.neg(c)))
        for i in range(t + 1, nr):
            c = ring.div_exact(work.W[i, t], g)
            if not ring.is_zero(c):
                work.row_op(Axpy(i, t, ring.neg(c)))
        t += 1
    chain_fix(work, smith2x2, t)
    diag = [work.W[i, i] for i in range(t)]
    if any(ring.is_zero(x) for x in diag):
        raise InvariantError("smithmxn produced a zero pivot inside the diagonal")
    P, diag = normalize_units(work.P, diag)
    return SmithResult(P, tuple(diag), work.Q)


def kaplansky_smith(m: Matrix) -> SmithResult:
    _require_gdco(m.ring)
    return smithmxn(kap_smith2x2, m)


# -- adequacy and Krull dimension ---------------------------------------------------------

def krull1_factor(ring, a, b) -> Krull1Factorization:
    """Split ``b = b1 * b2`` with ``b1`` coprime to ``a`` and ``b2 | a**n``, n > 0."""
    if not (ring.caps.krull1 or ring.caps.pid):
        raise CapabilityError(f"{ring.name} has neither a Krull witness nor PID structure")
    if ring.is_zero(b):
        if ring.is_unit(a):
            return Krull1Factorization(1, ring.zero, ring.one)
        raise ValueError("b = 0 admits no such factorization unless a is a unit")
    b1 = ring.gdco(a, b)
    b2 = ring.div_exact(b, b1)
    cap = ring.exponent_bound(b)
    n, power = 1, a
    while not ring.divides(b2, power):
        n += 1
        if n > cap:
            raise InvariantError("krull1_factor: exponent search exceeded bound")
        power = ring.mul(power, a)
    return Krull1Factorization(n, b1, b2)


def adequate_of_gdco(ring, a, b):
    """The adequate element for (a, b), realized as gdco(a, b)."""
    _require_gdco(ring)
    return ring.gdco(a, b)
