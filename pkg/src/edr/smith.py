"""Smith normal form by Bezout elimination, with a verifier and a minor-based oracle."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import CapabilityError, InvariantError
from .matrix import (
    COL,
    ROW,
    Axpy,
    Combine,
    Matrix,
    Scale,
    apply_elementary,
    block_mx,
    const_mx,
    determinant,
    diag_mx_seq,
    identity,
    lift0_mx,
    minor,
    strict_maps,
    zeros,
)

EUCLIDEAN = "euclidean"
PID = "pid"
KAPLANSKY = "kaplansky"
STRATEGIES = (EUCLIDEAN, PID, KAPLANSKY)


@dataclass(frozen=True)
class SmithResult:
    """Transition matrices and invariant factors with ``P @ M @ Q == diag(d)``."""

    P: Matrix
    d: tuple
    Q: Matrix


@dataclass(frozen=True)
class PivotReport:
    P: Matrix
    M: Matrix
    Q: Matrix


def default_strategy(ring):
    return EUCLIDEAN if ring.caps.euclidean else KAPLANSKY


def supported_strategies(ring):
    caps = ring.caps
    out = []
    if caps.euclidean:
        out.append(EUCLIDEAN)
    if caps.pid:
        out.append(PID)
    if caps.gdco:
        out.append(KAPLANSKY)
    return out


def _require_strategy(ring, strategy):
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    if strategy not in supported_strategies(ring):
        raise CapabilityError(f"strategy {strategy!r} is not available over {ring.name}")


# -- Bezout steps ----------------------------------------------------------------------

def bezout_mx(ring, a, b, n, k):
    """Unimodular n x n matrix mixing lines 0 and k with Bezout coefficients of (a, b)."""
    if not 0 < k < n:
        raise IndexError(f"Bezout index k={k} must satisfy 0 < k < {n}")
    _, u, v, a1, b1 = ring.egcdr(a, b)
    rows = identity(ring, n).tolist()
    rows[0][0], rows[0][k] = u, v
    rows[k][0], rows[k][k] = ring.neg(b1), a1
    return Matrix.from_rows(ring, rows, n)


def bezout_step(a, b, m: Matrix, k, side=ROW):
    """line0 <- u*line0 + v*linek and linek <- -b1*line0 + a1*linek.

    On rows this is ``bezout_mx(a, b, m.nrows, k) @ m``; on columns it acts on
    the transpose.
    """
    ring = m.ring
    size = m.nrows if side == ROW else m.ncols
    if not 0 < k < size:
        raise IndexError(f"Bezout index k={k} must satisfy 0 < k < {size}")
    _, u, v, a1, b1 = ring.egcdr(a, b)
    return apply_elementary(m, Combine(0, k, u, v, ring.neg(b1), a1), side)


# -- pivot improvement ------------------------------------------------------------------

def _find1(ring, m, a):
    for i in range(1, m.nrows):
        if not ring.divides(a, m[i, 0]):
            return i
    return None


def _find2(ring, m, a):
    for i in range(m.nrows):
        row = m.row(i)
        for j in range(1, m.ncols):
            if not ring.divides(a, row[j]):
                return i, j
    return None


def _check_descent(ring, old, new):
    if not ring.strictly_divides(new, old):
        raise InvariantError(
            f"pivot {ring.format(new)} does not strictly divide {ring.format(old)}")


def improve_pivot(m: Matrix, strategy=EUCLIDEAN) -> PivotReport:
    """Make the (0, 0) entry divide every entry and fill column 0 with it.

    Returns ``(P, M', Q)`` with ``P @ m @ Q == M'``. The Euclidean strategy
    runs on fuel equal to the norm of the starting pivot (plus the final
    round); the PID strategy loops until done and checks strict divisibility
    of successive pivots.
    """
    ring = m.ring
    if strategy not in (EUCLIDEAN, PID):
        raise ValueError(f"improve_pivot strategy must be {EUCLIDEAN!r} or {PID!r}")
    _require_strategy(ring, strategy)
    if m.nrows == 0 or m.ncols == 0 or ring.is_zero(m[0, 0]):
        raise ValueError("improve_pivot needs a nonzero (0, 0) entry")
    P, Q = identity(ring, m.nrows), identity(ring, m.ncols)
    fuel = ring.enorm(m[0, 0]) + 1 if strategy == EUCLIDEAN else None
    while True:
        if fuel is not None:
            if fuel == 0:
                raise InvariantError("improve_pivot ran out of fuel")
            fuel -= 1
        a = m[0, 0]
        i = _find1(ring, m, a)
        if i is not None:
            b = m[i, 0]
            P = bezout_step(a, b, P, i)
            m = bezout_step(a, b, m, i)
            _check_descent(ring, a, m[0, 0])
            continue
        # every m[i, 0] is a multiple of a: row_i += (1 - m[i,0]/a) * row_0
        for i in range(1, m.nrows):
            c = ring.sub(ring.one, ring.div_exact(m[i, 0], a))
            if not ring.is_zero(c):
                op = Axpy(i, 0, c)
                m = apply_elementary(m, op)
                P = apply_elementary(P, op)
        found = _find2(ring, m, a)
        if found is None:
            return PivotReport(P, m, Q)
        i, j = found
        m, P = m.xrow(0, i), P.xrow(0, i)
        b = m[0, j]
        Q = bezout_step(a, b, Q, j, COL)
        m = bezout_step(a, b, m, j, COL)
        _check_descent(ring, a, m[0, 0])


def check_pivot_report(m: Matrix, rep: PivotReport) -> dict:
    """Evaluate each clause of the pivot-improvement contract."""
    ring = m.ring
    p, mm, q = rep.P, rep.M, rep.Q
    g = mm[0, 0]
    return {
        "equivalence": p @ m @ q == mm,
        "divides_all": all(ring.divides(g, x) for x in mm.entries),
        "column_constant": all(x == g for x in mm.col(0)),
        "divides_original": ring.divides(g, m[0, 0]),
        "p_unit": ring.is_unit(determinant(p)),
        "q_unit": ring.is_unit(determinant(q)),
    }


# -- the Smith recursion -----------------------------------------------------------------

def find_pivot(m: Matrix):
    """First nonzero entry in row-major order, or ``None``."""
    z = m.ring.is_zero
    for i, row in enumerate(m.rows()):
        for j, x in enumerate(row):
            if not z(x):
                return i, j
    return None


def _smith_rec(m: Matrix, strategy):
    ring = m.ring
    nr, nc = m.shape
    piv = find_pivot(m) if nr and nc else None
    if piv is None:
        return identity(ring, nr), [], identity(ring, nc)
    i, j = piv
    m1 = m.xcol(j, 0).xrow(i, 0)
    rep = improve_pivot(m1, strategy)
    P0, m2, Q0 = rep.P, rep.M, rep.Q
    a = m2[0, 0]
    v = m2.ursub()
    v_div = v.map(lambda x: ring.div_exact(x, a))
    ones = const_mx(ring, nr - 1, 1, ring.one)
    rest = m2.drsub() - ones @ v
    P1, d1, Q1 = _smith_rec(rest.map(lambda x: ring.div_exact(x, a)), strategy)
    lower = block_mx(identity(ring, 1), zeros(ring, 1, nr - 1), -ones, identity(ring, nr - 1))
    upper = block_mx(identity(ring, 1), -v_div, zeros(ring, nc - 1, 1), identity(ring, nc - 1))
    P = lift0_mx(P1) @ lower @ P0.xcol(i, 0)
    Q = Q0.xrow(j, 0) @ upper @ lift0_mx(Q1)
    return P, [a] + [ring.mul(x, a) for x in d1], Q


def normalize_units(P: Matrix, d):
    """Scale rows of ``P`` so every entry of ``d`` becomes its canonical associate."""
    ring = P.ring
    d = list(d)
    for k, x in enumerate(d):
        w = ring.unit_normal(x)
        if w != ring.one:
            P = apply_elementary(P, Scale(k, w))
            d[k] = ring.mul(w, x)
    return P, d


def smith(m: Matrix, strategy: Optional[str] = None) -> SmithResult:
    ring = m.ring
    strategy = strategy or default_strategy(ring)
    _require_strategy(ring, strategy)
    if strategy == KAPLANSKY:
        from .kaplansky import kaplansky_smith
        return kaplansky_smith(m)
    P, d, Q = _smith_rec(m, strategy)
    P, d = normalize_units(P, d)
    return SmithResult(P, tuple(d), Q)


# -- verification -------------------------------------------------------------------------

@dataclass
class SmithReport:
    shape: bool
    product: bool
    sorted: bool
    p_unit: bool
    q_unit: bool
    nonzero: bool
    canonical: bool
    details: list = field(default_factory=list)

    CLAUSES = ("shape", "product", "sorted", "p_unit", "q_unit", "nonzero", "canonical")

    @property
    def ok(self):
        return all(getattr(self, c) for c in self.CLAUSES)

    def failures(self):
        return [c for c in self.CLAUSES if not getattr(self, c)]


def verify_smith(m: Matrix, r: SmithResult) -> SmithReport:
    """Check every clause of the Smith contract; failures are reported, not raised."""
    ring = m.ring
    nr, nc = m.shape
    d = list(r.d)
    shape = (r.P.shape == (nr, nr) and r.Q.shape == (nc, nc) and len(d) <= min(nr, nc))
    if shape:
        product = r.P @ m @ r.Q == diag_mx_seq(ring, nr, nc, d)
        p_unit = ring.is_unit(determinant(r.P))
        q_unit = ring.is_unit(determinant(r.Q))
    else:
        product = p_unit = q_unit = False
    return SmithReport(
        shape=shape,
        product=product,
        sorted=all(ring.divides(x, y) for x, y in zip(d, d[1:])),
        p_unit=p_unit,
        q_unit=q_unit,
        nonzero=all(not ring.is_zero(x) for x in d),
        canonical=all(ring.canon(x) == x for x in d),
    )


def determinantal_divisor(m: Matrix, k: int):
    """Canonical gcd of all k x k minors (``1`` for k = 0)."""
    ring = m.ring
    if k > min(m.shape):
        raise ValueError(f"no minors of order {k} in a {m.nrows}x{m.ncols} matrix")
    if k == 0:
        return ring.one
    g = ring.zero
    cols = strict_maps(k, m.ncols)
    for f in strict_maps(k, m.nrows):
        for h in cols:
            g = ring.gcd(g, minor(f, h, m))
            if ring.is_unit(g):
                return ring.one
    return ring.canon(g)


def compare_invariant_factors(ring, d1, d2, bound):
    """Zero-pad both lists to ``bound`` and compare entries up to associates."""
    d1, d2 = list(d1), list(d2)
    if len(d1) > bound or len(d2) > bound:
        return False
    d1 += [ring.zero] * (bound - len(d1))
    d2 += [ring.zero] * (bound - len(d2))
    return all(ring.associates(x, y) for x, y in zip(d1, d2))


def gcd_via_smith(ring, a, b, strategy=None):
    """gcd(a, b) read off the Smith form of the row [a b]."""
    r = smith(Matrix(ring, 1, 2, [a, b]), strategy)
    return ring.canon(r.d[0]) if r.d else ring.zero
