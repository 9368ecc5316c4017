"""Kernels, linear systems, finitely presented modules and homology.

Everything uses the row-vector convention: a matrix ``M`` with ``n`` rows and
``k`` columns acts by ``x -> x @ M``, and the module presented by ``M`` is the
quotient of ``R^k`` by the row space of ``M``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional

from .errors import InvariantError
from .matrix import Matrix, zeros
from .smith import smith


def mxrank(m: Matrix, strategy=None) -> int:
    """Number of nonzero invariant factors."""
    return len(smith(m, strategy).d)


def kermx(m: Matrix, strategy=None) -> Matrix:
    """Square matrix whose row space is ``{x : x @ m == 0}``.

    With ``P @ m @ Q`` diagonal of rank r, the rows of ``P`` from r on span
    the left kernel; the first r rows of the result are zero.
    """
    r = smith(m, strategy)
    rank = len(r.d)
    rows = [[m.ring.zero] * m.nrows for _ in range(rank)] + [list(x) for x in r.P.rows()[rank:]]
    return Matrix.from_rows(m.ring, rows, m.nrows)


def kernel_basis(m: Matrix, strategy=None) -> Matrix:
    """The nonzero rows of ``kermx``: a basis of the left kernel (free of rank rows - rank)."""
    r = smith(m, strategy)
    return Matrix.from_rows(m.ring, r.P.rows()[len(r.d):], m.nrows)


def cokermx(m: Matrix, strategy=None) -> Matrix:
    """Square matrix whose column space is ``{y : m @ y == 0}``."""
    r = smith(m, strategy)
    rank = len(r.d)
    ring = m.ring
    rows = [[ring.zero] * rank + list(row[rank:]) for row in r.Q.rows()]
    return Matrix.from_rows(ring, rows, m.ncols)


def ideal_member(ring, x, gens) -> Optional[list]:
    """Coefficients ``ys`` with ``x == sum(g * y)``, or ``None`` if x is not in the ideal."""
    g = ring.zero
    coeffs: list = []
    for gi in gens:
        e = ring.egcdr(g, gi)
        coeffs = [ring.mul(e.u, c) for c in coeffs] + [e.v]
        g = e.g
    q = ring.div_opt(x, g)
    if q is None:
        return None
    return [ring.mul(c, q) for c in coeffs]


def solve_xm_eq_b(m: Matrix, b: Matrix, strategy=None) -> Optional[Matrix]:
    """A solution ``X`` of ``X @ m == b``, or ``None`` when there is none.

    With ``P @ m @ Q == D`` the system becomes ``Y @ D == b @ Q`` for
    ``Y = X @ P^-1``, which is solved entry by entry.
    """
    if m.ncols != b.ncols:
        raise ValueError(f"cannot solve X*M = B with M {m.nrows}x{m.ncols} "
                         f"and B {b.nrows}x{b.ncols}")
    ring = m.ring
    r = smith(m, strategy)
    bq = b @ r.Q
    rank = len(r.d)
    y = []
    for row in bq.rows():
        if any(not ring.is_zero(x) for x in row[rank:]):
            return None
        yrow = []
        for x, d in zip(row, r.d):
            q = ring.div_opt(x, d)
            if q is None:
                return None
            yrow.append(q)
        yrow += [ring.zero] * (m.nrows - rank)
        y.append(yrow)
    return Matrix.from_rows(ring, y, m.nrows) @ r.P


# -- finitely presented modules ---------------------------------------------------------

@dataclass(frozen=True)
class Presentation:
    """The module ``R^m0 / rowspace(M)`` for an ``m1 x m0`` relation matrix ``M``."""

    M: Matrix

    @property
    def ring(self):
        return self.M.ring

    @property
    def m1(self):
        return self.M.nrows

    @property
    def m0(self):
        return self.M.ncols


@dataclass(frozen=True)
class Morphism:
    source: Presentation
    target: Presentation
    phiG: Matrix
    phiR: Matrix

    def check(self) -> bool:
        return self.source.M @ self.phiG == self.phiR @ self.target.M


def morphism_make(src: Presentation, tgt: Presentation, phiG: Matrix) -> Optional[Morphism]:
    """Lift ``phiG`` on generators to a morphism of presented modules, if it is well defined."""
    if phiG.shape != (src.m0, tgt.m0):
        raise ValueError(f"phiG must be {src.m0}x{tgt.m0}, got {phiG.nrows}x{phiG.ncols}")
    phiR = solve_xm_eq_b(tgt.M, src.M @ phiG)
    if phiR is None:
        return None
    return Morphism(src, tgt, phiG, phiR)


@dataclass(frozen=True)
class ModuleDecomposition:
    """``R^free_rank`` plus ``R/(t)`` for each torsion factor."""

    free_rank: int
    torsion: tuple
    ring: object = field(default=None, compare=False)

    def __post_init__(self):
        r = self.ring
        if r is None:
            return
        for t in self.torsion:
            if r.is_zero(t) or r.is_unit(t) or r.canon(t) != t:
                raise InvariantError(f"bad torsion factor {r.format(t)}")
        for s, t in zip(self.torsion, self.torsion[1:]):
            if not r.divides(s, t):
                raise InvariantError("torsion factors do not form a divisibility chain")

    @property
    def is_zero(self):
        return self.free_rank == 0 and not self.torsion

    def summands(self) -> List[str]:
        r = self.ring
        sym = r.symbol if r is not None else "R"
        out = []
        if self.free_rank == 1:
            out.append(sym)
        elif self.free_rank > 1:
            out.append(f"{sym}^{self.free_rank}")
        for t in self.torsion:
            text = r.format(t) if r is not None else str(t)
            out.append(f"{sym}/{text}" if r is not None and r.tag == "int" else f"{sym}/({text})")
        return out

    def __str__(self):
        return " + ".join(self.summands()) or "0"

    def to_json(self):
        r = self.ring
        return {
            "free_rank": self.free_rank,
            "torsion": [r.to_json(t) for t in self.torsion],
            "module": str(self),
        }


def decompose(p: Presentation, strategy=None) -> ModuleDecomposition:
    ring = p.ring
    d = smith(p.M, strategy).d
    torsion = tuple(ring.canon(x) for x in d if not ring.is_unit(x))
    return ModuleDecomposition(p.m0 - len(d), torsion, ring)


def is_isomorphic(p1: Presentation, p2: Presentation, strategy=None) -> bool:
    if p1.ring != p2.ring:
        raise ValueError("presentations over different rings")
    return decompose(p1, strategy) == decompose(p2, strategy)


# -- chain complexes ----------------------------------------------------------------------

class ChainComplex:
    """Boundary maps ``d_1, d_2, ...`` with ``d_k`` of shape dim C_k x dim C_{k-1}.

    Maps act on row vectors, so the complex condition reads ``d_{k+1} @ d_k == 0``.
    """

    def __init__(self, ring, boundaries):
        boundaries = list(boundaries)
        if not boundaries:
            raise ValueError("a chain complex needs at least one boundary matrix")
        for k, b in enumerate(boundaries, start=1):
            if b.ring != ring:
                raise ValueError(f"boundary {k} is over {b.ring.name}, expected {ring.name}")
        for k in range(1, len(boundaries)):
            lo, hi = boundaries[k - 1], boundaries[k]
            if hi.ncols != lo.nrows:
                raise ValueError(f"boundary {k + 1} has {hi.ncols} columns but "
                                 f"C_{k} has dimension {lo.nrows}")
            if not (hi @ lo).is_zero():
                raise ValueError(f"boundary {k + 1} composed with boundary {k} is not zero")
        self.ring = ring
        self.boundaries = tuple(boundaries)

    @property
    def top(self):
        return len(self.boundaries)

    def dim(self, k):
        if k < 0 or k > self.top:
            return 0
        if k == 0:
            return self.boundaries[0].ncols
        return self.boundaries[k - 1].nrows

    def boundary(self, k):
        """``d_k`` as a matrix, with zero maps outside the stored range."""
        if 1 <= k <= self.top:
            return self.boundaries[k - 1]
        return zeros(self.ring, self.dim(k), self.dim(k - 1))


def homology(c: ChainComplex, k: int, strategy=None) -> ModuleDecomposition:
    """``H_k = ker d_k / im d_{k+1}`` as a module decomposition."""
    if k < 0:
        raise ValueError("homology degree must be nonnegative")
    basis = kernel_basis(c.boundary(k), strategy)
    rel = c.boundary(k + 1)
    coords = solve_xm_eq_b(basis, rel, strategy)
    if coords is None:
        raise InvariantError(f"image of boundary {k + 1} is not inside the kernel of boundary {k}")
    return decompose(Presentation(coords), strategy)


def homology_all(c: ChainComplex, strategy=None):
    return [homology(c, k, strategy) for k in range(c.top + 1)]


def euler_characteristic(c: ChainComplex):
    """``(sum (-1)^k dim C_k, sum (-1)^k rank H_k)``; the two agree on any complex."""
    chain = sum((-1) ** k * c.dim(k) for k in range(c.top + 1))
    betti = sum((-1) ** k * h.free_rank for k, h in enumerate(homology_all(c, strategy=None)))
    return chain, betti
