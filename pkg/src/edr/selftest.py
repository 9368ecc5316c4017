"""Randomized property checks runnable from the command line (``edr --selftest``)."""

from __future__ import annotations

import random
import time

from .fpmod import Presentation, decompose, kermx, solve_xm_eq_b
from .kaplansky import kap_witness
from .matrix import Axpy, Matrix, Swap, apply_elementary, identity
from .rings import ZZ, PrimeFieldPolynomials
from .smith import (
    bezout_mx,
    bezout_step,
    compare_invariant_factors,
    determinantal_divisor,
    smith,
    supported_strategies,
    verify_smith,
)


def random_matrix(ring, rng, m, n, size):
    return Matrix(ring, m, n, [ring.random_element(rng, size) for _ in range(m * n)])


def random_unimodular(ring, rng, n, steps=8, size=3):
    """Product of random swaps and transvections."""
    u = identity(ring, n)
    if n < 2:
        return u
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        if rng.random() < 0.2:
            u = apply_elementary(u, Swap(i, j))
        else:
            u = apply_elementary(u, Axpy(i, j, ring.random_element(rng, size)))
    return u


def _smith_checks(ring, m):
    ds = []
    for s in supported_strategies(ring):
        r = smith(m, s)
        if not verify_smith(m, r).ok:
            return False
        ds.append(r.d)
    k = min(m.shape)
    if not all(compare_invariant_factors(ring, ds[0], d, k) for d in ds[1:]):
        return False
    acc = ring.one
    for i in range(1, k + 1):
        acc = ring.mul(acc, ds[0][i - 1]) if i <= len(ds[0]) else ring.zero
        if not ring.associates(acc, determinantal_divisor(m, i)):
            return False
    return True


def run_selftest(seed=None, rounds=40, out=print) -> bool:
    seed = random.randrange(2**32) if seed is None else seed
    rng = random.Random(seed)
    f5 = PrimeFieldPolynomials(5)
    results = {}
    start = time.perf_counter()

    def check(name, ok):
        passed, total = results.get(name, (0, 0))
        results[name] = (passed + bool(ok), total + 1)

    for _ in range(rounds):
        m = random_matrix(ZZ, rng, rng.randint(0, 5), rng.randint(0, 5), 50)
        check("smith/Z", _smith_checks(ZZ, m))
        m = random_matrix(f5, rng, rng.randint(0, 3), rng.randint(0, 3), 3)
        check("smith/F5[x]", _smith_checks(f5, m))

        a, b = ZZ.random_element(rng, 50), ZZ.random_element(rng, 50)
        m = random_matrix(ZZ, rng, 3, 2, 20)
        check("bezout_step", bezout_step(a, b, m, 2) == bezout_mx(ZZ, a, b, 3, 2) @ m)

        a, b, c = (ZZ.random_element(rng, 100) for _ in range(3))
        g = ZZ.gcd(a, ZZ.gcd(b, c))
        if g:
            a, b, c = a // g, b // g, c // g
            w = kap_witness(ZZ, a, b, c)
            pa, pbqc = w.p * a, w.p * b + w.q * c
            check("kaplansky", ZZ.gcd(pa, pbqc) == 1 and w.x1 * pa + w.y1 * pbqc == 1)

        m = random_matrix(ZZ, rng, rng.randint(1, 4), rng.randint(1, 4), 9)
        k = kermx(m)
        y = random_matrix(ZZ, rng, 1, m.nrows, 9)
        x = y @ k
        check("kernel", (k @ m).is_zero() and solve_xm_eq_b(k, x) is not None)

        m = random_matrix(ZZ, rng, rng.randint(0, 4), rng.randint(0, 4), 9)
        u = random_unimodular(ZZ, rng, m.nrows)
        v = random_unimodular(ZZ, rng, m.ncols)
        check("decompose", decompose(Presentation(u @ m @ v)) == decompose(Presentation(m)))

    ok = all(p == t for p, t in results.values())
    for name, (p, t) in results.items():
        out(f"{'PASS' if p == t else 'FAIL'} {name}: {p}/{t}")
    out(f"selftest seed={seed}: {'ok' if ok else 'FAILED'} in {time.perf_counter() - start:.1f}s")
    return ok
