"""Multi-modular kernel computation for large rational linear systems.

The kernel is computed modulo several word-size primes with numpy, lifted
by Chinese remaindering and rational reconstruction, and then checked
exactly against the original rows.  Only the check decides correctness;
the modular images just propose the candidate.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

import numpy as np

# primes just below 2**31 so that products fit in int64
PRIMES = (
    2147483647,
    2147483629,
    2147483587,
    2147483579,
    2147483563,
    2147483549,
    2147483543,
    2147483497,
    2147483489,
    2147483477,
    2147483423,
    2147483399,
    2147483353,
    2147483323,
    2147483269,
    2147483249,
)


class _Unlucky(Exception):
    pass


def _reduce(x: Fraction, p: int) -> int:
    d = x.denominator % p
    if not d:
        raise _Unlucky
    return x.numerator % p * pow(d, -1, p) % p


def rref_kernel_mod(A: np.ndarray, p: int):
    """Reduced-echelon kernel basis of ``A`` over GF(p).

    Returns ``(pivots, basis)`` where ``basis`` has one row per free column.
    """
    A = A.copy() % p
    m, ncols = A.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = A[r] * inv % p
        col = A[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            A[rows] = (A[rows] - np.outer(col[rows], A[r]) % p) % p
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for b, f in enumerate(free):
        basis[b, f] = 1
        for i, c in enumerate(pivots):
            basis[b, c] = (-A[i, f]) % p
    return tuple(pivots), basis


def rational_reconstruct(a: int, m: int):
    """Find ``n/d`` with ``n = a d (mod m)`` and ``|n|, d <= sqrt(m/2)``, or None."""
    a %= m
    bound = isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    return Fraction(r1, s1) if s1 > 0 else Fraction(-r1, -s1)


def _lift(images, primes):
    """CRT-combine per-prime integer matrices, then reconstruct rationals."""
    modulus = 1
    combined = None
    for img, p in zip(images, primes):
        img = [[int(x) for x in row] for row in img]
        if combined is None:
            combined, modulus = img, p
            continue
        inv = pow(modulus, -1, p)
        new = []
        for row_c, row_i in zip(combined, img):
            new.append(
                [c + modulus * ((x - c) * inv % p) for c, x in zip(row_c, row_i)]
            )
        combined = new
        modulus *= p
    out = []
    for row in combined:
        lifted = []
        for x in row:
            q = rational_reconstruct(x, modulus)
            if q is None:
                return None
            lifted.append(q)
        out.append(lifted)
    return out


def _exact_zero(rows, vec) -> bool:
    for row in rows:
        s = Fraction(0)
        for a, v in zip(row, vec):
            if a and v:
                s += a * v
        if s:
            return False
    return True


def kernel_modular(rows, ncols: int, max_primes: int = len(PRIMES)):
    """Exact kernel basis of rational ``rows`` (same normalization as the
    fraction-free path: one vector per free column with a 1 there).

    Raises ArithmeticError if the lift does not stabilize within
    ``max_primes`` primes.
    """
    images = {}
    best_rank = -1
    used = []
    previous = None
    for p in PRIMES[:max_primes]:
        try:
            A = np.array([[_reduce(x, p) for x in row] for row in rows], dtype=np.int64)
        except _Unlucky:
            continue
        if A.size == 0:
            A = np.zeros((0, ncols), dtype=np.int64)
        pivots, basis = rref_kernel_mod(A, p)
        rank = len(pivots)
        if rank < best_rank:
            continue  # unlucky prime, rank dropped
        if rank > best_rank:
            best_rank = rank
            images = {}
            used = []
            previous = None
        images.setdefault(pivots, []).append(basis)
        if len(images) > 1:
            # same rank but different pivot pattern: keep the lexicographically
            # smallest pattern, which is the one over Q
            key = min(images)
            images = {key: images[key]}
            if pivots != key:
                continue
        used.append(p)
        key = next(iter(images))
        candidate = _lift(images[key], used)
        if candidate is None:
            continue
        if candidate == previous and all(_exact_zero(rows, v) for v in candidate):
            return candidate
        previous = candidate
    raise ArithmeticError("modular kernel did not stabilize")
