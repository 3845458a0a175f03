"""Low-level helpers on integer coefficient lists (ascending order).

These back :class:`holodet.exact.MuPoly`; nothing here knows about
denominators.  Lists are never mutated in place once returned.
"""

from math import gcd

# Above this size multiplication switches to Kronecker substitution.
_KRONECKER_MIN = 24


def strip(a):
    n = len(a)
    while n and not a[n - 1]:
        n -= 1
    return a[:n] if n != len(a) else a


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return strip(out)


def sub(a, b):
    out = list(a)
    if len(out) < len(b):
        out.extend([0] * (len(b) - len(out)))
    for i, c in enumerate(b):
        out[i] -= c
    return strip(out)


def scale(a, c):
    if not c:
        return []
    return [x * c for x in a]


def content(a):
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def _pack(a, bits):
    # sum a_i 2^(bits*i), evaluated from the top (Horner in base 2^bits)
    r = 0
    for c in reversed(a):
        r = (r << bits) + c
    return r


def _unpack(r, bits, count):
    out = []
    mask = (1 << bits) - 1
    half = 1 << (bits - 1)
    full = 1 << bits
    for _ in range(count):
        d = r & mask
        r >>= bits
        if d >= half:
            d -= full
            r += 1
        out.append(d)
    return out


def mul(a, b):
    if not a or not b:
        return []
    la, lb = len(a), len(b)
    if la < _KRONECKER_MIN or lb < _KRONECKER_MIN:
        if la < lb:
            a, b, la, lb = b, a, lb, la
        out = [0] * (la + lb - 1)
        for j, y in enumerate(b):
            if y:
                for i, x in enumerate(a):
                    out[i + j] += x * y
        return out
    ma = max(abs(c) for c in a)
    mb = max(abs(c) for c in b)
    bound = ma * mb * min(la, lb)
    bits = bound.bit_length() + 2
    r = _pack(a, bits) * _pack(b, bits)
    return strip(_unpack(r, bits, la + lb - 1))


def divmod_exact_primitive(a, b):
    """Divide ``a`` by primitive ``b`` over Z; the division must be exact.

    Returns the integer quotient or ``None`` if the remainder is nonzero
    or a quotient coefficient is not integral.
    """
    if len(a) < len(b):
        return [] if not a else None
    r = list(a)
    lb = b[-1]
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for k in range(len(q) - 1, -1, -1):
        top = r[k + db]
        if top:
            qk, rem = divmod(top, lb)
            if rem:
                return None
            q[k] = qk
            for i, c in enumerate(b):
                r[k + i] -= qk * c
    if any(r[:db]):
        return None
    return q


def horner(a, x):
    r = 0
    for c in reversed(a):
        r = r * x + c
    return r


def horner_frac(a, p, q):
    """Return sum a_i p^i q^(d-i) where d = len(a) - 1 (homogenized Horner)."""
    r = 0
    qk = 1
    for c in reversed(a):
        r = r * p + c * qk
        qk *= q
    return r


def exact_div(a, b):
    """Exact quotient ``a / b`` in Z[x]; raises ArithmeticError if inexact."""
    if not a:
        return []
    if len(b) == 1:
        d = b[0]
        out = []
        for c in a:
            q, r = divmod(c, d)
            if r:
                raise ArithmeticError("inexact integer polynomial division")
            out.append(q)
        return out
    g = content(b)
    if b[-1] < 0:
        g = -g
    prim = [c // g for c in b] if g != 1 else b
    q = divmod_exact_primitive(a, prim)
    if q is None:
        raise ArithmeticError("inexact integer polynomial division")
    if g != 1:
        out = []
        for c in q:
            qq, r = divmod(c, g)
            if r:
                raise ArithmeticError("inexact integer polynomial division")
            out.append(qq)
        q = out
    return q
