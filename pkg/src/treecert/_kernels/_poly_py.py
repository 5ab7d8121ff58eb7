"""Pure-Python kernel for dense polynomial arithmetic over GF(p).

Polynomials are lists of ints in [0, p) indexed by degree, with no trailing
zeros ([] is the zero polynomial).  These functions are the hot inner loops
of the whole package; the Cython twin in _poly_cy.pyx implements the same
signatures and one of the two is selected in _kernels/__init__.
"""

BACKEND = "python"


def poly_trim(a):
    """Drop trailing zero coefficients in place and return the list."""
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return poly_trim(out)


def poly_sub(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return poly_trim(out)


def poly_neg(a, p):
    return [(-c) % p for c in a]


def poly_scale(a, s, p):
    s %= p
    if s == 0:
        return []
    return [(c * s) % p for c in a]


def poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % p
    return poly_trim(out)


def poly_shift(a, n):
    """Multiply by x^n (n >= 0)."""
    if not a:
        return []
    return [0] * n + list(a)


def poly_divmod(a, b, p):
    """Euclidean division; b must be nonzero."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    if len(r) - 1 < db:
        return [], poly_trim(r)
    inv_lb = pow(lb, p - 2, p)
    q = [0] * (len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if c == 0:
            continue
        f = (c * inv_lb) % p
        q[i - db] = f
        for j in range(db + 1):
            r[i - db + j] = (r[i - db + j] - f * b[j]) % p
    return poly_trim(q), poly_trim(r)


def poly_gcd(a, b, p):
    """Monic gcd; poly_gcd(0, 0) == []."""
    a, b = list(a), list(b)
    while b:
        a, b = b, poly_divmod(a, b, p)[1]
    if a and a[-1] != 1:
        a = poly_scale(a, pow(a[-1], p - 2, p), p)
    return a


def poly_eval(a, x, p):
    y = 0
    for c in reversed(a):
        y = (y * x + c) % p
    return y
