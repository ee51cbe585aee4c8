"""Pure-Python arithmetic kernels: row reduction and matrix product.

Matrices are pair-encoded: two flat row-major lists of Python ints,
``num`` and ``den``, of length ``rows * cols``.  For the rational field
(``p == 0``) every entry satisfies ``den > 0`` and ``gcd(num, den) == 1``;
for a prime field (``p > 0``) every ``den`` entry is 1 and every ``num``
entry is reduced into ``[0, p)``.

A compiled twin of this module (``taurec._kernels``) implements the same
two functions; ``taurec.linalg`` picks whichever is importable.  Keep the
algorithms here and there in lockstep: the test suite asserts bit-for-bit
agreement on random inputs.
"""

from math import gcd

BACKEND = "python"


def _q_add(an, ad, bn, bd):
    # (an/ad) + (bn/bd) in lowest terms, positive denominator.
    if an == 0:
        return bn, bd
    if bn == 0:
        return an, ad
    g = gcd(ad, bd)
    if g == 1:
        n = an * bd + bn * ad
        d = ad * bd
    else:
        n = an * (bd // g) + bn * (ad // g)
        d = (ad // g) * bd
    g = gcd(n, d)
    if g > 1:
        n //= g
        d //= g
    return n, d


def _q_mul(an, ad, bn, bd):
    if an == 0 or bn == 0:
        return 0, 1
    g1 = gcd(an, bd) if bd != 1 else 1
    g2 = gcd(bn, ad) if ad != 1 else 1
    return (an // g1) * (bn // g2), (ad // g2) * (bd // g1)


def rref(rows, cols, num, den, p):
    """Reduced row echelon form of a pair-encoded matrix.

    Returns ``(num, den, pivots)`` where ``pivots`` is the strictly
    increasing list of pivot column indices.  Inputs are not modified.
    """
    num = list(num)
    den = list(den)
    pivots = []
    r = 0
    if p == 0:
        for c in range(cols):
            if r == rows:
                break
            # First nonzero entry in column c at or below row r (deterministic).
            pr = -1
            for i in range(r, rows):
                if num[i * cols + c] != 0:
                    pr = i
                    break
            if pr < 0:
                continue
            if pr != r:
                a, b = pr * cols, r * cols
                for j in range(cols):
                    num[a + j], num[b + j] = num[b + j], num[a + j]
                    den[a + j], den[b + j] = den[b + j], den[a + j]
            base = r * cols
            pn = num[base + c]
            pd = den[base + c]
            if pn != pd:  # scale row r by pd/pn
                inv_n, inv_d = (pd, pn) if pn > 0 else (-pd, -pn)
                num[base + c] = 1
                den[base + c] = 1
                for j in range(c + 1, cols):
                    if num[base + j] != 0:
                        num[base + j], den[base + j] = _q_mul(
                            num[base + j], den[base + j], inv_n, inv_d
                        )
            else:
                num[base + c] = 1
                den[base + c] = 1
            for i in range(rows):
                if i == r:
                    continue
                ib = i * cols
                fn = num[ib + c]
                if fn == 0:
                    continue
                fd = den[ib + c]
                num[ib + c] = 0
                den[ib + c] = 1
                for j in range(c + 1, cols):
                    tn = num[base + j]
                    if tn == 0:
                        continue
                    mn, md = _q_mul(-fn, fd, tn, den[base + j])
                    num[ib + j], den[ib + j] = _q_add(num[ib + j], den[ib + j], mn, md)
            pivots.append(c)
            r += 1
    else:
        for c in range(cols):
            if r == rows:
                break
            pr = -1
            for i in range(r, rows):
                if num[i * cols + c] != 0:
                    pr = i
                    break
            if pr < 0:
                continue
            if pr != r:
                a, b = pr * cols, r * cols
                for j in range(cols):
                    num[a + j], num[b + j] = num[b + j], num[a + j]
            base = r * cols
            inv = pow(num[base + c], -1, p)
            num[base + c] = 1
            for j in range(c + 1, cols):
                if num[base + j]:
                    num[base + j] = (num[base + j] * inv) % p
            for i in range(rows):
                if i == r:
                    continue
                ib = i * cols
                f = num[ib + c]
                if f == 0:
                    continue
                num[ib + c] = 0
                for j in range(c + 1, cols):
                    t = num[base + j]
                    if t:
                        num[ib + j] = (num[ib + j] - f * t) % p
            pivots.append(c)
            r += 1
    return num, den, pivots


def matmul(m, n, k, anum, aden, bnum, bden, p):
    """Product of an m×n and an n×k pair-encoded matrix: ``(cnum, cden)``."""
    cnum = [0] * (m * k)
    cden = [1] * (m * k)
    if p == 0:
        for i in range(m):
            arow = i * n
            crow = i * k
            for j in range(k):
                sn, sd = 0, 1
                for t in range(n):
                    an = anum[arow + t]
                    if an == 0:
                        continue
                    bn = bnum[t * k + j]
                    if bn == 0:
                        continue
                    pn, pd = _q_mul(an, aden[arow + t], bn, bden[t * k + j])
                    sn, sd = _q_add(sn, sd, pn, pd)
                cnum[crow + j] = sn
                cden[crow + j] = sd
    else:
        for i in range(m):
            arow = i * n
            crow = i * k
            for j in range(k):
                s = 0
                for t in range(n):
                    an = anum[arow + t]
                    if an:
                        s += an * bnum[t * k + j]
                cnum[crow + j] = s % p
    return cnum, cden
