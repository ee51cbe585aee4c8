# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled arithmetic kernels: row reduction and matrix product.

Same contract as ``taurec._kernels_py`` (pair-encoded matrices, exact
arithmetic); loop control and indexing are compiled, entries stay Python
ints for arbitrary precision.  Any behavioral change here must be mirrored
in the pure-Python twin — the test suite checks agreement.
"""

from math import gcd

BACKEND = "compiled"


cdef inline tuple _q_add(object an, object ad, object bn, object bd):
    if an == 0:
        return bn, bd
    if bn == 0:
        return an, ad
    cdef object g = gcd(ad, bd)
    cdef object n, d
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


cdef inline tuple _q_mul(object an, object ad, object bn, object bd):
    if an == 0 or bn == 0:
        return 0, 1
    cdef object g1 = gcd(an, bd) if bd != 1 else 1
    cdef object g2 = gcd(bn, ad) if ad != 1 else 1
    return (an // g1) * (bn // g2), (ad // g2) * (bd // g1)


def rref(Py_ssize_t rows, Py_ssize_t cols, num_in, den_in, p):
    """Reduced row echelon form; returns ``(num, den, pivots)``."""
    cdef list num = list(num_in)
    cdef list den = list(den_in)
    cdef list pivots = []
    cdef Py_ssize_t r = 0, c, i, j, pr, a, b, base, ib
    cdef object pn, pd, inv_n, inv_d, fn, fd, tn, mn, md, inv, f, t, tmp
    if p == 0:
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
                a = pr * cols
                b = r * cols
                for j in range(cols):
                    tmp = num[a + j]; num[a + j] = num[b + j]; num[b + j] = tmp
                    tmp = den[a + j]; den[a + j] = den[b + j]; den[b + j] = tmp
            base = r * cols
            pn = num[base + c]
            pd = den[base + c]
            if pn != pd:
                if pn > 0:
                    inv_n = pd; inv_d = pn
                else:
                    inv_n = -pd; inv_d = -pn
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
                a = pr * cols
                b = r * cols
                for j in range(cols):
                    tmp = num[a + j]; num[a + j] = num[b + j]; num[b + j] = tmp
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


def matmul(Py_ssize_t m, Py_ssize_t n, Py_ssize_t k,
           anum_in, aden_in, bnum_in, bden_in, p):
    """Product of an m×n and an n×k pair-encoded matrix: ``(cnum, cden)``."""
    cdef list anum = list(anum_in)
    cdef list aden = list(aden_in)
    cdef list bnum = list(bnum_in)
    cdef list bden = list(bden_in)
    cdef list cnum = [0] * (m * k)
    cdef list cden = [1] * (m * k)
    cdef Py_ssize_t i, j, t, arow, crow
    cdef object sn, sd, an, bn, pn, pd, s
    if p == 0:
        for i in range(m):
            arow = i * n
            crow = i * k
            for j in range(k):
                sn = 0; sd = 1
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
                        s = s + an * bnum[t * k + j]
                cnum[crow + j] = s % p
    return cnum, cden
