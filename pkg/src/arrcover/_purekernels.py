"""Pure-Python elimination kernels (fallback for the compiled ``_ckernels``).

GF(2) rows are Python ints used as bitsets (bit ``j`` is column ``j``).
F_p rows are lists of residues in ``[0, p)``.
"""

from __future__ import annotations


def gf2_rref(rows: list[int], ncols: int) -> tuple[list[int], list[int]]:
    work = list(rows)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        bit = 1 << c
        piv = None
        for i in range(r, len(work)):
            if work[i] & bit:
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        pr = work[r]
        for i in range(len(work)):
            if i != r and work[i] & bit:
                work[i] ^= pr
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def gf2_rank(rows: list[int], ncols: int) -> int:
    # echelon by leading bit, no back-substitution
    basis: dict[int, int] = {}
    for v in rows:
        while v:
            top = v.bit_length() - 1
            b = basis.get(top)
            if b is None:
                basis[top] = v
                break
            v ^= b
    return len(basis)


def fp_rref(rows: list[list[int]], ncols: int, p: int) -> tuple[list[list[int]], list[int]]:
    work = [[x % p for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(work):
            break
        piv = None
        for i in range(r, len(work)):
            if work[i][c]:
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        pr = work[r]
        inv = pow(pr[c], -1, p)
        if inv != 1:
            pr = work[r] = [(x * inv) % p for x in pr]
        nz = [j for j in range(c, ncols) if pr[j]]
        for i in range(len(work)):
            if i == r:
                continue
            ri = work[i]
            f = ri[c]
            if f:
                for j in nz:
                    ri[j] = (ri[j] - f * pr[j]) % p
        pivots.append(c)
        r += 1
    return work[:r], pivots


def fp_rank(rows: list[list[int]], ncols: int, p: int) -> int:
    return len(fp_rref(rows, ncols, p)[1])
