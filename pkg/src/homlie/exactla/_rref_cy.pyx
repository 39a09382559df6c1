# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_rref_py.rref_int``; same contract, same output."""

from math import gcd


cdef list _primitive(list row):
    cdef object g = 0
    cdef object a
    for a in row:
        if a:
            g = gcd(g, a)
            if g == 1:
                return row
    if g > 1:
        return [a // g for a in row]
    return row


def rref_int(rows, Py_ssize_t ncols):
    cdef list work = [_primitive(list(r)) for r in rows if any(r)]
    cdef list pivots = []
    cdef Py_ssize_t top = 0
    cdef Py_ssize_t nrows = len(work)
    cdef Py_ssize_t c, i, j, best
    cdef object a, aa, best_abs, p, g, mp, ma
    cdef list prow, row, new
    for c in range(ncols):
        if top >= nrows:
            break
        best = -1
        best_abs = 0
        for i in range(top, nrows):
            a = (<list>work[i])[c]
            if a:
                aa = a if a > 0 else -a
                if best < 0 or aa < best_abs:
                    best = i
                    best_abs = aa
                    if aa == 1:
                        break
        if best < 0:
            continue
        if best != top:
            work[top], work[best] = work[best], work[top]
        prow = <list>work[top]
        if prow[c] < 0:
            prow = [-a for a in prow]
            work[top] = prow
        p = prow[c]
        for i in range(nrows):
            if i == top:
                continue
            row = <list>work[i]
            a = row[c]
            if not a:
                continue
            g = gcd(p, a)
            mp = p // g
            ma = a // g
            new = [None] * ncols
            for j in range(ncols):
                new[j] = mp * row[j] - ma * prow[j]
            work[i] = _primitive(new)
        pivots.append(c)
        top += 1
    return work[:top], pivots
