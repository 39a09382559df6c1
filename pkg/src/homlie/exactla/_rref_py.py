"""Pure-Python row reduction over the integers.

Rows are lists of Python ints.  The result is the reduced echelon form with
every row made primitive (content 1) and a positive pivot, so dividing each
row by its pivot gives the canonical rational RREF.
"""

from math import gcd


def _primitive(row):
    g = 0
    for a in row:
        if a:
            g = gcd(g, a)
            if g == 1:
                break
    if g > 1:
        row = [a // g for a in row]
    return row


def rref_int(rows, ncols):
    """Gauss-Jordan elimination, fraction free.

    Returns ``(reduced_rows, pivots)``; only the nonzero rows are returned.
    """
    work = [_primitive(list(r)) for r in rows if any(r)]
    pivots = []
    top = 0
    nrows = len(work)
    for c in range(ncols):
        if top >= nrows:
            break
        # smallest nonzero entry keeps coefficient growth down; RREF is unique anyway
        best = -1
        best_abs = 0
        for i in range(top, nrows):
            a = work[i][c]
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
        prow = work[top]
        if prow[c] < 0:
            prow = [-a for a in prow]
            work[top] = prow
        p = prow[c]
        for i in range(nrows):
            if i == top:
                continue
            row = work[i]
            a = row[c]
            if not a:
                continue
            g = gcd(p, a)
            mp = p // g
            ma = a // g
            work[i] = _primitive([mp * x - ma * y for x, y in zip(row, prow)])
        pivots.append(c)
        top += 1
    return [r for r in work[:top]], pivots
