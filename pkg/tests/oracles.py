"""Independent dense oracles used to cross-check the sparse exact kernel.

Kept deliberately separate from the package implementation: dense row
lists, textbook elimination, no shared code paths.
"""

from fractions import Fraction


def dense_rank(rows, p=None):
    """Rank by dense Gaussian elimination over Q (Fraction) or F_p."""
    if not rows or not rows[0]:
        return 0
    if p is None:
        mat = [[Fraction(x) for x in row] for row in rows]
    else:
        mat = [[x % p for x in row] for row in rows]
    nrows, ncols = len(mat), len(mat[0])
    rank = 0
    row = 0
    for col in range(ncols):
        pivot = None
        for r in range(row, nrows):
            if mat[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        mat[row], mat[pivot] = mat[pivot], mat[row]
        inv = (Fraction(1) / mat[row][col]) if p is None \
            else pow(mat[row][col], -1, p)
        mat[row] = [(x * inv) if p is None else (x * inv) % p
                    for x in mat[row]]
        for r in range(nrows):
            if r != row and mat[r][col]:
                f = mat[r][col]
                if p is None:
                    mat[r] = [a - f * b for a, b in zip(mat[r], mat[row])]
                else:
                    mat[r] = [(a - f * b) % p
                              for a, b in zip(mat[r], mat[row])]
        row += 1
        rank += 1
        if row == nrows:
            break
    return rank


def dense_betti(d_in_rows, d_out_rows, ncols, p=None):
    """dim ker(d_out) - rank(d_in) for dense integer matrices whose
    columns index the middle degree (ncols of them)."""
    rank_out = dense_rank(d_out_rows, p) if d_out_rows else 0
    rank_in = dense_rank(d_in_rows, p) if d_in_rows else 0
    return (ncols - rank_out) - rank_in


def snf_by_hand(rows):
    """Brute-force integer row/column reduction to invariant factors.

    Independent of the package implementation: dense lists, naive
    pivoting, no transform tracking.
    """
    import math
    mat = [list(r) for r in rows]
    if not mat or not mat[0]:
        return ()
    nrows, ncols = len(mat), len(mat[0])
    factors = []
    t = 0
    while t < min(nrows, ncols):
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if mat[i][j] and (best is None
                                  or abs(mat[i][j]) < abs(mat[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i0, j0 = best
        mat[t], mat[i0] = mat[i0], mat[t]
        for row in mat:
            row[t], row[j0] = row[j0], row[t]
        again = True
        while again:
            again = False
            for i in range(t + 1, nrows):
                if mat[i][t]:
                    q = mat[i][t] // mat[t][t]
                    mat[i] = [a - q * b for a, b in zip(mat[i], mat[t])]
                    if mat[i][t]:
                        mat[t], mat[i] = mat[i], mat[t]
                        again = True
            for j in range(t + 1, ncols):
                if mat[t][j]:
                    q = mat[t][j] // mat[t][t]
                    for row in mat:
                        row[j] -= q * row[t]
                    if mat[t][j]:
                        for row in mat:
                            row[t], row[j] = row[j], row[t]
                        again = True
        factors.append(abs(mat[t][t]))
        t += 1
    factors = [f for f in factors if f]
    # enforce divisibility
    changed = True
    while changed:
        changed = False
        for i in range(len(factors) - 1):
            a, b = factors[i], factors[i + 1]
            if b % a:
                g = math.gcd(a, b)
                factors[i], factors[i + 1] = g, a * b // g
                changed = True
    return tuple(factors)
