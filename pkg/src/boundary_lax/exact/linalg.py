"""Exact linear algebra over Fraction (small dense systems)."""

from __future__ import annotations

from fractions import Fraction


def rref(rows):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    a = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def rank(vectors):
    if not vectors:
        return 0
    return len(rref(vectors)[1])


def solve_in_span(vectors, target):
    """Coefficients c with sum c_i vectors_i = target, or None if outside the span.

    ``vectors`` must be linearly independent.
    """
    n = len(vectors)
    m = len(target)
    aug = [[vectors[j][i] for j in range(n)] + [target[i]] for i in range(m)]
    red, pivots = rref(aug)
    if n in pivots:
        return None
    coeffs = [Fraction(0)] * n
    for row, c in zip(red, pivots):
        coeffs[c] = row[n]
    return coeffs


def inverse(matrix):
    n = len(matrix)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(matrix)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in red[:n]]
