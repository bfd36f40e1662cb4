"""Exact integer/rational matrix utilities: HNF, LLL, solving.

Matrices are lists of lists (row-major).  Sizes here are tiny (n <= 4
columns, possibly many generators), so clarity beats asymptotics.
"""

from __future__ import annotations

from fractions import Fraction


def mat_mul(A, B):
    n, m, k = len(A), len(B[0]), len(B)
    return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(m)] for i in range(n)]


def mat_vec(A, v):
    return [sum(A[i][j] * v[j] for j in range(len(v))) for i in range(len(A))]


def mat_transpose(A):
    return [list(col) for col in zip(*A)]


def mat_identity(n, one=1):
    return [[one if i == j else 0 * one for j in range(n)] for i in range(n)]


def mat_det(A):
    """Exact determinant by fraction-free style Gaussian elimination."""
    n = len(A)
    M = [[Fraction(x) for x in row] for row in A]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = -det
        det *= M[col][col]
        inv = 1 / M[col][col]
        for r in range(col + 1, n):
            f = M[r][col] * inv
            if f:
                for c in range(col, n):
                    M[r][c] -= f * M[col][c]
    return det


def mat_inverse(A):
    """Exact inverse over Q."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return [row[n:] for row in M]


def solve_exact(A, b):
    """Solve A x = b exactly over Q (A square nonsingular)."""
    return mat_vec(mat_inverse(A), [Fraction(x) for x in b])


def hnf_columns(cols, n: int):
    """Column-style Hermite normal form of the module spanned by `cols`.

    `cols` is a list of integer column vectors of length n whose span has
    full rank n.  Returns an upper-triangular n x n matrix H (row-major)
    with positive diagonal and entries right of the diagonal reduced modulo
    the diagonal: 0 <= H[i][j] < H[i][i] for j > i.  The columns of H span
    the same Z-module.
    """
    work = [list(map(int, c)) for c in cols]
    result = [None] * n
    # eliminate from the bottom row upward
    for row in range(n - 1, -1, -1):
        # gcd-combine all columns with nonzero entry in this row
        live = [c for c in work if any(c[r] != 0 for r in range(row + 1))]
        cand = [c for c in live if c[row] != 0]
        if not cand:
            raise ValueError("columns do not span full rank")
        while len(cand) > 1:
            cand.sort(key=lambda c: abs(c[row]))
            a, b = cand[0], cand[1]
            q = b[row] // a[row]
            for r in range(row + 1):
                b[r] -= q * a[r]
            cand = [c for c in cand if c[row] != 0]
        piv = cand[0]
        if piv[row] < 0:
            for r in range(row + 1):
                piv[r] = -piv[r]
        result[row] = piv
        work = [c for c in work if c is not piv]
        # clear this row in the remaining columns
        for c in work:
            if c[row] != 0:
                q = c[row] // piv[row]
                for r in range(row + 1):
                    c[r] -= q * piv[r]
    H = [[result[j][i] for j in range(n)] for i in range(n)]
    # reduce above-diagonal entries into [0, diag)
    for i in range(n):
        for j in range(i + 1, n):
            q = H[i][j] // H[i][i]
            if q:
                for r in range(i + 1):
                    H[r][j] -= q * H[r][i]
    return H


def hnf_solve_membership(H, v):
    """Integer coordinates c with H c = v, or None if v is outside the span.

    H is upper triangular with positive diagonal (output of hnf_columns);
    v is an integer vector.
    """
    n = len(H)
    v = list(v)
    coeffs = [0] * n
    for i in range(n - 1, -1, -1):
        if v[i] % H[i][i] != 0:
            return None
        c = v[i] // H[i][i]
        coeffs[i] = c
        if c:
            for r in range(i + 1):
                v[r] -= c * H[r][i]
    if any(x != 0 for x in v):
        return None
    return coeffs


def lll_reduce(basis, gram=None, delta=Fraction(3, 4)):
    """Exact LLL over the rationals.

    `basis` is a list of integer coordinate vectors.  If `gram` is given it
    must be a symmetric positive-definite rational matrix defining the inner
    product <x, y> = x^T gram y; otherwise the standard dot product is used.
    Returns the reduced vectors (new integer coordinate rows).
    """
    b = [list(map(int, v)) for v in basis]
    n = len(b)

    def ip_frac(u, v):
        if gram is None:
            return Fraction(sum(Fraction(x) * Fraction(y) for x, y in zip(u, v)))
        return Fraction(
            sum(Fraction(u[i]) * gram[i][j] * Fraction(v[j]) for i in range(len(u)) for j in range(len(v)))
        )

    def gso_exact():
        star = []
        mu = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            vi = [Fraction(x) for x in b[i]]
            for j in range(i):
                denom = ip_frac(star[j], star[j])
                mu[i][j] = ip_frac(b[i], star[j]) / denom
                vi = [a - mu[i][j] * c for a, c in zip(vi, star[j])]
            star.append(vi)
        return star, mu

    star, mu = gso_exact()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            if abs(mu[k][j]) > Fraction(1, 2):
                r = round(mu[k][j])
                b[k] = [x - r * y for x, y in zip(b[k], b[j])]
                star, mu = gso_exact()
        if ip_frac(star[k], star[k]) >= (delta - mu[k][k - 1] ** 2) * ip_frac(star[k - 1], star[k - 1]):
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            star, mu = gso_exact()
            k = max(k - 1, 1)
    return b
