"""Small exact-arithmetic matrix kit (Python ints and fractions.Fraction).

Matrices are plain lists of row lists.  Everything here is exact: no
floating point enters, so equality checks are meaningful.
"""

from fractions import Fraction


def identity(m):
    return [[1 if i == j else 0 for j in range(m)] for i in range(m)]


def zeros(rows, cols):
    return [[0] * cols for _ in range(rows)]


def copy(A):
    return [row[:] for row in A]


def transpose(A):
    return [list(col) for col in zip(*A)]


def matmul(A, B):
    rows, inner, cols = len(A), len(B), len(B[0])
    if len(A[0]) != inner:
        raise ValueError("matmul shape mismatch")
    Bt = transpose(B)
    return [[sum(A[i][k] * Bt[j][k] for k in range(inner)) for j in range(cols)]
            for i in range(rows)]


def matvec(A, v):
    if len(A[0]) != len(v):
        raise ValueError("matvec shape mismatch")
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def scale(A, c):
    return [[c * x for x in row] for row in A]


def add(A, B):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def sub(A, B):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def neg(A):
    return [[-x for x in row] for row in A]


def mat_equal(A, B):
    if len(A) != len(B) or len(A[0]) != len(B[0]):
        return False
    return all(x == y for ra, rb in zip(A, B) for x, y in zip(ra, rb))


def is_square(A):
    return all(len(row) == len(A) for row in A)


def is_integral(A):
    for row in A:
        for x in row:
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    return False
            elif not isinstance(x, int):
                return False
    return True


def to_int(A):
    """Convert an integral Fraction matrix to plain ints."""
    out = []
    for row in A:
        new = []
        for x in row:
            f = Fraction(x)
            if f.denominator != 1:
                raise ValueError("matrix is not integral")
            new.append(int(f))
        out.append(new)
    return out


def to_fraction(A):
    return [[Fraction(x) for x in row] for row in A]


def det(A):
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    n = len(A)
    M = to_fraction(A)
    sign = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if M[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            M[col], M[pivot] = M[pivot], M[col]
            sign = -sign
        p = M[col][col]
        for r in range(col + 1, n):
            if M[r][col] != 0:
                f = M[r][col] / p
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    result = Fraction(sign)
    for i in range(n):
        result *= M[i][i]
    return result


def inverse(A):
    """Exact inverse over the rationals.  Raises ValueError if singular."""
    n = len(A)
    M = to_fraction(A)
    Inv = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if M[r][col] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        if pivot != col:
            M[col], M[pivot] = M[pivot], M[col]
            Inv[col], Inv[pivot] = Inv[pivot], Inv[col]
        p = M[col][col]
        M[col] = [x / p for x in M[col]]
        Inv[col] = [x / p for x in Inv[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
                Inv[r] = [x - f * y for x, y in zip(Inv[r], Inv[col])]
    return Inv
