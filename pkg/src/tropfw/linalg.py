"""Tiny exact linear algebra: rank and unique-solution solves over Fraction."""

from fractions import Fraction

from .errors import ValidationError

_ZERO = Fraction(0)


def _eliminate(matrix):
    """Row-reduce in place; returns list of pivot column indices."""
    if not matrix:
        return []
    ncols = len(matrix[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(matrix)) if matrix[i][c] != 0), None)
        if pr is None:
            continue
        matrix[r], matrix[pr] = matrix[pr], matrix[r]
        inv = 1 / matrix[r][c]
        matrix[r] = [v * inv for v in matrix[r]]
        for i in range(len(matrix)):
            if i != r and matrix[i][c] != 0:
                f = matrix[i][c]
                matrix[i] = [a - f * b for a, b in zip(matrix[i], matrix[r])]
        pivots.append(c)
        r += 1
        if r == len(matrix):
            break
    return pivots


def rank(rows) -> int:
    """Rank of a list of coefficient rows."""
    matrix = [[Fraction(v) for v in row] for row in rows]
    return len(_eliminate(matrix))


def solve_unique(rows, rhs):
    """Solve a consistent system with a unique solution.

    Raises ValidationError if the system is inconsistent or underdetermined.
    """
    if not rows:
        raise ValidationError("empty system")
    n = len(rows[0])
    aug = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    pivots = _eliminate(aug)
    for row in aug[len(pivots):]:
        if row[-1] != 0:
            raise ValidationError("inconsistent linear system")
    if pivots and pivots[-1] == n:
        raise ValidationError("inconsistent linear system")
    if len(pivots) < n:
        raise ValidationError("underdetermined linear system")
    x = [_ZERO] * n
    for r, c in enumerate(pivots):
        x[c] = aug[r][-1]
    return x
