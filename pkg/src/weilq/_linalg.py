"""Tiny exact linear solver over the rationals.

Plain Gauss-Jordan elimination on Fraction matrices.  The systems solved in
this package are small (at most a few hundred rows and about a dozen
columns), so no pivot-size strategy is needed; what matters is exactness and
precise failure reporting.
"""

from __future__ import annotations

from fractions import Fraction


class SingularSystem(ValueError):
    """The coefficient matrix does not determine a unique solution."""


class InconsistentSystem(ValueError):
    """No solution: an eliminated row reduced to 0 = nonzero."""

    def __init__(self, row: int):
        super().__init__(f"inconsistent linear system (first bad row {row})")
        self.row = row


def solve_exact(rows, rhs):
    """Solve M x = b exactly; requires a unique solution.

    ``rows`` is a list of equal-length coefficient lists, ``rhs`` the right
    hand sides.  Raises InconsistentSystem when the equations contradict one
    another and SingularSystem when the solution is not unique.
    """
    m = len(rows)
    if m != len(rhs):
        raise ValueError("matrix and right-hand side sizes differ")
    if m == 0:
        raise SingularSystem("empty system")
    ncols = len(rows[0])
    aug = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    where = []  # pivot row of each pivot column, in order
    prow = 0
    for col in range(ncols):
        pivot = None
        for r in range(prow, m):
            if aug[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        aug[prow], aug[pivot] = aug[pivot], aug[prow]
        inv = 1 / aug[prow][col]
        aug[prow] = [v * inv for v in aug[prow]]
        for r in range(m):
            if r != prow and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[prow])]
        where.append(col)
        prow += 1
        if prow == m:
            break
    for r in range(prow, m):
        if aug[r][ncols]:
            raise InconsistentSystem(r)
    if len(where) < ncols:
        raise SingularSystem("underdetermined system")
    sol = [Fraction(0)] * ncols
    for r, col in enumerate(where):
        sol[col] = aug[r][ncols]
    return sol
