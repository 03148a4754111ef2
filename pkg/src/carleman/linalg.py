"""Exact linear algebra used by the graded solvers.

``SpanTracker`` keeps an echelon basis of sparse rational vectors together
with the combination of original columns each row came from, which is all
the generator selection and the degree-wise solvers need.  The Bareiss
routines work over any ring with exact division (here: Polynomial).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Hashable, Mapping, Sequence

from .polynomials import Polynomial, divide_exact

Vector = dict[Hashable, Fraction]


class SpanTracker:
    """Incremental echelon form over Q with provenance.

    Rows are pivoted on their largest key under ``order``.  A vector is in the
    span iff repeated elimination of its largest key empties it.
    """

    def __init__(self, order: Callable[[Hashable], object] = lambda k: k):
        self.order = order
        self.rows: dict[Hashable, tuple[Vector, Vector]] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def _reduce(self, vec: Mapping) -> tuple[Vector, Vector]:
        cur = {k: Fraction(v) for k, v in vec.items() if v}
        used: Vector = {}
        while cur:
            piv = max(cur, key=self.order)
            row = self.rows.get(piv)
            if row is None:
                break
            rvec, rcombo = row
            c = cur[piv] / rvec[piv]
            for k, v in rvec.items():
                s = cur.get(k, 0) - c * v
                if s:
                    cur[k] = s
                else:
                    cur.pop(k, None)
            for lab, v in rcombo.items():
                s = used.get(lab, 0) + c * v
                if s:
                    used[lab] = s
                else:
                    used.pop(lab, None)
        return cur, used

    def express(self, vec: Mapping) -> Vector | None:
        """Coefficients over the added labels reproducing ``vec``, or None."""
        cur, used = self._reduce(vec)
        return None if cur else used

    def contains(self, vec: Mapping) -> bool:
        return self.express(vec) is not None

    def add(self, vec: Mapping, label: Hashable) -> bool:
        """Add ``vec`` under ``label``; return False if it was already in the span."""
        cur, used = self._reduce(vec)
        if not cur:
            return False
        combo = {lab: -v for lab, v in used.items()}
        combo[label] = combo.get(label, 0) + 1
        piv = max(cur, key=self.order)
        self.rows[piv] = (cur, combo)
        return True


def rank(vectors: Sequence[Mapping], order: Callable = lambda k: k) -> int:
    tracker = SpanTracker(order)
    return sum(tracker.add(v, i) for i, v in enumerate(vectors))


def _pivot_row(matrix, k: int, n: int) -> int | None:
    best = None
    for r in range(k, n):
        entry = matrix[r][k]
        if entry:
            if best is None or len(entry) < len(matrix[best][k]):
                best = r
    return best


def bareiss_determinant(matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Fraction-free determinant of a square polynomial matrix."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    nv = matrix[0][0].nvars
    m = [list(row) for row in matrix]
    sign = 1
    prev = Polynomial.constant(nv, 1)
    for k in range(n - 1):
        p = _pivot_row(m, k, n)
        if p is None:
            return Polynomial.zero(nv)
        if p != k:
            m[k], m[p] = m[p], m[k]
            sign = -sign
        akk = m[k][k]
        for i in range(k + 1, n):
            aik = m[i][k]
            for j in range(k + 1, n):
                num = akk * m[i][j] - aik * m[k][j]
                m[i][j] = divide_exact(num, prev) if num else num
            m[i][k] = Polynomial.zero(nv)
        prev = akk
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def bareiss_adjugate(matrix: Sequence[Sequence[Polynomial]]) -> tuple[Polynomial, list[list[Polynomial]]]:
    """Return ``(det, adj)`` with ``matrix @ adj == det * I``.

    Fraction-free Gauss-Jordan on ``[A | I]``: every division is exact, the
    diagonal ends at ``±det`` and the right block at ``±det * A^{-1}``.
    """
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    nv = matrix[0][0].nvars
    one = Polynomial.constant(nv, 1)
    zero = Polynomial.zero(nv)
    m = [list(row) + [one if i == j else zero for j in range(n)]
         for i, row in enumerate(matrix)]
    sign = 1
    prev = one
    width = 2 * n
    for k in range(n):
        p = _pivot_row(m, k, n)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        if p != k:
            m[k], m[p] = m[p], m[k]
            sign = -sign
        rowk = m[k]
        akk = rowk[k]
        for i in range(n):
            if i == k:
                continue
            row = m[i]
            aik = row[k]
            for j in range(width):
                if j == k:
                    continue
                if aik:
                    num = akk * row[j] - aik * rowk[j]
                else:
                    num = akk * row[j] if row[j] else row[j]
                row[j] = divide_exact(num, prev) if num else num
            row[k] = zero
        prev = akk
    d = m[n - 1][n - 1]
    adj = [row[n:] for row in m]
    if sign < 0:
        d = -d
        adj = [[-x for x in row] for row in adj]
    return d, adj


def rational_determinant(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    n = len(matrix)
    m = [[Fraction(x) for x in row] for row in matrix]
    det = Fraction(1)
    for k in range(n):
        p = next((r for r in range(k, n) if m[r][k]), None)
        if p is None:
            return Fraction(0)
        if p != k:
            m[k], m[p] = m[p], m[k]
            det = -det
        det *= m[k][k]
        for i in range(k + 1, n):
            c = m[i][k] / m[k][k]
            if c:
                for j in range(k, n):
                    m[i][j] -= c * m[k][j]
    return det


def mat_mul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0))
             for j in range(len(b[0]))] for i in range(len(a))]


def mat_inverse(a) -> list[list[Fraction]]:
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for k in range(n):
        p = next((r for r in range(k, n) if m[r][k]), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        m[k], m[p] = m[p], m[k]
        piv = m[k][k]
        m[k] = [x / piv for x in m[k]]
        for i in range(n):
            if i != k and m[i][k]:
                c = m[i][k]
                m[i] = [x - c * y for x, y in zip(m[i], m[k])]
    return [row[n:] for row in m]


def transpose(a):
    return [list(r) for r in zip(*a)]
