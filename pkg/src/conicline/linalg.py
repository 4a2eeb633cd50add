"""Dense exact linear algebra over Q: row reduction, rank, kernel bases.

The public API works on ``QMatrix`` values with rational entries.  The core
is Bareiss-style fraction-free elimination on integer rows: every row is
scaled to coprime integers on entry, and the single-step exact division
keeps intermediate entries at minor size, which is what makes
arbitrary-precision arithmetic tractable at the sizes this package meets
(a few hundred rows and columns).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class QMatrix:
    """Immutable dense matrix of exact rationals, row-major."""

    __slots__ = ("nrows", "ncols", "data")

    def __init__(self, rows, ncols=None):
        rows = [tuple(r) for r in rows]
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged rows")
            if ncols is not None and ncols != width:
                raise ValueError("ncols disagrees with row width")
            ncols = width
        elif ncols is None:
            raise ValueError("empty matrix needs an explicit column count")
        self.nrows = len(rows)
        self.ncols = ncols
        self.data = tuple(rows)

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, nrows, ncols):
        return cls([[0] * ncols for _ in range(nrows)], ncols=ncols)

    def row(self, i):
        return self.data[i]

    def entry(self, i, j):
        return self.data[i][j]

    @property
    def entries(self):
        """Row-major flat tuple."""
        return tuple(v for row in self.data for v in row)

    def __eq__(self, other):
        return (
            isinstance(other, QMatrix)
            and self.ncols == other.ncols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.ncols, self.data))

    def __repr__(self):
        return f"QMatrix({self.nrows}x{self.ncols})"

    def mul_vector(self, v):
        if len(v) != self.ncols:
            raise ValueError("dimension mismatch")
        return [sum(r[j] * v[j] for j in range(self.ncols)) for r in self.data]


# ---------------------------------------------------------------------------
# integer core
# ---------------------------------------------------------------------------

def _to_int_row(row):
    """Scale a rational row to coprime integers (sign preserved)."""
    den = 1
    for v in row:
        d = v.denominator
        if d != 1:
            den = den * d // gcd(den, d)
    ints = [int(v * den) for v in row] if den != 1 else [int(v) for v in row]
    g = 0
    for v in ints:
        if v:
            g = gcd(g, v)
            if g == 1:
                return ints
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def _reduce_content(row):
    g = 0
    for v in row:
        if v:
            g = gcd(g, v)
            if g == 1:
                return row
    if g > 1:
        return [v // g for v in row]
    return row


def _bareiss_forward(rows, ncols):
    """In-place fraction-free forward elimination (Bareiss single-step).

    ``rows`` must hold integer entries.  Returns the pivot columns in order;
    on return ``rows[k]`` carries the pivot of ``pivot_cols[k]`` for
    k < rank, with zeros below every pivot.  Pivot rows are chosen by
    smallest |entry| (ties by position) to slow entry growth; the choice
    cannot affect ranks or reduced echelon forms, and the scan order is
    fixed, so the routine is deterministic.
    """
    nrows = len(rows)
    alive = [any(r) for r in rows]
    pivot_cols = []
    piv_r = 0
    prev = 1
    for col in range(ncols):
        best = -1
        best_mag = None
        for i in range(piv_r, nrows):
            if not alive[i]:
                continue
            v = rows[i][col]
            if v:
                mag = -v if v < 0 else v
                if best_mag is None or mag < best_mag:
                    best, best_mag = i, mag
                    if mag == 1:
                        break
        if best < 0:
            continue
        if best != piv_r:
            rows[piv_r], rows[best] = rows[best], rows[piv_r]
            alive[piv_r], alive[best] = alive[best], alive[piv_r]
        piv = rows[piv_r]
        p = piv[col]
        for i in range(piv_r + 1, nrows):
            if not alive[i]:
                continue
            cur = rows[i]
            v = cur[col]
            if v:
                if prev == 1:
                    new = [p * cj - v * pj for cj, pj in zip(cur, piv)]
                else:
                    new = [(p * cj - v * pj) // prev for cj, pj in zip(cur, piv)]
            elif p == prev:
                continue
            else:
                new = [p * cj // prev for cj in cur]
            rows[i] = new
            if not any(new):
                alive[i] = False
        prev = p
        pivot_cols.append(col)
        piv_r += 1
        if piv_r == nrows:
            break
    return pivot_cols


def int_rank(rows, ncols) -> int:
    """Rank of a matrix given as rows of integers (or rationals)."""
    work = []
    for r in rows:
        ir = _to_int_row(r)
        if any(ir):
            work.append(ir)
    return len(_bareiss_forward(work, ncols))


def _rref_int(rows, ncols):
    """Reduced row echelon form (unique; pivot entries 1).

    Input rows may be rational; output is (rref_rows, pivot_cols) with
    Fraction entries, pivot rows only.
    """
    work = []
    for r in rows:
        ir = _to_int_row(r)
        if any(ir):
            work.append(ir)
    pivot_cols = _bareiss_forward(work, ncols)
    rank = len(pivot_cols)
    reduced = []
    for k in range(rank - 1, -1, -1):
        col = pivot_cols[k]
        row = [Fraction(v) for v in work[k]]
        inv = row[col]
        row = [v / inv for v in row]
        for below, bcol in reduced:
            factor = row[bcol]
            if factor:
                row = [v - factor * w for v, w in zip(row, below)]
        reduced.append((row, col))
    reduced.reverse()
    return [r for r, _ in reduced], pivot_cols


def row_reduce(A: QMatrix):
    """Reduced row echelon form of A.

    Returns (R, rank, pivot_cols); R has A's shape, pivots are 1 and are the
    only nonzero entries in their columns.  Deterministic: identical input
    gives identical output.
    """
    rref_rows, pivot_cols = _rref_int(A.data, A.ncols)
    rank = len(pivot_cols)
    zero = [Fraction(0)] * A.ncols
    full = rref_rows + [list(zero) for _ in range(A.nrows - rank)]
    return QMatrix(full, ncols=A.ncols), rank, tuple(pivot_cols)


def kernel_basis(A: QMatrix):
    """Canonical basis of the right null space of A.

    Derived from the RREF: each free column (in increasing order) yields one
    vector carrying 1 in that slot.  Size equals ncols - rank, and A.v = 0
    exactly for every returned v.
    """
    rref_rows, pivot_cols = _rref_int(A.data, A.ncols)
    return kernel_from_rref(rref_rows, pivot_cols, A.ncols)


def kernel_from_rref(rref_rows, pivot_cols, ncols):
    pivot_set = set(pivot_cols)
    free_cols = [j for j in range(ncols) if j not in pivot_set]
    basis = []
    for fc in free_cols:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in zip(rref_rows, pivot_cols):
            if row[fc]:
                v[pc] = -Fraction(row[fc])
        basis.append(v)
    return basis


def rank(A: QMatrix) -> int:
    return int_rank(A.data, A.ncols)


def solve_exact(A: QMatrix, b):
    """One exact solution of A.x = b, or None if inconsistent.

    Free variables are set to zero; meant for small systems (minimal
    polynomials, conic centers).
    """
    rows = [list(r) + [bv] for r, bv in zip(A.data, b)]
    rref_rows, pivot_cols = _rref_int(rows, A.ncols + 1)
    if A.ncols in pivot_cols:
        return None
    x = [Fraction(0)] * A.ncols
    for row, pc in zip(rref_rows, pivot_cols):
        x[pc] = Fraction(row[-1])
    return x


class EchelonAccumulator:
    """Incremental row space: feed rows, learn which ones are independent.

    Used for canonical completion when choosing new syzygy generators: seed
    with the rows of the already-spanned space, then offer candidate vectors
    in canonical order.  Deterministic.
    """

    __slots__ = ("ncols", "_rows", "_lead")

    def __init__(self, ncols, seed_rows=()):
        self.ncols = ncols
        self._rows = []
        self._lead = []
        seed = []
        for r in seed_rows:
            ir = _to_int_row(r)
            if any(ir):
                seed.append(ir)
        for col in _bareiss_forward(seed, ncols):
            pass
        for row in seed:
            lead = next((j for j, v in enumerate(row) if v), -1)
            if lead >= 0:
                self._insert(_reduce_content(row), lead)

    @property
    def rank(self):
        return len(self._rows)

    def _insert(self, row, lead):
        pos = 0
        while pos < len(self._lead) and self._lead[pos] < lead:
            pos += 1
        self._rows.insert(pos, row)
        self._lead.insert(pos, lead)

    def add(self, row) -> bool:
        """Reduce ``row`` against the accumulated space; if a nonzero residue
        remains, absorb it and return True (the row was independent)."""
        cur = _to_int_row(row)
        if not any(cur):
            return False
        for lead, stored in zip(list(self._lead), list(self._rows)):
            v = cur[lead]
            if v:
                p = stored[lead]
                g = gcd(p, v)
                a, b = p // g, v // g
                cur = _reduce_content([a * cj - b * sj for cj, sj in zip(cur, stored)])
        lead = next((j for j, v in enumerate(cur) if v), -1)
        if lead < 0:
            return False
        self._insert(cur, lead)
        return True
