"""Exact sparse linear algebra over the rationals.

The differential blocks produced by the complex are sparse integer-ish
matrices (entries are small rationals, mostly 1 and 2), and all we ever
need from them is rank, kernel dimension, and occasionally an explicit
kernel basis for diagnostics.  Rank is computed by fraction-free
elimination on denominator-cleared integer rows: the pivot row is
cross-multiplied into the others and each result is re-normalized by
its content (gcd), so entries stay small and no floating point is ever
involved.  Pivots are chosen sparsity-first (fewest entries in the
pivot row, then fewest occupants of the pivot column, Markowitz style)
with deterministic tie-breaking, so repeated runs take identical paths.
"""

from fractions import Fraction
from math import gcd


class SparseExactMatrix:
    """Immutable coordinate-format matrix with exact rational entries.

    entries is a tuple of (row, col, Fraction) with no duplicates and
    no explicit zeros, sorted by (row, col).
    """

    __slots__ = ("n_rows", "n_cols", "entries")

    def __init__(self, n_rows, n_cols, entries):
        if n_rows < 0 or n_cols < 0:
            raise ValueError("negative matrix dimensions")
        seen = set()
        clean = []
        for r, c, q in entries:
            if not (0 <= r < n_rows and 0 <= c < n_cols):
                raise ValueError("entry (%r, %r) outside a %dx%d matrix" % (r, c, n_rows, n_cols))
            if (r, c) in seen:
                raise ValueError("duplicate entry at (%d, %d)" % (r, c))
            seen.add((r, c))
            q = Fraction(q)
            if q == 0:
                raise ValueError("explicit zero stored at (%d, %d)" % (r, c))
            clean.append((r, c, q))
        clean.sort(key=lambda e: (e[0], e[1]))
        object.__setattr__(self, "n_rows", n_rows)
        object.__setattr__(self, "n_cols", n_cols)
        object.__setattr__(self, "entries", tuple(clean))

    def __setattr__(self, name, value):
        raise AttributeError("SparseExactMatrix is immutable")

    @classmethod
    def from_dense(cls, rows, n_cols=None):
        """Build from a list of lists; zeros are dropped."""
        n_rows = len(rows)
        if n_cols is None:
            n_cols = len(rows[0]) if rows else 0
        entries = []
        for r, row in enumerate(rows):
            if len(row) != n_cols:
                raise ValueError("ragged rows")
            for c, q in enumerate(row):
                if q:
                    entries.append((r, c, Fraction(q)))
        return cls(n_rows, n_cols, entries)

    @classmethod
    def zero(cls, n_rows, n_cols):
        return cls(n_rows, n_cols, ())

    @property
    def nnz(self):
        return len(self.entries)

    def is_zero(self):
        return not self.entries

    def to_dense(self):
        rows = [[Fraction(0)] * self.n_cols for _ in range(self.n_rows)]
        for r, c, q in self.entries:
            rows[r][c] = q
        return rows

    def transpose(self):
        return SparseExactMatrix(
            self.n_cols, self.n_rows, [(c, r, q) for r, c, q in self.entries]
        )

    def __matmul__(self, other):
        """Matrix product self @ other (self applied after other)."""
        if self.n_cols != other.n_rows:
            raise ValueError(
                "shape mismatch: %dx%d @ %dx%d"
                % (self.n_rows, self.n_cols, other.n_rows, other.n_cols)
            )
        by_col = {}
        for r, c, q in self.entries:
            by_col.setdefault(c, []).append((r, q))
        acc = {}
        for k, c, a in other.entries:
            for r, b in by_col.get(k, ()):
                key = (r, c)
                acc[key] = acc.get(key, Fraction(0)) + b * a
        entries = [(r, c, q) for (r, c), q in acc.items() if q]
        return SparseExactMatrix(self.n_rows, other.n_cols, entries)

    def __eq__(self, other):
        if not isinstance(other, SparseExactMatrix):
            return NotImplemented
        return (
            self.n_rows == other.n_rows
            and self.n_cols == other.n_cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.n_rows, self.n_cols, self.entries))

    def __repr__(self):
        return "SparseExactMatrix(%d, %d, nnz=%d)" % (self.n_rows, self.n_cols, self.nnz)


def _integer_rows(A):
    """Rows of A as dicts col -> int, denominators cleared, content 1."""
    rows = {}
    for r, c, q in A.entries:
        rows.setdefault(r, {})[c] = q
    out = []
    for r in sorted(rows):
        row = rows[r]
        den = 1
        for q in row.values():
            den = den * q.denominator // gcd(den, q.denominator)
        ints = {c: int(q * den) for c, q in row.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        out.append({c: v // g for c, v in ints.items()})
    return out


def rank(A):
    """Rank of A, by fraction-free sparse Gaussian elimination."""
    live = _integer_rows(A)
    col_count = {}
    for row in live:
        for c in row:
            col_count[c] = col_count.get(c, 0) + 1
    rnk = 0
    while live:
        # Markowitz-flavored pivot: shortest row, then its least-used
        # column.  Ties break on position so the path is deterministic.
        pi = min(range(len(live)), key=lambda i: (len(live[i]), i))
        prow = live.pop(pi)
        pc = min(prow, key=lambda c: (col_count[c], c))
        p = prow[pc]
        rnk += 1
        for c in prow:
            col_count[c] -= 1
        nxt = []
        for row in live:
            a = row.get(pc)
            if a is None:
                nxt.append(row)
                continue
            for c in row:
                col_count[c] -= 1
            new = {}
            for c in set(row) | set(prow):
                v = p * row.get(c, 0) - a * prow.get(c, 0)
                if v:
                    new[c] = v
            if new:
                g = 0
                for v in new.values():
                    g = gcd(g, v)
                new = {c: v // g for c, v in new.items()}
                for c in new:
                    col_count[c] = col_count.get(c, 0) + 1
                nxt.append(new)
        live = nxt
    return rnk


def kernel_dim(A):
    """dim ker A = n_cols - rank A."""
    return A.n_cols - rank(A)


def kernel_basis(A):
    """Explicit kernel basis via dense reduced row echelon form.

    Returns a list of length-n_cols tuples of Fractions, one per free
    column in ascending column order.  Dense is fine here: this is a
    diagnostic used on small blocks, never on the hot path.
    """
    m = A.to_dense()
    n_rows, n_cols = A.n_rows, A.n_cols
    pivots = []
    r = 0
    for c in range(n_cols):
        pr = None
        for rr in range(r, n_rows):
            if m[rr][c]:
                pr = rr
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for rr in range(n_rows):
            if rr != r and m[rr][c]:
                f = m[rr][c]
                m[rr] = [a - f * b for a, b in zip(m[rr], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    pivot_set = set(pivots)
    basis = []
    for free in range(n_cols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * n_cols
        vec[free] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -m[i][free]
        basis.append(tuple(vec))
    return basis
