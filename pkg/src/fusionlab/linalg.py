"""Exact rational linear algebra.

Sparse vectors are plain dicts ``{index: coefficient}``; dense work is handed
to FLINT's ``fmpq_mat``, whose row reduction is exact.
"""

from __future__ import annotations

from flint import fmpq, fmpq_mat


def clean(vec):
    return {i: c for i, c in vec.items() if c != 0}


def axpy(acc, scale, vec):
    """acc += scale * vec, in place, dropping zeros."""
    for i, c in vec.items():
        v = acc.get(i, 0) + scale * c
        if v == 0:
            acc.pop(i, None)
        else:
            acc[i] = v
    return acc


class SparseMatrix:
    """Column-major sparse matrix with exact entries.

    ``cols[j]`` is the image of the j-th basis vector as a sparse vector.
    """

    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows, ncols, cols=None):
        self.nrows = nrows
        self.ncols = ncols
        self.cols = {}
        if cols:
            for j, col in cols.items():
                col = clean(col)
                if col:
                    self.cols[j] = col

    @classmethod
    def zero(cls, n, m=None):
        return cls(n, n if m is None else m)

    @classmethod
    def identity(cls, n):
        return cls(n, n, {i: {i: fmpq(1)} for i in range(n)})

    @classmethod
    def diagonal(cls, values):
        n = len(values)
        return cls(n, n, {i: {i: fmpq(v)} for i, v in enumerate(values) if v != 0})

    def nnz(self):
        return sum(len(c) for c in self.cols.values())

    def column(self, j):
        return self.cols.get(j, {})

    def apply(self, vec):
        out = {}
        for j, c in vec.items():
            col = self.cols.get(j)
            if col:
                axpy(out, c, col)
        return out

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = SparseMatrix(self.nrows, other.ncols)
        for j, col in other.cols.items():
            img = self.apply(col)
            if img:
                out.cols[j] = img
        return out

    def _combine(self, other, sign):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        out = SparseMatrix(self.nrows, self.ncols)
        for j in set(self.cols) | set(other.cols):
            col = dict(self.cols.get(j, {}))
            axpy(col, sign, other.cols.get(j, {}))
            if col:
                out.cols[j] = col
        return out

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scale(self, c):
        if c == 0:
            return SparseMatrix(self.nrows, self.ncols)
        return SparseMatrix(self.nrows, self.ncols,
                            {j: {i: c * v for i, v in col.items()} for j, col in self.cols.items()})

    def is_zero(self):
        return not self.cols

    def __eq__(self, other):
        return isinstance(other, SparseMatrix) and (self - other).is_zero()

    def entry(self, i, j):
        return self.cols.get(j, {}).get(i, fmpq(0))

    def block(self, rows, cols):
        """Dense fmpq_mat of the submatrix on the given row and column indices."""
        pos = {r: a for a, r in enumerate(rows)}
        out = fmpq_mat(len(rows), len(cols))
        for b, j in enumerate(cols):
            for i, c in self.cols.get(j, {}).items():
                a = pos.get(i)
                if a is not None:
                    out[a, b] = c
        return out

    def to_rows(self):
        """Dense list of rows (for small matrices, printing and tests)."""
        rows = [[fmpq(0)] * self.ncols for _ in range(self.nrows)]
        for j, col in self.cols.items():
            for i, c in col.items():
                rows[i][j] = c
        return rows

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


def dense_from_vectors(vectors, n):
    """Rows of the returned matrix are the given sparse vectors."""
    A = fmpq_mat(len(vectors), n)
    for i, v in enumerate(vectors):
        for j, c in v.items():
            A[i, j] = c
    return A


def dense_columns(vectors, n):
    """Columns of the returned matrix are the given sparse vectors."""
    A = fmpq_mat(n, len(vectors))
    for j, v in enumerate(vectors):
        for i, c in v.items():
            A[i, j] = c
    return A


def column_vectors(A):
    """Sparse vectors from the columns of a dense matrix."""
    n, m = A.nrows(), A.ncols()
    ent = A.entries()
    out = [dict() for _ in range(m)]
    for i in range(n):
        base = i * m
        for j in range(m):
            c = ent[base + j]
            if c != 0:
                out[j][i] = c
    return out


def row_vectors(A):
    n, m = A.nrows(), A.ncols()
    ent = A.entries()
    out = []
    for i in range(n):
        base = i * m
        out.append({j: ent[base + j] for j in range(m) if ent[base + j] != 0})
    return out


def rref(A):
    """Reduced row echelon form of a dense matrix: (rows, pivot columns).

    ``rows`` is an fmpq_mat holding only the nonzero rows.
    """
    if A.nrows() == 0 or A.ncols() == 0:
        return fmpq_mat(0, A.ncols()), []
    m = A.ncols()
    R, rank = A.rref()
    ent = R.entries()
    pivots = []
    for i in range(rank):
        base = i * m
        j = 0
        while ent[base + j] == 0:
            j += 1
        pivots.append(j)
    return fmpq_mat(rank, m, ent[: rank * m]), pivots


def rank(A):
    if A.nrows() == 0 or A.ncols() == 0:
        return 0
    return A.rank()


def rank_of_vectors(vectors, n):
    vectors = [v for v in vectors if v]
    if not vectors:
        return 0
    return rank(dense_from_vectors(vectors, n))


def selection(n, picks):
    """n x len(picks) matrix whose b-th column is the unit vector e_{picks[b]}."""
    S = fmpq_mat(n, len(picks))
    for b, i in enumerate(picks):
        S[i, b] = 1
    return S


def gather_columns(mats, picks, n, ents=None):
    """n x len(picks) matrix with columns ``mats[a][:, b]`` for (a, b) in picks."""
    if ents is None:
        ents = [A.entries() for A in mats]
    widths = [A.ncols() for A in mats]
    flat = []
    for i in range(n):
        flat.extend(ents[a][i * widths[a] + b] for a, b in picks)
    return fmpq_mat(n, len(picks), flat)


def vstack(mats):
    mats = [A for A in mats if A.nrows()]
    if len(mats) == 1:
        return mats[0]
    m = mats[0].ncols()
    ent = []
    for A in mats:
        ent.extend(A.entries())
    return fmpq_mat(len(ent) // m if m else 0, m, ent)


def hstack(mats, n):
    mats = [A for A in mats if A.ncols()]
    if not mats:
        return fmpq_mat(n, 0)
    if len(mats) == 1:
        return mats[0]
    return vstack([A.transpose() for A in mats]).transpose()


class EchelonBasis:
    """Row-reduced basis of a growing subspace of Q^n.

    Rows are kept in reduced echelon form, so membership tests and
    reductions are a single matrix product.
    """

    def __init__(self, n):
        self.n = n
        self.rows = fmpq_mat(0, n)
        self.pivots = []
        self._sel = None

    @property
    def dim(self):
        return len(self.pivots)

    def reduce(self, C):
        """Reduce the columns of C (an n x c matrix) modulo the subspace."""
        if not self.pivots or C.ncols() == 0:
            return C
        return C - self.rows.transpose() * (self._selector().transpose() * C)

    def _selector(self):
        if self._sel is None:
            self._sel = selection(self.n, self.pivots)
        return self._sel

    def reduce_vector(self, vec):
        out = dict(vec)
        for a, p in enumerate(self.pivots):
            c = out.get(p)
            if c:
                for j in range(self.n):
                    r = self.rows[a, j]
                    if r != 0:
                        v = out.get(j, 0) - c * r
                        if v == 0:
                            out.pop(j, None)
                        else:
                            out[j] = v
        return out

    def extend(self, C):
        """Add the columns of C to the subspace.

        Returns ``(selected, coeffs)``: the indices of columns that were
        independent modulo the previous subspace and of each other (greedy,
        left to right), and for every column its coordinates on the
        selected columns modulo the previous subspace, as a dict.
        """
        c = C.ncols()
        if c == 0:
            return [], []
        Rsd = self.reduce(C)
        R, piv = rref(Rsd)
        selected = list(piv)
        coeffs = []
        ent = R.entries()
        for b in range(c):
            coeffs.append({a: ent[a * c + b] for a in range(len(piv)) if ent[a * c + b] != 0})
        if selected:
            new = Rsd * selection(c, selected)
            N, npiv = rref(new.transpose())
            self._merge(N, npiv)
        return selected, coeffs

    def add_rows(self, vectors):
        """Add sparse vectors; returns the number of new dimensions."""
        vectors = [v for v in vectors if v]
        if not vectors:
            return 0
        before = self.dim
        C = dense_columns(vectors, self.n)
        Rsd = self.reduce(C)
        N, npiv = rref(Rsd.transpose())
        if npiv:
            self._merge(N, npiv)
        return self.dim - before

    def _merge(self, N, npiv):
        if self.pivots:
            old = self.rows - (self.rows * selection(self.n, npiv)) * N
            stacked = vstack([old, N])
        else:
            stacked = N
        piv = self.pivots + list(npiv)
        order = sorted(range(len(piv)), key=piv.__getitem__)
        self.rows = selection(len(piv), order).transpose() * stacked
        self.pivots = [piv[a] for a in order]
        self._sel = None

    def contains(self, vec):
        return not self.reduce_vector(vec)
