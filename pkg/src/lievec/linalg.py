"""Exact linear algebra over the rationals.

Vectors are sparse ``dict`` objects mapping comparable keys to nonzero
rationals. :class:`Echelon` maintains a reduced row echelon basis
incrementally and remembers how each row was assembled from the inserted
vectors, which gives span membership, coordinates and kernels in one pass.
Dense helpers work on lists of lists.
"""

from ._rational import ONE, ZERO, Q


def vadd(a, b, scale=ONE):
    """Return ``a + scale*b`` as a new sparse vector."""
    out = dict(a)
    if not scale:
        return out
    for k, v in b.items():
        s = out.get(k, ZERO) + scale * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def vscale(a, s):
    if not s:
        return {}
    return {k: v * s for k, v in a.items()}


def _axpy_inplace(target, vec, s):
    for k, v in vec.items():
        t = target.get(k, ZERO) + s * v
        if t:
            target[k] = t
        else:
            del target[k]


class Echelon:
    """Incremental reduced row echelon form of a set of sparse vectors.

    Every stored row is ``sum(combo[i] * inserted[i])`` where ``inserted``
    are the vectors passed to :meth:`insert` in order; ``combo`` is kept as a
    sparse dict on insertion indices.
    """

    def __init__(self, track=True):
        self.rows = {}  # pivot key -> (row, combo)
        self.track = track
        self.count = 0  # number of inserted vectors (accepted or not)
        self.accepted = []  # insertion indices that increased the rank

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, vec):
        """Return ``(remainder, combo)`` with ``vec = remainder + sum(combo[i]*inserted[i])``.

        ``remainder`` has no entries on pivot keys; it is empty iff ``vec`` is
        in the span.
        """
        rem = dict(vec)
        combo = {}
        for p in [k for k in rem if k in self.rows]:
            c = rem.get(p)
            if not c:
                continue
            row, rc = self.rows[p]
            _axpy_inplace(rem, row, -c)
            if self.track:
                _axpy_inplace(combo, rc, c)
        return rem, combo

    def contains(self, vec):
        return not self.reduce(vec)[0]

    def insert(self, vec):
        """Insert ``vec``; return True iff the rank increased."""
        idx = self.count
        self.count += 1
        rem, combo = self.reduce(vec)
        if not rem:
            return False
        combo = {i: -c for i, c in combo.items()}
        combo[idx] = combo.get(idx, ZERO) + ONE
        pivot = min(rem)
        inv = ONE / rem[pivot]
        row = {k: v * inv for k, v in rem.items()}
        combo = {k: v * inv for k, v in combo.items()} if self.track else {}
        for p, (orow, ocombo) in list(self.rows.items()):
            c = orow.get(pivot)
            if c:
                orow = dict(orow)
                _axpy_inplace(orow, row, -c)
                if self.track:
                    ocombo = dict(ocombo)
                    _axpy_inplace(ocombo, combo, -c)
                self.rows[p] = (orow, ocombo)
        self.rows[pivot] = (row, combo)
        self.accepted.append(idx)
        return True

    def coordinates(self, vec):
        """Coordinates of ``vec`` on the accepted inserted vectors, or None."""
        rem, combo = self.reduce(vec)
        if rem:
            return None
        return combo

    def basis(self):
        """Reduced rows sorted by pivot."""
        return [self.rows[p][0] for p in sorted(self.rows)]


def span_reduce(vectors):
    """Indices of a maximal independent subsequence, earliest wins."""
    ech = Echelon(track=False)
    keep = []
    for i, v in enumerate(vectors):
        if ech.insert(v):
            keep.append(i)
    return keep


def rank(vectors):
    ech = Echelon(track=False)
    for v in vectors:
        ech.insert(v)
    return ech.rank


def left_kernel(vectors):
    """Basis of ``{c : sum(c[i]*vectors[i]) = 0}`` as dense lists."""
    ech = Echelon(track=True)
    kernel = []
    m = len(vectors)
    for i, v in enumerate(vectors):
        rem, combo = ech.reduce(v)
        if rem:
            ech.insert(v)
        else:
            c = [ZERO] * m
            for j, val in combo.items():
                c[j] = -val
            c[i] = ONE
            kernel.append(c)
        if ech.count <= i:
            ech.count = i + 1
    return kernel


def rows_to_sparse(matrix):
    return [{j: Q(x) for j, x in enumerate(row) if x} for row in matrix]


def nullspace(matrix, ncols=None):
    """Right kernel of a dense matrix, as a list of dense vectors."""
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    cols = [{i: Q(matrix[i][j]) for i in range(len(matrix)) if matrix[i][j]} for j in range(ncols)]
    return left_kernel(cols)


def matmul(a, b):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = [[ZERO] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            x = ai[t]
            if x:
                bt = b[t]
                for j in range(m):
                    if bt[j]:
                        oi[j] += x * bt[j]
    return out


def identity(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def inverse(matrix):
    """Exact inverse by Gauss-Jordan; None when singular."""
    n = len(matrix)
    a = [[Q(x) for x in row] + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = ONE / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def det(matrix):
    n = len(matrix)
    a = [[Q(x) for x in row] for row in matrix]
    d = ONE
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return ZERO
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            d = -d
        d *= a[col][col]
        inv = ONE / a[col][col]
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return d
