"""Exact linear algebra over the integers.

Matrices are dense, row-major lists of lists of Python ints, so everything
is arbitrary precision for free.  The column-vector convention is used
throughout the package: a matrix acts on coefficient vectors from the left.

The two normal forms here are classical:

* Smith: U * A * V = S with U, V unimodular and S diagonal, nonnegative,
  each diagonal entry dividing the next.
* Hermite (row style): U * A = H with U unimodular, H in row echelon form,
  pivots positive, entries above each pivot reduced into [0, pivot).

Pivots in the Smith reduction are chosen by minimal nonzero absolute value,
which keeps intermediate entries small in practice.
"""

from __future__ import annotations


def xgcd(a, b):
    """Extended gcd.  Return (g, x, y) with g = gcd(a, b) = a*x + b*y, g >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


class IntMatrix:
    """An immutable-by-convention integer matrix.

    Zero-column and zero-row matrices are allowed; they show up naturally as
    empty kernels and empty generator lists.
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data, cols=None):
        data = [list(row) for row in data]
        self.rows = len(data)
        if data:
            self.cols = len(data[0])
        else:
            self.cols = 0 if cols is None else cols
        for row in data:
            if len(row) != self.cols:
                raise ValueError("ragged rows")
            for x in row:
                if not isinstance(x, int):
                    raise TypeError("integer entries required")
        self.data = data

    @classmethod
    def zeros(cls, rows, cols):
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns, rows=None):
        """Build a matrix whose j-th column is columns[j]."""
        columns = [list(c) for c in columns]
        if columns:
            rows = len(columns[0])
        elif rows is None:
            raise ValueError("row count required for an empty column list")
        return cls([[c[i] for c in columns] for i in range(rows)], cols=len(columns))

    def copy(self):
        return IntMatrix(self.data, cols=self.cols)

    def __eq__(self, other):
        return (isinstance(other, IntMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)

    def __repr__(self):
        return "IntMatrix(%r)" % (self.data,)

    def __neg__(self):
        return IntMatrix([[-x for x in row] for row in self.data], cols=self.cols)

    def __add__(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")
        return IntMatrix([[x + y for x, y in zip(r, s)]
                          for r, s in zip(self.data, other.data)], cols=self.cols)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntMatrix([[x * other for x in row] for row in self.data],
                             cols=self.cols)
        if self.cols != other.rows:
            raise ValueError("shape mismatch: %dx%d * %dx%d"
                             % (self.rows, self.cols, other.rows, other.cols))
        bt = list(zip(*other.data)) if other.data else []
        out = []
        for arow in self.data:
            if bt:
                out.append([sum(x * y for x, y in zip(arow, bcol)) for bcol in bt])
            else:
                out.append([0] * other.cols if self.cols == 0 else [])
        # A (m x 0) times (0 x n) is the m x n zero matrix.
        if self.cols == 0:
            out = [[0] * other.cols for _ in range(self.rows)]
        return IntMatrix(out, cols=other.cols)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def mulvec(self, v):
        """Matrix times column vector, returned as a list."""
        v = list(v)
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return [sum(x * y for x, y in zip(row, v)) for row in self.data]

    def transpose(self):
        if self.rows == 0:
            return IntMatrix([[] for _ in range(self.cols)], cols=0)
        if self.cols == 0:
            return IntMatrix([], cols=self.rows)
        return IntMatrix([list(r) for r in zip(*self.data)], cols=self.rows)

    def column(self, j):
        return [row[j] for row in self.data]

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def is_zero(self):
        return all(x == 0 for row in self.data for x in row)


def vstack(mats):
    mats = list(mats)
    cols = mats[0].cols
    data = []
    for m in mats:
        if m.cols != cols:
            raise ValueError("column mismatch in vstack")
        data.extend(list(row) for row in m.data)
    return IntMatrix(data, cols=cols)


def hstack(mats):
    mats = list(mats)
    rows = mats[0].rows
    data = [[] for _ in range(rows)]
    for m in mats:
        if m.rows != rows:
            raise ValueError("row mismatch in hstack")
        for i in range(rows):
            data[i].extend(m.data[i])
    return IntMatrix(data, cols=sum(m.cols for m in mats))


class SmithDecomposition:
    """Triple U, S, V with U * A * V = S in Smith normal form."""

    __slots__ = ("U", "S", "V")

    def __init__(self, U, S, V):
        self.U = U
        self.S = S
        self.V = V

    def diagonal(self):
        n = min(self.S.rows, self.S.cols)
        return [self.S.data[i][i] for i in range(n)]

    def rank(self):
        return sum(1 for d in self.diagonal() if d != 0)


def _is_diagonal(mat):
    for i, row in enumerate(mat.data):
        for j, x in enumerate(row):
            if x and i != j:
                return False
    return True


def smith_normal_form(A):
    """Smith normal form with transforms.

    Returns a SmithDecomposition (U, S, V) with U*A*V = S, both transforms
    unimodular, S diagonal with nonnegative entries in a divisibility chain.

    Reduction alternates row and column Hermite passes.  Each pass keeps
    entries reduced modulo the pivots, which is what keeps coefficient
    growth in check; single-pivot elimination blows up already on modest
    kernel-basis matrices.  The diagonal is then repaired into a chain with
    exact 2x2 gcd/lcm transforms.
    """
    m, n = A.rows, A.cols
    S = A.copy()
    U = IntMatrix.identity(m)
    V = IntMatrix.identity(n)
    for _ in range(4 + 2 * max(m, n)):
        H, U1 = hermite_normal_form(S)
        S = H
        U = U1 * U
        if _is_diagonal(S):
            break
        Ht, U2 = hermite_normal_form(S.transpose())
        S = Ht.transpose()
        V = V * U2.transpose()
        if _is_diagonal(S):
            break
    else:
        raise RuntimeError("Smith reduction failed to converge")

    s = [list(row) for row in S.data]
    u = [list(row) for row in U.data]
    v = [list(row) for row in V.data]

    # Pack the nonzero diagonal entries into a prefix.  Hermite passes leave
    # an echelon structure, so this is normally a no-op, but it is cheap.
    t = 0
    for i in range(min(m, n)):
        if s[i][i]:
            if i != t:
                s[i], s[t] = s[t], s[i]
                u[i], u[t] = u[t], u[i]
                for row in s:
                    row[i], row[t] = row[t], row[i]
                for row in v:
                    row[i], row[t] = row[t], row[i]
            t += 1
    r = t
    for i in range(r):
        if s[i][i] < 0:
            s[i][i] = -s[i][i]
            u[i] = [-x for x in u[i]]

    # Repair divisibility with two-sided 2x2 transforms:
    # P [a 0; 0 b] Q = [g 0; 0 ab/g] for P = [x y; -b/g a/g],
    # Q = [1 -y*b/g; 1 x*a/g] where x*a + y*b = g.  Bubbling adjacent
    # pairs terminates because each fix strictly shrinks an earlier slot.
    changed = True
    while changed:
        changed = False
        for i in range(r - 1):
            a, b = s[i][i], s[i + 1][i + 1]
            if b % a == 0:
                continue
            changed = True
            g, x, y = xgcd(a, b)
            ag, bg = a // g, b // g
            s[i][i] = g
            s[i + 1][i + 1] = ag * b
            ui, uj = u[i], u[i + 1]
            u[i] = [x * p + y * q for p, q in zip(ui, uj)]
            u[i + 1] = [-bg * p + ag * q for p, q in zip(ui, uj)]
            yb, xa = y * bg, x * ag
            for row in v:
                wi, wj = row[i], row[i + 1]
                row[i] = wi + wj
                row[i + 1] = -yb * wi + xa * wj
    return SmithDecomposition(IntMatrix(u), IntMatrix(s, cols=n), IntMatrix(v))


def hermite_normal_form(A):
    """Row-style Hermite normal form.

    Returns (H, U) with U*A = H, U unimodular.  H is in row echelon form with
    positive pivots and entries above each pivot reduced into [0, pivot).
    """
    m, n = A.rows, A.cols
    h = [list(row) for row in A.data]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

    def addmul(dst, src, q):
        hd, hs = h[dst], h[src]
        for j in range(n):
            x = hs[j]
            if x:
                hd[j] += q * x
        ud, us = u[dst], u[src]
        for j in range(m):
            x = us[j]
            if x:
                ud[j] += q * x

    pivot_row = 0
    for j in range(n):
        if pivot_row >= m:
            break
        # gcd out the column below pivot_row
        while True:
            best = None
            bi = -1
            for i in range(pivot_row, m):
                x = h[i][j]
                if x:
                    a = -x if x < 0 else x
                    if best is None or a < best:
                        best, bi = a, i
            if best is None:
                break
            if bi != pivot_row:
                h[pivot_row], h[bi] = h[bi], h[pivot_row]
                u[pivot_row], u[bi] = u[bi], u[pivot_row]
            done = True
            for i in range(pivot_row + 1, m):
                if h[i][j]:
                    q = h[i][j] // h[pivot_row][j]
                    addmul(i, pivot_row, -q)
                    if h[i][j]:
                        done = False
            if done:
                break
        if h[pivot_row][j] == 0:
            continue
        if h[pivot_row][j] < 0:
            h[pivot_row] = [-x for x in h[pivot_row]]
            u[pivot_row] = [-x for x in u[pivot_row]]
        p = h[pivot_row][j]
        for i in range(pivot_row):
            q = h[i][j] // p  # floor division leaves a residue in [0, p)
            if q:
                addmul(i, pivot_row, -q)
        pivot_row += 1
    return IntMatrix(h, cols=n), IntMatrix(u)


def rank(A):
    """Rank of A over the rationals (equal to the rank over Z)."""
    H, _ = hermite_normal_form(A)
    return sum(1 for row in H.data if any(row))


def kernel_basis(A):
    """A basis of the integer kernel of A, as the columns of the result.

    The basis spans the full lattice ker(A) in Z^cols, not a finite-index
    sublattice, because it comes from the unimodular column transform of the
    Smith form.  Columns are sign-normalized (first nonzero entry positive).
    """
    snf = smith_normal_form(A)
    r = snf.rank()
    cols = []
    for j in range(r, A.cols):
        c = snf.V.column(j)
        for x in c:
            if x:
                if x < 0:
                    c = [-y for y in c]
                break
        cols.append(c)
    return IntMatrix.from_columns(cols, rows=A.cols)


def solve_integer(A, b):
    """One integer solution x of A*x = b, or None when none exists."""
    snf = smith_normal_form(A)
    c = snf.U.mulvec(b)
    y = [0] * A.cols
    diag = snf.diagonal()
    for i in range(A.rows):
        d = diag[i] if i < len(diag) else 0
        if d:
            q, r = divmod(c[i], d)
            if r:
                return None
            y[i] = q
        elif c[i]:
            return None
    return snf.V.mulvec(y)


def invert_unimodular(M):
    """Exact inverse of a unimodular integer matrix (ValueError otherwise)."""
    if M.rows != M.cols:
        raise ValueError("not square")
    H, U = hermite_normal_form(M)
    if H != IntMatrix.identity(M.rows):
        raise ValueError("matrix is not unimodular")
    return U


class AbelianInvariants:
    """A finitely generated abelian group, as free rank plus torsion chain.

    torsion is a tuple (d_1, ..., d_k) with 1 < d_1 | d_2 | ... | d_k, so the
    group is Z^free_rank + Z/d_1 + ... + Z/d_k.

    >>> str(AbelianInvariants(2, (2, 6)))
    'Z^2 + Z/2 + Z/6'
    >>> str(AbelianInvariants(0, ()))
    '0'
    """

    __slots__ = ("free_rank", "torsion")

    def __init__(self, free_rank, torsion=()):
        torsion = tuple(int(d) for d in torsion)
        for d in torsion:
            if d < 2:
                raise ValueError("torsion entries must exceed 1")
        for a, b in zip(torsion, torsion[1:]):
            if b % a:
                raise ValueError("torsion entries must form a divisibility chain")
        self.free_rank = int(free_rank)
        self.torsion = torsion

    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    def torsion_order(self):
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def two_torsion_exponent(self):
        """k such that the subgroup of elements of order <= 2 has order 2^k."""
        return sum(1 for d in self.torsion if d % 2 == 0)

    def two_primary_valuation(self):
        """k such that the 2-primary part of the torsion has order 2^k."""
        k = 0
        for d in self.torsion:
            while d % 2 == 0:
                k += 1
                d //= 2
        return k

    def __eq__(self, other):
        return (isinstance(other, AbelianInvariants)
                and self.free_rank == other.free_rank
                and self.torsion == other.torsion)

    def __repr__(self):
        return "AbelianInvariants(%d, %r)" % (self.free_rank, self.torsion)

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank:
            parts.append("Z^%d" % self.free_rank)
        parts.extend("Z/%d" % d for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def quotient_invariants(K, B):
    """Invariants of (lattice spanned by columns of K) / (by columns of B).

    K must have Z-linearly independent columns.  Every column of B must lie in
    the lattice spanned by K; a column outside it raises ValueError, since the
    quotient would not be defined.
    """
    if K.cols == 0:
        if B.cols and not B.is_zero():
            raise ValueError("columns of B outside the lattice of K")
        return AbelianInvariants(0)
    snf = smith_normal_form(K)
    if snf.rank() != K.cols:
        raise ValueError("columns of K are not independent")
    diag = snf.diagonal()
    coeffs = []
    for bcol in B.columns():
        c = snf.U.mulvec(bcol)
        y = [0] * K.cols
        for i in range(K.rows):
            d = diag[i] if i < len(diag) else 0
            if d:
                q, r = divmod(c[i], d)
                if r:
                    raise ValueError("columns of B outside the lattice of K")
                y[i] = q
            elif c[i]:
                raise ValueError("columns of B outside the lattice of K")
        coeffs.append(y)
    C = IntMatrix.from_columns(coeffs, rows=K.cols)
    return _cokernel_invariants(C)


def _cokernel_invariants(C):
    # Invariants of Z^rows(C) / column lattice of C.
    snf = smith_normal_form(C)
    diag = [d for d in snf.diagonal() if d]
    torsion = tuple(d for d in diag if d > 1)
    return AbelianInvariants(C.rows - len(diag), torsion)
