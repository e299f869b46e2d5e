"""The action of 2x2 integer matrices on binary forms of degree n.

A form P(X, Y) = sum_k coeffs[k] X^(n-k) Y^k is stored as its coefficient
vector of length n + 1.  A matrix A = (a b; c d) acts by substitution on the
row vector (X, Y):

    (A . P)(X, Y) = P(a X + c Y, b X + d Y)

so that A . (B . P) = (AB) . P and the matrix of the action in the monomial
basis (column-vector convention) is a homomorphism GL_2(Z) -> GL_{n+1}(Z).
"""

from __future__ import annotations

from math import comb

from .linalg import IntMatrix, kernel_basis, rank, vstack


class Mat2:
    """A 2x2 integer matrix (a b; c d)."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        for x in (a, b, c, d):
            if not isinstance(x, int):
                raise TypeError("integer entries required")
        self.a, self.b, self.c, self.d = a, b, c, d

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    @classmethod
    def parse(cls, text):
        """Parse 'a,b;c,d' (possibly with spaces) into a Mat2.

        >>> Mat2.parse("0,-1; 1,0")
        Mat2(0, -1, 1, 0)
        """
        rows = text.strip().split(";")
        if len(rows) != 2:
            raise ValueError("expected two rows separated by ';'")
        entries = []
        for row in rows:
            parts = [p.strip() for p in row.split(",")]
            if len(parts) != 2:
                raise ValueError("expected two entries per row")
            entries.extend(int(p) for p in parts)
        return cls(*entries)

    def det(self):
        return self.a * self.d - self.b * self.c

    def trace(self):
        return self.a + self.d

    def inv(self):
        det = self.det()
        if det == 1:
            return Mat2(self.d, -self.b, -self.c, self.a)
        if det == -1:
            return Mat2(-self.d, self.b, self.c, -self.a)
        raise ValueError("determinant must be +-1")

    def __mul__(self, other):
        return Mat2(self.a * other.a + self.b * other.c,
                    self.a * other.b + self.b * other.d,
                    self.c * other.a + self.d * other.c,
                    self.c * other.b + self.d * other.d)

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        out = Mat2.identity()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __neg__(self):
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def __eq__(self, other):
        return (isinstance(other, Mat2) and self.a == other.a
                and self.b == other.b and self.c == other.c and self.d == other.d)

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def __repr__(self):
        return "Mat2(%d, %d, %d, %d)" % (self.a, self.b, self.c, self.d)

    def format(self):
        return "%d,%d;%d,%d" % (self.a, self.b, self.c, self.d)

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def is_identity(self):
        return self == Mat2.identity()

    def proj_eq(self, other):
        """Equality in PGL terms, i.e. up to a global sign."""
        return self == other or self == -other

    def proj_normalized(self):
        """The sign representative whose first nonzero entry is positive."""
        for x in self.entries():
            if x:
                return self if x > 0 else -self
        return self


# Standard generators: the order 4 rotation, the order 6 element, the swap
# (determinant -1) and the central involution.
GEN_S = Mat2(0, -1, 1, 0)
GEN_T = Mat2(0, -1, 1, 1)
GEN_W = Mat2(0, 1, 1, 0)
GEN_EPS = Mat2(-1, 0, 0, -1)


def _linear_power(alpha, beta, m):
    # Coefficient list of (alpha X + beta Y)^m, X-degree descending.
    return [comb(m, i) * alpha ** (m - i) * beta ** i for i in range(m + 1)]


def _convolve(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if x:
            for j, y in enumerate(q):
                if y:
                    out[i + j] += x * y
    return out


def rho_matrix(A, n):
    """Matrix of the degree-n action of A, size (n+1) x (n+1).

    Column k holds the coefficients of (a X + c Y)^(n-k) (b X + d Y)^k, the
    image of the basis monomial X^(n-k) Y^k.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    cols = []
    for k in range(n + 1):
        p = _linear_power(A.a, A.c, n - k)
        q = _linear_power(A.b, A.d, k)
        cols.append(_convolve(p, q))
    return IntMatrix.from_columns(cols, rows=n + 1)


def act(A, coeffs):
    """Apply A to a coefficient vector; degree is inferred from the length."""
    coeffs = list(coeffs)
    return rho_matrix(A, len(coeffs) - 1).mulvec(coeffs)


def rep_trace(A, n):
    """Trace of the degree-n action of A, without building the full matrix."""
    total = 0
    for k in range(n + 1):
        p = _linear_power(A.a, A.c, n - k)
        q = _linear_power(A.b, A.d, k)
        # Only the X^(n-k) Y^k coefficient of the product is needed.
        lo = max(0, k - len(q) + 1)
        hi = min(k, len(p) - 1)
        total += sum(p[i] * q[k - i] for i in range(lo, hi + 1))
    return total


def eta(n):
    """The period 3 quantity: 1, -1, 0 according to n = 0, 1, 2 mod 3."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return (1, -1, 0)[n % 3]


def alt_diagonal_sum(n):
    """sum_{k=0}^{n//2} (-1)^k C(n-k, k).

    For even n this equals both eta(n) and the trace of the degree-n action
    of the inverse of the order 6 generator, whose diagonal entries are
    (-1)^k C(n-k, k).
    """
    return sum((-1) ** k * comb(n - k, k) for k in range(n // 2 + 1))


def common_fixed_dim(mats, n):
    """Dimension over Q of the forms of degree n fixed by every listed matrix."""
    mats = list(mats)
    if not mats:
        raise ValueError("at least one matrix required")
    eye = IntMatrix.identity(n + 1)
    stacked = vstack([rho_matrix(A, n) - eye for A in mats])
    return n + 1 - rank(stacked)


def w_split(n):
    """Bases of the symmetric and antisymmetric forms under the swap.

    The swap W interchanges X and Y, so it acts on coefficient vectors by
    reversal.  Returns (plus, minus), the kernels of W - 1 and W + 1; for
    even n their column counts are n/2 + 1 and n/2.
    """
    w = rho_matrix(GEN_W, n)
    eye = IntMatrix.identity(n + 1)
    return kernel_basis(w - eye), kernel_basis(w + eye)
