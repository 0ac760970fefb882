"""Exact linear algebra over Q, F_p and Z.

Matrices are lists of rows; vectors are lists. Field elements are
Fractions (Q) or ints reduced mod p (F_p). Just enough machinery for the
rest of the package: reduced row echelon form, kernels, solving, Smith
normal form with change of basis, and homology of integer complexes.
Nothing here is asymptotically clever; everything is exact.
"""

from __future__ import annotations

from fractions import Fraction


class RationalField:
    name = "Q"
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x):
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        return Fraction(1) / Fraction(a)

    def is_zero(self, a):
        return a == 0

    def __repr__(self):
        return "QQ"


class PrimeField:
    """F_p for prime p; elements are ints in range(p)."""

    def __init__(self, p: int):
        assert p >= 2
        # a tiny primality check keeps bad fixtures from corrupting inverses
        assert all(p % d for d in range(2, int(p ** 0.5) + 1)), p
        self.p = p
        self.name = f"F{p}"
        self.zero = 0
        self.one = 1 % p

    def coerce(self, x):
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()

_GF_CACHE: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    if p not in _GF_CACHE:
        _GF_CACHE[p] = PrimeField(p)
    return _GF_CACHE[p]


# ---------------------------------------------------------------- matrices


def zeros(F, m, n):
    return [[F.zero] * n for _ in range(m)]


def identity(F, n):
    M = zeros(F, n, n)
    for i in range(n):
        M[i][i] = F.one
    return M


def mat_mul(F, A, B):
    m, k = len(A), (len(B) if A else 0)
    n = len(B[0]) if B else 0
    assert not A or len(A[0]) == k
    out = zeros(F, m, n)
    for i in range(m):
        Ai = A[i]
        for t in range(k):
            a = Ai[t]
            if F.is_zero(a):
                continue
            Bt = B[t]
            oi = out[i]
            for j in range(n):
                oi[j] = F.add(oi[j], F.mul(a, Bt[j]))
    return out


def mat_vec(F, A, v):
    assert not A or len(A[0]) == len(v)
    return [
        _dot(F, row, v)
        for row in A
    ]


def _dot(F, row, v):
    s = F.zero
    for a, b in zip(row, v):
        if not (F.is_zero(a) or F.is_zero(b)):
            s = F.add(s, F.mul(a, b))
    return s


def mat_add(F, A, B):
    return [[F.add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def transpose(A):
    return [list(col) for col in zip(*A)] if A and A[0] else ([[] for _ in A[0]] if A else [])


def vec_add(F, u, v):
    return [F.add(a, b) for a, b in zip(u, v)]


def vec_sub(F, u, v):
    return [F.sub(a, b) for a, b in zip(u, v)]


def vec_scale(F, c, v):
    return [F.mul(c, a) for a in v]


def is_zero_vec(F, v):
    return all(F.is_zero(a) for a in v)


# ------------------------------------------------------------- elimination


def rref(F, rows):
    """Reduced row echelon form. Returns (R, pivot_columns)."""
    R = [[F.coerce(x) for x in r] for r in rows]
    m = len(R)
    n = len(R[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        pr = next((i for i in range(r, m) if not F.is_zero(R[i][c])), None)
        if pr is None:
            continue
        R[r], R[pr] = R[pr], R[r]
        inv = F.inv(R[r][c])
        R[r] = [F.mul(inv, x) for x in R[r]]
        for i in range(m):
            if i != r and not F.is_zero(R[i][c]):
                f = R[i][c]
                R[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(F, A):
    return len(rref(F, A)[1])


def kernel_basis(F, A, ncols=None):
    """Basis of the right kernel {v : A v = 0} as a list of vectors."""
    if ncols is None:
        ncols = len(A[0]) if A else 0
    if not A:
        return [unit_vector(F, ncols, j) for j in range(ncols)]
    R, pivots = rref(F, A)
    pivset = set(pivots)
    free = [j for j in range(ncols) if j not in pivset]
    basis = []
    for j in free:
        v = [F.zero] * ncols
        v[j] = F.one
        for r, c in enumerate(pivots):
            v[c] = F.neg(R[r][j])
        basis.append(v)
    return basis


def unit_vector(F, n, j):
    v = [F.zero] * n
    v[j] = F.one
    return v


def solve(F, A, b):
    """One solution of A x = b, or None if inconsistent."""
    m = len(A)
    n = len(A[0]) if m else 0
    aug = [list(A[i]) + [b[i]] for i in range(m)]
    R, pivots = rref(F, aug)
    if n in pivots:
        return None
    x = [F.zero] * n
    for r, c in enumerate(pivots):
        x[c] = R[r][n]
    return x


def solve_unique(F, A, b):
    """Solution of A x = b when it exists and the kernel is trivial."""
    x = solve(F, A, b)
    assert x is not None
    assert not kernel_basis(F, A), "solution not unique"
    return x


def column_space_coords(F, basis_cols, target):
    """Coordinates of `target` in the span of `basis_cols`, or None.

    basis_cols: list of vectors (columns); target: vector.
    """
    A = transpose_cols(basis_cols)
    return solve(F, A, target)


def transpose_cols(cols):
    """Matrix whose j-th column is cols[j]."""
    if not cols:
        return []
    m = len(cols[0])
    return [[col[i] for col in cols] for i in range(m)]


# ------------------------------------------------------------------ over Z


def smith_normal_form(A):
    """Smith normal form with change of basis.

    Returns (D, U, V) with U @ A @ V == D over Z, U and V unimodular, and
    D diagonal with d_1 | d_2 | ... (nonnegative).
    """
    M = [list(map(int, row)) for row in A]
    m = len(M)
    n = len(M[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_op(i, j, q):  # row_i -= q * row_j, mirrored in U
        M[i] = [a - q * b for a, b in zip(M[i], M[j])]
        U[i] = [a - q * b for a, b in zip(U[i], U[j])]

    def col_op(i, j, q):  # col_i -= q * col_j, mirrored in V
        for r in range(m):
            M[r][i] -= q * M[r][j]
        for r in range(n):
            V[r][i] -= q * V[r][j]

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in range(m):
            M[r][i], M[r][j] = M[r][j], M[r][i]
        for r in range(n):
            V[r][i], V[r][j] = V[r][j], V[r][i]

    t = 0
    while t < min(m, n):
        # locate a pivot of smallest absolute value
        best = None
        for i in range(t, m):
            for j in range(t, n):
                a = M[i][j]
                if a and (best is None or abs(a) < abs(M[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        dirty = False
        for i in range(t + 1, m):
            if M[i][t]:
                q = M[i][t] // M[t][t]
                row_op(i, t, q)
                if M[i][t]:
                    dirty = True
        for j in range(t + 1, n):
            if M[t][j]:
                q = M[t][j] // M[t][t]
                col_op(j, t, q)
                if M[t][j]:
                    dirty = True
        if dirty:
            continue
        # enforce divisibility of the remaining block by the pivot
        stuck = False
        for i in range(t + 1, m):
            if any(M[i][j] % M[t][t] for j in range(t + 1, n)):
                row_op(t, i, -1)  # add row i to row t
                stuck = True
                break
        if stuck:
            continue
        if M[t][t] < 0:
            M[t] = [-a for a in M[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return M, U, V


def det_int(A):
    """Determinant of a square integer matrix (Bareiss)."""
    n = len(A)
    M = [list(map(int, row)) for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            pr = next((i for i in range(k + 1, n) if M[i][k]), None)
            if pr is None:
                return 0
            M[k], M[pr] = M[pr], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * (M[n - 1][n - 1] if n else 1)


def integer_kernel_basis(A):
    """Columns spanning the saturated integer kernel of A."""
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0 or n == 0:
        return [[int(i == j) for i in range(n)] for j in range(n)]
    D, U, V = smith_normal_form(A)
    r = sum(1 for i in range(min(m, n)) if D[i][i])
    return [[V[i][j] for i in range(n)] for j in range(r, n)]


def homology_z(d_out, d_in, ambient_dim):
    """ker(d_out)/im(d_in) for integer matrices with d_out @ d_in = 0.

    d_out maps the ambient Z^ambient_dim forward, d_in maps into it. Either
    may be [] (zero map). Returns (free_rank, [invariant factors > 1]).
    """
    if d_out:
        assert len(d_out[0]) == ambient_dim
        K = integer_kernel_basis(d_out)
    else:
        K = [[int(i == j) for i in range(ambient_dim)] for j in range(ambient_dim)]
    k = len(K)
    cols_in = transpose(d_in) if d_in else []
    if not cols_in or k == 0:
        coords = []
    else:
        assert len(d_in) == ambient_dim
        Kmat = transpose_cols(K)
        coords = []
        for c in cols_in:
            x = solve(QQ, Kmat, [Fraction(a) for a in c])
            assert x is not None, "image does not land in the kernel"
            xi = [int(a) for a in x]
            assert all(Fraction(i) == a for i, a in zip(xi, x))
            coords.append(xi)
    if not coords:
        return k, []
    Cm = transpose_cols(coords)  # k x (#cols_in)
    D, _, _ = smith_normal_form(Cm)
    diag = [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]
    r = sum(1 for d in diag if d)
    tors = [d for d in diag if d > 1]
    return k - r, tors


def homology_dim(F, d_out, d_in, ambient_dim):
    """dim ker(d_out) - rank(d_in) over a field."""
    r_out = rank(F, d_out) if d_out else 0
    r_in = rank(F, d_in) if d_in else 0
    if d_out:
        assert len(d_out[0]) == ambient_dim
    dim = ambient_dim - r_out - r_in
    assert dim >= 0
    return dim


# ------------------------------------------------------- shaped matrices


INT_RING = "Z"


def _ring_coerce(ring, x):
    if ring is INT_RING:
        v = x if isinstance(x, int) else None
        if v is None:
            fx = Fraction(x)
            assert fx.denominator == 1, f"non-integer {x} over Z"
            v = fx.numerator
        return v
    return ring.coerce(x)


def ring_name(ring):
    return "Z" if ring is INT_RING else ring.name


class Mat:
    """Ring-tagged matrix with explicit shape (safe at dimension zero).

    ring is either exact.INT_RING (plain ints) or a field object (QQ, GF(p)).
    """

    __slots__ = ("ring", "r", "c", "rows")

    def __init__(self, ring, r, c, rows):
        self.ring = ring
        self.r = r
        self.c = c
        assert len(rows) == r and all(len(row) == c for row in rows), (r, c)
        self.rows = [[_ring_coerce(ring, x) for x in row] for row in rows]

    # constructors ---------------------------------------------------------

    @staticmethod
    def zero(ring, r, c):
        z = 0 if ring is INT_RING else ring.zero
        return Mat(ring, r, c, [[z] * c for _ in range(r)])

    @staticmethod
    def eye(ring, n):
        one = 1 if ring is INT_RING else ring.one
        m = Mat.zero(ring, n, n)
        for i in range(n):
            m.rows[i][i] = one
        return m

    @staticmethod
    def from_cols(ring, nrows, cols):
        return Mat(ring, nrows, len(cols),
                   [[col[i] for col in cols] for i in range(nrows)])

    # ring dispatch --------------------------------------------------------

    def _add(self, a, b):
        return a + b if self.ring is INT_RING else self.ring.add(a, b)

    def _mul(self, a, b):
        return a * b if self.ring is INT_RING else self.ring.mul(a, b)

    def _is0(self, a):
        return a == 0 if self.ring is INT_RING else self.ring.is_zero(a)

    # algebra --------------------------------------------------------------

    def __matmul__(self, other):
        assert self.ring is other.ring and self.c == other.r, \
            (self.r, self.c, other.r, other.c)
        out = Mat.zero(self.ring, self.r, other.c)
        for i in range(self.r):
            for t in range(self.c):
                a = self.rows[i][t]
                if self._is0(a):
                    continue
                brow = other.rows[t]
                orow = out.rows[i]
                for j in range(other.c):
                    orow[j] = self._add(orow[j], self._mul(a, brow[j]))
        return out

    def __add__(self, other):
        assert (self.r, self.c) == (other.r, other.c)
        return Mat(self.ring, self.r, self.c,
                   [[self._add(a, b) for a, b in zip(ra, rb)]
                    for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, k):
        k = _ring_coerce(self.ring, k)
        return Mat(self.ring, self.r, self.c,
                   [[self._mul(k, a) for a in row] for row in self.rows])

    def __eq__(self, other):
        return (isinstance(other, Mat) and self.ring is other.ring
                and self.r == other.r and self.c == other.c
                and all(self._is0(a - b if self.ring is INT_RING
                                  else self.ring.sub(a, b))
                        for ra, rb in zip(self.rows, other.rows)
                        for a, b in zip(ra, rb)))

    def __hash__(self):
        raise TypeError("Mat is mutable in construction; not hashable")

    def is_zero(self):
        return all(self._is0(a) for row in self.rows for a in row)

    def apply(self, v):
        assert len(v) == self.c
        out = []
        for row in self.rows:
            s = 0 if self.ring is INT_RING else self.ring.zero
            for a, b in zip(row, v):
                if not self._is0(a):
                    s = self._add(s, self._mul(a, b))
            out.append(s)
        return out

    def col(self, j):
        return [row[j] for row in self.rows]

    def cols(self):
        return [self.col(j) for j in range(self.c)]

    def transpose(self):
        return Mat(self.ring, self.c, self.r,
                   [[self.rows[i][j] for i in range(self.r)] for j in range(self.c)])

    def hstack(self, other):
        assert self.r == other.r and self.ring is other.ring
        return Mat(self.ring, self.r, self.c + other.c,
                   [ra + rb for ra, rb in zip(self.rows, other.rows)])

    def vstack(self, other):
        assert self.c == other.c and self.ring is other.ring
        return Mat(self.ring, self.r + other.r, self.c, self.rows + other.rows)

    @staticmethod
    def block_diag(ring, blocks):
        r = sum(b.r for b in blocks)
        c = sum(b.c for b in blocks)
        out = Mat.zero(ring, r, c)
        i0 = j0 = 0
        for b in blocks:
            for i in range(b.r):
                out.rows[i0 + i][j0:j0 + b.c] = [x for x in b.rows[i]]
            i0 += b.r
            j0 += b.c
        return out

    # elimination ----------------------------------------------------------

    def _as_rational(self):
        return [[Fraction(x) for x in row] for row in self.rows]

    def rank(self):
        if self.r == 0 or self.c == 0:
            return 0
        if self.ring is INT_RING:
            return rank(QQ, self._as_rational())
        return rank(self.ring, self.rows)

    def kernel(self):
        """Matrix whose columns span {v : self @ v = 0}; saturated over Z."""
        if self.c == 0:
            return Mat.zero(self.ring, 0, 0)
        if self.r == 0:
            return Mat.eye(self.ring, self.c)
        if self.ring is INT_RING:
            ker = integer_kernel_basis(self.rows)
        else:
            ker = kernel_basis(self.ring, self.rows, self.c)
        return Mat.from_cols(self.ring, self.c, ker)

    def solve_cols(self, rhs):
        """X with self @ X = rhs, or None. Over Z requires integral solution."""
        assert rhs.r == self.r
        F = QQ if self.ring is INT_RING else self.ring
        A = self._as_rational() if self.ring is INT_RING else self.rows
        xcols = []
        for j in range(rhs.c):
            b = rhs.col(j)
            if self.ring is INT_RING:
                b = [Fraction(x) for x in b]
            if self.r == 0:
                xcols.append([F.zero] * self.c)
                continue
            x = solve(F, A, b)
            if x is None:
                return None
            if self.ring is INT_RING:
                assert all(v.denominator == 1 for v in x), "non-integral solution"
                x = [v.numerator for v in x]
            xcols.append(x)
        return Mat.from_cols(self.ring, self.c, xcols)

    def inverse(self):
        assert self.r == self.c
        inv = self.solve_cols(Mat.eye(self.ring, self.r))
        if inv is None or not (self @ inv == Mat.eye(self.ring, self.r)):
            return None
        if not (inv @ self == Mat.eye(self.ring, self.r)):
            return None
        return inv

    def __repr__(self):
        return f"Mat({ring_name(self.ring)},{self.r}x{self.c})"


# ------------------------------------------------------------ F2 bitsets


def kernel_f2_bits(rows, ncols):
    """Right-kernel basis over F_2 for rows given as int bitmasks.

    Bit j of a row mask is the coefficient of variable j. Returns a list of
    basis vectors, themselves bitmasks.
    """
    work = [r for r in rows if r]
    pivots = {}  # col -> reduced row
    for row in work:
        while row:
            low = row & -row
            col = low.bit_length() - 1
            if col in pivots:
                row ^= pivots[col]
            else:
                pivots[col] = row
                break
    # back-substitute to make pivot columns unique
    cols = sorted(pivots)
    for c in cols:
        r = pivots[c]
        for c2 in cols:
            if c2 > c and (r >> c2) & 1 and c2 in pivots:
                r ^= pivots[c2]
        pivots[c] = r
    basis = []
    pivot_cols = set(pivots)
    for j in range(ncols):
        if j in pivot_cols:
            continue
        v = 1 << j
        for c, r in pivots.items():
            if (r >> j) & 1:
                v |= 1 << c
        basis.append(v)
    return basis
