"""Exact homological algebra for abelian coefficients.

Chain and cochain complexes over Z, Q and F_p; simplicial and cosimplicial
modules with exhaustively checked identities; normalization in both
directions together with explicit inverse denormalization functors; total
complexes of bicomplexes; and the homotopy-group formulas for abelian
higher Maurer-Cartan spaces, both as closed-form homology computations and
as direct linear-system enumerations over the relative cube complexes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .exact import (
    INT_RING, Mat, QQ, homology_z, kernel_f2_bits, ring_name,
)
from .simplicial_core import (
    OrdinalMap, compose_ordinal, cube, cube_partial_boundary_keep,
    delta_degen, delta_face, product_sset, standard_simplex,
)


# ------------------------------------------------------------- homology type


@dataclass(frozen=True)
class Homology:
    """Iso class of a finitely generated module over the coefficient ring."""

    ring: str
    free_rank: int
    torsion: tuple = ()

    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    def order(self):
        """Cardinality, or None when infinite."""
        if self.ring == "Z":
            if self.free_rank:
                return None
            out = 1
            for t in self.torsion:
                out *= t
            return out
        if self.ring == "Q":
            return None if self.free_rank else 1
        p = int(self.ring[1:])
        return p ** self.free_rank

    def __str__(self):
        if self.is_trivial():
            return "0"
        parts = []
        if self.free_rank:
            base = {"Z": "Z", "Q": "Q"}.get(self.ring, self.ring)
            parts.append(base if self.free_rank == 1 else f"{base}^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts)


# ------------------------------------------------------------------ complexes


class Complex:
    """Bounded complex of free modules; `down` fixes the differential degree.

    dims: {degree: dim > 0}; diff: {n: Mat from degree n to n-1 (down) or
    n+1 (up)}. Degrees may be negative (total complexes).
    """

    def __init__(self, ring, dims, diff, down, check=True):
        self.ring = ring
        self.down = down
        self.dims = {n: d for n, d in dims.items() if d}
        self.diff = {}
        for n, m in diff.items():
            assert m.r == self.dim(n - 1 if down else n + 1), (n, m.r)
            assert m.c == self.dim(n), (n, m.c)
            if not m.is_zero():
                self.diff[n] = m
        if check:
            self.validate()

    def dim(self, n):
        return self.dims.get(n, 0)

    def degrees(self):
        return sorted(self.dims)

    def d(self, n):
        tgt = n - 1 if self.down else n + 1
        if n in self.diff:
            return self.diff[n]
        return Mat.zero(self.ring, self.dim(tgt), self.dim(n))

    def validate(self):
        for n in list(self.diff):
            nxt = n - 1 if self.down else n + 1
            comp = self.d(nxt) @ self.d(n)
            assert comp.is_zero(), f"d^2 != 0 at degree {n}"
        return True

    def homology(self, n):
        """At degree n: ker(d out of n) / im(d into n)."""
        into = n + 1 if self.down else n - 1
        d_out = self.d(n)
        d_in = self.d(into)
        amb = self.dim(n)
        if amb == 0:
            return Homology(ring_name(self.ring), 0)
        if self.ring is INT_RING:
            free, tors = homology_z(
                d_out.rows if d_out.r else [],
                d_in.rows if (d_in.r and d_in.c) else [],
                amb)
            return Homology("Z", free, tuple(tors))
        r_out = d_out.rank()
        r_in = d_in.rank()
        return Homology(ring_name(self.ring), amb - r_out - r_in)

    def total_dim(self):
        return sum(self.dims.values())

    def __repr__(self):
        arrow = "down" if self.down else "up"
        return f"<complex {ring_name(self.ring)} {arrow} dims={dict(sorted(self.dims.items()))}>"


def shift_complex(C, k):
    """Reindex degrees by +k (same direction)."""
    dims = {n + k: d for n, d in C.dims.items()}
    diff = {n + k: m for n, m in C.diff.items()}
    return Complex(C.ring, dims, diff, C.down, check=False)


def single_complex(ring, degree, dim=1, down=False):
    return Complex(ring, {degree: dim}, {}, down, check=False)


# ------------------------------------------------------- (co)simplicial data


class SimplicialModule:
    """Simplicial object in free modules, stored through a truncation.

    face[n][i]: level n -> n-1 (0 <= i <= n); degen[n][i]: level n -> n+1.
    """

    def __init__(self, ring, dims, face, degen, check=True):
        self.ring = ring
        self.dims = list(dims)
        self.trunc = len(dims) - 1
        self.face = face
        self.degen = degen
        if check:
            self.validate()

    def validate(self):
        T = self.trunc
        for n in range(1, T + 1):
            assert len(self.face[n]) == n + 1
            for i in range(n + 1):
                m = self.face[n][i]
                assert (m.r, m.c) == (self.dims[n - 1], self.dims[n])
        for n in range(T):
            assert len(self.degen[n]) == n + 1
            for i in range(n + 1):
                m = self.degen[n][i]
                assert (m.r, m.c) == (self.dims[n + 1], self.dims[n])
        for n in range(2, T + 1):
            for j in range(n + 1):
                for i in range(j):
                    lhs = self.face[n - 1][i] @ self.face[n][j]
                    rhs = self.face[n - 1][j - 1] @ self.face[n][i]
                    assert lhs == rhs, ("dd", n, i, j)
        for n in range(T - 1):
            for j in range(n + 1):
                for i in range(j + 1):
                    lhs = self.degen[n + 1][i] @ self.degen[n][j]
                    rhs = self.degen[n + 1][j + 1] @ self.degen[n][i]
                    assert lhs == rhs, ("ss", n, i, j)
        for n in range(T):
            for j in range(n + 1):
                for i in range(n + 2):
                    m = self.face[n + 1][i] @ self.degen[n][j]
                    if i == j or i == j + 1:
                        assert m == Mat.eye(self.ring, self.dims[n]), ("ds", n, i, j)
                    elif i < j:
                        assert m == self.degen[n - 1][j - 1] @ self.face[n][i]
                    else:
                        assert m == self.degen[n - 1][j] @ self.face[n][i - 1]
        return True


class CosimplicialModule:
    """Cosimplicial object in free modules through a truncation.

    coface[n][i]: level n-1 -> n (0 <= i <= n, 1 <= n <= trunc);
    codegen[n][i]: level n -> n-1 (0 <= i <= n-1).
    """

    def __init__(self, ring, dims, coface, codegen, check=True):
        self.ring = ring
        self.dims = list(dims)
        self.trunc = len(dims) - 1
        self.coface = coface
        self.codegen = codegen
        if check:
            self.validate()

    def validate(self):
        T = self.trunc
        for n in range(1, T + 1):
            assert len(self.coface[n]) == n + 1
            for i in range(n + 1):
                m = self.coface[n][i]
                assert (m.r, m.c) == (self.dims[n], self.dims[n - 1])
            assert len(self.codegen[n]) == n
            for i in range(n):
                m = self.codegen[n][i]
                assert (m.r, m.c) == (self.dims[n - 1], self.dims[n])
        for n in range(1, T):
            for i in range(n + 1):
                for j in range(i + 1, n + 2):
                    lhs = self.coface[n + 1][j] @ self.coface[n][i]
                    rhs = self.coface[n + 1][i] @ self.coface[n][j - 1]
                    assert lhs == rhs, ("cc", n, i, j)
        for n in range(2, T + 1):
            # sigma^i sigma^{j+1} = sigma^j sigma^i on level n, i <= j
            for j in range(n - 1):
                for i in range(j + 1):
                    lhs = self.codegen[n - 1][i] @ self.codegen[n][j + 1]
                    rhs = self.codegen[n - 1][j] @ self.codegen[n][i]
                    assert lhs == rhs, ("ss", n, i, j)
        for n in range(1, T + 1):
            # sigma^j d^i on level n-1 -> n -> n-1... shapes at level n
            for j in range(n):
                for i in range(n + 1):
                    m = self.codegen[n][j] @ self.coface[n][i]
                    if i == j or i == j + 1:
                        assert m == Mat.eye(self.ring, self.dims[n - 1]), ("sd", n, i, j)
                    elif i < j:
                        assert m == self.coface[n - 1][i] @ self.codegen[n - 1][j - 1]
                    else:
                        assert m == self.coface[n - 1][i - 1] @ self.codegen[n - 1][j]
        return True

    def cochain_differential(self, n):
        """Sum of signed cofaces out of level n (needs n < trunc)."""
        out = Mat.zero(self.ring, self.dims[n + 1], self.dims[n])
        for i in range(n + 2):
            m = self.coface[n + 1][i]
            out = out + (m if i % 2 == 0 else m.scale(-1))
        return out


# ----------------------------------------------------- ordinal factorization


def epi_from_constancies(n, J):
    """The surjection [n] ->> [n-|J|] with g(i)=g(i+1) exactly for i in J."""
    vals = []
    v = 0
    for i in range(n + 1):
        vals.append(v)
        if i not in J:
            v += 1
    return OrdinalMap(n, n - len(J), tuple(vals))


def mono_from_missing(n, M):
    """The injection [n-|M|] -> [n] whose image avoids exactly M."""
    image = [v for v in range(n + 1) if v not in M]
    return OrdinalMap(n - len(M), n, tuple(image))


def ordinal_constancies(f):
    return tuple(i for i in range(f.source) if f.values[i] == f.values[i + 1])


def ordinal_missing(f):
    image = set(f.values)
    return tuple(v for v in range(f.target + 1) if v not in image)


def _insert_bump(J, a):
    """Canonical index set of a single coface applied outside the monomial."""
    return tuple(sorted({t if t < a else t + 1 for t in J} | {a}))


def _insert_chain(J, seq):
    for a in seq:
        J = _insert_bump(J, a)
    return J


# -------------------------------------------------------------- normalization


@dataclass
class NormalizedData:
    """A normalized complex plus the levelwise inclusion into the ambient."""

    complex: Complex
    inclusion: dict  # level -> Mat (ambient dim x normalized dim)


def normalize_simplicial(V: SimplicialModule) -> NormalizedData:
    """Chain complex of intersected face kernels, differential the 0th face."""
    ring = V.ring
    incl = {0: Mat.eye(ring, V.dims[0])}
    for n in range(1, V.trunc + 1):
        st = Mat.zero(ring, 0, V.dims[n])
        for i in range(1, n + 1):
            st = st.vstack(V.face[n][i])
        incl[n] = st.kernel()
    dims = {n: incl[n].c for n in incl}
    diff = {}
    for n in range(1, V.trunc + 1):
        if dims[n] == 0 or dims[n - 1] == 0:
            continue
        img = V.face[n][0] @ incl[n]
        co = incl[n - 1].solve_cols(img)
        assert co is not None, "0th face left the normalized part"
        diff[n] = co
    return NormalizedData(Complex(ring, dims, diff, down=True), incl)


def conormalize(A: CosimplicialModule) -> NormalizedData:
    """Cochain complex of intersected codegeneracy kernels."""
    ring = A.ring
    incl = {0: Mat.eye(ring, A.dims[0])}
    for n in range(1, A.trunc + 1):
        st = Mat.zero(ring, 0, A.dims[n])
        for i in range(n):
            st = st.vstack(A.codegen[n][i])
        incl[n] = st.kernel()
    dims = {n: incl[n].c for n in incl}
    diff = {}
    for n in range(A.trunc):
        if dims[n] == 0 or dims[n + 1] == 0:
            continue
        img = A.cochain_differential(n) @ incl[n]
        co = incl[n + 1].solve_cols(img)
        assert co is not None, "cochain differential left the conormalized part"
        diff[n] = co
    return NormalizedData(Complex(ring, dims, diff, down=False), incl)


# ------------------------------------------------------------ denormalization


@dataclass
class DenormSimplicial:
    module: SimplicialModule
    monomials: list   # per level: list of (J, j), J subset of {0..n-1}
    index: list       # per level: {(J, j): position}
    source: Complex


@dataclass
class DenormCosimplicial:
    module: CosimplicialModule
    monomials: list   # per level: list of (J, j), J subset of {1..n}
    index: list       # per level: {(J, j): position}
    source: Complex


def _monomial_table(dim_of, trunc, level_subsets):
    monomials, index = [], []
    for n in range(trunc + 1):
        row = []
        for J in level_subsets(n):
            for j in range(dim_of(n - len(J))):
                row.append((J, j))
        monomials.append(row)
        index.append({m: k for k, m in enumerate(row)})
    return monomials, index


def denormalize_cochain(C: Complex, trunc) -> DenormCosimplicial:
    """Cosimplicial module with level n the sum of ∂-monomial copies of C.

    Basis monomials are indexed by subsets J of {1..n}; the extra coface
    direction is resolved through the differential of C.
    """
    assert not C.down
    ring = C.ring

    def subsets(n):
        out = []
        for s in range(n + 1):
            out.extend(itertools.combinations(range(1, n + 1), s))
        return out

    monomials, index = _monomial_table(C.dim, trunc, subsets)
    dims = [len(row) for row in monomials]

    coface = [None]
    codegen = [None]
    for n in range(1, trunc + 1):
        cf = []
        for i in range(n + 1):
            m = Mat.zero(ring, dims[n], dims[n - 1])
            for col, (J, j) in enumerate(monomials[n - 1]):
                h = compose_ordinal(mono_from_missing(n - 1, J), delta_face(n, i))
                M = ordinal_missing(h)
                if 0 not in M:
                    m.rows[index[n][(M, j)]][col] = _one(ring)
                    continue
                rest = M[1:]
                c = (n - 1) - len(J)
                dmat = C.d(c)
                T = _insert_chain((), rest)
                for w in range(C.dim(c + 1)):
                    if not _is0(ring, dmat.rows[w][j]):
                        r = index[n][(T, w)]
                        m.rows[r] = _addat(ring, m.rows[r], col, dmat.rows[w][j])
                for i2 in range(1, c + 2):
                    T2 = _insert_chain((i2,), rest)
                    coeff = _one(ring) if i2 % 2 == 1 else _neg1(ring)
                    r = index[n][(T2, j)]
                    m.rows[r] = _addat(ring, m.rows[r], col, coeff)
            cf.append(m)
        coface.append(cf)
        cd = []
        for i in range(n):
            m = Mat.zero(ring, dims[n - 1], dims[n])
            for col, (J, j) in enumerate(monomials[n]):
                h = compose_ordinal(mono_from_missing(n, J), delta_degen(n - 1, i))
                if ordinal_constancies(h):
                    continue
                M = ordinal_missing(h)
                assert 0 not in M
                m.rows[index[n - 1][(M, j)]][col] = _one(ring)
            cd.append(m)
        codegen.append(cd)

    module = CosimplicialModule(ring, dims, coface, codegen)
    return DenormCosimplicial(module, monomials, index, C)


def denormalize_chain(C: Complex, trunc) -> DenormSimplicial:
    """Simplicial module with level n the sum of degeneracy copies of C."""
    assert C.down
    ring = C.ring

    def subsets(n):
        out = []
        for s in range(n + 1):
            out.extend(itertools.combinations(range(n), s))
        return out

    monomials, index = _monomial_table(C.dim, trunc, subsets)
    dims = [len(row) for row in monomials]

    face = [None]
    degen = []
    for n in range(1, trunc + 1):
        fc = []
        for i in range(n + 1):
            m = Mat.zero(ring, dims[n - 1], dims[n])
            for col, (J, j) in enumerate(monomials[n]):
                h = compose_ordinal(delta_face(n, i), epi_from_constancies(n, J))
                J2 = ordinal_constancies(h)
                M = ordinal_missing(h)
                if not M:
                    m.rows[index[n - 1][(J2, j)]][col] = _one(ring)
                elif M == (0,):
                    c = n - len(J)
                    dmat = C.d(c)
                    for w in range(C.dim(c - 1)):
                        if not _is0(ring, dmat.rows[w][j]):
                            r = index[n - 1][(J2, w)]
                            m.rows[r] = _addat(ring, m.rows[r], col, dmat.rows[w][j])
            fc.append(m)
        face.append(fc)
    for n in range(trunc):
        dg = []
        for i in range(n + 1):
            m = Mat.zero(ring, dims[n + 1], dims[n])
            for col, (J, j) in enumerate(monomials[n]):
                h = compose_ordinal(delta_degen(n, i), epi_from_constancies(n, J))
                assert not ordinal_missing(h)
                m.rows[index[n + 1][(ordinal_constancies(h), j)]][col] = _one(ring)
            dg.append(m)
        degen.append(dg)
    degen.append([])

    module = SimplicialModule(ring, dims, face, degen)
    return DenormSimplicial(module, monomials, index, C)


def _one(ring):
    return 1 if ring is INT_RING else ring.one


def _neg1(ring):
    return -1 if ring is INT_RING else ring.neg(ring.one)


def _is0(ring, x):
    return x == 0 if ring is INT_RING else ring.is_zero(x)


def _addat(ring, row, col, val):
    row = list(row)
    row[col] = (row[col] + val) if ring is INT_RING else ring.add(row[col], val)
    return row


def denorm_map_cochain(src: DenormCosimplicial, dst: DenormCosimplicial, f):
    """Levelwise matrices of the denormalized map induced by f: src.source -> dst.source.

    f: {degree: Mat}. The induced map sends a monomial copy of degree c
    through f[c] without touching the monomial indices.
    """
    out = []
    for n in range(len(src.monomials)):
        m = Mat.zero(src.module.ring, len(dst.monomials[n]), len(src.monomials[n]))
        for col, (J, j) in enumerate(src.monomials[n]):
            c = n - len(J)
            fm = f.get(c)
            if fm is None:
                continue
            for w in range(fm.r):
                if not _is0(src.module.ring, fm.rows[w][j]):
                    m.rows[dst.index[n][(J, w)]][col] = fm.rows[w][j]
        out.append(m)
    return out


def denorm_map_chain(src: DenormSimplicial, dst: DenormSimplicial, f):
    out = []
    for n in range(len(src.monomials)):
        m = Mat.zero(src.module.ring, len(dst.monomials[n]), len(src.monomials[n]))
        for col, (J, j) in enumerate(src.monomials[n]):
            c = n - len(J)
            fm = f.get(c)
            if fm is None:
                continue
            for w in range(fm.r):
                if not _is0(src.module.ring, fm.rows[w][j]):
                    m.rows[dst.index[n][(J, w)]][col] = fm.rows[w][j]
        out.append(m)
    return out


# ------------------------------------------------------- inverse-pair witnesses


def counit_cosimplicial(A: CosimplicialModule, norm: NormalizedData,
                        den: DenormCosimplicial):
    """Levelwise maps den -> A sending a monomial to iterated cofaces of
    the included normalized vector. Both composites of the Dold-Kan pair
    are checked through these.
    """
    maps = []
    for n in range(A.trunc + 1):
        cols = []
        for (J, j) in den.monomials[n]:
            v = norm.inclusion[n - len(J)].col(j)
            lev = n - len(J)
            for a in sorted(J):
                lev += 1
                v = A.coface[lev][a].apply(v)
            cols.append(v)
        maps.append(Mat.from_cols(A.ring, A.dims[n], cols))
    return maps


def counit_simplicial(V: SimplicialModule, norm: NormalizedData,
                      den: DenormSimplicial):
    maps = []
    for n in range(V.trunc + 1):
        cols = []
        for (J, j) in den.monomials[n]:
            v = norm.inclusion[n - len(J)].col(j)
            lev = n - len(J)
            for a in sorted(J):
                v = V.degen[lev][a].apply(v)
                lev += 1
            cols.append(v)
        maps.append(Mat.from_cols(V.ring, V.dims[n], cols))
    return maps


def is_cosimplicial_iso(A: CosimplicialModule, B: CosimplicialModule, maps):
    """maps[n]: B_n-valued matrix on A's levels... (A -> B levelwise)."""
    T = A.trunc
    assert B.trunc == T
    for n in range(T + 1):
        if maps[n].r != maps[n].c or maps[n].inverse() is None:
            return False
    for n in range(1, T + 1):
        for i in range(n + 1):
            if not (maps[n] @ A.coface[n][i] == B.coface[n][i] @ maps[n - 1]):
                return False
        for i in range(n):
            if not (maps[n - 1] @ A.codegen[n][i] == B.codegen[n][i] @ maps[n]):
                return False
    return True


def is_simplicial_iso(V: SimplicialModule, W: SimplicialModule, maps):
    T = V.trunc
    assert W.trunc == T
    for n in range(T + 1):
        if maps[n].r != maps[n].c or maps[n].inverse() is None:
            return False
    for n in range(1, T + 1):
        for i in range(n + 1):
            if not (maps[n - 1] @ V.face[n][i] == W.face[n][i] @ maps[n]):
                return False
    for n in range(T):
        for i in range(n + 1):
            if not (maps[n + 1] @ V.degen[n][i] == W.degen[n][i] @ maps[n]):
                return False
    return True


# ------------------------------------------------------------------ bicomplex


class Bicomplex:
    """Free modules V^b_a with d_c raising b, d_s lowering a, commuting.

    dims: {(b, a): dim > 0}; dc[(b, a)]: Mat into (b+1, a);
    ds[(b, a)]: Mat into (b, a-1).
    """

    def __init__(self, ring, dims, dc, ds, check=True):
        self.ring = ring
        self.dims = {k: d for k, d in dims.items() if d}
        self.dc = {}
        self.ds = {}
        for (b, a), m in dc.items():
            assert m.c == self.dim(b, a) and m.r == self.dim(b + 1, a)
            if not m.is_zero():
                self.dc[(b, a)] = m
        for (b, a), m in ds.items():
            assert m.c == self.dim(b, a) and m.r == self.dim(b, a - 1)
            if not m.is_zero():
                self.ds[(b, a)] = m
        if check:
            self.validate()

    def dim(self, b, a):
        return self.dims.get((b, a), 0)

    def dc_at(self, b, a):
        if (b, a) in self.dc:
            return self.dc[(b, a)]
        return Mat.zero(self.ring, self.dim(b + 1, a), self.dim(b, a))

    def ds_at(self, b, a):
        if (b, a) in self.ds:
            return self.ds[(b, a)]
        return Mat.zero(self.ring, self.dim(b, a - 1), self.dim(b, a))

    def validate(self):
        for (b, a) in self.dims:
            assert (self.dc_at(b + 1, a) @ self.dc_at(b, a)).is_zero(), (b, a)
            assert (self.ds_at(b, a - 1) @ self.ds_at(b, a)).is_zero(), (b, a)
            lhs = self.dc_at(b, a - 1) @ self.ds_at(b, a)
            rhs = self.ds_at(b + 1, a) @ self.dc_at(b, a)
            assert lhs == rhs, ("commute", b, a)
        return True

    def column(self, b):
        """Chain complex (fixed cochain degree b, differential d_s)."""
        dims = {a: d for (bb, a), d in self.dims.items() if bb == b}
        diff = {a: m for (bb, a), m in self.ds.items() if bb == b}
        return Complex(self.ring, dims, diff, down=True, check=False)

    def is_zero(self):
        return not self.dims


def brutal_truncate(B: Bicomplex, bmin=1):
    """Keep only cochain degrees >= bmin."""
    dims = {(b, a): d for (b, a), d in B.dims.items() if b >= bmin}
    dc = {(b, a): m for (b, a), m in B.dc.items() if b >= bmin}
    ds = {(b, a): m for (b, a), m in B.ds.items() if b >= bmin}
    return Bicomplex(B.ring, dims, dc, ds, check=False)


@dataclass
class TotComplex:
    complex: Complex
    layout: dict  # total degree -> ordered list of ((b, a), offset, dim)


def tot_product(B: Bicomplex) -> TotComplex:
    """Total complex on degree a - b with differential d_s + (-1)^a d_c."""
    layout = {}
    for (b, a), d in sorted(B.dims.items()):
        n = a - b
        row = layout.setdefault(n, [])
        off = row[-1][1] + row[-1][2] if row else 0
        row.append(((b, a), off, d))
    dims = {n: sum(e[2] for e in row) for n, row in layout.items()}
    offs = {n: {ba: off for (ba, off, d) in row} for n, row in layout.items()}
    diff = {}
    for n, row in layout.items():
        if n - 1 not in layout:
            continue
        m = Mat.zero(B.ring, dims[n - 1], dims[n])
        for ((b, a), coff, d) in row:
            for tgt, piece in (((b, a - 1), B.ds_at(b, a)),
                               ((b + 1, a), B.dc_at(b, a) if a % 2 == 0
                                else B.dc_at(b, a).scale(-1))):
                if tgt in offs[n - 1] and not piece.is_zero():
                    roff = offs[n - 1][tgt]
                    for i in range(piece.r):
                        for j in range(piece.c):
                            m.rows[roff + i][coff + j] = piece.rows[i][j]
        diff[n] = m
    return TotComplex(Complex(B.ring, dims, diff, down=True), layout)


def transpose_bicomplex(B: Bicomplex):
    """Swap the two directions after reflecting both within their bounds.

    Returns (W, shift) with H_n(Tot B) isomorphic to H_{n-shift}(Tot W).
    """
    if B.is_zero():
        return Bicomplex(B.ring, {}, {}, {}, check=False), 0
    amax = max(a for (b, a) in B.dims)
    bmax = max(b for (b, a) in B.dims)
    dims, dc, ds = {}, {}, {}
    for (b, a), d in B.dims.items():
        dims[(amax - a, bmax - b)] = d
    for (b, a) in B.dims:
        m = B.ds_at(b, a)
        if m.r:
            dc[(amax - a, bmax - b)] = m
        m = B.dc_at(b, a)
        if m.r:
            ds[(amax - a, bmax - b)] = m
    return Bicomplex(B.ring, dims, dc, ds, check=False), amax - bmax


# ------------------------------------------------- cosimplicial simplicial


class CsSimpModule:
    """Cosimplicial (index m) simplicial (index j) free modules.

    coface[(m, j)][i]: (m-1, j) -> (m, j);  codegen[(m, j)][i]: (m, j) -> (m-1, j);
    face[(m, j)][i]: (m, j) -> (m, j-1);    degen[(m, j)][i]: (m, j) -> (m, j+1).
    """

    def __init__(self, ring, ctrunc, strunc, dims, coface, codegen,
                 face, degen, check=True):
        self.ring = ring
        self.ctrunc = ctrunc
        self.strunc = strunc
        self.dims = dict(dims)
        self.coface = coface
        self.codegen = codegen
        self.face = face
        self.degen = degen
        if check:
            self.validate()

    def dim(self, m, j):
        return self.dims.get((m, j), 0)

    def cs_column(self, j) -> CosimplicialModule:
        dims = [self.dim(m, j) for m in range(self.ctrunc + 1)]
        cf = [None] + [self.coface[(m, j)] for m in range(1, self.ctrunc + 1)]
        cd = [None] + [self.codegen[(m, j)] for m in range(1, self.ctrunc + 1)]
        return CosimplicialModule(self.ring, dims, cf, cd, check=False)

    def cs_row(self, m) -> SimplicialModule:
        dims = [self.dim(m, j) for j in range(self.strunc + 1)]
        fc = [None] + [self.face[(m, j)] for j in range(1, self.strunc + 1)]
        dg = [self.degen[(m, j)] for j in range(self.strunc)] + [[]]
        return SimplicialModule(self.ring, dims, fc, dg, check=False)

    def validate(self):
        for j in range(self.strunc + 1):
            col = self.cs_column(j)
            col.validate()
        for m in range(self.ctrunc + 1):
            row = self.cs_row(m)
            row.validate()
        # the two directions commute
        for m in range(1, self.ctrunc + 1):
            for j in range(self.strunc + 1):
                for i1 in range(m + 1):
                    cf = self.coface[(m, j)][i1]
                    if j >= 1:
                        for i2 in range(j + 1):
                            lhs = self.face[(m, j)][i2] @ cf
                            rhs = self.coface[(m, j - 1)][i1] @ self.face[(m - 1, j)][i2]
                            assert lhs == rhs, ("coface/face", m, j, i1, i2)
                    if j < self.strunc:
                        for i2 in range(j + 1):
                            lhs = self.degen[(m, j)][i2] @ cf
                            rhs = self.coface[(m, j + 1)][i1] @ self.degen[(m - 1, j)][i2]
                            assert lhs == rhs, ("coface/degen", m, j, i1, i2)
                for i1 in range(m):
                    cd = self.codegen[(m, j)][i1]
                    if j >= 1:
                        for i2 in range(j + 1):
                            lhs = self.face[(m - 1, j)][i2] @ cd
                            rhs = self.codegen[(m, j - 1)][i1] @ self.face[(m, j)][i2]
                            assert lhs == rhs, ("codegen/face", m, j, i1, i2)
        return True


def cs_from_cosimplicial(A: CosimplicialModule, strunc) -> CsSimpModule:
    """Constant simplicial direction on a cosimplicial module."""
    ring = A.ring
    dims, coface, codegen, face, degen = {}, {}, {}, {}, {}
    for m in range(A.trunc + 1):
        for j in range(strunc + 1):
            dims[(m, j)] = A.dims[m]
            ident = Mat.eye(ring, A.dims[m])
            if m >= 1:
                coface[(m, j)] = A.coface[m]
                codegen[(m, j)] = A.codegen[m]
            if j >= 1:
                face[(m, j)] = [ident] * (j + 1)
            if j < strunc:
                degen[(m, j)] = [ident] * (j + 1)
    return CsSimpModule(ring, A.trunc, strunc, dims, coface, codegen,
                        face, degen, check=False)


def cs_from_simplicial(V: SimplicialModule, ctrunc) -> CsSimpModule:
    """Constant cosimplicial direction on a simplicial module."""
    ring = V.ring
    dims, coface, codegen, face, degen = {}, {}, {}, {}, {}
    for m in range(ctrunc + 1):
        for j in range(V.trunc + 1):
            dims[(m, j)] = V.dims[j]
            ident = Mat.eye(ring, V.dims[j])
            if m >= 1:
                coface[(m, j)] = [ident] * (m + 1)
                codegen[(m, j)] = [ident] * m
            if j >= 1:
                face[(m, j)] = V.face[j]
            if j < V.trunc:
                degen[(m, j)] = V.degen[j]
    return CsSimpModule(ring, ctrunc, V.trunc, dims, coface, codegen,
                        face, degen, check=False)


def cs_module_from_bicomplex(B: Bicomplex, ctrunc, strunc) -> CsSimpModule:
    """Double denormalization: D_c applied over the D^s of each column."""
    ring = B.ring
    bmax = max((b for (b, a) in B.dims), default=0)
    amax = max((a for (b, a) in B.dims), default=0)
    V = {}
    for b in range(max(bmax, ctrunc) + 1):
        V[b] = denormalize_chain(B.column(b), strunc)
    dcmaps = {}
    for b in range(max(bmax, ctrunc)):
        f = {a: B.dc_at(b, a) for a in range(amax + 1) if B.dim(b + 1, a)}
        dcmaps[b] = denorm_map_chain(V[b], V[b + 1], f)
    Dj = {}
    for j in range(strunc + 1):
        dims = {b: V[b].module.dims[j] for b in V}
        diff = {b: dcmaps[b][j] for b in dcmaps}
        Dj[j] = denormalize_cochain(Complex(ring, dims, diff, down=False), ctrunc)
    dims, coface, codegen, face, degen = {}, {}, {}, {}, {}
    for j in range(strunc + 1):
        mod = Dj[j].module
        for m in range(ctrunc + 1):
            dims[(m, j)] = mod.dims[m]
            if m >= 1:
                coface[(m, j)] = mod.coface[m]
                codegen[(m, j)] = mod.codegen[m]
    for j in range(strunc + 1):
        if j >= 1:
            for i in range(j + 1):
                f = {b: V[b].module.face[j][i] for b in V}
                maps = denorm_map_cochain(Dj[j], Dj[j - 1], f)
                for m in range(ctrunc + 1):
                    face.setdefault((m, j), [None] * (j + 1))
                    if face[(m, j)][i] is None:
                        face[(m, j)][i] = maps[m]
        if j < strunc:
            for i in range(j + 1):
                f = {b: V[b].module.degen[j][i] for b in V}
                maps = denorm_map_cochain(Dj[j], Dj[j + 1], f)
                for m in range(ctrunc + 1):
                    degen.setdefault((m, j), [None] * (j + 1))
                    if degen[(m, j)][i] is None:
                        degen[(m, j)][i] = maps[m]
    # flatten the per-i assembly into plain lists
    face = {(m, j): list(v) for (m, j), v in face.items()}
    degen = {(m, j): list(v) for (m, j), v in degen.items()}
    return CsSimpModule(ring, ctrunc, strunc, dims, coface, codegen,
                        face, degen)


def bicomplex_nsnc(M: CsSimpModule) -> Bicomplex:
    """Conormalize cosimplicially, then normalize simplicially."""
    ring = M.ring
    # step 1: conormalized columns per simplicial level, with restricted ops
    n1 = {}
    incl1 = {}
    dc1 = {}
    for j in range(M.strunc + 1):
        nd = conormalize(M.cs_column(j))
        for m in range(M.ctrunc + 1):
            n1[(m, j)] = nd.complex.dim(m)
            incl1[(m, j)] = nd.inclusion[m]
            dc1[(m, j)] = nd.complex.d(m)
    face1, degen1 = {}, {}
    for m in range(M.ctrunc + 1):
        for j in range(1, M.strunc + 1):
            ops = []
            for i in range(j + 1):
                img = M.face[(m, j)][i] @ incl1[(m, j)]
                co = incl1[(m, j - 1)].solve_cols(img)
                assert co is not None
                ops.append(co)
            face1[(m, j)] = ops
        for j in range(M.strunc):
            ops = []
            for i in range(j + 1):
                img = M.degen[(m, j)][i] @ incl1[(m, j)]
                co = incl1[(m, j + 1)].solve_cols(img)
                assert co is not None
                ops.append(co)
            degen1[(m, j)] = ops
    # step 2: normalize each row simplicially, restrict d_c
    dims, dc, ds = {}, {}, {}
    incl2 = {}
    for m in range(M.ctrunc + 1):
        fc = [None] + [face1[(m, j)] for j in range(1, M.strunc + 1)]
        dg = [degen1[(m, j)] for j in range(M.strunc)] + [[]]
        row = SimplicialModule(ring, [n1[(m, j)] for j in range(M.strunc + 1)],
                               fc, dg, check=False)
        nd = normalize_simplicial(row)
        for a in range(M.strunc + 1):
            if nd.complex.dim(a):
                dims[(m, a)] = nd.complex.dim(a)
            incl2[(m, a)] = nd.inclusion[a]
            if a >= 1 and nd.complex.dim(a) and nd.complex.dim(a - 1):
                ds[(m, a)] = nd.complex.d(a)
    for m in range(M.ctrunc):
        for a in range(M.strunc + 1):
            if not dims.get((m, a)) or not dims.get((m + 1, a)):
                continue
            img = dc1[(m, a)] @ incl2[(m, a)]
            co = incl2[(m + 1, a)].solve_cols(img)
            assert co is not None
            dc[(m, a)] = co
    return Bicomplex(ring, dims, dc, ds)


# -------------------------------------------------- homotopy group formulas


def _as_bicomplex(M) -> Bicomplex:
    return M if isinstance(M, Bicomplex) else bicomplex_nsnc(M)


def pi_mmc_abelian(M, n) -> Homology:
    """H_{n-1} of the total complex of the cochain-positive part."""
    B = brutal_truncate(_as_bicomplex(M), 1)
    return tot_product(B).complex.homology(n - 1)


def pi_ddel_abelian(M, n) -> Homology:
    B = _as_bicomplex(M)
    return tot_product(B).complex.homology(n - 1)


def point_cohomology(A: CosimplicialModule, i) -> Homology:
    """Cohomology of the one-point constant diagram with coefficients A."""
    assert A.trunc >= i + 2, "need truncation >= i+2"
    N = conormalize(A).complex
    if i == 0:
        d1 = N.d(1)
        k = N.dim(1) - d1.rank()
        return Homology(ring_name(A.ring), k)
    return N.homology(i + 1)


# ---------------------------------------------- relative normalized chains


@dataclass
class RelChain:
    """Normalized chains of a pair: basis the nondegenerate cells not in
    the subcomplex, faces landing in the subcomplex or degenerate dropped.
    """

    complex: Complex
    basis: list   # per degree: list of labels
    pos: list     # per degree: {label: index}


def relative_chain(X, in_sub, ring, maxdeg) -> RelChain:
    T = min(maxdeg, X.trunc)
    basis, pos = [], []
    for a in range(T + 1):
        labs = []
        for k in X.nondegenerate(a):
            lab = X.label_of(a, k)
            if not in_sub(a, lab):
                labs.append(lab)
        basis.append(labs)
        pos.append({lab: i for i, lab in enumerate(labs)})
    dims = {a: len(basis[a]) for a in range(T + 1)}
    diff = {}
    one, neg = _one(ring), _neg1(ring)
    for a in range(1, T + 1):
        if not dims[a] or not dims[a - 1]:
            continue
        m = Mat.zero(ring, dims[a - 1], dims[a])
        for col, lab in enumerate(basis[a]):
            k = X.index[a][lab]
            for i in range(a + 1):
                flab = X.label_of(a - 1, X.d(a, i, k))
                r = pos[a - 1].get(flab)
                if r is not None:
                    m.rows[r] = _addat(ring, m.rows[r], col,
                                       one if i % 2 == 0 else neg)
        diff[a] = m
    return RelChain(Complex(ring, dims, diff, down=True), basis, pos)


def relative_chain_map(src: RelChain, dst: RelChain, fn, check=True):
    """Matrices per degree of the map induced by the label function fn.

    fn(degree, label) -> label in dst's ambient complex; images that are
    degenerate or in the subcomplex contribute zero.
    """
    ring = src.complex.ring
    out = {}
    top = min(len(src.basis), len(dst.basis)) - 1
    for a in range(top + 1):
        m = Mat.zero(ring, len(dst.basis[a]), len(src.basis[a]))
        for col, lab in enumerate(src.basis[a]):
            r = dst.pos[a].get(fn(a, lab))
            if r is not None:
                m.rows[r][col] = _one(ring)
        out[a] = m
    if check:
        for a in range(1, top + 1):
            lhs = out[a - 1] @ src.complex.d(a)
            rhs = dst.complex.d(a) @ out[a]
            assert lhs == rhs, f"not a chain map at degree {a}"
    return out


# ----------------------------------------- direct abelian tower enumeration


@dataclass
class TowerSpace:
    """Solutions of the level-k linear model, as a subspace of the block
    variables phi_n in chain degree a (one matrix entry per variable).
    """

    level: int
    blocks: list    # (n, a, rows, cols, offset)
    nvars: int
    basis: Mat      # nvars x dim, columns spanning the solution space


class MmcAbelian:
    """Truncated higher Maurer-Cartan spaces of a cosimplicial simplicial
    abelian group, solved degreewise as systems of chain-map conditions on
    the relative cube complexes.

    Levels are simplicial: level k is the solution space over the k-simplex
    direction; faces and degeneracies act by precomposition.
    """

    def __init__(self, M):
        self.M = M
        self.ring = M.ring
        self.B = _as_bicomplex(M)
        ms = [m for (m, a) in self.B.dims]
        self.mmax = max(ms) if ms else 0
        self.n_limit = self.mmax - 1
        avals = [a for (m, a) in self.B.dims]
        self.amax = max(avals) if avals else 0
        self._pairs = {}
        self._spaces = {}
        self._incl_maps = {}

    # chain data of (I^n x Delta^k, gimel^n x Delta^k)
    def _pair(self, n, k):
        if (n, k) not in self._pairs:
            T = min(n + k, self.amax + 1)
            X = product_sset(cube(n, T), standard_simplex(k, T))
            keep = cube_partial_boundary_keep(n)
            self._pairs[(n, k)] = relative_chain(
                X, lambda a, lab: keep(a, lab[0]), self.ring, T)
        return self._pairs[(n, k)]

    def _col_dim(self, m, a):
        return self.B.dim(m, a)

    def space(self, k) -> TowerSpace:
        if k in self._spaces:
            return self._spaces[k]
        blocks = []
        off = 0
        pair = {n: self._pair(n, k) for n in range(self.n_limit + 1)}
        for n in range(self.n_limit + 1):
            P = pair[n].complex
            for a in range(self.amax + 1):
                r, c = self._col_dim(n + 1, a), P.dim(a)
                if r and c:
                    blocks.append((n, a, r, c, off))
                    off += r * c
        nvars = off
        bix = {(n, a): (r, c, o) for (n, a, r, c, o) in blocks}

        rows = []

        def block_entry(n, a, r, c):
            if (n, a) not in bix:
                return None
            br, bc, o = bix[(n, a)]
            return o + r * bc + c

        # chain-map conditions: phi^{(a-1)} dP_a = dK_a phi^{(a)}
        for n in range(self.n_limit + 1):
            P = pair[n].complex
            K = self.B.column(n + 1)
            for a in range(1, self.amax + 2):
                dP = P.d(a)
                dK = K.d(a)
                for r in range(K.dim(a - 1)):
                    for c in range(P.dim(a)):
                        eq = {}
                        for t in range(P.dim(a - 1)):
                            if not _is0(self.ring, dP.rows[t][c]):
                                v = block_entry(n, a - 1, r, t)
                                if v is not None:
                                    eq[v] = _radd(self.ring, eq.get(v), dP.rows[t][c])
                        for s in range(K.dim(a)):
                            if not _is0(self.ring, dK.rows[r][s]):
                                v = block_entry(n, a, s, c)
                                if v is not None:
                                    eq[v] = _radd(self.ring, eq.get(v),
                                                  _rneg(self.ring, dK.rows[r][s]))
                        if eq:
                            rows.append(eq)
        # coupling: dc . phi_{n-1} = phi_n . iota
        for n in range(1, self.n_limit + 1):
            iota = self._iota(n, k, pair[n - 1], pair[n])
            for a in range(self.amax + 1):
                dc = self.B.dc_at(n, a)
                N = iota.get(a)
                for r in range(self._col_dim(n + 1, a)):
                    for c in range(pair[n - 1].complex.dim(a)):
                        eq = {}
                        for t in range(self._col_dim(n, a)):
                            if not _is0(self.ring, dc.rows[r][t]):
                                v = block_entry(n - 1, a, t, c)
                                if v is not None:
                                    eq[v] = _radd(self.ring, eq.get(v), dc.rows[r][t])
                        if N is not None:
                            for s in range(pair[n].complex.dim(a)):
                                if not _is0(self.ring, N.rows[s][c]):
                                    v = block_entry(n, a, r, s)
                                    if v is not None:
                                        eq[v] = _radd(self.ring, eq.get(v),
                                                      _rneg(self.ring, N.rows[s][c]))
                        if eq:
                            rows.append(eq)

        basis = _solve_sparse(self.ring, rows, nvars)
        sp = TowerSpace(k, blocks, nvars, basis)
        self._spaces[k] = sp
        return sp

    def _iota(self, n, k, src: RelChain, dst: RelChain):
        def fn(a, lab):
            c, t = lab
            return (((0,) * (a + 1),) + c, t)
        return relative_chain_map(src, dst, fn)

    # simplicial structure on solution spaces --------------------------------

    def _transport(self, k_from, k_to, vertex_map):
        """Variable-level matrix of precomposition with the map induced by
        the ordinal action on the simplex factor."""
        key = (k_from, k_to, vertex_map)
        if key in self._incl_maps:
            return self._incl_maps[key]
        sp_from = self.space(k_from)
        sp_to = self.space(k_to)
        out = Mat.zero(self.ring, sp_to.nvars, sp_from.nvars)
        bfrom = {(bn, a): (r, cd, off) for (bn, a, r, cd, off) in sp_from.blocks}
        for n in range(self.n_limit + 1):
            src = self._pair(n, k_to)
            dst = self._pair(n, k_from)

            def fn(a, lab, _vm=vertex_map):
                c, t = lab
                return (c, tuple(_vm[v] for v in t))

            N = relative_chain_map(src, dst, fn)
            for (bn, a, r, c_to, off_to) in sp_to.blocks:
                if bn != n or (bn, a) not in bfrom:
                    continue
                Na = N.get(a)
                if Na is None:
                    continue
                rf, c_from, off_from = bfrom[(bn, a)]
                assert rf == r and Na.r == c_from and Na.c == c_to
                for i in range(r):
                    for cc in range(c_to):
                        for oc in range(c_from):
                            v = Na.rows[oc][cc]
                            if not _is0(self.ring, v):
                                out.rows[off_to + i * c_to + cc][off_from + i * c_from + oc] = v
        self._incl_maps[key] = out
        return out

    def face_map(self, k, i) -> Mat:
        """i-th face, level k -> k-1, in solution-space bases."""
        assert k >= 1 and 0 <= i <= k
        vm = tuple(v if v < i else v + 1 for v in range(k))
        T = self._transport(k, k - 1, vm)
        img = T @ self.space(k).basis
        X = self.space(k - 1).basis.solve_cols(img)
        assert X is not None, "face left the solution space"
        return X

    def degen_map(self, k, i) -> Mat:
        """i-th degeneracy, level k -> k+1, in solution-space bases."""
        assert 0 <= i <= k
        vm = tuple(v if v <= i else v - 1 for v in range(k + 2))
        T = self._transport(k, k + 1, vm)
        img = T @ self.space(k).basis
        X = self.space(k + 1).basis.solve_cols(img)
        assert X is not None, "degeneracy left the solution space"
        return X

    def dim(self, k):
        return self.space(k).basis.c

    def solution_count(self, k):
        """Cardinality of the level-k solution space (finite fields)."""
        from .exact import PrimeField
        if not isinstance(self.ring, PrimeField):
            return None
        return self.ring.p ** self.dim(k)

    def moore(self, jmax):
        """Intersected-kernel bases and the 0th-face differential."""
        bases, diffs = {}, {}
        for j in range(jmax + 1):
            d0 = self.dim(j)
            if j == 0:
                bases[0] = Mat.eye(self.ring, d0)
            else:
                st = Mat.zero(self.ring, 0, d0)
                for i in range(1, j + 1):
                    st = st.vstack(self.face_map(j, i))
                bases[j] = st.kernel()
        for j in range(1, jmax + 1):
            img = self.face_map(j, 0) @ bases[j]
            X = bases[j - 1].solve_cols(img)
            assert X is not None
            diffs[j] = X
        return bases, diffs

    def pi(self, j) -> Homology:
        """Homotopy of the tower as a simplicial abelian group."""
        bases, diffs = self.moore(j + 1)
        C = Complex(self.ring, {jj: b.c for jj, b in bases.items()},
                    diffs, down=True, check=False)
        return C.homology(j)

    # honest enumeration (finite fields) ------------------------------------

    def enumerate_level(self, k, cap=4096):
        """All solution vectors at level k as coefficient tuples."""
        from .exact import PrimeField
        assert isinstance(self.ring, PrimeField), "need a finite field"
        p = self.ring.p
        sp = self.space(k)
        d = sp.basis.c
        if p ** d > cap:
            raise ValueError(f"{p}^{d} vectors exceed cap {cap}")
        cols = [sp.basis.col(j) for j in range(d)]
        out = []
        for coeffs in itertools.product(range(p), repeat=d):
            v = [0] * sp.nvars
            for cf, colv in zip(coeffs, cols):
                if cf:
                    for t in range(sp.nvars):
                        v[t] = (v[t] + cf * colv[t]) % p
            out.append(tuple(v))
        return out

    def pi0_enumerated(self, cap=4096):
        """Connected components by union-find over level-1 homotopies."""
        pts = self.enumerate_level(0, cap)
        idx = {v: i for i, v in enumerate(pts)}
        parent = list(range(len(pts)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        d0 = self._transport(1, 0, (0,))   # vertex map [0] -> [1], image 0
        d1 = self._transport(1, 0, (1,))
        # transports here give d^0 = restriction to vertex... orient both ways
        for h in self.enumerate_level(1, cap):
            a = idx[tuple(d0.apply(list(h)))]
            b = idx[tuple(d1.apply(list(h)))]
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        return len({find(i) for i in range(len(pts))})


def mmc_abelian(M: CsSimpModule) -> MmcAbelian:
    """Solver object for the truncated abelian Maurer-Cartan tower."""
    return MmcAbelian(M)


def linearize_sset(ring, X) -> SimplicialModule:
    """Free module levelwise on a truncated simplicial set."""
    dims = [X.size(n) for n in range(X.trunc + 1)]
    face = [None]
    for n in range(1, X.trunc + 1):
        ops = []
        for i in range(n + 1):
            m = Mat.zero(ring, dims[n - 1], dims[n])
            for c in range(dims[n]):
                m.rows[X.d(n, i, c)][c] = _one(ring)
            ops.append(m)
        face.append(ops)
    degen = []
    for n in range(X.trunc):
        ops = []
        for i in range(n + 1):
            m = Mat.zero(ring, dims[n + 1], dims[n])
            for c in range(dims[n]):
                m.rows[X.s(n, i, c)][c] = _one(ring)
            ops.append(m)
        degen.append(ops)
    degen.append([])
    return SimplicialModule(ring, dims, face, degen)


# ----------------------------------------------------------- random fixtures


def random_invertible(ring, rng, n):
    """Random invertible matrix; unimodular over the integers."""
    m = Mat.eye(ring, n)
    if n == 0:
        return m
    for _ in range(2 * n + 2):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        c = rng.choice([-1, 1, 1, 2])
        for t in range(n):
            m.rows[i][t] = _radd(ring, m.rows[i][t],
                                 _rmul(ring, c, m.rows[j][t]))
    if n > 1:
        i, j = rng.randrange(n), rng.randrange(n)
        if i != j:
            m.rows[i], m.rows[j] = m.rows[j], m.rows[i]
    return m


def random_complex(ring, rng, maxdeg, maxdim=2, down=False, torsion=False):
    """Sum of dots and identity segments in a random basis."""
    dots = {n: rng.randrange(maxdim + 1) for n in range(maxdeg + 1)}
    segs = {n: rng.randrange(maxdim + 1) for n in range(1, maxdeg + 1)}
    # segment at n couples degree n to n-1 (down) after reindexing for up
    dims = {}
    for n in range(maxdeg + 1):
        dims[n] = dots[n] + segs.get(n, 0) + segs.get(n + 1, 0)
    diff = {}
    for n in range(1, maxdeg + 1):
        if not dims[n] or not dims[n - 1]:
            continue
        m = Mat.zero(ring, dims[n - 1], dims[n])
        for t in range(segs.get(n, 0)):
            r = dots[n - 1] + segs.get(n - 1, 0) + t
            c = dots[n] + t
            val = rng.choice([2, 3]) if torsion and rng.random() < 0.5 else 1
            m.rows[r][c] = _rcoerce(ring, val)
        diff[n] = m
    S = {n: random_invertible(ring, rng, dims[n]) for n in dims}
    Sinv = {n: (S[n].inverse() if dims[n] else S[n]) for n in dims}
    for n in list(diff):
        diff[n] = S[n - 1] @ diff[n] @ Sinv[n]
    if not down:
        # reflect into a cochain complex on the same degree range
        dims2 = {maxdeg - n: d for n, d in dims.items()}
        diff2 = {maxdeg - n: m for n, m in diff.items()}
        return Complex(ring, dims2, diff2, down=False)
    return Complex(ring, dims, diff, down=True)


def random_cosimplicial_module(ring, rng, trunc, maxdim=2) -> CosimplicialModule:
    C = random_complex(ring, rng, trunc, maxdim, down=False)
    A = denormalize_cochain(C, trunc).module
    S = [random_invertible(ring, rng, A.dims[n]) for n in range(trunc + 1)]
    Sinv = [s.inverse() for s in S]
    coface = [None] + [[S[n] @ A.coface[n][i] @ Sinv[n - 1] for i in range(n + 1)]
                       for n in range(1, trunc + 1)]
    codegen = [None] + [[S[n - 1] @ A.codegen[n][i] @ Sinv[n] for i in range(n)]
                        for n in range(1, trunc + 1)]
    return CosimplicialModule(ring, A.dims, coface, codegen)


def random_simplicial_module(ring, rng, trunc, maxdim=2) -> SimplicialModule:
    C = random_complex(ring, rng, trunc, maxdim, down=True)
    V = denormalize_chain(C, trunc).module
    S = [random_invertible(ring, rng, V.dims[n]) for n in range(trunc + 1)]
    Sinv = [s.inverse() for s in S]
    face = [None] + [[S[n - 1] @ V.face[n][i] @ Sinv[n] for i in range(n + 1)]
                     for n in range(1, trunc + 1)]
    degen = [[S[n + 1] @ V.degen[n][i] @ Sinv[n] for i in range(n + 1)]
             for n in range(trunc)] + [[]]
    return SimplicialModule(ring, V.dims, face, degen)


def random_bicomplex(ring, rng, bmax, amax, maxdim=1) -> Bicomplex:
    """Random sum of dots, horizontal/vertical segments and unit squares."""
    dims = {(b, a): 0 for b in range(bmax + 1) for a in range(amax + 1)}
    dc_cells = []
    ds_cells = []

    def fresh(b, a):
        dims[(b, a)] += 1
        return dims[(b, a)] - 1

    for b in range(bmax + 1):
        for a in range(amax + 1):
            for _ in range(rng.randrange(maxdim + 1)):
                fresh(b, a)
            if b < bmax and rng.random() < 0.5:
                s = fresh(b, a)
                t = fresh(b + 1, a)
                dc_cells.append(((b, a), s, t))
            if a >= 1 and rng.random() < 0.5:
                s = fresh(b, a)
                t = fresh(b, a - 1)
                ds_cells.append(((b, a), s, t))
            if b < bmax and a >= 1 and rng.random() < 0.4:
                x00 = fresh(b, a)
                x10 = fresh(b + 1, a)
                x01 = fresh(b, a - 1)
                x11 = fresh(b + 1, a - 1)
                dc_cells.append(((b, a), x00, x10))
                dc_cells.append(((b, a - 1), x01, x11))
                ds_cells.append(((b, a), x00, x01))
                ds_cells.append(((b + 1, a), x10, x11))
    dc, ds = {}, {}
    for (ba, s, t) in dc_cells:
        b, a = ba
        m = dc.setdefault(ba, Mat.zero(ring, dims[(b + 1, a)], dims[ba]))
        m.rows[t][s] = _rcoerce(ring, 1)
    for (ba, s, t) in ds_cells:
        b, a = ba
        m = ds.setdefault(ba, Mat.zero(ring, dims[(b, a - 1)], dims[ba]))
        m.rows[t][s] = _rcoerce(ring, 1)
    S = {ba: random_invertible(ring, rng, d) for ba, d in dims.items()}
    Sinv = {ba: S[ba].inverse() for ba in dims}
    dc = {(b, a): S[(b + 1, a)] @ m @ Sinv[(b, a)] for (b, a), m in dc.items()}
    ds = {(b, a): S[(b, a - 1)] @ m @ Sinv[(b, a)] for (b, a), m in ds.items()}
    return Bicomplex(ring, dims, dc, ds)


def _rcoerce(ring, x):
    return x if ring is INT_RING else ring.coerce(x)


def _rmul(ring, a, b):
    if ring is INT_RING:
        return a * b
    return ring.mul(ring.coerce(a), b)


def _radd(ring, cur, val):
    if cur is None:
        return val
    return (cur + val) if ring is INT_RING else ring.add(cur, val)


def _rneg(ring, val):
    return -val if ring is INT_RING else ring.neg(val)


def _solve_sparse(ring, rows, nvars):
    """Basis of the solution space of homogeneous equations.

    rows: list of {var_index: coeff}. Returns a Mat whose columns span the
    kernel; uses a bitset path over F_2.
    """
    from .exact import PrimeField
    if not rows:
        return Mat.eye(ring, nvars)
    if isinstance(ring, PrimeField) and ring.p == 2:
        masks = []
        for eq in rows:
            m = 0
            for v, c in eq.items():
                if c % 2:
                    m |= 1 << v
            if m:
                masks.append(m)
        basis = kernel_f2_bits(masks, nvars)
        cols = [[(bv >> t) & 1 for t in range(nvars)] for bv in basis]
        return Mat.from_cols(ring, nvars, cols)
    dense = []
    for eq in rows:
        row = [ring.zero if ring is not INT_RING else 0] * nvars
        for v, c in eq.items():
            row[v] = c
        dense.append(row)
    return Mat(ring, len(dense), nvars, dense).kernel()
