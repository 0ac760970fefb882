"""Quasi-comonoid carriers and their Maurer-Cartan invariants.

A carrier is a graded family of levels with insert maps raising the grade
(indices 1..n on level n), collapse maps lowering it (indices 0..n-1), an
associative graded product, and a unit in grade 0. The inserts and collapses
obey the simplicial-style exchange rules without the two outer cofaces; the
product is compatible with both families. Carriers come in four flavours,
tagged on the instance: discrete sets, additive groups of a cosimplicial
module, finite groupoids, and truncated simplicial sets.

The Maurer-Cartan set of a discrete carrier consists of the grade-1 elements
killed by the collapse whose insert equals their square. For simplicial
carriers the same data is enriched to towers of cube-indexed maps, one grade
at a time; the homotopy quotient by the grade-0 group is assembled levelwise
as a twisted product. Groupoid carriers admit a two-step description of the
Maurer-Cartan data of their levelwise classifying spaces, implemented here
together with its equivalence relation, diagonal refinement and recovery
maps. Doubly graded carriers restrict to their diagonal, and the diagonal's
Maurer-Cartan set factors into commuting pairs from the first row and first
column.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .exact import Mat
from .simplicial_core import (
    FiniteCategory,
    SimplicialMap,
    TruncatedSimplicialSet,
    TruncationError,
    build_sset,
    cube,
    group_category,
    map_from_labels,
    nerve,
    product_sset,
    simplicial_maps,
    standard_simplex,
)

__all__ = [
    "AxiomFailure",
    "ValidationReport",
    "QuasiComonoid",
    "SimplicialQuasiComonoid",
    "GroupoidQuasiComonoid",
    "QuasiBicomonoid",
    "GroupoidQuasiBicomonoid",
    "validate",
    "mc_set",
    "hom_from_point",
    "diagonal_qm",
    "point_qm",
    "interval_power_qm",
    "collapsed_monoid_qm",
    "envelope_qm",
    "GroupAlgebra",
    "FunctionRing",
    "FiniteCosimplicialRing",
    "cup_product",
    "from_cosimplicial_ring",
    "ring_mc_set",
    "function_ring_cosimplicial",
    "function_module",
    "group_algebra_cosimplicial",
    "constant_ring_cosimplicial",
    "random_cosimplicial_ring",
    "xi_qm",
    "constant_sset",
    "discrete_sqm",
    "envelope_sqm",
    "nerve_qm",
    "TowerFiber",
    "mmc_tower_step",
    "mmc_level",
    "mmc_sset",
    "ddel_finite",
    "sset_components",
    "one_object_abelian_gqm",
    "mc_nerve_groupoid",
    "mc_nerve_classes",
    "diagonal_bi_qm",
    "product_bi_qm",
    "row_qm",
    "col_qm",
    "diag",
    "DiagonalMC",
    "mc_diag",
    "product_gqbm",
    "one_object_abelian_gqbm",
    "tensor_diagonal_module",
    "row_gqm",
    "col_gqm",
    "diag_gqm",
    "mc_diag_nerve",
    "diag_nerve_normal_forms",
    "diag_nerve_classes",
    "diag_recover",
    "diag_derive",
    "GradedRing",
    "unit_graded_ring",
    "free_graded_ring",
    "BimoduleKernel",
    "omega_bimodule",
]


# ------------------------------------------------------- validation reports


@dataclass(frozen=True)
class AxiomFailure:
    """One broken law: the axiom tag and the witness data that exposed it."""

    axiom: str
    witness: tuple


@dataclass
class ValidationReport:
    failures: list = field(default_factory=list)
    checks: int = 0

    @property
    def ok(self):
        return not self.failures

    def __bool__(self):
        return self.ok

    def note(self, axiom, *witness):
        self.failures.append(AxiomFailure(axiom, tuple(witness)))

    def __repr__(self):
        state = "ok" if self.ok else f"{len(self.failures)} failures"
        return f"<validation {state}, {self.checks} checks>"


def _capped(seq, cap, rng):
    seq = list(seq)
    if len(seq) <= cap:
        return seq
    if rng is None:
        return seq[:cap]
    return [seq[rng.randrange(len(seq))] for _ in range(cap)]


# ------------------------------------------------------- discrete carriers


class QuasiComonoid:
    """Discrete carrier: levels are finite sets of hashable elements.

    levels[n] may be None for levels too large to enumerate; `sample(n, rng)`
    then supplies random elements for spot checks. The operation callables
    are d(n, i, x) for inserts (1 <= i <= n), s(n, i, x) for collapses
    (0 <= i < n) and prod(m, n, a, b) for the graded product.
    """

    carrier = "set"

    def __init__(self, trunc, levels, d, s, prod, unit, sample=None):
        self.trunc = trunc
        self.levels = list(levels)
        assert len(self.levels) == trunc + 1
        self.d = d
        self.s = s
        self.prod = prod
        self.unit = unit
        self.sample = sample

    def level(self, n):
        if n > self.trunc:
            raise TruncationError(f"level {n} beyond truncation {self.trunc}")
        if n < 0:
            raise ValueError(f"level {n} is negative")
        if self.levels[n] is None:
            raise ValueError(f"level {n} is not enumerable")
        return list(self.levels[n])

    def __repr__(self):
        sizes = ",".join("?" if lv is None else str(len(lv)) for lv in self.levels)
        return f"<quasi-comonoid/{self.carrier} levels=[{sizes}]>"


def _validate_set(E, rng=None, samples=40, cap=3000):
    rep = ValidationReport()
    T = E.trunc

    def elems(n):
        if E.levels[n] is not None:
            return list(E.levels[n])
        if rng is None or E.sample is None:
            return []
        return [E.sample(n, rng) for _ in range(samples)]

    test = [elems(n) for n in range(T + 1)]

    # exchange of two inserts
    for n in range(T - 1):
        for x in test[n]:
            for i in range(1, n + 1):
                for j in range(i + 1, n + 2):
                    rep.checks += 1
                    a = E.d(n + 1, j, E.d(n, i, x))
                    b = E.d(n + 1, i, E.d(n, j - 1, x))
                    if a != b:
                        rep.note("(1)", n, i, j, x, a, b)
    # exchange of two collapses
    for n in range(2, T + 1):
        for x in test[n]:
            for i in range(n):
                for j in range(i, n - 1):
                    rep.checks += 1
                    a = E.s(n - 1, j, E.s(n, i, x))
                    b = E.s(n - 1, i, E.s(n, j + 1, x))
                    if a != b:
                        rep.note("(2)", n, i, j, x, a, b)
    # collapse of an insert
    for n in range(1, T):
        for x in test[n]:
            for i in range(1, n + 1):
                dx = E.d(n, i, x)
                for j in range(n + 1):
                    rep.checks += 1
                    got = E.s(n + 1, j, dx)
                    if i == j or i == j + 1:
                        want = x
                    elif i < j:
                        want = E.d(n - 1, i, E.s(n, j - 1, x))
                    else:
                        want = E.d(n - 1, i - 1, E.s(n, j, x))
                    if got != want:
                        rep.note("(3)", n, i, j, x, got, want)
    # product against inserts and collapses
    for m in range(T + 1):
        for n in range(T + 1 - m):
            pairs = _capped(itertools.product(test[m], test[n]), cap, rng)
            for a, b in pairs:
                ab = E.prod(m, n, a, b)
                if m + n + 1 <= T:
                    for i in range(1, m + 1):
                        rep.checks += 1
                        if E.prod(m + 1, n, E.d(m, i, a), b) != E.d(m + n, i, ab):
                            rep.note("(4)", m, n, i, a, b)
                    for i in range(1, n + 1):
                        rep.checks += 1
                        if E.prod(m, n + 1, a, E.d(n, i, b)) != E.d(m + n, i + m, ab):
                            rep.note("(5)", m, n, i, a, b)
                for i in range(m):
                    rep.checks += 1
                    if E.prod(m - 1, n, E.s(m, i, a), b) != E.s(m + n, i, ab):
                        rep.note("(6)", m, n, i, a, b)
                for i in range(n):
                    rep.checks += 1
                    if E.prod(m, n - 1, a, E.s(n, i, b)) != E.s(m + n, i + m, ab):
                        rep.note("(7)", m, n, i, a, b)
    # associativity and unit
    for m in range(T + 1):
        for n in range(T + 1 - m):
            for p in range(T + 1 - m - n):
                triples = _capped(
                    itertools.product(test[m], test[n], test[p]), cap, rng)
                for a, b, c in triples:
                    rep.checks += 1
                    lhs = E.prod(m + n, p, E.prod(m, n, a, b), c)
                    rhs = E.prod(m, n + p, a, E.prod(n, p, b, c))
                    if lhs != rhs:
                        rep.note("assoc", m, n, p, a, b, c)
    for n in range(T + 1):
        for b in test[n]:
            rep.checks += 2
            if E.prod(0, n, E.unit, b) != b:
                rep.note("unit-left", n, b)
            if E.prod(n, 0, b, E.unit) != b:
                rep.note("unit-right", n, b)
    return rep


def mc_set(E):
    """Grade-1 elements killed by the collapse and squaring to their insert."""
    if E.trunc < 2:
        raise TruncationError("need carrier levels up to grade 2")
    out = []
    for w in E.level(1):
        if E.s(1, 0, w) != E.unit:
            continue
        if E.d(1, 1, w) != E.prod(1, 1, w, w):
            continue
        out.append(w)
    return out


def hom_from_point(E):
    """Structure-map enumeration out of the one-point diagonal carrier.

    Independent of mc_set: a candidate is admitted only when the whole
    ladder of powers commutes with every insert, collapse and product
    through the truncation.
    """
    T = E.trunc
    out = []
    for w in E.level(1):
        e = {0: E.unit, 1: w}
        for n in range(2, T + 1):
            e[n] = E.prod(1, n - 1, w, e[n - 1])
        ok = True
        for n in range(T + 1):
            if n + 1 <= T:
                for i in range(1, n + 1):
                    if E.d(n, i, e[n]) != e[n + 1]:
                        ok = False
            for i in range(n):
                if E.s(n, i, e[n]) != e[n - 1]:
                    ok = False
        for m in range(T + 1):
            for n in range(T + 1 - m):
                if E.prod(m, n, e[m], e[n]) != e[m + n]:
                    ok = False
        if ok:
            out.append(w)
    return out


def diagonal_qm(X, trunc=4):
    """Tuple levels over a finite set: inserts duplicate a coordinate,
    collapses drop one, the product concatenates."""
    els = list(X)
    levels = [[tuple(t) for t in itertools.product(els, repeat=n)]
              for n in range(trunc + 1)]

    def d(n, i, x):
        return x[:i] + (x[i - 1],) + x[i:]

    def s(n, i, x):
        return x[:i] + x[i + 1:]

    def prod(m, n, a, b):
        return a + b

    return QuasiComonoid(trunc, levels, d, s, prod, ())


def point_qm(trunc=4):
    return diagonal_qm(["*"], trunc)


def interval_power_qm(trunc=4):
    """Discrete shadow of the interval-power carrier: level n is the set of
    0/1 words of length n-1. Inserts put a 1, interior collapses take the
    minimum of adjacent letters, outer collapses drop an end letter, and the
    product concatenates across a 0."""
    levels = [[()]] + [
        [tuple(t) for t in itertools.product((0, 1), repeat=n - 1)]
        for n in range(1, trunc + 1)
    ]

    def d(n, i, x):
        return x[:i - 1] + (1,) + x[i - 1:]

    def s(n, i, x):
        if n == 1:
            return ()
        if i == 0:
            return x[1:]
        if i == n - 1:
            return x[:-1]
        return x[:i - 1] + (min(x[i - 1], x[i]),) + x[i + 1:]

    def prod(m, n, a, b):
        if m == 0:
            return b
        if n == 0:
            return a
        return a + (0,) + b

    return QuasiComonoid(trunc, levels, d, s, prod, ())


def collapsed_monoid_qm(elements, mult, unit, trunc=4):
    """Every level the same finite monoid; inserts and collapses are
    identities. The grade-1 collapse pins any tower to the unit."""
    els = list(elements)
    levels = [list(els) for _ in range(trunc + 1)]

    def d(n, i, x):
        return x

    def s(n, i, x):
        return x

    def prod(m, n, a, b):
        return mult(a, b)

    return QuasiComonoid(trunc, levels, d, s, prod, unit)


def envelope_qm(A, enumerate_cap=4096):
    """Additive carrier of a cosimplicial module over a prime field.

    Inserts are the inner cofaces, collapses the codegeneracies, and the
    product adds the outer-coface lifts of its factors. Levels whose point
    count exceeds the cap stay virtual and are only sampled.
    """
    p = A.ring.p
    T = A.trunc
    levels = []
    for n in range(T + 1):
        if p ** A.dims[n] <= enumerate_cap:
            levels.append([tuple(v) for v in
                           itertools.product(range(p), repeat=A.dims[n])])
        else:
            levels.append(None)

    def d(n, i, x):
        return tuple(A.coface[n + 1][i].apply(list(x)))

    def s(n, i, x):
        return tuple(A.codegen[n][i].apply(list(x)))

    def prod(m, n, a, b):
        va = list(a)
        for t in range(n):
            va = A.coface[m + 1 + t][m + 1 + t].apply(va)
        vb = list(b)
        for t in range(m):
            vb = A.coface[n + 1 + t][0].apply(vb)
        return tuple((x + y) % p for x, y in zip(va, vb))

    def sample(n, rng):
        return tuple(rng.randrange(p) for _ in range(A.dims[n]))

    E = QuasiComonoid(T, levels, d, s, prod, (0,) * A.dims[0], sample=sample)
    E.abelian = True
    E.module = A
    return E


# ----------------------------------------------------- cosimplicial rings


class GroupAlgebra:
    """Convolution algebra over F_p of a finite elementary abelian group.

    Elements are coefficient tuples indexed by the lexicographically ordered
    group vectors.
    """

    def __init__(self, p, gdim, cap=4096):
        self.p = p
        self.gdim = gdim
        self.group = [tuple(v) for v in itertools.product(range(p), repeat=gdim)]
        self.gindex = {g: i for i, g in enumerate(self.group)}
        self.n = len(self.group)
        self.cap = cap

    def zero(self):
        return (0,) * self.n

    def one(self):
        v = [0] * self.n
        v[self.gindex[(0,) * self.gdim]] = 1 % self.p
        return tuple(v)

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def mul(self, a, b):
        out = [0] * self.n
        for i, x in enumerate(a):
            if not x:
                continue
            gi = self.group[i]
            for j, y in enumerate(b):
                if not y:
                    continue
                gj = self.group[j]
                k = self.gindex[tuple((u + v) % self.p for u, v in zip(gi, gj))]
                out[k] = (out[k] + x * y) % self.p
        return tuple(out)

    def elements(self):
        if self.p ** self.n > self.cap:
            return None
        return [tuple(v) for v in itertools.product(range(self.p), repeat=self.n)]

    def random_element(self, rng):
        return tuple(rng.randrange(self.p) for _ in range(self.n))

    def induced(self, target, matrix):
        """Ring map coming from the group map with the given Mat."""
        imgs = []
        for g in self.group:
            h = tuple(v % self.p for v in matrix.apply(list(g)))
            imgs.append(target.gindex[h])

        def f(a):
            out = [0] * target.n
            for i, x in enumerate(a):
                if x:
                    out[imgs[i]] = (out[imgs[i]] + x) % self.p
            return tuple(out)

        return f


class FunctionRing:
    """Pointwise F_p-valued functions on a finite index set."""

    def __init__(self, p, size, cap=4096):
        self.p = p
        self.n = size
        self.cap = cap

    def zero(self):
        return (0,) * self.n

    def one(self):
        return (1 % self.p,) * self.n

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def mul(self, a, b):
        return tuple((x * y) % self.p for x, y in zip(a, b))

    def elements(self):
        if self.p ** self.n > self.cap:
            return None
        return [tuple(v) for v in itertools.product(range(self.p), repeat=self.n)]

    def random_element(self, rng):
        return tuple(rng.randrange(self.p) for _ in range(self.n))


class FiniteCosimplicialRing:
    """Levelwise finite unital rings with ring-map cofaces and codegeneracies.

    coface(n, i, x): level n -> n+1 for 0 <= i <= n+1;
    codegen(n, i, x): level n -> n-1 for 0 <= i <= n-1.
    """

    def __init__(self, trunc, rings, coface, codegen):
        self.trunc = trunc
        self.rings = list(rings)
        assert len(self.rings) == trunc + 1
        self.coface = coface
        self.codegen = codegen

    def validate(self, rng, samples=20):
        rep = ValidationReport()
        T = self.trunc
        test = [[self.rings[n].random_element(rng) for _ in range(samples)]
                for n in range(T + 1)]
        for n in range(T + 1):
            Rn = self.rings[n]
            for x in test[n]:
                y = Rn.random_element(rng)
                # ring-map laws for every coface and codegeneracy
                if n + 1 <= T:
                    Rup = self.rings[n + 1]
                    for i in range(n + 2):
                        rep.checks += 3
                        if self.coface(n, i, Rn.add(x, y)) != Rup.add(
                                self.coface(n, i, x), self.coface(n, i, y)):
                            rep.note("coface-add", n, i, x, y)
                        if self.coface(n, i, Rn.mul(x, y)) != Rup.mul(
                                self.coface(n, i, x), self.coface(n, i, y)):
                            rep.note("coface-mul", n, i, x, y)
                        if self.coface(n, i, Rn.one()) != Rup.one():
                            rep.note("coface-one", n, i)
                if n >= 1:
                    Rdn = self.rings[n - 1]
                    for i in range(n):
                        rep.checks += 3
                        if self.codegen(n, i, Rn.add(x, y)) != Rdn.add(
                                self.codegen(n, i, x), self.codegen(n, i, y)):
                            rep.note("codegen-add", n, i, x, y)
                        if self.codegen(n, i, Rn.mul(x, y)) != Rdn.mul(
                                self.codegen(n, i, x), self.codegen(n, i, y)):
                            rep.note("codegen-mul", n, i, x, y)
                        if self.codegen(n, i, Rn.one()) != Rdn.one():
                            rep.note("codegen-one", n, i)
                # cosimplicial identities
                if n + 2 <= T:
                    for i in range(n + 2):
                        for j in range(i + 1, n + 3):
                            rep.checks += 1
                            a = self.coface(n + 1, j, self.coface(n, i, x))
                            b = self.coface(n + 1, i, self.coface(n, j - 1, x))
                            if a != b:
                                rep.note("cc", n, i, j, x)
                if n >= 2:
                    for i in range(n):
                        for j in range(i, n - 1):
                            rep.checks += 1
                            a = self.codegen(n - 1, j, self.codegen(n, i, x))
                            b = self.codegen(n - 1, i, self.codegen(n, j + 1, x))
                            if a != b:
                                rep.note("ss", n, i, j, x)
                if n + 1 <= T:
                    for i in range(n + 2):
                        dx = self.coface(n, i, x)
                        for j in range(n + 1):
                            rep.checks += 1
                            got = self.codegen(n + 1, j, dx)
                            if i == j or i == j + 1:
                                want = x
                            elif i < j:
                                want = self.coface(n - 1, i, self.codegen(n, j - 1, x))
                            else:
                                want = self.coface(n - 1, i - 1, self.codegen(n, j, x))
                            if got != want:
                                rep.note("sc", n, i, j, x)
        return rep


def cup_product(R, m, n, a, b):
    """Front-back product: the first factor is pushed out on the right, the
    second on the left, then the two are multiplied at the top level."""
    A = a
    for t in range(n):
        A = R.coface(m + t, m + 1 + t, A)
    B = b
    for t in range(m):
        B = R.coface(n + t, 0, B)
    return R.rings[m + n].mul(A, B)


def from_cosimplicial_ring(R, trunc=None):
    """Quasi-comonoid carried by the levels of a cosimplicial ring: inner
    cofaces insert, codegeneracies collapse, the front-back product
    multiplies. Levels must be unital; a missing unit is a domain error."""
    T = R.trunc if trunc is None else min(trunc, R.trunc)
    for n in range(T + 1):
        one = R.rings[n].one()
        if one is None:
            raise ValueError(f"level {n} multiplication has no unit")
        els = R.rings[n].elements()
        for x in (els[:8] if els else [R.rings[n].zero()]):
            if R.rings[n].mul(one, x) != x or R.rings[n].mul(x, one) != x:
                raise ValueError(f"level {n} multiplication is not unital")
    levels = [R.rings[n].elements() for n in range(T + 1)]

    def d(n, i, x):
        return R.coface(n, i, x)

    def s(n, i, x):
        return R.codegen(n, i, x)

    def prod(m, n, a, b):
        return cup_product(R, m, n, a, b)

    def sample(n, rng):
        return R.rings[n].random_element(rng)

    E = QuasiComonoid(T, levels, d, s, prod, R.rings[0].one(), sample=sample)
    E.ring_source = R
    return E


def ring_mc_set(R):
    """1 + the normalized degree-1 solutions of the quadratic cocycle
    equation; the independent description of the Maurer-Cartan set."""
    R1, R2 = R.rings[1], R.rings[2]
    els = R1.elements()
    if els is None:
        raise ValueError("level 1 must be enumerable")
    zero0 = R.rings[0].zero()
    zero2 = R2.zero()
    out = []
    for a in els:
        if R.codegen(1, 0, a) != zero0:
            continue
        d0 = R.coface(1, 0, a)
        d1 = R.coface(1, 1, a)
        d2 = R.coface(1, 2, a)
        da = R2.add(R2.add(d0, R2.neg(d1)), d2)
        if R2.add(da, R2.mul(d2, d0)) != zero2:
            continue
        out.append(R1.add(R1.one(), a))
    return out


def function_ring_cosimplicial(p, X):
    """F_p-valued functions on the cells of a truncated simplicial set."""
    rings = [FunctionRing(p, X.size(n)) for n in range(X.trunc + 1)]

    def coface(n, i, x):
        return tuple(x[X.d(n + 1, i, c)] for c in range(X.size(n + 1)))

    def codegen(n, i, x):
        return tuple(x[X.s(n - 1, i, c)] for c in range(X.size(n - 1)))

    return FiniteCosimplicialRing(X.trunc, rings, coface, codegen)


def function_module(ring, X):
    """Cosimplicial module of ring-valued functions on the cells of a
    truncated simplicial set; cofaces precompose with faces."""
    from .dold_kan import CosimplicialModule

    dims = [X.size(n) for n in range(X.trunc + 1)]
    one = ring.one
    coface = [None]
    codegen = [None]
    for n in range(1, X.trunc + 1):
        cf = []
        for i in range(n + 1):
            m = Mat.zero(ring, dims[n], dims[n - 1])
            for c in range(dims[n]):
                m.rows[c][X.d(n, i, c)] = one
            cf.append(m)
        coface.append(cf)
        cd = []
        for i in range(n):
            m = Mat.zero(ring, dims[n - 1], dims[n])
            for c in range(dims[n - 1]):
                m.rows[c][X.s(n - 1, i, c)] = one
            cd.append(m)
        codegen.append(cd)
    return CosimplicialModule(ring, dims, coface, codegen)


def group_algebra_cosimplicial(A):
    """Group-algebra levels of a cosimplicial module over a prime field."""
    p = A.ring.p
    T = A.trunc
    rings = [GroupAlgebra(p, A.dims[n]) for n in range(T + 1)]
    cof = {}
    cod = {}
    for n in range(1, T + 1):
        for i in range(n + 1):
            cof[(n, i)] = rings[n - 1].induced(rings[n], A.coface[n][i])
        for i in range(n):
            cod[(n, i)] = rings[n].induced(rings[n - 1], A.codegen[n][i])

    def coface(n, i, x):
        return cof[(n + 1, i)](x)

    def codegen(n, i, x):
        return cod[(n, i)](x)

    return FiniteCosimplicialRing(T, rings, coface, codegen)


def constant_ring_cosimplicial(p, trunc=3):
    """The constant level F_p; nothing is normalized in positive degrees."""
    rings = [GroupAlgebra(p, 0) for _ in range(trunc + 1)]

    def coface(n, i, x):
        return x

    def codegen(n, i, x):
        return x

    return FiniteCosimplicialRing(trunc, rings, coface, codegen)


def random_cosimplicial_ring(p, rng, trunc=3):
    """Random finite cosimplicial ring with an enumerable level 1.

    Draws either the group algebra of a small random cosimplicial module or
    the function ring of a small simplicial set.
    """
    from .dold_kan import Complex, denormalize_cochain
    from .exact import GF
    from .simplicial_core import boundary_simplex, circle_sset

    if rng.random() < 0.5:
        # group algebra family; level-1 group dimension stays small
        budget = 2 if p == 2 else 1
        c0 = rng.randrange(budget + 1)
        c1 = rng.randrange(budget + 1 - c0)
        c2 = rng.randrange(2)
        ring = GF(p)
        dims = {0: c0, 1: c1, 2: c2}
        diff = {}
        while True:
            diff = {}
            if c0 and c1:
                diff[0] = Mat(ring, c1, c0,
                              [[rng.randrange(p) for _ in range(c0)]
                               for _ in range(c1)])
            if c1 and c2:
                diff[1] = Mat(ring, c2, c1,
                              [[rng.randrange(p) for _ in range(c1)]
                               for _ in range(c2)])
            if 0 in diff and 1 in diff:
                comp = diff[1] @ diff[0]
                if not comp.is_zero():
                    continue
            break
        C = Complex(ring, dims, diff, down=False)
        A = denormalize_cochain(C, trunc).module
        return group_algebra_cosimplicial(A)
    X = rng.choice([
        standard_simplex(1, trunc),
        standard_simplex(2, trunc) if p == 2 else standard_simplex(1, trunc),
        boundary_simplex(2, trunc),
        circle_sset(trunc),
        nerve(group_category([0, 1], lambda a, b: (a + b) % 2), trunc),
    ])
    return function_ring_cosimplicial(p, X)


# ----------------------------------------------------- simplicial carriers


def constant_sset(elements, trunc):
    """Discrete simplicial set on a finite label set."""
    levels = [list(elements)] * (trunc + 1)
    return build_sset(trunc, levels,
                      lambda n, i, lab: lab, lambda n, i, lab: lab)


class SimplicialQuasiComonoid:
    """Carrier whose levels are truncated simplicial sets and whose
    operations are levelwise simplicial maps described on labels.

    d_label(n, i, m, lab), s_label(n, i, m, lab) and
    star_label(p, q, m, la, lb) give the image labels at simplicial level m.
    """

    carrier = "sset"

    def __init__(self, trunc, levels, d_label, s_label, star_label,
                 unit_label, check=True):
        self.trunc = trunc
        self.levels = list(levels)
        assert len(self.levels) == trunc + 1
        self.strunc = self.levels[0].trunc
        assert all(X.trunc == self.strunc for X in self.levels)
        self.d_label = d_label
        self.s_label = s_label
        self.star_label = star_label
        self.unit_label = unit_label
        self.d_maps = {}
        self.s_maps = {}
        for n in range(1, trunc):
            for i in range(1, n + 1):
                self.d_maps[(n, i)] = map_from_labels(
                    self.levels[n], self.levels[n + 1],
                    lambda m, lab, n=n, i=i: d_label(n, i, m, lab),
                    check=check)
        for n in range(1, trunc + 1):
            for i in range(n):
                self.s_maps[(n, i)] = map_from_labels(
                    self.levels[n], self.levels[n - 1],
                    lambda m, lab, n=n, i=i: s_label(n, i, m, lab),
                    check=check)
        self.unit_idx = [self.levels[0].index[0][unit_label]]
        for m in range(self.strunc):
            self.unit_idx.append(self.levels[0].s(m, 0, self.unit_idx[-1]))

    def star_idx(self, p, q, m, ka, kb):
        la = self.levels[p].label_of(m, ka)
        lb = self.levels[q].label_of(m, kb)
        return self.levels[p + q].index[m][self.star_label(p, q, m, la, lb)]

    def __repr__(self):
        return (f"<quasi-comonoid/sset levels={self.trunc + 1} "
                f"strunc={self.strunc}>")


def _validate_sset(E, rng=None, cap=2500):
    rep = ValidationReport()
    T = E.trunc
    S = E.strunc

    def cells(n):
        return [(m, c) for m in range(S + 1) for c in range(E.levels[n].size(m))]

    # the insert and collapse families through their induced maps
    for (n, i), f in E.d_maps.items():
        for (nj, j), g in E.d_maps.items():
            if nj != n + 1 or j <= i:
                continue
            lhs = tuple(tuple(g.assign[m][k] for k in f.assign[m])
                        for m in range(S + 1))
            f2 = E.d_maps[(n, j - 1)]
            g2 = E.d_maps[(n + 1, i)]
            rhs = tuple(tuple(g2.assign[m][k] for k in f2.assign[m])
                        for m in range(S + 1))
            rep.checks += 1
            if lhs != rhs:
                rep.note("(1)", n, i, j)
    for n in range(2, T + 1):
        for i in range(n):
            for j in range(i, n - 1):
                rep.checks += 1
                a = E.s_maps[(n, i)]
                lhs = tuple(tuple(E.s_maps[(n - 1, j)].assign[m][k]
                                  for k in a.assign[m]) for m in range(S + 1))
                b = E.s_maps[(n, j + 1)]
                rhs = tuple(tuple(E.s_maps[(n - 1, i)].assign[m][k]
                                  for k in b.assign[m]) for m in range(S + 1))
                if lhs != rhs:
                    rep.note("(2)", n, i, j)
    for n in range(1, T):
        for i in range(1, n + 1):
            dmg = E.d_maps[(n, i)]
            for j in range(n + 1):
                smg = E.s_maps[(n + 1, j)]
                for m in range(S + 1):
                    for k in range(E.levels[n].size(m)):
                        rep.checks += 1
                        got = smg.assign[m][dmg.assign[m][k]]
                        if i == j or i == j + 1:
                            want = k
                        elif i < j:
                            want = E.d_maps[(n - 1, i)].assign[m][
                                E.s_maps[(n, j - 1)].assign[m][k]]
                        else:
                            want = E.d_maps[(n - 1, i - 1)].assign[m][
                                E.s_maps[(n, j)].assign[m][k]]
                        if got != want:
                            rep.note("(3)", n, i, j, m, k)
    # the product: simplicial in pairs, compatible with both families
    for p in range(T + 1):
        for q in range(T + 1 - p):
            tgt = E.levels[p + q]
            for m in range(S + 1):
                pairs = _capped(itertools.product(
                    range(E.levels[p].size(m)), range(E.levels[q].size(m))),
                    cap, rng)
                for ka, kb in pairs:
                    val = E.star_idx(p, q, m, ka, kb)
                    if m >= 1:
                        for i in range(m + 1):
                            rep.checks += 1
                            lhs = tgt.d(m, i, val)
                            rhs = E.star_idx(p, q, m - 1,
                                             E.levels[p].d(m, i, ka),
                                             E.levels[q].d(m, i, kb))
                            if lhs != rhs:
                                rep.note("star-face", p, q, m, i, ka, kb)
                    if p >= 1 and p + q + 1 <= T:
                        for i in range(1, p + 1):
                            rep.checks += 1
                            lhs = E.star_idx(p + 1, q, m,
                                             E.d_maps[(p, i)].assign[m][ka], kb)
                            rhs = E.d_maps[(p + q, i)].assign[m][val]
                            if lhs != rhs:
                                rep.note("(4)", p, q, i, m, ka, kb)
                    if q >= 1 and p + q + 1 <= T:
                        for i in range(1, q + 1):
                            rep.checks += 1
                            lhs = E.star_idx(p, q + 1, m, ka,
                                             E.d_maps[(q, i)].assign[m][kb])
                            rhs = E.d_maps[(p + q, i + p)].assign[m][val]
                            if lhs != rhs:
                                rep.note("(5)", p, q, i, m, ka, kb)
                    for i in range(p):
                        rep.checks += 1
                        lhs = E.star_idx(p - 1, q, m,
                                         E.s_maps[(p, i)].assign[m][ka], kb)
                        rhs = E.s_maps[(p + q, i)].assign[m][val]
                        if lhs != rhs:
                            rep.note("(6)", p, q, i, m, ka, kb)
                    for i in range(q):
                        rep.checks += 1
                        lhs = E.star_idx(p, q - 1, m, ka,
                                         E.s_maps[(q, i)].assign[m][kb])
                        rhs = E.s_maps[(p + q, i + p)].assign[m][val]
                        if lhs != rhs:
                            rep.note("(7)", p, q, i, m, ka, kb)
                    rep.checks += 2
                    if p == 0 and ka == E.unit_idx[m] and val != kb:
                        rep.note("unit-left", q, m, kb)
                    if q == 0 and kb == E.unit_idx[m] and val != ka:
                        rep.note("unit-right", p, m, ka)
    for p in range(T + 1):
        for q in range(T + 1 - p):
            for r in range(T + 1 - p - q):
                for m in range(S + 1):
                    triples = _capped(itertools.product(
                        range(E.levels[p].size(m)),
                        range(E.levels[q].size(m)),
                        range(E.levels[r].size(m))), cap, rng)
                    for ka, kb, kc in triples:
                        rep.checks += 1
                        lhs = E.star_idx(p + q, r, m,
                                         E.star_idx(p, q, m, ka, kb), kc)
                        rhs = E.star_idx(p, q + r, m, ka,
                                         E.star_idx(q, r, m, kb, kc))
                        if lhs != rhs:
                            rep.note("assoc", p, q, r, m, ka, kb, kc)
    return rep


def xi_qm(trunc, strunc):
    """Interval-power carrier: level n is the (n-1)-cube. Inserts add a
    constant-1 coordinate, interior collapses take pointwise minima, outer
    collapses drop an end coordinate, the product concatenates across a
    constant-0 coordinate."""
    levels = [cube(0, strunc)] + [cube(n - 1, strunc)
                                  for n in range(1, trunc + 1)]

    def d_label(n, i, m, lab):
        return lab[:i - 1] + ((1,) * (m + 1),) + lab[i - 1:]

    def s_label(n, i, m, lab):
        if n == 1:
            return ()
        if i == 0:
            return lab[1:]
        if i == n - 1:
            return lab[:-1]
        merged = tuple(min(u, v) for u, v in zip(lab[i - 1], lab[i]))
        return lab[:i - 1] + (merged,) + lab[i + 1:]

    def star_label(p, q, m, la, lb):
        if p == 0:
            return lb
        if q == 0:
            return la
        return la + ((0,) * (m + 1),) + lb

    return SimplicialQuasiComonoid(trunc, levels, d_label, s_label,
                                   star_label, ())


def discrete_sqm(E, strunc=2):
    """A discrete carrier viewed as a simplicial one with constant levels."""
    levels = [constant_sset(E.level(n), strunc) for n in range(E.trunc + 1)]

    def d_label(n, i, m, lab):
        return E.d(n, i, lab)

    def s_label(n, i, m, lab):
        return E.s(n, i, lab)

    def star_label(p, q, m, la, lb):
        return E.prod(p, q, la, lb)

    return SimplicialQuasiComonoid(E.trunc, levels, d_label, s_label,
                                   star_label, E.unit)


def envelope_sqm(M, cap=4096):
    """Additive simplicial carrier of a cosimplicial simplicial module over
    a prime field: the grade-n level is the simplicial set of coefficient
    tuples, inserts are inner cofaces, collapses codegeneracies, and the
    product adds outer-coface lifts levelwise."""
    p = M.ring.p
    T = M.ctrunc
    for n in range(T + 1):
        for j in range(M.strunc + 1):
            if p ** M.dim(n, j) > cap:
                raise ValueError(f"level ({n},{j}) exceeds the element cap")
    levels = []
    for n in range(T + 1):
        lab = [[tuple(v) for v in itertools.product(range(p),
                                                    repeat=M.dim(n, j))]
               for j in range(M.strunc + 1)]
        levels.append(build_sset(
            M.strunc, lab,
            lambda j, i, x, n=n: tuple(
                v % p for v in M.face[(n, j)][i].apply(list(x))),
            lambda j, i, x, n=n: tuple(
                v % p for v in M.degen[(n, j)][i].apply(list(x)))))

    def d_label(n, i, j, x):
        return tuple(v % p for v in M.coface[(n + 1, j)][i].apply(list(x)))

    def s_label(n, i, j, x):
        return tuple(v % p for v in M.codegen[(n, j)][i].apply(list(x)))

    def star_label(q1, q2, j, la, lb):
        va = list(la)
        for t in range(q2):
            va = M.coface[(q1 + 1 + t, j)][q1 + 1 + t].apply(va)
        vb = list(lb)
        for t in range(q1):
            vb = M.coface[(q2 + 1 + t, j)][0].apply(vb)
        return tuple((x + y) % p for x, y in zip(va, vb))

    E = SimplicialQuasiComonoid(T, levels, d_label, s_label, star_label,
                                (0,) * M.dim(0, 0))
    E.abelian = True
    E.module = M
    return E


def nerve_qm(Q, strunc=3):
    """Levelwise classifying spaces of a groupoid carrier; the operations
    act on strings of arrows through the underlying functors."""
    levels = [nerve(Q.levels[n], strunc) for n in range(Q.trunc + 1)]

    def push(fob, fmor, lab):
        if lab[0] == "o":
            return ("o", fob(lab[1]))
        return ("m",) + tuple(fmor(f) for f in lab[1:])

    def d_label(n, i, m, lab):
        return push(lambda x: Q.d_ob(n, i, x), lambda f: Q.d_mor(n, i, f), lab)

    def s_label(n, i, m, lab):
        return push(lambda x: Q.s_ob(n, i, x), lambda f: Q.s_mor(n, i, f), lab)

    def star_label(p, q, m, la, lb):
        if la[0] == "o":
            return ("o", Q.prod_ob(p, q, la[1], lb[1]))
        return ("m",) + tuple(Q.prod_mor(p, q, f, g)
                              for f, g in zip(la[1:], lb[1:]))

    unit_label = ("o", Q.unit_object)
    return SimplicialQuasiComonoid(Q.trunc, levels, d_label, s_label,
                                   star_label, unit_label)


# ------------------------------------------------------------ tower spaces


@dataclass
class TowerFiber:
    """Admissible next components over a partial tower.

    domain is the prism the component maps from; forced pins the cells whose
    value is dictated by the lower components (constant-1 coordinates feed
    inserts, constant-0 coordinates split as products); solutions lists the
    maps surviving the collapse compatibilities.
    """

    domain: object
    forced: dict
    solutions: list
    conflict: bool = False


def _prism(n, k, strunc):
    return product_sset(cube(n, strunc), standard_simplex(k, strunc))


def mmc_tower_step(E, k, partial):
    """Extensions of a partial tower by its next component at simplex
    degree k."""
    n = len(partial)
    if n + 1 > E.trunc:
        raise TruncationError(
            f"tower component {n} needs carrier level {n + 1} "
            f"beyond truncation {E.trunc}")
    if k > E.strunc:
        raise TruncationError(
            f"simplex degree {k} beyond simplicial truncation {E.strunc}")
    P = _prism(n, k, E.strunc)
    target = E.levels[n + 1]
    forced = {}
    for m in range(E.strunc + 1):
        for c in range(P.size(m)):
            cl, sl = P.label_of(m, c)
            val = None
            for pos in range(1, n + 1):
                coord = cl[pos - 1]
                if all(v == 1 for v in coord):
                    prev = partial[n - 1]
                    sub = (cl[:pos - 1] + cl[pos:], sl)
                    kprev = prev(m, prev.source.index[m][sub])
                    cand = E.d_maps[(n, pos)].assign[m][kprev]
                elif all(v == 0 for v in coord):
                    left = partial[pos - 1]
                    right = partial[n - pos]
                    ka = left(m, left.source.index[m][(cl[:pos - 1], sl)])
                    kb = right(m, right.source.index[m][(cl[pos:], sl)])
                    cand = E.star_idx(pos, n - pos + 1, m, ka, kb)
                else:
                    continue
                if val is None:
                    val = cand
                elif val != cand:
                    return TowerFiber(P, forced, [], conflict=True)
            if val is not None:
                forced[(m, c)] = val
    sols = simplicial_maps(P, target, partial=forced)
    keep = [f for f in sols if _collapse_compatible(E, partial, f, P)]
    return TowerFiber(P, forced, keep)


def _collapse_compatible(E, partial, f, P):
    n = len(partial)
    for m in range(E.strunc + 1):
        for c in range(P.size(m)):
            cl, sl = P.label_of(m, c)
            for i in range(n + 1):
                lhs = E.s_maps[(n + 1, i)].assign[m][f(m, c)]
                if n == 0:
                    rhs = E.unit_idx[m]
                else:
                    if i == 0:
                        sub = (cl[1:], sl)
                    elif i == n:
                        sub = (cl[:-1], sl)
                    else:
                        merged = tuple(min(u, v)
                                       for u, v in zip(cl[i - 1], cl[i]))
                        sub = (cl[:i - 1] + (merged,) + cl[i + 1:], sl)
                    prev = partial[n - 1]
                    rhs = prev(m, prev.source.index[m][sub])
                if lhs != rhs:
                    return False
    return True


def mmc_level(E, k):
    """All truncated towers at simplex degree k: the enriched Maurer-Cartan
    set of the carrier, one cube-indexed component per grade."""
    towers = [()]
    for n in range(E.trunc):
        nxt = []
        for t in towers:
            fib = mmc_tower_step(E, k, list(t))
            nxt.extend(t + (f,) for f in fib.solutions)
        towers = nxt
    return towers


def _tower_key(t):
    return tuple(f.key() for f in t)


def _tower_restrict(E, t, k_from, vmap, k_to):
    """Precompose the simplex factor of every component with a vertex map."""
    comps = []
    for n, f in enumerate(t):
        Pn = _prism(n, k_to, E.strunc)
        src = f.source
        assign = []
        for m in range(E.strunc + 1):
            row = []
            for c in range(Pn.size(m)):
                cl, sl = Pn.label_of(m, c)
                sl2 = tuple(vmap[v] for v in sl)
                row.append(f(m, src.index[m][(cl, sl2)]))
            assign.append(tuple(row))
        comps.append(SimplicialMap(Pn, E.levels[n + 1], tuple(assign)))
    return tuple(comps)


def mmc_sset(E, ktrunc):
    """The towers at each simplex degree assembled into a truncated
    simplicial set by restriction along the simplex factor."""
    towers = {kk: mmc_level(E, kk) for kk in range(ktrunc + 1)}
    pool = {kk: {_tower_key(t): t for t in towers[kk]}
            for kk in range(ktrunc + 1)}

    def face_of(kk, i, lab):
        t = pool[kk][lab]
        vmap = tuple(v if v < i else v + 1 for v in range(kk))
        return _tower_key(_tower_restrict(E, t, kk, vmap, kk - 1))

    def degen_of(kk, i, lab):
        t = pool[kk][lab]
        vmap = tuple(v if v <= i else v - 1 for v in range(kk + 2))
        return _tower_key(_tower_restrict(E, t, kk, vmap, kk + 1))

    return build_sset(ktrunc, [sorted(pool[kk]) for kk in range(ktrunc + 1)],
                      face_of, degen_of)


def _level0_group(E):
    """Vertices of level 0 under the product; None when not a group."""
    X0 = E.levels[0]
    els = list(range(X0.size(0)))
    unit = E.unit_idx[0]
    mult = {(a, b): E.star_idx(0, 0, 0, a, b) for a in els for b in els}
    inv = {}
    for a in els:
        cands = [b for b in els
                 if mult[(a, b)] == unit and mult[(b, a)] == unit]
        if len(cands) != 1:
            return None
        inv[a] = cands[0]
    return els, mult, inv, unit


def ddel_finite(E, ktrunc):
    """Homotopy quotient of the towers by the grade-0 adjoint action.

    Level k holds a tower together with a string of k group elements; the
    zeroth face also acts by the first letter, interior faces multiply
    adjacent letters, degeneracies insert the neutral letter. Requires the
    grade-0 carrier to be a discrete group.
    """
    X0 = E.levels[0]
    for m in range(1, E.strunc + 1):
        if X0.nondegenerate(m):
            raise ValueError("grade-0 carrier must be discrete")
    grp = _level0_group(E)
    if grp is None:
        raise ValueError("grade 0 is not a group under the product")
    els, mult, inv, unitg = grp
    gcell = {}
    for g in els:
        cells = [g]
        for m in range(E.strunc):
            cells.append(X0.s(m, 0, cells[-1]))
        gcell[g] = cells

    def act(t, g):
        gi = inv[g]
        comps = []
        for n, f in enumerate(t):
            assign = []
            for m in range(E.strunc + 1):
                row = []
                for c in range(f.source.size(m)):
                    v = E.star_idx(n + 1, 0, m, f(m, c), gcell[g][m])
                    v = E.star_idx(0, n + 1, m, gcell[gi][m], v)
                    row.append(v)
                assign.append(tuple(row))
            comps.append(SimplicialMap(f.source, f.target, tuple(assign)))
        return tuple(comps)

    towers = {kk: mmc_level(E, kk) for kk in range(ktrunc + 1)}
    pool = {kk: {_tower_key(t): t for t in towers[kk]}
            for kk in range(ktrunc + 1)}
    labels = [[(tk, gs) for tk in sorted(pool[kk])
               for gs in itertools.product(els, repeat=kk)]
              for kk in range(ktrunc + 1)]

    def face_of(kk, i, lab):
        tk, gs = lab
        t = pool[kk][tk]
        vmap = tuple(v if v < i else v + 1 for v in range(kk))
        t2 = _tower_restrict(E, t, kk, vmap, kk - 1)
        if i == 0:
            t2 = act(t2, gs[0])
            return (_tower_key(t2), gs[1:])
        if i == kk:
            return (_tower_key(t2), gs[:-1])
        merged = mult[(gs[i - 1], gs[i])]
        return (_tower_key(t2), gs[:i - 1] + (merged,) + gs[i + 1:])

    def degen_of(kk, i, lab):
        tk, gs = lab
        t = pool[kk][tk]
        vmap = tuple(v if v <= i else v - 1 for v in range(kk + 2))
        t2 = _tower_restrict(E, t, kk, vmap, kk + 1)
        return (_tower_key(t2), gs[:i] + (unitg,) + gs[i:])

    return build_sset(ktrunc, labels, face_of, degen_of)


def sset_components(X):
    """Connected-component count through vertices and edges."""
    parent = list(range(X.size(0)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e in range(X.size(1)):
        a, b = find(X.d(1, 0, e)), find(X.d(1, 1, e))
        if a != b:
            parent[a] = b
    return len({find(v) for v in range(X.size(0))})


# ------------------------------------------------------- groupoid carriers


class GroupoidQuasiComonoid:
    """Carrier of finite groupoids; operations are functors acting on object
    and morphism indices. The distinguished object of level 0 is the unit."""

    carrier = "gpd"

    def __init__(self, trunc, levels, d_ob, d_mor, s_ob, s_mor,
                 prod_ob, prod_mor, unit_object, check=True):
        self.trunc = trunc
        self.levels = list(levels)
        assert len(self.levels) == trunc + 1
        self.d_ob, self.d_mor = d_ob, d_mor
        self.s_ob, self.s_mor = s_ob, s_mor
        self.prod_ob, self.prod_mor = prod_ob, prod_mor
        self.unit_object = unit_object
        if check:
            for C in self.levels:
                assert C.is_groupoid()


def _functor_check(rep, tag, C, D, fob, fmor):
    for f in range(C.n_morphisms()):
        rep.checks += 1
        if (D.src[fmor(f)] != fob(C.src[f])
                or D.tgt[fmor(f)] != fob(C.tgt[f])):
            rep.note(tag + ":ends", f)
    for x in range(C.n_objects()):
        rep.checks += 1
        if fmor(C.identity[x]) != D.identity[fob(x)]:
            rep.note(tag + ":id", x)
    for (g, f), h in C.compose.items():
        rep.checks += 1
        if D.compose[(fmor(g), fmor(f))] != fmor(h):
            rep.note(tag + ":comp", g, f)


def _validate_gpd(Q, rng=None, cap=2500):
    rep = ValidationReport()
    T = Q.trunc
    for n in range(1, T):
        for i in range(1, n + 1):
            _functor_check(rep, f"d({n},{i})", Q.levels[n], Q.levels[n + 1],
                           lambda x, n=n, i=i: Q.d_ob(n, i, x),
                           lambda f, n=n, i=i: Q.d_mor(n, i, f))
    for n in range(1, T + 1):
        for i in range(n):
            _functor_check(rep, f"s({n},{i})", Q.levels[n], Q.levels[n - 1],
                           lambda x, n=n, i=i: Q.s_ob(n, i, x),
                           lambda f, n=n, i=i: Q.s_mor(n, i, f))
    # the two layers of each axiom, on objects and on morphisms
    shadow_ob = QuasiComonoid(
        T, [list(range(C.n_objects())) for C in Q.levels],
        Q.d_ob, Q.s_ob, Q.prod_ob, Q.unit_object)
    shadow_mor = QuasiComonoid(
        T, [list(range(C.n_morphisms())) for C in Q.levels],
        Q.d_mor, Q.s_mor, Q.prod_mor,
        Q.levels[0].identity[Q.unit_object])
    for part in (_validate_set(shadow_ob, rng=rng, cap=cap),
                 _validate_set(shadow_mor, rng=rng, cap=cap)):
        rep.failures.extend(part.failures)
        rep.checks += part.checks
    # the product is a functor in pairs
    for m in range(T + 1):
        for n in range(T + 1 - m):
            Cm, Cn, Ct = Q.levels[m], Q.levels[n], Q.levels[m + n]
            pairs = _capped(itertools.product(Cm.compose.items(),
                                              Cn.compose.items()), cap, rng)
            for ((g1, f1), h1), ((g2, f2), h2) in pairs:
                rep.checks += 1
                lhs = Q.prod_mor(m, n, h1, h2)
                rhs = Ct.compose[(Q.prod_mor(m, n, g1, g2),
                                  Q.prod_mor(m, n, f1, f2))]
                if lhs != rhs:
                    rep.note("star-functor", m, n, (g1, f1), (g2, f2))
    return rep


def one_object_abelian_gqm(A):
    """One object per level; the level-n morphism group is the additive
    group of a cosimplicial module over a prime field, composed by addition.
    The graded product adds outer-coface lifts, as in the additive carrier."""
    p = A.ring.p
    T = A.trunc
    levels = []
    lookup = []
    for n in range(T + 1):
        C = _additive_category(p, A.dims[n])
        levels.append(C)
        lookup.append({e: i for i, e in enumerate(C.mor_labels)})

    def d_mor(n, i, f):
        v = A.coface[n + 1][i].apply(list(levels[n].mor_labels[f]))
        return lookup[n + 1][tuple(x % p for x in v)]

    def s_mor(n, i, f):
        v = A.codegen[n][i].apply(list(levels[n].mor_labels[f]))
        return lookup[n - 1][tuple(x % p for x in v)]

    def prod_mor(m, n, f, g):
        va = list(levels[m].mor_labels[f])
        for t in range(n):
            va = A.coface[m + 1 + t][m + 1 + t].apply(va)
        vb = list(levels[n].mor_labels[g])
        for t in range(m):
            vb = A.coface[n + 1 + t][0].apply(vb)
        return lookup[m + n][tuple((x + y) % p for x, y in zip(va, vb))]

    zero_ob = lambda *args: 0
    Q = GroupoidQuasiComonoid(
        T, levels,
        lambda n, i, x: 0, d_mor,
        lambda n, i, x: 0, s_mor,
        lambda m, n, x, y: 0, prod_mor,
        0)
    Q.module = A
    return Q


def mc_nerve_groupoid(Q):
    """Pairs (x, a) over a groupoid carrier: a grade-1 object x collapsing
    to the unit and a two-cell a from x*x to the insert of x, normalized by
    both collapses, satisfying the associativity square in grade 3."""
    assert Q.trunc >= 3, "need groupoid levels up to grade 3"
    C1, C2, C3 = Q.levels[1], Q.levels[2], Q.levels[3]
    out = []
    for x in range(C1.n_objects()):
        if Q.s_ob(1, 0, x) != Q.unit_object:
            continue
        idx = C1.identity[x]
        xx = Q.prod_ob(1, 1, x, x)
        d1x = Q.d_ob(1, 1, x)
        for a in C2.hom(xx, d1x):
            if Q.s_mor(2, 0, a) != idx or Q.s_mor(2, 1, a) != idx:
                continue
            lhs = C3.compose[(Q.d_mor(2, 2, a), Q.prod_mor(1, 2, idx, a))]
            rhs = C3.compose[(Q.d_mor(2, 1, a), Q.prod_mor(2, 1, a, idx))]
            if lhs == rhs:
                out.append((x, a))
    return out


def mc_nerve_classes(Q):
    """Equivalence classes of the pairs under grade-1 arrows collapsing to
    the unit identity; each class is sorted, classes are ordered by their
    least member."""
    pairs = mc_nerve_groupoid(Q)
    C1, C2 = Q.levels[1], Q.levels[2]
    id_unit = Q.levels[0].identity[Q.unit_object]
    parent = list(range(len(pairs)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for ia, (x, a) in enumerate(pairs):
        for ib, (x2, a2) in enumerate(pairs):
            if find(ia) == find(ib):
                continue
            for lam in C1.hom(x, x2):
                if Q.s_mor(1, 0, lam) != id_unit:
                    continue
                if (C2.compose[(Q.d_mor(1, 1, lam), a)]
                        == C2.compose[(a2, Q.prod_mor(1, 1, lam, lam))]):
                    parent[find(ia)] = find(ib)
                    break
    buckets = {}
    for i, pr in enumerate(pairs):
        buckets.setdefault(find(i), []).append(pr)
    return sorted((sorted(v) for v in buckets.values()), key=lambda c: c[0])


# ------------------------------------------------------- doubly graded


class QuasiBicomonoid:
    """Discrete doubly graded carrier: levels[(m, n)] for m + n <= trunc.

    dh/dv insert horizontally/vertically (dh(m, n, i, x) with 1 <= i <= m),
    sh/sv collapse, prod takes ((m, n), (p, q), a, b) to grade (m+p, n+q).
    """

    carrier = "set-bi"

    def __init__(self, trunc, levels, dh, dv, sh, sv, prod, unit):
        self.trunc = trunc
        self.levels = dict(levels)
        self.dh, self.dv = dh, dv
        self.sh, self.sv = sh, sv
        self.prod = prod
        self.unit = unit

    def level(self, m, n):
        lv = self.levels[(m, n)]
        if lv is None:
            raise ValueError(f"level {(m, n)} is not enumerable")
        return list(lv)


def _validate_bi(E, rng=None, cap=1200):
    rep = ValidationReport()
    T = E.trunc

    def elems(m, n):
        lv = E.levels.get((m, n))
        return list(lv) if lv is not None else []

    grades = [(m, n) for m in range(T + 1) for n in range(T + 1 - m)]
    # horizontal against vertical: all four exchanges
    for (m, n) in grades:
        for x in elems(m, n):
            if m + n + 2 <= T:
                for i in range(1, m + 1):
                    for j in range(1, n + 1):
                        rep.checks += 1
                        a = E.dv(m + 1, n, j, E.dh(m, n, i, x))
                        b = E.dh(m, n + 1, i, E.dv(m, n, j, x))
                        if a != b:
                            rep.note("hv:dd", m, n, i, j, x)
            for i in range(1, m + 1):
                for j in range(n):
                    rep.checks += 1
                    if m + n + 1 <= T:
                        a = E.sv(m + 1, n, j, E.dh(m, n, i, x))
                        b = E.dh(m, n - 1, i, E.sv(m, n, j, x))
                        if a != b:
                            rep.note("hv:ds", m, n, i, j, x)
            for i in range(m):
                for j in range(1, n + 1):
                    rep.checks += 1
                    if m + n + 1 <= T:
                        a = E.dv(m - 1, n, j, E.sh(m, n, i, x))
                        b = E.sh(m, n + 1, i, E.dv(m, n, j, x))
                        if a != b:
                            rep.note("hv:sd", m, n, i, j, x)
            for i in range(m):
                for j in range(n):
                    rep.checks += 1
                    a = E.sv(m - 1, n, j, E.sh(m, n, i, x))
                    b = E.sh(m, n - 1, i, E.sv(m, n, j, x))
                    if a != b:
                        rep.note("hv:ss", m, n, i, j, x)
    # each direction on its own, through row and column carriers
    for n in range(T + 1):
        row = QuasiComonoid(
            T - n, [E.levels.get((m, n)) for m in range(T - n + 1)],
            lambda a, i, x, n=n: E.dh(a, n, i, x),
            lambda a, i, x, n=n: E.sh(a, n, i, x),
            lambda a, b, u, v, n=n: None,  # product checked globally below
            None)
        # restrict to the operator axioms; products need both gradings
        part = _validate_set_ops_only(row, rng, cap)
        rep.failures.extend(
            AxiomFailure("h" + f.axiom, (n,) + f.witness) for f in part.failures)
        rep.checks += part.checks
    for m in range(T + 1):
        col = QuasiComonoid(
            T - m, [E.levels.get((m, n)) for n in range(T - m + 1)],
            lambda a, i, x, m=m: E.dv(m, a, i, x),
            lambda a, i, x, m=m: E.sv(m, a, i, x),
            lambda a, b, u, v, m=m: None,
            None)
        part = _validate_set_ops_only(col, rng, cap)
        rep.failures.extend(
            AxiomFailure("v" + f.axiom, (m,) + f.witness) for f in part.failures)
        rep.checks += part.checks
    # product compatibilities, associativity and unit
    for (m, n) in grades:
        for (p, q) in grades:
            if m + p + n + q > T:
                continue
            pairs = _capped(itertools.product(elems(m, n), elems(p, q)),
                            cap, rng)
            for a, b in pairs:
                ab = E.prod((m, n), (p, q), a, b)
                if m + p + n + q + 1 <= T:
                    for i in range(1, m + 1):
                        rep.checks += 1
                        if (E.prod((m + 1, n), (p, q), E.dh(m, n, i, a), b)
                                != E.dh(m + p, n + q, i, ab)):
                            rep.note("h(4)", m, n, p, q, i, a, b)
                    for i in range(1, p + 1):
                        rep.checks += 1
                        if (E.prod((m, n), (p + 1, q), a, E.dh(p, q, i, b))
                                != E.dh(m + p, n + q, i + m, ab)):
                            rep.note("h(5)", m, n, p, q, i, a, b)
                    for i in range(1, n + 1):
                        rep.checks += 1
                        if (E.prod((m, n + 1), (p, q), E.dv(m, n, i, a), b)
                                != E.dv(m + p, n + q, i, ab)):
                            rep.note("v(4)", m, n, p, q, i, a, b)
                    for i in range(1, q + 1):
                        rep.checks += 1
                        if (E.prod((m, n), (p, q + 1), a, E.dv(p, q, i, b))
                                != E.dv(m + p, n + q, i + n, ab)):
                            rep.note("v(5)", m, n, p, q, i, a, b)
                for i in range(m):
                    rep.checks += 1
                    if (E.prod((m - 1, n), (p, q), E.sh(m, n, i, a), b)
                            != E.sh(m + p, n + q, i, ab)):
                        rep.note("h(6)", m, n, p, q, i, a, b)
                for i in range(p):
                    rep.checks += 1
                    if (E.prod((m, n), (p - 1, q), a, E.sh(p, q, i, b))
                            != E.sh(m + p, n + q, i + m, ab)):
                        rep.note("h(7)", m, n, p, q, i, a, b)
                for i in range(n):
                    rep.checks += 1
                    if (E.prod((m, n - 1), (p, q), E.sv(m, n, i, a), b)
                            != E.sv(m + p, n + q, i, ab)):
                        rep.note("v(6)", m, n, p, q, i, a, b)
                for i in range(q):
                    rep.checks += 1
                    if (E.prod((m, n), (p, q - 1), a, E.sv(p, q, i, b))
                            != E.sv(m + p, n + q, i + n, ab)):
                        rep.note("v(7)", m, n, p, q, i, a, b)
    for (m, n) in grades:
        for b in elems(m, n):
            rep.checks += 2
            if E.prod((0, 0), (m, n), E.unit, b) != b:
                rep.note("unit-left", m, n, b)
            if E.prod((m, n), (0, 0), b, E.unit) != b:
                rep.note("unit-right", m, n, b)
    for (m, n) in grades:
        for (p, q) in grades:
            for (r, u) in grades:
                if m + p + r + n + q + u > T:
                    continue
                triples = _capped(itertools.product(
                    elems(m, n), elems(p, q), elems(r, u)), cap, rng)
                for a, b, c in triples:
                    rep.checks += 1
                    lhs = E.prod((m + p, n + q), (r, u),
                                 E.prod((m, n), (p, q), a, b), c)
                    rhs = E.prod((m, n), (p + r, q + u), a,
                                 E.prod((p, q), (r, u), b, c))
                    if lhs != rhs:
                        rep.note("assoc", (m, n), (p, q), (r, u), a, b, c)
    return rep


def _validate_set_ops_only(E, rng, cap):
    """Operator axioms (1)-(3) of a discrete carrier, skipping products."""
    rep = ValidationReport()
    T = E.trunc

    def elems(n):
        lv = E.levels[n]
        return list(lv) if lv is not None else []

    for n in range(T - 1):
        for x in elems(n):
            for i in range(1, n + 1):
                for j in range(i + 1, n + 2):
                    rep.checks += 1
                    if (E.d(n + 1, j, E.d(n, i, x))
                            != E.d(n + 1, i, E.d(n, j - 1, x))):
                        rep.note("(1)", n, i, j, x)
    for n in range(2, T + 1):
        for x in elems(n):
            for i in range(n):
                for j in range(i, n - 1):
                    rep.checks += 1
                    if (E.s(n - 1, j, E.s(n, i, x))
                            != E.s(n - 1, i, E.s(n, j + 1, x))):
                        rep.note("(2)", n, i, j, x)
    for n in range(1, T):
        for x in elems(n):
            for i in range(1, n + 1):
                dx = E.d(n, i, x)
                for j in range(n + 1):
                    rep.checks += 1
                    got = E.s(n + 1, j, dx)
                    if i == j or i == j + 1:
                        want = x
                    elif i < j:
                        want = E.d(n - 1, i, E.s(n, j - 1, x))
                    else:
                        want = E.d(n - 1, i - 1, E.s(n, j, x))
                    if got != want:
                        rep.note("(3)", n, i, j, x)
    return rep


def diagonal_bi_qm(X, Y, trunc=4):
    """Doubly graded tuple carrier over two sets: grade (m, n) holds pairs
    of an m-tuple from the first set and an n-tuple from the second."""
    xe, ye = list(X), list(Y)
    levels = {}
    for m in range(trunc + 1):
        for n in range(trunc + 1 - m):
            levels[(m, n)] = [(a, b)
                              for a in itertools.product(xe, repeat=m)
                              for b in itertools.product(ye, repeat=n)]

    def dh(m, n, i, x):
        a, b = x
        return (a[:i] + (a[i - 1],) + a[i:], b)

    def dv(m, n, i, x):
        a, b = x
        return (a, b[:i] + (b[i - 1],) + b[i:])

    def sh(m, n, i, x):
        a, b = x
        return (a[:i] + a[i + 1:], b)

    def sv(m, n, i, x):
        a, b = x
        return (a, b[:i] + b[i + 1:])

    def prod(mn, pq, x, y):
        return (x[0] + y[0], x[1] + y[1])

    return QuasiBicomonoid(trunc, levels, dh, dv, sh, sv, prod, ((), ()))


def product_bi_qm(H, V, trunc=None):
    """Doubly graded carrier from two discrete carriers: grade (m, n) is the
    product of grade m of the first with grade n of the second; the two
    directions act on their own factor and the product is componentwise."""
    T = trunc if trunc is not None else min(H.trunc + V.trunc, 4)
    levels = {}
    for m in range(T + 1):
        for n in range(T + 1 - m):
            if m > H.trunc or n > V.trunc:
                levels[(m, n)] = None
                continue
            levels[(m, n)] = [(a, b) for a in H.level(m) for b in V.level(n)]

    def dh(m, n, i, x):
        return (H.d(m, i, x[0]), x[1])

    def dv(m, n, i, x):
        return (x[0], V.d(n, i, x[1]))

    def sh(m, n, i, x):
        return (H.s(m, i, x[0]), x[1])

    def sv(m, n, i, x):
        return (x[0], V.s(n, i, x[1]))

    def prod(mn, pq, x, y):
        return (H.prod(mn[0], pq[0], x[0], y[0]),
                V.prod(mn[1], pq[1], x[1], y[1]))

    return QuasiBicomonoid(T, levels, dh, dv, sh, sv, prod,
                           (H.unit, V.unit))


def row_qm(E):
    """First row of a doubly graded carrier."""
    T = E.trunc
    return QuasiComonoid(
        T, [E.levels.get((m, 0)) for m in range(T + 1)],
        lambda n, i, x: E.dh(n, 0, i, x),
        lambda n, i, x: E.sh(n, 0, i, x),
        lambda m, n, a, b: E.prod((m, 0), (n, 0), a, b),
        E.unit)


def col_qm(E):
    """First column of a doubly graded carrier."""
    T = E.trunc
    return QuasiComonoid(
        T, [E.levels.get((0, n)) for n in range(T + 1)],
        lambda n, i, x: E.dv(0, n, i, x),
        lambda n, i, x: E.sv(0, n, i, x),
        lambda m, n, a, b: E.prod((0, m), (0, n), a, b),
        E.unit)


def diag(E):
    """Diagonal of a doubly graded carrier; inserts and collapses apply in
    both directions at the same index."""
    if isinstance(E, GroupoidQuasiBicomonoid):
        return diag_gqm(E)
    T = E.trunc // 2
    levels = [E.levels.get((n, n)) for n in range(T + 1)]

    def d(n, i, x):
        return E.dh(n, n + 1, i, E.dv(n, n, i, x))

    def s(n, i, x):
        return E.sh(n, n - 1, i, E.sv(n, n, i, x))

    def prod(m, n, a, b):
        return E.prod((m, m), (n, n), a, b)

    return QuasiComonoid(T, levels, d, s, prod, E.unit)


@dataclass
class DiagonalMC:
    """Maurer-Cartan set of the diagonal with its commuting-pair form."""

    mc: list
    pairs: list
    pair_of: dict
    element_of: dict
    bijective: bool


def mc_diag(E):
    """Match the diagonal's Maurer-Cartan set with the commuting pairs of
    first-row and first-column solutions; both composite maps are checked to
    be identities."""
    D = diag(E)
    mc = mc_set(D)
    A = mc_set(row_qm(E))
    B = mc_set(col_qm(E))
    pairs = [(a, b) for a in A for b in B
             if E.prod((1, 0), (0, 1), a, b) == E.prod((0, 1), (1, 0), b, a)]
    pair_of = {w: (E.sv(1, 1, 0, w), E.sh(1, 1, 0, w)) for w in mc}
    element_of = {(a, b): E.prod((1, 0), (0, 1), a, b) for (a, b) in pairs}
    ok = len(mc) == len(pairs)
    for w in mc:
        pr = pair_of[w]
        ok = ok and pr in element_of and element_of[pr] == w
    for pr in pairs:
        w = element_of[pr]
        ok = ok and w in pair_of and pair_of[w] == pr
    return DiagonalMC(mc, pairs, pair_of, element_of, ok)


# ----------------------------------------- doubly graded groupoid carriers


class GroupoidQuasiBicomonoid:
    """Doubly graded carrier of finite groupoids with functor operations.

    levels[(m, n)] for m <= hmax, n <= vmax; the eight operation callables
    mirror the discrete case on object and morphism indices.
    """

    carrier = "gpd-bi"

    def __init__(self, hmax, vmax, levels, dh_ob, dh_mor, dv_ob, dv_mor,
                 sh_ob, sh_mor, sv_ob, sv_mor, prod_ob, prod_mor,
                 unit_object):
        self.hmax, self.vmax = hmax, vmax
        self.levels = dict(levels)
        self.dh_ob, self.dh_mor = dh_ob, dh_mor
        self.dv_ob, self.dv_mor = dv_ob, dv_mor
        self.sh_ob, self.sh_mor = sh_ob, sh_mor
        self.sv_ob, self.sv_mor = sv_ob, sv_mor
        self.prod_ob, self.prod_mor = prod_ob, prod_mor
        self.unit_object = unit_object


def product_gqbm(H, V):
    """Doubly graded groupoid carrier from two groupoid carriers: level
    (m, n) is the product groupoid, directions act on their factor."""
    levels = {}
    enc = {}
    for m in range(H.trunc + 1):
        for n in range(V.trunc + 1):
            C, D = H.levels[m], V.levels[n]
            no, nm = D.n_objects(), D.n_morphisms()
            objects = [(a, b) for a in C.objects for b in D.objects]
            mors = [(a, b) for a in C.mor_labels for b in D.mor_labels]
            src = [C.src[f] * no + D.src[g]
                   for f in range(C.n_morphisms()) for g in range(nm)]
            tgt = [C.tgt[f] * no + D.tgt[g]
                   for f in range(C.n_morphisms()) for g in range(nm)]
            comp = {}
            for (g1, f1), h1 in C.compose.items():
                for (g2, f2), h2 in D.compose.items():
                    comp[(g1 * nm + g2, f1 * nm + f2)] = h1 * nm + h2
            ident = [C.identity[a] * nm + D.identity[b]
                     for a in range(C.n_objects()) for b in range(no)]
            levels[(m, n)] = FiniteCategory(objects, mors, src, tgt, comp,
                                            ident, check=False)
            enc[(m, n)] = (no, nm)

    def dh_ob(m, n, i, x):
        no = enc[(m, n)][0]
        return H.d_ob(m, i, x // no) * enc[(m + 1, n)][0] + x % no

    def dh_mor(m, n, i, f):
        nm = enc[(m, n)][1]
        return H.d_mor(m, i, f // nm) * enc[(m + 1, n)][1] + f % nm

    def dv_ob(m, n, i, x):
        no = enc[(m, n)][0]
        return (x // no) * enc[(m, n + 1)][0] + V.d_ob(n, i, x % no)

    def dv_mor(m, n, i, f):
        nm = enc[(m, n)][1]
        return (f // nm) * enc[(m, n + 1)][1] + V.d_mor(n, i, f % nm)

    def sh_ob(m, n, i, x):
        no = enc[(m, n)][0]
        return H.s_ob(m, i, x // no) * enc[(m - 1, n)][0] + x % no

    def sh_mor(m, n, i, f):
        nm = enc[(m, n)][1]
        return H.s_mor(m, i, f // nm) * enc[(m - 1, n)][1] + f % nm

    def sv_ob(m, n, i, x):
        no = enc[(m, n)][0]
        return (x // no) * enc[(m, n - 1)][0] + V.s_ob(n, i, x % no)

    def sv_mor(m, n, i, f):
        nm = enc[(m, n)][1]
        return (f // nm) * enc[(m, n - 1)][1] + V.s_mor(n, i, f % nm)

    def prod_ob(mn, pq, x, y):
        nox, noy = enc[mn][0], enc[pq][0]
        out = enc[(mn[0] + pq[0], mn[1] + pq[1])][0]
        return (H.prod_ob(mn[0], pq[0], x // nox, y // noy) * out
                + V.prod_ob(mn[1], pq[1], x % nox, y % noy))

    def prod_mor(mn, pq, f, g):
        nmx, nmy = enc[mn][1], enc[pq][1]
        out = enc[(mn[0] + pq[0], mn[1] + pq[1])][1]
        return (H.prod_mor(mn[0], pq[0], f // nmx, g // nmy) * out
                + V.prod_mor(mn[1], pq[1], f % nmx, g % nmy))

    unit = H.unit_object * enc[(0, 0)][0] + V.unit_object
    return GroupoidQuasiBicomonoid(
        H.trunc, V.trunc, levels, dh_ob, dh_mor, dv_ob, dv_mor,
        sh_ob, sh_mor, sv_ob, sv_mor, prod_ob, prod_mor, unit)


def _additive_category(p, dim):
    """One-object category on F_p^dim under addition, composition table
    filled directly; elements in lexicographic order."""
    els = [tuple(v) for v in itertools.product(range(p), repeat=dim)]
    idx = {e: i for i, e in enumerate(els)}
    comp = {}
    for i, g in enumerate(els):
        for j, f in enumerate(els):
            comp[(i, j)] = idx[tuple((x + y) % p for x, y in zip(g, f))]
    n = len(els)
    return FiniteCategory(["*"], els, [0] * n, [0] * n, comp,
                          [idx[(0,) * dim]], check=False)


def _apply_left(M, vec, dright, p):
    out = [0] * (M.r * dright)
    for i2 in range(M.r):
        row = M.rows[i2]
        for i in range(M.c):
            c = row[i]
            if not c:
                continue
            for j in range(dright):
                out[i2 * dright + j] = (
                    out[i2 * dright + j] + c * vec[i * dright + j]) % p
    return out


def _apply_right(N, vec, dleft, p):
    out = [0] * (dleft * N.r)
    for j2 in range(N.r):
        row = N.rows[j2]
        for j in range(N.c):
            c = row[j]
            if not c:
                continue
            for i in range(dleft):
                out[i * N.r + j2] = (
                    out[i * N.r + j2] + c * vec[i * N.c + j]) % p
    return out


def one_object_abelian_gqbm(A, B, cap=4096):
    """Doubly graded one-object carrier on the levelwise tensor of two
    cosimplicial modules over the same prime field. Level (m, n) is the
    additive group on coordinates indexed by basis pairs, horizontal
    operations act on the first leg, vertical on the second, and the graded
    product adds outer-coface lifts in both directions. Unlike a product of
    two one-object carriers this has genuinely mixed levels. Levels with
    more than cap elements are omitted."""
    p = A.ring.p
    assert B.ring.p == p
    hmax, vmax = A.trunc, B.trunc
    levels = {}
    lookup = {}
    for m in range(hmax + 1):
        for n in range(vmax + 1):
            if p ** (A.dims[m] * B.dims[n]) > cap:
                continue
            C = _additive_category(p, A.dims[m] * B.dims[n])
            levels[(m, n)] = C
            lookup[(m, n)] = {e: i for i, e in enumerate(C.mor_labels)}

    def vec(mn, f):
        return list(levels[mn].mor_labels[f])

    def dh_mor(m, n, i, f):
        v = _apply_left(A.coface[m + 1][i], vec((m, n), f), B.dims[n], p)
        return lookup[(m + 1, n)][tuple(v)]

    def dv_mor(m, n, i, f):
        v = _apply_right(B.coface[n + 1][i], vec((m, n), f), A.dims[m], p)
        return lookup[(m, n + 1)][tuple(v)]

    def sh_mor(m, n, i, f):
        v = _apply_left(A.codegen[m][i], vec((m, n), f), B.dims[n], p)
        return lookup[(m - 1, n)][tuple(v)]

    def sv_mor(m, n, i, f):
        v = _apply_right(B.codegen[n][i], vec((m, n), f), A.dims[m], p)
        return lookup[(m, n - 1)][tuple(v)]

    def prod_mor(mn, pq, f, g):
        (m, n), (q1, q2) = mn, pq
        va = vec((m, n), f)
        for t in range(q1):
            va = _apply_left(A.coface[m + 1 + t][m + 1 + t], va,
                             B.dims[n], p)
        for t in range(q2):
            va = _apply_right(B.coface[n + 1 + t][n + 1 + t], va,
                              A.dims[m + q1], p)
        vb = vec((q1, q2), g)
        for t in range(m):
            vb = _apply_left(A.coface[q1 + 1 + t][0], vb, B.dims[q2], p)
        for t in range(n):
            vb = _apply_right(B.coface[q2 + 1 + t][0], vb,
                              A.dims[m + q1], p)
        out = tuple((x + y) % p for x, y in zip(va, vb))
        return lookup[(m + q1, n + q2)][out]

    zero = lambda *a: 0
    Q = GroupoidQuasiBicomonoid(
        hmax, vmax, levels, zero, dh_mor, zero, dv_mor,
        zero, sh_mor, zero, sv_mor, zero, prod_mor, 0)
    Q.modules = (A, B)
    return Q


def tensor_diagonal_module(A, B):
    """Diagonal of the levelwise tensor: level n has one coordinate per
    basis pair, both operation families act on both legs at once."""
    from .dold_kan import CosimplicialModule

    ring = A.ring
    p = ring.p
    T = min(A.trunc, B.trunc)
    dims = [A.dims[n] * B.dims[n] for n in range(T + 1)]
    coface = [None]
    codegen = [None]
    for n in range(1, T + 1):
        cf = []
        for i in range(n + 1):
            rows = []
            for i2 in range(A.dims[n]):
                for j2 in range(B.dims[n]):
                    row = []
                    for i1 in range(A.dims[n - 1]):
                        for j1 in range(B.dims[n - 1]):
                            row.append((A.coface[n][i].rows[i2][i1]
                                        * B.coface[n][i].rows[j2][j1]) % p)
                    rows.append(row)
            cf.append(Mat(ring, dims[n], dims[n - 1], rows))
        coface.append(cf)
        cd = []
        for i in range(n):
            rows = []
            for i2 in range(A.dims[n - 1]):
                for j2 in range(B.dims[n - 1]):
                    row = []
                    for i1 in range(A.dims[n]):
                        for j1 in range(B.dims[n]):
                            row.append((A.codegen[n][i].rows[i2][i1]
                                        * B.codegen[n][i].rows[j2][j1]) % p)
                    rows.append(row)
            cd.append(Mat(ring, dims[n - 1], dims[n], rows))
        codegen.append(cd)
    return CosimplicialModule(ring, dims, coface, codegen)


def row_gqm(G, depth=3):
    """First-row groupoid carrier of a doubly graded groupoid carrier."""
    T = min(depth, G.hmax)
    return GroupoidQuasiComonoid(
        T, [G.levels[(m, 0)] for m in range(T + 1)],
        lambda n, i, x: G.dh_ob(n, 0, i, x),
        lambda n, i, f: G.dh_mor(n, 0, i, f),
        lambda n, i, x: G.sh_ob(n, 0, i, x),
        lambda n, i, f: G.sh_mor(n, 0, i, f),
        lambda m, n, x, y: G.prod_ob((m, 0), (n, 0), x, y),
        lambda m, n, f, g: G.prod_mor((m, 0), (n, 0), f, g),
        G.unit_object, check=False)


def col_gqm(G, depth=3):
    """First-column groupoid carrier."""
    T = min(depth, G.vmax)
    return GroupoidQuasiComonoid(
        T, [G.levels[(0, n)] for n in range(T + 1)],
        lambda n, i, x: G.dv_ob(0, n, i, x),
        lambda n, i, f: G.dv_mor(0, n, i, f),
        lambda n, i, x: G.sv_ob(0, n, i, x),
        lambda n, i, f: G.sv_mor(0, n, i, f),
        lambda m, n, x, y: G.prod_ob((0, m), (0, n), x, y),
        lambda m, n, f, g: G.prod_mor((0, m), (0, n), f, g),
        G.unit_object, check=False)


def diag_gqm(G, depth=None):
    """Diagonal groupoid carrier of a doubly graded groupoid carrier."""
    T = min(G.hmax, G.vmax) if depth is None else depth
    return GroupoidQuasiComonoid(
        T, [G.levels[(n, n)] for n in range(T + 1)],
        lambda n, i, x: G.dh_ob(n, n + 1, i, G.dv_ob(n, n, i, x)),
        lambda n, i, f: G.dh_mor(n, n + 1, i, G.dv_mor(n, n, i, f)),
        lambda n, i, x: G.sh_ob(n, n - 1, i, G.sv_ob(n, n, i, x)),
        lambda n, i, f: G.sh_mor(n, n - 1, i, G.sv_mor(n, n, i, f)),
        lambda m, n, x, y: G.prod_ob((m, m), (n, n), x, y),
        lambda m, n, f, g: G.prod_mor((m, m), (n, n), f, g),
        G.unit_object, check=False)


def _is_identity(C, f):
    return f == C.identity[C.src[f]]


def _gpd_mc_by_object(Q):
    by_x = {}
    for (x, s) in mc_nerve_groupoid(Q):
        by_x.setdefault(x, []).append(s)
    return by_x


def mc_diag_nerve(G):
    """Five-part tuples (x, s, t, a, b) describing the Maurer-Cartan data of
    the diagonal of the levelwise classifying spaces: an object x of grade
    (1, 1), row and column two-cells s and t for its two collapses, and a
    pair of normalized comparison cells a, b from the two product orders to
    x, subject to the two insert conditions on the turning arrow."""
    C11 = G.levels[(1, 1)]
    C10, C01 = G.levels[(1, 0)], G.levels[(0, 1)]
    row_by = _gpd_mc_by_object(row_gqm(G))
    col_by = _gpd_mc_by_object(col_gqm(G))
    out = []
    for x in range(C11.n_objects()):
        xh = G.sv_ob(1, 1, 0, x)
        xv = G.sh_ob(1, 1, 0, x)
        if xh not in row_by or xv not in col_by:
            continue
        idxh = C10.identity[xh]
        idxv = C01.identity[xv]
        hv = G.prod_ob((1, 0), (0, 1), xh, xv)
        vh = G.prod_ob((0, 1), (1, 0), xv, xh)
        cands_a = [a for a in C11.hom(hv, x)
                   if _is_identity(C01, G.sh_mor(1, 1, 0, a))
                   and _is_identity(C10, G.sv_mor(1, 1, 0, a))]
        cands_b = [b for b in C11.hom(vh, x)
                   if _is_identity(C01, G.sh_mor(1, 1, 0, b))
                   and _is_identity(C10, G.sv_mor(1, 1, 0, b))]
        for s in row_by[xh]:
            for t in col_by[xv]:
                for a in cands_a:
                    for b in cands_b:
                        gam = C11.compose[(C11.inverse(b), a)]
                        if _gamma_conditions(G, xh, xv, s, t, gam,
                                             idxh, idxv):
                            out.append((x, s, t, a, b))
    return out


def _gamma_conditions(G, xh, xv, s, t, gam, idxh, idxv):
    C11 = G.levels[(1, 1)]
    C21, C12 = G.levels[(2, 1)], G.levels[(1, 2)]
    lhs_h = G.dh_mor(1, 1, 1, gam)
    m1 = C21.inverse(G.prod_mor((2, 0), (0, 1), s, idxv))
    m2 = G.prod_mor((1, 0), (1, 1), idxh, gam)
    m3 = G.prod_mor((1, 1), (1, 0), gam, idxh)
    m4 = G.prod_mor((0, 1), (2, 0), idxv, s)
    rhs_h = C21.compose[(m4, C21.compose[(m3, C21.compose[(m2, m1)])])]
    if lhs_h != rhs_h:
        return False
    gaminv = C11.inverse(gam)
    lhs_v = G.dv_mor(1, 1, 1, gaminv)
    w1 = C12.inverse(G.prod_mor((0, 2), (1, 0), t, idxh))
    w2 = G.prod_mor((0, 1), (1, 1), idxv, gaminv)
    w3 = G.prod_mor((1, 1), (0, 1), gaminv, idxv)
    w4 = G.prod_mor((1, 0), (0, 2), idxh, t)
    rhs_v = C12.compose[(w4, C12.compose[(w3, C12.compose[(w2, w1)])])]
    return lhs_v == rhs_v


def diag_nerve_normal_forms(G):
    """Representatives (xh, xv, s, t, gam) with the grade-(1,1) object the
    product of its collapses and the first comparison cell the identity."""
    C11 = G.levels[(1, 1)]
    C10, C01 = G.levels[(1, 0)], G.levels[(0, 1)]
    row_by = _gpd_mc_by_object(row_gqm(G))
    col_by = _gpd_mc_by_object(col_gqm(G))
    out = []
    for xh, ss in row_by.items():
        for xv, ts in col_by.items():
            hv = G.prod_ob((1, 0), (0, 1), xh, xv)
            vh = G.prod_ob((0, 1), (1, 0), xv, xh)
            idxh = C10.identity[xh]
            idxv = C01.identity[xv]
            gams = [g for g in C11.hom(hv, vh)
                    if _is_identity(C01, G.sh_mor(1, 1, 0, g))
                    and _is_identity(C10, G.sv_mor(1, 1, 0, g))]
            for s in ss:
                for t in ts:
                    for gam in gams:
                        if _gamma_conditions(G, xh, xv, s, t, gam,
                                             idxh, idxv):
                            out.append((xh, xv, s, t, gam))
    return out


def diag_nerve_classes(G):
    """Classes of normal forms under independent row and column arrows
    conjugating s and t and intertwining the turning arrow."""
    forms = diag_nerve_normal_forms(G)
    C10, C01 = G.levels[(1, 0)], G.levels[(0, 1)]
    C11 = G.levels[(1, 1)]
    C20, C02 = G.levels[(2, 0)], G.levels[(0, 2)]
    id_unit_h = G.levels[(0, 0)].identity[G.unit_object]
    parent = list(range(len(forms)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def related(f1, f2):
        xh, xv, s, t, gam = f1
        xh2, xv2, s2, t2, gam2 = f2
        for lh in C10.hom(xh, xh2):
            if G.sh_mor(1, 0, 0, lh) != id_unit_h:
                continue
            if (C20.compose[(G.dh_mor(1, 0, 1, lh), s)]
                    != C20.compose[(s2, G.prod_mor((1, 0), (1, 0), lh, lh))]):
                continue
            for lv in C01.hom(xv, xv2):
                if G.sv_mor(0, 1, 0, lv) != id_unit_h:
                    continue
                if (C02.compose[(G.dv_mor(0, 1, 1, lv), t)]
                        != C02.compose[(t2, G.prod_mor((0, 1), (0, 1),
                                                       lv, lv))]):
                    continue
                lhv = G.prod_mor((1, 0), (0, 1), lh, lv)
                lvh = G.prod_mor((0, 1), (1, 0), lv, lh)
                if C11.compose[(gam2, lhv)] == C11.compose[(lvh, gam)]:
                    return True
        return False

    for i in range(len(forms)):
        for j in range(i + 1, len(forms)):
            if find(i) != find(j) and related(forms[i], forms[j]):
                parent[find(i)] = find(j)
    buckets = {}
    for i, fm in enumerate(forms):
        buckets.setdefault(find(i), []).append(fm)
    return sorted((sorted(v) for v in buckets.values()),
                  key=lambda c: c[0])


def diag_recover(G, tup):
    """Two-cell of the diagonal assembled from a five-part tuple: the double
    insert of the comparison cell, after the product of the row and column
    cells, after the framed inverse turning arrow, after the doubled inverse
    comparison cell."""
    x, s, t, a, b = tup
    C11 = G.levels[(1, 1)]
    C22 = G.levels[(2, 2)]
    xh = G.sv_ob(1, 1, 0, x)
    xv = G.sh_ob(1, 1, 0, x)
    idxh = G.levels[(1, 0)].identity[xh]
    idxv = G.levels[(0, 1)].identity[xv]
    gam = C11.compose[(C11.inverse(b), a)]
    gaminv = C11.inverse(gam)
    ainv = C11.inverse(a)
    p1 = G.prod_mor((1, 1), (1, 1), ainv, ainv)
    inner = G.prod_mor((1, 0), (1, 1), idxh, gaminv)
    p2 = G.prod_mor((2, 1), (0, 1), inner, idxv)
    p3 = G.prod_mor((2, 0), (0, 2), s, t)
    p4 = G.dh_mor(1, 2, 1, G.dv_mor(1, 1, 1, a))
    alpha = C22.compose[(p4, C22.compose[(p3, C22.compose[(p2, p1)])])]
    return (x, alpha)


def diag_derive(G, x, alpha):
    """Five-part tuple read off a diagonal two-cell by single and double
    collapses."""
    a = G.sv_mor(1, 2, 0, G.sh_mor(2, 2, 1, alpha))
    b = G.sh_mor(2, 1, 0, G.sv_mor(2, 2, 1, alpha))
    s = G.sv_mor(2, 1, 0, G.sv_mor(2, 2, 0, alpha))
    t = G.sh_mor(1, 2, 0, G.sh_mor(2, 2, 0, alpha))
    return (x, s, t, a, b)


# ------------------------------------------------- graded rings and kernels


class GradedRing:
    """Unital graded ring presented by level ranks and multiplication
    matrices over an exact field; mult[(m, n)] has shape
    dims[m+n] x dims[m]*dims[n], columns ordered by i*dims[n]+j."""

    def __init__(self, ring, dims, unit, mult, check=True):
        self.ring = ring
        self.dims = list(dims)
        self.trunc = len(dims) - 1
        self.unit = list(unit)
        self.mult = dict(mult)
        if check:
            self.validate()

    def multiply(self, m, n, va, vb):
        F = self.ring
        out = [F.zero] * self.dims[m + n]
        M = self.mult[(m, n)]
        for i, a in enumerate(va):
            if F.is_zero(a):
                continue
            for j, b in enumerate(vb):
                if F.is_zero(b):
                    continue
                coeff = F.mul(a, b)
                col = M.col(i * self.dims[n] + j)
                out = [F.add(o, F.mul(coeff, c)) for o, c in zip(out, col)]
        return out

    def basis(self, n):
        F = self.ring
        for i in range(self.dims[n]):
            v = [F.zero] * self.dims[n]
            v[i] = F.one
            yield v

    def validate(self):
        F = self.ring
        for n in range(self.trunc + 1):
            for v in self.basis(n):
                assert self.multiply(0, n, self.unit, v) == v, ("unit", n)
                assert self.multiply(n, 0, v, self.unit) == v, ("unit", n)
        for m in range(self.trunc + 1):
            for n in range(self.trunc + 1 - m):
                for p in range(self.trunc + 1 - m - n):
                    for a in self.basis(m):
                        for b in self.basis(n):
                            for c in self.basis(p):
                                lhs = self.multiply(
                                    m + n, p, self.multiply(m, n, a, b), c)
                                rhs = self.multiply(
                                    m, n + p, a, self.multiply(n, p, b, c))
                                assert lhs == rhs, ("assoc", m, n, p)
        return True


def unit_graded_ring(ring, trunc):
    """The base field in degree 0 and nothing above."""
    dims = [1] + [0] * trunc
    mult = {(m, n): Mat.zero(ring, dims[m + n] if m + n <= trunc else 0,
                             dims[m] * dims[n])
            for m in range(trunc + 1) for n in range(trunc + 1 - m)}
    mult[(0, 0)] = Mat(ring, 1, 1, [[ring.one]])
    return GradedRing(ring, dims, [ring.one], mult)


def free_graded_ring(ring, trunc):
    """One generator in degree 1; every level has rank one."""
    dims = [1] * (trunc + 1)
    mult = {(m, n): Mat(ring, 1, 1, [[ring.one]])
            for m in range(trunc + 1) for n in range(trunc + 1 - m)}
    return GradedRing(ring, dims, [ring.one], mult)


@dataclass
class BimoduleKernel:
    """Kernel of the multiplication with its two-sided action and the
    universal difference map r -> r(x)1 - 1(x)r.

    inclusion[n] embeds the kernel basis into the degree-n part of the
    square, whose coordinates run over blocks (a, n-a) in ascending a.
    left[(m, n)] and right[(m, n)] act in kernel coordinates; derivation[n]
    sends ring coordinates to kernel coordinates.
    """

    ring: object
    dims: list
    inclusion: dict
    left: dict
    right: dict
    derivation: dict


def _square_blocks(R, n):
    return [(a, n - a) for a in range(n + 1)]


def _square_dim(R, n):
    return sum(R.dims[a] * R.dims[b] for a, b in _square_blocks(R, n))


def _multiplication_matrix(R, n):
    F = R.ring
    cols = []
    for a, b in _square_blocks(R, n):
        M = R.mult[(a, b)]
        for j in range(R.dims[a] * R.dims[b]):
            cols.append(M.col(j))
    return Mat.from_cols(F, R.dims[n], cols) if cols else Mat.zero(
        F, R.dims[n], 0)


def omega_bimodule(R):
    """Kernel of the multiplication of a graded ring, with the two-sided
    action by ring elements and the universal difference map."""
    F = R.ring
    T = R.trunc
    inclusion = {}
    for n in range(T + 1):
        inclusion[n] = _multiplication_matrix(R, n).kernel()

    def to_square(n, block, i, j):
        # coordinate position of e_i (x) e_j inside block (a, b) of degree n
        a, b = block
        off = 0
        for (a2, b2) in _square_blocks(R, n):
            if (a2, b2) == (a, b):
                break
            off += R.dims[a2] * R.dims[b2]
        return off + i * R.dims[b] + j

    def act(side, m, n, rvec_index, kercol):
        # multiply a kernel vector in degree n by a basis ring element of
        # degree m, on the requested side; returns square coordinates
        out = [F.zero] * _square_dim(R, m + n)
        pos = 0
        for (a, b) in _square_blocks(R, n):
            for i in range(R.dims[a]):
                for j in range(R.dims[b]):
                    c = kercol[pos]
                    pos += 1
                    if F.is_zero(c):
                        continue
                    if side == "left":
                        ei = [F.zero] * R.dims[m]
                        ei[rvec_index] = F.one
                        u = [F.zero] * R.dims[a]
                        u[i] = F.one
                        prod = R.multiply(m, a, ei, u)
                        for i2, v in enumerate(prod):
                            if F.is_zero(v):
                                continue
                            q = to_square(m + n, (m + a, b), i2, j)
                            out[q] = F.add(out[q], F.mul(c, v))
                    else:
                        ej = [F.zero] * R.dims[m]
                        ej[rvec_index] = F.one
                        u = [F.zero] * R.dims[b]
                        u[j] = F.one
                        prod = R.multiply(b, m, u, ej)
                        for j2, v in enumerate(prod):
                            if F.is_zero(v):
                                continue
                            q = to_square(m + n, (a, b + m), i, j2)
                            out[q] = F.add(out[q], F.mul(c, v))
        return out

    left = {}
    right = {}
    for m in range(T + 1):
        for n in range(T + 1 - m):
            K = inclusion[n]
            tgt = inclusion[m + n]
            lcols = []
            rcols = []
            for i in range(R.dims[m]):
                for j in range(K.c):
                    lcols.append(act("left", m, n, i, K.col(j)))
                    rcols.append(act("right", m, n, i, K.col(j)))
            lmat = Mat.from_cols(F, _square_dim(R, m + n), lcols) if lcols \
                else Mat.zero(F, _square_dim(R, m + n), 0)
            rmat = Mat.from_cols(F, _square_dim(R, m + n), rcols) if rcols \
                else Mat.zero(F, _square_dim(R, m + n), 0)
            lsol = tgt.solve_cols(lmat)
            rsol = tgt.solve_cols(rmat)
            assert lsol is not None and rsol is not None, \
                "action leaves the kernel"
            left[(m, n)] = lsol
            right[(m, n)] = rsol
    derivation = {}
    for n in range(T + 1):
        cols = []
        for i in range(R.dims[n]):
            v = [F.zero] * _square_dim(R, n)
            for u, cu in enumerate(R.unit):
                if F.is_zero(cu):
                    continue
                q = to_square(n, (n, 0), i, u)
                v[q] = F.add(v[q], cu)
                q = to_square(n, (0, n), u, i)
                v[q] = F.sub(v[q], cu)
            cols.append(v)
        mat = Mat.from_cols(F, _square_dim(R, n), cols) if cols else \
            Mat.zero(F, _square_dim(R, n), 0)
        sol = inclusion[n].solve_cols(mat)
        assert sol is not None, "difference map leaves the kernel"
        derivation[n] = sol
    dims = [inclusion[n].c for n in range(T + 1)]
    return BimoduleKernel(F, dims, inclusion, left, right, derivation)


# ------------------------------------------------------- validation facade


def validate(E, rng=None, **kwargs):
    """Axiom check dispatched on the carrier tag; failures are data."""
    if isinstance(E, QuasiComonoid):
        return _validate_set(E, rng=rng, **kwargs)
    if isinstance(E, SimplicialQuasiComonoid):
        return _validate_sset(E, rng=rng, **kwargs)
    if isinstance(E, GroupoidQuasiComonoid):
        return _validate_gpd(E, rng=rng, **kwargs)
    if isinstance(E, QuasiBicomonoid):
        return _validate_bi(E, rng=rng, **kwargs)
    if isinstance(E, GroupoidQuasiBicomonoid):
        # validate the two edge shadows; mixed levels are exercised by the
        # five-part tuple machinery rather than a direct axiom sweep
        rep = _validate_gpd(row_gqm(E, depth=min(E.hmax, 3)),
                            rng=rng, **kwargs)
        other = _validate_gpd(col_gqm(E, depth=min(E.vmax, 3)),
                              rng=rng, **kwargs)
        return ValidationReport(rep.failures + other.failures,
                                rep.checks + other.checks)
    raise TypeError(f"no validator for {type(E).__name__}")
