"""Ordinal combinatorics and finite truncated simplicial sets.

This module is the substrate for everything else: monotone ordinal maps
(including the endpoint-preserving subcategory that indexes quasi-comonoid
levels), truncated simplicial sets with exhaustively checked identities,
products, subcomplexes and collapse quotients, the cube family
(I^n, bd I^n, and the partial boundary missing one open face), nerves of
finite categories, and enumeration of simplicial maps.

All simplex identifiers are interned as integer indices per level, with a
canonical ordering on labels so every enumeration is deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass


# ------------------------------------------------------------ ordinal maps


@dataclass(frozen=True)
class OrdinalMap:
    """A non-decreasing function {0..source} -> {0..target}."""

    source: int
    target: int
    values: tuple

    def __post_init__(self):
        assert len(self.values) == self.source + 1
        assert all(0 <= v <= self.target for v in self.values)
        assert all(a <= b for a, b in zip(self.values, self.values[1:])), \
            "ordinal maps must be non-decreasing"

    def __call__(self, i):
        return self.values[i]

    def is_endpoint_preserving(self):
        # the defining property of the endpoint-preserving subcategory
        return self.values[0] == 0 and self.values[self.source] == self.target


def ordinal_identity(n):
    return OrdinalMap(n, n, tuple(range(n + 1)))


def compose_ordinal(f: OrdinalMap, g: OrdinalMap) -> OrdinalMap:
    """g after f: apply f first. Requires f.target == g.source."""
    if f.target != g.source:
        raise ValueError(f"cannot compose {f.source}->{f.target} with {g.source}->{g.target}")
    return OrdinalMap(f.source, g.target, tuple(g.values[v] for v in f.values))


def tensor_ordinal(f: OrdinalMap, g: OrdinalMap) -> OrdinalMap:
    """Monoidal join on endpoint-preserving maps: sources and targets add."""
    if not (f.is_endpoint_preserving() and g.is_endpoint_preserving()):
        raise ValueError("tensor is defined on endpoint-preserving maps only")
    m, p = f.source, f.target
    vals = tuple(f.values) + tuple(g.values[i] + p for i in range(1, g.source + 1))
    return OrdinalMap(m + g.source, p + g.target, vals)


def delta_face(n, i):
    """The injection [n-1] -> [n] missing i (0 <= i <= n)."""
    assert 0 <= i <= n and n >= 1
    return OrdinalMap(n - 1, n, tuple(v if v < i else v + 1 for v in range(n)))


def delta_degen(n, i):
    """The surjection [n+1] -> [n] hitting i twice (0 <= i <= n)."""
    assert 0 <= i <= n
    return OrdinalMap(n + 1, n, tuple(v if v <= i else v - 1 for v in range(n + 2)))


def hom_ordinal(m, n):
    """All monotone maps {0..m} -> {0..n}."""
    return [OrdinalMap(m, n, vals)
            for vals in itertools.combinations_with_replacement(range(n + 1), m + 1)]


def hom_endpoint_preserving(m, n):
    return [f for f in hom_ordinal(m, n) if f.is_endpoint_preserving()]


# ----------------------------------------------------------- label ordering


def _label_key(label):
    """Total order on heterogeneous hashable labels (ints, strs, tuples)."""
    if isinstance(label, bool):
        return (0, int(label))
    if isinstance(label, int):
        return (0, label)
    if isinstance(label, str):
        return (1, label)
    if isinstance(label, tuple):
        return (2, tuple(_label_key(x) for x in label))
    if isinstance(label, frozenset):
        return (3, tuple(sorted(_label_key(x) for x in label)))
    raise TypeError(f"unsupported label type {type(label)!r}")


# --------------------------------------------------- truncated simplicial sets


class TruncationError(Exception):
    pass


class TruncatedSimplicialSet:
    """Simplicial set stored through a fixed truncation level.

    labels[n]   : canonically ordered tuple of simplex labels at level n
    face[n][i]  : tuple of indices into level n-1 (1 <= n <= trunc, 0 <= i <= n)
    degen[n][i] : tuple of indices into level n+1 (0 <= n < trunc, 0 <= i <= n)
    """

    def __init__(self, trunc, labels, face, degen, coskeletal=False, check=True):
        self.trunc = trunc
        self.labels = tuple(tuple(l) for l in labels)
        assert len(self.labels) == trunc + 1
        self.index = tuple({lab: k for k, lab in enumerate(lv)} for lv in self.labels)
        self.face = face
        self.degen = degen
        self.coskeletal = coskeletal
        # degeneracy_sources[n][k]: pairs (i, j) with sigma_i(j) = k one level down
        self.degeneracy_sources = [
            [[] for _ in lv] for lv in self.labels
        ]
        for n in range(trunc):
            for i in range(n + 1):
                for j, k in enumerate(self.degen[n][i]):
                    self.degeneracy_sources[n + 1][k].append((i, j))
        if check:
            self.validate()

    # sizes ---------------------------------------------------------------

    def size(self, n):
        if n > self.trunc:
            raise TruncationError(f"level {n} beyond truncation {self.trunc}")
        return len(self.labels[n])

    def nondegenerate(self, n):
        return [k for k in range(self.size(n)) if not self.degeneracy_sources[n][k]]

    # operators -----------------------------------------------------------

    def d(self, n, i, k):
        """Index of the i-th face of simplex k at level n."""
        return self.face[n][i][k]

    def s(self, n, i, k):
        """Index of the i-th degeneracy of simplex k at level n."""
        return self.degen[n][i][k]

    def apply_ordinal(self, f: OrdinalMap, k):
        """Action of a monotone map [m]->[n] on a level-n simplex index."""
        # factor f = degeneracies after faces, standard epi-mono factorization
        n = f.target
        image = sorted(set(f.values))
        idx = k
        # faces: remove the values of [n] missed by f, from the top down
        missed = [v for v in range(n, -1, -1) if v not in set(f.values)]
        for v in missed:
            idx = self.d(n, v, idx)
            n -= 1
        # degeneracies: repeat positions where f is constant
        # g: [m] ->> [len(image)-1] with g(i) = rank of f(i)
        rank = {v: r for r, v in enumerate(image)}
        g = [rank[v] for v in f.values]
        for i in range(len(g) - 2, -1, -1):
            if g[i] == g[i + 1]:
                idx = self.s(n, g[i], idx)
                n += 1
                g.pop(i + 1)
        assert n == f.source
        return idx

    def validate(self):
        T = self.trunc
        for n in range(1, T + 1):
            assert len(self.face[n]) == n + 1
            for i in range(n + 1):
                assert len(self.face[n][i]) == self.size(n)
        for n in range(T):
            assert len(self.degen[n]) == n + 1
        # face-face
        for n in range(2, T + 1):
            for j in range(n + 1):
                for i in range(j):
                    for k in range(self.size(n)):
                        a = self.d(n - 1, i, self.d(n, j, k))
                        b = self.d(n - 1, j - 1, self.d(n, i, k))
                        assert a == b, (n, i, j, k)
        # degen-degen
        for n in range(T - 1):
            for j in range(n + 1):
                for i in range(j + 1):
                    for k in range(self.size(n)):
                        a = self.s(n + 1, i, self.s(n, j, k))
                        b = self.s(n + 1, j + 1, self.s(n, i, k))
                        assert a == b, (n, i, j, k)
        # mixed
        for n in range(T):
            for j in range(n + 1):
                for i in range(n + 2):
                    for k in range(self.size(n)):
                        lhs = self.d(n + 1, i, self.s(n, j, k))
                        if i == j or i == j + 1:
                            assert lhs == k, (n, i, j, k)
                        elif i < j:
                            assert lhs == self.s(n - 1, j - 1, self.d(n, i, k))
                        else:
                            assert lhs == self.s(n - 1, j, self.d(n, i - 1, k))
        return True

    def label_of(self, n, k):
        return self.labels[n][k]

    def __repr__(self):
        sizes = ",".join(str(self.size(n)) for n in range(self.trunc + 1))
        return f"<sset trunc={self.trunc} sizes=[{sizes}]>"


def build_sset(trunc, level_labels, face_of, degen_of, coskeletal=False, check=True):
    """Construct a TruncatedSimplicialSet from label-level callables.

    level_labels: list of iterables of labels per level 0..trunc;
    face_of(n, i, label) and degen_of(n, i, label) return labels.
    """
    labels = [tuple(sorted(set(lv), key=_label_key)) for lv in level_labels]
    index = [{lab: k for k, lab in enumerate(lv)} for lv in labels]
    face = [None]
    for n in range(1, trunc + 1):
        face.append([
            tuple(index[n - 1][face_of(n, i, lab)] for lab in labels[n])
            for i in range(n + 1)
        ])
    degen = []
    for n in range(trunc):
        degen.append([
            tuple(index[n + 1][degen_of(n, i, lab)] for lab in labels[n])
            for i in range(n + 1)
        ])
    degen.append([])
    return TruncatedSimplicialSet(trunc, labels, face, degen,
                                  coskeletal=coskeletal, check=check)


def empty_sset(trunc):
    face = [None] + [[tuple() for _ in range(n + 1)] for n in range(1, trunc + 1)]
    degen = [[tuple() for _ in range(n + 1)] for n in range(trunc)] + [[]]
    return TruncatedSimplicialSet(trunc, [()] * (trunc + 1), face, degen, check=False)


def standard_simplex(n, trunc):
    levels = [list(itertools.combinations_with_replacement(range(n + 1), m + 1))
              for m in range(trunc + 1)]
    face_of = lambda m, i, lab: lab[:i] + lab[i + 1:]
    degen_of = lambda m, i, lab: lab[:i + 1] + lab[i:]
    return build_sset(trunc, levels, face_of, degen_of)


def boundary_simplex(n, trunc):
    """Subcomplex of the n-simplex on non-surjective vertex tuples."""
    full = set(range(n + 1))
    levels = [[t for t in itertools.combinations_with_replacement(range(n + 1), m + 1)
               if set(t) != full] for m in range(trunc + 1)]
    face_of = lambda m, i, lab: lab[:i] + lab[i + 1:]
    degen_of = lambda m, i, lab: lab[:i + 1] + lab[i:]
    return build_sset(trunc, levels, face_of, degen_of)


def sset_point(trunc):
    return standard_simplex(0, trunc)


def product_sset(X, Y):
    assert X.trunc == Y.trunc
    T = X.trunc
    levels = [[(a, b) for a in X.labels[n] for b in Y.labels[n]] for n in range(T + 1)]

    def face_of(n, i, lab):
        a, b = lab
        return (X.label_of(n - 1, X.d(n, i, X.index[n][a])),
                Y.label_of(n - 1, Y.d(n, i, Y.index[n][b])))

    def degen_of(n, i, lab):
        a, b = lab
        return (X.label_of(n + 1, X.s(n, i, X.index[n][a])),
                Y.label_of(n + 1, Y.s(n, i, Y.index[n][b])))

    return build_sset(T, levels, face_of, degen_of)


def subcomplex(X, keep):
    """Full subcomplex on the labels satisfying `keep` (closure checked)."""
    T = X.trunc
    levels = [[lab for lab in X.labels[n] if keep(n, lab)] for n in range(T + 1)]

    def face_of(n, i, lab):
        out = X.label_of(n - 1, X.d(n, i, X.index[n][lab]))
        assert keep(n - 1, out), "not closed under faces"
        return out

    def degen_of(n, i, lab):
        out = X.label_of(n + 1, X.s(n, i, X.index[n][lab]))
        assert keep(n + 1, out), "not closed under degeneracies"
        return out

    return build_sset(T, levels, face_of, degen_of)


BASEPOINT = "*"


def quotient_collapse(X, collapse):
    """Collapse the subcomplex of labels with collapse(n, lab) to a point."""
    T = X.trunc
    levels = [[lab for lab in X.labels[n] if not collapse(n, lab)] + [BASEPOINT]
              for n in range(T + 1)]

    def face_of(n, i, lab):
        if lab == BASEPOINT:
            return BASEPOINT
        out = X.label_of(n - 1, X.d(n, i, X.index[n][lab]))
        return BASEPOINT if collapse(n - 1, out) else out

    def degen_of(n, i, lab):
        if lab == BASEPOINT:
            return BASEPOINT
        out = X.label_of(n + 1, X.s(n, i, X.index[n][lab]))
        return BASEPOINT if collapse(n + 1, out) else out

    return build_sset(T, levels, face_of, degen_of)


def circle_sset(trunc):
    """The 1-sphere as the interval with both endpoints identified."""
    interval = standard_simplex(1, trunc)
    return quotient_collapse(interval, lambda n, lab: len(set(lab)) == 1)


# ------------------------------------------------------------------- cubes


def cube(n, trunc):
    """I^n as the n-fold product of the 1-simplex; one point when n = 0.

    A level-m simplex is an n-tuple of monotone 0/1 tuples of length m+1.
    Coordinate slots are 1-based in the formulas and 0-based here.
    """
    coords = [tuple((0,) * (m + 1 - j) + (1,) * j for j in range(m + 2))
              for m in range(trunc + 1)]
    levels = [[t for t in itertools.product(coords[m], repeat=n)]
              for m in range(trunc + 1)]
    face_of = lambda m, i, lab: tuple(c[:i] + c[i + 1:] for c in lab)
    degen_of = lambda m, i, lab: tuple(c[:i + 1] + c[i:] for c in lab)
    return build_sset(trunc, levels, face_of, degen_of)


def _coord_constant(c):
    return all(x == c[0] for x in c)


def cube_boundary_keep(n):
    def keep(m, lab):
        return any(_coord_constant(c) for c in lab)
    return keep


def cube_partial_boundary_keep(n):
    """Boundary minus the interior of the face where slot 1 is 0.

    Keeps: slot 1 constant at 1, or any later slot constant.
    """
    def keep(m, lab):
        if n >= 1 and _coord_constant(lab[0]) and lab[0][0] == 1:
            return True
        return any(_coord_constant(lab[j]) for j in range(1, n))
    return keep


def cube_family(n, trunc):
    """(I^n, boundary, partial boundary) as nested truncated complexes."""
    I = cube(n, trunc)
    if n == 0:
        return I, empty_sset(trunc), empty_sset(trunc)
    dI = subcomplex(I, cube_boundary_keep(n))
    gim = subcomplex(I, cube_partial_boundary_keep(n))
    return I, dI, gim


def cube_vertex_label(bits):
    return tuple((b,) for b in bits)


# --------------------------------------------------------- finite categories


class FiniteCategory:
    """Objects and morphisms by index, with a total composition table.

    compose[(g, f)] = index of g after f, defined when tgt(f) == src(g).
    """

    def __init__(self, objects, mor_labels, mor_src, mor_tgt, compose, identity,
                 check=True):
        self.objects = list(objects)
        self.mor_labels = list(mor_labels)
        self.src = list(mor_src)
        self.tgt = list(mor_tgt)
        self.compose = dict(compose)
        self.identity = list(identity)
        if check:
            self.validate()

    def n_objects(self):
        return len(self.objects)

    def n_morphisms(self):
        return len(self.mor_labels)

    def hom(self, a, b):
        return [f for f in range(self.n_morphisms())
                if self.src[f] == a and self.tgt[f] == b]

    def validate(self):
        for x, e in enumerate(self.identity):
            assert self.src[e] == x and self.tgt[e] == x
        for f in range(self.n_morphisms()):
            assert self.compose[(self.identity[self.tgt[f]], f)] == f
            assert self.compose[(f, self.identity[self.src[f]])] == f
        for g in range(self.n_morphisms()):
            for f in range(self.n_morphisms()):
                if self.tgt[f] != self.src[g]:
                    assert (g, f) not in self.compose
                    continue
                gf = self.compose[(g, f)]
                assert self.src[gf] == self.src[f] and self.tgt[gf] == self.tgt[g]
        for h in range(self.n_morphisms()):
            for g in range(self.n_morphisms()):
                if self.tgt[g] != self.src[h]:
                    continue
                hg = self.compose[(h, g)]
                for f in range(self.n_morphisms()):
                    if self.tgt[f] != self.src[g]:
                        continue
                    assert self.compose[(hg, f)] == self.compose[(h, self.compose[(g, f)])]
        return True

    def is_groupoid(self):
        return all(self.inverse(f) is not None for f in range(self.n_morphisms()))

    def inverse(self, f):
        for g in self.hom(self.tgt[f], self.src[f]):
            if (self.compose[(g, f)] == self.identity[self.src[f]]
                    and self.compose[(f, g)] == self.identity[self.tgt[f]]):
                return g
        return None

    def opposite(self):
        comp = {(f, g): h for (g, f), h in self.compose.items()}
        return FiniteCategory(self.objects, self.mor_labels, self.tgt, self.src,
                              comp, self.identity, check=False)


def group_category(elements, mult, name="G"):
    """One-object category from a finite group given by a multiplication table."""
    elements = list(elements)
    idx = {e: i for i, e in enumerate(elements)}
    unit = next(e for e in elements if all(mult(e, x) == x == mult(x, e) for x in elements))
    comp = {(idx[g], idx[f]): idx[mult(g, f)] for g in elements for f in elements}
    return FiniteCategory([name], elements, [0] * len(elements), [0] * len(elements),
                          comp, [idx[unit]])


def cyclic_group_category(k):
    return group_category(list(range(k)), lambda a, b: (a + b) % k, name=f"Z{k}")


def poset_category(n):
    """The poset 0 -> 1 -> ... -> n as a category; one morphism i<=j."""
    mors = [(i, j) for i in range(n + 1) for j in range(i, n + 1)]
    idx = {m: k for k, m in enumerate(mors)}
    comp = {}
    for (j2, k2) in mors:
        for (i1, j1) in mors:
            if j1 == j2:
                comp[(idx[(j2, k2)], idx[(i1, j1)])] = idx[(i1, k2)]
    ident = [idx[(i, i)] for i in range(n + 1)]
    return FiniteCategory(list(range(n + 1)), mors,
                          [m[0] for m in mors], [m[1] for m in mors], comp, ident)


def nerve(C: FiniteCategory, trunc):
    """Classifying space of a category: level n holds composable n-strings."""
    levels = [[("o", x) for x in range(C.n_objects())]]
    per_level = [[((), x) for x in range(C.n_objects())]]
    for n in range(1, trunc + 1):
        nxt = []
        for (s, end) in per_level[n - 1]:
            for f in range(C.n_morphisms()):
                if C.src[f] == end:
                    nxt.append((s + (f,), C.tgt[f]))
        per_level.append(nxt)
        levels.append([("m",) + s for (s, end) in nxt])

    def face_of(n, i, lab):
        s = lab[1:]
        if n == 1:
            x = C.tgt[s[0]] if i == 0 else C.src[s[0]]
            return ("o", x)
        if i == 0:
            return ("m",) + s[1:]
        if i == n:
            return ("m",) + s[:-1]
        merged = C.compose[(s[i], s[i - 1])]
        return ("m",) + s[:i - 1] + (merged,) + s[i + 1:]

    def degen_of(n, i, lab):
        if n == 0:
            return ("m", C.identity[lab[1]])
        s = lab[1:]
        x = C.src[s[0]] if i == 0 else C.tgt[s[i - 1]]
        return ("m",) + s[:i] + (C.identity[x],) + s[i:]

    return build_sset(trunc, levels, face_of, degen_of, coskeletal=True)


# --------------------------------------------------------- simplicial maps


@dataclass(frozen=True)
class SimplicialMap:
    """A levelwise assignment of target indices, one tuple per level."""

    source: object
    target: object
    assign: tuple  # assign[n][k] = index in target level n

    def __call__(self, n, k):
        return self.assign[n][k]

    def key(self):
        return self.assign


def identity_map(X):
    return SimplicialMap(X, X, tuple(tuple(range(X.size(n))) for n in range(X.trunc + 1)))


def compose_maps(f: SimplicialMap, g: SimplicialMap) -> SimplicialMap:
    """g after f."""
    assert f.target is g.source or f.target.labels == g.source.labels
    assign = tuple(tuple(g.assign[n][k] for k in f.assign[n])
                   for n in range(len(f.assign)))
    return SimplicialMap(f.source, g.target, assign)


def map_from_labels(K, X, fn, check=True):
    """Simplicial map built from a label-level function, checked natural."""
    assign = []
    for n in range(K.trunc + 1):
        row = []
        for lab in K.labels[n]:
            out = fn(n, lab)
            row.append(X.index[n][out])
        assign.append(tuple(row))
    m = SimplicialMap(K, X, tuple(assign))
    if check:
        assert is_simplicial(m)
    return m


def is_simplicial(m: SimplicialMap):
    K, X = m.source, m.target
    for n in range(1, K.trunc + 1):
        for i in range(n + 1):
            for k in range(K.size(n)):
                if X.d(n, i, m(n, k)) != m(n - 1, K.d(n, i, k)):
                    return False
    for n in range(K.trunc):
        for i in range(n + 1):
            for k in range(K.size(n)):
                if X.s(n, i, m(n, k)) != m(n + 1, K.s(n, i, k)):
                    return False
    return True


def simplicial_maps(K, X, partial=None):
    """All simplicial maps K -> X; optionally constrained by a partial map.

    partial: dict mapping (level, K-index) to an X-index. Enumeration is
    levelwise: degenerate simplices are forced, nondegenerate ones range
    over face-compatible candidates.
    """
    assert K.trunc == X.trunc
    T = K.trunc
    partial = partial or {}
    nondeg = [K.nondegenerate(n) for n in range(T + 1)]
    results = []

    def extend(n, assign):
        if n > T:
            results.append(SimplicialMap(K, X, tuple(tuple(a) for a in assign)))
            return
        row = [None] * K.size(n)
        # degenerate simplices are forced from below
        for k in range(K.size(n)):
            for (i, j) in K.degeneracy_sources[n][k]:
                forced = X.s(n - 1, i, assign[n - 1][j])
                if row[k] is None:
                    row[k] = forced
                elif row[k] != forced:
                    return
        for k in range(K.size(n)):
            if row[k] is not None and (n, k) in partial and partial[(n, k)] != row[k]:
                return
        # candidates for each nondegenerate simplex, filtered by faces
        cand = []
        for k in nondeg[n]:
            if (n, k) in partial:
                opts = [partial[(n, k)]]
            else:
                opts = range(X.size(n))
            ok = []
            for x in opts:
                if n > 0 and any(X.d(n, i, x) != assign[n - 1][K.d(n, i, k)]
                                 for i in range(n + 1)):
                    continue
                ok.append(x)
            if not ok:
                return
            cand.append((k, ok))
        for choice in itertools.product(*[opts for (_, opts) in cand]):
            row2 = list(row)
            for (k, _), x in zip(cand, choice):
                row2[k] = x
            extend(n + 1, assign + [row2])

    extend(0, [])
    return results


def function_complex(X, K, level):
    """The set of simplicial maps K x Delta^level -> X."""
    if level > K.trunc:
        raise TruncationError(f"level {level} beyond truncation {K.trunc}")
    P = product_sset(K, standard_simplex(level, K.trunc))
    return simplicial_maps(P, X)


# -------------------------------------------------------- matching objects


def simplicial_matching_set(X, n):
    """Face-compatible tuples (x_0..x_n) of level-(n-1) simplices.

    A complex is coskeletal at level n when X_n -> M_n is a bijection via
    x |-> (d_0 x, ..., d_n x).
    """
    assert 1 <= n <= X.trunc
    if n == 1:
        return [(a, b) for a in range(X.size(0)) for b in range(X.size(0))]
    out = []
    for tup in itertools.product(range(X.size(n - 1)), repeat=n + 1):
        if all(X.d(n - 1, i, tup[j]) == X.d(n - 1, j - 1, tup[i])
               for j in range(n + 1) for i in range(j)):
            out.append(tup)
    return out


def is_coskeletal_at(X, n):
    """Whether level n is determined by its faces (boundary-filling bijection)."""
    match = simplicial_matching_set(X, n)
    bdry = {}
    for k in range(X.size(n)):
        key = tuple(X.d(n, i, k) for i in range(n + 1))
        if key in bdry:
            return False
        bdry[key] = k
    return set(bdry) == set(match)


def matching_object(levels, sigma, n):
    """Matching set of a diagram on the endpoint-preserving ordinal category.

    levels(m) lists the level-m elements, sigma(i, m, e) applies the i-th
    codegeneracy to a level-m element. Returns the list of tuples
    (e_0..e_{n-1}) of level-(n-1) elements with sigma^i e_j = sigma^{j-1} e_i
    for all i < j. By convention the level-0 matching set is a singleton and
    the level-1 matching set is the set of level-0 elements.
    """
    if n == 0:
        return [()]
    if n == 1:
        return [(e,) for e in levels(0)]
    out = []
    for tup in itertools.product(levels(n - 1), repeat=n):
        if all(sigma(i, n - 1, tup[j]) == sigma(j - 1, n - 1, tup[i])
               for j in range(n) for i in range(j)):
            out.append(tup)
    return out
