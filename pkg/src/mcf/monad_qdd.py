"""Monads, comonads and mixing pairs on finite categories, and the enriched
hom carriers they induce.

The central object is the quasi-descent datum: a finite object list with a
graded hom carrier between every ordered pair, inner inserts and collapses in
the monad direction, and a graded pasting product. Enrichments of three
flavours produce such data: from a monad (levels Hom(T^n a, b)), from a
comonad (levels Hom(a, W^n b)) and from a mixing pair (levels
Hom(T^n a, W^n b) glued through the swap of powers). Monads come in two
representations: componentwise tables over a FiniteCategory, and
product-style endofunctors on finite sets where powers of the carrier are
built on demand.

On top of the carriers sit the constructions this module exists for: the
category of algebras and its two neighbours in the adjunction chain, the
path-indexed carriers over a truncated simplicial set together with their
one-object specialization, level sets of the classifying object with their
chain identities and spine comparisons, the coend of a diagram against a
graded carrier, and the totalization of the hom carrier between two algebra
objects.
"""

import itertools
from dataclasses import dataclass, field

from .quasi_comonoid import (
    QuasiBicomonoid,
    QuasiComonoid,
    ValidationReport,
)
from .simplicial_core import (
    FiniteCategory,
    TruncationError,
    cyclic_group_category,
    nerve,
    poset_category,
    standard_simplex,
)

__all__ = [
    "FiniteFunctor",
    "NatTrans",
    "identity_functor",
    "compose_functors",
    "identity_nat",
    "vcompose",
    "whisker_left",
    "whisker_right",
    "MonadData",
    "ComonadData",
    "DistributivePair",
    "validate_monad",
    "validate_comonad",
    "validate_distributive",
    "identity_monad",
    "identity_comonad",
    "closure_monad",
    "twisted_monad",
    "twisted_comonad",
    "twisted_pair",
    "two_object_group_category",
    "SetMonad",
    "SetComonad",
    "SetDistributivePair",
    "sign_monad",
    "monoid_monad",
    "color_comonad",
    "sign_color_pair",
    "QuasiDescentDatum",
    "validate_qdd",
    "endo_qm",
    "mc_qdd",
    "enrich_monad",
    "enrich_comonad",
    "enrich_bialgebra",
    "QuasiMonadData",
    "validate_quasi_monad",
    "quasi_from_monad",
    "twisted_quasi_monad",
    "enrich_quasi_monad",
    "alg_category",
    "alg_star",
    "id_empty",
    "zero_level_category",
    "direct_algebra_category",
    "direct_bialgebra_category",
    "algebra_iso_check",
    "QddMorphism",
    "qdd_morphisms",
    "functors_between",
    "bicomonoid_morphisms",
    "algstar_alg_adjunction",
    "zero_algstar_adjunction",
    "restrict_category",
    "restrict_qdd",
    "p_k_cat",
    "p_k",
    "p_n_star",
    "mc_level_discrete",
    "segal_check_discrete",
    "nerve_identity_check",
    "EndpointDiagram",
    "uleft_product",
    "uleft_pairing_check",
    "nerve_strings",
    "representable_diagram",
    "morphism_total",
]


def _cap_pairs(seq, cap, rng):
    seq = list(seq)
    if len(seq) <= cap:
        return seq
    if rng is None:
        return seq[:cap]
    return [seq[rng.randrange(len(seq))] for _ in range(cap)]


# ------------------------------------------------ functors and transformations


class FiniteFunctor:
    """Functor between finite categories as object and morphism index tables."""

    def __init__(self, src, tgt, obj, mor, check=True):
        self.src = src
        self.tgt = tgt
        self.obj = tuple(obj)
        self.mor = tuple(mor)
        if check:
            assert len(self.obj) == src.n_objects()
            assert len(self.mor) == src.n_morphisms()
            for f in range(src.n_morphisms()):
                assert tgt.src[self.mor[f]] == self.obj[src.src[f]]
                assert tgt.tgt[self.mor[f]] == self.obj[src.tgt[f]]
            for x in range(src.n_objects()):
                assert self.mor[src.identity[x]] == tgt.identity[self.obj[x]]
            for (g, f), gf in src.compose.items():
                assert tgt.compose[(self.mor[g], self.mor[f])] == self.mor[gf]

    def __eq__(self, other):
        return (isinstance(other, FiniteFunctor) and self.src is other.src
                and self.tgt is other.tgt and self.obj == other.obj
                and self.mor == other.mor)

    def __hash__(self):
        return hash((id(self.src), id(self.tgt), self.obj, self.mor))

    def __repr__(self):
        return f"<functor on {len(self.obj)} objects / {len(self.mor)} morphisms>"


def identity_functor(C):
    return FiniteFunctor(C, C, range(C.n_objects()), range(C.n_morphisms()),
                         check=False)


def compose_functors(g, f):
    """g after f."""
    assert f.tgt is g.src
    return FiniteFunctor(f.src, g.tgt,
                         tuple(g.obj[x] for x in f.obj),
                         tuple(g.mor[m] for m in f.mor), check=False)


def functor_power(t, n):
    out = identity_functor(t.src)
    for _ in range(n):
        out = compose_functors(t, out)
    return out


class NatTrans:
    """Natural transformation as a per-object component table; naturality is
    checked on construction and therefore after every composition."""

    def __init__(self, src, tgt, comp, check=True):
        self.src = src
        self.tgt = tgt
        self.comp = tuple(comp)
        if check:
            C, D = src.src, src.tgt
            assert tgt.src is C and tgt.tgt is D
            for x in range(C.n_objects()):
                assert D.src[self.comp[x]] == src.obj[x]
                assert D.tgt[self.comp[x]] == tgt.obj[x]
            for f in range(C.n_morphisms()):
                x, y = C.src[f], C.tgt[f]
                lhs = D.compose[(self.comp[y], src.mor[f])]
                rhs = D.compose[(tgt.mor[f], self.comp[x])]
                assert lhs == rhs, f"naturality fails at morphism {f}"

    def __eq__(self, other):
        return (isinstance(other, NatTrans) and self.src == other.src
                and self.tgt == other.tgt and self.comp == other.comp)

    def __hash__(self):
        return hash((self.src, self.tgt, self.comp))

    def __repr__(self):
        return f"<nat-trans {self.comp}>"


def identity_nat(F, tgt=None):
    """Identity-component transformation; `tgt` may supply an equal functor
    built along a different bracketing."""
    D = F.tgt
    return NatTrans(F, F if tgt is None else tgt,
                    tuple(D.identity[F.obj[x]] for x in range(F.src.n_objects())))


def vcompose(beta, alpha):
    """beta after alpha, componentwise."""
    assert alpha.tgt == beta.src
    D = alpha.src.tgt
    return NatTrans(alpha.src, beta.tgt,
                    tuple(D.compose[(beta.comp[x], alpha.comp[x])]
                          for x in range(len(alpha.comp))))


def whisker_left(H, alpha):
    """H applied to alpha: components H(alpha_x)."""
    return NatTrans(compose_functors(H, alpha.src),
                    compose_functors(H, alpha.tgt),
                    tuple(H.mor[c] for c in alpha.comp))


def whisker_right(alpha, H):
    """alpha evaluated along H: components alpha_{H x}."""
    return NatTrans(compose_functors(alpha.src, H),
                    compose_functors(alpha.tgt, H),
                    tuple(alpha.comp[H.obj[x]] for x in range(H.src.n_objects())))


# --------------------------------------------------- monad and comonad tables


class MonadData:
    """Endofunctor with unit and multiplication tables."""

    kind = "monad"

    def __init__(self, t, eta, mu):
        self.cat = t.src
        assert t.tgt is self.cat
        self.t = t
        self.eta = eta
        self.mu = mu

    def __repr__(self):
        return f"<monad on {self.cat.n_objects()} objects>"


class ComonadData:
    """Endofunctor with counit and comultiplication tables."""

    kind = "comonad"

    def __init__(self, w, eps, delta):
        self.cat = w.src
        assert w.tgt is self.cat
        self.w = w
        self.eps = eps
        self.delta = delta

    def __repr__(self):
        return f"<comonad on {self.cat.n_objects()} objects>"


class DistributivePair:
    """Monad and comonad glued by a mixing transformation TW => WT."""

    kind = "pair"

    def __init__(self, monad, comonad, lam):
        assert monad.cat is comonad.cat
        self.cat = monad.cat
        self.monad = monad
        self.comonad = comonad
        self.lam = lam


def validate_monad(M, carriers=None):
    if isinstance(M, SetMonad):
        return _validate_set_monad(M, carriers or [])
    rep = ValidationReport()
    C, t, mu, eta = M.cat, M.t, M.mu, M.eta
    lhs = vcompose(mu, whisker_left(t, mu))
    rhs = vcompose(mu, whisker_right(mu, t))
    for x in range(C.n_objects()):
        rep.checks += 1
        if lhs.comp[x] != rhs.comp[x]:
            rep.note("monad-associativity", x)
    left = vcompose(mu, whisker_right(eta, t))
    right = vcompose(mu, whisker_left(t, eta))
    for x in range(C.n_objects()):
        rep.checks += 2
        if left.comp[x] != C.identity[t.obj[x]]:
            rep.note("monad-units", "outer", x)
        if right.comp[x] != C.identity[t.obj[x]]:
            rep.note("monad-units", "inner", x)
    return rep


def validate_comonad(W, carriers=None):
    if isinstance(W, SetComonad):
        return _validate_set_comonad(W, carriers or [])
    rep = ValidationReport()
    C, w, delta, eps = W.cat, W.w, W.delta, W.eps
    lhs = vcompose(whisker_left(w, delta), delta)
    rhs = vcompose(whisker_right(delta, w), delta)
    for x in range(C.n_objects()):
        rep.checks += 1
        if lhs.comp[x] != rhs.comp[x]:
            rep.note("comonad-coassociativity", x)
    left = vcompose(whisker_right(eps, w), delta)
    right = vcompose(whisker_left(w, eps), delta)
    for x in range(C.n_objects()):
        rep.checks += 2
        if left.comp[x] != C.identity[w.obj[x]]:
            rep.note("comonad-counits", "outer", x)
        if right.comp[x] != C.identity[w.obj[x]]:
            rep.note("comonad-counits", "inner", x)
    return rep


def validate_distributive(P, carriers=None):
    """Per-diagram check of a mixing pair; each failure names its diagram and
    a witnessing object."""
    if isinstance(P, SetDistributivePair):
        return _validate_set_distributive(P, carriers or [])
    rep = validate_monad(P.monad)
    other = validate_comonad(P.comonad)
    rep.failures.extend(other.failures)
    rep.checks += other.checks
    C = P.cat
    t, mu, eta = P.monad.t, P.monad.mu, P.monad.eta
    w, delta, eps = P.comonad.w, P.comonad.delta, P.comonad.eps
    lam = P.lam.comp
    for f in range(C.n_morphisms()):
        x, y = C.src[f], C.tgt[f]
        rep.checks += 1
        if (C.compose[(lam[y], t.mor[w.mor[f]])]
                != C.compose[(w.mor[t.mor[f]], lam[x])]):
            rep.note("mixing-naturality", f)
    for x in range(C.n_objects()):
        rep.checks += 4
        lhs = C.compose[(w.mor[lam[x]],
                         C.compose[(lam[w.obj[x]], t.mor[delta.comp[x]])])]
        if lhs != C.compose[(delta.comp[t.obj[x]], lam[x])]:
            rep.note("comultiplication", x)
        lhs = C.compose[(lam[x], mu.comp[w.obj[x]])]
        rhs = C.compose[(w.mor[mu.comp[x]],
                         C.compose[(lam[t.obj[x]], t.mor[lam[x]])])]
        if lhs != rhs:
            rep.note("multiplication", x)
        if C.compose[(eps.comp[t.obj[x]], lam[x])] != t.mor[eps.comp[x]]:
            rep.note("counit", x)
        if C.compose[(lam[x], eta.comp[w.obj[x]])] != w.mor[eta.comp[x]]:
            rep.note("unit", x)
    return rep


# ------------------------------------------------------------- table fixtures


def identity_monad(C):
    t = identity_functor(C)
    return MonadData(t, identity_nat(t), identity_nat(t))


def identity_comonad(C):
    w = identity_functor(C)
    return ComonadData(w, identity_nat(w), identity_nat(w))


def closure_monad():
    """Rounding-up operator on the three-chain poset: 0 and 1 round to 1."""
    C = poset_category(2)
    up = {0: 1, 1: 1, 2: 2}
    midx = {lab: k for k, lab in enumerate(C.mor_labels)}
    t = FiniteFunctor(C, C, [up[x] for x in range(3)],
                      [midx[(up[i], up[j])] for (i, j) in C.mor_labels])
    eta = NatTrans(identity_functor(C), t, [midx[(x, up[x])] for x in range(3)])
    mu = NatTrans(compose_functors(t, t), t, [C.identity[up[x]] for x in range(3)])
    return MonadData(t, eta, mu)


def twisted_monad():
    """Identity endofunctor on the two-element group with the nontrivial
    element as both unit and multiplication component."""
    C = cyclic_group_category(2)
    t = identity_functor(C)
    g = 1  # morphism index of the nontrivial element
    return MonadData(t, NatTrans(t, t, [g], check=False),
                     NatTrans(t, t, [g], check=False))


def twisted_comonad():
    C = cyclic_group_category(2)
    w = identity_functor(C)
    g = 1
    return ComonadData(w, NatTrans(w, w, [g], check=False),
                       NatTrans(w, w, [g], check=False))


def twisted_pair():
    """Twisted monad and comonad on the same group object; the only mixing
    component making all four squares commute is the identity."""
    M, W = twisted_monad(), twisted_comonad()
    lam = NatTrans(M.t, M.t, [M.cat.identity[0]], check=False)
    return DistributivePair(M, W, lam)


def two_object_group_category():
    """Disjoint union of the two-element group object and a bare point."""
    objects = ["G", "pt"]
    labels = ["e", "g", "id_pt"]
    src = [0, 0, 1]
    tgt = [0, 0, 1]
    compose = {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 0, (2, 2): 2}
    return FiniteCategory(objects, labels, src, tgt, compose, [0, 2])


# ------------------------------------------------------- set-level structures


class SetMonad:
    """Pairing endofunctor X -> X x M on finite sets, for a finite monoid M.

    Objects are tuples of hashables; a map X -> Y is a dict. Powers of the
    carrier are built on demand, so only the levels actually touched exist.
    """

    kind = "set-monad"

    def __init__(self, elements, mult, unit, name="M"):
        self.elements = tuple(elements)
        self.mult = mult
        self.unit = unit
        self.name = name

    def t_obj(self, X):
        return tuple((x, m) for x in X for m in self.elements)

    def t_map(self, X, g):
        return {(x, m): (g[x], m) for x in X for m in self.elements}

    def mu_map(self, X):
        return {((x, m1), m2): (x, self.mult(m1, m2))
                for x in X for m1 in self.elements for m2 in self.elements}

    def eta_map(self, X):
        return {x: (x, self.unit) for x in X}

    def __repr__(self):
        return f"<set monad x{self.name}, {len(self.elements)} elements>"


def monoid_monad(elements, mult, unit, name="M"):
    return SetMonad(elements, mult, unit, name)


def sign_monad():
    return monoid_monad((0, 1), lambda a, b: (a + b) % 2, 0, "sign")


class SetComonad:
    """Pairing comonad X -> X x S: the counit drops the color, the
    comultiplication copies it."""

    kind = "set-comonad"

    def __init__(self, colors, name="S"):
        self.colors = tuple(colors)
        self.name = name

    def w_obj(self, X):
        return tuple((x, s) for x in X for s in self.colors)

    def w_map(self, X, g):
        return {(x, s): (g[x], s) for x in X for s in self.colors}

    def delta_map(self, X):
        return {(x, s): ((x, s), s) for x in X for s in self.colors}

    def eps_map(self, X):
        return {(x, s): x for x in X for s in self.colors}

    def __repr__(self):
        return f"<set comonad x{self.name}, {len(self.colors)} colors>"


def color_comonad(colors=(0, 1)):
    return SetComonad(colors, "color")


class SetDistributivePair:
    """Sign-and-color pair mixed by the coordinate swap."""

    kind = "set-pair"

    def __init__(self, monad, comonad):
        self.monad = monad
        self.comonad = comonad

    def lam_map(self, X):
        return {((x, s), m): ((x, m), s) for x in X
                for s in self.comonad.colors for m in self.monad.elements}


def sign_color_pair():
    return SetDistributivePair(sign_monad(), color_comonad())


def _all_maps(X, Y):
    for vals in itertools.product(Y, repeat=len(X)):
        yield dict(zip(X, vals))


def _dcompose(g, f):
    return {x: g[f[x]] for x in f}


def _validate_set_monad(M, carriers):
    rep = ValidationReport()
    for X in carriers:
        X = tuple(X)
        TX = M.t_obj(X)
        mu, eta = M.mu_map(X), M.eta_map(X)
        lhs = _dcompose(mu, M.t_map(M.t_obj(TX), mu))
        rhs = _dcompose(mu, M.mu_map(TX))
        rep.checks += 1
        if lhs != rhs:
            rep.note("monad-associativity", X)
        rep.checks += 2
        if _dcompose(mu, M.eta_map(TX)) != {z: z for z in TX}:
            rep.note("monad-units", "outer", X)
        if _dcompose(mu, M.t_map(X, eta)) != {z: z for z in TX}:
            rep.note("monad-units", "inner", X)
    for X in carriers:
        for Y in carriers:
            X, Y = tuple(X), tuple(Y)
            for g in _all_maps(X, Y):
                rep.checks += 2
                if (_dcompose(M.mu_map(Y), M.t_map(M.t_obj(X), M.t_map(X, g)))
                        != _dcompose(M.t_map(X, g), M.mu_map(X))):
                    rep.note("monad-naturality", "mu", X, Y)
                if (_dcompose(M.eta_map(Y), g)
                        != _dcompose(M.t_map(X, g), M.eta_map(X))):
                    rep.note("monad-naturality", "eta", X, Y)
    return rep


def _validate_set_comonad(W, carriers):
    rep = ValidationReport()
    for X in carriers:
        X = tuple(X)
        WX = W.w_obj(X)
        delta, eps = W.delta_map(X), W.eps_map(X)
        lhs = _dcompose(W.w_map(W.w_obj(WX), delta), delta)
        rhs = _dcompose(W.delta_map(WX), delta)
        rep.checks += 1
        if lhs != rhs:
            rep.note("comonad-coassociativity", X)
        rep.checks += 2
        if _dcompose(W.eps_map(WX), delta) != {z: z for z in WX}:
            rep.note("comonad-counits", "outer", X)
        if _dcompose(W.w_map(X, eps), delta) != {z: z for z in WX}:
            rep.note("comonad-counits", "inner", X)
    for X in carriers:
        for Y in carriers:
            X, Y = tuple(X), tuple(Y)
            for g in _all_maps(X, Y):
                rep.checks += 2
                if (_dcompose(W.delta_map(Y), W.w_map(X, g))
                        != _dcompose(W.w_map(W.w_obj(X), W.w_map(X, g)),
                                     W.delta_map(X))):
                    rep.note("comonad-naturality", "delta", X, Y)
                if (_dcompose(g, W.eps_map(X))
                        != _dcompose(W.eps_map(Y), W.w_map(X, g))):
                    rep.note("comonad-naturality", "eps", X, Y)
    return rep


def _validate_set_distributive(P, carriers):
    M, W = P.monad, P.comonad
    rep = _validate_set_monad(M, carriers)
    other = _validate_set_comonad(W, carriers)
    rep.failures.extend(other.failures)
    rep.checks += other.checks
    for X in carriers:
        X = tuple(X)
        WX, TX = W.w_obj(X), M.t_obj(X)
        lam = P.lam_map(X)
        rep.checks += 4
        lhs = _dcompose(W.w_map(TX, lam),
                        _dcompose(P.lam_map(WX), M.t_map(WX, W.delta_map(X))))
        if lhs != _dcompose(W.delta_map(TX), lam):
            rep.note("comultiplication", X)
        lhs = _dcompose(lam, M.mu_map(WX))
        rhs = _dcompose(W.w_map(M.t_obj(TX), M.mu_map(X)),
                        _dcompose(P.lam_map(TX), M.t_map(M.t_obj(WX), lam)))
        if lhs != rhs:
            rep.note("multiplication", X)
        if _dcompose(W.eps_map(TX), lam) != M.t_map(WX, W.eps_map(X)):
            rep.note("counit", X)
        if _dcompose(lam, M.eta_map(WX)) != W.w_map(X, M.eta_map(X)):
            rep.note("unit", X)
        for Y in carriers:
            Y = tuple(Y)
            for g in _all_maps(X, Y):
                rep.checks += 1
                if (_dcompose(P.lam_map(Y), M.t_map(W.w_obj(X), W.w_map(X, g)))
                        != _dcompose(W.w_map(M.t_obj(X), M.t_map(X, g)),
                                     P.lam_map(X))):
                    rep.note("mixing-naturality", X, Y)
    return rep


# ------------------------------------------------------- quasi-descent datum


class QuasiDescentDatum:
    """Object list with a graded hom carrier for each ordered pair.

    level(a, b, n) lists the degree-n elements from a to b, or None when the
    set is too large to enumerate; d(a, b, n, i, e) inserts (1 <= i <= n),
    s(a, b, n, i, e) collapses (0 <= i < n), prod(a, b, c, m, n, u, v) pastes
    u in hom(b, c)^m with v in hom(a, b)^n, and unit(a) is the degree-0
    identity at a. Operations stay defined above the truncation so long as
    no enumeration is involved.
    """

    carrier = "qdd"

    def __init__(self, trunc, objects, level, d, s, prod, unit, tag=""):
        self.trunc = trunc
        self.objects = list(objects)
        self._level = level
        self._memo = {}
        self.d = d
        self.s = s
        self.prod = prod
        self.unit = unit
        self.tag = tag

    def level(self, a, b, n):
        if n > self.trunc:
            raise TruncationError(f"level {n} beyond truncation {self.trunc}")
        key = (a, b, n)
        if key not in self._memo:
            lv = self._level(a, b, n)
            self._memo[key] = None if lv is None else list(lv)
        lv = self._memo[key]
        return None if lv is None else list(lv)

    def __repr__(self):
        return f"<descent datum '{self.tag}' on {len(self.objects)} objects>"


def validate_qdd(D, rng=None, cap=1500):
    """Axiom sweep over all enumerable levels: operator identities for every
    hom carrier, the product against inserts and collapses, associativity
    and the two unit laws."""
    rep = ValidationReport()
    T = D.trunc

    def elems(a, b, n):
        lv = D.level(a, b, n)
        return [] if lv is None else lv

    for a in D.objects:
        for b in D.objects:
            for n in range(T):
                for x in _cap_pairs(elems(a, b, n), cap, rng):
                    if n + 2 <= T:
                        for i in range(1, n + 1):
                            for j in range(i + 1, n + 2):
                                rep.checks += 1
                                if (D.d(a, b, n + 1, j, D.d(a, b, n, i, x))
                                        != D.d(a, b, n + 1, i, D.d(a, b, n, j - 1, x))):
                                    rep.note("(1)", a, b, n, i, j, x)
                    for i in range(1, n + 1):
                        dx = D.d(a, b, n, i, x)
                        for j in range(n + 1):
                            rep.checks += 1
                            got = D.s(a, b, n + 1, j, dx)
                            if i == j or i == j + 1:
                                want = x
                            elif i < j:
                                want = D.d(a, b, n - 1, i, D.s(a, b, n, j - 1, x))
                            else:
                                want = D.d(a, b, n - 1, i - 1, D.s(a, b, n, j, x))
                            if got != want:
                                rep.note("(3)", a, b, n, i, j, x)
            for n in range(2, T + 1):
                for x in _cap_pairs(elems(a, b, n), cap, rng):
                    for i in range(n):
                        for j in range(i, n - 1):
                            rep.checks += 1
                            if (D.s(a, b, n - 1, j, D.s(a, b, n, i, x))
                                    != D.s(a, b, n - 1, i, D.s(a, b, n, j + 1, x))):
                                rep.note("(2)", a, b, n, i, j, x)
    for a in D.objects:
        for b in D.objects:
            for c in D.objects:
                for m in range(T + 1):
                    for n in range(T + 1 - m):
                        pairs = _cap_pairs(
                            itertools.product(elems(b, c, m), elems(a, b, n)),
                            cap, rng)
                        for u, v in pairs:
                            uv = D.prod(a, b, c, m, n, u, v)
                            if m + n + 1 <= T:
                                for i in range(1, m + 1):
                                    rep.checks += 1
                                    if (D.prod(a, b, c, m + 1, n, D.d(b, c, m, i, u), v)
                                            != D.d(a, c, m + n, i, uv)):
                                        rep.note("(4)", a, b, c, m, n, i, u, v)
                                for i in range(1, n + 1):
                                    rep.checks += 1
                                    if (D.prod(a, b, c, m, n + 1, u, D.d(a, b, n, i, v))
                                            != D.d(a, c, m + n, i + m, uv)):
                                        rep.note("(5)", a, b, c, m, n, i, u, v)
                            for i in range(m):
                                rep.checks += 1
                                if (D.prod(a, b, c, m - 1, n, D.s(b, c, m, i, u), v)
                                        != D.s(a, c, m + n, i, uv)):
                                    rep.note("(6)", a, b, c, m, n, i, u, v)
                            for i in range(n):
                                rep.checks += 1
                                if (D.prod(a, b, c, m, n - 1, u, D.s(a, b, n, i, v))
                                        != D.s(a, c, m + n, i + m, uv)):
                                    rep.note("(7)", a, b, c, m, n, i, u, v)
    for a in D.objects:
        for b in D.objects:
            for n in range(T + 1):
                for x in _cap_pairs(elems(a, b, n), cap, rng):
                    rep.checks += 2
                    if D.prod(a, b, b, 0, n, D.unit(b), x) != x:
                        rep.note("unit-left", a, b, n, x)
                    if D.prod(a, a, b, n, 0, x, D.unit(a)) != x:
                        rep.note("unit-right", a, b, n, x)
    quads = itertools.product(D.objects, repeat=4)
    for (a, b, c, e) in quads:
        for m in range(T + 1):
            for n in range(T + 1 - m):
                for p in range(T + 1 - m - n):
                    triples = _cap_pairs(
                        itertools.product(elems(c, e, m), elems(b, c, n),
                                          elems(a, b, p)), cap, rng)
                    for u, v, wx in triples:
                        rep.checks += 1
                        lhs = D.prod(a, c, e, m, n + p, u, D.prod(a, b, c, n, p, v, wx))
                        rhs = D.prod(a, b, e, m + n, p, D.prod(b, c, e, m, n, u, v), wx)
                        if lhs != rhs:
                            rep.note("assoc", a, b, c, e, m, n, p, u, v, wx)
    return rep


def endo_qm(D, a, trunc=None):
    """The hom carrier at one object, as a plain graded carrier."""
    T = D.trunc if trunc is None else trunc
    levels = [D.level(a, a, n) for n in range(T + 1)]
    return QuasiComonoid(
        T, levels,
        lambda n, i, x: D.d(a, a, n, i, x),
        lambda n, i, x: D.s(a, a, n, i, x),
        lambda m, n, u, v: D.prod(a, a, a, m, n, u, v),
        D.unit(a))


def mc_qdd(D, a):
    """Degree-1 elements at `a` collapsing to the unit and squaring to their
    insert; for a monad enrichment these are the algebra structures."""
    out = []
    lv = D.level(a, a, 1)
    if lv is None:
        raise ValueError(f"degree-1 level at {a!r} is not enumerable")
    for w in lv:
        if D.s(a, a, 1, 0, w) != D.unit(a):
            continue
        if D.d(a, a, 1, 1, w) != D.prod(a, a, a, 1, 1, w, w):
            continue
        out.append(w)
    return out


# ------------------------------------------------------------- enrichments


def _table_powers(M):
    t = M.t

    def tpow_obj(x, n):
        for _ in range(n):
            x = t.obj[x]
        return x

    def tpow_mor(f, n):
        for _ in range(n):
            f = t.mor[f]
        return f

    return tpow_obj, tpow_mor


def _enrich_monad_table(C, M, trunc):
    assert M.cat is C
    tpow_obj, tpow_mor = _table_powers(M)

    def level(a, b, n):
        return C.hom(tpow_obj(a, n), b)

    def mu_comp(a, n, i):
        return tpow_mor(M.mu.comp[tpow_obj(a, n - i)], i - 1)

    def eta_comp(a, n, i):
        return tpow_mor(M.eta.comp[tpow_obj(a, n - i - 1)], i)

    def d(a, b, n, i, e):
        return C.compose[(e, mu_comp(a, n, i))]

    def s(a, b, n, i, e):
        return C.compose[(e, eta_comp(a, n, i))]

    def prod(a, b, c, m, n, u, v):
        return C.compose[(u, tpow_mor(v, m))]

    def unit(a):
        return C.identity[a]

    return QuasiDescentDatum(trunc, range(C.n_objects()), level, d, s, prod,
                             unit, tag="monad-table")


def _graph(dom, mapping):
    return tuple(mapping[x] for x in dom)


def _enrich_monad_set(objects, M, trunc, cap):
    objects = [tuple(x) for x in objects]
    pow_memo = {}

    def tpow(a, n):
        key = (a, n)
        if key not in pow_memo:
            pow_memo[key] = a if n == 0 else M.t_obj(tpow(a, n - 1))
        return pow_memo[key]

    idx_memo = {}

    def index(dom):
        if dom not in idx_memo:
            idx_memo[dom] = {x: k for k, x in enumerate(dom)}
        return idx_memo[dom]

    def tmap_iter(dom, mapping, times):
        for _ in range(times):
            mapping = M.t_map(dom, mapping)
            dom = M.t_obj(dom)
        return mapping

    comp_memo = {}

    def mu_comp(a, n, i):
        # insert i merges the pair of monoid coordinates at depth n - i
        key = ("mu", a, n, i)
        if key not in comp_memo:
            base = tpow(a, n - i)
            comp_memo[key] = tmap_iter(M.t_obj(M.t_obj(base)), M.mu_map(base),
                                       i - 1)
        return comp_memo[key]

    def eta_comp(a, n, i):
        key = ("eta", a, n, i)
        if key not in comp_memo:
            base = tpow(a, n - i - 1)
            comp_memo[key] = tmap_iter(base, M.eta_map(base), i)
        return comp_memo[key]

    def level(a, b, n):
        dom = tpow(a, n)
        if len(b) ** len(dom) > cap:
            return None
        return [tuple(vals) for vals in itertools.product(b, repeat=len(dom))]

    def d(a, b, n, i, e):
        dom = tpow(a, n + 1)
        pos = index(tpow(a, n))
        phi = mu_comp(a, n, i)
        return tuple(e[pos[phi[z]]] for z in dom)

    def s(a, b, n, i, e):
        dom = tpow(a, n - 1)
        pos = index(tpow(a, n))
        phi = eta_comp(a, n, i)
        return tuple(e[pos[phi[z]]] for z in dom)

    def prod(a, b, c, m, n, u, v):
        vmap = dict(zip(tpow(a, n), v))
        tv = tmap_iter(tpow(a, n), vmap, m)
        pos = index(tpow(b, m))
        return tuple(u[pos[tv[z]]] for z in tpow(a, m + n))

    def unit(a):
        return a

    return QuasiDescentDatum(trunc, objects, level, d, s, prod, unit,
                             tag="monad-set")


def enrich_monad(C, M, trunc=3, cap=100000):
    """Hom carriers Hom(T^n a, b): inserts precompose with a multiplication
    component, collapses with a unit component, and the product applies the
    n-th power of the endofunctor to the right factor."""
    if isinstance(M, MonadData):
        return _enrich_monad_table(C, M, trunc)
    return _enrich_monad_set(C, M, trunc, cap)


def _enrich_comonad_table(C, W, trunc):
    assert W.cat is C
    w = W.w

    def wpow_obj(x, n):
        for _ in range(n):
            x = w.obj[x]
        return x

    def wpow_mor(f, n):
        for _ in range(n):
            f = w.mor[f]
        return f

    def level(a, b, n):
        return C.hom(a, wpow_obj(b, n))

    def delta_comp(b, n, i):
        return wpow_mor(W.delta.comp[wpow_obj(b, i - 1)], n - i)

    def eps_comp(b, n, i):
        return wpow_mor(W.eps.comp[wpow_obj(b, i)], n - i - 1)

    def d(a, b, n, i, e):
        return C.compose[(delta_comp(b, n, i), e)]

    def s(a, b, n, i, e):
        return C.compose[(eps_comp(b, n, i), e)]

    def prod(a, b, c, m, n, u, v):
        return C.compose[(wpow_mor(u, n), v)]

    def unit(a):
        return C.identity[a]

    return QuasiDescentDatum(trunc, range(C.n_objects()), level, d, s, prod,
                             unit, tag="comonad-table")


def _enrich_comonad_set(objects, W, trunc, cap):
    objects = [tuple(x) for x in objects]
    pow_memo = {}

    def wpow(b, n):
        key = (b, n)
        if key not in pow_memo:
            pow_memo[key] = b if n == 0 else W.w_obj(wpow(b, n - 1))
        return pow_memo[key]

    def wmap_iter(dom, mapping, times):
        for _ in range(times):
            mapping = W.w_map(dom, mapping)
            dom = W.w_obj(dom)
        return mapping

    comp_memo = {}

    def delta_comp(b, n, i):
        key = ("delta", b, n, i)
        if key not in comp_memo:
            base = wpow(b, i - 1)
            comp_memo[key] = wmap_iter(W.w_obj(base), W.delta_map(base), n - i)
        return comp_memo[key]

    def eps_comp(b, n, i):
        key = ("eps", b, n, i)
        if key not in comp_memo:
            base = wpow(b, i)
            comp_memo[key] = wmap_iter(W.w_obj(base), W.eps_map(base),
                                       n - i - 1)
        return comp_memo[key]

    def level(a, b, n):
        cod = wpow(b, n)
        if len(cod) ** len(a) > cap:
            return None
        return [tuple(vals) for vals in itertools.product(cod, repeat=len(a))]

    def d(a, b, n, i, e):
        phi = delta_comp(b, n, i)
        return tuple(phi[y] for y in e)

    def s(a, b, n, i, e):
        phi = eps_comp(b, n, i)
        return tuple(phi[y] for y in e)

    def prod(a, b, c, m, n, u, v):
        umap = dict(zip(b, u))
        wu = wmap_iter(b, umap, n)
        return tuple(wu[y] for y in v)

    def unit(a):
        return a

    return QuasiDescentDatum(trunc, objects, level, d, s, prod, unit,
                             tag="comonad-set")


def enrich_comonad(C, W, trunc=3, cap=100000):
    """Hom carriers Hom(a, W^n b), mirror-dual to the monad enrichment."""
    if isinstance(W, ComonadData):
        return _enrich_comonad_table(C, W, trunc)
    return _enrich_comonad_set(C, W, trunc, cap)


def _enrich_bialgebra_table(C, P, trunc):
    assert P.cat is C
    M, W = P.monad, P.comonad
    tpow_obj, tpow_mor = _table_powers(M)
    w = W.w

    def wpow_obj(x, n):
        for _ in range(n):
            x = w.obj[x]
        return x

    def wpow_mor(f, n):
        for _ in range(n):
            f = w.mor[f]
        return f

    lam_memo = {}

    def lam_power(b, m, n):
        # swap of powers T^m W^n b -> W^n T^m b, stacked one strand at a time
        key = (b, m, n)
        if key in lam_memo:
            return lam_memo[key]
        if m == 0 or n == 0:
            out = C.identity[tpow_obj(wpow_obj(b, n), m)]
        elif m == 1:
            if n == 1:
                out = P.lam.comp[b]
            else:
                out = C.compose[(wpow_mor(lam_power(b, 1, n - 1), 1),
                                 P.lam.comp[wpow_obj(b, n - 1)])]
        else:
            out = C.compose[(lam_power(tpow_obj(b, m - 1), 1, n),
                             tpow_mor(lam_power(b, m - 1, n), 1))]
        lam_memo[key] = out
        return out

    def lam_power_alt(b, m, n):
        # the other bracketing: peel color strands instead of monoid strands
        if m == 0 or n == 0:
            return C.identity[tpow_obj(wpow_obj(b, n), m)]
        if n == 1:
            if m == 1:
                return P.lam.comp[b]
            return C.compose[(lam_power_alt(tpow_obj(b, m - 1), 1, 1),
                              tpow_mor(lam_power_alt(b, m - 1, 1), 1))]
        return C.compose[(wpow_mor(lam_power_alt(b, m, n - 1), 1),
                          lam_power_alt(wpow_obj(b, n - 1), m, 1))]

    def mu_comp(a, n, i):
        return tpow_mor(M.mu.comp[tpow_obj(a, n - i)], i - 1)

    def eta_comp(a, n, i):
        return tpow_mor(M.eta.comp[tpow_obj(a, n - i - 1)], i)

    def delta_comp(b, n, i):
        return wpow_mor(W.delta.comp[wpow_obj(b, i - 1)], n - i)

    def eps_comp(b, n, i):
        return wpow_mor(W.eps.comp[wpow_obj(b, i)], n - i - 1)

    def level(a, b, n):
        return C.hom(tpow_obj(a, n), wpow_obj(b, n))

    def d(a, b, n, i, e):
        return C.compose[(delta_comp(b, n, i),
                          C.compose[(e, mu_comp(a, n, i))])]

    def s(a, b, n, i, e):
        return C.compose[(eps_comp(b, n, i),
                          C.compose[(e, eta_comp(a, n, i))])]

    def prod(a, b, c, m, n, u, v):
        return C.compose[(wpow_mor(u, n),
                          C.compose[(lam_power(b, m, n), tpow_mor(v, m))])]

    def unit(a):
        return C.identity[a]

    D = QuasiDescentDatum(trunc, range(C.n_objects()), level, d, s, prod,
                          unit, tag="pair-table")
    D.lam_power = lam_power
    D.lam_power_alt = lam_power_alt
    return D


def _enrich_bialgebra_set(objects, P, trunc, cap):
    M, W = P.monad, P.comonad
    objects = [tuple(x) for x in objects]
    pow_memo = {}

    def tpow(a, n):
        key = ("t", a, n)
        if key not in pow_memo:
            pow_memo[key] = a if n == 0 else M.t_obj(tpow(a, n - 1))
        return pow_memo[key]

    def wpow(b, n):
        key = ("w", b, n)
        if key not in pow_memo:
            pow_memo[key] = b if n == 0 else W.w_obj(wpow(b, n - 1))
        return pow_memo[key]

    idx_memo = {}

    def index(dom):
        if dom not in idx_memo:
            idx_memo[dom] = {x: k for k, x in enumerate(dom)}
        return idx_memo[dom]

    def tmap_iter(dom, mapping, times):
        for _ in range(times):
            mapping = M.t_map(dom, mapping)
            dom = M.t_obj(dom)
        return mapping

    def wmap_iter(dom, mapping, times):
        for _ in range(times):
            mapping = W.w_map(dom, mapping)
            dom = W.w_obj(dom)
        return mapping

    comp_memo = {}

    def mu_comp(a, n, i):
        key = ("mu", a, n, i)
        if key not in comp_memo:
            base = tpow(a, n - i)
            comp_memo[key] = tmap_iter(M.t_obj(M.t_obj(base)), M.mu_map(base),
                                       i - 1)
        return comp_memo[key]

    def eta_comp(a, n, i):
        key = ("eta", a, n, i)
        if key not in comp_memo:
            base = tpow(a, n - i - 1)
            comp_memo[key] = tmap_iter(base, M.eta_map(base), i)
        return comp_memo[key]

    def delta_comp(b, n, i):
        key = ("delta", b, n, i)
        if key not in comp_memo:
            base = wpow(b, i - 1)
            comp_memo[key] = wmap_iter(W.w_obj(base), W.delta_map(base), n - i)
        return comp_memo[key]

    def eps_comp(b, n, i):
        key = ("eps", b, n, i)
        if key not in comp_memo:
            base = wpow(b, i)
            comp_memo[key] = wmap_iter(W.w_obj(base), W.eps_map(base),
                                       n - i - 1)
        return comp_memo[key]

    def tpow_of(x, m):
        for _ in range(m):
            x = M.t_obj(x)
        return x

    def wpow_of(x, n):
        for _ in range(n):
            x = W.w_obj(x)
        return x

    def lam_one(x, n):
        # single monoid strand past n color strands, at an arbitrary object
        if n == 1:
            return P.lam_map(x)
        inner = P.lam_map(wpow_of(x, n - 1))
        outer = wmap_iter(M.t_obj(wpow_of(x, n - 1)), lam_one(x, n - 1), 1)
        return _dcompose(outer, inner)

    def lam_power(b, m, n):
        # swap of powers, stacked one monoid strand at a time
        key = ("lam", b, m, n)
        if key in comp_memo:
            return comp_memo[key]
        if m == 0 or n == 0:
            out = {z: z for z in tpow_of(wpow(b, n), m)}
        elif m == 1:
            out = lam_one(b, n)
        else:
            lower = tmap_iter(tpow_of(wpow(b, n), m - 1),
                              lam_power(b, m - 1, n), 1)
            out = _dcompose(lam_one(tpow(b, m - 1), n), lower)
        comp_memo[key] = out
        return out

    def lam_power_alt(b, m, n):
        # the other bracketing: peel color strands instead of monoid strands
        if m == 0 or n == 0:
            return {z: z for z in tpow_of(wpow(b, n), m)}
        if n == 1:
            return lam_m1(b, m)
        lower = lam_m1(wpow(b, n - 1), m)
        upper = wmap_iter(tpow_of(wpow(b, n - 1), m),
                          lam_power_alt(b, m, n - 1), 1)
        return _dcompose(upper, lower)

    def lam_m1(x, m):
        # m monoid strands past a single color strand
        if m == 1:
            return P.lam_map(x)
        lower = tmap_iter(tpow_of(W.w_obj(x), m - 1), lam_m1(x, m - 1), 1)
        return _dcompose(P.lam_map(tpow_of(x, m - 1)), lower)

    def level(a, b, n):
        dom, cod = tpow(a, n), wpow(b, n)
        if len(cod) ** len(dom) > cap:
            return None
        return [tuple(vals) for vals in itertools.product(cod, repeat=len(dom))]

    def d(a, b, n, i, e):
        pre = mu_comp(a, n, i)
        post = delta_comp(b, n, i)
        pos = index(tpow(a, n))
        return tuple(post[e[pos[pre[z]]]] for z in tpow(a, n + 1))

    def s(a, b, n, i, e):
        pre = eta_comp(a, n, i)
        post = eps_comp(b, n, i)
        pos = index(tpow(a, n))
        return tuple(post[e[pos[pre[z]]]] for z in tpow(a, n - 1))

    def prod(a, b, c, m, n, u, v):
        vmap = dict(zip(tpow(a, n), v))
        tv = tmap_iter(tpow(a, n), vmap, m)
        swap = lam_power(b, m, n)
        umap = dict(zip(tpow(b, m), u))
        wu = wmap_iter(tpow(b, m), umap, n)
        pos = index(tpow(a, m + n))
        return tuple(wu[swap[tv[z]]] for z in tpow(a, m + n))

    def unit(a):
        return a

    D = QuasiDescentDatum(trunc, objects, level, d, s, prod, unit,
                          tag="pair-set")
    D.lam_power = lam_power
    D.lam_power_alt = lam_power_alt
    return D


def enrich_bialgebra(C, P, trunc=3, cap=100000):
    """Hom carriers Hom(T^n a, W^n b): inserts merge a monoid coordinate and
    copy a color, collapses do the reverse, and the product routes through
    the swap of a block of monoid strands past a block of color strands."""
    if isinstance(P, DistributivePair):
        return _enrich_bialgebra_table(C, P, trunc)
    return _enrich_bialgebra_set(C, P, trunc, cap)


# ------------------------------------------------------------- quasi-monads


class QuasiMonadData:
    """Levelwise relaxation of a monad: one functor per power, collapse and
    insert families, and a splitting family replacing literal equality of
    powers.

    t[n] for 0 <= n <= trunc; mu[(n, i)]: t[n+1] => t[n] (1 <= i <= n);
    eta[(n, i)]: t[n-1] => t[n] (0 <= i < n); xi[(m, n)]: t[m+n] => t[m]t[n];
    xi0: t[0] => identity.
    """

    def __init__(self, cat, trunc, t, mu, eta, xi, xi0):
        self.cat = cat
        self.trunc = trunc
        self.t = list(t)
        self.mu = dict(mu)
        self.eta = dict(eta)
        self.xi = dict(xi)
        self.xi0 = xi0


def validate_quasi_monad(Q):
    """All relation families within the truncation, each named."""
    rep = ValidationReport()
    T = Q.trunc
    mu, eta, xi, t = Q.mu, Q.eta, Q.xi, Q.t

    def eq(name, lhs, rhs, *witness):
        rep.checks += 1
        if lhs.comp != rhs.comp:
            rep.note(name, *witness)

    for n in range(1, T - 1):
        for i in range(1, n + 1):
            for j in range(i + 1, n + 2):
                eq("collapse-exchange",
                   vcompose(mu[(n, i)], mu[(n + 1, j)]),
                   vcompose(mu[(n, j - 1)], mu[(n + 1, i)]), n, i, j)
    for n in range(1, T):
        for i in range(n):
            for j in range(i, n):
                eq("insert-exchange",
                   vcompose(eta[(n + 1, i)], eta[(n, j)]),
                   vcompose(eta[(n + 1, j + 1)], eta[(n, i)]), n, i, j)
    for n in range(1, T):
        for i in range(1, n + 1):
            for j in range(n + 1):
                lhs = vcompose(mu[(n, i)], eta[(n + 1, j)])
                if i == j or i == j + 1:
                    rhs = identity_nat(t[n])
                elif i < j:
                    rhs = vcompose(eta[(n, j - 1)], mu[(n - 1, i)])
                else:
                    rhs = vcompose(eta[(n, j)], mu[(n - 1, i - 1)])
                eq("collapse-insert", lhs, rhs, n, i, j)
    for m in range(T + 1):
        for n in range(T - m):
            for i in range(1, m + 1):
                eq("split-collapse-outer",
                   vcompose(whisker_right(mu[(m, i)], t[n]), xi[(m + 1, n)]),
                   vcompose(xi[(m, n)], mu[(m + n, i)]), m, n, i)
        for n in range(T - m):
            for i in range(1, n + 1):
                eq("split-collapse-inner",
                   vcompose(whisker_left(t[m], mu[(n, i)]), xi[(m, n + 1)]),
                   vcompose(xi[(m, n)], mu[(m + n, i + m)]), m, n, i)
        for n in range(T + 1 - m):
            for i in range(m):
                eq("split-insert-outer",
                   vcompose(whisker_right(eta[(m, i)], t[n]), xi[(m - 1, n)]),
                   vcompose(xi[(m, n)], eta[(m + n, i)]), m, n, i)
            for i in range(n):
                eq("split-insert-inner",
                   vcompose(whisker_left(t[m], eta[(n, i)]), xi[(m, n - 1)]),
                   vcompose(xi[(m, n)], eta[(m + n, i + m)]), m, n, i)
    for m in range(T + 1):
        for n in range(T + 1 - m):
            for p in range(T + 1 - m - n):
                eq("split-coassociativity",
                   vcompose(whisker_right(xi[(m, n)], t[p]), xi[(m + n, p)]),
                   vcompose(whisker_left(t[m], xi[(n, p)]), xi[(m, n + p)]),
                   m, n, p)
    for n in range(T + 1):
        eq("split-counit",
           vcompose(whisker_right(Q.xi0, t[n]), xi[(0, n)]),
           identity_nat(t[n]), "outer", n)
        eq("split-counit",
           vcompose(whisker_left(t[n], Q.xi0), xi[(n, 0)]),
           identity_nat(t[n]), "inner", n)
    return rep


def quasi_from_monad(M, trunc=3):
    """Strict embedding: powers of the endofunctor with identity splittings."""
    C = M.cat
    t = [functor_power(M.t, n) for n in range(trunc + 1)]
    mu = {}
    eta = {}
    for n in range(1, trunc):
        for i in range(1, n + 1):
            comp = whisker_left(functor_power(M.t, i - 1),
                                whisker_right(M.mu, functor_power(M.t, n - i)))
            mu[(n, i)] = NatTrans(t[n + 1], t[n], comp.comp)
    for n in range(1, trunc + 1):
        for i in range(n):
            comp = whisker_left(functor_power(M.t, i),
                                whisker_right(M.eta, functor_power(M.t, n - i - 1)))
            eta[(n, i)] = NatTrans(t[n - 1], t[n], comp.comp)
    xi = {}
    for m in range(trunc + 1):
        for n in range(trunc + 1 - m):
            xi[(m, n)] = identity_nat(t[m + n], tgt=compose_functors(t[m], t[n]))
    xi0 = identity_nat(t[0])
    return QuasiMonadData(C, trunc, t, mu, eta, xi, xi0)


def twisted_quasi_monad(trunc=3, break_xi=None):
    """Identity powers on the group-with-point category, every structure map
    the nontrivial group element: each relation multiplies two of them.
    `break_xi` replaces one splitting component with the identity."""
    C = two_object_group_category()
    tid = identity_functor(C)
    g = [1, C.identity[1]]  # nontrivial at the group object, forced at the point
    t = [tid] * (trunc + 1)
    mu = {(n, i): NatTrans(tid, tid, g, check=False)
          for n in range(1, trunc) for i in range(1, n + 1)}
    eta = {(n, i): NatTrans(tid, tid, g, check=False)
           for n in range(1, trunc + 1) for i in range(n)}
    xi = {(m, n): NatTrans(tid, tid, g, check=False)
          for m in range(trunc + 1) for n in range(trunc + 1 - m)}
    if break_xi is not None:
        xi[break_xi] = identity_nat(tid)
    xi0 = NatTrans(tid, tid, g, check=False)
    return QuasiMonadData(C, trunc, t, mu, eta, xi, xi0)


def enrich_quasi_monad(C, Q):
    """Hom carriers Hom(t[n] a, b) with operations along the levelwise
    structure maps; the product routes through the splitting."""
    assert Q.cat is C

    def level(a, b, n):
        return C.hom(Q.t[n].obj[a], b)

    def d(a, b, n, i, e):
        return C.compose[(e, Q.mu[(n, i)].comp[a])]

    def s(a, b, n, i, e):
        return C.compose[(e, Q.eta[(n, i)].comp[a])]

    def prod(a, b, c, m, n, u, v):
        return C.compose[(u, C.compose[(Q.t[m].mor[v], Q.xi[(m, n)].comp[a])])]

    def unit(a):
        return Q.xi0.comp[a]

    return QuasiDescentDatum(Q.trunc, range(C.n_objects()), level, d, s, prod,
                             unit, tag="quasi-monad")


# --------------------------------------------- algebras and the adjunctions


def alg_category(D):
    """Objects are pairs (a, w) with w a degree-1 solution at a; morphisms
    are degree-0 elements intertwining the two solutions."""
    objects = [(a, w) for a in D.objects for w in mc_qdd(D, a)]
    labels = []
    for i, (a, wa) in enumerate(objects):
        for j, (b, wb) in enumerate(objects):
            for f in D.level(a, b, 0):
                if (D.prod(a, b, b, 1, 0, wb, f)
                        == D.prod(a, a, b, 0, 1, f, wa)):
                    labels.append((i, j, f))
    lab_idx = {lab: k for k, lab in enumerate(labels)}
    src = [lab[0] for lab in labels]
    tgt = [lab[1] for lab in labels]
    compose = {}
    for gk, (j2, k2, g) in enumerate(labels):
        for fk, (i1, j1, f) in enumerate(labels):
            if j1 != j2:
                continue
            a, b, c = objects[i1][0], objects[j1][0], objects[k2][0]
            gf = (i1, k2, D.prod(a, b, c, 0, 0, g, f))
            compose[(gk, fk)] = lab_idx[gf]
    identity = [lab_idx[(i, i, D.unit(a))] for i, (a, w) in enumerate(objects)]
    return FiniteCategory(objects, labels, src, tgt, compose, identity)


def alg_star(C):
    """Constant enrichment: every level is the hom-set, operations trivial."""

    def level(a, b, n):
        return C.hom(a, b)

    def d(a, b, n, i, e):
        return e

    def s(a, b, n, i, e):
        return e

    def prod(a, b, c, m, n, u, v):
        return C.compose[(u, v)]

    def unit(a):
        return C.identity[a]

    return QuasiDescentDatum(4, range(C.n_objects()), level, d, s, prod, unit,
                             tag="alg-star")


def id_empty(C):
    """Degree 0 carries the hom-set, everything above is empty."""

    def level(a, b, n):
        return C.hom(a, b) if n == 0 else []

    def d(a, b, n, i, e):
        raise ValueError("no positive-degree elements")

    def s(a, b, n, i, e):
        raise ValueError("no positive-degree elements")

    def prod(a, b, c, m, n, u, v):
        if m == n == 0:
            return C.compose[(u, v)]
        raise ValueError("no positive-degree elements")

    def unit(a):
        return C.identity[a]

    return QuasiDescentDatum(4, range(C.n_objects()), level, d, s, prod, unit,
                             tag="id-empty")


def zero_level_category(D):
    """Underlying category: degree-0 elements under the degree-0 product."""
    labels = []
    for a in D.objects:
        for b in D.objects:
            for f in D.level(a, b, 0):
                labels.append((a, b, f))
    lab_idx = {lab: k for k, lab in enumerate(labels)}
    obj_idx = {a: k for k, a in enumerate(D.objects)}
    src = [obj_idx[lab[0]] for lab in labels]
    tgt = [obj_idx[lab[1]] for lab in labels]
    compose = {}
    for gk, (b2, c2, g) in enumerate(labels):
        for fk, (a1, b1, f) in enumerate(labels):
            if b1 != b2:
                continue
            compose[(gk, fk)] = lab_idx[(a1, c2, D.prod(a1, b1, c2, 0, 0, g, f))]
    identity = [lab_idx[(a, a, D.unit(a))] for a in D.objects]
    return FiniteCategory(list(D.objects), labels, src, tgt, compose, identity)


def direct_algebra_category(M, carriers=None):
    """Algebras and their intertwiners enumerated straight from the monad
    laws, bypassing the enrichment."""
    if isinstance(M, MonadData):
        C = M.cat
        tpow_obj, tpow_mor = _table_powers(M)
        objects = []
        for x in range(C.n_objects()):
            for h in C.hom(M.t.obj[x], x):
                if C.compose[(h, M.eta.comp[x])] != C.identity[x]:
                    continue
                if C.compose[(h, M.t.mor[h])] != C.compose[(h, M.mu.comp[x])]:
                    continue
                objects.append((x, h))
        def intertwines(xh, yk, f):
            (x, h), (y, k) = xh, yk
            return C.compose[(f, h)] == C.compose[(k, M.t.mor[f])]
        def homs(xh, yk):
            return [f for f in C.hom(xh[0], yk[0]) if intertwines(xh, yk, f)]
        def ident(xh):
            return C.identity[xh[0]]
    else:
        objects = []
        for X in carriers:
            X = tuple(X)
            TX = M.t_obj(X)
            eta = M.eta_map(X)
            mu = M.mu_map(X)
            for vals in itertools.product(X, repeat=len(TX)):
                h = dict(zip(TX, vals))
                if any(h[eta[x]] != x for x in X):
                    continue
                if any(h[M.t_map(X, h)[z]] != h[mu[z]] for z in M.t_obj(TX)):
                    continue
                objects.append((X, _graph(TX, h)))
        def homs(xh, yk):
            (X, h), (Y, k) = xh, yk
            hmap = dict(zip(M.t_obj(X), h))
            kmap = dict(zip(M.t_obj(Y), k))
            out = []
            for g in _all_maps(X, Y):
                if all(g[hmap[z]] == kmap[M.t_map(X, g)[z]]
                       for z in M.t_obj(X)):
                    out.append(_graph(X, g))
            return out
        def comp(g, f):
            # g, f are value tuples over their carriers
            return g  # replaced below
        def ident(xh):
            return xh[0]
    labels = []
    for i, xh in enumerate(objects):
        for j, yk in enumerate(objects):
            for f in homs(xh, yk):
                labels.append((i, j, f))
    lab_idx = {lab: k for k, lab in enumerate(labels)}
    src = [lab[0] for lab in labels]
    tgt = [lab[1] for lab in labels]
    compose = {}
    for gk, (j2, k2, g) in enumerate(labels):
        for fk, (i1, j1, f) in enumerate(labels):
            if j1 != j2:
                continue
            if isinstance(M, MonadData):
                gf = M.cat.compose[(g, f)]
            else:
                X = objects[i1][0]
                gmap = dict(zip(objects[j1][0], g))
                gf = tuple(gmap[y] for y in f)
            compose[(gk, fk)] = lab_idx[(i1, k2, gf)]
    identity = [lab_idx[(i, i, ident(xh))] for i, xh in enumerate(objects)]
    return FiniteCategory(objects, labels, src, tgt, compose, identity)


def direct_bialgebra_category(P, carriers=None):
    """Joint structures (action plus coaction with the raw compatibility
    square) and their two-sided intertwiners, enumerated without the
    enrichment."""
    if isinstance(P, DistributivePair):
        C = P.cat
        M, W = P.monad, P.comonad
        objects = []
        for x in range(C.n_objects()):
            for h in C.hom(M.t.obj[x], x):
                if C.compose[(h, M.eta.comp[x])] != C.identity[x]:
                    continue
                if C.compose[(h, M.t.mor[h])] != C.compose[(h, M.mu.comp[x])]:
                    continue
                for k in C.hom(x, W.w.obj[x]):
                    if C.compose[(W.eps.comp[x], k)] != C.identity[x]:
                        continue
                    if (C.compose[(W.w.mor[k], k)]
                            != C.compose[(W.delta.comp[x], k)]):
                        continue
                    lhs = C.compose[(k, h)]
                    rhs = C.compose[(W.w.mor[h],
                                     C.compose[(P.lam.comp[x], M.t.mor[k])])]
                    if lhs == rhs:
                        objects.append((x, h, k))
        def homs(o1, o2):
            (x, h, k), (y, h2, k2) = o1, o2
            out = []
            for f in C.hom(x, y):
                if C.compose[(f, h)] != C.compose[(h2, M.t.mor[f])]:
                    continue
                if C.compose[(k2, f)] != C.compose[(W.w.mor[f], k)]:
                    continue
                out.append(f)
            return out
        def comp_pair(o_src, o_mid, g, f):
            return C.compose[(g, f)]
        def ident(o):
            return C.identity[o[0]]
    else:
        M, W = P.monad, P.comonad
        objects = []
        for X in carriers:
            X = tuple(X)
            TX, WX = M.t_obj(X), W.w_obj(X)
            eta, mu = M.eta_map(X), M.mu_map(X)
            eps, delta = W.eps_map(X), W.delta_map(X)
            lam = P.lam_map(X)
            for hv in itertools.product(X, repeat=len(TX)):
                h = dict(zip(TX, hv))
                if any(h[eta[x]] != x for x in X):
                    continue
                if any(h[M.t_map(X, h)[z]] != h[mu[z]] for z in M.t_obj(TX)):
                    continue
                for kv in itertools.product(WX, repeat=len(X)):
                    k = dict(zip(X, kv))
                    if any(eps[k[x]] != x for x in X):
                        continue
                    if any(W.w_map(X, k)[k[x]] != delta[k[x]] for x in X):
                        continue
                    # the raw square: coact after act = lifted act after swap
                    tk = M.t_map(X, k)
                    wh = W.w_map(TX, h)
                    if any(k[h[z]] != wh[lam[tk[z]]] for z in TX):
                        continue
                    objects.append((X, _graph(TX, h), _graph(X, k)))
        def homs(o1, o2):
            (X, h, k), (Y, h2, k2) = o1, o2
            hmap = dict(zip(M.t_obj(X), h))
            h2map = dict(zip(M.t_obj(Y), h2))
            kmap = dict(zip(X, k))
            k2map = dict(zip(Y, k2))
            out = []
            for g in _all_maps(X, Y):
                if any(g[hmap[z]] != h2map[M.t_map(X, g)[z]]
                       for z in M.t_obj(X)):
                    continue
                if any(k2map[g[x]] != W.w_map(X, g)[kmap[x]] for x in X):
                    continue
                out.append(_graph(X, g))
            return out
        def comp_pair(o_src, o_mid, g, f):
            gmap = dict(zip(o_mid[0], g))
            return tuple(gmap[y] for y in f)
        def ident(o):
            return o[0]
    labels = []
    for i, o1 in enumerate(objects):
        for j, o2 in enumerate(objects):
            for f in homs(o1, o2):
                labels.append((i, j, f))
    lab_idx = {lab: kk for kk, lab in enumerate(labels)}
    src = [lab[0] for lab in labels]
    tgt = [lab[1] for lab in labels]
    compose = {}
    for gk, (j2, k2, g) in enumerate(labels):
        for fk, (i1, j1, f) in enumerate(labels):
            if j1 != j2:
                continue
            gf = comp_pair(objects[i1], objects[j1], g, f)
            compose[(gk, fk)] = lab_idx[(i1, k2, gf)]
    identity = [lab_idx[(i, i, ident(o))] for i, o in enumerate(objects)]
    return FiniteCategory(objects, labels, src, tgt, compose, identity)


def algebra_iso_check(direct, derived, pairing):
    """Verify that `pairing` (direct object -> derived object) extends to an
    isomorphism of categories, by matching morphism sets elementwise."""
    if direct.n_objects() != derived.n_objects():
        return False
    if direct.n_morphisms() != derived.n_morphisms():
        return False
    obj_map = {}
    for i, o in enumerate(direct.objects):
        target = pairing(o)
        if target not in derived.objects:
            return False
        obj_map[i] = derived.objects.index(target)
    if len(set(obj_map.values())) != direct.n_objects():
        return False
    mor_map = {}
    for fk, (i, j, f) in enumerate(direct.mor_labels):
        cand = (obj_map[i], obj_map[j], f)
        if cand not in derived.mor_labels:
            return False
        mor_map[fk] = derived.mor_labels.index(cand)
    if len(set(mor_map.values())) != direct.n_morphisms():
        return False
    for (g, f), gf in direct.compose.items():
        if derived.compose[(mor_map[g], mor_map[f])] != mor_map[gf]:
            return False
    for i, e in enumerate(direct.identity):
        if derived.identity[obj_map[i]] != mor_map[e]:
            return False
    return True


# ----------------------------------------------- morphism-set enumerations


@dataclass(frozen=True)
class QddMorphism:
    """Object assignment plus levelwise maps commuting with all operations."""

    obj: tuple  # obj[i] = target object for the i-th source object
    maps: tuple  # sorted ((a, b, n), value-mapping-as-sorted-tuple) entries

    def level_map(self, a, b, n):
        return dict(dict(self.maps)[(a, b, n)])


def qdd_morphisms(D1, D2, trunc=None, cap=500000):
    """All structure-preserving maps, by filtered exhaustion; every source
    level must be enumerable and small."""
    T = min(D1.trunc, D2.trunc) if trunc is None else trunc
    keys = [(a, b, n) for a in D1.objects for b in D1.objects
            for n in range(T + 1)]
    src_levels = {k: D1.level(*k) for k in keys}
    assert all(lv is not None for lv in src_levels.values())
    out = []
    for tau in itertools.product(D2.objects, repeat=len(D1.objects)):
        t_of = dict(zip(D1.objects, tau))
        pools = []
        total = 1
        ok = True
        for (a, b, n) in keys:
            target = D2.level(t_of[a], t_of[b], n)
            if target is None:
                ok = False
                break
            pools.append([(a, b, n), src_levels[(a, b, n)], target])
            total *= max(1, len(target) ** len(src_levels[(a, b, n)]))
            if total > cap:
                raise ValueError("morphism search space exceeds the cap")
        if not ok:
            continue
        choice_spaces = []
        for (key, dom, target) in pools:
            choice_spaces.append([dict(zip(dom, vals)) for vals in
                                  itertools.product(target, repeat=len(dom))])
        for combo in itertools.product(*choice_spaces):
            phi = {key: mapping for (key, _, _), mapping
                   in zip(pools, combo)}
            if _qdd_morphism_ok(D1, D2, t_of, phi, T):
                out.append(QddMorphism(
                    tuple(tau),
                    tuple(sorted((k, tuple(sorted(m.items())))
                                 for k, m in phi.items()))))
    return out


def _qdd_morphism_ok(D1, D2, t_of, phi, T):
    for (a, b, n), mapping in phi.items():
        ta, tb = t_of[a], t_of[b]
        for e, img in mapping.items():
            if n + 1 <= T:
                for i in range(1, n + 1):
                    if (phi[(a, b, n + 1)][D1.d(a, b, n, i, e)]
                            != D2.d(ta, tb, n, i, img)):
                        return False
            for i in range(n):
                if (phi[(a, b, n - 1)][D1.s(a, b, n, i, e)]
                        != D2.s(ta, tb, n, i, img)):
                    return False
    for a in D1.objects:
        if phi[(a, a, 0)][D1.unit(a)] != D2.unit(t_of[a]):
            return False
    for a in D1.objects:
        for b in D1.objects:
            for c in D1.objects:
                for m in range(T + 1):
                    for n in range(T + 1 - m):
                        for u in phi[(b, c, m)]:
                            for v in phi[(a, b, n)]:
                                lhs = phi[(a, c, m + n)][
                                    D1.prod(a, b, c, m, n, u, v)]
                                rhs = D2.prod(t_of[a], t_of[b], t_of[c], m, n,
                                              phi[(b, c, m)][u],
                                              phi[(a, b, n)][v])
                                if lhs != rhs:
                                    return False
    return True


def functors_between(C, D):
    """All functors, by filtered exhaustion over object and morphism tables."""
    out = []
    for obj in itertools.product(range(D.n_objects()), repeat=C.n_objects()):
        pools = [D.hom(obj[C.src[f]], obj[C.tgt[f]])
                 for f in range(C.n_morphisms())]
        if any(not p for p in pools):
            continue
        for mor in itertools.product(*pools):
            if any(mor[C.identity[x]] != D.identity[obj[x]]
                   for x in range(C.n_objects())):
                continue
            if any(D.compose[(mor[g], mor[f])] != mor[gf]
                   for (g, f), gf in C.compose.items()):
                continue
            out.append(FiniteFunctor(C, D, obj, mor, check=False))
    return out


def bicomonoid_morphisms(E1, E2):
    """Gradewise maps commuting with all eight operations and the unit."""
    T = min(E1.trunc, E2.trunc)
    grades = [(m, n) for m in range(T + 1) for n in range(T + 1 - m)]
    domains = {g: E1.level(*g) for g in grades}
    pools = []
    for g in grades:
        target = E2.level(*g)
        pools.append([dict(zip(domains[g], vals)) for vals in
                      itertools.product(target, repeat=len(domains[g]))])
    out = []
    for combo in itertools.product(*pools):
        phi = dict(zip(grades, combo))
        if phi[(0, 0)][E1.unit] != E2.unit:
            continue
        good = True
        for (m, n) in grades:
            for x in domains[(m, n)]:
                if m + n + 1 <= T:
                    for i in range(1, m + 1):
                        if (phi[(m + 1, n)][E1.dh(m, n, i, x)]
                                != E2.dh(m, n, i, phi[(m, n)][x])):
                            good = False
                    for i in range(1, n + 1):
                        if (phi[(m, n + 1)][E1.dv(m, n, i, x)]
                                != E2.dv(m, n, i, phi[(m, n)][x])):
                            good = False
                for i in range(m):
                    if (phi[(m - 1, n)][E1.sh(m, n, i, x)]
                            != E2.sh(m, n, i, phi[(m, n)][x])):
                        good = False
                for i in range(n):
                    if (phi[(m, n - 1)][E1.sv(m, n, i, x)]
                            != E2.sv(m, n, i, phi[(m, n)][x])):
                        good = False
        if not good:
            continue
        for (m, n) in grades:
            for (p, q) in grades:
                if m + p + n + q > T:
                    continue
                for a in domains[(m, n)]:
                    for b in domains[(p, q)]:
                        lhs = phi[(m + p, n + q)][E1.prod((m, n), (p, q), a, b)]
                        rhs = E2.prod((m, n), (p, q), phi[(m, n)][a],
                                      phi[(p, q)][b])
                        if lhs != rhs:
                            good = False
        if good:
            out.append(tuple(sorted((g, tuple(sorted(m.items())))
                                    for g, m in phi.items())))
    return out


@dataclass
class AdjunctionReport:
    ok: bool
    left_count: int
    right_count: int
    triangles: bool
    details: list = field(default_factory=list)


def _mc_power(D, b, w, n):
    out = D.unit(b)
    for k in range(n):
        out = D.prod(b, b, b, 1, k, w, out)
    return out


def algstar_alg_adjunction(C, D, trunc=2):
    """Hom-set comparison for the constant enrichment against the algebra
    category, with the two triangle identities checked on these instances."""
    E = alg_star(C)
    E.trunc = trunc
    AD = alg_category(D)
    left = qdd_morphisms(E, D, trunc=trunc)
    right = functors_between(C, AD)
    # forward: read off the algebra solutions from the degree-1 images
    forward = {}
    for mor in left:
        t_of = dict(zip(E.objects, mor.obj))
        obj = []
        for x in E.objects:
            w = mor.level_map(x, x, 1)[C.identity[x]]
            obj.append(AD.objects.index((t_of[x], w)))
        mtab = []
        for f in range(C.n_morphisms()):
            x, y = C.src[f], C.tgt[f]
            img = mor.level_map(x, y, 0)[f]
            mtab.append(AD.mor_labels.index((obj[x], obj[y], img)))
        forward[mor] = FiniteFunctor(C, AD, obj, mtab)
    # backward: push degree-n elements through the n-th power of the target
    backward = {}
    for G in right:
        tau = tuple(AD.objects[G.obj[x]][0] for x in E.objects)
        phi = {}
        for a in E.objects:
            for b in E.objects:
                for n in range(trunc + 1):
                    mapping = {}
                    for f in E.level(a, b, n):
                        fk = AD.mor_labels.index(
                            (G.obj[a], G.obj[b], None)) if False else None
                        img0 = AD.mor_labels[G.mor[_hom_index(C, f)]][2]
                        wb = AD.objects[G.obj[b]][1]
                        mapping[f] = D.prod(tau[a], tau[b], tau[b], n, 0,
                                            _mc_power(D, tau[b], wb, n), img0)
                    phi[(a, b, n)] = mapping
        backward[G] = QddMorphism(
            tau, tuple(sorted((k, tuple(sorted(m.items())))
                              for k, m in phi.items())))
    ok = len(left) == len(right)
    for mor in left:
        ok = ok and backward.get(forward[mor]) == mor
    for G in right:
        ok = ok and forward.get(backward[G]) == G
    triangles = _algstar_triangles(C, D)
    return AdjunctionReport(ok and triangles, len(left), len(right),
                            triangles)


def _hom_index(C, f):
    return f


def _algstar_triangles(C, D):
    """Both composite identities of the constant-enrichment adjunction."""
    # unit at C followed by the algebra image of the counit at alg*(C)
    E = alg_star(C)
    AE = alg_category(E)
    unit_obj = [AE.objects.index((x, C.identity[x]))
                for x in range(C.n_objects())]
    unit_mor = [AE.mor_labels.index((unit_obj[C.src[f]], unit_obj[C.tgt[f]], f))
                for f in range(C.n_morphisms())]
    u = FiniteFunctor(C, AE, unit_obj, unit_mor)
    # counit of alg*(C): maps the degree-n copy of an algebra morphism f to
    # w_b^n * f; on the constant enrichment all solutions are identities, so
    # the composite must give back what the unit inserted
    first = all(
        _mc_power(E, AE.objects[u.obj[x]][0], AE.objects[u.obj[x]][1], n)
        == C.identity[x]
        for x in range(C.n_objects()) for n in range(E.trunc + 1))
    # second triangle: the counit at an algebra category composed with the
    # algebra image of the unit
    AD = alg_category(D)
    second = True
    for i, (a, w) in enumerate(AD.objects):
        # unit sends (a, w) to ((a, w), identity); counit reads it back
        if _mc_power(D, a, w, 0) != D.unit(a):
            second = False
    for (i, j, f) in AD.mor_labels:
        a, wa = AD.objects[i]
        b, wb = AD.objects[j]
        if D.prod(a, b, b, 1, 0, wb, f) != D.prod(a, a, b, 0, 1, f, wa):
            second = False
    return first and second


def zero_algstar_adjunction(D, C, trunc=2):
    """Hom-set comparison between functors out of the degree-0 category and
    structure maps into the constant enrichment."""
    D0 = zero_level_category(D)
    E = alg_star(C)
    E.trunc = trunc
    left = functors_between(D0, C)
    right = qdd_morphisms(D, E, trunc=trunc)
    obj_idx = {a: k for k, a in enumerate(D.objects)}
    forward = {}
    for G in left:
        tau = tuple(G.obj[obj_idx[a]] for a in D.objects)
        phi = {}
        for a in D.objects:
            for b in D.objects:
                for n in range(trunc + 1):
                    mapping = {}
                    for e in D.level(a, b, n):
                        flat = e
                        for k in range(n, 0, -1):
                            flat = D.s(a, b, k, 0, flat)
                        fk = D0.mor_labels.index((a, b, flat))
                        mapping[e] = D0.mor_labels[0] if False else None
                        mapping[e] = C.mor_labels[G.mor[fk]] if False else None
                        mapping[e] = G.mor[fk]
                    phi[(a, b, n)] = mapping
        forward[G] = QddMorphism(
            tau, tuple(sorted((k, tuple(sorted(m.items())))
                              for k, m in phi.items())))
    backward = {}
    for mor in right:
        t_of = dict(zip(D.objects, mor.obj))
        obj = [t_of[a] for a in D.objects]
        mtab = []
        for fk, (a, b, f) in enumerate(D0.mor_labels):
            mtab.append(mor.level_map(a, b, 0)[f])
        backward[mor] = FiniteFunctor(D0, C, obj, mtab)
    ok = len(left) == len(right)
    for G in left:
        ok = ok and backward.get(forward[G]) == G
    for mor in right:
        ok = ok and forward.get(backward[mor]) == mor
    return AdjunctionReport(ok, len(left), len(right), True)


# ------------------------------------------------- restrictions and nerves


def restrict_category(C, f):
    """Vertex-indexed restriction: objects are positions along f, homs are
    pulled back from C."""
    n = len(f) - 1
    labels = []
    for i in range(n + 1):
        for j in range(n + 1):
            for g in C.hom(f[i], f[j]):
                labels.append((i, j, g))
    lab_idx = {lab: k for k, lab in enumerate(labels)}
    src = [lab[0] for lab in labels]
    tgt = [lab[1] for lab in labels]
    compose = {}
    for gk, (j2, k2, g) in enumerate(labels):
        for fk, (i1, j1, ff) in enumerate(labels):
            if j1 != j2:
                continue
            compose[(gk, fk)] = lab_idx[(i1, k2, C.compose[(g, ff)])]
    identity = [lab_idx[(i, i, C.identity[f[i]])] for i in range(n + 1)]
    return FiniteCategory(list(range(n + 1)), labels, src, tgt, compose,
                          identity)


def restrict_qdd(D, f):
    """The same pullback for a descent datum: objects become positions."""
    f = tuple(f)

    def level(i, j, n):
        return D.level(f[i], f[j], n)

    def d(i, j, n, k, e):
        return D.d(f[i], f[j], n, k, e)

    def s(i, j, n, k, e):
        return D.s(f[i], f[j], n, k, e)

    def prod(i, j, k, m, n, u, v):
        return D.prod(f[i], f[j], f[k], m, n, u, v)

    def unit(i):
        return D.unit(f[i])

    return QuasiDescentDatum(D.trunc, range(len(f)), level, d, s, prod, unit,
                             tag=f"restrict-{D.tag}")


def _front_cell(K, b, k, r):
    """Drop the last b - r vertices of a level-b cell."""
    for lv in range(b, r, -1):
        k = K.d(lv, lv, k)
    return k


def _back_cell(K, b, k, r):
    """Drop the first b - r vertices of a level-b cell."""
    for lv in range(b, r, -1):
        k = K.d(lv, 0, k)
    return k


def _cell_vertices(K, b, k):
    out = []
    for j in range(b + 1):
        front = _front_cell(K, b, k, j)
        out.append(K.labels[0][_back_cell(K, j, front, 0)])
    return tuple(out)


def _default_vertex_map(K, objects):
    objset = set(objects)
    mapping = {}
    for lab in K.labels[0]:
        if lab in objset:
            mapping[lab] = lab
        elif isinstance(lab, tuple) and len(lab) == 1 and lab[0] in objset:
            mapping[lab] = lab[0]
        else:
            raise ValueError(f"no object for vertex {lab!r}")
    return mapping


def p_k_cat(K, C, vertex_map=None, cap=200000):
    """Path carrier of a category over a truncated simplicial set: a degree-b
    element assigns to each b-cell a morphism from its first to its last
    vertex; inserts and collapses reindex cells, the product splits a cell
    into its back and front faces and composes."""
    if vertex_map is None:
        vertex_map = _default_vertex_map(K, range(C.n_objects()))
    T = K.trunc
    verts = [[_cell_vertices(K, b, k) for k in range(K.size(b))]
             for b in range(T + 1)]
    obj_of = [[tuple(vertex_map[v] for v in vs) for vs in verts[b]]
              for b in range(T + 1)]

    levels = []
    for b in range(T + 1):
        pools = [C.hom(obj_of[b][k][0], obj_of[b][k][-1])
                 for k in range(K.size(b))]
        total = 1
        for p in pools:
            total *= len(p)
        if total > cap:
            levels.append(None)
        else:
            levels.append([tuple(choice)
                           for choice in itertools.product(*pools)])

    def d(b, i, e):
        return tuple(e[K.d(b + 1, b + 1 - i, k)] for k in range(K.size(b + 1)))

    def s(b, i, e):
        return tuple(e[K.s(b - 1, b - 1 - i, k)] for k in range(K.size(b - 1)))

    def prod(m, n, u, v):
        out = []
        for k in range(K.size(m + n)):
            back = _back_cell(K, m + n, k, m)
            front = _front_cell(K, m + n, k, n)
            out.append(C.compose[(u[back], v[front])])
        return tuple(out)

    unit = tuple(C.identity[obj_of[0][k][0]] for k in range(K.size(0)))
    return QuasiComonoid(T, levels, d, s, prod, unit)


def p_k(K, D, vertex_map=None, cap=200000):
    """Doubly graded path carrier of a descent datum over a truncated
    simplicial set; grade (a, b) holds degree-a hom elements indexed by the
    b-cells."""
    if vertex_map is None:
        vertex_map = _default_vertex_map(K, D.objects)
    TK = K.trunc
    TD = D.trunc
    verts = [[_cell_vertices(K, b, k) for k in range(K.size(b))]
             for b in range(TK + 1)]
    obj_of = [[tuple(vertex_map[v] for v in vs) for vs in verts[b]]
              for b in range(TK + 1)]

    levels = {}
    for a in range(TD + 1):
        for b in range(TK + 1):
            pools = [D.level(obj_of[b][k][0], obj_of[b][k][-1], a)
                     for k in range(K.size(b))]
            if any(p is None for p in pools):
                levels[(a, b)] = None
                continue
            total = 1
            for p in pools:
                total *= len(p)
            levels[(a, b)] = (None if total > cap else
                              [tuple(c) for c in itertools.product(*pools)])

    def dh(a, b, i, e):
        return tuple(D.d(obj_of[b][k][0], obj_of[b][k][-1], a, i, e[k])
                     for k in range(K.size(b)))

    def dv(a, b, i, e):
        return tuple(e[K.d(b + 1, b + 1 - i, k)] for k in range(K.size(b + 1)))

    def sh(a, b, i, e):
        return tuple(D.s(obj_of[b][k][0], obj_of[b][k][-1], a, i, e[k])
                     for k in range(K.size(b)))

    def sv(a, b, i, e):
        return tuple(e[K.s(b - 1, b - 1 - i, k)] for k in range(K.size(b - 1)))

    def prod(gr1, gr2, u, v):
        (m, n), (p, q) = gr1, gr2
        out = []
        for k in range(K.size(n + q)):
            back = _back_cell(K, n + q, k, n)
            front = _front_cell(K, n + q, k, q)
            first = obj_of[n + q][k][0]
            mid = obj_of[n + q][k][q]
            last = obj_of[n + q][k][-1]
            out.append(D.prod(first, mid, last, m, p, u[back], v[front]))
        return tuple(out)

    unit = tuple(D.unit(obj_of[0][k][0]) for k in range(K.size(0)))
    P = QuasiBicomonoid(TK + TD, levels, dh, dv, sh, sv, prod, unit)
    P.cell_objects = obj_of
    return P


def p_n_star(E, n):
    """Left companion of the path construction: for a singly graded carrier
    a category on n+1 positions, for a doubly graded one a descent datum."""
    if isinstance(E, QuasiComonoid):
        labels = []
        for i in range(n + 1):
            for j in range(i, n + 1):
                for e in E.level(j - i):
                    labels.append((i, j, e))
        lab_idx = {lab: k for k, lab in enumerate(labels)}
        src = [lab[0] for lab in labels]
        tgt = [lab[1] for lab in labels]
        compose = {}
        for gk, (j2, k2, g) in enumerate(labels):
            for fk, (i1, j1, f) in enumerate(labels):
                if j1 != j2:
                    continue
                comp = E.prod(k2 - j2, j1 - i1, g, f)
                compose[(gk, fk)] = lab_idx[(i1, k2, comp)]
        identity = [lab_idx[(i, i, E.unit)] for i in range(n + 1)]
        return FiniteCategory(list(range(n + 1)), labels, src, tgt, compose,
                              identity)
    assert isinstance(E, QuasiBicomonoid)
    T = E.trunc - n
    assert T >= 0

    def level(i, j, a):
        if j < i:
            return []
        return E.level(a, j - i)

    def d(i, j, a, k, e):
        return E.dh(a, j - i, k, e)

    def s(i, j, a, k, e):
        return E.sh(a, j - i, k, e)

    def prod(i, j, k, m, p, u, v):
        return E.prod((m, k - j), (p, j - i), u, v)

    def unit(i):
        return E.unit

    return QuasiDescentDatum(T, range(n + 1), level, d, s, prod, unit,
                             tag="p-n-star")


# ------------------------------------------ classifying levels and comparisons


def mc_level_discrete(D, n):
    """Level-n set of the classifying object: a vertex assignment together
    with a degree-1 element on every monotone pair, solving the collapse and
    square conditions. Edges are filled in by increasing span, and every
    triple condition is enforced."""
    mc_memo = {a: mc_qdd(D, a) for a in D.objects}
    out = []
    edges = [(i, j) for s in range(1, n + 1) for i in range(n + 1 - s)
             for j in (i + s,)]
    for f in itertools.product(D.objects, repeat=n + 1):
        partials = [{(v, v): w for v, w in zip(range(n + 1), ws)}
                    for ws in itertools.product(*[mc_memo[a] for a in f])]
        for (i, j) in edges:
            lv = D.level(f[i], f[j], 1)
            if lv is None:
                raise ValueError("degree-1 level not enumerable")
            grown = []
            for w in partials:
                for cand in lv:
                    good = True
                    for k in range(i, j + 1):
                        wik = cand if k == j else w[(i, k)]
                        wkj = cand if k == i else w[(k, j)]
                        lhs = D.d(f[i], f[j], 1, 1,
                                  cand) if False else None
                        lhs = D.d(f[i], f[j], 1, 1, cand)
                        rhs = D.prod(f[i], f[k], f[j], 1, 1, wkj, wik)
                        if lhs != rhs:
                            good = False
                            break
                    if good:
                        nw = dict(w)
                        nw[(i, j)] = cand
                        grown.append(nw)
            partials = grown
        for w in partials:
            out.append((f, w))
    return out


def _freeze_system(f, w):
    return (tuple(f), tuple(sorted(w.items())))


def _edge_restrict(D, sys, i, j):
    f, w = sys
    sub = ((f[i], f[j]),
           {(0, 0): w[(i, i)], (0, 1): w[(i, j)], (1, 1): w[(j, j)]})
    return _freeze_system(*sub)


@dataclass
class SegalReport:
    ok: bool
    level_count: int
    spine_count: int
    injective: bool
    surjective: bool


def segal_check_discrete(D, k):
    """Compare the level-k set with chains of level-1 data glued along
    matching vertices."""
    if k == 0:
        count = len(mc_level_discrete(D, 0))
        return SegalReport(True, count, count, True, True)
    W1 = [_freeze_system(f, w) for (f, w) in mc_level_discrete(D, 1)]
    W1set = set(W1)
    vert = {}
    for sysf in W1:
        f, w = sysf[0], dict(sysf[1])
        vert[sysf] = ((f[0], w[(0, 0)]), (f[1], w[(1, 1)]))
    spine = [c for c in itertools.product(W1, repeat=k)
             if all(vert[c[t]][1] == vert[c[t + 1]][0] for t in range(k - 1))]
    Wk = mc_level_discrete(D, k)
    images = []
    for (f, w) in Wk:
        images.append(tuple(_edge_restrict(D, (f, w), i, i + 1)
                            for i in range(k)))
    injective = len(set(images)) == len(images)
    image_set = set(images)
    surjective = image_set == set(spine)
    ok = injective and surjective and len(Wk) == len(spine)
    return SegalReport(ok, len(Wk), len(spine), injective, surjective)


@dataclass
class NerveIdentityReport:
    ok: bool
    chain_count: int
    mc_count: int
    forward_ok: bool
    backward_ok: bool
    per_vertex: dict


def nerve_identity_check(T, n, cap=200000):
    """Explicit two-way match between level-n chains of the algebra category
    and the level-n classifying set, per vertex assignment."""
    if isinstance(T, FiniteCategory):
        return _nerve_identity_cat(T, n, cap)
    return _nerve_identity_qdd(T, n, cap)


def _nerve_identity_cat(C, n, cap):
    K = standard_simplex(n, 2)
    BC = nerve(C, max(n, 1))
    chains = list(BC.labels[n])
    total_mc = 0
    forward_ok = True
    backward_ok = True
    per_vertex = {}
    seen = set()
    for f in itertools.product(range(C.n_objects()), repeat=n + 1):
        rc = restrict_category(C, f)
        P = p_k_cat(K, rc, cap=cap)
        sols = _pk_cat_mc(K, rc, P, n)
        per_vertex[f] = len(sols)
        total_mc += len(sols)
        for w in sols:
            # read the spine back off and land on a chain
            if n == 0:
                lab = ("o", f[0])
            else:
                spine = []
                for i in range(n):
                    cell = K.index[1][(i, i + 1)]
                    spine.append(rc.mor_labels[w[cell]][2])
                lab = ("m",) + tuple(spine)
            if lab not in BC.index[n]:
                backward_ok = False
            seen.add((f, w))
    for lab in chains:
        # assemble the composite system from the chain and check membership
        if n == 0:
            f = (lab[1],)
            w_by_pair = {}
        else:
            s = lab[1:]
            objs = [C.src[s[0]]] + [C.tgt[g] for g in s]
            f = tuple(objs)
            rc = restrict_category(C, f)
            acc = {}
            for i in range(n + 1):
                acc[(i, i)] = rc.identity[i]
            for span in range(1, n + 1):
                for i in range(n + 1 - span):
                    j = i + span
                    step = rc.mor_labels.index((j - 1, j, s[j - 1]))
                    acc[(i, j)] = (step if span == 1 else
                                   rc.compose[(step, acc[(i, j - 1)])])
            w_by_pair = acc
        K2 = standard_simplex(n, 2) if n else standard_simplex(0, 2)
        rc = restrict_category(C, f)
        w = tuple(w_by_pair[K2.labels[1][k]]
                  for k in range(K2.size(1))) if True else ()
        P = p_k_cat(K2, rc, cap=cap)
        if not _pk_mc_conditions_cat(P, w):
            forward_ok = False
        if (f, w) not in seen:
            forward_ok = False
    ok = forward_ok and backward_ok and total_mc == len(chains)
    return NerveIdentityReport(ok, len(chains), total_mc, forward_ok,
                               backward_ok, per_vertex)


def _pk_cat_mc(K, rc, P, n):
    """Solutions at grade 1 of the path carrier, by spanwise filling; each
    result is re-verified against the carrier operations."""
    sols = []
    acc = {(v, v): rc.identity[v] for v in range(n + 1)}
    partials = [acc]
    for span in range(1, n + 1):
        for i in range(n + 1 - span):
            j = i + span
            grown = []
            for w in partials:
                for cand in rc.hom(i, j):
                    if all(rc.compose[(cand if k == j else w[(k, j)],
                                       rc.identity[i] if False else
                                       (cand if k == i else w[(i, k)]))]
                           == cand if False else
                           rc.compose[((cand if k == j else w[(k, j)]),
                                       (cand if k == i else w[(i, k)]))] == cand
                           for k in range(i, j + 1)):
                        nw = dict(w)
                        nw[(i, j)] = cand
                        grown.append(nw)
            partials = grown
    for w in partials:
        flat = tuple(w[K.labels[1][k]] for k in range(K.size(1)))
        if _pk_mc_conditions_cat(P, flat):
            sols.append(flat)
    return sols


def _pk_mc_conditions_cat(P, w):
    if P.s(1, 0, w) != P.unit:
        return False
    return P.d(1, 1, w) == P.prod(1, 1, w, w)


def _pk_mc_conditions_bi(P, w):
    collapsed = P.sh(1, 0, 0, P.sv(1, 1, 0, w))
    if collapsed != P.unit:
        return False
    lhs = P.dh(1, 2, 1, P.dv(1, 1, 1, w))
    return lhs == P.prod((1, 1), (1, 1), w, w)


def _nerve_identity_qdd(D, n, cap):
    K = standard_simplex(n, 2)
    AD = alg_category(D)
    BC = nerve(AD, max(n, 1))
    chains = list(BC.labels[n])
    obj_pos = {a: k for k, a in enumerate(D.objects)}
    total_mc = 0
    forward_ok = True
    backward_ok = True
    per_vertex = {}
    seen = set()
    all_systems = mc_level_discrete(D, n)
    by_f = {}
    for (f, w) in all_systems:
        by_f.setdefault(f, []).append(w)
    for f in itertools.product(D.objects, repeat=n + 1):
        rd = restrict_qdd(D, f)
        P = p_k(K, rd, vertex_map={(i,): i for i in range(n + 1)}, cap=cap)
        sols = []
        for w in by_f.get(f, []):
            flat = tuple(w[K.labels[1][k]] for k in range(K.size(1)))
            if _pk_mc_conditions_bi(P, flat):
                sols.append((w, flat))
            else:
                backward_ok = False
        per_vertex[f] = len(sols)
        total_mc += len(sols)
        for w, flat in sols:
            if n == 0:
                lab = ("o", AD.objects.index((f[0], w[(0, 0)])))
            else:
                spine = []
                for i in range(n):
                    oi = AD.objects.index((f[i], w[(i, i)]))
                    oj = AD.objects.index((f[i + 1], w[(i + 1, i + 1)]))
                    g0 = D.s(f[i], f[i + 1], 1, 0, w[(i, i + 1)])
                    spine.append(AD.mor_labels.index((oi, oj, g0)))
                lab = ("m",) + tuple(spine)
            if lab not in BC.index[n]:
                backward_ok = False
            seen.add((f, _freeze_system(f, w)[1]))
    for lab in chains:
        if n == 0:
            a, w0 = AD.objects[lab[1]]
            f = (a,)
            w = {(0, 0): w0}
        else:
            s = lab[1:]
            obj_chain = [AD.src[s[0]]] + [AD.tgt[g] for g in s]
            f = tuple(AD.objects[o][0] for o in obj_chain)
            w = {}
            for i, o in enumerate(obj_chain):
                w[(i, i)] = AD.objects[o][1]
            for span in range(1, n + 1):
                for i in range(n + 1 - span):
                    j = i + span
                    g0 = AD.mor_labels[s[j - 1]][2]
                    prev = (D.unit(f[i]) if span == 1 else None)
                    if span == 1:
                        base = g0
                    else:
                        base = D.prod(f[i], f[j - 1], f[j], 0, 0, g0,
                                      _zero_composite(D, f, w, i, j - 1))
                    w[(i, j)] = D.prod(f[i], f[j], f[j], 1, 0, w[(j, j)], base)
        if (f, _freeze_system(f, w)[1]) not in seen:
            forward_ok = False
    ok = forward_ok and backward_ok and total_mc == len(chains)
    return NerveIdentityReport(ok, len(chains), total_mc, forward_ok,
                               backward_ok, per_vertex)


def _zero_composite(D, f, w, i, j):
    """Degree-0 composite of the collapsed spine from position i to j."""
    out = D.unit(f[i])
    for t in range(i, j):
        step = D.s(f[t], f[t + 1], 1, 0, w[(t, t + 1)])
        out = D.prod(f[i], f[t], f[t + 1], 0, 0, step, out)
    return out


# ---------------------------------------------------------- coend machinery


class EndpointDiagram:
    """Contravariant diagram on inner faces and all degeneracies: levels of
    labels, face[(n, i)] for 1 <= i <= n-1 mapping level n to n-1, and
    degen[(n, i)] for 0 <= i <= n mapping level n to n+1."""

    def __init__(self, levels, face, degen):
        self.levels = [list(lv) for lv in levels]
        self.face = {k: dict(v) for k, v in face.items()}
        self.degen = {k: dict(v) for k, v in degen.items()}
        self.top = len(self.levels) - 1


def nerve_strings(C, a, b, top):
    """Strings of composable morphisms from a to b; inner faces compose a
    neighbouring pair, degeneracies insert an identity."""
    levels = [[] for _ in range(top + 1)]
    if a == b:
        levels[0].append(())
    chains = [((), a)]
    for n in range(1, top + 1):
        nxt = []
        for (s, end) in chains:
            for g in range(C.n_morphisms()):
                if C.src[g] == end:
                    nxt.append((s + (g,), C.tgt[g]))
        chains = nxt
        levels[n] = [s for (s, end) in chains if end == b]
    face = {}
    degen = {}
    for n in range(1, top + 1):
        for i in range(1, n):
            face[(n, i)] = {
                s: s[:i - 1] + (C.compose[(s[i], s[i - 1])],) + s[i + 1:]
                for s in levels[n]}
    for n in range(top):
        for i in range(n + 1):
            def at(s, i=i):
                x = a if i == 0 else C.tgt[s[i - 1]]
                return s[:i] + (C.identity[x],) + s[i:]
            degen[(n, i)] = {s: at(s) for s in levels[n]}
    return EndpointDiagram(levels, face, degen)


def representable_diagram(n, top):
    """Endpoint-preserving monotone tuples into [n]; faces delete an inner
    entry, degeneracies repeat one."""
    levels = []
    for r in range(top + 1):
        levels.append([phi for phi in
                       itertools.combinations_with_replacement(range(n + 1), r + 1)
                       if phi[0] == 0 and phi[-1] == n])
    face = {}
    degen = {}
    for r in range(1, top + 1):
        for i in range(1, r):
            face[(r, i)] = {phi: phi[:i] + phi[i + 1:] for phi in levels[r]}
    for r in range(top):
        for i in range(r + 1):
            degen[(r, i)] = {phi: phi[:i + 1] + phi[i:] for phi in levels[r]}
    return EndpointDiagram(levels, face, degen)


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        p = self.parent.setdefault(x, x)
        if p != x:
            self.parent[x] = p = self.find(p)
        return p

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[rx] = ry


@dataclass
class CoendClasses:
    classes: list
    root_of: dict

    def count(self):
        return len(self.classes)

    def class_of(self, key):
        return self.root_of[key]


def uleft_product(X, E):
    """Coend of a diagram against a graded carrier: pairs (cell, element)
    identified across inner faces and degeneracies, by union-find."""
    top = min(X.top, E.trunc)
    uf = _UnionFind()
    keys = []
    for n in range(top + 1):
        lv = E.level(n)
        for x in X.levels[n]:
            for e in lv:
                keys.append((n, x, e))
                uf.find((n, x, e))
    for n in range(1, top + 1):
        for i in range(1, n):
            fmap = X.face[(n, i)]
            for x in X.levels[n]:
                for e in E.level(n - 1):
                    uf.union((n, x, E.d(n - 1, i, e)), (n - 1, fmap[x], e))
    for n in range(top):
        for i in range(n + 1):
            gmap = X.degen[(n, i)]
            for x in X.levels[n]:
                for e in E.level(n + 1):
                    uf.union((n + 1, gmap[x], e), (n, x, E.s(n + 1, i, e)))
    root_of = {k: uf.find(k) for k in keys}
    classes = sorted(set(root_of.values()))
    return CoendClasses(classes, root_of)


def uleft_pairing_check(C, E, a, b, c, top):
    """Composition on coend classes: concatenate strings and paste carrier
    elements, then confirm the class is independent of representatives."""
    X = nerve_strings(C, a, b, top)
    Y = nerve_strings(C, b, c, top)
    Z = nerve_strings(C, a, c, top)
    CX, CY, CZ = uleft_product(X, E), uleft_product(Y, E), uleft_product(Z, E)
    members_x = {}
    for k, r in CX.root_of.items():
        members_x.setdefault(r, []).append(k)
    members_y = {}
    for k, r in CY.root_of.items():
        members_y.setdefault(r, []).append(k)
    ok = True
    table = {}
    for rx, xs in members_x.items():
        for ry, ys in members_y.items():
            results = set()
            for (m, x, e) in xs:
                for (n, y, f) in ys:
                    if m + n > min(Z.top, E.trunc):
                        continue
                    results.add(CZ.root_of[(m + n, x + y, E.prod(m, n, e, f))])
            if len(results) > 1:
                ok = False
            if results:
                table[(rx, ry)] = results.pop()
    return ok, table, (CX, CY, CZ)


# ------------------------------------------------------------- totalization


@dataclass
class MorphismTotalReport:
    level_sizes: list
    identities: ValidationReport
    stage_counts: list
    stages: list


def morphism_total(D, x, y, trunc=None, rng=None, cap=400):
    """Cosimplicial hom structure between two algebra objects: outer cofaces
    paste with the chosen degree-1 solutions, inner operations come from the
    carrier; stages collect the tuples compatible under every operator."""
    (a, wa), (b, wb) = x, y
    if wa not in mc_qdd(D, a) or wb not in mc_qdd(D, b):
        raise ValueError("endpoints must be algebra objects")
    T = D.trunc if trunc is None else trunc

    def cf(n, i, e):
        if i == 0:
            return D.prod(a, b, b, 1, n, wb, e)
        if i == n + 1:
            return D.prod(a, a, b, n, 1, e, wa)
        return D.d(a, b, n, i, e)

    def cs(n, i, e):
        return D.s(a, b, n, i, e)

    rep = ValidationReport()
    levels = [D.level(a, b, n) for n in range(T + 1)]
    for n in range(T - 1):
        sample = _cap_pairs(levels[n] or [], cap, rng)
        for e in sample:
            for i in range(n + 2):
                for j in range(i + 1, n + 3):
                    rep.checks += 1
                    if cf(n + 1, j, cf(n, i, e)) != cf(n + 1, i, cf(n, j - 1, e)):
                        rep.note("coface-exchange", n, i, j, e)
    for n in range(1, T):
        sample = _cap_pairs(levels[n] or [], cap, rng)
        for e in sample:
            for i in range(n + 2):
                de = cf(n, i, e)
                for j in range(n + 1):
                    rep.checks += 1
                    got = cs(n + 1, j, de)
                    if i == j or i == j + 1:
                        want = e
                    elif i < j:
                        want = cf(n - 1, i, cs(n, j - 1, e))
                    else:
                        want = cf(n - 1, i - 1, cs(n, j, e))
                    if got != want:
                        rep.note("coface-collapse", n, i, j, e)
    for n in range(2, T + 1):
        sample = _cap_pairs(levels[n] or [], cap, rng)
        for e in sample:
            for i in range(n):
                for j in range(i, n - 1):
                    rep.checks += 1
                    if cs(n - 1, j, cs(n, i, e)) != cs(n - 1, i, cs(n, j + 1, e)):
                        rep.note("collapse-exchange", n, i, j, e)

    stages = []
    if levels[0] is None:
        raise ValueError("level 0 must be enumerable")
    current = [(e,) for e in levels[0]]
    stages.append(list(current))
    for n in range(T):
        nxt = []
        for tup in current:
            e = tup[-1]
            cand = cf(n, 0, e)
            if any(cf(n, i, e) != cand for i in range(1, n + 2)):
                continue
            if any(cs(n + 1, i, cand) != e for i in range(n + 1)):
                continue
            nxt.append(tup + (cand,))
        stages.append(nxt)
        current = nxt
    sizes = [None if lv is None else len(lv) for lv in levels]
    return MorphismTotalReport(sizes, rep, [len(st) for st in stages], stages)
