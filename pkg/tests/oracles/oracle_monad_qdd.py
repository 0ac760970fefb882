"""Brute-force oracle for the monad and enriched-hom module, from first
principles.

No imports from the package under test.  Everything is enumerated with ad-hoc
representations:

  * chain counts and blind functor-system counts for six small categories;
  * algebra structures, equivariant maps and chain counts for the sign
    action X -> X x {0,1} on a two-element carrier;
  * blind enumeration of the one-edge enriched Maurer-Cartan system for the
    sign action, and the propagated two-edge count checked against chains;
  * joint (action, coloring) objects and morphisms for the sign action paired
    with the two-color environment construction, on one- and two-element
    carriers, plus the blind one-edge count for the mixed enrichment;
  * fixed points of a rounding operator on the three-chain poset;
  * the twisted one-object fixtures over the two-element group.

Run:  python3 tests/oracles/oracle_monad_qdd.py
"""

import itertools


# ---------------------------------------------------------- tiny categories
# a category is (objects, hom, comp, ident): hom[(a, b)] lists labels,
# comp[(g, f)] is g after f, ident[a] the identity label at a.


def cat_poset(n):
    objects = list(range(n + 1))
    hom = {(a, b): ([("p", a, b)] if a <= b else []) for a in objects for b in objects}
    comp = {}
    for a in objects:
        for b in objects:
            for c in objects:
                if a <= b <= c:
                    comp[(("p", b, c), ("p", a, b))] = ("p", a, c)
    ident = {a: ("p", a, a) for a in objects}
    return objects, hom, comp, ident


def cat_cyclic(k):
    objects = [0]
    hom = {(0, 0): [("c", r) for r in range(k)]}
    comp = {(("c", r), ("c", s)): ("c", (r + s) % k) for r in range(k) for s in range(k)}
    ident = {0: ("c", 0)}
    return objects, hom, comp, ident


def cat_end2():
    # all four self-maps of a two-point set, composition of graphs
    graphs = [(0, 0), (0, 1), (1, 0), (1, 1)]
    objects = [0]
    hom = {(0, 0): graphs}
    comp = {(g, f): (g[f[0]], g[f[1]]) for g in graphs for f in graphs}
    ident = {0: (0, 1)}
    return objects, hom, comp, ident


def cat_parallel():
    # two objects, two parallel arrows between them
    objects = [0, 1]
    hom = {(0, 0): [("i", 0)], (1, 1): [("i", 1)],
           (0, 1): [("u",), ("v",)], (1, 0): []}
    comp = {}
    for lab in [("u",), ("v",)]:
        comp[(lab, ("i", 0))] = lab
        comp[(("i", 1), lab)] = lab
    for x in objects:
        comp[(("i", x), ("i", x))] = ("i", x)
    ident = {0: ("i", 0), 1: ("i", 1)}
    return objects, hom, comp, ident


def chain_counts(cat, top):
    """Number of composable n-strings for n = 0..top, by direct extension."""
    objects, hom, comp, ident = cat
    counts = [len(objects)]
    chains = [((), a, a) for a in objects]  # (string, start, end)
    for _ in range(top):
        nxt = []
        for s, a, b in chains:
            for c in objects:
                for f in hom[(b, c)]:
                    nxt.append((s + (f,), a, c))
        counts.append(len(nxt))
        chains = nxt
    return counts


def mc_blind_counts(cat, top):
    """Blind count of edge systems: one value per monotone pair (i, j) of
    [0, n], identities on the diagonal, composites forced on every triple."""
    objects, hom, comp, ident = cat
    out = []
    for n in range(top + 1):
        edges = [(i, j) for i in range(n + 1) for j in range(i, n + 1)]
        triples = [(i, j, k) for i in range(n + 1)
                   for j in range(i, n + 1) for k in range(j, n + 1)]
        total = 0
        for f in itertools.product(objects, repeat=n + 1):
            pools = [hom[(f[i], f[j])] for (i, j) in edges]
            for choice in itertools.product(*pools):
                w = dict(zip(edges, choice))
                if any(w[(v, v)] != ident[f[v]] for v in range(n + 1)):
                    continue
                if all(w[(i, k)] == comp[(w[(j, k)], w[(i, j)])]
                       for (i, j, k) in triples):
                    total += 1
        out.append(total)
    return out


# ----------------------------------------- sign action on a two-point carrier
# T X = X x {0,1} with xor; a level-n element is a map B x {0,1}^n -> B,
# stored as a dict keyed by (b, ms).

B2 = (0, 1)


def level_maps(B, n):
    dom = [(b, ms) for b in B for ms in itertools.product((0, 1), repeat=n)]
    for vals in itertools.product(B, repeat=len(dom)):
        yield dict(zip(dom, vals))


def sign_algebras(B):
    """Maps theta: B x {0,1} -> B with the unit and xor-associativity laws."""
    out = []
    for th in level_maps(B, 1):
        if any(th[(b, (0,))] != b for b in B):
            continue
        if all(th[(th[(b, (m1,))], (m2,))] == th[(b, ((m1 + m2) % 2,))]
               for b in B for m1 in (0, 1) for m2 in (0, 1)):
            out.append(th)
    return out


def equivariant_maps(B, th, th2):
    out = []
    for vals in itertools.product(B, repeat=len(B)):
        g = dict(zip(B, vals))
        if all(g[th[(b, (m,))]] == th2[(g[b], (m,))] for b in B for m in (0, 1)):
            out.append(g)
    return out


def sign_chain_counts(B, top):
    algs = sign_algebras(B)
    mat = [[len(equivariant_maps(B, a, b)) for b in algs] for a in algs]
    counts = [len(algs)]
    chains = [(a,) for a in range(len(algs))]
    weight = {c: 1 for c in chains}
    for _ in range(top):
        nxt = {}
        for c, w in weight.items():
            for b in range(len(algs)):
                step = mat[c[-1]][b]
                if step:
                    nxt[c + (b,)] = nxt.get(c + (b,), 0) + w * step
        counts.append(sum(nxt.values()))
        weight = nxt
    return mat, counts


def sign_mc_one_edge(B):
    """Blind count of systems (w00, w11, w01) of level-1 maps subject to the
    diagonal-identity and all four triple conditions."""

    def merged(e, b, m1, m2):
        return e[(b, ((m1 + m2) % 2,))]

    def star(g, f, b, m1, m2):
        # g after f: push f through one sign coordinate, then apply g
        return g[(f[(b, (m1,))], (m2,))]

    lv1 = list(level_maps(B, 1))
    total = 0
    for w00 in lv1:
        if any(w00[(b, (0,))] != b for b in B):
            continue
        for w11 in lv1:
            if any(w11[(b, (0,))] != b for b in B):
                continue
            for w01 in lv1:
                w = {(0, 0): w00, (1, 1): w11, (0, 1): w01}
                ok = True
                for (i, j, k) in [(0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 1, 1)]:
                    for b in B:
                        for m1 in (0, 1):
                            for m2 in (0, 1):
                                if (merged(w[(i, k)], b, m1, m2)
                                        != star(w[(j, k)], w[(i, j)], b, m1, m2)):
                                    ok = False
                if ok:
                    total += 1
    return total


def sign_mc_two_edges(B):
    """Propagated count of the six-edge system on [0, 2]; every one of the
    ten triple conditions is re-verified on each assembled solution."""

    def merged(e, b, m1, m2):
        return e[(b, ((m1 + m2) % 2,))]

    def star(g, f, b, m1, m2):
        return g[(f[(b, (m1,))], (m2,))]

    def cell_ok(w, i, j, k):
        return all(merged(w[(i, k)], b, m1, m2)
                   == star(w[(j, k)], w[(i, j)], b, m1, m2)
                   for b in B for m1 in (0, 1) for m2 in (0, 1))

    algs = sign_algebras(B)
    lv1 = list(level_maps(B, 1))
    total = 0
    for w00 in algs:
        for w11 in algs:
            for w22 in algs:
                base = {(0, 0): w00, (1, 1): w11, (2, 2): w22}
                for w01 in lv1:
                    w = dict(base)
                    w[(0, 1)] = w01
                    if not (cell_ok(w, 0, 0, 1) and cell_ok(w, 0, 1, 1)):
                        continue
                    for w12 in lv1:
                        w[(1, 2)] = w12
                        if not (cell_ok(w, 1, 1, 2) and cell_ok(w, 1, 2, 2)):
                            continue
                        for w02 in lv1:
                            w[(0, 2)] = w02
                            triples = [(i, j, k) for i in range(3)
                                       for j in range(i, 3) for k in range(j, 3)]
                            if all(cell_ok(w, *t) for t in triples):
                                total += 1
    return total


# ------------------------------- sign action paired with a two-color carrier
# W X = X x S with projection and diagonal; the mixing swap is
# ((x, s), m) -> ((x, m), s).


def joint_objects(B):
    """Pairs (theta, sigma): an action and a coloring, compatible through the
    raw square beta.alpha = (W alpha).swap.(T beta)."""
    out = []
    for th in sign_algebras(B):
        for svals in itertools.product((0, 1), repeat=len(B)):
            sg = dict(zip(B, svals))
            if all(sg[th[(b, (m,))]] == sg[b] for b in B for m in (0, 1)):
                out.append((th, sg))
    return out


def joint_morphisms(B, obj, obj2):
    th, sg = obj
    th2, sg2 = obj2
    out = []
    for g in equivariant_maps(B, th, th2):
        if all(sg2[g[b]] == sg[b] for b in B):
            out.append(g)
    return out


def joint_chain_counts(B, top):
    objs = joint_objects(B)
    mat = [[len(joint_morphisms(B, a, b)) for b in objs] for a in objs]
    counts = [len(objs)]
    vec = {(i,): 1 for i in range(len(objs))}
    for _ in range(top):
        nxt = {}
        for c, w in vec.items():
            for b in range(len(objs)):
                if mat[c[-1]][b]:
                    nxt[c + (b,)] = nxt.get(c + (b,), 0) + w * mat[c[-1]][b]
        counts.append(sum(nxt.values()))
        vec = nxt
    return mat, counts


def joint_mc_one_vertex(B):
    """Blind count of level-1 mixed elements w: B x {0,1} -> B x {0,1} with
    the collapse-to-identity and square conditions."""
    dom = [(b, m) for b in B for m in (0, 1)]
    cod = [(b, s) for b in B for s in (0, 1)]
    total = 0
    for vals in itertools.product(cod, repeat=len(dom)):
        w = dict(zip(dom, vals))
        # collapse: insert the unit sign, project the color, land on id
        if any(w[(b, 0)][0] != b for b in B):
            continue
        ok = True
        for b in B:
            for m1 in (0, 1):
                for m2 in (0, 1):
                    x, s = w[(b, (m1 + m2) % 2)]
                    lhs = ((x, s), s)
                    x1, s1 = w[(b, m1)]
                    x2, s2 = w[(x1, m2)]
                    rhs = ((x2, s2), s1)
                    if lhs != rhs:
                        ok = False
        if ok:
            total += 1
    return total


# --------------------------------------------- rounding operator on a poset
# T: 0 -> 1, 1 -> 1, 2 -> 2 on the chain 0 < 1 < 2; fixed points and chains.


def rounding_fixture():
    T = {0: 1, 1: 1, 2: 2}
    fixed = [x for x in (0, 1, 2) if T[x] == x]
    mat = [[1 if a <= b else 0 for b in fixed] for a in fixed]
    counts = [len(fixed)]
    vec = [1] * len(fixed)
    for _ in range(4):
        nxt = [sum(vec[a] * mat[a][b] for a in range(len(fixed)))
               for b in range(len(fixed))]
        counts.append(sum(nxt))
        vec = nxt
    return fixed, counts


# -------------------------------------- twisted one-object group fixtures
# Z2 = {0, 1} additive; the endofunctor is the identity, the structure maps
# are the nontrivial element.


def twisted_counts():
    g = 1
    mu, eta = g, g  # unit law: mu + eta = 0 mod 2
    algebras = [t for t in (0, 1)
                if (t + eta) % 2 == 0 and (t + t) % 2 == (t + mu) % 2]
    endos = [f for f in (0, 1) for t in algebras if (f + t) % 2 == (t + f) % 2]
    # comonad side mirrors it; the mixing component is forced to 0
    eps, delta = g, g
    coalgebras = [b for b in (0, 1)
                  if (eps + b) % 2 == 0 and (b + b) % 2 == (delta + b) % 2]
    joint = [(t, b) for t in algebras for b in coalgebras
             if (b + t) % 2 == (t + 0 + b) % 2]
    return len(algebras), len(set(endos)), len(coalgebras), len(joint)


# -------------------------------------------------------------------- main


def compute():
    cats = {
        "poset1": cat_poset(1),
        "poset2": cat_poset(2),
        "cyclic2": cat_cyclic(2),
        "cyclic3": cat_cyclic(3),
        "end2": cat_end2(),
        "parallel": cat_parallel(),
    }
    cat_tables = {}
    for name, cat in cats.items():
        nerve = chain_counts(cat, 4)
        blind = mc_blind_counts(cat, 2)
        assert blind == nerve[:3], (name, blind, nerve)
        cat_tables[name] = {"nerve": nerve, "mc_blind": blind}

    sign_mat, sign_counts = sign_chain_counts(B2, 4)
    one_edge = sign_mc_one_edge(B2)
    assert one_edge == sign_counts[1], (one_edge, sign_counts)
    two_edge = sign_mc_two_edges(B2)
    assert two_edge == sign_counts[2], (two_edge, sign_counts)

    joint_mat, joint_counts = joint_chain_counts(B2, 3)
    joint_small = len(joint_objects((0,)))
    blind_vertex = joint_mc_one_vertex(B2)
    assert blind_vertex == joint_counts[0], (blind_vertex, joint_counts)

    fixed, rounding_chains = rounding_fixture()

    n_alg, n_endo, n_coalg, n_joint = twisted_counts()

    return {
        "cats": cat_tables,
        "sign_algebras": len(sign_algebras(B2)),
        "sign_algebras_single": len(sign_algebras((0,))),
        "sign_hom_matrix": sign_mat,
        "sign_nerve": sign_counts,
        "sign_mc_one_edge": one_edge,
        "sign_mc_two_edges": two_edge,
        "joint_objects": joint_counts[0],
        "joint_objects_single": joint_small,
        "joint_hom_matrix": joint_mat,
        "joint_nerve": joint_counts,
        "joint_mc_one_vertex": blind_vertex,
        "rounding_fixed": fixed,
        "rounding_nerve": rounding_chains,
        "twisted": [n_alg, n_endo, n_coalg, n_joint],
    }


if __name__ == "__main__":
    for key, value in compute().items():
        print(f"{key}: {value}")
