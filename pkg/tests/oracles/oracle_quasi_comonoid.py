"""Brute-force oracle for the quasi-comonoid module, from first principles.

No imports from the package under test. Everything here is enumerated with
its own ad-hoc representations:

  * Maurer-Cartan elements of the diagonal structure on a 3-element set;
  * Maurer-Cartan elements of the F2 function ring on the 1-simplex,
    counted two independent ways (two-equation set vs 1 + normalized cocycles);
  * object/2-morphism pairs and their equivalence classes for the one-object
    groupoid structure on F2 cochains of the collapsed 2-simplex;
  * commuting-pair count for the diagonal of a two-set product structure;
  * connected components of the homotopy quotient for the F2 cochain
    structure on the collapsed 1-simplex (circle model).

Run:  python3 tests/oracles/oracle_quasi_comonoid.py
"""

import itertools


# ------------------------------------------------- diagonal structure on S


def mc_diagonal_set(S):
    """MC elements for the duplicate/drop/concatenate structure on tuples."""
    out = []
    for x in S:
        w = (x,)
        # sigma^0 drops the first coordinate: lands in the singleton level 0
        s0 = ()
        # d^1 duplicates the first coordinate
        d1 = (x, x)
        if s0 == () and d1 == w + w:
            out.append(w)
    return out


# ------------------------------------- F2 functions on the 1-simplex levels


def interval_cells(n):
    """Monotone 0/1 strings of length n+1."""
    return [(0,) * j + (1,) * (n + 1 - j) for j in range(n + 2)]


def face(cell, i):
    return cell[:i] + cell[i + 1:]


def degen(cell, i):
    return cell[:i + 1] + (cell[i],) + cell[i + 1:]


def fn_ring_level(n):
    cells = interval_cells(n)
    return cells


def all_functions(cells):
    for vals in itertools.product((0, 1), repeat=len(cells)):
        yield dict(zip(cells, vals))


def coface(alpha, i, n):
    """Function on level-(n+1) cells pulled back along face i."""
    return {c: alpha[face(c, i)] for c in fn_ring_level(n + 1)}


def codegen(alpha, i, n):
    return {c: alpha[degen(c, i)] for c in fn_ring_level(n - 1)}


def fn_add(a, b):
    return {c: (a[c] + b[c]) % 2 for c in a}


def fn_mul(a, b):
    return {c: (a[c] * b[c]) % 2 for c in a}


def mc_interval_ring_two_equation():
    """omega in R^1 with sigma^0 omega = 1 and d^1 omega = omega * omega,
    where * is the cup product (last cofaces) . (initial cofaces)."""
    one0 = {c: 1 for c in fn_ring_level(0)}
    out = []
    for w in all_functions(fn_ring_level(1)):
        if codegen(w, 0, 1) != one0:
            continue
        lhs = coface(w, 1, 1)
        rhs = fn_mul(coface(w, 2, 1), coface(w, 0, 1))
        if lhs == rhs:
            out.append(tuple(w[c] for c in fn_ring_level(1)))
    return out


def mc_interval_ring_cocycles():
    """1 + {alpha : sigma^0 alpha = 0, d alpha + alpha cup alpha = 0}."""
    zero0 = {c: 0 for c in fn_ring_level(0)}
    one1 = {c: 1 for c in fn_ring_level(1)}
    out = []
    for a in all_functions(fn_ring_level(1)):
        if codegen(a, 0, 1) != zero0:
            continue
        d = fn_add(fn_add(coface(a, 0, 1), coface(a, 1, 1)), coface(a, 2, 1))
        cup = fn_mul(coface(a, 2, 1), coface(a, 0, 1))
        if all((d[c] + cup[c]) % 2 == 0 for c in d):
            w = fn_add(one1, a)
            out.append(tuple(w[c] for c in fn_ring_level(1)))
    return out


# ------------------------- one-object groupoid on cochains of Delta^2/bdry


def collapsed_cells(n, dim):
    """Cells of Delta^dim with its boundary collapsed: a base cell plus the
    monotone surjections onto {0..dim}. Non-surjective strings become the
    degenerate base cell."""
    cells = [("*",)]
    for s in itertools.combinations_with_replacement(range(dim + 1), n + 1):
        if len(set(s)) == dim + 1:
            cells.append(s)
    return cells


def collapse(s, dim):
    return s if len(set(s)) == dim + 1 else ("*",)


def cface(cell, i, dim):
    if cell == ("*",):
        return ("*",)
    return collapse(cell[:i] + cell[i + 1:], dim)


def cdegen(cell, i, dim):
    if cell == ("*",):
        return ("*",)
    return collapse(cell[:i + 1] + (cell[i],) + cell[i + 1:], dim)


def sphere_pairs_and_classes():
    """Pairs (x, a) and lambda-classes for the one-object structure whose
    level-n morphism group is F2 cochains on Delta^2/boundary.

    Composition is addition; insert maps are alternating-free single
    cofaces; the product is (right cofaces of a) + (left cofaces of b)."""
    dim = 2

    def level(n):
        return collapsed_cells(n, dim)

    def cf(alpha, i, n):
        return {c: alpha[cface(c, i, dim)] for c in level(n + 1)}

    def cd(alpha, i, n):
        return {c: alpha[cdegen(c, i, dim)] for c in level(n - 1)}

    def add(a, b):
        return {c: (a[c] + b[c]) % 2 for c in a}

    # pairs: a in C^2 with sigma^0 a = sigma^1 a = 0 and
    # d^2 a + d^0 a = d^1 a + d^3 a on level 3
    # (x is the unique object; x*a contributes d^0, a*x contributes d^3)
    pairs = []
    for vals in itertools.product((0, 1), repeat=len(level(2))):
        a = dict(zip(level(2), vals))
        if any(v for v in cd(a, 0, 2).values()):
            continue
        if any(v for v in cd(a, 1, 2).values()):
            continue
        lhs = add(cf(a, 2, 2), cf(a, 0, 2))
        rhs = add(cf(a, 1, 2), cf(a, 3, 2))
        if lhs == rhs:
            pairs.append(tuple(vals))

    # classes: a ~ a + (d^0 - d^1 + d^2) lam for lam in C^1, sigma^0 lam = 0
    lams = []
    for vals in itertools.product((0, 1), repeat=len(level(1))):
        lam = dict(zip(level(1), vals))
        if any(v for v in cd(lam, 0, 1).values()):
            continue
        lams.append(lam)
    reachable = {}
    for p in pairs:
        a = dict(zip(level(2), p))
        orbit = set()
        for lam in lams:
            moved = add(a, add(add(cf(lam, 0, 1), cf(lam, 1, 1)), cf(lam, 2, 1)))
            orbit.add(tuple(moved[c] for c in level(2)))
        reachable[p] = orbit
    classes = []
    seen = set()
    for p in pairs:
        if p in seen:
            continue
        classes.append(p)
        seen |= reachable[p]
    return len(pairs), len(classes)


# -------------------------------------------------- diagonal of a pair set


def diag_pair_counts(nx, ny):
    """MC of the diagonal structure on X^m x Y^n tuples, and the commuting
    pairs (alpha, beta); both by brute force on small X, Y."""
    X = list(range(nx))
    Y = list(range(100, 100 + ny))
    # diag level n is X^n x Y^n; omega = ((x,), (y,)) with the two equations
    mc = []
    for x in X:
        for y in Y:
            w = ((x,), (y,))
            d1 = ((x, x), (y, y))       # duplicate both coordinates
            ww = ((x, x), (y, y))       # concatenation in both factors
            if d1 == ww:
                mc.append(w)
    pairs = []
    for x in X:                          # alpha in mc of the row: (x,) x ()
        for y in Y:                      # beta in mc of the column
            a_then_b = ((x,), (y,))      # alpha * beta in E^{11}
            b_then_a = ((x,), (y,))      # beta * alpha: same by coordinates
            if a_then_b == b_then_a:
                pairs.append((x, y))
    return len(mc), len(pairs)


# --------------------------------------- circle cochains: components of ddel


def circle_pi0():
    """F2 cochains on Delta^1/boundary. MC elements of the additive
    structure, modulo the adjoint action of level 0."""
    dim = 1

    def level(n):
        return collapsed_cells(n, dim)

    def cf(alpha, i, n):
        return {c: alpha[cface(c, i, dim)] for c in level(n + 1)}

    def cd(alpha, i, n):
        return {c: alpha[cdegen(c, i, dim)] for c in level(n - 1)}

    def add(a, b):
        return {c: (a[c] + b[c]) % 2 for c in a}

    mc = []
    for vals in itertools.product((0, 1), repeat=len(level(1))):
        w = dict(zip(level(1), vals))
        if any(v for v in cd(w, 0, 1).values()):
            continue
        lhs = cf(w, 1, 1)
        rhs = add(cf(w, 0, 1), cf(w, 2, 1))
        if lhs == rhs:
            mc.append(tuple(vals))

    # g^{-1} * w * g = w + (d^0 - d^1) g for g in level 0
    orbits = set()
    reps = []
    for m in mc:
        if m in orbits:
            continue
        reps.append(m)
        w = dict(zip(level(1), m))
        for gvals in itertools.product((0, 1), repeat=len(level(0))):
            g = dict(zip(level(0), gvals))
            moved = add(w, add(cf(g, 0, 0), cf(g, 1, 0)))
            orbits.add(tuple(moved[c] for c in level(1)))
    return len(mc), len(reps)


def main():
    iota3 = mc_diagonal_set([10, 20, 30])
    two_eq = mc_interval_ring_two_equation()
    coc = mc_interval_ring_cocycles()
    npairs, nclasses = sphere_pairs_and_classes()
    dmc, dpairs = diag_pair_counts(2, 3)
    cmc, cpi0 = circle_pi0()
    report = {
        "iota3_mc": len(iota3),
        "interval_ring_mc": sorted(two_eq),
        "interval_ring_mc_via_cocycles": sorted(coc),
        "sphere_gpd_pairs": npairs,
        "sphere_gpd_classes": nclasses,
        "diag_mc": dmc,
        "diag_pairs": dpairs,
        "circle_mc": cmc,
        "circle_pi0": cpi0,
    }
    for k, v in report.items():
        print(f"{k}: {v}")
    assert sorted(two_eq) == sorted(coc)
    print("two MC descriptions agree:", sorted(two_eq) == sorted(coc))


if __name__ == "__main__":
    main()
