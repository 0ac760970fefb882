"""Independent brute-force oracle for the simplicial-core example values.

Run directly; prints a JSON report. The values printed here are frozen into
tests/test_simplicial_core.py. Nothing here imports the package under test.
"""

import itertools
import json


def count_nerve_poset01(n):
    # strings of n composable arrows in 0 -> 1: monotone maps {0..n} -> {0,1}
    return sum(1 for t in itertools.product((0, 1), repeat=n + 1)
               if all(a <= b for a, b in zip(t, t[1:])))


def count_nerve_z2(n):
    # strings of n group elements
    return 2 ** n


def matching_square_of_pairs():
    # E = tuples over a 2-element set; E^1 = S, E^0 = {()}; sigma^0 collapses.
    S = ("a", "b")
    out = []
    for e0 in S:
        for e1 in S:
            if () == ():  # sigma^0 e1 == sigma^0 e0, both the empty tuple
                out.append((e0, e1))
    return len(out)


def gimel_square_nondeg_edges():
    # edges of the square: pairs (c1, c2) of monotone 0/1 pairs, not both constant
    pairs = [(0, 0), (0, 1), (1, 1)]
    edges = [(c1, c2) for c1 in pairs for c2 in pairs]
    nondeg = [e for e in edges if not (e[0][0] == e[0][1] and e[1][0] == e[1][1])]

    def const(c):
        return c[0] == c[1]

    kept = [e for e in nondeg if (const(e[0]) and e[0][0] == 1) or const(e[1])]
    return len(kept)


def z2_nerve_tables(trunc):
    # level n: tuples of n elements of {0,1} with addition mod 2
    labels = [tuple(itertools.product((0, 1), repeat=n)) for n in range(trunc + 1)]

    def face(n, i, s):
        if i == 0:
            return s[1:]
        if i == n:
            return s[:-1]
        return s[:i - 1] + ((s[i - 1] + s[i]) % 2,) + s[i + 1:]

    def degen(n, i, s):
        return s[:i] + (0,) + s[i:]

    return labels, face, degen


def count_maps_interval_to_z2_nerve(trunc):
    """Brute-force count of simplicial maps Delta^1 -> B(Z/2), truncated.

    Enumerates level functions one level at a time, rechecking every face
    and degeneracy identity available so far.
    """
    dlabels = [tuple(itertools.combinations_with_replacement((0, 1), n + 1))
               for n in range(trunc + 1)]
    xlabels, xface, xdegen = z2_nerve_tables(trunc)

    def dface(n, i, t):
        return t[:i] + t[i + 1:]

    def ddegen(n, i, t):
        return t[:i + 1] + t[i:]

    count = 0
    levelmaps = [dict() for _ in range(trunc + 1)]

    def ok_so_far(n):
        f = levelmaps
        for i in range(n + 1):
            for t in dlabels[n]:
                if n >= 1 and xface(n, i, f[n][t]) != f[n - 1][dface(n, i, t)]:
                    return False
        if n >= 1:
            for i in range(n):
                for t in dlabels[n - 1]:
                    if xdegen(n - 1, i, f[n - 1][t]) != f[n][ddegen(n - 1, i, t)]:
                        return False
        return True

    def rec(n):
        nonlocal count
        if n > trunc:
            count += 1
            return
        for images in itertools.product(xlabels[n], repeat=len(dlabels[n])):
            levelmaps[n] = dict(zip(dlabels[n], images))
            if ok_so_far(n):
                rec(n + 1)

    rec(0)
    return count


def main():
    report = {
        "nerve_poset01_sizes": [count_nerve_poset01(n) for n in range(5)],
        "nerve_z2_sizes": [count_nerve_z2(n) for n in range(5)],
        "matching2_pairs_over_2set": matching_square_of_pairs(),
        "gimel2_nondegenerate_edges": gimel_square_nondeg_edges(),
        "maps_interval_to_z2_nerve_trunc3": count_maps_interval_to_z2_nerve(3),
    }
    print(json.dumps(report, indent=2))


if __name__ == "__main__":
    main()
