"""Chain complexes, (co)simplicial modules, the normalization equivalences,
bicomplexes, and the homotopy groups of abelian deformation towers."""

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mcf import dold_kan as dk
from mcf.exact import GF, INT_RING, Mat
from mcf.simplicial_core import standard_simplex

F2 = GF(2)
F3 = GF(3)
F5 = GF(5)


# --------------------------------------------------------------- complexes


def test_homology_value_order_and_formatting():
    h = dk.Homology("Z", 1, (2, 4))
    assert h.order() is None
    assert str(h) == "Z + Z/2 + Z/4"
    assert dk.Homology("Z", 0, (2,)).order() == 2
    assert dk.Homology("F3", 2).order() == 9
    assert dk.Homology("F2", 0).is_trivial()
    assert str(dk.Homology("Q", 0)) == "0"


def test_single_complex_and_shift():
    C = dk.single_complex(INT_RING, 2, dim=3)
    assert C.dims == {2: 3}
    assert C.homology(2) == dk.Homology("Z", 3)
    assert C.homology(1).is_trivial()
    D = dk.shift_complex(C, -2)
    assert D.dims == {0: 3}


def test_homology_of_two_term_integer_complexes():
    # multiplication by 2, degree 1 -> 0
    C = dk.Complex(INT_RING, {0: 1, 1: 1}, {1: Mat(INT_RING, 1, 1, [[2]])},
                   down=True)
    assert C.homology(0) == dk.Homology("Z", 0, (2,))
    assert C.homology(1).is_trivial()
    # zero differential
    D = dk.Complex(INT_RING, {0: 1, 1: 1}, {}, down=True)
    assert D.homology(0) == dk.Homology("Z", 1)
    assert D.homology(1) == dk.Homology("Z", 1)


def test_complex_rejects_broken_differential():
    d = {1: Mat(INT_RING, 1, 1, [[1]]), 2: Mat(INT_RING, 1, 1, [[1]])}
    with pytest.raises(AssertionError):
        dk.Complex(INT_RING, {0: 1, 1: 1, 2: 1}, d, down=True)


@settings(deadline=None, max_examples=20)
@given(st.integers(0, 10**6), st.sampled_from([2, 3]))
def test_field_euler_characteristic_matches_homology(seed, p):
    rng = random.Random(seed)
    C = dk.random_complex(GF(p), rng, 4, maxdim=2, down=True)
    chi_c = sum((-1) ** n * C.dim(n) for n in range(5))
    chi_h = sum((-1) ** n * C.homology(n).free_rank for n in range(5))
    assert chi_c == chi_h


# ----------------------------------------------------------- normalization


def test_normalized_chains_of_interval():
    V = dk.linearize_sset(INT_RING, standard_simplex(1, 4))
    N = dk.normalize_simplicial(V).complex
    assert [N.dim(n) for n in range(5)] == [2, 1, 0, 0, 0]
    assert N.d(1) == Mat(INT_RING, 2, 1, [[-1], [1]])
    assert N.homology(0) == dk.Homology("Z", 1)
    assert N.homology(1).is_trivial()


def test_normalized_chains_of_triangle_are_acyclic():
    V = dk.linearize_sset(INT_RING, standard_simplex(2, 4))
    N = dk.normalize_simplicial(V).complex
    assert N.homology(0) == dk.Homology("Z", 1)
    for n in range(1, 5):
        assert N.homology(n).is_trivial()


def test_constant_simplicial_module_concentrates_in_degree_zero():
    # all faces and degeneracies the identity: nothing survives above 0
    ident = Mat.eye(F3, 2)
    trunc = 3
    face = [None] + [[ident] * (n + 1) for n in range(1, trunc + 1)]
    degen = [[ident] * (n + 1) for n in range(trunc)] + [[]]
    V = dk.SimplicialModule(F3, [2] * (trunc + 1), face, degen)
    N = dk.normalize_simplicial(V).complex
    assert N.dims == {0: 2}


def test_conormalization_of_constant_cosimplicial_module():
    ident = Mat.eye(F2, 2)
    trunc = 3
    coface = [None] + [[ident] * (n + 1) for n in range(1, trunc + 1)]
    codegen = [None] + [[ident] * n for n in range(1, trunc + 1)]
    A = dk.CosimplicialModule(F2, [2] * (trunc + 1), coface, codegen)
    N = dk.conormalize(A).complex
    assert N.dims == {0: 2}


# --------------------------------------------------------- denormalization


def test_denormalized_level_ranks_of_single_generator():
    C = dk.single_complex(INT_RING, 1)
    den = dk.denormalize_cochain(C, 5)
    assert [den.module.dims[n] for n in range(6)] == [0, 1, 2, 3, 4, 5]


def test_denormalized_level_rank_formula():
    for ring, seed in [(F3, 11), (INT_RING, 12)]:
        rng = random.Random(seed)
        C = dk.random_complex(ring, rng, 3, maxdim=2)
        den = dk.denormalize_cochain(C, 5)
        for n in range(6):
            want = sum(math.comb(n, s) * C.dim(n - s) for s in range(n + 1))
            assert den.module.dims[n] == want


def _canonical_conormalization_identification(C, den, nd):
    """Coordinates of the untouched copy of C inside the conormalization."""
    maps = {}
    for n in range(len(den.monomials)):
        cols = []
        amb = den.module.dims[n]
        for j in range(C.dim(n)):
            v = [0] * amb
            v[den.index[n][((), j)]] = 1
            cols.append([C.ring.coerce(x) if hasattr(C.ring, "coerce") else x
                         for x in v])
        E = Mat.from_cols(C.ring, amb, cols)
        phi = nd.inclusion[n].solve_cols(E)
        assert phi is not None
        maps[n] = phi
    return maps


def test_conormalize_inverts_denormalize_exactly():
    for ring, seed in [(INT_RING, 3), (F2, 4), (F5, 5)]:
        rng = random.Random(seed)
        C = dk.random_complex(ring, rng, 4, maxdim=2)
        den = dk.denormalize_cochain(C, 5)
        nd = dk.conormalize(den.module)
        assert {n: d for n, d in nd.complex.dims.items()} == dict(C.dims)
        phi = _canonical_conormalization_identification(C, den, nd)
        for n in range(6):
            assert phi[n].inverse() is not None or phi[n].r == 0
        for n in range(5):
            lhs = nd.complex.d(n) @ phi[n]
            rhs = phi[n + 1] @ C.d(n)
            assert lhs == rhs


def test_denormalize_inverts_conormalize_up_to_marked_isomorphism():
    for ring, seed in [(F3, 21), (F2, 22), (INT_RING, 23), (F5, 24)]:
        rng = random.Random(seed)
        A = dk.random_cosimplicial_module(ring, rng, 4)
        norm = dk.conormalize(A)
        den = dk.denormalize_cochain(norm.complex, A.trunc)
        maps = dk.counit_cosimplicial(A, norm, den)
        assert dk.is_cosimplicial_iso(den.module, A, maps)


def test_simplicial_normalization_equivalence():
    for ring, seed in [(F3, 31), (INT_RING, 32)]:
        rng = random.Random(seed)
        V = dk.random_simplicial_module(ring, rng, 4)
        norm = dk.normalize_simplicial(V)
        den = dk.denormalize_chain(norm.complex, V.trunc)
        maps = dk.counit_simplicial(V, norm, den)
        assert dk.is_simplicial_iso(den.module, V, maps)


@settings(deadline=None, max_examples=10)
@given(st.integers(0, 10**6))
def test_dold_kan_round_trip_property(seed):
    rng = random.Random(seed)
    A = dk.random_cosimplicial_module(F2, rng, 3)
    norm = dk.conormalize(A)
    den = dk.denormalize_cochain(norm.complex, A.trunc)
    maps = dk.counit_cosimplicial(A, norm, den)
    assert dk.is_cosimplicial_iso(den.module, A, maps)
    back = dk.conormalize(den.module)
    assert dict(back.complex.dims) == dict(norm.complex.dims)


# ---------------------------------------------------------------- bicomplex


def _corner_bicomplex(ring, ds_val, dc_val):
    """Dim-1 entries at (1,0), (2,0), (2,1) with chosen connecting maps."""
    dims = {(1, 0): 1, (2, 0): 1, (2, 1): 1}
    dc = {(1, 0): Mat(ring, 1, 1, [[dc_val]])}
    ds = {(2, 1): Mat(ring, 1, 1, [[ds_val]])}
    return dk.Bicomplex(ring, dims, dc, ds)


def test_tot_of_single_entry():
    B = dk.Bicomplex(INT_RING, {(2, 3): 4}, {}, {})
    tot = dk.tot_product(B)
    assert tot.complex.dims == {1: 4}
    assert tot.layout[1] == [((2, 3), 0, 4)]


def test_tot_differential_signs():
    # identity square: rows a=1,0, columns b=0,1
    one = Mat(INT_RING, 1, 1, [[1]])
    dims = {(0, 1): 1, (0, 0): 1, (1, 1): 1, (1, 0): 1}
    dc = {(0, 1): one, (0, 0): one}
    ds = {(0, 1): one, (1, 1): one}
    B = dk.Bicomplex(INT_RING, dims, dc, ds)
    tot = dk.tot_product(B)
    # degree 1 = (0,1); degree 0 = (0,0) + (1,1); degree -1 = (1,0)
    d1 = tot.complex.d(1)
    order0 = [entry[0] for entry in tot.layout[0]]
    col = {order0[i]: d1.rows[i][0] for i in range(2)}
    assert col[(0, 0)] == 1      # vertical part keeps its sign
    assert col[(1, 1)] == -1     # horizontal part negated on odd rows
    d0 = tot.complex.d(0)
    cols = {order0[i]: d0.rows[0][i] for i in range(2)}
    assert cols[(0, 0)] == 1     # even row: horizontal part unsigned
    assert cols[(1, 1)] == 1     # vertical part always unsigned
    for n in (-1, 0, 1):
        assert tot.complex.homology(n).is_trivial()


def test_brutal_truncation_drops_low_columns():
    B = _corner_bicomplex(F2, 1, 1)
    T = dk.brutal_truncate(B, 2)
    assert set(T.dims) == {(2, 0), (2, 1)}
    empty = dk.brutal_truncate(B, 3)
    assert empty.is_zero()


def test_transpose_preserves_total_homology():
    cases = [(INT_RING, 41), (F2, 42), (F3, 43)]
    for ring, seed in cases:
        rng = random.Random(seed)
        for _ in range(3):
            B = dk.random_bicomplex(ring, rng, 3, 3)
            W, shift = dk.transpose_bicomplex(B)
            totB = dk.tot_product(B).complex
            totW = dk.tot_product(W).complex
            degs = set(totB.degrees()) | {n + shift for n in totW.degrees()}
            for n in degs:
                assert totB.homology(n) == totW.homology(n - shift)


def test_transpose_preserves_torsion():
    two = Mat(INT_RING, 1, 1, [[2]])
    B = dk.Bicomplex(INT_RING, {(0, 1): 1, (0, 0): 1}, {}, {(0, 1): two})
    W, shift = dk.transpose_bicomplex(B)
    totB = dk.tot_product(B).complex
    totW = dk.tot_product(W).complex
    assert totB.homology(0) == dk.Homology("Z", 0, (2,))
    assert totW.homology(0 - shift) == dk.Homology("Z", 0, (2,))


# --------------------------------------------------- cosimplicial-simplicial


def test_cs_module_round_trip_recovers_bicomplex():
    rng = random.Random(51)
    B = dk.random_bicomplex(F3, rng, 2, 1)
    M = dk.cs_module_from_bicomplex(B, 2, 2)
    M.validate()
    back = dk.bicomplex_nsnc(M)
    assert back.dims == B.dims
    totB = dk.tot_product(B).complex
    totb = dk.tot_product(back).complex
    for n in set(totB.degrees()) | set(totb.degrees()):
        assert totB.homology(n) == totb.homology(n)


def test_constant_cosimplicial_direction_gives_simplicial_homology():
    rng = random.Random(52)
    G = dk.random_simplicial_module(F3, rng, 3)
    M = dk.cs_from_simplicial(G, 2)
    M.validate()
    NG = dk.normalize_simplicial(G).complex
    for n in range(4):
        assert dk.pi_ddel_abelian(M, n) == NG.homology(n - 1)
    # nothing in positive cochain degrees survives the truncation
    for n in range(3):
        assert dk.pi_mmc_abelian(M, n).is_trivial()


# ------------------------------------------------------------ deform tower


# Frozen output of tests/oracles/oracle_dold_kan.py: brute-force tower
# enumeration over F2 for the three corner fixtures, levels k = 0..3.
ORACLE_TOWER = {
    (1, 1): {"dims": [1, 1, 1, 1], "pi": [2, 1, 1]},
    (1, 0): {"dims": [1, 1, 1, 1], "pi": [2, 1, 1]},
    (0, 1): {"dims": [1, 1, 1, 1], "pi": [2, 1, 1]},
}


def test_tower_solution_spaces_match_frozen_enumeration():
    for (ds, dc), want in ORACLE_TOWER.items():
        B = _corner_bicomplex(F2, ds, dc)
        sol = dk.mmc_abelian(B)
        assert [sol.dim(k) for k in range(4)] == want["dims"]
        assert [sol.pi(j).order() for j in range(3)] == want["pi"]
        assert [dk.pi_mmc_abelian(B, j).order() for j in range(3)] == want["pi"]
        assert sol.pi0_enumerated() == want["pi"][0]
        assert [sol.solution_count(k) for k in range(4)] == \
            [2 ** d for d in want["dims"]]


def test_tower_solution_spaces_are_simplicial():
    B = _corner_bicomplex(F2, 1, 1)
    sol = dk.mmc_abelian(B)
    for k in range(2):
        for i in range(k + 1):
            left = sol.face_map(k + 1, i) @ sol.degen_map(k, i)
            assert left == Mat.eye(F2, sol.dim(k))
            right = sol.face_map(k + 1, i + 1) @ sol.degen_map(k, i)
            assert right == Mat.eye(F2, sol.dim(k))


def test_tower_groups_match_total_complex_formula():
    for seed in (61, 62):
        rng = random.Random(seed)
        B = dk.random_bicomplex(F2, rng, 2, 1)
        sol = dk.mmc_abelian(B)
        for j in range(3):
            assert sol.pi(j) == dk.pi_mmc_abelian(B, j)
        assert sol.pi0_enumerated() == sol.pi(0).order()


def test_tower_of_point_like_module_over_integers():
    C = dk.single_complex(INT_RING, 1)
    A = dk.denormalize_cochain(C, 3).module
    M = dk.cs_from_cosimplicial(A, 3)
    sol = dk.mmc_abelian(M)
    assert sol.dim(0) == 1
    assert dk.pi_mmc_abelian(M, 0) == dk.Homology("Z", 1)
    for n in (1, 2):
        assert dk.pi_mmc_abelian(M, n).is_trivial()


def test_tower_of_zero_module_is_trivial():
    B = dk.Bicomplex(F2, {}, {}, {})
    sol = dk.mmc_abelian(B)
    assert [sol.dim(k) for k in range(3)] == [0, 0, 0]
    for n in range(3):
        assert dk.pi_mmc_abelian(B, n).is_trivial()


# ------------------------------------------------------------ one-point web


def test_point_cohomology_free_part():
    C = dk.single_complex(INT_RING, 1)
    A = dk.denormalize_cochain(C, 2).module
    assert dk.point_cohomology(A, 0) == dk.Homology("Z", 1)


def test_point_cohomology_torsion():
    d = {1: Mat(INT_RING, 1, 1, [[3]])}
    C = dk.Complex(INT_RING, {1: 1, 2: 1}, d, down=False)
    A = dk.denormalize_cochain(C, 3).module
    assert dk.point_cohomology(A, 0) == dk.Homology("Z", 0)
    assert dk.point_cohomology(A, 1) == dk.Homology("Z", 0, (3,))


def test_point_cohomology_requires_enough_levels():
    C = dk.single_complex(INT_RING, 1)
    A = dk.denormalize_cochain(C, 2).module
    with pytest.raises(AssertionError):
        dk.point_cohomology(A, 1)


# ------------------------------------------------------------ chains of pairs


def test_relative_chains_of_interval_modulo_endpoints():
    X = standard_simplex(1, 2)
    in_sub = lambda a, lab: len(set(lab)) == 1
    rel = dk.relative_chain(X, in_sub, INT_RING, 2)
    assert rel.complex.dims == {1: 1}
    assert rel.complex.homology(1) == dk.Homology("Z", 1)
    assert rel.complex.homology(0).is_trivial()
