"""Cup-product carriers, their Maurer-Cartan sets, deformation towers,
Borel constructions, doubly graded diagonals, and graded-ring kernels."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mcf import dold_kan as dk
from mcf import simplicial_core as sc
from mcf.exact import GF, QQ, Mat
from mcf.quasi_comonoid import (
    FiniteCosimplicialRing,
    FunctionRing,
    GroupAlgebra,
    QuasiComonoid,
    TowerFiber,
    collapsed_monoid_qm,
    constant_ring_cosimplicial,
    cup_product,
    ddel_finite,
    diag_derive,
    diag_gqm,
    diag_nerve_classes,
    diag_nerve_normal_forms,
    diag_recover,
    diagonal_bi_qm,
    diagonal_qm,
    discrete_sqm,
    envelope_qm,
    envelope_sqm,
    free_graded_ring,
    from_cosimplicial_ring,
    function_module,
    function_ring_cosimplicial,
    group_algebra_cosimplicial,
    hom_from_point,
    interval_power_qm,
    mc_diag,
    mc_diag_nerve,
    mc_nerve_classes,
    mc_nerve_groupoid,
    mc_set,
    mmc_level,
    mmc_sset,
    nerve_qm,
    omega_bimodule,
    one_object_abelian_gqbm,
    one_object_abelian_gqm,
    point_qm,
    product_gqbm,
    random_cosimplicial_ring,
    ring_mc_set,
    sset_components,
    tensor_diagonal_module,
    unit_graded_ring,
    validate,
    xi_qm,
)
from mcf.simplicial_core import TruncationError

F2 = GF(2)
F3 = GF(3)
F5 = GF(5)

# Frozen output of tests/oracles/oracle_quasi_comonoid.py (brute force,
# independent representations; run that script to regenerate).
ORACLE = {
    "iota3_mc": 3,
    "interval_ring_mc": [(1, 0, 1), (1, 1, 1)],
    "sphere_gpd_pairs": 2,
    "sphere_gpd_classes": 2,
    "diag_mc": 6,
    "diag_pairs": 6,
    "circle_mc": 2,
    "circle_pi0": 2,
}


# ----------------------------------------------------------------- fixtures


def interval_ring():
    return function_ring_cosimplicial(2, sc.standard_simplex(1, 3))


def sphere_groupoid():
    sph = sc.quotient_collapse(sc.standard_simplex(2, 3),
                               lambda n, lab: len(set(lab)) < 3)
    return one_object_abelian_gqm(function_module(F2, sph))


def single_tensor_square(field):
    A = dk.denormalize_cochain(dk.single_complex(field, 1), 3).module
    return A, one_object_abelian_gqbm(A, A)


def killed_edge_module():
    one = Mat(F2, 1, 1, [[1]])
    B = dk.Bicomplex(F2, {(0, 0): 1, (1, 0): 1}, {(0, 0): one}, {})
    return dk.cs_module_from_bicomplex(B, 3, 2)


def cyclic_collapsed(k, trunc=4):
    return collapsed_monoid_qm(range(k), lambda a, b: (a + b) % k, 0,
                               trunc=trunc)


# -------------------------------------------------------------- set carrier


def test_duplicate_drop_carrier_validates():
    rep = validate(diagonal_qm([0, 1, 2]))
    assert rep.ok and rep.checks > 0 and not rep.failures


def test_point_interval_power_and_collapsed_carriers_validate():
    assert validate(point_qm()).ok
    assert validate(interval_power_qm()).ok
    assert validate(cyclic_collapsed(3)).ok


def test_broken_coface_is_reported_with_witnesses():
    X = diagonal_qm([0, 1, 2], trunc=3)
    bad = QuasiComonoid(3, X.levels,
                        lambda n, i, x: (0, 0) if n == 1 else X.d(n, i, x),
                        X.s, X.prod, X.unit)
    rep = validate(bad)
    assert not rep.ok
    hit = {f.axiom for f in rep.failures}
    assert "(3)" in hit
    assert all(f.witness for f in rep.failures)


def test_level_access_beyond_truncation_raises():
    E = diagonal_qm([0, 1], trunc=3)
    with pytest.raises(TruncationError):
        E.level(4)
    with pytest.raises(ValueError):
        E.level(-1)


def test_mc_of_point_is_a_singleton():
    assert len(mc_set(point_qm())) == 1


def test_mc_of_duplicate_drop_carrier_recovers_the_set():
    S = [10, 20, 30]
    sols = mc_set(diagonal_qm(S))
    assert len(sols) == ORACLE["iota3_mc"]
    assert sorted(sols) == [(x,) for x in S]


def test_mc_of_collapsed_monoid_is_the_unit():
    Q = cyclic_collapsed(3)
    assert mc_set(Q) == [0]


def test_point_ladders_match_mc_solutions():
    X = diagonal_qm([0, 1, 2], trunc=4)
    assert len(hom_from_point(X)) == len(mc_set(X)) == 3
    E = from_cosimplicial_ring(interval_ring())
    assert len(hom_from_point(E)) == len(mc_set(E)) == 2


@settings(deadline=None, max_examples=15)
@given(st.integers(min_value=1, max_value=5))
def test_duplicate_drop_carrier_mc_counts_elements(n):
    S = list(range(n))
    X = diagonal_qm(S, trunc=3)
    assert validate(X).ok
    assert len(mc_set(X)) == n


# ------------------------------------------------------- cosimplicial rings


def test_constant_ring_has_only_the_trivial_solution():
    for p in (2, 3):
        R = constant_ring_cosimplicial(p)
        rng = random.Random(3)
        assert R.validate(rng).ok
        sols = ring_mc_set(R)
        assert sols == [R.rings[1].one()]


def test_interval_function_ring_two_descriptions_agree():
    R = interval_ring()
    assert sorted(ring_mc_set(R)) == ORACLE["interval_ring_mc"]
    E = from_cosimplicial_ring(R)
    assert sorted(mc_set(E)) == ORACLE["interval_ring_mc"]


def test_cup_product_agrees_with_the_literal_lift_formula():
    R = function_ring_cosimplicial(2, sc.standard_simplex(2, 3))
    rng = random.Random(11)
    for _ in range(40):
        m, n = rng.randrange(0, 2), rng.randrange(0, 2)
        a = rng.choice(R.rings[m].elements())
        b = rng.choice(R.rings[n].elements())
        x = a
        for t in range(n):
            x = R.coface(m + t, m + 1 + t, x)
        y = b
        for t in range(m):
            y = R.coface(n + t, 0, y)
        assert R.rings[m + n].mul(x, y) == cup_product(R, m, n, a, b)


def test_random_rings_validate_and_the_two_descriptions_agree():
    for p in (2, 3):
        for seed in range(3):
            rng = random.Random(1000 * p + seed)
            R = random_cosimplicial_ring(p, rng)
            assert R.validate(rng).ok
            E = from_cosimplicial_ring(R)
            assert sorted(mc_set(E)) == sorted(ring_mc_set(R)), (p, seed)


def test_group_algebra_levels_are_rings():
    A = GroupAlgebra(2, 2)
    assert len(A.elements()) == 16
    x = A.random_element(random.Random(1))
    one = A.one()
    assert A.mul(one, x) == x == A.mul(x, one)
    M = dk.denormalize_cochain(dk.single_complex(F2, 1), 2).module
    R = group_algebra_cosimplicial(M)
    assert R.validate(random.Random(2)).ok


def test_nonunital_carrier_is_rejected():
    class NoUnit:
        def one(self):
            return None

        def zero(self):
            return (0,)

        def elements(self):
            return [(0,), (1,)]

        def mul(self, a, b):
            return (0,)

        def random_element(self, rng):
            return (0,)

    broken = FiniteCosimplicialRing(2, [NoUnit()] * 3,
                                    lambda n, i, x: x, lambda n, i, x: x)
    with pytest.raises(ValueError):
        from_cosimplicial_ring(broken)


def test_additive_envelope_of_circle_functions():
    M = function_module(F2, sc.circle_sset(3))
    E = envelope_qm(M)
    assert validate(E).ok
    assert len(mc_set(E)) == ORACLE["circle_mc"]


# ------------------------------------------------------- deformation towers


def test_interval_power_tower_is_tautological():
    X = xi_qm(3, 2)
    assert validate(X).ok
    for k in range(3):
        assert len(mmc_level(X, k)) == 1


def test_towers_over_a_discrete_carrier_are_constant():
    E = discrete_sqm(from_cosimplicial_ring(interval_ring()), strunc=2)
    base = len(mc_set(from_cosimplicial_ring(interval_ring())))
    for k in range(3):
        assert len(mmc_level(E, k)) == base


def test_collapsed_group_towers_are_pinned_to_the_unit():
    E = discrete_sqm(cyclic_collapsed(3), strunc=2)
    for k in range(3):
        towers = mmc_level(E, k)
        assert len(towers) == 1
        assert all(isinstance(f, TowerFiber) or hasattr(f, "key")
                   for f in towers[0])


def test_tower_counts_match_the_linear_solution_spaces():
    one = Mat(F2, 1, 1, [[1]])
    fixtures = [
        dk.Bicomplex(F2, {(0, 0): 1, (1, 0): 1}, {(0, 0): one}, {}),
        dk.Bicomplex(F2, {(0, 1): 1}, {}, {}),
        dk.Bicomplex(F2, {(1, 0): 1, (0, 1): 1}, {}, {}),
    ]
    for B in fixtures:
        M = dk.cs_module_from_bicomplex(B, 3, 2)
        E = envelope_sqm(M)
        sol = dk.mmc_abelian(M)
        got = [len(mmc_level(E, k)) for k in range(3)]
        assert got == [sol.solution_count(k) for k in range(3)]


def test_tower_counts_on_a_genuinely_bigraded_fixture():
    # towers over the square-degree generator; level 2 is exact but slow,
    # so only the first two stages are enumerated set-theoretically
    B = dk.Bicomplex(F2, {(1, 1): 1}, {}, {})
    M = dk.cs_module_from_bicomplex(B, 3, 2)
    E = envelope_sqm(M)
    sol = dk.mmc_abelian(M)
    assert [len(mmc_level(E, k)) for k in range(2)] == \
        [sol.solution_count(k) for k in range(2)] == [1, 2]


def test_tower_levels_assemble_into_a_simplicial_set():
    E = envelope_sqm(killed_edge_module())
    W = mmc_sset(E, 2)
    assert [W.size(k) for k in range(3)] == [2, 2, 2]


def test_tower_level_beyond_the_simplicial_truncation_raises():
    E = discrete_sqm(cyclic_collapsed(2), strunc=2)
    with pytest.raises(TruncationError):
        mmc_level(E, 3)


def test_oversized_envelope_levels_are_rejected():
    with pytest.raises(ValueError):
        envelope_sqm(killed_edge_module(), cap=8)


# -------------------------------------------------------- Borel construction


def test_borel_of_a_collapsed_group_matches_the_nerve():
    for k in (2, 3):
        E = discrete_sqm(cyclic_collapsed(k), strunc=3)
        D = ddel_finite(E, 3)
        N = sc.nerve(sc.cyclic_group_category(k), 3)
        assert [D.size(n) for n in range(4)] == \
            [N.size(n) for n in range(4)] == [k ** n for n in range(4)]


def test_borel_of_the_two_element_group_is_isomorphic_to_the_nerve():
    E = discrete_sqm(cyclic_collapsed(2), strunc=3)
    D = ddel_finite(E, 3)
    C = sc.cyclic_group_category(2)
    N = sc.nerve(C, 3)
    midx = {lab: i for i, lab in enumerate(C.mor_labels)}

    def fn(n, lab):
        if n == 0:
            return ("o", 0)
        return ("m",) + tuple(midx[g] for g in lab[1])

    f = sc.map_from_labels(D, N, fn, check=True)
    for n in range(4):
        assert len({f(n, k) for k in range(D.size(n))}) == N.size(n)


def test_borel_components_match_the_abelian_homotopy_group():
    M = killed_edge_module()
    D = ddel_finite(envelope_sqm(M), 2)
    assert [D.size(n) for n in range(3)] == [2, 4, 8]
    assert sset_components(D) == dk.pi_ddel_abelian(M, 0).order() == 1


def test_borel_components_of_the_circle_envelope():
    M = dk.cs_from_cosimplicial(function_module(F2, sc.circle_sset(3)), 2)
    D = ddel_finite(envelope_sqm(M), 2)
    assert sset_components(D) == ORACLE["circle_pi0"]
    assert dk.pi_ddel_abelian(M, 0).order() == ORACLE["circle_pi0"]


def test_borel_over_a_trivial_bottom_grade_reduces_to_the_towers():
    B = dk.Bicomplex(F2, {(1, 0): 1}, {}, {})
    M = dk.cs_module_from_bicomplex(B, 3, 2)
    E = envelope_sqm(M)
    D = ddel_finite(E, 2)
    assert [D.size(n) for n in range(3)] == \
        [len(mmc_level(E, n)) for n in range(3)]


def test_borel_requires_a_group_at_the_bottom_grade():
    E = discrete_sqm(from_cosimplicial_ring(interval_ring()), strunc=2)
    with pytest.raises(ValueError):
        ddel_finite(E, 2)


# --------------------------------------------------- groupoid-valued carrier


def test_groupoid_carrier_of_the_collapsed_two_simplex_validates():
    assert validate(sphere_groupoid()).ok


def test_sphere_pairs_and_classes_match_the_frozen_enumeration():
    Q = sphere_groupoid()
    pairs = mc_nerve_groupoid(Q)
    classes = mc_nerve_classes(Q)
    assert len(pairs) == ORACLE["sphere_gpd_pairs"]
    assert len(classes) == ORACLE["sphere_gpd_classes"]
    # second description of the same count: the degree-two cohomology of
    # the carrier (shifted index, as in dold_kan.point_cohomology)
    sph = sc.quotient_collapse(sc.standard_simplex(2, 3),
                               lambda n, lab: len(set(lab)) < 3)
    assert dk.point_cohomology(function_module(F2, sph), 1).order() == 2


def test_nerve_carrier_towers_restrict_to_the_pair_enumeration():
    Q = sphere_groupoid()
    pairs = mc_nerve_groupoid(Q)
    towers = mmc_level(nerve_qm(Q, strunc=3), 0)
    assert len(towers) == len(pairs)


# ------------------------------------------------------------------ diagonal


def test_two_set_diagonal_is_bijective():
    D = diagonal_bi_qm(list(range(2)), list(range(3)), trunc=4)
    assert validate(D).ok
    res = mc_diag(D)
    assert len(res.mc) == ORACLE["diag_mc"]
    assert len(res.pairs) == ORACLE["diag_pairs"]
    assert res.bijective


def test_point_diagonal_is_a_singleton():
    res = mc_diag(diagonal_bi_qm([0], [0], trunc=4))
    assert len(res.mc) == len(res.pairs) == 1 and res.bijective


def test_tensor_square_carrier_validates():
    _, G = single_tensor_square(F2)
    rep = validate(G)
    assert rep.ok and rep.checks > 0


def test_five_part_tuples_biject_with_diagonal_solutions():
    _, G = single_tensor_square(F2)
    tuples = mc_diag_nerve(G)
    pairs = mc_nerve_groupoid(diag_gqm(G))
    assert len(tuples) == len(pairs) == 4
    recovered = [diag_recover(G, t) for t in tuples]
    assert all(r in pairs for r in recovered)
    assert sorted(recovered) == sorted(pairs)
    for t in tuples:
        assert diag_derive(G, *diag_recover(G, t)) == t
    for x, alpha in pairs:
        assert diag_recover(G, diag_derive(G, x, alpha)) == (x, alpha)


def test_five_part_tuple_round_trip_sees_nontrivial_turning_arrows():
    # odd characteristic keeps orientation signs honest; two thirds of the
    # tuples have distinct comparison cells
    _, G = single_tensor_square(F3)
    tuples = mc_diag_nerve(G)
    assert len(tuples) == 9
    assert sum(1 for (x, s, t, a, b) in tuples if a != b) == 6
    for t in tuples:
        assert diag_derive(G, *diag_recover(G, t)) == t


def test_tuple_classes_match_diagonal_classes():
    _, G = single_tensor_square(F2)
    assert len(diag_nerve_normal_forms(G)) == 2
    assert len(diag_nerve_classes(G)) == 2
    assert len(mc_nerve_classes(diag_gqm(G))) == 2


def test_product_carrier_has_no_mixed_data():
    A = dk.denormalize_cochain(dk.single_complex(F2, 1), 3).module
    H = one_object_abelian_gqm(A)
    tuples = mc_diag_nerve(product_gqbm(H, H))
    assert len(tuples) == 1
    assert all(a == b for (x, s, t, a, b) in tuples)


def test_levelwise_tensor_module_gives_the_same_diagonal():
    A, G = single_tensor_square(F2)
    direct = mc_nerve_groupoid(one_object_abelian_gqm(
        tensor_diagonal_module(A, A)))
    via_diag = mc_nerve_groupoid(diag_gqm(G))
    assert sorted(direct) == sorted(via_diag)


# --------------------------------------------------- graded multiplication


def test_unit_graded_ring_has_no_kernel():
    K = omega_bimodule(unit_graded_ring(F2, 4))
    assert all(d == 0 for d in K.dims)


def test_free_ring_kernel_ranks_match_the_denormalization():
    for F in (F2, F5, QQ):
        K = omega_bimodule(free_graded_ring(F, 5))
        dn = dk.denormalize_cochain(dk.single_complex(F, 1), 5).module
        assert K.dims == dn.dims == [0, 1, 2, 3, 4, 5]


def test_difference_map_is_a_derivation():
    F = F5
    R = free_graded_ring(F, 5)
    K = omega_bimodule(R)
    rng = random.Random(7)

    def outer(u, v):
        return [F.mul(x, y) for x in u for y in v]

    for _ in range(30):
        m, n = rng.randrange(1, 3), rng.randrange(1, 3)
        a = [F.coerce(rng.randrange(5)) for _ in range(R.dims[m])]
        b = [F.coerce(rng.randrange(5)) for _ in range(R.dims[n])]
        lhs = K.derivation[m + n].apply(R.multiply(m, n, a, b))
        da, db = K.derivation[m].apply(a), K.derivation[n].apply(b)
        rhs = [F.add(x, y) for x, y in
               zip(K.left[(m, n)].apply(outer(a, db)),
                   K.right[(n, m)].apply(outer(b, da)))]
        assert lhs == rhs


def test_difference_map_kills_the_unit():
    R = free_graded_ring(F2, 3)
    K = omega_bimodule(R)
    assert all(F2.is_zero(c) for c in K.derivation[0].apply(R.unit))
