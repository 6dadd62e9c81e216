import numpy as np
import pytest

from crossbeurling.convolution import (
    BeurlingAlgebra,
    check_conjugator,
    convolution_matrix,
    delta_function,
    hat_conjugator,
    random_function,
    twisted_convolve,
)
from crossbeurling.correspondence import (
    anti_pair_to_antirep,
    antirep_to_anti_pair,
    bimodule_correspondence,
    bimodule_pairs_from_reps,
    centralizer_extend,
    induced_pair,
    left_regular_sandwich,
    make_rep_on_algebra,
    pair_to_rep,
    random_nondegenerate_rep,
    rep_to_pair,
    retype_pair,
    verify_inequality_chain,
)
from crossbeurling.crossed import CovariantPair, RepClass, build_crossed_product, integrated_form, seminorm
from crossbeurling.dynamics import opposite_system
from crossbeurling.errors import (
    FlavorMismatch,
    HypothesisViolated,
    NoApproximateIdentity,
    NotCentralizer,
    NotCommuting,
    NotNonDegenerate,
)
from crossbeurling.spaces import PNormSpace, WeightedL1Space


def test_induced_pair_requires_right_identity(f4):
    # the column algebra has one; its opposite does not
    ind = induced_pair(f4.system, f4.weight)
    assert ind.non_degenerate
    with pytest.raises(NoApproximateIdentity):
        induced_pair(opposite_system(f4.system), f4.weight)


def test_induced_pair_blocks(f3):
    # pi~(a) acts blockwise by left multiplication with alpha_s^-1(a)
    ind = induced_pair(f3.system, f3.weight)
    alg, grp = f3.algebra, f3.group
    a = np.array([1.0, 2.0, -1.0, 0.5], dtype=complex)
    mat = np.einsum("i,imn->mn", a, ind.pi)
    d = alg.dim
    for s in grp.elements():
        block = mat[s * d : (s + 1) * d, s * d : (s + 1) * d]
        expected = alg.left_mult_matrix(f3.system.alpha[grp.inv(s)] @ a)
        assert np.allclose(block, expected, atol=1e-12)


def test_translation_norm_column_sums(f3):
    # |Lambda_r| = max_s w(rs)/w(s), computed from the scalar-block fast path
    ind = induced_pair(f3.system, f3.weight)
    w = f3.weight
    grp = f3.group
    for r in grp.elements():
        nb = ind.space.op_norm_bounds(ind.u[r])
        expected = max(w[grp.mul(r, s)] / w[s] for s in grp.elements())
        assert nb.expect_exact() == pytest.approx(expected, rel=1e-12)
        assert nb.upper <= w[r] * (1 + 1e-12)


def test_pointwise_formula(f3, rng):
    ind = induced_pair(f3.system, f3.weight)
    grp, alg, sysm = f3.group, f3.algebra, f3.system
    f, h = random_function(sysm, rng), random_function(sysm, rng)
    lhs = (integrated_form(ind, f) @ h.reshape(-1)).reshape(grp.order, alg.dim)
    rhs = np.zeros_like(h)
    for s in grp.elements():
        for r in grp.elements():
            rhs[s] += alg.multiply(sysm.alpha[grp.inv(s)] @ f[r], h[grp.mul(grp.inv(r), s)])
    assert np.allclose(lhs, rhs, atol=1e-10)


def test_hat_conjugation_identity(f3, rng):
    # (T(f) check(h)) hatted back equals f * h
    ind = induced_pair(f3.system, f3.weight)
    sysm = f3.system
    for _ in range(5):
        f, h = random_function(sysm, rng), random_function(sysm, rng)
        moved = (integrated_form(ind, f) @ check_conjugator(sysm, h).reshape(-1)).reshape(h.shape)
        assert np.allclose(hat_conjugator(sysm, moved), twisted_convolve(sysm, f, h), atol=1e-10)


def test_inequality_chain_f3(f3, rng):
    fs = [random_function(f3.system, rng) for _ in range(20)]
    rep = verify_inequality_chain(f3.system, f3.weight, RepClass.of(induced_pair(f3.system, f3.weight)), fs)
    assert rep.all_ok and rep.all_conclusive
    assert rep.constants["c_alpha"] > 1


def test_inequality_chain_zero_function(f2):
    zero = np.zeros((f2.group.order, f2.algebra.dim), dtype=complex)
    rep = verify_inequality_chain(f2.system, f2.weight, RepClass.of(induced_pair(f2.system, f2.weight)), [zero])
    assert rep.all_ok


def test_inequality_chain_requires_membership(f2):
    other = RepClass.of(induced_pair(f2.system, f2.weight))
    from crossbeurling.convolution import table2_action

    lone = RepClass.of(table2_action(f2.system, 1))
    with pytest.raises(HypothesisViolated):
        verify_inequality_chain(f2.system, f2.weight, lone, [np.zeros((2, 2))])


def test_isometric_regime_f2(f2, rng):
    b = BeurlingAlgebra(f2.system, f2.weight)
    rc = RepClass.of(induced_pair(f2.system, f2.weight))
    for _ in range(20):
        f = random_function(f2.system, rng)
        assert seminorm(rc, f).expect_exact() == pytest.approx(b.norm(f), rel=1e-9)


def test_left_regular_sandwich(f2, rng):
    cp = build_crossed_product(f2.system, RepClass.of(induced_pair(f2.system, f2.weight)))
    for _ in range(5):
        res = left_regular_sandwich(cp, random_function(f2.system, rng))
        assert res["lower_ok"].ok
        assert res["embedding_ok"].conclusive   # M = 1 on unital fixtures


def test_roundtrip_induced(f2):
    cp = build_crossed_product(f2.system, RepClass.of(induced_pair(f2.system, f2.weight)))
    ind = induced_pair(f2.system, f2.weight)
    rep = pair_to_rep(cp, ind)
    assert rep.non_degenerate
    back = rep_to_pair(rep)
    assert np.allclose(back.pi, ind.pi, atol=1e-10)
    assert np.allclose(back.u, ind.u, atol=1e-10)


def test_roundtrip_scalar_hand_value(f1):
    # T(f) = f(e) - f(g); reconstruction gives pi(1) = 1, U_g = -1
    cp = build_crossed_product(f1.system, RepClass.of(induced_pair(f1.system, f1.weight)))
    pi = np.ones((1, 1, 1), dtype=complex)
    u = np.array([[[1.0]], [[-1.0]]], dtype=complex)
    pair = CovariantPair.build(f1.system, PNormSpace(1, 2), pi, u, ("m", "m"))
    rep = pair_to_rep(cp, pair)
    assert np.allclose(rep.apply_function(delta_function(f1.system, 0, [1.0])), [[1.0]])
    assert np.allclose(rep.apply_function(delta_function(f1.system, 1, [1.0])), [[-1.0]])
    back = rep_to_pair(rep)
    assert np.allclose(back.u[1], [[-1.0]])


def test_roundtrip_random_pairs(f3, rng):
    cp = build_crossed_product(f3.system, RepClass.of(induced_pair(f3.system, f3.weight)))
    for p in (1, 2, np.inf):
        rep = random_nondegenerate_rep(cp, rng, p=p)
        pair = rep_to_pair(rep)
        again = pair_to_rep(cp, pair)
        assert np.allclose(again.tensor, rep.tensor, atol=1e-8)


def test_rep_to_pair_requires_nondegenerate(f1):
    cp = build_crossed_product(f1.system, RepClass.of(induced_pair(f1.system, f1.weight)))
    tensor = np.zeros((1, 1, cp.quotient_dim), dtype=complex)
    rep = make_rep_on_algebra(cp, PNormSpace(1, 2), tensor, "rep")
    assert not rep.non_degenerate
    with pytest.raises(NotNonDegenerate):
        rep_to_pair(rep)


def test_classical_equality(f5, rng):
    # |T^U| = sup_r |U_r| / w(r) for scalar fixtures
    b = BeurlingAlgebra(f5.system, f5.weight)
    n = f5.group.order
    s = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    s_inv = np.linalg.inv(s)
    u = np.stack([s @ np.diag([np.exp(2j * np.pi * r / n), np.exp(-2j * np.pi * r / n)]) @ s_inv for r in range(n)])
    pair = CovariantPair.build(f5.system, PNormSpace(2, 2), np.eye(2, dtype=complex).reshape(1, 2, 2), u, ("m", "m"))
    rep = pair_to_rep(b, pair)
    expected = max(np.linalg.norm(u[r], 2) / f5.weight[r] for r in range(n))
    assert rep.norm_bounds().expect_exact() == pytest.approx(expected, rel=1e-9)


def test_recovered_character_bounded_by_weight(f5):
    chi = f5.character
    pi = np.ones((1, 1, 1), dtype=complex)
    u = np.array([[[chi[r]]] for r in f5.group.elements()])
    pair = CovariantPair.build(f5.system, PNormSpace(1, 2), pi, u, ("m", "m"))
    rep = pair_to_rep(BeurlingAlgebra(f5.system, f5.weight), pair)
    for r in f5.group.elements():
        val = rep.apply_function(delta_function(f5.system, r, [1.0]))[0, 0]
        assert abs(val) <= f5.weight[r] * (1 + 1e-12)


def test_correspondence_bounds_on_f2(f2, rng):
    from crossbeurling.groups import weight_unit_bound
    from crossbeurling.spaces import check_leq

    b = BeurlingAlgebra(f2.system, f2.weight)
    cp = build_crossed_product(f2.system, RepClass.of(induced_pair(f2.system, f2.weight)))
    w_e = weight_unit_bound(f2.group, f2.weight)
    for _ in range(3):
        rep0 = random_nondegenerate_rep(cp, rng, p=2)
        pair = rep_to_pair(rep0)
        rep = pair_to_rep(b, pair)
        t_norm = rep.norm_bounds()
        c_u = max(pair.u_norm_bounds(r).expect_exact() / f2.weight[r] for r in f2.group.elements())
        chk1 = check_leq(t_norm, pair.pi_norm_bounds().scaled(c_u))
        assert chk1.ok
        back = rep_to_pair(rep)
        chk2 = check_leq(back.pi_norm_bounds(), t_norm.scaled(w_e))
        assert chk2.ok
        m_bound = f2.algebra.approx_identity_bound
        for s in f2.group.elements():
            chk3 = check_leq(back.u_norm_bounds(s), t_norm.scaled(m_bound * w_e * f2.weight[s]))
            assert chk3.ok and chk3.conclusive


def test_centralizer_laws(f2, rng):
    cp = build_crossed_product(f2.system, RepClass.of(induced_pair(f2.system, f2.weight)))
    rep = pair_to_rep(cp, induced_pair(f2.system, f2.weight))
    q = cp.quotient_dim
    assert np.allclose(centralizer_extend(rep, np.eye(q)), np.eye(rep.m), atol=1e-12)
    b = rng.normal(size=q) + 1j * rng.normal(size=q)
    lam = cp.left_mult_matrix(b)
    assert np.allclose(centralizer_extend(rep, lam), rep.apply(b), atol=1e-10)
    a = rng.normal(size=q) + 1j * rng.normal(size=q)
    assert np.allclose(
        centralizer_extend(rep, lam) @ rep.apply(a), rep.apply(lam @ a), atol=1e-10
    )
    with pytest.raises(NotCentralizer):
        centralizer_extend(rep, rng.normal(size=(q, q)))


def test_anti_roundtrip(f2, rng):
    sysm = f2.system
    osys = opposite_system(sysm)
    o_ind = induced_pair(osys, f2.weight)
    anti = CovariantPair.build(sysm, o_ind.space, o_ind.pi.copy(), o_ind.u.copy(), ("a", "a"))
    b = BeurlingAlgebra(sysm, f2.weight)
    rep = anti_pair_to_antirep(b, anti)
    f, g = random_function(sysm, rng), random_function(sysm, rng)
    assert np.allclose(
        rep.apply_function(twisted_convolve(sysm, f, g)),
        rep.apply_function(g) @ rep.apply_function(f),
        atol=1e-10,
    )
    back = antirep_to_anti_pair(rep)
    assert np.allclose(back.pi, anti.pi, atol=1e-10)
    assert np.allclose(back.u, anti.u, atol=1e-10)
    with pytest.raises(FlavorMismatch):
        anti_pair_to_antirep(b, induced_pair(sysm, f2.weight))


def test_scalar_anti_pairs_coincide_with_mult(f1, rng):
    # commutative one-dimensional case: (a,a) and (m,m) agree, T sums f(r) U_r
    chi_vals = [1.0, -1.0]
    pi = np.ones((1, 1, 1), dtype=complex)
    u = np.array([[[v]] for v in chi_vals])
    pair_aa = CovariantPair.build(f1.system, PNormSpace(1, 2), pi, u, ("a", "a"))
    b = BeurlingAlgebra(f1.system, f1.weight)
    rep = anti_pair_to_antirep(b, pair_aa)
    f = random_function(f1.system, rng)
    assert np.allclose(rep.apply_function(f), [[f[0, 0] - f[1, 0]]])


def test_bimodule_roundtrip(f2):
    sysm = f2.system
    n, d = sysm.group.order, sysm.algebra.dim
    dim = n * d
    b = BeurlingAlgebra(sysm, f2.weight)
    space = WeightedL1Space(sysm.group, sysm.algebra, f2.weight)
    basis = np.eye(dim, dtype=complex)
    t_m = np.stack([convolution_matrix(sysm, basis[j].reshape(n, d), "left") for j in range(dim)], axis=-1)
    t_a = np.stack([convolution_matrix(sysm, basis[j].reshape(n, d), "right") for j in range(dim)], axis=-1)
    rep_m = make_rep_on_algebra(b, space, t_m, "rep")
    rep_a = make_rep_on_algebra(b, space, t_a, "anti_rep")
    pair_m, pair_a = bimodule_pairs_from_reps(rep_m, rep_a)
    assert pair_m.flavor == ("m", "m") and pair_a.flavor == ("a", "a")
    back_m, back_a = bimodule_correspondence(b, pair_m, b, pair_a)
    assert np.allclose(back_m.tensor, t_m, atol=1e-10)
    assert np.allclose(back_a.tensor, t_a, atol=1e-10)


def test_bimodule_commuting_enforced(f1):
    # a non-commuting pair of pairs is rejected with the offending maps named
    sysm = f1.system
    z2 = sysm.group
    L = np.zeros((2, 2, 2), dtype=complex)
    for r in range(2):
        for t in range(2):
            L[r, t, z2.mul(z2.inv(r), t)] = 1
    pi_id = np.stack([np.eye(2, dtype=complex)])
    pair_m = CovariantPair.build(sysm, PNormSpace(2, 1), pi_id, L, ("m", "m"))
    # valid (a,a) pair whose group action fails to commute with left translation
    u_bad = np.stack([np.eye(2, dtype=complex), np.diag([1.0 + 0j, -1.0])])
    pair_bad = CovariantPair.build(sysm, PNormSpace(2, 1), pi_id, u_bad, ("a", "a"))
    b = BeurlingAlgebra(sysm, f1.weight)
    with pytest.raises(NotCommuting):
        bimodule_correspondence(b, pair_m, b, pair_bad)


def test_retype_pair_targets(f2):
    from crossbeurling.convolution import table2_action

    for line, expected_target in ((1, "same"), (5, "Gop"), (9, "Aop"), (13, "both")):
        pair = table2_action(f2.system, line)
        new = retype_pair(pair, "natural")
        assert new.flavor == ("m", "m")
        assert np.allclose(new.pi, pair.pi) and np.allclose(new.u, pair.u)
    # an (m,a) pair retyped to the wrong companion fails covariance
    # (on F3 the laws are genuinely distinct)
    from crossbeurling.errors import CovarianceViolated
    from crossbeurling.fixtures import fixture

    f3 = fixture("F3")
    pair = table2_action(f3.system, 5)
    with pytest.raises(CovarianceViolated):
        retype_pair(pair, "Aop")


def test_retype_aa_roundtrip(f2):
    sysm = f2.system
    osys = opposite_system(sysm)
    o_ind = induced_pair(osys, f2.weight)
    anti = CovariantPair.build(sysm, o_ind.space, o_ind.pi.copy(), o_ind.u.copy(), ("a", "a"))
    new = retype_pair(anti, "both")
    assert new.flavor == ("m", "m")
    assert np.allclose(new.pi, o_ind.pi)


def test_pair_to_rep_rejects_kernel_violation(f1):
    # kernel of the trivial-U class is span{(1,-1)}; the sign pair does not kill it
    from crossbeurling.errors import KernelNotRespected

    pi = np.ones((1, 1, 1), dtype=complex)
    u_plus = np.array([[[1.0]], [[1.0]]], dtype=complex)
    u_minus = np.array([[[1.0]], [[-1.0]]], dtype=complex)
    trivial = CovariantPair.build(f1.system, PNormSpace(1, 2), pi, u_plus, ("m", "m"))
    signs = CovariantPair.build(f1.system, PNormSpace(1, 2), pi, u_minus, ("m", "m"))
    cp = build_crossed_product(f1.system, RepClass.of(trivial))
    with pytest.raises(KernelNotRespected):
        pair_to_rep(cp, signs)


def test_two_dim_anti_pair_over_s3(f3):
    # transpose representation: pi(a) = a^T, U_r = rho_r^T is a genuine (a,a)
    # pair for the conjugation system, and its anti-roundtrip is exact
    from crossbeurling.fixtures import standard_rep_s3

    rho = standard_rep_s3()
    pi = np.stack([np.eye(4, dtype=complex)[k].reshape(2, 2).T for k in range(4)])
    u = np.stack([rho[r].T for r in f3.group.elements()])
    pair = CovariantPair.build(f3.system, PNormSpace(2, 2), pi, u, ("a", "a"))
    assert pair.non_degenerate and pair.pi_properties == frozenset({"a"})
    b = BeurlingAlgebra(f3.system, f3.weight)
    rep = anti_pair_to_antirep(b, pair)
    rng = np.random.default_rng(42)
    f, g = random_function(f3.system, rng), random_function(f3.system, rng)
    lhs = rep.apply_function(twisted_convolve(f3.system, f, g))
    assert np.allclose(lhs, rep.apply_function(g) @ rep.apply_function(f), atol=1e-9)
    back = antirep_to_anti_pair(rep)
    assert np.allclose(back.pi, pair.pi, atol=1e-9)
    assert np.allclose(back.u, pair.u, atol=1e-9)


def test_group_bimodule_translations():
    # left and right translations on scalar functions over S3 commute and
    # yield a commuting (representation, anti-representation) of the Beurling algebra
    from crossbeurling.algebras import scalars
    from crossbeurling.dynamics import trivial_action
    from crossbeurling.groups import symmetric_group, trivial_weight

    s3 = symmetric_group(3)
    sysm = trivial_action(scalars(), s3)
    w = trivial_weight(s3)
    n = s3.order
    left = np.zeros((n, n, n), dtype=complex)
    right = np.zeros((n, n, n), dtype=complex)
    for r in s3.elements():
        for t in s3.elements():
            left[r, t, s3.mul(s3.inv(r), t)] = 1    # (L_r h)(t) = h(r^-1 t)
            right[r, t, s3.mul(t, s3.inv(r))] = 1   # (V_r h)(t) = h(t r^-1), anti
    pi_id = np.stack([np.eye(n, dtype=complex)])
    pair_m = CovariantPair.build(sysm, PNormSpace(n, 1), pi_id, left, ("m", "m"))
    pair_a = CovariantPair.build(sysm, PNormSpace(n, 1), pi_id, right, ("a", "a"))
    b = BeurlingAlgebra(sysm, w)
    rep_m, rep_a = bimodule_correspondence(b, pair_m, b, pair_a)
    # recover the pairs uniquely
    back_m, back_a = bimodule_pairs_from_reps(rep_m, rep_a)
    assert np.allclose(back_m.u, left, atol=1e-10)
    assert np.allclose(back_a.u, right, atol=1e-10)


def test_commuting_pairs_iff_integrated_forms_commute(f1, rng):
    # forward: commuting pairs have commuting integrated forms on all inputs;
    # reverse: non-commuting pairs exhibit non-commuting integrated forms
    z2 = f1.group
    L = np.zeros((2, 2, 2), dtype=complex)
    V = np.zeros((2, 2, 2), dtype=complex)
    for r in range(2):
        for t in range(2):
            L[r, t, z2.mul(z2.inv(r), t)] = 1
            V[r, t, z2.mul(t, r)] = 1
    pi_id = np.stack([np.eye(2, dtype=complex)])
    from crossbeurling.dynamics import opposite_system as _op

    pair1 = CovariantPair.build(f1.system, PNormSpace(2, 1), pi_id, L, ("m", "m"))
    pair2 = CovariantPair.build(_op(f1.system), PNormSpace(2, 1), pi_id, V, ("m", "m"))
    for _ in range(10):
        f = random_function(f1.system, rng)
        g = random_function(pair2.system, rng)
        a = integrated_form(pair1, f)
        c = integrated_form(pair2, g)
        assert np.allclose(a @ c, c @ a, atol=1e-12)
    # a pair that does not commute with pair1, witnessed on delta functions
    u_bad = np.stack([np.eye(2, dtype=complex), np.diag([1.0 + 0j, -1.0])])
    pair_bad = CovariantPair.build(f1.system, PNormSpace(2, 1), pi_id, u_bad, ("m", "m"))
    witnessed = False
    for r in range(2):
        for s in range(2):
            a = integrated_form(pair1, delta_function(f1.system, r, [1.0]))
            c = integrated_form(pair_bad, delta_function(f1.system, s, [1.0]))
            if not np.allclose(a @ c, c @ a, atol=1e-12):
                witnessed = True
    assert witnessed


def test_canonical_group_maps_are_centralizers(f2):
    # T~(i_G(r)) recovers U^T_r, the group half of the reconstruction
    cp = build_crossed_product(f2.system, RepClass.of(induced_pair(f2.system, f2.weight)))
    from crossbeurling.crossed import canonical_maps

    _, ig = canonical_maps(cp)
    rep = pair_to_rep(cp, induced_pair(f2.system, f2.weight))
    back = rep_to_pair(rep)
    for r in f2.group.elements():
        assert np.allclose(centralizer_extend(rep, ig[r]), back.u[r], atol=1e-10)
