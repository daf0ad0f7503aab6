from fractions import Fraction

import pytest

from finfty.algebras import (
    AlgebraSpec,
    GElement,
    LInfinityMorphism,
    LInfinityStructure,
    SparseTensor,
    apply_d,
    bracket_ext,
    bracket_from_bv,
    dot_ext,
    eval_multilinear,
    operator_order,
    pushforward,
    validate_dg,
    validate_dlie,
    validate_linf,
    validate_linf_morphism,
)
from finfty.graded import CoordinateRing, GradedBasis
from finfty.words import linf_word_defect
from finfty.conventions import odd_op_markers, extension_sign

F = Fraction


# --- small specs used throughout -------------------------------------------

def heisenberg():
    # x, y, z odd of degree 1 with [x*y] = z, d = 0
    basis = GradedBasis(["x", "y", "z"], [1, 1, 1])
    return AlgebraSpec(basis, bracket=[(2, (0, 1), 1)])


def sl2_like():
    basis = GradedBasis(["e", "f", "h"], [1, 1, 1])
    return AlgebraSpec(basis, bracket=[
        (0, (2, 0), 2),    # [h*e] = 2e
        (1, (2, 1), -2),   # [h*f] = -2f
        (2, (0, 1), 1),    # [e*f] = h
    ])


def exterior2():
    # unital exterior algebra on two odd generators
    basis = GradedBasis(["1", "th1", "th2", "th12"], [0, 1, 1, 2])
    dot = [(0, (0, 0), 1),
           (1, (0, 1), 1), (1, (1, 0), 1),
           (2, (0, 2), 1), (2, (2, 0), 1),
           (3, (0, 3), 1), (3, (3, 0), 1),
           (3, (1, 2), 1), (3, (2, 1), -1)]
    return AlgebraSpec(basis, dot=dot, unit_index=0)


def rank1_contraction():
    # unital model with one odd generator E, E.E = 0, bv = contraction E -> 1
    basis = GradedBasis(["1", "E"], [0, 1])
    dot = [(0, (0, 0), 1), (1, (0, 1), 1), (1, (1, 0), 1)]
    return AlgebraSpec(basis, dot=dot, unit_index=0, bv=[(0, (1,), 1)])


# --- SparseTensor ----------------------------------------------------------

def test_odd_symmetry_reconstruction():
    t = heisenberg().bracket
    assert t.get(2, (0, 1)) == 1
    # [y*x] = -(-1)^{(y+1)(x+1)} [x*y] = -[x*y] for two odds
    assert t.get(2, (1, 0)) == -1
    assert t.get(0, (0, 1)) == 0


def test_redundant_entries_checked():
    basis = GradedBasis(["x", "y", "z"], [1, 1, 1])
    AlgebraSpec(basis, bracket=[(2, (0, 1), 1), (2, (1, 0), -1)])  # fine
    with pytest.raises(ValueError, match="inconsistent"):
        AlgebraSpec(basis, bracket=[(2, (0, 1), 1), (2, (1, 0), 1)])


def test_odd_diagonal_must_vanish():
    basis = GradedBasis(["x", "w"], [1, 1])
    with pytest.raises(ValueError, match="vanish"):
        SparseTensor(2, [(1, (0, 0), 1)], parities=basis.parities,
                     symmetry="odd")
    # even diagonal is allowed: [h*h] = w with h, w even
    basis2 = GradedBasis(["h", "w"], [0, -1])
    t = SparseTensor(2, [(1, (0, 0), 1)], parities=basis2.parities,
                     symmetry="odd")
    assert t.get(1, (0, 0)) == 1


def test_degree_shift_enforced():
    basis = GradedBasis(["x", "y", "z"], [1, 1, 2])
    with pytest.raises(ValueError, match="degree"):
        AlgebraSpec(basis, bracket=[(2, (0, 1), 1)])  # needs degree 1, has 2
    with pytest.raises(ValueError, match="degree"):
        AlgebraSpec(basis, differential=[(0, (2,), 1)])


# --- validators ------------------------------------------------------------

def test_validate_dlie_abelian():
    basis = GradedBasis(["a", "b"], [0, 1])
    assert validate_dlie(AlgebraSpec(basis)).ok


def test_validate_dlie_heisenberg_and_sl2():
    assert validate_dlie(heisenberg()).ok
    assert validate_dlie(sl2_like()).ok


def test_validate_dlie_jacobi_violation():
    spec = sl2_like()
    # [h*e] = 2e, [h*f] = -3f, [e*f] = h: Jacobi on (h,e,f) leaves -h
    bad = AlgebraSpec(spec.basis, bracket=[
        (0, (2, 0), 2), (1, (2, 1), -3), (2, (0, 1), 1)])
    rep = validate_dlie(bad)
    assert not rep.ok
    locs = [v[1] for v in rep.violations("odd_jacobi")]
    assert any(set(l) <= {"e", "f", "h"} for l in locs)


def test_validate_dlie_d_squared():
    basis = GradedBasis(["a", "b", "c"], [0, 1, 2])
    spec = AlgebraSpec(basis, differential=[(1, (0,), 1), (2, (1,), 1)])
    rep = validate_dlie(spec)
    assert rep.violations("d_squared")
    assert rep.violations("d_squared")[0][1] == ("a",)


def test_validate_dlie_leibniz():
    # d w0 = z, [x*y] = z: Leibniz holds (d z = 0, [w0 * -] = 0)
    basis = GradedBasis(["w0", "x", "y", "z"], [0, 1, 1, 1])
    spec = AlgebraSpec(basis, differential=[(3, (0,), 1)],
                       bracket=[(3, (1, 2), 1)])
    assert validate_dlie(spec).ok


def test_validate_dg_exterior():
    rep = validate_dg(exterior2())
    assert rep.ok
    assert not rep.infos("commutativity")   # graded commutative


def test_validate_dg_unit_violation():
    basis = GradedBasis(["1", "a"], [0, 1])
    dot = [(0, (0, 0), 1), (1, (0, 1), 1), (1, (1, 0), 1)]
    spec = AlgebraSpec(basis, dot=dot, unit_index=0,
                       bracket=[(0, (0, 1), 1)])   # [1 * a] = 1, illegal
    rep = validate_dg(spec)
    assert rep.violations("unit_bracket")


def test_validate_dg_needs_dot():
    with pytest.raises(ValueError, match="dot"):
        validate_dg(heisenberg())


# --- operator order and the derived bracket --------------------------------

def test_operator_order_zero_and_left_mult():
    spec = exterior2()
    zero = SparseTensor(1, None)
    assert operator_order(zero, spec, -1)
    # left multiplication by th1 as a degree-+1... use unary tensor directly
    l1 = SparseTensor(1, [(1, (0,), 1), (3, (2,), 1)])  # th1.1, th1.th2
    assert operator_order(l1, spec, 0)
    assert not operator_order(l1, spec, -1)


def test_operator_order_derivation_is_first_order():
    spec = exterior2()
    # contraction along th1: th1 -> 1, th12 -> th2 (an odd derivation)
    d1 = SparseTensor(1, [(0, (1,), 1), (2, (3,), 1)])
    assert operator_order(d1, spec, 1)
    assert not operator_order(d1, spec, 0)


def test_operator_order_second_order():
    spec = exterior2()
    # double contraction th12 -> 1 is second order but not first
    con = SparseTensor(1, [(0, (3,), 1)])
    assert not operator_order(con, spec, 1)
    assert operator_order(con, spec, 2)


def test_bracket_from_bv_rank1_contraction():
    spec = rank1_contraction()
    assert operator_order(spec.bv, spec, 2)
    # the derived bracket of a rank-one contraction vanishes identically
    assert bracket_from_bv(spec).is_zero()


def test_bracket_from_bv_zero():
    spec = exterior2()
    withbv = AlgebraSpec(spec.basis, dot=spec.dot, unit_index=0,
                         bv=SparseTensor(1, None))
    assert bracket_from_bv(withbv).is_zero()


def test_bracket_from_bv_preconditions():
    basis = GradedBasis(["1", "a", "b"], [0, 2, 1])
    dot = [(0, (0, 0), 1), (1, (0, 1), 1), (1, (1, 0), 1),
           (2, (0, 2), 1), (2, (2, 0), 1)]
    bad = AlgebraSpec(basis, dot=dot, unit_index=0,
                      bv=[(2, (1,), 1), (0, (2,), 1)])   # bv^2(a) = 1
    with pytest.raises(ValueError, match="bv o bv"):
        bracket_from_bv(bad)


# --- L-infinity structures -------------------------------------------------

def test_linf_from_dlie_valid():
    s = LInfinityStructure.from_spec(heisenberg())
    assert validate_linf(s, 3).ok
    s2 = LInfinityStructure.from_spec(sl2_like())
    assert validate_linf(s2, 4).ok


def test_linf_detects_d_squared():
    basis = GradedBasis(["a", "b", "c"], [0, 1, 2])
    s = LInfinityStructure(basis, {1: [(1, (0,), 1), (2, (1,), 1)]})
    rep = validate_linf(s, 2)
    assert rep.violations()
    assert rep.violations()[0][1][0] == 1   # the n=1 identity


def test_linf_detects_jacobi():
    basis = GradedBasis(["e", "f", "h"], [1, 1, 1])
    s = LInfinityStructure(basis, {2: [(0, (2, 0), 2), (1, (2, 1), -3),
                                       (2, (0, 1), 1)]})
    rep = validate_linf(s, 3)
    assert any(v[1][0] == 3 for v in rep.violations())


def test_linf_words_route_agrees():
    # dual route: the coderivation square vanishes exactly where the
    # direct identities do
    for spec in (heisenberg(), sl2_like()):
        s = LInfinityStructure.from_spec(spec)
        for n in range(1, 5):
            from finfty.algebras import _nondecreasing_tuples, \
                linf_identity_residual
            for tpl in _nondecreasing_tuples(spec.basis.dim, n):
                direct = linf_identity_residual(s, tpl)
                via_words = linf_word_defect(s, tpl)
                assert (not direct) == (not via_words)
    basis = GradedBasis(["a", "b", "c"], [0, 1, 2])
    bad = LInfinityStructure(basis, {1: [(1, (0,), 1), (2, (1,), 1)]})
    assert linf_word_defect(bad, (0,))


def test_linf_morphism_identity():
    s = LInfinityStructure.from_spec(heisenberg())
    F = LInfinityMorphism.identity(s.host)
    assert validate_linf_morphism(F, s, s, 3).ok


def test_linf_morphism_chain_but_not_lie():
    s = LInfinityStructure.from_spec(heisenberg())
    F = LInfinityMorphism(s.host, s.host,
                          {1: [(0, (0,), 1), (1, (1,), 1), (2, (2,), 2)]})
    rep = validate_linf_morphism(F, s, s, 2)
    assert any(v[1][0] == 2 for v in rep.violations())


# --- ring-extended operations ---------------------------------------------

def test_markers_and_extension_signs():
    assert odd_op_markers(1) == (1,)
    assert odd_op_markers(2) == (0, 1)
    assert odd_op_markers(3) == (1, 0, 1)
    assert odd_op_markers(4) == (0, 1, 0, 1)
    # d(fu) = (-1)^f f du
    assert extension_sign([1], [0], odd_op_markers(1)) == -1
    assert extension_sign([0], [1], odd_op_markers(1)) == 1
    # [fu*gv] = (-1)^{g(u+1)} fg [u*v]
    assert extension_sign([0, 1], [0, 0], odd_op_markers(2)) == -1
    assert extension_sign([0, 1], [1, 0], odd_op_markers(2)) == 1
    # even binary: (fu)(gv) = (-1)^{gu} fg (uv)
    assert extension_sign([0, 1], [1, 1], None) == -1
    assert extension_sign([0, 1], [0, 1], None) == 1


def test_bracket_ext_heisenberg():
    spec = heisenberg()
    ring = CoordinateRing.dual_to(spec.basis, truncation=4)
    gamma = GElement(ring, spec.basis, {i: ring.gen(i) for i in range(3)})
    sq = bracket_ext(spec, gamma, gamma)
    # [Gamma*Gamma] = 2 t_x t_y (x) z
    assert sq.component(2) == 2 * (ring.gen(0) * ring.gen(1))
    assert sq.component(0).is_zero() and sq.component(1).is_zero()


def test_apply_d_signs():
    basis = GradedBasis(["w0", "x", "z"], [0, 1, 1])
    spec = AlgebraSpec(basis, differential=[(2, (0,), 1)])
    ring = CoordinateRing.dual_to(basis, truncation=3)
    even_coeff = GElement(ring, basis, {0: ring.gen(0)})   # t_w0 even
    assert apply_d(spec, even_coeff).component(2) == ring.gen(0)
    odd_coeff = GElement(ring, basis, {0: ring.gen(1)})    # t_x odd
    assert apply_d(spec, odd_coeff).component(2) == -ring.gen(1)


def test_dot_ext_sign():
    spec = exterior2()
    ring = CoordinateRing.dual_to(spec.basis, truncation=3)
    # (t_th1 (x) th1) . (t_th2 (x) th2): odd coefficient t_th2 passes odd th1
    X = GElement(ring, spec.basis, {1: ring.gen(1)})
    Y = GElement(ring, spec.basis, {2: ring.gen(2)})
    out = dot_ext(spec, X, Y)
    assert out.component(3) == -(ring.gen(1) * ring.gen(2))


def test_gelement_parity_and_weights():
    spec = heisenberg()
    ring = CoordinateRing.dual_to(spec.basis, truncation=4)
    gamma = GElement(ring, spec.basis, {i: ring.gen(i) for i in range(3)})
    assert gamma.parity() == 0
    assert gamma.z_weights() == [2]
    mixed = GElement(ring, spec.basis, {0: ring.one()})
    assert mixed.parity() == 1


def test_pushforward_identity_and_linear():
    spec = heisenberg()
    s = LInfinityStructure.from_spec(spec)
    ring = CoordinateRing.dual_to(spec.basis, truncation=4)
    gamma = GElement(ring, spec.basis, {i: ring.gen(i) for i in range(3)})
    F = LInfinityMorphism.identity(spec.basis)
    assert pushforward(F, gamma) == gamma
    Fs = LInfinityMorphism(spec.basis, spec.basis,
                           {1: [(i, (i,), 2) for i in range(3)]})
    assert pushforward(Fs, gamma) == 2 * gamma
    const = GElement(ring, spec.basis, {0: ring.one()})
    with pytest.raises(ValueError, match="maximal ideal"):
        pushforward(F, const)


def test_eval_multilinear():
    spec = heisenberg()
    out = eval_multilinear(spec.bracket, [{0: F(2)}, {1: F(3)}])
    assert out == {2: F(6)}
    out2 = eval_multilinear(spec.bracket, [{1: F(1)}, {0: F(1)}])
    assert out2 == {2: F(-1)}
