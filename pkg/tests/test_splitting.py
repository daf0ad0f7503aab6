from fractions import Fraction

import pytest

from finfty.algebras import AlgebraSpec
from finfty.exactq import identity, is_zero_matrix, mat_mul, mat_vec, zeros
from finfty.fixtures import BUILDERS, corpus
from finfty.graded import GradedBasis
from finfty.splitting import (
    build_splitting,
    cohomology,
    phi_from_splitting,
    verify_splitting,
)

F = Fraction


def test_cohomology_d_zero_is_everything():
    spec = BUILDERS["abelian_unital"]()
    coh = cohomology(spec)
    assert coh.names == ["1", "th"]
    assert coh.degrees == [0, 1]
    assert coh.representatives == [[F(1), F(0)], [F(0), F(1)]]


def test_cohomology_contractible_is_zero():
    coh = cohomology(BUILDERS["contractible"]())
    assert coh.dim == 0


def test_cohomology_requires_d_squared():
    basis = GradedBasis(["a", "b", "c"], [0, 1, 2])
    bad = AlgebraSpec(basis, differential=[(1, (0,), 1), (2, (1,), 1)])
    with pytest.raises(ValueError, match="d o d"):
        cohomology(bad)


def test_cohomology_massey6():
    coh = cohomology(BUILDERS["massey6"]())
    assert coh.names == ["a", "b", "c", "w"]
    assert coh.degrees == [1, 1, 1, 0]


def test_unit_is_first_representative():
    for name in ("abelian_unital", "dgbv_fiber", "sphere_s3", "dgbv_with_d"):
        spec = BUILDERS[name]()
        coh = cohomology(spec)
        assert coh.names[0] == spec.basis.names[spec.unit_index]


def test_splitting_d_zero():
    spec = BUILDERS["pi_sl2"]()
    s = build_splitting(spec)
    assert s.i == identity(3)
    assert s.p == identity(3)
    assert is_zero_matrix(s.q)


def test_splitting_contractible():
    spec = BUILDERS["contractible"]()
    s = build_splitting(spec)
    assert s.p == []
    # q inverts d on the image: d(a) = b so q(b) = a
    assert s.homotopy([F(0), F(1)]) == [F(1), F(0)]
    assert s.homotopy([F(1), F(0)]) == [F(0), F(0)]
    assert verify_splitting(spec, s).ok


def test_splitting_identities_across_corpus():
    for name, spec in corpus().items():
        for order in ("forward", "reverse"):
            s = build_splitting(spec, c_order=order)
            rep = verify_splitting(spec, s)
            assert rep.ok, "%s/%s: %s" % (name, order, rep)


def test_splitting_deterministic():
    a = build_splitting(BUILDERS["massey6"]())
    b = build_splitting(BUILDERS["massey6"]())
    assert (a.i, a.p, a.q) == (b.i, b.p, b.q)


def two_preimage_spec():
    # dp = r and dp2 = r: the homotopy has a genuine preimage choice
    basis = GradedBasis(["a", "b", "c", "p", "p2", "r", "w"],
                        [1, 1, 1, 0, 0, 1, 0])
    return AlgebraSpec(
        basis,
        differential=[(5, (3,), 1), (5, (4,), 1)],
        bracket=[(5, (0, 1), 1), (6, (3, 2), 1)])


def test_splitting_variants_differ_but_both_verify():
    spec = two_preimage_spec()
    fwd = build_splitting(spec, c_order="forward")
    rev = build_splitting(spec, c_order="reverse")
    assert fwd.q != rev.q
    assert fwd.cohomology.names == rev.cohomology.names
    assert fwd.cohomology.representatives == rev.cohomology.representatives
    assert verify_splitting(spec, fwd).ok
    assert verify_splitting(spec, rev).ok
    r_idx = spec.basis.index("r")
    r_vec = [F(k == r_idx) for k in range(spec.basis.dim)]
    assert fwd.homotopy(r_vec) != rev.homotopy(r_vec)


def test_phi_properties():
    for name, spec in corpus().items():
        s = build_splitting(spec)
        phi = phi_from_splitting(s)
        d = spec.d_matrix()
        # phi o d = 0
        assert is_zero_matrix(mat_mul(phi.matrix, d))
        # phi sends the representative of [e_i] to the i-th coordinate
        for j, rep in enumerate(s.cohomology.representatives):
            coords = phi(rep)
            assert coords == [F(k == j) for k in range(s.cohomology.dim)]
        # phi kills every exact vector
        for col in range(spec.basis.dim):
            image = mat_vec(d, [F(k == col)
                                for k in range(spec.basis.dim)])
            assert phi(image) == [F(0)] * s.cohomology.dim
