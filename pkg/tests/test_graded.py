from fractions import Fraction

from hypothesis import given, settings, strategies as st

from finfty.graded import (
    CoordinateRing,
    Derivation,
    GradedBasis,
    eps_symmetric,
    euler_field,
    koszul_sign,
    partial,
    perm_sign,
    sort_monomial,
)

F = Fraction


def test_koszul_sign_basics():
    assert koszul_sign([0, 1, 2], [1, 1, 1]) == 1
    # swapping two odds: -(-1)^{1*1} = +1
    assert koszul_sign([1, 0], [1, 1]) == 1
    # swapping odd with even, or even with even: -1
    assert koszul_sign([1, 0], [1, 0]) == -1
    assert koszul_sign([1, 0], [0, 0]) == -1
    # three odds, cycle (2,0,1): two odd-odd swaps
    assert koszul_sign([2, 0, 1], [1, 1, 1]) == 1


def test_eps_symmetric_basics():
    assert eps_symmetric([1, 0], [1, 1]) == -1
    assert eps_symmetric([1, 0], [1, 0]) == 1
    assert eps_symmetric([1, 0], [0, 0]) == 1


@given(st.permutations(range(5)),
       st.lists(st.integers(0, 1), min_size=5, max_size=5))
@settings(max_examples=80, deadline=None)
def test_koszul_eps_signature_relation(perm, parities):
    assert koszul_sign(perm, parities) == \
        perm_sign(perm) * eps_symmetric(perm, parities)


def test_koszul_sign_homomorphism_exhaustive():
    # perm[i] = original slot feeding position i, so applying sigma then tau
    # composes to (sigma o tau)[i] = sigma[tau[i]], and the sign of the
    # composite factors through the parities permuted by the first step
    from itertools import permutations, product

    for n in range(1, 5):
        for sigma in permutations(range(n)):
            for tau in permutations(range(n)):
                comp = tuple(sigma[tau[i]] for i in range(n))
                for par in product((0, 1), repeat=n):
                    moved = tuple(par[sigma[i]] for i in range(n))
                    assert koszul_sign(comp, par) == \
                        koszul_sign(sigma, par) * koszul_sign(tau, moved)


def test_sort_monomial():
    parities = [1, 1, 0]
    assert sort_monomial((0, 1), parities) == ((0, 1), 1)
    assert sort_monomial((1, 0), parities) == ((0, 1), -1)
    assert sort_monomial((1, 1), parities) == (None, 0)
    assert sort_monomial((2, 2), parities) == ((2, 2), 1)
    assert sort_monomial((2, 0), parities) == ((0, 2), 1)


def test_graded_basis():
    b = GradedBasis(["1", "th", "y"], [0, 1, 2])
    assert b.dim == 3
    assert b.parities == [0, 1, 0]
    assert b.index("y") == 2
    assert b.index(1) == 1
    assert b.indices_of_degree(1) == [1]


# ring dual to a basis of degrees [0, 1, 1, 2]: |t| = 2 - deg
RING = CoordinateRing(["a", "u", "v", "w"], [2, 1, 1, 0], truncation=4)


def S(terms):
    return RING.series({tuple(m): F(c) for m, c in terms.items()})


def test_series_constructors():
    assert RING.monomial((1, 1)).is_zero()            # odd square
    assert RING.monomial((2, 1)) == RING.monomial((1, 2)) * F(-1)
    assert RING.monomial((0,) * 5).is_zero()          # beyond truncation
    assert not RING.monomial((0,) * 4).is_zero()
    assert RING.one().coeff(()) == 1


def test_series_graded_commutativity():
    u, v, a = RING.gen(1), RING.gen(2), RING.gen(0)
    assert u * v == -(v * u)
    assert a * u == u * a
    assert (u * v).coeff((1, 2)) == 1
    assert (u * v).coeff((2, 1)) == -1


def test_series_truncation_in_product():
    a = RING.gen(0)
    cube = a * a * a
    assert (cube * a).coeff((0, 0, 0, 0)) == 1
    assert (cube * (a * a)).is_zero()


def test_z_degree_bookkeeping():
    m = RING.monomial((0, 1))     # |t_a| = 2, |t_u| = 1
    assert m.z_degrees() == [3]
    assert m.is_homogeneous(3)
    mixed = RING.gen(0) + RING.gen(1)
    assert not mixed.is_homogeneous()
    assert RING.gen(1).parity() == 1
    assert RING.gen(0).parity() == 0


def test_partial_left_convention():
    u, v = RING.gen(1), RING.gen(2)
    uv = u * v
    assert partial(RING, 1, uv) == v
    # removing v passes the odd u: sign -1
    assert partial(RING, 2, uv) == -u
    a = RING.gen(0)
    assert partial(RING, 0, a * a * a) == 3 * (a * a)
    assert partial(RING, 3, uv).is_zero()


series_strategy = st.lists(
    st.tuples(st.lists(st.integers(0, 3), min_size=0, max_size=3),
              st.integers(-3, 3)),
    min_size=0, max_size=4)


def build(terms):
    out = RING.zero()
    for mono, c in terms:
        out = out + RING.monomial(tuple(mono), c)
    return out


@given(series_strategy, series_strategy, series_strategy)
@settings(max_examples=60, deadline=None)
def test_ring_laws(ta, tb, tc):
    f, g, h = build(ta), build(tb), build(tc)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h


@given(series_strategy, series_strategy)
@settings(max_examples=60, deadline=None)
def test_super_commutativity(ta, tb):
    # check on homogeneous-parity slices
    f, g = build(ta), build(tb)
    for pf in (0, 1):
        for pg in (0, 1):
            fp, gp = _slice(f, pf), _slice(g, pg)
            sign = -1 if (pf and pg) else 1
            assert fp * gp == sign * (gp * fp)


def _slice(s, p):
    from finfty.graded import TruncatedSeries
    return TruncatedSeries(
        s.ring, {m: c for m, c in s.terms.items()
                 if s.ring.mono_parity(m) == p})


def _leibniz_holds(D, f, g):
    lhs = D(f * g)
    sign = -1 if (D.parity and f.parity()) else 1
    rhs = D(f) * g + sign * (f * D(g))
    return lhs == rhs


@given(series_strategy, series_strategy)
@settings(max_examples=50, deadline=None)
def test_derivation_super_leibniz(ta, tb):
    # odd derivation u -> a, a -> u*v  (coefficients of honest odd shift)
    D = Derivation(RING, 1, {1: RING.gen(0), 0: RING.gen(1) * RING.gen(2)})
    E = Derivation(RING, 0, {0: RING.gen(0), 3: RING.gen(1) * RING.gen(2)})
    for pf in (0, 1):
        f = _slice(build(ta), pf)
        g = build(tb)
        assert _leibniz_holds(D, f, g)
        assert _leibniz_holds(E, f, g)


def test_commutator_is_derivation_on_values():
    A = Derivation(RING, 1, {1: RING.gen(0), 3: RING.gen(1)})
    B = Derivation(RING, 1, {2: RING.gen(0) * RING.gen(0), 1: RING.gen(3)})
    C = A.commutator(B)
    assert C.parity == 0
    probe = RING.monomial((1, 2)) + RING.monomial((0, 3))
    # [A,B] = AB + BA for two odds
    assert C(probe) == A(B(probe)) + B(A(probe))


def test_commutator_detects_square():
    # odd D with D(u) = a, D(a) = 0: D^2 = 0, so [D, D] = 0
    D = Derivation(RING, 1, {1: RING.gen(0)})
    assert D.commutator(D) == Derivation.zero(RING, 0)


def test_euler_field():
    E = euler_field(RING)
    m = RING.monomial((0, 1, 3))        # weights 2 + 1 + 0
    assert E(m) == m * F(3, 2)
    assert E(RING.gen(3)).is_zero()     # weight-0 coordinate
    assert E(RING.one()).is_zero()
    assert E.z_shift() in (0, None)


def test_z_shift():
    D = Derivation(RING, 1, {1: RING.gen(0)})   # deg 2 - deg 1 = +1
    assert D.z_shift() == 1
    bad = Derivation(RING, 1, {1: RING.gen(0), 0: RING.gen(1)})
    try:
        bad.z_shift()
    except ValueError as e:
        assert "homogeneous" in str(e)
    else:
        assert False, "expected ValueError"


def test_dual_ring_from_basis():
    b = GradedBasis(["e", "x", "w"], [0, 1, 2])
    ring = CoordinateRing.dual_to(b, truncation=3)
    assert ring.gen_degrees == [2, 1, 0]
    assert ring.parities == [0, 1, 0]
    assert ring.names == ["t_e", "t_x", "t_w"]
