"""Built-in corpus of small differential graded algebra presentations.

Every builder returns a validated ``AlgebraSpec``; ``corpus()`` returns the
whole family keyed by name.  The corpus mixes pure odd Lie presentations,
unital graded-commutative ones, a non-formal six-dimensional model whose
transferred triple product is nonzero, and an eight-dimensional rank-two
fiber model whose bracket is derived from a second-order BV operator.

Run ``python3 -m finfty.fixtures`` to dump every fixture as JSON into a
``fixtures/`` directory (created next to the current working directory).
"""

from .algebras import AlgebraSpec, bracket_from_bv, spec_to_dict
from .graded import GradedBasis


def abelian_unital():
    """Unital exterior line: basis 1, th with th.th = 0 and zero bracket."""
    basis = GradedBasis(["1", "th"], [0, 1])
    dot = [(0, (0, 0), 1), (1, (0, 1), 1), (1, (1, 0), 1)]
    return AlgebraSpec(basis, dot=dot, unit_index=0)


def heisenberg_odd():
    """Three odd generators with [x*y] = z and z central."""
    basis = GradedBasis(["x", "y", "z"], [1, 1, 1])
    return AlgebraSpec(basis, bracket=[(2, (0, 1), 1)])


def pi_sl2():
    """Rank-one simple pattern on three odd generators."""
    basis = GradedBasis(["e", "f", "h"], [1, 1, 1])
    return AlgebraSpec(basis, bracket=[
        (0, (2, 0), 2),     # [h*e] = 2e
        (1, (2, 1), -2),    # [h*f] = -2f
        (2, (0, 1), 1),     # [e*f] = h
    ])


def massey6():
    """Non-formal six-dimensional model: [a*b] is exact and [p*c] survives.

    With dp = r, [a*b] = r and [p*c] = w the homology is spanned by
    a, b, c, w with vanishing induced binary bracket, while the transferred
    triple product sends (a, b, c) to a nonzero multiple of w.
    """
    basis = GradedBasis(["a", "b", "c", "p", "r", "w"], [1, 1, 1, 0, 1, 0])
    return AlgebraSpec(
        basis,
        differential=[(4, (3,), 1)],            # dp = r
        bracket=[(4, (0, 1), 1),                # [a*b] = r
                 (5, (3, 2), 1)])               # [p*c] = w


def massey_weighted():
    """Massey pattern extended by a grading element: binary and ternary
    layers interact.

    A weight element h acts on the exact pair (dp = r = [a*b]) with
    unequal weights, on the homotopy p, and on the surviving class w.
    The induced binary bracket is nonzero (the h-action on classes)
    while the triple product on (a, b, c) survives as well, so the
    Jacobi identities and the intertwining equations mix the two layers
    nontrivially — the fixture that pins their relative sign.
    """
    basis = GradedBasis(["h", "a", "b", "c", "p", "r", "w"],
                        [1, 1, 1, 1, 0, 1, 0])
    H, A, B, C, P, R, W = range(7)
    return AlgebraSpec(
        basis,
        differential=[(R, (P,), 1)],
        bracket=[
            (A, (H, A), 1), (B, (H, B), -2),
            (R, (A, B), 1), (R, (H, R), -1), (P, (H, P), -1),
            (W, (P, C), 1), (W, (H, W), -1),
        ])


def dgbv_fiber():
    """Rank-two fiber model: odd coordinates paired against even ones.

    Basis: the unit, four odd elements E_ab (a row and a column index) and
    three even elements F_ac = F_ca collecting the nonzero products
    E_a1 . E_c2.  The second-order operator bv contracts one E_aa to the
    unit at a time; its derived bracket realizes the commutator pattern
    [E_ab * E_cd] = -(delta_bc E_ad - delta_da E_cb) on all sixteen pairs.
    The returned presentation stores that derived bracket explicitly.
    """
    basis = GradedBasis(["1", "E11", "E12", "E21", "E22",
                         "F11", "F12", "F22"], [0, 1, 1, 1, 1, 2, 2, 2])
    E11, E12, E21, E22, F11, F12, F22 = range(1, 8)
    dot = [(0, (0, 0), 1)]
    for k in range(1, 8):
        dot += [(k, (0, k), 1), (k, (k, 0), 1)]
    # E_a1 . E_c2 = F_ac, antisymmetrically for the odd factors
    for a, c, f in ((E11, E12, F11), (E11, E22, F12),
                    (E21, E12, F12), (E21, E22, F22)):
        dot += [(f, (a, c), 1), (f, (c, a), -1)]
    bv = [(0, (E11,), 1), (0, (E22,), 1),
          (E12, (F11,), 2),
          (E22, (F12,), 1), (E11, (F12,), -1),
          (E21, (F22,), -2)]
    partial = AlgebraSpec(basis, dot=dot, unit_index=0, bv=bv)
    return AlgebraSpec(basis, dot=dot, unit_index=0, bv=bv,
                       bracket=bracket_from_bv(partial))


def sphere_s3():
    """One odd degree-3 generator with square zero, plus the unit."""
    basis = GradedBasis(["1", "u"], [0, 3])
    dot = [(0, (0, 0), 1), (1, (0, 1), 1), (1, (1, 0), 1)]
    return AlgebraSpec(basis, dot=dot, unit_index=0)


def dgbv_with_d():
    """The fiber model with a genuine differential and no bv operator.

    The differential is the inner action of F12 through the derived
    bracket, hence compatible with both products; the contraction operator
    itself fails to commute with this differential, so the bracket is
    stored directly and no bv field is carried.
    """
    fiber = dgbv_fiber()
    E12, E21, F11, F22 = 2, 3, 5, 7
    differential = [(F11, (E12,), 1), (F22, (E21,), 1)]
    return AlgebraSpec(fiber.basis, differential=differential,
                       bracket=fiber.bracket, dot=fiber.dot, unit_index=0)


def heisenberg_with_d():
    """Heisenberg pattern with one generator sent into a fresh even slot."""
    basis = GradedBasis(["x", "y", "z", "w"], [1, 1, 1, 2])
    return AlgebraSpec(basis, differential=[(3, (0,), 1)],
                       bracket=[(2, (0, 1), 1)])


def contractible():
    """Two-element acyclic complex: da = b, trivial homology."""
    basis = GradedBasis(["a", "b"], [0, 1])
    return AlgebraSpec(basis, differential=[(1, (0,), 1)])


BUILDERS = {
    "abelian_unital": abelian_unital,
    "heisenberg_odd": heisenberg_odd,
    "pi_sl2": pi_sl2,
    "massey6": massey6,
    "massey_weighted": massey_weighted,
    "dgbv_fiber": dgbv_fiber,
    "sphere_s3": sphere_s3,
    "dgbv_with_d": dgbv_with_d,
    "heisenberg_with_d": heisenberg_with_d,
    "contractible": contractible,
}

# names of the fixtures carrying a graded-commutative product (all unital)
DG_NAMES = ("abelian_unital", "dgbv_fiber", "sphere_s3", "dgbv_with_d")


def corpus():
    """All fixtures, freshly built, keyed by name."""
    return {name: build() for name, build in BUILDERS.items()}


def dg_corpus():
    """The unital graded-commutative subset of the corpus."""
    return {name: BUILDERS[name]() for name in DG_NAMES}


def _main():
    import json
    import os

    outdir = "fixtures"
    os.makedirs(outdir, exist_ok=True)
    for name, build in sorted(BUILDERS.items()):
        path = os.path.join(outdir, name + ".json")
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(spec_to_dict(build()), fh, indent=2)
            fh.write("\n")
        print("wrote", path)


if __name__ == "__main__":
    _main()
