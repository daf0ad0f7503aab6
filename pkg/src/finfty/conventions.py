"""The package's sign conventions, collected in one place.

Storage convention ("odd" convention): parity of every basis element and
coordinate is its Z-degree mod 2.  The differential d and the bracket [ * ]
are odd operations, the dot product is even; an n-ary structure operation
mu_n is odd with Z-degree 3-2n, a morphism component F_n is even with
Z-degree 2-2n.

Two sign rules are fixed here and used everywhere:

1.  Ring extension.  When an operation on g is extended to R (x) g for a
    graded-commutative coefficient ring R, each coefficient f_j is moved to
    the front, passing the elements u_1..u_{j-1} (Koszul) and, for *odd*
    operations, a pattern of odd slot markers:

        op(f_1 u_1, ..., f_n u_n)
          = sign * (f_1 ... f_n) . op(u_1, ..., u_n),

        sign = prod_j (-1)^{ f_j * ( u_1 + ... + u_{j-1}
                                       + c_1 + ... + c_j ) }

    with markers (c_1..c_n) = odd_op_markers(n) for odd operations and all
    markers zero for even ones.  This reproduces the familiar special cases
    d(fu) = (-1)^f f.du  and  [fu * gv] = (-1)^{g(u+1)} fg [u * v].

2.  Symmetric-word dictionary.  Odd-convention symmetric tensors (which are
    wedge-like with respect to *shifted* parities) are equivalent to plain
    symmetric-convention tensors over the *stored* parities via the sign
    decalage_sign below; the words engine works on the symmetric side.
"""


def odd_op_markers(n):
    """Slot markers for an odd n-ary operation: right-aligned alternation
    ending in 1, i.e. (1), (0,1), (1,0,1), (0,1,0,1), ..."""
    if n < 1:
        raise ValueError("arity must be >= 1")
    return tuple((n - j + 1) % 2 for j in range(1, n + 1))


def extension_sign(coeff_parities, elt_parities, markers=None):
    """Sign of rule 1 above.  ``coeff_parities[j]`` is the parity of f_j,
    ``elt_parities[j]`` the parity of u_j; ``markers`` is None for an even
    operation."""
    n = len(coeff_parities)
    assert len(elt_parities) == n
    if markers is None:
        markers = (0,) * n
    exp = 0
    passed = 0          # parity of u_1..u_{j-1} plus c_1..c_{j-1}
    for j in range(n):
        passed ^= markers[j] & 1
        if coeff_parities[j] & 1:
            exp ^= passed
        passed ^= elt_parities[j] & 1
    return -1 if exp else 1


def decalage_sign(parities):
    """Sign converting an odd-convention tensor value on (v_1..v_n) to the
    symmetric-convention value: (-1)^{sum_j (n-j) p_j} (1-based j)."""
    n = len(parities)
    exp = sum((n - 1 - i) * (parities[i] & 1) for i in range(n))
    return -1 if (exp & 1) else 1
