"""Minimal homotopy Lie structure on cohomology, read off the field.

The homological field determines a family of graded-symmetric
operations mu_n on the cohomology through its Taylor expansion: applied
coefficient-wise to the tautological linear element it equals

    sum_{n>=2} ((-1)^{n(n-1)/2} / n!) mu_n(linear * ... * linear).

The arity-2 sign is pinned by the induced binary bracket (the
projected bracket of representatives, with no sign); the sign at odd
arities is pinned by the intertwining equations of the canonical
quasi-isomorphism, whose arity-3 instance forces the triple product to
be minus the sum of projected bracket-of-preimage trees, each pairing
weighted by the stored-parity Koszul sign of pulling it to the front.  (The two per-arity
sign laws differing by (-1)^n give strictly isomorphic structures —
rescale the classes by -1 — so the Jacobi identities alone cannot
distinguish them; the morphism normalization with the representatives
as the linear component can, and does.)

Inverting the expansion monomial by monomial — dividing out the
multinomial count of repeated coordinates, the displayed sign, and the
coefficient-extraction sign — recovers the operations.  There is no
arity-1 part: the structure is minimal, and its arity-2 part is the
binary bracket induced on cohomology.

Also here: that induced bracket computed directly from a splitting (the
cross-check route), a generating-series round trip that re-evaluates
the expansion from the extracted tensors over all index tuples, a
quasi-isomorphism from the minimal structure to the input presentation
built from homotopy preimages, and a compact textual summary of the
lowest surviving operation.
"""

import math
from fractions import Fraction

from .algebras import (
    LInfinityMorphism,
    LInfinityStructure,
    SparseTensor,
    ValidationReport,
    _nondecreasing_tuples,
    eval_multilinear,
    validate_linf,
    validate_linf_morphism,
)
from .conventions import decalage_sign, extension_sign, odd_op_markers
from .exactq import ZERO, mat_vec
from .words import morphism_lhs, morphism_rhs


class TransferError(RuntimeError):
    """Raised when a homotopy-preimage step has no exact solution."""


def taylor_sign(n):
    """(-1)^{n(n-1)/2}: the sign attached to the arity-n expansion term."""
    return -1 if (n * (n - 1) // 2) & 1 else 1


def _repeat_factorial(mono):
    """Product of factorials of the repeat counts in a sorted tuple."""
    out = 1
    i = 0
    while i < len(mono):
        j = i
        while j < len(mono) and mono[j] == mono[i]:
            j += 1
        out *= math.factorial(j - i)
        i = j
    return out


class MinimalLInfinity(LInfinityStructure):
    """Graded-symmetric operations with no arity-1 part.

    ``host`` is the cohomology basis; ``arity_cap`` records through
    which arity the operations were computed; ``cohomology`` keeps the
    class/representative data when the structure came from a solution.
    """

    def __init__(self, host, ops, arity_cap, cohomology=None):
        super().__init__(host, ops)
        if 1 in self.ops:
            raise ValueError("a minimal structure must have no arity-1 part")
        self.arity_cap = int(arity_cap)
        self.cohomology = cohomology

    def __repr__(self):
        return "MinimalLInfinity(dim=%d, arities=%s, cap=%d)" % (
            self.host.dim, self.arities(), self.arity_cap)


def extract_linf(sol, arity_cap=None):
    """Read the minimal operations off a solution's field coefficients.

    The degree-n part of the field coefficient of t^k, on the sorted
    monomial t^{a_1}..t^{a_n}, is the tensor entry mu_n^k_{a_1..a_n}
    times the expansion sign, the coefficient-extraction sign of the
    sorted pull-out, and the inverse multinomial count; this divides
    all three back out.  Requires arity_cap <= truncation.
    """
    if arity_cap is None:
        arity_cap = sol.truncation
    if arity_cap > sol.truncation:
        raise ValueError(
            "arity cap %d exceeds the truncation order %d"
            % (arity_cap, sol.truncation))
    coh = sol.cohomology
    host = coh.basis()
    p = host.parities
    ops = {}
    for n in range(2, arity_cap + 1):
        entries = []
        for k in range(sol.ring.num_gens):
            f = sol.chen.coeff(k).order_part(n)
            for mono, c in sorted(f.terms.items()):
                par = [p[i] for i in mono]
                sgn = taylor_sign(n) * extension_sign(
                    par, par, odd_op_markers(n))
                entries.append((k, mono, c * _repeat_factorial(mono) * sgn))
        if entries:
            ops[n] = entries
    return MinimalLInfinity(host, ops, arity_cap, coh)


def generating_series_defect(sol, minimal=None):
    """Exact difference between the field and the expansion it encodes.

    Re-evaluates sum_n ((-1)^{n(n-1)/2}/n!) mu_n(linear * ... * linear)
    from the extracted tensors by brute force over all index tuples
    (with the ring's own monomial arithmetic) and subtracts the field
    coefficients through the arity cap.  A zero map for every
    coordinate certifies that symmetrized storage, the extraction
    signs, and the ring signs all cohere.
    """
    if minimal is None:
        minimal = extract_linf(sol)
    ring = sol.ring
    host = minimal.host
    p = host.parities
    defect = {}
    for k in range(ring.num_gens):
        acc = ring.zero()
        for n in range(2, minimal.arity_cap + 1):
            tensor = minimal.op(n)
            if tensor.is_zero():
                continue
            scale = Fraction(taylor_sign(n), math.factorial(n))
            for tpl in _all_tuples(host.dim, n):
                c = tensor.get(k, tpl)
                if c == 0:
                    continue
                par = [p[i] for i in tpl]
                eps = extension_sign(par, par, odd_op_markers(n))
                mono = ring.monomial(tpl, scale * eps * c)
                acc = acc + mono
        diff = acc - sol.chen.coeff(k).up_to_order(minimal.arity_cap)
        if not diff.is_zero():
            defect[k] = diff
    return defect


def _all_tuples(dim, n):
    stack = [()]
    for _ in range(n):
        stack = [tpl + (i,) for tpl in stack for i in range(dim)]
    return stack


def verify_minimal(m, arity_cap=None):
    """Exact checks of the minimal-structure invariants; returns a report.

    Re-checks (without trusting the constructor) that the arity-1 part
    vanishes, that every stored entry has the Z-degree its arity
    demands, and that the higher Jacobi identities hold through the
    arity cap.
    """
    cap = m.arity_cap if arity_cap is None else arity_cap
    report = ValidationReport("minimal structure")
    if not m.op(1).is_zero():
        report.add("minimal", (1,), detail="arity-1 part is nonzero")
    for n, tensor in sorted(m.ops.items()):
        want = 3 - 2 * n
        for out, tpl, _ in tensor.items():
            got = (m.host.degrees[out]
                   - sum(m.host.degrees[i] for i in tpl))
            if got != want:
                report.add(
                    "degree", (n, m.host.names[out]) + tuple(
                        m.host.names[i] for i in tpl),
                    detail="degree %+d, want %+d" % (got, want))
    report.merge(validate_linf(m, cap))
    return report


def induced_binary_bracket(spec, splitting):
    """The binary operation on classes computed directly: project the
    input bracket of two representatives.  The extraction route must
    reproduce this tensor exactly."""
    coh = splitting.cohomology
    host = coh.basis()
    reps = [{k: c for k, c in enumerate(rep) if c != 0}
            for rep in coh.representatives]
    entries = []
    for j1 in range(host.dim):
        for j2 in range(j1, host.dim):
            image = eval_multilinear(spec.bracket, [reps[j1], reps[j2]])
            if not image:
                continue
            for r_i, row in enumerate(splitting.p):
                val = sum((row[k] * c for k, c in image.items()), ZERO)
                if val != 0:
                    entries.append((r_i, (j1, j2), val))
    return SparseTensor(2, entries, parities=host.parities, symmetry="odd")


def massey_report(m):
    """Human-readable summary of the lowest surviving operation."""
    lines = ["minimal homotopy Lie structure on %d classes, arity cap %d"
             % (m.host.dim, m.arity_cap)]
    arities = m.arities()
    if not arities:
        lines.append("formal: all higher operations vanish")
        return "\n".join(lines)
    low = arities[0]
    lines.append("lowest arity %d" % low)
    names = m.host.names
    tensor = m.op(low)
    by_input = {}
    for out, tpl, c in tensor.items():
        by_input.setdefault(tpl, []).append((out, c))
    for tpl in sorted(by_input):
        value = " + ".join(
            "%s*%s" % (c, names[out]) for out, c in sorted(by_input[tpl]))
        lines.append("  mu_%d(%s) = %s"
                     % (low, ", ".join(names[i] for i in tpl), value))
    return "\n".join(lines)


def minimal_model_morphism(spec, sol, minimal=None, arity_cap=None):
    """Quasi-isomorphism from the minimal structure to the input algebra.

    The arity-1 component includes the representatives; each higher
    component is solved word by word from the intertwining equation by
    a homotopy preimage: with the arity-n component unknown, the
    equation reads d(F_n(word)) = remainder, and the homotopy applied
    to the remainder solves it exactly when the remainder is exact.  A
    non-exact remainder raises TransferError.  The returned morphism
    satisfies the full intertwining equations through the cap, which
    ``validate_linf_morphism`` re-checks independently.
    """
    if arity_cap is None:
        arity_cap = sol.truncation
    if minimal is None:
        minimal = extract_linf(sol, arity_cap)
    s = sol.phi.splitting
    coh = s.cohomology
    host = minimal.host
    ambient = LInfinityStructure.from_spec(spec)
    dim = spec.basis.dim
    d = spec.d_matrix()
    comps = {1: [(k, (j,), c)
                 for j, rep in enumerate(coh.representatives)
                 for k, c in enumerate(rep) if c != 0]}
    F = LInfinityMorphism(host, spec.basis, comps)
    for n in range(2, arity_cap + 1):
        entries = []
        for word in _nondecreasing_tuples(host.dim, n):
            if _word_vanishes(word, host.parities):
                continue
            remainder = morphism_lhs(F, minimal, word)
            for out, c in morphism_rhs(F, ambient, word).items():
                v = remainder.get(out, ZERO) - c
                if v == 0:
                    remainder.pop(out, None)
                else:
                    remainder[out] = v
            if not remainder:
                continue
            rvec = [remainder.get(k, ZERO) for k in range(dim)]
            fvec = mat_vec(s.q, rvec)
            if mat_vec(d, fvec) != rvec:
                raise TransferError(
                    "word (%s): intertwining remainder is not exact"
                    % ", ".join(host.names[i] for i in word))
            # the word engine reads components through the symmetric
            # dictionary, so the stored entry carries the inverse twist
            twist = decalage_sign([host.parities[i] for i in word])
            entries.extend(
                (k, word, twist * v) for k, v in enumerate(fvec) if v != 0)
        if entries:
            comps[n] = entries
            F = LInfinityMorphism(host, spec.basis, comps)
    return F


def _word_vanishes(word, parities):
    """True when the symmetric word is zero: a repeated index whose
    shifted parity is odd (stored parity even)."""
    for a, b in zip(word, word[1:]):
        if a == b and parities[a] == 0:
            return True
    return False


def verify_transfer(spec, sol, arity_cap=None):
    """End-to-end transfer verification bundle; returns a report.

    Extracts the minimal structure, checks its identities, checks the
    quadratic part against the directly induced bracket, re-evaluates
    the generating series, builds the quasi-isomorphism, and validates
    the intertwining equations through the cap.
    """
    if arity_cap is None:
        arity_cap = sol.truncation
    report = ValidationReport("transfer")
    minimal = extract_linf(sol, arity_cap)
    report.merge(verify_minimal(minimal))
    direct = induced_binary_bracket(spec, sol.phi.splitting)
    if minimal.op(2) != direct:
        report.add("induced_bracket", (),
                   detail="extracted arity-2 part differs from the "
                          "projected bracket of representatives")
    defect = generating_series_defect(sol, minimal)
    for k in sorted(defect):
        report.add("generating_series", (sol.ring.names[k],),
                   detail="field coefficient differs from the expansion")
    try:
        F = minimal_model_morphism(spec, sol, minimal, arity_cap)
    except TransferError as err:
        report.add("morphism_solve", (), detail=str(err))
        return report
    ambient = LInfinityStructure.from_spec(spec)
    report.merge(validate_linf_morphism(F, minimal, ambient, arity_cap))
    return report
