"""Structure-constant presentations of differential graded algebras,
homotopy Lie structures and their morphisms, with exact validators.

Everything is stored in the odd convention (see conventions.py): the
bracket is an odd binary operation obeying

    odd skew-symmetry   [a*b] = -(-1)^{(a+1)(b+1)} [b*a]
    odd Jacobi          [a*[b*c]] = [[a*b]*c] + (-1)^{(a+1)(b+1)}[b*[a*c]]
    Leibniz             d[a*b] = [da*b] - (-1)^{a} [a*db]

while the dot product is even and associative with the odd Poisson
compatibility  [a*(b.c)] = [a*b].c + (-1)^{(a+1)b} b.[a*c].

Validators return a ValidationReport listing every violated instance;
structural problems (degree shifts, index ranges, symmetry-inconsistent
redundant entries) raise ValueError at construction time instead.
"""

import re
from fractions import Fraction

from .exactq import ZERO, frac
from .graded import GradedBasis, TruncatedSeries, koszul_sign
from .conventions import extension_sign, odd_op_markers


def _sort_odd(indices, parities):
    """Canonical form of an input tuple of an odd-convention symmetric
    tensor: sort ascending, tracking the wedge sign w.r.t. *shifted*
    parities (-(-1)^{(p_a+1)(p_b+1)} per adjacent swap).  Returns
    (sorted_tuple, sign), or (None, 0) when an odd-parity index repeats
    and the entry is forced to vanish."""
    idx = list(indices)
    sign = 1
    n = len(idx)
    for _ in range(n):
        done = True
        for i in range(n - 1):
            if idx[i] > idx[i + 1]:
                pa = (parities[idx[i]] + 1) & 1
                pb = (parities[idx[i + 1]] + 1) & 1
                # adjacent swap contributes -(-1)^{p'_a p'_b}
                if not (pa and pb):
                    sign = -sign
                idx[i], idx[i + 1] = idx[i + 1], idx[i]
                done = False
        if done:
            break
    for i in range(n - 1):
        if idx[i] == idx[i + 1] and (parities[idx[i]] & 1):
            return None, 0
    return tuple(idx), sign


class SparseTensor:
    """Multilinear operation on a graded basis, stored sparsely.

    ``entries`` maps canonical input tuples to {output-index: coefficient}.
    With symmetry="odd" the input slots are graded-symmetric in the odd
    convention: only sorted tuples are stored and other orders are
    reconstructed with the shifted-parity wedge sign.  Redundant input
    entries must agree after canonicalization (ValueError otherwise).
    """

    def __init__(self, arity, entries=None, parities=None, symmetry=None):
        if symmetry not in (None, "odd"):
            raise ValueError("unknown symmetry mode: %r" % symmetry)
        if symmetry == "odd" and parities is None:
            raise ValueError("odd symmetry needs parities")
        self.arity = int(arity)
        self.parities = list(parities) if parities is not None else None
        self.symmetry = symmetry
        self.data = {}
        seen = {}
        for out, tpl, coeff in self._iter_input(entries):
            tpl = tuple(tpl)
            if len(tpl) != self.arity:
                raise ValueError("input tuple %r has wrong arity" % (tpl,))
            coeff = frac(coeff)
            if symmetry == "odd":
                canon, sign = _sort_odd(tpl, self.parities)
                if canon is None:
                    if coeff != 0:
                        raise ValueError(
                            "entry on %r must vanish by odd symmetry" % (tpl,))
                    continue
                key = (out, canon)
                val = sign * coeff
            else:
                key = (out, tpl)
                val = coeff
            if key in seen and seen[key] != val:
                raise ValueError(
                    "inconsistent redundant entries for output %r on %r"
                    % (out, tpl))
            seen[key] = val
            if val != 0:
                self.data.setdefault(key[1], {})[out] = val
        for tpl in list(self.data):
            if not self.data[tpl]:
                del self.data[tpl]

    @staticmethod
    def _iter_input(entries):
        if entries is None:
            return
        if isinstance(entries, dict):
            for (out, tpl), c in entries.items():
                yield out, tpl, c
        else:
            for out, tpl, c in entries:
                yield out, tpl, c

    def get(self, out, tpl):
        sign, col = self.column(tpl)
        return sign * col.get(out, ZERO)

    def column(self, tpl):
        """(sign, {out: coeff}) for an arbitrary-order input tuple."""
        tpl = tuple(tpl)
        if self.symmetry == "odd":
            canon, sign = _sort_odd(tpl, self.parities)
            if canon is None:
                return 1, {}
            return sign, self.data.get(canon, {})
        return 1, self.data.get(tpl, {})

    def apply(self, tpl):
        """{out: coeff} with the reconstruction sign folded in."""
        sign, col = self.column(tpl)
        if sign == 1:
            return dict(col)
        return {out: sign * c for out, c in col.items()}

    def items(self):
        for tpl in sorted(self.data):
            for out in sorted(self.data[tpl]):
                yield out, tpl, self.data[tpl][out]

    def is_zero(self):
        return not self.data

    def support(self):
        return sorted(self.data)

    def __eq__(self, other):
        return (isinstance(other, SparseTensor)
                and self.arity == other.arity
                and self.symmetry == other.symmetry
                and self.data == other.data)

    def scaled(self, c):
        c = frac(c)
        return SparseTensor(
            self.arity,
            [(out, tpl, c * v) for out, tpl, v in self.items()],
            parities=self.parities, symmetry=self.symmetry)

    def plus(self, other):
        assert self.arity == other.arity and self.symmetry == other.symmetry
        acc = {}
        for out, tpl, v in self.items():
            acc[(out, tpl)] = acc.get((out, tpl), ZERO) + v
        for out, tpl, v in other.items():
            acc[(out, tpl)] = acc.get((out, tpl), ZERO) + v
        return SparseTensor(
            self.arity, [(o, t, v) for (o, t), v in acc.items()],
            parities=self.parities, symmetry=self.symmetry)

    def degree_shift(self, basis):
        """Uniform Z-degree shift deg(out) - sum deg(in); None if empty."""
        shifts = {basis.degrees[out] - sum(basis.degrees[i] for i in tpl)
                  for out, tpl, _ in self.items()}
        if not shifts:
            return None
        if len(shifts) > 1:
            raise ValueError("tensor not degree-homogeneous: %s"
                             % sorted(shifts))
        return shifts.pop()

    def __repr__(self):
        bits = ["%d <- %s: %s" % (out, tpl, c) for out, tpl, c in self.items()]
        return "SparseTensor(arity=%d, %s)" % (self.arity, "; ".join(bits))


def eval_multilinear(tensor, vectors):
    """Apply a tensor to vectors given as {basis-index: Fraction} dicts.
    Coefficients are scalars (even), so no Koszul signs arise here."""
    assert len(vectors) == tensor.arity
    out = {}
    stack = [((), Fraction(1))]
    for vec in vectors:
        nxt = []
        for tpl, c in stack:
            for i, ci in vec.items():
                if ci != 0:
                    nxt.append((tpl + (i,), c * ci))
        stack = nxt
    for tpl, c in stack:
        for k, v in tensor.apply(tpl).items():
            out[k] = out.get(k, ZERO) + c * v
    return {k: v for k, v in out.items() if v != 0}


class ValidationReport:
    """Accumulated validator findings.  Entries are (check, location,
    detail, level) with level "violation" or "info"; ``ok`` ignores the
    informational entries."""

    def __init__(self, title=""):
        self.title = title
        self.entries = []

    def add(self, check, location, detail, info=False):
        self.entries.append(
            (check, tuple(location), detail, "info" if info else "violation"))

    def violations(self, check=None):
        return [e for e in self.entries
                if e[3] == "violation" and (check is None or e[0] == check)]

    def infos(self, check=None):
        return [e for e in self.entries
                if e[3] == "info" and (check is None or e[0] == check)]

    @property
    def ok(self):
        return not self.violations()

    def merge(self, other):
        self.entries.extend(other.entries)
        return self

    def __str__(self):
        head = self.title or "validation"
        if not self.entries:
            return "%s: ok" % head
        lines = ["%s: %d violation(s), %d note(s)"
                 % (head, len(self.violations()), len(self.infos()))]
        for check, loc, detail, level in self.entries:
            lines.append("  [%s] %s at %s: %s" % (level, check, loc, detail))
        return "\n".join(lines)


class AlgebraSpec:
    """A differential graded algebra presented by structure constants.

    Required: ``basis`` and the odd ``bracket`` / ``differential`` tensors
    (either may be zero).  Optional: an even associative ``dot`` (degree 0),
    a ``unit_index`` into the basis (requires dot), and an odd second-order
    operator ``bv`` of degree -1 generating the bracket.  Degree shifts are
    enforced here: d is +1, bracket -1, dot 0, bv -1.
    """

    def __init__(self, basis, differential=None, bracket=None, dot=None,
                 unit_index=None, bv=None, tags=()):
        self.basis = basis
        p = basis.parities
        self.differential = self._coerce(differential, 1, None)
        self.bracket = self._coerce(bracket, 2, "odd")
        self.dot = self._coerce(dot, 2, None) if dot is not None else None
        self.bv = self._coerce(bv, 1, None) if bv is not None else None
        self.unit_index = (None if unit_index is None
                           else basis.index(unit_index))
        self.tags = frozenset(tags)
        if self.unit_index is not None and self.dot is None:
            raise ValueError("unit_index requires a dot product")
        self._check_ranges()
        for tensor, shift, name in ((self.differential, 1, "differential"),
                                    (self.bracket, -1, "bracket"),
                                    (self.dot, 0, "dot"),
                                    (self.bv, -1, "bv")):
            if tensor is None:
                continue
            got = tensor.degree_shift(basis)
            if got is not None and got != shift:
                raise ValueError("%s must have degree %+d, found %+d"
                                 % (name, shift, got))

    def _coerce(self, entries, arity, symmetry):
        if isinstance(entries, SparseTensor):
            return entries
        return SparseTensor(arity, entries,
                            parities=self.basis.parities, symmetry=symmetry)

    def _check_ranges(self):
        dim = self.basis.dim
        for tensor in (self.differential, self.bracket, self.dot, self.bv):
            if tensor is None:
                continue
            for out, tpl, _ in tensor.items():
                for i in (out,) + tpl:
                    if not 0 <= i < dim:
                        raise ValueError("basis index %d out of range" % i)

    # --- basis-level evaluation -----------------------------------------
    def parity(self, i):
        return self.basis.parity(i)

    def d_of(self, i):
        return self.differential.apply((i,))

    def bracket_of(self, i, j):
        return self.bracket.apply((i, j))

    def dot_of(self, i, j):
        if self.dot is None:
            raise ValueError("no dot product declared")
        return self.dot.apply((i, j))

    def bv_of(self, i):
        if self.bv is None:
            raise ValueError("no bv operator declared")
        return self.bv.apply((i,))

    def d_matrix(self):
        dim = self.basis.dim
        m = [[ZERO] * dim for _ in range(dim)]
        for out, (i,), c in self.differential.items():
            m[out][i] = c
        return m

    def has_dot(self):
        return self.dot is not None


def _vec_d(spec, vec):
    out = {}
    for i, c in vec.items():
        for k, v in spec.d_of(i).items():
            out[k] = out.get(k, ZERO) + c * v
    return {k: v for k, v in out.items() if v != 0}


def _vec_is_zero(vec):
    return all(c == 0 for c in vec.values())


def _fmt_vec(spec, vec):
    items = ["%s*%s" % (c, spec.basis.names[k])
             for k, c in sorted(vec.items()) if c != 0]
    return " + ".join(items) if items else "0"


def validate_dlie(spec):
    """Check d^2 = 0, odd skew-symmetry, the Leibniz rule and the odd
    Jacobi identity on all basis tuples.  Violations are data, not errors."""
    report = ValidationReport("dLie")
    basis = spec.basis
    dim = basis.dim
    names = basis.names

    for i in range(dim):
        dd = _vec_d(spec, spec.d_of(i))
        if not _vec_is_zero(dd):
            report.add("d_squared", (names[i],), _fmt_vec(spec, dd))

    for i in range(dim):
        for j in range(i, dim):
            lhs = spec.bracket_of(i, j)
            rhs = spec.bracket_of(j, i)
            # [a*b] = -(-1)^{(a+1)(b+1)} [b*a]
            s = 1 if (((basis.parity(i) + 1) & 1)
                      and ((basis.parity(j) + 1) & 1)) else -1
            bad = dict(lhs)
            for k, v in rhs.items():
                bad[k] = bad.get(k, ZERO) - s * v
            if not _vec_is_zero(bad):
                report.add("odd_skew", (names[i], names[j]),
                           _fmt_vec(spec, bad))

    for i in range(dim):
        pi = basis.parity(i)
        for j in range(dim):
            # d[e_i * e_j] - [d e_i * e_j] + (-1)^{p_i} [e_i * d e_j]
            lhs = _vec_d(spec, spec.bracket_of(i, j))
            t1 = eval_multilinear(spec.bracket, [spec.d_of(i), {j: frac(1)}])
            t2 = eval_multilinear(spec.bracket, [{i: frac(1)}, spec.d_of(j)])
            bad = dict(lhs)
            for k, v in t1.items():
                bad[k] = bad.get(k, ZERO) - v
            s2 = -1 if pi else 1
            for k, v in t2.items():
                bad[k] = bad.get(k, ZERO) + s2 * v
            if not _vec_is_zero(bad):
                report.add("leibniz", (names[i], names[j]),
                           _fmt_vec(spec, bad))

    one = frac(1)
    for i in range(dim):
        for j in range(dim):
            sij = -1 if (((basis.parity(i) + 1) & 1)
                         and ((basis.parity(j) + 1) & 1)) else 1
            for k in range(dim):
                lhs = eval_multilinear(
                    spec.bracket, [{i: one}, spec.bracket_of(j, k)])
                r1 = eval_multilinear(
                    spec.bracket, [spec.bracket_of(i, j), {k: one}])
                r2 = eval_multilinear(
                    spec.bracket, [{j: one}, spec.bracket_of(i, k)])
                bad = dict(lhs)
                for o, v in r1.items():
                    bad[o] = bad.get(o, ZERO) - v
                for o, v in r2.items():
                    bad[o] = bad.get(o, ZERO) - sij * v
                if not _vec_is_zero(bad):
                    report.add("odd_jacobi", (names[i], names[j], names[k]),
                               _fmt_vec(spec, bad))
    return report


def validate_dg(spec):
    """Everything validate_dlie checks (when a bracket is present) plus:
    associativity of dot, Leibniz of d over dot, the odd Poisson identity,
    unit axioms, and graded commutativity (reported as informational —
    commutative dG-algebras are a subclass, not a requirement).  For
    "hochschild"-tagged specs the Poisson identity holds only up to
    homotopy and its failures are likewise informational."""
    if not spec.has_dot():
        raise ValueError("validate_dg needs a dot product")
    report = ValidationReport("dG")
    if not spec.bracket.is_zero() or not spec.differential.is_zero():
        report.merge(validate_dlie(spec))
    basis = spec.basis
    dim = basis.dim
    names = basis.names
    one = frac(1)

    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                lhs = eval_multilinear(spec.dot, [spec.dot_of(i, j), {k: one}])
                rhs = eval_multilinear(spec.dot, [{i: one}, spec.dot_of(j, k)])
                bad = dict(lhs)
                for o, v in rhs.items():
                    bad[o] = bad.get(o, ZERO) - v
                if not _vec_is_zero(bad):
                    report.add("associativity", (names[i], names[j], names[k]),
                               _fmt_vec(spec, bad))

    for i in range(dim):
        for j in range(dim):
            s = -1 if (basis.parity(i) and basis.parity(j)) else 1
            bad = dict(spec.dot_of(i, j))
            for o, v in spec.dot_of(j, i).items():
                bad[o] = bad.get(o, ZERO) - s * v
            if not _vec_is_zero(bad):
                report.add("commutativity", (names[i], names[j]),
                           _fmt_vec(spec, bad), info=True)

    for i in range(dim):
        pi = basis.parity(i)
        for j in range(dim):
            # d(a.b) = da.b + (-1)^{a} a.db
            lhs = _vec_d(spec, spec.dot_of(i, j))
            t1 = eval_multilinear(spec.dot, [spec.d_of(i), {j: one}])
            t2 = eval_multilinear(spec.dot, [{i: one}, spec.d_of(j)])
            bad = dict(lhs)
            for o, v in t1.items():
                bad[o] = bad.get(o, ZERO) - v
            s = -1 if pi else 1
            for o, v in t2.items():
                bad[o] = bad.get(o, ZERO) - s * v
            if not _vec_is_zero(bad):
                report.add("leibniz_dot", (names[i], names[j]),
                           _fmt_vec(spec, bad))

    if not spec.bracket.is_zero():
        poisson_info = "hochschild" in spec.tags
        for i in range(dim):
            pi = basis.parity(i)
            for j in range(dim):
                pj = basis.parity(j)
                s = -1 if (((pi + 1) & 1) and pj) else 1
                for k in range(dim):
                    # [a*(b.c)] = [a*b].c + (-1)^{(a+1)b} b.[a*c]
                    lhs = eval_multilinear(
                        spec.bracket, [{i: one}, spec.dot_of(j, k)])
                    r1 = eval_multilinear(
                        spec.dot, [spec.bracket_of(i, j), {k: one}])
                    r2 = eval_multilinear(
                        spec.dot, [{j: one}, spec.bracket_of(i, k)])
                    bad = dict(lhs)
                    for o, v in r1.items():
                        bad[o] = bad.get(o, ZERO) - v
                    for o, v in r2.items():
                        bad[o] = bad.get(o, ZERO) - s * v
                    if not _vec_is_zero(bad):
                        report.add("poisson",
                                   (names[i], names[j], names[k]),
                                   _fmt_vec(spec, bad), info=poisson_info)

    if spec.unit_index is not None:
        e0 = spec.unit_index
        if not _vec_is_zero(spec.d_of(e0)):
            report.add("unit_closed", (names[e0],),
                       _fmt_vec(spec, spec.d_of(e0)))
        for i in range(dim):
            left = spec.dot_of(e0, i)
            right = spec.dot_of(i, e0)
            for label, got in (("unit_left", left), ("unit_right", right)):
                bad = dict(got)
                bad[i] = bad.get(i, ZERO) - one
                if not _vec_is_zero(bad):
                    report.add(label, (names[e0], names[i]),
                               _fmt_vec(spec, bad))
            br = spec.bracket_of(e0, i)
            if not _vec_is_zero(br):
                report.add("unit_bracket", (names[e0], names[i]),
                           _fmt_vec(spec, br))
    return report


# ---------------------------------------------------------------------------
# operator order and the derived bracket
# ---------------------------------------------------------------------------

def _unary_matrix(tensor, dim):
    m = [[ZERO] * dim for _ in range(dim)]
    for out, (i,), c in tensor.items():
        m[out][i] = c
    return m


def _unary_parity(tensor, basis):
    ps = {(basis.parity(out) + basis.parity(tpl[0])) & 1
          for out, tpl, _ in tensor.items()}
    if len(ps) > 1:
        raise ValueError("operator of mixed parity")
    return ps.pop() if ps else 0


def operator_order(op, spec, k):
    """True iff ``op`` (arity-1 tensor) is a differential operator of order
    <= k with respect to the dot product: recursively, [op, l_a] must be of
    order <= k-1 for every basis element a, and order <= -1 means zero."""
    if not spec.has_dot():
        raise ValueError("operator_order needs a dot product")
    from .exactq import mat_mul, mat_sub, mat_scale, is_zero_matrix
    basis = spec.basis
    dim = basis.dim
    left_mult = []
    for a in range(dim):
        m = [[ZERO] * dim for _ in range(dim)]
        for j in range(dim):
            for out, c in spec.dot_of(a, j).items():
                m[out][j] = c
        left_mult.append(m)

    def order_le(mat, parity, bound):
        if bound < 0:
            return is_zero_matrix(mat)
        for a in range(dim):
            la = left_mult[a]
            sgn = -1 if (parity and basis.parity(a)) else 1
            comm = mat_sub(mat_mul(mat, la), mat_scale(mat_mul(la, mat), sgn))
            if not order_le(comm, (parity + basis.parity(a)) & 1, bound - 1):
                return False
        return True

    return order_le(_unary_matrix(op, dim), _unary_parity(op, basis), k)


def bracket_from_bv(spec):
    """Second-order-operator bracket:
        [a*b] := (-1)^{a} bv(a.b) - (-1)^{a} (bv a).b - a.(bv b).
    Preconditions (raised with the failing identity): dot and bv present,
    bv of operator order <= 2, d o bv + bv o d = 0, bv o bv = 0."""
    from .exactq import mat_mul, mat_add, is_zero_matrix
    if not spec.has_dot() or spec.bv is None:
        raise ValueError("bracket_from_bv needs dot and bv")
    basis = spec.basis
    dim = basis.dim
    B = _unary_matrix(spec.bv, dim)
    if not is_zero_matrix(mat_mul(B, B)):
        raise ValueError("precondition failed: bv o bv = 0")
    D = spec.d_matrix()
    if not is_zero_matrix(mat_add(mat_mul(D, B), mat_mul(B, D))):
        raise ValueError("precondition failed: d o bv + bv o d = 0")
    if not operator_order(spec.bv, spec, 2):
        raise ValueError("precondition failed: bv of operator order <= 2")

    one = frac(1)
    entries = []
    for i in range(dim):
        si = -1 if basis.parity(i) else 1
        for j in range(dim):
            acc = {}
            for o, v in eval_multilinear(spec.bv,
                                         [spec.dot_of(i, j)]).items():
                acc[o] = acc.get(o, ZERO) + si * v
            for o, v in eval_multilinear(spec.dot,
                                         [spec.bv_of(i), {j: one}]).items():
                acc[o] = acc.get(o, ZERO) - si * v
            for o, v in eval_multilinear(spec.dot,
                                         [{i: one}, spec.bv_of(j)]).items():
                acc[o] = acc.get(o, ZERO) - v
            for o, v in acc.items():
                if v != 0:
                    entries.append((o, (i, j), v))
    return SparseTensor(2, entries, parities=basis.parities, symmetry="odd")


# ---------------------------------------------------------------------------
# homotopy Lie structures and morphisms
# ---------------------------------------------------------------------------

class LInfinityStructure:
    """Family of odd-convention graded-symmetric operations mu_n on a
    graded basis.  mu_n is odd with Z-degree 3-2n (mu_1 = d has +1,
    mu_2 = bracket has -1, mu_3 has -3, ...)."""

    def __init__(self, host, ops):
        self.host = host
        self.ops = {}
        for n, tensor in ops.items():
            n = int(n)
            if not isinstance(tensor, SparseTensor):
                tensor = SparseTensor(n, tensor, parities=host.parities,
                                      symmetry="odd")
            elif tensor.symmetry != "odd":
                tensor = SparseTensor(
                    n, list(tensor.items()), parities=host.parities,
                    symmetry="odd")
            want = 3 - 2 * n
            for out, tpl, _ in tensor.items():
                got = host.degrees[out] - sum(host.degrees[i] for i in tpl)
                if got != want:
                    raise ValueError(
                        "mu_%d entry %s <- %s has degree %+d, want %+d"
                        % (n, host.names[out],
                           tuple(host.names[i] for i in tpl), got, want))
            if not tensor.is_zero():
                self.ops[n] = tensor

    @classmethod
    def from_spec(cls, spec):
        return cls(spec.basis, {1: spec.differential, 2: spec.bracket})

    def op(self, n):
        if n in self.ops:
            return self.ops[n]
        return SparseTensor(n, None, parities=self.host.parities,
                            symmetry="odd")

    def arities(self):
        return sorted(self.ops)

    def max_arity(self):
        return max(self.ops, default=0)

    def __eq__(self, other):
        return (isinstance(other, LInfinityStructure)
                and self.host is other.host and self.ops == other.ops)


class LInfinityMorphism:
    """Morphism of homotopy Lie structures by components F_n: n source
    slots -> target, graded-symmetric in the same odd convention over the
    source parities.  F_n is even with Z-degree 2-2n."""

    def __init__(self, source, target, components):
        self.source = source
        self.target = target
        self.components = {}
        for n, tensor in components.items():
            n = int(n)
            if not isinstance(tensor, SparseTensor):
                tensor = SparseTensor(n, tensor, parities=source.parities,
                                      symmetry="odd")
            want = 2 - 2 * n
            for out, tpl, _ in tensor.items():
                got = (target.degrees[out]
                       - sum(source.degrees[i] for i in tpl))
                if got != want:
                    raise ValueError(
                        "F_%d entry %s <- %s has degree %+d, want %+d"
                        % (n, target.names[out],
                           tuple(source.names[i] for i in tpl), got, want))
            if not tensor.is_zero():
                self.components[n] = tensor

    @classmethod
    def identity(cls, basis):
        return cls(basis, basis,
                   {1: [(i, (i,), 1) for i in range(basis.dim)]})

    def component(self, n):
        if n in self.components:
            return self.components[n]
        return SparseTensor(n, None, parities=self.source.parities,
                            symmetry="odd")

    def max_arity(self):
        return max(self.components, default=0)


def _nondecreasing_tuples(dim, n):
    if n == 0:
        yield ()
        return
    def rec(start, left):
        if left == 0:
            yield ()
            return
        for i in range(start, dim):
            for rest in rec(i, left - 1):
                yield (i,) + rest
    yield from rec(0, n)


def linf_identity_residual(structure, idx_tuple):
    """Residual of the n-th homotopy Jacobi identity on a basis tuple:
    sum over (k,l), k+l = n+1, and (k, n-k)-unshuffles of
    sign(sigma) * (-1)^{k(l-1)} mu_l(mu_k(v_S), v_rest), where sign is the
    Koszul sign of the unshuffle at shifted parities."""
    from itertools import combinations
    n = len(idx_tuple)
    host = structure.host
    shifted = [host.parity(i) + 1 for i in idx_tuple]
    total = {}
    for k in range(1, n + 1):
        l = n + 1 - k
        mk, ml = structure.op(k), structure.op(l)
        if mk.is_zero() or ml.is_zero():
            continue
        pref = -1 if (k * (l - 1)) & 1 else 1
        for S in combinations(range(n), k):
            rest = [t for t in range(n) if t not in S]
            perm = list(S) + rest
            sgn = pref * koszul_sign(perm, shifted)
            inner = mk.apply(tuple(idx_tuple[s] for s in S))
            if not inner:
                continue
            rest_idx = tuple(idx_tuple[r] for r in rest)
            for m_idx, c in inner.items():
                for out, v in ml.apply((m_idx,) + rest_idx).items():
                    total[out] = total.get(out, ZERO) + sgn * c * v
    return {o: v for o, v in total.items() if v != 0}


def validate_linf(structure, arity_cap):
    """Check the homotopy Jacobi identities for all n <= arity_cap on all
    non-decreasing basis tuples."""
    report = ValidationReport("L-infinity")
    host = structure.host
    names = host.names
    for n in range(1, arity_cap + 1):
        for tpl in _nondecreasing_tuples(host.dim, n):
            bad = linf_identity_residual(structure, tpl)
            if bad:
                loc = (n,) + tuple(names[i] for i in tpl)
                detail = " + ".join("%s*%s" % (c, names[o])
                                    for o, c in sorted(bad.items()))
                report.add("linf_identity", loc, detail)
    return report


def validate_linf_morphism(F, src, tgt, arity_cap):
    """Check that F intertwines the two structures through arity_cap, via
    the coalgebra form: the corestriction of F Q - Q' F must vanish on
    every symmetric word."""
    from .words import morphism_word_defect
    report = ValidationReport("L-infinity morphism")
    src_names = F.source.names
    tgt_names = F.target.names
    for n in range(1, arity_cap + 1):
        for tpl in _nondecreasing_tuples(F.source.dim, n):
            bad = morphism_word_defect(F, src, tgt, tpl)
            if bad:
                loc = (n,) + tuple(src_names[i] for i in tpl)
                detail = " + ".join("%s*%s" % (c, tgt_names[o])
                                    for o, c in sorted(bad.items()))
                report.add("morphism_identity", loc, detail)
    return report


# ---------------------------------------------------------------------------
# elements of R (x) g and the ring-extended operations
# ---------------------------------------------------------------------------

class GElement:
    """Element of (coordinate ring) tensor (algebra): one TruncatedSeries
    coefficient per basis element."""

    def __init__(self, ring, basis, components=None):
        self.ring = ring
        self.basis = basis
        comps = {}
        for i, s in (components or {}).items():
            if s.ring is not ring:
                raise ValueError("ring mismatch")
            if not s.is_zero():
                comps[basis.index(i)] = s
        self.components = comps

    def component(self, i):
        return self.components.get(self.basis.index(i), self.ring.zero())

    def is_zero(self):
        return not self.components

    def __add__(self, other):
        comps = dict(self.components)
        for i, s in other.components.items():
            comps[i] = comps.get(i, self.ring.zero()) + s
        return GElement(self.ring, self.basis, comps)

    def __neg__(self):
        return GElement(self.ring, self.basis,
                        {i: -s for i, s in self.components.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, scalar):
        return GElement(self.ring, self.basis,
                        {i: s * frac(scalar)
                         for i, s in self.components.items()})

    def scale_series(self, f):
        """Left-multiply every coefficient by the series f."""
        return GElement(self.ring, self.basis,
                        {i: f * s for i, s in self.components.items()})

    def order_part(self, n):
        return GElement(self.ring, self.basis,
                        {i: s.order_part(n)
                         for i, s in self.components.items()})

    def up_to_order(self, n):
        return GElement(self.ring, self.basis,
                        {i: s.up_to_order(n)
                         for i, s in self.components.items()})

    def min_order(self):
        orders = [s.min_order() for s in self.components.values()]
        return min(orders, default=None)

    def parities(self):
        ps = set()
        for i, s in self.components.items():
            pi = self.basis.parity(i)
            for m in s.terms:
                ps.add((pi + self.ring.mono_parity(m)) & 1)
        return ps

    def parity(self):
        ps = self.parities()
        if len(ps) > 1:
            raise ValueError("element of mixed parity")
        return ps.pop() if ps else 0

    def z_weights(self):
        ws = set()
        for i, s in self.components.items():
            di = self.basis.degrees[i]
            for m in s.terms:
                ws.add(di + self.ring.z_degree(m))
        return sorted(ws)

    def __eq__(self, other):
        return (self.ring is other.ring and self.basis is other.basis
                and self.components == other.components)

    def __repr__(self):
        if not self.components:
            return "GElement(0)"
        bits = ["(%r) %s" % (s, self.basis.names[i])
                for i, s in sorted(self.components.items())]
        return " + ".join(bits)


def signed_by_parity(series):
    """sum_m (-1)^{parity(m)} c_m m  — the operator (-1)^{f} used when an
    odd symbol moves past the coefficient f."""
    ring = series.ring
    return TruncatedSeries(
        ring, {m: (-c if ring.mono_parity(m) else c)
               for m, c in series.terms.items()})


def _apply_odd_unary(tensor, X):
    """Extend an odd unary operation u -> op(u) by op(fu) = (-1)^f f.op(u)."""
    comps = {}
    for i, f in X.components.items():
        col = tensor.apply((i,))
        if not col:
            continue
        sf = signed_by_parity(f)
        for out, c in col.items():
            comps[out] = comps.get(out, X.ring.zero()) + sf * c
    return GElement(X.ring, X.basis, comps)


def apply_d(spec, X):
    return _apply_odd_unary(spec.differential, X)


def bv_ext(spec, X):
    if spec.bv is None:
        raise ValueError("no bv operator declared")
    return _apply_odd_unary(spec.bv, X)


def bracket_ext(spec, X, Y):
    """[fu * gv] = (-1)^{g(u+1)} (f g) [u * v]."""
    comps = {}
    for i, f in X.components.items():
        pass_sign_even = spec.parity(i) == 0   # then (u+1) is odd
        for j, g in Y.components.items():
            col = spec.bracket.apply((i, j))
            if not col:
                continue
            gg = signed_by_parity(g) if pass_sign_even else g
            coeff = f * gg
            if coeff.is_zero():
                continue
            for out, c in col.items():
                comps[out] = comps.get(out, X.ring.zero()) + coeff * c
    return GElement(X.ring, X.basis, comps)


def dot_ext(spec, X, Y):
    """(fu).(gv) = (-1)^{g u} (f g) (u.v)."""
    if not spec.has_dot():
        raise ValueError("no dot product declared")
    comps = {}
    for i, f in X.components.items():
        odd_i = spec.parity(i) == 1
        for j, g in Y.components.items():
            col = spec.dot.apply((i, j))
            if not col:
                continue
            gg = signed_by_parity(g) if odd_i else g
            coeff = f * gg
            if coeff.is_zero():
                continue
            for out, c in col.items():
                comps[out] = comps.get(out, X.ring.zero()) + coeff * c
    return GElement(X.ring, X.basis, comps)


def pushforward(F, gamma):
    """F_*(Gamma) = sum_n (1/n!) F_n(Gamma, ..., Gamma), finite because
    Gamma lies in the maximal ideal and the ring is truncated."""
    import itertools, math
    ring = gamma.ring
    if gamma.min_order() == 0:
        raise ValueError("element not in the maximal ideal")
    N = ring.truncation
    # expansion units: (basis index, coefficient parity, series slice)
    units = []
    for i, s in gamma.components.items():
        for pf in (0, 1):
            sl = TruncatedSeries(
                ring, {m: c for m, c in s.terms.items()
                       if ring.mono_parity(m) == pf})
            if not sl.is_zero():
                units.append((i, pf, sl, sl.min_order()))
    comps = {}
    for n, Fn in sorted(F.components.items()):
        if n > N:
            continue
        inv_fact = Fraction(1, math.factorial(n))
        for combo in itertools.product(units, repeat=n):
            if sum(u[3] for u in combo) > N:
                continue
            col = Fn.apply(tuple(u[0] for u in combo))
            if not col:
                continue
            sign = extension_sign([u[1] for u in combo],
                                  [F.source.parity(u[0]) for u in combo])
            coeff = combo[0][2]
            for u in combo[1:]:
                coeff = coeff * u[2]
            if coeff.is_zero():
                continue
            coeff = coeff * (inv_fact if sign == 1 else -inv_fact)
            for out, c in col.items():
                comps[out] = comps.get(out, ring.zero()) + coeff * c
    return GElement(ring, F.target, comps)


# --- serialization ----------------------------------------------------------

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


def _coeff_to_str(c):
    return str(Fraction(c))


def _coeff_from_str(text, where):
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise ValueError(
            "%s: coefficient must be a rational string like '3' or '-1/2', "
            "got %r" % (where, text))
    return Fraction(text)


def spec_to_dict(spec):
    """Plain-dict form of an algebra presentation.

    Coefficients are emitted as rational strings so that exact values
    survive serialization; entry lists are sorted for determinism and only
    canonical representatives of (anti)symmetric orbits are written.
    """
    names = spec.basis.names
    obj = {"basis": [{"name": n, "degree": d}
                     for n, d in zip(names, spec.basis.degrees)]}
    for field in ("differential", "bracket", "dot", "bv"):
        tensor = getattr(spec, field)
        if tensor is None or tensor.is_zero():
            continue
        obj[field] = [{"out": names[out],
                       "in": [names[k] for k in tpl],
                       "coeff": _coeff_to_str(c)}
                      for out, tpl, c in tensor.items()]
    if spec.unit_index is not None:
        obj["unit"] = names[spec.unit_index]
    if spec.tags:
        obj["tags"] = sorted(spec.tags)
    return obj


def _entry_list_from_dict(obj, field, basis, arity):
    rows = obj[field]
    if not isinstance(rows, list):
        raise ValueError("%s: expected a list of entries" % field)
    entries = []
    for pos, row in enumerate(rows):
        where = "%s[%d]" % (field, pos)
        if not isinstance(row, dict) or not {"out", "in", "coeff"} <= set(row):
            raise ValueError("%s: entry needs 'out', 'in' and 'coeff'" % where)
        try:
            out = basis.index(row["out"])
            tpl = tuple(basis.index(k) for k in row["in"])
        except KeyError as exc:
            raise ValueError("%s: %s" % (where, exc.args[0])) from None
        if len(tpl) != arity:
            raise ValueError("%s: 'in' must list %d slot(s), got %d"
                             % (where, arity, len(tpl)))
        entries.append((out, tpl, _coeff_from_str(row["coeff"], where)))
    return entries


def spec_from_dict(obj):
    """Rebuild an AlgebraSpec from its plain-dict form.

    Raises ValueError naming the offending field on any schema violation.
    """
    if not isinstance(obj, dict):
        raise ValueError("top level: expected an object")
    if "basis" not in obj or not isinstance(obj["basis"], list) \
            or not obj["basis"]:
        raise ValueError("basis: expected a non-empty list")
    names, degrees = [], []
    for pos, row in enumerate(obj["basis"]):
        where = "basis[%d]" % pos
        if not isinstance(row, dict) or "name" not in row \
                or "degree" not in row:
            raise ValueError("%s: entry needs 'name' and 'degree'" % where)
        if not isinstance(row["name"], str):
            raise ValueError("%s: 'name' must be a string" % where)
        if not isinstance(row["degree"], int):
            raise ValueError("%s: 'degree' must be an integer" % where)
        names.append(row["name"])
        degrees.append(row["degree"])
    try:
        basis = GradedBasis(names, degrees)
    except ValueError as exc:
        raise ValueError("basis: %s" % exc.args[0]) from None
    known = {"basis", "differential", "bracket", "dot", "bv", "unit", "tags"}
    for key in obj:
        if key not in known:
            raise ValueError("top level: unknown field %r" % key)
    kw = {}
    for field, arity in (("differential", 1), ("bracket", 2),
                         ("dot", 2), ("bv", 1)):
        if field in obj:
            kw[field] = _entry_list_from_dict(obj, field, basis, arity)
    if "unit" in obj:
        try:
            kw["unit_index"] = basis.index(obj["unit"])
        except KeyError as exc:
            raise ValueError("unit: %s" % exc.args[0]) from None
    if "tags" in obj:
        if not isinstance(obj["tags"], list) \
                or not all(isinstance(t, str) for t in obj["tags"]):
            raise ValueError("tags: expected a list of strings")
        kw["tags"] = obj["tags"]
    return AlgebraSpec(basis, **kw)
