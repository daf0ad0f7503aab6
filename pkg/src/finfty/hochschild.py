"""Hochschild cochains of a finite-dimensional associative algebra.

The cochain space in arity n is Hom(A^(tensor n), A), graded by n, and
carries three operations: the Hochschild differential (degree +1), the
cup product (even, degree 0) and the insertion bracket (odd, degree -1).
On an elementary-cochain basis all three are exact-rational structure
constants, so a finite window 0 <= n <= n_max of the complex fits the
same presentation format as any other differential graded algebra here.

Truncation drops every structure-constant component landing in arity
above the window, so the algebraic identities are exact only away from
the window boundary; ``hochschild_window_report`` checks them precisely
on the words whose every intermediate term stays inside the window.  The
cup product and the bracket do *not* satisfy the odd Poisson identity at
the cochain level (that compatibility only appears on cohomology), which
is why the produced presentation carries the "hochschild" tag that makes
the dG validator report Poisson failures as informational.

Conventions, with f of arity k and g of arity l:

    (f o g)(a_1,...,a_{k+l-1}) =
        sum_{s=0..k-1} (-1)^{s(l+1)}
            f(a_1,...,a_s, g(a_{s+1},...,a_{s+l}), a_{s+l+1},...)

    [f * g] = f o g - (-1)^{(k+1)(l+1)} g o f

    (f . g)(a_1,...,a_{k+l}) = (-1)^{kl} f(a_1,...,a_k) g(a_{k+1},...)

    d f = [m * f],  m = the multiplication viewed as a 2-cochain;
    explicitly (d f)(a_1,...,a_{k+1}) = (-1)^{k+1} a_1 f(a_2,...,a_{k+1})
        + sum_{i=1..k} (-1)^{k+1+i} f(a_1,...,a_i a_{i+1},...,a_{k+1})
        + f(a_1,...,a_k) a_{k+1}

The insertion sum runs over all k slots of f.  The three conventions
cohere: the odd Jacobi identity makes d = [m * -] a square-zero
derivation of the bracket in this package's Leibniz form (m has even
arity, so no auxiliary sign survives), and the (-1)^{kl} dressing of
the cup product is exactly what its Leibniz rule under *this* d
requires.  Dropping the dressing, or undoing the per-arity twist
(-1)^{k+1} that separates d from the bare three-term alternating sum,
gives a strictly isomorphic structure whose identities hold in a
different sign convention than the validators here enforce.

One representational boundary is inherent to the presentation format:
the insertion bracket of an even-arity cochain with itself, [f * f] =
2 f o f, can be nonzero, but an odd-symmetric structure-constant tensor
has no slot for it -- the shifted-symmetric word f.f vanishes, which is
precisely why every downstream consumer of the tensor (word engines,
validators, symmetric-coalgebra machinery) never asks for it.  The
emitted tensor therefore carries the off-diagonal entries only; every
computation in this module that needs true bilinear values (the
identity report, the induced structure on cohomology) works directly
with elementary-cochain dictionaries instead of the stored tensor.
"""

from itertools import product

from .algebras import (
    AlgebraSpec,
    SparseTensor,
    ValidationReport,
    eval_multilinear,
)
from .exactq import ZERO, frac
from .graded import GradedBasis
from .splitting import build_splitting

# Total number of elementary cochains a window may generate before the
# construction refuses: each arity n contributes (dim A)^(n+1) of them.
BASIS_BUDGET = 3000


class AssocAlgebra:
    """A finite-dimensional unital associative algebra over the rationals.

    ``table`` holds the multiplication as arity-2 structure constants
    (entries ``(out, (i, j), coeff)`` or a ready SparseTensor); the
    associativity and two-sided unit axioms are checked on construction.
    """

    def __init__(self, names, table, unit_index):
        self.names = list(names)
        self.dim = len(self.names)
        if len(set(self.names)) != self.dim:
            raise ValueError("duplicate basis names")
        self.table = (table if isinstance(table, SparseTensor)
                      else SparseTensor(2, table))
        if not 0 <= unit_index < self.dim:
            raise ValueError("unit index %d out of range" % unit_index)
        self.unit_index = unit_index
        for out, tpl, _ in self.table.items():
            for i in (out,) + tpl:
                if not 0 <= i < self.dim:
                    raise ValueError("basis index %d out of range" % i)
        self._validate()

    def mul(self, i, j):
        """Structure constants of e_i e_j as a sparse vector."""
        return self.table.apply((i, j))

    def _validate(self):
        one = frac(1)
        for i in range(self.dim):
            for j in range(self.dim):
                for k in range(self.dim):
                    left = eval_multilinear(self.table,
                                            [self.mul(i, j), {k: one}])
                    right = eval_multilinear(self.table,
                                             [{i: one}, self.mul(j, k)])
                    for o in set(left) | set(right):
                        if left.get(o, ZERO) != right.get(o, ZERO):
                            raise ValueError(
                                "multiplication not associative on "
                                "(%s, %s, %s)" % (self.names[i],
                                                  self.names[j],
                                                  self.names[k]))
        u = self.unit_index
        for i in range(self.dim):
            for got, label in ((self.mul(u, i), "left"),
                               (self.mul(i, u), "right")):
                if {k: v for k, v in got.items() if v != 0} != {i: one}:
                    raise ValueError("unit axiom (%s) fails on %s"
                                     % (label, self.names[i]))

    def __repr__(self):
        return "AssocAlgebra(%s)" % ", ".join(self.names)


def ground_field():
    """The rationals as a one-dimensional algebra."""
    return AssocAlgebra(["1"], [(0, (0, 0), 1)], 0)


def truncated_polynomials(order):
    """k[x] / (x^order) with basis 1, x, ..., x^(order-1)."""
    if order < 1:
        raise ValueError("order must be at least 1")
    names = ["1"] + ["x" if n == 1 else "x%d" % n for n in range(1, order)]
    entries = [(i + j, (i, j), 1)
               for i in range(order) for j in range(order) if i + j < order]
    return AssocAlgebra(names, entries, 0)


def dual_numbers():
    """k[x] / (x^2): the smallest algebra with interesting cochains."""
    return truncated_polynomials(2)


class HochschildWindow:
    """Arity window 0 <= n <= n_max for the cochain complex; n_max >= 2
    so that the multiplication itself is inside the window."""

    def __init__(self, n_max):
        if n_max < 2:
            raise ValueError("window must reach arity 2, got %d" % n_max)
        self.n_max = n_max

    def __repr__(self):
        return "HochschildWindow(%d)" % self.n_max


def _coerce_window(window):
    if isinstance(window, HochschildWindow):
        return window
    return HochschildWindow(window)


# --- elementary cochains ------------------------------------------------
#
# The basis cochain (inputs, out) sends the basis tuple `inputs` to
# e_out and every other basis tuple to zero.  Keys are ordered
# lexicographically by (arity, inputs, out); that order is the contract
# for everything downstream (degrees, validator messages, emitted JSON).

def cochain_keys(algebra, n_max):
    keys = []
    for n in range(n_max + 1):
        for inputs in product(range(algebra.dim), repeat=n):
            for out in range(algebra.dim):
                keys.append((inputs, out))
    return keys


def cochain_name(algebra, key):
    inputs, out = key
    return "c[%s->%s]" % (",".join(algebra.names[i] for i in inputs),
                          algebra.names[out])


def _d_elem(algebra, key):
    """Differential of an elementary cochain as a dict over cochain keys."""
    inputs, out = key
    n = len(inputs)
    twist = -1 if (n + 1) % 2 else 1
    terms = {}

    def add(new_inputs, new_out, coeff):
        if coeff == 0:
            return
        k = (new_inputs, new_out)
        terms[k] = terms.get(k, ZERO) + coeff

    # (-1)^{n+1} a_1 f(a_2, ..., a_{n+1})
    for b in range(algebra.dim):
        for o, c in algebra.mul(b, out).items():
            add((b,) + inputs, o, twist * c)
    # (-1)^{n+1+i} f(..., a_i a_{i+1}, ...)
    for i in range(1, n + 1):
        sign = -twist if i % 2 else twist
        target = inputs[i - 1]
        for u in range(algebra.dim):
            for v in range(algebra.dim):
                c = algebra.mul(u, v).get(target, ZERO)
                if c != 0:
                    add(inputs[:i - 1] + (u, v) + inputs[i:], out, sign * c)
    # f(a_1, ..., a_n) a_{n+1}
    for b in range(algebra.dim):
        for o, c in algebra.mul(out, b).items():
            add(inputs + (b,), o, c)
    return {k: v for k, v in terms.items() if v != 0}


def _dot_elem(algebra, fkey, gkey):
    """Cup product of elementary cochains as a dict over cochain keys."""
    (fin, fout), (gin, gout) = fkey, gkey
    sign = -1 if (len(fin) * len(gin)) % 2 else 1
    return {(fin + gin, o): sign * c
            for o, c in algebra.mul(fout, gout).items() if c != 0}


def _circle_elem(fkey, gkey):
    """Insertion composite f o g as a dict over cochain keys."""
    (fin, fout), (gin, gout) = fkey, gkey
    l = len(gin)
    terms = {}
    for s in range(len(fin)):
        if fin[s] != gout:
            continue
        sign = -1 if (s * (l + 1)) % 2 else 1
        key = (fin[:s] + gin + fin[s + 1:], fout)
        terms[key] = terms.get(key, ZERO) + sign
    return terms


def _bracket_elem(fkey, gkey):
    """Insertion bracket [f * g] as a dict over cochain keys."""
    k, l = len(fkey[0]), len(gkey[0])
    sign = -1 if ((k + 1) * (l + 1)) % 2 else 1
    terms = dict(_circle_elem(fkey, gkey))
    for key, c in _circle_elem(gkey, fkey).items():
        terms[key] = terms.get(key, ZERO) - sign * c
    return {k2: v for k2, v in terms.items() if v != 0}


def hochschild_spec(algebra, window):
    """The windowed Hochschild cochain complex as a presentation.

    Basis: elementary cochains of arity 0..n_max in lexicographic order,
    graded by arity.  Differential, cup product and insertion bracket
    follow the module conventions, with every component landing above
    the window dropped.  The result carries the "hochschild" tag.
    """
    w = _coerce_window(window)
    n_max = w.n_max
    dim = algebra.dim
    total = sum(dim ** (n + 1) for n in range(n_max + 1))
    if total > BASIS_BUDGET:
        raise ValueError(
            "window needs %d elementary cochains (budget %d); shrink the "
            "window or the algebra" % (total, BASIS_BUDGET))

    keys = cochain_keys(algebra, n_max)
    index = {key: i for i, key in enumerate(keys)}
    basis = GradedBasis([cochain_name(algebra, k) for k in keys],
                        [len(k[0]) for k in keys])
    by_arity = {}
    for i, key in enumerate(keys):
        by_arity.setdefault(len(key[0]), []).append(i)

    d_entries = []
    for i, key in enumerate(keys):
        if len(key[0]) + 1 > n_max:
            continue
        for key2, c in sorted(_d_elem(algebra, key).items()):
            d_entries.append((index[key2], (i,), c))

    dot_entries = []
    for k in range(n_max + 1):
        for l in range(n_max + 1 - k):
            for i in by_arity[k]:
                for j in by_arity[l]:
                    for key2, c in sorted(
                            _dot_elem(algebra, keys[i], keys[j]).items()):
                        dot_entries.append((index[key2], (i, j), c))

    bracket_entries = []
    for k in range(n_max + 1):
        for l in range(k, min(n_max + 1, n_max + 2 - k)):
            for i in by_arity[k]:
                for j in by_arity[l]:
                    if j <= i:
                        continue
                    for key2, c in sorted(
                            _bracket_elem(keys[i], keys[j]).items()):
                        bracket_entries.append((index[key2], (i, j), c))

    return AlgebraSpec(basis, differential=d_entries,
                       bracket=bracket_entries, dot=dot_entries,
                       tags=("hochschild",))


# --- exact identity checks at the elementary level ----------------------
#
# The checks below evaluate the *untruncated* operations on elementary
# cochains, so they see the true bilinear bracket (even-arity diagonal
# values included) rather than the odd-symmetric tensor image.  What
# they establish is that the conventions themselves cohere; the stored
# presentation is the window restriction of a structure that satisfies
# every identity on the nose.

def _elem_bilinear(fn, vec_a, vec_b):
    out = {}
    for ka, ca in vec_a.items():
        for kb, cb in vec_b.items():
            for k2, c in fn(ka, kb).items():
                out[k2] = out.get(k2, ZERO) + ca * cb * c
    return {k: v for k, v in out.items() if v != 0}


def _elem_d(algebra, vec):
    out = {}
    for key, c in vec.items():
        for k2, v in _d_elem(algebra, key).items():
            out[k2] = out.get(k2, ZERO) + c * v
    return {k: v for k, v in out.items() if v != 0}


def _acc(acc, vec, sign=1):
    for k, v in vec.items():
        acc[k] = acc.get(k, ZERO) + sign * v


def _is_zero(vec):
    return all(c == 0 for c in vec.values())


def hochschild_window_report(algebra, window):
    """Exact identity checks for the cochain-level conventions.

    On every elementary cochain of arity within the window, verifies
    with untruncated elementary-level evaluation: d o d = 0, d = [m * -]
    for the multiplication 2-cochain m, odd skew-symmetry, the bracket
    Leibniz rule, the odd Jacobi identity, associativity of the cup
    product and the Leibniz rule of d over it.  The odd Poisson identity
    is expected to fail at the cochain level; its failures are recorded
    as informational rows so their presence can be asserted rather than
    feared.  Also checks d o d = 0 of the stored window presentation on
    every cochain of arity < n_max - 1.
    """
    w = _coerce_window(window)
    n_max = w.n_max
    report = ValidationReport("hochschild window %d" % n_max)
    keys = cochain_keys(algebra, n_max)
    singles = [({key: frac(1)}, len(key[0]), cochain_name(algebra, key))
               for key in keys]
    bracket = lambda u, v: _elem_bilinear(_bracket_elem, u, v)
    dot = lambda u, v: _elem_bilinear(
        lambda a, b: _dot_elem(algebra, a, b), u, v)
    d = lambda u: _elem_d(algebra, u)

    m_vec = {}
    for i in range(algebra.dim):
        for j in range(algebra.dim):
            for o, c in algebra.mul(i, j).items():
                key = ((i, j), o)
                m_vec[key] = m_vec.get(key, ZERO) + frac(c)

    for f, k, name in singles:
        if not _is_zero(d(d(f))):
            report.add("d_squared", (name,), "nonzero")
        bad = dict(d(f))
        _acc(bad, bracket(m_vec, f), -1)
        if not _is_zero(bad):
            report.add("d_is_bracket_with_m", (name,), "nonzero")

    spec = hochschild_spec(algebra, w)
    for i in range(spec.basis.dim):
        if spec.basis.degrees[i] <= n_max - 2:
            once = spec.d_of(i)
            twice = {}
            for j, c in once.items():
                for o, v in spec.d_of(j).items():
                    twice[o] = twice.get(o, ZERO) + c * v
            if not _is_zero(twice):
                report.add("d_squared_window", (spec.basis.names[i],),
                           "nonzero")

    n = len(singles)
    d_single = [d(f) for f, _, _ in singles]
    br_pair = [[bracket(singles[i][0], singles[j][0]) for j in range(n)]
               for i in range(n)]
    dot_pair = [[dot(singles[i][0], singles[j][0]) for j in range(n)]
                for i in range(n)]

    for i in range(n):
        f, k, name_f = singles[i]
        for j in range(n):
            g, l, name_g = singles[j]
            bad = dict(br_pair[i][j])
            _acc(bad, br_pair[j][i],
                 -1 if ((k + 1) * (l + 1)) % 2 else 1)
            if not _is_zero(bad):
                report.add("odd_skew", (name_f, name_g), "nonzero")
            bad = dict(d(br_pair[i][j]))
            _acc(bad, _elem_bilinear(_bracket_elem, d_single[i], g), -1)
            _acc(bad, _elem_bilinear(_bracket_elem, f, d_single[j]),
                 -1 if k % 2 else 1)
            if not _is_zero(bad):
                report.add("leibniz", (name_f, name_g), "nonzero")
            bad = dict(d(dot_pair[i][j]))
            _acc(bad, dot(d_single[i], g), -1)
            _acc(bad, dot(f, d_single[j]), 1 if k % 2 else -1)
            if not _is_zero(bad):
                report.add("leibniz_dot", (name_f, name_g), "nonzero")

    for i in range(n):
        f, k, name_f = singles[i]
        for j in range(n):
            g, l, name_g = singles[j]
            sij = -1 if (k % 2 == 0 and l % 2 == 0) else 1
            spois = -1 if (k % 2 == 0 and l % 2) else 1
            for t in range(n):
                h, _, name_h = singles[t]
                bad = dict(bracket(f, br_pair[j][t]))
                _acc(bad, bracket(br_pair[i][j], h), -1)
                _acc(bad, bracket(g, br_pair[i][t]), -sij)
                if not _is_zero(bad):
                    report.add("odd_jacobi", (name_f, name_g, name_h),
                               "nonzero")
                bad = dict(dot(dot_pair[i][j], h))
                _acc(bad, dot(f, dot_pair[j][t]), -1)
                if not _is_zero(bad):
                    report.add("associativity", (name_f, name_g, name_h),
                               "nonzero")
                bad = dict(bracket(f, dot_pair[j][t]))
                _acc(bad, dot(br_pair[i][j], h), -1)
                _acc(bad, dot(g, br_pair[i][t]), -spois)
                if not _is_zero(bad):
                    report.add("poisson", (name_f, name_g, name_h),
                               "nonzero", info=True)
    return report


# --- induced structure on cohomology ------------------------------------

class GerstenhaberOnH:
    """Induced cup product and bracket on trusted cohomology classes.

    ``spec`` is a presentation whose basis is the classes of degree at
    most ``trust_degree`` with zero differential; structure constants
    landing above the trusted degrees are not stored, and the accessors
    refuse class pairs whose product would land there.  Self-brackets of
    even-degree classes (2 c o c, which the odd-symmetric tensor cannot
    hold) live in the ``diagonal`` side table and are served from there.
    """

    def __init__(self, cohomology, trust_degree, class_indices, spec,
                 diagonal=None):
        self.cohomology = cohomology
        self.trust_degree = trust_degree
        self.class_indices = class_indices
        self.spec = spec
        self.diagonal = dict(diagonal or {})

    def _guard(self, out_degree, what):
        if out_degree > self.trust_degree:
            raise ValueError(
                "%s lands in degree %d, beyond the trusted window (<= %d)"
                % (what, out_degree, self.trust_degree))

    def dot_of(self, i, j):
        degs = self.spec.basis.degrees
        self._guard(degs[i] + degs[j], "cup product")
        return self.spec.dot_of(i, j)

    def bracket_of(self, i, j):
        degs = self.spec.basis.degrees
        self._guard(degs[i] + degs[j] - 1, "bracket")
        if i == j:
            return dict(self.diagonal.get(i, {}))
        return self.spec.bracket_of(i, j)


def gerstenhaber_on_cohomology(spec, c_order="forward"):
    """Induced dot and bracket on the cohomology of a windowed complex.

    Only classes of degree below n_max - 1 are kept: the window computes
    their cohomology exactly, and products staying in that range equal
    the untruncated ones.  Products of representatives are projected
    with a deterministic splitting; entries landing beyond the trusted
    degrees are omitted and guarded against in the accessors.
    """
    if "hochschild" not in spec.tags:
        raise ValueError("expected a presentation tagged 'hochschild'")
    return gerstenhaber_on_h(_algebra_of(spec), max(spec.basis.degrees),
                             c_order=c_order)


def _algebra_of(spec):
    """Recover the associative algebra from its arity-(0,1) cochain block.

    The arity-0 names are "c[->a]" over the algebra basis in order, and
    the multiplication table sits in the cup product of arity-0 classes,
    so the windowed presentation determines the algebra it came from.
    """
    zero_block = [i for i, d in enumerate(spec.basis.degrees) if d == 0]
    dim = len(zero_block)
    names = [spec.basis.names[i][len("c[->"):-1] for i in zero_block]
    entries = []
    for a, i in enumerate(zero_block):
        for b, j in enumerate(zero_block):
            for o, c in spec.dot_of(i, j).items():
                entries.append((zero_block.index(o), (a, b), c))
    return AssocAlgebra(names, entries, _find_unit(entries, dim))


def _find_unit(entries, dim):
    table = {}
    for o, (a, b), c in entries:
        table.setdefault((a, b), {})[o] = c
    one = frac(1)
    for u in range(dim):
        if all(table.get((u, i), {}) == {i: one}
               and table.get((i, u), {}) == {i: one} for i in range(dim)):
            return u
    raise ValueError("no unit among the arity-0 classes")


def gerstenhaber_on_h(algebra, n_max, c_order="forward"):
    """Induced structure on cohomology, computed from the algebra.

    Representatives come from the deterministic splitting of the
    windowed presentation; their products and brackets are evaluated at
    the elementary-cochain level (untruncated, true bilinear values) and
    projected back onto classes.
    """
    w = _coerce_window(n_max)
    spec = hochschild_spec(algebra, w)
    trust = w.n_max - 2
    spl = build_splitting(spec, c_order)
    coh = spl.cohomology
    keys = cochain_keys(algebra, w.n_max)
    kept = [i for i, deg in enumerate(coh.degrees) if deg <= trust]
    pos = {ci: p for p, ci in enumerate(kept)}
    basis = GradedBasis([coh.names[i] for i in kept],
                        [coh.degrees[i] for i in kept])
    reps = [{keys[k]: c for k, c in enumerate(coh.representatives[i])
             if c != 0} for i in kept]
    index = {key: i for i, key in enumerate(keys)}

    def project(elem_vec):
        full = [ZERO] * spec.basis.dim
        for key, c in elem_vec.items():
            full[index[key]] = c
        out = {}
        for ci, c in enumerate(spl.project(full)):
            if c != 0:
                if ci not in pos:
                    raise ValueError("projection left the trusted window")
                out[pos[ci]] = c
        return out

    dot_entries = []
    bracket_entries = []
    for a in range(len(kept)):
        for b in range(len(kept)):
            da, db = basis.degrees[a], basis.degrees[b]
            if da + db <= trust:
                prod = _elem_bilinear(
                    lambda u, v: _dot_elem(algebra, u, v), reps[a], reps[b])
                for o, c in sorted(project(prod).items()):
                    dot_entries.append((o, (a, b), c))
            if b > a and da + db - 1 <= trust:
                br = _elem_bilinear(_bracket_elem, reps[a], reps[b])
                for o, c in sorted(project(br).items()):
                    bracket_entries.append((o, (a, b), c))

    diagonal = {}
    for a in range(len(kept)):
        da = basis.degrees[a]
        if da % 2 == 0 and 2 * da - 1 <= trust:
            br = _elem_bilinear(_bracket_elem, reps[a], reps[a])
            val = project(br)
            if val:
                diagonal[a] = val

    unit_class = project({((), algebra.unit_index): frac(1)})
    unit_index = None
    if len(unit_class) == 1:
        (p, c), = unit_class.items()
        if c == 1:
            unit_index = p
    h_spec = AlgebraSpec(basis, differential=None, bracket=bracket_entries,
                         dot=dot_entries, unit_index=unit_index)
    return GerstenhaberOnH(coh, trust, kept, h_spec, diagonal=diagonal)
