"""Cohomology and deterministic chain-level splittings.

Given a validated presentation with differential d, this module computes a
basis of Ker d / Im d with explicit representatives and constructs the
triple of maps (i, p, q): an inclusion of representatives, a projection
onto them, and a homotopy q with

    p o i = Id,    i o p + d o q + q o d = Id,

strengthened by the side conditions q o i = 0, p o q = 0, q o q = 0 and
p o d = 0.  The side conditions make every preimage choice downstream
canonical: the preferred preimage of a d-exact vector x is q x.

Construction: the space decomposes as R + Im d + C where R is a greedy
lexicographic complement of Im d inside Ker d (the unit, when present, is
forced to be the first representative), and C is a set of coordinate
vectors mapped isomorphically onto Im d by d.  q inverts d from Im d back
to C and vanishes on R and C.
"""

from fractions import Fraction

from .algebras import ValidationReport
from .exactq import (
    extend_independent,
    identity,
    invert,
    is_zero_matrix,
    kernel_basis,
    mat_mul,
    mat_vec,
    rank,
    unit_vector,
    zeros,
)
from .graded import GradedBasis


class CohomologyBasis:
    """Ordered classes of Ker d / Im d with chosen representatives."""

    def __init__(self, classes):
        self.classes = list(classes)

    @property
    def dim(self):
        return len(self.classes)

    @property
    def names(self):
        return [name for name, _, _ in self.classes]

    @property
    def degrees(self):
        return [deg for _, deg, _ in self.classes]

    @property
    def representatives(self):
        return [list(vec) for _, _, vec in self.classes]

    def basis(self):
        return GradedBasis(self.names, self.degrees)

    def __repr__(self):
        return "CohomologyBasis(%s)" % ", ".join(
            "%s:%d" % (n, d) for n, d, _ in self.classes)


class Splitting:
    """The maps (i, p, q) together with the underlying cohomology basis."""

    def __init__(self, cohomology_basis, i, p, q):
        self.cohomology = cohomology_basis
        self.i = i      # columns: representatives, (dim g) x (dim H)
        self.p = p      # (dim H) x (dim g)
        self.q = q      # (dim g) x (dim g)

    @property
    def ambient_dim(self):
        return len(self.q)

    def project(self, vec):
        return mat_vec(self.p, vec)

    def include(self, coords):
        return mat_vec(self.i, coords)

    def homotopy(self, vec):
        return mat_vec(self.q, vec)


def _check_d_squared(spec):
    d = spec.d_matrix()
    if not is_zero_matrix(mat_mul(d, d)):
        raise ValueError("d o d != 0")
    return d


def _vector_degree(spec, vec):
    degs = {spec.basis.degrees[k] for k, c in enumerate(vec) if c != 0}
    if len(degs) != 1:
        raise ValueError("representative of mixed degree")
    return degs.pop()


def cohomology(spec):
    """Basis of Ker d / Im d with deterministic representatives."""
    d = _check_d_squared(spec)
    n = spec.basis.dim
    image = [mat_vec(d, unit_vector(n, j)) for j in _image_input_indices(d)]
    candidates = []
    if spec.unit_index is not None:
        candidates.append(unit_vector(n, spec.unit_index))
    candidates.extend(kernel_basis(d))
    reps = extend_independent(image, candidates)
    classes = []
    for vec in reps:
        support = [k for k, c in enumerate(vec) if c != 0]
        if len(support) == 1 and vec[support[0]] == 1:
            name = spec.basis.names[support[0]]
        else:
            name = "h%d" % len(classes)
        classes.append((name, _vector_degree(spec, vec), vec))
    return CohomologyBasis(classes)


def _image_input_indices(d, order="forward"):
    """Input indices j, scanned in the given order, with d e_j independent."""
    n = len(d)
    scan = range(n) if order == "forward" else range(n - 1, -1, -1)
    cols = [[row[j] for row in d] for j in range(n)]
    kept_inputs = []
    kept_cols = []
    for j in scan:
        if any(c != 0 for c in cols[j]):
            grew = extend_independent(kept_cols, [cols[j]])
            if grew:
                kept_cols.append(cols[j])
                kept_inputs.append(j)
    return kept_inputs


def build_splitting(spec, c_order="forward"):
    """Deterministic (i, p, q) for a validated presentation.

    ``c_order`` chooses the scan direction used to pick the complement C
    of Ker d: "forward" scans basis vectors from the left, "reverse" from
    the right.  Both choices share the same representatives, so they give
    two genuinely different, equally valid splittings whenever d admits
    more than one preimage choice.
    """
    if c_order not in ("forward", "reverse"):
        raise ValueError("unknown c_order %r" % (c_order,))
    d = _check_d_squared(spec)
    n = spec.basis.dim
    coh = cohomology(spec)
    reps = coh.representatives
    h = len(reps)
    c_inputs = _image_input_indices(d, c_order)
    c_vecs = [unit_vector(n, j) for j in c_inputs]
    im_vecs = [mat_vec(d, v) for v in c_vecs]
    # change of basis: columns are R, then Im d, then C
    cols = reps + im_vecs + c_vecs
    if len(cols) != n:
        raise ValueError("splitting blocks do not fill the space")
    B = [[cols[j][k] for j in range(n)] for k in range(n)]
    Binv = invert(B)
    r = len(im_vecs)
    i = [[reps[j][k] for j in range(h)] for k in range(n)]
    p = [Binv[j] for j in range(h)]
    q = [[sum((c_vecs[t][k] * Binv[h + t][j] for t in range(r)),
              Fraction(0)) for j in range(n)] for k in range(n)]
    return Splitting(coh, i, p, q)


def verify_splitting(spec, s):
    """Exact check of the five splitting identities and two rank laws."""
    report = ValidationReport("splitting")
    d = spec.d_matrix()
    n = len(d)
    ih = identity(len(s.p))
    ig = identity(n)
    ip = mat_mul(s.i, s.p) if s.p else zeros(n, n)
    checks = [
        ("p_i", mat_mul(s.p, s.i), ih),
        ("homotopy", _mat_sum(ip, mat_mul(d, s.q), mat_mul(s.q, d)), ig),
        ("q_i", mat_mul(s.q, s.i), None),
        ("p_q", mat_mul(s.p, s.q), None),
        ("q_q", mat_mul(s.q, s.q), None),
        ("p_d", mat_mul(s.p, d), None),
    ]
    for name, got, want in checks:
        if want is None:
            ok = is_zero_matrix(got)
        else:
            ok = got == want
        if not ok:
            report.add(name, (), detail="identity fails")
    # Ker(p) n Ker(d) = Im(d) and Ker(d) + Ker(p) = everything, as ranks
    rank_d = rank(d)
    stacked = s.p + d
    if rank(_cols_to_matrix(_kernel_cols(stacked), n)) != rank_d:
        report.add("ker_p_ker_d", (), detail="!= Im d")
    ker_p = ([[Fraction(k == j) for k in range(n)] for j in range(n)]
             if not s.p else _kernel_cols(s.p))
    union = ker_p + _kernel_cols(d)
    if rank(_cols_to_matrix(union, n)) != n:
        report.add("ker_d_plus_ker_p", (), detail="!= whole space")
    return report


def _mat_sum(*ms):
    out = [list(row) for row in ms[0]]
    for m in ms[1:]:
        for k, row in enumerate(m):
            for j, c in enumerate(row):
                out[k][j] += c
    return out


def _kernel_cols(m):
    return kernel_basis(m)


def _cols_to_matrix(cols, n):
    if not cols:
        return [[Fraction(0)] for _ in range(n)]
    return [[col[k] for col in cols] for k in range(n)]


class Phi:
    """A chain projection onto cohomology, carried with its splitting."""

    def __init__(self, splitting):
        self.splitting = splitting
        self.matrix = splitting.p

    def __call__(self, vec):
        return mat_vec(self.matrix, vec)


def phi_from_splitting(s):
    """View p as a quasi-isomorphism onto the cohomology of the input."""
    return Phi(s)
