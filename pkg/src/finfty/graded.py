"""Graded linear data: sign rules, basis bookkeeping, truncated power series
in graded coordinates, and derivations of the coordinate ring.

Conventions used throughout the package:

* parity of a basis element / generator is its Z-degree mod 2;
* reordering signs are Koszul signs computed from parities;
* coordinate generators t^i dual to a degree-d basis vector carry Z-degree
  2 - d (so their parity matches the basis vector's);
* derivations act through *left* partial derivatives and coefficients
  multiply from the left:  D(f) = sum_k D^k . d_k(f).
"""

from fractions import Fraction

from .exactq import ZERO, ONE, frac


def koszul_sign(perm, parities):
    """Sign c(s) with  v_{s(1)} ^ ... ^ v_{s(n)} = c(s) . v_1 ^ ... ^ v_n
    in the free graded-commutative (wedge-like) algebra.

    ``perm[i]`` is the original position of the element standing in slot i;
    ``parities[j]`` is the parity of original element j.  An adjacent swap of
    elements a, b contributes -(-1)^{p_a p_b}: two odds commute at +1, any
    other pair anticommutes.
    """
    perm = list(perm)
    sign = 1
    n = len(perm)
    for _ in range(n):
        done = True
        for i in range(n - 1):
            if perm[i] > perm[i + 1]:
                pa = parities[perm[i]] & 1
                pb = parities[perm[i + 1]] & 1
                sign *= -1 if (pa * pb == 0) else 1
                perm[i], perm[i + 1] = perm[i + 1], perm[i]
                done = False
        if done:
            break
    return sign


def eps_symmetric(perm, parities):
    """Plain Koszul sign for the symmetric convention: an adjacent swap of
    two odd elements gives -1, every other swap gives +1."""
    perm = list(perm)
    sign = 1
    n = len(perm)
    for _ in range(n):
        done = True
        for i in range(n - 1):
            if perm[i] > perm[i + 1]:
                if (parities[perm[i]] & 1) and (parities[perm[i + 1]] & 1):
                    sign = -sign
                perm[i], perm[i + 1] = perm[i + 1], perm[i]
                done = False
        if done:
            break
    return sign


def perm_sign(perm):
    """Ordinary signature of a permutation (parities all even => Koszul)."""
    return koszul_sign(perm, [0] * len(perm))


class GradedBasis:
    """Named, Z-graded basis of a finite-dimensional vector space."""

    def __init__(self, names, degrees):
        if len(names) != len(degrees):
            raise ValueError("names and degrees must have equal length")
        if len(set(names)) != len(names):
            raise ValueError("duplicate basis names")
        self.names = list(names)
        self.degrees = [int(d) for d in degrees]
        self._index = {n: i for i, n in enumerate(self.names)}

    @property
    def dim(self):
        return len(self.names)

    def parity(self, i):
        return self.degrees[i] & 1

    @property
    def parities(self):
        return [d & 1 for d in self.degrees]

    def index(self, name_or_idx):
        if isinstance(name_or_idx, int):
            if not 0 <= name_or_idx < self.dim:
                raise KeyError("basis index out of range: %r" % name_or_idx)
            return name_or_idx
        if name_or_idx not in self._index:
            raise KeyError("unknown basis name: %r" % (name_or_idx,))
        return self._index[name_or_idx]

    def indices_of_degree(self, d):
        return [i for i, deg in enumerate(self.degrees) if deg == d]

    def __repr__(self):
        return "GradedBasis(%s)" % ", ".join(
            "%s:%d" % (n, d) for n, d in zip(self.names, self.degrees))


def sort_monomial(indices, parities):
    """Canonicalize a tuple of generator indices.

    Returns (sorted_tuple, sign) with sign the Koszul factor for the sort
    (odd-odd transposition -> -1), or (None, 0) when an odd generator
    repeats and the monomial vanishes.
    """
    idx = list(indices)
    sign = 1
    n = len(idx)
    for _ in range(n):
        done = True
        for i in range(n - 1):
            if idx[i] > idx[i + 1]:
                if (parities[idx[i]] & 1) and (parities[idx[i + 1]] & 1):
                    sign = -sign
                idx[i], idx[i + 1] = idx[i + 1], idx[i]
                done = False
        if done:
            break
    for i in range(n - 1):
        if idx[i] == idx[i + 1] and (parities[idx[i]] & 1):
            return None, 0
    return tuple(idx), sign


class CoordinateRing:
    """Free graded-commutative coordinate ring k[[t^0, ..., t^{m-1}]]
    truncated at polynomial order N (words of length > N are dropped).

    Generator t^i dual to a basis vector of degree d_i has Z-degree
    2 - d_i; its parity equals d_i mod 2.  I denotes the ideal generated
    by all t^i, so "order" below is the I-adic word length.
    """

    def __init__(self, names, gen_degrees, truncation):
        if truncation < 1:
            raise ValueError("truncation must be >= 1")
        self.names = list(names)
        self.gen_degrees = [int(d) for d in gen_degrees]
        self.parities = [d & 1 for d in self.gen_degrees]
        self.truncation = int(truncation)

    @classmethod
    def dual_to(cls, basis, truncation, prefix="t_"):
        """Ring of coordinates dual to ``basis``: |t^i| = 2 - deg(e_i)."""
        names = [prefix + n for n in basis.names]
        return cls(names, [2 - d for d in basis.degrees], truncation)

    @property
    def num_gens(self):
        return len(self.names)

    def zero(self):
        return TruncatedSeries(self, {})

    def one(self):
        return TruncatedSeries(self, {(): ONE})

    def gen(self, i):
        return TruncatedSeries(self, {(i,): ONE})

    def monomial(self, indices, coeff=ONE):
        coeff = frac(coeff)
        if len(indices) > self.truncation or coeff == 0:
            return self.zero()
        mono, sign = sort_monomial(indices, self.parities)
        if mono is None:
            return self.zero()
        return TruncatedSeries(self, {mono: sign * coeff})

    def series(self, terms):
        out = self.zero()
        for indices, coeff in terms.items():
            out = out + self.monomial(indices, coeff)
        return out

    def z_degree(self, mono):
        return sum(self.gen_degrees[i] for i in mono)

    def mono_parity(self, mono):
        return sum(self.parities[i] for i in mono) & 1

    def format_monomial(self, mono):
        if not mono:
            return "1"
        parts = []
        i = 0
        while i < len(mono):
            j = i
            while j < len(mono) and mono[j] == mono[i]:
                j += 1
            name = self.names[mono[i]]
            parts.append(name if j - i == 1 else "%s^%d" % (name, j - i))
            i = j
        return "*".join(parts)


def _merge_monomials(m1, m2, parities):
    """Merge two sorted monomials; return (merged, sign) or (None, 0)."""
    sign = 1
    out = []
    i, j = 0, 0
    # parity of the not-yet-consumed tail m1[i:], maintained incrementally
    tail = sum(parities[a] for a in m1) & 1
    while i < len(m1) and j < len(m2):
        if m1[i] <= m2[j]:
            tail ^= parities[m1[i]]
            out.append(m1[i])
            i += 1
        else:
            # m2[j] jumps over everything still left in m1
            if parities[m2[j]] and tail:
                sign = -sign
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    for k in range(len(out) - 1):
        if out[k] == out[k + 1] and parities[out[k]]:
            return None, 0
    return tuple(out), sign


class TruncatedSeries:
    """Element of a truncated CoordinateRing: {sorted index tuple: Fraction}."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if c != 0}

    def is_zero(self):
        return not self.terms

    def coeff(self, indices):
        mono, sign = sort_monomial(indices, self.ring.parities)
        if mono is None:
            return ZERO
        return sign * self.terms.get(mono, ZERO)

    def order_part(self, n):
        """Homogeneous word-length-n part (the [n] filtration slice)."""
        return TruncatedSeries(
            self.ring, {m: c for m, c in self.terms.items() if len(m) == n})

    def up_to_order(self, n):
        return TruncatedSeries(
            self.ring, {m: c for m, c in self.terms.items() if len(m) <= n})

    def min_order(self):
        return min((len(m) for m in self.terms), default=None)

    def constant_term(self):
        return self.terms.get((), ZERO)

    def z_degrees(self):
        return sorted({self.ring.z_degree(m) for m in self.terms})

    def is_homogeneous(self, degree=None):
        degs = self.z_degrees()
        if not degs:
            return True
        if degree is None:
            return len(degs) == 1
        return degs == [degree]

    def parity(self):
        """Uniform parity of all monomials; raises on mixed parity."""
        ps = {self.ring.mono_parity(m) for m in self.terms}
        if len(ps) > 1:
            raise ValueError("series of mixed parity")
        return ps.pop() if ps else 0

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.monomial((), other)
        if other.ring is not self.ring:
            raise ValueError("ring mismatch")
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, ZERO) + c
        return TruncatedSeries(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self + (-frac(other))
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = frac(other)
            return TruncatedSeries(
                self.ring, {m: c * v for m, v in self.terms.items()})
        if other.ring is not self.ring:
            raise ValueError("ring mismatch")
        N = self.ring.truncation
        parities = self.ring.parities
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                if len(m1) + len(m2) > N:
                    continue
                merged, sign = _merge_monomials(m1, m2, parities)
                if merged is None:
                    continue
                terms[merged] = terms.get(merged, ZERO) + sign * c1 * c2
        return TruncatedSeries(self.ring, terms)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.monomial((), other)
        return self.ring is other.ring and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms, key=lambda m: (len(m), m)):
            c = self.terms[m]
            mono = self.ring.format_monomial(m)
            if mono == "1":
                bits.append(str(c))
            elif c == 1:
                bits.append(mono)
            elif c == -1:
                bits.append("-" + mono)
            else:
                bits.append("%s*%s" % (c, mono))
        return " + ".join(bits).replace("+ -", "- ")


def partial(ring, k, series):
    """Left partial derivative d_k:  d_k(t^{a_1}...t^{a_n}) picks up the
    Koszul sign (-1)^{p_k (p_{a_1}+...+p_{a_{j-1}})} for removing slot j."""
    pk = ring.parities[k]
    terms = {}
    for mono, c in series.terms.items():
        prefix = 0
        for j, a in enumerate(mono):
            if a == k:
                rest = mono[:j] + mono[j + 1:]
                s = -1 if (pk and (prefix & 1)) else 1
                terms[rest] = terms.get(rest, ZERO) + s * c
            prefix ^= ring.parities[a]
    return TruncatedSeries(ring, terms)


class Derivation:
    """Derivation of a CoordinateRing, D = sum_k D^k . d_k (left partials,
    coefficients multiplying from the left).  ``coeffs[k]`` is exactly
    D(t^k); a missing key means D kills that generator.
    """

    def __init__(self, ring, parity, coeffs):
        self.ring = ring
        self.parity = parity & 1
        self.coeffs = {k: s for k, s in coeffs.items() if not s.is_zero()}

    @classmethod
    def zero(cls, ring, parity=1):
        return cls(ring, parity, {})

    def coeff(self, k):
        return self.coeffs.get(k, self.ring.zero())

    def __call__(self, series):
        out = self.ring.zero()
        for k, dk in self.coeffs.items():
            out = out + dk * partial(self.ring, k, series)
        return out

    def __add__(self, other):
        assert self.ring is other.ring and self.parity == other.parity
        keys = set(self.coeffs) | set(other.coeffs)
        return Derivation(self.ring, self.parity,
                          {k: self.coeff(k) + other.coeff(k) for k in keys})

    def __sub__(self, other):
        return self + (-1) * other

    def __rmul__(self, scalar):
        return Derivation(self.ring, self.parity,
                          {k: s * frac(scalar) for k, s in self.coeffs.items()})

    def __eq__(self, other):
        return (self.ring is other.ring and self.parity == other.parity
                and self.coeffs == other.coeffs)

    def order_part(self, n):
        return Derivation(self.ring, self.parity,
                          {k: s.order_part(n) for k, s in self.coeffs.items()})

    def up_to_order(self, n):
        return Derivation(self.ring, self.parity,
                          {k: s.up_to_order(n) for k, s in self.coeffs.items()})

    def commutator(self, other):
        """[A, B] = A B - (-1)^{AB} B A, again a derivation; computed on
        generators."""
        sgn = -1 if (self.parity and other.parity) else 1
        coeffs = {}
        for k in range(self.ring.num_gens):
            tk = self.ring.gen(k)
            val = self(other(tk)) - sgn * other(self(tk))
            if not val.is_zero():
                coeffs[k] = val
        return Derivation(self.ring, (self.parity + other.parity) & 1, coeffs)

    def z_shift(self):
        """Common Z-degree shift deg(D(t^k)) - deg(t^k); None for the zero
        derivation; raises if the shift is not uniform."""
        shifts = set()
        for k, s in self.coeffs.items():
            for d in s.z_degrees():
                shifts.add(d - self.ring.gen_degrees[k])
        if not shifts:
            return None
        if len(shifts) > 1:
            raise ValueError("derivation is not degree-homogeneous: %s" %
                             sorted(shifts))
        return shifts.pop()

    def __repr__(self):
        if not self.coeffs:
            return "Derivation(0)"
        bits = ["%s -> %r" % (self.ring.names[k], s)
                for k, s in sorted(self.coeffs.items())]
        return "Derivation(%s)" % "; ".join(bits)


def series_add(a, b):
    return a + b


def series_mul(a, b):
    return a * b


def series_scale(a, c):
    return a * frac(c)


def apply_derivation(D, f):
    if f.ring is not D.ring:
        raise ValueError("ring mismatch")
    return D(f)


def euler_field(ring):
    """Grading field E with E(f) = (|f|/2) f on Z-homogeneous f:
    E = sum_i (|t^i|/2) t^i d_i."""
    coeffs = {}
    for i, d in enumerate(ring.gen_degrees):
        if d != 0:
            coeffs[i] = ring.gen(i) * Fraction(d, 2)
    return Derivation(ring, 0, coeffs)
