"""Symmetric-words engine (internal).

Odd-convention tensors are wedge-like with respect to *shifted* parities;
twisting an n-ary operation by decalage_sign turns it into an honestly
graded-symmetric operation with respect to the *stored* parities.  On that
symmetric side the coderivation/coalgebra calculus has its textbook form,
which is what this module implements:

    pi_1(Q Q)(w)   = sum_S eps(S) m_{n-k+1}( m_k(w_S), w \\ S )
    pi_1(F Q)(w)   = sum_S eps(S) F_{n-k+1}( m_k(w_S), w \\ S )
    pi_1(Q' F)(w)  = sum_{partitions P} eps(P) m'_r( F(B_1), ..., F(B_r) )

where eps is the plain symmetric Koszul sign of extracting the subset /
blocks to the front, computed from stored parities.  Words are tuples of
basis indices; odd-parity repeats make a word vanish identically.
"""

from itertools import combinations

from .exactq import ZERO
from .graded import eps_symmetric
from .conventions import decalage_sign


def sym_apply(tensor, tpl, parities):
    """Value of an odd-convention tensor in the symmetric dictionary."""
    sign = decalage_sign([parities[i] for i in tpl])
    col = tensor.apply(tpl)
    if sign == 1:
        return dict(col)
    return {o: -c for o, c in col.items()}


def set_partitions(positions):
    """All partitions of ``positions`` into unordered blocks (each yielded
    once, blocks as ascending tuples)."""
    positions = list(positions)
    if not positions:
        yield []
        return
    first, rest = positions[0], positions[1:]
    for part in set_partitions(rest):
        yield [(first,)] + part
        for b in range(len(part)):
            yield part[:b] + [(first,) + part[b]] + part[b + 1:]


def _extraction_sign(blocks_in_order, elt_parities):
    perm = [p for block in blocks_in_order for p in block]
    return eps_symmetric(perm, elt_parities)


def _acc(total, items, factor):
    for o, v in items:
        c = total.get(o, ZERO) + factor * v
        if c == 0:
            total.pop(o, None)
        else:
            total[o] = c


def linf_word_defect(structure, word):
    """pi_1(Q Q) on a word; zero for every word iff the homotopy Jacobi
    identities hold up to the word's length."""
    n = len(word)
    p = structure.host.parities
    ep = [p[i] for i in word]
    total = {}
    for k in range(1, n + 1):
        mk = structure.op(k)
        if mk.is_zero():
            continue
        ml = structure.op(n - k + 1)
        if ml.is_zero():
            continue
        for S in combinations(range(n), k):
            rest = tuple(t for t in range(n) if t not in S)
            eps = _extraction_sign((S, rest), ep)
            inner = sym_apply(mk, tuple(word[s] for s in S), p)
            if not inner:
                continue
            rest_idx = tuple(word[r] for r in rest)
            for m_idx, c in inner.items():
                out = sym_apply(ml, (m_idx,) + rest_idx, p)
                _acc(total, out.items(), eps * c)
    return total


def morphism_lhs(F, src, word):
    """pi_1(F Q)(w) over the target basis."""
    n = len(word)
    p = F.source.parities
    ep = [p[i] for i in word]
    total = {}
    for k in range(1, n + 1):
        mk = src.op(k)
        if mk.is_zero():
            continue
        Fj = F.component(n - k + 1)
        if Fj.is_zero():
            continue
        for S in combinations(range(n), k):
            rest = tuple(t for t in range(n) if t not in S)
            eps = _extraction_sign((S, rest), ep)
            inner = sym_apply(mk, tuple(word[s] for s in S), p)
            if not inner:
                continue
            rest_idx = tuple(word[r] for r in rest)
            for m_idx, c in inner.items():
                out = sym_apply(Fj, (m_idx,) + rest_idx, p)
                _acc(total, out.items(), eps * c)
    return total


def morphism_rhs(F, tgt, word):
    """pi_1(Q' F)(w) over the target basis."""
    n = len(word)
    p_src = F.source.parities
    p_tgt = F.target.parities
    ep = [p_src[i] for i in word]
    total = {}
    for partition in set_partitions(range(n)):
        r = len(partition)
        mr = tgt.op(r)
        if mr.is_zero():
            continue
        eps = _extraction_sign(partition, ep)
        vecs = []
        for block in partition:
            FB = F.component(len(block))
            v = sym_apply(FB, tuple(word[b] for b in block), p_src)
            if not v:
                vecs = None
                break
            vecs.append(v)
        if vecs is None:
            continue
        stack = [((), eps)]
        for v in vecs:
            stack = [(tpl + (o,), c * cv)
                     for tpl, c in stack for o, cv in v.items()]
        for tpl, c in stack:
            _acc(total, sym_apply(mr, tpl, p_tgt).items(), c)
    return total


def morphism_word_defect(F, src, tgt, word):
    """pi_1(F Q - Q' F)(w); zero on all words iff F is a morphism of
    homotopy Lie structures up to the inspected word length."""
    total = morphism_lhs(F, src, word)
    _acc(total, morphism_rhs(F, tgt, word).items(), -1)
    return total
