"""Quantum minors, index-set surgery, the Laplace expansion and the minor antipode."""

from itertools import combinations, permutations

from .exactmath import mq_pow
from .ncalg import NCPoly, antipode, eq_mod_det1, inversions, raw_minor


def index_set(items):
    s = tuple(sorted(items))
    if len(set(s)) != len(s):
        raise ValueError("repeated index")
    return s


def complement(I, n):
    return tuple(k for k in range(1, n + 1) if k not in I)


def ell(I, J):
    """Number of pairs (i, j) in I x J with i > j."""
    return sum(1 for i in I for j in J if i > j)


def surgery(I, i, j):
    """I_{ij}: replace i by j.  Returns None when the result is undefined."""
    I = tuple(I)
    if i == j:
        return I
    if i not in I or j in I:
        return None
    return index_set([j if k == i else k for k in I])


def subsets(n, size):
    return [tuple(c) for c in combinations(range(1, n + 1), size)]


def minor(n, I, J):
    """z^I_J = sum over sigma of (-q)^l(sigma) u^{i_1}_{sigma(j_1)} ... u^{i_r}_{sigma(j_r)}."""
    I, J = index_set(I), index_set(J)
    if len(I) != len(J):
        raise ValueError("|I| != |J|")
    if not I:
        return NCPoly.one(n)
    if I[-1] > n or J[-1] > n or I[0] < 1 or J[0] < 1:
        raise ValueError("index out of range")
    return raw_minor(n, I, J)


def minor_rowform(n, I, J):
    """Same minor, summing over permutations of the row indices instead."""
    I, J = index_set(I), index_set(J)
    out = NCPoly(n)
    for perm in permutations(range(len(I))):
        pairs = [(I[perm[a]], J[a]) for a in range(len(I))]
        out = out + NCPoly.word(n, pairs).scale(mq_pow(inversions(perm)))
    return out


def z_plus(n, r, I):
    """z^I: minor with columns {1..r}."""
    return minor(n, I, range(1, r + 1))


def z_minus(n, r, J):
    """z-bar^J: minor with columns {r+1..n}."""
    return minor(n, J, range(r + 1, n + 1))


def z_pair(n, r, I, J):
    return z_plus(n, r, I) * z_minus(n, r, J)


def laplace_check(n, I, J, J1):
    """Row Laplace expansion of z^I_J along the column subset J1, compared exactly."""
    I, J, J1 = index_set(I), index_set(J), index_set(J1)
    if not set(J1) <= set(J):
        raise ValueError("J1 must be a subset of J")
    J2 = tuple(j for j in J if j not in J1)
    lhs = minor(n, I, J).scale(mq_pow(ell(J1, J2)))
    rhs = NCPoly(n)
    for I1 in combinations(I, len(J1)):
        I2 = tuple(i for i in I if i not in I1)
        rhs = rhs + (minor(n, I1, J1) * minor(n, I2, J2)).scale(mq_pow(ell(I1, I2)))
    return lhs == rhs


def star_minor_check(n, I, J):
    """S(z^J_I) equals (-q)^(l(J,J^c) - l(I,I^c)) z^{I^c}_{J^c} modulo det - 1."""
    I, J = index_set(I), index_set(J)
    Ic, Jc = complement(I, n), complement(J, n)
    p, d = antipode(minor(n, J, I))
    target = minor(n, Ic, Jc).scale(mq_pow(ell(J, Jc) - ell(I, Ic)))
    return eq_mod_det1(p, target)


def format_index_set(I):
    return "{" + ",".join(str(i) for i in I) + "}"


def parse_index_set(text):
    body = text.strip().strip("{}").strip()
    return index_set(int(t) for t in body.split(",")) if body else ()
