"""Rectangular tableaux, standard monomials, dimensions and K_i weights."""

import json
from fractions import Fraction
from functools import reduce

from .minors import minor
from .ncalg import NCPoly


class Tableau:
    """Rectangular tableau stored row-major: rows[a][s] is the entry in row a, column s."""

    def __init__(self, rows):
        self.rows = tuple(tuple(r) for r in rows)
        if len({len(r) for r in self.rows}) > 1:
            raise ValueError("only rectangular shapes are supported")

    @property
    def shape(self):
        return (len(self.rows[0]) if self.rows else 0,) * len(self.rows)

    def columns(self):
        if not self.rows:
            return []
        return [tuple(r[s] for r in self.rows) for s in range(len(self.rows[0]))]

    def is_semistandard(self):
        for r in self.rows:
            if any(r[s] > r[s + 1] for s in range(len(r) - 1)):
                return False
        for c in self.columns():
            if any(c[a] >= c[a + 1] for a in range(len(c) - 1)):
                return False
        return True

    def __eq__(self, other):
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "Tableau(%r)" % (self.rows,)

    def to_json(self):
        return json.dumps([list(r) for r in self.rows])

    @classmethod
    def from_json(cls, text):
        return cls(json.loads(text))


def enumerate_ssyt(r, k, n):
    """All semistandard fillings of the r x k rectangle with entries 1..n.

    Columns are strictly increasing r-subsets; rows weakly increase, so a
    filling is a chain of columns that dominate each other entrywise.
    """
    if k == 0:
        return [Tableau([()] * r)]
    from itertools import combinations

    cols = list(combinations(range(1, n + 1), r))
    out = []

    def extend(chain):
        if len(chain) == k:
            out.append(Tableau([[c[a] for c in chain] for a in range(r)]))
            return
        last = chain[-1] if chain else None
        for c in cols:
            if last is None or all(x <= y for x, y in zip(last, c)):
                extend(chain + [c])

    extend([])
    return out


def dim_formula(r, k, n):
    """Hook-content value for the r x k rectangle over GL_n."""
    terms = (Fraction(k + i + j - 1, i + j - 1) for i in range(1, r + 1) for j in range(1, n - r + 1))
    v = reduce(lambda a, b: a * b, terms, Fraction(1))
    assert v.denominator == 1
    return int(v)


def standard_monomial(T, n):
    """z^T: ordered product of the column minors z^{T_s} with columns {1..|T_s|}."""
    if not T.is_semistandard():
        raise ValueError("tableau is not semistandard")
    out = NCPoly.one(n)
    for col in T.columns():
        out = out * minor(n, col, range(1, len(col) + 1))
    return out


def _gen_weight(idx, n):
    # <K_m, u^a_a> = q^-1 if a == m, q if a == m + 1
    w = [0] * (n - 1)
    if idx <= n - 1:
        w[idx - 1] -= 1
    if idx >= 2:
        w[idx - 2] += 1
    return w


def k_weight(f, side="col"):
    """Exponent vector of the K_i eigenvalue of f.

    ``side='col'`` reads generator column indices; ``side='row'`` reads row
    indices, which is the action on the left coaction leg and separates
    standard monomials by content.
    """
    n = f.n
    weights = set()
    for w in f.terms:
        acc = [0] * (n - 1)
        for g in w:
            a = g // n + 1 if side == "row" else g % n + 1
            acc = [x + y for x, y in zip(acc, _gen_weight(a, n))]
        weights.add(tuple(acc))
    if len(weights) > 1:
        raise ValueError("element does not have a single weight")
    return weights.pop() if weights else tuple([0] * (n - 1))


def content(T, n):
    counts = [0] * n
    for row in T.rows:
        for x in row:
            counts[x - 1] += 1
    return tuple(counts)
