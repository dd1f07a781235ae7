"""First-order calculus data: coordinate functionals, the operators dbar and del, projections.

Coordinates are raw Q_ji evaluations (no basis normalization).  The form
dbar(g) has components sum g_(1) Q_ji(g_(2)) over (i, j) in R x R^c, and
del the same over R^c x R.
"""

import json
from functools import lru_cache

from .exactmath import ONE, ZERO, ExactMatrix, rank_exact
from .minors import minor, subsets, surgery, z_pair
from .ncalg import NCPoly, _accumulate, _mul_words, counit
from .rform import _q_word_transfer, killing_Q

DOMAINS = ("offdiag", "holo", "antiholo", "levi")


def index_pairs(n, r, domain):
    R = range(1, r + 1)
    Rc = range(r + 1, n + 1)
    full = range(1, n + 1)
    if domain == "antiholo":
        return [(i, j) for i in R for j in Rc]
    if domain == "holo":
        return [(i, j) for i in Rc for j in R]
    if domain == "levi":
        return [(i, j) for i in R for j in R]
    if domain == "offdiag":
        return [(i, j) for i in full for j in full if i != j]
    raise ValueError("unknown domain %r" % domain)


class FormVector:
    def __init__(self, n, r, domain, comps=None):
        if domain not in DOMAINS:
            raise ValueError("unknown domain %r" % domain)
        self.n, self.r, self.domain = n, r, domain
        allowed = set(index_pairs(n, r, domain))
        self.comps = {}
        for key, v in (comps or {}).items():
            if key not in allowed:
                raise ValueError("index %r outside domain %s" % (key, domain))
            if not v.is_zero():
                self.comps[key] = v

    def __getitem__(self, key):
        return self.comps.get(key, NCPoly(self.n))

    def is_zero(self):
        return not self.comps

    def __eq__(self, other):
        return self.n == other.n and self.comps == other.comps

    def __add__(self, other):
        out = dict(self.comps)
        for k, v in other.comps.items():
            out[k] = out[k] + v if k in out else v
        return FormVector(self.n, self.r, self.domain, out)

    def scale(self, c):
        return FormVector(self.n, self.r, self.domain, {k: v.scale(c) for k, v in self.comps.items()})

    def to_json(self):
        return json.dumps({"%d,%d" % k: str(v) for k, v in sorted(self.comps.items())}, sort_keys=True)


def _form(g, pairs, rscale=None):
    """{(i, j): sum g_(1) Q_ji(g_(2))} by a pruned walk over the coproduct choices."""
    n = g.n
    want = {(j - 1, i - 1): (i, j) for i, j in pairs}
    out = {p: {} for p in pairs}
    for w, c in g.terms.items():
        d = len(w)
        cols = [x % n for x in w]
        rows = [x // n for x in w]

        def walk(t, left, right):
            if t == d:
                state = _q_word_transfer(n, right, rscale)
                for key, v in state:
                    if key in want:
                        bucket = out[want[key]]
                        cv = c * v
                        for nw, nc in _mul_words(n, (), left):
                            _accumulate(bucket, nw, cv * nc)
                return
            for k in range(n):
                nr = right + (k * n + cols[t],)
                if _q_word_transfer(n, nr, rscale):
                    walk(t + 1, left + (rows[t] * n + k,), nr)

        walk(0, (), ())
    return {p: NCPoly(n, terms) for p, terms in out.items()}


def dbar(g, r, rscale=None):
    return FormVector(g.n, r, "antiholo", _form(g, index_pairs(g.n, r, "antiholo"), rscale))


def del_(g, r, rscale=None):
    return FormVector(g.n, r, "holo", _form(g, index_pairs(g.n, r, "holo"), rscale))


def full_form(g, r, rscale=None):
    """All off-diagonal coordinates of g_(1) (x) [g_(2)+]."""
    return FormVector(g.n, r, "offdiag", _form(g, index_pairs(g.n, r, "offdiag"), rscale))


def dbar_brute(g, r):
    """dbar by full coproduct expansion and brute-force Q; an independent cross-check."""
    from .ncalg import coproduct

    n = g.n
    pairs = index_pairs(n, r, "antiholo")
    out = {p: NCPoly(n) for p in pairs}
    for (w1, w2), c in coproduct(g).terms.items():
        qm = killing_Q(NCPoly(n, {w2: ONE}), mode="brute")
        for i, j in pairs:
            v = qm[j - 1][i - 1]
            if v:
                out[(i, j)] = out[(i, j)] + NCPoly(n, {w1: c * v})
    return FormVector(n, r, "antiholo", out)


def dbar_minor_closed(n, r, I, J):
    """Closed form for minors: sum over R x R^c of Q_ji(z^{J_ji}_J) z^I_{J_ji}."""
    out = {}
    for i, j in index_pairs(n, r, "antiholo"):
        K = surgery(J, j, i)
        if K is None:
            continue
        c = killing_Q(minor(n, K, J))[j - 1][i - 1]
        if c:
            out[(i, j)] = minor(n, I, K).scale(c)
    return FormVector(n, r, "antiholo", out)


def proj_V0(v):
    keep = {(i, j): p for (i, j), p in v.comps.items() if i <= v.r and j <= v.r}
    return FormVector(v.n, v.r, "levi", keep)


def lambda1_coord(g, i, j):
    """Coordinate of [g+] along b_ij: Q_ji(g) - eps(g) Q_ji(1)."""
    if i == j:
        raise ValueError("diagonal coordinates are not supported")
    q = killing_Q(g)[j - 1][i - 1]
    return q  # Q_ji(1) = 0 off the diagonal, so the counit term drops out


@lru_cache(maxsize=None)
def pair_generators(n, r):
    return [(I, J, z_pair(n, r, I, J)) for I in subsets(n, r) for J in subsets(n, n - r)]


def hk_first_order_dim(n, r):
    if not (n >= 2 and 1 <= r < n):
        raise ValueError("need n >= 2 and 1 <= r < n")
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j and ((i <= r) != (j <= r))]
    rows = []
    for _, _, z in pair_generators(n, r):
        qm = killing_Q(z)
        rows.append({c: qm[j - 1][i - 1] for c, (i, j) in enumerate(pairs) if qm[j - 1][i - 1]})
    m = ExactMatrix(len(rows), len(pairs), rows)
    return rank_exact(m)


def lambda_constants(n, r):
    """Constants of [z^{R_ij R^c}] along b_ji, keyed by (i, j) in R x R^c."""
    from .minors import z_minus, z_plus

    R = tuple(range(1, r + 1))
    Rc = tuple(range(r + 1, n + 1))
    out = {}
    for i in R:
        for j in Rc:
            I = surgery(R, i, j)
            z = z_plus(n, r, I) * z_minus(n, r, Rc)
            out[(i, j)] = lambda1_coord(z, j, i)
    return out
