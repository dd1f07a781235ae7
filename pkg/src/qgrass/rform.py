"""The coquasitriangular form r on C_q[M_n] and the Killing-type functionals Q_ij.

Everything is unscaled: the per-generator factor q^(-1/n) is dropped, so
r takes values in Q(q).  A global per-generator factor can be put back with
``rscale`` to check that kernel statements do not depend on it.
"""

from functools import lru_cache

from .exactmath import NU, ONE, ZERO, RatFunc, qpow
from .minors import surgery
from .ncalg import coproduct


def r_gen(i, j, k, l, rscale=None):
    """r(u^i_j (x) u^k_l) = q^d(ik) d(ij) d(kl) + nu theta(i-k) d(il) d(kj), theta(0) = 0."""
    v = ZERO
    if i == j and k == l:
        v = qpow(1 if i == k else 0)
    if i == l and k == j and i > k:
        v = v + NU
    return v * rscale if rscale is not None else v


def _identity(n):
    return [[ONE if a == b else ZERO for b in range(n)] for a in range(n)]


def _matmul(a, b):
    n = len(a)
    out = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for k in range(n):
            if a[i][k]:
                aik = a[i][k]
                row = b[k]
                for j in range(n):
                    if row[j]:
                        out[i][j] = out[i][j] + aik * row[j]
    return out


def _matadd(a, b, c=ONE):
    n = len(a)
    return [[a[i][j] + c * b[i][j] if b[i][j] else a[i][j] for j in range(n)] for i in range(n)]


@lru_cache(maxsize=None)
def _gen_tables(n, rscale):
    lp, lm = {}, {}
    for k in range(1, n + 1):
        for l in range(1, n + 1):
            g = (k - 1) * n + (l - 1)
            lp[g] = [[r_gen(i, a, k, l, rscale) for a in range(1, n + 1)] for i in range(1, n + 1)]
            lm[g] = [[r_gen(k, l, a, j, rscale) for j in range(1, n + 1)] for a in range(1, n + 1)]
    return lp, lm


def _word_l_plus(n, w, rscale=None):
    lp, _ = _gen_tables(n, rscale)
    out = _identity(n)
    for g in w:
        out = _matmul(lp[g], out)
    return out


def _word_l_minus(n, w, rscale=None):
    _, lm = _gen_tables(n, rscale)
    out = _identity(n)
    for g in w:
        out = _matmul(out, lm[g])
    return out


def l_plus(f, rscale=None):
    """Matrix r(u^i_a (x) f), bilinear in f."""
    n = f.n
    out = [[ZERO] * n for _ in range(n)]
    for w, c in f.terms.items():
        out = _matadd(out, _word_l_plus(n, w, rscale), c)
    return out


def l_minus(f, rscale=None):
    """Matrix r(f (x) u^a_j)."""
    n = f.n
    out = [[ZERO] * n for _ in range(n)]
    for w, c in f.terms.items():
        out = _matadd(out, _word_l_minus(n, w, rscale), c)
    return out


def r_eval(f, g, rscale=None):
    """r(f (x) g) for arbitrary f, g, by splitting the coproduct of f against the words of g."""
    n = f.n
    total = ZERO
    for wg, cg in g.terms.items():
        # r(f (x) x1...xd): peel generators off the right of g
        total = total + cg * _r_word(f, wg, rscale)
    return total


def _r_word(f, wg, rscale):
    from .ncalg import counit

    if not wg:
        return counit(f)
    n = f.n
    lm_total = ZERO
    # r(f (x) u^a_b) = sum over words of f of l_minus entries
    if len(wg) == 1:
        a, b = divmod(wg[0], n)
        m = l_minus(f, rscale)
        return m[a][b]
    head, last = wg[:-1], wg[-1]
    from .ncalg import NCPoly

    # r(f (x) g h) = r(f_(1) (x) h) r(f_(2) (x) g)
    for (w1, w2), c in coproduct(f).terms.items():
        left = _r_word(NCPoly(n, {w1: ONE}), (last,), rscale)
        if left:
            lm_total = lm_total + c * left * _r_word(NCPoly(n, {w2: ONE}), head, rscale)
    return lm_total


# -- Q ---------------------------------------------------------------------


def _transfer(n, state, g, rscale=None):
    """Q(w u^al_be) from Q(w), with Q stored as a sparse dict {(i, j): RatFunc}."""
    al, be = divmod(g, n)
    out = {}

    def add(key, v):
        x = out.get(key)
        x = v if x is None else x + v
        if x:
            out[key] = x
        else:
            out.pop(key, None)

    q1 = qpow(1)
    nu2 = NU * NU
    if al == be:
        for (i, j), x in state.items():
            e = (i == al) + (j == al)
            add((i, j), x * qpow(e) if e else x)
    else:
        if al > be:
            for (i, j), x in state.items():
                if j == be:
                    add((i, al), x * NU * (q1 if i == al else ONE))
        if be > al:
            for (i, j), x in state.items():
                if i == al:
                    add((be, j), x * NU * (q1 if j == be else ONE))
    x = state.get((al, be))
    if x:
        for m in range(max(al, be) + 1, n):
            add((m, m), x * nu2)
    if rscale is not None:
        s = rscale * rscale
        out = {k: v * s for k, v in out.items()}
    return out


def q_identity_state(n, rscale=None):
    return {(i, i): ONE for i in range(n)}


@lru_cache(maxsize=200000)
def _q_word_transfer(n, w, rscale):
    if not w:
        return tuple(q_identity_state(n).items())
    state = dict(_q_word_transfer(n, w[:-1], rscale))
    return tuple(_transfer(n, state, w[-1], rscale).items())


def _dense(n, state):
    out = [[ZERO] * n for _ in range(n)]
    for (i, j), v in state.items():
        out[i][j] = v
    return out


def killing_Q(g, mode="transfer", rscale=None):
    """Matrix Q_ij(g) = sum_a r(u^i_a (x) g_(1)) r(g_(2) (x) u^a_j), 0-based indices."""
    n = g.n
    if mode == "transfer":
        acc = {}
        for w, c in g.terms.items():
            for k, v in _q_word_transfer(n, w, rscale):
                acc[k] = acc.get(k, ZERO) + c * v
        return _dense(n, {k: v for k, v in acc.items() if v})
    if mode == "brute":
        out = [[ZERO] * n for _ in range(n)]
        for (w1, w2), c in coproduct(g).terms.items():
            lp = _word_l_plus(n, w1, rscale)
            lm = _word_l_minus(n, w2, rscale)
            out = _matadd(out, _matmul(lp, lm), c)
        return out
    raise ValueError("mode must be 'transfer' or 'brute'")


def killing_entry(g, i, j, mode="transfer"):
    """Q_ij(g) with 1-based indices."""
    return killing_Q(g, mode)[i - 1][j - 1]


def format_killing(m):
    import json

    return json.dumps([[str(v) for v in row] for row in m])


# -- Goodearl support predicates ---------------------------------------------


def goodearl_support_r(i, j, I, J, side="left"):
    """Necessary condition for r(u^i_j (x) z^I_J) != 0 (side='left') or r(z^I_J (x) u^i_j) != 0."""
    if side == "left" and i < j:
        return False
    if side == "right" and i > j:
        return False
    return tuple(J) == surgery(I, j, i)


def goodearl_support_q(i, j, I, J):
    """Necessary condition for Q_ij(z^I_J) != 0: J = I_ji."""
    return tuple(J) == surgery(I, j, i)


def goodearl_support_pair(i, j, I, J, n, r):
    """Necessary condition for Q_ij(z^I z-bar^J) != 0 when (i, j) is not in R^c x R^c."""
    R = tuple(range(1, r + 1))
    Rc = tuple(range(r + 1, n + 1))
    if i > r and j > r:
        return True
    return (tuple(I) == surgery(R, i, j) and tuple(J) == Rc) or (tuple(I) == R and tuple(J) == surgery(Rc, i, j))
