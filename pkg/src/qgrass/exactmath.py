"""Exact arithmetic over Q(q) and linear algebra on top of it.

Polynomials are flint ``fmpq_poly`` objects.  A ``RatFunc`` is kept in
canonical form: numerator and denominator coprime, denominator monic, zero
stored as 0/1.  Matrices are sparse; kernels are computed by fraction-free
elimination over Q[q] and every returned kernel vector is checked against
the full matrix before it is handed back.
"""

import random
import re
from fractions import Fraction

from flint import fmpq, fmpq_poly, nmod_mat

_ONE = fmpq_poly([1])
_ZERO = fmpq_poly([])
_X = fmpq_poly([0, 1])

PRIME = 2**61 - 1


def _poly(x):
    if isinstance(x, fmpq_poly):
        return x
    if isinstance(x, Fraction):
        return fmpq_poly([fmpq(x.numerator, x.denominator)])
    return fmpq_poly([x])


class RatFunc:
    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1):
        num, den = _poly(num), _poly(den)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        self.num, self.den = _canon(num, den)
        self._hash = None

    @classmethod
    def _raw(cls, num, den):
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def _make(cls, num, den):
        n, d = _canon(num, den)
        return cls._raw(n, d)

    @classmethod
    def coerce(cls, x):
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, str):
            return parse_ratfunc(x)
        return cls._raw(_poly(x), _ONE) if not isinstance(x, fmpq_poly) else cls._raw(x, _ONE)

    def __bool__(self):
        return self.num != 0

    def is_zero(self):
        return self.num == 0

    def is_one(self):
        return self.den == 1 and self.num == 1

    def __add__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc.coerce(other)
        if self.den == other.den:
            if self.den == 1:
                return RatFunc._raw(self.num + other.num, _ONE)
            return RatFunc._make(self.num + other.num, self.den)
        return RatFunc._make(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc.coerce(other)
        return self + (-other)

    def __rsub__(self, other):
        return RatFunc.coerce(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, RatFunc):
            other = RatFunc.coerce(other)
        if self.den == 1 and other.den == 1:
            return RatFunc._raw(self.num * other.num, _ONE)
        return RatFunc._make(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.num == 0:
            raise ZeroDivisionError("inverse of zero")
        return RatFunc._make(self.den, self.num)

    def __truediv__(self, other):
        return self * RatFunc.coerce(other).inverse()

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc._raw(self.num**k, self.den**k)

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            try:
                other = RatFunc.coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(self.num.coeffs()), tuple(self.den.coeffs())))
        return self._hash

    def evaluate(self, x):
        """Value at a rational point; raises ZeroDivisionError at a pole."""
        x = fmpq(x) if not isinstance(x, Fraction) else fmpq(x.numerator, x.denominator)
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError("pole")
        v = self.num(x) / d
        return Fraction(int(v.p), int(v.q))

    def evaluate_mod(self, x, p=PRIME):
        d = _poly_mod(self.den, x, p)
        if d == 0:
            raise ZeroDivisionError("pole mod p")
        return _poly_mod(self.num, x, p) * pow(d, -1, p) % p

    def laurent_terms(self):
        """Return {exponent: Fraction} when the value lies in Q[q, 1/q], else None."""
        d = self.den
        k = d.degree()
        if k > 0 and d != _X**k:
            return None
        out = {}
        for e, c in enumerate(self.num.coeffs()):
            if c != 0:
                out[e - k] = Fraction(int(c.p), int(c.q))
        return out

    def __str__(self):
        if self.den == 1:
            return _poly_text(self.num)
        return "(%s)/(%s)" % (_poly_text(self.num), _poly_text(self.den))

    def __repr__(self):
        return "RatFunc(%s)" % self


def _canon(num, den):
    if num == 0:
        return _ZERO, _ONE
    if den.degree() > 0:
        g = num.gcd(den)
        if g.degree() > 0:
            num = num // g
            den = den // g
    lc = den[den.degree()]
    if lc != 1:
        num = num / lc
        den = den / lc
    return num, den


def _poly_mod(p, x, m):
    acc = 0
    for c in reversed(p.coeffs()):
        acc = (acc * x + int(c.p) * pow(int(c.q), -1, m)) % m
    return acc


def _coef_text(c):
    return str(int(c.p)) if c.q == 1 else "%d/%d" % (int(c.p), int(c.q))


def _poly_text(p):
    if p == 0:
        return "0"
    parts = []
    for e, c in enumerate(p.coeffs()):
        if c == 0:
            continue
        neg = c < 0
        a = -c if neg else c
        if e == 0:
            body = _coef_text(a)
        else:
            mono = "q" if e == 1 else "q^%d" % e
            body = mono if a == 1 else "%s*%s" % (_coef_text(a), mono)
        parts.append((neg, body))
    out = ("-" if parts[0][0] else "") + parts[0][1]
    for neg, body in parts[1:]:
        out += (" - " if neg else " + ") + body
    return out


ZERO = RatFunc()
ONE = RatFunc(1)
Q = RatFunc(_X)
QINV = RatFunc(1, _X)
NU = Q - QINV


def qpow(k):
    """q**k for any integer k."""
    return RatFunc._raw(_X**k, _ONE) if k >= 0 else RatFunc._raw(_ONE, _X ** (-k))


def mq_pow(k):
    """(-q)**k."""
    v = qpow(k)
    return -v if k % 2 else v


# -- parsing ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(\d+|q|\^|\*|/|\+|-|\(|\))")


def _tokens(text):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError("cannot parse %r at %d" % (text, pos))
        out.append(m.group(1))
        pos = m.end()
    return out


def parse_ratfunc(text):
    """Parse an arithmetic expression in q (integers, q, + - * / ^, parentheses)."""
    toks = _tokens(text)
    if not toks:
        raise ValueError("empty expression")
    i = 0

    def peek():
        return toks[i] if i < len(toks) else None

    def take():
        nonlocal i
        i += 1
        return toks[i - 1]

    def expr():
        v = term()
        while peek() in ("+", "-"):
            v = v + term() if take() == "+" else v - term()
        return v

    def term():
        v = unary()
        while peek() in ("*", "/"):
            v = v * unary() if take() == "*" else v / unary()
        return v

    def unary():
        if peek() == "-":
            take()
            return -unary()
        if peek() == "+":
            take()
            return unary()
        return power()

    def power():
        base = atom()
        if peek() == "^":
            take()
            neg = False
            if peek() == "-":
                take()
                neg = True
            e = int(take())
            return base ** (-e if neg else e)
        return base

    def atom():
        t = take()
        if t == "(":
            v = expr()
            if take() != ")":
                raise ValueError("unbalanced parentheses")
            return v
        if t == "q":
            return Q
        if t.isdigit():
            return RatFunc(int(t))
        raise ValueError("unexpected token %r" % t)

    v = expr()
    if i != len(toks):
        raise ValueError("trailing input in %r" % text)
    return v


# -- matrices --------------------------------------------------------------


class ExactMatrix:
    """Sparse matrix over Q(q), stored as one dict per row."""

    def __init__(self, nrows, ncols, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows if rows is not None else [dict() for _ in range(nrows)]

    @classmethod
    def from_dense(cls, data, ncols=None):
        data = [list(r) for r in data]
        ncols = ncols if ncols is not None else (len(data[0]) if data else 0)
        rows = []
        for r in data:
            rows.append({j: RatFunc.coerce(v) for j, v in enumerate(r) if v != 0})
        return cls(len(rows), ncols, rows)

    @classmethod
    def from_columns(cls, columns, nrows):
        """Build from a list of sparse columns {row_index: RatFunc}."""
        m = cls(nrows, len(columns))
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    m.rows[i][j] = v
        return m

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i].get(j, ZERO)

    def __setitem__(self, ij, v):
        i, j = ij
        v = RatFunc.coerce(v)
        if v:
            self.rows[i][j] = v
        else:
            self.rows[i].pop(j, None)

    def to_dense(self):
        return [[r.get(j, ZERO) for j in range(self.ncols)] for r in self.rows]

    def transpose(self):
        t = ExactMatrix(self.ncols, self.nrows)
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                t.rows[j][i] = v
        return t

    def apply(self, vec):
        out = []
        for r in self.rows:
            acc = ZERO
            for j, v in r.items():
                if vec[j]:
                    acc = acc + v * vec[j]
            out.append(acc)
        return out

    def specialize_mod(self, x, p=PRIME):
        m = nmod_mat(self.nrows, self.ncols, p)
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                m[i, j] = v.evaluate_mod(x, p)
        return m

    def specialize(self, x):
        return [[v.evaluate(x) for v in row] for row in self.to_dense()]


def _modp_pivot_rows(m, rng, p=PRIME):
    """Indices of rows independent modulo p at a random point, or None on a pole."""
    for _ in range(5):
        x = rng.randrange(2, p - 1)
        try:
            t = m.transpose().specialize_mod(x, p)
        except ZeroDivisionError:
            continue
        if m.nrows == 0 or m.ncols == 0:
            return [], x
        red, rank = t.rref()
        piv, c = [], 0
        for i in range(rank):
            while int(red[i, c]) == 0:
                c += 1
            piv.append(c)
            c += 1
        return piv, x
    return None, None


def _row_polys(row, ncols):
    """Scale a sparse row by the lcm of its denominators; returns dense poly list."""
    den = _ONE
    for v in row.values():
        if v.den != 1:
            den = den * v.den // den.gcd(v.den)
    out = [_ZERO] * ncols
    for j, v in row.items():
        out[j] = v.num * (den // v.den) if v.den != 1 else v.num * den
    return out


def _echelon(rows, ncols):
    """Fraction-free row echelon form over Q[q]; returns (rows, pivot columns)."""
    a = [r[:] for r in rows]
    nr = len(a)
    pivots = []
    prev = _ONE
    k = 0
    for c in range(ncols):
        if k == nr:
            break
        best = None
        for i in range(k, nr):
            if a[i][c] != 0 and (best is None or a[i][c].degree() < a[best][c].degree()):
                best = i
        if best is None:
            continue
        a[k], a[best] = a[best], a[k]
        p = a[k][c]
        pk = a[k]
        for i in range(k + 1, nr):
            ai = a[i]
            f = ai[c]
            for j in range(c + 1, ncols):
                if f != 0:
                    v = p * ai[j] - f * pk[j]
                else:
                    v = p * ai[j]
                ai[j] = v // prev if prev != 1 else v
            ai[c] = _ZERO
        prev = p
        pivots.append(c)
        k += 1
    return a[:k], pivots


def _back_substitute(ech, pivots, ncols):
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [ZERO] * ncols
        x[f] = ONE
        for k in range(len(pivots) - 1, -1, -1):
            c = pivots[k]
            row = ech[k]
            acc = ZERO
            for j in range(c + 1, ncols):
                if row[j] != 0 and x[j]:
                    acc = acc + RatFunc._raw(row[j], _ONE) * x[j]
            if acc:
                x[c] = -acc / RatFunc._raw(row[c], _ONE)
        basis.append(x)
    return basis


def _kernel_of_rows(m, row_ids):
    rows = [_row_polys(m.rows[i], m.ncols) for i in row_ids]
    ech, piv = _echelon(rows, m.ncols)
    return _back_substitute(ech, piv, m.ncols)


def _is_null(m, vec):
    return all(not v for v in m.apply(vec))


def kernel_basis(m, seed=0):
    """Exact basis of {v : m v = 0} over Q(q).

    A modular pass picks a row subset of full rank; the exact kernel of that
    subset is then verified against every row.  If the check fails the full
    matrix is eliminated instead, so the answer is always exact.
    """
    if m.ncols == 0:
        return []
    live = [i for i, r in enumerate(m.rows) if r]
    if not live:
        return [[ONE if j == k else ZERO for j in range(m.ncols)] for k in range(m.ncols)]
    sub = ExactMatrix(len(live), m.ncols, [m.rows[i] for i in live])
    piv, _ = _modp_pivot_rows(sub, random.Random(seed))
    if piv is not None:
        basis = _kernel_of_rows(sub, piv)
        if all(_is_null(sub, v) for v in basis):
            return basis
    return _kernel_of_rows(sub, range(sub.nrows))


def rank_exact(m):
    return m.ncols - len(kernel_basis(m))


def rank_probabilistic(m, sample_count=3, seed=0):
    """Max rank over random rational specializations.  A lower bound on the true rank."""
    from flint import fmpq_mat

    rng = random.Random(seed)
    best = 0
    tried = 0
    while tried < sample_count:
        x = Fraction(rng.randrange(2, 10**6), rng.randrange(1, 10**3))
        try:
            dense = m.specialize(x)
        except ZeroDivisionError:
            continue
        tried += 1
        if m.nrows == 0 or m.ncols == 0:
            return 0
        fm = fmpq_mat(m.nrows, m.ncols, [fmpq(v.numerator, v.denominator) for row in dense for v in row])
        best = max(best, fm.rank())
    return best


def rank_modp(m, seed=0):
    piv, _ = _modp_pivot_rows(m, random.Random(seed))
    return None if piv is None else len(piv)


def solve(m, b, seed=0):
    """Exact x with m x = b, or None when b is outside the column span."""
    aug = ExactMatrix(m.nrows, m.ncols + 1, [dict(r) for r in m.rows])
    for i, v in enumerate(b):
        v = RatFunc.coerce(v)
        if v:
            aug.rows[i][m.ncols] = -v
    for vec in kernel_basis(aug, seed):
        t = vec[m.ncols]
        if t:
            return [x / t for x in vec[: m.ncols]]
    return None


def independent_columns(columns, nrows, seed=0):
    """Indices of a maximal linearly independent subset of sparse columns (exact)."""
    m = ExactMatrix.from_columns(columns, nrows)
    kept = []
    rng = random.Random(seed)
    # modular guess, confirmed exactly below
    piv, _ = _modp_pivot_rows(m.transpose(), rng)
    if piv is not None:
        sub = ExactMatrix.from_columns([columns[i] for i in piv], nrows)
        if rank_exact(sub) == len(piv) and rank_exact(m) == len(piv):
            return piv
    for i in range(len(columns)):
        trial = ExactMatrix.from_columns([columns[j] for j in kept + [i]], nrows)
        if rank_exact(trial) == len(kept) + 1:
            kept.append(i)
    return kept


def in_column_span(columns, target, nrows, seed=0):
    """Exact test of target in the span of sparse columns.

    A modular pass proposes either a small supporting column set (membership
    is then confirmed by an exact solve) or a separating functional taken
    from the exact left kernel (non-membership).  Either certificate is
    checked exactly; the full elimination is the fallback.
    """
    rng = random.Random(seed)
    tvec = [ZERO] * nrows
    for i, v in target.items():
        tvec[i] = v
    if not any(tvec):
        return True
    aug = ExactMatrix.from_columns(list(columns) + [target], nrows)
    piv, _ = _modp_pivot_rows(aug.transpose(), rng)
    if piv is not None:
        last = len(columns)
        if last not in piv:
            # target dependent mod p: solve on the independent columns it needs
            basis = [columns[i] for i in piv]
            sub = ExactMatrix.from_columns(basis, nrows)
            x = solve(sub, tvec, seed)
            if x is not None:
                return True
        else:
            left = kernel_basis(ExactMatrix.from_columns(columns, nrows).transpose(), seed)
            for w in left:
                if sum((w[i] * v for i, v in target.items() if w[i]), ZERO):
                    return False
    full = ExactMatrix.from_columns(columns, nrows)
    return solve(full, tvec, seed) is not None
