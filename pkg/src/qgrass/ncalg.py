"""Quantum matrix algebra C_q[M_n] with PBW normal forms.

A generator u^i_j (1-based) is stored as the integer (i-1)*n + (j-1), so the
integer order is the (row, col) lexicographic PBW order.  A monomial is a
non-decreasing tuple of such integers and an ``NCPoly`` maps monomials to
``RatFunc`` coefficients.
"""

import random
from functools import lru_cache
from itertools import permutations, product

from .exactmath import ONE, ZERO, NU, QINV, RatFunc, mq_pow


def gen_index(n, i, j):
    return (i - 1) * n + (j - 1)


def gen_pair(n, g):
    return g // n + 1, g % n + 1


def inversions(seq):
    return sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])


@lru_cache(maxsize=None)
def _rule(n, x, y):
    """Rewrite x*y for generators x > y as ((coeff, s, t), ...) with s <= t."""
    a, b = divmod(x, n)
    c, d = divmod(y, n)
    if a == c or b == d:
        return ((QINV, y, x),)
    if b < d:
        return ((ONE, y, x),)
    return ((ONE, y, x), (-NU, c * n + b, a * n + d))


def _accumulate(out, word, coeff):
    v = out.get(word)
    v = coeff if v is None else v + coeff
    if v:
        out[word] = v
    else:
        out.pop(word, None)


@lru_cache(maxsize=None)
def _append(n, w, x):
    """Normal form of (normal word w) * x, as a tuple of (word, coeff)."""
    if not w or w[-1] <= x:
        return ((w + (x,), ONE),)
    y, pre = w[-1], w[:-1]
    out = {}
    for coeff, s, t in _rule(n, y, x):
        for w1, c1 in _append(n, pre, s):
            for w2, c2 in _append(n, w1, t):
                _accumulate(out, w2, coeff * c1 * c2)
    return tuple(out.items())


@lru_cache(maxsize=None)
def _prepend(n, x, w):
    """Normal form of x * (normal word w), built from the left."""
    if not w or x <= w[0]:
        return (((x,) + w, ONE),)
    y, rest = w[0], w[1:]
    out = {}
    for coeff, s, t in _rule(n, x, y):
        for w1, c1 in _prepend(n, t, rest):
            for w2, c2 in _prepend(n, s, w1):
                _accumulate(out, w2, coeff * c1 * c2)
    return tuple(out.items())


@lru_cache(maxsize=200000)
def _mul_words(n, w1, w2):
    if not w2:
        return ((w1, ONE),)
    acc = {w1: ONE}
    for x in w2:
        nxt = {}
        for w, c in acc.items():
            for w3, c3 in _append(n, w, x):
                _accumulate(nxt, w3, c * c3)
        acc = nxt
    return tuple(acc.items())


def normal_form(n, word, strategy="append"):
    """Normal form of an arbitrary word of generator indices.

    ``append`` inserts letters left to right, ``prepend`` right to left, and
    ``random`` rewrites a randomly chosen out-of-order adjacent pair each step.
    """
    word = tuple(word)
    if strategy == "append":
        return NCPoly(n, dict(_mul_words(n, (), word)))
    if strategy == "prepend":
        acc = {(): ONE}
        for x in reversed(word):
            nxt = {}
            for w, c in acc.items():
                for w3, c3 in _prepend(n, x, w):
                    _accumulate(nxt, w3, c * c3)
            acc = nxt
        return NCPoly(n, acc)
    if strategy.startswith("random"):
        seed = int(strategy.split(":")[1]) if ":" in strategy else 0
        return _reduce_random(n, word, random.Random(seed))
    raise ValueError("unknown strategy %r" % strategy)


def _reduce_random(n, word, rng):
    todo = {word: ONE}
    done = {}
    while todo:
        w = rng.choice(list(todo))
        c = todo.pop(w)
        bad = [k for k in range(len(w) - 1) if w[k] > w[k + 1]]
        if not bad:
            _accumulate(done, w, c)
            continue
        k = rng.choice(bad)
        for coeff, s, t in _rule(n, w[k], w[k + 1]):
            _accumulate(todo, w[:k] + (s, t) + w[k + 2 :], c * coeff)
    return NCPoly(n, done)


class NCPoly:
    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    # construction
    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def one(cls, n):
        return cls(n, {(): ONE})

    @classmethod
    def const(cls, n, c):
        return cls(n, {(): RatFunc.coerce(c)})

    @classmethod
    def gen(cls, n, i, j):
        if not (1 <= i <= n and 1 <= j <= n):
            raise ValueError("generator index out of range")
        return cls(n, {(gen_index(n, i, j),): ONE})

    @classmethod
    def word(cls, n, pairs):
        """Product of generators given as (i, j) pairs, in the given order."""
        return normal_form(n, [gen_index(n, i, j) for i, j in pairs])

    # arithmetic
    def copy(self):
        return NCPoly(self.n, dict(self.terms))

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            _accumulate(out, w, c)
        return NCPoly(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly(self.n, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def _lift(self, other):
        if isinstance(other, NCPoly):
            if other.n != self.n:
                raise ValueError("mixed n")
            return other
        return NCPoly.const(self.n, other)

    def scale(self, c):
        c = RatFunc.coerce(c)
        if not c:
            return NCPoly(self.n)
        return NCPoly(self.n, {w: v * c for w, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, NCPoly):
            return self.scale(other)
        if other.n != self.n:
            raise ValueError("mixed n")
        out = {}
        n = self.n
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                c12 = c1 * c2
                for w, c in _mul_words(n, w1, w2):
                    _accumulate(out, w, c12 * c)
        return NCPoly(n, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k):
        out = NCPoly.one(self.n)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            other = NCPoly.const(self.n, other)
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def degrees(self):
        return sorted({len(w) for w in self.terms})

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def component(self, d):
        return NCPoly(self.n, {w: c for w, c in self.terms.items() if len(w) == d})

    def coefficient(self, pairs=()):
        w = tuple(sorted(gen_index(self.n, i, j) for i, j in pairs))
        return self.terms.get(w, ZERO)

    def __str__(self):
        return format_ncpoly(self)

    def __repr__(self):
        return "NCPoly(%d, %s)" % (self.n, format_ncpoly(self))


class TensorPoly:
    """Element of C_q[M_n] tensor C_q[M_n]: {(word, word): coeff}."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            _accumulate(out, k, c)
        return TensorPoly(self.n, out)

    def __sub__(self, other):
        return self + TensorPoly(self.n, {k: -c for k, c in other.terms.items()})

    def __eq__(self, other):
        return self.n == other.n and self.terms == other.terms

    def __mul__(self, other):
        out = {}
        n = self.n
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                c12 = c1 * c2
                for wa, ca in _mul_words(n, a1, a2):
                    for wb, cb in _mul_words(n, b1, b2):
                        _accumulate(out, (wa, wb), c12 * ca * cb)
        return TensorPoly(n, out)

    def legs(self):
        """Yield (left NCPoly, right NCPoly, coeff) per term."""
        for (a, b), c in self.terms.items():
            yield NCPoly(self.n, {a: ONE}), NCPoly(self.n, {b: ONE}), c

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b), c in sorted(self.terms.items()):
            parts.append("%s * %s ⊗ %s" % (_coef_text(c), _word_text(self.n, a), _word_text(self.n, b)))
        return " + ".join(parts)


# -- Hopf structure --------------------------------------------------------


def mul(f, g):
    return f * g


def coproduct(f):
    """Coproduct on the generators u^i_j -> sum_k u^i_k (x) u^k_j, extended multiplicatively."""
    n = f.n
    out = {}
    for w, c in f.terms.items():
        for ks in product(range(n), repeat=len(w)):
            left = [(g // n) * n + k for g, k in zip(w, ks)]
            right = [k * n + g % n for g, k in zip(w, ks)]
            for wa, ca in _mul_words(n, (), tuple(left)):
                for wb, cb in _mul_words(n, (), tuple(right)):
                    _accumulate(out, (wa, wb), c * ca * cb)
    return TensorPoly(n, out)


def counit(f):
    n = f.n
    acc = ZERO
    for w, c in f.terms.items():
        if all(g // n == g % n for g in w):
            acc = acc + c
    return acc


@lru_cache(maxsize=None)
def _minor_terms(n, rows, cols):
    out = {}
    for perm in permutations(range(len(cols))):
        word = tuple(rows[a] * n + cols[perm[a]] for a in range(len(rows)))
        for w, c in _mul_words(n, (), word):
            _accumulate(out, w, mq_pow(inversions(perm)) * c)
    return tuple(out.items())


def raw_minor(n, rows, cols):
    """Quantum minor with 1-based row and column index lists (column permutations)."""
    return NCPoly(n, dict(_minor_terms(n, tuple(i - 1 for i in rows), tuple(j - 1 for j in cols))))


def qdet(n):
    return raw_minor(n, list(range(1, n + 1)), list(range(1, n + 1)))


@lru_cache(maxsize=None)
def _det_power(n, k):
    return qdet(n) ** k


def det_power(n, k):
    return _det_power(n, k)


def antipode_gen(n, i, j):
    """S(u^i_j) = p * det^-1; returns (p, 1)."""
    rows = [k for k in range(1, n + 1) if k != j]
    cols = [k for k in range(1, n + 1) if k != i]
    p = raw_minor(n, rows, cols) if n > 1 else NCPoly.one(n)
    return p.scale(mq_pow(i - j)), 1


@lru_cache(maxsize=None)
def _antipode_table(n):
    return {gen_index(n, i, j): antipode_gen(n, i, j)[0] for i in range(1, n + 1) for j in range(1, n + 1)}


def antipode(f):
    """S(f) = P * det^-d for f homogeneous of degree d; returns (P, d)."""
    degs = f.degrees()
    if len(degs) > 1:
        raise ValueError("antipode expects a homogeneous element")
    n = f.n
    table = _antipode_table(n)
    d = degs[0] if degs else 0
    out = NCPoly(n)
    for w, c in f.terms.items():
        acc = NCPoly.one(n)
        for g in reversed(w):
            acc = acc * table[g]
        out = out + acc.scale(c)
    return out, d


def homogenize(f, top=None):
    """Multiply each homogeneous piece by det powers up to a common degree.

    All degrees must agree mod n.  Returns (poly, top_degree).
    """
    n = f.n
    degs = f.degrees()
    if not degs:
        return f, top or 0
    if len({d % n for d in degs}) > 1:
        raise ValueError("degrees differ mod n")
    top = max(degs) if top is None else top
    if (top - degs[0]) % n or top < max(degs):
        raise ValueError("bad target degree")
    out = NCPoly(n)
    for d in degs:
        out = out + f.component(d) * det_power(n, (top - d) // n)
    return out, top


def eq_mod_det1(f, g):
    """Decide f == g in the quotient by (det - 1)."""
    h = f - g
    n = h.n
    classes = {}
    for d in h.degrees():
        classes.setdefault(d % n, []).append(d)
    for ds in classes.values():
        piece = NCPoly(n)
        for d in ds:
            piece = piece + h.component(d)
        if not homogenize(piece)[0].is_zero():
            return False
    return True


def random_word(n, length, rng):
    return tuple(rng.randrange(n * n) for _ in range(length))


# -- ideals ----------------------------------------------------------------


def bicontent(n, word):
    """(row counts, column counts) of a monomial; preserved by every relation."""
    rows = [0] * n
    cols = [0] * n
    for g in word:
        rows[g // n] += 1
        cols[g % n] += 1
    return tuple(rows), tuple(cols)


def _split_bicontent(f):
    parts = {}
    for w, c in f.terms.items():
        parts.setdefault(bicontent(f.n, w), {})[w] = c
    return {k: NCPoly(f.n, v) for k, v in parts.items()}


def _sub(a, b):
    out = tuple(x - y for x, y in zip(a, b))
    return out if min(out) >= 0 else None


def _candidates(target, gens, ring_gens, n):
    """Products a*g*b (a, b words in ring_gens, g in gens) with the target bicontent."""
    rg = []
    for h in ring_gens:
        for key, piece in _split_bicontent(h).items():
            rg.append((key, piece))
    gg = []
    for h in gens:
        for key, piece in _split_bicontent(h).items():
            gg.append((key, piece))
    memo = {}

    def words(rest, marked):
        key = (rest, marked)
        if key in memo:
            return memo[key]
        out = []
        if not marked and not any(rest[0]) and not any(rest[1]):
            out.append(())
        for idx, (k, _) in enumerate(rg):
            r0 = _sub(rest[0], k[0])
            r1 = _sub(rest[1], k[1]) if r0 is not None else None
            if r1 is not None:
                out.extend((("r", idx),) + t for t in words((r0, r1), marked))
        if marked:
            for idx, (k, _) in enumerate(gg):
                r0 = _sub(rest[0], k[0])
                r1 = _sub(rest[1], k[1]) if r0 is not None else None
                if r1 is not None:
                    out.extend((("g", idx),) + t for t in words((r0, r1), False))
        memo[key] = out
        return out

    prod_memo = {(): NCPoly.one(n)}

    def value(seq):
        if seq not in prod_memo:
            kind, idx = seq[-1]
            piece = rg[idx][1] if kind == "r" else gg[idx][1]
            prod_memo[seq] = value(seq[:-1]) * piece
        return prod_memo[seq]

    seen = set()
    out = []
    for seq in words(target, True):
        v = value(seq)
        if v.is_zero():
            continue
        key = frozenset(v.terms.items())
        if key not in seen:
            seen.add(key)
            out.append(v)
    return out


def ideal_membership_graded(f, gens, max_deg, ring_gens=None):
    """Decide whether homogeneous f lies in the two-sided ideal generated by gens.

    Multipliers are products of ``ring_gens`` (default: all u^i_j).  The
    relations preserve row and column content, so each content component of
    f is tested separately against the candidates a*g*b of that content.
    Both outcomes are certified exactly.
    """
    from .exactmath import in_column_span

    if f.is_zero():
        return True
    degs = f.degrees()
    if len(degs) != 1:
        raise ValueError("f must be homogeneous")
    if degs[0] > max_deg:
        raise ValueError("degree of f exceeds max_deg")
    n = f.n
    if ring_gens is None:
        ring_gens = [NCPoly.gen(n, i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    for content, part in _split_bicontent(f).items():
        cands = _candidates(content, gens, ring_gens, n)
        if not cands:
            return False
        index = {}
        cols = []
        for v in cands:
            cols.append({index.setdefault(w, len(index)): c for w, c in v.terms.items()})
        if any(w not in index for w in part.terms):
            return False
        target = {index[w]: c for w, c in part.terms.items()}
        if not in_column_span(cols, target, len(index)):
            return False
    return True


# -- text ------------------------------------------------------------------


def _coef_text(c):
    s = str(c)
    return "(%s)" % s if " " in s else s


def _word_text(n, w):
    return " ".join("u[%d,%d]" % gen_pair(n, g) for g in w)


def format_ncpoly(f):
    if f.is_zero():
        return "0"
    parts = []
    for w, c in sorted(f.terms.items(), key=lambda t: (len(t[0]), t[0])):
        parts.append(_coef_text(c) if not w else "%s * %s" % (_coef_text(c), _word_text(f.n, w)))
    return " + ".join(parts)


def _split_top(text, sep):
    out, depth, start, k = [], 0, 0, 0
    while k < len(text):
        ch = text[k]
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif depth == 0 and text.startswith(sep, k):
            out.append(text[start:k])
            k += len(sep)
            start = k
            continue
        k += 1
    out.append(text[start:])
    return out


def parse_ncpoly(n, text):
    import re

    from .exactmath import parse_ratfunc

    text = text.strip()
    if text == "0":
        return NCPoly(n)
    out = NCPoly(n)
    for term in _split_top(text, " + "):
        term = term.strip()
        k = term.find("u[")
        if k < 0:
            out = out + NCPoly.const(n, parse_ratfunc(term))
            continue
        head = term[:k].strip()
        if head.endswith("*"):
            head = head[:-1].strip()
        coeff = -ONE if head == "-" else (parse_ratfunc(head) if head else ONE)
        pairs = [(int(a), int(b)) for a, b in re.findall(r"u\[(\d+),(\d+)\]", term[k:])]
        out = out + NCPoly.word(n, pairs).scale(coeff)
    return out
