"""Skew-symmetric matrices over truncated polynomial rings and their pfaffians.

Entries live in K[t]/(t^bound); the pfaffian of a generic matrix, sliced
by t-degree, yields the jet-ideal generators.
"""

from itertools import combinations

from .polyring import QQ, make_jet_ring, VarId


class TruncPoly:
    """Polynomial in t of degree < bound; products drop terms at or above it.

    Coefficients may be Polynomials or exact scalars; they only need ring
    arithmetic with int 0 and 1 acting as identities.
    """

    __slots__ = ("coeffs", "bound")

    def __init__(self, coeffs, bound):
        if bound < 1:
            raise ValueError("bound must be >= 1")
        cs = list(coeffs[:bound])
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.bound = bound

    @classmethod
    def term(cls, coeff, power, bound):
        """coeff * t^power."""
        return cls([0] * power + [coeff], bound)

    def coeff(self, h):
        if h >= self.bound or h < 0:
            raise IndexError("t^%d is outside the declared bound %d" % (h, self.bound))
        return self.coeffs[h] if h < len(self.coeffs) else 0

    def _check(self, other):
        if self.bound != other.bound:
            raise ValueError("mixed truncation bounds %d and %d" % (self.bound, other.bound))

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.coeffs
        if not isinstance(other, TruncPoly):
            return NotImplemented
        return self.bound == other.bound and self.coeffs == other.coeffs

    def __neg__(self):
        return TruncPoly([-c for c in self.coeffs], self.bound)

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        out = []
        for h in range(n):
            a = self.coeffs[h] if h < len(self.coeffs) else 0
            b = other.coeffs[h] if h < len(other.coeffs) else 0
            out.append(a + b)
        return TruncPoly(out, self.bound)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return TruncPoly([], self.bound)
            return TruncPoly([c * other for c in self.coeffs], self.bound)
        self._check(other)
        if not self.coeffs or not other.coeffs:
            return TruncPoly([], self.bound)
        n = min(self.bound, len(self.coeffs) + len(other.coeffs) - 1)
        out = [0] * n
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if i + j >= n:
                    break
                if b:
                    out[i + j] = out[i + j] + a * b
        return TruncPoly(out, self.bound)

    __rmul__ = __mul__

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for h, c in enumerate(self.coeffs):
            if not c:
                continue
            if h == 0:
                parts.append("(%s)" % c)
            elif h == 1:
                parts.append("(%s)*t" % c)
            else:
                parts.append("(%s)*t^%d" % (c, h))
        return " + ".join(parts)

    def __repr__(self):
        return "TruncPoly(%s; mod t^%d)" % (self, self.bound)


def coeff_t(f, h):
    """Exact coefficient of t^h of a truncated polynomial."""
    return f.coeff(h)


class SkewJetMatrix:
    """n x n skew-symmetric matrix; only entries above the diagonal are stored."""

    __slots__ = ("n", "entries")

    def __init__(self, n, entries):
        self.n = n
        self.entries = {}
        for (i, j), v in entries.items():
            if not 1 <= i < j <= n:
                raise ValueError("entry (%d,%d) is not above the diagonal" % (i, j))
            if v:
                self.entries[(i, j)] = v

    def __getitem__(self, key):
        i, j = key
        if i == j:
            return 0
        if i < j:
            return self.entries.get((i, j), 0)
        v = self.entries.get((j, i), 0)
        return -v if v else 0

    def principal(self, rows):
        """Submatrix on the given rows/columns, relabeled 1..len(rows)."""
        rows = sorted(rows)
        sub = {}
        for a, ra in enumerate(rows, 1):
            for b in range(a + 1, len(rows) + 1):
                v = self[ra, rows[b - 1]]
                if v:
                    sub[(a, b)] = v
        return SkewJetMatrix(len(rows), sub)

    def without(self, l):
        return self.principal([r for r in range(1, self.n + 1) if r != l])


def generic_skew_jet_matrix(n, k, field=QQ, bound=None, ring=None):
    """The matrix of generic entries sum_h x[i,j,h] t^h, working modulo t^bound."""
    if ring is None:
        ring = make_jet_ring(n, k)
    if bound is None:
        bound = k
    entries = {}
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            entries[(i, j)] = TruncPoly(
                [ring.variable(i, j, h, field) for h in range(k)], bound)
    return SkewJetMatrix(n, entries), ring


def _matching_signs(m):
    """Perfect matchings of positions 0..m-1 with the permutation sign.

    A matching is listed with increasing first members and i < j in each
    pair; the sign is the parity of the flattened sequence (i1,j1,...,ir,jr)
    read as a permutation of 0..m-1.
    """
    out = []

    def rec(avail, acc):
        if not avail:
            seq = [x for pair in acc for x in pair]
            inv = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq))
                      if seq[a] > seq[b])
            out.append((tuple(acc), -1 if inv & 1 else 1))
            return
        i = avail[0]
        for t in range(1, len(avail)):
            rec(avail[1:t] + avail[t + 1:], acc + [(i, avail[t])])

    rec(tuple(range(m)), [])
    return out


_MATCHING_CACHE = {}


def _matchings(m):
    if m not in _MATCHING_CACHE:
        _MATCHING_CACHE[m] = _matching_signs(m)
    return _MATCHING_CACHE[m]


def _pf_matching(M, rows):
    total = 0
    for pairs, sign in _matchings(len(rows)):
        term = sign
        for a, b in pairs:
            e = M[rows[a], rows[b]]
            if not e:
                term = 0
                break
            term = term * e
        total = total + term
    return total


def _pf_expand(M, rows):
    if not rows:
        return 1
    i0 = rows[0]
    total = 0
    for pos in range(1, len(rows)):
        e = M[i0, rows[pos]]
        if not e:
            continue
        sub = _pf_expand(M, rows[1:pos] + rows[pos + 1:])
        term = e * sub
        total = total + term if pos % 2 == 1 else total - term
    return total


def pfaffian(M, method="matching"):
    """Pfaffian of a skew-symmetric matrix of even size.

    "matching" sums sign(sigma) over perfect matchings and is the normative
    definition; "expansion" recurses along the first row and must agree.
    """
    if M.n % 2:
        raise ValueError("pfaffian needs even size, got %d" % M.n)
    return sub_pfaffian(M, range(1, M.n + 1), method)


def sub_pfaffian(M, rows, method="matching"):
    """Pfaffian of the principal submatrix on an even-size row set."""
    rows = tuple(sorted(rows))
    if len(rows) % 2:
        raise ValueError("row set must have even cardinality")
    if rows and not (1 <= rows[0] and rows[-1] <= M.n):
        raise ValueError("row set out of range")
    if len(set(rows)) != len(rows):
        raise ValueError("repeated row index")
    if method == "matching":
        return _pf_matching(M, rows)
    if method == "expansion":
        return _pf_expand(M, rows)
    raise ValueError("unknown method %r" % method)


def pf_without(M, l, method="matching"):
    """pf_l(M): pfaffian of M with row and column l removed (M of odd size)."""
    if M.n % 2 == 0:
        raise ValueError("pf_l needs odd size so the submatrix is even")
    if not 1 <= l <= M.n:
        raise ValueError("row index out of range")
    return sub_pfaffian(M, [r for r in range(1, M.n + 1) if r != l], method)


class JetIdeal:
    """Generators p^(h) of the jet ideal of the 2r-pfaffians, h = 0..k-1."""

    __slots__ = ("n", "k", "r", "ring", "field", "generators", "labels")

    def __init__(self, n, k, r, ring, field, generators, labels):
        self.n, self.k, self.r = n, k, r
        self.ring = ring
        self.field = field
        self.generators = tuple(generators)
        self.labels = tuple(labels)

    @property
    def parameters(self):
        return (self.n, self.k, self.r)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __repr__(self):
        return "JetIdeal(n=%d, k=%d, r=%d, %d generators)" % (
            self.n, self.k, self.r, len(self.generators))


def jet_generators(n, k, r, field=QQ):
    """All t-coefficients 0..k-1 of all 2r-sub-pfaffians of the generic matrix.

    Row sets are enumerated in colex order and, within a row set, by jet
    level h ascending, so serialized ideals are reproducible byte for byte.
    """
    if 2 * r > n:
        raise ValueError("need 2r <= n, got r=%d, n=%d" % (r, n))
    if r < 1:
        raise ValueError("pfaffian size 2r must be positive")
    M, ring = generic_skew_jet_matrix(n, k, field)
    gens = []
    labels = []
    row_sets = sorted(combinations(range(1, n + 1), 2 * r), key=lambda s: s[::-1])
    for rows in row_sets:
        p = sub_pfaffian(M, rows)
        for h in range(k):
            c = coeff_t(p, h) if p else ring.zero(field)
            if isinstance(c, int):
                c = ring.zero(field)
            gens.append(c)
            labels.append((rows, h))
    return JetIdeal(n, k, r, ring, field, gens, labels)
