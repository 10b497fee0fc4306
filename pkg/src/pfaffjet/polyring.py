"""Exact sparse multivariate polynomial arithmetic over jet variables x[i,j,h].

Monomials are packed into Python ints so that plain integer comparison
realizes the active monomial order: the top field holds the total degree,
and below it each variable has a one-byte field storing CAP - exponent,
laid out so that the first differing byte is the reverse-lex tiebreak.
Divisibility, multiplication, quotient and lcm are then a handful of
bigint operations instead of per-variable loops.
"""

import re
from fractions import Fraction

CAP = 127  # max exponent per variable; one byte per field with a guard bit


class RingMismatch(Exception):
    """Operands live in different rings or over different fields."""


class RationalField:
    """Exact rational coefficients (arbitrary precision)."""

    name = "q"

    def coerce(self, x):
        if isinstance(x, float):
            raise TypeError("floating-point coefficients are not supported")
        return Fraction(x)

    def inv(self, x):
        return Fraction(1) / x

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("q")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """Integers modulo a prime p, canonical representatives 0..p-1."""

    def __init__(self, p):
        if p < 2:
            raise ValueError("modulus must be >= 2")
        self.p = p
        self.name = "p:%d" % p

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, float):
            raise TypeError("floating-point coefficients are not supported")
        return int(x) % self.p

    def inv(self, x):
        return pow(x, -1, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("p", self.p))

    def __repr__(self):
        return "GF(%d)" % self.p


QQ = RationalField()
DEFAULT_PRIME = 32003


def field_from_name(name):
    """Parse a field tag: "q" or "p:<modulus>"."""
    if name == "q":
        return QQ
    if name.startswith("p:"):
        return PrimeField(int(name[2:]))
    raise ValueError("unknown field %r" % name)


class VarId:
    """A jet variable x[i,j,h] with i < j, or an auxiliary variable by name."""

    __slots__ = ("i", "j", "h", "name")

    def __init__(self, i, j, h):
        if not i < j:
            raise ValueError("need i < j, got (%d,%d)" % (i, j))
        if h < 0:
            raise ValueError("negative jet level")
        self.i, self.j, self.h = i, j, h
        self.name = None

    @classmethod
    def aux(cls, name):
        v = cls.__new__(cls)
        v.i = v.j = v.h = None
        v.name = name
        return v

    @property
    def is_aux(self):
        return self.name is not None

    def _key(self):
        return (self.name, self.i, self.j, self.h)

    def __eq__(self, other):
        return isinstance(other, VarId) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.is_aux:
            return self.name
        return "x[%d,%d,%d]" % (self.i, self.j, self.h)


class MonomialOrder:
    """Descriptor of the active order: kind plus the variable ranking."""

    __slots__ = ("kind", "ranking", "blocks")

    def __init__(self, kind, ranking, blocks):
        self.kind = kind          # "paper" or "elim"
        self.ranking = ranking    # all variables, highest first
        self.blocks = blocks      # tuple of variable tuples, first block first

    def __repr__(self):
        return "MonomialOrder(%s, %d vars)" % (self.kind, len(self.ranking))


def _paper_ranking(n, k):
    # higher jet level first; within a level, row-major (1,2) > (1,3) > ... > (n-1,n)
    vs = []
    for h in range(k - 1, -1, -1):
        for i in range(1, n):
            for j in range(i + 1, n + 1):
                vs.append(VarId(i, j, h))
    return vs


class JetRing:
    """Polynomial ring on the jet variables of an n x n skew matrix, k levels.

    ``aux`` variables, when present, form the leading elimination block and
    beat every jet variable (kind "elim"); otherwise the order is the
    degree-reverse-lex order on the ranking above (kind "paper").
    """

    def __init__(self, n, k, aux=()):
        if n < 2:
            raise ValueError("matrix size n must be >= 2")
        if k < 1:
            raise ValueError("jet order k must be >= 1")
        self.n, self.k = n, k
        self.aux_vars = tuple(VarId.aux(a) for a in aux)
        self.jet_vars = tuple(_paper_ranking(n, k))
        self.variables = self.aux_vars + self.jet_vars
        self.nvars = len(self.variables)
        kind = "elim" if aux else "paper"
        blocks = (self.aux_vars, self.jet_vars) if aux else (self.jet_vars,)
        self.order = MonomialOrder(kind, self.variables, blocks)
        self._build_packing(blocks)
        self._index = {v: r for r, v in enumerate(self.variables)}

    def _build_packing(self, blocks):
        offset = 0
        self._byte_of = {}       # VarId -> byte offset of its exponent field
        self._deg_shift = {}     # VarId -> bit shift of its block's degree field
        self._block_bytes = []   # (deg_shift, tuple of byte offsets) per block
        for block in reversed(blocks):
            offs = []
            for v in block:      # highest-ranked member gets the lowest byte
                self._byte_of[v] = offset
                offs.append(offset)
                offset += 1
            deg_shift = 8 * offset
            for v in block:
                self._deg_shift[v] = deg_shift
            self._block_bytes.append((deg_shift, tuple(offs)))
            offset += 2          # 16-bit block degree field
        self._block_bytes.reverse()
        self.code_bytes = offset
        h = expmask = kcap = 0
        for o in self._byte_of.values():
            h |= 0x80 << (8 * o)
            expmask |= 0xFF << (8 * o)
            kcap |= CAP << (8 * o)
        self._H = h
        self._EXPMASK = expmask
        self.one_code = kcap     # all exponents zero: every field holds CAP
        self._total_deg_shifts = tuple(s for s, _ in self._block_bytes)

    # -- packed-code arithmetic ------------------------------------------

    def encode(self, exponents):
        """Pack {VarId: exponent} into a monomial code."""
        code = self.one_code
        for v, e in exponents.items():
            if e < 0 or e > CAP:
                raise ValueError("exponent %d out of range for %r" % (e, v))
            if e:
                code -= e << (8 * self._byte_of[v])
                code += e << self._deg_shift[v]
        return code

    def decode(self, code):
        """Unpack a monomial code into {VarId: exponent}."""
        out = {}
        for v in self.variables:
            e = CAP - ((code >> (8 * self._byte_of[v])) & 0xFF)
            if e:
                out[v] = e
        return out

    def mul_code(self, a, b):
        return a + b - self.one_code

    def div_code(self, b, a):
        """Quotient code b/a; caller guarantees divisibility."""
        return b - a + self.one_code

    def divides_code(self, a, b):
        ta = a & self._EXPMASK
        tb = b & self._EXPMASK
        h = self._H
        return ((ta | h) - tb) & h == h

    def lcm_code(self, a, b):
        ta = a & self._EXPMASK
        tb = b & self._EXPMASK
        h = self._H
        ge = ((ta | h) - tb) & h            # bytes where exp(a) <= exp(b)
        mask = (ge >> 7) * 0xFF
        m = (tb & mask) | (ta & ~mask)      # per-variable max exponent
        epacked = self.one_code - m
        code = m
        for deg_shift, offs in self._block_bytes:
            d = 0
            for o in offs:
                d += (epacked >> (8 * o)) & 0xFF
            code += d << deg_shift
        return code

    def total_deg(self, code):
        d = 0
        for s in self._total_deg_shifts:
            d += (code >> s) & 0xFFFF
        return d

    def block_deg(self, code, block_index):
        return (code >> self._block_bytes[block_index][0]) & 0xFFFF

    def var_code(self, v):
        return self.encode({v: 1})

    def coprime_codes(self, a, b):
        return self.total_deg(self.lcm_code(a, b)) == self.total_deg(a) + self.total_deg(b)

    # -- element constructors --------------------------------------------

    def monomial(self, exponents):
        return Monomial(self, self.encode(exponents))

    def zero(self, field=QQ):
        return Polynomial(self, field, {})

    def one(self, field=QQ):
        return Polynomial(self, field, {self.one_code: field.coerce(1)})

    def variable(self, i, j, h, field=QQ):
        return Polynomial(self, field, {self.var_code(VarId(i, j, h)): field.coerce(1)})

    def aux_variable(self, name, field=QQ):
        for v in self.aux_vars:
            if v.name == name:
                return Polynomial(self, field, {self.var_code(v): field.coerce(1)})
        raise KeyError(name)

    def polynomial(self, terms, field=QQ):
        """Build a polynomial from {Monomial-or-exponent-dict: coefficient}."""
        acc = {}
        for m, c in terms.items():
            code = m.code if isinstance(m, Monomial) else self.encode(m)
            acc[code] = acc.get(code, 0) + c
        return Polynomial(self, field, {m: field.coerce(c) for m, c in acc.items()})

    def __repr__(self):
        base = "JetRing(n=%d, k=%d, %d vars" % (self.n, self.k, self.nvars)
        if self.aux_vars:
            base += ", elim %s" % ",".join(v.name for v in self.aux_vars)
        return base + ")"


def make_jet_ring(n, k):
    """Ring descriptor for the k-jet variables of an n x n skew matrix."""
    return JetRing(n, k)


class Monomial:
    """A single power product, tied to its ring."""

    __slots__ = ("ring", "code")

    def __init__(self, ring, code):
        self.ring = ring
        self.code = code

    @property
    def exponents(self):
        return self.ring.decode(self.code)

    @property
    def degree(self):
        return self.ring.total_deg(self.code)

    def divides(self, other):
        _same_ring(self, other)
        return self.ring.divides_code(self.code, other.code)

    def lcm(self, other):
        _same_ring(self, other)
        return Monomial(self.ring, self.ring.lcm_code(self.code, other.code))

    def __mul__(self, other):
        _same_ring(self, other)
        return Monomial(self.ring, self.ring.mul_code(self.code, other.code))

    def __truediv__(self, other):
        _same_ring(self, other)
        if not other.divides(self):
            raise ValueError("not divisible")
        return Monomial(self.ring, self.ring.div_code(self.code, other.code))

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.ring is other.ring and self.code == other.code

    def __hash__(self):
        return hash((id(self.ring), self.code))

    def __lt__(self, other):
        _same_ring(self, other)
        return self.code < other.code

    def __le__(self, other):
        _same_ring(self, other)
        return self.code <= other.code

    def __str__(self):
        es = self.exponents
        if not es:
            return "1"
        parts = []
        for v in self.ring.variables:
            e = es.get(v)
            if e:
                parts.append("%r^%d" % (v, e) if e > 1 else repr(v))
        return "*".join(parts)

    def __repr__(self):
        return "Monomial(%s)" % str(self)


def _same_ring(a, b):
    if a.ring is not b.ring:
        raise RingMismatch("operands from different rings")


def compare(a, b):
    """Order comparison of two monomials: -1, 0 or 1 under the ring's order."""
    _same_ring(a, b)
    if a.code < b.code:
        return -1
    return 1 if a.code > b.code else 0


class Polynomial:
    """Immutable sparse polynomial with exact coefficients.

    Terms are kept in a dict keyed by monomial code; the descending code
    sequence (= descending monomial order) is cached so leading-term
    queries are O(1).
    """

    __slots__ = ("ring", "field", "_terms", "_codes")

    def __init__(self, ring, field, terms):
        self.ring = ring
        self.field = field
        self._terms = {m: c for m, c in terms.items() if c}
        self._codes = tuple(sorted(self._terms, reverse=True))

    # -- structure ---------------------------------------------------------

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._scalar(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (self.ring is other.ring and self.field == other.field
                and self._terms == other._terms)

    def terms(self):
        """Yield (Monomial, coefficient) in descending order."""
        for code in self._codes:
            yield Monomial(self.ring, code), self._terms[code]

    def coefficient(self, mono):
        code = mono.code if isinstance(mono, Monomial) else self.ring.encode(mono)
        return self._terms.get(code, self.field.coerce(0))

    def leading_monomial(self):
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return Monomial(self.ring, self._codes[0])

    def leading_coefficient(self):
        if not self._terms:
            raise ValueError("zero polynomial has no leading coefficient")
        return self._terms[self._codes[0]]

    def total_degree(self):
        if not self._terms:
            return -1
        td = self.ring.total_deg
        return max(td(c) for c in self._codes)

    def is_homogeneous(self):
        if not self._terms:
            return True
        td = self.ring.total_deg
        degs = {td(c) for c in self._codes}
        return len(degs) == 1

    # -- arithmetic ----------------------------------------------------------

    def _scalar(self, c):
        c = self.field.coerce(c)
        if not c:
            return Polynomial(self.ring, self.field, {})
        return Polynomial(self.ring, self.field, {self.ring.one_code: c})

    def _coerce_operand(self, other):
        if isinstance(other, Polynomial):
            if other.ring is not self.ring:
                raise RingMismatch("polynomials from different rings")
            if other.field != self.field:
                raise RingMismatch("polynomials over different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self._scalar(other)
        return None

    def __add__(self, other):
        other = self._coerce_operand(other)
        if other is None:
            return NotImplemented
        terms = dict(self._terms)
        if isinstance(self.field, PrimeField):
            p = self.field.p
            for m, c in other._terms.items():
                v = (terms.get(m, 0) + c) % p
                if v:
                    terms[m] = v
                elif m in terms:
                    del terms[m]
        else:
            for m, c in other._terms.items():
                v = terms.get(m, 0) + c
                if v:
                    terms[m] = v
                elif m in terms:
                    del terms[m]
        return Polynomial(self.ring, self.field, terms)

    __radd__ = __add__

    def __neg__(self):
        if isinstance(self.field, PrimeField):
            p = self.field.p
            return Polynomial(self.ring, self.field, {m: -c % p for m, c in self._terms.items()})
        return Polynomial(self.ring, self.field, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce_operand(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = self.field.coerce(other)
            if not c:
                return Polynomial(self.ring, self.field, {})
            if isinstance(self.field, PrimeField):
                p = self.field.p
                return Polynomial(self.ring, self.field,
                                  {m: v * c % p for m, v in self._terms.items()})
            return Polynomial(self.ring, self.field, {m: v * c for m, v in self._terms.items()})
        other = self._coerce_operand(other)
        if other is None:
            return NotImplemented
        if not self or not other:
            return Polynomial(self.ring, self.field, {})
        if self.total_degree() + other.total_degree() > CAP:
            raise OverflowError("product degree exceeds packed exponent capacity")
        ring = self.ring
        one = ring.one_code
        out = {}
        if len(self._terms) > len(other._terms):
            big, small = self._terms, other._terms
        else:
            big, small = other._terms, self._terms
        for m1, c1 in small.items():
            shift = m1 - one
            for m2, c2 in big.items():
                m = m2 + shift
                out[m] = out.get(m, 0) + c1 * c2
        if isinstance(self.field, PrimeField):
            p = self.field.p
            out = {m: c % p for m, c in out.items()}
        return Polynomial(self.ring, self.field, out)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative power")
        result = self.ring.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base_needed = e > 1
            e >>= 1
            if base_needed:
                base = base * base
        return result

    def mul_monomial(self, mono, coeff=1):
        """self * coeff * mono, without building a one-term Polynomial."""
        shift = (mono.code if isinstance(mono, Monomial) else mono) - self.ring.one_code
        c = self.field.coerce(coeff)
        if isinstance(self.field, PrimeField):
            p = self.field.p
            return Polynomial(self.ring, self.field,
                              {m + shift: v * c % p for m, v in self._terms.items()})
        return Polynomial(self.ring, self.field,
                          {m + shift: v * c for m, v in self._terms.items()})

    def monic(self):
        if not self._terms:
            return self
        lc = self._terms[self._codes[0]]
        if lc == self.field.coerce(1):
            return self
        inv = self.field.inv(lc)
        if isinstance(self.field, PrimeField):
            p = self.field.p
            return Polynomial(self.ring, self.field, {m: c * inv % p for m, c in self._terms.items()})
        return Polynomial(self.ring, self.field, {m: c * inv for m, c in self._terms.items()})

    # -- text form -----------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for idx, code in enumerate(self._codes):
            c = self._terms[code]
            mono = Monomial(self.ring, code)
            neg = (not isinstance(self.field, PrimeField)) and c < 0
            mag = -c if neg else c
            if code == self.ring.one_code:
                body = str(mag)
            elif mag == 1:
                body = str(mono)
            else:
                body = "%s*%s" % (mag, mono)
            if idx == 0:
                parts.append("-" + body if neg else body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return "Polynomial(%s)" % str(self)


_TOKEN = re.compile(r"""
    (?P<var>x\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\])
  | (?P<aux>[A-Za-z_]\w*)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<op>[-+*^])
  | (?P<ws>\s+)
""", re.VERBOSE)


def parse_polynomial(ring, text, field=QQ):
    """Parse the textual polynomial format produced by str(Polynomial)."""
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError("bad polynomial syntax at %r" % text[pos:pos + 20])
        if m.lastgroup != "ws":
            tokens.append(m)
        pos = m.end()

    aux_by_name = {v.name: v for v in ring.aux_vars}
    terms = {}
    sign = 1
    coeff = None
    expo = {}
    in_term = False

    def flush():
        nonlocal sign, coeff, expo, in_term
        if not in_term:
            raise ValueError("dangling sign in %r" % text)
        c = Fraction(coeff if coeff is not None else 1) * sign
        code = ring.encode(expo)
        terms[code] = terms.get(code, Fraction(0)) + c
        sign, coeff, expo, in_term = 1, None, {}, False

    i = 0
    while i < len(tokens):
        t = tokens[i]
        kind = t.lastgroup
        if kind == "op" and t.group() in "+-":
            if in_term:
                flush()
            if t.group() == "-":
                sign = -sign
        elif kind == "op":
            pass  # '*' and '^' are positional separators
        elif kind == "num":
            txt = t.group()
            val = Fraction(*map(int, txt.split("/"))) if "/" in txt else Fraction(int(txt))
            if i + 1 < len(tokens) and tokens[i + 1].lastgroup == "op" \
                    and tokens[i + 1].group() == "^":
                raise ValueError("cannot exponentiate a literal in %r" % text)
            coeff = val if coeff is None else coeff * val
            in_term = True
        else:
            if kind == "var":
                v = VarId(int(t.group(2)), int(t.group(3)), int(t.group(4)))
                if v not in ring._index:
                    raise ValueError("%r is not a variable of %r" % (v, ring))
            else:
                if t.group() not in aux_by_name:
                    raise ValueError("unknown variable %r" % t.group())
                v = aux_by_name[t.group()]
            e = 1
            if i + 2 < len(tokens) and tokens[i + 1].lastgroup == "op" \
                    and tokens[i + 1].group() == "^" and tokens[i + 2].lastgroup == "num":
                e = int(tokens[i + 2].group())
                i += 2
            expo[v] = expo.get(v, 0) + e
            in_term = True
        i += 1
    if in_term:
        flush()
    return Polynomial(ring, field, {m: field.coerce(c) for m, c in terms.items()})
