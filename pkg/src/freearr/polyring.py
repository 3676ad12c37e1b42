"""Exact coefficient domains and sparse multivariate polynomials.

Monomials are stored as packed Python integers.  The packing is linear in
the exponent vector, so multiplying monomials is integer addition and the
integer order of two packed monomials is the term order.  Each packed
monomial carries, from the most significant end,

    [order weights] [component] [exponents x1..xl] [total degree]

where the weights are non-negative linear forms in the exponents whose
lexicographic comparison realizes the term order (degrevlex becomes lex on
the partial sums e1+...+ek, k = l..1).  The component field is only used
by module computations in :mod:`freearr.groebner`.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd

from sympy import isprime

__all__ = [
    "ZZ", "QQ", "GF", "IntegerRing", "RationalField", "PrimeField",
    "TermOrder", "MonomialCodec", "PolyRing", "Polynomial",
    "compare", "reduce_mod_p", "default_names",
]

FIELD_BITS = 16
FIELD_MASK = (1 << FIELD_BITS) - 1
MAX_EXPONENT = (1 << (FIELD_BITS - 1)) - 1


# ---------------------------------------------------------------------------
# coefficient domains


class IntegerRing:
    name = "ZZ"
    is_field = False
    characteristic = 0

    def convert(self, c):
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise ValueError(f"{c} is not an integer")
            return c.numerator
        if isinstance(c, bool) or not isinstance(c, int):
            c2 = int(c)
            if c2 != c:
                raise ValueError(f"{c} is not an integer")
            return c2
        return c

    def inverse(self, c):
        if c in (1, -1):
            return c
        raise ZeroDivisionError(f"{c} is not a unit in ZZ")

    def __repr__(self):
        return "ZZ"

    def __reduce__(self):
        return "ZZ"


class RationalField:
    name = "QQ"
    is_field = True
    characteristic = 0

    def convert(self, c):
        if isinstance(c, Fraction):
            return c
        return Fraction(c)

    def inverse(self, c):
        return 1 / Fraction(c)

    def __repr__(self):
        return "QQ"

    def __reduce__(self):
        return "QQ"


class PrimeField:
    """The field of residues modulo a machine-word prime ``p``."""

    is_field = True

    def __init__(self, p: int):
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def convert(self, c):
        p = self.p
        if isinstance(c, Fraction):
            den = c.denominator % p
            if den == 0:
                raise ZeroDivisionError(f"denominator of {c} vanishes mod {p}")
            return c.numerator * pow(den, -1, p) % p
        return int(c) % p

    def inverse(self, c):
        return pow(c, -1, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return self.name

    def __reduce__(self):
        return (GF, (self.p,))


ZZ = IntegerRing()
QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    if not isinstance(p, int) or p < 2 or p >= 1 << 63 or not isprime(p):
        raise ValueError(f"{p} is not a machine-word prime")
    return PrimeField(p)


# ---------------------------------------------------------------------------
# term orders


class TermOrder:
    """A term order on monomials in ``nvars`` variables.

    ``kind`` is ``"degrevlex"``, ``"lex"`` or ``"elim"``; an elimination
    order compares the first ``block`` variables by degrevlex before
    looking at the rest.  ``perm`` lists variable indices from largest to
    smallest (default: x1 > x2 > ... > xl).
    """

    __slots__ = ("kind", "block", "perm")

    def __init__(self, kind="degrevlex", block=None, perm=None):
        if kind not in ("degrevlex", "lex", "elim"):
            raise ValueError(f"unknown term order {kind!r}")
        if kind == "elim" and (block is None or block < 1):
            raise ValueError("elimination order needs a positive block size")
        self.kind = kind
        self.block = block if kind == "elim" else None
        self.perm = tuple(perm) if perm is not None else None

    def _key(self):
        return (self.kind, self.block, self.perm)

    def __eq__(self, other):
        return isinstance(other, TermOrder) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        extra = ""
        if self.block is not None:
            extra += f", block={self.block}"
        if self.perm is not None:
            extra += f", perm={self.perm}"
        return f"TermOrder({self.kind!r}{extra})"

    @property
    def label(self) -> str:
        s = self.kind if self.block is None else f"elim{self.block}"
        if self.perm is not None:
            s += "[" + ",".join(str(i) for i in self.perm) + "]"
        return s

    def weight_rows(self, nvars: int) -> list[list[int]]:
        perm = self.perm if self.perm is not None else tuple(range(nvars))
        if sorted(perm) != list(range(nvars)):
            raise ValueError(f"variable permutation {perm} does not fit {nvars} variables")
        if self.kind == "lex":
            rows = []
            for v in perm:
                row = [0] * nvars
                row[v] = 1
                rows.append(row)
            return rows
        if self.kind == "degrevlex":
            return _revlex_rows(perm, nvars)
        if self.block >= nvars:
            raise ValueError("elimination block must leave some variables")
        return _revlex_rows(perm[: self.block], nvars) + _revlex_rows(perm[self.block:], nvars)


def _revlex_rows(vars_, nvars):
    # degrevlex on vars_ (largest first) == lex on the partial sums of
    # exponents taken in order, longest prefix first
    rows = []
    for k in range(len(vars_), 0, -1):
        row = [0] * nvars
        for v in vars_[:k]:
            row[v] = 1
        rows.append(row)
    return rows


DEGREVLEX = TermOrder("degrevlex")


class MonomialCodec:
    """Packs exponent vectors (and an optional component index) into ints."""

    def __init__(self, nvars: int, order: TermOrder = DEGREVLEX, ncomps: int = 0, pot: bool = True):
        self.nvars = nvars
        self.order = order
        self.ncomps = ncomps
        self.pot = pot
        rows = order.weight_rows(nvars)
        W = FIELD_BITS
        self.exp_shift = [W * (1 + (nvars - 1 - i)) for i in range(nvars)]
        above = W * (1 + nvars)
        nw = len(rows)
        if ncomps and pot:
            self.weight_shift = [above + W * (nw - 1 - j) for j in range(nw)]
            self.comp_shift = above + W * nw
        elif ncomps:
            self.comp_shift = above
            self.weight_shift = [above + W + W * (nw - 1 - j) for j in range(nw)]
        else:
            self.comp_shift = None
            self.weight_shift = [above + W * (nw - 1 - j) for j in range(nw)]
        units = []
        for i in range(nvars):
            u = 1 | (1 << self.exp_shift[i])
            for j, row in enumerate(rows):
                if row[i]:
                    u |= row[i] << self.weight_shift[j]
            units.append(u)
        self.units = units
        self.guard = sum(1 << (s + W - 1) for s in self.exp_shift)
        self.divmask = self.guard | ((FIELD_MASK << self.comp_shift) if ncomps else 0)
        # every monomial at or above this threshold lies in a component >= c
        self._comp_unit = (1 << self.comp_shift) if ncomps else 0

    def pack(self, exps, comp: int = 0) -> int:
        m = 0
        for e, u in zip(exps, self.units):
            if e:
                if e > MAX_EXPONENT or e < 0:
                    raise OverflowError(f"exponent {e} outside the packed range")
                m += e * u
        if comp:
            m += comp * self._comp_unit
        return m

    def unpack(self, m: int) -> tuple:
        return tuple((m >> s) & FIELD_MASK for s in self.exp_shift)

    def comp(self, m: int) -> int:
        return (m >> self.comp_shift) & FIELD_MASK if self.ncomps else 0

    def comp_unit(self, c: int) -> int:
        return c * self._comp_unit

    @staticmethod
    def degree(m: int) -> int:
        return m & FIELD_MASK

    def divides(self, a: int, b: int) -> bool:
        d = b - a
        return d >= 0 and not (d & self.divmask)

    def lcm(self, a: int, b: int) -> int:
        ea, eb = self.unpack(a), self.unpack(b)
        return self.pack([x if x > y else y for x, y in zip(ea, eb)], self.comp(a))

    def strip(self, m: int) -> int:
        """Drop the component of a packed module monomial."""
        return m - self.comp(m) * self._comp_unit if self.ncomps else m


def compare(order: TermOrder, a, b) -> int:
    """Compare exponent vectors ``a`` and ``b`` in ``order``: -1, 0 or 1."""
    if len(a) != len(b):
        raise ValueError("monomials have different variable counts")
    codec = _codec(len(a), order)
    ka, kb = codec.pack(a), codec.pack(b)
    return (ka > kb) - (ka < kb)


@lru_cache(maxsize=256)
def _codec(nvars, order, ncomps=0, pot=True):
    return MonomialCodec(nvars, order, ncomps, pot)


# ---------------------------------------------------------------------------
# rings and polynomials


def default_names(nvars: int) -> tuple:
    if nvars <= 4:
        return ("x", "y", "z", "w")[:nvars]
    return tuple(f"x{i + 1}" for i in range(nvars))


class PolyRing:
    """``domain[x1..xl]`` with a fixed term order."""

    def __init__(self, nvars: int, domain=QQ, order: TermOrder = DEGREVLEX, names=None):
        if nvars < 1:
            raise ValueError("need at least one variable")
        self.nvars = nvars
        self.domain = domain
        self.order = order
        self.names = tuple(names) if names is not None else default_names(nvars)
        if len(self.names) != nvars:
            raise ValueError("wrong number of variable names")
        self.codec = _codec(nvars, order)

    def _key(self):
        return (self.nvars, self.domain, self.order, self.names)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"PolyRing({self.domain!r}[{','.join(self.names)}], {self.order.label})"

    @property
    def characteristic(self) -> int:
        return self.domain.characteristic

    def with_domain(self, domain) -> PolyRing:
        return PolyRing(self.nvars, domain, self.order, self.names)

    def with_order(self, order: TermOrder) -> PolyRing:
        return PolyRing(self.nvars, self.domain, order, self.names)

    # constructors ---------------------------------------------------------

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.constant(1)

    def constant(self, c) -> Polynomial:
        c = self.domain.convert(c)
        return Polynomial(self, {0: c} if c else {})

    def gen(self, i: int) -> Polynomial:
        return Polynomial(self, {self.codec.units[i]: self.domain.convert(1)})

    @property
    def gens(self) -> tuple:
        return tuple(self.gen(i) for i in range(self.nvars))

    def monomial(self, exps, coeff=1) -> Polynomial:
        return self.from_terms([(exps, coeff)])

    def from_terms(self, terms) -> Polynomial:
        """Build from ``(exponent vector, coefficient)`` pairs, combining duplicates."""
        dom, codec = self.domain, self.codec
        d: dict = {}
        for exps, c in terms:
            if len(exps) != self.nvars:
                raise ValueError("exponent vector has the wrong length")
            m = codec.pack(exps)
            d[m] = d.get(m, 0) + dom.convert(c)
        return Polynomial(self, _clean(d, dom))

    def linear_form(self, coeffs) -> Polynomial:
        if len(coeffs) != self.nvars:
            raise ValueError("linear form has the wrong length")
        dom, units = self.domain, self.codec.units
        d = {}
        for u, c in zip(units, coeffs):
            c = dom.convert(c)
            if c:
                d[u] = c
        return Polynomial(self, d)

    def parse(self, text: str) -> Polynomial:
        return _Parser(self, text).parse()

    def from_json(self, data) -> Polynomial:
        return self.from_terms([(tuple(t["exps"]), Fraction(str(t["coeff"]))) for t in data])

    def convert(self, f: Polynomial) -> Polynomial:
        """Move ``f`` into this ring (changing order, or coefficients when exact)."""
        if f.ring == self:
            return f
        if f.ring.nvars != self.nvars:
            raise ValueError("variable counts differ")
        src, dst = f.ring.codec, self.codec
        dom = self.domain
        d = {}
        for m, c in f._d.items():
            c = dom.convert(c)
            if c:
                d[dst.pack(src.unpack(m))] = c
        return Polynomial(self, d)


def _clean(d, dom):
    if isinstance(dom, PrimeField):
        p = dom.p
        return {m: c % p for m, c in d.items() if c % p}
    return {m: c for m, c in d.items() if c}


class Polynomial:
    """Immutable sparse polynomial; ``terms()`` lists terms in decreasing order."""

    __slots__ = ("ring", "_d", "_lm")

    def __init__(self, ring: PolyRing, d: dict):
        self.ring = ring
        self._d = d
        self._lm = None

    # inspection -----------------------------------------------------------

    def __bool__(self):
        return bool(self._d)

    def is_zero(self) -> bool:
        return not self._d

    def __len__(self):
        return len(self._d)

    def terms(self) -> list:
        unpack = self.ring.codec.unpack
        return [(unpack(m), self._d[m]) for m in sorted(self._d, reverse=True)]

    def monomials(self) -> list:
        return [e for e, _ in self.terms()]

    def coefficients(self) -> list:
        return [c for _, c in self.terms()]

    def coefficient(self, exps):
        return self._d.get(self.ring.codec.pack(exps), 0)

    def _lead(self) -> int:
        if self._lm is None:
            if not self._d:
                raise ValueError("zero polynomial has no leading term")
            self._lm = max(self._d)
        return self._lm

    def leading_monomial(self) -> tuple:
        return self.ring.codec.unpack(self._lead())

    def leading_coefficient(self):
        return self._d[self._lead()]

    def leading_term(self) -> Polynomial:
        m = self._lead()
        return Polynomial(self.ring, {m: self._d[m]})

    def total_degree(self) -> int:
        if not self._d:
            return -1
        return max(m & FIELD_MASK for m in self._d)

    def is_homogeneous(self) -> bool:
        return len({m & FIELD_MASK for m in self._d}) <= 1

    def is_constant(self) -> bool:
        return all(m == 0 for m in self._d)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._d.get(0, 0)

    def content(self) -> int:
        """gcd of the coefficients (integer polynomials only)."""
        if self.ring.domain is not ZZ:
            raise TypeError("content is defined for integer polynomials")
        return gcd(*self._d.values()) if self._d else 0

    def is_sorted(self) -> bool:
        ms = list(self._d)
        return len(set(ms)) == len(ms) and all(c for c in self._d.values())

    # arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = dict(self._d)
        for m, c in other._d.items():
            d[m] = d.get(m, 0) + c
        return Polynomial(self.ring, _clean(d, self.ring.domain))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, _clean({m: -c for m, c in self._d.items()}, self.ring.domain))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._d, other._d
        if len(a) < len(b):
            a, b = b, a
        d: dict = {}
        get = d.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                k = ma + mb
                d[k] = get(k, 0) + ca * cb
        return Polynomial(self.ring, _clean(d, self.ring.domain))

    __rmul__ = __mul__

    def scale(self, c) -> Polynomial:
        c = self.ring.domain.convert(c)
        return Polynomial(self.ring, _clean({m: v * c for m, v in self._d.items()}, self.ring.domain))

    def mul_term(self, exps, c=1) -> Polynomial:
        m0 = self.ring.codec.pack(exps)
        c = self.ring.domain.convert(c)
        return Polynomial(self.ring, _clean({m + m0: v * c for m, v in self._d.items()}, self.ring.domain))

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def exact_div_term(self, exps, c=1) -> Polynomial:
        """Divide by the term ``c * x^exps``; raise if not exact."""
        dom, codec = self.ring.domain, self.ring.codec
        m0 = codec.pack(exps)
        c = dom.convert(c)
        if not c:
            raise ZeroDivisionError("division by the zero term")
        d = {}
        for m, v in self._d.items():
            if not codec.divides(m0, m):
                raise ArithmeticError("term does not divide the polynomial")
            if dom is ZZ:
                q, r = divmod(v, c)
                if r:
                    raise ArithmeticError("coefficient not divisible")
            elif dom is QQ:
                q = v / c
            else:
                q = v * dom.inverse(c) % dom.p
            d[m - m0] = q
        return Polynomial(self.ring, d)

    def exact_div(self, g: Polynomial) -> Polynomial:
        """Exact polynomial division ``self / g``; raise if ``g`` does not divide."""
        q, r = self.divmod(g)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        return q

    def divmod(self, g: Polynomial):
        """Multivariate division by a single divisor (leading-term driven)."""
        g = self._coerce(g)
        if not g:
            raise ZeroDivisionError("division by zero polynomial")
        dom, codec = self.ring.domain, self.ring.codec
        lg = g._lead()
        cg = g._d[lg]
        r = dict(self._d)
        rem = {}
        q = {}
        while r:
            m = max(r)
            c = r[m]
            if codec.divides(lg, m):
                if dom is ZZ:
                    f, rr = divmod(c, cg)
                    if rr:
                        rem[m] = r.pop(m)
                        continue
                elif dom is QQ:
                    f = c / cg
                else:
                    f = c * pow(cg, -1, dom.p) % dom.p
                s = m - lg
                q[s] = f
                for mg, vg in g._d.items():
                    k = mg + s
                    v = r.get(k, 0) - f * vg
                    if isinstance(dom, PrimeField):
                        v %= dom.p
                    if v:
                        r[k] = v
                    else:
                        r.pop(k, None)
            else:
                rem[m] = r.pop(m)
        return Polynomial(self.ring, q), Polynomial(self.ring, rem)

    def derivative(self, i: int) -> Polynomial:
        """Formal partial derivative with respect to variable ``i`` (0-based)."""
        if not 0 <= i < self.ring.nvars:
            raise IndexError("variable index out of range")
        codec = self.ring.codec
        shift, u = codec.exp_shift[i], codec.units[i]
        d = {}
        for m, c in self._d.items():
            e = (m >> shift) & FIELD_MASK
            if e:
                d[m - u] = c * e
        return Polynomial(self.ring, _clean(d, self.ring.domain))

    def evaluate(self, point):
        if len(point) != self.ring.nvars:
            raise ValueError("point has the wrong length")
        dom = self.ring.domain
        pt = [dom.convert(v) for v in point]
        unpack = self.ring.codec.unpack
        total = 0
        p = dom.p if isinstance(dom, PrimeField) else None
        for m, c in self._d.items():
            t = c
            for e, v in zip(unpack(m), pt):
                if e:
                    t = t * (pow(v, e, p) if p else v ** e)
            total += t
        return total % p if p else dom.convert(total)

    def substitute(self, i: int, value: Polynomial) -> Polynomial:
        """Replace variable ``i`` by the polynomial ``value``."""
        codec = self.ring.codec
        shift, u = codec.exp_shift[i], codec.units[i]
        by_power: dict = {}
        for m, c in self._d.items():
            e = (m >> shift) & FIELD_MASK
            by_power.setdefault(e, {})[m - e * u] = c
        result = self.ring.zero()
        powers = {0: self.ring.one()}
        for e in sorted(by_power):
            if e not in powers:
                powers[e] = value ** e
            result = result + Polynomial(self.ring, by_power[e]) * powers[e]
        return result

    def reduce_mod(self, p: int) -> Polynomial:
        return reduce_mod_p(self, p)

    def change_ring(self, ring: PolyRing) -> Polynomial:
        return ring.convert(self)

    def primitive(self) -> tuple:
        """Return ``(c, g)`` with ``self = c*g``, ``g`` integral primitive with positive LC.

        Works for ZZ and QQ polynomials; ``g`` lives in the ZZ ring.
        """
        dom = self.ring.domain
        if dom not in (ZZ, QQ):
            raise TypeError("primitive part needs ZZ or QQ coefficients")
        zring = self.ring.with_domain(ZZ)
        if not self._d:
            return Fraction(0), zring.zero()
        vals = [Fraction(c) for c in self._d.values()]
        den = 1
        for v in vals:
            den = den * v.denominator // gcd(den, v.denominator)
        nums = [int(v * den) for v in vals]
        g = gcd(*nums)
        if self._d[self._lead()] < 0:
            g = -g
        d = {m: int(Fraction(c) * den) // g for m, c in self._d.items()}
        return Fraction(g, den), Polynomial(zring, d)

    # comparison / hashing -------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._d == other._d
        if isinstance(other, (int, Fraction)):
            return self._d == self.ring.constant(other)._d
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self._d.items())))

    # I/O ------------------------------------------------------------------

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r}, {self.ring!r})"

    def to_json(self) -> list:
        return [{"coeff": str(c), "exps": list(e)} for e, c in self.terms()]


def reduce_mod_p(f: Polynomial, p: int) -> Polynomial:
    """Coefficient-wise image of an integer polynomial in ``GF(p)[x]``."""
    dom = f.ring.domain
    if dom is not ZZ and dom is not QQ:
        raise TypeError("reduce_mod_p expects an integer polynomial")
    ring = f.ring.with_domain(GF(p))
    return ring.convert(f)


def format_poly(f: Polynomial) -> str:
    if not f._d:
        return "0"
    names = f.ring.names
    out = []
    for exps, c in f.terms():
        mon = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e)
        neg = c < 0
        a = -c if neg else c
        if mon:
            body = mon if a == 1 else f"{a}*{mon}"
        else:
            body = str(a)
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


# ---------------------------------------------------------------------------
# text parser

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class _Parser:
    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
            num, name, op = m.groups()
            if num is not None:
                self.tokens.append(("num", int(num)))
            elif name is not None:
                self.tokens.append(("var", self._var_index(name)))
            else:
                self.tokens.append(("op", "^" if op == "**" else op))
            pos = m.end()
        self.i = 0

    def _var_index(self, name):
        ring = self.ring
        if name in ring.names:
            return ring.names.index(name)
        if ring.nvars <= 4 and name in ("x", "y", "z", "w")[: ring.nvars]:
            return ("x", "y", "z", "w").index(name)
        m = re.fullmatch(r"x(\d+)", name)
        if m and 1 <= int(m.group(1)) <= ring.nvars:
            return int(m.group(1)) - 1
        raise ValueError(f"unknown variable {name!r}")

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self):
        if not self.tokens:
            raise ValueError("empty polynomial text")
        f = self.expr()
        if self.i != len(self.tokens):
            raise ValueError(f"unexpected token {self.peek()[1]!r}")
        return f

    def expr(self):
        sign = 1
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        f = self.term()
        if sign < 0:
            f = -f
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                g = self.term()
                f = f + g if val == "+" else f - g
            else:
                return f

    def term(self):
        f = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                f = f * self.factor()
            elif kind == "op" and val == "/":
                self.take()
                g = self.factor()
                if not g.is_constant() or not g:
                    raise ValueError("can only divide by nonzero constants")
                f = f.scale(self.ring.domain.inverse(g.constant_value()))
            elif kind in ("num", "var") or (kind == "op" and val == "("):
                f = f * self.factor()
            else:
                return f

    def factor(self):
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, e = self.take()
            if kind != "num":
                raise ValueError("exponent must be a non-negative integer")
            return base ** e
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return self.ring.constant(val)
        if kind == "var":
            return self.ring.gen(val)
        if kind == "op" and val == "(":
            f = self.expr()
            k2, v2 = self.take()
            if v2 != ")":
                raise ValueError("unbalanced parentheses")
            return f
        if kind == "op" and val == "-":
            return -self.factor()
        raise ValueError(f"unexpected token {val!r}")
