"""Strong Groebner bases over ZZ, lucky primes and prime zero divisors."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from math import gcd

from sympy import factorint, isprime

from ..polyring import FIELD_MASK, ZZ, MonomialCodec, PolyRing, Polynomial, TermOrder


def _strong_top_reduce(f: dict, lms, lcs, elems, divmask) -> dict:
    while f:
        lm = max(f)
        c = f[lm]
        for k, lg in enumerate(lms):
            d = lm - lg
            if d >= 0 and not (d & divmask) and c % lcs[k] == 0:
                break
        else:
            return f
        q = c // lcs[k]
        get = f.get
        for mg, vg in elems[k].items():
            key = mg + d
            v = get(key, 0) - q * vg
            if v:
                f[key] = v
            else:
                del f[key]
    return f


def _strong_full_reduce(f: dict, lms, lcs, elems, divmask) -> dict:
    rem = {}
    while f:
        lm = max(f)
        c = f[lm]
        for k, lg in enumerate(lms):
            d = lm - lg
            if d >= 0 and not (d & divmask) and c % lcs[k] == 0:
                break
        else:
            rem[lm] = f.pop(lm)
            continue
        q = c // lcs[k]
        get = f.get
        for mg, vg in elems[k].items():
            key = mg + d
            v = get(key, 0) - q * vg
            if v:
                f[key] = v
            else:
                del f[key]
    return rem


def _tail_reduce(f: dict, lms, lcs, elems, divmask) -> dict:
    """Replace each reducible tail coefficient by its symmetric remainder mod the matching LC."""
    if not f:
        return f
    lm = max(f)
    rem = {lm: f[lm]}
    work = dict(f)
    del work[lm]
    while work:
        m = max(work)
        c = work.pop(m)
        for k, lg in enumerate(lms):
            d = m - lg
            if d >= 0 and not (d & divmask):
                a = lcs[k]
                q = (2 * c + a) // (2 * a)        # nearest integer to c / a
                if q:
                    c -= q * a
                    get = work.get
                    for mg, vg in elems[k].items():
                        if mg == lg:
                            continue
                        key = mg + d
                        v = get(key, 0) - q * vg
                        if v:
                            work[key] = v
                        else:
                            work.pop(key, None)
                break
        if c:
            rem[m] = c
    return rem


def _positive(f: dict) -> dict:
    if f and f[max(f)] < 0:
        return {m: -v for m, v in f.items()}
    return f


def _combine(f, df, a, g, dg, b):
    """a * x^df * f + b * x^dg * g."""
    h = {m + df: v * a for m, v in f.items()} if a else {}
    if b:
        get = h.get
        for m, v in g.items():
            k = m + dg
            w = get(k, 0) + b * v
            if w:
                h[k] = w
            else:
                del h[k]
    return {m: v for m, v in h.items() if v}


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def strong_basis_dicts(gens: list, codec: MonomialCodec) -> list:
    """Complete ``gens`` to a strong Groebner basis over ZZ, then minimalize.

    Pairs are handled in sugar order with strong top reduction.  An
    S-polynomial is skipped by the product criterion (coprime monomials and
    coprime coefficients) or the chain criterion on leading terms; a
    GCD-polynomial is skipped when one coefficient divides the other or when
    its leading term is already divisible by a leading term in the basis.
    Minimalization then removes every element whose leading term is
    divisible (monomial and coefficient) by another element's leading term.
    """
    divmask = codec.divmask
    elems, lms, lcs, sugar = [], [], [], []
    alive: list = []            # indices whose leading term is not divisible by a later one
    pairs: list = []
    pending: set = set()

    def deg(m):
        return m & FIELD_MASK

    def insert(f, s):
        f = _positive(f)
        lm = max(f)
        lc = f[lm]
        i = len(elems)
        keep = []
        for j in alive:
            lj = lms[j]
            lcm = codec.lcm(lm, lj)
            sj = max(s + deg(lcm) - deg(lm), sugar[j] + deg(lcm) - deg(lj))
            heapq.heappush(pairs, (sj, lcm, j, i))
            pending.add((j, i))
            d = lj - lm
            # a retired element keeps its queued pairs but gets no new ones
            if not (d >= 0 and not (d & divmask) and lcs[j] % lc == 0):
                keep.append(j)
        keep.append(i)
        alive[:] = keep
        elems.append(f)
        lms.append(lm)
        lcs.append(lc)
        sugar.append(s)

    def some_divides(mono, coeff, skip=()):
        for k in alive:
            d = mono - lms[k]
            if d >= 0 and not (d & divmask) and coeff % lcs[k] == 0 and k not in skip:
                yield k

    def chain(i, j, lcm, c):
        for k in some_divides(lcm, c, (i, j)):
            if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                return True
        return False

    def reduce_insert(h, s):
        live = [elems[k] for k in alive]
        live_lms = [lms[k] for k in alive]
        live_lcs = [lcs[k] for k in alive]
        h = _strong_top_reduce(h, live_lms, live_lcs, live, divmask)
        if h:
            insert(_tail_reduce(h, live_lms, live_lcs, live, divmask), s)

    inputs = sorted((_positive(dict(g)) for g in gens if g), key=lambda f: max(deg(m) for m in f))
    pending_inputs = [(max(deg(m) for m in f), k, f) for k, f in enumerate(inputs)]
    pending_inputs.reverse()

    while pairs or pending_inputs:
        if pending_inputs and (not pairs or pending_inputs[-1][0] <= pairs[0][0]):
            s, _, f = pending_inputs.pop()
            reduce_insert(dict(f), s)
            continue
        s, lcm, i, j = heapq.heappop(pairs)
        pending.discard((i, j))
        f, g = elems[i], elems[j]
        a, b = lcs[i], lcs[j]
        di, dj = lcm - lms[i], lcm - lms[j]
        t = gcd(a, b)
        L = a // t * b
        # GCD-polynomial first: its leading term may make the S-polynomial redundant
        if a % b and b % a and next(some_divides(lcm, t), None) is None:
            _, u, v = _xgcd(a, b)
            reduce_insert(_combine(f, di, u, g, dj, v), s)
        coprime = lcm == lms[i] + lms[j] and t == 1
        if not coprime and not chain(i, j, lcm, L):
            reduce_insert(_combine(f, di, L // a, g, dj, -(L // b)), s)
    return minimalize([elems[k] for k in alive], codec)


def minimalize(elems: list, codec: MonomialCodec) -> list:
    divmask = codec.divmask
    elems = [_positive(f) for f in elems if f]
    info = [(max(f), f[max(f)]) for f in elems]
    keep = []
    for i, (li, ci) in enumerate(info):
        dominated = False
        for j, (lj, cj) in enumerate(info):
            if j == i:
                continue
            d = li - lj
            if d >= 0 and not (d & divmask) and ci % cj == 0:
                if (lj, cj) != (li, ci) or j < i:
                    dominated = True
                    break
        if not dominated:
            keep.append(elems[i])
    # tail coefficients are reduced mod the LCs; LT data is unaffected
    out = []
    for i, f in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        olms = [max(g) for g in others]
        olcs = [g[max(g)] for g in others]
        out.append(_tail_reduce(f, olms, olcs, others, divmask))
    out.sort(key=max, reverse=True)
    return out


# ---------------------------------------------------------------------------
# public API


@dataclass(frozen=True)
class StrongGroebnerBasis:
    """A minimal strong Groebner basis over ZZ with positive leading coefficients.

    Only the leading-monomial and leading-coefficient data are invariants of
    the ideal; the tails depend on the computation.
    """

    generators: tuple
    order: TermOrder
    normalization: str = "positive-lc, tail-reduced"

    @property
    def ring(self) -> PolyRing:
        return self.generators[0].ring

    @property
    def leading_monomials(self) -> list:
        return [g.leading_monomial() for g in self.generators]

    @property
    def leading_coefficients(self) -> list:
        return [g.leading_coefficient() for g in self.generators]

    def lead_data(self) -> list:
        """Sorted ``(LM, LC)`` pairs; identical for every minimal strong basis."""
        return sorted(zip(self.leading_monomials, self.leading_coefficients))

    def non_lucky_primes(self) -> set:
        out = set()
        for c in self.leading_coefficients:
            out.update(factorint(abs(c)))
        return out

    def normal_form(self, f: Polynomial) -> Polynomial:
        ring = self.ring
        f = ring.convert(f)
        codec = ring.codec
        elems = [g._d for g in self.generators]
        lms = [max(e) for e in elems]
        lcs = [e[m] for e, m in zip(elems, lms)]
        return Polynomial(ring, _strong_full_reduce(dict(f._d), lms, lcs, elems, codec.divmask))

    def contains(self, f: Polynomial) -> bool:
        return not self.normal_form(f)

    def to_json(self) -> dict:
        return {
            "order": self.order.label,
            "generators": [str(g) for g in self.generators],
            "lm": [list(m) for m in self.leading_monomials],
            "lc": [str(c) for c in self.leading_coefficients],
        }


def _integer_ring(gens, order):
    gens = [g for g in gens]
    if not gens:
        raise ValueError("need at least one generator")
    ring = gens[0].ring
    if ring.domain is not ZZ:
        raise TypeError("strong Groebner bases need integer polynomials")
    if order is not None and order != ring.order:
        ring = ring.with_order(order)
        gens = [ring.convert(g) for g in gens]
    return ring, gens


def strong_groebner_Z(gens, order: TermOrder | None = None) -> StrongGroebnerBasis:
    """Minimal strong Groebner basis of the ideal of ZZ[x] generated by ``gens``."""
    ring, gens = _integer_ring(list(gens), order)
    if not any(gens):
        raise ValueError("the zero ideal has no strong basis here")
    dicts = strong_basis_dicts([g._d for g in gens if g], ring.codec)
    return StrongGroebnerBasis(tuple(Polynomial(ring, d) for d in dicts), ring.order)


def non_lucky_primes(gens, order: TermOrder | None = None) -> set:
    """Primes dividing some leading coefficient of a minimal strong basis."""
    return strong_groebner_Z(gens, order).non_lucky_primes()


@dataclass
class ZeroDivisorResult:
    prime: int
    zero_divisor: bool
    witness: Polynomial | None = None
    lucky: bool = False
    method: str = ""
    quotient_generators: list = field(default_factory=list)

    def __bool__(self):
        return self.zero_divisor


def ideal_intersection_with_principal(gens, c: int, order=None) -> list:
    """Generators of ``I ∩ (c)`` in ZZ[x] by tag-variable elimination."""
    ring, gens = _integer_ring(list(gens), order)
    l = ring.nvars
    big = PolyRing(l + 1, ZZ, TermOrder("elim", block=1), names=("_t",) + ring.names)
    bc = big.codec
    src = ring.codec
    t_unit = bc.units[0]

    def lift(f):
        return {bc.pack((0,) + src.unpack(m)): v for m, v in f._d.items()}

    tagged = []
    for g in gens:
        if g:
            tagged.append({m + t_unit: v for m, v in lift(g).items()})
    tagged.append({0: c, t_unit: -c})
    basis = strong_basis_dicts(tagged, bc)
    out = []
    t_shift = bc.exp_shift[0]
    for f in basis:
        if all(((m >> t_shift) & FIELD_MASK) == 0 for m in f):
            out.append(Polynomial(ring, {src.pack(bc.unpack(m)[1:]): v for m, v in f.items()}))
    return out


def is_zero_divisor_prime(gens, p: int, order: TermOrder | None = None,
                          basis: StrongGroebnerBasis | None = None,
                          shortcut: bool = True) -> ZeroDivisorResult:
    """Decide whether the prime ``p`` is a zero divisor in ZZ[x]/I.

    Lucky primes are answered immediately (they are never zero divisors);
    otherwise ``I : p`` is computed from ``I ∩ (p)`` and compared with ``I``.
    """
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    ring, gens = _integer_ring(list(gens), order)
    G = basis if basis is not None else strong_groebner_Z(gens)
    lucky = p not in G.non_lucky_primes()
    if lucky and shortcut:
        return ZeroDivisorResult(p, False, None, True, "lucky")
    inter = ideal_intersection_with_principal(gens, p)
    quotients = [h.exact_div_term((0,) * ring.nvars, p) for h in inter]
    bad = [q for q in quotients if not G.contains(q)]
    if not bad:
        return ZeroDivisorResult(p, False, None, lucky, "quotient", quotients)
    candidates = []
    for q in bad:
        for w in (q, G.normal_form(q)):
            candidates.append(w)
            if w:
                candidates.append(w.primitive()[1])
    valid = [w for w in candidates if w and not G.contains(w) and G.contains(w.scale(p))]
    best = min(range(len(valid)),
               key=lambda k: (valid[k].total_degree(), len(valid[k]), max(abs(c) for c in valid[k].coefficients()), k))
    witness = valid[best]
    return ZeroDivisorResult(p, True, witness, lucky, "quotient", quotients)
