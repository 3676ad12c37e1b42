"""Ideals over QQ and GF(p): presentations, Groebner bases, normal forms."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..polyring import QQ, ZZ, PrimeField, PolyRing, Polynomial, TermOrder, _codec
from . import core
from .integer import _strong_full_reduce


@dataclass(frozen=True)
class IdealPresentation:
    """Generators of an ideal together with the term order used to study it."""

    generators: tuple
    order: TermOrder

    def __post_init__(self):
        gens = tuple(g for g in self.generators if g)
        rings = {g.ring.with_order(self.order) for g in gens}
        if len(rings) > 1:
            raise ValueError("generators live in different rings")
        if gens and gens[0].ring.order != self.order:
            r = gens[0].ring.with_order(self.order)
            gens = tuple(r.convert(g) for g in gens)
        object.__setattr__(self, "generators", gens)

    @classmethod
    def of(cls, gens, order: TermOrder | None = None) -> IdealPresentation:
        gens = list(gens)
        if order is None:
            order = gens[0].ring.order if gens else TermOrder()
        return cls(tuple(gens), order)

    @property
    def ring(self) -> PolyRing:
        if not self.generators:
            raise ValueError("zero ideal has no recorded ring")
        return self.generators[0].ring

    @property
    def domain(self):
        return self.ring.domain

    @property
    def homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def reduce_mod(self, p: int) -> IdealPresentation:
        return IdealPresentation(tuple(g.reduce_mod(p) for g in self.generators), self.order)

    def over(self, domain) -> IdealPresentation:
        ring = self.ring.with_domain(domain)
        return IdealPresentation(tuple(ring.convert(g) for g in self.generators), self.order)


def characteristic_of(ring: PolyRing) -> int:
    dom = ring.domain
    if isinstance(dom, PrimeField):
        return dom.p
    if dom is QQ:
        return 0
    raise TypeError(f"{dom} is not a field")


def to_engine(f: Polynomial, codec, comp: int = 0):
    """Repack ``f`` into ``codec``; returns ``(dict, scale)`` with f = scale * dict."""
    src = f.ring.codec
    cu = codec.comp_unit(comp) if comp else 0
    pack, unpack = codec.pack, src.unpack
    if f.ring.domain is QQ:
        scale, g = f.primitive()
        return {pack(unpack(m)) + cu: v for m, v in g._d.items()}, scale
    return {pack(unpack(m)) + cu: v for m, v in f._d.items()}, 1


def from_engine(d: dict, ring: PolyRing, codec, comp: int | None = None) -> Polynomial:
    dst = ring.codec
    out = {}
    conv = Fraction if ring.domain is QQ else int
    for m, v in d.items():
        if comp is not None and codec.comp(m) != comp:
            continue
        out[dst.pack(codec.unpack(m))] = conv(v)
    return Polynomial(ring, out)


def _prepare(gens, order):
    gens = [g for g in gens if g]
    if not gens:
        return None, [], 0
    ring = gens[0].ring
    if order is not None and order != ring.order:
        ring = ring.with_order(order)
        gens = [ring.convert(g) for g in gens]
    p = characteristic_of(ring)
    return ring, gens, p


def groebner_dicts(gens, order=None):
    ring, gens, p = _prepare(gens, order)
    if ring is None:
        return None, [], 0
    codec = ring.codec
    inputs = [to_engine(g, codec)[0] for g in gens]
    eng, _ = core.run(inputs, codec, p)
    return ring, core.interreduce(eng.elems, codec, p), p


def buchberger_field(gens, order: TermOrder | None = None) -> list:
    """Reduced Groebner basis (monic, sorted by decreasing leading monomial)."""
    ring, elems, p = groebner_dicts(gens, order)
    if ring is None:
        return []
    out = []
    for d in elems:
        f = from_engine(d, ring, ring.codec)
        c = f.leading_coefficient()
        out.append(f.scale(ring.domain.inverse(c)) if c != 1 else f)
    return out


def normal_form(f: Polynomial, G, order: TermOrder | None = None) -> Polynomial:
    """Fully reduced remainder of ``f`` modulo the list ``G``.

    Over ZZ only terms whose monomial and coefficient are both divisible by
    a leading term are reduced (strong division).
    """
    G = [g for g in G if g]
    ring = f.ring
    if order is not None and order != ring.order:
        ring = ring.with_order(order)
        f = ring.convert(f)
    G = [ring.convert(g) for g in G]
    codec = ring.codec
    if ring.domain is ZZ:
        elems = [g._d for g in G]
        lms = [max(e) for e in elems]
        lcs = [e[m] for e, m in zip(elems, lms)]
        return Polynomial(ring, _strong_full_reduce(dict(f._d), lms, lcs, elems, codec.divmask))
    dom = ring.domain
    monic = []
    for g in G:
        c = g.leading_coefficient()
        monic.append(g.scale(dom.inverse(c))._d)
    lms = [max(e) for e in monic]
    r = dict(f._d)
    rem = {}
    p = dom.p if isinstance(dom, PrimeField) else None
    while r:
        m = max(r)
        for k, lg in enumerate(lms):
            if codec.divides(lg, m):
                break
        else:
            rem[m] = r.pop(m)
            continue
        c = r[m]
        s = m - lg
        for mg, vg in monic[k].items():
            key = mg + s
            v = r.get(key, 0) - c * vg
            if p:
                v %= p
            if v:
                r[key] = v
            else:
                r.pop(key, None)
    return Polynomial(ring, rem)


def contains(G: list, f: Polynomial) -> bool:
    """Membership test against a Groebner basis ``G`` over a field."""
    return not normal_form(f, G)


def leading_monomials(G: list) -> list:
    return [g.leading_monomial() for g in G]


def module_codec(ring: PolyRing):
    """Position-over-term codec for vectors over ``ring``."""
    return _codec(ring.nvars, ring.order, 1, True)
