"""Syzygies, minimal graded free resolutions and Betti tables over a field."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from ..polyring import FIELD_MASK, QQ, PolyRing, Polynomial
from . import core
from .field import IdealPresentation, characteristic_of, from_engine, module_codec, to_engine


@dataclass
class BettiTable:
    """Graded Betti numbers ``beta[(i, j)]`` of a graded module."""

    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        self.entries = {k: v for k, v in self.entries.items() if v}
        if any(v < 0 for v in self.entries.values()):
            raise ValueError("Betti numbers are non-negative")

    def beta(self, i: int, j: int) -> int:
        return self.entries.get((i, j), 0)

    def row(self, i: int) -> dict:
        return {j: v for (a, j), v in self.entries.items() if a == i}

    def total(self, i: int) -> int:
        return sum(self.row(i).values())

    @property
    def length(self) -> int:
        return max((i for i, _ in self.entries), default=-1)

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.entries == other.entries

    def to_json(self) -> dict:
        return {"entries": [{"i": i, "j": j, "beta": v} for (i, j), v in sorted(self.entries.items())]}

    @classmethod
    def from_json(cls, data) -> BettiTable:
        return cls({(e["i"], e["j"]): e["beta"] for e in data["entries"]})

    def __str__(self):
        if not self.entries:
            return "(zero module)"
        lines = []
        for i in range(self.length + 1):
            row = self.row(i)
            body = ", ".join(f"{j}:{row[j]}" for j in sorted(row))
            lines.append(f"  {i}: {body}")
        return "\n".join(lines)


def hdim(b: BettiTable) -> int:
    """Homological dimension: last non-zero row (``-1`` for the zero module)."""
    return b.length


def consecutive_cancellation_reachable(source: BettiTable, target: BettiTable):
    """Can ``target`` be reached from ``source`` by consecutive cancellations?

    Returns ``(ok, m)`` where ``m[(i, j)]`` counts the cancellations of the
    pair ``(i, j), (i + 1, j)``.  For each internal degree ``j`` the
    differences must satisfy ``d[i] = m[i-1] + m[i]`` with all ``m >= 0``.
    """
    degrees = {j for _, j in source.entries} | {j for _, j in target.entries}
    top = max(source.length, target.length)
    mult = {}
    for j in sorted(degrees):
        prev = 0
        for i in range(top + 1):
            d = source.beta(i, j) - target.beta(i, j)
            cur = d - prev
            if cur < 0:
                return False, None
            if cur:
                mult[(i, j)] = cur
            prev = cur
        if prev:
            return False, None
    return True, mult


# ---------------------------------------------------------------------------
# syzygies


@dataclass
class SyzygyModule:
    """Generators of the syzygies of a tuple ``(f_1, ..., f_m)``.

    ``shifts[k]`` is the degree attached to the basis vector ``e_k`` (the
    degree of ``f_k``), so a homogeneous syzygy has a well-defined degree.
    """

    rank: int
    generators: list
    shifts: list

    def degree(self, s) -> int:
        return max(g.total_degree() + self.shifts[k] for k, g in enumerate(s) if g)

    def degrees(self) -> list:
        return [self.degree(s) for s in self.generators]


def _as_vectors(elements):
    vecs = []
    for e in elements:
        if isinstance(e, Polynomial):
            vecs.append((e,))
        else:
            vecs.append(tuple(e))
    rank = len(vecs[0])
    if any(len(v) != rank for v in vecs):
        raise ValueError("vectors have different lengths")
    return vecs, rank


def _vector_dict(vec, codec, comp_offset):
    """Pack a vector; returns (dict, scale) with vec = scale * dict (QQ) or scale 1."""
    parts = []
    for k, f in enumerate(vec):
        if f:
            parts.append((k, f))
    if not parts:
        return {}, 1
    ring = parts[0][1].ring
    if ring.domain is QQ:
        den = 1
        for _, f in parts:
            for c in f._d.values():
                den = den * c.denominator // gcd(den, c.denominator)
        d = {}
        num = []
        for k, f in parts:
            for m, c in f._d.items():
                v = int(c * den)
                num.append(v)
                d[codec.pack(ring.codec.unpack(m), comp_offset + k)] = v
        g = gcd(*num)
        return {m: v // g for m, v in d.items()}, Fraction(g, den)
    d = {}
    for k, f in parts:
        for m, c in f._d.items():
            d[codec.pack(ring.codec.unpack(m), comp_offset + k)] = c
    return d, 1


def _degree(d: dict, codec, shifts) -> int:
    return max((m & FIELD_MASK) + shifts[codec.comp(m)] for m in d)


def _level(cands, cand_degs, comp_shifts, codec, p, select):
    """One cofactor run over vectors ``cands`` (components 0..rank-1).

    Returns ``(selected flags, syzygy dicts)``; syzygies use components
    ``0..m-1`` indexed like ``cands``.
    """
    m = len(cands)
    top = codec.comp_unit(m)
    shifts = list(cand_degs) + list(comp_shifts)
    inputs = []
    for k, f in enumerate(cands):
        g = {mono + top: v for mono, v in f.items()}
        g[codec.comp_unit(k)] = 1
        inputs.append(g)
    eng, selected = core.run(inputs, codec, p, shifts, top, input_syzygies=not select)
    return selected, eng.syzygies


def _setup(vecs, shifts):
    ring = next(f.ring for v in vecs for f in v if f) if any(f for v in vecs for f in v) else None
    if ring is None:
        raise ValueError("all vectors are zero")
    p = characteristic_of(ring)
    codec = module_codec(ring)
    rank = len(vecs[0])
    shifts = list(shifts) if shifts is not None else [0] * rank
    dicts, scales = [], []
    for v in vecs:
        d, s = _vector_dict(v, codec, 0)
        dicts.append(d)
        scales.append(s)
    degs = [_degree(d, codec, shifts) if d else 0 for d in dicts]
    return ring, p, codec, shifts, dicts, scales, degs


def _syzygy_to_vector(d, ring, codec, scales, m):
    out = []
    for k in range(m):
        f = from_engine(d, ring, codec, comp=k)
        if scales[k] != 1 and f:
            f = f.scale(Fraction(1) / scales[k]) if ring.domain is QQ else f
        out.append(f)
    return tuple(out)


def syzygies(elements, shifts=None, degrees=None) -> SyzygyModule:
    """Generating set of the syzygies of ``elements`` (polynomials or vectors).

    Inputs must be homogeneous with respect to ``shifts`` (the degrees of
    the ambient basis vectors) for the degrees of the result to make sense;
    the generating property holds regardless.  ``degrees`` overrides the
    degree attached to each input, which matters for zero inputs.
    """
    vecs, rank = _as_vectors(elements)
    ring, p, codec, shifts, dicts, scales, degs = _setup(vecs, shifts)
    if degrees is not None:
        degs = list(degrees)
    m = len(vecs)
    _, syz = _level(dicts, degs, shifts, codec, p, select=False)
    gens = [_syzygy_to_vector(s, ring, codec, scales, m) for s in syz]
    return SyzygyModule(m, gens, degs)


def minimal_generators(vectors, shifts=None) -> list:
    """Indices of a minimal generating subset of homogeneous ``vectors``.

    Candidates are visited by increasing degree; one is kept when it is not
    in the submodule spanned by those kept before it.
    """
    vecs, rank = _as_vectors(vectors)
    ring, p, codec, shifts, dicts, scales, degs = _setup(vecs, shifts)
    _, selected = core.run(dicts, codec, p, shifts)
    return [k for k, s in enumerate(selected) if s]


def minimal_syzygies(elements, shifts=None, degrees=None) -> SyzygyModule:
    """A minimal homogeneous generating set of the syzygy module."""
    S = syzygies(elements, shifts, degrees)
    if not S.generators:
        return S
    keep = minimal_generators(S.generators, S.shifts)
    gens = [S.generators[k] for k in keep]
    order = sorted(range(len(gens)), key=lambda k: S.degree(gens[k]))
    return SyzygyModule(S.rank, [gens[k] for k in order], S.shifts)


@dataclass
class Resolution:
    """Betti table plus the ranks of the free modules, level by level."""

    betti: BettiTable
    generator_degrees: list


def _generator_list(quotient):
    if isinstance(quotient, IdealPresentation):
        gens = list(quotient.generators)
    else:
        gens = [g for g in quotient if g]
    return gens


def minimal_free_resolution(quotient, max_length: int | None = None, ring: PolyRing | None = None) -> BettiTable:
    """Graded Betti numbers of ``S/I`` for a homogeneous ideal ``I`` over a field.

    ``quotient`` is an :class:`IdealPresentation` or a list of generators.
    """
    return resolve(quotient, max_length, ring).betti


def resolve(quotient, max_length: int | None = None, ring: PolyRing | None = None) -> Resolution:
    gens = _generator_list(quotient)
    if not gens:
        return Resolution(BettiTable({(0, 0): 1}), [[0]])
    ring = gens[0].ring
    if not all(g.is_homogeneous() for g in gens):
        raise ValueError("minimal_free_resolution needs a homogeneous ideal")
    if isinstance(quotient, IdealPresentation) and ring.order != quotient.order:
        ring = ring.with_order(quotient.order)
        gens = [ring.convert(g) for g in gens]
    if any(g.is_constant() for g in gens):
        return Resolution(BettiTable({}), [])
    p = characteristic_of(ring)
    codec = module_codec(ring)
    cap = ring.nvars
    limit = cap if max_length is None else min(cap, max_length)
    cands = [to_engine(g, codec)[0] for g in gens]
    comp_shifts = [0]
    entries = {(0, 0): 1}
    levels = [[0]]
    level = 1
    while cands and level <= limit:
        degs = [_degree(d, codec, comp_shifts) for d in cands]
        selected, syz = _level(cands, degs, comp_shifts, codec, p, select=True)
        sel = [k for k, s in enumerate(selected) if s]
        sel_degs = [degs[k] for k in sel]
        for d in sel_degs:
            entries[(level, d)] = entries.get((level, d), 0) + 1
        levels.append(sel_degs)
        pos = {k: i for i, k in enumerate(sel)}
        unit = codec.comp_unit(1)
        nxt = []
        for s in syz:
            moved = {}
            for mono, v in s.items():
                c = codec.comp(mono)
                moved[mono + (pos[c] - c) * unit] = v
            nxt.append(moved)
        cands = nxt
        comp_shifts = sel_degs
        level += 1
    if cands and (max_length is None or level <= max_length):
        raise RuntimeError("resolution longer than the number of variables")
    return Resolution(BettiTable(entries), levels)


# ---------------------------------------------------------------------------
# Hilbert series bookkeeping (used to cross-check resolutions)


def hilbert_numerator(monomials, nvars: int) -> dict:
    """Numerator ``N(t)`` of the Hilbert series ``N(t)/(1-t)^l`` of ``S/(monomials)``.

    Returned as ``{degree: coefficient}``.
    """
    gens = _minimize_monomials([tuple(m) for m in monomials])
    return _hn(gens, nvars)


def _minimize_monomials(ms):
    ms = sorted(set(ms), key=sum)
    out = []
    for m in ms:
        if not any(all(a <= b for a, b in zip(g, m)) for g in out):
            out.append(m)
    return out


def _hn(gens, nvars):
    if not gens:
        return {0: 1}
    if any(sum(g) == 0 for g in gens):
        return {}
    # all generators pairwise coprime -> product formula
    last = gens[-1]
    rest = gens[:-1]
    a = _hn(rest, nvars)
    quot = _minimize_monomials([tuple(max(x - y, 0) for x, y in zip(g, last)) for g in rest])
    b = _hn(quot, nvars)
    d = sum(last)
    out = dict(a)
    for k, v in b.items():
        out[k + d] = out.get(k + d, 0) - v
    return {k: v for k, v in out.items() if v}


def betti_numerator(b: BettiTable) -> dict:
    out = {}
    for (i, j), v in b.entries.items():
        out[j] = out.get(j, 0) + (-1) ** i * v
    return {k: v for k, v in out.items() if v}
