"""Buchberger kernel over a field, for ideals and for submodules of S^r.

Elements are plain dicts ``{packed monomial: coefficient}`` under a
:class:`~freearr.polyring.MonomialCodec`.  Coefficients are residues mod
``p`` when ``p > 0``; when ``p == 0`` the field is QQ and elements are kept
as primitive integer vectors (fraction-free reduction).

With cofactor tracking, an element is a vector in S^(m+r) under a
position-over-term order: components ``m..m+r-1`` hold the actual vector
and ``0..m-1`` record how it was built from the inputs.  Reducing the upper
part to zero leaves a syzygy of the inputs in the lower part.
"""

from __future__ import annotations

import heapq
from math import gcd

from ..polyring import FIELD_MASK


def normalize(f: dict, p: int) -> dict:
    """Make the leading coefficient 1 (mod p) or the vector primitive with positive LC."""
    if not f:
        return f
    lm = max(f)
    c = f[lm]
    if p:
        if c != 1:
            inv = pow(c, -1, p)
            return {m: v * inv % p for m, v in f.items()}
        return f
    g = gcd(*f.values())
    if c < 0:
        g = -g
    if g != 1:
        return {m: v // g for m, v in f.items()}
    return f


def top_reduce(f: dict, lms: list, elems: list, codec, p: int, top: int = 0) -> dict:
    """Reduce leading terms of ``f`` that are >= ``top`` until one is irreducible."""
    divmask = codec.divmask
    while f:
        lm = max(f)
        if lm < top:
            return f
        for k, lg in enumerate(lms):
            d = lm - lg
            if d >= 0 and not (d & divmask):
                break
        else:
            return f
        g = elems[k]
        c = f[lm]
        if p:
            get = f.get
            for mg, vg in g.items():
                key = mg + d
                v = (get(key, 0) - c * vg) % p
                if v:
                    f[key] = v
                else:
                    del f[key]
        else:
            cg = g[lg]
            h = gcd(c, cg)
            a, b = cg // h, c // h
            if a < 0:
                a, b = -a, -b
            if a != 1:
                f = {m: v * a for m, v in f.items()}
            get = f.get
            for mg, vg in g.items():
                key = mg + d
                v = get(key, 0) - b * vg
                if v:
                    f[key] = v
                else:
                    del f[key]
    return f


def full_reduce(f: dict, lms: list, elems: list, codec, p: int, rem=None) -> dict:
    """Reduce every term of ``f``; irreducible terms are collected into ``rem``.

    Over QQ, ``f`` and ``rem`` are rescaled together, so the result is an
    integer multiple of the true remainder.
    """
    divmask = codec.divmask
    rem = {} if rem is None else rem
    while f:
        lm = max(f)
        for k, lg in enumerate(lms):
            d = lm - lg
            if d >= 0 and not (d & divmask):
                break
        else:
            rem[lm] = f.pop(lm)
            continue
        g = elems[k]
        c = f[lm]
        if p:
            get = f.get
            for mg, vg in g.items():
                key = mg + d
                v = (get(key, 0) - c * vg) % p
                if v:
                    f[key] = v
                else:
                    del f[key]
        else:
            cg = g[lg]
            h = gcd(c, cg)
            a, b = cg // h, c // h
            if a < 0:
                a, b = -a, -b
            if a != 1:
                f = {m: v * a for m, v in f.items()}
                rem = {m: v * a for m, v in rem.items()}
            get = f.get
            for mg, vg in g.items():
                key = mg + d
                v = get(key, 0) - b * vg
                if v:
                    f[key] = v
                else:
                    del f[key]
    return rem


class FieldBuchberger:
    """Homogeneous-friendly Buchberger with sugar selection.

    ``shifts[c]`` is the degree of the basis vector of component ``c``; the
    degree of a term is its monomial degree plus that shift.  ``top`` is the
    packed threshold above which terms belong to the tracked part (0 when no
    cofactors are recorded).
    """

    def __init__(self, codec, p: int, shifts=None, top: int = 0, use_product_criterion: bool = True):
        self.codec = codec
        self.p = p
        self.shifts = shifts
        self.top = top
        self.use_product = use_product_criterion and top == 0 and codec.ncomps == 0
        self.elems: list = []
        self.lms: list = []
        self.sugar: list = []
        self.pairs: list = []
        self.pending: set = set()
        self.syzygies: list = []

    def degree_of(self, m: int) -> int:
        if self.shifts is None:
            return m & FIELD_MASK
        return (m & FIELD_MASK) + self.shifts[self.codec.comp(m)]

    def sugar_of(self, f: dict) -> int:
        return max(self.degree_of(m) for m in f)

    def add(self, f: dict, sugar: int) -> int:
        f = normalize(f, self.p)
        lm = max(f)
        codec = self.codec
        i = len(self.elems)
        comp_i = codec.comp(lm)
        for j, lj in enumerate(self.lms):
            if codec.comp(lj) != comp_i:
                continue
            lcm = codec.lcm(lm, lj)
            if self.use_product and lcm == lm + lj:
                continue
            s = max(sugar + self.degree_of(lcm) - self.degree_of(lm),
                    self.sugar[j] + self.degree_of(lcm) - self.degree_of(lj))
            heapq.heappush(self.pairs, (s, lcm, j, i))
            self.pending.add((j, i))
        self.elems.append(f)
        self.lms.append(lm)
        self.sugar.append(sugar)
        return i

    def _chain_skip(self, i, j, lcm) -> bool:
        codec = self.codec
        pend = self.pending
        for k, lk in enumerate(self.lms):
            if k == i or k == j:
                continue
            if codec.divides(lk, lcm):
                a = (i, k) if i < k else (k, i)
                b = (j, k) if j < k else (k, j)
                if a not in pend and b not in pend:
                    return True
        return False

    def spoly(self, i: int, j: int, lcm: int) -> dict:
        f, g = self.elems[i], self.elems[j]
        li, lj = self.lms[i], self.lms[j]
        di, dj = lcm - li, lcm - lj
        p = self.p
        if p:
            # both monic
            h = {m + di: v for m, v in f.items()}
            get = h.get
            for m, v in g.items():
                k = m + dj
                w = (get(k, 0) - v) % p
                if w:
                    h[k] = w
                else:
                    del h[k]
            return h
        ci, cj = f[li], g[lj]
        t = gcd(ci, cj)
        a, b = cj // t, ci // t
        h = {m + di: v * a for m, v in f.items()}
        get = h.get
        for m, v in g.items():
            k = m + dj
            w = get(k, 0) - b * v
            if w:
                h[k] = w
            else:
                del h[k]
        return h

    def next_pair_degree(self):
        return self.pairs[0][0] if self.pairs else None

    def process_pair(self):
        s, lcm, i, j = heapq.heappop(self.pairs)
        self.pending.discard((i, j))
        if self._chain_skip(i, j, lcm):
            return None
        h = self.spoly(i, j, lcm)
        return self.reduce_and_insert(h, s)

    def reduce_and_insert(self, h: dict, sugar: int):
        """Top-reduce ``h``; insert it if the tracked part survives, else log a syzygy."""
        h = top_reduce(h, self.lms, self.elems, self.codec, self.p, self.top)
        if h and max(h) >= self.top:
            return self.add(h, sugar)
        if h:
            self.syzygies.append(normalize(h, self.p))
        return None

    def process_through(self, degree=None):
        while self.pairs and (degree is None or self.pairs[0][0] <= degree):
            self.process_pair()


def run(inputs: list, codec, p: int, shifts=None, top: int = 0, input_syzygies: bool = True):
    """Feed ``inputs`` by increasing sugar, interleaved with S-pairs.

    Returns ``(engine, selected)`` where ``selected[k]`` tells whether input
    ``k`` survived reduction by everything of lower or equal degree that
    came before it; for homogeneous inputs that is a minimal generating set.
    With ``input_syzygies=False`` the relation produced by a discarded input
    is dropped, so every recorded syzygy only involves selected inputs.
    """
    eng = FieldBuchberger(codec, p, shifts, top)
    order = sorted(range(len(inputs)), key=lambda k: (eng.sugar_of(inputs[k]) if inputs[k] else -1, k))
    selected = [False] * len(inputs)
    for k in order:
        f = inputs[k]
        if not f:
            continue
        s = eng.sugar_of(f)
        eng.process_through(s)
        before = len(eng.syzygies)
        idx = eng.reduce_and_insert(dict(f), s)
        selected[k] = idx is not None
        if not input_syzygies:
            del eng.syzygies[before:]
    eng.process_through()
    return eng, selected


def interreduce(elems: list, codec, p: int) -> list:
    """Reduced Groebner basis from a Groebner basis: drop redundant LMs, tail-reduce."""
    elems = [normalize(dict(f), p) for f in elems if f]
    elems.sort(key=max)
    keep = []
    lms = [max(f) for f in elems]
    for i, f in enumerate(elems):
        li = lms[i]
        redundant = False
        for j, lj in enumerate(lms):
            if j == i:
                continue
            if codec.divides(lj, li) and (lj != li or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(f)
    out = []
    for i, f in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        olms = [max(g) for g in others]
        lm = max(f)
        tail = dict(f)
        del tail[lm]
        out.append(normalize(full_reduce(tail, olms, others, codec, p, {lm: f[lm]}), p))
    out.sort(key=max, reverse=True)
    return out
