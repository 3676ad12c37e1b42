"""Intersection lattice, Moebius function, characteristic polynomial, point counts."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import numpy as np

from .arrangement import Arrangement, _target


# ---------------------------------------------------------------------------
# exact row echelon forms over QQ or GF(p)


def _rref(rows, p):
    """Reduced row echelon form; returns tuple of rows (Fractions over QQ, residues mod p)."""
    if p:
        M = [[c % p for c in r] for r in rows]
    else:
        M = [[Fraction(c) for c in r] for r in rows]
    if not M:
        return ()
    ncols = len(M[0])
    out = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][col]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        c = M[r][col]
        if p:
            inv = pow(c, -1, p)
            M[r] = [v * inv % p for v in M[r]]
        else:
            M[r] = [v / c for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][col]:
                f = M[i][col]
                if p:
                    M[i] = [(a - f * b) % p for a, b in zip(M[i], M[r])]
                else:
                    M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
        if r == len(M):
            break
    return tuple(tuple(row) for row in M[:r])


def _kernel(basis, ncols, p):
    """Integer (or residue) vectors spanning the common zero set of ``basis``."""
    pivots = [next(i for i, c in enumerate(row) if c) for row in basis]
    out = []
    for f in range(ncols):
        if f in pivots:
            continue
        v = [0] * ncols
        v[f] = 1
        for row, c in zip(basis, pivots):
            v[c] = -row[f]
        if p:
            v = [x % p for x in v]
        else:
            den = 1
            for x in v:
                den = lcm(den, Fraction(x).denominator)
            v = [int(x * den) for x in v]
        out.append(v)
    return out


def _vanishes(a, k, p):
    t = sum(x * y for x, y in zip(a, k))
    return t % p == 0 if p else t == 0


def rank_of(vectors, p=None) -> int:
    return len(_rref([list(v) for v in vectors], p or 0))


# ---------------------------------------------------------------------------
# lattice


@dataclass(frozen=True)
class Flat:
    """A flat, stored by the echelon basis of the span of its forms."""

    basis: tuple
    hyperplanes: frozenset

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def mask(self) -> int:
        m = 0
        for i in self.hyperplanes:
            m |= 1 << i
        return m


@dataclass
class IntersectionLattice:
    dim: int
    n: int
    flats: list                      # grouped by rank: flats[r] is a list of Flat
    mobius: dict = field(default_factory=dict)   # mask -> mu

    def all_flats(self):
        for level in self.flats:
            yield from level

    def __len__(self):
        return sum(len(level) for level in self.flats)

    @property
    def rank(self) -> int:
        return len(self.flats) - 1

    def mu(self, flat: Flat) -> int:
        return self.mobius[flat.mask]

    def below(self, flat: Flat):
        """Flats ``Y <= X`` (reverse inclusion: Y contains X as a subspace)."""
        m = flat.mask
        return [Y for Y in self.all_flats() if Y.mask & m == Y.mask]

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "n": self.n,
            "flats": [
                {"rank": X.rank, "hyperplanes": sorted(X.hyperplanes), "mu": self.mobius[X.mask]}
                for X in self.all_flats()
            ],
        }


def intersection_lattice(A: Arrangement, domain=None) -> IntersectionLattice:
    """All flats of ``A`` (over the working field), with Moebius values.

    Flats of rank ``r + 1`` are obtained by intersecting each rank ``r`` flat
    with each hyperplane not containing it; they are identified by the set
    of hyperplanes containing them.
    """
    A, domain = _target(A, domain)
    p = domain.characteristic
    vecs = A.vectors
    n, l = A.n, A.dim
    bottom = Flat((), frozenset())
    levels = [[bottom]]
    while True:
        nxt = {}
        for X in levels[-1]:
            covered = X.mask
            for h in range(n):
                if covered >> h & 1:
                    continue
                basis = _rref(list(X.basis) + [vecs[h]], p)
                K = _kernel(basis, l, p)
                hs = frozenset(i for i in range(n)
                               if all(_vanishes(vecs[i], k, p) for k in K))
                for i in hs:
                    covered |= 1 << i
                key = sum(1 << i for i in hs)
                if key not in nxt:
                    nxt[key] = Flat(basis, hs)
        if not nxt:
            break
        levels.append(sorted(nxt.values(), key=lambda X: sorted(X.hyperplanes)))
    L = IntersectionLattice(A.dim, n, levels)
    mob = {0: 1}
    seen = [(0, 1)]
    for level in levels[1:]:
        cur = []
        for X in level:
            m = X.mask
            mu = -sum(v for k, v in seen if k & m == k)
            mob[m] = mu
            cur.append((m, mu))
        seen.extend(cur)
    L.mobius = mob
    return L


@dataclass(frozen=True)
class CharPoly:
    """``chi(t)``; ``coeffs[k]`` is the coefficient of ``t^k``."""

    coeffs: tuple

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t):
        v = 0
        for c in reversed(self.coeffs):
            v = v * t + c
        return v

    @classmethod
    def from_roots(cls, roots) -> CharPoly:
        c = [1]
        for r in roots:
            # multiply by (t - r)
            c = [0] + c
            for k in range(len(c) - 1):
                c[k] -= r * c[k + 1]
        return cls(tuple(c))

    def chambers(self) -> int:
        return abs(self(-1))

    def bounded_chambers(self) -> int:
        return abs(self(1))

    def __str__(self):
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if mono and abs(c) == 1:
                s = mono
            else:
                s = f"{abs(c)}{'*' + mono if mono else ''}"
            parts.append(("- " if c < 0 else "+ ") + s)
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]

    def to_json(self, p: int | None = None) -> dict:
        d = {"coefficients": list(reversed(self.coeffs)), "text": str(self),
             "evaluations": {"-1": self(-1), "1": self(1)}}
        if p is not None:
            d["evaluations"][str(p)] = self(p)
        return d


def char_poly(L) -> CharPoly:
    """``sum_X mu(X) t^dim(X)``; accepts a lattice or an arrangement."""
    if isinstance(L, Arrangement):
        L = intersection_lattice(L)
    coeffs = [0] * (L.dim + 1)
    for X in L.all_flats():
        coeffs[L.dim - X.rank] += L.mobius[X.mask]
    return CharPoly(tuple(coeffs))


def characteristic_polynomial(A: Arrangement, domain=None) -> CharPoly:
    return char_poly(intersection_lattice(A, domain))


def rank_generating_counts(L: IntersectionLattice) -> list:
    """Number of flats per rank (used to compare lattices across fields)."""
    return [len(level) for level in L.flats]


# ---------------------------------------------------------------------------
# point counting

POINT_LIMIT = 10 ** 8


def count_complement_points(A: Arrangement, p: int | None = None, chunk: int = 1 << 20) -> int:
    """Brute-force ``#(GF(p)^l minus the union of the hyperplanes)``."""
    if p is None:
        p = A.prime
    if p is None:
        raise ValueError("point counting needs an arrangement over GF(p) or a prime")
    if A.prime is None:
        from .arrangement import reduce_arrangement
        A = reduce_arrangement(A, p)
    l = A.dim
    total = p ** l
    if total > POINT_LIMIT:
        raise ValueError(f"p^l = {total} exceeds the enumeration limit {POINT_LIMIT}")
    V = np.array(A.vectors, dtype=np.int64).T % p       # l x n
    powers = p ** np.arange(l - 1, -1, -1, dtype=np.int64)
    count = 0
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        pts = (idx[:, None] // powers[None, :]) % p      # points as base-p digits
        vals = (pts @ V) % p
        count += int(np.count_nonzero(np.all(vals != 0, axis=1)))
    return count


# ---------------------------------------------------------------------------
# freeness consequences and criteria


def terao_factorization_check(report, chi: CharPoly) -> bool:
    """Does ``chi(t)`` equal ``prod (t - e_i)`` over the exponents of a free report?"""
    if not report.free:
        raise ValueError("factorization is only predicted for free arrangements")
    return CharPoly.from_roots(report.exponents) == chi


@dataclass
class YoshinagaPrediction:
    prediction: str | None          # "free", "nonfree" or None
    case: int | str
    chi_value: int | None = None
    exponents: list | None = None

    def to_json(self) -> dict:
        return {"prediction": self.prediction, "case": self.case,
                "chi_value": self.chi_value, "exponents": self.exponents}


def _over_prime(A, p):
    if A.prime is None:
        if p is None:
            raise ValueError("need an arrangement over GF(p)")
        from .arrangement import reduce_arrangement
        A = reduce_arrangement(A, p)
    return A, A.prime


def yoshinaga_3d(A: Arrangement, p: int | None = None, chi: CharPoly | None = None) -> YoshinagaPrediction:
    """Freeness prediction for l = 3 over GF(p) from ``chi``.

    Case 1, ``n >= 2p``: free iff ``chi(p) = 0``.  Case 2, ``n = 2p - 1``:
    free iff ``chi = (t-1)(t-p+1)^2``.  Case 3, ``n = 2p - 2``: free iff
    ``chi = (t-1)(t-p+1)(t-p+2)``.
    """
    A, p = _over_prime(A, p)
    if A.dim != 3:
        raise ValueError("this criterion is for arrangements in dimension 3")
    chi = chi or characteristic_polynomial(A)
    n = A.n
    if n >= 2 * p:
        v = chi(p)
        exps = chi_exponents(chi) if v == 0 else None
        return YoshinagaPrediction("free" if v == 0 else "nonfree", 1, v, exps)
    if n == 2 * p - 1:
        target = CharPoly.from_roots([1, p - 1, p - 1])
        ok = chi == target
        return YoshinagaPrediction("free" if ok else "nonfree", 2, chi(p), [1, p - 1, p - 1] if ok else None)
    if n == 2 * p - 2:
        target = CharPoly.from_roots([1, p - 1, p - 2])
        ok = chi == target
        return YoshinagaPrediction("free" if ok else "nonfree", 3, chi(p),
                                   sorted([1, p - 1, p - 2]) if ok else None)
    return YoshinagaPrediction(None, "inapplicable", chi(p))


def chi_exponents(chi: CharPoly):
    """Non-negative integer roots of a monic ``chi`` when it splits completely, else ``None``."""
    roots = []
    c = list(chi.coeffs)
    while len(c) > 1:
        # candidates divide the constant term (0 is a root when it vanishes)
        const = c[0]
        if const == 0:
            r = 0
        else:
            r = next((d for d in range(1, abs(const) + 1) if const % d == 0 and _eval(c, d) == 0), None)
            if r is None:
                return None
        roots.append(r)
        c = _deflate(c, r)
    return sorted(roots)


def _eval(c, t):
    v = 0
    for x in reversed(c):
        v = v * t + x
    return v


def _deflate(c, r):
    """Quotient of ``sum c[k] t^k`` by ``t - r`` (the remainder is known to vanish)."""
    q = [0] * (len(c) - 1)
    carry = 0
    for k in range(len(c) - 1, 0, -1):
        carry = c[k] + r * carry
        q[k - 1] = carry
    return q


def yoshinaga_ld(A: Arrangement, p: int | None = None, chi: CharPoly | None = None):
    """If ``chi(p^(l-2)) = 0`` return the predicted exponents, else ``None``."""
    A, p = _over_prime(A, p)
    chi = chi or characteristic_polynomial(A)
    l = A.dim
    if l < 2:
        return None
    if chi(p ** (l - 2)) != 0:
        return None
    head = [p ** k for k in range(l - 1)]
    return head + [A.n - sum(head)]


def lattice_json(L: IntersectionLattice) -> str:
    return json.dumps(L.to_json(), sort_keys=True)
