"""Central hyperplane arrangements, logarithmic derivations and freeness."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from sympy import factorint

from .groebner import IdealPresentation, hdim, minimal_free_resolution
from .groebner.resolution import minimal_syzygies
from .polyring import GF, QQ, ZZ, PolyRing, Polynomial, PrimeField, TermOrder


class ArrangementError(ValueError):
    pass


class NotGoodPrimeError(ArrangementError):
    pass


class InconsistencyError(RuntimeError):
    """Two independent routes to the same fact disagreed."""


def _primitive(v):
    g = 0
    for c in v:
        g = gcd(g, c)
    v = [c // g for c in v]
    first = next(c for c in v if c)
    return tuple(-c for c in v) if first < 0 else tuple(v)


def _normalize_mod(v, p):
    """Scale so that the first non-zero residue is 1."""
    v = [c % p for c in v]
    first = next(c for c in v if c)
    inv = pow(first, -1, p)
    return tuple(c * inv % p for c in v)


@dataclass(frozen=True)
class Arrangement:
    """A central arrangement given by integer normal vectors.

    ``prime`` is ``None`` for an arrangement over QQ; otherwise the vectors
    are residues mod ``prime`` and the arrangement lives in GF(prime)^l.
    """

    vectors: tuple
    prime: int | None = None
    name: str | None = None

    @property
    def dim(self) -> int:
        return len(self.vectors[0])

    @property
    def n(self) -> int:
        return len(self.vectors)

    def __len__(self):
        return len(self.vectors)

    @property
    def domain(self):
        return QQ if self.prime is None else GF(self.prime)

    def ring(self, domain=None, order: TermOrder | None = None) -> PolyRing:
        domain = self.domain if domain is None else domain
        return PolyRing(self.dim, domain, order or TermOrder())

    def forms(self, domain=None) -> list:
        R = self.ring(domain)
        return [R.linear_form(v) for v in self.vectors]

    def rank(self) -> int:
        from .lattice import rank_of
        return rank_of(self.vectors, self.prime)

    def to_json(self) -> dict:
        d = {"name": self.name or "", "dim": self.dim, "hyperplanes": [list(v) for v in self.vectors]}
        if self.prime is not None:
            d["prime"] = self.prime
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data) -> Arrangement:
        if isinstance(data, str):
            data = json.loads(data)
        vecs = data["hyperplanes"]
        if "dim" in data and any(len(v) != data["dim"] for v in vecs):
            raise ArrangementError("hyperplane length does not match dim")
        prime = data.get("prime")
        name = data.get("name") or None
        if prime is None:
            return new_arrangement(vecs, name=name)
        return arrangement_over_prime(vecs, prime, name=name)

    def __str__(self):
        R = self.ring()
        body = "*".join(f"({R.linear_form(v)})" for v in self.vectors)
        where = "QQ" if self.prime is None else f"GF({self.prime})"
        return f"{self.name or 'arrangement'} in {where}^{self.dim}: {body}"


def new_arrangement(vectors, name: str | None = None) -> Arrangement:
    """Arrangement over QQ with primitive normal vectors (first non-zero entry positive)."""
    vectors = [list(v) for v in vectors]
    if not vectors:
        raise ArrangementError("an arrangement needs at least one hyperplane")
    l = len(vectors[0])
    if l < 1 or any(len(v) != l for v in vectors):
        raise ArrangementError("hyperplanes must have a common positive length")
    out = []
    seen = {}
    for k, v in enumerate(vectors):
        if any(isinstance(c, bool) or int(c) != c for c in v):
            raise ArrangementError("coefficients must be integers")
        v = [int(c) for c in v]
        if not any(v):
            raise ArrangementError(f"hyperplane {k} has the zero normal vector")
        w = _primitive(v)
        if w in seen:
            raise ArrangementError(f"hyperplanes {seen[w]} and {k} are proportional")
        seen[w] = k
        out.append(w)
    return Arrangement(tuple(out), None, name)


def arrangement_over_prime(vectors, p: int, name: str | None = None) -> Arrangement:
    """Arrangement in GF(p)^l; vectors are read mod ``p`` and scaled to lead with 1."""
    GF(p)
    vectors = [list(v) for v in vectors]
    if not vectors:
        raise ArrangementError("an arrangement needs at least one hyperplane")
    l = len(vectors[0])
    if any(len(v) != l for v in vectors):
        raise ArrangementError("hyperplanes must have a common length")
    seen = {}
    out = []
    for k, v in enumerate(vectors):
        r = tuple(int(c) % p for c in v)
        if not any(r):
            raise ArrangementError(f"hyperplane {k} vanishes mod {p}")
        key = _normalize_mod(r, p)
        if key in seen:
            raise ArrangementError(f"hyperplanes {seen[key]} and {k} coincide mod {p}")
        seen[key] = k
        out.append(key)
    return Arrangement(tuple(out), p, name)


# ---------------------------------------------------------------------------
# polynomials attached to an arrangement


def _target(A: Arrangement, domain):
    """Return the arrangement to use in ``domain`` (reducing mod p when needed)."""
    if domain is None:
        return A, A.domain
    if domain is ZZ:
        if A.prime is not None:
            raise ArrangementError("an arrangement over GF(p) has no integer form")
        return A, ZZ
    if isinstance(domain, PrimeField):
        if A.prime is None:
            return reduce_arrangement(A, domain.p), domain
        if A.prime != domain.p:
            raise ArrangementError(f"arrangement lives over GF({A.prime}), not {domain}")
        return A, domain
    if domain is QQ:
        if A.prime is not None:
            raise ArrangementError("arrangement over GF(p) cannot be read over QQ")
        return A, QQ
    raise TypeError(f"unsupported domain {domain!r}")


def field_from(field: str | None = None, prime: int | None = None):
    """Map the CLI-style selector (``q``/``fp``) to a coefficient domain."""
    if field in (None, "q", "Q", "QQ"):
        if prime is not None and field is None:
            return GF(prime)
        return QQ
    if field in ("fp", "Fp", "GF", "gf"):
        if prime is None:
            raise ValueError("field fp needs a prime")
        return GF(prime)
    if field in ("z", "ZZ"):
        return ZZ
    raise ValueError(f"unknown field {field!r}")


def defining_polynomial(A: Arrangement, domain=None) -> Polynomial:
    """``Q(A)``: the product of the defining linear forms (reduced mod p when asked)."""
    A, domain = _target(A, domain)
    R = A.ring(domain)
    Q = R.one()
    for v in A.vectors:
        Q = Q * R.linear_form(v)
    return Q


def jacobian_ideal(A: Arrangement, domain=None, order: TermOrder | None = None) -> IdealPresentation:
    """Ideal generated by ``Q(A)`` and its partial derivatives (zeros dropped)."""
    Q = defining_polynomial(A, domain)
    if order is not None and order != Q.ring.order:
        Q = Q.ring.with_order(order).convert(Q)
    gens = [Q] + [Q.derivative(i) for i in range(Q.ring.nvars)]
    return IdealPresentation(tuple(g for g in gens if g), Q.ring.order)


def _minor_gcd(u, v) -> int:
    g = 0
    for i, j in itertools.combinations(range(len(u)), 2):
        g = gcd(g, u[i] * v[j] - u[j] * v[i])
    return g


def non_good_primes(A: Arrangement) -> set:
    """Primes for which two hyperplanes become proportional after reduction."""
    if A.prime is not None:
        raise ArrangementError("good primes are defined for arrangements over QQ")
    bad = set()
    for u, v in itertools.combinations(A.vectors, 2):
        g = _minor_gcd(u, v)
        if g == 0:
            raise ArrangementError("proportional hyperplanes")
        bad.update(factorint(g))
    return bad


def is_good_prime(A: Arrangement, p: int) -> bool:
    return all(_minor_gcd(u, v) % p for u, v in itertools.combinations(A.vectors, 2))


def reduce_arrangement(A: Arrangement, p: int) -> Arrangement:
    """The arrangement ``A_p`` in GF(p)^l cut out by the reduced forms."""
    if A.prime is not None:
        raise ArrangementError("arrangement is already over a prime field")
    GF(p)
    if not is_good_prime(A, p):
        raise NotGoodPrimeError(f"prime {p} not good")
    name = f"{A.name}/GF({p})" if A.name else None
    return Arrangement(tuple(tuple(c % p for c in v) for v in A.vectors), p, name)


# ---------------------------------------------------------------------------
# derivations


@dataclass(frozen=True)
class Derivation:
    """``sum_i components[i] * d/dx_i``."""

    components: tuple

    @property
    def ring(self) -> PolyRing:
        return self.components[0].ring

    def is_zero(self) -> bool:
        return not any(self.components)

    @property
    def pdeg(self) -> int | None:
        """Polynomial degree when homogeneous, else ``None``."""
        degs = set()
        for f in self.components:
            if f:
                if not f.is_homogeneous():
                    return None
                degs.add(f.total_degree())
        return degs.pop() if len(degs) == 1 else None

    def __call__(self, f: Polynomial) -> Polynomial:
        return apply_derivation(self, f)

    def scale(self, c) -> Derivation:
        return Derivation(tuple(f.scale(c) for f in self.components))

    def __add__(self, other: Derivation) -> Derivation:
        return Derivation(tuple(a + b for a, b in zip(self.components, other.components)))

    def mul(self, g: Polynomial) -> Derivation:
        return Derivation(tuple(g * f for f in self.components))

    def change_ring(self, ring: PolyRing) -> Derivation:
        return Derivation(tuple(ring.convert(f) for f in self.components))

    def reduce_mod(self, p: int) -> Derivation:
        return Derivation(tuple(f.reduce_mod(p) for f in self.components))

    def integer_primitive(self) -> Derivation:
        """Scale to integer coefficients with content 1 (positive leading entry)."""
        comps = self.components
        ring = comps[0].ring
        den = 1
        for f in comps:
            for c in f.coefficients():
                den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
        nums = [int(Fraction(c) * den) for f in comps for c in f.coefficients()]
        g = gcd(*nums) if nums else 1
        lead = next((f for f in comps if f), None)
        if lead is not None and lead.leading_coefficient() < 0:
            g = -g
        zring = ring.with_domain(ZZ)
        return Derivation(tuple(zring.convert(f.scale(Fraction(den, g))) for f in comps))

    def to_json(self) -> list:
        return [str(f) for f in self.components]

    @classmethod
    def from_strings(cls, ring: PolyRing, strings) -> Derivation:
        strings = list(strings)
        if len(strings) != ring.nvars:
            raise ArrangementError(f"derivation needs {ring.nvars} components, got {len(strings)}")
        return cls(tuple(ring.parse(s) for s in strings))

    def __str__(self):
        names = self.components[0].ring.names
        parts = [f"({f})*d{n}" for f, n in zip(self.components, names) if f]
        return " + ".join(parts) if parts else "0"


def euler_derivation(ring: PolyRing) -> Derivation:
    return Derivation(ring.gens)


def apply_derivation(d: Derivation, f: Polynomial) -> Polynomial:
    """``sum_i d_i * df/dx_i``."""
    out = f.ring.zero()
    for i, c in enumerate(d.components):
        if c:
            out = out + f.ring.convert(c) * f.derivative(i)
    return out


def in_derivation_module(A: Arrangement, d: Derivation, domain=None):
    """Return ``None`` when ``d(alpha) in (alpha)`` for all hyperplanes, else the failing index."""
    A, domain = _target(A, domain)
    R = A.ring(domain)
    d = d.change_ring(R)
    for k, v in enumerate(A.vectors):
        a = R.linear_form(v)
        _, r = apply_derivation(d, a).divmod(a)
        if r:
            return k
    return None


def _tidy(d: Derivation, R: PolyRing) -> Derivation:
    """Primitive integer coefficients over QQ, leading coefficient 1 over GF(p)."""
    if R.domain is QQ:
        return d.integer_primitive().change_ring(R)
    lead = next(f for f in d.components if f).leading_coefficient()
    return d.scale(R.domain.inverse(lead))


def derivation_module(A: Arrangement, domain=None) -> list:
    """Minimal homogeneous generators of ``D(A)``, sorted by degree.

    Computed as the first ``l`` coordinates of a minimal generating set of
    the syzygies of ``(dQ/dx_1, ..., dQ/dx_l, -Q)``.
    """
    A, domain = _target(A, domain)
    Q = defining_polynomial(A, domain)
    R = Q.ring
    l, n = R.nvars, A.n
    if domain is ZZ:
        raise ArrangementError("derivation modules are computed over a field")
    parts = [Q.derivative(i) for i in range(l)] + [-Q]
    S = minimal_syzygies(parts, degrees=[n - 1] * l + [n])
    out = []
    for s in S.generators:
        d = Derivation(tuple(s[:l]))
        h = s[l]
        # the syzygy relation is d(Q) = h * Q; double-check by exact division
        dq = apply_derivation(d, Q)
        if dq != h * Q:
            raise InconsistencyError("syzygy does not give a logarithmic derivation")
        if d.is_zero():
            raise InconsistencyError("zero derivation among minimal generators")
        out.append(_tidy(d, R))
    out.sort(key=lambda d: d.pdeg)
    return out


# ---------------------------------------------------------------------------
# Saito's criterion and freeness


def _det(matrix):
    """Leibniz expansion (the matrices here are at most 5 x 5)."""
    size = len(matrix)
    ring = matrix[0][0].ring
    total = ring.zero()
    for perm in itertools.permutations(range(size)):
        sign = 1
        for i in range(size):
            for j in range(i + 1, size):
                if perm[i] > perm[j]:
                    sign = -sign
        term = ring.one()
        for i, j in enumerate(perm):
            term = term * matrix[i][j]
            if not term:
                break
        if term:
            total = total + term if sign > 0 else total - term
    return total


def coefficient_determinant(derivations) -> Polynomial:
    """``det(delta_i(x_j))``."""
    return _det([list(d.components) for d in derivations])


@dataclass
class SaitoResult:
    is_basis: bool
    c: object
    determinant: Polynomial

    def to_json(self) -> dict:
        return {"is_basis": self.is_basis, "c": str(self.c), "determinant": str(self.determinant)}


def saito_check(A: Arrangement, candidates, domain=None) -> SaitoResult:
    """Saito's criterion: ``det(delta_i(x_j)) = c * Q(A)`` with ``c`` a non-zero scalar.

    Candidates with integer (or rational) coefficients over QQ give a
    rational ``c``; for integer candidates ``c`` is an integer.
    """
    candidates = list(candidates)
    A, domain = _target(A, domain)
    if len(candidates) != A.dim:
        raise ArrangementError(f"need exactly {A.dim} derivations")
    Q = defining_polynomial(A, domain)
    R = Q.ring
    cands = []
    for d in candidates:
        if d.ring.domain is ZZ and domain is QQ:
            d = d.change_ring(R)
        elif d.ring != R:
            d = d.change_ring(R)
        k = in_derivation_module(A, d, domain)
        if k is not None:
            raise ArrangementError(
                f"candidate {d} is not in D(A): fails on hyperplane {k} ({R.linear_form(A.vectors[k])})")
        cands.append(d)
    det = coefficient_determinant(cands)
    if not det:
        return SaitoResult(False, 0, det)
    q, r = det.divmod(Q)
    if r or not q.is_constant():
        return SaitoResult(False, 0, det)
    c = q.constant_value()
    if isinstance(c, Fraction) and c.denominator == 1:
        c = c.numerator
    return SaitoResult(True, c, det)


@dataclass
class FreenessReport:
    field: str
    free: bool
    exponents: list | None
    generator_degrees: list
    saito_constant: int | None = None
    methods: list = field(default_factory=list)
    betti: object = None
    basis: list | None = None
    n: int = 0
    dim: int = 0

    def to_json(self) -> dict:
        out = {
            "field": self.field,
            "free": self.free,
            "exponents": self.exponents,
            "generator_degrees": self.generator_degrees,
            "methods": self.methods,
            "n": self.n,
            "dim": self.dim,
        }
        if self.saito_constant is not None:
            out["saito_constant"] = _int_json(self.saito_constant)
            out["saito_constant_factors"] = {str(k): v for k, v in factorint(abs(self.saito_constant)).items()}
        if self.betti is not None:
            out["jacobian_betti"] = self.betti.to_json()
        if self.basis is not None:
            out["basis"] = [d.to_json() for d in self.basis]
        return out


def _int_json(v: int):
    return str(v) if abs(v) > 2 ** 53 else v


def field_label(domain) -> str:
    return "q" if domain is QQ else f"fp:{domain.p}"


# Terao's route resolves S/J(A); skip it automatically beyond this size
TERAO_AUTO_LIMIT = {2: 200, 3: 40, 4: 12}


def integer_basis(basis) -> list:
    return [d.integer_primitive() for d in basis]


def is_free(A: Arrangement, domain=None, terao: str | bool = "auto") -> FreenessReport:
    """Decide freeness of ``A`` over a field.

    The derivation route counts minimal generators of ``D(A)`` (free iff
    there are exactly ``l``) and confirms a basis with Saito's criterion.
    When the characteristic does not divide ``n``, Terao's route
    (homological dimension of ``S/J(A)`` at most 2) is run as a cross-check;
    ``terao="auto"`` skips it for large arrangements.
    """
    A, domain = _target(A, domain)
    if domain is ZZ:
        raise ArrangementError("freeness is decided over a field")
    l, n = A.dim, A.n
    gens = derivation_module(A, domain)
    degs = [d.pdeg for d in gens]
    free = len(gens) == l
    methods = ["saito"]
    exponents = None
    c = None
    if free:
        exponents = sorted(degs)
        if sum(exponents) != n:
            raise InconsistencyError(f"exponents {exponents} do not sum to {n}")
        res = saito_check(A, gens, domain)
        if not res.is_basis:
            raise InconsistencyError("minimal generators fail Saito's criterion")
        if domain is QQ:
            # c depends on the basis; report it for the content-free integer basis, up to sign
            gens = integer_basis(gens)
            c = abs(saito_check(A, gens, domain).c)
    char = domain.characteristic
    run_terao = terao is True or (terao == "auto" and n <= TERAO_AUTO_LIMIT.get(l, 0))
    betti = None
    if run_terao and (char == 0 or n % char):
        J = jacobian_ideal(A, domain)
        betti = minimal_free_resolution(J)
        terao_free = hdim(betti) <= 2
        if terao_free != free:
            raise InconsistencyError(
                f"Saito route says free={free} but hdim(S/J)={hdim(betti)}")
        methods.append("terao")
    return FreenessReport(field_label(domain), free, exponents, sorted(degs), c,
                          methods, betti, gens, n, l)
