"""Moving freeness between QQ and GF(p), with every hypothesis checked."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from sympy import factorint, primerange

from .arrangement import (Arrangement, ArrangementError, FreenessReport, InconsistencyError,
                          is_free, is_good_prime, jacobian_ideal, non_good_primes, reduce_arrangement)
from .groebner import (consecutive_cancellation_reachable, is_zero_divisor_prime,
                       minimal_free_resolution, strong_groebner_Z)
from .lattice import characteristic_polynomial, intersection_lattice, rank_generating_counts
from .polyring import GF, QQ, ZZ, TermOrder


class NotFreeError(ArrangementError):
    pass


@dataclass
class PrimeReport:
    prime: int
    good: bool
    divides_n: bool
    order: str
    sigma_lucky: bool | None = None
    zero_divisor: bool | None = None
    witness: str | None = None
    freeness: FreenessReport | None = None
    verdicts: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        d = {"prime": self.prime, "good": self.good, "divides_n": self.divides_n, "order": self.order,
             "sigma_lucky": self.sigma_lucky, "zero_divisor": self.zero_divisor}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.freeness is not None:
            d["freeness"] = {"free": self.freeness.free, "exponents": self.freeness.exponents}
        if self.verdicts:
            d["verdicts"] = self.verdicts
        return d


class _IntegerJacobian:
    """Lazily computed strong basis of J(A) over ZZ, shared across primes."""

    def __init__(self, A: Arrangement, order: TermOrder | None):
        self.A = A
        self.order = order or TermOrder()
        self._basis = None

    @property
    def generators(self):
        return list(jacobian_ideal(self.A, ZZ, self.order).generators)

    @property
    def basis(self):
        if self._basis is None:
            self._basis = strong_groebner_Z(self.generators, self.order)
        return self._basis

    def non_lucky(self) -> set:
        return self.basis.non_lucky_primes()

    def zero_divisor(self, p: int):
        return is_zero_divisor_prime(self.generators, p, self.order, basis=self.basis)


def exceptional_primes(A: Arrangement, order: TermOrder | None = None, ideal_flags: bool = True) -> set:
    """Non-good primes, prime divisors of ``n`` and (optionally) non-lucky primes of J(A) over ZZ."""
    out = set(non_good_primes(A)) | set(factorint(A.n))
    if ideal_flags:
        out |= _IntegerJacobian(A, order).non_lucky()
    return out


def classify_primes(A: Arrangement, candidates=None, bound: int = 30, order: TermOrder | None = None,
                    ideal_flags: bool = True, freeness: bool = False) -> list:
    """One :class:`PrimeReport` per candidate prime.

    Without explicit candidates the primes up to ``bound`` are used together
    with every exceptional prime (non-good, dividing ``n``, non-lucky).
    ``ideal_flags=False`` skips the Groebner computations over ZZ.
    """
    if A.prime is not None:
        raise ArrangementError("prime classification starts from an arrangement over QQ")
    jac = _IntegerJacobian(A, order)
    if candidates is None:
        cands = set(primerange(2, bound + 1)) | set(non_good_primes(A)) | set(factorint(A.n))
        if ideal_flags:
            cands |= jac.non_lucky()
    else:
        cands = set(candidates)
    bad = non_good_primes(A)
    out = []
    for p in sorted(cands):
        rep = PrimeReport(p, p not in bad, A.n % p == 0, jac.order.label)
        if ideal_flags:
            rep.sigma_lucky = p not in jac.non_lucky()
            z = jac.zero_divisor(p)
            rep.zero_divisor = z.zero_divisor
            if z.witness is not None:
                rep.witness = str(z.witness)
            if rep.sigma_lucky and rep.zero_divisor:
                raise InconsistencyError(f"lucky prime {p} reported as a zero divisor")
        if freeness and rep.good:
            rep.freeness = is_free(A, GF(p))
        out.append(rep)
    return out


# ---------------------------------------------------------------------------
# certificates


@dataclass
class Hypothesis:
    name: str
    holds: bool | None              # None: could not be evaluated
    evidence: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "holds": self.holds, "evidence": self.evidence}


@dataclass
class TransferCertificate:
    direction: str                   # "up" (QQ -> GF(p)), "down" (GF(p) -> QQ), "chi"
    prime: int
    hypotheses: list
    conclusion: dict | None
    verification: dict
    timings: dict = field(default_factory=dict)

    @property
    def accepted(self) -> bool:
        return self.conclusion is not None

    def failed(self) -> list:
        return [h.name for h in self.hypotheses if not h.holds]

    def hypothesis(self, name: str) -> Hypothesis:
        return next(h for h in self.hypotheses if h.name == name)

    def to_json(self) -> dict:
        return {
            "direction": self.direction,
            "prime": self.prime,
            "accepted": self.accepted,
            "hypotheses": [h.to_json() for h in self.hypotheses],
            "failed": self.failed(),
            "conclusion": self.conclusion,
            "verification": self.verification,
            "timings": self.timings,
        }


def _factor_json(c: int) -> dict:
    return {str(k): v for k, v in factorint(abs(c)).items()}


def _num(v: int):
    return str(v) if abs(v) > 2 ** 53 else v


def transfer_up(A: Arrangement, primes=None, bound: int = 30, report: FreenessReport | None = None) -> list:
    """Push freeness over QQ down to GF(p), one certificate per tested prime.

    A good prime not dividing the Saito constant ``c`` of the integer basis
    is certified free with the same exponents; primes dividing ``c`` get no
    certificate and the direct computation over GF(p) is recorded instead.
    """
    t0 = time.perf_counter()
    report = report or is_free(A, QQ)
    t_q = time.perf_counter() - t0
    if not report.free:
        raise NotFreeError("arrangement is not free over QQ")
    c = report.saito_constant
    bad = non_good_primes(A)
    if primes is None:
        primes = set(primerange(2, bound + 1)) | set(factorint(abs(c)))
    out = []
    for p in sorted(primes):
        good = p not in bad
        protected = c % p != 0
        hyps = [
            Hypothesis("free_over_Q", True, {"exponents": report.exponents, "time_s": round(t_q, 3)}),
            Hypothesis("good", good, {"non_good_primes": sorted(bad)}),
            Hypothesis("p_not_dividing_c", protected, {"c": _num(c), "c_factors": _factor_json(c)}),
        ]
        verification = {}
        conclusion = None
        t1 = time.perf_counter()
        if good:
            direct = is_free(A, GF(p))
            verification = {"free": direct.free, "exponents": direct.exponents,
                            "generator_degrees": direct.generator_degrees}
            if protected:
                conclusion = {"free": True, "exponents": report.exponents, "field": f"fp:{p}"}
                if not direct.free or direct.exponents != report.exponents:
                    raise InconsistencyError(f"certified prime {p} disagrees with direct computation")
            verification["agrees"] = direct.free and direct.exponents == report.exponents
        out.append(TransferCertificate("up", p, hyps, conclusion, verification,
                                       {"direct_s": round(time.perf_counter() - t1, 3)}))
    return out


def _nzd_hypothesis(jac: _IntegerJacobian, p: int) -> Hypothesis:
    z = jac.zero_divisor(p)
    ev = {"order": jac.order.label, "lucky": z.lucky, "method": z.method,
          "non_lucky_primes": sorted(jac.non_lucky())}
    if z.witness is not None:
        ev["witness"] = str(z.witness)
    return Hypothesis("nonzero_divisor", not z.zero_divisor, ev)


def _common_hypotheses(A: Arrangement, p: int, jac: _IntegerJacobian) -> list:
    bad = non_good_primes(A)
    return [
        Hypothesis("good", p not in bad, {"non_good_primes": sorted(bad)}),
        Hypothesis("p_not_dividing_n", A.n % p != 0, {"n": A.n}),
        _nzd_hypothesis(jac, p),
    ]


def transfer_down(A: Arrangement, p: int, order: TermOrder | None = None) -> TransferCertificate:
    """Lift freeness of ``A_p`` to ``A`` over QQ when all hypotheses hold.

    Hypotheses: ``p`` good, ``p`` not dividing ``n``, ``p`` a non-zero
    divisor modulo J(A) over ZZ, and ``A_p`` free.  Every hypothesis is
    evaluated and reported; the certificate carries the Betti tables of
    S/J on both sides.
    """
    if A.prime is not None:
        raise ArrangementError("transfer_down starts from an arrangement over QQ")
    jac = _IntegerJacobian(A, order)
    t0 = time.perf_counter()
    hyps = _common_hypotheses(A, p, jac)
    timings = {"hypotheses_s": 0.0}
    rep_p = None
    if is_good_prime(A, p):
        rep_p = is_free(A, GF(p), terao=False)
        hyps.append(Hypothesis("free_over_Fp", rep_p.free,
                               {"exponents": rep_p.exponents, "generator_degrees": rep_p.generator_degrees}))
    else:
        hyps.append(Hypothesis("free_over_Fp", None, {"reason": "prime not good"}))
    timings["hypotheses_s"] = round(time.perf_counter() - t0, 3)
    ok = all(h.holds for h in hyps)
    nzd = hyps[2].holds
    verification = {}
    conclusion = None
    if nzd and is_good_prime(A, p):
        t1 = time.perf_counter()
        b_q = minimal_free_resolution(jacobian_ideal(A, QQ))
        b_p = minimal_free_resolution(jacobian_ideal(A, GF(p)))
        verification["betti_Q"] = b_q.to_json()
        verification["betti_Fp"] = b_p.to_json()
        verification["betti_equal"] = b_q == b_p
        reach, _ = consecutive_cancellation_reachable(b_p, b_q)
        verification["cancellation_reachable"] = reach
        if not reach:
            raise InconsistencyError(f"Betti table over GF({p}) does not cancel down to the one over QQ")
        timings["betti_s"] = round(time.perf_counter() - t1, 3)
    if ok:
        conclusion = {"free": True, "exponents": rep_p.exponents, "field": "q"}
        direct = is_free(A, QQ, terao=False)
        verification.update({"free": direct.free, "exponents": direct.exponents})
        if not verification["betti_equal"] or not direct.free or direct.exponents != rep_p.exponents:
            raise InconsistencyError(f"certificate at p={p} disagrees with the direct computation")
        verification["agrees"] = True
    timings["total_s"] = round(time.perf_counter() - t0, 3)
    return TransferCertificate("down", p, hyps, conclusion, verification, timings)


def applications_check(A: Arrangement, p: int, order: TermOrder | None = None) -> TransferCertificate:
    """Exponents over QQ from ``chi(A_p, p^(l-2)) = 0`` under the lifting hypotheses."""
    if A.prime is not None:
        raise ArrangementError("applications_check starts from an arrangement over QQ")
    jac = _IntegerJacobian(A, order)
    t0 = time.perf_counter()
    hyps = _common_hypotheses(A, p, jac)
    verification = {}
    conclusion = None
    if all(h.holds for h in hyps):
        l = A.dim
        chi = characteristic_polynomial(reduce_arrangement(A, p))
        value = chi(p ** (l - 2))
        # reported, not assumed: do the lattices over QQ and GF(p) look alike?
        counts_q = rank_generating_counts(intersection_lattice(A))
        counts_p = rank_generating_counts(intersection_lattice(A, GF(p)))
        verification["lattice"] = {"flats_per_rank_Q": counts_q, "flats_per_rank_Fp": counts_p,
                                   "chi_equal": characteristic_polynomial(A) == chi,
                                   "counts_equal": counts_q == counts_p}
        hyps.append(Hypothesis("chi_vanishes", value == 0, {"chi": str(chi), "t": p ** (l - 2), "value": value}))
        if value == 0:
            head = [p ** k for k in range(l - 1)]
            exps = head + [A.n - sum(head)]
            conclusion = {"free": True, "exponents": exps, "field": "q"}
            direct = is_free(A, QQ, terao=False)
            verification.update({"free": direct.free, "exponents": direct.exponents})
            if not direct.free or direct.exponents != sorted(exps):
                raise InconsistencyError(f"chi criterion at p={p} disagrees with the direct computation")
            verification["agrees"] = True
    return TransferCertificate("chi", p, hyps, conclusion, verification,
                               {"total_s": round(time.perf_counter() - t0, 3)})
