"""Acceptance checks, one group per criterion.

Run with ``pytest tests/test_acceptance.py`` (add ``--slow`` for the B3 cone).
The terminal summary prints one PASS/FAIL line per criterion.
"""

import time
from math import gcd

import pytest
from hypothesis import HealthCheck, event, given, settings, strategies as st
from sympy import primerange

from freearr import catalog
from freearr.arrangement import (Derivation, apply_derivation, coefficient_determinant, defining_polynomial,
                                 derivation_module, euler_derivation, integer_basis, is_free, is_good_prime,
                                 jacobian_ideal, new_arrangement, saito_check)
from freearr.groebner import (consecutive_cancellation_reachable, hdim, is_zero_divisor_prime,
                              minimal_free_resolution, non_lucky_primes, strong_groebner_Z)
from freearr.lattice import (CharPoly, characteristic_polynomial, count_complement_points,
                             terao_factorization_check, yoshinaga_3d)
from freearr.polyring import GF, QQ, ZZ, PolyRing, TermOrder
from freearr.transfer import transfer_down

criterion = pytest.mark.criterion


def _free(A, dom):
    rep = is_free(A, dom)
    return rep.free, rep.exponents


# -- 1 -------------------------------------------------------------------------


@criterion(1, "example-435 over QQ, GF(2), GF(3), GF(5)")
def test_example_435():
    A = catalog.builtin("example-435")
    assert defining_polynomial(A).total_degree() == 7
    t0 = time.perf_counter()
    rep = is_free(A, QQ)
    assert rep.free and rep.exponents == [1, 3, 3]
    assert rep.saito_constant % 2 == 0
    # any integer basis: also the unreduced one from the generators
    basis = integer_basis(derivation_module(A, QQ))
    assert saito_check(A, basis).c % 2 == 0
    assert _free(A, GF(2)) == (True, [1, 2, 4])
    assert _free(A, GF(3)) == (True, [1, 3, 3])
    assert _free(A, GF(5)) == (True, [1, 3, 3])
    assert time.perf_counter() - t0 < 10


@criterion(1, "example-435 over QQ, GF(2), GF(3), GF(5)")
def test_example_435_listed_bases():
    """The explicit bases for char != 2 and char = 2 pass Saito's criterion."""
    A = catalog.builtin("example-435")
    R = A.ring(QQ)
    d2 = Derivation.from_strings(R, ["x*(x+z)*(x+y+z)", "y*(y+z)*(x+y+z)", "0"])
    d3 = Derivation.from_strings(R, ["x*(x+z)*(2*y+z)", "y*(y+z)*(2*x+z)", "0"])
    res = saito_check(A, [euler_derivation(R), d2, d3])
    assert res.is_basis and res.c % 2 == 0
    F = A.ring(GF(2))
    e2 = Derivation.from_strings(F, ["x^2", "y^2", "z^2"])
    e4 = Derivation.from_strings(F, ["x^4", "y^4", "z^4"])
    assert saito_check(A, [euler_derivation(F), e2, e4], GF(2)).is_basis


# -- 2 -------------------------------------------------------------------------


@criterion(2, "GF(3) sextic and its explicit basis")
def test_sextic_f3():
    A = catalog.builtin("sextic-f3")
    R = A.ring()
    Q = defining_polynomial(A)
    assert Q == R.parse("x*y*z*(y+z)*(x-y)*(x+z)")
    rep = is_free(A)
    assert rep.free and rep.exponents == [1, 2, 3]
    E = euler_derivation(R)
    d2 = Derivation.from_strings(R, ["0", "x*y - y^2", "x*z + z^2"])
    d3 = Derivation.from_strings(R, ["0", "0", "x*y*z + x*z^2 + y*z^2 + z^3"])
    res = saito_check(A, [E, d2, d3])
    assert res.is_basis and res.c != 0
    assert apply_derivation(E, Q).is_zero()
    assert apply_derivation(d2, Q).is_zero()


@criterion(2, "GF(3) sextic and its explicit basis")
def test_sextic_delta3_value():
    # pdeg 3 applied to a sextic has degree 8, while x*Q has degree 7; kept as stated and expected to fail
    A = catalog.builtin("sextic-f3")
    R = A.ring()
    Q = defining_polynomial(A)
    d3 = Derivation.from_strings(R, ["0", "0", "x*y*z + x*z^2 + y*z^2 + z^3"])
    assert apply_derivation(d3, Q) == R.gen(0) * Q


# -- 3 -------------------------------------------------------------------------

W3 = "y^2*z^2 + 2*y*z^3 - 8*z^4"
W2 = "x*y*z^2 + 4*y^2*z^2 + 4*x*z^3 + 8*y*z^3 - 32*z^4"


@criterion(3, "quartic: zero divisors 2 and 3 block the lift")
def test_quartic_freeness():
    A = catalog.builtin("nonfree-s6")
    assert defining_polynomial(A) == A.ring().parse("z*(x+2*y-4*z)*(y+4*z)*(x+3*y-6*z)")
    assert not is_free(A, QQ).free
    assert _free(A, GF(2)) == (True, [1, 1, 2])
    assert _free(A, GF(3)) == (True, [1, 1, 2])


@criterion(3, "quartic: zero divisors 2 and 3 block the lift")
def test_quartic_witnesses():
    A = catalog.builtin("nonfree-s6")
    J = list(jacobian_ideal(A, ZZ).generators)
    G = strong_groebner_Z(J)
    Z = PolyRing(3, ZZ)
    for p, text in ((3, W3), (2, W2)):
        w = Z.parse(text)
        assert G.contains(w * p) and not G.contains(w)
        r = is_zero_divisor_prime(J, p)
        assert r.zero_divisor
        assert G.contains(r.witness * p) and not G.contains(r.witness)


@criterion(3, "quartic: zero divisors 2 and 3 block the lift")
def test_quartic_transfer_refused():
    A = catalog.builtin("nonfree-s6")
    for p in (2, 3):
        cert = transfer_down(A, p)
        assert not cert.accepted and cert.conclusion is None
        assert cert.hypothesis("nonzero_divisor").holds is False


# -- 4 -------------------------------------------------------------------------


@criterion(4, "strong Groebner basis unit results")
def test_strong_gb_units():
    Z = PolyRing(2, ZZ)
    x, y = Z.gens
    assert non_lucky_primes([2 * x + 3 * y, x - y]) == {5}
    G = strong_groebner_Z([x ** 2 - y, 3 * y])
    assert set(G.leading_monomials) == {(2, 0), (0, 1)}
    assert sorted(G.leading_coefficients) == [1, 3]
    assert non_lucky_primes([3 * x - y]) == {3}
    assert non_lucky_primes([3 * x - y], TermOrder("degrevlex", perm=(1, 0))) == set()
    assert non_lucky_primes([3 * x - y], TermOrder("lex", perm=(1, 0))) == set()


# -- 5 -------------------------------------------------------------------------


@criterion(5, "Shi-Catalan B2 cone")
def test_b2_cone():
    A = catalog.builtin("shicatalan-b2-cone")
    assert (A.dim, A.n) == (3, 21)
    t0 = time.perf_counter()
    rep = is_free(A, QQ)
    assert rep.free and rep.exponents == [1, 9, 11]
    assert rep.saito_constant % 35 == 0
    assert _free(A, GF(5)) == (True, [1, 5, 15])
    assert _free(A, GF(7)) == (True, [1, 7, 13])
    assert time.perf_counter() - t0 < 300


# -- 6 -------------------------------------------------------------------------


@criterion(6, "Shi-Catalan B3 cone (slow tier)")
@pytest.mark.slow
def test_b3_cone():
    A = catalog.builtin("shicatalan-b3-cone")
    assert (A.dim, A.n) == (4, 46)
    rep = is_free(A, QQ)
    assert rep.free and rep.exponents == [1, 13, 15, 17]
    assert rep.saito_constant % 56595 == 0
    assert _free(A, GF(5)) == (True, [1, 5, 15, 25])
    assert not is_free(A, GF(7)).free
    assert not is_free(A, GF(11)).free


# -- 7 -------------------------------------------------------------------------


@criterion(7, "Ziegler GF(3) arrangement")
def test_ziegler():
    A = catalog.builtin("ziegler-f3")
    assert A.n == 9 and A.prime == 3
    assert not is_free(A).free
    chi = characteristic_polynomial(A)
    points = count_complement_points(A)
    assert points == chi(3) == 2
    y = yoshinaga_3d(A, chi=chi)
    assert y.prediction == "nonfree" and y.chi_value == points


# -- 8 -------------------------------------------------------------------------


def _point_cases():
    for A in catalog.all_builtins():
        if A.prime is not None:
            yield pytest.param(A, A.prime, id=f"{A.name}-p{A.prime}")
            continue
        bound = int(round(10 ** (6 / A.dim)))
        while (bound + 1) ** A.dim <= 10 ** 6:
            bound += 1
        while bound ** A.dim > 10 ** 6:
            bound -= 1
        ps = [p for p in primerange(2, bound + 1) if is_good_prime(A, p)]
        yield pytest.param(A, ps, id=f"{A.name}-{len(ps)}primes")


@criterion(8, "complement point count equals chi(p)")
@pytest.mark.parametrize("A,primes", list(_point_cases()))
def test_point_count_law(A, primes):
    if isinstance(primes, int):
        assert count_complement_points(A) == characteristic_polynomial(A)(primes)
        return
    assert primes
    if A.dim == 1:
        # a single point removed from each line: chi(t) = t - 1
        chi = characteristic_polynomial(A, GF(primes[0]))
        for p in primes:
            assert characteristic_polynomial(A, GF(p)) == chi
        for p in primes[:: max(1, len(primes) // 200)] + primes[-3:]:
            assert count_complement_points(A, p) == chi(p)
        return
    for p in primes:
        assert count_complement_points(A, p) == characteristic_polynomial(A, GF(p))(p), p


@criterion(8, "complement point count equals chi(p)")
@pytest.mark.slow
def test_point_count_law_line_every_prime():
    # boolean-1 has 78498 admissible primes; the default tier samples them
    A = catalog.builtin("boolean-1")
    for p in primerange(2, 10 ** 6 + 1):
        assert count_complement_points(A, p) == characteristic_polynomial(A, GF(p))(p), p


# -- 9: property suites ----------------------------------------------------------

PROP = settings(max_examples=200, deadline=None,
                suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much, HealthCheck.data_too_large])
coef = st.integers(-3, 3)


def _key(v):
    g = 0
    for c in v:
        g = gcd(g, c)
    w = [c // g for c in v]
    s = next(c for c in w if c)
    return tuple(c if s > 0 else -c for c in w)


@st.composite
def arrangements(draw):
    l = draw(st.integers(2, 3))
    n = draw(st.integers(1, 6))
    vecs = draw(st.lists(st.lists(coef, min_size=l, max_size=l).filter(any), min_size=n, max_size=n,
                         unique_by=_key))
    event(f"l={l} n={n}")
    return new_arrangement(vecs)


@st.composite
def arrangement_and_field(draw, avoid_n=False):
    A = draw(arrangements())
    ok = [p for p in (2, 3, 5, 7) if is_good_prime(A, p) and not (avoid_n and A.n % p == 0)]
    p = draw(st.sampled_from([0] + ok))
    return A, (GF(p) if p else QQ)


term3 = st.tuples(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)), coef)


@criterion(9, "property suites")
@PROP
@given(st.lists(term3, max_size=5), st.lists(term3, max_size=5), st.sampled_from([2, 3, 5, 7]))
def test_prop_reduction_is_ring_homomorphism(t1, t2, p):
    Z = PolyRing(3, ZZ)
    f, g = Z.from_terms(t1), Z.from_terms(t2)
    assert (f * g).reduce_mod(p) == f.reduce_mod(p) * g.reduce_mod(p)
    assert (f + g).reduce_mod(p) == f.reduce_mod(p) + g.reduce_mod(p)
    assert (-f).reduce_mod(p) == -(f.reduce_mod(p))


@criterion(9, "property suites")
@PROP
@given(arrangement_and_field(avoid_n=True))
def test_prop_saito_terao_agreement(case):
    A, dom = case
    gens = derivation_module(A, dom)
    b = minimal_free_resolution(jacobian_ideal(A, dom))
    assert (len(gens) == A.dim) == (hdim(b) <= 2)


@criterion(9, "property suites")
@PROP
@given(arrangement_and_field())
def test_prop_free_implies_factorization(case):
    A, dom = case
    rep = is_free(A, dom, terao=False)
    if rep.free:
        assert sum(rep.exponents) == A.n
        assert terao_factorization_check(rep, characteristic_polynomial(A, dom))


@st.composite
def integer_ideals(draw):
    Z = PolyRing(3, ZZ)
    gens = []
    for _ in range(draw(st.integers(1, 3))):
        d = draw(st.integers(1, 2))
        terms = draw(st.lists(st.tuples(st.tuples(st.integers(0, d), st.integers(0, d)), coef), min_size=1,
                              max_size=4))
        # homogeneous: the z exponent fills the degree up
        f = Z.from_terms([((i, j, d - i - j), c) for (i, j), c in terms if i + j <= d])
        if f:
            gens.append(f)
    return gens


@criterion(9, "property suites")
@PROP
@given(st.one_of(integer_ideals(), arrangements().map(lambda A: list(jacobian_ideal(A, ZZ).generators))))
def test_prop_lucky_implies_nonzero_divisor(gens):
    if not gens:
        return
    G = strong_groebner_Z(gens)
    bad = G.non_lucky_primes()
    for p in (2, 3, 5, 7):
        if p not in bad:
            assert not is_zero_divisor_prime(gens, p, basis=G, shortcut=False).zero_divisor


@criterion(9, "property suites")
@PROP
@given(arrangements(), st.sampled_from([2, 3, 5, 7]))
def test_prop_nzd_betti_comparison(A, p):
    J = list(jacobian_ideal(A, ZZ).generators)
    if is_zero_divisor_prime(J, p, shortcut=False).zero_divisor:
        return
    b_q = minimal_free_resolution([g.change_ring(PolyRing(A.dim, QQ)) for g in J])
    b_p = minimal_free_resolution([h for h in (g.reduce_mod(p) for g in J) if h])
    assert hdim(b_q) <= hdim(b_p)
    assert consecutive_cancellation_reachable(b_p, b_q)[0]


@criterion(9, "property suites")
@PROP
@given(arrangement_and_field(), st.data())
def test_prop_q_divides_determinant(case, data):
    A, dom = case
    R = A.ring(dom)
    gens = [d.change_ring(R) for d in derivation_module(A, dom)]
    mons = [R.one()] + list(R.gens)
    elems = []
    for _ in range(A.dim):
        total = None
        for d in gens:
            mult = R.zero()
            for m in mons:
                mult = mult + m * data.draw(coef)
            term = d.mul(mult)
            total = term if total is None else total + term
        elems.append(total)
    det = coefficient_determinant(elems)
    Q = defining_polynomial(A, dom)
    _, r = det.divmod(Q)
    assert r.is_zero()
