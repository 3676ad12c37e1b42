import json

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from freearr import catalog
from freearr.arrangement import (Arrangement, ArrangementError, Derivation, NotGoodPrimeError, apply_derivation,
                                 arrangement_over_prime, coefficient_determinant, defining_polynomial,
                                 derivation_module, euler_derivation, field_from, in_derivation_module,
                                 integer_basis, is_free, is_good_prime, jacobian_ideal, new_arrangement,
                                 non_good_primes, reduce_arrangement, saito_check)
from freearr.polyring import GF, QQ
from oracles import derivation_dim, free_module_dim, span_dim


def test_normalization():
    A = new_arrangement([[2, 4, 0], [0, -1, 0], [-1, -1, -1]])
    assert A.vectors == ((1, 2, 0), (0, 1, 0), (1, 1, 1))
    assert A.n == 3 and A.dim == 3 and A.rank() == 3


@pytest.mark.parametrize("vecs", [[[0, 0, 0]], [[1, 2], [2, 4]], [[1, 2], [-1, -2]], [[1, 0], [1, 0, 0]], []])
def test_bad_input_rejected(vecs):
    with pytest.raises(ArrangementError):
        new_arrangement(vecs)


def test_over_prime():
    A = arrangement_over_prime([[2, 1, 0], [0, 0, 4]], 3)
    assert A.vectors == ((1, 2, 0), (0, 0, 1)) and A.prime == 3
    with pytest.raises(ArrangementError):
        arrangement_over_prime([[1, 0], [4, 0]], 3)
    with pytest.raises(ArrangementError):
        arrangement_over_prime([[3, 6]], 3)


def test_json_roundtrip():
    for A in catalog.all_builtins():
        B = Arrangement.from_json(json.loads(A.dumps()))
        assert B == A


def test_defining_polynomial_degree():
    for A in catalog.all_builtins():
        Q = defining_polynomial(A)
        assert Q.total_degree() == A.n and Q.is_homogeneous()


def test_jacobian_ideal_contents():
    A = new_arrangement([[1, 0], [0, 1]])
    J = jacobian_ideal(A)
    assert [str(g) for g in J.generators] == ["x*y", "y", "x"]
    # over GF(2), d/dx of x^2 y vanishes and is dropped
    B = new_arrangement([[1, 0], [0, 1], [1, 1]])
    J2 = jacobian_ideal(B, GF(2))
    assert len(J2.generators) <= 3


def test_good_primes():
    A = catalog.builtin("pm2-lines")
    assert non_good_primes(A) == {2}
    assert not is_good_prime(A, 2) and is_good_prime(A, 3)
    with pytest.raises(NotGoodPrimeError):
        reduce_arrangement(A, 2)
    B = reduce_arrangement(catalog.builtin("example-435"), 5)
    assert B.prime == 5 and B.n == 7


def test_field_from():
    assert field_from("q") is QQ
    assert field_from("fp", 7) == GF(7)
    with pytest.raises(ValueError):
        field_from("fp", 8)


# -- derivations -------------------------------------------------------------


def test_euler_containment_on_builtins():
    for A in catalog.all_builtins():
        dom = A.domain
        primes = [None] if A.prime else [None, 5, 7]
        for p in primes:
            if p is not None and not is_good_prime(A, p):
                continue
            d = dom if p is None else GF(p)
            Q = defining_polynomial(A, d)
            E = euler_derivation(Q.ring)
            assert apply_derivation(E, Q) == Q * A.n


def test_boolean_module():
    A = catalog.builtin("boolean-3")
    gens = derivation_module(A)
    assert [d.pdeg for d in gens] == [1, 1, 1]
    assert saito_check(A, gens).is_basis


def test_saito_names_failing_hyperplane():
    A = catalog.builtin("boolean-3")
    R = A.ring()
    dx = Derivation((R.one(), R.zero(), R.zero()))
    assert in_derivation_module(A, dx) == 0
    with pytest.raises(ArrangementError, match="hyperplane 0"):
        saito_check(A, [dx, dx, dx])


def test_saito_wrong_count():
    A = catalog.builtin("boolean-2")
    with pytest.raises(ArrangementError):
        saito_check(A, [euler_derivation(A.ring())])


def test_saito_dependent_candidates_not_basis():
    A = catalog.builtin("boolean-2")
    E = euler_derivation(A.ring())
    res = saito_check(A, [E, E])
    assert not res.is_basis and res.c == 0


def test_derivation_strings_roundtrip():
    R = catalog.builtin("boolean-3").ring()
    d = Derivation.from_strings(R, ["x*y", "0", "z^2 - x*z"])
    assert Derivation.from_strings(R, d.to_json()) == d
    assert d.pdeg == 2
    with pytest.raises(ValueError):
        Derivation.from_strings(R, ["x", "y"])


def test_module_generators_are_members():
    for A in catalog.all_builtins():
        if A.n > 10:
            continue
        for d in derivation_module(A):
            assert in_derivation_module(A, d) is None
            Q = defining_polynomial(A, A.domain)
            _, r = apply_derivation(d, Q).divmod(Q)
            assert not r


@pytest.mark.parametrize("name,p", [("example-435", 0), ("example-435", 2), ("nonfree-s6", 0), ("nonfree-s6", 3),
                                    ("sextic-f3", 3), ("ziegler-f3", 3), ("pm2-lines", 0)])
def test_module_dimensions_match_linear_algebra(name, p):
    """The S-span of the generators has the same graded dimensions as D(A)."""
    A = catalog.builtin(name)
    dom = GF(p) if p else QQ
    gens = derivation_module(A, dom)
    l = A.dim
    for d in range(A.n + 1):
        assert span_dim(gens, l, d, p) == derivation_dim(A.vectors, d, p), d
    rep = is_free(A, dom)
    if rep.free:
        assert all(free_module_dim(rep.exponents, l, d) == derivation_dim(A.vectors, d, p) for d in range(A.n + 1))


def test_free_report_fields():
    rep = is_free(catalog.builtin("example-435"))
    assert rep.free and rep.exponents == [1, 3, 3] and sum(rep.exponents) == rep.n
    assert rep.saito_constant % 2 == 0
    out = rep.to_json()
    assert out["saito_constant"] == rep.saito_constant and out["field"] == "q"
    assert "terao" in rep.methods


def test_nonfree_report():
    rep = is_free(catalog.builtin("nonfree-s6"))
    assert not rep.free and rep.exponents is None and rep.generator_degrees == [1, 2, 2, 2]


def test_determinant_of_integer_basis_is_multiple_of_q():
    A = catalog.builtin("example-435")
    basis = integer_basis(derivation_module(A))
    det = coefficient_determinant(basis)
    Q = defining_polynomial(A, QQ)
    q, r = det.change_ring(Q.ring).divmod(Q)
    assert not r and q.is_constant() and q.constant_value() != 0


def test_sextic_third_generator_multiplier():
    A = catalog.builtin("sextic-f3")
    R = A.ring()
    Q = defining_polynomial(A)
    d3 = Derivation.from_strings(R, ["0", "0", "x*y*z + x*z^2 + y*z^2 + z^3"])
    q, r = apply_derivation(d3, Q).divmod(Q)
    assert r.is_zero() and q == R.parse("x*y - x*z - y*z")


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3).filter(any), min_size=2, max_size=5),
       st.sampled_from([0, 5]))
def test_random_module_dimensions(vecs, p):
    try:
        A = new_arrangement(vecs)
        if p:
            A = reduce_arrangement(A, p)
    except ArrangementError:
        return
    dom = GF(p) if p else QQ
    gens = derivation_module(A, dom)
    for d in range(A.n + 1):
        assert span_dim(gens, 3, d, p) == derivation_dim(A.vectors, d, p)
