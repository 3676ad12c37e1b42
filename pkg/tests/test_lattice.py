import itertools

import pytest

from freearr import catalog
from freearr.arrangement import is_free, is_good_prime, new_arrangement, reduce_arrangement
from freearr.lattice import (CharPoly, POINT_LIMIT, char_poly, characteristic_polynomial, chi_exponents,
                             count_complement_points, intersection_lattice, rank_generating_counts, rank_of,
                             terao_factorization_check, yoshinaga_3d, yoshinaga_ld)
from freearr.polyring import GF
from oracles import whitney_chi

SMALL = [A for A in catalog.all_builtins() if A.n <= 21]


def test_rank():
    assert rank_of([[1, 2, 3], [2, 4, 6]]) == 1
    assert rank_of([[1, 1], [1, -1]], 2) == 1
    assert rank_of([]) == 0


def test_boolean_lattice():
    L = intersection_lattice(catalog.builtin("boolean-3"))
    assert rank_generating_counts(L) == [1, 3, 3, 1]
    chi = char_poly(L)
    assert chi == CharPoly.from_roots([1, 1, 1])
    assert chi.chambers() == 8 and chi.bounded_chambers() == 0


def test_generic_lines_in_plane():
    # three lines through the origin: chi = (t-1)(t-2)
    chi = characteristic_polynomial(new_arrangement([[1, 0], [0, 1], [1, 1]]))
    assert chi.coeffs == (2, -3, 1)
    assert str(chi) == "t^2 - 3*t + 2"


@pytest.mark.parametrize("A", [A for A in SMALL if A.n <= 10], ids=lambda A: A.name)
def test_chi_matches_whitney_oracle(A):
    p = A.prime or 0
    assert list(characteristic_polynomial(A).coeffs) == whitney_chi(A.vectors, p)


@pytest.mark.parametrize("A", catalog.all_builtins(), ids=lambda A: A.name)
def test_mobius_sums_vanish(A):
    L = intersection_lattice(A)
    for X in L.all_flats():
        if X.rank == 0:
            assert L.mu(X) == 1
            continue
        assert sum(L.mu(Y) for Y in L.below(X)) == 0


@pytest.mark.parametrize("A", catalog.all_builtins(), ids=lambda A: A.name)
def test_alternating_signs(A):
    chi = characteristic_polynomial(A)
    l = A.dim
    for k, c in enumerate(chi.coeffs):
        assert c == 0 or (c > 0) == ((l - k) % 2 == 0)
    assert chi.coeffs[-1] == 1


def test_point_count_small_cases():
    A = new_arrangement([[1, 0], [0, 1], [1, 1]])
    # brute force by hand over GF(5): points of GF(5)^2 off three lines
    pts = sum(1 for u, v in itertools.product(range(5), repeat=2) if u and v and (u + v) % 5)
    assert count_complement_points(A, 5) == pts == characteristic_polynomial(A)(5)


def test_point_count_guard():
    A = catalog.builtin("boolean-4")
    with pytest.raises(ValueError):
        count_complement_points(A, 10007)
    assert 10007 ** 4 > POINT_LIMIT


def test_lattice_over_prime_is_computed_from_reduction():
    A = catalog.builtin("pm2-lines")
    # over GF(3) the reduced arrangement is still 4 distinct lines
    B = reduce_arrangement(A, 3)
    assert characteristic_polynomial(B).coeffs == characteristic_polynomial(A).coeffs


def test_lattices_agree_for_large_primes():
    A = catalog.builtin("example-435")
    ref = rank_generating_counts(intersection_lattice(A))
    for p in (7, 11, 13, 101):
        assert rank_generating_counts(intersection_lattice(A, GF(p))) == ref
        assert characteristic_polynomial(A, GF(p)) == characteristic_polynomial(A)


def test_factorization_for_free_builtins():
    for A in SMALL:
        rep = is_free(A)
        chi = characteristic_polynomial(A)
        if rep.free:
            assert terao_factorization_check(rep, chi)
        else:
            with pytest.raises(ValueError):
                terao_factorization_check(rep, chi)


def test_chi_exponents():
    assert chi_exponents(CharPoly.from_roots([1, 3, 3])) == [1, 3, 3]
    assert chi_exponents(CharPoly((1, 0, 1))) is None


def test_yoshinaga_ziegler():
    A = catalog.builtin("ziegler-f3")
    chi = characteristic_polynomial(A)
    assert chi == CharPoly.from_roots([1, 4, 4])
    y = yoshinaga_3d(A)
    assert y.case == 1 and y.prediction == "nonfree"
    assert y.chi_value == count_complement_points(A) == 2


def test_yoshinaga_sextic_free():
    A = catalog.builtin("sextic-f3")
    y = yoshinaga_3d(A)
    assert y.case == 1 and y.prediction == "free" and y.exponents == [1, 2, 3]
    assert yoshinaga_ld(A) == [1, 3, 2]


def test_yoshinaga_inapplicable_and_needs_prime():
    A = catalog.builtin("boolean-3")
    assert yoshinaga_3d(A, 7).case == "inapplicable"
    with pytest.raises(ValueError):
        yoshinaga_3d(A)
    with pytest.raises(ValueError):
        yoshinaga_3d(catalog.builtin("boolean-2"), 3)


@pytest.mark.parametrize("name,p", [("example-435", 5), ("example-435", 3), ("example-435", 2),
                                    ("nonfree-s6", 3), ("nonfree-s6", 5)])
def test_yoshinaga_agrees_with_direct_freeness(name, p):
    A = catalog.builtin(name)
    y = yoshinaga_3d(A, p)
    if y.prediction is None:
        return
    rep = is_free(A, GF(p))
    assert (y.prediction == "free") == rep.free
    if rep.free:
        assert sorted(y.exponents) == rep.exponents


def test_chambers_of_rational_builtins():
    for A in SMALL:
        if A.prime is None and is_good_prime(A, 3):
            chi = characteristic_polynomial(A)
            assert chi.chambers() >= 2 * (chi.bounded_chambers() > 0)
