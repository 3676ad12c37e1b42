from freearr import catalog
from freearr.arrangement import is_free, new_arrangement
from freearr.lattice import (characteristic_polynomial, count_complement_points, intersection_lattice,
                             rank_generating_counts, terao_factorization_check, yoshinaga_3d)
from freearr.polyring import GF

# flats are intersections of hyperplanes; chi comes from the Moebius function
A = catalog.builtin("boolean-3")
L = intersection_lattice(A)
print("flats per rank:", rank_generating_counts(L))
chi = characteristic_polynomial(A)
print("chi =", chi, "| chambers", chi.chambers())

# three lines through the origin in the plane
T = new_arrangement([[1, 0], [0, 1], [1, 1]])
chi = characteristic_polynomial(T)
for p in (3, 5, 7):
    print(f"p={p}: chi(p)={chi(p)}  points off the lines={count_complement_points(T, p)}")

# A free arrangement has chi = prod (t - e_i).
B = catalog.builtin("example-435")
rep = is_free(B)
chi = characteristic_polynomial(B)
print(chi, "factors as exponents", rep.exponents, ":", terao_factorization_check(rep, chi))

# the lattice over GF(p) is built from the reduced forms and may differ for small p
for p in (2, 3, 5):
    print(f"  over GF({p}):", characteristic_polynomial(B, GF(p)))

# Ziegler's arrangement over GF(3) has chi(3) != 0, which rules out freeness when n >= 2p
Zg = catalog.builtin("ziegler-f3")
chi = characteristic_polynomial(Zg)
print("Ziegler:", chi, "| complement points", count_complement_points(Zg))
print(yoshinaga_3d(Zg, chi=chi).to_json())
print("direct computation says free =", is_free(Zg).free)
