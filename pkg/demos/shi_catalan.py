import time

from freearr import catalog
from freearr.arrangement import is_free, non_good_primes
from freearr.lattice import characteristic_polynomial
from sympy import factorint
from freearr.polyring import GF, QQ
from freearr.transfer import applications_check

A = catalog.builtin("shicatalan-b2-cone")
print(A.name, "l =", A.dim, "n =", A.n, "non-good primes", sorted(non_good_primes(A)))

t = time.perf_counter()
rep = is_free(A, QQ)
print("QQ:", rep.exponents, "c =", rep.saito_constant, factorint(rep.saito_constant),
      f"({time.perf_counter() - t:.2f}s)")
print("chi =", characteristic_polynomial(A))

# primes dividing c are where things can change
for p in (5, 7, 11, 13):
    r = is_free(A, GF(p))
    print(f"GF({p}):", r.exponents if r.free else "not free")

# exponents over QQ read off from chi(A_p, p) = 0
cert = applications_check(A, 11)
print("from chi at p=11:", cert.accepted, cert.conclusion)

# The B3 cone (n = 46) works the same way but takes a few minutes; try
#   is_free(catalog.builtin("shicatalan-b3-cone"), QQ)
