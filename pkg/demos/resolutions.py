from freearr import catalog
from freearr.arrangement import jacobian_ideal
from freearr.groebner import consecutive_cancellation_reachable, hdim, is_zero_divisor_prime, minimal_free_resolution
from freearr.polyring import GF, QQ, ZZ, PolyRing

R = PolyRing(3, QQ)
x, y, z = R.gens
b = minimal_free_resolution([x * y, x * z, y * z])
print(b)
print("hdim =", hdim(b))

# Terao: free iff S/J has homological dimension at most 2 (when char does not divide n)
A = catalog.builtin("nonfree-s6")
b_q = minimal_free_resolution(jacobian_ideal(A, QQ))
print("QQ:\n", b_q, "\nhdim", hdim(b_q))
for p in (3, 5):
    b_p = minimal_free_resolution(jacobian_ideal(A, GF(p)))
    print(f"GF({p}):\n", b_p, "\nhdim", hdim(b_p))
    # when p is not a zero divisor the table over GF(p) cancels down to the one over QQ;
    # at p = 3 it is one, and the tables are not related that way
    zd = is_zero_divisor_prime(jacobian_ideal(A, ZZ).generators, p).zero_divisor
    print("  zero divisor:", zd, "| cancels to QQ table:", consecutive_cancellation_reachable(b_p, b_q)[0])
