from freearr import catalog
from freearr.arrangement import jacobian_ideal
from freearr.groebner import is_zero_divisor_prime, strong_groebner_Z
from freearr.polyring import ZZ
from freearr.transfer import classify_primes, transfer_down, transfer_up

A = catalog.builtin("nonfree-s6")
J = list(jacobian_ideal(A, ZZ).generators)
G = strong_groebner_Z(J)
print("non-lucky primes of J:", sorted(G.non_lucky_primes()))

# 2 and 3 are zero divisors mod J: p*w lies in J but w does not
for p in (2, 3, 5):
    r = is_zero_divisor_prime(J, p)
    print(p, "zero divisor" if r.zero_divisor else "fine", r.witness if r.witness is not None else "")
    if r.zero_divisor:
        print("    p*w in J:", G.contains(r.witness * p), "| w in J:", G.contains(r.witness))

# the lift from GF(p) to QQ is refused unless every hypothesis holds
for p in (2, 3, 5):
    cert = transfer_down(A, p)
    print(f"transfer_down p={p}: accepted={cert.accepted} failed={cert.failed()}")

B = catalog.builtin("example-435")
cert = transfer_down(B, 5)
print("example-435 from GF(5):", cert.accepted, cert.conclusion)

# going up: primes not dividing the Saito constant keep the exponents
for c in transfer_up(B, bound=13):
    print(f"  p={c.prime:2d} certified={c.accepted!s:5} direct={c.verification.get('exponents')}")

for rep in classify_primes(B, bound=7):
    print(rep.to_json())
