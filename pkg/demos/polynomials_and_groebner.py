import freearr
from freearr.groebner import buchberger_field, normal_form, strong_groebner_Z, non_lucky_primes
from freearr.polyring import GF, QQ, ZZ, PolyRing, TermOrder

# Polynomials live in a ring with a coefficient domain and a term order.
# degrevlex is the default.
R = PolyRing(3, QQ)
x, y, z = R.gens
f = R.parse("3x^2y - y*z + 1/2")
print(f, "| leading monomial", f.leading_monomial())
print("d/dx:", f.derivative(0))

# reducing integer polynomials mod p is coefficientwise
Z = PolyRing(2, ZZ)
a, b = Z.gens
g = 6 * a ** 2 + 4 * a * b - 5
print(g, "-> mod 3:", g.reduce_mod(3))

# Groebner bases over a field
G = buchberger_field([x ** 2 - y, x * y - 1])
print("GB:", [str(h) for h in G])
print("x^3 - 1 reduces to", normal_form(x ** 3 - 1, G))

# Over the integers we need strong bases: leading terms carry coefficients too.
S = strong_groebner_Z([a ** 2 - b, 3 * b])
print("strong basis leads:", S.lead_data())

# a prime dividing some leading coefficient is not lucky
print("non-lucky for (2x+3y, x-y):", non_lucky_primes([2 * a + 3 * b, a - b]))

# the answer depends on the order: 3x - y has leading coefficient 3 only if x > y
print("3x - y, x > y:", non_lucky_primes([3 * a - b]))
print("3x - y, y > x:", non_lucky_primes([3 * a - b], TermOrder("degrevlex", perm=(1, 0))))
