from freearr import catalog
from freearr.arrangement import (Derivation, apply_derivation, defining_polynomial, derivation_module,
                                 euler_derivation, is_free, saito_check)
from freearr.polyring import GF, QQ

A = catalog.builtin("example-435")
print("Q =", defining_polynomial(A))

# D(A) is computed as a syzygy module; free means exactly l minimal generators
for dom in (QQ, GF(2), GF(3), GF(5)):
    rep = is_free(A, dom)
    print(rep.field, "free" if rep.free else "not free", rep.exponents, rep.methods)

# over QQ the basis is rescaled to integer coefficients, and c is Saito's constant for it
rep = is_free(A, QQ)
print("Saito constant:", rep.saito_constant)
for d in rep.basis:
    print("   ", d)

# Saito's criterion by hand with a basis written out explicitly
R = A.ring(QQ)
d2 = Derivation.from_strings(R, ["x*(x+z)*(x+y+z)", "y*(y+z)*(x+y+z)", "0"])
d3 = Derivation.from_strings(R, ["x*(x+z)*(2*y+z)", "y*(y+z)*(2*x+z)", "0"])
res = saito_check(A, [euler_derivation(R), d2, d3])
print("explicit basis ok:", res.is_basis, "c =", res.c)

# in characteristic 2 the exponents change
F = A.ring(GF(2))
basis2 = [euler_derivation(F), Derivation.from_strings(F, ["x^2", "y^2", "z^2"]),
          Derivation.from_strings(F, ["x^4", "y^4", "z^4"])]
print("char 2 basis ok:", saito_check(A, basis2, GF(2)).is_basis)

# Over GF(3) the Euler field can kill Q, so no element acts as a scalar on Q.
B = catalog.builtin("sextic-f3")
QB = defining_polynomial(B)
E = euler_derivation(B.ring())
print("sextic over GF(3): E(Q) =", apply_derivation(E, QB))
for d in derivation_module(B):
    q, _ = apply_derivation(d, QB).divmod(QB)
    print("   ", d, " -> multiplier", q)

# a non-free example: four generators in dimension three
rep = is_free(catalog.builtin("nonfree-s6"))
print("quartic over QQ:", rep.free, "generator degrees", rep.generator_degrees)
