"""Named arrangements used throughout the tests and demos.

The Ziegler arrangement fixes the line L = span(1, 1, 1) in GF(3)^3; every
other choice of L is equivalent up to a linear change of coordinates.
"""

from __future__ import annotations

import itertools

from .arrangement import Arrangement, ArrangementError, arrangement_over_prime, new_arrangement


def boolean(l: int) -> Arrangement:
    if l < 1:
        raise ArrangementError("boolean arrangement needs l >= 1")
    return new_arrangement([[int(i == j) for j in range(l)] for i in range(l)], name=f"boolean-{l}")


def shi_catalan_b_cone(l: int, k: int = 2) -> Arrangement:
    """Cone of the type B Shi-Catalan arrangement with constants -k..k.

    Coordinates are (x_1, ..., x_l, z); forms are x_i - c z and
    x_i +- x_j - c z, plus z itself.
    """
    vecs = []
    for c in range(-k, k + 1):
        for i in range(l):
            vecs.append([int(t == i) for t in range(l)] + [-c])
        for i, j in itertools.combinations(range(l), 2):
            for sgn in (1, -1):
                e = [0] * l
                e[i], e[j] = 1, sgn
                vecs.append(e + [-c])
    vecs.append([0] * l + [1])
    return new_arrangement(vecs, name=f"shicatalan-b{l}-cone")


def ziegler_f3() -> Arrangement:
    """All planes of GF(3)^3 not containing the line spanned by (1, 1, 1)."""
    vecs = []
    for v in itertools.product(range(3), repeat=3):
        if not any(v) or next(c for c in v if c) != 1:
            continue
        if sum(v) % 3 == 0:
            continue
        vecs.append(v)
    return arrangement_over_prime(vecs, 3, name="ziegler-f3")


_FIXED = {
    "example-435": (None, [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, -1, 0], [1, 0, 1], [0, 1, 1], [1, 1, 1]]),
    "sextic-f3": (3, [[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 1, 1], [1, -1, 0], [1, 0, 1]]),
    "nonfree-s6": (None, [[0, 0, 1], [1, 2, -4], [0, 1, 4], [1, 3, -6]]),
    "pm2-lines": (None, [[1, 0], [0, 1], [1, 1], [1, -1]]),
}

NAMES = ("boolean-<l>", *_FIXED, "shicatalan-b2-cone", "shicatalan-b3-cone", "ziegler-f3")


def builtin(name: str) -> Arrangement:
    if name in _FIXED:
        prime, vecs = _FIXED[name]
        if prime is None:
            return new_arrangement(vecs, name=name)
        return arrangement_over_prime(vecs, prime, name=name)
    if name.startswith("boolean-"):
        tail = name[len("boolean-"):]
        if tail.isdigit() and int(tail) >= 1:
            return boolean(int(tail))
    if name == "shicatalan-b2-cone":
        return shi_catalan_b_cone(2)
    if name == "shicatalan-b3-cone":
        return shi_catalan_b_cone(3)
    if name == "ziegler-f3":
        return ziegler_f3()
    raise KeyError(f"unknown builtin {name!r}")


def all_builtins(boolean_dims=(1, 2, 3, 4)) -> list:
    out = [boolean(l) for l in boolean_dims]
    out += [builtin(n) for n in _FIXED]
    out += [builtin("shicatalan-b2-cone"), builtin("shicatalan-b3-cone"), ziegler_f3()]
    return out
