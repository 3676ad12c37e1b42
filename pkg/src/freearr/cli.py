"""Command line entry point: ``python -m freearr <verb> ...``.

Exit status is 0 on success, 1 when the mathematics refuses the request
(non-good prime, failed hypothesis) and 2 for invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import catalog
from .arrangement import (Arrangement, ArrangementError, Derivation, NotGoodPrimeError,
                          defining_polynomial, field_from, integer_basis, is_free, jacobian_ideal,
                          reduce_arrangement, saito_check, derivation_module)
from .groebner import hdim, minimal_free_resolution
from .lattice import characteristic_polynomial, count_complement_points, POINT_LIMIT
from .polyring import QQ, TermOrder
from .transfer import classify_primes

VERBS = ("analyze", "freeness", "charpoly", "primes", "reduce", "saito", "gen", "resolve")


class InputError(Exception):
    pass


class Refusal(Exception):
    pass


def jsonable(obj):
    """Recursively convert to JSON types; integers beyond 2^53 become strings."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) > 2 ** 53 else obj
    if isinstance(obj, Fraction):
        return jsonable(obj.numerator) if obj.denominator == 1 else str(obj)
    if isinstance(obj, float):
        return obj
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "to_json"):
        return jsonable(obj.to_json())
    return str(obj)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="freearr", description="Freeness of hyperplane arrangements over QQ and GF(p).")
    ap.add_argument("verb", choices=VERBS)
    ap.add_argument("name", nargs="?", help="builtin name (for gen)")
    ap.add_argument("--builtin")
    ap.add_argument("--input")
    ap.add_argument("--output")
    ap.add_argument("--field", choices=("q", "fp"))
    ap.add_argument("--prime", type=int)
    ap.add_argument("--order", choices=("degrevlex", "lex"), default="degrevlex")
    ap.add_argument("--max-prime", type=int, default=30)
    ap.add_argument("--derivations", help="JSON file: list of derivations, each a list of l polynomial strings")
    ap.add_argument("--json", action="store_true", help="compact single-line JSON")
    return ap


def _load(args) -> Arrangement:
    name = args.builtin or (args.name if args.verb == "gen" else None)
    if name and args.input:
        raise InputError("give either --builtin or --input, not both")
    if name:
        try:
            return catalog.builtin(name)
        except KeyError as e:
            raise InputError(str(e.args[0]))
    if not args.input:
        raise InputError("no arrangement given (use --builtin or --input)")
    try:
        with open(args.input) as fh:
            data = json.load(fh)
        return Arrangement.from_json(data)
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as e:
        raise InputError(f"cannot read arrangement: {e}")


def _domain(args, A: Arrangement):
    if args.field == "fp" and args.prime is None:
        raise InputError("--field fp needs --prime")
    if args.field == "q" and A.prime is not None:
        raise InputError(f"arrangement is defined over GF({A.prime})")
    if args.field is None and args.prime is None:
        return A.domain
    dom = field_from(args.field or "fp", args.prime) if args.field != "q" else QQ
    if A.prime is not None and dom is not QQ and dom.p != A.prime:
        raise InputError(f"arrangement is defined over GF({A.prime})")
    if A.prime is None and dom is not QQ:
        reduce_arrangement(A, dom.p)
    return dom


def _order(args) -> TermOrder:
    return TermOrder(args.order)


def _freeness(A, dom):
    rep = is_free(A, dom)
    out = rep.to_json()
    out["name"] = A.name or ""
    return out


def _charpoly(A, dom, args):
    chi = characteristic_polynomial(A, dom)
    p = getattr(dom, "p", None)
    out = {"name": A.name or "", "field": "q" if dom is QQ else f"fp:{p}", "charpoly": chi.to_json(p)}
    if p is not None and p ** A.dim <= POINT_LIMIT:
        out["complement_points"] = count_complement_points(A if A.prime else reduce_arrangement(A, p), p)
    if dom is QQ:
        out["chambers"] = chi.chambers()
        out["bounded_chambers"] = chi.bounded_chambers()
    return out


def _primes(A, args):
    if A.prime is not None:
        raise InputError("prime classification needs an arrangement over QQ")
    reps = classify_primes(A, bound=args.max_prime, order=_order(args))
    return {"name": A.name or "", "order": args.order, "max_prime": args.max_prime,
            "primes": [r.to_json() for r in reps]}


def _saito(A, dom, args):
    if args.derivations:
        try:
            with open(args.derivations) as fh:
                raw = json.load(fh)
            cands = [Derivation.from_strings(A.ring(dom), d) for d in raw]
        except (OSError, json.JSONDecodeError, ValueError, TypeError) as e:
            raise InputError(f"cannot read derivations: {e}")
    else:
        gens = derivation_module(A, dom)
        if len(gens) != A.dim:
            raise Refusal(f"D(A) needs {len(gens)} generators; no basis to test")
        cands = integer_basis(gens) if dom is QQ else gens
    try:
        res = saito_check(A, cands, dom)
    except ArrangementError as e:
        raise Refusal(str(e))
    return {"is_basis": res.is_basis, "c": res.c, "candidates": [d.to_json() for d in cands],
            "degrees": [d.pdeg for d in cands]}


def _resolve(A, dom, args):
    J = jacobian_ideal(A, dom, _order(args))
    b = minimal_free_resolution(J)
    return {"name": A.name or "", "field": "q" if dom is QQ else f"fp:{dom.p}",
            "betti": b.to_json(), "hdim": hdim(b), "text": str(b)}


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        A = _load(args)
        if args.verb == "gen":
            out = A.to_json()
        elif args.verb == "reduce":
            if args.prime is None:
                raise InputError("reduce needs --prime")
            out = reduce_arrangement(A, args.prime).to_json()
        elif args.verb == "primes":
            out = _primes(A, args)
        else:
            dom = _domain(args, A)
            if args.verb == "freeness":
                out = _freeness(A, dom)
            elif args.verb == "charpoly":
                out = _charpoly(A, dom, args)
            elif args.verb == "saito":
                out = _saito(A, dom, args)
            elif args.verb == "resolve":
                out = _resolve(A, dom, args)
            else:
                out = {"freeness": _freeness(A, dom), "charpoly": _charpoly(A, dom, args)}
                if A.prime is None:
                    out["primes"] = _primes(A, args)
                out["defining_polynomial"] = str(defining_polynomial(A, dom))
        status = 0
    except (Refusal, NotGoodPrimeError) as e:
        out, status = {"error": str(e)}, 1
    except (InputError, ArrangementError, ValueError) as e:
        out, status = {"error": str(e)}, 2
    text = json.dumps(jsonable(out), sort_keys=True, separators=(",", ":") if args.json else None,
                      indent=None if args.json else 2)
    if args.output and status == 0:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return status


def main():
    sys.exit(run())
