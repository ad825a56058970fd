"""Command-line interface: ``invbasis <command> FILE [options]``.

Every command prints one JSON object with ``"schema": 1``.  Exit status is
0 on success, 1 on domain errors (reported as ``{"error": ...}``) and 2 on
usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import eigen, linalg
from .errors import DomainError, ParseError
from .matfile import MatrixFile, read_matrix_file
from .matrix import RingMatrix
from .nullbasis import check_invertible_conditions, invertible_null_basis
from .rings import QX, ZZ, Poly
from .series import Jet
from .smith import smith_decompose

SCHEMA = 1


def to_json(value):
    """Exact JSON encoding: rationals as strings, polynomials as coefficient arrays."""
    if isinstance(value, (bool, int)) or value is None:
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Poly):
        return value.to_strings()
    if isinstance(value, Jet):
        return {"coefficients": value.to_strings(), "known_zero": value.known_zero}
    if isinstance(value, RingMatrix):
        return [[ring_element(e) for e in value.row(i)] for i in range(value.rows)]
    if isinstance(value, dict):
        return {str(k): to_json(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_json(v) for v in value]
    return str(value)


def ring_element(e):
    """Ring elements are never bare JSON numbers; integers become strings."""
    if isinstance(e, int) and not isinstance(e, bool):
        return str(e)
    return to_json(e)


def _poly_matrix(mf: MatrixFile) -> RingMatrix:
    A = mf.to_matrix()
    if A.ring is ZZ:
        A = RingMatrix([[Poly.const(e) for e in A.row(i)] for i in range(A.rows)], QX, A.cols)
    return A


def _spectral_matrix(mf: MatrixFile, args) -> RingMatrix:
    if mf.ring == "analytic":
        return mf.to_matrix(point=args.lam, trunc=args.trunc)
    return _poly_matrix(mf)


def _lambda(args) -> Fraction:
    if args.lam is None:
        raise DomainError("this command needs --lambda")
    return args.lam


def cmd_smith(mf: MatrixFile, args) -> dict:
    if mf.ring == "analytic":
        raise DomainError("global Smith form needs a polyQ or int matrix; use `local` for analytic files")
    A = mf.to_matrix()
    D = smith_decompose(A)
    return {
        "ring": mf.ring, "rank": D.rank,
        "invariant_factors": [ring_element(f) for f in D.invariant_factors],
        "U": D.U, "S": D.S, "V": D.V,
    }


def cmd_nullbasis(mf: MatrixFile, args) -> dict:
    B = invertible_null_basis(_poly_matrix(mf))
    return {"dimension": B.dim, "Q": B.Q, "L": B.L, "kernel_over_fractions": B.kernel}


def cmd_check_invertible(mf: MatrixFile, args) -> dict:
    rep = check_invertible_conditions(_poly_matrix(mf), samples=args.samples, seed=args.seed)
    return {
        "invertible": rep.cond1,
        "conditions": {
            "left_inverse": rep.cond1,
            "full_rank_mod_primes": {"value": rep.cond2, "mode": rep.cond2_mode,
                                     "points": rep.sample_points},
            "coprime_maximal_minors": rep.cond3,
            "ring_coefficients": rep.cond4,
            "trivial_smith_form": rep.cond5,
        },
        "minor_gcd": rep.minor_gcd,
        "left_inverse": rep.left_inverse,
        "witness": rep.witness,
        "seed": args.seed,
    }


def cmd_eig(mf: MatrixFile, args) -> dict:
    lam = _lambda(args)
    A = _spectral_matrix(mf, args)
    chk = eigen.is_eigenvalue(A, lam)
    mults, cert = eigen.partial_multiplicities(A, lam)
    return {
        "lambda": lam, "eigenvalue": chk.is_eigenvalue,
        "generic_rank": chk.generic_rank, "rank_at_lambda": chk.rank_at_point,
        "partial_multiplicities": mults,
        "geometric_multiplicity": len(mults), "algebraic_multiplicity": sum(mults),
        "certified": chk.certified and cert,
    }


def cmd_kerlambda(mf: MatrixFile, args) -> dict:
    lam = _lambda(args)
    K = eigen.ker_lambda(_spectral_matrix(mf, args), lam)
    return {"lambda": lam, "dimension": K.dim, "basis": K.columns, "certified": K.certified}


def _root_set_json(rs: eigen.RootVectorSet, classes) -> dict:
    return {
        "lambda": rs.point,
        "orders": rs.orders,
        "vectors_at_lambda": [v.at(rs.point) for v in rs.vectors],
        "vectors": [v.r for v in rs.vectors],
        "lambda_independent": rs.lambda_independent,
        "complete": rs.complete,
        "ordered": rs.ordered,
        "maximal": rs.maximal,
        "partial_multiplicities": rs.evidence["partial_multiplicities"],
        "rejected": rs.evidence["rejected"],
        "eigenvectors": [c.representative for c in classes],
        "certified": rs.certified,
    }


def cmd_rootvectors(mf: MatrixFile, args) -> dict:
    lam = _lambda(args)
    A = _spectral_matrix(mf, args)
    K = eigen.ker_lambda(A, lam)
    if args.vector:
        vecs = [mf.parse_vector(v, point=lam, trunc=args.trunc) for v in args.vector]
        rs = eigen.check_set(A, lam, vecs, K)
    else:
        rs = eigen.maximal_set(A, lam)
    classes = []
    if rs.complete:
        classes = [eigen.EigenvectorClass(linalg.reduce_modulo(v.at(lam), K.columns, A.cols), K.columns)
                   for v in rs.vectors]
    out = _root_set_json(rs, classes)
    out["source"] = "provided" if args.vector else "smith_transport"
    return out


def cmd_local(mf: MatrixFile, args) -> dict:
    if mf.ring == "analytic":
        A = mf.to_matrix(point=args.lam, trunc=args.trunc)
    else:
        lam = _lambda(args)
        P = _poly_matrix(mf)
        N = args.trunc or mf.trunc
        A = RingMatrix([[Jet.from_poly(e, lam, N) for e in P.row(i)] for i in range(P.rows)], None, P.cols)
    loc = eigen.local_smith_jet(A)
    return {
        "lambda": loc.point, "trunc": loc.N,
        "orders": loc.orders,
        "partial_multiplicities": loc.partial_multiplicities,
        "rank": loc.rank,
        "rank_certified": loc.rank_certified,
        "certified": loc.rank_certified,
        "uncertified_positions": [list(p) for p in loc.uncertified],
        "transform_precision": loc.precision,
    }


COMMANDS = {
    "smith": cmd_smith,
    "nullbasis": cmd_nullbasis,
    "check-invertible": cmd_check_invertible,
    "eig": cmd_eig,
    "kerlambda": cmd_kerlambda,
    "rootvectors": cmd_rootvectors,
    "local": cmd_local,
}


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="invbasis", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("file")
        s.add_argument("--lambda", dest="lam", type=_rational, default=None)
        s.add_argument("--trunc", type=int, default=None)
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--samples", type=int, default=20)
        fmt = s.add_mutually_exclusive_group()
        fmt.add_argument("--json", dest="pretty", action="store_false")
        fmt.add_argument("--pretty", dest="pretty", action="store_true")
        s.set_defaults(pretty=False)
        if name == "rootvectors":
            s.add_argument("--vector", action="append", default=[],
                           help="comma-separated entries of a candidate root vector (repeatable)")
    return p


def run_command(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    if args.trunc is not None and args.trunc < 1:
        build_parser().error("--trunc must be positive")
    payload = {"schema": SCHEMA, "command": args.command}
    try:
        mf = read_matrix_file(args.file)
        payload.update(COMMANDS[args.command](mf, args))
        code = 0
    except OSError as exc:
        payload["error"] = {"type": "usage", "message": str(exc)}
        code = 2
    except ParseError as exc:
        payload["error"] = {"type": "parse", "message": str(exc), "position": exc.position}
        code = 1
    except DomainError as exc:
        payload["error"] = {"type": type(exc).__name__, "message": str(exc)}
        code = 1
    json.dump(to_json(payload), stdout, indent=2 if args.pretty else None)
    stdout.write("\n")
    return code


def main(argv=None):
    sys.exit(run_command(argv))


if __name__ == "__main__":
    main()
