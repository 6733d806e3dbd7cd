"""Command line front end.

Exit status: 0 on success, 2 when a certificate or check fails, 1 on usage
or input errors. Output is JSON (``"schema": 1``) unless ``--csv`` is given.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import io as pio
from .best_constant import CertificateError, certified_norm_leq_one, forward_v, sharpness_table
from .folding import fold_u, product_formula_u, refold, refold_coefficient_check
from .hankel import make_hankel, make_paley_hankel, op_norm_oracle, op_norm_power, truncate
from .multipliers import cond_supdouble, cond_sumsquaresum, cond_supsum2, dyadic_block_sums, kothe_row_bound, supdouble_profile
from .schur import (
    DivergenceError,
    SchurCertificate,
    asymmetric_uw,
    geometric_u,
    paley_certificate_pair,
    paley_row_bound,
    verify_certificate,
    verify_factorization,
)
from .sequences import LacunarySet, decompose_strongly_lacunary, hadamard_ratio, is_strongly_lacunary, max_strong_parts

SHARPNESS_HEADER = ("J", "l2", "norm", "ratio", "norm_verified")
AGREE_TOL = 1e-8


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_set(p):
    g = p.add_argument_group("lacunary set")
    g.add_argument("--set", dest="set_", metavar="K", help="comma list, e.g. 0,1,3,7")
    g.add_argument("--set-rule", help='rule in j, e.g. "2^j-1"')
    g.add_argument("--terms", type=int, help="number of elements generated by --set-rule")


def _get_set(args) -> LacunarySet:
    if args.set_ is not None:
        return pio.parse_set(args.set_)
    if args.set_rule is not None:
        if args.terms is None:
            raise UsageError("--set-rule needs --terms")
        return LacunarySet.from_rule(args.set_rule, args.terms)
    raise UsageError("give --set or --set-rule/--terms")


def _operator(args):
    """(H, K, v) from --operator, --a, or a set with --v / --c."""
    if getattr(args, "operator", None):
        obj = json.loads(Path(args.operator).read_text())
        H = pio.operator_from_json(obj)
        if "K" in obj:
            return H, LacunarySet(tuple(obj["K"])), np.asarray(obj["v"], dtype=float)
        return H, None, None
    if getattr(args, "a", None) is not None:
        return make_hankel(pio.sequence_arg(args.a)), None, None
    K = _get_set(args)
    if getattr(args, "c", None) is not None:
        v = forward_v(pio.parse_list(args.c))
    elif getattr(args, "v", None) is not None:
        v = pio.sequence_arg(args.v)
    else:
        raise UsageError("give coefficients with --v, --c or --a")
    return make_paley_hankel(K, v), K, v


def _emit(args, obj, header=None, rows=None):
    if args.csv:
        if header is None:
            header, rows = ("key", "value"), [(k, v) for k, v in obj.items() if not isinstance(v, (list, dict))]
        text = pio.rows_to_csv(header, rows)
    else:
        text = pio.dumps(obj) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_norm(args) -> int:
    H, K, v = _operator(args)
    N = args.N or H.effective_size
    out = {"N": N, "effective_size": H.effective_size, "tol": args.tol, "agree_tol": AGREE_TOL}
    if args.method in ("power", "both"):
        est = op_norm_power(H, N, tol=args.tol, seed=args.seed)
        out.update(norm_power=est.value, residual=est.residual, iterations=est.iterations)
    if args.method in ("oracle", "both"):
        out["norm_oracle"] = op_norm_oracle(truncate(H, N))
    norm = out.get("norm_oracle", out.get("norm_power"))
    out["norm"] = norm
    status = 0
    if args.method == "both":
        out["agree"] = abs(out["norm_power"] - out["norm_oracle"]) <= AGREE_TOL * max(1.0, out["norm_oracle"])
        status = 0 if out["agree"] else 2
    if K is not None and not np.iscomplexobj(v):
        l2 = float(np.linalg.norm(v))
        out.update(K=K.to_list(), l2=l2)
        if np.all(np.asarray(v) >= 0):
            out["paley_row_bound"] = paley_row_bound(K, v)
        if is_strongly_lacunary(K):
            # ||A_v|| <= 2 ||v|| from the fold vector of v, <= sqrt(2) ||v|| sharp
            out["fold_bound"] = 2 * l2
            out["fold_bound_ok"] = norm <= 2 * l2 + 1e-9
            out["sqrt2_bound"] = math.sqrt(2) * l2
            out["sqrt2_bound_ok"] = norm <= math.sqrt(2) * l2 + 1e-9
            if not (out["fold_bound_ok"] and out["sqrt2_bound_ok"]):
                status = 2
    if args.dump_matrix:
        pio.write_matrix_csv(args.dump_matrix, truncate(H, N))
    _emit(args, out)
    return status


def cmd_certify(args) -> int:
    H, K, v = _operator(args)
    method = args.method
    if args.c is not None:
        method = method or "fold"
    method = method or "geometric"
    N = args.N or H.effective_size
    if method == "fold":
        if K is None:
            raise UsageError("fold certificates need a lacunary set")
        if args.c is not None:
            c = np.asarray(pio.parse_list(args.c), dtype=float)
            cert = certified_norm_leq_one(K, c)
        else:
            u = fold_u(K, v, "mirror", args.gap_value).u
            T = args.T or paley_row_bound(K, v)
            cert = SchurCertificate(u, u, T, H.effective_size)
    elif method == "paley":
        if K is None:
            raise UsageError("the Paley factorization needs a lacunary set")
        pair = paley_certificate_pair(K, v, N)
        rep = verify_factorization(H, pair, N)
        if args.dump_factors:
            pio.write_matrix_csv(f"{args.dump_factors}_B.csv", pair.B)
            pio.write_matrix_csv(f"{args.dump_factors}_C.csv", pair.C)
        _emit(args, {"method": method, "T": pair.T, "N": N, "ok": rep.ok, "max_row_B": rep.max_row_B,
                     "max_col_C": rep.max_col_C, "messages": rep.messages, "rtol": 1e-12})
        return 0 if rep.ok else 2
    elif method in ("geometric", "asymmetric"):
        T = args.T or args.T_factor * op_norm_oracle(truncate(H.modulus(), N))
        if T <= 0:
            raise UsageError("zero operator: give --T explicitly")
        try:
            if method == "geometric":
                u = geometric_u(H, None, T, N)
                w = u
            else:
                u, w = asymmetric_uw(H, T, N)
        except DivergenceError as e:
            _emit(args, {"method": method, "T": T, "N": N, "ok": False, "error": str(e)})
            return 2
        cert = SchurCertificate(u, w, T, N)
    else:
        raise UsageError(f"unknown method {method}")
    rep = verify_certificate(H, cert)
    out = {"method": method, **cert.to_json(rep)}
    if args.csv:
        _emit(args, out, ("n", "u", "w"), zip(range(cert.N), np.asarray(cert.u, float), np.asarray(cert.w, float)))
    else:
        _emit(args, out)
    return 0 if rep.ok else 2


def cmd_fold(args) -> int:
    K = _get_set(args)
    v = pio.sequence_arg(args.v)
    prof = fold_u(K, v, args.strategy, args.gap_value)
    if args.csv:
        Kz, vz = prof.K, prof.v
        rows = []
        for k, uk in enumerate(prof.u):
            p = product_formula_u(Kz, vz, k)
            rows.append((k, float(uk), p is not None, "" if p is None else float(p)))
        _emit(args, {}, ("k", "u", "in_fold", "product"), rows)
    else:
        _emit(args, prof.to_json())
    return 0


def cmd_refold(args) -> int:
    K = _get_set(args)
    v = pio.sequence_arg(args.v)
    Ue, Uo = refold(K, v, args.J, args.sign)
    out = {"sign": args.sign, "J": args.J, "U_e": Ue.to_list(), "U_o": Uo.to_list()}
    status = 0
    if args.sign == "plus" and not np.iscomplexobj(v) and np.all(v >= 0) and is_strongly_lacunary(K):
        rep = refold_coefficient_check(K, v, args.J)
        out["check"] = {"ok": rep.ok, "max_error": rep.max_error, "mismatches": rep.mismatches, "atol": 1e-12}
        status = 0 if rep.ok else 2
    if args.csv:
        rows = [("U_e", *r) for r in Ue.to_list()] + [("U_o", *r) for r in Uo.to_list()]
        _emit(args, out, ("poly", "freq", "re", "im"), rows)
    else:
        _emit(args, out)
    return status


def cmd_multiplier(args) -> int:
    a = np.abs(pio.sequence_arg(args.a))
    checks = [args.check] if args.check else ["supsum2", "sumsquaresum", "supdouble"]
    blocks = int(np.count_nonzero(dyadic_block_sums(a)))
    out = {"a0": float(a[0]) if a.size else 0.0, "bound": kothe_row_bound(a), "finite_blocks": blocks}
    for name in checks:
        if name == "supsum2":
            val = cond_supsum2(a)
        elif name == "sumsquaresum":
            val = cond_sumsquaresum(a)
        else:
            prof = supdouble_profile(a, args.M_max)
            val = cond_supdouble(a, args.M_max)
            out["supdouble_argmax_M"] = int(np.argmax(prof[1:]) + 1) if prof.size > 1 else 1
        out[name] = val
    if len(checks) == 1:
        out["check"] = checks[0]
        out["value"] = out[checks[0]]
    _emit(args, out)
    return 0


def cmd_decompose(args) -> int:
    K = _get_set(args)
    parts = decompose_strongly_lacunary(K)
    eps = hadamard_ratio(K) - 1
    out = {
        "K": K.to_list(),
        "parts": [p.to_list() for p in parts],
        "eps": eps if math.isfinite(eps) else None,
        "part_bound": max_strong_parts(eps) if math.isfinite(eps) else 1,
    }
    if args.csv:
        _emit(args, out, ("part", "k"), [(i, k) for i, p in enumerate(parts) for k in p])
    else:
        _emit(args, out)
    return 0


def cmd_sharpness(args) -> int:
    rows = sharpness_table(args.jmax, verify_jmax=args.verify_jmax)
    bad = [r.J for r in rows if abs(r.l2**2 - r.l2_closed_form**2) > 1e-12 or (r.norm_verified and abs(r.norm - 1) > 1e-9)]
    if args.csv:
        _emit(args, {}, SHARPNESS_HEADER, [(r.J, r.l2, r.norm, r.ratio, r.norm_verified) for r in rows])
    else:
        _emit(args, {
            "rows": [r.__dict__ for r in rows],
            "l2_tol": 1e-12,
            "norm_tol": 1e-9,
            "failed": bad,
        })
    return 2 if bad else 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="paley-hankel", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output (default)")
    fmt.add_argument("--csv", action="store_true", help="CSV output")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("norm", parents=[common], help="operator norm of A_v or H_a")
    _add_set(s)
    s.add_argument("--v")
    s.add_argument("--c", help="build v = v^(J)(c)")
    s.add_argument("--a", help="Hankel symbol: comma list or file")
    s.add_argument("--operator", help='JSON file {"K": [...], "v": [...]} or {"a": [...]}')
    s.add_argument("--N", type=int)
    s.add_argument("--method", choices=["power", "oracle", "both"], default="both")
    s.add_argument("--tol", type=float, default=1e-10)
    s.add_argument("--dump-matrix", help="write the dense truncation as CSV")
    s.set_defaults(func=cmd_norm)

    s = sub.add_parser("certify", parents=[common], help="build and verify a Schur certificate")
    _add_set(s)
    s.add_argument("--v")
    s.add_argument("--c", help="certify A_{v(c)} <= 1 with the fold of c")
    s.add_argument("--a")
    s.add_argument("--operator")
    s.add_argument("--method", choices=["fold", "geometric", "asymmetric", "paley"])
    s.add_argument("--T", type=float)
    s.add_argument("--T-factor", type=float, default=1.01, help="T = factor * norm when --T is absent")
    s.add_argument("--N", type=int)
    s.add_argument("--gap-value", type=float, default=1.0)
    s.add_argument("--dump-factors", metavar="PREFIX", help="write PREFIX_B.csv and PREFIX_C.csv")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("fold", parents=[common], help="fold vector u")
    _add_set(s)
    s.add_argument("--v", required=True)
    s.add_argument("--strategy", choices=["mirror", "constant", "zero"], default="mirror")
    s.add_argument("--gap-value", type=float, default=1.0)
    s.set_defaults(func=cmd_fold)

    s = sub.add_parser("refold", parents=[common], help="refold trigonometric polynomials")
    _add_set(s)
    s.add_argument("--v", required=True)
    s.add_argument("--J", type=int)
    s.add_argument("--sign", choices=["plus", "minus"], default="plus")
    s.set_defaults(func=cmd_refold)

    s = sub.add_parser("multiplier", parents=[common], help="dyadic conditions and Kothe bound")
    s.add_argument("--a", required=True, help="file with one value per line, or a comma list")
    s.add_argument("--check", choices=["supsum2", "sumsquaresum", "supdouble"])
    s.add_argument("--M-max", type=int)
    s.set_defaults(func=cmd_multiplier)

    s = sub.add_parser("decompose", parents=[common], help="split into strongly lacunary parts")
    _add_set(s)
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("sharpness", parents=[common], help="the sqrt(2) sharpness family")
    s.add_argument("--jmax", type=int, required=True)
    s.add_argument("--verify-jmax", type=int, default=10, help="recompute norms densely up to this J")
    s.add_argument("--no-verify", dest="verify_jmax", action="store_const", const=-1)
    s.set_defaults(func=cmd_sharpness)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CertificateError as e:
        print(f"paley-hankel {args.command}: verification failed: {e}", file=sys.stderr)
        return 2
    except (UsageError, ValueError, OSError) as e:
        print(f"paley-hankel {args.command}: error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
