"""Command-line front end: ``entrank <subcommand> [options]``.

Exit codes: 0 success (including uncertified numeric fallbacks, reported
with ``"certified": false``), 2 malformed input, 3 precondition violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import invariants as inv
from .classify3 import classify3, decompose3, normal_form3
from .oracle import als_fit
from .qubit4 import decompose4, in_s3_closure, rank4, s2_closure_necessary, stabilizer_dimension
from .experiments import sample
from .scalars import GaussianRational
from .states import DECOMPOSITION_NAMES, STATE_NAMES, builtin_decomposition, builtin_state
from .tensor import Decomposition, Tensor, TensorError, loads, to_json_obj


class InputError(Exception):
    pass


class PreconditionError(Exception):
    pass


def _scalar(v):
    if isinstance(v, GaussianRational):
        return {"re": str(v.re), "im": str(v.im)}
    if isinstance(v, Fraction):
        return str(v)
    v = complex(v)
    return {"re": v.real, "im": v.imag}


def _vec(f):
    return [_scalar(x) for x in f]


def decomposition_json(d: Decomposition) -> dict:
    return {"certified": d.certified, "terms": len(d),
            "decomposition": [{"weight": _scalar(w), "factors": [_vec(f) for f in fs]}
                              for w, fs in d.terms]}


def _read_tensor(args) -> Tensor:
    if args.state:
        try:
            t = builtin_state(args.state)
        except KeyError as exc:
            raise InputError(str(exc)) from exc
    else:
        try:
            text = open(args.infile).read() if args.infile else sys.stdin.read()
        except OSError as exc:
            raise InputError(str(exc)) from exc
        try:
            t = loads(text)
        except TensorError as exc:
            raise InputError(str(exc)) from exc
    if args.mode == "approx":
        return t.to_approx()
    if args.mode == "exact" and not t.exact:
        raise PreconditionError("--exact needs an exact (rational) input tensor")
    return t


def _parse_axes(text: str) -> list[int]:
    try:
        return [int(a) for a in text.split(",") if a.strip()]
    except ValueError as exc:
        raise InputError(f"bad axis list {text!r}") from exc


def _parse_rational(text: str):
    try:
        if "j" in text or "i" in text:
            z = complex(text.replace("i", "j"))
            return GaussianRational(Fraction(z.real).limit_denominator(10**12),
                                    Fraction(z.imag).limit_denominator(10**12))
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad scalar {text!r}") from exc


def cmd_classify(args):
    return classify3(_read_tensor(args), tol=args.tol or inv.PURITY_TOL).to_json()


def cmd_decompose(args):
    t = _read_tensor(args)
    if t.shape == (2, 2, 2):
        d = decompose3(t)
    elif t.shape == (2, 2, 2, 2):
        d = decompose4(t, seed=args.seed)
    else:
        raise PreconditionError("decompose supports shapes (2,2,2) and (2,2,2,2); use als")
    return decomposition_json(d)


def cmd_normal_form(args):
    return normal_form3(_read_tensor(args)).to_json()


def cmd_hyperdet(args):
    return {"hyperdet": _scalar(inv.hyperdet(_read_tensor(args)))}


def cmd_delta(args):
    t = _read_tensor(args)
    if args.perm:
        return {"perm": args.perm, "delta": _scalar(inv.delta(t, args.perm))}
    d = inv.essential_deltas(t)
    rel = d["1234"] - d["1324"] + d["1423"]
    return {"deltas": {k: _scalar(v) for k, v in d.items()},
            "relation_1234_minus_1324_plus_1423": _scalar(rel)}


def cmd_purity(args):
    t = _read_tensor(args)
    pure, witness = inv.is_pure_exchange(t, full=args.full)
    out = {"pure": pure, "single_axis_ranks": list(inv.single_axis_ranks(t))}
    if witness is not None:
        out["witness"] = {"a": witness.a, "b": witness.b, "c": witness.c, "d": witness.d,
                          "ua_ub": _scalar(witness.lhs), "uc_ud": _scalar(witness.rhs)}
    out["purity_defects"] = {",".join(map(str, rows)): inv.purity_defect(t, rows)
                             for rows in inv.bipartitions(t.order)}
    return out


def cmd_bipartite_rank(args):
    t = _read_tensor(args)
    return {"rows": _parse_axes(args.rows),
            "rank": inv.bipartite_rank(t, _parse_axes(args.rows), args.tol)}


def cmd_lowerbound(args):
    return {"lower_bound": str(inv.rank_lower_bound(args.dims))}


def cmd_rank4(args):
    cert = rank4(_read_tensor(args))
    out = cert.to_json()
    out.update(decomposition_json(cert.decomposition))
    return out


def cmd_s3(args):
    t = _read_tensor(args)
    return {"in_s3_closure": in_s3_closure(t),
            "deltas": {k: _scalar(v) for k, v in inv.essential_deltas(t).items()}}


def cmd_s2(args):
    return {"s2_necessary": s2_closure_necessary(_read_tensor(args)),
            "label": "necessary test only"}


def cmd_stabdim(args):
    exact = args.mode != "approx"
    d, e = _parse_rational(args.delta), _parse_rational(args.epsilon)
    if not exact:
        d, e = complex(d), complex(e)
    k = stabilizer_dimension(d, e, exact=exact)
    return {"stabilizer_dimension": k, "s3_closure_dimension": 18 - (k + 1)}


def cmd_als(args):
    rep = als_fit(_read_tensor(args), args.rank, restarts=args.restarts,
                         max_iters=args.iters, seed=args.seed)
    out = {"residual": rep.residual, "max_factor_norm": rep.max_factor_norm,
           "blowup": bool(rep.blowup), "iterations": rep.iterations,
           "label": "border-rank estimate"}
    out.update(decomposition_json(rep.decomposition))
    return out


def cmd_sample(args):
    return sample(args.space, args.n, args.seed)


def cmd_state(args):
    if args.name in DECOMPOSITION_NAMES:
        return decomposition_json(builtin_decomposition(args.name))
    try:
        return to_json_obj(builtin_state(args.name))
    except KeyError as exc:
        raise InputError(str(exc)) from exc


def _add_common(p, tensor_input=True):
    if tensor_input:
        src = p.add_mutually_exclusive_group()
        src.add_argument("--in", dest="infile", help="tensor JSON file (default: stdin)")
        src.add_argument("--state", help=f"builtin state: {', '.join(STATE_NAMES)}")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="mode", action="store_const", const="exact")
    mode.add_argument("--approx", dest="mode", action="store_const", const="approx")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--seed", type=int, default=0)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text")
    p.set_defaults(fmt="json", mode=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="entrank", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, tensor_input=True, help=None):
        p = sub.add_parser(name, help=help)
        _add_common(p, tensor_input)
        p.set_defaults(func=func)
        return p

    add("classify", cmd_classify, help="classify a 2x2x2 tensor")
    add("decompose", cmd_decompose, help="explicit rank decomposition (3 or 4 qubits)")
    add("normal-form", cmd_normal_form, help="local-unitary normal form (3 qubits)")
    add("hyperdet", cmd_hyperdet, help="Cayley hyperdeterminant")
    add("delta", cmd_delta, help="4-qubit flattening determinants").add_argument(
        "--perm", help="permutation such as 1324 (default: the three essential ones)")
    add("purity", cmd_purity, help="purity tests").add_argument(
        "--full", action="store_true", help="enumerate every exchange relation")
    add("bipartite-rank", cmd_bipartite_rank, help="rank of a flattening").add_argument(
        "--rows", required=True, help="comma-separated 0-based row axes")
    add("lowerbound", cmd_lowerbound, tensor_input=False,
        help="dimension-count lower bound on the maximal rank").add_argument(
        "dims", type=int, nargs="+")
    add("rank4", cmd_rank4, help="rank certificate for 4 qubits")
    add("s3-closure", cmd_s3, help="membership in the closure of the rank-3 locus")
    add("s2-test", cmd_s2, help="necessary test for the closure of the rank-2 locus")
    p = add("stabdim", cmd_stabdim, tensor_input=False, help="stabilizer dimension count")
    p.add_argument("--delta", required=True)
    p.add_argument("--epsilon", required=True)
    p = add("als", cmd_als, help="ALS fit with r terms")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--restarts", type=int, default=10)
    p.add_argument("--iters", type=int, default=1000)
    p = add("sample", cmd_sample, tensor_input=False, help="random-tensor statistics")
    p.add_argument("--space", choices=["3q", "4q"], required=True)
    p.add_argument("-n", type=int, default=100)
    p = add("state", cmd_state, tensor_input=False, help="print a builtin state")
    p.add_argument("name", help=", ".join(STATE_NAMES + DECOMPOSITION_NAMES))
    return parser


def _text(obj, indent=0) -> str:
    pad = "  " * indent
    if _is_scalar_json(obj) or not isinstance(obj, (dict, list)):
        return pad + _inline(obj)
    lines = []
    items = obj.items() if isinstance(obj, dict) else ((None, v) for v in obj)
    for k, v in items:
        head = f"{pad}{k}:" if k is not None else f"{pad}-"
        if isinstance(v, (dict, list)) and v and not _is_scalar_json(v) and not _flat(v):
            lines.append(head)
            lines.append(_text(v, indent + 1))
        else:
            lines.append(f"{head} {_inline(v)}")
    return "\n".join(lines)


def _is_scalar_json(v) -> bool:
    return isinstance(v, dict) and set(v) == {"re", "im"}


def _flat(v) -> bool:
    return isinstance(v, list) and all(_is_scalar_json(x) or not isinstance(x, (dict, list)) for x in v)


def _inline(v) -> str:
    if _is_scalar_json(v):
        re, im = v["re"], v["im"]
        return f"{re}" if im in (0, 0.0, "0") else f"{re}{'' if str(im).startswith('-') else '+'}{im}i"
    if isinstance(v, list):
        return "[" + ", ".join(_inline(x) for x in v) + "]"
    return str(v)


def run(argv=None, stdout=None) -> int:
    """Run one CLI invocation; returns the exit code."""
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        report = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (PreconditionError, TensorError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    if args.fmt == "text":
        print(_text(report), file=stdout)
    else:
        print(json.dumps(report, sort_keys=True, default=str), file=stdout)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
