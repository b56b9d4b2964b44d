"""Command-line surface: seed construction, mutation, verification sweeps.

Exit codes: 0 success, 2 validation failure, 3 incompatible mutation step.
All output is JSON with sorted keys; rationals are "p/q" strings.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import dbc, jsonio, verify
from .cgl import NFPoly, nf_mul, shipped_presentations
from .coxeter import (
    InvalidCartanType,
    NonReducedWordError,
    cartan_init,
    xi_enumerate,
    xi_is_member,
)
from .seedcore import NotExchangeable, IncompatibleSeed, graded_reduce, mutate_seed


class ValidationFailure(Exception):
    def __init__(self, message):
        super().__init__(message)
        self.payload = {"error": message}


def _parse_type(type_str: str, rank) :
    s = type_str.strip()
    if rank is not None:
        return cartan_init(s, int(rank))
    if len(s) >= 2 and s[0].isalpha():
        return cartan_init(s[0], int(s[1:]))
    raise ValidationFailure(f"cannot parse type {type_str!r}; give e.g. A2 or --type A --rank 2")


def _parse_word(text: str | None) -> tuple[int, ...]:
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ValidationFailure(f"bad word {text!r}; expected comma-separated letters") from None


def _parse_sigma(text: str, n: int) -> tuple[int, ...]:
    if text == "id":
        return tuple(range(n))
    if text == "wN":
        return None  # resolved by caller with the double-word data
    perm = tuple(int(x) - 1 for x in text.split(","))
    if sorted(perm) != list(range(n)):
        raise ValidationFailure(f"{text!r} is not a permutation of 1..{n}")
    if not xi_is_member(perm):
        raise ValidationFailure(f"{text!r} fails the interval test")
    return perm


def _emit(payload: dict, out_path: str | None) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _build_context(args):
    cartan = _parse_type(args.type, getattr(args, "rank", None))
    w = _parse_word(args.w)
    u = _parse_word(args.u)
    try:
        pres = dbc.bowtie_build(cartan, w, u)
    except NonReducedWordError as exc:
        raise ValidationFailure(str(exc)) from None
    return cartan, w, u, pres


def cmd_seed(args) -> int:
    cartan, w, u, pres = _build_context(args)
    dwd = pres.dwd
    payload: dict = {
        "cartan": jsonio.encode_cartan(cartan),
        "w": list(w),
        "u": list(u),
        "double_word": jsonio.encode_double_word(dwd),
    }
    if args.bz or args.mbz:
        variant = "modified" if args.mbz else "plain"
        data = dbc.bz_seed(
            cartan, u_word=u, w_word=w, variant=variant, convention=args.convention
        )
        if args.reduce:
            payload["seed"] = jsonio.encode_seed(graded_reduce(data.seed, cartan.rank))
            payload["reduced_from"] = jsonio.encode_bz(data)
        else:
            payload["seed"] = jsonio.encode_bz(data)
    elif args.bfz:
        b = dbc.bfz_matrix(dwd)
        payload["seed"] = {
            "B": [[b.column(k)[j] for k in b.ex] for j in range(dwd.size)],
            "ex": [k + 1 for k in b.ex],
        }
    else:
        if args.sigma == "all-xi":
            seeds = []
            for sigma in xi_enumerate(max(dwd.size, 1)) if dwd.size else [()]:
                data = dbc.sigma_seed(pres, sigma)
                entry = jsonio.encode_seed(data.seed)
                entry["sigma"] = [x + 1 for x in sigma]
                seeds.append(entry)
            payload["seeds"] = seeds
        else:
            sigma = _parse_sigma(args.sigma, dwd.size)
            if sigma is None:
                sigma = dbc.w0_permutation(dwd)
            data = dbc.sigma_seed(pres, sigma)
            entry = jsonio.encode_seed(data.seed)
            entry["sigma"] = [x + 1 for x in data.sigma]
            payload["seed"] = entry
    _emit(payload, args.out)
    return 0


def cmd_mutate(args) -> int:
    cartan, w, u, pres = _build_context(args)
    dwd = pres.dwd
    sigma = _parse_sigma(args.sigma, dwd.size)
    if sigma is None:
        sigma = dbc.w0_permutation(dwd)
    seed = dbc.sigma_seed(pres, sigma).seed
    steps = []
    for step in _parse_word(args.seq):
        k = step - 1
        try:
            seed = mutate_seed(seed, k)
        except (NotExchangeable, IncompatibleSeed) as exc:
            steps.append({"k": step, "compatible": False, "error": str(exc)})
            _emit({"steps": steps, "error": str(exc)}, args.out)
            return 3
        steps.append({"k": step, "compatible": True})
    _emit({"seed": jsonio.encode_seed(seed), "steps": steps}, args.out)
    return 0


def cmd_verify(args) -> int:
    cartan, w, u, _ = _build_context(args)
    results = verify.verify_pair(cartan, w, u, all_xi=args.all_xi, fault=args.self_test_fault)
    payload = {
        "cartan": jsonio.encode_cartan(cartan),
        "w": list(w),
        "u": list(u),
        "checks": [{"name": r.name, "ok": r.ok, "detail": r.detail} for r in results],
        "ok": all(r.ok for r in results),
    }
    _emit(payload, args.out)
    return 0 if payload["ok"] else 1


def cmd_xi_list(args) -> int:
    n = args.n
    if n < 1:
        raise ValidationFailure("n must be at least 1")
    perms = [[x + 1 for x in sigma] for sigma in xi_enumerate(n)]
    _emit({"n": n, "count": len(perms), "permutations": perms}, args.out)
    return 0


def cmd_cgl_nf(args) -> int:
    presets = shipped_presentations()
    if args.preset not in presets:
        raise ValidationFailure(f"unknown preset {args.preset!r}; have {sorted(presets)}")
    pres, _ = presets[args.preset]
    word = _parse_word(args.word)
    out = NFPoly.one(pres.n)
    for letter in word:
        if not 1 <= letter <= pres.n:
            raise ValidationFailure(f"generator {letter} out of range 1..{pres.n}")
        out = nf_mul(pres, out, NFPoly.generator(pres.n, letter - 1))
    _emit(
        {
            "preset": args.preset,
            "word": list(word),
            "normal_form": jsonio.encode_nfpoly(out),
            "presentation": jsonio.encode_presentation(pres),
        },
        args.out,
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dbseeds")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--type", required=True, help="finite type, e.g. A2 (or letter with --rank)")
        p.add_argument("--rank", type=int, default=None)
        p.add_argument("--w", default="", help="comma-separated reduced word")
        p.add_argument("--u", default="", help="comma-separated reduced word")
        p.add_argument("--out", default=None)

    p_seed = sub.add_parser("seed", help="construct seeds")
    common(p_seed)
    p_seed.add_argument("--sigma", default="id", help='permutation, "id", "wN", or "all-xi"')
    p_seed.add_argument("--bz", action="store_true")
    p_seed.add_argument("--mbz", action="store_true")
    p_seed.add_argument("--bfz", action="store_true")
    p_seed.add_argument("--reduce", action="store_true")
    p_seed.add_argument("--convention", default="bz-labels", choices=["bz-labels", "mbz-labels"])
    p_seed.set_defaults(func=cmd_seed)

    p_mut = sub.add_parser("mutate", help="apply a mutation sequence")
    common(p_mut)
    p_mut.add_argument("--sigma", default="id")
    p_mut.add_argument("--seq", required=True, help="comma-separated 1-based indices")
    p_mut.set_defaults(func=cmd_mutate)

    p_ver = sub.add_parser("verify", help="run the named checks for one word pair")
    common(p_ver)
    p_ver.add_argument("--all-xi", action="store_true")
    p_ver.add_argument("--self-test-fault", action="store_true", help=argparse.SUPPRESS)
    p_ver.set_defaults(func=cmd_verify)

    p_xi = sub.add_parser("xi-list", help="enumerate interval permutations")
    p_xi.add_argument("--n", type=int, required=True)
    p_xi.add_argument("--out", default=None)
    p_xi.set_defaults(func=cmd_xi_list)

    p_nf = sub.add_parser("cgl-nf", help="normal form of a generator word in a shipped presentation")
    p_nf.add_argument("--preset", required=True)
    p_nf.add_argument("--word", required=True)
    p_nf.add_argument("--out", default=None)
    p_nf.set_defaults(func=cmd_cgl_nf)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationFailure as exc:
        print(json.dumps(exc.payload, sort_keys=True), file=sys.stderr)
        return 2
    except (InvalidCartanType, NonReducedWordError) as exc:
        print(json.dumps({"error": str(exc)}, sort_keys=True), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
