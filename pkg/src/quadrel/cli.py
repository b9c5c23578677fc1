"""Command line interface: keygen, attack, distinguish, catalog, repr, selftest.

Exit codes: 0 success, 1 honest failure (search budget exhausted, nothing
found), 2 usage or input error.  The seed comes from --seed, then the
QUADREL_SEED environment variable, then 0; it is always echoed.  Transcripts
hold no wall-clock data unless --timings is given, so equal inputs and seeds
give byte-identical files.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import linalg as la
from . import pfaffian as pf
from . import relations as rel
from .attack import full_attack
from .codes import SupportMultiplier, canonical_basis, goppa_multiplier, keygen
from .errors import Exhausted, NotFound, QuadrelError
from .formats import (format_json, format_kv, format_pair, format_secret, parse_pair,
                      parse_secret)
from .goppa_repr import to_goppa_representation
from .gf2m import GF2m

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("QUADREL_SEED")
    if env is not None:
        try:
            return int(env, 0)
        except ValueError:
            raise SystemExit(f"error: QUADREL_SEED={env!r} is not an integer")
    return 0


def _phase_rngs(seed: int, n: int) -> list[np.random.Generator]:
    """Independent generators per phase, derived from one seed."""
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(n)]


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise QuadrelError(f"cannot read {path}: {exc.strerror}") from exc


def _emit(text: str, path: str | None):
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _field(args) -> GF2m:
    mod = int(args.modulus, 0) if args.modulus else None
    return GF2m(args.m, mod)


def _regime_warning(n: int, m: int, r: int):
    if 3 * m - 3 < n <= 3 * r * m - 3:
        print(f"warning: n={n} lies in (3m-3, 3rm-3] = ({3 * m - 3}, {3 * r * m - 3}]; "
              "the generic-regime guarantee needs n > 3rm-3", file=sys.stderr)


# ---------------------------------------------------------------------------
# subcommands


def cmd_keygen(args) -> int:
    seed = _seed(args)
    mod = int(args.modulus, 0) if args.modulus else None
    (rng,) = _phase_rngs(seed, 1)
    key = keygen(args.m, args.n, args.r, rng, mod, budget=args.budget or 64)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "sk.txt").write_text(format_secret(key.F, key.x, key.gamma))
    (out / "pk.txt").write_text(la.format_matrix(key.public))
    print(format_kv({"seed": seed, "m": args.m, "n": args.n, "r": args.r,
                     "modulus": f"0x{key.F.modulus:x}", "dimension": key.public.shape[0],
                     "secret": str(out / "sk.txt"), "public": str(out / "pk.txt")}), end="")
    return EXIT_OK


def cmd_attack(args) -> int:
    seed = _seed(args)
    F = _field(args)
    public, fld = la.parse_matrix(_read(args.public))
    if fld is not None:
        raise QuadrelError("public key must be a binary matrix")
    n = public.shape[1]
    if args.r != 2:
        raise QuadrelError("only r = 2 is supported")
    _regime_warning(n, args.m, args.r)
    (rng,) = _phase_rngs(seed, 1)
    record = {"seed": seed, "m": args.m, "n": n, "r": args.r,
              "modulus": f"0x{F.modulus:x}"}
    try:
        tr = full_attack(F, public, rng, args.budget, args.solver_budget, args.threads,
                         seed=seed)
        code = EXIT_OK
    except Exhausted as exc:
        tr = getattr(exc, "transcript", None)
        code = EXIT_FAIL
    if tr is not None:
        record.update({"success": tr.success, "iterations": len(tr.iterations),
                       "shift": tr.shift, "dims": tr.dims})
        if tr.success:
            record.update({"x": [f"{v:x}" for v in tr.x], "y": [f"{v:x}" for v in tr.y],
                           "gamma": [f"{v:x}" for v in tr.gamma],
                           "repr_draws": tr.repr_draws, "verified": True})
        if args.timings:
            record["time"] = {k: round(v, 3) for k, v in tr.timings.items()}
            print(" ".join(f"{k}={v:.2f}s" for k, v in tr.timings.items()), file=sys.stderr)
    else:
        record["success"] = False
    _emit(format_kv(record), args.out)
    if args.json:
        full = dict(record)
        if tr is not None:
            full["log"] = tr.iterations
        Path(args.json).write_text(format_json(full))
    return code


def cmd_distinguish(args) -> int:
    seed = _seed(args)
    F = _field(args)
    code_mat, fld = la.parse_matrix(_read(args.code))
    if fld is not None:
        raise QuadrelError("code must be a binary matrix")
    _regime_warning(code_mat.shape[1], args.m, args.r)
    rng_basis, rng_solve = _phase_rngs(seed, 2)
    H = rel.frobenius_basis(F, code_mat, args.r, rng_basis)
    qcode = rel.crel_cmat(F, H)
    budget = args.budget or 20
    try:
        res = pf.find_rank2(F, qcode, rng_solve, budget, args.threads)
    except NotFound as exc:
        print(f"verdict=random attempts={len(exc.attempts)} seed={seed} cmat_dim={qcode.dim}")
        return EXIT_OK
    print(f"verdict=goppa attempts={len(res.attempts)} seed={seed} cmat_dim={qcode.dim}")
    if args.emit_matrix:
        Path(args.emit_matrix).write_text(la.format_matrix(res.matrix, F))
    return EXIT_OK


def _catalog_params(args, r: int, m: int) -> list[rel.TypeParams]:
    given = {k: getattr(args, k) for k in ("l", "u", "a", "b", "c", "d", "s")
             if getattr(args, k) is not None}
    if args.grid:
        return rel.enumerate_types(r, m, args.type)
    if given:
        return [rel.TypeParams(args.type, **given)]
    grid = rel.enumerate_types(r, m, args.type)
    if not grid:
        raise QuadrelError(f"no Type {args.type} parameters exist for r={r}, m={m}")
    return grid[:1]


def cmd_catalog(args) -> int:
    F, x, gamma = parse_secret(_read(args.key))
    r = len(gamma) - 1
    sm = SupportMultiplier(x, goppa_multiplier(F, x, gamma))
    A = canonical_basis(F, sm, r)
    ok = True
    for t in _catalog_params(args, r, F.m):
        M = rel.make_type(F, t, r, gamma)
        member = rel.membership_check(F, M, A)
        ok &= member
        if not args.quiet:
            sys.stdout.write(la.format_matrix(M, F))
        print(f"type={t.tag} params={t.describe()} member={str(member).lower()} "
              f"rank={la.rank(F, M)}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_repr(args) -> int:
    seed = _seed(args)
    F, sm, _ = parse_pair(_read(args.pair))
    (rng,) = _phase_rngs(seed, 1)
    try:
        res = to_goppa_representation(F, sm, args.r, rng, args.budget)
    except Exhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    _emit(format_pair(F, res.sm, res.gamma), args.out)
    print(f"seed={seed} draws={res.draws}", file=sys.stderr)
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .selftest import run_selftest
    seed = _seed(args)
    results = run_selftest(seed, inject_fault=args.inject_fault)
    failed = 0
    for name, passed, detail in results:
        print(f"{'PASS' if passed else 'FAIL'} {name}" + (f" ({detail})" if detail else ""))
        failed += not passed
    print(f"seed={seed} passed={len(results) - failed} failed={failed}")
    return EXIT_OK if failed == 0 else EXIT_FAIL


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None,
                        help="random seed (default: $QUADREL_SEED, else 0)")
    common.add_argument("--threads", type=int, default=1,
                        help="parallel specialization attempts (default 1)")
    common.add_argument("--budget", type=int, default=None,
                        help="search budget of the subcommand (see its help)")
    common.add_argument("--modulus", default=None,
                        help="field modulus as an integer, e.g. 0x25 (default: built-in)")

    p = argparse.ArgumentParser(prog="quadrel", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    k = sub.add_parser("keygen", parents=[common], help="generate a Goppa key pair")
    k.add_argument("--m", type=int, required=True)
    k.add_argument("--n", type=int, required=True)
    k.add_argument("--r", type=int, default=2)
    k.add_argument("--out-dir", required=True)
    k.set_defaults(func=cmd_keygen)

    a = sub.add_parser("attack", parents=[common],
                       help="recover a support/multiplier pair (budget: outer iterations, default 4m)")
    a.add_argument("--public", required=True)
    a.add_argument("--m", type=int, required=True)
    a.add_argument("--r", type=int, default=2)
    a.add_argument("--solver-budget", type=int, default=20,
                   help="specializations per rank-2 search (default 20)")
    a.add_argument("--out", default=None, help="key=value transcript (default stdout)")
    a.add_argument("--json", default=None, help="also write a JSON transcript")
    a.add_argument("--timings", action="store_true", help="include wall times in the transcript")
    a.set_defaults(func=cmd_attack)

    d = sub.add_parser("distinguish", parents=[common],
                       help="look for a rank-2 relation (budget: specializations, default 20)")
    d.add_argument("--code", required=True)
    d.add_argument("--m", type=int, required=True)
    d.add_argument("--r", type=int, default=2)
    d.add_argument("--emit-matrix", default=None)
    d.set_defaults(func=cmd_distinguish)

    c = sub.add_parser("catalog", parents=[common], help="structured relations of a secret key")
    c.add_argument("--key", required=True)
    c.add_argument("--type", type=int, required=True, choices=range(1, 6))
    c.add_argument("--grid", action="store_true", help="all parameter sets")
    c.add_argument("--quiet", action="store_true", help="verdict lines only")
    for name in ("l", "u", "a", "b", "c", "d", "s"):
        c.add_argument(f"--{name}", type=int, default=None)
    c.set_defaults(func=cmd_catalog)

    r = sub.add_parser("repr", parents=[common],
                       help="convert a pair into a Goppa representation (budget: draws, default 8*2^m)")
    r.add_argument("--pair", required=True)
    r.add_argument("--r", type=int, default=2)
    r.add_argument("--out", default=None)
    r.set_defaults(func=cmd_repr)

    s = sub.add_parser("selftest", parents=[common], help="run the invariant suite")
    s.add_argument("--inject-fault", action="store_true",
                   help="corrupt one catalog matrix to exercise the failure path")
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (NotFound, Exhausted) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (QuadrelError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
