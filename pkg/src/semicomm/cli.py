"""``semicomm`` command-line interface.

Exit codes: 0 success, 1 a predicate was violated, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import constructions as C
from .algebra import unital_algebra_basis
from .errors import InputError, SemicommError
from .exact import Matrix, matrix_from_json, matrix_to_json, parse_rational
from .order import (
    SignClass,
    commutator_sign,
    invariant_ideal_chain,
    is_ideal_irreducible,
    is_positive,
    refined_bound,
    sign_class,
)
from .search import search_dims, search_idempotent_even
from .verifier import THEOREM_IDS, Outcome, check, run_suite, summarize

__all__ = ["main", "build_parser"]

EXIT_OK, EXIT_VIOLATED, EXIT_USAGE = 0, 1, 2

CONSTRUCT_NAMES = ("jordan", "cycle", "companion", "permutation", "gerstenhaber",
                   "intertwiners", "idem7", "idem3", "catalan", "random-pair")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _Usage(f"{self.prog}: error: {message}")


class _Usage(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _load_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read file ({exc.strerror})", path) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}",
                         path) from None


def _load_pair(path: str) -> tuple[Matrix, Matrix]:
    obj = _load_json(path)
    if not isinstance(obj, dict) or "A" not in obj or "B" not in obj:
        raise InputError('expected a pair object {"A": ..., "B": ...}', f"{path}:$")
    a = matrix_from_json(obj["A"], f"{path}:$.A")
    b = matrix_from_json(obj["B"], f"{path}:$.B")
    return a, b


def _load_generators(path: str) -> tuple[list[str], list[Matrix]]:
    """A matrix, a list of matrices, or an object of named matrices."""
    obj = _load_json(path)
    if isinstance(obj, list):
        names = [f"M{i}" for i in range(len(obj))]
        return names, [matrix_from_json(m, f"{path}:$[{i}]") for i, m in enumerate(obj)]
    if isinstance(obj, dict) and "entries" in obj:
        return ["M0"], [matrix_from_json(obj, f"{path}:$")]
    if isinstance(obj, dict):
        names = sorted(obj)
        return names, [matrix_from_json(obj[k], f"{path}:$.{k}") for k in names]
    raise InputError("expected a matrix, a list of matrices or an object of matrices",
                     f"{path}:$")


def _word_label(word, names) -> str:
    if not word:
        return "I"
    if all(len(n) == 1 for n in names):
        return "".join(names[g] for g in word)
    return "*".join(names[g] for g in word)


def _emit(args, payload: dict, text: str) -> None:
    print(_dump(payload) if args.json else text)


# ----------------------------------------------------------------------
# Commands
# ----------------------------------------------------------------------

def _cmd_analyze(args) -> int:
    a, b = _load_pair(args.pair)
    if a.shape != b.shape or not a.is_square:
        raise InputError(f"A and B must be square of equal size, got {a.shape} and {b.shape}",
                         args.pair)
    positive = is_positive(a) and is_positive(b)
    report = {
        "n": a.rows,
        "sign_A": str(sign_class(a)),
        "sign_B": str(sign_class(b)),
        "sign_commutator": str(commutator_sign(a, b)),
        "semi_commute": commutator_sign(a, b) is not SignClass.MIXED,
        "irreducible_A": is_ideal_irreducible(a) if is_positive(a) else None,
        "irreducible_B": is_ideal_irreducible(b) if is_positive(b) else None,
        "irreducible_A_plus_B": is_ideal_irreducible(a + b) if positive else None,
        "chain_block_sizes": list(invariant_ideal_chain(a + b).block_sizes) if positive else None,
        "chain_permutation": list(invariant_ideal_chain(a + b).permutation) if positive else None,
        "refined_bound": refined_bound(a, b) if positive else None,
        "dim": unital_algebra_basis([a, b]).dim,
    }
    width = max(map(len, report))
    text = "\n".join(f"{k.ljust(width)}  {'-' if v is None else v}" for k, v in report.items())
    _emit(args, report, text)
    return EXIT_OK


def _cmd_dim(args) -> int:
    names, gens = _load_generators(args.matrices)
    basis = unital_algebra_basis(gens)
    words = [_word_label(w, names) for w in basis.basis_words]
    payload = {"dim": basis.dim, "generators": names, "words": words}
    if args.basis:
        payload["basis"] = [matrix_to_json(m) for m in basis.basis_matrices]
    if args.json:
        print(_dump(payload))
    else:
        print(basis.dim)
        print("words: " + " ".join(words))
        if args.basis:
            print(_dump(payload["basis"]))
    return EXIT_OK


def _require(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise _Usage(f"construct {args.name}: --{name.replace('_', '-')} is required")


def _cmd_construct(args) -> int:
    name = args.name
    if name in ("jordan", "cycle", "gerstenhaber", "catalan"):
        _require(args, "n")
    if name == "jordan":
        out = matrix_to_json(C.jordan_block(args.n))
    elif name == "cycle":
        out = matrix_to_json(C.cycle(args.n))
    elif name == "companion":
        _require(args, "coeffs")
        try:
            coeffs = [parse_rational(c) for c in args.coeffs]
        except ValueError as exc:
            raise InputError(str(exc), "--coeffs") from None
        out = matrix_to_json(C.companion(coeffs))
    elif name == "permutation":
        _require(args, "sizes")
        out = matrix_to_json(C.permutation_from_cycle_type(args.sizes))
    elif name == "gerstenhaber":
        a, b = C.gerstenhaber_witness(args.n)
        out = {"A": matrix_to_json(a), "B": matrix_to_json(b)}
    elif name == "intertwiners":
        _require(args, "m", "n")
        out = {"m": args.m, "n": args.n,
               "basis": [matrix_to_json(u) for u in C.intertwiner_basis(args.m, args.n)]}
    elif name in ("idem7", "idem3", "catalan"):
        pair = {"idem7": C.idempotent_pair_7x7, "idem3": C.idempotent_pair_3x3}.get(
            name, lambda: C.catalan_idempotent_pair(args.n))()
        out = {"E": matrix_to_json(pair.e), "F": matrix_to_json(pair.f)}
    else:
        _require(args, "n", "seed", "family")
        a, b = C.random_semicommuting_pair(args.n, args.family, args.seed)
        out = {"A": matrix_to_json(a), "B": matrix_to_json(b)}
    print(_dump(out))
    return EXIT_OK


def _cmd_verify(args) -> int:
    if args.instance is not None:
        if args.theorem is None:
            raise _Usage("verify --instance needs --theorem")
        obj = _load_json(args.instance)
        reports = [check(args.theorem, obj, case=Path(args.instance).name)]
    else:
        if args.seed is None:
            raise _Usage("verify: randomized suite needs --seed")
        theorems = None if args.theorem is None else [args.theorem]
        reports = run_suite(args.n_max, args.trials, args.seed, theorems, jobs=args.jobs)
    summary = summarize(reports)
    violated = [r for r in reports if r.outcome is Outcome.VIOLATED]
    if args.json:
        payload = {"summary": summary, "reports": [r.to_json() for r in reports]}
        if len(reports) == 1:
            payload = reports[0].to_json()
        print(_dump(payload))
    elif len(reports) == 1:
        r = reports[0]
        print(f"{r.theorem_id}: {r.outcome.value}  [{r.instance_digest}]")
        for key, value in r.details.items():
            print(f"  {key}: {json.dumps(value, sort_keys=True)}")
    else:
        cols = [o.value for o in Outcome]
        print(f"{'theorem':<10}" + "".join(f"{c:>16}" for c in cols))
        for tid, row in summary.items():
            print(f"{tid:<10}" + "".join(f"{row[c]:>16}" for c in cols))
        for r in violated:
            print(f"VIOLATED {r.theorem_id} {r.case} {json.dumps(r.details, sort_keys=True)}")
    return EXIT_VIOLATED if violated else EXIT_OK


def _write_witnesses(witnesses, out) -> list[str]:
    if out is None:
        return []
    directory = Path(out)
    directory.mkdir(parents=True, exist_ok=True)
    return [str(w.save(directory)) for w in witnesses]


def _cmd_search(args) -> int:
    if args.seed is None:
        raise _Usage(f"search {args.what}: --seed is required")
    if args.what == "dims":
        attained, witnesses = search_dims(args.n, args.families, args.trials, args.seed,
                                          jobs=args.jobs)
        top = args.n * (args.n + 1) // 2
        missing = [k for k in range(args.n, top + 1) if k not in attained]
        payload = {"n": args.n, "trials": args.trials, "seed": args.seed,
                   "attained": sorted(attained), "not_found_in_trials": missing}
    else:
        best, witnesses = search_idempotent_even(args.n, args.trials, args.seed, jobs=args.jobs)
        payload = {"n": args.n, "trials": args.trials, "seed": args.seed,
                   "max_dim_found": best, "bound": 2 * args.n,
                   "attained": [w.dim for w in witnesses]}
    payload["witness_files"] = _write_witnesses(witnesses, args.out)
    payload["witnesses"] = [{"dim": w.dim, "family": w.family, "trial": w.seed_path[1]}
                            for w in witnesses]
    if args.json:
        print(_dump(payload))
    else:
        print(f"{'dim':>5}  {'family':<22}{'trial':>7}")
        for w in witnesses:
            print(f"{w.dim:>5}  {w.family:<22}{w.seed_path[1]:>7}")
        if args.what == "dims":
            absent = ", ".join(map(str, payload["not_found_in_trials"])) or "none"
            print(f"not found in {args.trials} trials: {absent}")
        else:
            print(f"max dim found: {payload['max_dim_found']} (bound {2 * args.n})")
        for f in payload["witness_files"]:
            print(f"wrote {f}")
    return EXIT_OK


# ----------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="structured JSON output")

    p = _Parser(prog="semicomm", description="Exact algebras of semi-commuting matrices.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    q = sub.add_parser("analyze", parents=[common], help="order structure of a pair")
    q.add_argument("pair")
    q.set_defaults(func=_cmd_analyze)

    q = sub.add_parser("dim", parents=[common], help="dimension and word basis")
    q.add_argument("matrices")
    q.add_argument("--basis", action="store_true", help="also dump basis matrices")
    q.set_defaults(func=_cmd_dim)

    q = sub.add_parser("construct", parents=[common], help="print a named construction")
    q.add_argument("name", choices=CONSTRUCT_NAMES)
    q.add_argument("--n", type=int)
    q.add_argument("--m", type=int)
    q.add_argument("--coeffs", nargs="+", help="companion bottom row a_0 ... a_{n-1}")
    q.add_argument("--sizes", type=int, nargs="+", help="cycle type of a permutation")
    q.add_argument("--seed", type=int)
    q.add_argument("--family", choices=C.FAMILIES)
    q.set_defaults(func=_cmd_construct)

    q = sub.add_parser("verify", parents=[common], help="check theorem predicates")
    q.add_argument("--theorem", choices=THEOREM_IDS)
    q.add_argument("--n-max", type=int, default=6)
    q.add_argument("--trials", type=int, default=100)
    q.add_argument("--seed", type=int)
    q.add_argument("--instance")
    q.add_argument("--jobs", type=int, default=1)
    q.set_defaults(func=_cmd_verify)

    q = sub.add_parser("search", help="seeded dimension search")
    ssub = q.add_subparsers(dest="what", required=True, parser_class=_Parser)
    for what, helptext in (("dims", "attainable dimensions of positive pairs"),
                           ("idem-even", "idempotent pairs at even n")):
        s = ssub.add_parser(what, parents=[common], help=helptext)
        s.add_argument("--n", type=int, required=True)
        s.add_argument("--trials", type=int, default=1000)
        s.add_argument("--seed", type=int)
        s.add_argument("--out")
        s.add_argument("--jobs", type=int, default=1)
        if what == "dims":
            s.add_argument("--families", nargs="+", choices=C.FAMILIES)
        s.set_defaults(func=_cmd_search)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _Usage as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else EXIT_OK
    except SemicommError as exc:
        print(f"semicomm: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
