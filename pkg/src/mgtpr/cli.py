"""Command line interface.

Exit status: 0 on success, 1 when a derivation gets stuck or a verification
fails, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources
from pathlib import Path

import numpy as np

from . import analytics
from .errors import MGError
from .fock import represent_state
from .grammar import Lexicon, load_lexicon, parse_lexicon
from .harmony import delta_table, extract_hmg, harmony_series, state_vectors
from .processor import DerivationTrace, Status, derive
from .schemes import CompressedScheme, embedding_depth, get_scheme
from .verify import homomorphism_suite

SCHEMES = ("faithful", "arithmetic", "fractal")


def bundled_lexicon_text() -> str:
    return resources.files("mgtpr").joinpath("data/adams.lex").read_text(encoding="utf-8")


def _load(path: str | None) -> Lexicon:
    return parse_lexicon(bundled_lexicon_text()) if path is None else load_lexicon(path)


def _dense_states(trace: DerivationTrace, scheme) -> np.ndarray:
    vecs = state_vectors(trace, scheme)
    if isinstance(scheme, CompressedScheme):
        return analytics.trace_matrix(vecs)
    keys = sorted({k for v in vecs for k in v.terms}, key=repr)
    index = {k: n for n, k in enumerate(keys)}
    M = np.zeros((len(vecs), len(keys)))
    for r, v in enumerate(vecs):
        for k, c in v.terms.items():
            M[r, index[k]] = float(c)
    return M


def _need_success(trace: DerivationTrace) -> None:
    if trace.status is not Status.SUCCESS:
        raise _Stuck()


class _Stuck(Exception):
    pass


# ---------------------------------------------------------------- commands

def cmd_derive(args, lex: Lexicon, out: Path) -> int:
    trace = derive(lex)
    text = trace.to_json() if args.trace_format == "json" else trace.to_text()
    suffix = "json" if args.trace_format == "json" else "txt"
    (out / f"trace.{suffix}").write_text(text)
    sys.stdout.write(text)
    return 0 if trace.status is Status.SUCCESS else 1


def cmd_represent(args, lex: Lexicon, out: Path) -> int:
    trace = derive(lex)
    scheme = get_scheme(args.scheme, lex)
    if isinstance(scheme, CompressedScheme):
        D = embedding_depth(trace.states)
        for k, w in enumerate(trace.states, 1):
            v = scheme.represent_state(w, D)
            rows = ["index,value"] + [f"{i},{x:.12g}" for i, x in enumerate(v)]
            (out / f"state_{k}_{scheme.name}.csv").write_text("\n".join(rows) + "\n")
        print(f"{len(trace.states)} states, dimension {scheme.dimension(D)}")
    else:
        for k, w in enumerate(trace.states, 1):
            (out / f"state_{k}_faithful.txt").write_text(represent_state(w).render() + "\n")
        print(f"{len(trace.states)} states written in sparse form")
    (out / f"scheme_{args.scheme}.txt").write_text(scheme.manifest())
    return 0 if trace.status is Status.SUCCESS else 1


def cmd_harmony(args, lex: Lexicon, out: Path) -> int:
    trace = derive(lex)
    _need_success(trace)
    scheme = get_scheme(args.scheme, lex)
    series = harmony_series(trace, scheme)
    (out / f"harmony_{scheme.name}.csv").write_text(series.to_csv())
    (out / f"delta_{scheme.name}.csv").write_text(delta_table(trace, series))
    sys.stdout.write(series.to_csv())
    tol = args.tolerance
    if not (all(h <= tol for h in series.values) and abs(series.values[-1]) <= tol):
        print("harmony values are not all non-positive", file=sys.stderr)
        return 1
    return 0


def cmd_hmg(args, lex: Lexicon, out: Path) -> int:
    trace = derive(lex)
    _need_success(trace)
    scheme = get_scheme(args.scheme, lex)
    W = extract_hmg(trace, harmony_series(trace, scheme))
    text = W.render()
    (out / f"hmg_{scheme.name}.lex").write_text(text)
    sys.stdout.write(text)
    return 0


def cmd_pca(args, lex: Lexicon, out: Path) -> int:
    trace = derive(lex)
    _need_success(trace)
    scheme = get_scheme(args.scheme, lex)
    Z = analytics.ztransform(_dense_states(trace, scheme))
    res = analytics.pca(Z, 2)
    analytics.export_phase_portrait(res.projections, out / f"pca_{scheme.name}", title=f"{scheme.name} trace")
    sys.stdout.write(analytics.portrait_csv(res.projections))
    return 0


def cmd_verify(args, lex: Lexicon, out: Path) -> int:
    checks = homomorphism_suite(lex)
    for c in checks:
        print(f"{'PASS' if c.passed else 'FAIL'}  {c.name}  {c.detail}".rstrip())
    return 0 if all(c.passed for c in checks) else 1


COMMANDS = {
    "derive": cmd_derive,
    "represent": cmd_represent,
    "harmony": cmd_harmony,
    "hmg": cmd_hmg,
    "pca": cmd_pca,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mgtpr", description="Minimalist grammar derivations in tensor product spaces.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("lexicon", nargs="?", help="lexicon file (default: bundled example)")
        sp.add_argument("--scheme", choices=SCHEMES, default="faithful")
        sp.add_argument("--out", default=".", help="output directory")
        sp.add_argument("--tolerance", type=float, default=1e-9)
        sp.add_argument("--trace-format", choices=("text", "json"), default="text")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        lex = _load(args.lexicon)
        return COMMANDS[args.command](args, lex, out)
    except _Stuck:
        print("derivation is stuck", file=sys.stderr)
        return 1
    except (MGError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
