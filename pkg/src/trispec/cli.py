"""Command line front end: compute, verify, search, export.

Exit codes: 0 success, 1 verification failures, 2 usage or parse errors,
3 numerical failures, 4 I/O errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations
from math import comb

import numpy as np

from . import __version__
from .constructions import (
    GcbSpec,
    complete_family,
    eigvec_bc,
    eigvec_c,
    eigvec_matrix,
    eigvec_residual,
    gcb_closed_form_spectrum,
    gcb_family,
    gcb_lambda,
    parse_construction,
)
from .extremal import check_counting, check_overlap, check_rigidity, phi_exact
from .families import (
    EmptyFamilyError,
    FamilyParseError,
    TriangleFamily,
    family_to_text,
    load_family,
    parse_family,
    random_families,
    support_graph,
)
from .incidence import (
    build_delta0,
    build_delta1,
    build_laplacian,
    exact_rank,
    harmonic_dimension,
    write_matrix_market,
)
from .spectra import (
    SpectralError,
    eigenvalues_symmetric,
    lambda_of,
    spectral_report,
    verify_min_gap,
)

TOLERANCES = {
    "eigenvalue_abs": 1e-8,
    "cluster_radius": 1e-6,
    "min_gap": 1e-7,
    "round_trip": 1e-10,
    "ceil_guard": 1e-9,
}

_CONSTRUCTIONS = ("kn", "gcb", "frob", "phi-lb")
_RANDOMIZED_SUITES = {"hodge", "mingap", "overlap", "counting", "all"}

_MATRIX_KINDS = {
    "d0": "d0",
    "delta0": "d0",
    "d1": "d1",
    "delta1": "d1",
    "l0": "L0_up",
    "l0up": "L0_up",
    "l1down": "L1_down",
    "l1up": "L1_up",
    "l2down": "L2_down",
    "l1": "L1_total",
    "l1total": "L1_total",
}


def _worker_count() -> int:
    raw = os.environ.get("TRISPEC_THREADS", "").strip()
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise ValueError(f"TRISPEC_THREADS must be an integer, got {raw!r}")
    return max(1, os.cpu_count() or 1)


def _parallel_map(fn, items: list) -> list:
    # Results come back in input order; printing stays in the main thread.
    workers = min(_worker_count(), len(items))
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _load_source(token: str) -> TriangleFamily:
    if token == "-":
        return parse_family(sys.stdin.read())
    if ":" in token and token.split(":", 1)[0] in _CONSTRUCTIONS:
        return parse_construction(token)
    return load_family(token)


def _manifest(args, input_text: str, outputs: list[str], started: float) -> dict:
    return {
        "command": "trispec " + " ".join(args.argv),
        "input_sha256": hashlib.sha256(input_text.encode("utf-8")).hexdigest(),
        "version": __version__,
        "tolerances": TOLERANCES,
        "timing_seconds": time.monotonic() - started,
        "outputs": outputs,
    }


def _maybe_write_manifest(args, input_text: str, outputs: list[str], started: float) -> None:
    path = getattr(args, "manifest", None)
    if not path:
        return
    data = _manifest(args, input_text, outputs, started)
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(data, handle, sort_keys=True, indent=2)
        handle.write("\n")


# ---------------------------------------------------------------------------
# Verification suites.


class _Suite:
    def __init__(self, name: str):
        self.name = name
        self.lines: list[str] = []
        self.failures = 0

    def check(self, ok: bool, label: str, detail: str = "") -> None:
        if not ok:
            self.failures += 1
        tag = "ok" if ok else "FAIL"
        self.lines.append(f"{tag} {self.name} {label}" + (f" {detail}" if detail else ""))


def _intro_families() -> list[tuple[str, TriangleFamily]]:
    t1 = TriangleFamily(((1, 2, 3),))
    t2 = TriangleFamily(((1, 2, 3), (1, 2, 4)))
    t3 = TriangleFamily(((1, 2, 3), (1, 2, 4), (1, 3, 4)))
    return [("intro:1", t1), ("intro:2", t2), ("intro:3", t3), ("intro:4", complete_family(4))]


def _grid_families() -> list[tuple[str, TriangleFamily]]:
    fams = _intro_families()
    fams += [(f"kn:{n}", complete_family(n)) for n in range(3, 9)]
    fams += [
        (f"gcb:{c},{b}", gcb_family(GcbSpec(c, b)))
        for c in range(3, 6)
        for b in range(1, 4)
    ]
    return fams


def _named_random(args) -> list[tuple[str, TriangleFamily]]:
    fams = random_families(args.random, args.seed, max_vertices=args.max_vertices)
    return [(f"random:{i}", fam) for i, fam in enumerate(fams)]


def _suite_hodge(args) -> _Suite:
    suite = _Suite("hodge")

    def one(item):
        label, fam = item
        graph = support_graph(fam)
        d0 = build_delta0(graph).entries
        d1 = build_delta1(fam, graph).entries
        composite_zero = not np.any(d1 @ d0)
        r0 = exact_rank(d0)
        r1 = exact_rank(d1)
        harmonic = harmonic_dimension(fam)
        edges = d0.shape[0]
        rank_identity = r0 + r1 + harmonic == edges
        up = eigenvalues_symmetric((d1.T @ d1).astype(float))
        down = eigenvalues_symmetric((d1 @ d1.T).astype(float))
        pos_up = up[edges - r1 :]
        pos_down = down[len(fam) - r1 :]
        gap = float(np.max(np.abs(pos_up - pos_down))) if r1 else 0.0
        return label, composite_zero, rank_identity, gap, r0, r1, harmonic

    for label, zero, ranks, gap, r0, r1, harmonic in _parallel_map(one, _named_random(args)):
        suite.check(zero, f"{label} d1*d0=0")
        suite.check(ranks, f"{label} rank split", f"r0={r0} r1={r1} harmonic={harmonic}")
        suite.check(gap <= 1e-8, f"{label} up/down spectra", f"residual={gap:.3e}")
    return suite


def _suite_mingap(args) -> _Suite:
    suite = _Suite("mingap")
    corpus = _grid_families() + _named_random(args)
    for (label, _), check in zip(corpus, _parallel_map(lambda it: verify_min_gap(it[1]), corpus)):
        suite.check(check.ok, label, f"residual={check.residual:.3e}")
    return suite


def _suite_overlap(args) -> _Suite:
    suite = _Suite("overlap")
    corpus = _grid_families() + _named_random(args)
    for (label, _), cert in zip(corpus, _parallel_map(lambda it: check_overlap(it[1]), corpus)):
        suite.check(cert.passed, label, f"n={cert.n} d_e={cert.min_edge_codegree}")
    k5 = check_overlap(complete_family(5))
    suite.check(
        k5.min_edge_codegree == k5.n - 2 and k5.min_degree == k5.n - 1,
        "kn:5 sharpness",
        f"d_e={k5.min_edge_codegree} d_min={k5.min_degree} n={k5.n}",
    )
    return suite


def _suite_counting(args) -> _Suite:
    suite = _Suite("counting")
    corpus = _grid_families() + _named_random(args)
    for (label, _), cert in zip(corpus, _parallel_map(lambda it: check_counting(it[1]), corpus)):
        note = "vacuous" if not cert.applicable else f"n={cert.ceil_lambda} v={cert.v} e={cert.e} t={cert.t}"
        suite.check(cert.passed, label, note)
    return suite


def _suite_rigidity(args) -> _Suite:
    suite = _Suite("rigidity")
    for n in _parse_range(args.n):
        full = complete_family(n)
        at_budget = check_rigidity(n, full)
        suite.check(
            at_budget.branch == "at_budget_excess" and at_budget.passed,
            f"kn:{n} at budget",
            f"lambda={at_budget.lam:.9f}",
        )
        for drop in (1, 2):
            sub = TriangleFamily(full.triangles[:-drop])
            verdict = check_rigidity(n, sub)
            suite.check(
                verdict.branch == "below_budget" and verdict.passed,
                f"kn:{n} minus {drop}",
                f"lambda={verdict.lam:.9f} bound={n - 1}",
            )
    return suite


def _check_gcb_cell(cb: tuple[int, int]):
    c, b = cb
    spec = GcbSpec(c, b)
    fam = gcb_family(spec)
    closed = gcb_closed_form_spectrum(spec)
    gram = build_laplacian("L2_down", fam).data
    eigs = eigenvalues_symmetric(gram.astype(float))
    values = [v for v, _ in closed.rows]
    counts = dict.fromkeys(values, 0)
    worst = 0.0
    for e in eigs:
        v = min(values, key=lambda val: abs(e - val))
        worst = max(worst, abs(e - v))
        if abs(e - v) <= 1e-6:
            counts[v] += 1
    mult_ok = all(counts[v] == m for v, m in closed.rows)
    lam = lambda_of(fam)
    lam_ok = abs(lam - gcb_lambda(spec)) <= 1e-8

    l2 = gram
    l1up = build_laplacian("L1_up", fam).data
    w_vecs = [eigvec_bc(spec, x, y) for x, y in combinations(range(1, c + 1), 2)]
    vec_ok = all(eigvec_residual(l1up, w, b + c) for w in w_vecs)
    ranks_ok = exact_rank(eigvec_matrix(w_vecs)) == comb(c, 2)
    if b >= 2:
        v_vecs = [
            eigvec_c(spec, x, y)
            for x in range(2, c + 1)
            for y in range(c + 1, b + c)
        ]
        vec_ok = vec_ok and all(eigvec_residual(l2, v, c) for v in v_vecs)
        ranks_ok = ranks_ok and exact_rank(eigvec_matrix(v_vecs)) == (b - 1) * (c - 1)
    return c, b, mult_ok and worst <= 1e-8, worst, lam_ok, lam, vec_ok, ranks_ok


def _suite_gcb(args) -> _Suite:
    suite = _Suite("gcb")
    grid = [(c, b) for c in _parse_range(args.c) for b in _parse_range(args.b)]
    for c, b, spec_ok, worst, lam_ok, lam, vec_ok, ranks_ok in _parallel_map(_check_gcb_cell, grid):
        label = f"gcb:{c},{b}"
        suite.check(spec_ok, f"{label} spectrum", f"residual={worst:.3e}")
        suite.check(lam_ok, f"{label} lambda", f"lambda={lam:.9f}")
        suite.check(vec_ok, f"{label} eigenvectors", "exact residual 0")
        suite.check(ranks_ok, f"{label} eigenvector ranks")
    return suite


_SUITES = {
    "hodge": _suite_hodge,
    "mingap": _suite_mingap,
    "overlap": _suite_overlap,
    "counting": _suite_counting,
    "rigidity": _suite_rigidity,
    "gcb": _suite_gcb,
}


def _parse_range(text: str) -> list[int]:
    """'3..5' -> [3, 4, 5]; '4' -> [4]."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        out = list(range(int(lo), int(hi) + 1))
        if not out:
            raise ValueError(f"empty range {text!r}")
        return out
    return [int(text)]


# ---------------------------------------------------------------------------
# Subcommand handlers.


def _cmd_lambda(args) -> int:
    started = time.monotonic()
    fam = _load_source(args.source)
    report = spectral_report(fam)
    print(report.to_json())
    _maybe_write_manifest(args, family_to_text(fam), [], started)
    return 0


def _cmd_verify(args) -> int:
    started = time.monotonic()
    names = list(_SUITES) if args.suite == "all" else [args.suite]
    if args.suite in _RANDOMIZED_SUITES and args.seed is None:
        raise ValueError("--seed is required for randomized suites")
    total_failures = 0
    for name in names:
        suite = _SUITES[name](args)
        for line in suite.lines:
            print(line)
        print(f"suite={name} checks={len(suite.lines)} failures={suite.failures}")
        total_failures += suite.failures
    key = f"verify {' '.join(names)} seed={args.seed} random={args.random}"
    _maybe_write_manifest(args, key, [], started)
    return 1 if total_failures else 0


def _cmd_phi(args) -> int:
    started = time.monotonic()
    entry = phi_exact(
        args.t,
        prune=not args.no_prune,
        max_vertices=args.max_vertices,
        budget_seconds=args.budget_seconds,
        checkpoint=args.checkpoint,
    )
    text = json.dumps(entry.to_dict(), sort_keys=True, indent=2)
    print(text)
    outputs = []
    if args.json:
        with open(args.json, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
        outputs.append(args.json)
    _maybe_write_manifest(args, f"phi {args.t} prune={not args.no_prune}", outputs, started)
    return 0


def _cmd_export(args) -> int:
    started = time.monotonic()
    fam = _load_source(args.source)
    kinds = []
    for token in args.matrices.split(","):
        norm = token.strip().lower().replace("_", "").replace("-", "")
        if norm not in _MATRIX_KINDS:
            raise ValueError(
                f"unknown matrix {token!r}; choose from d0,d1,L0,L1down,L1up,L2down,L1total"
            )
        kinds.append(_MATRIX_KINDS[norm])
    os.makedirs(args.outdir, exist_ok=True)
    graph = support_graph(fam)
    written = []
    for kind in kinds:
        if kind == "d0":
            entries = build_delta0(graph).entries
        elif kind == "d1":
            entries = build_delta1(fam, graph).entries
        else:
            entries = build_laplacian(kind, fam).data
        name = f"{kind}.mtx"
        write_matrix_market(
            os.path.join(args.outdir, name), entries, comment=f"{kind} of {args.source}"
        )
        written.append(name)
        print(os.path.join(args.outdir, name))
    data = _manifest(args, family_to_text(fam), written, started)
    with open(os.path.join(args.outdir, "manifest.json"), "w", encoding="utf-8") as handle:
        json.dump(data, handle, sort_keys=True, indent=2)
        handle.write("\n")
    print(os.path.join(args.outdir, "manifest.json"))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trispec",
        description="Spectral parameter of triangle families: compute, verify, search, export.",
    )
    parser.add_argument("--version", action="version", version=f"trispec {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("lambda", help="print the spectral report of a family as JSON")
    sp.add_argument(
        "source",
        help="family file, '-' for stdin, or a construction like kn:5, gcb:4,2, frob:3,73, phi-lb:81",
    )
    sp.add_argument("--manifest", metavar="PATH", help="also write a run manifest")
    sp.set_defaults(func=_cmd_lambda)

    sp = sub.add_parser("verify", help="run an invariant suite")
    sp.add_argument("suite", choices=sorted(_SUITES) + ["all"])
    sp.add_argument("--random", type=int, default=50, help="number of random families")
    sp.add_argument("--seed", type=int, help="PRNG seed (required for randomized suites)")
    sp.add_argument("--max-vertices", type=int, default=8)
    sp.add_argument("--c", default="3..5", help="clique sizes for the gcb suite, e.g. 3..5")
    sp.add_argument("--b", default="1..3", help="apex counts for the gcb suite")
    sp.add_argument("--n", default="4..6", help="vertex counts for the rigidity suite")
    sp.add_argument("--manifest", metavar="PATH")
    sp.set_defaults(func=_cmd_verify)

    sp = sub.add_parser("phi", help="exact extremal value for a triangle budget")
    sp.add_argument("t", type=int)
    sp.add_argument("--no-prune", action="store_true", help="disable search pruning (A/B check)")
    sp.add_argument("--max-vertices", type=int)
    sp.add_argument("--budget-seconds", type=float)
    sp.add_argument("--checkpoint", metavar="PATH", help="resumable progress file")
    sp.add_argument("--json", metavar="PATH", help="also write the entry to a file")
    sp.add_argument("--manifest", metavar="PATH")
    sp.set_defaults(func=_cmd_phi)

    sp = sub.add_parser("export", help="write matrices of a family in MatrixMarket form")
    sp.add_argument("source")
    sp.add_argument("outdir")
    sp.add_argument("--matrices", default="d0,d1,L2down")
    sp.set_defaults(func=_cmd_export)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else (0 if code is None else 2)
    args.argv = argv
    try:
        return args.func(args)
    except FamilyParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (EmptyFamilyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SpectralError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
