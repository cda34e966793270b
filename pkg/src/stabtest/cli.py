"""Batch front-end: run simulations, print reductions, sweep bounds, dump oracle tables.

Outputs are deterministic: the same flags and seed produce byte-identical
files. Rational quantities are printed as p/q with a decimal in parentheses;
CSV files carry decimals, JSON lines carry exact values.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import analytics
from .analytics import ClassCounts, DomainError
from .gf2 import BitMatrix
from .graphs import (
    BipartiteGraphState,
    edgeless_graph,
    from_json,
    grid_graph,
    path_graph,
    rhg_lattice,
)
from .pauli import BlockClass
from .protocol import (
    AdversaryModel,
    ClassMixture,
    Honest,
    IidPauli,
    SingleBadCopy,
    run_trials,
    transcript_to_json,
)
from .reduction import compute_reduction, converted_relations

__all__ = [
    "parse_graph",
    "parse_adversary",
    "cmd_simulate",
    "cmd_reduce",
    "cmd_verify_bounds",
    "cmd_oracle",
    "main",
]

SUMMARY_HEADER = ["k", "adversary", "trials", "pass_rate", "cond_fidelity", "bound_alpha", "bound_value"]
BOUNDS_HEADER = ["k", "a", "b", "c", "pass", "joint", "conditional", "xi", "bound_ok"]


def parse_graph(spec: str) -> BipartiteGraphState:
    """Builtin graph specs (path:N, grid:WxH, rhg:XxYxZ, edgeless:N) or a JSON file path."""
    kind, _, arg = spec.partition(":")
    try:
        if kind == "path":
            return path_graph(int(arg))
        if kind == "grid":
            w, h = (int(part) for part in arg.split("x"))
            return grid_graph(w, h)
        if kind == "rhg":
            lx, ly, lz = (int(part) for part in arg.split("x"))
            return rhg_lattice(lx, ly, lz)
        if kind == "edgeless":
            return edgeless_graph(int(arg))
    except ValueError as exc:
        raise ValueError(f"bad graph spec {spec!r}: {exc}") from exc
    path = Path(spec)
    if not path.is_file():
        raise ValueError(f"unknown graph spec {spec!r} (not a builtin, not a file)")
    return from_json(path.read_text())


def _load_mixture(path: str) -> ClassMixture:
    data = json.loads(Path(path).read_text())
    if not isinstance(data, dict) or not {"beta", "q0", "q1"} <= data.keys():
        raise ValueError("mixture JSON must be an object with beta, q0 and q1")

    def convert(rows, name):
        atoms = []
        for row in rows:
            if len(row) != 3:
                raise ValueError(f"{name} rows must be [a, b, weight] triples")
            a, b, w = row
            atoms.append(((int(a), int(b)), Fraction(str(w))))
        total = sum(w for _, w in atoms)
        if total <= 0:
            raise ValueError(f"{name} weights must have positive total")
        return [(ab, w / total) for ab, w in atoms]

    return ClassMixture.from_weights(
        Fraction(str(data["beta"])), convert(data["q0"], "q0"), convert(data["q1"], "q1")
    )


def parse_adversary(spec: str) -> AdversaryModel:
    """Mini-grammar: honest | single-bad:s,t | iid:px,pz | mixture:<json file>."""
    kind, _, arg = spec.partition(":")
    if kind == "honest":
        if arg:
            raise ValueError("honest takes no arguments")
        return Honest()
    if kind == "single-bad":
        try:
            s, t = (int(part) for part in arg.split(","))
        except ValueError as exc:
            raise ValueError(f"bad adversary spec {spec!r}: expected single-bad:s,t") from exc
        return SingleBadCopy(BlockClass(s, t))
    if kind == "iid":
        try:
            p_x, p_z = (float(part) for part in arg.split(","))
        except ValueError as exc:
            raise ValueError(f"bad adversary spec {spec!r}: expected iid:px,pz") from exc
        return IidPauli(p_x, p_z)
    if kind == "mixture":
        if not arg:
            raise ValueError("mixture needs a JSON file path")
        return _load_mixture(arg)
    raise ValueError(f"unknown adversary spec {spec!r}")


def _fmt_rat(x: Fraction | None) -> str:
    if x is None:
        return "undefined"
    return f"{x} ({float(x):.6g})"


def _fmt_dec(x: Fraction | None) -> str:
    return "" if x is None else f"{float(x):.12g}"


def _matrix_lines(m: BitMatrix) -> list[str]:
    if m.n_rows == 0 or m.n_cols == 0:
        return [f"  (empty {m.n_rows}x{m.n_cols})"]
    return ["  [" + " ".join(str(m.entry(i, j)) for j in range(m.n_cols)) + "]" for i in range(m.n_rows)]


def _relation_line(rel) -> str:
    lhs = " + ".join(f"X{i + 1}" for i in rel.x_mask.support()) or "0"
    rhs = " + ".join(f"Z{i + 1}" for i in rel.z_mask.support()) or "0"
    return f"{lhs} = {rhs}"


def _default_outdir() -> str:
    return os.environ.get("STABTEST_OUTDIR", ".")


def cmd_simulate(args: argparse.Namespace) -> int:
    g = parse_graph(args.graph)
    model = parse_adversary(args.adversary)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    transcript_path = outdir / "transcripts.jsonl"
    summary_path = outdir / "summary.csv"

    accepted = 0
    clean = 0
    with open(transcript_path, "w") as fh:
        for index, tr in enumerate(run_trials(g, args.k, model, args.trials, args.seed)):
            fh.write(transcript_to_json(tr, index) + "\n")
            if tr.accepted:
                accepted += 1
                clean += tr.third_fidelity

    pass_rate = Fraction(accepted, args.trials)
    cond = Fraction(clean, accepted) if accepted else None
    alpha = args.alpha if args.alpha is not None else pass_rate
    try:
        bound = analytics.theorem1_bound(alpha, args.k)
    except DomainError:
        bound = None

    print(f"graph: {args.graph} (n_b={g.n_b}, n_w={g.n_w})")
    print(f"k: {args.k} ({2 * args.k + 1} copies per trial)")
    print(f"adversary: {args.adversary}")
    print(f"trials: {args.trials} (master seed {args.seed})")
    print(f"pass_rate: {_fmt_rat(pass_rate)} [{accepted}/{args.trials} accepted]")
    print(f"conditional_fidelity: {_fmt_rat(cond)}")
    source = "--alpha" if args.alpha is not None else "empirical pass rate"
    print(f"alpha: {_fmt_rat(alpha)} [{source}]")
    if bound is None:
        print("fidelity_bound: not applicable (alpha <= 1/(2k+1))")
        print("bound respected: n/a")
    else:
        print(f"fidelity_bound: {_fmt_rat(bound)}")
        if cond is None:
            print("bound respected: n/a (no accepted trials)")
        else:
            print(f"bound respected: {'yes' if cond >= bound else 'no'}")

    with open(summary_path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SUMMARY_HEADER)
        writer.writerow(
            [
                args.k,
                args.adversary,
                args.trials,
                _fmt_dec(pass_rate),
                _fmt_dec(cond),
                _fmt_dec(alpha),
                _fmt_dec(bound),
            ]
        )
    print(f"wrote {transcript_path} and {summary_path}")
    return 0


def cmd_reduce(args: argparse.Namespace) -> int:
    g = parse_graph(args.graph)
    r = compute_reduction(g)
    print(f"graph: {args.graph} (n_b={g.n_b}, n_w={g.n_w})")
    print("A =")
    print("\n".join(_matrix_lines(g.adjacency)))
    print(f"n_prime = {r.n_prime}")
    for name, mat in (("C", r.c_mat), ("C^-1", r.c_inv), ("D", r.d_mat), ("D^-1", r.d_inv)):
        print(f"{name} =")
        print("\n".join(_matrix_lines(mat)))
    print("group 1 checks (X measured on B, Z on W):")
    for rel in converted_relations(r, 1):
        print(f"  {_relation_line(rel)}")
    print("group 2 checks (Z measured on B, X on W; X labels are W vertices):")
    for rel in converted_relations(r, 2):
        print(f"  {_relation_line(rel)}")
    return 0


def _bounds_rows(k_max: int):
    for k in range(1, k_max + 1):
        slack = Fraction(1, 2 * k + 1)
        for c in (0, 1):
            a_cap = k + 1 if c == 0 else k
            for a in range(a_cap + 1):
                for b in range(a_cap + 1):
                    if a + b + c > 2 * k + 1:
                        continue
                    cc = ClassCounts(a, b, c, k)
                    p = analytics.pass_prob(cc)
                    joint = analytics.joint_prob(a, b, k) if c == 0 else Fraction(0)
                    if p == 0:
                        conditional = None
                    elif c == 0:
                        conditional = analytics.conditional_fidelity(a, b, k)
                    else:
                        conditional = Fraction(0)
                    xi_val = analytics.xi(a, b, k) if c == 0 else None
                    bound_ok = joint >= p - slack and (xi_val is None or xi_val >= 0)
                    yield k, a, b, c, p, joint, conditional, xi_val, bound_ok


def cmd_verify_bounds(args: argparse.Namespace) -> int:
    if args.k_max < 1:
        raise ValueError("k-max must be at least 1")
    rows = 0
    violations = 0
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(BOUNDS_HEADER)
        for k, a, b, c, p, joint, conditional, xi_val, ok in _bounds_rows(args.k_max):
            rows += 1
            if not ok:
                violations += 1
            writer.writerow(
                [k, a, b, c, _fmt_dec(p), _fmt_dec(joint), _fmt_dec(conditional),
                 _fmt_dec(xi_val), str(ok).lower()]
            )
    finally:
        if args.out:
            out.close()
    if args.out:
        print(f"wrote {args.out}: {rows} rows, {violations} violations")
    return 1 if violations else 0


def cmd_oracle(args: argparse.Namespace) -> int:
    cc = ClassCounts(args.a, args.b, args.c, args.k)
    result = analytics.oracle(cc)
    p = analytics.pass_prob(cc)
    joint = analytics.joint_prob(args.a, args.b, args.k) if args.c == 0 else Fraction(0)
    conditional = joint / p if p else None
    print(f"profile: a={args.a} b={args.b} c={args.c} k={args.k} ({2 * args.k + 1} copies)")
    print(f"{'':14}{'enumeration':<24}closed form")
    print(f"{'pass':<14}{_fmt_rat(result.passing):<24}{_fmt_rat(p)}")
    print(f"{'joint':<14}{_fmt_rat(result.joint):<24}{_fmt_rat(joint)}")
    print(f"{'conditional':<14}{_fmt_rat(result.conditional):<24}{_fmt_rat(conditional)}")
    match = result.passing == p and result.joint == joint and result.conditional == conditional
    print(f"match: {'yes' if match else 'no'}")
    return 0 if match else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stabtest",
        description="Simulator and exact analytics for the stabilizer test protocol.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run Monte Carlo trials of the test")
    sim.add_argument("--graph", required=True, help="path:N | grid:WxH | rhg:XxYxZ | edgeless:N | JSON file")
    sim.add_argument("--k", type=int, required=True, help="test group size; 2k+1 copies per trial")
    sim.add_argument("--adversary", required=True, help="honest | single-bad:s,t | iid:px,pz | mixture:FILE")
    sim.add_argument("--trials", type=int, default=1000)
    sim.add_argument("--seed", type=int, default=0, help="master seed; per-trial seeds derive from it")
    sim.add_argument("--alpha", type=Fraction, default=None,
                     help="significance threshold (default: empirical pass rate)")
    sim.add_argument("--outdir", default=_default_outdir(),
                     help="output directory (default: $STABTEST_OUTDIR or .)")
    sim.set_defaults(func=cmd_simulate)

    red = sub.add_parser("reduce", help="print the C/D conversion data for a graph")
    red.add_argument("--graph", required=True)
    red.set_defaults(func=cmd_reduce)

    ver = sub.add_parser("verify-bounds", help="sweep the exact per-profile bounds")
    ver.add_argument("--k-max", type=int, required=True)
    ver.add_argument("--out", default=None, help="CSV path (default: stdout)")
    ver.set_defaults(func=cmd_verify_bounds)

    orc = sub.add_parser("oracle", help="compare closed forms against brute-force enumeration")
    orc.add_argument("a", type=int)
    orc.add_argument("b", type=int)
    orc.add_argument("c", type=int)
    orc.add_argument("k", type=int)
    orc.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
