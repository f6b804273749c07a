"""Command-line front end.

Exit codes: 0 when every verified property holds, 1 when one fails,
2 on bad input.  Reports go to stdout, or to ``--out`` via write-then-rename.
"""

from __future__ import annotations

import argparse
import sys

from . import report
from .dimension import DegenerateTail, argmin_interval, default_window, dimension_series
from .family import FamilyError, ParameterSchedule, base_permutation, cycle_word, validate_family
from .iet import PermutationError
from .lemmas import escalation_sweep, measure_indices, run_all
from .measures import MeasureLab
from .rauzy import RunWord, realize_word

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _bigint(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a decimal integer: {text!r}") from None
    return value


def _add_schedule(p: argparse.ArgumentParser, m_default: int):
    p.add_argument("--n", type=int, required=True, help="number of intervals (even, >= 4)")
    p.add_argument("--p", type=_bigint, required=True, help="growth parameter, p >= n + 1")
    p.add_argument("--c1", type=_bigint, default=None, help="first c, c1 > p (default: p^2)")
    p.add_argument("--m", type=int, default=m_default, help=f"number of cycles (default: {m_default})")


def _add_output(p: argparse.ArgumentParser, formats=("json",)):
    p.add_argument("--format", choices=formats, default="json", help="output format (default: json)")
    p.add_argument("--out", default=None, help="output file (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ietlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("family", help="cycle word, closed-form matrix and the letter-by-letter oracle")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=_bigint, default=1)
    p.add_argument("--c", type=_bigint, default=1)
    _add_output(p)

    p = sub.add_parser("induce", help="realize the truncation IET and compare with the cycle words")
    _add_schedule(p, 3)
    p.add_argument("--max-runs", type=int, default=None, help="run budget (default: expected runs + 1)")
    _add_output(p)

    p = sub.add_parser("measures", help="truncated measures, return times and partition of unity")
    _add_schedule(p, 6)
    p.add_argument("--K", type=int, default=None, help="deepest level (default: min(4, m))")
    p.add_argument("--j", type=int, default=None, help="single seed (default: all)")
    _add_output(p, ("json", "csv"))

    p = sub.add_parser("lemmas", help="exact lemma suite")
    _add_schedule(p, 6)
    p.add_argument("--K", type=int, default=4, help="deepest level, K <= m - 1 (default: 4)")
    p.add_argument("--lemma", action="append", default=None, help="restrict to lemma id (repeatable)")
    p.add_argument("--sweep", action="store_true", help="run p over n+1, 2n, 4n, 8n, 16n instead of --p")
    _add_output(p)

    p = sub.add_parser("dimension", help="dimension estimate series and bracket checks")
    _add_schedule(p, 8)
    p.add_argument("--K", type=int, default=None, help="deepest level, K <= m - 2 (default: m - 2)")
    p.add_argument("--i", type=int, default=None)
    p.add_argument("--j", type=int, default=None)
    p.add_argument("--window", type=int, default=None, help="tail-min window (default: ceil(K/3))")
    _add_output(p, ("json", "csv"))

    p = sub.add_parser("oracle", help="visit-count oracle against prefix-product columns")
    _add_schedule(p, 3)
    p.add_argument("--K", type=int, default=2, help="deepest level (default: 2)")
    p.add_argument("--i", type=int, default=None, help="single interval (default: all)")
    p.add_argument("--max-runs", type=int, default=10**7, help="orbit step budget per column")
    _add_output(p)
    return parser


def _schedule(args) -> ParameterSchedule:
    c1 = args.p * args.p if args.c1 is None else args.c1
    sched = ParameterSchedule(args.n, args.p, c1, args.m)
    base_permutation(args.n)
    return sched


def _config(args) -> dict:
    out = {}
    for key, value in sorted(vars(args).items()):
        if key == "out":
            continue
        out[key] = str(value) if isinstance(value, int) and not isinstance(value, bool) and abs(value) >= 2**53 else value
    if "p" in out and out.get("c1") is None:
        out["c1"] = str(args.p * args.p)
    for key in ("p", "c1", "a", "c"):
        if key in out and out[key] is not None:
            out[key] = str(out[key])
    return out


# -- commands ----------------------------------------------------------------

def cmd_family(args):
    if args.n < 4:
        raise UsageError(f"n must be >= 4, got {args.n}")
    if args.a < 1 or args.c < 1:
        raise UsageError("a and c must be >= 1")
    chk = validate_family(args.n, args.a, args.c)
    try:
        perm = base_permutation(args.n)
        base = {"top": list(perm.top), "bottom": list(perm.bottom)}
    except FamilyError as exc:
        base = {"error": str(exc)}
    results = {
        "base_permutation": base,
        "cycle_word": str(cycle_word(args.a, args.c, args.n)),
        "theta": report.matrix_strs(chk.closed_matrix),
        "path_matrix": report.matrix_strs(chk.path_matrix),
        "closes": chk.closes,
        "oracle": "equal" if chk.equal else "mismatch",
    }
    if chk.first_difference:
        r, c, closed, path = chk.first_difference
        results["first_difference"] = {"row": r, "col": c, "closed": str(closed), "path": str(path)}
    if args.n % 2:
        results["note"] = "odd n: column n-1 of the closed form is Theta e_n + e_{n-1}"
    return results, chk.ok


def _cycle_prefix_count(realized: RunWord, sched: ParameterSchedule) -> int:
    count = 0
    expected = RunWord()
    for idx in range(1, sched.m + 1):
        expected = expected + cycle_word(*sched.cycle(idx), sched.n)
        if not realized.startswith(expected):
            break
        count = idx
    return count


def _first_divergence(realized: RunWord, expected: RunWord):
    for pos, (got, want) in enumerate(zip(realized.runs, expected.runs)):
        if got != want:
            return {"run": pos, "expected": f"{int(want[0])}^{want[1]}", "realized": f"{int(got[0])}^{got[1]}"}
    if len(realized.runs) < len(expected.runs):
        want = expected.runs[len(realized.runs)]
        return {"run": len(realized.runs), "expected": f"{int(want[0])}^{want[1]}", "realized": None}
    return None


def cmd_induce(args):
    sched = _schedule(args)
    lab = MeasureLab(sched)
    expected = sched.word()
    budget = len(expected.runs) + 1 if args.max_runs is None else args.max_runs
    if budget < 0:
        raise UsageError("--max-runs must be >= 0")
    iet = lab.truncation_iet()
    real = realize_word(iet, budget)
    matched = _cycle_prefix_count(real.word, sched)
    ok = matched == sched.m
    results = {
        "schedule": sched.to_dict(),
        "lengths": report.strs(iet.lengths),
        "expected_runs": len(expected.runs),
        "realized_runs": real.runs,
        "matched_cycles": matched,
        "summary": f"prefix match: {matched} cycles",
        "first_divergence": None if ok else _first_divergence(real.word, expected),
        "tie": None if real.tie is None else {"step": real.tie.step, "message": str(real.tie)},
    }
    return results, ok


def cmd_measures(args):
    sched = _schedule(args)
    lab = MeasureLab(sched)
    K = min(4, sched.m) if args.K is None else args.K
    if not 0 <= K <= sched.m:
        raise UsageError(f"K must lie in 0..m, got {K}")
    seeds = list(range(1, sched.n + 1)) if args.j is None else [args.j]
    if any(not 1 <= j <= sched.n for j in seeds):
        raise UsageError(f"j must lie in 1..{sched.n}")
    rt = lab.return_times(K)
    unity = {}
    for j in seeds:
        pc = lab.column(j)
        unity[str(j)] = [report.rational(sum(rt(k, t) * pc.measure(k, t) for t in range(1, sched.n + 1))) for k in range(K + 1)]
    ok = all(v == "1/1" for vals in unity.values() for v in vals)
    if args.format == "csv":
        rows = [
            {"j": j, "k": k, "i": i, "numerator": v.numerator, "denominator": v.denominator}
            for j in seeds
            for k, i, v in lab.measure_table(j, K)
        ]
        return report.to_csv(["j", "k", "i", "numerator", "denominator"], rows), ok
    results = {
        "schedule": sched.to_dict(),
        "K": K,
        "normalized_limits": {str(j): [report.rational(x) for x in lab.normalized_limit(j)] for j in seeds},
        "measures": {
            str(j): [[report.rational(lab.column(j).measure(k, i)) for i in range(1, sched.n + 1)] for k in range(K + 1)]
            for j in seeds
        },
        "return_times": [report.strs(row) for row in rt.table],
        "pairwise_l1": [
            {"j1": a, "j2": b, "distance": report.rational(lab.pairwise_l1(a, b))}
            for a in seeds
            for b in seeds
            if a <= b
        ],
        "convergence": {str(j): report.rational(lab.convergence(j)) for j in seeds} if sched.m >= 1 else {},
        "partition_of_unity": unity,
    }
    return results, ok


def cmd_lemmas(args):
    if args.sweep:
        _schedule(args)  # validate n
        minimal, reps = escalation_sweep(args.n, args.m, args.K)
        results = {
            "minimal_passing_p": {k: None if v is None else str(v) for k, v in minimal.items()},
            "by_p": {str(p): rep.to_dict() for p, rep in reps.items()},
        }
        return results, all(v is not None for v in minimal.values())
    sched = _schedule(args)
    if not 0 <= args.K <= sched.m - 1:
        raise UsageError(f"K must lie in 0..m-1, got {args.K}")
    try:
        rep = run_all(sched, args.K, args.lemma)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    return rep.to_dict(), rep.passed


def cmd_dimension(args):
    sched = _schedule(args)
    K = sched.m - 2 if args.K is None else args.K
    if not 0 <= K <= sched.m - 2:
        raise UsageError(f"K must lie in 0..m-2, got {K}")
    window = default_window(K) if args.window is None else args.window
    if not 1 <= window <= K + 1:
        raise UsageError(f"window must lie in 1..K+1, got {window}")
    idx = measure_indices(sched.n)
    if (args.i is None) != (args.j is None):
        raise UsageError("give both --i and --j, or neither")
    if args.i is None:
        if args.format == "csv":
            raise UsageError("csv output needs a single pair: give --i and --j")
        pairs = [(i, j) for i in idx for j in idx if i != j]
    else:
        if args.i not in idx or args.j not in idx or args.i == args.j:
            raise UsageError(f"i and j must be distinct members of {idx}")
        pairs = [(args.i, args.j)]
    lab = MeasureLab(sched)
    series = []
    ok = True
    for i, j in pairs:
        ds = dimension_series(lab, i, j, K, window)
        argmins = {str(k): argmin_interval(lab, i, j, k) for k in range(K + 1)}
        ok = ok and ds.passed
        series.append((ds, argmins))
    if args.format == "csv":
        return series[0][0].to_csv(), ok
    return {"schedule": sched.to_dict(), "pairs": [{**ds.to_dict(), "argmin_interval": am} for ds, am in series]}, ok


def cmd_oracle(args):
    sched = _schedule(args)
    lab = MeasureLab(sched)
    if not 0 <= args.K <= sched.m:
        raise UsageError(f"K must lie in 0..m, got {args.K}")
    targets = list(range(1, sched.n + 1)) if args.i is None else [args.i]
    if any(not 1 <= i <= sched.n for i in targets):
        raise UsageError(f"i must lie in 1..{sched.n}")
    rows = []
    ok = True
    for k in range(1, args.K + 1):
        for i in targets:
            counts = lab.visit_count_column(k, i, budget=args.max_runs)
            col = tuple(row[i - 1] for row in lab.prefix(k))
            rows.append({"k": k, "i": i, "visits": report.strs(counts), "column": report.strs(col), "equal": counts == col})
            ok = ok and counts == col
    return {"schedule": sched.to_dict(), "checks": rows}, ok


COMMANDS = {
    "family": cmd_family,
    "induce": cmd_induce,
    "measures": cmd_measures,
    "lemmas": cmd_lemmas,
    "dimension": cmd_dimension,
    "oracle": cmd_oracle,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        results, ok = COMMANDS[args.command](args)
    except (UsageError, FamilyError, PermutationError, DegenerateTail) as exc:
        print(f"ietlab {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = results if isinstance(results, str) else report.to_json(report.envelope(_config(args), results, ok))
    if args.out:
        report.atomic_write(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
