"""
Command-line front end.

    transfinite VERB [JOB] [--format text|machine] [--seed N] [--figure PATH]

Exit status is 0 for success or a true verdict, 1 for a false verdict or an
unmet mathematical precondition, and 2 for unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import contextlib
import os
import random
import sys

from . import permgroup as pg
from .chains import FINITE
from .errors import DomainError
from .jobfile import JobError, load
from .ordinal import OMEGA, ZERO, format_ordinal
from .series import (factor_descriptors, factor_labels, is_composition_series,
                     is_refinement, jordan_holder_check, sample_indices,
                     schreier_refine, validate, zassenhaus)
from .tower import PositionBijection, TowerGroup, series_from_bijection

VERBS = ("validate", "refine", "zassenhaus", "factors", "jh-check", "demo-transfinite")


class Report:
    """Ordered ``key=value`` fields plus free-form text lines."""

    def __init__(self, command: str):
        self.fields = [("command", command)]
        self.lines = []
        self.status = 0

    def field(self, key, value):
        self.fields.append((key, _value(value)))

    def line(self, text=""):
        self.lines.append(text)

    def render(self, fmt: str) -> str:
        if fmt == "machine":
            return "".join(f"{k}={v}\n" for k, v in self.fields)
        return "".join(f"{t}\n" for t in self.lines)


def _value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return ",".join(_value(x) for x in v)
    if hasattr(v, "terms"):
        return format_ordinal(v)
    return str(v).replace("\n", " ")


def _o(a) -> str:
    return format_ordinal(a)


def _series_title(k, s) -> str:
    return f"series {k} ({s.name})" if s.name else f"series {k}"


def _describe_steps(s, rng, limit=8):
    if s.backend == FINITE:
        return " < ".join(str(H.order) for H in s.subgroups)
    shown = [a for a in sample_indices(s.top, rng, extra=0)][:limit]
    return "; ".join(f"{_o(a)}: {s.subgroup_at(a)}" for a in shown)


# -- verbs ------------------------------------------------------------------


def cmd_validate(job, rng, report, figure):
    all_ok = True
    for k, s in enumerate(job.series, start=1):
        rep = validate(s, rng)
        all_ok &= rep.ok
        key = f"series.{k}"
        report.field(f"{key}.name", s.name)
        report.field(f"{key}.top", s.top)
        report.field(f"{key}.length", s.length)
        report.field(f"{key}.valid", rep.ok)
        report.field(f"{key}.checked", len(rep.checked_indices))
        report.field(f"{key}.limits", rep.checked_limits)
        report.field(f"{key}.violations", len(rep.violations))
        for j, v in enumerate(rep.violations, start=1):
            report.field(f"{key}.violation.{j}", f"{v.clause}@{_o(v.index)}: {v.message}")
        status = "valid normal series" if rep.ok else "NOT a normal series"
        report.line(f"{_series_title(k, s)}: {status}; top index {_o(s.top)}, length {_o(s.length)}")
        if rep.checked_limits:
            report.line("  limit indices checked: " + ", ".join(_o(a) for a in rep.checked_limits))
        for v in rep.violations:
            report.line(f"  {v}")
    report.field("verdict", "valid" if all_ok else "invalid")
    report.status = 0 if all_ok else 1
    if figure:
        _plot_series(job.series, figure, rng)


def cmd_factors(job, rng, report, figure):
    for k, s in enumerate(job.series, start=1):
        key = f"series.{k}"
        comp = is_composition_series(s, rng)
        report.field(f"{key}.name", s.name)
        report.field(f"{key}.composition", comp.ok)
        if s.backend == FINITE:
            names = [d.name for d in factor_descriptors(s)]
            report.field(f"{key}.factors", names)
            report.line(f"{_series_title(k, s)}: factors {', '.join(names) or '(none)'}")
        else:
            rows = [(a, factor_labels(s, a)) for a, _, _ in comp.certificate]
            report.field(f"{key}.sampled", len(rows))
            report.field(f"{key}.factors", [f"{_o(a)}:{_labels(c)}" for a, c in rows])
            report.line(f"{_series_title(k, s)}: sampled factors")
            for a, c in rows:
                report.line(f"  index {_o(a)}: {_labels(c)}")
        report.line(f"  composition series: {'yes' if comp.ok else 'no'}")
    if figure:
        _plot_series(job.series, figure, rng)


def _labels(counts) -> str:
    return "+".join(lab if n == 1 else f"{lab}^{'inf' if n == float('inf') else n}"
                    for lab, n in counts.items()) or "1"


def cmd_refine(job, rng, report, figure):
    S1, S2 = job.need_series(2, "refine")
    r = schreier_refine(S1, S2)
    ok1 = is_refinement(r.refined_first, S1, rng)
    ok2 = is_refinement(r.refined_second, S2, rng)
    valid1 = validate(r.refined_first, rng).ok
    valid2 = validate(r.refined_second, rng).ok
    rows_ok = all(_row_iso(row) for row in r.factor_table)
    verdict = ok1 and ok2 and valid1 and valid2 and rows_ok
    report.field("refined.first.top", r.p)
    report.field("refined.second.top", r.q)
    report.field("refined.first.valid", valid1)
    report.field("refined.second.valid", valid2)
    report.field("refined.first.refines", ok1)
    report.field("refined.second.refines", ok2)
    report.field("pairing", [f"{_o(a)}>{_o(b)}" for a, b in _pairs(r.pairing, r.factor_table)])
    for j, row in enumerate(r.factor_table, start=1):
        report.field(f"factor.{j}", f"{_o(row.first_class)}>{_o(row.second_class)}:"
                                    f"{_row_name(row.first)}|{_row_name(row.second)}")
    report.field("isomorphic", verdict)
    report.line(f"refined first series, top index {_o(r.p)}: {_describe_steps(r.refined_first, rng)}")
    report.line(f"refined second series, top index {_o(r.q)}: {_describe_steps(r.refined_second, rng)}")
    report.line(f"refines the inputs: {'yes' if ok1 and ok2 else 'no'}; "
                f"valid: {'yes' if valid1 and valid2 else 'no'}")
    report.line("factor pairing:")
    for row in r.factor_table:
        report.line(f"  {_o(row.first_class)} -> {_o(row.second_class)}: "
                    f"{_row_name(row.first)} ~ {_row_name(row.second)}")
    report.line(f"isomorphic refinements: {'yes' if verdict else 'no'}")
    report.status = 0 if verdict else 1
    if figure:
        from .plotting import plot_refinement_grid, plot_tower_entries
        if S1.backend == FINITE and r.first_quotient is not None:
            plot_refinement_grid(r, figure)
        else:
            plot_tower_entries([r.refined_first, r.refined_second], _demo_indices(r.p, rng), figure)


def _pairs(pairing, table):
    if isinstance(pairing, dict):
        return sorted(pairing.items())
    return [(row.first_class, row.second_class) for row in table]


def _row_iso(row) -> bool:
    if isinstance(row.first, pg.FactorDescriptor):
        return row.first.isomorphic_to(row.second)
    return row.first == row.second


def _row_name(x) -> str:
    return x.name if isinstance(x, pg.FactorDescriptor) else _labels(x)


def cmd_zassenhaus(job, rng, report, figure):
    if job.kind != "permutation" or job.butterfly is None:
        raise JobError(f"{job.path}: 'zassenhaus' needs a permutation group and a [butterfly] table")
    b = job.butterfly
    z = zassenhaus(b["big1"], b["small1"], b["big2"], b["small2"])
    witness_ok = z.witness_is_isomorphism()
    for key in ("big1", "small1", "big2", "small2"):
        report.field(f"{key}.order", b[key].order)
    report.field("upper1.order", z.upper1.order)
    report.field("lower1.order", z.lower1.order)
    report.field("upper2.order", z.upper2.order)
    report.field("lower2.order", z.lower2.order)
    report.field("factor", z.descriptor.name)
    report.field("witness.size", len(z.witness))
    report.field("witness.isomorphism", witness_ok)
    report.line(f"first wing: {z.upper1.order} over {z.lower1.order}, "
                f"second wing: {z.upper2.order} over {z.lower2.order}")
    report.line(f"both factors are {z.descriptor.name}; coset map is an isomorphism: "
                f"{'yes' if witness_ok else 'no'}")
    report.status = 0 if witness_ok else 1
    if figure:
        from .plotting import plot_butterfly
        plot_butterfly(z, figure)


def cmd_jh_check(job, rng, report, figure):
    S1, S2 = job.need_series(2, "jh-check")
    v = jordan_holder_check(S1, S2)
    _jh_fields(report, v)
    report.line(f"isomorphic: {'yes' if v.isomorphic else 'no'}; factors: {','.join(v.factors)}")
    report.line(f"top indices n={_o(v.n)}, m={_o(v.m)}; lengths {_o(v.lengths[0])} and {_o(v.lengths[1])}")
    report.status = 0 if v.isomorphic else 1
    if figure:
        _plot_series([S1, S2], figure, rng)


def _jh_fields(report, v):
    report.field("isomorphic", "yes" if v.isomorphic else "no")
    report.field("factors", v.factors)
    report.field("n", v.n)
    report.field("m", v.m)
    report.field("same_top", v.same_top)
    report.field("same_cardinality", v.same_cardinality)
    report.field("pairing", [f"{_o(a)}>{_o(b)}" for a, b in _pairs(v.pairing, v.refinement.factor_table)])


def demo_series():
    """Two composition series of the sum of countably many C2: the identity
    ordering of positions and the one moving position 0 to the end."""
    G = TowerGroup(OMEGA, default="C2")
    pi = PositionBijection.identity(OMEGA)
    S1 = series_from_bijection(G, pi, name="identity order")
    S2 = series_from_bijection(G, pi.moved(ZERO, 1), name="position 0 last")
    return S1, S2


def _demo_indices(top, rng):
    return [a for a in sample_indices(top, rng, extra=0) if a <= top][:12]


def cmd_demo(job, rng, report, figure):
    S1, S2 = demo_series()
    reports = [validate(S1, rng), validate(S2, rng)]
    for k, (s, rep) in enumerate(zip((S1, S2), reports), start=1):
        key = f"series.{k}"
        report.field(f"{key}.name", s.name)
        report.field(f"{key}.top", s.top)
        report.field(f"{key}.length", s.length)
        report.field(f"{key}.valid", rep.ok)
        report.field(f"{key}.limits", rep.checked_limits)
        report.line(f"{_series_title(k, s)}: length {_o(s.length)}, top index {_o(s.top)}, "
                    f"{'valid' if rep.ok else 'INVALID'} (limits checked: "
                    f"{', '.join(_o(a) for a in rep.checked_limits) or 'none'})")
        report.line(f"  {_describe_steps(s, rng, limit=6)}")
    v = jordan_holder_check(S1, S2)
    _jh_fields(report, v)
    parts = ["isomorphic" if v.isomorphic else "not isomorphic",
             "n=m" if v.same_top else "n≠m",
             "|n|=|m|" if v.same_cardinality else "|n|≠|m|"]
    report.field("verdict", ",".join(p.replace("≠", "!=") for p in parts))
    report.line("factor pairing: " + ", ".join(f"{_o(a)} -> {_o(b)}" for a, b in v.pairing.items(range(1, 5))))
    report.line("verdict: " + ", ".join(parts))
    ok = all(r.ok for r in reports) and v.isomorphic and not v.same_top and v.same_cardinality
    report.status = 0 if ok else 1
    if figure:
        from .plotting import plot_tower_entries
        plot_tower_entries([S1, S2], _demo_indices(S2.top, rng), figure)


def _plot_series(series, figure, rng):
    from .plotting import plot_series
    top = max((s.top for s in series), default=ZERO)
    plot_series(series, figure, _demo_indices(top, rng) if series and series[0].backend != FINITE else None)


COMMANDS = {
    "validate": cmd_validate,
    "refine": cmd_refine,
    "zassenhaus": cmd_zassenhaus,
    "factors": cmd_factors,
    "jh-check": cmd_jh_check,
    "demo-transfinite": cmd_demo,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="transfinite", description=__doc__.strip().splitlines()[0])
    p.add_argument("verb", help="one of: " + ", ".join(VERBS))
    p.add_argument("job", nargs="?", help="TOML job file (not needed for demo-transfinite)")
    p.add_argument("--format", choices=("text", "machine"), default="text")
    p.add_argument("--seed", type=int, default=0, help="seed for index sampling")
    p.add_argument("--figure", metavar="PATH", help="also render a figure to PATH")
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(err), contextlib.redirect_stdout(out):
            args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.verb not in COMMANDS:
        print(f"transfinite: argument 1: unknown verb {args.verb!r} "
              f"(expected one of {', '.join(VERBS)})", file=err)
        return 2
    if args.seed < 0:
        print("transfinite: --seed must be a natural number", file=err)
        return 2
    rng = random.Random(args.seed)
    report = Report(args.verb)
    report.field("seed", args.seed)
    try:
        job = None
        if args.verb != "demo-transfinite":
            if not args.job:
                print(f"transfinite: argument 2: '{args.verb}' needs a job file", file=err)
                return 2
            job = load(args.job)
            report.field("job", args.job)
        COMMANDS[args.verb](job, rng, report, args.figure)
    except JobError as e:
        print(f"transfinite: {e}", file=err)
        return 2
    except DomainError as e:
        report.field("error", str(e))
        report.line(f"precondition failed: {e}")
        report.status = 1
    if args.figure and os.path.exists(args.figure):
        report.field("figure", args.figure)
    out.write(report.render(args.format))
    return report.status


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
