"""Command line: ``regstab analyze|strand|suite|gvt-check``.

Exit codes: 0 success, 1 input error (including non m-primary input),
2 a theorem check failed, 3 uncertified result under ``--strict``.
"""

from __future__ import annotations

import argparse
import csv
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .algebra import IdealSpec
from .groebner import groebner, is_m_primary
from .hilbert import ci_power_dimension, hilbert_table
from .idealfile import IdealFileError, format_ideal_file, parse_ideal_file
from .instances import random_mprimary
from .pieces import engine_for
from .report import Check, ReportDocument, compare, fmt, summarize
from .stabilization import HorizonTooSmall, NotMPrimaryIdeal, TheoremViolation, stabilization_report
from .strands import CutoffTooLarge, FieldTooSmall, verify_compcoh, verify_simple_stab

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION, EXIT_UNCERTIFIED = 0, 1, 2, 3

MAX_N, MAX_DEG, MAX_COUNT = 4, 6, 500


class InputError(ValueError):
    pass


def default_seed() -> int:
    raw = os.environ.get("REGSTAB_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"REGSTAB_SEED must be an integer, got {raw!r}") from None


def load_ideal(path: str) -> IdealSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_ideal_file(fh.read())


def _exit_code(checks: list[Check], strict: bool) -> int:
    verdict = summarize(checks)
    if verdict == "fail":
        return EXIT_VIOLATION
    if verdict == "inconclusive" and strict:
        return EXIT_UNCERTIFIED
    return EXIT_OK


def _write_csv(path: str, header: list[str], rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


# --------------------------------------------------------------------------
# analyze


def run_analyze(I: IdealSpec, T: int | None, W: int | None):
    rep = stabilization_report(I, T, W)
    doc = ReportDocument("analyze", rep.to_dict(), rep.bound_checks, None, {"T": rep.horizon, "W": rep.window})
    return rep, doc


def _print_analyze(I, rep, out):
    print(f"ideal   {I}", file=out)
    print(f"field   {I.field}", file=out)
    print(f"d = {rep.d}   I' = {rep.iprime}   reg(I') = {rep.reg_iprime}   t0 = {rep.t0}", file=out)
    print(" t  reg(I^t)  f(t)", file=out)
    for t, r, f in rep.table:
        print(f"{t:2d}  {r:8d}  {f:4d}", file=out)
    flag = "" if rep.certified else "  (uncertified: f not constant on the last window)"
    print(f"b = {rep.b}   c = {rep.c} (first at t={rep.c_argmax})   Stab = {rep.stab}{flag}", file=out)
    if rep.degenerate:
        print("note: N_{b,*} = 0, so e_b = -inf and Stab is floored at 1", file=out)
    es = ", ".join(f"e_{mu}={fmt(v)}" for mu, v in rep.e_table.items())
    print(f"strand ends: {es}", file=out)
    _print_checks(rep.bound_checks, out)


def _print_checks(checks, out):
    bad = [c for c in checks if c.status != "pass"]
    print(f"checks: {len(checks)} run, {sum(c.status == 'pass' for c in checks)} pass, "
          f"{sum(c.status == 'fail' for c in checks)} fail, "
          f"{sum(c.status == 'inconclusive' for c in checks)} inconclusive", file=out)
    for c in bad:
        print(f"  {c.status.upper():12s} {c.name}: {fmt(c.lhs)} {c.relation} {fmt(c.rhs)}  [{c.anchor}] {c.note}",
              file=out)


def cmd_analyze(args, out) -> int:
    I = load_ideal(args.file)
    try:
        rep, doc = run_analyze(I, args.tmax, args.window)
    except TheoremViolation as exc:
        doc = ReportDocument("analyze", {"error": str(exc)}, [exc.check])
        print(doc.dumps() if args.json else str(exc), file=out)
        return EXIT_VIOLATION
    if args.csv:
        _write_csv(args.csv, ["t", "reg", "f"], rep.table)
    if args.json:
        print(doc.dumps(), file=out)
    else:
        _print_analyze(I, rep, out)
    return _exit_code(rep.bound_checks, args.strict)


# --------------------------------------------------------------------------
# strand


def cmd_strand(args, out) -> int:
    I = load_ideal(args.file)
    n = I.nvars
    if n < 2:
        raise InputError("strand commands need at least two variables")
    seed = default_seed() if args.seed is None else args.seed
    rep = stabilization_report(I)
    mu = rep.b if args.mu is None else args.mu
    if mu <= -n:
        raise InputError(f"mu={mu} is out of range: need mu > -n = {-n}")
    T, cutoff = args.tmax, args.cutoff
    verdicts = []
    if mu == rep.b:
        verdicts.append(verify_simple_stab(I, seed, T, cutoff, rep=rep))
    verdicts.append(verify_compcoh(I, seed, mu, T, cutoff, rep=rep))
    checks = [c for v in verdicts for c in v.checks]
    result = {v.command: v.result for v in verdicts}
    horizons = {v.command: {"T": v.horizon, "cutoff": v.cutoff} for v in verdicts}
    doc = ReportDocument("strand", {"mu": mu, "b": rep.b, "stab": rep.stab, **result}, checks, seed, horizons)
    if args.csv:
        beta = verdicts[-1].result["betti_R"]["beta"]
        _write_csv(args.csv, ["j", "t", "beta"],
                   [(j, t, v) for j, row in enumerate(beta) for t, v in enumerate(row)])
    if args.json:
        print(doc.dumps(), file=out)
    else:
        _print_strand(I, rep, mu, verdicts, out)
    return _exit_code(checks, args.strict)


def _print_betti(title, bt, out):
    beta = bt["beta"]
    print(f"{title}: reg_B = {fmt(bt['reg_B'])}{'' if bt['certified'] else ' (uncertified)'}"
          f"   growth degree = {fmt(bt['growth_degree'])}", file=out)
    print("   t: " + " ".join(f"{t:4d}" for t in range(len(beta[0]))), file=out)
    for j, row in enumerate(beta):
        print(f"  b{j}: " + " ".join(f"{v:4d}" if v else "   ." for v in row), file=out)


def _print_strand(I, rep, mu, verdicts, out):
    print(f"ideal {I}   d = {rep.d}   b = {rep.b}   Stab = {rep.stab}   mu = {mu}", file=out)
    for v in verdicts:
        r = v.result
        print(f"[{v.command}] T = {v.horizon}, cutoff = {v.cutoff}, seed = {v.seed}", file=out)
        print(f"  J = ({', '.join(r['reduction'])})", file=out)
        if v.command == "simple-stab":
            coh = r["cohomology"]
            print(f"  end H^0(R_b) = {fmt(coh['end_h0'])}   end H^1(R_b) = {fmt(coh['end_h1'])}"
                  f"   K = {coh['K']}{'' if coh['certified'] else ' (uncertified)'}", file=out)
            print(f"  end H^0(N_b) = {fmt(r['end_h0_N'])}   e_b = {fmt(r['e_b'])}", file=out)
            _print_betti("  R_b", r["betti"], out)
        else:
            print(f"  dim N_mu = {fmt(r['dim_N'])}   cd(R_mu) = {fmt(r['cd_R'])}", file=out)
            _print_betti("  R_mu", r["betti_R"], out)
            _print_betti("  N_mu", r["betti_N"], out)
        _print_checks(v.checks, out)


# --------------------------------------------------------------------------
# suite


def suite_instance(seed: int, i: int, n: int, max_deg: int) -> IdealSpec:
    rng = random.Random(seed * 1_000_003 + i)
    nn = rng.randint(2, n) if n >= 2 else 1
    return random_mprimary(rng, nn, max_deg)


def run_instance(seed: int, i: int, n: int, max_deg: int, strands: bool) -> dict:
    I = suite_instance(seed, i, n, max_deg)
    t = time.perf_counter()
    checks: list[Check] = []
    info: dict = {"id": i, "ideal": format_ideal_file(I)}
    try:
        rep = stabilization_report(I)
        checks += rep.bound_checks
        info.update(d=rep.d, b=rep.b, c=rep.c, t0=rep.t0, stab=rep.stab, degenerate=rep.degenerate)
        if strands and I.nvars >= 2:
            v = verify_simple_stab(I, seed + i, rep=rep)
            checks += v.checks
            info["reg_B"] = v.result["reg_B"]
            info["end_h1"] = v.result["cohomology"]["end_h1"]
            for mu in (rep.b - 1, rep.b, rep.b + 1):
                if mu > -I.nvars:
                    checks += verify_compcoh(I, seed + i, mu, rep=rep).checks
    except TheoremViolation as exc:
        checks.append(exc.check)
    info["checks"] = checks
    info["status"] = summarize(checks)
    info["seconds"] = round(time.perf_counter() - t, 3)
    return info


@dataclass(frozen=True)
class SuiteConfig:
    n: int = 2
    max_deg: int = 4
    count: int = 20
    seed: int = 0
    jobs: int = 1
    strands: bool = True

    def validate(self) -> "SuiteConfig":
        if not 1 <= self.n <= MAX_N:
            raise InputError(f"--n must be in 1..{MAX_N}")
        if not 1 <= self.max_deg <= MAX_DEG:
            raise InputError(f"--max-deg must be in 1..{MAX_DEG}")
        if not 0 <= self.count <= MAX_COUNT:
            raise InputError(f"--count must be in 0..{MAX_COUNT}")
        return self


def run_suite(cfg: SuiteConfig) -> list[dict]:
    cfg.validate()
    args = [(cfg.seed, i, cfg.n, cfg.max_deg, cfg.strands) for i in range(cfg.count)]
    if cfg.jobs > 1 and cfg.count > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as ex:
            results = list(ex.map(run_instance, *zip(*args)))
    else:
        results = [run_instance(*a) for a in args]
    return sorted(results, key=lambda r: r["id"])


def cmd_suite(args, out) -> int:
    seed = default_seed() if args.seed is None else args.seed
    results = run_suite(SuiteConfig(args.n, args.max_deg, args.count, seed, args.jobs, not args.no_strands))
    tally = {s: sum(r["status"] == s for r in results) for s in ("pass", "fail", "inconclusive")}
    checks = [c for r in results for c in r["checks"]]
    if args.json:
        # timings would break byte-identical reruns
        inst = [{k: v for k, v in r.items() if k not in ("checks", "seconds")} |
                {"failed": [c.name for c in r["checks"] if c.status != "pass"]} for r in results]
        doc = ReportDocument("suite", {"tally": tally, "instances": inst}, checks, seed,
                             {"n": args.n, "max_deg": args.max_deg, "count": args.count})
        print(doc.dumps(), file=out)
    else:
        for r in results:
            print(f"#{r['id']:3d} {r['status']:12s} d={r.get('d')} b={r.get('b')} Stab={r.get('stab')} "
                  f"reg_B={fmt(r.get('reg_B'))}  {r['ideal'].splitlines()[-1]} ...", file=out)
            for c in r["checks"]:
                if c.status == "fail":
                    print(f"     FAIL {c.name}: {fmt(c.lhs)} {c.relation} {fmt(c.rhs)}", file=out)
                    print("     instance:\n" + "".join("       " + ln + "\n" for ln in r["ideal"].splitlines()),
                          file=out, end="")
        print(f"suite: {tally['pass']} pass, {tally['fail']} fail, {tally['inconclusive']} inconclusive", file=out)
    return EXIT_VIOLATION if tally["fail"] else (EXIT_UNCERTIFIED if args.strict and tally["inconclusive"] else EXIT_OK)


# --------------------------------------------------------------------------
# gvt-check


def gvt_checks(I: IdealSpec, T: int) -> list[Check]:
    """Closed-form Hilbert function of A/I^t against the engine, plus reg(I^t)."""
    degs = I.degrees
    n = I.nvars
    if len(degs) != n or len(set(degs)) != 1 or not is_m_primary(groebner(I)):
        raise InputError("gvt-check needs n forms of one degree generating an m-primary ideal")
    d = degs[0]
    base = hilbert_table(groebner(I))
    eng = engine_for(I)
    checks = []
    for t in range(1, T + 1):
        top = t * d + (n - 1) * (d - 1)  # = reg(I^t), so (A/I^t)_top = 0
        bad = []
        for e in range(0, top + 1):
            mu = e - t * d
            if ci_power_dimension(degs, base, mu, t) != eng.hilbert(t, e):
                bad.append(e)
        checks.append(Check(f"gvt-dims[t={t}]", "dim (A/I^t)_e from the complete-intersection formula",
                            len(bad), 0, "==", not bad, True, f"degrees {bad}" if bad else ""))
        checks.append(compare(f"ci-reg[t={t}]", "reg(I^t) = td + (n-1)(d-1)", eng.full_threshold(t), "==",
                              t * d + (n - 1) * (d - 1)))
    return checks


def cmd_gvt(args, out) -> int:
    I = load_ideal(args.file)
    checks = gvt_checks(I, args.tmax)
    doc = ReportDocument("gvt-check", {"ideal": str(I), "T": args.tmax}, checks, None, {"T": args.tmax})
    if args.json:
        print(doc.dumps(), file=out)
    else:
        print(f"ideal {I}", file=out)
        _print_checks(checks, out)
    return _exit_code(checks, False)


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="regstab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="regularity table and stabilization invariants")
    a.add_argument("file")
    a.add_argument("--tmax", type=int, default=None)
    a.add_argument("--window", type=int, default=None)
    a.add_argument("--json", action="store_true")
    a.add_argument("--csv", metavar="PATH", help="write the t,reg,f table")
    a.add_argument("--strict", action="store_true", help="exit 3 on uncertified results")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("strand", help="Koszul homology and cohomology of a Rees strand")
    s.add_argument("file")
    s.add_argument("--mu", type=int, default=None, help="strand offset (default b)")
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--tmax", type=int, default=None)
    s.add_argument("--cutoff", type=int, default=None)
    s.add_argument("--json", action="store_true")
    s.add_argument("--csv", metavar="PATH", help="write the j,t,beta table of the Rees strand")
    s.add_argument("--strict", action="store_true")
    s.set_defaults(func=cmd_strand)

    u = sub.add_parser("suite", help="randomized verification over m-primary ideals")
    u.add_argument("--n", type=int, default=2)
    u.add_argument("--max-deg", type=int, default=4)
    u.add_argument("--count", type=int, default=20)
    u.add_argument("--seed", type=int, default=None)
    u.add_argument("--jobs", type=int, default=1)
    u.add_argument("--no-strands", action="store_true", help="skip the strand verifiers")
    u.add_argument("--json", action="store_true")
    u.add_argument("--strict", action="store_true")
    u.set_defaults(func=cmd_suite)

    g = sub.add_parser("gvt-check", help="complete-intersection Hilbert function formula vs. the engine")
    g.add_argument("file")
    g.add_argument("--tmax", type=int, default=5)
    g.add_argument("--json", action="store_true")
    g.set_defaults(func=cmd_gvt)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except NotMPrimaryIdeal as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (IdealFileError, InputError, HorizonTooSmall, CutoffTooLarge, FieldTooSmall, OSError) as exc:
        hint = ""
        if isinstance(exc, (HorizonTooSmall, CutoffTooLarge)):
            hint = " (raise --tmax)"
        elif isinstance(exc, FieldTooSmall):
            hint = " (use a larger prime in the field line)"
        print(f"error: {exc}{hint}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
