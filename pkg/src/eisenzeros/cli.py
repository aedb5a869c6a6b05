"""Command-line interface.

Exit codes: 0 success, 1 identity mismatch, 2 undecided certification,
3 evaluation point outside the q-region, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys
from fractions import Fraction

from .certify import Report, Verdict, certify_all
from .exactnum import AlgebraicPoint, Base, ComplexEnclosure, Form, RealEnclosure
from .evaluate import (DEFAULT_PARAMS, EvalParams, RegionViolation, TailDiverges, decimal_view,
                       evaluate_at, evaluate_point)
from .geometry import relocate
from .graded import (DEFAULT_MARGIN, PRINTED_RELATIONS, RelationPoly, discover_relation,
                     relation_sides, sturm_order)
from .qseries import SUPPORTED_LEVELS, SeriesId, etilde

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_UNDECIDED = 2
EXIT_REGION = 3
EXIT_USAGE = 64


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- parsing helpers ----------------------------------------------------------

def level_arg(text: str) -> int:
    try:
        N = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid level {text!r}")
    if N not in SUPPORTED_LEVELS:
        raise argparse.ArgumentTypeError(f"level must be one of {SUPPORTED_LEVELS}, got {N}")
    return N


def fraction_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


_ALG_RE = re.compile(r"(base|inv):(i|rho)([+-]\d+)?")
_NUM = r"[0-9]+(?:/[0-9]+|\.[0-9]*)?"
_CPLX_RE = re.compile(rf"([+-]?{_NUM})?(?:([+-])({_NUM})?\*?i|([+-]?{_NUM})\*?i)?")


def parse_point(text: str):
    """AlgebraicPoint for base:/inv: syntax, exact ComplexEnclosure for x+yi."""
    s = text.replace(" ", "")
    if s in ("i", "rho"):
        s = "base:" + s
    m = _ALG_RE.fullmatch(s)
    if m:
        form, base, shift = m.groups()
        base = Base(base)
        if form == "base":
            if shift:
                raise ValueError("base points take no shift")
            return AlgebraicPoint.base_point(base)
        return AlgebraicPoint(base, int(shift or 0), Form.INVERTED)
    m = _CPLX_RE.fullmatch(s)
    if not m or not s:
        raise ValueError(f"cannot parse point {text!r}")
    re_part, sign, im_mag, im_only = m.groups()
    if im_only is not None:
        if re_part is not None:
            raise ValueError(f"cannot parse point {text!r}")
        x, y = Fraction(0), Fraction(im_only)
    else:
        x = Fraction(re_part) if re_part else Fraction(0)
        y = Fraction(0) if sign is None else Fraction(sign + (im_mag or "1"))
    if y <= 0:
        raise ValueError("point must lie in the upper half plane")
    return ComplexEnclosure(x, y)


def parse_grid(text: str):
    """'X0:X1:NX,Y0:Y1:NY' -> (xs, ys)."""
    try:
        xs_spec, ys_spec = text.split(",")
        axes = []
        for spec in (xs_spec, ys_spec):
            a, b, n = spec.split(":")
            a, b, n = Fraction(a), Fraction(b), int(n)
            if n < 1 or b < a:
                raise ValueError
            step = (b - a) / (n - 1) if n > 1 else Fraction(0)
            axes.append([a + step * j for j in range(n)])
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"malformed grid spec {text!r}; expected X0:X1:NX,Y0:Y1:NY")
    if axes[1][0] <= 0:
        raise UsageError("grid must have positive imaginary parts")
    return axes


def params_from(args) -> EvalParams:
    kw = {}
    for name in ("m", "bits", "exp_terms", "r_max"):
        v = getattr(args, name, None)
        if v is not None:
            kw[name] = v
    try:
        return EvalParams(**{**DEFAULT_PARAMS.__dict__, **kw})
    except ValueError as e:
        raise UsageError(str(e))


# -- serialization --------------------------------------------------------------

def rat(x: Fraction) -> list[str]:
    return [str(x.numerator), str(x.denominator)]


def interval_json(x: RealEnclosure) -> list:
    return [rat(x.lo), rat(x.hi)]


def enclosure_json(z: ComplexEnclosure) -> dict:
    return {"re": interval_json(z.re), "im": interval_json(z.im)}


def point_json(p: AlgebraicPoint) -> dict:
    return {"base": p.base.value, "k": p.k, "form": p.form.value}


def relation_json(rel: RelationPoly) -> list:
    return [{"etilde_power": t.power, "e4_power": t.monomial.a, "e6_power": t.monomial.b,
             "coeff": rat(t.coeff)} for t in rel.terms if t.coeff != 0]


def report_json(report: Report) -> dict:
    sep = report.separation()
    return {
        "level": report.level,
        "relation": relation_json(report.relation),
        "relation_verified_to_order": report.verification.order,
        "printed_relation_divergence": [
            {"etilde_power": power, "e4_power": mono.a, "e6_power": mono.b,
             "discovered": rat(ours), "printed": rat(printed)}
            for power, mono, ours, printed in report.comparison.differences],
        "candidates": [
            {"point": point_json(c.point),
             "label": c.point.label(),
             "verdict": c.verdict.value,
             "etilde": enclosure_json(c.etilde_enclosure),
             "cofactor": enclosure_json(c.cofactor_enclosure),
             "relocated": c.relocated,
             "params": {"m": c.params.m, "bits": c.params.bits,
                        "exp_terms": c.params.exp_terms, "r_max": rat(c.params.r_max)}}
            for c in report.certificates],
        "zeros": [point_json(p) for p in report.zeros],
        "separation_lower_bound": rat(sep) if sep is not None else None,
    }


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


# -- commands -------------------------------------------------------------------

def cmd_identities(args) -> int:
    levels = [args.level] if args.level else list(SUPPORTED_LEVELS)
    status = EXIT_OK
    for N in levels:
        order = args.order if args.order is not None else sturm_order(N) + DEFAULT_MARGIN
        rel = PRINTED_RELATIONS[N] if args.as_printed else discover_relation(N)
        source = "printed" if args.as_printed else "discovered"
        print(f"level {N} ({source}): {rel.nonzero()}")
        print(f"  checking q^0..q^{order} (Sturm bound {sturm_order(N)})")
        lhs, rhs = relation_sides(rel, order)
        failures = 0
        for n in range(order + 1):
            ok = lhs[n] == rhs[n]
            failures += not ok
            if args.verbose or not ok:
                print(f"  q^{n}: lhs {lhs[n]}  rhs {rhs[n]}  {'ok' if ok else 'FAIL'}")
        if failures:
            status = EXIT_MISMATCH
            total = rel.coefficient_sum()
            print(f"  FAIL: {failures} of {order + 1} coefficients differ")
            if total != 1:
                print(f"  constant term: coefficients sum to {total}, deficit {1 - total} "
                      "(every series has constant term 1)")
            if args.as_printed:
                for power, mono, printed, found in rel.differences(discover_relation(N)):
                    print(f"  suspect term Et^{power}*{mono}: printed {printed}, "
                          f"coefficient matching forces {found}")
        else:
            print(f"  pass: all {order + 1} coefficients agree")
    return status


def cmd_discover(args) -> int:
    levels = [args.level] if args.level else list(SUPPORTED_LEVELS)
    out = []
    for N in levels:
        rel = discover_relation(N, args.order)
        print(rel.nonzero())
        for power, mono, ours, printed in rel.differences(PRINTED_RELATIONS[N]):
            print(f"  differs from printed at Et^{power}*{mono}: {ours} vs {printed}")
        out.append({"level": N, "relation": relation_json(rel)})
    if args.json:
        _write(args.json, dump_json(out))
    return EXIT_OK


def cmd_certify(args) -> int:
    params = params_from(args)
    levels = [args.level] if args.level else list(SUPPORTED_LEVELS)
    reports = [certify_all(N, params) for N in levels]
    for r in reports:
        print(r.summary())
    if args.json:
        payload = report_json(reports[0]) if len(reports) == 1 else [report_json(r) for r in reports]
        _write(args.json, dump_json(payload))
    return EXIT_UNDECIDED if any(r.undecided for r in reports) else EXIT_OK


def cmd_eval(args) -> int:
    try:
        sid = SeriesId.parse(args.series)
        point = parse_point(args.point)
    except ValueError as e:
        raise UsageError(str(e))
    params = params_from(args)
    note = ""
    try:
        if isinstance(point, AlgebraicPoint):
            value = evaluate_point(sid, point, params)
        else:
            value = evaluate_at(sid, point, params)
    except (RegionViolation, TailDiverges) as e:
        can_move = sid.kind == "ETILDE" and isinstance(point, AlgebraicPoint) \
            and point.form is Form.INVERTED and 0 <= point.k < sid.level
        if not (args.auto_relocate and can_move):
            print(f"error: {e}", file=sys.stderr)
            print("hint: for Etilde at inv:zeta+k with 0 <= k < N, pass --auto-relocate to use "
                  "Etilde(-1/(zeta+k-N)) = (zeta+k-N)^2/(zeta+k)^2 Etilde(-1/(zeta+k))",
                  file=sys.stderr)
            return EXIT_REGION
        moved = relocate(point, sid.level)
        try:
            target = evaluate_point(sid, moved.target, params)
        except (RegionViolation, TailDiverges) as e2:
            print(f"error: relocated point {moved.target} also fails: {e2}", file=sys.stderr)
            return EXIT_REGION
        value = (target / moved.multiplier_enclosure(params.bits)).rounded(params.bits)
        note = f" (via relocation to {moved.target.label()})"
    label = point.label() if isinstance(point, AlgebraicPoint) else args.point
    print(f"{sid}({label}){note}, m={params.m}, bits={params.bits}:")
    for name, part in (("re", value.re), ("im", value.im)):
        lo, hi = decimal_view(part, args.digits)
        print(f"  {name}: [{lo}, {hi}]")
    print(f"  width <= {float(value.width):.3e}; contains 0: {value.contains_zero()}")
    return EXIT_OK


def cmd_scan(args) -> int:
    xs, ys = parse_grid(args.grid)
    params = params_from(args)
    sid = etilde(args.level)
    out = open(args.output, "w", newline="", encoding="utf-8") if args.output else sys.stdout
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["x", "y", "abs_lo", "abs_hi", "status"])
        for y in ys:
            for x in xs:
                xs_, ys_ = _dec(x), _dec(y)
                try:
                    v = evaluate_at(sid, ComplexEnclosure(x, y), params)
                except (RegionViolation, TailDiverges):
                    w.writerow([xs_, ys_, "", "", "SKIPPED"])
                    continue
                lo = decimal_view(RealEnclosure(v.abs_lower(params.bits)), 12)[0]
                hi = decimal_view(RealEnclosure(v.abs_upper(params.bits)), 12)[1]
                w.writerow([xs_, ys_, lo, hi, "OK"])
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def _dec(x: Fraction) -> str:
    lo, hi = decimal_view(RealEnclosure(x), 15)
    return lo if lo == hi else str(float(x))


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# -- entry point ----------------------------------------------------------------

def _add_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--m", "--terms", dest="m", type=int, help="partial-sum order (default 64)")
    p.add_argument("--bits", type=int, help="enclosure precision in bits (default 128)")
    p.add_argument("--exp-terms", dest="exp_terms", type=int, help="Taylor length for exp (default 64)")
    p.add_argument("--r-max", dest="r_max", type=fraction_arg,
                   help="threshold on sup(|Re q|+|Im q|) (default 9/10)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="eisenzeros",
                     description="Certified zeros of the weight-2 Eisenstein series Etilde_N, N = 2, 3, 5, 7.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("identities", help="check the Etilde_N relations coefficientwise")
    p.add_argument("--level", type=level_arg)
    p.add_argument("--order", type=int)
    p.add_argument("--as-printed", action="store_true",
                   help="check the relations as printed instead of the rediscovered ones")
    p.add_argument("-v", "--verbose", action="store_true", help="print every coefficient")
    p.set_defaults(func=cmd_identities)

    p = sub.add_parser("discover", help="solve for the relation coefficients")
    p.add_argument("--level", type=level_arg)
    p.add_argument("--order", type=int)
    p.add_argument("--json")
    p.set_defaults(func=cmd_discover)

    p = sub.add_parser("certify", help="certify every candidate zero")
    p.add_argument("--level", type=level_arg)
    p.add_argument("--json", help="write the certificate report as JSON ('-' for stdout)")
    _add_params(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("eval", help="enclose a series at a point")
    p.add_argument("series", help="E2, E4, E6 or EtildeN")
    p.add_argument("--point", required=True,
                   help="base:i, base:rho, inv:i+3, inv:rho-2, or exact x+yi such as -1/2+1/2i")
    p.add_argument("--auto-relocate", action="store_true")
    p.add_argument("--digits", type=int, default=20)
    _add_params(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("scan", help="tabulate |Etilde_N| enclosures on a grid (CSV)")
    p.add_argument("--level", type=level_arg, required=True)
    p.add_argument("--grid", required=True, help="X0:X1:NX,Y0:Y1:NY")
    p.add_argument("--output", "-o")
    _add_params(p)
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"eisenzeros: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
