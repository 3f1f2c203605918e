"""Command-line interface.

Three command groups:

- ``pvalue``: two-sided p-values for a point under a distribution.
- ``test``: variance, F, binomial, and Fisher exact tests.
- ``analyze``: UMPU weights, bias reports, weight/p-value tables, and
  figure-data series.

Output is a JSON envelope (schema ``twoside/1``) echoing the inputs,
or CSV for tabular payloads via ``--format csv`` (figure data is always
CSV). Numbers are serialized to 10 significant digits; byte output is
deterministic for identical inputs. Exit codes: 0 success, 2 usage error,
3 domain error (invalid parameter values, degenerate inputs).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from typing import Sequence

from . import analysis, pvalue, stattests
from .dist import (
    Binomial,
    ChiSquare,
    Distribution,
    FRatio,
    Hypergeometric,
    NoncentralHypergeometric,
    Triangular,
    TruncatedNormal,
    Uniform,
)

__all__ = ["main", "UsageError"]

SCHEMA_VERSION = "twoside/1"


class UsageError(Exception):
    """Malformed command line; maps to exit code 2."""


# family name -> (constructor, parameter names, parameter parsers)
_DIST_FAMILIES = {
    "chisq": (ChiSquare, ("df",), ("int",)),
    "f": (FRatio, ("d1", "d2"), ("int", "int")),
    "unif": (Uniform, ("lower", "upper"), ("float", "float")),
    "tri": (Triangular, ("left", "right"), ("float", "float")),
    "truncnorm": (TruncatedNormal, ("cutoff",), ("float",)),
    "binom": (Binomial, ("n", "p"), ("int", "float")),
    "hyper": (Hypergeometric, ("row1", "col1", "total"), ("int", "int", "int")),
    "nchyper": (NoncentralHypergeometric, ("row1", "col1", "total", "odds"),
                ("int", "int", "int", "float")),
}

_DIST_HELP = ("distribution as family:p1,p2,... — one of "
              + "; ".join(f"{name}:{','.join(params)}"
                          for name, (_, params, _) in _DIST_FAMILIES.items()))

_ANCHOR_HELP = "tail anchor: mean, mode, median, or value:V (default mean)"

_METHOD_HELP = ("comma-separated p-value methods: doubled, conditional, "
                "conditional_modified, min_likelihood (alias minlik), "
                "weighted:WL, or all (default all)")

_METHOD_ALIASES = {
    "doubled": pvalue.DOUBLED,
    "conditional": pvalue.CONDITIONAL,
    "conditional_modified": pvalue.CONDITIONAL_MODIFIED,
    "conditional-modified": pvalue.CONDITIONAL_MODIFIED,
    "min_likelihood": pvalue.MIN_LIKELIHOOD,
    "minlik": pvalue.MIN_LIKELIHOOD,
}

_BIAS_METHOD_ALIASES = {
    "doubled": pvalue.DOUBLED,
    "conditional": pvalue.CONDITIONAL,
    "umpu": analysis.UMPU,
    "min_likelihood": pvalue.MIN_LIKELIHOOD,
    "minlik": pvalue.MIN_LIKELIHOOD,
}


def _parse_number(token: str, kind: str, context: str) -> float | int:
    token = token.strip()
    try:
        if kind == "int":
            return int(token)
        return float(token)
    except ValueError:
        raise UsageError(f"{context}: expected {'an integer' if kind == 'int' else 'a number'}, "
                         f"got {token!r}") from None


def parse_dist(spec: str) -> Distribution:
    """Construct a distribution from the family:p1,p2,... mini-grammar."""
    family, sep, rest = spec.partition(":")
    if family not in _DIST_FAMILIES:
        supported = ", ".join(sorted(_DIST_FAMILIES))
        raise UsageError(f"unknown distribution family {family!r}; supported: {supported}")
    ctor, names, kinds = _DIST_FAMILIES[family]
    tokens = rest.split(",") if sep and rest else []
    if len(tokens) != len(names):
        raise UsageError(f"{family} takes {len(names)} parameter(s) "
                         f"({','.join(names)}), got {len(tokens)}")
    args = [_parse_number(tok, kind, f"{family} parameter {name}")
            for tok, kind, name in zip(tokens, kinds, names)]
    return ctor(*args)


def parse_anchor(text: str) -> pvalue.TailAnchor:
    if text in (pvalue.MEAN, pvalue.MODE, pvalue.MEDIAN):
        return text
    if text.startswith("value:"):
        return float(_parse_number(text[len("value:"):], "float", "anchor value"))
    raise UsageError(f"bad anchor {text!r}; expected mean, mode, median, or value:V")


def parse_methods(text: str, is_discrete: bool) -> list[tuple[str, pvalue.Weights | None]]:
    """Expand a method list into (method, weights) pairs."""
    out: list[tuple[str, pvalue.Weights | None]] = []
    for token in text.split(","):
        token = token.strip()
        if token == "all":
            if is_discrete:
                names = (pvalue.DOUBLED, pvalue.CONDITIONAL,
                         pvalue.CONDITIONAL_MODIFIED, pvalue.MIN_LIKELIHOOD)
            else:
                names = (pvalue.DOUBLED, pvalue.CONDITIONAL, pvalue.MIN_LIKELIHOOD)
            out.extend((name, None) for name in names)
        elif token.startswith("weighted:"):
            w_left = float(_parse_number(token[len("weighted:"):], "float", "weighted weight"))
            if not (0.0 < w_left < 1.0):
                raise UsageError(f"weighted:WL needs WL in (0, 1), got {w_left!r}")
            out.append((pvalue.WEIGHTED, pvalue.Weights(w_left, 1.0 - w_left)))
        elif token in _METHOD_ALIASES:
            out.append((_METHOD_ALIASES[token], None))
        else:
            raise UsageError(f"unknown p-value method {token!r}")
    if not out:
        raise UsageError("empty method list")
    return out


def _parse_int_list(text: str, context: str) -> list[int]:
    return [int(_parse_number(tok, "int", context)) for tok in text.split(",")]


def _parse_float_list(text: str, context: str) -> list[float]:
    return [float(_parse_number(tok, "float", context)) for tok in text.split(",")]


def _round_floats(value):
    """Round every float to 10 significant digits, recursively."""
    if isinstance(value, bool):
        return value
    if isinstance(value, float):
        return float(f"{value:.10g}")
    if isinstance(value, dict):
        return {k: _round_floats(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_round_floats(v) for v in value]
    return value


def _format_cell(value) -> str:
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, float):
        return f"{value:.10g}"
    return str(value)


def _render_csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_format_cell(v) for v in row])
    return buf.getvalue()


def _render_json(command: str, inputs: dict, results, warning_list: list[str]) -> str:
    envelope = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": _round_floats(inputs),
        "results": _round_floats(results),
        "warnings": warning_list,
    }
    return json.dumps(envelope, indent=2) + "\n"


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _weights_payload(w: pvalue.Weights) -> dict:
    return {"w_left": w.w_left, "w_right": w.w_right}


def _report_payload(report: stattests.TestReport) -> dict:
    return {
        "statistic": report.statistic,
        "anchor": report.anchor,
        "weights": _weights_payload(report.weights),
        "p_left": report.p_left,
        "p_right": report.p_right,
        "p_two_sided": report.p_two_sided,
        "direction": report.direction,
    }


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twoside",
        description="Two-sided p-values, tests, and power/bias analysis "
                    "for asymmetric null distributions.",
    )
    top = parser.add_subparsers(dest="command", required=True, metavar="command")

    p_pv = top.add_parser("pvalue", help="two-sided p-values for one observation")
    p_pv.add_argument("--dist", required=True, help=_DIST_HELP)
    p_pv.add_argument("--x", required=True, type=float, help="observed value")
    p_pv.add_argument("--anchor", default="mean", help=_ANCHOR_HELP)
    p_pv.add_argument("--method", default="all", help=_METHOD_HELP)
    p_pv.add_argument("--no-truncate", action="store_true",
                      help="report the doubled p-value without capping at 1")
    p_pv.add_argument("--out", help="write output to a file instead of stdout")

    p_test = top.add_parser("test", help="statistical tests")
    test_sub = p_test.add_subparsers(dest="subcommand", required=True, metavar="kind")

    t_var = test_sub.add_parser("variance", help="one-sample variance test")
    t_var.add_argument("--s2", type=float, help="sample variance")
    t_var.add_argument("--n", type=int, help="sample size")
    t_var.add_argument("--data", help="file with one observation per line "
                                      "(alternative to --s2/--n)")
    t_var.add_argument("--sigma0sq", required=True, type=float, help="null variance")

    t_f = test_sub.add_parser("f", help="two-sample variance-ratio test")
    t_f.add_argument("--s1sq", required=True, type=float, help="first sample variance")
    t_f.add_argument("--n1", required=True, type=int, help="first sample size")
    t_f.add_argument("--s2sq", required=True, type=float, help="second sample variance")
    t_f.add_argument("--n2", required=True, type=int, help="second sample size")

    t_b = test_sub.add_parser("binomial", help="exact binomial test")
    t_b.add_argument("--x", required=True, type=int, help="number of successes")
    t_b.add_argument("--n", required=True, type=int, help="number of trials")
    t_b.add_argument("--p0", required=True, type=float, help="null success probability")

    t_fi = test_sub.add_parser("fisher", help="Fisher's exact test for a 2x2 table")
    t_fi.add_argument("--table", required=True,
                      help="cell counts a,b,c,d (row-major: n11,n12,n21,n22)")

    for sub in (t_var, t_f, t_b, t_fi):
        sub.add_argument("--anchor", default="mean", help=_ANCHOR_HELP)
        sub.add_argument("--method", default=None, help=_METHOD_HELP)
        sub.add_argument("--out", help="write output to a file instead of stdout")

    p_an = top.add_parser("analyze", help="power, bias, and table/figure data")
    an_sub = p_an.add_subparsers(dest="subcommand", required=True, metavar="what")

    a_umpu = an_sub.add_parser("umpu", help="unbiased-test weights and critical region")
    a_umpu.add_argument("--dist", required=True, help=_DIST_HELP)
    a_umpu.add_argument("--alpha", required=True, type=float, help="test level")
    a_umpu.add_argument("--out", help="write output to a file instead of stdout")

    a_bias = an_sub.add_parser("bias", help="minimum power minus level over alternatives")
    a_bias.add_argument("--dist", required=True, help=_DIST_HELP)
    a_bias.add_argument("--method", required=True,
                        help="doubled, conditional, umpu, or min_likelihood")
    a_bias.add_argument("--alpha", required=True, type=float, help="test level")
    a_bias.add_argument("--anchor", default="mean", help=_ANCHOR_HELP)
    a_bias.add_argument("--out", help="write output to a file instead of stdout")

    a_t1 = an_sub.add_parser("table1", help="binomial tail-weight table")
    a_t1.add_argument("--n", default=None, help="comma-separated sample sizes")
    a_t1.add_argument("--p", default=None, help="comma-separated success probabilities")
    a_t1.add_argument("--format", default="json", choices=("json", "csv"),
                      help="output format (default json)")
    a_t1.add_argument("--out", help="write output to a file instead of stdout")

    a_t2 = an_sub.add_parser("table2", help="hypergeometric p-value table")
    a_t2.add_argument("--margins", required=True,
                      help="row1,col1,total of the margin family")
    a_t2.add_argument("--format", default="json", choices=("json", "csv"),
                      help="output format (default json)")
    a_t2.add_argument("--out", help="write output to a file instead of stdout")

    a_fig = an_sub.add_parser(
        "figure",
        help="figure-data series (CSV). fig1: rho, power of the four 5%%-level "
             "chi-square(5) tests. fig2: panel, n, bias of doubled/conditional tests "
             "(one_sample n=3..50; two_sample n1=6, n2=4..50). fig3: panel, x, three "
             "p-value curves for chisq5 (x in [0,20]) and truncnorm05 (x in [-0.5,4]); "
             "the doubled series is untruncated. fig4: panel, x, four p-value curves "
             "over the support of binom10 and binom11 (p=0.2).")
    a_fig.add_argument("--which", required=True, choices=analysis.FIGURES,
                       help="which figure's data to emit")
    a_fig.add_argument("--resolution", default=512, type=int,
                       help="grid resolution for continuous axes (default 512)")
    a_fig.add_argument("--out", help="write output to a file instead of stdout")

    return parser


def _cmd_pvalue(args: argparse.Namespace) -> str:
    d = parse_dist(args.dist)
    anchor = parse_anchor(args.anchor)
    methods = parse_methods(args.method, d.is_discrete)
    truncate = not args.no_truncate
    anchor_value = pvalue.resolve_anchor(d, anchor)
    weights = pvalue.tail_weights(d, anchor_value)
    p_values = {}
    for method, w in methods:
        p_values[method] = pvalue.p_value(d, args.x, method, anchor_value=anchor_value,
                                          weights=w, truncate=truncate)
    inputs = {
        "dist": args.dist,
        "x": args.x,
        "anchor": args.anchor,
        "method": args.method,
        "truncate": truncate,
    }
    results = {
        "anchor": anchor_value,
        "weights": _weights_payload(weights),
        "p_values": p_values,
    }
    return "pvalue", inputs, results


def _method_names(text: str | None, is_discrete: bool) -> list[str] | None:
    if text is None:
        return None
    names = []
    for method, w in parse_methods(text, is_discrete):
        if w is not None:
            raise UsageError("weighted:WL is supported by the pvalue command only")
        names.append(method)
    return names


def _cmd_test(args: argparse.Namespace) -> str:
    anchor = parse_anchor(args.anchor)
    if args.subcommand == "variance":
        if args.data is not None:
            if args.s2 is not None or args.n is not None:
                raise UsageError("pass either --data or --s2/--n, not both")
            sample = _read_sample(args.data)
            methods = _method_names(args.method, False)
            report = stattests.variance_test_from_sample(sample, args.sigma0sq,
                                                         anchor=anchor, methods=methods)
            inputs = {"data": args.data, "n": len(sample), "sigma0sq": args.sigma0sq}
        else:
            if args.s2 is None or args.n is None:
                raise UsageError("variance test needs --s2 and --n (or --data)")
            methods = _method_names(args.method, False)
            report = stattests.variance_test(args.s2, args.n, args.sigma0sq,
                                             anchor=anchor, methods=methods)
            inputs = {"s2": args.s2, "n": args.n, "sigma0sq": args.sigma0sq}
    elif args.subcommand == "f":
        methods = _method_names(args.method, False)
        report = stattests.f_test(args.s1sq, args.n1, args.s2sq, args.n2,
                                  anchor=anchor, methods=methods)
        inputs = {"s1sq": args.s1sq, "n1": args.n1, "s2sq": args.s2sq, "n2": args.n2}
    elif args.subcommand == "binomial":
        methods = _method_names(args.method, True)
        report = stattests.binomial_test(args.x, args.n, args.p0,
                                         anchor=anchor, methods=methods)
        inputs = {"x": args.x, "n": args.n, "p0": args.p0}
    else:
        cells = _parse_int_list(args.table, "table cell")
        if len(cells) != 4:
            raise UsageError(f"--table needs 4 cell counts, got {len(cells)}")
        table = stattests.ContingencyTable(*cells)
        methods = _method_names(args.method, True)
        report = stattests.fisher_exact(table, anchor=anchor, methods=methods)
        inputs = {"table": cells}
    inputs["anchor"] = args.anchor
    if args.method is not None:
        inputs["method"] = args.method
    return f"test.{args.subcommand}", inputs, _report_payload(report)


def _read_sample(path: str) -> list[float]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = [line.strip() for line in fh]
    except OSError as exc:
        raise UsageError(f"cannot read data file: {exc}") from None
    sample = []
    for i, line in enumerate(lines, start=1):
        if not line:
            continue
        try:
            sample.append(float(line))
        except ValueError:
            raise UsageError(f"{path}:{i}: not a number: {line!r}") from None
    if len(sample) < 2:
        raise UsageError(f"{path}: need at least two observations, got {len(sample)}")
    return sample


def _cmd_analyze(args: argparse.Namespace) -> str:
    if args.subcommand == "umpu":
        d = parse_dist(args.dist)
        w_star, region = analysis.umpu_weights(d, args.alpha)
        inputs = {"dist": args.dist, "alpha": args.alpha}
        results = {
            "w_left": w_star,
            "c_left": region.c_left,
            "c_right": region.c_right,
            "alpha_left": w_star * args.alpha,
            "alpha_right": (1.0 - w_star) * args.alpha,
            "anchor": region.anchor,
        }
        return "analyze.umpu", inputs, results

    if args.subcommand == "bias":
        d = parse_dist(args.dist)
        if args.method not in _BIAS_METHOD_ALIASES:
            raise UsageError(f"unknown bias method {args.method!r}; expected one of "
                             "doubled, conditional, umpu, min_likelihood")
        report = analysis.bias(d, _BIAS_METHOD_ALIASES[args.method], args.alpha,
                               anchor=parse_anchor(args.anchor))
        inputs = {"dist": args.dist, "method": args.method, "alpha": args.alpha,
                  "anchor": args.anchor}
        results = {
            "method": report.method,
            "level": report.level,
            "min_power": report.min_power,
            "bias": report.bias,
            "argmin_rho": report.argmin_rho,
        }
        return "analyze.bias", inputs, results

    if args.subcommand == "table1":
        ns = _parse_int_list(args.n, "table1 n") if args.n else list(analysis.TABLE1_NS)
        ps = _parse_float_list(args.p, "table1 p") if args.p else list(analysis.TABLE1_PS)
        rows = analysis.binomial_weight_table(ns, ps)
        header = ["n", "p", "w_left", "weight_ratio", "w_left_modified"]
        if args.format == "csv":
            return "csv", _render_csv(header, [[r[k] for k in header] for r in rows])
        inputs = {"n": ns, "p": ps}
        return "analyze.table1", inputs, {"rows": rows}

    if args.subcommand == "table2":
        margins = _parse_int_list(args.margins, "margins")
        if len(margins) != 3:
            raise UsageError(f"--margins needs row1,col1,total, got {len(margins)} values")
        rows = analysis.fisher_pvalue_table(*margins)
        header = ["n11", "prob", "p_one_sided", "p_min_likelihood", "p_conditional"]
        if args.format == "csv":
            return "csv", _render_csv(header, [[r[k] for k in header] for r in rows])
        inputs = {"margins": margins}
        return "analyze.table2", inputs, {"rows": rows}

    header, rows = analysis.figure_data(args.which, args.resolution)
    return "csv", _render_csv(header, rows)


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handler = {"pvalue": _cmd_pvalue, "test": _cmd_test, "analyze": _cmd_analyze}
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            payload = handler[args.command](args)
        warning_list = [str(w.message) for w in caught]
        if payload[0] == "csv":
            text = payload[1]
            for message in warning_list:
                print(f"warning: {message}", file=sys.stderr)
        else:
            command, inputs, results = payload
            text = _render_json(command, inputs, results, warning_list)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    _emit(text, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
