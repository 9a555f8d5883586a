"""Command-line front end.

    johnson-pst scheme-info --n 6 --k 3
    johnson-pst pst --n 6 --k 3 --classes 1,2
    johnson-pst survey --kmax 12 --out survey.csv
    johnson-pst verify --kmax 40
    johnson-pst walk --n 6 --k 3 --classes 0 --time pi/2 --from 1,2,3 --to 4,5,6

Exit codes: 0 decided / ok, 1 verification failure, 2 usage error,
3 inconclusive PST verdict.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from datetime import datetime, timezone
from fractions import Fraction

from . import __version__, exactnum, johnson, pst, walk
from .johnson import JohnsonParams, KSubset
from .scheme import build_johnson_scheme, involution_classes

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class UsageError(Exception):
    pass


_PI_TIME = re.compile(r"^\s*(?P<num>\d+(?:/\d+)?)?\s*\*?\s*pi\s*(?:/\s*(?P<den>\d+))?\s*$")


def parse_time(text: str) -> tuple[float, str]:
    """Parse "pi/2", "3pi/4", "3*pi/4", "2pi", "1/3" or "0.25".

    Multiples of pi are kept as an exact fraction until the final float
    conversion. Returns (value, canonical label).
    """
    m = _PI_TIME.match(text.lower())
    if m:
        coef = Fraction(m.group("num") or 1) / Fraction(m.group("den") or 1)
        if coef == 0:
            return 0.0, "0"
        label = "pi" if coef.numerator == 1 else f"{coef.numerator}*pi"
        if coef.denominator != 1:
            label += f"/{coef.denominator}"
        return float(coef) * math.pi, label
    try:
        value = Fraction(text.strip())
    except ValueError:
        raise UsageError(f"cannot parse time {text!r}") from None
    return float(value), str(value)


def parse_classes(text: str, k: int) -> list[int]:
    try:
        out = sorted({int(x) for x in text.split(",") if x.strip()})
    except ValueError:
        raise UsageError(f"invalid class list {text!r}") from None
    if not out:
        raise UsageError("empty class list")
    if any(not 0 <= i < k for i in out):
        raise UsageError(f"classes must lie in 0..{k - 1}: {out}")
    return out


def parse_vertex(text: str, n: int, k: int) -> KSubset:
    try:
        s = KSubset.of([int(x) for x in text.split(",") if x.strip()], n)
    except ValueError as e:
        raise UsageError(f"invalid vertex {text!r}: {e}") from None
    if s.k != k:
        raise UsageError(f"invalid vertex {text!r}: need {k} elements")
    return s


def _check_nk(n: int, k: int):
    if not (k >= 1 and n >= 2 * k):
        raise UsageError(f"invalid parameters: need n >= 2k >= 2, got n={n}, k={k}")


def envelope(command: str, parameters: dict, results) -> dict:
    return {
        "command": command,
        "parameters": parameters,
        "results": results,
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }


# ---------------------------------------------------------------------------
# Commands. Each returns (envelope, exit code, optional CSV text).


def cmd_scheme_info(n: int, k: int):
    _check_nk(n, k)
    s = build_johnson_scheme(n, k, materialize=False)
    classes = []
    for cls in range(s.d + 1):
        i = k - cls
        p = JohnsonParams(n, k, i)
        classes.append({
            "class": cls,
            "intersection": i,
            "valency": s.valencies[cls],
            "eigenvalues": list(s.P[cls]),
            "predicted_connected": johnson.predicted_connected(p) if cls else None,
        })
    results = dict(s.summary(), involution_classes=involution_classes(s), classes=classes)
    return envelope("scheme-info", {"n": n, "k": k}, results), EXIT_OK, None


def _oracle_block(verdict: pst.PstVerdict, step: float) -> dict:
    n, k = verdict.n, verdict.k
    w = walk.SpectralWalkData.johnson(n, k, verdict.classes)
    block = {}
    if n == 2 * k:
        if verdict.has_pst:
            block["amplitude_at_time"] = walk.Amplitude.of(complex(w.amplitudes(k, verdict.time)[0])).to_json()
        else:
            block["amplitude_at_pi_over_2"] = walk.Amplitude.of(complex(w.amplitudes(k, math.pi / 2)[0])).to_json()
        t_star, mx = walk.scan_class(w, k, 2 * math.pi, step)
        block["scan"] = {"pair": "antipodal", "t_max": 2 * math.pi, "step": step,
                         "t_star": t_star, "max_modulus": mx}
    else:
        best = (0.0, -1.0, None)
        for cls in range(1, k + 1):
            t_star, mx = walk.scan_class(w, cls, 2 * math.pi, step)
            if mx > best[1]:
                best = (t_star, mx, cls)
        block["scan"] = {"pair": f"class {best[2]}", "t_max": 2 * math.pi, "step": step,
                         "t_star": best[0], "max_modulus": best[1]}
    block["pst_found"] = block["scan"]["max_modulus"] >= 1 - walk.PST_TOL
    return block


def cmd_pst(n: int, k: int, classes: list[int], step: float = 1e-3):
    _check_nk(n, k)
    verdict = pst.verdict_union(n, k, classes)
    results = {"verdict": verdict.to_json(), "oracle": _oracle_block(verdict, step)}
    code = EXIT_OK if verdict.decided else EXIT_INCONCLUSIVE
    return envelope("pst", {"n": n, "k": k, "classes": classes, "step": step}, results), code, None


SURVEY_COLUMNS = ["k", "i", "binom_k_i_parity", "binom_k1_i_parity", "has_pst",
                  "obstruction", "alpha", "ord2_alpha"]


def survey_rows(k_max: int) -> list[dict]:
    rows = []
    for k in range(2, k_max + 1):
        for i in range(k):
            v = pst.verdict_single_class(2 * k, k, i)
            rows.append({
                "k": k,
                "i": i,
                "binom_k_i_parity": "odd" if exactnum.binom(k, i) % 2 else "even",
                "binom_k1_i_parity": "odd" if exactnum.binom(k - 1, i) % 2 else "even",
                "has_pst": "yes" if v.has_pst else "no",
                "obstruction": v.obstruction.value if v.obstruction else "",
                "alpha": v.evidence["alpha"],
                "ord2_alpha": v.evidence["ord2_alpha"],
            })
    return rows


def rows_to_csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    out = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    out.writeheader()
    out.writerows(rows)
    return buf.getvalue()


def cmd_survey(k_max: int):
    if k_max < 2:
        raise UsageError("kmax must be at least 2")
    rows = survey_rows(k_max)
    return envelope("survey", {"kmax": k_max}, {"rows": rows}), EXIT_OK, rows_to_csv(rows, SURVEY_COLUMNS)


def _corrupted_cell(k_max: int):
    for k in range(2, k_max + 1):
        for i in range(1, k):
            if exactnum.binom(k, i) % 2:
                return k, i
    return None


def cmd_verify(k_max: int, corrupt: bool = False):
    if k_max < 2:
        raise UsageError("kmax must be at least 2")
    target = None
    if corrupt:
        target = _corrupted_cell(k_max)
        if target is None:
            raise UsageError(f"no cell with an applicable lemma for kmax={k_max} to corrupt")

    suites = {
        "lucas": exactnum.lucas_counterexamples(512),
        "parity_corollary": exactnum.parity_corollary_counterexamples(512),
        "vandermonde": exactnum.vandermonde_counterexamples(64),
        "either_or": exactnum.either_or_counterexamples(max(k_max, 2)),
        "triple_binomial": exactnum.triple_binomial_counterexamples(max(k_max, 2)),
        "odd_summation": exactnum.odd_summation_counterexamples(max(k_max, 2)),
    }
    failures = [{"suite": name, "case": list(map(str, case))} for name, bad in suites.items() for case in bad]

    counts = {"a": 0, "b": 0, "c": 0, "d": 0}
    for k in range(2, k_max + 1):
        for i in range(1, k):
            lam = None
            if (k, i) == target:
                lam = johnson.eigenvalues(JohnsonParams(2 * k, k, i))
                lam[i] += 1
            res = pst.validate_congruence_lemmas(k, i, lam)
            for check, ok in res.items():
                if ok == pst.SKIPPED:
                    continue
                counts[check] += 1
                if not ok:
                    failures.append({"k": k, "i": i, "check": check})

    results = {
        "suites": {name: len(bad) == 0 for name, bad in suites.items()},
        "lemma_checks_run": counts,
        "failures": failures,
        "passed": not failures,
    }
    params = {"kmax": k_max, "corrupt": corrupt}
    return envelope("verify", params, results), EXIT_OK if not failures else EXIT_FAIL, None


def cmd_walk(n: int, k: int, classes: list[int], time_text: str, src: str, dst: str,
             trace: bool = False, t_max: str = "2pi", step: float = 1e-2):
    _check_nk(n, k)
    t, label = parse_time(time_text)
    a, b = parse_vertex(src, n, k), parse_vertex(dst, n, k)
    w = walk.SpectralWalkData.johnson(n, k, classes)
    ra, rb = johnson.rank(a), johnson.rank(b)
    amp = walk.transition_entry(w, ra, rb, t)
    results = {
        "from": list(a.elements),
        "to": list(b.elements),
        "ranks": [ra + 1, rb + 1],
        "time": t,
        "time_label": label,
        "eigenvalues": list(w.eigenvalues),
        "amplitude": amp.to_json(),
    }
    params = {"n": n, "k": k, "classes": classes, "time": time_text,
              "from": src, "to": dst, "trace": trace}
    text = None
    if trace:
        t_end, _ = parse_time(t_max)
        num = int(math.floor(t_end / step + 1e-9))
        times = [step * m for m in range(num + 1)]
        text = walk.trace_to_csv(walk.amplitude_trace(w, ra, rb, times))
        params.update(tmax=t_max, step=step)
    return envelope("walk", params, results), EXIT_OK, text


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="johnson-pst", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def io_flags(p):
        p.add_argument("--json", action="store_true", help="JSON report on stdout (default)")
        p.add_argument("--csv", action="store_true", help="print CSV on stdout instead of JSON")
        p.add_argument("--out", help="write CSV to this path")

    p = sub.add_parser("scheme-info", help="eigenmatrix, valencies and multiplicities of J(n,k)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    io_flags(p)

    p = sub.add_parser("pst", help="PST verdict for a class or a union of classes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--classes", required=True, help="comma list of intersection sizes")
    p.add_argument("--step", type=float, default=1e-3, help="oracle scan step")
    io_flags(p)

    p = sub.add_parser("survey", help="single-class verdicts of J(2k,k) for 2 <= k <= kmax")
    p.add_argument("--kmax", type=int, required=True)
    io_flags(p)

    p = sub.add_parser("verify", help="run the identity suites and lemma validators")
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--corrupt", action="store_true", help="negative control: flip one eigenvalue")
    io_flags(p)

    p = sub.add_parser("walk", help="transition amplitude between two k-subsets")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--classes", required=True)
    p.add_argument("--time", default="pi/2")
    p.add_argument("--from", dest="src", required=True)
    p.add_argument("--to", dest="dst", required=True)
    p.add_argument("--trace", action="store_true", help="amplitude CSV over a time grid")
    p.add_argument("--tmax", default="2pi")
    p.add_argument("--step", type=float, default=1e-2)
    io_flags(p)
    return parser


def run(argv=None) -> tuple[dict, int, str | None, argparse.Namespace]:
    args = build_parser().parse_args(argv)
    if args.command == "scheme-info":
        out = cmd_scheme_info(args.n, args.k)
    elif args.command == "pst":
        _check_nk(args.n, args.k)
        if args.step <= 0:
            raise UsageError("step must be positive")
        out = cmd_pst(args.n, args.k, parse_classes(args.classes, args.k), args.step)
    elif args.command == "survey":
        out = cmd_survey(args.kmax)
    elif args.command == "verify":
        out = cmd_verify(args.kmax, args.corrupt)
    else:
        _check_nk(args.n, args.k)
        if args.step <= 0:
            raise UsageError("step must be positive")
        out = cmd_walk(args.n, args.k, parse_classes(args.classes, args.k), args.time,
                       args.src, args.dst, args.trace, args.tmax, args.step)
    return (*out, args)


def main(argv=None) -> int:
    try:
        report, code, text, args = run(argv)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if text is not None and args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    if args.csv and text is not None:
        sys.stdout.write(text)
    else:
        json.dump(report, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
