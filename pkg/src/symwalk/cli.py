"""Command-line surface: distance profiles, bound sweeps, simulations.

Outputs are machine-readable and reproducible: every file embeds a run
manifest (command, parameters, seed, library version, wall time), CSV uses
a header row with '.' decimals and scientific notation below 1e-4, and
JSON carries one top-level object with "manifest" and "results".

Exit codes: 0 success, 1 verification failure, 2 invalid arguments,
3 resource guard tripped.  SYMWALK_THREADS overrides --threads.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np
from mpmath import mp

from . import __version__, bounds, distances, group_oracle, montecarlo, spectra

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_BAD_ARGS = 2
EXIT_RESOURCE = 3

SUITES = ("rt-discrete", "rt-continuous", "ttr", "four-cycle", "lemmas", "oracle")


# ---------------------------------------------------------------------------
# formatting and manifests
# ---------------------------------------------------------------------------

def fmt_real(x, sig: int = 12) -> str:
    """Decimal rendering: fixed notation, switching to scientific below 1e-4."""
    x = mp.mpf(x)
    if x == 0:
        return "0.0"
    if mp.isnan(x):
        return "nan"
    if abs(x) < mp.mpf("1e-4") or abs(x) >= mp.mpf("1e16"):
        return mpmath.nstr(x, sig, min_fixed=1, max_fixed=0)
    return mpmath.nstr(x, sig, min_fixed=-(10**6), max_fixed=10**6)


@dataclass
class RunManifest:
    command: str
    params: dict
    seed: int | None
    version: str = __version__
    wall_time_s: float = 0.0

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "params": self.params,
            "seed": self.seed,
            "version": self.version,
            "wall_time_s": round(self.wall_time_s, 3),
        }


def _write_csv(path: str, manifest: RunManifest, header: list[str], rows: list[list[str]]) -> None:
    lines = ["# manifest: " + json.dumps(manifest.as_dict(), sort_keys=True)]
    lines.append(",".join(header))
    lines.extend(",".join(row) for row in rows)
    text = "\n".join(lines) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _write_json(path: str, manifest: RunManifest, results) -> None:
    payload = {"manifest": manifest.as_dict(), "results": results}
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# small parsers
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\d+\.?\d*|nlogn|n|[+\-*]")


def eval_time_expr(expr: str, n: int) -> float:
    """Evaluate a time expression in the tokens nlogn, n, numbers, + - *.

    Juxtaposition multiplies, so "nlogn-3n" and "0.5*nlogn+2" both work.
    """
    text = expr.replace("−", "-").replace("·", "*").replace(" ", "")
    pos = 0
    tokens: list[str] = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse time expression {expr!r} at {text[pos:]!r}")
        tokens.append(m.group())
        pos = m.end()

    def value_of(tok: str) -> float:
        if tok == "n":
            return float(n)
        if tok == "nlogn":
            return n * math.log(n)
        return float(tok)

    # fold juxtaposition into explicit products, then evaluate + and - over products
    total = 0.0
    sign = 1.0
    product: float | None = None
    for tok in tokens:
        if tok in "+-":
            if product is None:
                if tok == "-":
                    sign = -sign
                    continue
                raise ValueError(f"misplaced operator in {expr!r}")
            total += sign * product
            product = None
            sign = 1.0 if tok == "+" else -1.0
        elif tok == "*":
            if product is None:
                raise ValueError(f"misplaced '*' in {expr!r}")
        else:
            v = value_of(tok)
            product = v if product is None else product * v
    if product is None:
        raise ValueError(f"empty time expression {expr!r}")
    return total + sign * product


def parse_range(text: str) -> list[int]:
    """Either a single integer or an inclusive 'a..b' range."""
    if ".." in text:
        a, b = text.split("..")
        lo, hi = int(a), int(b)
        if hi < lo:
            raise ValueError(f"empty range {text!r}")
        return list(range(lo, hi + 1))
    return [int(text)]


def _parse_walk_measure(walk: str, n: int) -> spectra.ClassMeasure:
    if walk == "rt":
        return spectra.random_transposition_measure(n)
    if walk.startswith("class:"):
        parts = tuple(int(x) for x in walk.split(":")[1].split(","))
        if sum(parts) > n:
            raise ValueError(f"class {parts} does not fit in S_{n}")
        return spectra.uniform_class_measure(parts + (1,) * (n - sum(parts)))
    if walk.startswith("lazy:"):
        _, parts_text, eps_text = walk.split(":")
        parts = tuple(int(x) for x in parts_text.split(","))
        if sum(parts) > n:
            raise ValueError(f"class {parts} does not fit in S_{n}")
        return spectra.lazy_class_measure(parts + (1,) * (n - sum(parts)), Fraction(eps_text))
    raise ValueError(f"unknown walk {walk!r}")


def _time_grid(spec_text: str, n: int, walk: str, mode: str) -> list[float]:
    if spec_text != "auto":
        return [eval_time_expr(tok, n) for tok in spec_text.split(",")]
    t_ref = n * (math.log(n) + 2) if walk == "ttr-bound" else (n / 2) * (math.log(n) + 2)
    top = 1.3 * t_ref
    if mode == "discrete":
        grid = sorted({int(round(top * i / 24)) for i in range(25)})
        return [float(t) for t in grid]
    return [top * i / 24 for i in range(25)]


# ---------------------------------------------------------------------------
# profile
# ---------------------------------------------------------------------------

def cmd_profile(args) -> int:
    started = time.perf_counter()
    n, prec = args.n, args.precision
    times = _time_grid(args.t_grid, n, args.walk, args.mode)
    if args.mode == "discrete":
        times = [int(t) for t in times]

    if args.walk == "ttr-bound":
        if args.group != "sn":
            raise ValueError("ttr-bound is a symmetric-group curve")
        rows = []
        for t in times:
            if args.mode == "discrete":
                sq = bounds.ttr_bound_sum(n, int(t), prec)
            else:
                sq = bounds.ttr_bound_sum_continuous(n, t, prec)
            rows.append(distances.ProfileRow("ttr-bound", "sn", n, t, mp.sqrt(sq)))
        profile = distances.DistanceProfile("ttr-bound", "sn", n, args.mode, rows)
    else:
        q = _parse_walk_measure(args.walk, n)
        if args.walk == "rt" and args.group != "sn":
            raise ValueError("the random transposition walk lives on S_n")
        profile = distances.class_walk_profile(q, args.group, args.mode, times, prec)

    manifest = RunManifest(
        "profile",
        {
            "walk": args.walk,
            "n": n,
            "group": args.group,
            "mode": args.mode,
            "t_grid": args.t_grid,
            "precision": prec,
        },
        seed=None,
        wall_time_s=time.perf_counter() - started,
    )
    header = ["walk", "group", "n", "t", "d2", "log10_d2_sq"]

    def fmt_time(t) -> str:
        return str(int(t)) if float(t).is_integer() else fmt_real(t)

    csv_rows = [
        [r.walk, r.group, str(r.n), fmt_time(r.t), fmt_real(r.d2), fmt_real(r.log10_d2_sq)]
        for r in profile.rows
    ]
    if args.format == "csv":
        _write_csv(args.out, manifest, header, csv_rows)
    else:
        results = [
            {
                "walk": r.walk,
                "group": r.group,
                "n": r.n,
                "t": int(r.t) if float(r.t).is_integer() else float(r.t),
                "d2": fmt_real(r.d2),  # decimal string: survives sub-float64 tails
                "log10_d2_sq": float(r.log10_d2_sq),
            }
            for r in profile.rows
        ]
        _write_json(args.out, manifest, results)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _theorem_suite(suite: str, ns: list[int], cs: list[float], prec: int) -> list[dict]:
    walk = {
        "rt-discrete": "rt_discrete",
        "rt-continuous": "rt_continuous",
        "ttr": "ttr",
        "four-cycle": "four_cycle",
    }[suite]
    out = []
    for n in ns:
        for c in cs:
            out.append(bounds.theorem_bound(walk, n, c, prec).as_dict())
    return out


def _lemma_suite(ns: list[int], prec: int) -> list[dict]:
    out = []
    for n in ns:
        with mp.workprec(prec):
            if n >= 14:
                terms = bounds.rt_discrete_terms(n, prec)
                for name, computed, guaranteed in (
                    ("phi0<=2", terms.phi0, mp.mpf(2)),
                    ("phi1", terms.phi1, mp.exp(2 - n * mp.log(n) / 6)),
                    ("phi2", terms.phi2, mp.exp(1 - mp.mpf(3) * n * mp.log(n) / 1000)),
                ):
                    out.append(
                        {
                            "name": f"lemma:{name}",
                            "n": n,
                            "c": None,
                            "guaranteed": float(guaranteed),
                            "computed": float(computed),
                            "pass": bool(computed <= guaranteed),
                        }
                    )
            if n >= 10:
                cterms = bounds.rt_continuous_terms(n, prec)
                gamma_bound = 2 * mp.exp(mp.mpf(3) * n / 2 * (mp.log(2) - 1))
                for name, computed, guaranteed in (
                    ("cont_sum_a_low<=2/3", cterms.sum_a_low, mp.mpf(2) / 3),
                    ("cont_sum_a_mid<=1/4", cterms.sum_a_mid, mp.mpf(1) / 4),
                    ("cont_gamma", cterms.gamma, gamma_bound),
                ):
                    out.append(
                        {
                            "name": f"lemma:{name}",
                            "n": n,
                            "c": None,
                            "guaranteed": float(guaranteed),
                            "computed": float(computed),
                            "pass": bool(computed <= guaranteed),
                        }
                    )
    return out


ORACLE_WALKS = ("rt", "ttr", "ri", "class:3", "class:4", "lazy:3:1/2")
_ORACLE_DISCRETE_T = 12
_ORACLE_CONTINUOUS_T = (0.5, 1.0, 2.0, 4.0)
_ORACLE_TOL = 1e-8


def _oracle_element_measure(walk: str, n: int) -> group_oracle.GroupDistribution:
    if walk in ("rt", "ttr", "ri"):
        return group_oracle.element_measure(walk, n)
    if walk.startswith("class:"):
        parts = tuple(int(x) for x in walk.split(":")[1].split(","))
        return group_oracle.element_measure(parts + (1,) * (n - sum(parts)), n)
    if walk.startswith("lazy:"):
        _, parts_text, eps_text = walk.split(":")
        parts = tuple(int(x) for x in parts_text.split(","))
        base = group_oracle.element_measure(parts + (1,) * (n - sum(parts)), n)
        return group_oracle.lazy_mix(base, Fraction(eps_text))
    raise ValueError(f"unknown oracle walk {walk!r}")


def _oracle_suite_one(n: int, walk: str, prec: int) -> dict:
    """Spectral formulas against definitional chi-square from exact convolution."""
    qel = _oracle_element_measure(walk, n)
    powers = group_oracle.convolution_powers_upto(qel, _ORACLE_DISCRETE_T)
    worst = 0.0
    tv_ok = True
    spec = None
    eigvals = None
    if walk in ("rt", "class:3", "class:4", "lazy:3:1/2"):
        spec = spectra.spectrum(_parse_walk_measure(walk, n), "sn")
    elif walk == "ttr":
        eigvals = group_oracle.operator_eigenvalues(qel)
    for t, dist in enumerate(powers):
        chi2 = distances.chi_square_of(dist)
        tv_ok = tv_ok and (2 * distances.tv_of(dist) <= chi2 + 1e-12)
        if spec is not None:
            worst = max(worst, abs(chi2 - float(distances.l2_discrete(spec, t, prec))))
        elif eigvals is not None:
            ref = math.sqrt(float(np.sum(eigvals[1:] ** (2 * t)))) if t else math.sqrt(len(eigvals) - 1)
            worst = max(worst, abs(chi2 - ref))
    if spec is not None:
        for t in _ORACLE_CONTINUOUS_T:
            h, _ = group_oracle.continuous_law(qel, t, tail_tol=1e-14)
            chi2 = distances.chi_square_of(h, normalized=False)
            worst = max(worst, abs(chi2 - float(distances.l2_continuous(spec, t, prec))))
    return {
        "name": f"oracle:{walk}",
        "n": n,
        "c": None,
        "guaranteed": _ORACLE_TOL,
        "computed": worst,
        "pass": bool(worst <= _ORACLE_TOL and tv_ok),
        "details": {"tv_inequality": tv_ok},
    }


def _oracle_suite(ns: list[int], prec: int) -> list[dict]:
    out = []
    for n in ns:
        if n > group_oracle.MAX_DENSE_N:
            raise group_oracle.ResourceGuardError(
                f"oracle verification is capped at n <= {group_oracle.MAX_DENSE_N}"
            )
        for walk in ORACLE_WALKS:
            out.append(_oracle_suite_one(n, walk, prec))
    return out


def _suite_task(payload):
    suite, ns, cs, prec = payload
    if suite == "lemmas":
        return _lemma_suite(ns, prec)
    if suite == "oracle":
        return _oracle_suite(ns, prec)
    return _theorem_suite(suite, ns, cs, prec)


def cmd_verify(args) -> int:
    started = time.perf_counter()
    ns = parse_range(args.n)
    if args.c:
        cs = [float(x) for x in args.c.split(",")]
    elif args.suite in ("rt-continuous", "four-cycle"):
        cs = [2.0, 3.0, 4.0]  # these theorems require c >= 2
    else:
        cs = [0.0, 1.0, 2.0]
    threads = args.effective_threads
    if threads > 1 and len(ns) > 1:
        chunks = [(args.suite, [n], cs, args.precision) for n in ns]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_suite_task, chunks))
        results = [item for part in parts for item in part]
    else:
        results = _suite_task((args.suite, ns, cs, args.precision))
    all_pass = all(r["pass"] for r in results)
    manifest = RunManifest(
        "verify",
        {
            "suite": args.suite,
            "n": args.n,
            "c": args.c,
            "precision": args.precision,
            "threads": threads,
        },
        seed=None,
        wall_time_s=time.perf_counter() - started,
    )
    _write_json(args.out, manifest, results)
    if not all_pass:
        failed = [r for r in results if not r["pass"]]
        print(f"symwalk verify: {len(failed)} of {len(results)} checks failed", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    return EXIT_OK


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------

def cmd_simulate(args) -> int:
    started = time.perf_counter()
    if args.N < 1000:
        raise ValueError("need at least 1000 trajectories for the std-error column")
    t = int(math.ceil(eval_time_expr(args.t, args.n)))
    result = montecarlo.fixed_point_tv_lower(
        args.n, t, args.j, args.N, args.seed, walk=args.walk, progress=True
    )
    manifest = RunManifest(
        "simulate",
        {"walk": args.walk, "n": args.n, "t": args.t, "j": args.j, "N": args.N},
        seed=args.seed,
        wall_time_s=time.perf_counter() - started,
    )
    header = ["walk", "n", "t", "j", "n_samples", "seed", "tv_lower", "std_err", "u_exact"]
    row = [
        args.walk,
        str(args.n),
        str(t),
        str(args.j),
        str(args.N),
        str(args.seed),
        fmt_real(result.estimate),
        fmt_real(result.std_err),
        fmt_real(result.u_exact),
    ]
    _write_csv(args.out, manifest, header, [row])
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symwalk",
        description="Exact spectral analysis of random walks on S_n and A_n.",
    )
    parser.add_argument("--precision", type=int, default=128, metavar="BITS",
                        help="working precision in bits (default 128)")
    parser.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                        help="worker processes for sweeps (SYMWALK_THREADS overrides)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("profile", help="distance curve of one walk")
    p.add_argument("--walk", required=True,
                   help="rt | ttr-bound | class:<parts> | lazy:<parts>:<eps>")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--group", choices=("sn", "an"), default="sn")
    p.add_argument("--mode", choices=("discrete", "continuous"), default="discrete")
    p.add_argument("--t-grid", default="auto", dest="t_grid",
                   help="'auto' or comma-separated expressions in n, nlogn, numbers")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default="-", help="output path ('-' for stdout)")
    p.set_defaults(func=cmd_profile)

    v = sub.add_parser("verify", help="run a verification sweep")
    v.add_argument("--suite", choices=SUITES, required=True)
    v.add_argument("--n", required=True, help="single value or inclusive a..b range")
    v.add_argument("--c", default=None, help="comma-separated c values (default 0,1,2)")
    v.add_argument("--out", default="-", help="output path ('-' for stdout)")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("simulate", help="Monte Carlo TV lower bound")
    s.add_argument("--walk", default="ttr",
                   help="rt | ttr | ri | class:<parts> | lazy:<parts>:<eps>")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--t", required=True, help="time expression, e.g. 'nlogn-3n'")
    s.add_argument("--j", type=int, default=4, help="fixed-point threshold")
    s.add_argument("--N", type=int, required=True, help="trajectory count (>= 1000)")
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--out", default="-", help="output path ('-' for stdout)")
    s.set_defaults(func=cmd_simulate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    env_threads = os.environ.get("SYMWALK_THREADS")
    args.effective_threads = int(env_threads) if env_threads else args.threads
    if args.precision < 53:
        parser.error("--precision must be at least 53 bits")
    try:
        return args.func(args)
    except group_oracle.ResourceGuardError as exc:
        print(f"symwalk: resource guard: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ValueError as exc:
        print(f"symwalk: invalid arguments: {exc}", file=sys.stderr)
        return EXIT_BAD_ARGS


if __name__ == "__main__":
    sys.exit(main())
