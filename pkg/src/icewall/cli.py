"""Command-line front end: compute the partition function by any
representation, sweep parameters, run the verification suites, and dump
small-lattice configurations.  JSON output carries ``schema: 1``; CSV is
RFC-4180 (CRLF, quoted as needed).  Results can be cached on disk keyed by
a hash of the canonicalized job; a cache hit re-emits the stored record
byte-for-byte.
"""

from __future__ import annotations

import argparse
import cmath
import csv
import hashlib
import io
import json
import math
import os
import sys
import time
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .enumeration import DP_LIMIT, ENUM_LIMIT, ASM_COUNTS, dump_configs, \
    enumerate_configs, config_iterator, partition_dp
from .errors import SingularParameterError
from .fredholm import KernelSpec, default_plan, fredholm_det, \
    full_partition_fredholm, trace_moments
from .hankel import det_a_deviation, alpha_det_deviation, partition_hankel
from .logscale import LogScaledValue, PrecisionContext
from .orthopoly import connection_coeffs, inm_closed, inm_quadrature, \
    key_conjugation_check, mp_eval, su11_matrices
from .params import ModelParams, VertexWeights, check_unitarity, \
    symmetric_weights
from .wmatrix import BetaGamma, full_partition, full_partition_gauss, \
    rational_z_tilde, w_entry, w_matrix, w_matrix_gauss

REPRESENTATIONS = ("enumerate", "dp", "hankel", "wdet", "gauss",
                   "fredholm-disordered", "fredholm-discrete",
                   "fredholm-rational")

SCHEMA = 1

CSV_COLUMNS = ("representation", "n", "lambda_re", "lambda_im",
               "eta_re", "eta_im", "log_abs_z", "phase", "f_n",
               "elapsed_ms", "warnings")


# --------------------------------------------------------------------------
# job configuration and records


def parse_complex(text: str) -> complex:
    """Complex scalar from 're' or 're,im'."""
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise argparse.ArgumentTypeError(f"expected 're' or 're,im', got {text!r}")


def parse_weights(text: str) -> tuple:
    parts = text.split(",")
    if len(parts) != 6:
        raise argparse.ArgumentTypeError("--weights takes exactly six values")
    return tuple(float(p) for p in parts)


@dataclass(frozen=True)
class JobConfig:
    command: str
    representation: str
    n: int
    lam: complex
    eta: complex
    weights: Optional[tuple] = None
    bits: Optional[int] = None
    tol: float = 1e-8

    def canonical(self) -> str:
        payload = {
            "command": self.command,
            "representation": self.representation,
            "n": self.n,
            "lambda": [self.lam.real, self.lam.imag],
            "eta": [self.eta.real, self.eta.imag],
            "weights": list(self.weights) if self.weights else None,
            "bits": self.bits,
            "tol": self.tol,
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))

    def cache_key(self) -> str:
        return hashlib.sha256(self.canonical().encode("utf-8")).hexdigest()


@dataclass
class ResultRecord:
    representation: str
    n: int
    lam: complex
    eta: complex
    log_magnitude: float
    phase: float
    elapsed_ms: float
    precision_bits: int
    warnings: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def f_n(self) -> float:
        return -self.log_magnitude / (self.n * self.n)

    def to_dict(self) -> dict:
        out = {
            "schema": SCHEMA,
            "representation": self.representation,
            "n": self.n,
            "lambda": [self.lam.real, self.lam.imag],
            "eta": [self.eta.real, self.eta.imag],
            "log_abs_z": self.log_magnitude,
            "phase": self.phase,
            "f_n": self.f_n,
            "elapsed_ms": self.elapsed_ms,
            "precision_bits": self.precision_bits,
            "warnings": self.warnings,
        }
        out.update(self.extra)
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "ResultRecord":
        extra = {k: v for k, v in d.items()
                 if k not in ("schema", "representation", "n", "lambda", "eta",
                              "log_abs_z", "phase", "f_n", "elapsed_ms",
                              "precision_bits", "warnings")}
        return cls(d["representation"], d["n"], complex(*d["lambda"]),
                   complex(*d["eta"]), d["log_abs_z"], d["phase"],
                   d["elapsed_ms"], d["precision_bits"], d["warnings"], extra)


# --------------------------------------------------------------------------
# cache


def cache_dir(flag_value: Optional[str]) -> Optional[str]:
    env = os.environ.get("ICEWALL_CACHE_DIR")
    path = env or flag_value
    if path:
        os.makedirs(path, exist_ok=True)
    return path


def cache_load(path: Optional[str], cfg: JobConfig) -> Optional[ResultRecord]:
    if not path:
        return None
    fn = os.path.join(path, cfg.cache_key() + ".json")
    if not os.path.exists(fn):
        return None
    with open(fn, "r", encoding="utf-8") as fh:
        return ResultRecord.from_dict(json.load(fh))


def cache_store(path: Optional[str], cfg: JobConfig, rec: ResultRecord):
    if not path:
        return
    fn = os.path.join(path, cfg.cache_key() + ".json")
    with open(fn, "w", encoding="utf-8") as fh:
        json.dump(rec.to_dict(), fh, sort_keys=True)


# --------------------------------------------------------------------------
# single-point dispatch


def _ferro_tilde(p: ModelParams) -> tuple:
    """phi~_+/- for purely imaginary spectral parameters."""
    pp, pm = complex(p.phi_plus), complex(p.phi_minus)
    if abs(pp.real) > 1e-12 or abs(pm.real) > 1e-12:
        raise SingularParameterError(
            "the discrete kernel needs purely imaginary lambda, eta "
            "(ferroelectric regime)")
    return pp.imag, pm.imag


def compute_one(rep: str, n: int, lam: complex, eta: complex,
                weights: Optional[tuple] = None,
                bits: Optional[int] = None) -> ResultRecord:
    ctx = PrecisionContext(bits) if bits else PrecisionContext.for_size(n)
    p = ModelParams(lam, eta)
    extra: dict = {}
    t0 = time.perf_counter()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        if rep == "enumerate":
            vw = (VertexWeights(*weights) if weights
                  else VertexWeights.symmetric(*symmetric_weights(p)))
            res = enumerate_configs(n, vw)
            value, extra = res.z_value, {"config_count": res.config_count}
        elif rep == "dp":
            vw = (VertexWeights(*weights) if weights
                  else VertexWeights.symmetric(*symmetric_weights(p)))
            value = partition_dp(n, vw)
        elif rep == "hankel":
            value = partition_hankel(n, p, ctx)
        elif rep == "wdet":
            value = full_partition(n, p, ctx)
        elif rep == "gauss":
            value = full_partition_gauss(n, p)
        elif rep == "fredholm-disordered":
            value = full_partition_fredholm(n, p)
        elif rep == "fredholm-discrete":
            pt_p, pt_m = _ferro_tilde(p)
            zt = fredholm_det(KernelSpec.discrete(n, pt_p, pt_m))
            value = zt.scale_log(n * n * cmath.log(cmath.sin(p.phi_plus))
                                 - 1j * complex(p.nu) * n)
        elif rep == "fredholm-rational":
            # rational degeneration: weights (lam+eta, lam-eta, 2 eta)
            lr, er = lam.real, eta.real
            xi = (lr - er) / (lr + er)
            zt = fredholm_det(KernelSpec.rational(n, xi))
            value = zt.scale_log(n * n * math.log(lr + er))
        else:
            raise ValueError(f"unknown representation {rep!r}")
    elapsed = 1000.0 * (time.perf_counter() - t0)
    return ResultRecord(rep, n, lam, eta, value.log_magnitude, value.angle,
                        elapsed, ctx.mantissa_bits,
                        [str(w.message) for w in caught], extra)


def valid_representations(n: int, lam: complex, eta: complex) -> list:
    """Every representation applicable at the given point (used by 'all')."""
    p = ModelParams(lam, eta)
    reps = []
    if n <= ENUM_LIMIT:
        reps.append("enumerate")
    if n <= DP_LIMIT:
        reps.append("dp")
    reps += ["hankel", "wdet", "gauss"]
    pp = complex(p.phi_plus)
    if 0 < pp.real < math.pi:
        reps.append("fredholm-disordered")
    if abs(pp.real) < 1e-12 and abs(complex(p.phi_minus).real) < 1e-12 \
            and pp.imag > 0:
        reps.append("fredholm-discrete")
    return reps


# --------------------------------------------------------------------------
# output


def emit(records: list, fmt: str, out_path: Optional[str],
         summary: Optional[dict] = None):
    if fmt == "json":
        doc = {"schema": SCHEMA, "records": [r.to_dict() for r in records]}
        if summary is not None:
            doc["summary"] = summary
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)  # csv defaults follow RFC 4180 (CRLF)
        writer.writerow(CSV_COLUMNS)
        for r in records:
            writer.writerow([r.representation, r.n,
                             repr(r.lam.real), repr(r.lam.imag),
                             repr(r.eta.real), repr(r.eta.imag),
                             repr(r.log_magnitude), repr(r.phase),
                             repr(r.f_n), repr(r.elapsed_ms),
                             ";".join(r.warnings)])
        text = buf.getvalue()
    else:
        lines = []
        for r in records:
            lines.append(f"{r.representation:>20s}  N={r.n}  "
                         f"log|Z|={r.log_magnitude:+.12e}  "
                         f"phase={r.phase:+.12e}  "
                         f"({r.elapsed_ms:.1f} ms)"
                         + (f"  {r.extra}" if r.extra else "")
                         + (f"  WARN: {'; '.join(r.warnings)}" if r.warnings else ""))
        if summary is not None:
            lines.append(f"max pairwise relative deviation: "
                         f"{summary['max_pairwise_rel_deviation']:.3e} "
                         f"(tol {summary['tol']:.1e}) -> "
                         + ("OK" if summary["pass"] else "FAIL"))
        text = "\n".join(lines) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --------------------------------------------------------------------------
# subcommands


def run_compute(args) -> int:
    reps = (valid_representations(args.n, args.lam, args.eta)
            if args.rep == "all" else [args.rep])
    cdir = cache_dir(args.cache)
    records = []
    for rep in reps:
        cfg = JobConfig("compute", rep, args.n, args.lam, args.eta,
                        args.weights, args.bits, args.tol)
        rec = cache_load(cdir, cfg)
        if rec is None:
            rec = compute_one(rep, args.n, args.lam, args.eta,
                              args.weights, args.bits)
            cache_store(cdir, cfg, rec)
        else:
            print(f"cache hit: {rep}", file=sys.stderr)
        records.append(rec)
    summary = None
    status = 0
    if len(records) > 1:
        values = [LogScaledValue(r.log_magnitude, r.phase) for r in records]
        worst = 0.0
        for i in range(len(values)):
            for j in range(i + 1, len(values)):
                worst = max(worst, values[i].rel_diff(values[j]))
        summary = {"max_pairwise_rel_deviation": worst, "tol": args.tol,
                   "pass": worst <= args.tol}
        if not summary["pass"]:
            status = 1
    emit(records, args.format, args.out, summary)
    return status


def run_sweep(args) -> int:
    ns = list(range(args.n, args.n_max + 1))
    if len(ns) > 10_000:
        print("sweep grid exceeds 10^4 points", file=sys.stderr)
        return 2
    cdir = cache_dir(args.cache)
    cfgs = [JobConfig("compute", args.rep, n, args.lam, args.eta,
                      args.weights, args.bits, args.tol) for n in ns]
    cached = [cache_load(cdir, c) for c in cfgs]

    def work(idx: int) -> ResultRecord:
        if cached[idx] is not None:
            return cached[idx]
        try:
            return compute_one(args.rep, ns[idx], args.lam, args.eta,
                               args.weights, args.bits)
        except Exception as exc:  # per-point errors recorded, sweep continues
            return ResultRecord(args.rep, ns[idx], args.lam, args.eta,
                                float("nan"), float("nan"), 0.0, 0,
                                [f"error: {exc}"])

    with ThreadPoolExecutor(max_workers=4) as pool:
        records = list(pool.map(work, range(len(ns))))
    hits = sum(c is not None for c in cached)
    if cdir:
        for cfg, rec, was_hit in zip(cfgs, records, cached):
            if was_hit is None:
                cache_store(cdir, cfg, rec)
        print(f"cache: {hits} hits, {len(ns) - hits} computed", file=sys.stderr)
    emit(records, args.format, args.out)
    return 0


def _verify_identities() -> list:
    rng = np.random.default_rng(7)
    checks = []
    # R-matrix unitarity on random complex spectral parameters
    worst = max(check_unitarity(complex(a, b), complex(c, d))
                for a, b, c, d in rng.uniform(-1, 1, size=(20, 4)))
    checks.append(("r-matrix unitarity (20 samples)", worst, 1e-12))
    # ASM counts from bare enumeration
    counts = [sum(1 for _ in config_iterator(n)) for n in range(1, 6)]
    dev = max(abs(c - ASM_COUNTS[n]) for n, c in enumerate(counts, start=1))
    checks.append(("alternating-sign-matrix counts N<=5", float(dev), 0.5))
    # moment-determinant split against enumeration
    p = ModelParams(0.9, 0.3)
    vw = VertexWeights.symmetric(*symmetric_weights(p))
    worst = max(partition_hankel(n, p).rel_diff(
        enumerate_configs(n, vw).z_value) for n in range(1, 5))
    checks.append(("moment determinant vs enumeration N<=4", worst, 1e-10))
    # closed-form determinant of the moment matrix
    worst = 0.0
    for _ in range(5):
        phi = complex(rng.uniform(0.3, 2.8), rng.uniform(-0.3, 0.3))
        worst = max(worst, det_a_deviation(6, phi))
    checks.append(("closed determinant, 5 random phi, N=6", worst,
                   PrecisionContext.for_size(6).tolerance))
    return checks


def _verify_kernels() -> list:
    checks = []
    p = ModelParams(0.9, 0.3)
    ctx = PrecisionContext.for_size(4)
    worst = max(full_partition_fredholm(n, p).rel_diff(full_partition(n, p, ctx))
                for n in range(1, 5))
    checks.append(("disordered Nystrom vs finite determinant N<=4", worst, 1e-8))
    lam, eta = 0.9, 0.3
    worst = 0.0
    for n in range(1, 5):
        xi = (lam - eta) / (lam + eta)
        worst = max(worst, fredholm_det(KernelSpec.rational(n, xi)).rel_diff(
            rational_z_tilde(n, lam, eta)))
    checks.append(("rational Nystrom vs finite determinant N<=4", worst, 1e-8))
    pf = ModelParams(0.55j, 0.25j)
    ctxf = PrecisionContext.for_size(4)
    from .wmatrix import z_tilde_det
    worst = max(fredholm_det(KernelSpec.discrete(n, 0.8, 0.3)).rel_diff(
        z_tilde_det(n, pf, ctxf)) for n in range(1, 5))
    checks.append(("discrete Nystrom vs continued finite determinant N<=4",
                   worst, 1e-8))
    bg = BetaGamma.from_params(p)
    w = w_matrix(3, bg)
    tm = trace_moments(KernelSpec.disordered(3, p), n_max=3)
    worst = max(abs(tm[k - 1] - bg.zeta ** k
                    * np.trace(np.linalg.matrix_power(w, k)))
                for k in (1, 2, 3))
    checks.append(("trace moments vs zeta^n tr(W^n), N=3", worst, 1e-8))
    return checks


def _verify_appendix() -> list:
    checks = []
    tau, omega, phi = 1.1, 0.7, 0.9
    worst = 0.0
    for lam in (0.5, 1.0):
        for n in range(9):
            for m in range(9):
                worst = max(worst, abs(inm_closed(n, m, lam, tau, omega, phi)
                                       - inm_quadrature(n, m, lam, tau, omega, phi)))
    checks.append(("overlap integrals closed vs quadrature n,m<=8", worst, 1e-10))
    worst = 0.0
    for n in range(11):
        coeffs = connection_coeffs(n, 0.5, tau, phi)
        x = 0.37
        direct = mp_eval(n, 0.5, x, tau)
        expanded = sum(c * mp_eval(k, 0.5, x, phi) for k, c in enumerate(coeffs))
        worst = max(worst, abs(direct - expanded))
    checks.append(("basis connection formula n<=10", worst, 1e-12))
    worst = max(key_conjugation_check(0.45, 0.5, m) for m in range(3, 13))
    checks.append(("triangular conjugation identity M<=12", worst, 1e-12))
    from .orthopoly import masked_commutator_residuals
    resid = masked_commutator_residuals(su11_matrices(8, 0.5))
    checks.append(("su(1,1) masked commutators, M=8",
                   max(resid.values()), 1e-12))
    return checks


def run_verify(args) -> int:
    suites = {"identities": _verify_identities, "kernels": _verify_kernels,
              "appendix": _verify_appendix}
    names = list(suites) if args.suite == "all" else [args.suite]
    rows = []
    for name in names:
        for label, dev, thr in suites[name]():
            rows.append({"suite": name, "check": label, "deviation": dev,
                         "threshold": thr, "pass": dev <= thr})
    all_pass = all(r["pass"] for r in rows)
    if args.format == "json":
        text = json.dumps({"schema": SCHEMA, "checks": rows,
                           "pass": all_pass}, indent=2) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["suite", "check", "deviation", "threshold", "pass"])
        for r in rows:
            writer.writerow([r["suite"], r["check"], repr(r["deviation"]),
                             repr(r["threshold"]), r["pass"]])
        text = buf.getvalue()
    else:
        text = "\n".join(
            f"[{'PASS' if r['pass'] else 'FAIL'}] {r['suite']:>10s} | "
            f"{r['check']:<50s} dev={r['deviation']:.3e} thr={r['threshold']:.1e}"
            for r in rows) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if all_pass else 1


def run_enumerate_dump(args) -> int:
    if args.format == "json":
        text = json.dumps({"schema": SCHEMA, "n": args.n,
                           "configurations": dump_configs(args.n, fmt="json")},
                          indent=2) + "\n"
    else:
        text = dump_configs(args.n, fmt="text")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return 0


# --------------------------------------------------------------------------
# argument parsing


def _add_common(sub, with_rep=True, rep_choices=REPRESENTATIONS + ("all",)):
    if with_rep:
        sub.add_argument("--rep", default="all", choices=rep_choices)
    sub.add_argument("--lambda", dest="lam", type=parse_complex,
                     default=complex(0.9), help="spectral parameter, 're[,im]'")
    sub.add_argument("--eta", type=parse_complex, default=complex(0.3),
                     help="crossing parameter, 're[,im]'")
    sub.add_argument("--weights", type=parse_weights, default=None,
                     help="explicit w1,...,w6 (enumerate/dp only)")
    sub.add_argument("--bits", type=int, default=None,
                     help="mantissa bits (default: size-adaptive)")
    sub.add_argument("--tol", type=float, default=1e-8)
    sub.add_argument("--format", default="text", choices=("json", "csv", "text"))
    sub.add_argument("--out", default=None)
    sub.add_argument("--cache", default=None,
                     help="cache directory (ICEWALL_CACHE_DIR overrides)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="icewall",
        description="Domain-wall six-vertex partition functions by "
                    "enumeration, determinants, and Fredholm operators.")
    subs = ap.add_subparsers(dest="command", required=True)

    c = subs.add_parser("compute", help="compute Z_N by one or all representations")
    c.add_argument("--n", type=int, required=True)
    _add_common(c)
    c.set_defaults(fn=run_compute)

    s = subs.add_parser("sweep", help="sweep N over a range")
    s.add_argument("--n", type=int, default=1, help="first N")
    s.add_argument("--n-max", type=int, required=True)
    _add_common(s, rep_choices=REPRESENTATIONS)
    s.set_defaults(fn=run_sweep, rep="wdet")

    v = subs.add_parser("verify", help="run the invariant suites")
    v.add_argument("suite", nargs="?", default="all",
                   choices=("identities", "kernels", "appendix", "all"))
    v.add_argument("--format", default="text", choices=("json", "csv", "text"))
    v.add_argument("--out", default=None)
    v.set_defaults(fn=run_verify)

    d = subs.add_parser("enumerate-dump", help="dump all configurations (N<=4)")
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--format", default="text", choices=("json", "text"))
    d.add_argument("--out", default=None)
    d.set_defaults(fn=run_enumerate_dump)
    return ap


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (SingularParameterError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
