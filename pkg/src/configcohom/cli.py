"""Command-line front end.

Four subcommands:

    betti       Betti table of C_k(M) for one k
    ray         extremal Hilbert-function samples plus certificate
    verify      extremal vanishing report for CP^m
    ring-check  validate a ring presentation JSON file

Exit codes: 0 success, 1 a verified claim failed, 2 input error,
3 monomial cap exceeded.  Output is deterministic byte-for-byte for a
given configuration, independent of --jobs.
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .cecomplex import count_monomials
from .extremal import (UnderDeterminedError, detect_quasi_polynomial,
                       hilbert_ray, verify_vanishing_ranges)
from .generators import build_generators
from .homology import betti, consistency_report
from .ring import (InvalidRingError, RingSchemaError, load_ring, make_cpm,
                   validate_ring)

DEFAULT_MAX_MONOMIALS = 2_000_000


@dataclass
class RunConfig:
    """Everything one invocation needs; parse_config builds it from argv."""
    command: str
    cpm: int = None
    ring_path: str = None
    k: int = None
    k_min: int = 2
    k_max: int = None
    i: int = None
    mode: str = "full"
    fmt: str = "text"
    output: str = None
    jobs: int = 1
    p_max: int = 6
    deg_max: int = 4
    max_monomials: int = DEFAULT_MAX_MONOMIALS
    indexing: str = "cohomological"


def _default_jobs():
    raw = os.environ.get("CONFIGCOHOM_JOBS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_parser():
    top = argparse.ArgumentParser(
        prog="configcohom",
        description="Exact cohomology of unordered configuration spaces.")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, ring=False):
        p.add_argument("--format", choices=("text", "csv", "json"), default="text")
        p.add_argument("--output", metavar="FILE", help="write to FILE instead of stdout")
        p.add_argument("--jobs", type=int, default=None,
                       help="worker processes (default: CONFIGCOHOM_JOBS or 1)")
        p.add_argument("--max-monomials", type=int, default=DEFAULT_MAX_MONOMIALS,
                       help="refuse complexes larger than this (default %d)"
                            % DEFAULT_MAX_MONOMIALS)
        if ring:
            g = p.add_mutually_exclusive_group(required=True)
            g.add_argument("--cpm", type=int, metavar="M", help="use the built-in CP^M ring")
            g.add_argument("--ring", metavar="FILE", help="load a ring presentation JSON file")
        else:
            p.add_argument("--cpm", type=int, metavar="M", required=True)

    p = sub.add_parser("betti", help="Betti table of C_k(M)")
    common(p, ring=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mode", choices=("full", "reduced", "both"), default="full")
    p.add_argument("--degrees", choices=("cohomological", "homological"),
                   default="cohomological")

    p = sub.add_parser("ray", help="extremal Hilbert-function ray of CP^m")
    common(p)
    p.add_argument("--i", type=int, required=True, metavar="OFFSET")
    p.add_argument("--k-min", type=int, default=2)
    p.add_argument("--k-max", type=int, required=True)
    p.add_argument("--mode", choices=("full", "reduced"), default="reduced")
    p.add_argument("--p-max", type=int, default=6)
    p.add_argument("--deg-max", type=int, default=4)

    p = sub.add_parser("verify", help="extremal vanishing report for CP^m")
    common(p)
    p.add_argument("--k-max", type=int, required=True)

    p = sub.add_parser("ring-check", help="validate a ring presentation file")
    p.add_argument("--ring", metavar="FILE", required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output", metavar="FILE")

    return top


def parse_config(argv):
    ns = build_parser().parse_args(argv)
    cfg = RunConfig(command=ns.command)
    cfg.fmt = ns.format
    cfg.output = ns.output
    if hasattr(ns, "jobs"):
        cfg.jobs = ns.jobs if ns.jobs is not None else _default_jobs()
    if hasattr(ns, "max_monomials"):
        cfg.max_monomials = ns.max_monomials
    cfg.cpm = getattr(ns, "cpm", None)
    cfg.ring_path = getattr(ns, "ring", None)
    if ns.command == "betti":
        cfg.k = ns.k
        cfg.mode = ns.mode
        cfg.indexing = ns.degrees
    elif ns.command == "ray":
        cfg.i = ns.i
        cfg.k_min = ns.k_min
        cfg.k_max = ns.k_max
        cfg.mode = ns.mode
        cfg.p_max = ns.p_max
        cfg.deg_max = ns.deg_max
    elif ns.command == "verify":
        cfg.k_max = ns.k_max
    return cfg


def _emit(cfg, text):
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_text(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _resolve_ring(cfg):
    if cfg.cpm is not None:
        if cfg.cpm < 1:
            raise ValueError("--cpm must be a positive integer")
        return make_cpm(cfg.cpm)
    return load_ring(cfg.ring_path)


def _cap_check(R, k, cap):
    """Monomial-count guard; returns a message when the cap is exceeded."""
    n = count_monomials(build_generators(R), k)
    if n > cap:
        return ("complex for k=%d has %d monomials, over the cap of %d "
                "(raise --max-monomials to proceed)" % (k, n, cap))
    return None


def _betti_text(table, indexing="cohomological"):
    """Render a Betti table; indexing only changes the H^i/H_i label."""
    head = "Betti numbers of C_%d(%s), %s complex" % (table.k, table.ring, table.mode)
    sym = "H_%d" if indexing == "homological" else "H^%d"
    lines = [head]
    for i in sorted(table.dims):
        lines.append("%s = %d" % (sym % i, table.dims[i]))
    lines.append("Euler characteristic: %d" % table.euler)
    return "\n".join(lines) + "\n"


def _betti_csv(table):
    lines = ["degree,dim"]
    for i in sorted(table.dims):
        lines.append("%d,%d" % (i, table.dims[i]))
    return "\n".join(lines) + "\n"


def _run_betti(cfg):
    R = _resolve_ring(cfg)
    if cfg.k is None or cfg.k < 0:
        raise ValueError("--k must be a non-negative integer")
    msg = _cap_check(R, cfg.k, cfg.max_monomials)
    if msg:
        sys.stderr.write(msg + "\n")
        return 3
    if cfg.mode == "both":
        report = consistency_report(R, cfg.k)
        if cfg.fmt == "json":
            doc = {
                "full": report.full.to_json_dict(cfg.indexing),
                "reduced": report.reduced.to_json_dict(cfg.indexing),
                "consistent": report.ok,
                "first_mismatch": report.first_mismatch,
            }
            _emit(cfg, _json_text(doc))
        elif cfg.fmt == "csv":
            # tables agree when consistent; emit the full one
            _emit(cfg, _betti_csv(report.full))
        else:
            text = (_betti_text(report.full, cfg.indexing)
                    + _betti_text(report.reduced, cfg.indexing))
            text += ("consistent: yes\n" if report.ok
                     else "consistent: NO (first mismatch in degree %s)\n"
                     % report.first_mismatch)
            _emit(cfg, text)
        if not report.ok:
            sys.stderr.write("full and reduced tables disagree at degree %s\n"
                             % report.first_mismatch)
            return 1
        return 0
    table = betti(R, cfg.k, cfg.mode)
    if cfg.fmt == "json":
        _emit(cfg, _json_text(table.to_json_dict(cfg.indexing)))
    elif cfg.fmt == "csv":
        _emit(cfg, _betti_csv(table))
    else:
        _emit(cfg, _betti_text(table, cfg.indexing))
    return 0


def _run_ray(cfg):
    R = make_cpm(cfg.cpm)
    msg = _cap_check(R, cfg.k_max, cfg.max_monomials)
    if msg:
        sys.stderr.write(msg + "\n")
        return 3
    ray = hilbert_ray(R, cfg.i, cfg.k_min, cfg.k_max, mode=cfg.mode, jobs=cfg.jobs)
    cert = detect_quasi_polynomial(ray.samples, p_max=cfg.p_max, deg_max=cfg.deg_max)
    if cfg.fmt == "json":
        doc = {
            "ring": "CP^%d" % ray.m,
            "offset": ray.i,
            "mode": cfg.mode,
            "samples": [list(s) for s in ray.samples],
            "certificate": cert.to_json_dict() if cert is not None else None,
        }
        _emit(cfg, _json_text(doc))
        return 0
    if cert is None:
        cert_line = ("certificate: none within period <= %d, degree <= %d"
                     % (cfg.p_max, cfg.deg_max))
    else:
        classes = "; ".join(
            "class %d: %s" % (r, ", ".join(map(str, coeffs)))
            for r, coeffs in enumerate(cert.coefficients))
        cert_line = ("certificate: period %d, onset %d, degree %d; %s"
                     % (cert.period, cert.onset, cert.degree, classes))
    if cfg.fmt == "csv":
        lines = ["k,dim"] + ["%d,%d" % s for s in ray.samples]
        _emit(cfg, "\n".join(lines) + "\n")
        sys.stderr.write(cert_line + "\n")
        return 0
    lines = ["extremal ray: CP^%d, offset %d, %s complex, k = %d..%d"
             % (ray.m, ray.i, cfg.mode, cfg.k_min, cfg.k_max)]
    lines += ["k=%d: %d" % s for s in ray.samples]
    lines.append(cert_line)
    _emit(cfg, "\n".join(lines) + "\n")
    return 0


def _run_verify(cfg):
    R = make_cpm(cfg.cpm)
    msg = _cap_check(R, cfg.k_max, cfg.max_monomials)
    if msg:
        sys.stderr.write(msg + "\n")
        return 3
    if cfg.fmt == "csv":
        raise ValueError("verify has no CSV schema; use text or json")
    report = verify_vanishing_ranges(cfg.cpm, cfg.k_max, jobs=cfg.jobs)
    if cfg.fmt == "json":
        _emit(cfg, _json_text(report.to_json_dict()))
    else:
        _emit(cfg, report.to_text() + "\n")
    return 0 if report.ok else 1


def _run_ring_check(cfg):
    try:
        R = load_ring(cfg.ring_path)
    except RingSchemaError as exc:
        sys.stderr.write("malformed ring presentation: %s\n" % exc)
        return 2
    diag = validate_ring(R)
    if cfg.fmt == "json":
        doc = {"valid": diag.valid,
               "violations": [[rule, msg] for rule, msg in diag.violations]}
        _emit(cfg, _json_text(doc))
    else:
        lines = ["ring %s: %s" % (R.label, "valid" if diag.valid else "INVALID")]
        lines += ["  [%s] %s" % v for v in diag.violations]
        _emit(cfg, "\n".join(lines) + "\n")
    return 0 if diag.valid else 2


def run(cfg):
    """Execute a parsed configuration; returns the process exit code."""
    try:
        if cfg.command == "betti":
            return _run_betti(cfg)
        if cfg.command == "ray":
            return _run_ray(cfg)
        if cfg.command == "verify":
            return _run_verify(cfg)
        if cfg.command == "ring-check":
            return _run_ring_check(cfg)
        raise ValueError("unknown command %r" % cfg.command)
    except (RingSchemaError, InvalidRingError, UnderDeterminedError,
            OSError, ValueError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2


def main(argv=None):
    cfg = parse_config(argv if argv is not None else sys.argv[1:])
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
