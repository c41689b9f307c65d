"""tsys-lab: run suites, evolve solutions, dump belts and determinant matrices.

Every output is canonical UTF-8 JSON (sorted keys, fixed indentation), so
rerunning a command on the same inputs reproduces the file byte for byte.
Wall times are left out unless ``--timing`` is given for the same reason.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from . import laurent as L
from .cluster import belt
from .determinant import ConstructionFailed, columns_from_tsolution, compare_minors_with_solution, \
    verify_minor_relations_a
from .dynkin import TwistedType, parse_any
from .report import SCHEMA_VERSION, Report
from .suites import run_suite, suite_names
from .tsys import InconsistentSystem, TSolution, TSystem, Underdetermined, WindowTooSmall, key_name, slab_initial, solve
from .twisted import twisted_key_name, twisted_solve

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2

CONFIG_FIELDS = ("suite", "suites", "type", "level", "window", "top", "quiver", "belt", "from_solution", "jobs",
                 "out", "timing")


class ConfigError(ValueError):
    pass


class CheckFailure(RuntimeError):
    pass


# ---------------------------------------------------------------- config

def load_config(path: Optional[str]) -> dict:
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read config {path}: {e}") from None
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    unknown = sorted(set(cfg) - set(CONFIG_FIELDS))
    if unknown:
        raise ConfigError(f"unknown config fields: {unknown}")
    return cfg


def merged(args: argparse.Namespace) -> dict:
    """Config file fields, overridden by any flag given on the command line."""
    cfg = load_config(args.config)
    for name in CONFIG_FIELDS:
        val = getattr(args, name, None)
        if val is not None and val is not False:
            cfg[name] = val
            if name == "suite":
                cfg.pop("suites", None)
    return cfg


def parse_window(w) -> Tuple[int, int]:
    if isinstance(w, (list, tuple)) and len(w) == 2:
        lo, hi = w
    else:
        m = re.fullmatch(r"(-?\d+):(-?\d+)", str(w))
        if not m:
            raise ConfigError(f"window must look like LO:HI, got {w!r}")
        lo, hi = m.groups()
    lo, hi = int(lo), int(hi)
    if lo > hi:
        raise ConfigError(f"empty window {lo}:{hi}")
    return lo, hi


def _require(cfg: dict, *names):
    for n in names:
        if n not in cfg:
            raise ConfigError(f"missing required field {n!r}")


def _int(cfg: dict, name: str) -> int:
    try:
        return int(cfg[name])
    except (TypeError, ValueError):
        raise ConfigError(f"{name} must be an integer") from None


def job_id(command: str, spec: dict) -> str:
    blob = json.dumps({"command": command, "spec": spec}, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:16]


def canonical(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def emit(obj, out: Optional[str]):
    text = canonical(obj)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _spec(cfg: dict) -> dict:
    return {k: v for k, v in sorted(cfg.items()) if k not in ("out", "jobs", "timing")}


# ---------------------------------------------------------------- verify

def _run_named(name: str) -> Report:
    return run_suite(name)


def cmd_verify(cfg: dict) -> int:
    names = cfg.get("suites") or ([cfg["suite"]] if "suite" in cfg else None)
    if not names:
        raise ConfigError("verify needs --suite or a 'suites' list")
    if isinstance(names, str):
        names = [names]
    unknown = [n for n in names if n not in suite_names()]
    if unknown:
        raise ConfigError(f"unknown suite(s) {unknown}; known: {suite_names()}")
    jobs = int(cfg.get("jobs") or 1)
    if jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_run_named, names))
    else:
        reports = [_run_named(n) for n in names]
    timing = bool(cfg.get("timing"))
    spec = _spec(cfg)
    out = {
        "schema": SCHEMA_VERSION,
        "job": job_id("verify", spec),
        "spec": spec,
        "ok": all(r.ok for r in reports),
        "suites": [r.to_obj(timing) for r in reports],
    }
    emit(out, cfg.get("out"))
    failed = [f"{r.title}: {c.name}" for r in reports for c in r.failures()]
    if failed:
        raise CheckFailure("; ".join(failed))
    return EXIT_OK


# ---------------------------------------------------------------- evolve / export

def solution_spec(cfg: dict) -> dict:
    _require(cfg, "type", "level", "window")
    lo, hi = parse_window(cfg["window"])
    spec = {"type": str(cfg["type"]), "level": _int(cfg, "level"), "window": [lo, hi]}
    if cfg.get("top"):
        spec["top"] = cfg["top"]
    return spec


def _evolve(spec: dict) -> Dict[str, dict]:
    try:
        xt = parse_any(spec["type"])
    except Exception as e:
        raise ConfigError(f"bad type {spec['type']!r}: {e}") from None
    window = tuple(spec["window"])
    if isinstance(xt, TwistedType):
        sol = twisted_solve(xt, spec["level"], window)
        return {twisted_key_name(k): L.to_json_obj(v) for k, v in sol.values.items() if k[0] == "T"}
    S = TSystem(xt, spec["level"], top=spec.get("top", "unit"))
    sol = solve(S, slab_initial(S, n0=window[0]), window)
    return {key_name(k): L.to_json_obj(v) for k, v in sol.values.items()}


def cache_path(spec: dict) -> Optional[Path]:
    root = os.environ.get("TSYS_CACHE_DIR")
    if not root:
        return None
    return Path(root) / f"solution-{job_id('evolve', spec)}.json"


def solution_document(spec: dict) -> dict:
    """Solve, or reuse the cached document for the same spec."""
    path = cache_path(spec)
    if path is not None and path.exists():
        return json.loads(path.read_text(encoding="utf-8"))
    doc = {"schema": SCHEMA_VERSION, "job": job_id("evolve", spec), "spec": spec,
           "values": dict(sorted(_evolve(spec).items()))}
    return doc


def cmd_evolve(cfg: dict) -> int:
    emit(solution_document(solution_spec(cfg)), cfg.get("out"))
    return EXIT_OK


def cmd_export(cfg: dict) -> int:
    spec = solution_spec(cfg)
    doc = solution_document(spec)
    path = cache_path(spec)
    if path is None and not cfg.get("out"):
        raise ConfigError("export needs TSYS_CACHE_DIR or --out")
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(canonical(doc), encoding="utf-8")
    if cfg.get("out"):
        emit(doc, cfg["out"])
    else:
        print(str(path))
    return EXIT_OK


# ---------------------------------------------------------------- mutate

def cmd_mutate(cfg: dict) -> int:
    _require(cfg, "quiver", "belt")
    steps = _int(cfg, "belt")
    if steps < 0:
        raise ConfigError("belt length must be nonnegative")
    try:
        bt = belt(str(cfg["quiver"]), steps)
    except Exception as e:
        raise ConfigError(f"bad quiver {cfg['quiver']!r}: {e}") from None
    spec = _spec(cfg)
    emit({"schema": SCHEMA_VERSION, "job": job_id("mutate", spec), "spec": spec,
          "labels": list(bt.labels), "belt": bt.to_obj()}, cfg.get("out"))
    return EXIT_OK


# ---------------------------------------------------------------- det

_KEY = re.compile(r"a(\d+)\.m(\d+)\.u(-?\d+)")


def solution_from_document(doc: dict) -> TSolution:
    try:
        spec = doc["spec"]
        S = TSystem(spec["type"], spec["level"], top=spec.get("top", "unit"))
        values = {}
        for name, obj in doc["values"].items():
            m = _KEY.fullmatch(name)
            if m:
                values[("T",) + tuple(int(x) for x in m.groups())] = L.from_json_obj(obj)
        return TSolution(S, values, {}, tuple(spec["window"]))
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigError(f"malformed solution file: {e}") from None


def cmd_det(cfg: dict) -> int:
    _require(cfg, "from_solution")
    try:
        doc = json.loads(Path(cfg["from_solution"]).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read solution: {e}") from None
    sol = solution_from_document(doc)
    try:
        M = columns_from_tsolution(sol)
    except (ConstructionFailed, KeyError) as e:
        raise ConfigError(f"no determinant construction for this solution: {e}") from None
    r = sol.system.dd.rank
    report = Report(f"determinant route {sol.system.name}")
    compare_minors_with_solution(M, sol, sorted(k for k in sol.values if (k[1] + k[2] + k[3]) % 2 == 0),
                                 report=report)
    verify_minor_relations_a(M, r, report=report)
    spec = _spec(cfg)
    timing = bool(cfg.get("timing"))
    emit({"schema": SCHEMA_VERSION, "job": job_id("det", spec), "spec": spec, "solution_spec": doc["spec"],
          "matrix": M.to_obj(), "report": report.to_obj(timing)}, cfg.get("out"))
    if not report.ok:
        raise CheckFailure("; ".join(c.name for c in report.failures()))
    return EXIT_OK


# ---------------------------------------------------------------- entry point

COMMANDS = {"verify": cmd_verify, "evolve": cmd_evolve, "mutate": cmd_mutate, "det": cmd_det, "export": cmd_export}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tsys-lab", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--config", help="JSON config; flags override its fields")
    p.add_argument("--suite", help="suite name (verify); see --list")
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--jobs", type=int, help="worker processes for multi-suite runs")
    p.add_argument("--type", help="type such as A2, B2 or A3~2")
    p.add_argument("--level", type=int)
    p.add_argument("--window", help="LO:HI in lattice time units")
    p.add_argument("--top", choices=["unit", "quasi-unit"])
    p.add_argument("--quiver", help="Dynkin type of the alternating quiver")
    p.add_argument("--belt", type=int, help="number of belt steps")
    p.add_argument("--from-solution", dest="from_solution", help="solution JSON written by evolve")
    p.add_argument("--timing", action="store_true", help="include wall times (breaks byte identity)")
    p.add_argument("--list", action="store_true", help="list suite names and exit")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = build_parser().parse_args(argv)
        if args.list:
            print("\n".join(suite_names()))
            return EXIT_OK
        cfg = merged(args)
        return COMMANDS[args.command](cfg)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except (Underdetermined, InconsistentSystem, WindowTooSmall) as e:
        print(f"cannot solve: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except CheckFailure as e:
        print(f"check failure: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
