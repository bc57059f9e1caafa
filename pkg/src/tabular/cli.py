"""Command-line front end: `tabular verify`, `tabular compute` and `tabular cache`.

Exit codes: 0 success, 1 a check failed (or caches differ), 2 bad
configuration, 3 a cache file is corrupt.
"""

from __future__ import annotations

import argparse
import hashlib
import os
import sys
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from .laurent import LaurentParseError, format_laurent, parse_laurent
from .report import Report

CACHE_ENV = "TABULAR_CACHE_DIR"
CACHE_MAGIC = "# tabular structure constants v1"
INSTANCES = ("matrix", "tl", "tlh", "affine", "brauer")
SUITES = ("table", "A1", "A2", "A3", "A4", "A5", "a", "brackets", "cross", "cells",
          "asymptotic", "P", "phi", "iso", "lift", "extra")
WHATS = ("structconsts", "afunction", "cells", "gamma", "gram", "trace")


class ConfigError(ValueError):
    pass


class CacheCorrupt(ValueError):
    pass


@dataclass
class RunConfig:
    instance: str
    n: int | None = None
    table: str = "golden"
    load: Path | None = None
    graph: str | None = None
    window: dict[str, int] = field(default_factory=dict)
    suites: list[str] = field(default_factory=lambda: ["all"])
    mutant: str | None = None
    threads: int = 1


def parse_window(text: str | None) -> dict[str, int]:
    if not text:
        return {}
    out = {}
    for part in text.split(","):
        key, sep, value = part.partition("=")
        key = key.strip()
        if not sep or key not in ("w", "k") or not value.strip().lstrip("-").isdigit():
            raise ConfigError(f"bad window entry {part!r}; expected w=<int> or k=<int>")
        if int(value) < 0:
            raise ConfigError(f"window {key} must be nonnegative")
        out[key] = int(value)
    return out


def config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.instance not in INSTANCES:
        raise ConfigError(f"unknown instance {args.instance!r}")
    if args.n is not None and args.n < 1:
        raise ConfigError("--n must be positive")
    suites = [s.strip() for s in getattr(args, "suite", "all").split(",") if s.strip()]
    for s in suites:
        if s != "all" and s not in SUITES:
            raise ConfigError(f"unknown suite {s!r}; choose from all, {', '.join(SUITES)}")
    if args.threads < 1:
        raise ConfigError("--threads must be positive")
    return RunConfig(args.instance, args.n, args.table, Path(args.load) if args.load else None,
                     args.graph, parse_window(args.window), suites, getattr(args, "mutant", None), args.threads)


def build_instance(cfg: RunConfig):
    """Construct the selected instance; every selector error becomes ConfigError."""
    try:
        return _build(cfg)
    except ConfigError:
        raise
    except (ValueError, KeyError, OSError) as exc:
        raise ConfigError(str(exc)) from exc


def _need_n(cfg: RunConfig, default: int | None = None) -> int:
    if cfg.n is None:
        if default is None:
            raise ConfigError(f"--n is required for --instance {cfg.instance}")
        return default
    return cfg.n


def _build(cfg: RunConfig):
    if cfg.mutant and cfg.instance != "matrix":
        raise ConfigError("mutants exist for --instance matrix only")
    if cfg.window and cfg.instance != "affine":
        raise ConfigError("--window applies to --instance affine only")
    if cfg.instance == "matrix":
        from .matrix_table import make_matrix_table
        from .table_algebra import load_table, table_from_name
        G = load_table(cfg.load.read_text(), cfg.load.stem) if cfg.load else table_from_name(cfg.table)
        return make_matrix_table(_need_n(cfg), G, cfg.mutant)
    if cfg.instance == "tl":
        from .tl_ade import build_table_datum_ade, coxeter_graph, parse_graph
        if cfg.graph:
            g = parse_graph(cfg.graph)
        else:
            n = _need_n(cfg)
            if n < 2:
                raise ConfigError("--instance tl needs --n >= 2 (the graph is A_{n-1})")
            g = coxeter_graph("A", n - 1)
        return build_table_datum_ade(g)
    if cfg.instance == "tlh":
        from .tl_h import build_table_datum_h
        return build_table_datum_h(_need_n(cfg))
    if cfg.instance == "affine":
        from .affine import build_table_datum_affine
        return build_table_datum_affine(_need_n(cfg), cfg.window.get("w", 2), cfg.window.get("k", 2))
    from .brauer import build_table_datum_brauer
    return build_table_datum_brauer(_need_n(cfg))


# --- verify ----------------------------------------------------------------------------------


def _extras(cfg: RunConfig, inst) -> list[Report]:
    if cfg.instance == "tl":
        from .tl_ade import cell_module, involution_report, verify_cell_module
        reps = [involution_report(inst)]
        reps += [verify_cell_module(inst, cell_module(inst, lam)) for lam in inst.datum.lambdas]
        return reps
    if cfg.instance == "tlh":
        from .tl_h import codec_report, presentation_check
        return [presentation_check(inst.datum.lambdas[-1] - 1), codec_report(inst)]
    if cfg.instance == "affine":
        from .affine import affine_generators_relations, codec_report
        return [affine_generators_relations(inst.n), codec_report(inst.n, cfg.window.get("w", 2), cfg.window.get("k", 2))]
    return []


def run_suites(cfg: RunConfig, inst) -> Report:
    from . import asymptotic, axioms, cells
    from .table_algebra import verify_table_axioms

    wanted = set(SUITES) if "all" in cfg.suites else set(cfg.suites)
    rep = Report(f"verify {inst.name}")
    alg = None

    def asym():
        nonlocal alg
        if alg is None:
            alg, r = asymptotic.build_asymptotic(inst)
            if "asymptotic" in wanted:
                rep.extend(r)
        return alg

    steps: list[tuple[str, Callable[[], Report | None]]] = [
        ("table", lambda: _table_reports(inst, verify_table_axioms)),
        ("A1", lambda: axioms.verify_A1_A3(inst, inst.generators)),
        ("A4", lambda: axioms.verify_A4(inst)),
        ("A5", lambda: axioms.verify_A5_trace(inst)),
        ("a", lambda: axioms.check_a_override(inst)),
        ("brackets", lambda: axioms.check_brackets(inst)),
        ("cross", lambda: _cross(inst, axioms, asymptotic, "asymptotic" not in wanted)),
        ("cells", lambda: _finite_only(inst, "cells", lambda: _merge(
            cells.preorder_cells(inst)[1], cells.lusztig_a_crosscheck(inst)))),
        ("asymptotic", lambda: (asym(), None)[1]),
        ("P", lambda: _finite_only(inst, "P", lambda: asymptotic.verify_P123(inst, asym()))),
        ("phi", lambda: _finite_only(inst, "phi", lambda: asymptotic.phi_check(inst, asym()))),
        ("iso", lambda: _merge(*[asymptotic.matrix_iso_check(inst, lam, asym()) for lam in inst.datum.lambdas])),
        ("lift", lambda: _lift(cfg, inst)),
        ("extra", lambda: _merge(*_extras(cfg, inst))),
    ]
    if wanted & {"A2", "A3"}:
        wanted.add("A1")
    for key, step in steps:
        if key in wanted:
            out = step()
            if out is not None:
                rep.extend(out)
    return rep


def _merge(*reports: Report) -> Report:
    out = Report("merged")
    for r in reports:
        out.extend(r)
    return out


def _finite_only(inst, name: str, fn: Callable[[], Report]) -> Report:
    if not inst.finite:
        out = Report(name)
        out.add(f"{name}-skipped", True, 0, "needs a finite basis")
        return out
    return fn()


def _table_reports(inst, verify_table_axioms) -> Report:
    seen, out = set(), Report("table")
    for lam in inst.datum.lambdas:
        G = inst.gamma_of(lam)
        if G.name in seen:
            continue
        seen.add(G.name)
        out.extend(verify_table_axioms(G), prefix=f"{G.name}:")
    return out


def _cross(inst, axioms, asymptotic, gamma_cyclic: bool) -> Report:
    out = Report("cross")
    if inst.has_trace:
        out.extend(axioms.check_orthogonality(inst))
        out.extend(axioms.gram_report(inst))
    out.extend(axioms.check_a_constancy(inst))
    out.extend(axioms.check_rotation_maxima(inst))
    if gamma_cyclic:
        # otherwise build_asymptotic reports it
        out.extend(asymptotic.check_gamma_cyclic(inst))
    return out


def _lift(cfg: RunConfig, inst) -> Report | None:
    from .cellular import lift_cell_datum, symmetric_cell_datum, trivial_cell_datum
    if cfg.instance == "brauer":
        if max(inst.datum.lambdas) > 3:
            out = Report("lift")
            out.add("lift-skipped", True, 0, "static symmetric-group cell data stop at t = 3")
            return out
        data = {t: symmetric_cell_datum(t) for t in inst.datum.lambdas}
    else:
        gammas = {lam: inst.gamma_of(lam) for lam in inst.datum.lambdas}
        if not all(G.finite and G.rank == 1 for G in gammas.values()):
            return None
        data = {lam: trivial_cell_datum(G) for lam, G in gammas.items()}
    return lift_cell_datum(inst, data)[1]


def atomic_write(path: Path, text: str) -> None:
    """Write to a temporary file in the same directory, then rename over the target."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text: str, out: str | None) -> None:
    if out:
        atomic_write(Path(out), text)
    else:
        sys.stdout.write(text)


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = config_from_args(args)
    inst = build_instance(cfg)
    rep = run_suites(cfg, inst)
    _emit(rep.render() + ("OK\n" if rep.ok else "FAILED\n"), args.report)
    return 0 if rep.ok else 1


# --- compute ---------------------------------------------------------------------------------


def structure_rows(inst) -> list[tuple[str, str, str, str]]:
    B = inst.basis()
    rows = []
    for X in B:
        for Y in B:
            prod = inst.product(X, Y)
            for Z in inst.sorted_labels(prod.labels()):
                rows.append((inst.format_label(X), inst.format_label(Y), inst.format_label(Z),
                             format_laurent(prod.coeff(Z))))
    return rows


def compute_table(inst, what: str) -> str:
    from . import asymptotic, axioms, datum

    fmt = inst.format_label
    lines: list[str]
    if what == "structconsts":
        lines = ["X\tY\tZ\tg"] + ["\t".join(r) for r in structure_rows(inst)]
    elif what == "afunction":
        lines = ["cell\tZ\ta"] + [f"{X.lam}\t{fmt(X)}\t{datum.a_function(inst, X)}" for X in inst.basis()]
    elif what == "cells":
        lines = ["cell\ta\tsize\ttableaux"]
        for lam in inst.datum.lambdas:
            tabs = inst.datum.tableaux[lam]
            lines.append(f"{lam}\t{datum.a_of_cell(inst, lam)}\t{len(inst.cell(lam))}\t{len(tabs)}")
    elif what == "gamma":
        entries = asymptotic.gamma_entries(inst)
        keys = sorted(entries, key=lambda k: tuple(inst.label_key(x) for x in k))
        lines = ["X\tY\tZ\tgamma"] + [f"{fmt(X)}\t{fmt(Y)}\t{fmt(Z)}\t{entries[(X, Y, Z)]}" for X, Y, Z in keys]
    elif what == "gram":
        if not inst.has_trace:
            raise ConfigError(f"{inst.name} has no trace")
        lines = ["X\tY\tform"] + [f"{fmt(X)}\t{fmt(Y)}\t{format_laurent(p)}" for X, Y, p in axioms.gram_table(inst)]
    elif what == "trace":
        if not inst.has_trace:
            raise ConfigError(f"{inst.name} has no trace")
        lines = ["X\ttau"] + [f"{fmt(X)}\t{format_laurent(inst.trace(X))}" for X in inst.basis()]
    else:
        raise ConfigError(f"unknown quantity {what!r}")
    return f"# {what} {inst.name}\n" + "\n".join(lines) + "\n"


def cmd_compute(args: argparse.Namespace) -> int:
    cfg = config_from_args(args)
    inst = build_instance(cfg)
    _emit(compute_table(inst, args.what), args.out)
    return 0


# --- cache -----------------------------------------------------------------------------------


def cache_text(inst) -> str:
    body = "".join("\t".join(r) + "\n" for r in structure_rows(inst))
    digest = hashlib.sha256(body.encode()).hexdigest()
    return f"{CACHE_MAGIC}\n# instance {inst.name}\n# sha256 {digest}\n{body}"


def read_cache(path: Path, verify_digest: bool = True) -> tuple[str, dict[tuple[str, str, str], str]]:
    """Parse a cache file into (instance name, {(X, Y, Z): laurent text})."""
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines(keepends=True)
    except (OSError, UnicodeDecodeError) as exc:
        raise CacheCorrupt(f"{path}: {exc}") from exc
    if len(lines) < 3 or lines[0].rstrip("\n") != CACHE_MAGIC:
        raise CacheCorrupt(f"{path}: missing header")
    if not lines[1].startswith("# instance ") or not lines[2].startswith("# sha256 "):
        raise CacheCorrupt(f"{path}: malformed header")
    name = lines[1][len("# instance "):].rstrip("\n")
    digest = lines[2][len("# sha256 "):].strip()
    body = "".join(lines[3:])
    if verify_digest and hashlib.sha256(body.encode()).hexdigest() != digest:
        raise CacheCorrupt(f"{path}: checksum mismatch")
    entries: dict = {}
    for lineno, line in enumerate(lines[3:], 4):
        parts = line.rstrip("\n").split("\t")
        if len(parts) != 4:
            raise CacheCorrupt(f"{path}:{lineno}: expected 4 tab-separated fields")
        try:
            parse_laurent(parts[3])
        except LaurentParseError as exc:
            raise CacheCorrupt(f"{path}:{lineno}: {exc}") from exc
        key = tuple(parts[:3])
        if key in entries:
            raise CacheCorrupt(f"{path}:{lineno}: duplicate entry")
        entries[key] = parts[3]
    return name, entries


def diff_caches(a: dict, b: dict, order: list) -> str | None:
    """First mismatching entry in the order of `order`, or None."""
    for key in order:
        if a.get(key) != b.get(key):
            return f"{' '.join(key)}: {a.get(key, '<absent>')} vs {b.get(key, '<absent>')}"
    return None


def _cache_path(args: argparse.Namespace, inst=None) -> Path:
    if args.path:
        return Path(args.path)
    if inst is None:
        raise ConfigError("--path is required here")
    root = Path(args.dir or os.environ.get(CACHE_ENV) or ".tabular-cache")
    slug = "".join(ch if ch.isalnum() or ch in "=-" else "_" for ch in inst.name)
    return root / f"{slug}.tsv"


def cmd_cache(args: argparse.Namespace) -> int:
    if args.action == "diff":
        if not args.path or not args.other:
            raise ConfigError("cache diff needs --path and --other")
        _, a = read_cache(Path(args.path), verify_digest=False)
        _, b = read_cache(Path(args.other), verify_digest=False)
        order = list(a) + [k for k in b if k not in a]
        hit = diff_caches(a, b, order)
        print(hit if hit else "identical")
        return 1 if hit else 0
    cfg = config_from_args(args)
    inst = build_instance(cfg)
    path = _cache_path(args, inst)
    if args.action == "write":
        atomic_write(path, cache_text(inst))
        print(f"wrote {path}")
        return 0
    name, stored = read_cache(path)
    if name != inst.name:
        raise CacheCorrupt(f"{path}: cache is for {name}, not {inst.name}")
    fresh = {tuple(r[:3]): r[3] for r in structure_rows(inst)}
    hit = diff_caches(stored, fresh, list(fresh) + [k for k in stored if k not in fresh])
    if hit:
        raise CacheCorrupt(f"{path}: stale entry {hit}")
    print(f"{path}: {len(stored)} entries match")
    return 0


# --- argument parsing ------------------------------------------------------------------------


def _selector(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--instance", required=required, help="|".join(INSTANCES))
    p.add_argument("--n", type=int, help="size: matrix order, strands, or rank parameter")
    p.add_argument("--table", default="golden", help="table algebra for matrix: golden, trivial, zN, sN")
    p.add_argument("--load", help="table algebra file (dump_table format) for matrix")
    p.add_argument("--graph", help="Coxeter graph for tl, e.g. D4 or E6; overrides --n")
    p.add_argument("--window", help="affine window, e.g. w=2,k=2")
    p.add_argument("--threads", type=int, default=1,
                   help="accepted for scripting; sweeps run in one thread and output never depends on it")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tabular", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites")
    _selector(v)
    v.add_argument("--suite", default="all", help="all or a comma list of " + ",".join(SUITES))
    v.add_argument("--mutant", help="broken-star|asymmetric-trace|dropped-idempotent (matrix only)")
    v.add_argument("--report", help="write the report here instead of stdout")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("compute", help="emit a tab-separated table")
    c.add_argument("what", choices=WHATS)
    _selector(c)
    c.add_argument("--out", help="output path (atomic write); stdout if absent")
    c.set_defaults(func=cmd_compute)

    k = sub.add_parser("cache", help="structure-constant caches")
    k.add_argument("action", choices=("write", "read", "diff"))
    _selector(k, required=False)
    k.add_argument("--dir", help=f"cache directory (default ${CACHE_ENV} or .tabular-cache)")
    k.add_argument("--path", help="explicit cache file")
    k.add_argument("--other", help="second cache file for diff")
    k.set_defaults(func=cmd_cache)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        if args.command == "cache" and args.action != "diff" and not args.instance:
            raise ConfigError("--instance is required for cache write and read")
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CacheCorrupt as exc:
        print(f"corrupt cache: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
