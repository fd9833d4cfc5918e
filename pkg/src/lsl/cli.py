"""Command-line interface: job parsing, pipeline orchestration, reports.

Every command emits one report (JSON by default) whose content is fully
determined by the job parameters including the seed; the timing block is
the only non-reproducible field.  Resolutions can be persisted to a
directory (manifest plus one binary matrix file per differential) and
resumed later with higher limits.
"""

from __future__ import annotations

import argparse
import json
import struct
import sys
import time
from pathlib import Path
from random import Random

from . import __version__
from .errors import (
    CoverLiftFailed,
    IngestionError,
    LslError,
    OrderLimitExceeded,
    RandomnessExhausted,
    SplitBudgetExhausted,
)
from .field import GF, Field, is_prime
from .groups import GroupPresentation, GroupTable, catalog_group, enumerate_group
from .matrix import Matrix
from .modules import (
    GModule,
    SimpleRegistry,
    chop,
    decompose_projectives,
    default_seeds,
    direct_sum,
    head_multiplicities,
    permutation_module,
    regular_module,
    simples,
    socle,
)
from .resolution import (
    COMPLETED,
    ModuleMap,
    Resolution,
    Term,
    cohomology_dims,
    continue_resolution,
    detect_periodicity,
    minimal_resolution,
    squeezed_homology,
    squeezed_resolution,
)
from .series import (
    CIPresentation,
    ci_cohomology_series,
    ci_loop_series,
    compare_prefix,
    expand,
    fit_growth,
    growth_degree,
)

EXIT_OK = 0
EXIT_TRUNCATED = 2
EXIT_INGESTION = 3
EXIT_RANDOMNESS = 4

MAGIC = b"LSL1"


# -- matrix persistence ------------------------------------------------------


def write_matrix(path: Path, m: Matrix) -> None:
    f = m.field
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<IIII", m.nrows, m.ncols, f.p, f.e))
        if f.q == 2:
            stride = (m.ncols + 7) // 8
            for i in range(m.nrows):
                fh.write(m.raw_row(i).to_bytes(stride, "little"))
        else:
            width = 1 if f.q <= 256 else 2
            fmt = "<B" if width == 1 else "<H"
            for i in range(m.nrows):
                for v in m.raw_row(i):
                    fh.write(struct.pack(fmt, v))


def read_matrix(path: Path) -> Matrix:
    data = Path(path).read_bytes()
    if data[:4] != MAGIC:
        raise IngestionError(f"{path}: bad magic")
    rows, cols, p, e = struct.unpack("<IIII", data[4:20])
    f = GF(p, e)
    body = data[20:]
    if f.q == 2:
        stride = (cols + 7) // 8
        raws = [
            int.from_bytes(body[i * stride : (i + 1) * stride], "little")
            for i in range(rows)
        ]
        return Matrix(f, rows, cols, raws)
    width = 1 if f.q <= 256 else 2
    fmt = "<B" if width == 1 else "<H"
    raws = []
    off = 0
    for _ in range(rows):
        row = []
        for _ in range(cols):
            (v,) = struct.unpack_from(fmt, body, off)
            off += width
            row.append(v)
        raws.append(row)
    return Matrix(f, rows, cols, raws)


# -- job assembly ------------------------------------------------------------


def parse_field(text: str) -> Field:
    parts = text.split(".")
    try:
        p = int(parts[0])
        e = int(parts[1]) if len(parts) > 1 else 1
    except (ValueError, IndexError):
        raise IngestionError(f"bad field descriptor {text!r}; use p or p.e")
    if not is_prime(p):
        raise IngestionError(f"field characteristic {p} is not prime")
    try:
        return GF(p, e)
    except ValueError as exc:
        raise IngestionError(str(exc))


def load_group_file(path: str) -> GroupPresentation:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise IngestionError(f"cannot read group file: {exc}")
    except json.JSONDecodeError as exc:
        raise IngestionError(f"group file is not valid JSON: {exc}")
    if not isinstance(data, dict):
        raise IngestionError("group file must hold a JSON object")
    for key in ("name", "degree", "generators"):
        if key not in data:
            raise IngestionError(f"group file missing key {key!r}")
    return GroupPresentation(
        str(data["name"]), int(data["degree"]), tuple(tuple(g) for g in data["generators"])
    )


class Job:
    """Resolved job parameters plus the lazily built pipeline objects."""

    def __init__(self, args):
        self.args = args
        self.seed = args.seed
        self.rng = Random(args.seed)
        self.presentation: GroupPresentation | None = None
        self.field: Field | None = None
        self.table: GroupTable | None = None
        self._registry: SimpleRegistry | None = None
        self._pims: list[tuple[int, GModule]] | None = None
        if getattr(args, "group_file", None):
            self.presentation = load_group_file(args.group_file)
            if not getattr(args, "field", None):
                raise IngestionError("--field is required with --group-file")
        elif getattr(args, "group", None):
            self.presentation = catalog_group(args.group)
        if getattr(args, "field", None):
            self.field = parse_field(args.field)
        elif self.presentation is not None:
            self.field = GF(*self.presentation.default_field)

    def need_group(self) -> None:
        if self.presentation is None:
            raise IngestionError("this command needs --group or --group-file")
        if self.table is None:
            self.table = enumerate_group(self.presentation, self.args.max_order)

    @property
    def registry(self) -> SimpleRegistry:
        if self._registry is None:
            self.need_group()
            rounds = 2 if self.table.order > 500 else 0
            self._registry = simples(
                self.table,
                self.field,
                default_seeds(self.table, self.field, self.rng),
                self.rng,
                tensor_rounds=rounds,
            )
        return self._registry

    @property
    def pims(self) -> list[tuple[int, GModule]]:
        if self._pims is None:
            self._pims = decompose_projectives(
                self.table, self.field, self.registry, self.rng
            )
        return self._pims

    def echo(self, command: str) -> dict:
        out = {"command": command, "seed": self.seed}
        if self.presentation is not None:
            out["group"] = self.presentation.name
        if self.field is not None:
            out["field"] = {"p": self.field.p, "e": self.field.e}
        for key in ("steps", "degrees", "max_period", "max_dim"):
            if hasattr(self.args, key):
                out[key] = getattr(self.args, key)
        return out


# -- resolution persistence ---------------------------------------------------


def save_resolution(job: Job, r: Resolution, outdir: Path) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    manifest = {
        "format": "lsl-resolution-v1",
        "kind": r.kind,
        "group": {
            "name": job.presentation.name,
            "degree": job.presentation.degree,
            "generators": [list(g) for g in job.presentation.generators],
        },
        "field": {"p": job.field.p, "e": job.field.e},
        "seed": job.seed,
        "status": r.status,
        "terms": [{"dim": t.dim, "labels": [list(l) for l in t.labels]} for t in r.terms],
        "kernel_dims": [s.module.dim for s in r.syzygies],
        "core_dims": [c.module.dim for c in r.cores] if r.cores is not None else None,
        "simples": [
            {"index": i, "dim": s.dim, "label": r.registry.name(i)}
            for i, s in enumerate(r.registry.simples)
        ],
    }
    (outdir / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True))
    for i, d in enumerate(r.diffs):
        write_matrix(outdir / f"d_{i:03d}.mat", d.matrix)


def load_resolution_state(job: Job, outdir: Path) -> tuple[str, list[Term], list]:
    manifest_path = outdir / "manifest.json"
    if not manifest_path.exists():
        raise IngestionError(f"no manifest.json under {outdir}")
    manifest = json.loads(manifest_path.read_text())
    if manifest.get("format") != "lsl-resolution-v1":
        raise IngestionError("unknown resolution format")
    if manifest["seed"] != job.seed:
        raise IngestionError(
            f"stored resolution used seed {manifest['seed']}, job uses {job.seed}"
        )
    if manifest["field"] != {"p": job.field.p, "e": job.field.e}:
        raise IngestionError("stored resolution uses a different field")
    if manifest["group"]["generators"] != [
        list(g) for g in job.presentation.generators
    ]:
        raise IngestionError("stored resolution belongs to a different group")
    kind = manifest["kind"]
    pim_by_idx = dict(job.pims)
    terms: list[Term] = []
    diffs: list[ModuleMap] = []
    prev_module = job.registry.trivial
    for i, spec in enumerate(manifest["terms"]):
        labels = [tuple(l) for l in spec["labels"]]
        parts = []
        for idx, mult in labels:
            parts.extend([pim_by_idx[idx]] * mult)
        module = direct_sum(job.field, job.table.ngens, parts)
        if module.dim != spec["dim"]:
            raise IngestionError("rebuilt term dimension disagrees with manifest")
        mat = read_matrix(outdir / f"d_{i:03d}.mat")
        diffs.append(ModuleMap(module, prev_module, mat))
        terms.append(Term(module, labels))
        prev_module = module
    for i in range(1, len(diffs)):
        if not diffs[i].matrix.matmul(diffs[i - 1].matrix).is_zero():
            raise IngestionError("stored differentials do not compose to zero")
    return kind, terms, diffs


# -- commands ----------------------------------------------------------------


def _registry_json(reg: SimpleRegistry) -> list[dict]:
    return [
        {"index": i, "dim": s.dim, "label": reg.name(i)}
        for i, s in enumerate(reg.simples)
    ]


def cmd_chop(job: Job) -> tuple[dict, int]:
    job.need_group()
    if job.args.module == "regular":
        target = regular_module(job.table, job.field)
    else:
        target = permutation_module(job.presentation, job.field)
    factors = chop(target, job.rng)
    reg = job.registry
    listed = []
    for fac, mult in sorted(factors, key=lambda t: (t[0].dim, -t[1])):
        idx = reg.find_simple(fac)
        listed.append(
            {
                "dim": fac.dim,
                "multiplicity": mult,
                "label": reg.name(idx) if idx is not None else None,
            }
        )
    results = {
        "module": job.args.module,
        "module_dim": target.dim,
        "factors": listed,
        "dimension_check": sum(f["dim"] * f["multiplicity"] for f in listed) == target.dim,
    }
    return results, EXIT_OK


def cmd_simples(job: Job) -> tuple[dict, int]:
    job.need_group()
    return {"simples": _registry_json(job.registry)}, EXIT_OK


def cmd_pims(job: Job) -> tuple[dict, int]:
    job.need_group()
    reg = job.registry
    out = []
    for idx, pim in job.pims:
        soc, _ = socle(pim, reg)
        soc_factors = [
            {"label": reg.name(i), "multiplicity": m}
            for i, m in head_multiplicities(soc, reg)
        ]
        heads = [
            {"label": reg.name(i), "multiplicity": m}
            for i, m in head_multiplicities(pim, reg)
        ]
        out.append(
            {
                "simple": reg.name(idx),
                "dim": pim.dim,
                "head": heads,
                "socle": soc_factors,
            }
        )
    return {"simples": _registry_json(reg), "pims": out}, EXIT_OK


def _term_json(r: Resolution, reg: SimpleRegistry) -> list[dict]:
    return [
        {
            "dim": t.dim,
            "labels": [{"simple": reg.name(i), "multiplicity": m} for i, m in t.labels],
        }
        for t in r.terms
    ]


def _scan_json(scan) -> dict:
    cert = scan.certificate
    out = {
        "certificate": None,
        "unknown_pairs": [list(p) for p in scan.unknown_pairs],
        "syzygies_available": scan.syzygies_available,
    }
    if cert is not None:
        out["certificate"] = {
            "offset": cert.offset,
            "period": cert.period,
            "verified_pairs": cert.verified_pairs,
            "witness": cert.witness.matrix.rows_as_lists(),
        }
    return out


def cmd_squeeze(job: Job) -> tuple[dict, int]:
    job.need_group()
    reg = job.registry
    outdir = Path(job.args.out) if job.args.out else None
    if job.args.resume:
        if outdir is None:
            raise IngestionError("--resume needs --out pointing at a saved resolution")
        kind, terms, diffs = load_resolution_state(job, outdir)
        if kind != "squeezed":
            raise IngestionError(f"stored resolution has kind {kind!r}")
        r = continue_resolution(
            "squeezed", reg, job.pims, job.rng, terms, diffs,
            max_steps=job.args.steps, max_dim=job.args.max_dim,
        )
    else:
        r = squeezed_resolution(
            reg, job.pims, job.rng, max_steps=job.args.steps, max_dim=job.args.max_dim
        )
    hdims = squeezed_homology(r)
    results = {
        "status": r.status,
        "terms": _term_json(r, reg),
        "homology_dims": hdims.values,
        "homology_complete": hdims.complete,
        "kernel_dims": [s.module.dim for s in r.syzygies],
        "core_dims": [c.module.dim for c in r.cores],
    }
    if job.args.max_period:
        if len(r.cores) >= job.args.max_period + 2:
            results["periodicity"] = _scan_json(
                detect_periodicity(r, job.args.max_period, job.rng)
            )
        else:
            results["periodicity"] = None
    if outdir is not None:
        save_resolution(job, r, outdir)
    code = EXIT_OK if r.status == COMPLETED else EXIT_TRUNCATED
    return results, code


def cmd_cohomology(job: Job) -> tuple[dict, int]:
    job.need_group()
    reg = job.registry
    steps = job.args.degrees
    outdir = Path(job.args.out) if job.args.out else None
    if job.args.resume:
        if outdir is None:
            raise IngestionError("--resume needs --out pointing at a saved resolution")
        kind, terms, diffs = load_resolution_state(job, outdir)
        if kind != "minimal":
            raise IngestionError(f"stored resolution has kind {kind!r}")
        r = continue_resolution(
            "minimal", reg, job.pims, job.rng, terms, diffs,
            max_steps=steps, max_dim=job.args.max_dim,
        )
    else:
        r = minimal_resolution(
            reg, job.pims, job.rng, max_steps=steps, max_dim=job.args.max_dim
        )
    dims = cohomology_dims(r)
    results = {
        "status": r.status,
        "dims": dims.prefix(steps) if dims.complete else dims.values,
        "complete": dims.complete,
        "terms": _term_json(r, reg),
    }
    if outdir is not None:
        save_resolution(job, r, outdir)
    code = EXIT_OK if r.status == COMPLETED else EXIT_TRUNCATED
    return results, code


def _parse_presentation(args) -> CIPresentation:
    def ints(text):
        if not text:
            return ()
        try:
            return tuple(int(x) for x in text.split(","))
        except ValueError:
            raise IngestionError(f"bad degree list {text!r}")

    try:
        return CIPresentation(ints(args.gens), ints(args.rels))
    except ValueError as exc:
        raise IngestionError(str(exc))


def _series_json(s) -> dict:
    return {
        "numerator": list(s.numerator),
        "denominator_factors": list(s.denominator_factors),
    }


def cmd_predict(job: Job) -> tuple[dict, int]:
    pres = _parse_presentation(job.args)
    try:
        loop = ci_loop_series(pres)
    except ValueError as exc:
        raise IngestionError(str(exc))
    degrees = job.args.degrees
    g = growth_degree(loop)
    results = {
        "presentation": {
            "generator_codegrees": list(pres.generator_codegrees),
            "relation_codegrees": list(pres.relation_codegrees),
        },
        "loop_series": _series_json(loop),
        "expansion": expand(loop, degrees),
        "growth": {"growth_degree": g.growth_degree, "g_codimension": g.g_codimension, "fitted": g.fitted},
        "cohomology_series": _series_json(ci_cohomology_series(pres)),
        "collapse_conditional": True,
    }
    return results, EXIT_OK


def cmd_compare(job: Job) -> tuple[dict, int]:
    pres = _parse_presentation(job.args)
    try:
        loop = ci_loop_series(pres)
    except ValueError as exc:
        raise IngestionError(str(exc))
    degrees = job.args.degrees
    predicted = expand(loop, degrees)
    job.need_group()
    r = squeezed_resolution(
        job.registry, job.pims, job.rng, max_steps=max(degrees + 1, job.args.steps),
        max_dim=job.args.max_dim,
    )
    hdims = squeezed_homology(r)
    measured = hdims.prefix(degrees)
    verdict = compare_prefix(measured, predicted, degrees)
    results = {
        "degrees": degrees,
        "measured": measured,
        "predicted": predicted,
        "verdict": "match" if verdict.match else "mismatch",
        "first_mismatch": verdict.first_mismatch,
        "collapse_conditional": True,
    }
    return results, EXIT_OK


def cmd_growth(job: Job) -> tuple[dict, int]:
    results: dict = {}
    if job.args.gens or job.args.rels:
        pres = _parse_presentation(job.args)
        try:
            loop = ci_loop_series(pres)
        except ValueError as exc:
            raise IngestionError(str(exc))
        g = growth_degree(loop)
        results["loop_series"] = _series_json(loop)
        results["exact"] = {
            "growth_degree": g.growth_degree,
            "g_codimension": g.g_codimension,
            "fitted": False,
        }
    if job.presentation is not None:
        job.need_group()
        r = squeezed_resolution(
            job.registry, job.pims, job.rng,
            max_steps=job.args.steps, max_dim=job.args.max_dim,
        )
        dims = squeezed_homology(r)
        prefix = dims.values if not dims.complete else dims.prefix(max(len(dims.values), 8) - 1)
        if len(prefix) < 8:
            prefix = dims.prefix(7)
        fit = fit_growth(prefix)
        results["measured_dims"] = prefix
        results["fitted"] = {
            "growth_degree": fit.growth_degree,
            "g_codimension": fit.g_codimension,
            "fitted": True,
        }
    if not results:
        raise IngestionError("growth needs --gens/--rels or a group")
    return results, EXIT_OK


# -- report rendering ---------------------------------------------------------


def render_text(report: dict, lines: list[str] | None = None, prefix: str = "") -> str:
    out: list[str] = []

    def emit(key, value, indent):
        pad = "  " * indent
        if isinstance(value, dict):
            out.append(f"{pad}{key}:")
            for k in sorted(value):
                emit(k, value[k], indent + 1)
        elif isinstance(value, list) and value and isinstance(value[0], (dict, list)):
            out.append(f"{pad}{key}:")
            for i, v in enumerate(value):
                emit(f"[{i}]", v, indent + 1)
        else:
            out.append(f"{pad}{key}: {value}")

    for k in sorted(report):
        emit(k, report[k], 0)
    return "\n".join(out)


COMMANDS = {
    "chop": cmd_chop,
    "simples": cmd_simples,
    "pims": cmd_pims,
    "squeeze": cmd_squeeze,
    "cohomology": cmd_cohomology,
    "predict": cmd_predict,
    "compare": cmd_compare,
    "growth": cmd_growth,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lsl",
        description="Loop-space homology of finite groups via squeezed resolutions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, group=True, series=False, resolution=False):
        p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--max-order", type=int, default=10000, dest="max_order")
        if group:
            p.add_argument("--group", help="catalog name (C2, C3, C4, 3:2, A4, L3_2, L3_3)")
            p.add_argument("--group-file", dest="group_file", help="path to group JSON")
            p.add_argument("--field", help="p or p.e, e.g. 2 or 2.2")
        if series:
            p.add_argument("--gens", default="", help="generator codegrees, comma separated")
            p.add_argument("--rels", default="", help="relation codegrees, comma separated")
        if resolution:
            p.add_argument("--steps", type=int, default=20)
            p.add_argument("--max-dim", type=int, default=20000, dest="max_dim")
            p.add_argument("--out", help="directory for resolution persistence")
            p.add_argument("--resume", action="store_true")

    p = sub.add_parser("chop", help="composition factors of a catalog module")
    add_common(p)
    p.add_argument("--module", choices=("regular", "permutation"), default="regular")

    add_common(sub.add_parser("simples", help="simple modules for (G, k)"))
    add_common(sub.add_parser("pims", help="projective indecomposables"))

    p = sub.add_parser("squeeze", help="squeezed resolution and loop homology")
    add_common(p, resolution=True)
    p.add_argument("--max-period", type=int, default=0, dest="max_period")

    p = sub.add_parser("cohomology", help="minimal-resolution cohomology dims")
    add_common(p, resolution=True)
    p.add_argument("--degrees", type=int, default=8)

    p = sub.add_parser("predict", help="complete-intersection loop series")
    add_common(p, group=False, series=True)
    p.add_argument("--degrees", type=int, default=12)

    p = sub.add_parser("compare", help="measured squeezed dims vs prediction")
    add_common(p, series=True, resolution=True)
    p.add_argument("--degrees", type=int, default=12)

    p = sub.add_parser("growth", help="growth degree, exact or fitted")
    add_common(p, series=True, resolution=True)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.time()
    try:
        job = Job(args)
        results, code = COMMANDS[args.command](job)
    except (IngestionError, OrderLimitExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INGESTION
    except (RandomnessExhausted, SplitBudgetExhausted, CoverLiftFailed) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RANDOMNESS
    except LslError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INGESTION
    report = {
        "tool": {"name": "lsl", "version": __version__},
        "job": job.echo(args.command),
        "results": results,
        "timing": {"seconds": round(time.time() - t0, 6)},
    }
    if args.format == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print(render_text(report))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
