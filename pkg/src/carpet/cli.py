"""Command-line interface: render, diagnose and classify subcommands.

Configs are JSON job files (bundled example names like "example0" are
also accepted); reports go to stdout as line-oriented key=value text.
Exit codes: 0 success, 2 malformed config, 3 lattice signature not
(1,3,0).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from importlib import resources
from typing import Any, Sequence

from .chambers import (ChamberBoundary, PairClass, adjacent_chamber,
                       classify_component, density_probe, maximal_discs,
                       pair_counts, rk2_hypothesis)
from .enumeration import EnumRequest, enumerate_walls, isotropic_search
from .lattice import GramLattice, isotropic_mod_p_certificate
from .projection import WrongSignatureError, build_frame
from .render import RenderSpec, render_overlay

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SIGNATURE = 3


class ConfigError(Exception):
    """Malformed job config; the message names the offending field."""


@dataclass
class JobConfig:
    lattice: GramLattice
    d: int
    coord_bound: int
    min_disc_radius: float | None = None
    mbm_squares: tuple[int, ...] = ()
    chamber_word: tuple[int, ...] = ()
    canvas_px: int = 900
    palette: dict[str, str] = field(default_factory=dict)
    highlight_norms: tuple[int, ...] = ()
    classify_norms: tuple[int, ...] = ()
    classify_bound: int | None = None
    diagnostics: tuple[dict[str, Any], ...] = ()


def _config_path(arg: str) -> str:
    if os.path.exists(arg):
        return arg
    name = arg[:-5] if arg.endswith(".json") else arg
    if name.replace("_", "").isalnum():
        bundled = resources.files("carpet") / "configs" / f"{name}.json"
        if bundled.is_file():
            return str(bundled)
    raise ConfigError(f"config file not found: {arg}")


def _field_int(raw: dict, key: str, default: int | None,
               minimum: int | None = None) -> int | None:
    if key not in raw or raw[key] is None:
        return default
    value = raw[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"field '{key}' must be an integer")
    if minimum is not None and value < minimum:
        raise ConfigError(f"field '{key}' must be >= {minimum}")
    return value


def _field_norm_list(raw: dict, key: str) -> tuple[int, ...]:
    value = raw.get(key, [])
    if not isinstance(value, list) or any(
            isinstance(x, bool) or not isinstance(x, int) for x in value):
        raise ConfigError(f"field '{key}' must be a list of integers")
    if any(x >= 0 for x in value):
        raise ConfigError(f"field '{key}' must contain negative norms only")
    return tuple(value)


def load_config(path: str) -> JobConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")

    gram = raw.get("gram")
    if not isinstance(gram, list) or not gram or not all(
            isinstance(row, list) for row in gram):
        raise ConfigError("field 'gram' must be a nonempty matrix")
    try:
        lattice = GramLattice(tuple(tuple(x for x in row) for row in gram))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"field 'gram' invalid: {exc}") from exc

    d = _field_int(raw, "d", None)
    if d is None:
        raise ConfigError("field 'd' is required")
    if d >= 0:
        raise ConfigError("field 'd' must be negative")

    coord_bound = _field_int(raw, "coord_bound", 8, minimum=1)

    min_radius = raw.get("min_disc_radius")
    if min_radius is not None:
        if isinstance(min_radius, bool) or not isinstance(min_radius, (int, float)):
            raise ConfigError("field 'min_disc_radius' must be a number")
        min_radius = float(min_radius)
        if min_radius <= 0:
            raise ConfigError("field 'min_disc_radius' must be positive")

    mbm = _field_norm_list(raw, "mbm_squares")

    word_raw = raw.get("chamber_word", [])
    if not isinstance(word_raw, list) or any(
            isinstance(x, bool) or not isinstance(x, int) or x < 0 for x in word_raw):
        raise ConfigError("field 'chamber_word' must be a list of wall indices")

    render_raw = raw.get("render", {})
    if not isinstance(render_raw, dict):
        raise ConfigError("field 'render' must be an object")
    canvas = _field_int(render_raw, "canvas_px", 900, minimum=16)
    palette = render_raw.get("palette", {})
    if not isinstance(palette, dict) or any(
            not isinstance(v, str) for v in palette.values()):
        raise ConfigError("field 'render.palette' must map names to color strings")
    highlight = _field_norm_list(render_raw, "highlight_norms")

    classify_raw = raw.get("classify", {})
    if not isinstance(classify_raw, dict):
        raise ConfigError("field 'classify' must be an object")
    classify_norms = _field_norm_list(classify_raw, "norms")
    classify_bound = _field_int(classify_raw, "bound", None, minimum=1)

    diags_raw = raw.get("diagnostics", [])
    if not isinstance(diags_raw, list) or any(
            not isinstance(x, dict) or "check" not in x for x in diags_raw):
        raise ConfigError("field 'diagnostics' must be a list of check objects")

    return JobConfig(
        lattice=lattice,
        d=d,
        coord_bound=coord_bound,
        min_disc_radius=min_radius,
        mbm_squares=mbm,
        chamber_word=tuple(word_raw),
        canvas_px=canvas,
        palette=dict(palette),
        highlight_norms=highlight,
        classify_norms=classify_norms,
        classify_bound=classify_bound,
        diagnostics=tuple(diags_raw),
    )


def _vec_str(coords: Sequence[int]) -> str:
    return "(" + ",".join(str(c) for c in coords) + ")"


def _bool_str(flag: bool) -> str:
    return "true" if flag else "false"


def cmd_render(cfg: JobConfig, out: str, threads: int, bound: int | None,
               seed: int) -> int:
    frame = build_frame(cfg.lattice)
    box = bound if bound is not None else cfg.coord_bound
    request = EnumRequest(cfg.d, box, cfg.min_disc_radius)
    walls = enumerate_walls(frame, request, threads)
    if cfg.chamber_word:
        boundary = adjacent_chamber(walls, frame, cfg.chamber_word)
    else:
        boundary = maximal_discs(walls, frame)
    specs = [RenderSpec(boundary, cfg.palette, "fill", cfg.canvas_px)]
    for norm in cfg.highlight_norms:
        extra = enumerate_walls(
            frame, EnumRequest(norm, box, cfg.min_disc_radius), threads)
        regions = maximal_discs(extra, frame).regions
        layer = ChamberBoundary(walls=extra, word=(), regions=regions,
                                maximal=regions, pruned=extra.pruned)
        specs.append(RenderSpec(layer, cfg.palette, "stroke", cfg.canvas_px))
    data = render_overlay(specs)
    with open(out, "wb") as fh:
        fh.write(data)
    print(f"vectors={len(walls)} maximal_discs={len(boundary.maximal)} "
          f"pruned={_bool_str(boundary.pruned)}")
    return EXIT_OK


def _run_diagnostic(cfg: JobConfig, check: dict[str, Any], threads: int,
                    bound: int | None, seed: int) -> list[str]:
    lattice = cfg.lattice
    kind = check.get("check")
    if kind == "signature":
        sig = lattice.signature()
        return [f"signature=({sig.pos},{sig.neg},{sig.zero})"]
    if kind == "discriminant":
        divisors = list(lattice.discriminant().elementary_divisors)
        return ["divisors=" + json.dumps(divisors, separators=(",", ":"))]
    if kind == "fp_dimension":
        p = check.get("prime")
        if not isinstance(p, int):
            raise ConfigError("diagnostic 'fp_dimension' needs a prime")
        return [f"fp_prime={p}", f"fp_dim={lattice.disc_fp_dimension(p)}"]
    if kind == "isotropy":
        p = check.get("prime")
        if not isinstance(p, int):
            raise ConfigError("diagnostic 'isotropy' needs a prime")
        depth = check.get("depth", 2)
        cert = isotropic_mod_p_certificate(lattice, p, depth)
        lines = [f"isotropy_prime={p}", f"isotropy_depth={depth}",
                 f"isotropic={cert.status}"]
        if cert.witness is not None:
            lines.append(f"isotropy_witness={_vec_str(cert.witness)}")
        search_bound = check.get("search_bound")
        if isinstance(search_bound, int) and search_bound >= 1:
            found = isotropic_search(lattice, search_bound, threads)
            lines.append(f"search_bound={search_bound}")
            lines.append(f"isotropic_count={len(found)}")
        return lines
    if kind == "rk2":
        p = check.get("prime")
        if not isinstance(p, int):
            raise ConfigError("diagnostic 'rk2' needs a prime")
        ok = rk2_hypothesis(lattice, p, cfg.d)
        return [f"rk2_prime={p}", f"rk2_hypothesis={'pass' if ok else 'fail'}"]
    if kind == "density":
        samples = check.get("samples", 20000)
        eps = check.get("eps", 0.01)
        frame = build_frame(lattice)
        box = bound if bound is not None else cfg.coord_bound
        walls = enumerate_walls(
            frame, EnumRequest(cfg.d, box, cfg.min_disc_radius), threads)
        boundary = maximal_discs(walls, frame)
        value = density_probe(boundary, int(samples), float(eps), seed)
        return [f"density_samples={samples}", f"density_eps={eps}",
                f"density={value:.6f}"]
    raise ConfigError(f"unknown diagnostic check: {kind!r}")


def cmd_diagnose(cfg: JobConfig, threads: int, bound: int | None,
                 seed: int) -> int:
    for check in cfg.diagnostics:
        for line in _run_diagnostic(cfg, check, threads, bound, seed):
            print(line)
    return EXIT_OK


def cmd_classify(cfg: JobConfig, threads: int, bound: int | None,
                 seed: int) -> int:
    frame = build_frame(cfg.lattice)
    box = bound if bound is not None else cfg.coord_bound
    walls = enumerate_walls(frame, EnumRequest(cfg.d, box), threads)
    counts = pair_counts(cfg.lattice, walls.vectors)
    print(f"walls_d={cfg.d} count={len(walls)}")
    print(f"pairs_disjoint={counts[PairClass.DISJOINT]}")
    print(f"pairs_tangent={counts[PairClass.TANGENT]}")
    print(f"pairs_transversal={counts[PairClass.TRANSVERSAL]}")
    print(f"pairs_nested={counts[PairClass.NESTED_OR_EQUAL]}")
    if cfg.classify_norms and not cfg.mbm_squares:
        raise ConfigError("field 'mbm_squares' required for classification")
    cls_bound = cfg.classify_bound if cfg.classify_bound is not None else box
    for norm in cfg.classify_norms:
        targets = enumerate_walls(frame, EnumRequest(norm, cls_bound), threads)
        for w in targets.vectors:
            verdict = classify_component(
                cfg.lattice, w, cfg.mbm_squares, cls_bound, threads)
            witness = (_vec_str(verdict.witnesses[0].coords)
                       if verdict.witnesses else "none")
            print(f"wall={_vec_str(w.coords)} norm={norm} "
                  f"verdict={verdict.verdict.value} witness={witness} "
                  f"justification={verdict.justification}")
        ncounts = pair_counts(cfg.lattice, targets.vectors)
        print(f"norm={norm} "
              f"pairs_disjoint={ncounts[PairClass.DISJOINT]} "
              f"pairs_tangent={ncounts[PairClass.TANGENT]} "
              f"pairs_transversal={ncounts[PairClass.TRANSVERSAL]} "
              f"pairs_nested={ncounts[PairClass.NESTED_OR_EQUAL]}")
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="carpet",
        description="Wall-and-chamber circle configurations from integer lattices")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (
            ("render", "render a chamber boundary to SVG"),
            ("diagnose", "run arithmetic checks from the config"),
            ("classify", "classify walls against the minimal class set")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--config", required=True, help="job config path or bundled name")
        p.add_argument("--threads", type=int, default=None,
                       help="enumeration threads (default: CARPET_THREADS or 1)")
        p.add_argument("--bound", type=int, default=None,
                       help="override the config coordinate bound")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for sampling diagnostics")
        if name == "render":
            p.add_argument("--out", required=True, help="output SVG path")
    return parser


def _thread_count(arg: int | None) -> int:
    if arg is not None:
        value = arg
    else:
        env = os.environ.get("CARPET_THREADS", "")
        try:
            value = int(env) if env else 1
        except ValueError as exc:
            raise ConfigError(f"CARPET_THREADS not an integer: {env!r}") from exc
    if value < 1:
        raise ConfigError("thread count must be >= 1")
    return value


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        threads = _thread_count(args.threads)
        cfg = load_config(_config_path(args.config))
        if args.bound is not None and args.bound < 1:
            raise ConfigError("--bound must be >= 1")
        if args.command == "render":
            return cmd_render(cfg, args.out, threads, args.bound, args.seed)
        if args.command == "diagnose":
            return cmd_diagnose(cfg, threads, args.bound, args.seed)
        return cmd_classify(cfg, threads, args.bound, args.seed)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except WrongSignatureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIGNATURE


if __name__ == "__main__":
    sys.exit(main())
