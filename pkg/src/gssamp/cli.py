"""Experiment runner: declarative configs, CSV artifacts, JSON manifest.

Commands::

    gssamp run <config.json | preset-name> --out DIR [--seed S]
    gssamp list-presets
    gssamp validate <config.json | preset-name>

Exit codes: 0 ok, 1 config error, 2 numeric error, 3 I/O error.

A config is a JSON object with keys:

    name      str, experiment label
    kind      "downsample" | "upsample" | "fractional" |
              "repeated-eigenvalues" | "cluster-energy" | "pyramid-nla"
    graph     {"generator": name, "params": {...}} or {"edge_list": path,
              "coordinates": path?}
    graph1    target graph for "upsample"/"fractional" (same form), optional
    reduction "generator" | "every_other" | "polarity" | {"keep_first": k}
    rate      int sampling rate (down- or upsampling factor)
    signal    {"kind": "bandlimited-random", "cutoff": int} |
              {"kind": "delta-spectrum", "index": int} |
              {"kind": "constant"} |
              {"kind": "spectral-decay", "alpha": float} |
              {"kind": "cluster-band", "bands": [[lo,hi],[lo,hi]]}
    operators list of operator names (vertex, index, index-folded, spectrum,
              spectrum-folded for integer-rate experiments; frac-index,
              frac-index-folded, frac-spectrum, frac-spectrum-folded for
              fractional ones)
    seed      int
    extras    kind-specific options (levels, fractions, bands, ...)

All outputs are CSV series plus manifest.json listing every file with its
sha256 checksum and the experiment's key scalars.
"""
from __future__ import annotations

import argparse
import copy
import hashlib
import json
import sys
from pathlib import Path

import numpy as np

from . import graphs as G
from .errors import GssampError, InvalidParameterError, NumericError
from .pyramid import FilterSpec, PyramidConfig, nla_error_curve
from .reduction import (
    kron_reduce,
    make_cluster_band_signal,
    select_every_other,
    select_polarity,
    spectral_bisection,
)
from .sampling import (
    SamplingContext,
    VertexCorrespondence,
    fractional_downsample,
    spectral_downsample_index,
    spectral_downsample_spectrum,
    spectral_upsample_index,
    spectral_upsample_spectrum,
    vertex_downsample,
    vertex_upsample,
)
from .spectral import eigendecompose, gft, igft

_GENERATORS = {
    "path": G.build_path,
    "ring": G.build_ring,
    "grid": G.build_grid,
    "complete": G.build_complete,
    "comet": G.build_comet,
    "community": G.build_community,
    "random_regular": G.build_random_regular,
    "random_sensor": G.build_random_sensor,
}

_DOWN_OPS = ("vertex", "index", "index-folded", "spectrum", "spectrum-folded")
_UP_OPS = _DOWN_OPS
_FRAC_OPS = (
    "frac-index",
    "frac-index-folded",
    "frac-spectrum",
    "frac-spectrum-folded",
)
_KINDS = (
    "downsample",
    "upsample",
    "fractional",
    "repeated-eigenvalues",
    "cluster-energy",
    "pyramid-nla",
)


# ---------------------------------------------------------------------------
# presets


def _preset_path_downsample():
    return {
        "name": "path-downsample",
        "kind": "downsample",
        "graph": {"generator": "path", "params": {"n": 100}},
        "reduction": "generator",
        "rate": 2,
        "signal": {"kind": "bandlimited-random", "cutoff": 25},
        "operators": ["vertex", "index", "index-folded", "spectrum", "spectrum-folded"],
        "seed": 7,
    }


def _preset_path_upsample():
    return {
        "name": "path-upsample",
        "kind": "upsample",
        "graph": {"generator": "path", "params": {"n": 50}},
        "graph1": {"generator": "path", "params": {"n": 100}},
        "rate": 2,
        "signal": {"kind": "bandlimited-random", "cutoff": 12},
        "operators": ["vertex", "index", "index-folded", "spectrum", "spectrum-folded"],
        "seed": 7,
    }


def _preset_grid_downsample():
    return {
        "name": "grid-downsample",
        "kind": "downsample",
        "graph": {"generator": "grid", "params": {"rows": 16, "cols": 16}},
        "reduction": "generator",
        "rate": 4,
        "signal": {"kind": "bandlimited-random", "cutoff": 16},
        "operators": ["vertex", "index", "index-folded", "spectrum", "spectrum-folded"],
        "seed": 7,
    }


def _preset_random_regular():
    return {
        "name": "random-regular-downsample",
        "kind": "downsample",
        "graph": {"generator": "random_regular", "params": {"n": 100, "degree": 10, "seed": 1}},
        "reduction": "polarity",
        "rate": 2,
        "signal": {"kind": "bandlimited-random", "cutoff": 25},
        "operators": ["vertex", "index-folded", "spectrum-folded"],
        "seed": 7,
    }


def _preset_aliasing_path():
    return {
        "name": "aliasing-path",
        "kind": "downsample",
        "graph": {"generator": "path", "params": {"n": 100}},
        "reduction": "generator",
        "rate": 2,
        "signal": {"kind": "spectral-decay", "alpha": 2.0},
        "operators": ["index", "index-folded", "spectrum", "spectrum-folded"],
        "seed": 7,
    }


def _preset_repeated_eigenvalues():
    return {
        "name": "repeated-eigenvalues",
        "kind": "repeated-eigenvalues",
        "graph": {"generator": "complete", "params": {"n": 100}},
        "reduction": {"keep_first": 52},
        "signal": {"kind": "bandlimited-random", "cutoff": 50},
        "seed": 7,
    }


def _preset_community_fractional():
    return {
        "name": "community-fractional",
        "kind": "fractional",
        "graph": {
            "generator": "community",
            "params": {"n": 256, "k_communities": 8, "seed": 3},
        },
        "graph1": {
            "generator": "community",
            "params": {"n": 192, "k_communities": 8, "seed": 4},
        },
        "signal": {"kind": "bandlimited-random", "cutoff": 24},
        "operators": ["frac-index-folded", "frac-spectrum-folded"],
        "seed": 7,
    }


def _preset_comet_fractional():
    return {
        "name": "comet-fractional",
        "kind": "fractional",
        "graph": {"generator": "comet", "params": {"n": 32, "center_degree": 12}},
        "graph1": {"generator": "comet", "params": {"n": 24, "center_degree": 9}},
        "signal": {"kind": "bandlimited-random", "cutoff": 8},
        "operators": ["frac-index-folded", "frac-spectrum-folded"],
        "seed": 7,
    }


def _preset_minnesota_energy():
    return {
        "name": "minnesota-energy",
        "kind": "cluster-energy",
        "graph": {"edge_list": None},  # user must supply a path
        "signal": {"kind": "cluster-band", "bands": [[0.06, 0.08], [3.5, 4.0]]},
        "seed": 7,
    }


def _preset_pyramid_nla():
    return {
        "name": "pyramid-nla",
        "kind": "pyramid-nla",
        "graph": {"generator": "random_sensor", "params": {"n": 128, "k_nearest": 6, "seed": 2}},
        "signal": {"kind": "bandlimited-random", "cutoff": 10},
        "extras": {"levels": 3, "fractions": [0.0, 0.05, 0.1, 0.2, 0.4, 0.8, 1.0]},
        "seed": 7,
    }


PRESETS = {
    p["name"]: f
    for f, p in (
        (f, f())
        for f in (
            _preset_path_downsample,
            _preset_path_upsample,
            _preset_grid_downsample,
            _preset_random_regular,
            _preset_aliasing_path,
            _preset_repeated_eigenvalues,
            _preset_community_fractional,
            _preset_comet_fractional,
            _preset_minnesota_energy,
            _preset_pyramid_nla,
        )
    )
}


def list_presets() -> list[str]:
    return sorted(PRESETS)


# ---------------------------------------------------------------------------
# config handling


def load_config(source: str) -> dict:
    """Resolve a preset name or a JSON file path into a config dict."""
    if source in PRESETS:
        return PRESETS[source]()
    path = Path(source)
    if not path.exists():
        raise InvalidParameterError(
            f"unknown preset or missing file {source!r}; presets: {', '.join(list_presets())}"
        )
    with open(path) as fh:
        return json.load(fh)


def validate_config(cfg: dict) -> list[str]:
    """Dry-run structural checks (no eigendecomposition). Returns error list."""
    errors = []
    if not isinstance(cfg, dict):
        return ["config must be a JSON object"]
    kind = cfg.get("kind")
    if kind not in _KINDS:
        errors.append(f"kind must be one of {_KINDS}, got {kind!r}")
    gspec = cfg.get("graph")
    if not isinstance(gspec, dict):
        errors.append("graph must be an object")
        gspec = {}
    n0 = None
    if "generator" in gspec:
        gen = gspec["generator"]
        if gen not in _GENERATORS:
            errors.append(f"unknown generator {gen!r}")
        else:
            params = gspec.get("params", {})
            n0 = params.get("n")
            if gen == "grid" and "rows" in params and "cols" in params:
                n0 = params["rows"] * params["cols"]
    elif "edge_list" in gspec:
        if not gspec["edge_list"]:
            errors.append("graph.edge_list path is required for this config")
    else:
        errors.append("graph needs 'generator' or 'edge_list'")
    rate = cfg.get("rate")
    if kind in ("downsample", "upsample"):
        if not isinstance(rate, int) or rate < 2:
            errors.append("rate must be an integer >= 2")
        elif isinstance(n0, int) and kind == "downsample" and n0 % rate != 0:
            errors.append(f"rate {rate} does not divide graph size {n0}")
    sig = cfg.get("signal", {})
    if sig.get("kind") not in (
        "bandlimited-random",
        "delta-spectrum",
        "constant",
        "spectral-decay",
        "cluster-band",
    ):
        errors.append(f"unknown signal kind {sig.get('kind')!r}")
    if sig.get("kind") == "bandlimited-random":
        cutoff = sig.get("cutoff")
        if not isinstance(cutoff, int) or cutoff < 1:
            errors.append("signal.cutoff must be a positive integer")
        elif isinstance(n0, int) and cutoff > n0:
            errors.append(f"signal.cutoff {cutoff} exceeds graph size {n0}")
    ops = cfg.get("operators", [])
    valid_ops = set(_DOWN_OPS) | set(_UP_OPS) | set(_FRAC_OPS)
    for op in ops:
        if op not in valid_ops:
            errors.append(f"unknown operator {op!r}")
    return errors


# ---------------------------------------------------------------------------
# experiment machinery


def _build_graph(gspec: dict) -> G.Graph:
    if "edge_list" in gspec:
        return G.load_edge_list(gspec["edge_list"], gspec.get("coordinates"))
    params = dict(gspec.get("params", {}))
    return _GENERATORS[gspec["generator"]](**params)


def _build_signal(sig: dict, basis, seed: int, clusters=None) -> np.ndarray:
    kind = sig["kind"]
    if kind == "constant":
        return np.ones(basis.n)
    if kind == "delta-spectrum":
        coeffs = np.zeros(basis.n)
        coeffs[sig["index"]] = 1.0
        return igft(basis, coeffs)
    if kind == "bandlimited-random":
        rng = np.random.default_rng(seed)
        coeffs = np.zeros(basis.n)
        coeffs[: sig["cutoff"]] = rng.standard_normal(sig["cutoff"])
        return igft(basis, coeffs)
    if kind == "spectral-decay":
        coeffs = np.exp(-sig["alpha"] * basis.eigenvalues)
        return igft(basis, coeffs)
    if kind == "cluster-band":
        if clusters is None:
            raise InvalidParameterError("cluster-band signal needs clusters")
        return make_cluster_band_signal(basis, clusters, sig["bands"])
    raise InvalidParameterError(f"unknown signal kind {kind!r}")


def _reduce(cfg, graph, lap, basis, rate):
    """Produce (reduced graph, correspondence or None) per the reduction spec."""
    red = cfg.get("reduction", "polarity")
    if red == "generator":
        gspec = copy.deepcopy(cfg["graph"])
        params = gspec.get("params", {})
        if "n" in params:
            params["n"] = params["n"] // rate
        elif "rows" in params:
            s = round(rate**0.5)
            params["rows"], params["cols"] = params["rows"] // s, params["cols"] // s
        reduced = _build_graph(gspec)
        keep = select_every_other(graph, rate)
        return reduced, VertexCorrespondence(keep)
    if red == "every_other":
        keep = select_every_other(graph, rate)
    elif red == "polarity":
        keep = select_polarity(basis, graph.n // rate)
    elif isinstance(red, dict) and "keep_first" in red:
        keep = np.arange(red["keep_first"])
    else:
        raise InvalidParameterError(f"unknown reduction {red!r}")
    result = kron_reduce(lap, keep)
    return result.graph, result.correspondence


def _apply_down(op, ctx, corr, f, rate):
    if op == "vertex":
        return vertex_downsample(f, corr)
    folded = op.endswith("-folded")
    if op.startswith("index"):
        return spectral_downsample_index(ctx, f, rate, folded=folded)
    return spectral_downsample_spectrum(ctx, f, rate, folded=folded)


def _apply_up(op, ctx, corr, f, rate, n1):
    if op == "vertex":
        return vertex_upsample(f, corr, n1)
    folded = op.endswith("-folded")
    if op.startswith("index"):
        return spectral_upsample_index(ctx, f, rate, folded=folded)
    return spectral_upsample_spectrum(ctx, f, rate, folded=folded)


class _Artifacts:
    """Collects CSV outputs under one directory and builds the manifest."""

    def __init__(self, out_dir: Path):
        self.out_dir = out_dir
        self.files: dict[str, str] = {}
        self.scalars: dict[str, float] = {}
        out_dir.mkdir(parents=True, exist_ok=True)

    def write_csv(self, name: str, header: str, rows) -> None:
        path = self.out_dir / name
        with open(path, "w") as fh:
            fh.write(f"# {header}\n")
            for row in rows:
                fh.write(",".join(_fmt(v) for v in row) + "\n")
        self.files[name] = _sha256(path)

    def spectrum_csv(self, name: str, basis, signal: np.ndarray) -> None:
        coeffs = gft(basis, np.real(signal)).coefficients
        rows = zip(range(basis.n), basis.eigenvalues, coeffs)
        self.write_csv(name, "index,lambda,coefficient", rows)

    def signal_csv(self, name: str, signal: np.ndarray) -> None:
        self.write_csv(name, "vertex,value", enumerate(np.real(signal)))

    def manifest(self, cfg: dict) -> dict:
        return {"config": cfg, "files": self.files, "scalars": self.scalars}


def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return f"{float(v):.12e}"


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def run_experiment(cfg: dict, out_dir, seed: int | None = None) -> dict:
    """Run one experiment config; writes artifacts and returns the manifest."""
    errors = validate_config(cfg)
    if errors:
        raise InvalidParameterError("; ".join(errors))
    cfg = copy.deepcopy(cfg)
    if seed is not None:
        cfg["seed"] = seed
    art = _Artifacts(Path(out_dir))
    kind = cfg["kind"]
    graph = _build_graph(cfg["graph"])
    lap = G.laplacian(graph)
    basis = eigendecompose(lap)

    if kind == "downsample":
        rate = cfg["rate"]
        reduced, corr = _reduce(cfg, graph, lap, basis, rate)
        basis1 = eigendecompose(G.laplacian(reduced))
        ctx = SamplingContext(basis, basis1)
        f = _build_signal(cfg["signal"], basis, cfg["seed"])
        art.spectrum_csv("original_spectrum.csv", basis, f)
        art.signal_csv("original_signal.csv", f)
        for op in cfg["operators"]:
            out = _apply_down(op, ctx, corr, f, rate)
            art.spectrum_csv(f"{op}_spectrum.csv", basis1, out)
            art.signal_csv(f"{op}_signal.csv", out)
            art.scalars[f"{op}_energy"] = float(np.linalg.norm(out) ** 2)

    elif kind == "upsample":
        rate = cfg["rate"]
        big = _build_graph(cfg["graph1"])
        basis1 = eigendecompose(G.laplacian(big))
        ctx = SamplingContext(basis, basis1)
        corr = VertexCorrespondence(np.arange(0, big.n, rate))
        f = _build_signal(cfg["signal"], basis, cfg["seed"])
        art.spectrum_csv("original_spectrum.csv", basis, f)
        art.signal_csv("original_signal.csv", f)
        for op in cfg["operators"]:
            out = _apply_up(op, ctx, corr, f, rate, big.n)
            art.spectrum_csv(f"{op}_spectrum.csv", basis1, out)
            art.signal_csv(f"{op}_signal.csv", out)
            art.scalars[f"{op}_energy"] = float(np.linalg.norm(out) ** 2)

    elif kind == "fractional":
        small = _build_graph(cfg["graph1"])
        basis1 = eigendecompose(G.laplacian(small))
        ctx = SamplingContext(basis, basis1)
        f = _build_signal(cfg["signal"], basis, cfg["seed"])
        art.spectrum_csv("original_spectrum.csv", basis, f)
        art.signal_csv("original_signal.csv", f)
        for op in cfg["operators"]:
            mode = "index" if "index" in op else "spectrum"
            out = fractional_downsample(ctx, f, mode=mode, folded=op.endswith("-folded"))
            art.spectrum_csv(f"{op.replace('-', '_')}_spectrum.csv", basis1, out)
            art.signal_csv(f"{op.replace('-', '_')}_signal.csv", out)

    elif kind == "repeated-eigenvalues":
        # On a graph with a repeated top eigenvalue the eigenvector order is
        # free; an adversarial order scatters the spectrum into the fold band.
        keep_first = cfg["reduction"]["keep_first"]
        result = kron_reduce(lap, np.arange(keep_first))
        basis1 = eigendecompose(G.laplacian(result.graph))
        cutoff = cfg["signal"].get("cutoff", graph.n // 2)
        coeffs0 = np.zeros(graph.n)
        coeffs0[:cutoff] = 1.0
        f0 = igft(basis, coeffs0)
        permuted = eigendecompose(lap, ordering_seed=cfg["seed"])
        for tag, b in (("ordered", basis), ("permuted", permuted)):
            ctx = SamplingContext(b, basis1)
            out = fractional_downsample(ctx, f0, mode="index", folded=True)
            art.spectrum_csv(f"{tag}_down_spectrum.csv", basis1, out)
            out_coeffs = gft(basis1, np.real(out)).coefficients
            src = b.eigenvectors.T @ f0
            fold = out_coeffs - src[:keep_first]
            art.scalars[f"{tag}_fold_energy"] = float(np.linalg.norm(fold) ** 2)
            art.scalars[f"{tag}_total_energy"] = float(np.linalg.norm(out_coeffs) ** 2)

    elif kind == "cluster-energy":
        clusters = spectral_bisection(basis)
        f = _build_signal(cfg["signal"], basis, cfg["seed"], clusters=clusters)
        art.signal_csv("original_signal.csv", f)
        art.spectrum_csv("original_spectrum.csv", basis, f)
        labels = np.zeros(graph.n, dtype=int)
        labels[clusters[1]] = 1
        art.write_csv("clusters.csv", "vertex,cluster", enumerate(labels))
        keep = select_polarity(basis, graph.n // 2)
        result = kron_reduce(lap, keep)
        basis1 = eigendecompose(G.laplacian(result.graph))
        n1 = keep.size
        ctx = SamplingContext(basis, basis1)
        out = fractional_downsample(ctx, f, mode="index", folded=False)
        art.signal_csv("downsampled_signal.csv", out)
        art.spectrum_csv("downsampled_spectrum.csv", basis1, out)
        # split the downsampled signal into the main band (original spectrum
        # below the fold index) and the folded aliasing band, then measure
        # per-cluster energies; cluster labels follow the kept vertices
        orig = gft(basis, f).coefficients
        alias_coeffs = np.zeros(n1)
        alias_coeffs[: graph.n - n1] = orig[n1:]
        f_main = igft(basis1, orig[:n1])
        f_alias = igft(basis1, alias_coeffs)
        labels_d = labels[keep]
        for ci in (0, 1):
            idx = np.nonzero(labels_d == ci)[0]
            art.scalars[f"main_cluster{ci + 1}_energy"] = float(
                np.linalg.norm(f_main[idx]) ** 2
            )
            art.scalars[f"alias_cluster{ci + 1}_energy"] = float(
                np.linalg.norm(f_alias[idx]) ** 2
            )
        art.scalars["fold_lambda"] = float(basis.eigenvalues[n1])

    elif kind == "pyramid-nla":
        extras = cfg.get("extras", {})
        levels = extras.get("levels", 3)
        fractions = extras.get("fractions", [0.0, 0.1, 0.2, 0.4, 0.8, 1.0])
        f = _build_signal(cfg["signal"], basis, cfg["seed"])
        art.signal_csv("original_signal.csv", f)
        for sampling in ("vertex", "index", "spectrum"):
            pcfg = PyramidConfig(sampling=sampling, analysis_filter=FilterSpec())
            curve = nla_error_curve(f, graph, pcfg, fractions, num_levels=levels)
            art.write_csv(f"nla_{sampling}.csv", "fraction,error", curve)
            art.scalars[f"{sampling}_error_at_0.2"] = next(
                (e for fr, e in curve if abs(fr - 0.2) < 1e-12), float("nan")
            )

    manifest = art.manifest(cfg)
    with open(Path(out_dir) / "manifest.json", "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
    return manifest


# ---------------------------------------------------------------------------
# entry point


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="gssamp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    run_p = sub.add_parser("run", help="run an experiment config or preset")
    run_p.add_argument("config", help="preset name or path to a config JSON")
    run_p.add_argument("--out", required=True, help="output directory")
    run_p.add_argument("--seed", type=int, default=None, help="override config seed")
    sub.add_parser("list-presets", help="print available preset names")
    val_p = sub.add_parser("validate", help="check a config without running it")
    val_p.add_argument("config", help="preset name or path to a config JSON")
    args = parser.parse_args(argv)

    if args.command == "list-presets":
        for name in list_presets():
            print(name)
        return 0

    try:
        cfg = load_config(args.config)
    except (InvalidParameterError, json.JSONDecodeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 3

    if args.command == "validate":
        errors = validate_config(cfg)
        if errors:
            for e in errors:
                print(f"config error: {e}", file=sys.stderr)
            return 1
        print("ok")
        return 0

    errors = validate_config(cfg)
    if errors:
        for e in errors:
            print(f"config error: {e}", file=sys.stderr)
        return 1
    try:
        manifest = run_experiment(cfg, args.out, seed=args.seed)
    except NumericError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return 2
    except (InvalidParameterError, GssampError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 3
    print(f"wrote {len(manifest['files']) + 1} files to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
