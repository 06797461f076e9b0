"""Command-line interface: align, simulate, evaluate, and bench.

File formats (all plain delimited text, diff-able):

* dataset: one record per line, leading class label then amplitudes;
  comma, tab, or space delimited (auto-detected on read, comma on write)
* series: amplitudes only, one or more per line, any of the delimiters above
* path: one ``a,b`` pair per line, 1-based
* segments (plot data): ``a,s_a,b,t_b`` per line for match-segment plotting
* summary / manifest / report: a single JSON document

Exit codes: 0 success, 1 usage or configuration error, 2 data error,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from .affine import adtw
from .combined import gardtw, lardtw
from .core import AlignmentPath, as_series, dtw, validate_path
from .errors import ConfigError, DataError
from .evaluate import (
    LabeledDataset,
    MethodConfig,
    MethodKind,
    TuningGrid,
    average_ranks,
    nn_predict,
    tune_params,
    win_loss,
    z_normalize,
)
from .regional import rdtw
from .simulate import (
    ComponentConfig,
    GlobalAffineConfig,
    WarpConfig,
    component_instance,
    global_affine_instance,
)

__all__ = ["load_dataset", "save_dataset", "load_series", "main", "entry"]


def _detect_delimiter(line: str) -> str:
    if "," in line:
        return ","
    if "\t" in line:
        return "\t"
    return " "


def _split(line: str, delim: str) -> list[str]:
    if delim == " ":
        return line.split()
    return [f.strip() for f in line.split(delim)]


def load_dataset(path, fmt: str = "ucr") -> LabeledDataset:
    """Read a labeled dataset: one record per line, class label first.

    The delimiter is auto-detected among comma, tab, and space.  Ragged
    records, non-numeric fields, and empty files raise a :class:`DataError`
    naming the offending line.
    """
    if fmt != "ucr":
        raise ConfigError(f"unknown dataset format {fmt!r}")
    text = Path(path).read_text()
    lines = [(i + 1, ln) for i, ln in enumerate(text.splitlines()) if ln.strip()]
    if not lines:
        raise DataError(f"{path}: empty dataset file")
    delim = _detect_delimiter(lines[0][1])
    labels = []
    rows = []
    width = None
    for lineno, ln in lines:
        fields = _split(ln, delim)
        if len(fields) < 2:
            raise DataError(f"{path}: line {lineno}: need a label and at least one value")
        try:
            values = [float(f) for f in fields[1:]]
        except ValueError as exc:
            raise DataError(f"{path}: line {lineno}: non-numeric value ({exc})") from None
        if width is None:
            width = len(values)
        elif len(values) != width:
            raise DataError(f"{path}: line {lineno}: record has {len(values)} values, "
                            f"expected {width}")
        labels.append(fields[0])
        rows.append(values)
    return LabeledDataset(np.asarray(rows, dtype=np.float64), np.asarray(labels, dtype=object))


def save_dataset(dataset: LabeledDataset, path, delimiter: str = ",") -> None:
    """Write a dataset in the canonical form read back by :func:`load_dataset`."""
    with open(path, "w") as fh:
        for label, row in zip(dataset.labels, dataset.series):
            fh.write(str(label) + delimiter + delimiter.join(repr(float(v)) for v in row) + "\n")


def load_series(path) -> np.ndarray:
    """Read a single unlabeled series; values may span any number of lines."""
    text = Path(path).read_text()
    values = []
    for i, ln in enumerate(text.splitlines(), start=1):
        if not ln.strip():
            continue
        fields = _split(ln, _detect_delimiter(ln))
        try:
            values.extend(float(f) for f in fields)
        except ValueError as exc:
            raise DataError(f"{path}: line {i}: non-numeric value ({exc})") from None
    if not values:
        raise DataError(f"{path}: empty series file")
    try:
        return as_series(values)
    except ValueError as exc:
        raise DataError(f"{path}: {exc}") from None


def _write_json(path: Path, obj) -> None:
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _write_path_file(path: Path, pairs: np.ndarray) -> None:
    path.write_text("".join(f"{a},{b}\n" for a, b in pairs))


def read_path_file(path) -> AlignmentPath:
    pairs = []
    for i, ln in enumerate(Path(path).read_text().splitlines(), start=1):
        if not ln.strip():
            continue
        fields = _split(ln, ",")
        if len(fields) != 2:
            raise DataError(f"{path}: line {i}: expected 'a,b'")
        pairs.append((int(fields[0]), int(fields[1])))
    if not pairs:
        raise DataError(f"{path}: empty path file")
    return AlignmentPath(np.asarray(pairs, dtype=np.int64))


def _method_config(args, length: int) -> MethodConfig:
    if args.wq is not None and args.wq_ratio is not None:
        raise ConfigError("--wq and --wq-ratio are mutually exclusive")
    if args.wh is not None and args.wh_ratio is not None:
        raise ConfigError("--wh and --wh-ratio are mutually exclusive")
    w_q = args.wq if args.wq is not None else (
        int(np.rint(args.wq_ratio * length)) if args.wq_ratio is not None else None)
    w_h = args.wh if args.wh is not None else (
        int(np.rint(args.wh_ratio * length)) if args.wh_ratio is not None else None)
    return MethodConfig(
        w_q=w_q if w_q is not None else length,
        w_h=w_h,
        c_min=args.cmin,
        c_max=args.cmax,
        d_stop=args.dstop,
        max_iters=args.max_iters,
    )


def _align_once(method: MethodKind, s, t, cfg: MethodConfig):
    """Run one alignment; returns (path, measure, iterations, params)."""
    band = cfg.band
    if method == MethodKind.DTW:
        path, measure = dtw(s, t, band)
        return path, measure, None, None
    if method == MethodKind.DTW_ZNORM:
        path, measure = dtw(z_normalize(s), z_normalize(t), band)
        return path, measure, None, None
    if method == MethodKind.ADTW:
        res = adtw(s, t, band, cfg.bounds, cfg.em)
        return res.path, res.measure, res.iterations, res.params
    if cfg.w_h is None:
        raise ConfigError(f"{method.value} requires --wh or --wh-ratio")
    if method == MethodKind.RDTW:
        path, measure = rdtw(s, t, band, cfg.w_h)
        return path, measure, None, None
    if method == MethodKind.GARDTW:
        res = gardtw(s, t, band, cfg.w_h, cfg.bounds, cfg.em)
        return res.path, res.measure, res.iterations, res.params
    path, measure = lardtw(s, t, band, cfg.w_h, cfg.bounds)
    return path, measure, None, None


def cmd_align(args) -> int:
    s = load_series(args.series_a)
    t = load_series(args.series_b)
    cfg = _method_config(args, max(s.size, t.size))
    method = MethodKind(args.method)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    t0 = time.perf_counter()
    path, measure, iterations, params = _align_once(method, s, t, cfg)
    wall = time.perf_counter() - t0
    if not validate_path(path, s.size, t.size):
        raise RuntimeError("produced path violates the alignment constraints")

    _write_path_file(out / "path.txt", path.pairs)
    segments = [f"{a},{float(s[a - 1])!r},{b},{float(t[b - 1])!r}\n" for a, b in path.pairs]
    (out / "segments.txt").write_text("".join(segments))
    summary = {
        "method": method.value,
        "n": int(s.size),
        "m": int(t.size),
        "w_q": cfg.w_q,
        "w_h": cfg.w_h,
        "c_min": cfg.c_min,
        "c_max": cfg.c_max,
        "d_stop": cfg.d_stop,
        "max_iters": cfg.max_iters,
        "seed": args.seed,
        "measure": measure,
        "iterations": iterations,
        "c": None if params is None else params.c,
        "e": None if params is None else params.e,
        "wall_time_s": wall,
    }
    _write_json(out / "summary.json", summary)
    print(f"{method.value}: measure={measure:.6g} len={len(path)} -> {out}")
    return 0


def _synthetic_base(n: int, rng: np.random.Generator) -> np.ndarray:
    # Smooth multi-sinusoid base series for simulations without real data.
    x = np.linspace(0.0, 1.0, n)
    base = np.zeros(n)
    for k in range(1, 4):
        base += rng.uniform(0.5, 1.5) / k * np.sin(2.0 * np.pi * k * x + rng.uniform(0, 2 * np.pi))
    return base


def cmd_simulate(args) -> int:
    rng = np.random.default_rng(args.seed)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    manifest = {"kind": args.kind, "seed": args.seed, "count": args.count, "instances": []}

    if args.kind == "global-affine":
        if args.base is not None:
            base = load_series(args.base)
        else:
            base = _synthetic_base(args.n, rng)
        warp = WarpConfig(args.p_match, args.p_delete, args.p_insert)
        affine = GlobalAffineConfig(
            c_range=(args.cbar_min, args.cbar_max),
            e_range=(args.ebar_min, args.ebar_max),
            noise_sigma=args.noise_level * float(np.std(base)),
        )
        manifest["base"] = "synthetic" if args.base is None else str(args.base)
        manifest["warp"] = {"p_match": warp.p_match, "p_delete": warp.p_delete,
                            "p_insert": warp.p_insert}
        _write_series(out / "base.txt", base)
        for i in range(args.count):
            inst = global_affine_instance(base, warp, affine, rng)
            _write_series(out / f"pair_{i:03d}_s.txt", base)
            _write_series(out / f"pair_{i:03d}_t.txt", inst.t)
            _write_path_file(out / f"pair_{i:03d}_truth.txt", inst.truth.pairs)
            manifest["instances"].append({
                "index": i,
                "scale": inst.scale,
                "offset": inst.offset,
                "warped_length": int(inst.omega.size),
                "omega": inst.omega.tolist(),
            })
    else:
        cfg = ComponentConfig(n=args.n, n_components=args.components,
                              amp_mean=args.mu_a, amp_sigma=args.sigma_a)
        manifest["config"] = {"n": cfg.n, "n_components": cfg.n_components,
                              "z_range": list(cfg.z_range),
                              "width_range": list(cfg.width_range),
                              "location_range": list(cfg.location_range),
                              "amp_mean": cfg.amp_mean, "amp_sigma": cfg.amp_sigma}
        for i in range(args.count):
            inst = component_instance(cfg, rng)
            _write_series(out / f"pair_{i:03d}_s.txt", inst.s)
            _write_series(out / f"pair_{i:03d}_t.txt", inst.t)
            _write_path_file(out / f"pair_{i:03d}_truth.txt", inst.truth.pairs)
            mask = inst.truth.component_mask.astype(int)
            (out / f"pair_{i:03d}_mask.txt").write_text("".join(f"{v}\n" for v in mask))
            manifest["instances"].append({
                "index": i,
                "components": [c._asdict() for c in inst.components],
            })
    _write_json(out / "manifest.json", manifest)
    print(f"wrote {args.count} {args.kind} instance(s) -> {out}")
    return 0


def _write_series(path: Path, values: np.ndarray) -> None:
    path.write_text("".join(f"{float(v)!r}\n" for v in values))


def cmd_evaluate(args) -> int:
    if len(args.train) != len(args.test):
        raise ConfigError("need one --test per --train")
    methods = [MethodKind(m.strip()) for m in args.method.split(",")]
    grid = TuningGrid()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    report = {"seed": args.seed, "datasets": [], "methods": [m.value for m in methods]}
    errors = np.zeros((len(methods), len(args.train)))
    for d, (train_path, test_path) in enumerate(zip(args.train, args.test)):
        train = load_dataset(train_path)
        test = load_dataset(test_path)
        if train.length != test.length:
            raise DataError(f"train and test series lengths differ "
                            f"({train.length} vs {test.length})")
        entry = {"train": str(train_path), "test": str(test_path), "results": {}}
        for mi, method in enumerate(methods):
            base_cfg = _method_config(args, train.length)
            if args.wq is None and args.wq_ratio is None:
                tuned = tune_params(train, method, grid, seed=args.seed,
                                    cfg=base_cfg, jobs=args.jobs)
                cfg = MethodConfig(w_q=tuned.w_q, w_h=tuned.w_h, c_min=args.cmin,
                                   c_max=args.cmax, d_stop=args.dstop,
                                   max_iters=args.max_iters)
                cv_error = tuned.cv_error
            else:
                cfg = base_cfg
                cv_error = None
            pred, nn_idx = nn_predict(train, test, method, cfg, jobs=args.jobs)
            err = float(np.mean(pred != test.labels))
            errors[mi, d] = err
            entry["results"][method.value] = {
                "w_q": cfg.w_q,
                "w_h": cfg.w_h,
                "cv_error": cv_error,
                "test_error": err,
                "decisions": [
                    {"item": int(i), "actual": str(test.labels[i]),
                     "predicted": str(pred[i]), "nn_index": int(nn_idx[i])}
                    for i in range(len(test))
                ],
            }
        report["datasets"].append(entry)

    if len(methods) > 1:
        ranks = average_ranks(errors)
        report["average_ranks"] = {m.value: float(r) for m, r in zip(methods, ranks)}
        table = {}
        for i, mi in enumerate(methods):
            for j, mj in enumerate(methods):
                if i == j:
                    continue
                wl = win_loss(errors[i], errors[j])
                table[f"{mi.value} vs {mj.value}"] = {
                    "ratio": wl.ratio, "rendered": f"{wl.ratio:.1f}",
                    "wins": wl.wins, "ties": wl.ties, "losses": wl.losses,
                }
        report["win_loss"] = table
    _write_json(out / "report.json", report)
    for d, entry in enumerate(report["datasets"]):
        for method, res in entry["results"].items():
            print(f"dataset {d} {method}: test_error={res['test_error']:.4f} "
                  f"w_q={res['w_q']} w_h={res['w_h']}")
    return 0


def cmd_bench(args) -> int:
    if args.repeats < 1:
        raise ConfigError(f"--repeats must be >= 1, got {args.repeats}")
    if args.pairs < 2:
        raise ConfigError(f"--pairs must be >= 2, got {args.pairs}")
    dataset = load_dataset(args.dataset)
    if len(dataset) < 2:
        raise DataError("benchmarking needs at least 2 series")
    rng = np.random.default_rng(args.seed)
    count = min(args.pairs, len(dataset))
    chosen = rng.choice(len(dataset), size=count, replace=False)
    series = [dataset.series[i] for i in chosen]
    pairs = [(series[i], series[i + 1]) for i in range(0, count - 1, 2)]
    methods = [MethodKind(m.strip()) for m in args.method.split(",")]
    if args.wq is None and args.wq_ratio is None:
        args.wq_ratio = 0.2
    if args.wh is None and args.wh_ratio is None:
        args.wh_ratio = 0.2
    cfg = _method_config(args, dataset.length)

    report = {"seed": args.seed, "n": dataset.length, "pairs": len(pairs),
              "repeats": args.repeats, "w_q": cfg.w_q, "w_h": cfg.w_h, "methods": {}}
    for method in methods:
        for s, t in pairs[:1]:
            _align_once(method, s, t, cfg)  # warm any lazy compilation
        iters = []
        t0 = time.perf_counter()
        for _ in range(args.repeats):
            for s, t in pairs:
                _, _, it, _ = _align_once(method, s, t, cfg)
                if it is not None:
                    iters.append(it)
        elapsed = time.perf_counter() - t0
        mean_time = elapsed / (args.repeats * len(pairs))
        report["methods"][method.value] = {
            "mean_seconds_per_alignment": mean_time,
            "mean_iterations": float(np.mean(iters)) if iters else None,
        }
    if MethodKind.DTW.value in report["methods"]:
        ref = report["methods"][MethodKind.DTW.value]["mean_seconds_per_alignment"]
        for method in report["methods"].values():
            method["ratio_to_dtw"] = method["mean_seconds_per_alignment"] / ref
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    _write_json(out / "bench.json", report)
    for name, res in report["methods"].items():
        ratio = res.get("ratio_to_dtw")
        extra = f" ratio={ratio:.2f}" if ratio is not None else ""
        if res["mean_iterations"] is not None:
            extra += f" iters={res['mean_iterations']:.1f}"
        print(f"{name}: {res['mean_seconds_per_alignment'] * 1000:.3f} ms/alignment{extra}")
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems map to exit code 1
        raise ConfigError(message)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--method", default="dtw",
                   help="method name (dtw, adtw, rdtw, gardtw, lardtw, dtw-znorm); "
                        "evaluate/bench accept a comma-separated list")
    p.add_argument("--wq", type=int, default=None, help="band half-width in samples")
    p.add_argument("--wq-ratio", type=float, default=None, help="band half-width as a ratio of n")
    p.add_argument("--wh", type=int, default=None, help="region half-width in samples")
    p.add_argument("--wh-ratio", type=float, default=None, help="region half-width as a ratio of n")
    p.add_argument("--cmin", type=float, default=0.2, help="scaling lower bound")
    p.add_argument("--cmax", type=float, default=5.0, help="scaling upper bound")
    p.add_argument("--dstop", type=float, default=1e-5, help="EM stopping threshold")
    p.add_argument("--max-iters", type=int, default=100, help="EM iteration cap")
    p.add_argument("--seed", type=int, default=0, help="seed for all randomness")
    p.add_argument("--format", default="ucr", help="dataset file format")
    p.add_argument("--out-dir", default=".", help="directory for output files")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers for pairwise measures")


def build_parser() -> _Parser:
    parser = _Parser(prog="tsalign", description="Elastic time-series alignment toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p_align = sub.add_parser("align", help="align two series and write path artifacts")
    p_align.add_argument("series_a")
    p_align.add_argument("series_b")
    _add_common(p_align)
    p_align.set_defaults(func=cmd_align)

    p_sim = sub.add_parser("simulate", help="generate series pairs with known true alignments")
    p_sim.add_argument("kind", choices=["global-affine", "component"])
    p_sim.add_argument("--count", type=int, default=1, help="number of instances")
    p_sim.add_argument("--base", default=None, help="base series file (global-affine)")
    p_sim.add_argument("--n", type=int, default=400, help="series length")
    p_sim.add_argument("--p-match", type=float, default=0.6)
    p_sim.add_argument("--p-delete", type=float, default=0.2)
    p_sim.add_argument("--p-insert", type=float, default=0.2)
    p_sim.add_argument("--cbar-min", type=float, default=0.2)
    p_sim.add_argument("--cbar-max", type=float, default=5.0)
    p_sim.add_argument("--ebar-min", type=float, default=0.0)
    p_sim.add_argument("--ebar-max", type=float, default=0.0)
    p_sim.add_argument("--noise-level", type=float, default=0.0,
                       help="noise standard deviation as a multiple of the base std")
    p_sim.add_argument("--components", type=int, default=4)
    p_sim.add_argument("--mu-a", type=float, default=1.0)
    p_sim.add_argument("--sigma-a", type=float, default=0.0)
    _add_common(p_sim)
    p_sim.set_defaults(func=cmd_simulate)

    p_eval = sub.add_parser("evaluate", help="tuned 1-NN evaluation on labeled datasets")
    p_eval.add_argument("--train", action="append", required=True, help="training dataset path")
    p_eval.add_argument("--test", action="append", required=True, help="test dataset path")
    _add_common(p_eval)
    p_eval.set_defaults(func=cmd_evaluate)

    p_bench = sub.add_parser("bench", help="time alignments of sampled dataset pairs")
    p_bench.add_argument("dataset")
    p_bench.add_argument("--pairs", type=int, default=20, help="number of series to sample")
    p_bench.add_argument("--repeats", type=int, default=10, help="timing repetitions")
    _add_common(p_bench)
    p_bench.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # internal invariant violations
        print(f"internal error: {exc}", file=sys.stderr)
        return 3


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
