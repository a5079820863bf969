"""Command-line drivers for the desk-scale experiments.

Subcommands: thresholds, simplex-catalog, cips-table, beta-search,
dynamics, fixpoints. All runs are seeded; outputs are deterministic for a
given manifest (rows sorted, 17-significant-digit floats) and embed the
manifest hash. Exit codes: 0 success, 2 invalid configuration, 3
numerical failure.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from ._kernels import iterate_batch
from .cips import cips_check, derived_seed
from .errors import DegenerateBifurcationError, NumericalError
from .fixpoints import (
    SeedStrategy,
    beta_threshold_search,
    find_fixed_points,
    sufficient_beta_lemma3,
)
from .hopfield import PatternSet
from .manifest import RunManifest, write_csv, write_jsonl
from .models import DistortedBasisModel, read_pattern_file
from .polytope import FaceSpec
from .simplex import (
    classify_softmax_catalog,
    bifurcation_threshold,
    enumerate_softmax_fixed_points,
)

_EXIT_INVALID = 2
_EXIT_NUMERICAL = 3


def _int_list(text: str) -> list[int]:
    return [int(t) for t in text.replace(",", " ").split()]


def _float_list(text: str) -> list[float]:
    return [float(t) for t in text.replace(",", " ").split()]


def _grid(text: str) -> list[float]:
    """Either 'lo:hi:step' or a comma/space-separated list."""
    if ":" in text:
        lo, hi, step = (float(t) for t in text.split(":"))
        count = int(round((hi - lo) / step)) + 1
        return [lo + i * step for i in range(count)]
    return _float_list(text)


def _load_patterns(args) -> PatternSet:
    if getattr(args, "demo", False):
        return PatternSet.demo_square()
    if getattr(args, "identity", None):
        return PatternSet.identity(args.identity)
    if getattr(args, "patterns", None):
        return read_pattern_file(args.patterns, normalize=not args.no_normalize)
    raise ValueError("no pattern source given (use --patterns, --demo, or --identity)")


def cmd_thresholds(args) -> int:
    manifest = RunManifest("thresholds", {"n_list": args.n_list}, seed=0)
    rows = [(n, float(bifurcation_threshold(n, 1))) for n in sorted(args.n_list)]
    write_csv(args.out, "hopfix.thresholds.v1", manifest, ["n", "m_n_1"], rows)
    manifest.write(args.out)
    return 0


def cmd_simplex_catalog(args) -> int:
    config = {"n": args.n, "beta": args.beta}
    manifest = RunManifest("simplex-catalog", config, seed=0)
    catalog = classify_softmax_catalog(
        enumerate_softmax_fixed_points(args.n, args.beta)
    )
    records = [
        {
            "kind": pt.root,
            "k": pt.k,
            "J": list(pt.J),
            "coord": pt.coord,
            "point": [float(v) for v in pt.vector],
            "stable": bool(pt.stable),
            "marginal": pt.marginal,
            "spectral_radius": pt.spectral_radius,
        }
        for pt in catalog.points
    ]
    records.sort(key=lambda r: (r["k"], r["J"], r["kind"]))
    summary = {
        "summary": True,
        "n": catalog.n,
        "beta": catalog.beta,
        "nu": catalog.nu,
        "total": catalog.total,
        "stable": catalog.stable_count,
    }
    write_jsonl(args.out, "hopfix.simplex_catalog.v1", manifest, records + [summary])
    manifest.write(args.out)
    return 0


def _cips_face_task(patterns, J, face_seed, samples, threshold):
    verdict = cips_check(patterns, J, threshold=threshold, samples=samples, seed=face_seed)
    return verdict.worst, verdict.passed


def cmd_cips_table(args) -> int:
    config = {
        "n_list": args.n_list,
        "kappa_list": args.kappa_list,
        "face_sizes": args.face_sizes,
        "faces_per_size": args.faces,
        "samples": args.samples,
        "threshold": args.threshold,
        "sigma_law": args.sigma_law,
    }
    manifest = RunManifest("cips-table", config, seed=args.seed)
    rows = []
    config_counter = 0
    for n in args.n_list:
        for kappa in args.kappa_list:
            # one polytope per configuration; faces sampled from its stream
            config_counter += 1
            config_seed = derived_seed(args.seed, 1_000_003 * config_counter)
            rng = np.random.default_rng(config_seed)
            model = DistortedBasisModel(n=n, kappa=kappa, sigma_law=args.sigma_law)
            patterns = model.sample(rng)
            tasks = []
            for k in args.face_sizes:
                for i in range(args.faces):
                    J = tuple(np.sort(rng.choice(n, size=k, replace=False)))
                    tasks.append((J, derived_seed(config_seed, len(tasks) + 1)))
            manifest.task_seeds.extend(s for _, s in tasks)

            def run_task(t):
                J, fs = t
                return _cips_face_task(patterns, J, fs, args.samples, args.threshold)

            if args.threads > 1:
                with ThreadPoolExecutor(max_workers=args.threads) as pool:
                    results = list(pool.map(run_task, tasks))
            else:
                results = [run_task(t) for t in tasks]
            minima = np.array([r[0] for r in results])
            passed = np.array([r[1] for r in results])
            rows.append(
                (
                    n,
                    float(kappa),
                    float(minima.min()),
                    float(np.median(minima)),
                    float(passed.mean() * 100.0),
                )
            )
    write_csv(
        args.out,
        "hopfix.cips_table.v1",
        manifest,
        ["n", "kappa", "delta_min", "delta_median", "cips_rate_percent"],
        rows,
    )
    manifest.write(args.out)
    return 0


def cmd_beta_search(args) -> int:
    config = {
        "n": args.n,
        "kappa": args.kappa,
        "face_sizes": args.face_sizes,
        "faces_per_size": args.faces,
        "samples": args.samples,
        "beta_grid": args.beta_grid,
        "lambda_grid": args.lambda_grid,
        "sigma_law": args.sigma_law,
    }
    manifest = RunManifest("beta-search", config, seed=args.seed)
    model = DistortedBasisModel(n=args.n, kappa=args.kappa, sigma_law=args.sigma_law)
    rows = []
    face_id = 0
    for k in args.face_sizes:
        for _ in range(args.faces):
            face_seed = derived_seed(args.seed, face_id + 1)
            manifest.task_seeds.append(face_seed)
            rng = np.random.default_rng(face_seed)
            patterns = model.sample(rng)
            J = tuple(np.sort(rng.choice(args.n, size=k, replace=False)))
            isolated = patterns.restrict(J)
            found = beta_threshold_search(
                isolated,
                args.beta_grid,
                args.lambda_grid,
                samples=args.samples,
                seed=face_seed,
            )
            beta_emp, lam_used = found if found else (None, None)
            face = FaceSpec(patterns, J)
            try:
                verdict = cips_check(patterns, J, samples=2000, seed=face_seed)
                delta = verdict.worst
                if delta > 0:
                    lam_suff = 1.0 - delta / 12.0
                    eps_suff = delta / 4.0
                    beta_suff = sufficient_beta_lemma3(
                        patterns, face, lam_suff, eps_suff, seed=face_seed
                    )
                else:
                    beta_suff = None
            except (ValueError, NumericalError):
                beta_suff = None
            rows.append(
                (
                    face_id,
                    k,
                    "none" if beta_emp is None else float(beta_emp),
                    "none" if lam_used is None else float(lam_used),
                    "none" if beta_suff is None else float(beta_suff),
                )
            )
            face_id += 1
    write_csv(
        args.out,
        "hopfix.beta_search.v1",
        manifest,
        ["face_id", "k", "beta_empirical", "lambda_used", "beta_lemma3"],
        rows,
    )
    manifest.write(args.out)
    return 0


def cmd_dynamics(args) -> int:
    patterns = _load_patterns(args)
    if patterns.dim != 2:
        raise ValueError("dynamics needs 2-D patterns (d = 2)")
    config = {
        "beta": args.beta,
        "points": args.points,
        "snapshots": args.iters,
        "tol": args.tol,
        "source": "demo" if args.demo else args.patterns,
    }
    manifest = RunManifest("dynamics", config, seed=args.seed)

    records = find_fixed_points(patterns, args.beta, SeedStrategy(seed=args.seed))
    stable = [r for r in records if r.classification == "stable"]
    if not stable:
        raise NumericalError("no stable fixed points found; cannot assign basins")

    rng = np.random.default_rng(args.seed)
    X = rng.uniform(-1.0, 1.0, (args.points, 2))
    snapshots = sorted(set(args.iters))
    rows = []
    cur = X.copy()
    it = 0
    for target in snapshots:
        while it < target:
            Z = (cur @ patterns.matrix) * args.beta
            Z -= Z.max(axis=1, keepdims=True)
            P = np.exp(Z)
            P /= P.sum(axis=1, keepdims=True)
            cur = P @ patterns.matrix.T
            it += 1
        for pid in range(args.points):
            rows.append(
                {
                    "point_id": pid,
                    "iteration": target,
                    "x": float(cur[pid, 0]),
                    "y": float(cur[pid, 1]),
                }
            )
    final, _, converged = iterate_batch(
        patterns.matrix, args.beta, cur, max_iter=args.max_iter, tol=args.tol
    )
    if not converged.all():
        raise NumericalError("trajectories failed to converge within the budget")
    stable_locs = np.array([r.location for r in stable])
    dists = np.linalg.norm(final[:, None, :] - stable_locs[None, :, :], axis=2)
    basin = dists.argmin(axis=1)
    for pid in range(args.points):
        rows.append(
            {
                "point_id": pid,
                "iteration": "final",
                "x": float(final[pid, 0]),
                "y": float(final[pid, 1]),
                "basin_record": int(basin[pid]),
            }
        )
    rows.sort(
        key=lambda r: (
            r["point_id"],
            float("inf") if r["iteration"] == "final" else r["iteration"],
        )
    )
    write_jsonl(args.out, "hopfix.dynamics.v1", manifest, rows)
    rec_rows = [dict(record_id=i, **r.as_dict()) for i, r in enumerate(stable)]
    rec_out = f"{args.out}.fixedpoints.jsonl" if args.out else None
    write_jsonl(rec_out, "hopfix.fixedpoints.v1", manifest, rec_rows)
    manifest.write(args.out)
    return 0


def cmd_fixpoints(args) -> int:
    patterns = _load_patterns(args)
    config = {
        "beta": args.beta,
        "source": "demo" if args.demo else (args.patterns or f"identity:{args.identity}"),
    }
    manifest = RunManifest("fixpoints", config, seed=args.seed)
    records = find_fixed_points(patterns, args.beta, SeedStrategy(seed=args.seed))
    records.sort(key=lambda r: tuple(r.location))
    rows = [dict(record_id=i, **r.as_dict()) for i, r in enumerate(records)]
    by_class: dict[str, int] = {}
    by_dim: dict[str, int] = {}
    for r in records:
        by_class[r.classification] = by_class.get(r.classification, 0) + 1
        dim = str(r.face_hint.dim) if r.face_hint else "unknown"
        by_dim[dim] = by_dim.get(dim, 0) + 1
    summary = {
        "summary": True,
        "total": len(records),
        "by_classification": by_class,
        "by_face_dimension": by_dim,
    }
    write_jsonl(args.out, "hopfix.fixedpoints.v1", manifest, rows + [summary])
    manifest.write(args.out)
    return 0


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0, help="base 64-bit seed")
    p.add_argument("--out", type=str, default=None, help="output path (default stdout)")
    p.add_argument(
        "--format",
        choices=("csv", "jsonl"),
        default=None,
        help="accepted for compatibility; each subcommand has a native format",
    )
    p.add_argument("--threads", type=int, default=1)
    p.add_argument(
        "--no-normalize",
        action="store_true",
        help="do not normalize patterns read from a file",
    )


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hopfix",
        description="Fixed-point structure of continuous Hopfield maps x -> W softmax(beta W^T x)",
    )
    ap.add_argument("--version", action="version", version=f"hopfix {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("thresholds", help="bifurcation thresholds m(n,1) as CSV")
    p.add_argument("--n-list", type=_int_list, default=[3, 6, 10, 100, 500, 1000])
    _add_common(p)
    p.set_defaults(fn=cmd_thresholds)

    p = sub.add_parser("simplex-catalog", help="softmax fixed points with stability labels")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--beta", type=float, required=True)
    _add_common(p)
    p.set_defaults(fn=cmd_simplex_catalog)

    p = sub.add_parser("cips-table", help="separation-margin table on distorted polytopes")
    p.add_argument("--n-list", type=_int_list, default=[20, 50])
    p.add_argument("--kappa-list", type=_float_list, default=[2.0, 4.0, 6.0])
    p.add_argument("--face-sizes", type=_int_list, default=[4, 7, 15])
    p.add_argument("--faces", type=int, default=100, help="faces per size")
    p.add_argument("--samples", type=int, default=10_000, help="margin samples per face/facet estimate")
    p.add_argument("--threshold", type=float, default=1e-10)
    p.add_argument("--sigma-law", choices=("linear", "geometric"), default="linear")
    _add_common(p)
    p.set_defaults(fn=cmd_cips_table)

    p = sub.add_parser("beta-search", help="smallest scaling passing the facet-mapping check")
    p.add_argument("--n", type=int, default=20)
    p.add_argument("--kappa", type=float, default=2.0)
    p.add_argument("--face-sizes", type=_int_list, default=[4, 7])
    p.add_argument("--faces", type=int, default=10, help="faces per size")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--beta-grid", type=_grid, default=_grid("1:40:0.5"))
    p.add_argument("--lambda-grid", type=_grid, default=[0.7, 0.8, 0.9, 0.95])
    p.add_argument("--sigma-law", choices=("linear", "geometric"), default="linear")
    _add_common(p)
    p.set_defaults(fn=cmd_beta_search)

    p = sub.add_parser("dynamics", help="trajectory snapshots and basin assignment (d = 2)")
    p.add_argument("--patterns", type=str, default=None, help="pattern file")
    p.add_argument("--demo", action="store_true", help="built-in 4-pattern 2-D set")
    p.add_argument("--beta", type=float, default=15.0)
    p.add_argument("--points", type=int, default=3000)
    p.add_argument("--iters", type=_int_list, default=[0, 1, 2, 4, 7])
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iter", type=int, default=10_000)
    _add_common(p)
    p.set_defaults(fn=cmd_dynamics)

    p = sub.add_parser("fixpoints", help="locate and classify all fixed points")
    p.add_argument("--patterns", type=str, default=None)
    p.add_argument("--demo", action="store_true")
    p.add_argument("--identity", type=int, default=None, help="use W = I_n")
    p.add_argument("--beta", type=float, required=True)
    _add_common(p)
    p.set_defaults(fn=cmd_fixpoints)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, DegenerateBifurcationError, OSError) as exc:
        print(f"hopfix: invalid configuration: {exc}", file=sys.stderr)
        return _EXIT_INVALID
    except NumericalError as exc:
        print(f"hopfix: numerical failure: {exc}", file=sys.stderr)
        return _EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
