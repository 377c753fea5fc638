import sys
import argparse
import logging
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np
from pydantic import ValidationError as ConfigValidationError

from pipeline import PipelineError, SweepSettings, load_sweep_config, run_sweep
from validation import ValidationError
from phasing_core.errors import FileFormatError, PhasingError
from phasing_core.cdi import HioConfig, ObjectErrorProbe, SupportSpec, retrieve
from phasing_core.degradation import MaskSpec, apply_mask, symmetrize
from phasing_core.field import crop_center
from phasing_core.forward import (
    PropagationParams,
    embed_object,
    make_exit_wave,
    simulate_diffraction,
    simulate_hologram,
)
from phasing_core.holo import HoloConfig, reconstruct_hologram
from phasing_core.io import (
    config_hash,
    load_image,
    load_pattern,
    log_preview,
    make_provenance,
    read_sidecar,
    save_object,
    save_pattern,
    write_mask,
    write_pgm8,
    write_sidecar,
    write_trace,
)
from phasing_core.metrics import error_fienup, error_rms, error_support, feasibility_report, oversampling_ok

logger = logging.getLogger("phasing-cli")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse mit Exit-Code 1 statt 2 bei Bedienfehlern"""

    def error(self, message):
        raise UsageError(message)


def _fraction(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"fraction must lie in [0, 1], got {text}")
    return value


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError(f"seed must lie in [0, 2**64), got {text}")
    return value


def make_parser() -> argparse.ArgumentParser:
    p = _Parser("phasing-cli")
    p.add_argument("--out", type=str, default=".", help="output directory")
    p.add_argument("--log-level", default="INFO")
    sub = p.add_subparsers(dest="cmd", required=True)

    dp = sub.add_parser("simulate-dp", help="simulate a far-field diffraction pattern")
    dp.add_argument("object")
    dp.add_argument("--sigma", type=float, required=True)
    dp.add_argument("--envelope", action="store_true")
    dp.add_argument("--dc", choices=("corner", "center"), default="corner")
    dp.add_argument("--preview", action="store_true")

    ho = sub.add_parser("simulate-holo", help="simulate an in-line hologram")
    ho.add_argument("object", help="absorption image in [0, 1]")
    ho.add_argument("--sigma", type=float, required=True)
    ho.add_argument("--wavelength", type=float, default=532e-9)
    ho.add_argument("--distance", type=float, default=20e-3)
    ho.add_argument("--size", type=float, default=None, help="field side S in m (default 2 mm / 512 px pitch)")
    ho.add_argument("--preview", action="store_true")

    dg = sub.add_parser("degrade", help="delete samples randomly or as a central block")
    dg.add_argument("pattern")
    dg.add_argument("--mask", default=None)
    dg.add_argument("--mode", choices=("random", "central"), required=True)
    dg.add_argument("--f", type=_fraction, required=True)
    dg.add_argument("--seed", type=_seed, default=0)

    sy = sub.add_parser("symmetrize", help="refill missing samples from centro-symmetric partners")
    sy.add_argument("pattern")
    sy.add_argument("--mask", default=None)

    rc = sub.add_parser("reconstruct-cdi", help="multi-restart HIO reconstruction")
    rc.add_argument("pattern")
    rc.add_argument("--mask", default=None)
    rc.add_argument("--support", type=int, default=None, help="support side N0 (default from sidecar)")
    rc.add_argument("--beta", type=float, default=0.9)
    rc.add_argument("--iterations", type=int, default=2000)
    rc.add_argument("--er-iterations", type=int, default=0, help="error-reduction steps after HIO")
    rc.add_argument("--restarts", type=int, default=100)
    rc.add_argument("--keep-best", type=int, default=10)
    rc.add_argument("--selection", choices=("eq8", "eq9"), default=None)
    rc.add_argument("--seed", type=_seed, default=0)
    rc.add_argument("--workers", type=int, default=1)
    rc.add_argument("--truth", default=None, help="ground-truth object (N0 x N0)")

    rh = sub.add_parser("reconstruct-holo", help="iterative hologram reconstruction")
    rh.add_argument("pattern")
    rh.add_argument("--mask", default=None)
    rh.add_argument("--support", type=int, default=None)
    rh.add_argument("--wavelength", type=float, default=None)
    rh.add_argument("--distance", type=float, default=None)
    rh.add_argument("--size", type=float, default=None)
    rh.add_argument("--iterations", type=int, default=2000)
    rh.add_argument("--smoothing-interval", type=int, default=20)
    rh.add_argument("--smoothing-stop", type=float, default=0.75, help="fraction of iterations with smoothing")
    rh.add_argument("--real-absorption", action="store_true", help="discard Im(a) in the object constraint")
    rh.add_argument("--truth", default=None)

    me = sub.add_parser("metrics", help="error metrics of a reconstruction")
    me.add_argument("reconstruction")
    me.add_argument("original")
    me.add_argument("--align", action="store_true", help="undo translation and twin before comparing")
    me.add_argument("--pattern", default=None)
    me.add_argument("--mask", default=None)
    me.add_argument("--support", type=int, default=None)

    bo = sub.add_parser("bounds", help="feasibility bound for the missing fraction")
    bo.add_argument("--modality", choices=("cdi", "holography"), default="cdi")
    bo.add_argument("--sigma", type=float, required=True)
    bo.add_argument("--f", type=_fraction, default=0.0)
    bo.add_argument("--dimension", type=int, choices=(1, 2, 3), default=2)
    bo.add_argument("--csv", action="store_true")

    sw = sub.add_parser("sweep", help="run an experiment configuration")
    sw.add_argument("config")
    sw.add_argument("--workers", type=int, default=None)
    sw.add_argument("--no-validate", action="store_true")
    sw.add_argument("--summary", action="store_true")
    sw.add_argument("--snapshot", type=str, default=None)
    return p


# ---------------------------------------------------------------------------
# Hilfsfunktionen
# ---------------------------------------------------------------------------

def _grid_size(sigma: float, N0: int) -> int:
    N = sigma * N0
    if abs(N - round(N)) > 1e-9 or round(N) % 2:
        raise UsageError(f"sigma={sigma:g} x object side {N0} is not an even integer grid")
    return int(round(N))


def _warn_oversampling(sigma: float) -> None:
    if not oversampling_ok(sigma):
        logger.warning("oversampling condition violated: sigma=%g <= sqrt(2)", sigma)


def _support_side(args, pattern) -> int:
    if args.support is not None:
        return args.support
    if pattern.geometry is not None:
        return pattern.geometry.N0
    raise UsageError("--support is required when the pattern carries no geometry")


def _hologram_params(args, pattern) -> PropagationParams:
    geom = pattern.geometry
    wavelength = args.wavelength or (geom.wavelength if geom else None)
    distance = args.distance or (geom.distance if geom else None)
    size = args.size or (geom.detector_side if geom else None)
    if wavelength is None or distance is None or size is None:
        raise UsageError("--wavelength, --distance and --size are required without hologram geometry")
    return PropagationParams(wavelength=wavelength, distance=distance, side=size, N=pattern.N)


def _write_preview(out: Path, pattern) -> None:
    write_pgm8(out / "preview.pgm", log_preview(pattern.intensity))


# ---------------------------------------------------------------------------
# Kommandos
# ---------------------------------------------------------------------------

def cmd_simulate_dp(args, out: Path) -> None:
    obj = load_image(args.object)
    _warn_oversampling(args.sigma)
    N = _grid_size(args.sigma, obj.side)
    pattern = simulate_diffraction(embed_object(obj, N), envelope=args.envelope)
    params = {"sigma": args.sigma, "envelope": args.envelope, "object": str(args.object)}
    save_pattern(out / "pattern.f64", pattern, dc=args.dc,
                 meta=make_provenance("simulate-dp", config_hash=config_hash(params), **params))
    if args.preview:
        _write_preview(out, pattern)
    logger.info("diffraction pattern %dx%d written to %s", N, N, out / "pattern.f64")


def cmd_simulate_holo(args, out: Path) -> None:
    obj = load_image(args.object)
    N = _grid_size(args.sigma, obj.side)
    size = args.size if args.size is not None else N * 2e-3 / 512
    params = PropagationParams(wavelength=args.wavelength, distance=args.distance, side=size, N=N)
    hologram = simulate_hologram(make_exit_wave(embed_object(obj, N)), params)
    save_pattern(out / "hologram.f64", hologram,
                 meta=make_provenance("simulate-holo", config_hash=config_hash(params), object=str(args.object)))
    if args.preview:
        _write_preview(out, hologram)
    logger.info("hologram %dx%d written to %s", N, N, out / "hologram.f64")


def cmd_degrade(args, out: Path) -> None:
    pattern = load_pattern(args.pattern, args.mask)
    spec = MaskSpec(mode=args.mode, f=args.f, seed=args.seed)
    degraded = apply_mask(pattern, spec)
    meta = make_provenance("degrade", config_hash=config_hash(spec), seed=args.seed,
                           mode=args.mode, f_target=args.f, f_realized=degraded.missing_fraction)
    save_pattern(out / "pattern.f64", degraded, meta=meta)
    write_mask(out / "mask.pbm", degraded.mask)
    write_sidecar(out / "mask.pbm", {**meta, "N": degraded.N})


def cmd_symmetrize(args, out: Path) -> None:
    pattern = load_pattern(args.pattern, args.mask)
    result = symmetrize(pattern)
    source = read_sidecar(args.pattern)
    params = {"pattern": str(args.pattern), "mask": None if args.mask is None else str(args.mask)}
    meta = make_provenance("symmetrize", config_hash=config_hash(params), seed=source.get("seed"),
                           f_before=pattern.missing_fraction, f_after=result.missing_fraction)
    save_pattern(out / "pattern.f64", result, meta=meta)
    write_mask(out / "mask.pbm", result.mask)
    write_sidecar(out / "mask.pbm", {**meta, "N": result.N})


def cmd_reconstruct_cdi(args, out: Path) -> None:
    pattern = load_pattern(args.pattern, args.mask)
    support = SupportSpec(side=_support_side(args, pattern))
    config = HioConfig(
        beta=args.beta,
        iterations=args.iterations,
        er_iterations=args.er_iterations,
        restarts=args.restarts,
        keep_best=args.keep_best,
        selection_metric=args.selection,
        seed=args.seed,
    )
    truth = load_image(args.truth) if args.truth else None
    result = retrieve(pattern, support, config, ground_truth=truth, workers=args.workers)

    meta = make_provenance("reconstruct-cdi", config_hash=config_hash(config), seed=args.seed,
                           selected=result.selected, amplitude_max=result.amplitude_max)
    save_object(out / "object.pgm", result.object, meta=meta)
    save_pattern(out / "recovered.f64", result.recovered_pattern, meta=meta)
    traces = out / "traces"
    traces.mkdir(exist_ok=True)
    for index, trace in enumerate(result.traces):
        write_trace(traces / f"restart_{index:03d}.csv", trace)
    if truth is not None:
        probe = ObjectErrorProbe(truth, pattern.N)
        print(f"eq8={probe(result.object.data):.6e}")


def cmd_reconstruct_holo(args, out: Path) -> None:
    hologram = load_pattern(args.pattern, args.mask)
    config = HoloConfig(
        iterations=args.iterations,
        smoothing_interval=args.smoothing_interval,
        smoothing_stop=args.smoothing_stop,
        real_absorption=args.real_absorption,
        support=SupportSpec(side=_support_side(args, hologram)),
        params=_hologram_params(args, hologram),
    )
    truth = load_image(args.truth) if args.truth else None
    result = reconstruct_hologram(hologram, config, ground_truth=truth)

    meta = make_provenance("reconstruct-holo", config_hash=config_hash(config), seed=config.seed,
                           amplitude_max=result.amplitude_max)
    save_object(out / "object.pgm", result.object, meta=meta)
    save_pattern(out / "recovered.f64", result.recovered_pattern, meta=meta)
    write_trace(out / "trace.csv", result.traces[0])
    if truth is not None:
        print(f"eq8={result.traces[0].final('eq8'):.6e}")


def cmd_metrics(args, out: Path) -> None:
    recon = load_image(args.reconstruction).data
    original = load_image(args.original)
    values: Dict[str, Any] = {}
    if args.align:
        recon = ObjectErrorProbe(original, recon.shape[0]).aligned(recon)
    values["eq8"] = error_rms(crop_center(recon, original.side), original)
    if args.pattern:
        pattern = load_pattern(args.pattern, args.mask)
        values["eq9"] = error_fienup(np.abs(np.fft.fft2(recon)), pattern)
    if args.support is not None:
        values["eq10"] = error_support(recon, SupportSpec(side=args.support))
    print(" ".join(f"{k}={v:.6e}" for k, v in values.items()))


def cmd_bounds(args, out: Path) -> None:
    report = feasibility_report(args.sigma, args.f, modality=args.modality, dimension=args.dimension)
    if args.csv:
        print(",".join(report.CSV_COLUMNS))
        print(report.to_csv_row())
    else:
        print(report.to_line())


def cmd_sweep(args, out: Path) -> None:
    config = load_sweep_config(args.config)
    settings = SweepSettings(
        out_dir=args.out if args.out != "." else None,
        workers=args.workers,
        validate=not args.no_validate,
    )
    summary = run_sweep(config, settings=settings)

    # Optional: Debug-Ausgaben
    if args.summary or args.snapshot:
        try:
            from debug_tools import dump_snapshot, iter_failed_cells, print_summary
            if args.summary:
                print_summary(summary)
                for label in iter_failed_cells(summary):
                    print(f"  failed: {label}")
            if args.snapshot:
                dump_snapshot(summary, args.snapshot)
        except Exception:
            logging.exception("debug tools failed")


COMMANDS = {
    "simulate-dp": cmd_simulate_dp,
    "simulate-holo": cmd_simulate_holo,
    "degrade": cmd_degrade,
    "symmetrize": cmd_symmetrize,
    "reconstruct-cdi": cmd_reconstruct_cdi,
    "reconstruct-holo": cmd_reconstruct_holo,
    "metrics": cmd_metrics,
    "bounds": cmd_bounds,
    "sweep": cmd_sweep,
}


def main(argv: Optional[list] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = make_parser().parse_args(argv)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 1

    # Logging nur hier konfigurieren
    logging.basicConfig(
        level=getattr(logging, args.log_level.upper(), logging.INFO),
        format="%(levelname)s %(message)s",
    )

    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        COMMANDS[args.cmd](args, out)
    except (UsageError, ValidationError, PipelineError, ConfigValidationError, FileFormatError) as e:
        logging.error("%s failed: %s", args.cmd, e)
        return 1
    except PhasingError as e:
        logging.error("%s failed: %s", args.cmd, e)
        return 2
    except OSError as e:
        logging.error("%s failed: %s", args.cmd, e)
        return 1
    except Exception:
        logging.exception("%s error", args.cmd)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
