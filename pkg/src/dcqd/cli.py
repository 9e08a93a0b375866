"""Command-line entry point: ``dcqd gen-data | reconstruct | optimize | verify``.

Exit codes
  0  success
  1  verify found a failing identity
  2  bad arguments, config or data document
  3  degenerate input angles
  4  Lambda ill-conditioned
  5  Lambda or noise matrix singular (including zero noise contrast)
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import replace

import numpy as np

from . import formats
from .design import det_surface, optimize, write_surface_csv
from .errors import (
    DCQDError,
    DegenerateInput,
    IllConditioned,
    NotCP,
    NotUnitary,
    OutOfRange,
    SingularMatrix,
    SingularNoise,
    ZeroContrast,
)
from .faulty import FaultySetting, reconstruct_faulty, total_map_probabilities
from .formats import ConfigError
from .protocol import reconstruct_ideal, sample_shots, simulate_probabilities
from .qobj import OPTIMAL_PARAMS
from .shortcuts import (
    reconstruct_bell_diagonal,
    reconstruct_correlated,
    reconstruct_generalized_u,
    simulate_bell_diagonal,
)
from .verify import SUITES, run_suites

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_DEGENERATE, EXIT_ILL, EXIT_SINGULAR = 0, 1, 2, 3, 4, 5
METHODS = ("ideal", "faulty", "shortcut-correlated", "shortcut-generalized-u", "shortcut-belldiag")

log = logging.getLogger("dcqd")


def _setup_logging():
    level = os.environ.get("DCQD_LOG", "warning").upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING), stream=sys.stderr, format="dcqd %(levelname)s: %(message)s"
    )


def _shots(text):
    if text == "exact":
        return text
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("shots must be a positive integer or 'exact'") from None
    if n < 1:
        raise argparse.ArgumentTypeError("shots must be a positive integer or 'exact'")
    return n


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dcqd", description="DCQD simulation and chi reconstruction")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen-data", help="simulate a probability table")
    g.add_argument("--config", help="JSON config with channel, params, noise")
    g.add_argument("--seed", type=int, help="sampling seed (default: config or 0)")
    g.add_argument("--shots", type=_shots, help="shots per setting or 'exact'")
    g.add_argument("--out", help="output path (default stdout)")

    r = sub.add_parser("reconstruct", help="recover chi from a probability table")
    r.add_argument("--input", help="dcqd-probs/1 file (or config key 'input')")
    r.add_argument("--config", help="JSON config with input, method, symmetrize")
    r.add_argument("--method", choices=METHODS)
    r.add_argument("--symmetrize", action="store_true", help="replace chi by its Hermitian part")
    r.add_argument("--out", help="output path (default stdout)")

    o = sub.add_parser("optimize", help="maximise |det Lambda| over the input angles")
    o.add_argument("--config", help="JSON config with optional noise")
    o.add_argument("--grid", type=int, help="scan resolution per angle (default 64)")
    o.add_argument("--surface", help="write the |det Lambda| surface CSV here")
    o.add_argument("--out", help="output path for the design report (default stdout)")

    v = sub.add_parser("verify", help="run identity checks")
    v.add_argument("--config", help="JSON config: suites, grid, c_matrix")
    v.add_argument("--suite", action="append", choices=list(SUITES), help="repeatable; default all")
    v.add_argument("--grid", type=int, help="determinant grid size (default 64)")
    v.add_argument("--out", help="output path for the summary (default stdout)")
    return ap


def _config(args) -> dict:
    if not getattr(args, "config", None):
        return {}
    cfg = formats.read_json(args.config)
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    return cfg


def _pick(flag, cfg, key, default=None):
    return flag if flag is not None else cfg.get(key, default)


# --- gen-data ---------------------------------------------------------------

def simulate(chi, params, noise: dict) -> np.ndarray:
    """Exact probability table for a channel under a normalized noise spec."""
    if noise["kind"] == "none":
        return simulate_probabilities(chi, params)
    if noise["kind"] == "bell-diagonal":
        return simulate_bell_diagonal(chi, formats.bell_diagonal_noise(noise), params)
    chi_i, chi_f = formats.noise_chis(noise)
    return total_map_probabilities(chi, FaultySetting(chi_i, chi_f, params))


def cmd_gen_data(args) -> int:
    cfg = _config(args)
    chi = formats.parse_channel(cfg.get("channel", "identity"))
    params = formats.parse_params(cfg.get("params"))
    noise = formats.normalize_noise(cfg.get("noise"))
    shots = _pick(args.shots, cfg, "shots", "exact")
    if shots != "exact":
        shots = _shots(str(shots))
    seed = int(_pick(args.seed, cfg, "seed", 0))
    params.check()
    pv = simulate(chi, params, noise)
    if shots != "exact":
        pv = sample_shots(pv, shots, seed)
    log.info("simulated %s noise, shots=%s, seed=%d", noise["kind"], shots, seed)
    formats.write_json(formats.probs_document(params, noise, shots, pv), _pick(args.out, cfg, "out"))
    return EXIT_OK


# --- reconstruct ------------------------------------------------------------

def _default_method(noise):
    return {"none": "ideal", "bell-diagonal": "shortcut-belldiag"}.get(noise["kind"], "faulty")


def run_reconstruction(data: dict, method: str, symmetrize: bool = False):
    params, noise, pv = data["params"], data["noise"], data["p"]
    kind = noise["kind"]
    if method == "ideal":
        return reconstruct_ideal(pv, params, symmetrize)
    if method == "faulty":
        chis = formats.noise_chis(noise)
        if chis is None:
            raise ConfigError("faulty method needs noise expressible as two-qubit chis")
        params.check()
        return reconstruct_faulty(pv, FaultySetting(chis[0], chis[1], params), symmetrize)
    if method == "shortcut-correlated":
        if kind not in ("depolarizing", "none"):
            raise ConfigError("shortcut-correlated needs depolarizing noise")
        eps, eps2 = noise.get("eps", 1.0), noise.get("eps2", 1.0)
        return reconstruct_correlated(pv, eps, eps2, params, symmetrize)
    if method == "shortcut-generalized-u":
        if kind != "generalized-u":
            raise ConfigError("shortcut-generalized-u needs generalized-u noise")
        u = formats.pairs_to_complex(noise["u"])
        return reconstruct_generalized_u(pv, noise["eps"], noise["eps2"], u, params, symmetrize)
    if method == "shortcut-belldiag":
        if kind != "bell-diagonal":
            raise ConfigError("shortcut-belldiag needs bell-diagonal noise")
        return reconstruct_bell_diagonal(pv, formats.bell_diagonal_noise(noise), params, symmetrize)
    raise ConfigError(f"unknown method {method!r}")


def cmd_reconstruct(args) -> int:
    cfg = _config(args)
    path = _pick(args.input, cfg, "input")
    if path is None:
        raise ConfigError("reconstruct needs --input or config key 'input'")
    data = formats.check_probs_document(formats.read_json(path))
    method = _pick(args.method, cfg, "method") or _default_method(data["noise"])
    if method not in METHODS:
        raise ConfigError(f"method must be one of {METHODS}")
    symmetrize = bool(args.symmetrize or cfg.get("symmetrize", False))
    out = _pick(args.out, cfg, "out")
    try:
        rec = run_reconstruction(data, method, symmetrize)
    except (IllConditioned, SingularMatrix) as exc:
        # diagnostics are still worth having when the inversion is refused
        formats.write_json(formats.chi_document(None, method, exc.cond, exc.absdet, None, None), out)
        raise
    doc = formats.chi_document(rec.chi, method, rec.cond, rec.absdet, rec.hermiticity_residual, rec.psd_min_eig)
    formats.write_json(doc, out)
    return EXIT_OK


# --- optimize ---------------------------------------------------------------

def _noise_setting(noise: dict):
    if noise["kind"] == "none":
        return None
    chis = formats.noise_chis(noise)
    if chis is None:
        raise ConfigError("optimize supports noise expressible as two-qubit chis")
    return FaultySetting(chis[0], chis[1], OPTIMAL_PARAMS)


def cmd_optimize(args) -> int:
    cfg = _config(args)
    setting = _noise_setting(formats.normalize_noise(cfg.get("noise")))
    grid = int(_pick(args.grid, cfg, "grid", 64))
    if grid < 2:
        raise ConfigError("grid must be >= 2")
    res = optimize(setting, grid=grid)
    surface = _pick(args.surface, cfg, "surface")
    if surface:
        write_surface_csv(det_surface(grid, grid, setting), surface)
        log.info("surface written to %s", surface)
    doc = {
        "schema": formats.DESIGN_SCHEMA,
        "theta": res.theta,
        "phi": res.phi,
        "absdet": res.absdet,
        "cond": res.cond,
        "concurrence": res.concurrence,
        "symmetries": list(res.symmetries),
    }
    formats.write_json(doc, _pick(args.out, cfg, "out"))
    return EXIT_OK


# --- verify -----------------------------------------------------------------

def cmd_verify(args) -> int:
    cfg = _config(args)
    names = args.suite or cfg.get("suites")
    grid = int(_pick(args.grid, cfg, "grid", 64))
    c = cfg.get("c_matrix")
    if c is not None:
        c = np.asarray(c, dtype=float)
        if c.shape != (16, 16):
            raise ConfigError("c_matrix must be 16x16")
    try:
        results = run_suites(names, grid=grid, c=c)
    except KeyError as exc:
        raise ConfigError(str(exc)) from exc
    failed = [r for r in results if not r.passed]
    doc = {"schema": formats.VERIFY_SCHEMA, "passed": not failed, "results": [r.as_dict() for r in results]}
    formats.write_json(doc, _pick(args.out, cfg, "out"))
    if failed:
        print(f"dcqd: identity {failed[0].name!r} failed (deviation {failed[0].max_deviation:.3g})", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


COMMANDS = {"gen-data": cmd_gen_data, "reconstruct": cmd_reconstruct, "optimize": cmd_optimize, "verify": cmd_verify}


def main(argv=None) -> int:
    _setup_logging()
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except DegenerateInput as exc:
        code, msg = EXIT_DEGENERATE, f"DegenerateInput: {exc}"
    except IllConditioned as exc:
        code, msg = EXIT_ILL, f"IllConditioned: {exc}"
    except (SingularMatrix, SingularNoise, ZeroContrast) as exc:
        code, msg = EXIT_SINGULAR, f"{type(exc).__name__}: {exc}"
    except (ConfigError, OutOfRange, NotCP, NotUnitary) as exc:
        code, msg = EXIT_USAGE, f"{type(exc).__name__}: {exc}"
    except DCQDError as exc:
        code, msg = EXIT_USAGE, f"{type(exc).__name__}: {exc}"
    print(f"dcqd: {msg}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
