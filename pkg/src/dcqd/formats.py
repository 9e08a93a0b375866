"""JSON interchange: schema-tagged documents, complex pairs and config specs.

Floats are written with 17 significant digits in C-locale form so every
double survives a write/read cycle bit for bit. Complex numbers are
``[re, im]`` pairs; matrices are nested lists of those pairs.
"""
from __future__ import annotations

import json
import math

import numpy as np

from .channel import (
    depolarizing_1q,
    depolarizing_2q,
    generalized_depolarizing_2q,
    identity_chi_1q,
    kraus_to_chi,
    rotation_unitary,
    unitary_chi,
)
from .qobj import InputParams, OPTIMAL_PARAMS
from .shortcuts import BellDiagonalNoise, uncorrelated_noise_chi

PROBS_SCHEMA = "dcqd-probs/1"
CHI_SCHEMA = "dcqd-chi/1"
DESIGN_SCHEMA = "dcqd-design/1"
VERIFY_SCHEMA = "dcqd-verify/1"

NOISE_KINDS = ("none", "depolarizing", "generalized-u", "uncorrelated", "bell-diagonal", "explicit")


class ConfigError(ValueError):
    """Malformed configuration or data document."""


def _float_text(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    text = format(x, ".17g")
    # keep floats recognisable as floats after a round trip
    if not any(ch in text for ch in ".en"):
        text += ".0"
    return text


def dumps(value, indent: int = 2, _level: int = 0) -> str:
    """Deterministic JSON text with 17-significant-digit floats."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(value, (bool, np.bool_)) or value is None:
        return json.dumps(bool(value) if value is not None else None)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return _float_text(float(value))
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, np.ndarray):
        return dumps(value.tolist(), indent, _level)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        # short numeric rows stay on one line
        if all(isinstance(v, (int, float, np.number)) and not isinstance(v, bool) for v in value):
            return "[" + ", ".join(dumps(v) for v in value) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(value).__name__}")


def write_json(doc, path) -> None:
    text = dumps(doc) + "\n"
    if path is None or path == "-":
        print(text, end="")
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc


def complex_to_pairs(m) -> list:
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim == 0:
        return [float(m.real), float(m.imag)]
    return [complex_to_pairs(row) for row in m]


def pairs_to_complex(data) -> np.ndarray:
    try:
        arr = np.asarray(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ConfigError("complex data must be nested [re, im] pairs") from exc
    if arr.ndim == 0 or arr.shape[-1] != 2:
        raise ConfigError("complex data must be nested [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def _matrix(data, shape, name):
    arr = np.asarray(data)
    if arr.ndim == len(shape) + 1:
        m = pairs_to_complex(data)
    else:
        try:
            m = np.asarray(data, dtype=np.complex128)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"{name} is not numeric") from exc
    if m.shape != shape:
        raise ConfigError(f"{name} must have shape {shape}, got {m.shape}")
    return m


def _number(d, key, default=None):
    v = d.get(key, default)
    if v is None:
        raise ConfigError(f"missing numeric field {key!r}")
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{key!r} must be a number")
    return float(v)


# --- channels ---------------------------------------------------------------

def parse_channel(spec) -> np.ndarray:
    """'identity', 'depolarizing:eps', 'unitary:axis,angle', {'chi': ...} or {'kraus': [...]}."""
    if isinstance(spec, str):
        name, _, arg = spec.partition(":")
        try:
            if name == "identity" and not arg:
                return identity_chi_1q()
            if name == "depolarizing":
                return depolarizing_1q(float(arg))
            if name == "unitary":
                axis, angle = arg.split(",")
                return unitary_chi(rotation_unitary(axis.strip(), float(angle)))
        except (ValueError, KeyError) as exc:
            raise ConfigError(f"bad channel spec {spec!r}: {exc}") from exc
        raise ConfigError(f"unknown channel spec {spec!r}")
    if isinstance(spec, dict) and "chi" in spec:
        return _matrix(spec["chi"], (4, 4), "chi")
    if isinstance(spec, dict) and "kraus" in spec:
        ops = [_matrix(k, (2, 2), "Kraus operator") for k in spec["kraus"]]
        if not ops:
            raise ConfigError("empty Kraus list")
        return kraus_to_chi(ops)
    raise ConfigError(f"unrecognised channel spec {spec!r}")


def parse_params(d) -> InputParams:
    if d is None:
        return OPTIMAL_PARAMS
    if not isinstance(d, dict):
        raise ConfigError("params must be an object with theta and phi")
    return InputParams(_number(d, "theta"), _number(d, "phi"))


def params_dict(p: InputParams) -> dict:
    return {"theta": float(p.theta), "phi": float(p.phi)}


# --- noise ------------------------------------------------------------------

_CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)


def parse_unitary(spec) -> np.ndarray:
    if spec in (None, "identity"):
        return np.eye(4, dtype=complex)
    if spec == "cnot":
        return _CNOT.copy()
    return _matrix(spec, (4, 4), "u")


def normalize_noise(spec) -> dict:
    """Validated noise description with defaults filled in."""
    if spec is None:
        return {"kind": "none"}
    if not isinstance(spec, dict) or spec.get("kind", "none") not in NOISE_KINDS:
        raise ConfigError(f"noise must be an object with kind in {NOISE_KINDS}")
    kind = spec.get("kind", "none")
    out = {"kind": kind}
    if kind in ("depolarizing", "generalized-u", "uncorrelated"):
        out["eps"] = _number(spec, "eps")
        out["eps2"] = _number(spec, "eps2", spec.get("eps"))
    if kind == "generalized-u":
        out["u"] = complex_to_pairs(parse_unitary(spec.get("u")))
    if kind == "bell-diagonal":
        for key in ("eps_prep", "eps_meas"):
            m = np.asarray(spec.get(key), dtype=float)
            if m.shape != (4, 4):
                raise ConfigError(f"{key} must be a 4x4 real matrix")
            out[key] = m.tolist()
    if kind == "explicit":
        for key in ("chi_i", "chi_f"):
            out[key] = complex_to_pairs(_matrix(spec.get(key), (16, 16), key))
    return out


def noise_chis(noise: dict):
    """(chi_i, chi_f) two-qubit chis for a normalized noise spec, or None for Bell-diagonal.

    Generalized-U noise twists only the preparation; measurement noise is
    plain depolarizing with ``eps2``.
    """
    kind = noise["kind"]
    if kind == "none":
        return depolarizing_2q(1.0), depolarizing_2q(1.0)
    if kind == "depolarizing":
        return depolarizing_2q(noise["eps"]), depolarizing_2q(noise["eps2"])
    if kind == "generalized-u":
        u = pairs_to_complex(noise["u"])
        return generalized_depolarizing_2q(noise["eps"], u), depolarizing_2q(noise["eps2"])
    if kind == "uncorrelated":
        return uncorrelated_noise_chi(noise["eps"]), uncorrelated_noise_chi(noise["eps2"])
    if kind == "explicit":
        return pairs_to_complex(noise["chi_i"]), pairs_to_complex(noise["chi_f"])
    return None


def bell_diagonal_noise(noise: dict) -> BellDiagonalNoise:
    try:
        return BellDiagonalNoise(np.array(noise["eps_prep"]), np.array(noise["eps_meas"]))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


# --- documents --------------------------------------------------------------

def probs_document(p: InputParams, noise: dict, shots, pv, channel=None) -> dict:
    doc = {
        "schema": PROBS_SCHEMA,
        "params": params_dict(p),
        "noise": noise,
        "shots": shots,
        "p": [float(x) for x in pv],
    }
    if channel is not None:
        doc["channel"] = complex_to_pairs(channel)
    return doc


def check_probs_document(doc) -> dict:
    if not isinstance(doc, dict) or doc.get("schema") != PROBS_SCHEMA:
        raise ConfigError(f"expected a {PROBS_SCHEMA} document")
    p = doc.get("p")
    if not isinstance(p, list) or len(p) != 16:
        raise ConfigError("p must hold 16 numbers")
    shots = doc.get("shots")
    if shots != "exact" and (isinstance(shots, bool) or not isinstance(shots, int) or shots < 1):
        raise ConfigError("shots must be a positive integer or 'exact'")
    return {
        "params": parse_params(doc.get("params")),
        "noise": normalize_noise(doc.get("noise")),
        "shots": shots,
        "p": np.asarray(p, dtype=float),
    }


def chi_document(chi, method, cond, absdet, herm_res, psd_min) -> dict:
    return {
        "schema": CHI_SCHEMA,
        "chi": None if chi is None else [complex_to_pairs(x) for x in np.asarray(chi).reshape(16)],
        "hermiticity_residual": herm_res,
        "psd_min_eig": psd_min,
        "cond": cond,
        "absdet": absdet,
        "method": method,
    }


def chi_from_document(doc) -> np.ndarray:
    if not isinstance(doc, dict) or doc.get("schema") != CHI_SCHEMA:
        raise ConfigError(f"expected a {CHI_SCHEMA} document")
    if doc.get("chi") is None:
        raise ConfigError("document carries no chi (failed reconstruction)")
    return pairs_to_complex(doc["chi"]).reshape(4, 4)
