"""Command-line front end.

Every command takes its parameters from built-in defaults, then an optional
flat ``key = value`` config file (``--config``), then command-line flags; later
sources win.  A JSON report goes to stdout (and to ``--report`` if given).
Exit status: 0 all checks passed, 1 computed but a check failed, 2 invalid input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import dataclass
from importlib import metadata
from pathlib import Path
from typing import Any, Callable

import numpy as np

from . import coframe_spinor, deformation, energetics, fieldio, planewave, variational, weyl
from .energetics import ElasticModuli
from .fields import PlaneWave
from .grid import GridSpec

SCHEMA_VERSION = 1
THREADS_ENV = "ROTELASTIC_THREADS"


class ConfigError(ValueError):
    pass


def _floats(n: int) -> Callable[[str], tuple]:
    def parse(text: str) -> tuple:
        parts = [s for s in str(text).replace(" ", "").split(",") if s]
        if len(parts) != n:
            raise ValueError(f"expected {n} comma-separated numbers")
        return tuple(float(x) for x in parts)

    return parse


def _choice(*options: str) -> Callable[[str], str]:
    def parse(text: str) -> str:
        if text not in options:
            raise ValueError(f"expected one of {', '.join(options)}")
        return text

    return parse


def _bool(text: str) -> bool:
    t = str(text).strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ValueError("expected true or false")


@dataclass(frozen=True)
class Param:
    parse: Callable[[str], Any]
    default: Any
    help: str


SCHEME = Param(_choice("central", "spectral"), "spectral", "derivative scheme for sampled fields")
MODULI = {
    "c_ax": Param(float, 1.0, "axial modulus"),
    "c_vec": Param(float, 1.0, "vector modulus"),
    "c_ten": Param(float, 1.0, "tensor modulus"),
    "c_kin": Param(float, 1.0, "kinetic modulus"),
}
AXIAL_MODULI = {
    "c_ax": Param(float, 0.75, "axial modulus"),
    "c_vec": Param(float, 0.0, "vector modulus"),
    "c_ten": Param(float, 0.0, "tensor modulus"),
    "c_kin": Param(float, 1.0, "kinetic modulus"),
}
INPUT = Param(str, None, "input field file (JSON)")
RANDOM = {
    "samples": Param(int, 100, "number of random samples"),
    "seed": Param(int, 0, "random seed"),
    "n": Param(int, 12, "grid points per axis"),
}


def _moduli(cfg) -> ElasticModuli:
    return ElasticModuli(cfg["c_ax"], cfg["c_vec"], cfg["c_ten"], cfg["c_kin"])


def _zeta(vals) -> np.ndarray:
    return np.array([vals[0] + 1j * vals[1], vals[2] + 1j * vals[3]])


def _read(cfg, key="input") -> fieldio.FieldFile:
    if not cfg.get(key):
        raise ConfigError(f"missing required key '{key}'")
    return fieldio.read_field(cfg[key])


def _file_digest(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


# ---- commands ---------------------------------------------------------------


def cmd_convert(cfg):
    ff = _read(cfg)
    if not cfg.get("output"):
        raise ConfigError("missing required key 'output'")
    direction = cfg["direction"]
    if direction == "auto":
        direction = {"spinor": "to-coframe", "coframe_density": "to-spinor"}.get(ff.kind)
        if direction is None:
            raise ConfigError(f"cannot convert a {ff.kind} field")
    if direction == "to-coframe":
        if ff.kind != "spinor":
            raise ConfigError(f"to-coframe needs a spinor field, got {ff.kind}")
        theta = coframe_spinor.spinor_to_coframe(ff.values)
        rho = coframe_spinor.spinor_to_density(ff.values)
        coframe_spinor.validate_coframe(theta)
        out = fieldio.FieldFile.coframe_density(ff.grid, theta, rho)
        back = coframe_spinor.coframe_to_spinor(theta, rho)
        err = np.minimum(
            np.linalg.norm(back - ff.values, axis=-1), np.linalg.norm(back + ff.values, axis=-1)
        ) / np.sqrt(rho)
    else:
        if ff.kind != "coframe_density":
            raise ConfigError(f"to-spinor needs a coframe_density field, got {ff.kind}")
        theta, rho = ff.split_coframe_density()
        xi = coframe_spinor.coframe_to_spinor(theta, rho)
        out = fieldio.FieldFile(ff.grid, "spinor", xi)
        err = np.maximum(
            np.abs(coframe_spinor.spinor_to_coframe(xi) - theta).max(axis=(-2, -1)),
            np.abs(coframe_spinor.spinor_to_density(xi) - rho) / rho,
        )
    fieldio.write_field(cfg["output"], out)
    rt = float(err.max())
    return {"direction": direction, "points": ff.grid.size, "roundtrip_max": rt}, rt <= 1e-10


def _dual_torsion_of(ff: fieldio.FieldFile, scheme: str):
    if ff.kind == "rank2":
        return ff.values
    if ff.kind == "coframe":
        return deformation.dual_torsion(ff.values, ff.grid, scheme)
    if ff.kind == "coframe_density":
        return deformation.dual_torsion(ff.split_coframe_density()[0], ff.grid, scheme)
    if ff.kind == "spinor":
        from .spinor_repr import dual_torsion_from_spinor

        return dual_torsion_from_spinor(ff.values, ff.grid, scheme)
    raise ConfigError(f"cannot extract *T from a {ff.kind} field")


def cmd_decompose(cfg):
    ff = _read(cfg)
    P = _dual_torsion_of(ff, cfg["scheme"])
    parts = deformation.decompose(P)
    f = deformation.scalar_f(P)
    v = deformation.vector_v(P)
    from .tensor_algebra import inner_rank2

    scale = np.maximum(inner_rank2(P, P), 1.0)
    checks = {
        "axial_vs_f": np.abs(inner_rank2(parts.axial, parts.axial) - f**2 / 3),
        "vector_vs_v": np.abs(inner_rank2(parts.vector, parts.vector) - 0.5 * np.sum(v**2, axis=-1)),
        "reconstruction": np.abs(parts.total() - P).max(axis=(-2, -1)),
        "orthogonality": np.abs(inner_rank2(parts.axial, parts.vector))
        + np.abs(inner_rank2(parts.axial, parts.tensor))
        + np.abs(inner_rank2(parts.vector, parts.tensor)),
    }
    maxes = {k: float((c / scale).max()) for k, c in checks.items()}
    dv = ff.grid.cell_volume
    norms = {
        name: float(np.sum(inner_rank2(x, x).ravel()) * dv)
        for name, x in (("axial", parts.axial), ("vector", parts.vector), ("tensor", parts.tensor))
    }
    return {"integrated_norms": norms, "identity_residuals": maxes}, all(x <= 1e-12 for x in maxes.values())


def _energy_inputs(cfg):
    ff = _read(cfg)
    m = _moduli(cfg)
    scheme = cfg["scheme"]
    if ff.kind == "spinor":
        from .spinor_repr import spinor_geometry

        geo = spinor_geometry(ff.values, ff.grid, scheme)
        return ff, m, geo.rho, geo.dual_T, geo.omega
    if ff.kind == "coframe_density":
        theta, rho = ff.split_coframe_density()
        dual_T = deformation.dual_torsion(theta, ff.grid, scheme)
        omega = deformation.angular_velocity(theta, ff.grid, scheme, validate=False) if ff.grid.time else None
        return ff, m, rho, dual_T, omega
    raise ConfigError(f"energy needs a spinor or coframe_density field, got {ff.kind}")


def _as_list(x):
    return x.tolist() if isinstance(x, np.ndarray) else x


def cmd_energy(cfg):
    ff, m, rho, dual_T, omega = _energy_inputs(cfg)
    grid = ff.grid
    p1 = energetics.potential_energy(dual_T, rho, grid, m, "irreducible")
    p2 = energetics.potential_energy(dual_T, rho, grid, m, "simplified")
    agree = float(np.max(np.abs(np.asarray(p1) - p2) / np.maximum(np.abs(p2), 1e-300)))
    out = {"potential": _as_list(p1), "potential_simplified": _as_list(p2), "potential_relative_gap": agree}
    if omega is not None:
        kin = energetics.kinetic_energy(omega, rho, grid, m)
        f = deformation.scalar_f(dual_T)
        v = deformation.vector_v(dual_T)
        bracket = energetics.lagrangian_bracket(f, v, dual_T, omega, m)
        from .grid import integrate

        out.update(
            kinetic=_as_list(kin),
            action=integrate(bracket * rho, grid),
            residual_maxnorm=float(np.abs(bracket).max()),
        )
    else:
        out.update(kinetic=None, action=None, residual_maxnorm=None)
    zero = np.all(np.asarray(p2) == 0)
    return out, bool(zero or agree <= 1e-10)


def cmd_lagrangian(cfg):
    ff, m, rho, dual_T, omega = _energy_inputs(cfg)
    if omega is None:
        raise ConfigError("the Lagrangian needs a field on a spacetime grid (4 axes)")
    f = deformation.scalar_f(dual_T)
    v = deformation.vector_v(dual_T)
    bracket = energetics.lagrangian_bracket(f, v, dual_T, omega, m)
    L = bracket * rho
    from .grid import integrate

    if cfg.get("output"):
        fieldio.write_field(cfg["output"], fieldio.FieldFile(ff.grid, "scalar", L))
    return {
        "action": integrate(L, ff.grid),
        "L_min": float(L.min()),
        "L_max": float(L.max()),
        "residual_maxnorm": float(np.abs(bracket).max()),
    }, True


def cmd_planewave_solve(cfg):
    m = _moduli(cfg)
    zeta = _zeta(cfg["zeta"])
    fams = planewave.solve_plane_waves(m, cfg["p0"], cfg["samples"], zeta=zeta)
    s = planewave.wave_speeds(m)
    res = 0.0
    families = []
    for fam in fams:
        r = float(max(np.linalg.norm(planewave.critical_residual(zeta, q, m)) for q in fam.samples))
        res = max(res, r)
        d = fam.describe()
        d["samples"] = fam.samples.tolist()
        d["residual_max"] = r
        families.append(d)
    tol = 1e-10 * max(1.0, abs(cfg["p0"]) ** 2) * max(1.0, float(np.vdot(zeta, zeta).real))
    return {
        "speeds": {"v1": s.v1, "v2": s.v2},
        "near_degenerate": s.near_degenerate,
        "families": families,
        "residual_max": res,
    }, res <= tol


def cmd_planewave_check(cfg):
    m = _moduli(cfg)
    chk = planewave.check_plane_wave(_zeta(cfg["zeta"]), cfg["p"], m, cfg["tol"])
    return {
        "residual": [[float(z.real), float(z.imag)] for z in chk.residual],
        "residual_norm": chk.residual_norm,
        "lagrangian": chk.lagrangian,
        "is_solution": chk.is_solution,
    }, chk.is_solution


def random_moduli(rng: np.random.Generator) -> ElasticModuli:
    c = rng.uniform(0.0, 2.0, size=3)
    return ElasticModuli(c[0], c[1], c[2], rng.uniform(0.2, 2.0))


def random_plane_wave(rng: np.random.Generator, kmax: int = 2) -> PlaneWave:
    """Random spinor with lattice momentum (integer components) on the 2 pi box."""
    z = rng.normal(size=2) + 1j * rng.normal(size=2)
    p = rng.integers(-kmax, kmax + 1, size=4).astype(float)
    if not p.any():
        p[0] = 1.0
    return PlaneWave(z, p)


def grid_stdev(values: np.ndarray) -> float:
    """Pointwise spread of a spinor field: sqrt(mean |x - mean x|^2), pairwise-summed."""
    flat = np.ascontiguousarray(values.reshape(-1, values.shape[-1]).T)
    mean = flat.mean(axis=1, keepdims=True)
    return float(np.sqrt(np.mean(np.sum(np.abs(flat - mean) ** 2, axis=0))))


def lemma_samples(samples: int, seed: int, n: int, scheme: str):
    """Yield (plane wave, moduli, F e^{ip.x}) for random samples on an n^4 box of side 2 pi."""
    rng = np.random.default_rng(seed)
    grid = GridSpec.spacetime(n)
    for _ in range(samples):
        m = random_moduli(rng)
        pw = random_plane_wave(rng)
        F = variational.euler_lagrange_F(pw, grid, m, scheme)
        yield pw, m, F / pw.phase(grid)[..., None]


def cmd_verify_lemma1(cfg):
    worst, worst_rel = 0.0, 0.0
    for pw, m, Fe in lemma_samples(cfg["samples"], cfg["seed"], cfg["n"], cfg["scheme"]):
        sd = grid_stdev(Fe)
        mag = float(np.linalg.norm(Fe.reshape(-1, 2).mean(axis=0)))
        worst = max(worst, sd)
        worst_rel = max(worst_rel, sd / mag if mag > 0 else 0.0)
    ok = worst < cfg["tol"] and worst_rel < cfg["tol"]
    return {"stdev": worst, "relative_stdev": worst_rel, "max_residual": worst}, ok


def cmd_verify_lemma2(cfg):
    worst, worst_cr = 0.0, 0.0
    for pw, m, Fe in lemma_samples(cfg["samples"], cfg["seed"], cfg["n"], cfg["scheme"]):
        G = variational.reduced_G(pw.zeta, pw.p, m)
        worst = max(worst, float(np.linalg.norm(Fe - G, axis=-1).max()))
        worst_cr = max(worst_cr, float(np.linalg.norm(G - planewave.critical_residual(pw.zeta, pw.p, m))))
    ok = worst < cfg["tol"] and worst_cr < 1e-12
    return {"max_residual": worst, "G_vs_critical_residual": worst_cr}, ok


def relative_mismatch(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.linalg.norm(a - b, axis=-1).max() / np.linalg.norm(b, axis=-1).max())


def cmd_verify_eulerlagrange(cfg):
    from .fields import random_smooth_spinor

    rng = np.random.default_rng(cfg["seed"])
    grid = GridSpec.spacetime(cfg["n"])
    worst = 0.0
    for _ in range(cfg["samples"]):
        m = random_moduli(rng)
        xi = random_smooth_spinor(rng, grid, amplitude=cfg["amplitude"])
        F = variational.euler_lagrange_F(xi, grid, m, "central")
        Ffd = variational.fd_action_gradient(xi, grid, m, cfg["step"])
        worst = max(worst, relative_mismatch(Ffd, F))
    return {"max_relative": worst, "max_residual": worst}, worst < cfg["tol"]


def cmd_weyl_check(cfg):
    zeta = _zeta(cfg["zeta"])
    p = cfg["p"]
    res = {s.name.lower(): float(np.linalg.norm(weyl.weyl_operator_plane(zeta, p, s))) for s in weyl.WeylSign}
    scale = max(abs(p[0]), 1.0) * float(np.linalg.norm(zeta))
    branches = [b for b in res if res[b] <= cfg["tol"] * scale]
    if cfg["sign"] != "any":
        ok = cfg["sign"] in branches
    else:
        ok = bool(branches)
    return {"residual_norms": res, "solution_branches": branches}, ok


def cmd_weyl_theorem2(cfg):
    m = _moduli(cfg)
    r = weyl.theorem2_crosscheck(cfg["p0"], m, cfg["n"])
    return {
        "speeds": {"v1": r.v1, "v2": r.v2},
        "lattice_points": r.n_points,
        "elasticity_zeros": r.elasticity_zeros.tolist(),
        "weyl_zeros": r.weyl_zeros.tolist(),
        "expected": r.expected.tolist(),
    }, r.passed


def theorem3_field(p0: float, amplitude: float, sign: str = "plus") -> weyl.StationaryField:
    """Two same-frequency Weyl waves along x3 and x1 (|p| = |p0|)."""
    return weyl.weyl_superposition(p0, [(0, 0, 1), (1, 0, 0)], [1.0, amplitude], sign)


def theorem3_grid(p0: float, n: int) -> GridSpec:
    return GridSpec((n, n, n, n), (2 * np.pi / abs(p0),) * 4, time=True)


def cmd_weyl_theorem3(cfg):
    m = _moduli(cfg)
    weyl.require_axial_normalized(m)
    field = theorem3_field(cfg["p0"], cfg["amplitude"], cfg["sign"])
    grid = theorem3_grid(cfg["p0"], cfg["n"])
    r = weyl.theorem3_check(field, m, grid, cfg["sign"], cfg["scheme"], cfg["mask"], cfg["tol"])
    out = {"weyl_max": r.weyl_max, "F_max": r.F_max, "mask_fraction": r.mask_fraction}
    ok = r.passed
    if cfg["control"]:
        c = weyl.theorem3_check(field, ElasticModuli(1, 1, 1, 1), grid, cfg["sign"], cfg["scheme"], cfg["mask"],
                                require_axial=False)
        out["control_F_max"] = c.F_max
        ok = ok and c.F_max > 1e-2
    return out, ok


def cmd_sweep_speeds(cfg):
    rng = np.random.default_rng(cfg["seed"])
    rows = []
    worst = np.inf
    for _ in range(cfg["samples"]):
        c = rng.uniform(0.0, 2.0, size=4)
        c_vec = c[1] if cfg["c_vec"] is None else cfg["c_vec"]
        try:
            m = ElasticModuli(c[0], c_vec, c[2], c[3] + 0.05)
        except energetics.InadmissibleModuliError:
            continue
        s = planewave.wave_speeds(m)
        rows.append((m.c_ax, m.c_vec, m.c_ten, m.c_kin, s.v1, s.v2))
        if m.c_vec == 0.0:
            worst = min(worst, s.v1 - np.sqrt(4.0 / 3.0) * s.v2)
    if cfg.get("output"):
        lines = ["c_ax,c_vec,c_ten,c_kin,v1,v2"] + [",".join(repr(float(x)) for x in r) for r in rows]
        Path(cfg["output"]).write_text("\n".join(lines) + "\n")
    v = np.array([r[4:] for r in rows]).reshape(-1, 2)
    out = {
        "count": len(rows),
        "v1_range": [float(v[:, 0].min()), float(v[:, 0].max())] if len(rows) else None,
        "v2_range": [float(v[:, 1].min()), float(v[:, 1].max())] if len(rows) else None,
        "inequality_margin_min": None if worst == np.inf else float(worst),
    }
    return out, worst == np.inf or worst >= -1e-12


def _opt_float(text):
    return None if str(text).lower() in ("none", "random", "") else float(text)


COMMANDS: dict[str, tuple[Callable, dict[str, Param], str]] = {
    "convert": (cmd_convert, {
        "input": INPUT,
        "output": Param(str, None, "output field file"),
        "direction": Param(_choice("auto", "to-coframe", "to-spinor"), "auto", "conversion direction"),
    }, "spinor <-> (coframe, density) conversion of a field file"),
    "decompose": (cmd_decompose, {"input": INPUT, "scheme": SCHEME},
                  "irreducible pieces of *T (rank2, coframe or spinor file)"),
    "energy": (cmd_energy, {"input": INPUT, "scheme": SCHEME, **MODULI},
               "kinetic and potential energy, action and density residual"),
    "lagrangian": (cmd_lagrangian, {"input": INPUT, "scheme": SCHEME, "output": Param(str, None, "write L as a scalar field"),
                                    **MODULI}, "Lagrangian density and action"),
    "planewave solve": (cmd_planewave_solve, {
        **MODULI,
        "p0": Param(float, 1.0, "frequency p0 (nonzero)"),
        "zeta": Param(_floats(4), (1.0, 0.0, 0.0, 0.0), "spinor as re1,im1,re2,im2"),
        "samples": Param(int, 8, "samples per continuous family"),
    }, "plane-wave solution families"),
    "planewave check": (cmd_planewave_check, {
        **MODULI,
        "zeta": Param(_floats(4), (1.0, 0.0, 0.0, 0.0), "spinor as re1,im1,re2,im2"),
        "p": Param(_floats(4), None, "4-momentum p0,p1,p2,p3"),
        "tol": Param(float, 1e-10, "relative residual tolerance"),
    }, "is a given plane wave a solution?"),
    "verify lemma1": (cmd_verify_lemma1, {**RANDOM, "scheme": Param(_choice("exact", "spectral", "central"), "exact", "derivative scheme"),
                                          "tol": Param(float, 1e-8, "stdev tolerance")},
                      "e^{ip.x} F is constant for plane waves"),
    "verify lemma2": (cmd_verify_lemma2, {**RANDOM, "scheme": Param(_choice("exact", "spectral", "central"), "exact", "derivative scheme"),
                                          "tol": Param(float, 1e-8, "tolerance")},
                      "e^{ip.x} F equals the reduced G"),
    "verify eulerlagrange": (cmd_verify_eulerlagrange, {
        **RANDOM,
        "samples": Param(int, 1, "number of random fields"),
        "step": Param(float, 1e-5, "finite-difference step"),
        "amplitude": Param(float, 0.5, "fluctuation amplitude of the random fields"),
        "tol": Param(float, 1e-4, "relative tolerance"),
    }, "F against a finite-difference gradient of the discrete action"),
    "weyl check": (cmd_weyl_check, {
        "zeta": Param(_floats(4), (1.0, 0.0, 0.0, 0.0), "spinor as re1,im1,re2,im2"),
        "p": Param(_floats(4), None, "4-momentum p0,p1,p2,p3"),
        "sign": Param(_choice("plus", "minus", "any"), "any", "Weyl branch"),
        "tol": Param(float, 1e-12, "relative tolerance"),
    }, "Weyl residual of a plane wave"),
    "weyl theorem2": (cmd_weyl_theorem2, {**AXIAL_MODULI, "p0": Param(float, 1.0, "frequency"),
                                          "n": Param(int, 41, "lattice points per axis")},
                      "plane-wave zero sets: axial elasticity vs Weyl"),
    "weyl theorem3": (cmd_weyl_theorem3, {
        **AXIAL_MODULI,
        "p0": Param(float, 1.0, "frequency"),
        "n": Param(int, 16, "grid points per axis"),
        "amplitude": Param(float, 0.5, "amplitude of the second wave"),
        "sign": Param(_choice("plus", "minus"), "plus", "Weyl branch"),
        "scheme": SCHEME,
        "mask": Param(float, 0.1, "mask threshold as a fraction of max rho"),
        "tol": Param(float, 1e-5, "tolerance on max |F|"),
        "control": Param(_bool, True, "also run the non-axial control"),
    }, "stationary Weyl superposition solves axial elasticity"),
    "sweep speeds": (cmd_sweep_speeds, {
        "samples": Param(int, 1000, "number of random moduli"),
        "seed": Param(int, 0, "random seed"),
        "c_vec": Param(_opt_float, 0.0, "fixed c_vec, or 'random'"),
        "output": Param(str, None, "optional CSV output"),
    }, "wave speeds over random moduli"),
}


def read_config(path) -> dict[str, tuple[str, int]]:
    """Parse ``key = value`` lines; returns key -> (raw value, line number)."""
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = (value, lineno)
    return out


def resolve(params: dict[str, Param], config: dict, flags: dict, source: str = "config") -> dict:
    cfg = {k: p.default for k, p in params.items()}
    for key, (raw, lineno) in config.items():
        if key not in params:
            raise ConfigError(f"{source}:{lineno}: unknown key '{key}'")
        try:
            cfg[key] = params[key].parse(raw)
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"{source}:{lineno}: key '{key}': {exc}") from None
    for key, raw in flags.items():
        if raw is None:
            continue
        try:
            cfg[key] = params[key].parse(raw)
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"--{key.replace('_', '-')}: {exc}") from None
    missing = [k for k, p in params.items() if p.default is None and cfg[k] is None and k in ("input", "p")]
    if missing:
        raise ConfigError(f"missing required key '{missing[0]}'")
    return cfg


def _threads(value) -> int:
    raw = value if value is not None else os.environ.get(THREADS_ENV, "1")
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"thread count must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise ConfigError(f"thread count must be a positive integer, got {n}")
    return n


def _version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "0.1.0"


def _jsonable(x):
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.floating, float)):
        return float(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    return x


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rotelastic", description="Rotational elasticity toolkit")
    sub = parser.add_subparsers(dest="group", required=True)
    groups: dict[str, argparse._SubParsersAction] = {}
    for name, (_, params, helptext) in COMMANDS.items():
        words = name.split()
        if len(words) == 1:
            p = sub.add_parser(words[0], help=helptext)
        else:
            if words[0] not in groups:
                g = sub.add_parser(words[0], help=f"{words[0]} commands")
                groups[words[0]] = g.add_subparsers(dest="action", required=True)
            p = groups[words[0]].add_parser(words[1], help=helptext)
        p.set_defaults(command=name)
        p.add_argument("--config", help="flat key = value config file")
        p.add_argument("--report", help="also write the JSON report to this path")
        p.add_argument("--threads", help=f"worker cap (default from {THREADS_ENV})")
        for key, prm in params.items():
            p.add_argument("--" + key.replace("_", "-"), dest="opt_" + key, default=None, help=prm.help)
    return parser


def run(argv=None) -> tuple[int, dict | None]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (2 if exc.code else 0), None
    func, params, _ = COMMANDS[args.command]
    start = time.perf_counter()
    try:
        _threads(args.threads)
        config = read_config(args.config) if args.config else {}
        flags = {k[4:]: v for k, v in vars(args).items() if k.startswith("opt_")}
        cfg = resolve(params, config, flags, args.config or "config")
        inputs = {k: (list(v) if isinstance(v, tuple) else v) for k, v in cfg.items()}
        if cfg.get("input"):
            inputs["input_sha256"] = _file_digest(cfg["input"])
        results, ok = func(cfg)
    except (ConfigError, fieldio.FieldFileError, ValueError, FileNotFoundError) as exc:
        print(f"rotelastic: error: {exc}", file=sys.stderr)
        return 2, None
    canon = json.dumps(_jsonable(inputs), sort_keys=True)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": args.command,
        "version": _version(),
        "config_hash": hashlib.sha256(canon.encode()).hexdigest(),
        "inputs": _jsonable(inputs),
        "results": _jsonable(results),
        "pass": bool(ok),
        "wall_time": time.perf_counter() - start,
    }
    text = json.dumps(report, indent=2, allow_nan=False)
    print(text)
    if args.report:
        Path(args.report).write_text(text + "\n")
    return (0 if ok else 1), report


def main(argv=None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
