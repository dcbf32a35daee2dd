"""Acceptance suite: one test per criterion, each timed against its budget.

Every test records its outcome in ``conftest.ACCEPTANCE``; the terminal summary
prints one PASS/FAIL line per criterion.  Run directly with
``python3 tests/test_acceptance.py`` or through pytest.
"""

import time

import numpy as np
import pytest

from conftest import ACCEPTANCE
from rotelastic import deformation as D
from rotelastic.cli import grid_stdev, lemma_samples, random_moduli, relative_mismatch
from rotelastic.coframe_spinor import (
    coframe_to_spinor,
    spinor_to_coframe,
    spinor_to_density,
    validate_coframe,
)
from rotelastic.energetics import ElasticModuli, potential_energy
from rotelastic.fields import random_smooth_spinor
from rotelastic.grid import GridSpec, fd_order
from rotelastic.planewave import SPHERE, TYPE1, TYPE2_CIRCLE, critical_residual, solve_plane_waves, wave_speeds
from rotelastic.spinor_repr import dual_torsion_from_spinor
from rotelastic.tensor_algebra import inner_rank2
from rotelastic.variational import euler_lagrange_F, fd_action_gradient, reduced_G
from rotelastic.weyl import theorem2_crosscheck, theorem3_check, weyl_superposition


def record(criterion: int, ok: bool, detail: str, elapsed: float | None = None, budget: float | None = None):
    if budget is not None:
        ok = ok and elapsed < budget
        detail = f"{detail}; {elapsed:.1f} s (budget {budget:g} s)"
    ACCEPTANCE[criterion] = (bool(ok), detail)
    print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def speeds_from_formula(m: ElasticModuli) -> tuple[float, float]:
    return (
        np.sqrt((4 * m.c_ax + 2 * m.c_ten) / (3 * m.c_kin)),
        np.sqrt((m.c_vec + m.c_ten) / (2 * m.c_kin)),
    )


def branches_from_speeds(m: ElasticModuli) -> set[str]:
    v1, v2 = speeds_from_formula(m)
    if v1 > 0 and v2 > 0:
        return {SPHERE} if 8 * m.c_ax - 3 * m.c_vec + m.c_ten == 0 else {TYPE1, TYPE2_CIRCLE}
    return {TYPE1} if v1 > 0 else {TYPE2_CIRCLE}


def test_criterion_01_plane_wave_families():
    rng = np.random.default_rng(1)
    start = time.perf_counter()
    moduli = [random_moduli(rng) for _ in range(50)] + [
        ElasticModuli.purely_axial(0.75),  # v2 = 0
        ElasticModuli(2.0, 0.0, 0.0, 1.0),  # v2 = 0
        ElasticModuli(0.0, 2.0, 0.0, 1.0),  # v1 = 0
        ElasticModuli(0.0, 0.5, 0.0, 3.0),  # v1 = 0
        ElasticModuli(3.0, 8.0, 0.0, 1.0),  # v1 = v2
        ElasticModuli(1.0, 3.0, 1.0, 2.0),  # v1 = v2
    ]
    worst_norm, worst_res, bad, count = 0.0, 0.0, [], 0
    for m in moduli:
        want = branches_from_speeds(m)
        for p0 in (1.0, -1.0, 3.7, -3.7):
            fams = solve_plane_waves(m, p0)
            if {f.branch for f in fams} != want or len(fams) != len(want):
                bad.append((m.as_tuple(), p0))
            for f in fams:
                v1, v2 = speeds_from_formula(m)
                v = v2 if f.branch == TYPE2_CIRCLE else v1
                for p in f.samples:
                    count += 1
                    worst_norm = max(worst_norm, abs(np.linalg.norm(p[1:]) - abs(p0) / v))
                    worst_res = max(worst_res, np.linalg.norm(critical_residual([1, 0], p, m)))
    elapsed = time.perf_counter() - start
    ok = not bad and worst_norm <= 1e-12 and worst_res < 1e-10
    record(
        1, ok,
        f"{len(moduli)} moduli x 4 p0, {count} momenta, branch mismatches {len(bad)}, "
        f"max | |p| - |p0|/v | = {worst_norm:.1e}, max |G| = {worst_res:.1e}",
        elapsed, 5,
    )


@pytest.fixture(scope="module")
def lemma_set():
    """Shared sample set: 100 random (zeta, p, moduli), F e^{ip.x} on a 12^4 grid, exact derivatives."""
    start = time.perf_counter()
    samples = list(lemma_samples(100, seed=0, n=12, scheme="exact"))
    return samples, time.perf_counter() - start


def test_criterion_02_phase_constancy(lemma_set):
    samples, t_build = lemma_set
    start = time.perf_counter()
    sds = [grid_stdev(Fe) for _, _, Fe in samples]
    elapsed = t_build + time.perf_counter() - start
    record(2, max(sds) < 1e-8, f"max stdev of F e^(ip.x) over 12^4 grid: {max(sds):.2e} (100 samples)", elapsed, 60)


def test_criterion_03_reduced_residual(lemma_set):
    samples, _ = lemma_set
    worst_F, worst_cr = 0.0, 0.0
    for pw, m, Fe in samples:
        G = reduced_G(pw.zeta, pw.p, m)
        worst_F = max(worst_F, float(np.linalg.norm(Fe - G, axis=-1).max()))
        worst_cr = max(worst_cr, float(np.linalg.norm(G - critical_residual(pw.zeta, pw.p, m))))
    record(
        3, worst_F < 1e-8 and worst_cr < 1e-12,
        f"max |G - F e^(ip.x)| = {worst_F:.2e}, max |G - critical residual| = {worst_cr:.2e}",
    )


def test_criterion_04_axial_weyl_plane_waves():
    start = time.perf_counter()
    details, ok = [], True
    for c_ax in (0.75, 2.0):
        m = ElasticModuli.purely_axial(c_ax)
        s = wave_speeds(m)
        ok &= abs(s.v1 - 1.0) <= 1e-14 and s.v2 == 0.0
        for p0 in (1.0, -3.7):
            r = theorem2_crosscheck(p0, m, n=41)
            poles = {(0.0, 0.0, p0), (0.0, 0.0, -p0)}
            el = {tuple(map(float, z)) for z in r.elasticity_zeros}
            we = {tuple(map(float, z)) for z in r.weyl_zeros}
            ok &= el == poles and we == poles
            details.append(f"p0={p0:g}: {len(el)}/{len(we)} zeros")
    elapsed = time.perf_counter() - start
    record(4, ok, f"41^3 lattice, v1={s.v1!r}, v2={s.v2!r}; " + ", ".join(details), elapsed, 10)


def test_criterion_05_weyl_superposition():
    start = time.perf_counter()
    p0 = 1.0
    grid = GridSpec.spacetime(16, 2 * np.pi / abs(p0))
    field = weyl_superposition(p0, [(0, 0, 1), (1, 0, 0)], [1.0, 0.5])
    r = theorem3_check(field, ElasticModuli.purely_axial(0.75), grid, "plus", "spectral", mask_frac=0.1)
    ctrl = theorem3_check(field, ElasticModuli(1.0, 1.0, 1.0, 1.0), grid, "plus", "spectral", mask_frac=0.1, require_axial=False)
    elapsed = time.perf_counter() - start
    record(
        5, r.F_max < 1e-5 and ctrl.F_max > 1e-2,
        f"max |F| = {r.F_max:.2e} (Weyl residual {r.weyl_max:.1e}, mask {r.mask_fraction:.2f}), control {ctrl.F_max:.2e}",
        elapsed, 120,
    )


def test_criterion_06_dual_torsion_paths():
    rng = np.random.default_rng(6)
    start = time.perf_counter()
    # the coframe of a band-limited spinor is not band-limited; 40 points per axis resolve it
    grid = GridSpec.spatial(40)
    worst = 0.0
    for _ in range(100):
        xi = random_smooth_spinor(rng, grid, kmax=1, amplitude=0.3).sample(grid)
        a = dual_torsion_from_spinor(xi, grid, "spectral")
        b = D.dual_torsion(spinor_to_coframe(xi), grid, "spectral")
        worst = max(worst, float(np.abs(a - b).max()))
    elapsed = time.perf_counter() - start
    record(6, worst < 1e-8, f"100 fields on 40^3, max |*T spinor - *T coframe| = {worst:.2e}", elapsed, 60)


def test_criterion_07_energy():
    rng = np.random.default_rng(7)
    g = GridSpec.spatial(6)
    worst_rel = 0.0
    for _ in range(100):
        P = rng.normal(size=g.shape + (3, 3))
        rho = 0.5 + rng.random(g.shape)
        m = random_moduli(rng)
        a = potential_energy(P, rho, g, m, "irreducible")
        b = potential_energy(P, rho, g, m, "simplified")
        worst_rel = max(worst_rel, abs(a - b) / abs(a))
    m = ElasticModuli(0.9, 0.4, 0.3, 1.0)
    k = 1.0
    exact = (4 / 3 * m.c_ax + 2 / 3 * m.c_ten) * k**2
    ns, errs = [8, 16, 32], []
    for n in ns:
        grid = GridSpec.spatial(n)
        P = D.dual_torsion(D.screw_coframe(grid, k), grid, "central")
        density = potential_energy(P, 1.0, grid, m) / np.prod(grid.L)
        errs.append(abs(density - exact))
    order = fd_order(errs, ns)
    record(
        7, worst_rel <= 1e-10 and abs(order - 2.0) <= 0.2,
        f"dual-path max rel diff {worst_rel:.1e}; screw errors {', '.join(f'{e:.2e}' for e in errs)}, order {order:.3f}",
    )


def test_criterion_08_decomposition():
    rng = np.random.default_rng(8)
    P = rng.normal(size=(1000, 3, 3))
    parts = D.decompose(P)
    f, v = D.scalar_f(P), D.vector_v(P)
    errs = {
        "|ax|^2 - f^2/3": np.abs(inner_rank2(parts.axial, parts.axial) - f**2 / 3).max(),
        "|vec|^2 - |v|^2/2": np.abs(inner_rank2(parts.vector, parts.vector) - 0.5 * np.sum(v**2, -1)).max(),
        "reconstruction": np.abs(parts.axial + parts.vector + parts.tensor - P).max(),
        "ax.vec": np.abs(inner_rank2(parts.axial, parts.vector)).max(),
        "ax.ten": np.abs(inner_rank2(parts.axial, parts.tensor)).max(),
        "vec.ten": np.abs(inner_rank2(parts.vector, parts.tensor)).max(),
    }
    worst = max(errs.values())
    record(8, worst <= 1e-12, "1000 tensors, max " + ", ".join(f"{k} {e:.1e}" for k, e in errs.items()))


def test_criterion_09_inequality():
    rng = np.random.default_rng(9)
    worst = np.inf
    for _ in range(1000):
        m = ElasticModuli(rng.uniform(0, 2), 0.0, rng.uniform(0, 2), rng.uniform(0.2, 2))
        s = wave_speeds(m)
        worst = min(worst, s.v1 - np.sqrt(4 / 3) * s.v2)
    record(9, worst >= -1e-12, f"1000 moduli with c_vec = 0, min v1 - sqrt(4/3) v2 = {worst:.3e}")


def test_criterion_10_round_trip():
    rng = np.random.default_rng(10)
    xi = rng.normal(size=(1000, 2)) + 1j * rng.normal(size=(1000, 2))
    theta = spinor_to_coframe(xi)
    validate_coframe(theta)  # raises on any orthonormality or orientation failure
    rho = spinor_to_density(xi)
    back = coframe_to_spinor(theta, rho)
    err = np.minimum(np.linalg.norm(back - xi, axis=-1), np.linalg.norm(back + xi, axis=-1)) / np.sqrt(rho)
    record(10, err.max() <= 1e-10, f"1000 spinors, all coframes valid, max relative round-trip error {err.max():.1e}")


def test_criterion_11_oracle():
    rng = np.random.default_rng(11)
    start = time.perf_counter()
    grid = GridSpec.spacetime(12)
    worst = 0.0
    for _ in range(10):
        m = random_moduli(rng)
        xi = random_smooth_spinor(rng, grid, amplitude=0.5).sample(grid)
        F = euler_lagrange_F(xi, grid, m, "central")
        worst = max(worst, relative_mismatch(fd_action_gradient(xi, grid, m, step=1e-5), F))
    elapsed = time.perf_counter() - start
    record(11, worst < 1e-4, f"10 fields on 12^4, max relative |F_fd - F| = {worst:.2e}", elapsed, 300)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
