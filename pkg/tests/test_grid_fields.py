import numpy as np
import pytest

from rotelastic.fields import ModeSum, PlaneWave, random_smooth_spinor, spinor_jet
from rotelastic.grid import GridSpec, derivative, fd_order, integrate


class TestGridSpec:
    def test_validation(self):
        with pytest.raises(ValueError):
            GridSpec.spatial(3)
        with pytest.raises(ValueError):
            GridSpec.spatial(8, -1.0)
        with pytest.raises(ValueError):
            GridSpec((8, 8), (1.0, 1.0))

    def test_axes(self):
        g = GridSpec.spacetime((6, 8, 10, 12), (1.0, 2.0, 3.0, 4.0))
        assert g.axis(0) == 0 and g.axis(3) == 3
        assert g.spatial_grid.shape == (8, 10, 12)
        assert g.cell_volume == pytest.approx(2 / 8 * 3 / 10 * 4 / 12)
        with pytest.raises(ValueError):
            GridSpec.spatial(8).axis(0)


class TestDerivative:
    @pytest.mark.parametrize("scheme", ["central", "spectral"])
    def test_sine(self, scheme):
        g = GridSpec.spatial(32)
        x = g.coordinates[2]
        u = np.broadcast_to(np.sin(3 * x), g.shape)
        du = derivative(u, g, 2, scheme)
        h = g.spacing[2]
        # central differences reproduce the symbol sin(kh)/h exactly
        k_eff = 3.0 if scheme == "spectral" else np.sin(3 * h) / h
        assert np.abs(du - k_eff * np.cos(3 * x)).max() < 1e-12

    def test_central_order(self):
        errs, ns = [], [16, 32, 64]
        for n in ns:
            g = GridSpec.spatial(n)
            x = g.coordinates[1]
            errs.append(np.abs(derivative(np.broadcast_to(np.sin(x), g.shape), g, 1) - np.cos(x)).max())
        assert fd_order(errs, ns) == pytest.approx(2.0, abs=0.05)

    def test_skew_adjoint(self, rng):
        g = GridSpec.spatial(8)
        for scheme in ("central", "spectral"):
            u, w = rng.normal(size=g.shape), rng.normal(size=g.shape)
            lhs = np.sum(u * derivative(w, g, 1, scheme))
            rhs = -np.sum(derivative(u, g, 1, scheme) * w)
            assert lhs == pytest.approx(rhs, abs=1e-12)

    def test_exact_needs_analytic(self):
        g = GridSpec.spatial(8)
        with pytest.raises(ValueError):
            derivative(np.zeros(g.shape), g, 1, "exact")


class TestIntegrate:
    def test_riemann_exact_for_trig(self):
        g = GridSpec.spatial(8)
        x = g.coordinates[1]
        assert integrate(np.broadcast_to(np.cos(x) ** 2, g.shape), g) == pytest.approx(4 * np.pi**3, rel=1e-14)

    def test_per_slice(self):
        g = GridSpec.spacetime(4, 1.0)
        vals = np.ones(g.shape)
        np.testing.assert_allclose(integrate(vals, g, over_time=False), np.ones(4))
        assert integrate(vals, g) == pytest.approx(1.0)


class TestFields:
    def test_plane_wave_exact_jet(self):
        g = GridSpec.spacetime(6)
        pw = PlaneWave([1, 2j], [1, 0, -1, 2])
        jet = spinor_jet(pw, g, "exact", second=True)
        np.testing.assert_allclose(jet.d1[3], -2j * jet.values)
        np.testing.assert_allclose(jet.d2[0, 2], -(1 * -1) * jet.values)
        assert jet.has_time

    def test_spectral_matches_exact_for_lattice_modes(self, rng):
        g = GridSpec.spacetime(8)
        f = random_smooth_spinor(rng, g, kmax=2)
        ex = spinor_jet(f, g, "exact")
        sp = spinor_jet(f, g, "spectral")
        np.testing.assert_allclose(sp.d1, ex.d1, atol=1e-12)

    def test_spatial_grid_has_no_time(self, rng):
        g = GridSpec.spatial(8)
        jet = spinor_jet(random_smooth_spinor(rng, g), g, "central")
        assert not jet.has_time and not jet.d1[0].any()

    def test_random_field_bounded_below(self, rng):
        g = GridSpec.spatial(8)
        f = random_smooth_spinor(rng, g, amplitude=0.4)
        assert np.linalg.norm(f.sample(g), axis=-1).min() >= 0.6 - 1e-12

    def test_time_reversal(self):
        g = GridSpec.spacetime(4)
        m = ModeSum([[1, 0]], [[1.0, 0, 0, 1.0]])
        assert np.allclose(m.time_reversed().momenta, [[-1.0, 0, 0, 1.0]])

    def test_zero_spinor_rejected(self):
        with pytest.raises(ValueError):
            PlaneWave([0, 0], [1, 0, 0, 0])
