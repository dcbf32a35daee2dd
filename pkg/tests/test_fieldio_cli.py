import json

import numpy as np
import pytest

from rotelastic import cli, fieldio
from rotelastic.fieldio import FieldFile, FieldFileError
from rotelastic.grid import GridSpec


def spinor_file(path, values, grid):
    fieldio.write_field(path, FieldFile(grid, "spinor", values))
    return str(path)


def run(*argv):
    return cli.run([str(a) for a in argv])


class TestFieldIO:
    def test_bit_exact_round_trip(self, rng, tmp_path):
        g = GridSpec.spacetime((4, 5, 4, 6), (1.0, np.pi, 2.0, 0.1))
        vals = (rng.normal(size=g.shape + (2,)) + 1j * rng.normal(size=g.shape + (2,))) * 10.0 ** rng.integers(-30, 30, size=g.shape + (2,))
        p = tmp_path / "f.json"
        fieldio.write_field(p, FieldFile(g, "spinor", vals))
        back = fieldio.read_field(p)
        assert back.grid == g and back.kind == "spinor"
        np.testing.assert_array_equal(back.values.view(np.uint64), vals.view(np.uint64))
        assert fieldio.dumps(back) == p.read_text().strip()

    @pytest.mark.parametrize("kind, comp", [("coframe", (3, 3)), ("rank2", (3, 3)), ("covector", (3,)), ("scalar", ())])
    def test_real_kinds(self, rng, kind, comp):
        g = GridSpec.spatial(4)
        vals = rng.normal(size=g.shape + comp)
        back = fieldio.loads(fieldio.dumps(FieldFile(g, kind, vals)))
        np.testing.assert_array_equal(back.values, vals)

    def test_coframe_density_split(self, rng):
        g = GridSpec.spatial(4)
        th, rho = rng.normal(size=g.shape + (3, 3)), rng.random(g.shape)
        a, b = FieldFile.coframe_density(g, th, rho).split_coframe_density()
        np.testing.assert_array_equal(a, th)
        np.testing.assert_array_equal(b, rho)

    @pytest.mark.parametrize(
        "doc",
        [
            "not json",
            '{"kind": "scalar", "data": []}',
            '{"grid": {"n": [4, 4], "L": [1, 1]}, "kind": "scalar", "data": []}',
            '{"grid": {"n": [4, 4, 4], "L": [1, 1, 1]}, "kind": "bogus", "data": []}',
            '{"grid": {"n": [4, 4, 4], "L": [1, 1, 1]}, "kind": "scalar", "data": [1, 2]}',
            '{"grid": {"n": [4, 4, 4], "L": [1, 1, 1]}, "kind": "spinor", "data": [1, 2]}',
        ],
    )
    def test_schema_errors(self, doc):
        with pytest.raises(FieldFileError):
            fieldio.loads(doc)

    def test_shape_checked(self):
        with pytest.raises(FieldFileError):
            FieldFile(GridSpec.spatial(4), "spinor", np.zeros((4, 4, 4, 3)))


class TestConvert:
    def test_identity_coframe(self, tmp_path):
        g = GridSpec.spatial(4)
        src = spinor_file(tmp_path / "s.json", np.broadcast_to(np.array([1, 0], complex), g.shape + (2,)), g)
        out = tmp_path / "c.json"
        code, rep = run("convert", "--input", src, "--output", out)
        assert code == 0 and rep["results"]["direction"] == "to-coframe"
        theta, rho = fieldio.read_field(out).split_coframe_density()
        np.testing.assert_array_equal(theta, np.broadcast_to(np.eye(3), theta.shape))
        np.testing.assert_array_equal(rho, 1.0)

    def test_round_trip(self, rng, tmp_path):
        g = GridSpec.spatial(4)
        xi = rng.normal(size=g.shape + (2,)) + 1j * rng.normal(size=g.shape + (2,))
        src = spinor_file(tmp_path / "s.json", xi, g)
        assert run("convert", "--input", src, "--output", tmp_path / "c.json")[0] == 0
        code, rep = run("convert", "--input", tmp_path / "c.json", "--output", tmp_path / "s2.json")
        assert code == 0 and rep["results"]["roundtrip_max"] <= 1e-10
        back = fieldio.read_field(tmp_path / "s2.json").values
        sign = np.sign(np.sum((back.conj() * xi).real, axis=-1))[..., None]
        np.testing.assert_allclose(sign * back, xi, atol=1e-10 * np.abs(xi).max())

    def test_zero_spinor_names_index(self, tmp_path, capsys):
        g = GridSpec.spatial(4)
        xi = np.ones(g.shape + (2,), complex)
        xi[1, 2, 3] = 0
        src = spinor_file(tmp_path / "s.json", xi, g)
        code, _ = run("convert", "--input", src, "--output", tmp_path / "c.json")
        assert code == 2
        assert f"flat index {np.ravel_multi_index((1, 2, 3), g.shape)}" in capsys.readouterr().err


class TestCommands:
    def test_planewave_solve(self):
        code, rep = run("planewave", "solve", "--p0", 1)
        assert code == 0
        assert rep["results"]["speeds"]["v1"] == pytest.approx(np.sqrt(2))
        assert rep["results"]["speeds"]["v2"] == pytest.approx(1.0)

    def test_planewave_check(self):
        assert run("planewave", "check", "--p", "1,0,0,0.7071067811865475")[0] == 0
        assert run("planewave", "check", "--p", "1,0,0,0.5")[0] == 1

    def test_verify_reduced_residual_default(self):
        code, rep = run("verify", "lemma2")
        assert code == 0 and rep["pass"]

    def test_verify_phase_constancy_small(self):
        assert run("verify", "lemma1", "--samples", 5, "--n", 6)[0] == 0

    def test_weyl_commands(self):
        assert run("weyl", "check", "--p", "1,0,0,1")[0] == 0
        assert run("weyl", "check", "--p", "1,1,0,0")[0] == 1
        assert run("weyl", "theorem2")[0] == 0
        assert run("weyl", "theorem2", "--c-ax", 1)[0] == 2
        code, rep = run("weyl", "theorem3", "--n", 12)
        assert code == 0 and rep["results"]["control_F_max"] > 1e-2

    def test_sweep_speeds(self, tmp_path):
        code, rep = run("sweep", "speeds", "--samples", 50, "--output", tmp_path / "s.csv")
        assert code == 0
        assert len((tmp_path / "s.csv").read_text().splitlines()) == 51

    def test_energy_and_decompose(self, rng, tmp_path):
        g = GridSpec.spacetime(6)
        from rotelastic.fields import random_smooth_spinor

        src = spinor_file(tmp_path / "s.json", random_smooth_spinor(rng, g).sample(g), g)
        code, rep = run("energy", "--input", src)
        assert code in (0, 1) and {"kinetic", "potential", "action", "residual_maxnorm"} <= set(rep["results"])
        code, rep = run("lagrangian", "--input", src, "--output", tmp_path / "L.json")
        assert code in (0, 1) and fieldio.read_field(tmp_path / "L.json").kind == "scalar"
        assert run("decompose", "--input", src)[0] == 0


class TestConfig:
    def test_unknown_key(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# comment\np0 = 2\nbogus = 1\n")
        assert run("planewave", "solve", "--config", cfg)[0] == 2
        assert "run.cfg:3: unknown key 'bogus'" in capsys.readouterr().err

    def test_flags_override_config(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("p0 = 2\nc-kin = 2.0\n")
        _, rep = run("planewave", "solve", "--config", cfg, "--p0", 3)
        assert rep["inputs"]["p0"] == 3 and rep["inputs"]["c_kin"] == 2.0

    @pytest.mark.parametrize("argv", [["planewave", "solve", "--p0", "abc"], ["planewave", "solve", "--p0", 0],
                                      ["planewave", "solve", "--threads", 0], ["nonsense"]])
    def test_invalid_input(self, argv):
        assert run(*argv)[0] == 2

    def test_threads_env(self, monkeypatch):
        monkeypatch.setenv(cli.THREADS_ENV, "x")
        assert run("planewave", "solve")[0] == 2

    def test_determinism(self, tmp_path):
        reports = []
        for threads in (1, 4):
            path = tmp_path / f"r{threads}.json"
            run("verify", "lemma1", "--samples", 3, "--n", 6, "--threads", threads, "--report", path)
            rep = json.loads(path.read_text())
            rep.pop("wall_time")
            reports.append(json.dumps(rep, sort_keys=True))
        assert reports[0] == reports[1]

    def test_report_fields(self):
        _, rep = run("planewave", "solve")
        assert list(rep) == ["schema_version", "command", "version", "config_hash", "inputs", "results", "pass", "wall_time"]
        assert len(rep["config_hash"]) == 64

    def test_main_exit_code(self):
        assert cli.main(["weyl", "theorem2", "--c-vec", "1"]) == 2
