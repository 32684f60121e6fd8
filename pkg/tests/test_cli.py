"""The swm executable: flags, outputs, exit codes."""

import json

import numpy as np
import pytest

import swm
import swm.cli
import swm.core
import swm.golden
from swm.errors import SingularSystemError
from conftest import REF_GRID4_COEFFS, REF_GRID4_P2


def run(*argv):
    return swm.cli.main(list(argv))


@pytest.fixture
def grid_pgm(tmp_path):
    path = tmp_path / "grid.pgm"
    path.write_text(REF_GRID4_P2)
    return path


# ---------------------------------------------------------------------------
# synth

def test_synth_reference_first_value(tmp_path, capsys):
    out = tmp_path / "sig.csv"
    assert run("synth", "--n", "18", "--dt", "4", "--origin", "-2",
               "--out", str(out)) == 0
    first = float(out.read_text().splitlines()[0])
    assert first == pytest.approx(-34.5484836, abs=1e-6)


def test_synth_single_sample(tmp_path):
    out = tmp_path / "one.csv"
    assert run("synth", "--n", "1", "--dt", "4", "--origin", "0",
               "--out", str(out)) == 0
    assert float(out.read_text().strip()) == pytest.approx(28.0, abs=1e-9)


def test_synth_rejects_zero_n(tmp_path, capsys):
    code = run("synth", "--n", "0", "--dt", "4", "--out", str(tmp_path / "x.csv"))
    assert code == 2
    assert "swm:" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# analyze-signal

def test_analyze_signal_reference_csv(tmp_path, grid_pgm):
    sig = tmp_path / "sig.csv"
    run("synth", "--n", "18", "--dt", "4", "--out", str(sig))
    out = tmp_path / "swt.csv"
    plot = tmp_path / "swt.svg"
    assert run("analyze-signal", "--input", str(sig), "--dt", "4",
               "--out-swt", str(out), "--out-plot", str(plot)) == 0
    assert "0.1250000,117.12980" in out.read_text()
    assert plot.read_text().startswith("<svg ")


def test_analyze_signal_constant_input(tmp_path):
    sig = tmp_path / "const.csv"
    sig.write_text("5.0\n" * 16)
    out = tmp_path / "swt.json"
    assert run("analyze-signal", "--input", str(sig), "--dt", "2",
               "--out-swt", str(out)) == 0
    doc = json.loads(out.read_text())
    coeffs = np.array([d["coefficient"] for d in doc["dyads"]])
    assert np.abs(coeffs[1:]).max() <= 1e-9 * 5.0
    assert coeffs[0] == pytest.approx(5.0, rel=1e-12)


def test_analyze_signal_fmax_filters(tmp_path):
    sig = tmp_path / "sig.csv"
    run("synth", "--n", "18", "--dt", "4", "--out", str(sig))
    out = tmp_path / "part.json"
    assert run("analyze-signal", "--input", str(sig), "--dt", "4",
               "--fmax", "0.15", "--out-swt", str(out)) == 0
    doc = json.loads(out.read_text())
    assert [d["index"] for d in doc["dyads"]] == [1, 2, 3, 4]


def test_analyze_signal_inconsistent_timing(tmp_path, capsys):
    sig = tmp_path / "sig.csv"
    sig.write_text("1\n2\n3\n")
    code = run("analyze-signal", "--input", str(sig), "--dt", "5",
               "--fs", "250")
    assert code == 2
    assert "invalid input" in capsys.readouterr().err


def test_analyze_signal_missing_file(tmp_path, capsys):
    code = run("analyze-signal", "--input", str(tmp_path / "nope.csv"),
               "--dt", "4")
    assert code == 4
    assert "i/o error" in capsys.readouterr().err


def test_analyze_signal_singular_exit(tmp_path, monkeypatch, capsys):
    sig = tmp_path / "sig.csv"
    sig.write_text("1\n2\n")

    def boom(signal, cache=None):
        raise SingularSystemError(2, 1e18)

    monkeypatch.setattr(swm.core, "analyze_1d", boom)
    code = run("analyze-signal", "--input", str(sig), "--dt", "1")
    assert code == 3
    assert "singular" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# analyze-image / approximate / pattern

def test_analyze_image_reference_grid(tmp_path, grid_pgm):
    out = tmp_path / "coeffs.json"
    assert run("analyze-image", "--input", str(grid_pgm), "--tile", "4",
               "--out", str(out)) == 0
    payload = json.loads(out.read_text())
    assert payload["tile_size"] == 4
    coeffs = np.array(payload["tiles"][0]["coefficients"])
    assert np.abs(coeffs - REF_GRID4_COEFFS).max() <= 1e-9


def test_analyze_image_full_matches_tile(tmp_path, grid_pgm):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run("analyze-image", "--input", str(grid_pgm), "--tile", "4",
               "--out", str(a)) == 0
    assert run("analyze-image", "--input", str(grid_pgm), "--full",
               "--out", str(b)) == 0
    assert json.loads(a.read_text())["tiles"] == json.loads(b.read_text())["tiles"]


def test_analyze_image_divisibility(tmp_path, capsys):
    path = tmp_path / "odd.pgm"
    swm.write_gray_image(
        swm.GrayImage(np.zeros((32, 33), dtype=np.uint8)), path)
    code = run("analyze-image", "--input", str(path), "--tile", "32",
               "--out", str(tmp_path / "c.json"))
    assert code == 2
    assert "33" in capsys.readouterr().err


def test_approximate_restores_image(tmp_path, grid_pgm):
    coeffs = tmp_path / "coeffs.json"
    run("analyze-image", "--input", str(grid_pgm), "--tile", "4",
        "--out", str(coeffs))
    out = tmp_path / "back.pgm"
    assert run("approximate", "--coeffs", str(coeffs), "--keep", "4",
               "--out", str(out)) == 0
    original = swm.read_gray_image(grid_pgm)
    restored = swm.read_gray_image(out)
    assert np.array_equal(restored.pixels, original.pixels)


def test_approximate_rejects_bad_keep(tmp_path, grid_pgm, capsys):
    coeffs = tmp_path / "coeffs.json"
    run("analyze-image", "--input", str(grid_pgm), "--tile", "4",
        "--out", str(coeffs))
    assert run("approximate", "--coeffs", str(coeffs), "--keep", "9",
               "--out", str(tmp_path / "y.png")) == 2


def test_pattern_from_size(tmp_path):
    out = tmp_path / "pat.png"
    assert run("pattern", "--n", "32", "--i", "17", "--j", "25",
               "--out", str(out)) == 0
    from PIL import Image
    assert Image.open(out).size == (32, 32)


def test_pattern_from_archive(tmp_path, grid_pgm):
    coeffs = tmp_path / "coeffs.json"
    run("analyze-image", "--input", str(grid_pgm), "--tile", "4",
        "--out", str(coeffs))
    out = tmp_path / "pat.png"
    assert run("pattern", "--coeffs", str(coeffs), "--i", "2", "--j", "3",
               "--out", str(out), "--scale", "3") == 0
    from PIL import Image
    assert Image.open(out).size == (12, 12)


def test_pattern_requires_one_source(tmp_path, capsys):
    assert run("pattern", "--i", "1", "--j", "1",
               "--out", str(tmp_path / "p.png")) == 2


# ---------------------------------------------------------------------------
# frequencies

def test_frequencies_spatial_single_value(capsys):
    assert run("frequencies", "--n", "32", "--unit", "tile", "--i", "17") == 0
    assert capsys.readouterr().out.strip() == "1.0000000"


def test_frequencies_table(capsys):
    assert run("frequencies", "--n", "18", "--dt", "4") == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 18
    assert lines[0] == "1,0.1250000"
    assert lines[-1] == "18,2.2500000"


def test_frequencies_requires_one_mode(capsys):
    assert run("frequencies", "--n", "18") == 2
    assert run("frequencies", "--n", "18", "--dt", "4", "--unit", "tile") == 2


# ---------------------------------------------------------------------------
# verify

def test_verify_default_passes(capsys):
    assert run("verify") == 0
    out = capsys.readouterr().out
    assert "10/10 checks passed" in out
    assert "FAIL" not in out


def test_verify_detects_corrupted_sign_rule(monkeypatch, capsys):
    def off_by_one(n):
        k = np.arange(1, n + 1)[:, None]
        i = np.arange(1, n + 1)[None, :]
        return np.where((k // (n - i + 1)) % 2 == 0, 1, -1).astype(np.int8)

    monkeypatch.setattr(swm.core, "build_sign_matrix", off_by_one)
    monkeypatch.setattr(swm.core, "_SHARED_CACHE", swm.SolverCache())
    code = run("verify")
    assert code == 1
    captured = capsys.readouterr()
    assert "FAIL" in captured.out
    assert "sign-consistency" in captured.out
    assert "verification failed" in captured.err


def test_bad_flags_exit_two():
    with pytest.raises(SystemExit) as info:
        run("synth", "--n", "18")
    assert info.value.code == 2


def test_identical_invocations_identical_bytes(tmp_path, grid_pgm):
    outputs = []
    for tag in ("a", "b"):
        sig = tmp_path / f"sig_{tag}.csv"
        swt = tmp_path / f"swt_{tag}.csv"
        coeffs = tmp_path / f"coeffs_{tag}.json"
        plot = tmp_path / f"plot_{tag}.svg"
        run("synth", "--n", "18", "--dt", "4", "--out", str(sig))
        run("analyze-signal", "--input", str(sig), "--dt", "4",
            "--out-swt", str(swt), "--out-plot", str(plot))
        run("analyze-image", "--input", str(grid_pgm), "--tile", "2",
            "--out", str(coeffs))
        outputs.append([p.read_bytes() for p in (sig, swt, coeffs, plot)])
    assert outputs[0] == outputs[1]
