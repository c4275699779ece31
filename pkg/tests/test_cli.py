import numpy as np
import pytest

from kpng import decode_bmp, decode_png, encode_bmp
from kpng.bench import read_csv
from kpng.cli import main
from kpng.corpus import CorpusSpec, generate

from conftest import random_image


@pytest.fixture()
def shapes_bmp(tmp_path):
    img = generate(CorpusSpec("flat-shapes", 96, 96, seed=2))
    path = tmp_path / "shapes.bmp"
    path.write_bytes(encode_bmp(img))
    return path


def test_convert_quantized_is_smaller(tmp_path, shapes_bmp, capsys):
    plain = tmp_path / "plain.png"
    quant = tmp_path / "quant.png"
    assert main(["convert", str(shapes_bmp), "-o", str(plain)]) == 0
    assert main(["convert", "--k", "10", str(shapes_bmp), "-o", str(quant)]) == 0
    out = capsys.readouterr().out
    assert "compression ratio:" in out
    assert quant.stat().st_size < plain.stat().st_size


def test_convert_is_idempotent_through_the_container(tmp_path, shapes_bmp):
    once = tmp_path / "once.png"
    twice = tmp_path / "twice.png"
    assert main(["convert", "--k", "10", str(shapes_bmp), "-o", str(once)]) == 0
    assert main(["convert", "--k", "10", str(once), "-o", str(twice)]) == 0
    assert decode_png(once.read_bytes()) == decode_png(twice.read_bytes())


@pytest.mark.parametrize("bad_k", ["1", "26"])
def test_convert_rejects_bad_k(tmp_path, shapes_bmp, capsys, bad_k):
    code = main(["convert", "--k", bad_k, str(shapes_bmp), "-o", str(tmp_path / "x.png")])
    assert code != 0
    assert "error:" in capsys.readouterr().err


def test_convert_unreadable_input(tmp_path, capsys):
    bad = tmp_path / "junk.bin"
    bad.write_bytes(b"not an image")
    assert main(["convert", str(bad), "-o", str(tmp_path / "x.png")]) != 0
    assert "error:" in capsys.readouterr().err


def test_convert_missing_input(tmp_path, capsys):
    assert main(["convert", str(tmp_path / "nope.bmp"), "-o", str(tmp_path / "x.png")]) != 0
    assert "error:" in capsys.readouterr().err


def test_metrics_identical_files(tmp_path, shapes_bmp, capsys):
    assert main(["metrics", str(shapes_bmp), str(shapes_bmp)]) == 0
    out = capsys.readouterr().out
    assert "mse     0.0000" in out
    assert "psnr    inf" in out
    assert "ssim    1.0000" in out
    assert "metrics: mse=0.0000 psnr=inf ssim=1.0000" in out


def test_metrics_quantized_psnr_in_range(tmp_path, capsys):
    img = random_image(np.random.default_rng(0), 64, 64, 3)
    a = tmp_path / "a.bmp"
    a.write_bytes(encode_bmp(img))
    out_png = tmp_path / "b.png"
    assert main(["convert", "--k", "10", str(a), "-o", str(out_png)]) == 0
    capsys.readouterr()
    assert main(["metrics", str(a), str(out_png)]) == 0
    out = capsys.readouterr().out
    psnr_value = float(out.split("psnr=")[1].split()[0])
    assert 34.15 <= psnr_value <= 46.5


def test_metrics_shape_mismatch(tmp_path, capsys):
    rng = np.random.default_rng(1)
    a = tmp_path / "a.bmp"
    b = tmp_path / "b.bmp"
    a.write_bytes(encode_bmp(random_image(rng, 16, 16, 3)))
    b.write_bytes(encode_bmp(random_image(rng, 17, 16, 3)))
    assert main(["metrics", str(a), str(b)]) != 0
    assert "error:" in capsys.readouterr().err


def test_bench_directory(tmp_path, capsys):
    corpus_dir = tmp_path / "corpus"
    corpus_dir.mkdir()
    for seed in (1, 2):
        img = generate(CorpusSpec("flat-shapes", 64, 64, seed=seed))
        (corpus_dir / f"img-{seed}.bmp").write_bytes(encode_bmp(img))
    report = tmp_path / "report.csv"
    assert main(["bench", "--dir", str(corpus_dir), "--out", str(report)]) == 0
    out = capsys.readouterr().out
    assert "| name" in out and "| mean" in out
    records = read_csv(report)
    assert [r.name for r in records] == ["img-1", "img-2"]
    assert all(r.kpng_size <= r.png_size for r in records)


def test_bench_empty_directory(tmp_path, capsys):
    empty = tmp_path / "empty"
    empty.mkdir()
    assert main(["bench", "--dir", str(empty), "--out", str(tmp_path / "r.csv")]) != 0
    assert "no usable images" in capsys.readouterr().err


def test_bench_reports_per_file_failures(tmp_path, capsys):
    corpus_dir = tmp_path / "corpus"
    corpus_dir.mkdir()
    img = generate(CorpusSpec("flat-shapes", 48, 48, seed=4))
    (corpus_dir / "good.bmp").write_bytes(encode_bmp(img))
    (corpus_dir / "bad.bmp").write_bytes(b"BM broken")
    report = tmp_path / "report.csv"
    assert main(["bench", "--dir", str(corpus_dir), "--out", str(report)]) == 0
    captured = capsys.readouterr()
    assert "skipped bad.bmp" in captured.err
    assert len(read_csv(report)) == 1


def test_bench_rejects_bad_k(tmp_path, capsys):
    assert main(["bench", "--dir", str(tmp_path), "--k", "1", "--out", str(tmp_path / "r.csv")]) != 0
    assert "error:" in capsys.readouterr().err


def test_synth_deterministic(tmp_path):
    d1 = tmp_path / "one"
    d2 = tmp_path / "two"
    args = ["synth", "--kind", "flat-shapes", "--size", "32x32", "--seed", "9"]
    assert main(args + ["-o", str(d1)]) == 0
    assert main(args + ["-o", str(d2)]) == 0
    f1 = sorted(d1.glob("*.bmp"))
    f2 = sorted(d2.glob("*.bmp"))
    assert len(f1) == len(f2) == 1
    assert f1[0].read_bytes() == f2[0].read_bytes()


def test_synth_color_budget_and_count(tmp_path):
    out = tmp_path / "imgs"
    assert main(["synth", "--kind", "flat-shapes", "--size", "40x40", "--seed", "1",
                 "--count", "3", "-o", str(out)]) == 0
    files = sorted(out.glob("*.bmp"))
    assert len(files) == 3
    for f in files:
        img = decode_bmp(f.read_bytes())
        assert len(np.unique(img.to_array().reshape(-1, 3), axis=0)) <= 8


def test_synth_gradient_ramp(tmp_path):
    out = tmp_path / "g"
    assert main(["synth", "--kind", "gradient", "--size", "256x8", "-o", str(out)]) == 0
    img = decode_bmp(next(out.glob("*.bmp")).read_bytes())
    arr = img.to_array()
    assert arr[0, 0, 0] == 0 and arr[0, -1, 0] == 255


def test_synth_bad_size(tmp_path, capsys):
    assert main(["synth", "--kind", "noise", "--size", "huge", "-o", str(tmp_path / "x")]) != 0
    assert "error:" in capsys.readouterr().err
