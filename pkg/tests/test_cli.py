import subprocess
import sys

import pytest

from mvcycles import data
from mvcycles.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_detform_mask(capsys):
    code, out, _ = run(capsys, "detform", "--picture", "examples/sec52.kp", "--show-mask")
    assert code == 0
    assert out.strip() == data.read("sec52.mask").strip()


def test_detform_graph_and_poly(capsys, tmp_path):
    fig = tmp_path / "diagram.png"
    code, out, _ = run(capsys, "detform", "--picture", "sec52.kp", "--show-graph", "--show-poly", "--figure", str(fig))
    assert code == 0
    assert "edges: L1-L5 L2-L3 L2-L4 L3-L5 L4-L6" in out
    assert "acyclic: true" in out
    assert fig.stat().st_size > 0


def test_detform_order_flag(capsys):
    _, a, _ = run(capsys, "detform", "--picture", "sec52.kp")
    _, b, _ = run(capsys, "detform", "--picture", "sec52.kp", "--order", "5,3,1,0,2,4")
    assert a == b


def test_detform_cyclic_is_a_computational_error(capsys):
    code, _, err = run(capsys, "detform", "--picture", "pbang.kp")
    assert code == 3
    assert "CyclicGraph" in err


def test_cluster_enumerate(capsys, tmp_path):
    code, out, _ = run(capsys, "cluster", "enumerate", "-n", "4")
    assert code == 0
    assert out.splitlines()[0] == "12 cluster variables, complete"
    fig = tmp_path / "growth.png"
    cache = tmp_path / "c.jsonl"
    code, out, _ = run(capsys, "cluster", "enumerate", "-n", "5", "--max-depth", "2", "--resume", str(cache))
    assert "incomplete" in out.splitlines()[0]
    code, out, _ = run(capsys, "cluster", "enumerate", "-n", "5", "--resume", str(cache), "--figure", str(fig), "--list")
    lines = out.splitlines()
    assert lines[0] == "40 cluster variables, complete"
    assert len(lines) == 2 + 40
    assert fig.stat().st_size > 0


def test_cluster_initial(capsys):
    code, out, _ = run(capsys, "cluster", "initial", "-n", "3")
    assert code == 0
    assert out.splitlines()[0] == "0\tmutable\tx_1_2"


def test_picture_commands(capsys):
    code, out, _ = run(capsys, "picture", "compare", "sec34_p.kp", "sec34_s.kp")
    assert (code, out.strip()) == (0, "GREATER")
    _, out, _ = run(capsys, "picture", "compare", "sec34_s.kp", "sec34_p.kp")
    assert out.strip() == "LESS"
    _, out, _ = run(capsys, "picture", "fuse", "sec34_p.kp", "(1,2)", "(2,3)")
    assert out.strip() == "n=3; loops=(1,3); base=(0,1,0)"
    _, out, _ = run(capsys, "picture", "downset", "sec34_p.kp")
    assert len(out.splitlines()) == 2
    _, out, _ = run(capsys, "picture", "show", "n=3; loops=(1,2)(2,3); base=(0,0,0)")
    assert "lambda: 1 1 0" in out and "mu: 0 1 1" in out


def test_mvbasis_commands(capsys):
    code, out, _ = run(capsys, "mvbasis", "convolve", "-p", "n=3; loops=(1,2)", "-q", "n=3; loops=(2,3)")
    assert code == 0
    assert out.splitlines() == ["n=3; loops=(1,2)(2,3)\t1", "n=3; loops=(1,3)\t1"]
    _, out, _ = run(capsys, "mvbasis", "expand", "--poly", "x_1_2 x_2_3", "-n", "3")
    assert out.splitlines() == ["n=3; loops=(1,2)(2,3)\t1", "n=3; loops=(1,3)\t1"]
    _, out, _ = run(capsys, "mvbasis", "leading", "--poly", "pbang.poly", "-n", "6")
    assert out.strip() == "n=6; loops=(1,3)(2,5)(3,4)(4,6)"
    code, out, _ = run(
        capsys, "mvbasis", "convolve", "--table", "pbang.tbl", "-p", "pbang.kp", "-q", "n=6; loops=(4,5)"
    )
    assert code == 0
    assert "n=6; loops=(1,3)(2,5)(3,4)(4,6)(4,5)\t1" in out.splitlines()


def test_lattice_classify(capsys):
    code, out, _ = run(capsys, "lattice", "classify", "fig1_middle.lat", "--verify-padding")
    assert code == 0
    assert out.strip() == "n=6; loops=(1,3)(2,3)(3,5)(4,6); base=(1,-2,-2,-3,-2,-2)"


def test_chi_verify(capsys):
    args = ("chi", "verify", "--picture", "sec54.kp", "--poly", "sec54.poly", "--samples", "3", "--seed", "7")
    code, out, _ = run(capsys, *args)
    assert code == 0
    assert out.rstrip().endswith("verdict: pass")
    _, again, _ = run(capsys, *args)
    assert again == out
    code, out, _ = run(capsys, "chi", "verify", "--picture", "pbang.kp", "--poly", "pbang.poly", "--samples", "1")
    assert code == 4
    assert "verdict: fail" in out


def test_reproduce_single(capsys):
    code, out, _ = run(capsys, "reproduce", "6")
    assert code == 0
    assert out.startswith("PASS\t6\t")


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["cluster"])
    assert exc.value.code == 2
    code, _, err = run(capsys, "detform", "--picture", "no_such_file.kp")
    assert code == 2 and "no_such_file" in err
    code, _, err = run(capsys, "picture", "show", "n=3; loops=(1,4)")
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "mvcycles.cli", "cluster", "enumerate", "-n", "3"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "4 cluster variables, complete"
