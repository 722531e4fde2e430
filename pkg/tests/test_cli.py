import io
import json

import pytest

from ifbases import formats as fmt
from ifbases.cli import parse_box, run
from ifbases.fixtures import DATA


def call(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def fixture(name):
    return str(DATA / f"{name}.json")


def test_hilbert(tmp_path):
    code, out, _ = call(["hilbert", "--input", fixture("cone_1_2"), "--minimal"])
    assert code == 0
    assert json.loads(out)["basis"] == [[1, 0], [1, 1], [1, 2]]
    code, out, _ = call(["hilbert", "--input", fixture("quadrant")])
    assert json.loads(out)["basis"] == [[0, 1], [1, 0]]
    code, _, err = call(["hilbert", "--input", fixture("line_cone"), "--minimal"])
    assert code == 3 and "line" in err


def test_intbasis_reports():
    rep = json.loads(call(["intbasis", "--input", fixture("y_ge_1")])[1])
    assert rep["finite"] is False and rep["witness_ray"] == [1, 0]
    rep = json.loads(call(["intbasis", "--input", fixture("triangle")])[1])
    assert rep["finite"] is True and rep["basis"] == [[0, 1], [1, 0]]
    rep = json.loads(call(["intbasis", "--input", fixture("wedge")])[1])
    assert rep["finite"] is True


def test_intbasis_empty(tmp_path):
    p = write(tmp_path, "empty.json", {"kind": "polyhedron", "A": [[1, 1]], "b": [-1]})
    code, out, _ = call(["intbasis", "--input", p])
    assert code == 0 and json.loads(out)["empty"] is True


def test_intbasis_lattice_set_variants(tmp_path):
    p = write(tmp_path, "s.json", {"kind": "lattice_set", "variant": "cone_minus_excluded",
                                   "generators": [[1, 0], [0, 1]], "excluded": [[1, 0], [0, 1]]})
    rep = json.loads(call(["intbasis", "--input", p])[1])
    assert [2, 0] in rep["basis"] and [1, 1] in rep["basis"]
    p = write(tmp_path, "e.json", {"kind": "lattice_set", "variant": "explicit", "ambient_dim": 1,
                                   "points": [[2], [3], [4]]})
    assert json.loads(call(["intbasis", "--input", p])[1])["basis"] == [[2], [3]]


def test_schema_errors_exit_2(tmp_path):
    assert call(["hilbert", "--input", write(tmp_path, "a.json", {"kind": "cone"})])[0] == 2
    bad = {"kind": "cone", "generators": [[1, 0]], "colour": "red"}
    assert call(["hilbert", "--input", write(tmp_path, "b.json", bad)])[0] == 2
    assert call(["hilbert", "--input", write(tmp_path, "c.json", {"kind": "nope"})])[0] == 2
    assert call(["hilbert", "--input", str(tmp_path / "missing.json")])[0] == 2
    (tmp_path / "d.json").write_text("{not json")
    assert call(["hilbert", "--input", str(tmp_path / "d.json")])[0] == 2
    assert call(["taylor", "--input", fixture("cone_1_2")])[0] == 2
    ragged = {"kind": "cone", "generators": [[1, 0], [1]]}
    assert call(["hilbert", "--input", write(tmp_path, "e.json", ragged)])[0] == 2


def test_big_integers_as_strings(tmp_path):
    big = str(10 ** 30)
    p = write(tmp_path, "big.json", {"kind": "cone", "generators": [[1, 0], [big, 1]]})
    code, out, _ = call(["hilbert", "--input", p, "--minimal"])
    assert code == 0
    rep = json.loads(out)
    assert [big, 1] in rep["basis"]
    assert fmt.enc_int(5) == 5 and fmt.enc_int(2 ** 53) == str(2 ** 53)


def test_taylor():
    rep = json.loads(call(["taylor", "--input", fixture("taylor_square")])[1])
    assert rep["text"]["g_u"] == ["2*l1 + 1", "2"]
    assert rep["text"]["g_l"] == ["0", "0"]
    assert rep["degree_drop"] and rep["sandwich_check"]["ok"]
    rep = json.loads(call(["taylor", "--input", fixture("zero_correction_k2"), "--seed", "5"])[1])
    assert rep["text"]["g_u"] == ["1", "2*l1 + 2"]
    assert rep["sandwich_check"]["seed"] == 5


def test_certify():
    rep = json.loads(call(["certify", "--input", fixture("product_ip")])[1])
    assert rep["verdict"] == "improvable" and rep["point"] == [2, 2]
    rep = json.loads(call(["certify", "--input", fixture("product_ip"), "--z0", "2,2"])[1])
    assert rep["verdict"] == "optimal"
    code, _, err = call(["certify", "--input", fixture("product_ip"), "--z0", "1,2"])
    assert code == 4 and json.loads(err)["constraint"] == ["row", 0]


def test_ifb_split_verify_round_trip(tmp_path):
    ifb = tmp_path / "ifb.json"
    assert call(["ifb", "--input", fixture("parabola_ifb"), "--box", "0..6", "--output", str(ifb)])[0] == 0
    rep = json.loads(ifb.read_text())
    assert rep["max_param_count"] == 2 and rep["max_param_count_with_offset"] == 3
    code, out, _ = call(["verify", "--input", str(ifb), "--box", "0..6"])
    assert code == 0 and json.loads(out)["ok"] is True
    split = tmp_path / "split.json"
    assert call(["split", "--input", str(ifb), "--generator", "0,1", "--output", str(split)])[0] == 0
    assert json.loads(split.read_text())["max_param_count"] == 1
    assert call(["split", "--input", str(ifb), "--generator", "1,0"])[0] == 3


def test_verify_basis_reports(tmp_path):
    report = tmp_path / "r.json"
    call(["hilbert", "--input", fixture("cone_1_4"), "--output", str(report)])
    rep = json.loads(call(["verify", "--input", str(report), "--box", "0..8"])[1])
    assert rep["ok"] and rep["irreducible"]
    doc = json.loads(report.read_text())
    doc["basis"] = [[1, 0], [1, 4]]
    rep = json.loads(call(["verify", "--input", write(tmp_path, "bad.json", doc), "--box", "0..8"])[1])
    assert rep["ok"] is False and rep["failure"] == [1, 1]
    assert call(["verify", "--input", str(report), "--box", "0..20"])[0] == 3


def test_plot(tmp_path):
    svg = tmp_path / "p.svg"
    assert call(["plot", "--input", fixture("parabola_cone"), "--box", "0,0..16,4", "--output", str(svg)])[0] == 0
    text = svg.read_text()
    assert text.startswith("<svg") and text.rstrip().endswith("</svg>")
    assert call(["plot", "--input", fixture("parabola_cone"), "--box", "0,0..16,4"])[1] == text
    report = tmp_path / "r.json"
    call(["hilbert", "--input", fixture("cone_1_2"), "--output", str(report)])
    out = call(["plot", "--input", str(report), "--box", "0..4"])[1]
    assert out.count('stroke="#d62728"') == 3
    assert call(["plot", "--input", fixture("cube_corner")])[0] == 2
    code = call(["plot", "--input", write(tmp_path, "c.json", {
        "kind": "lattice_set", "variant": "cone_minus_excluded", "generators": [[1, 0, 0]]})])[0]
    assert code == 2


def test_parse_box():
    assert parse_box("0..6", 2) == ((0, 0), (6, 6))
    assert parse_box("0,0..16,4", 2) == ((0, 0), (16, 4))
    from ifbases.cli import InputError
    with pytest.raises(InputError):
        parse_box("6..0", 1)
    with pytest.raises(InputError):
        parse_box("0-6", 1)


def test_output_is_written_atomically(tmp_path):
    out = tmp_path / "o.json"
    out.write_text("old")
    assert call(["hilbert", "--input", fixture("quadrant"), "--output", str(out)])[0] == 0
    assert json.loads(out.read_text())["basis"] == [[0, 1], [1, 0]]
    assert [p.name for p in tmp_path.iterdir()] == ["o.json"]


def test_console_entry_point():
    import subprocess
    import sys
    r = subprocess.run([sys.executable, "-m", "ifbases", "hilbert", "--input", fixture("cone_1_2")],
                       capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["size"] == 3
