import io
import json
import math
import subprocess
import sys
import xml.etree.ElementTree as ET

from goldenblaschke.cli import parse_point, run


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), out=buf)
    return code, buf.getvalue()


def call_json(*argv):
    code, text = call(*argv)
    return code, json.loads(text)


def test_parse_point_forms():
    assert parse_point("0.5,-0.25") == 0.5 - 0.25j
    assert parse_point(" -0.5,0") == -0.5
    assert parse_point("0.3") == 0.3
    assert abs(parse_point("@90") - 1j) < 1e-15


def test_chords_half():
    code, doc = call_json("chords", "--a", "0.5,0")
    assert code == 0
    res = doc["result"]
    assert res["classification"] == "two"
    assert len(res["chords"]) == 2
    for ch in res["chords"]:
        assert round(ch["ratio"], 6) == 1.618034
        assert ch["blaschke_gap"] < 1e-10
    assert set(doc["tolerance"]) == {"eps_root", "eps_geom", "eps_count", "max_iter"}


def test_chords_small():
    code, doc = call_json("chords", "--a", "0.1,0")
    assert code == 0
    assert doc["result"]["chords"] == []
    assert round(doc["result"]["threshold"], 6) == 0.236068


def test_chords_negative_point():
    code, doc = call_json("chords", "--a", "-0.5,0")
    assert code == 0
    assert len(doc["result"]["chords"]) == 2


def test_chords_zero_center_is_usage_error():
    code, doc = call_json("chords", "--a", "0,0")
    assert code == 2
    assert doc["error"] == "ZeroCenter"


def test_golden_ellipse():
    code, doc = call_json("golden-ellipse")
    assert code == 0
    assert round(doc["result"]["c"], 6) == 0.485868
    assert round(doc["result"]["axis_ratio"], 6) == 1.618034


def test_triangle_and_rectangle():
    _, tri = call_json("triangle")
    assert round(tri["result"]["ratio"], 9) == round((1 + math.sqrt(5)) / 2, 9)
    _, rect = call_json("rectangle", "--rotate", "0.3")
    assert round(rect["result"]["x"], 6) == 0.850651
    assert round(rect["result"]["y"], 6) == 0.525731


def test_steiner_golden_triangle():
    code, doc = call_json("steiner", "--vertices", "1,0", "@144", "@-144")
    assert code == 0
    foci = sorted(f[0] for f in doc["result"]["foci"])
    assert abs(foci[0] + 0.704461) < 1e-6 and abs(foci[1] - 0.292439) < 1e-6
    assert max(abs(d) for d in doc["result"]["side_defects"]) < 1e-8


def test_inscribe_golden_rectangle_default_seed():
    t = math.degrees(math.atan2(0.525731, 0.850651))
    quad = [f"@{t!r}", f"@{180 - t!r}", f"@{180 + t!r}", f"@{-t!r}"]
    code, doc = call_json("inscribe", "--quad", *quad)
    assert code == 0
    res = doc["result"]
    assert abs(abs(res["focus_a"][0]) - 0.668740) < 1e-5
    assert abs(res["ellipse"]["dist_sum"] - 1.701302) < 1e-5


def test_inscribe_rejects_rounded_vertices():
    quad = ["0.850651,0.525731", "-0.850651,0.525731", "-0.850651,-0.525731", "0.850651,-0.525731"]
    code, doc = call_json("inscribe", "--quad", *quad)
    assert code == 2 and doc["error"] == "NotUnimodular"


def test_degree4_rectangle_foci():
    code, doc = call_json("degree4", "--foci", "0.668740", "-0.668740", "--samples", "20")
    assert code == 0
    assert doc["result"]["max_defect"] < 1e-5
    assert doc["result"]["product"]["degree"] == 4


def test_identify_antipodal():
    code, doc = call_json("identify", "--z", "1,0", "-1,0", "--w", "0,1", "0,-1")
    assert code == 0
    assert doc["result"]["interspersed"] is True
    assert doc["result"]["identification_residual"] < 1e-8


def test_identify_not_interspersed():
    code, doc = call_json("identify", "--z", "1,0", "0,1", "--w", "-1,0", "0,-1")
    assert code == 2
    assert doc["error"] == "NotInterspersed"


def test_verify_exit_status_tracks_defect():
    code, doc = call_json("verify", "--zeros", "0.485868", "-0.485868", "--samples", "10")
    assert code == 0 and doc["result"]["passed"]
    code, doc = call_json("verify", "--zeros", "0.485868", "-0.485868", "--samples", "10",
                          "--ellipse-foci", "0.4", "-0.4", "--dist-sum", "1.2")
    assert code == 1 and not doc["result"]["passed"]
    assert doc["result"]["max_defect"] > doc["tolerance"]["eps_geom"]


def test_text_format():
    code, text = call("golden-ellipse", "--format", "text")
    assert code == 0
    assert text.startswith("command: ")


def test_argument_errors_exit_2(capsys):
    assert call("chords")[0] == 2
    assert call("render", "--figure", "9")[0] == 2
    assert call("chords", "--a", "zz")[0] == 2


def test_bad_tolerance():
    code, doc = call_json("golden-ellipse", "--eps-geom", "-1")
    assert code == 2 and doc["error"] == "BadTolerance"


def test_numeric_failure_exit_1():
    # a single iteration cannot converge on the identify system
    code, doc = call_json("identify", "--z", "1,0", "@100", "@200", "--w", "@60", "@170", "@300",
                          "--max-iter", "1")
    assert code == 1
    assert doc["error"] == "NonConvergence"


def test_render_to_file_and_stdout(tmp_path):
    out = tmp_path / "fig1.svg"
    code, doc = call_json("render", "--figure", "1", "--out", str(out))
    assert code == 0 and doc["result"]["bytes"] == len(out.read_bytes())
    code, svg = call("render", "--figure", "1")
    assert code == 0 and svg == out.read_text()
    ET.fromstring(svg)


def test_svg_side_output(tmp_path):
    path = tmp_path / "chords.svg"
    assert call("chords", "--a", "0.5,0", "--svg", str(path))[0] == 0
    root = ET.fromstring(path.read_text())
    assert len(root.findall("{http://www.w3.org/2000/svg}line")) == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "goldenblaschke", "golden-ellipse"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["command"] == "golden-ellipse"
