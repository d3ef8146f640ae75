import json
import math
import random
import re
import subprocess
import sys

import pytest

from swisscheese import documents
from swisscheese.cheese import SwissCheese, cheeses_equal, delta_of_cheese
from swisscheese.cli import main
from swisscheese.generate import random_cheese
from swisscheese.geometry import closed_disc, open_disc


def _write(path, doc):
    path.write_text(json.dumps(doc))
    return str(path)


def _cheese_doc(outer, *discs):
    return documents.cheese_to_doc(
        SwissCheese(closed_disc(*outer), tuple(open_disc(*d) for d in discs))
    )


# documents


def test_cheese_round_trip_exact():
    rng = random.Random(11)
    for _ in range(1000):
        n = rng.randint(0, 8)
        c = SwissCheese(
            closed_disc(rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(0.1, 9)),
            tuple(open_disc(rng.uniform(-9, 9), rng.gauss(0, 3), rng.expovariate(1) + 1e-3) for _ in range(n)),
        )
        back = documents.cheese_from_doc(json.loads(documents.dumps(documents.cheese_to_doc(c))))
        assert back == c
        assert cheeses_equal(back, c)


@pytest.mark.parametrize(
    "doc",
    [
        {},
        {"outer": {"cx": 0, "cy": 0}},
        {"outer": {"cx": 0, "cy": 0, "r": -1}},
        {"outer": {"cx": 0, "cy": 0, "r": "1"}},
        {"outer": {"cx": 0, "cy": 0, "r": 1}, "discs": {}},
        {"outer": {"cx": 0, "cy": 0, "r": 1}, "discs": [{"cx": 0, "cy": 0, "r": 0}]},
    ],
)
def test_cheese_doc_rejects_malformed(doc):
    with pytest.raises(documents.DocumentError):
        documents.cheese_from_doc(doc)


# generator


def test_gen_example_and_determinism(tmp_path, capsys):
    assert main(["gen", "--seed", "1", "--discs", "5", "--delta-min", "0.5", "--outer-r", "3"]) == 0
    first = capsys.readouterr().out
    assert main(["gen", "--seed", "1", "--discs", "5", "--delta-min", "0.5", "--outer-r", "3"]) == 0
    assert capsys.readouterr().out == first
    doc = json.loads(first)
    assert doc["metadata"]["seed"] == 1
    c = documents.cheese_from_doc(doc)
    assert len(c.discs) == 5
    assert 3 - sum(d["r"] for d in doc["discs"]) >= 0.5


def test_gen_empty(capsys):
    assert main(["gen", "--seed", "4", "--discs", "0", "--delta-min", "0.5", "--outer-r", "2"]) == 0
    c = documents.cheese_from_doc(json.loads(capsys.readouterr().out))
    assert c.discs == () and delta_of_cheese(c).delta == 2


def test_gen_infeasible(capsys):
    assert main(["gen", "--discs", "3", "--delta-min", "3", "--outer-r", "3"]) == 2
    assert main(["gen", "--discs", "3", "--delta-min", "4", "--outer-r", "3"]) == 2


def test_generator_stress_structure():
    dupes = on_rim = 0
    for seed in range(200):
        c = random_cheese(seed, 20, 0.1)
        assert 3 - sum(d.radius for d in c.discs) >= 0.1
        dupes += len(c.discs) - len(set(c.discs))
        # closures that meet the outer circle
        on_rim += sum(abs(math.hypot(*d.center) - 3) <= d.radius for d in c.discs)
    # 5% duplicates and 10% rim or crossing placements out of 4000 discs
    assert 100 < dupes < 300
    assert on_rim > 300


# classicalise / verify


def test_classicalise_chain(tmp_path, capsys):
    src = _write(tmp_path / "in.json", _cheese_doc((0, 0, 4.5), (0, 0, 1), (1.5, 0, 1), (3, 0, 1)))
    out = tmp_path / "trace.json"
    assert main(["classicalise", src, "--trace", str(out)]) == 0
    text = capsys.readouterr().out
    assert "steps: 2" in text and "delta_initial: 1.5" in text
    doc = json.loads(out.read_text())
    assert len(doc["steps"]) == 2
    assert doc["final"]["indices"] == [1]
    assert doc["deltas"]["final"] == pytest.approx(2.0)

    src = _write(tmp_path / "lit.json", _cheese_doc((0, 0, 4), (0, 0, 1), (1.5, 0, 1), (3, 0, 1)))
    assert main(["classicalise", src, "--trace", str(out)]) == 0
    assert "steps: 3" in capsys.readouterr().out


def test_classicalise_classical(tmp_path, capsys):
    src = _write(tmp_path / "in.json", _cheese_doc((0, 0, 3), (0, 0, 1), (2.2, 0, 0.1)))
    assert main(["classicalise", src, "--trace", str(tmp_path / "t.json")]) == 0
    assert "steps: 0" in capsys.readouterr().out


def test_classicalise_errors(tmp_path):
    trace = str(tmp_path / "t.json")
    src = _write(tmp_path / "zero.json", _cheese_doc((0, 0, 1), (0.5, 0, 0.5), (-0.5, 0, 0.5)))
    assert main(["classicalise", src, "--trace", trace]) == 3
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["classicalise", str(bad), "--trace", trace]) == 2
    assert main(["classicalise", str(tmp_path / "missing.json"), "--trace", trace]) == 2


def test_classicalise_budget(tmp_path):
    src = _write(tmp_path / "in.json", _cheese_doc((0, 0, 4.5), (0, 0, 1), (1.5, 0, 1), (3, 0, 1)))
    trace = tmp_path / "t.json"
    assert main(["classicalise", src, "--trace", str(trace), "--budget", "1"]) == 1
    doc = json.loads(trace.read_text())
    assert doc["stabilised"] is False and len(doc["steps"]) == 1
    assert main(["verify", str(trace), "--points", "1000"]) == 0


def test_verify_exit_codes(tmp_path, capsys):
    src = _write(tmp_path / "in.json", _cheese_doc((0, 0, 4.5), (0, 0, 1), (1.5, 0, 1), (3, 0, 1)))
    trace = tmp_path / "t.json"
    main(["classicalise", src, "--trace", str(trace)])
    capsys.readouterr()
    assert main(["verify", str(trace)]) == 0
    assert "passed: true" in capsys.readouterr().out

    doc = json.loads(trace.read_text())
    del doc["steps"][0]
    tampered = _write(tmp_path / "tampered.json", doc)
    assert main(["verify", tampered, "--points", "2000", "--seed", "3"]) == 1
    out = capsys.readouterr().out
    assert "passed: false" in out and "trace-replay-mismatch" in out

    assert main(["verify", str(tmp_path / "nope.json")]) == 2


def test_trace_round_trip(tmp_path):
    src = _write(tmp_path / "in.json", documents.cheese_to_doc(random_cheese(7, 30, 0.1)))
    trace = tmp_path / "t.json"
    assert main(["classicalise", src, "--trace", str(trace)]) == 0
    doc = json.loads(trace.read_text())
    initial, result = documents.trace_from_doc(doc)
    assert documents.trace_to_doc(initial, result) == doc


@pytest.mark.parametrize("seed", range(40))
def test_generated_cheeses_classicalise_and_verify(tmp_path, seed):
    n = random.Random(seed).randint(0, 50)
    cheese = tmp_path / "c.json"
    trace = tmp_path / "t.json"
    assert main(["gen", "--seed", str(seed), "--discs", str(n), "-o", str(cheese)]) == 0
    assert main(["classicalise", str(cheese), "--trace", str(trace)]) == 0
    assert main(["verify", str(trace), "--points", "5000", "--seed", str(seed)]) == 0


# render


def _svg(tmp_path, doc, *extra):
    src = _write(tmp_path / "in.json", doc)
    out = tmp_path / "out.svg"
    assert main(["render", src, str(out), *extra]) == 0
    return out.read_bytes()


def test_render_counts(tmp_path):
    svg = _svg(tmp_path, _cheese_doc((0, 0, 1)))
    assert svg.count(b"<circle") == 1
    svg = _svg(tmp_path, _cheese_doc((0, 0, 3), (0, 0, 1), (2, 0, 0.5)), "--width", "300")
    assert svg.count(b"<circle") == 3
    assert b'width="300"' in svg
    # viewBox fitted to the outer disc with a 5% margin
    box = re.search(rb'viewBox="([^"]+)"', svg).group(1).split()
    assert [float(v) for v in box] == pytest.approx([-3.15, -3.15, 6.3, 6.3])


def test_render_trace(tmp_path):
    src = _write(tmp_path / "in.json", _cheese_doc((0, 0, 4.5), (0, 0, 1), (1.5, 0, 1), (3, 0, 1)))
    trace = tmp_path / "t.json"
    main(["classicalise", src, "--trace", str(trace)])
    out = tmp_path / "t.svg"
    assert main(["render", str(trace), str(out)]) == 0
    svg = out.read_bytes()
    assert svg.count(b"<g ") == 3
    assert svg.count(b"<circle") == 4 + 3 + 2


def test_render_deterministic(tmp_path):
    doc = documents.cheese_to_doc(random_cheese(3, 12, 0.2))
    assert _svg(tmp_path, doc) == _svg(tmp_path, doc)


def test_render_parse_error(tmp_path):
    src = _write(tmp_path / "in.json", {"outer": 5})
    assert main(["render", src, str(tmp_path / "x.svg")]) == 2


def test_module_entry_point(tmp_path):
    out = subprocess.run(
        [sys.executable, "-m", "swisscheese", "gen", "--seed", "2", "--discs", "3"],
        capture_output=True, text=True, check=True,
    )
    assert len(json.loads(out.stdout)["discs"]) == 3
