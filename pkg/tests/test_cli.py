import json
from importlib import resources

import jsonschema
import pytest

from salemlat import gallery
from salemlat.cli import main, parse_int_list
from salemlat.io import SystemFormatError, dumps, load_system, parse_system, system_to_json

SCHEMA = json.loads(resources.files("salemlat").joinpath(
    "schemas/analysis_report.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, data):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return str(p)


class TestIO:
    def test_big_ints_as_strings(self):
        data = {"rank": 1, "gram": [[str(2 ** 60)]], "matrix": [[1]]}
        n, gram, matrix = parse_system(data)
        assert gram == [[2 ** 60]] and matrix == [[1]]

    @pytest.mark.parametrize("bad", [
        [], {"gram": [[1, 2]]}, {"rank": 1, "gram": [[1.5]], "matrix": [[1]]},
        {"rank": 2, "gram": [[1, 0], [0, 1]]}, {"rank": 1, "gram": [[True]], "matrix": [[1]]},
    ])
    def test_rejects(self, bad):
        with pytest.raises(SystemFormatError):
            parse_system(bad)

    @pytest.mark.parametrize("name", gallery.names())
    def test_roundtrip(self, tmp_path, name):
        text = dumps(system_to_json(gallery.builtin(name)))
        assert dumps(json.loads(text)) == text
        if "matrix" in json.loads(text):
            p = tmp_path / "s.json"
            p.write_text(text)
            assert dumps(system_to_json(load_system(str(p)))) == text


def test_parse_int_list():
    assert parse_int_list("1,-3,1") == [1, -3, 1]
    assert parse_int_list("−1, 1") == [-1, 1]
    with pytest.raises(ValueError):
        parse_int_list("1,x")


class TestAnalyze:
    def test_weyl13_roundtrip(self, capsys, tmp_path):
        path = str(tmp_path / "w.json")
        assert run(capsys, "gallery", "show", "weyl13", "--emit", path)[0] == 0
        code, out, _ = run(capsys, "analyze", path, "--json")
        assert code == 0
        rep = json.loads(out)
        jsonschema.validate(rep, SCHEMA)
        assert float(rep["entropy"]) > 0 and rep["distinguished"]["rank"] == 2
        assert rep["span_certificate"]["kind"] == "Impossible"
        # same report from the gallery name
        assert run(capsys, "analyze", "weyl13", "--json")[1] == out

    def test_identity(self, capsys, tmp_path):
        path = write(tmp_path, "id.json", {"rank": 2, "gram": [[1, 0], [0, -1]],
                                           "matrix": [[1, 0], [0, 1]]})
        code, out, _ = run(capsys, "analyze", path, "--json")
        rep = json.loads(out)
        jsonschema.validate(rep, SCHEMA)
        assert code == 0 and float(rep["entropy"]) == 0
        assert rep["distinguished"] is None and rep["salem_factor"] is None

    def test_not_isometry(self, capsys, tmp_path):
        path = write(tmp_path, "bad.json", {"rank": 2, "gram": [[0, 1], [1, 0]],
                                            "matrix": [[1, 1], [0, 1]]})
        code, out, err = run(capsys, "analyze", path)
        assert code == 2 and out == ""
        assert "(1, 1)" in err

    def test_unexpected_factor(self, capsys, tmp_path):
        # t^2 - t - 1 is not reciprocal; only the zero form is preserved
        path = write(tmp_path, "fib.json", {"rank": 2, "gram": [[0, 0], [0, 0]],
                                            "matrix": [[0, 1], [1, 1]]})
        code, _, err = run(capsys, "analyze", path)
        assert code == 2 and "non-Salem" in err

    def test_invalid_json(self, capsys, tmp_path):
        p = tmp_path / "x.json"
        p.write_text("{not json")
        assert run(capsys, "analyze", str(p))[0] == 1
        assert run(capsys, "analyze", str(tmp_path / "missing.json"))[0] == 1

    @pytest.mark.parametrize("name", gallery.system_names())
    def test_schema_all(self, capsys, name):
        code, out, _ = run(capsys, "analyze", name, "--json")
        assert code == 0
        jsonschema.validate(json.loads(out), SCHEMA)

    def test_with_recursion(self, capsys):
        code, out, _ = run(capsys, "analyze", "torus", "--json", "--start=2,1,0,0,1,1")
        rep = json.loads(out)
        jsonschema.validate(rep, SCHEMA)
        r = rep["recursion"]
        assert float(r["rate"]) <= float(r["rate_bound"]) + 1e-9
        assert float(r["eigen_residual"]) < 1e-8

    def test_no_convergence(self, capsys):
        assert run(capsys, "analyze", "torus", "--start=2,1,0,0,1,1", "--max-iter", "2")[0] == 3

    def test_text_sections_in_order(self, capsys):
        code, out, _ = run(capsys, "analyze", "torus", "--text")
        idx = [out.index(f"[{i}]") for i in range(1, 5)]
        assert code == 0 and idx == sorted(idx)
        assert "1.92484730024" in out


class TestPoly:
    def test_salem(self, capsys):
        code, out, _ = run(capsys, "poly", "classify", "1,-3,1")
        assert code == 0 and "kind: Salem" in out and "2.61803398875" in out

    def test_cyclotomic(self, capsys):
        assert "n: 1" in run(capsys, "poly", "classify", "--", "-1,1")[1]
        code, out, _ = run(capsys, "poly", "classify", "1,1,1", "--json")
        assert json.loads(out)["cyclotomic_factors"] == [[3, 1]]

    def test_parse_error(self, capsys):
        assert run(capsys, "poly", "classify", "1,a")[0] == 1
        assert run(capsys, "poly", "classify", "1,2")[0] == 1  # 2t + 1 is not monic


class TestEnumerate:
    def test_mcmullen(self, capsys):
        code, out, _ = run(capsys, "enumerate", "mcmullen-sublattice", "--norm", "-2")
        assert code == 0 and out == "-1 0\n1 0\ncount: 2\n"

    def test_files(self, capsys, tmp_path):
        p = write(tmp_path, "g.json", {"rank": 2, "gram": [[-1, 0], [0, -1]]})
        assert run(capsys, "enumerate", p, "--norm", "-1")[1].endswith("count: 4\n")
        p = write(tmp_path, "g2.json", {"rank": 1, "gram": [[-2]]})
        assert run(capsys, "enumerate", p, "--norm", "-1")[1] == "count: 0\n"

    def test_not_definite(self, capsys):
        assert run(capsys, "enumerate", "wehler-gram", "--norm", "-2")[0] == 1


class TestGallery:
    def test_list(self, capsys):
        code, out, _ = run(capsys, "gallery", "list")
        assert code == 0 and len(out.split()) >= 5

    def test_show_wehler_gram(self, capsys):
        out = json.loads(run(capsys, "gallery", "show", "wehler-gram")[1])
        assert out["gram"] == [[0, 2, 2], [2, 0, 2], [2, 2, 0]]

    def test_byte_stable(self, capsys, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        run(capsys, "gallery", "show", "kummer", "--emit", str(a))
        run(capsys, "gallery", "show", "kummer", "--emit", str(b))
        assert a.read_bytes() == b.read_bytes()

    def test_unknown(self, capsys):
        assert run(capsys, "gallery", "show", "nope")[0] == 1


class TestIterateAndOrbit:
    def test_iterate(self, capsys):
        code, out, _ = run(capsys, "iterate", "weyl13", "--json",
                           "--start=3,1,1,1,0,0,0,0,0,0,0,0,0")
        r = json.loads(out)
        assert code == 0 and r["converged"]
        assert float(r["rate"]) <= float(r["rate_bound"]) + 0.05

    def test_iterate_zero_entropy(self, capsys, tmp_path):
        p = write(tmp_path, "id.json", {"rank": 1, "gram": [[1]], "matrix": [[1]]})
        assert run(capsys, "iterate", p, "--start=1")[0] == 2

    def test_orbit_span(self, capsys):
        assert run(capsys, "orbit", "span", "salem-quadratic")[1] == "Spanning 1 1\n"
        code, out, _ = run(capsys, "orbit", "span", "torus", "--json")
        assert json.loads(out)["kind"] == "Impossible"
        assert run(capsys, "orbit", "span", "torus", "--class=1,2,3,4,5,7")[1] == "3\n"

    def test_bad_vector(self, capsys):
        assert run(capsys, "orbit", "span", "torus", "--class=1,2")[0] == 1

    def test_usage_error_exit_code(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 1
