import csv
import math
from pathlib import Path

import numpy as np
import pytest

from trigspline.cli import main
from trigspline.config import ConfigError, parse_config

EXAMPLE1 = """\
# u'' + C/(1+x) u' - x/(1+x) u = (C-2-x^2(1+x))/(1+x)^3
const C = {c}
family = even
r = 3
n = {n}
a = 0
b = 1
u_a = 0
u_b = .5
p1 = C/(1+x)
p2 = -x/(1+x)
f = (C-2-x^2*(1+x))/(1+x)^3
exact = x/(1+x)
"""

EXAMPLE3 = """\
family = odd1
r = 3
n = 9
a = 0
b = 1
u_a = 0
u_b = 0
p1 = 0
p2 = 1
f = -x
samples = 50
"""


def read_csv(path):
    with open(path) as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


class TestConfig:
    def test_example1_config(self):
        cfg = parse_config(EXAMPLE1.format(c=0, n=9))
        assert cfg.constants == {"C": 0.0}
        assert cfg.family.value == "even" and cfg.r == 3 and cfg.n == 9
        assert (cfg.a, cfg.b, cfg.u_a, cfg.u_b) == (0.0, 1.0, 0.0, 0.5)
        assert cfg.eps_tail == 1e-10 and cfg.m_cap == 10**6 and cfg.samples == 400

    def test_defaults(self):
        text = "\n".join(line for line in EXAMPLE3.splitlines() if not line.startswith(("family", "r ", "samples")))
        cfg = parse_config(text)
        assert cfg.family.value == "even" and cfg.r == 3 and cfg.samples == 400

    def test_missing_key_named(self):
        text = EXAMPLE1.format(c=0, n=9).replace("f = (C-2-x^2*(1+x))/(1+x)^3\n", "")
        with pytest.raises(ConfigError, match=r"missing required key\(s\): f"):
            parse_config(text)

    def test_odd_family_needs_zero_boundary(self):
        text = EXAMPLE3.replace("u_a = 0", "u_a = 1").replace("odd1", "odd0")
        with pytest.raises(ConfigError, match="zero boundary values") as info:
            parse_config(text)
        assert info.value.line == 6

    @pytest.mark.parametrize(
        "edit, message, line",
        [
            (("r = 3", "r = three"), "r must be an integer", 2),
            (("p2 = 1", "p2 = 1 +"), "p2", 9),
            (("p2 = 1", "bogus = 1"), "unknown key 'bogus'", 9),
            (("f = -x", "f = -x*K"), "unbound constant", 10),
            (("n = 9", "n = 9\nn = 10"), "duplicate key 'n'", 4),
            (("family = odd1", "family = cubic"), "family must be", 1),
            (("samples = 50", "samples = 1"), "samples must be >= 2", 11),
            (("r = 3", "r = 2"), "r >= 3", 2),
            (("b = 1", "b = 0"), "a < b", 5),
            (("r = 3", "r 3"), "expected 'key = value'", 2),
        ],
    )
    def test_errors_with_line_numbers(self, edit, message, line):
        with pytest.raises(ConfigError, match=message) as info:
            parse_config(EXAMPLE3.replace(*edit))
        assert info.value.line == line

    def test_constant_expressions(self):
        cfg = parse_config(EXAMPLE3.replace("b = 1", "b = pi/2").replace("family = odd1", "const K = 2*pi"))
        assert cfg.b == pytest.approx(math.pi / 2)
        assert cfg.constants["K"] == pytest.approx(2 * math.pi)

    def test_env_overrides_default_tolerance(self, monkeypatch):
        monkeypatch.setenv("TRIGSPLINE_EPS_TAIL", "1e-7")
        assert parse_config(EXAMPLE3).eps_tail == 1e-7
        assert parse_config(EXAMPLE3 + "eps_tail = 1e-9\n").eps_tail == 1e-9
        monkeypatch.setenv("TRIGSPLINE_EPS_TAIL", "abc")
        with pytest.raises(ConfigError):
            parse_config(EXAMPLE3)


class TestSolveCommand:
    def test_with_exact(self, tmp_path, capsys):
        cfg = tmp_path / "ex1.cfg"
        cfg.write_text(EXAMPLE1.format(c=10, n=17))
        assert main(["solve", str(cfg)]) == 0
        header, rows = read_csv(tmp_path / "ex1.csv")
        assert header == ["t", "x", "u_approx", "u_exact", "abs_err"]
        assert len(rows) == 401
        out = capsys.readouterr().out.strip()
        assert out.startswith("max_abs_err=")
        err = float(out.split("=")[1].split()[0])
        assert err <= 0.042
        assert err == pytest.approx(max(float(r[4]) for r in rows))
        # at least 12 significant digits in scientific notation
        assert all("e" in v and len(v.split("e")[0].replace("-", "").replace(".", "")) >= 12 for v in rows[5])

    def test_without_exact(self, tmp_path, capsys):
        cfg = tmp_path / "ex3.cfg"
        cfg.write_text(EXAMPLE3)
        out = tmp_path / "sub" / "u.csv"
        assert main(["solve", str(cfg), "--out", str(out)]) == 0
        header, rows = read_csv(out)
        assert header == ["t", "x", "u_approx"]
        assert len(rows) == 51
        assert capsys.readouterr().out == ""

    def test_csv_round_trip(self, tmp_path):
        from trigspline.bvp import solve

        cfg_path = tmp_path / "ex3.cfg"
        cfg_path.write_text(EXAMPLE3)
        assert main(["solve", str(cfg_path)]) == 0
        _, rows = read_csv(tmp_path / "ex3.csv")
        cfg = parse_config(EXAMPLE3)
        sol = solve(cfg.problem(), cfg.basis())
        x = np.array([float(r[1]) for r in rows])
        printed = [r[2] for r in rows]
        assert ["{:.16e}".format(v) for v in sol(x)] == printed

    def test_exit_codes(self, tmp_path):
        assert main(["solve", str(tmp_path / "missing.cfg")]) == 3
        bad = tmp_path / "bad.cfg"
        bad.write_text(EXAMPLE3.replace("p2 = 1", "bogus = 1"))
        assert main(["solve", str(bad)]) == 1
        numeric = tmp_path / "numeric.cfg"
        # the middle odd1 node sits at x = 0.5
        numeric.write_text(EXAMPLE3.replace("f = -x", "f = 1/(x-0.5)"))
        assert main(["solve", str(numeric)]) == 2
        assert main(["nonsense"]) == 1
        assert main(["solve", str(bad), "--out", str(tmp_path / "x.csv")]) == 1


class TestBasisCommand:
    def test_even_first_spline(self, tmp_path):
        out = tmp_path / "b.csv"
        assert main(["basis", "--family", "even", "--r", "1", "--n", "9", "--k", "1", "--q", "0", "--out", str(out)]) == 0
        header, rows = read_csv(out)
        assert header == ["t", "value"] and len(rows) == 401
        assert float(rows[0][0]) == 0.0
        # end spline equals 2 at its node; the interpolant halves it
        assert float(rows[0][1]) == pytest.approx(2.0, abs=1e-6)

    def test_odd0_cardinal(self, tmp_path):
        out = tmp_path / "b.csv"
        assert main(["basis", "--family", "odd0", "--r", "1", "--n", "9", "--k", "5", "--samples", "10", "--out", str(out)]) == 0
        _, rows = read_csv(out)
        t = np.array([float(r[0]) for r in rows])
        v = np.array([float(r[1]) for r in rows])
        nodes = np.arange(1, 10) * math.pi / 10
        on_node = np.isclose(t[:, None], nodes[None, :], atol=1e-12)
        hit = on_node.any(axis=1)
        assert np.allclose(v[hit], (np.argmax(on_node[hit], axis=1) == 4).astype(float), atol=1e-6)

    @pytest.mark.parametrize(
        "args",
        [
            ["--family", "even", "--r", "3", "--n", "9", "--k", "1", "--q", "3"],
            ["--family", "even", "--r", "3", "--n", "9", "--k", "10"],
            ["--family", "even", "--r", "3", "--n", "2", "--k", "1"],
            ["--family", "odd7", "--r", "3", "--n", "9", "--k", "1"],
        ],
    )
    def test_range_errors(self, args):
        assert main(["basis", *args]) == 1


class TestInterpCommand:
    def write_data(self, path, x, f, header="x,f"):
        path.write_text(header + "\n" + "".join(f"{float(a)!r},{float(b)!r}\n" for a, b in zip(x, f)))

    def test_sine_samples(self, tmp_path):
        x = (2 * np.arange(1, 10) - 1) * math.pi / 18
        data = tmp_path / "d.csv"
        self.write_data(data, x, np.sin(x))
        out = tmp_path / "i.csv"
        assert main(["interp", "--data", str(data), "--family", "odd1", "--r", "3", "--out", str(out)]) == 0
        _, rows = read_csv(out)
        t = np.array([float(r[0]) for r in rows])
        v = np.array([float(r[1]) for r in rows])
        assert np.abs(v - np.sin(t)).max() < 1e-2

    def test_mismatched_nodes(self, tmp_path):
        data = tmp_path / "d.csv"
        self.write_data(data, np.linspace(0.1, 3, 9), np.zeros(9))
        assert main(["interp", "--data", str(data), "--family", "odd1", "--r", "3"]) == 1

    def test_bad_header(self, tmp_path):
        data = tmp_path / "d.csv"
        self.write_data(data, [1.0], [0.0], header="a,b")
        assert main(["interp", "--data", str(data), "--family", "odd1", "--r", "3"]) == 1

    def test_missing_file(self, tmp_path):
        assert main(["interp", "--data", str(tmp_path / "no.csv"), "--family", "odd1", "--r", "3"]) == 3


def test_examples_command_single(tmp_path, capsys):
    assert main(["examples", "--id", "3", "--out-dir", str(tmp_path)]) == 0
    header, rows = read_csv(tmp_path / "example3_errors.csv")
    assert header == ["example", "variant", "r", "N", "max_abs_err"]
    assert len(rows) == 2 * 3 * 7
    best = {}
    for ex, variant, r, n, err in rows:
        key = (variant, int(r))
        best[key] = min(best.get(key, math.inf), float(err))
    assert best[("odd0", 3)] <= 0.00157
    assert best[("odd0", 4)] <= 0.00105
    assert best[("odd0", 5)] <= 0.00098
    assert best[("odd1", 3)] <= 0.0005 and best[("odd1", 4)] <= 0.0005
    assert (tmp_path / "example3.gp").read_text().count("using") == 7
    curves_header, curves = read_csv(tmp_path / "example3_curves.csv")
    assert curves_header[:2] == ["x", "u_exact"] and len(curves_header) == 8
    assert "NO" not in capsys.readouterr().out
