import json

import pytest

import zetaodd.bernoulli as bern
from zetaodd.cli import main

I1_30_DIGITS = "0.852556797635011581847042853192"
ZETA3_PREFIX = "1.2020569031595942853997381615"


@pytest.fixture(autouse=True)
def _isolated_global_state(monkeypatch):
    # cache-loading invocations swap the process-wide Bernoulli table;
    # put the original back so test order cannot matter
    monkeypatch.delenv("ZETAODD_CACHE", raising=False)
    saved = bern.default_table()
    yield
    bern.set_default_table(saved)


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


class TestWeights:
    def test_json_golden(self, capsys):
        rc, out, _ = run(capsys, "weights", "--m", "3", "--format", "json")
        assert rc == 0
        assert json.loads(out) == {
            "m": 3,
            "s_m": "-2",
            "weights": ["1", "-3", "2"],
        }

    def test_text(self, capsys):
        rc, out, _ = run(capsys, "weights", "--m", "5")
        assert rc == 0
        lines = out.splitlines()
        assert lines[0] == "m = 5"
        assert lines[1] == "s_m = 24"
        assert lines[2:] == [
            "w_1 = -1",
            "w_2 = 15",
            "w_3 = -50",
            "w_4 = 60",
            "w_5 = -24",
        ]

    def test_csv(self, capsys):
        rc, out, _ = run(capsys, "weights", "--m", "3", "--format", "csv")
        assert rc == 0
        assert out == "l,weight\n1,1\n2,-3\n3,2\n"

    def test_deterministic(self, capsys):
        rc1, out1, _ = run(capsys, "weights", "--m", "7", "--format", "json")
        rc2, out2, _ = run(capsys, "weights", "--m", "7", "--format", "json")
        assert (rc1, out1) == (rc2, out2)


class TestBernoulli:
    def test_single(self, capsys):
        rc, out, _ = run(capsys, "bernoulli", "--n", "2", "--l", "3")
        assert rc == 0
        assert out == "B(2, 3) = 2\n"

    def test_single_json(self, capsys):
        rc, out, _ = run(
            capsys, "bernoulli", "--n", "4", "--l", "1", "--format", "json"
        )
        assert rc == 0
        assert json.loads(out) == {"n": 4, "l": 1, "value": "-1/30"}

    def test_rectangle_csv(self, capsys):
        rc, out, _ = run(
            capsys, "bernoulli", "--max-n", "2", "--max-l", "2", "--format", "csv"
        )
        assert rc == 0
        assert out == (
            "n,l,value\n"
            "0,1,1\n"
            "1,1,-1/2\n"
            "2,1,1/6\n"
            "0,2,1\n"
            "1,2,-1\n"
            "2,2,5/6\n"
        )

    def test_mode_flags_are_exclusive(self, capsys):
        rc, _, err = run(capsys, "bernoulli", "--n", "2")
        assert rc == 2
        assert "usage error" in err
        rc, _, err = run(
            capsys, "bernoulli", "--n", "2", "--l", "3", "--max-n", "4", "--max-l", "4"
        )
        assert rc == 2


class TestTau:
    def test_json(self, capsys):
        rc, out, _ = run(capsys, "tau", "--m", "5", "--format", "json")
        assert rc == 0
        assert json.loads(out) == {"m": 5, "taus": {"2": "-1/93", "3": "1/31"}}

    def test_even_degree_rejected(self, capsys):
        rc, _, err = run(capsys, "tau", "--m", "4")
        assert rc == 2
        assert "odd" in err


class TestIntegral:
    def test_default_digits(self, capsys):
        rc, out, _ = run(capsys, "integral", "--n", "1")
        assert rc == 0
        lines = out.splitlines()
        assert lines[0] == f"I_1 = {I1_30_DIGITS}"
        mantissa = I1_30_DIGITS.partition(".")[2]
        assert len(mantissa.lstrip("0")) == 30
        assert lines[1].startswith("error estimate = ")
        assert lines[2].startswith("nodes = ")

    def test_json_fields(self, capsys):
        rc, out, _ = run(capsys, "integral", "--n", "2", "--format", "json")
        assert rc == 0
        payload = json.loads(out)
        assert payload["n"] == 2
        assert payload["digits"] == 30
        assert payload["value"].startswith("0.61418313915610699755114334408")
        assert payload["nodes"] > 0
        assert payload["levels"] >= 2

    def test_more_digits(self, capsys):
        rc, out, _ = run(capsys, "integral", "--n", "1", "--digits", "40")
        assert rc == 0
        value = out.splitlines()[0].partition(" = ")[2]
        assert value == "0.8525567976350115818470428531923337461160"

    def test_domain(self, capsys):
        rc, _, err = run(capsys, "integral", "--n", "0")
        assert rc == 2
        assert "requires --n >= 1" in err


class TestZeta:
    def test_all_methods_json(self, capsys):
        rc, out, _ = run(capsys, "zeta", "--m", "3", "--format", "json")
        assert rc == 0
        payload = json.loads(out)
        assert list(payload) == [
            "m",
            "reference",
            "via_exp_kernel",
            "via_asech_kernel",
            "max_abs_diff",
            "pass",
        ]
        assert payload["m"] == 3
        assert payload["pass"] is True
        for key in ("reference", "via_exp_kernel", "via_asech_kernel"):
            assert payload[key].startswith(ZETA3_PREFIX)

    def test_single_method(self, capsys):
        rc, out, _ = run(capsys, "zeta", "--m", "3", "--method", "reference")
        assert rc == 0
        assert out.startswith(f"zeta(3) [reference] = {ZETA3_PREFIX}")

    def test_even_degree_rejected(self, capsys):
        rc, _, err = run(capsys, "zeta", "--m", "4")
        assert rc == 2
        assert "odd" in err


class TestScan:
    def test_csv_golden(self, capsys):
        rc, out, _ = run(capsys, "scan", "--to", "3", "--format", "csv")
        assert rc == 0
        assert out == (
            "n,tau_numerator,tau_denominator,is_zero\n"
            "1,1,7,false\n"
            "2,1,31,false\n"
            "3,1,127,false\n"
        )

    def test_json_summary(self, capsys):
        rc, out, _ = run(capsys, "scan", "--to", "5", "--format", "json")
        assert rc == 0
        payload = json.loads(out)
        assert payload["all_nonzero"] is True
        assert len(payload["rows"]) == 5
        assert payload["rows"][0] == {
            "n": 1, "m": 3, "tau_top": "1/7", "is_zero": False,
        }
        assert "nonzero" in payload["summary"]


class TestLinform:
    def test_json_golden(self, capsys):
        rc, out, _ = run(capsys, "linform", "--n", "2", "--format", "json")
        assert rc == 0
        assert json.loads(out) == {
            "n": 2,
            "thetas": ["7/3", "31"],
            "theta_next": "1",
        }

    def test_text(self, capsys):
        rc, out, _ = run(capsys, "linform", "--n", "1")
        assert rc == 0
        assert out == "n = 1\ntheta_1 = 7\ntheta_next = 1\n"


class TestVerify:
    def test_subset_runs_green(self, capsys):
        rc, out, _ = run(capsys, "verify", "--suite", "1,2,11")
        assert rc == 0
        lines = out.splitlines()
        assert len(lines) == 4
        assert all(" PASS " in line for line in lines[:3])
        assert lines[3] == "3/3 checks passed"

    def test_subset_json(self, capsys):
        rc, out, _ = run(capsys, "verify", "--suite", "1,2", "--format", "json")
        assert rc == 0
        payload = json.loads(out)
        assert payload["all_passed"] is True
        assert [r["id"] for r in payload["results"]] == [1, 2]
        for r in payload["results"]:
            assert r["passed"] is True
            assert "elapsed" not in r  # keeps JSON deterministic

    def test_unknown_id(self, capsys):
        rc, _, err = run(capsys, "verify", "--suite", "99")
        assert rc == 2
        assert "unknown check ids" in err

    def test_malformed_suite(self, capsys):
        rc, _, err = run(capsys, "verify", "--suite", "1;2")
        assert rc == 2


class TestCommonFlags:
    def test_digits_floor(self, capsys):
        rc, _, err = run(capsys, "weights", "--m", "3", "--digits", "10")
        assert rc == 2
        assert "--digits must be >= 15" in err

    def test_unknown_command_exits_via_argparse(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2


class TestCacheFlow:
    def test_write_reload_tamper(self, capsys, tmp_path, monkeypatch):
        cache = tmp_path / "bern.cache"

        rc, _, err = run(
            capsys, "bernoulli", "--max-n", "4", "--max-l", "4",
            "--cache", str(cache),
        )
        assert rc == 0
        assert f"wrote 20 entries to {cache}" in err
        assert cache.exists()

        rc, out, err = run(capsys, "bernoulli", "--n", "3", "--l", "2",
                           "--cache", str(cache))
        assert rc == 0
        assert f"loaded 20 cache entries from {cache}" in err
        assert out == "B(3, 2) = -1/2\n"

        lines = cache.read_text().splitlines()
        assert lines[0].startswith("B ")
        target = next(i for i, ln in enumerate(lines) if ln == "B 2 3 2")
        lines[target] = "B 2 3 5/3"
        cache.write_text("\n".join(lines) + "\n")

        rc, _, err = run(capsys, "bernoulli", "--n", "3", "--l", "2",
                         "--cache", str(cache))
        assert rc == 1
        assert "cache error" in err

        rc, out, _ = run(capsys, "bernoulli", "--n", "2", "--l", "3",
                         "--cache", str(cache), "--trust-cache")
        assert rc == 0
        assert out == "B(2, 3) = 5/3\n"  # trusted load takes the file's word

    def test_env_var_overrides(self, capsys, tmp_path, monkeypatch):
        cache = tmp_path / "env.cache"
        rc, _, _ = run(
            capsys, "bernoulli", "--max-n", "2", "--max-l", "2",
            "--cache", str(cache),
        )
        assert rc == 0
        monkeypatch.setenv("ZETAODD_CACHE", str(cache))
        rc, _, err = run(capsys, "weights", "--m", "3")
        assert rc == 0
        assert f"loaded 6 cache entries from {cache}" in err
