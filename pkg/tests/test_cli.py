import json

import pytest

from fracmoment.cli import main, parse_k
from fracmoment.errors import DomainError


def run(args):
    return main(args)


class TestParseK:
    def test_literal(self):
        from fractions import Fraction

        assert parse_k("1/2") == Fraction(1, 2)
        assert parse_k("2/4") == Fraction(1, 2)
        assert parse_k("1") == Fraction(1)

    def test_rejects(self):
        with pytest.raises(DomainError):
            parse_k("3/2")
        with pytest.raises(DomainError):
            parse_k("0/5")
        with pytest.raises(DomainError):
            parse_k("x")


class TestVerifyCommands:
    def test_convolution_gate(self):
        assert run(["verify", "convolution", "--s", "3", "--nmax", "10000"]) == 0

    def test_orthogonality_gate(self):
        assert run(["verify", "orthogonality", "--qmax", "31"]) == 0

    def test_exponents_gate(self):
        assert run(["verify", "exponents", "--trials", "5"]) == 0

    def test_perron_gate(self):
        assert run(["verify", "perron"]) == 0

    def test_dft_gate(self):
        assert run(["verify", "dft", "--q", "101"]) == 0

    def test_eta_gate(self):
        assert run(["verify", "eta", "--s", "1", "--levels", "10000,100000"]) == 0


class TestMomentsCommand:
    def test_composite_modulus_exits_2(self):
        assert run(["moments", "--q", "4"]) == 2

    def test_small_moment(self, tmp_path):
        out = tmp_path / "m.json"
        assert run(["moments", "--q", "101", "--k", "1/2", "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert doc["params"]["q"] == 101
        assert doc["moment"] > 0
        assert doc["regime_flag"] is False

    def test_bad_k_exits_2(self):
        assert run(["moments", "--q", "101", "--k", "3/2"]) == 2


class TestHolderCommand:
    def test_schema_and_gate(self, tmp_path):
        out = tmp_path / "h.json"
        assert run(["holder", "--q", "1009", "--k", "1/2", "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert set(doc["params"]) == {"q", "r", "s", "x", "y", "a", "method"}
        assert set(doc["s_lower"]) == {"re", "im"}
        assert set(doc["p4"]) == {"lhs", "rhs"}
        assert set(doc["holder"]) == {"f1", "f2", "f3", "slack", "pass"}
        assert "regime_flag" in doc and "moment" in doc
        assert doc["holder"]["pass"] is True

    def test_small_q_with_adjusted_y(self, tmp_path):
        # the default y = 2 bundle violates the diagonal regime at q = 101;
        # a shorter polynomial restores x^{2r} < q
        out = tmp_path / "h.json"
        assert run(["holder", "--q", "101", "--k", "1/2", "--y", "1.5",
                    "--out", str(out)]) == 0
        assert run(["holder", "--q", "101", "--k", "1/2"]) == 2

    def test_byte_identical_reruns(self, tmp_path):
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        run(["holder", "--q", "1009", "--k", "1/2", "--out", str(a)])
        run(["holder", "--q", "1009", "--k", "1/2", "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()


class TestSurveyCommand:
    def test_csv_header_and_determinism(self, tmp_path):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        assert run(["survey", "--k", "1/2", "--primes", "101,1009", "--out", str(a)]) == 0
        run(["survey", "--k", "1/2", "--primes", "101,1009", "--out", str(b)])
        text = a.read_text()
        assert text.splitlines()[0] == "q,moment_over_phi,logq_pow_k2,ratio"
        assert len(text.splitlines()) == 3
        assert a.read_bytes() == b.read_bytes()


class TestContourCommand:
    def test_hankel(self, tmp_path):
        out = tmp_path / "c.json"
        assert run(["contour", "--check", "hankel", "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert doc["pass"] is True


class TestDumpCoeffs:
    def test_dalpha_csv(self, tmp_path):
        out = tmp_path / "d.csv"
        assert run(["dump-coeffs", "--series", "dalpha", "--alpha", "1/2",
                    "--nmax", "4", "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "n,value"
        assert lines[1].startswith("1,1")
        assert lines[2].startswith("2,0.5")
        assert lines[4].startswith("4,0.375")

    def test_sigma_csv_complex(self, tmp_path):
        out = tmp_path / "s.csv"
        assert run(["dump-coeffs", "--series", "sigma", "--shifts", "0.5",
                    "--s", "1", "--nmax", "3", "--out", str(out)]) == 0
        assert out.read_text().splitlines()[0] == "n,re,im"


class TestLValueExport:
    def test_lvalues_csv(self, tmp_path):
        out = tmp_path / "m.json"
        lv = tmp_path / "lv.csv"
        assert run(["moments", "--q", "101", "--k", "1/2", "--out", str(out),
                    "--lvalues-out", str(lv)]) == 0
        lines = lv.read_text().splitlines()
        assert lines[0] == "q,j,parity,ReL,ImL,Lsq,method,err"
        assert len(lines) == 100  # header + q-2 non-principal characters
        assert lines[1].startswith("101,1,")


class TestSweepExport:
    def test_quarter_sweep_csv(self, tmp_path):
        sw = tmp_path / "sweep.csv"
        out = tmp_path / "c.json"
        code = run(["contour", "--check", "quarter", "--y", "1e3",
                    "--sweep", "1e3,1e4", "--sweep-out", str(sw), "--out", str(out)])
        assert code == 0
        lines = sw.read_text().splitlines()
        assert lines[0] == "y,value,oracle,ratio"
        assert len(lines) == 3


class TestThreads:
    def test_worker_env_preserves_results(self, tmp_path, monkeypatch):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        run(["survey", "--k", "1/2", "--primes", "101,151", "--out", str(a)])
        monkeypatch.setenv("FRACMOMENT_THREADS", "4")
        run(["survey", "--k", "1/2", "--primes", "101,151", "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()


class TestExitCodes:
    def test_io_error_exits_3(self):
        code = run(["moments", "--q", "101", "--k", "1/2",
                    "--out", "/nonexistent-dir/report.json"])
        assert code == 3

    def test_usage_error_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            run(["no-such-command"])
        assert exc.value.code == 2
