"""Testes de ponta a ponta da CLI (fit, simulate, bench) e dos códigos de saída."""

import json

import numpy as np
import pandas as pd
import pytest

from config import ExitCode
from main import main
from simulation.data_generators import gen_coefficients, gen_design, gen_response
from utils.json_helpers import dumps_stable


@pytest.fixture
def fit_files(tmp_path):
    """CSV de design (com cabeçalho), resposta e grupos contíguos."""
    raw = gen_design(150, 6, 4, 0.5, seed=3)
    beta = gen_coefficients(6, 4, 2, 2, "homogeneous", seed=3)
    response, _ = gen_response(raw, beta, 0.5, 50.0, seed=3)
    columns = [f"x{j}" for j in range(raw.shape[1])]
    pd.DataFrame(raw, columns=columns).to_csv(tmp_path / "X.csv", index=False)
    pd.DataFrame({"y": response}).to_csv(tmp_path / "y.csv", index=False)
    (tmp_path / "groups.json").write_text(json.dumps({"sizes": [4] * 6}))
    return tmp_path, raw, response, beta


def _fit_args(root, *extra):
    return [
        "fit",
        "--x", str(root / "X.csv"),
        "--y", str(root / "y.csv"),
        "--groups", str(root / "groups.json"),
        "--out", str(root / "fit.json"),
        "--workers", "1",
        *extra,
    ]


class TestFit:
    def test_happy_path(self, fit_files):
        root, _, _, beta = fit_files
        extra = ["--trace", str(root / "trace.csv"), "--qq", str(root / "qq.csv"), "--constants", "practical"]
        code = main(_fit_args(root, *extra))
        assert code == ExitCode.SUCCESS

        payload = json.loads((root / "fit.json").read_text())
        assert len(payload["coefficients"]) == 24
        assert payload["support"] == list(beta.support)
        assert payload["group_support"] == list(beta.group_support)
        assert payload["s0_selected"] in (1, 2, 3, 4)
        assert [row["s0"] for row in payload["ic_table"]] == [1, 2, 3, 4]
        assert payload["column_names"][0] == "x0"
        assert payload["notes"] == []
        assert dumps_stable(payload) == (root / "fit.json").read_text()

        trace = pd.read_csv(root / "trace.csv")
        assert trace["t"].tolist() == list(range(len(trace)))
        assert list(pd.read_csv(root / "qq.csv").columns) == ["theoretical", "sample"]

    def test_fixed_s0_single_candidate(self, fit_files):
        root, *_ = fit_files
        assert main(_fit_args(root, "--s0", "2")) == ExitCode.SUCCESS
        payload = json.loads((root / "fit.json").read_text())
        assert payload["s0_selected"] == 2
        assert len(payload["ic_table"]) == 1

    def test_output_is_reproducible(self, fit_files):
        root, *_ = fit_files
        main(_fit_args(root))
        first = (root / "fit.json").read_bytes()
        main(_fit_args(root))
        assert (root / "fit.json").read_bytes() == first

    def test_y_column_from_design_file(self, fit_files):
        root, raw, response, _ = fit_files
        combined = pd.DataFrame(raw, columns=[f"x{j}" for j in range(raw.shape[1])])
        combined.insert(0, "target", response)
        combined.to_csv(root / "Xy.csv", index=False)
        args = _fit_args(root)
        args[args.index("--x") + 1] = str(root / "Xy.csv")
        args[args.index("--y") : args.index("--y") + 2] = ["--y-column", "target"]
        assert main(args) == ExitCode.SUCCESS
        expected = json.loads((root / "fit.json").read_text())
        main(_fit_args(root))
        assert json.loads((root / "fit.json").read_text())["coefficients"] == expected["coefficients"]

    def test_membership_returns_original_column_order(self, fit_files):
        root, raw, response, _ = fit_files
        main(_fit_args(root, "--s0", "2"))
        contiguous = json.loads((root / "fit.json").read_text())["coefficients"]

        # intercala as colunas: a coluna original k vai para a posição order[k]
        order = np.random.default_rng(0).permutation(24)
        shuffled = np.empty_like(raw)
        shuffled[:, order] = raw
        labels = np.empty(24, dtype=int)
        labels[order] = np.repeat(np.arange(6), 4)
        pd.DataFrame(shuffled).to_csv(root / "X.csv", index=False, header=False)
        (root / "groups.json").write_text(json.dumps({"membership": labels.tolist()}))

        assert main(_fit_args(root, "--s0", "2")) == ExitCode.SUCCESS
        permuted = np.array(json.loads((root / "fit.json").read_text())["coefficients"])
        assert permuted[order] == pytest.approx(np.array(contiguous), rel=1e-9, abs=1e-12)

    def test_membership_group_support_uses_original_labels(self, fit_files):
        root, raw, _, beta = fit_files
        order = np.random.default_rng(1).permutation(24)
        shuffled = np.empty_like(raw)
        shuffled[:, order] = raw
        labels = np.empty(24, dtype=int)
        labels[order] = 7 * np.repeat(np.arange(6), 4) + 3  # rótulos 3, 10, ..., 38
        pd.DataFrame(shuffled).to_csv(root / "X.csv", index=False, header=False)
        (root / "groups.json").write_text(json.dumps({"membership": labels.tolist()}))

        assert main(_fit_args(root, "--constants", "practical")) == ExitCode.SUCCESS
        payload = json.loads((root / "fit.json").read_text())
        assert payload["group_support"] == [7 * j + 3 for j in beta.group_support]
        assert payload["support"] == sorted(int(order[i]) for i in beta.support)

    def test_unknown_constants_rejected(self, fit_files):
        root, *_ = fit_files
        with pytest.raises(SystemExit):
            main(_fit_args(root, "--constants", "loose"))

    def test_zero_response(self, fit_files):
        root, *_ = fit_files
        (root / "y.csv").write_text("y\n" + "0\n" * 150)
        assert main(_fit_args(root)) == ExitCode.SUCCESS
        payload = json.loads((root / "fit.json").read_text())
        assert not any(payload["coefficients"])
        assert payload["support"] == []
        assert any("degenerate" in note for note in payload["notes"])

    def test_malformed_csv(self, fit_files):
        root, *_ = fit_files
        (root / "X.csv").write_text("a,b\n1,2\n3,abc\n")
        assert main(_fit_args(root)) == ExitCode.VALIDATION_ERROR

    def test_groups_not_covering_design(self, fit_files):
        root, *_ = fit_files
        (root / "groups.json").write_text(json.dumps({"sizes": [4] * 5}))
        assert main(_fit_args(root)) == ExitCode.VALIDATION_ERROR

    def test_row_count_mismatch(self, fit_files):
        root, *_ = fit_files
        (root / "y.csv").write_text("y\n1\n2\n")
        assert main(_fit_args(root)) == ExitCode.VALIDATION_ERROR

    def test_zero_column(self, fit_files):
        root, raw, *_ = fit_files
        raw = raw.copy()
        raw[:, 5] = 0.0
        pd.DataFrame(raw).to_csv(root / "X.csv", index=False, header=False)
        assert main(_fit_args(root)) == ExitCode.VALIDATION_ERROR

    def test_invalid_kappa(self, fit_files):
        root, *_ = fit_files
        assert main(_fit_args(root, "--kappa", "1.5")) == ExitCode.VALIDATION_ERROR

    def test_empty_grid(self, fit_files):
        root, *_ = fit_files
        assert main(_fit_args(root, "--s0-grid", "0,9")) == ExitCode.VALIDATION_ERROR


class TestSimulate:
    def test_preset_to_stdout(self, capsys):
        assert main(["simulate", "--preset", "smoke", "--reps", "2", "--workers", "1"]) == ExitCode.SUCCESS
        lines = capsys.readouterr().out.splitlines()
        assert lines[0].startswith("scenario_id,rep,se,gse,mcc,ee")
        assert len(lines) == 1 + 2 + 2
        assert lines[-2].startswith("smoke,mean,")

    def test_byte_identical_files(self, tmp_path):
        args = ["simulate", "--preset", "smoke", "--reps", "2", "--workers", "2", "--out"]
        assert main([*args, str(tmp_path / "a.csv")]) == ExitCode.SUCCESS
        assert main([*args, str(tmp_path / "b.csv")]) == ExitCode.SUCCESS
        assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()

    def test_scenario_file_and_sweep(self, tmp_path):
        scenario = {"n": 80, "m": 10, "d": 4, "s": 2, "s0": 2, "snr": 10, "replications": 1}
        (tmp_path / "tiny.json").write_text(json.dumps(scenario))
        out = tmp_path / "curve.csv"
        code = main(
            ["simulate", str(tmp_path / "tiny.json"), "--sweep", "snr=5,10", "--s0", "2",
             "--workers", "1", "--out", str(out)]
        )
        assert code == ExitCode.SUCCESS
        frame = pd.read_csv(out)
        assert frame["scenario_id"].tolist() == ["tiny[snr=5]", "tiny[snr=10]"]
        assert frame["replications_ok"].tolist() == [1, 1]

    def test_invalid_scenario(self, tmp_path):
        (tmp_path / "bad.json").write_text(json.dumps({"n": 80, "m": 2, "d": 4, "s": 3, "s0": 2, "snr": 10}))
        assert main(["simulate", str(tmp_path / "bad.json")]) == ExitCode.VALIDATION_ERROR

    def test_unknown_preset(self):
        assert main(["simulate", "--preset", "nope"]) == ExitCode.VALIDATION_ERROR

    def test_missing_scenario(self):
        assert main(["simulate"]) == ExitCode.VALIDATION_ERROR


class TestBench:
    def test_operator_properties(self, tmp_path, capsys):
        out = tmp_path / "bench.json"
        code = main(["bench", "--quick", "--only", "operator_properties", "--workers", "1", "--out", str(out)])
        assert code == ExitCode.SUCCESS
        assert capsys.readouterr().out.startswith("PASS operator_properties")
        outcomes = json.loads(out.read_text())
        assert outcomes[0]["name"] == "operator_properties"
        assert outcomes[0]["passed"] is True

    def test_unknown_check_is_rejected_by_parser(self):
        with pytest.raises(SystemExit):
            main(["bench", "--only", "nope"])
