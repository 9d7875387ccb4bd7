import json

import pytest

from gsfm.cli import main


def _read_csv(path):
    metadata = {}
    rows = []
    columns = None
    for line in path.read_text().splitlines():
        if line.startswith("# "):
            key, _, value = line[2:].partition("=")
            metadata[key] = value
        elif columns is None:
            columns = line.split(",")
        else:
            rows.append(line.split(","))
    return metadata, columns, rows


def test_magnetization_roundtrip(tmp_path):
    out = tmp_path / "mag.csv"
    code = main(
        ["magnetization", "--n", "2", "--points", "9", "--out", str(out)]
    )
    assert code == 0
    metadata, columns, rows = _read_csv(out)
    assert metadata["command"] == "magnetization"
    assert metadata["n"] == "2"
    assert metadata["h"] == "0.2"
    assert metadata["points"] == "9"
    assert columns == ["x", "mag_abs_per_site"]
    assert len(rows) == 9
    assert float(rows[0][0]) == 0.0
    assert float(rows[-1][0]) == 4.0


def test_reruns_are_byte_identical(tmp_path):
    args = ["magnetization", "--n", "3", "--points", "5"]
    one = tmp_path / "one.csv"
    two = tmp_path / "two.csv"
    assert main(args + ["--out", str(one)]) == 0
    assert main(args + ["--out", str(two)]) == 0
    assert one.read_bytes() == two.read_bytes()


def test_json_document_structure(tmp_path):
    out = tmp_path / "mag.json"
    code = main(
        ["magnetization", "--n", "2", "--points", "5", "--json", "--out", str(out)]
    )
    assert code == 0
    doc = json.loads(out.read_text())
    assert set(doc) == {"metadata", "columns", "rows"}
    assert doc["metadata"]["command"] == "magnetization"
    assert doc["columns"] == ["x", "mag_abs_per_site"]
    assert len(doc["rows"]) == 5
    assert doc["rows"][0][0] == 0.0


def test_reversed_window_fails_with_param_code(tmp_path):
    out = tmp_path / "mag.csv"
    code = main(
        [
            "magnetization",
            "--x-min",
            "3",
            "--x-max",
            "1",
            "--out",
            str(out),
        ]
    )
    assert code == 2
    assert not out.exists()


def test_unwritable_output_fails_with_io_code(tmp_path):
    out = tmp_path / "no" / "such" / "dir" / "mag.csv"
    code = main(["magnetization", "--n", "2", "--points", "5", "--out", str(out)])
    assert code == 3


def test_missing_out_flag_is_an_argparse_error():
    with pytest.raises(SystemExit):
        main(["magnetization"])


def test_fidelity_scan_single_setting(tmp_path):
    out = tmp_path / "scan.csv"
    code = main(
        [
            "fidelity-scan",
            "--n",
            "2",
            "--t",
            "5",
            "--m",
            "20",
            "--points",
            "7",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    metadata, columns, rows = _read_csv(out)
    assert columns == ["x", "F", "F_approx", "F_approx_div2"]
    assert metadata["t"] == "5.0"
    assert metadata["m"] == "20"
    assert metadata["reference"] == "exact"
    assert len(rows) == 7
    for row in rows:
        f, fa, fa2 = float(row[1]), float(row[2]), float(row[3])
        assert 0.0 <= f <= 1.0
        assert fa2 == pytest.approx(1.0 - (1.0 - fa) * 2.0, abs=1e-12)


def test_fidelity_scan_preset_writes_three_files(tmp_path):
    out = tmp_path / "scan.csv"
    code = main(
        [
            "fidelity-scan",
            "--n",
            "2",
            "--preset",
            "fig2b",
            "--points",
            "3",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == [
        "scan_T1000_M10000.csv",
        "scan_T100_M1000.csv",
        "scan_T10_M100.csv",
    ]


def test_infidelity_rows_and_rule_echo(tmp_path):
    out = tmp_path / "infid.csv"
    code = main(
        [
            "infidelity-vs-t",
            "--n",
            "2",
            "--t-list",
            "5,10",
            "--m",
            "fixed:20",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    metadata, columns, rows = _read_csv(out)
    assert columns == ["T", "M", "infid", "infid_approx"]
    assert metadata["m_rule"] == "fixed:20"
    assert [r[1] for r in rows] == ["20", "20"]
    assert [float(r[0]) for r in rows] == [5.0, 10.0]


def test_infidelity_rejects_bad_rule(tmp_path):
    out = tmp_path / "infid.csv"
    code = main(
        [
            "infidelity-vs-t",
            "--n",
            "2",
            "--t-list",
            "5",
            "--m",
            "sometimes:3",
            "--out",
            str(out),
        ]
    )
    assert code == 2


def test_basis_column_layout(tmp_path):
    out = tmp_path / "basis.csv"
    code = main(
        [
            "basis",
            "--n",
            "2",
            "--t",
            "5",
            "--m",
            "10",
            "--points",
            "5",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    _, columns, rows = _read_csv(out)
    assert columns == ["x", "phi_0", "phi_1", "phi_2", "phi_3"]
    for row in rows:
        total = sum(float(v) for v in row[1:])
        assert total == pytest.approx(1.0, abs=1e-10)


def test_spectrum_default_reaches_reference_degree(tmp_path):
    out = tmp_path / "spec.csv"
    code = main(["spectrum", "--kind", "gsp", "--out", str(out)])
    assert code == 0
    metadata, columns, rows = _read_csv(out)
    assert metadata["m"] == "5"
    assert columns == ["freq", "count_unweighted", "count_weighted"]
    freqs = [int(r[0]) for r in rows]
    assert max(freqs) == 60
    assert min(freqs) == -60
    counts = {int(r[0]): int(r[1]) for r in rows}
    assert counts[60] == 1
    assert all(counts[f] == counts[-f] for f in freqs)


def test_spectrum_gap_doubles_degree(tmp_path):
    out = tmp_path / "spec.csv"
    code = main(["spectrum", "--kind", "gsp", "--gap", "--out", str(out)])
    assert code == 0
    _, _, rows = _read_csv(out)
    assert max(int(r[0]) for r in rows) == 120


def test_tower_spectrum_rejects_step_count(tmp_path):
    out = tmp_path / "spec.csv"
    code = main(["spectrum", "--kind", "tower", "--m", "3", "--out", str(out)])
    assert code == 2
    assert main(["spectrum", "--kind", "tower", "--out", str(out)]) == 0
    _, _, rows = _read_csv(out)
    assert max(int(r[0]) for r in rows) == 10
    weighted = {int(r[0]): int(r[2]) for r in rows}
    assert sum(weighted.values()) == 16


def test_scaling_exact_columns(tmp_path):
    out = tmp_path / "scaling.csv"
    code = main(
        ["scaling", "--gap-model", "exp", "--n-max", "5", "--out", str(out)]
    )
    assert code == 0
    _, columns, rows = _read_csv(out)
    assert columns == ["n", "rotation_degree", "gsp_degree"]
    assert [int(r[1]) for r in rows] == [2, 6, 12, 20, 30]
    assert [float(r[2]) for r in rows] == [2.0, 8.0, 24.0, 64.0, 160.0]


def test_coefficients_single_window(tmp_path):
    out = tmp_path / "coef.csv"
    code = main(
        [
            "coefficients",
            "--n",
            "2",
            "--t",
            "5",
            "--m",
            "10",
            "--points",
            "64",
            "--window",
            "0:4",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    _, columns, rows = _read_csv(out)
    assert columns == ["T", "M", "window", "k", "abs_c", "re_c", "im_c"]
    assert len(rows) == 64
    assert all(r[2] == "0.0:4.0" for r in rows)
    ks = [int(r[3]) for r in rows]
    assert ks[0] == -32
    assert ks[-1] == 31


def test_coefficients_need_setting_or_preset(tmp_path):
    out = tmp_path / "coef.csv"
    assert main(["coefficients", "--n", "2", "--out", str(out)]) == 2
    assert (
        main(
            [
                "coefficients",
                "--n",
                "2",
                "--t",
                "5",
                "--m",
                "10",
                "--points",
                "64",
                "--window",
                "4:0",
                "--out",
                str(out),
            ]
        )
        == 2
    )


def test_coefficients_preset_writes_four_files(tmp_path):
    out = tmp_path / "coef.csv"
    code = main(
        [
            "coefficients",
            "--n",
            "2",
            "--preset",
            "fig4",
            "--points",
            "64",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == [
        "coef_T1000_M100.csv",
        "coef_T1000_M1000.csv",
        "coef_T100_M100.csv",
        "coef_T100_M1000.csv",
    ]
    _, _, rows = _read_csv(tmp_path / "coef_T100_M100.csv")
    assert len(rows) == 2 * 64


def test_ffgsp_writes_three_files(tmp_path):
    out = tmp_path / "ff.csv"
    code = main(
        ["ffgsp", "--n", "2", "--x", "1.0", "--ms-list", "1,2", "--out", str(out)]
    )
    assert code == 0
    metadata, columns, rows = _read_csv(out)
    assert columns == ["N", "x", "word", "re_phi", "im_phi"]
    assert len(rows) == 16
    assert metadata["rule"] == "both"

    _, gcols, grows = _read_csv(tmp_path / "ff_groups.csv")
    assert gcols == ["N", "x", "rule", "num_groups", "num_words"]
    by_rule = {r[2]: (int(r[3]), int(r[4])) for r in grows}
    assert by_rule == {"general": (4, 16), "qubitwise": (9, 16)}

    tmeta, tcols, trows = _read_csv(tmp_path / "ff_trotter.csv")
    assert tcols == ["ms", "fidelity"]
    assert tmeta["trotter_rule"] == "general"
    assert [int(r[0]) for r in trows] == [1, 2]
    assert float(trows[0][1]) < float(trows[1][1])


def test_ffgsp_rejects_bad_ms_list(tmp_path):
    out = tmp_path / "ff.csv"
    assert main(["ffgsp", "--ms-list", "1,x", "--out", str(out)]) == 2
    assert main(["ffgsp", "--ms-list", "", "--out", str(out)]) == 2


def test_thread_env_validated_through_cli(tmp_path, monkeypatch):
    out = tmp_path / "scan.csv"
    monkeypatch.setenv("GSFM_THREADS", "0")
    code = main(
        [
            "fidelity-scan",
            "--n",
            "2",
            "--t",
            "1",
            "--m",
            "2",
            "--points",
            "3",
            "--out",
            str(out),
        ]
    )
    assert code == 2
