import json

import pytest

from scaleshift.cli import main

from refsets import WHEELS_12_BY_LENGTH

FIXTURES = "src/scaleshift/fixtures"
GOLDEN_MAT = f"{FIXTURES}/golden.mat"
TWOSTEP_FORB = f"{FIXTURES}/twostep.forb"


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_wheels_text(capsys):
    code, out, _ = run(["wheels", "--n", "12"], capsys)
    assert code == 0
    assert out.strip() == "351"
    code, out, _ = run(["wheels", "--n", "12", "--by-length"], capsys)
    assert code == 0
    assert out.strip() == ",".join(str(v) for v in WHEELS_12_BY_LENGTH)
    code, out, _ = run(["wheels", "--n", "5", "--parts", "2,3,4,5"], capsys)
    assert code == 0
    assert out.strip() == "2"


def test_wheels_json(capsys):
    code, out, _ = run(["--format", "json", "wheels", "--n", "5", "--parts", "2+"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data == {"n": 5, "parts": "2+", "total": 2}
    code, out, _ = run(["wheels", "--n", "5", "--parts", "nope"], capsys)
    assert code == 2


def test_vertex_zeta(capsys):
    code, out, _ = run(["vertex", "zeta", "--matrix", GOLDEN_MAT, "--order", "8"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["denominator"] == [1, -1, -1]
    assert data["coefficients"] == [1, 1, 2, 3, 5, 8, 13, 21, 34]


def test_vertex_loops(capsys):
    code, out, _ = run(
        ["vertex", "loops", "--matrix", GOLDEN_MAT, "--symbol", "∘", "--order", "6"], capsys
    )
    assert code == 0
    data = json.loads(out)
    assert data["support"] == [1, 2]
    assert not data["support_unbounded"]


def test_vertex_dims(capsys):
    code, out, _ = run(
        ["vertex", "dims", "--matrix", GOLDEN_MAT, "--symbol", "•", "--order", "12"], capsys
    )
    assert code == 0
    rows = {row["n"]: row for row in json.loads(out)["rows"]}
    assert rows[12]["transversal"] == 85
    assert rows[12]["orbital"] == 329
    code, _, err = run(["vertex", "dims", "--matrix", GOLDEN_MAT, "--order", "4"], capsys)
    assert code == 2
    assert "--symbol" in err
    code, _, err = run(
        ["vertex", "dims", "--matrix", GOLDEN_MAT, "--symbol", "x", "--order", "4"], capsys
    )
    assert code == 2


def test_vertex_global(capsys):
    code, out, _ = run(["vertex", "global", "--matrix", GOLDEN_MAT, "--order", "12"], capsys)
    assert code == 0
    rows = {row["n"]: row for row in json.loads(out)["rows"]}
    assert (rows[12]["transversal"], rows[12]["orbital"]) == (115, 561)
    assert (rows[5]["transversal"], rows[5]["orbital"]) == (6, 13)
    assert rows[12]["class_size"] == 376


def test_vertex_language(capsys):
    code, out, _ = run(["vertex", "language", "--matrix", GOLDEN_MAT, "--order", "3"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["count"] == 5
    assert data["words"] == ["∘∘∘", "∘∘•", "∘•∘", "•∘∘", "•∘•"]
    assert data["witnesses"] == ["∘∘∘", "∘∘•", "•∘•"]
    code, _, err = run(["vertex", "language", "--matrix", GOLDEN_MAT, "--order", "15"], capsys)
    assert code == 3


def test_vertex_reducible_exit(tmp_path, capsys):
    target = tmp_path / "split.mat"
    target.write_text("a b\n1 0\n0 1\n", encoding="utf-8")
    code, _, err = run(
        ["vertex", "dims", "--matrix", str(target), "--symbol", "a", "--order", "4"], capsys
    )
    assert code == 3
    assert "irreducible" in err
    code, _, err = run(
        ["vertex", "zeta", "--matrix", str(tmp_path / "absent.mat"), "--order", "4"], capsys
    )
    assert code == 1


def test_vertex_bad_matrix(tmp_path, capsys):
    target = tmp_path / "bad.mat"
    target.write_text("a b\n1 0\n", encoding="utf-8")
    code, _, err = run(["vertex", "zeta", "--matrix", str(target), "--order", "4"], capsys)
    assert code == 1
    assert "bad matrix file" in err


def test_sft_scales(capsys):
    code, out, _ = run(["sft", "scales", "--forbidden", TWOSTEP_FORB, "--order", "16"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["blocks"] == ["∘∘", "∘•", "•∘"]
    assert data["distinguished"] == ["∘∘", "∘•"]
    table = data["first_return"]
    assert table["∘∘->∘∘"] == [0] * 17
    assert table["∘∘->∘•"] == [0, 1] + [0] * 15
    assert table["∘•->∘∘"] == [0, 0, 1] + [0] * 14
    assert table["∘•->∘•"] == [0, 0, 1] + [0] * 14
    by_n = {entry["n"]: entry["scales"] for entry in data["scales"]["∘∘"]["sets"]}
    assert by_n[1] == [[1]]
    assert all(comp[0] == 1 for comp in by_n[12])


def test_sft_scales_explicit_set(capsys):
    code, out, _ = run(
        ["sft", "scales", "--forbidden", TWOSTEP_FORB, "--set", "∘∘", "--order", "6"], capsys
    )
    assert code == 0
    data = json.loads(out)
    assert data["distinguished"] == ["∘∘"]
    code, _, err = run(
        ["sft", "scales", "--forbidden", TWOSTEP_FORB, "--set", "xx", "--order", "6"], capsys
    )
    assert code == 2


def test_sft_degenerate(tmp_path, capsys):
    target = tmp_path / "dead.forb"
    target.write_text("∘•\n•∘\n∘∘\n••\n", encoding="utf-8")
    code, _, err = run(["sft", "scales", "--forbidden", str(target), "--order", "4"], capsys)
    assert code == 1


def test_subst_scales(capsys):
    code, out, _ = run(["subst", "scales", "--preset", "fibonacci", "--n", "12"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["combined_size"] == 13
    assert data["transversal_dim"] == 10
    assert data["orbital_dim"] == 66
    assert len(data["transversal"]) == 10


def test_subst_rules_file(tmp_path, capsys):
    rules = tmp_path / "fib.json"
    rules.write_text(
        '{"alphabet": ["∘", "•"], "rules": {"∘": "∘•", "•": "∘"}, "seed": "∘"}',
        encoding="utf-8",
    )
    code, out, _ = run(["subst", "scales", "--rules", str(rules), "--n", "5"], capsys)
    assert code == 0
    assert json.loads(out)["n"] == 5
    rules.write_text('{"rules": 3}', encoding="utf-8")
    code, _, err = run(["subst", "scales", "--rules", str(rules), "--n", "5"], capsys)
    assert code == 1


def test_subst_stabilization_failure(tmp_path, capsys):
    rules = tmp_path / "crawl.json"
    rules.write_text(
        '{"alphabet": ["∘", "•"], "rules": {"∘": "∘•", "•": "•"}, "seed": "∘"}',
        encoding="utf-8",
    )
    code, _, err = run(["subst", "scales", "--rules", str(rules), "--n", "10"], capsys)
    assert code == 1
    assert "iteration" in err


def test_verify_small_grid(capsys):
    code, out, _ = run(["verify", "--suite", "paper", "--max-n", "2"], capsys)
    assert code == 0
    lines = [line for line in out.splitlines() if line.startswith("CHECK")]
    assert len(lines) == 10
    assert all("PASS" in line for line in lines)


def test_oeis_check(capsys):
    code, out, _ = run(
        ["oeis", "check", "--id", "A000358", "--coeffs", "1,2,2,3,3,5,5,8,10", "--offline"],
        capsys,
    )
    assert code == 0
    assert out.strip() == "match"
    code, out, _ = run(
        ["oeis", "check", "--id", "A006367", "--coeffs", "1,0,2,2,5,8,15,26,46,80", "--offline"],
        capsys,
    )
    assert code == 0
    code, out, _ = run(
        ["--format", "json", "oeis", "check", "--id", "A000071", "--coeffs", "0,0,1,2,4", "--offline"],
        capsys,
    )
    assert code == 0
    assert json.loads(out)["match"] is True


def test_oeis_mismatch_and_errors(capsys):
    code, out, _ = run(
        ["oeis", "check", "--id", "A000358", "--coeffs", "1,2,9", "--offline"], capsys
    )
    assert code == 1
    assert "position 2" in out
    code, _, err = run(
        ["oeis", "check", "--id", "A999999", "--coeffs", "1", "--offline"], capsys
    )
    assert code == 1
    assert "snapshot" in err
    code, _, err = run(["oeis", "check", "--id", "bogus", "--coeffs", "1", "--offline"], capsys)
    assert code == 2
    long_prefix = ",".join(["1"] * 40)
    code, out, _ = run(
        ["oeis", "check", "--id", "A000358", "--coeffs", long_prefix, "--offline"], capsys
    )
    assert code == 1
    assert "longer than the snapshot" in out


def test_oeis_fixture_dir_override(tmp_path, capsys, monkeypatch):
    (tmp_path / "b111111.txt").write_text("1 7\n2 9\n", encoding="utf-8")
    code, out, _ = run(
        [
            "--fixtures",
            str(tmp_path),
            "oeis",
            "check",
            "--id",
            "A111111",
            "--coeffs",
            "7,9",
            "--offline",
        ],
        capsys,
    )
    assert code == 0
    monkeypatch.setenv("SCALESHIFT_FIXTURES", str(tmp_path))
    code, out, _ = run(
        ["oeis", "check", "--id", "A111111", "--coeffs", "7,9", "--offline"], capsys
    )
    assert code == 0


def test_usage_errors(capsys):
    assert main(["wheels"]) == 2
    assert main(["subst", "scales", "--preset", "unknown", "--n", "4"]) == 2
    assert main(["verify", "--suite", "other"]) == 2
    assert main([]) == 2


def test_snapshot_checks_cover_all_bundled_sequences(capsys):
    from scaleshift.combinatorics import PartSpec
    from scaleshift.scales import b_series, composition_gf, wheels_gf
    from scaleshift.series import RationalFunction
    from scaleshift.shiftspace import (
        VertexShift,
        minimal_periodic_orbit_counts,
        periodic_orbit_counts,
    )

    golden = VertexShift.from_rows(("∘", "•"), ((1, 1), (1, 0)))
    qbar = periodic_orbit_counts(golden, 16)
    checks = {
        "A000358": [qbar[n] for n in range(1, 17)],
        "A006206": list(minimal_periodic_orbit_counts(golden, 12)),
        "A006490": [
            int(RationalFunction([0, 1, -1], [1, -1, -1]).expand(11).derivative().coefficient(n))
            for n in range(10)
        ],
        "A032190": [int(wheels_gf(PartSpec.from_min(2), 12).coefficient(n)) for n in range(1, 13)],
        "A006367": [int(b_series(PartSpec.from_min(2), 12).coefficient(n)) for n in range(1, 13)],
        "A206268": [
            int(composition_gf(PartSpec.from_min(2), 12).coefficient(n))
            + int(b_series(PartSpec.from_min(2), 12).coefficient(n))
            for n in range(13)
        ],
        "A000071": [0, 0, 1, 2, 4, 7, 12, 20, 33, 54, 88, 143, 232, 376, 609, 986],
    }
    for sequence_id, values in checks.items():
        coeffs = ",".join(str(v) for v in values)
        code, out, _ = run(
            ["oeis", "check", "--id", sequence_id, "--coeffs", coeffs, "--offline"], capsys
        )
        assert code == 0, f"{sequence_id}: {out}"
