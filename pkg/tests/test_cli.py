import dataclasses
import json
import os
import random
import subprocess
import sys

import pytest

from edr import cli
from edr.errors import InvariantError, ParseError
from edr.matrix import Matrix, identity
from edr.rings import QQx, ZZ, PrimeFieldPolynomials
from edr.smith import supported_strategies
from conftest import FIXTURES, GOLDEN, random_matrix

REGEN = os.environ.get("EDR_REGEN_GOLDEN") == "1"

# (golden name, argv, expected exit status); golden files hold stdout for
# status 0/1 and stderr for status 2
GOLDEN_CASES = [
    ("smith_euclidean", ["smith", "--strategy", "euclidean", "diag23.mat"], 0),
    ("smith_pid", ["smith", "--strategy", "pid", "diag23.mat"], 0),
    ("smith_kaplansky", ["smith", "--strategy", "kaplansky", "diag23.mat"], 0),
    ("smith_json", ["smith", "--json", "m2468.mat"], 0),
    ("smith_qpoly", ["smith", "qpoly_diag.mat"], 0),
    ("smith_f5", ["smith", "f5_2x2.mat"], 0),
    ("smith_many", ["smith", "diag23.mat", "zero32.mat"], 0),
    ("rank", ["rank", "m2468.mat"], 0),
    ("rank_json", ["rank", "--json", "zero32.mat"], 0),
    ("kernel", ["kernel", "zero32.mat"], 0),
    ("kernel_json", ["kernel", "--json", "m2468.mat"], 0),
    ("cokernel", ["cokernel", "zero32.mat"], 0),
    ("solve", ["solve", "two.mat", "rhs6.mat"], 0),
    ("solve_none", ["solve", "two.mat", "three.mat"], 1),
    ("solve_json", ["solve", "--json", "two.mat", "three.mat"], 1),
    ("iso_yes", ["iso", "diag23.mat", "six.mat"], 0),
    ("iso_no", ["iso", "two.mat", "three.mat"], 1),
    ("iso_json", ["iso", "--json", "two.mat", "three.mat"], 1),
    ("homology_point", ["homology", "--all", "point.json"], 0),
    ("homology_circle", ["homology", "--all", "circle.json"], 0),
    ("homology_sphere", ["homology", "--all", "sphere.json"], 0),
    ("homology_torus", ["homology", "--all", "torus.json"], 0),
    ("homology_klein", ["homology", "--all", "klein.json"], 0),
    ("homology_rp2", ["homology", "rp2.json"], 0),
    ("homology_degree", ["homology", "--degree", "1", "klein.json"], 0),
    ("homology_json", ["homology", "--json", "klein.json"], 0),
    ("err_count", ["smith", "bad_count.mat"], 2),
    ("err_ring", ["smith", "bad_ring.mat"], 2),
    ("err_prime", ["rank", "bad_prime.mat"], 2),
    ("err_entry", ["kernel", "bad_entry.mat"], 2),
    ("err_missing", ["smith", "missing.mat"], 2),
    ("err_solve_shape", ["solve", "two.mat", "rhs_row.mat"], 2),
]


def run(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def in_fixtures(monkeypatch):
    monkeypatch.chdir(FIXTURES)


@pytest.mark.parametrize("name,argv,status", GOLDEN_CASES, ids=[c[0] for c in GOLDEN_CASES])
def test_golden(capsys, in_fixtures, name, argv, status):
    code, out, err = run(capsys, argv)
    assert code == status
    text = err if status == 2 else out
    path = GOLDEN / f"{name}.txt"
    if REGEN:
        path.write_text(text)
    assert text == path.read_text()


def test_smith_text_and_json_agree(capsys, in_fixtures):
    _, text, _ = run(capsys, ["smith", "m2468.mat"])
    _, js, _ = run(capsys, ["smith", "--json", "m2468.mat"])
    obj = json.loads(js)
    assert text.splitlines()[0] == "d: [" + ", ".join(str(x) for x in obj["d"]) + "]"


def test_verify_roundtrip(capsys, in_fixtures, tmp_path):
    _, js, _ = run(capsys, ["smith", "--json", "--strategy", "kaplansky", "m2468.mat"])
    result = tmp_path / "r.json"
    result.write_text(js)
    code, out, _ = run(capsys, ["verify", "m2468.mat", str(result)])
    assert code == 0
    assert out.splitlines()[-1] == "verified"
    obj = json.loads(js)
    obj["d"] = obj["d"][::-1]
    result.write_text(json.dumps(obj))
    code, out, _ = run(capsys, ["verify", "m2468.mat", str(result)])
    assert code == 1
    assert "sorted: FAIL" in out and out.splitlines()[-1] == "not verified"
    code, out, _ = run(capsys, ["verify", "--json", "m2468.mat", str(result)])
    assert code == 1 and json.loads(out)["clauses"]["sorted"] is False


def test_verify_bad_inputs(capsys, in_fixtures, tmp_path):
    result = tmp_path / "r.json"
    result.write_text('{"d": [1]}')
    assert run(capsys, ["verify", "m2468.mat", str(result)])[0] == 2
    result.write_text("{not json")
    code, _, err = run(capsys, ["verify", "m2468.mat", str(result)])
    assert code == 2 and "line 1" in err


def test_large_output_suppression(capsys, tmp_path):
    path = tmp_path / "big.mat"
    path.write_text(cli.format_matrix(identity(ZZ, 11)))
    code, out, _ = run(capsys, ["smith", str(path)])
    assert code == 0 and "suppressed" in out and "P:" not in out
    code, out, _ = run(capsys, ["smith", "--full", str(path)])
    assert code == 0 and "P:" in out and "suppressed" not in out
    _, js, _ = run(capsys, ["smith", "--json", str(path)])
    assert "P" not in json.loads(js)


def test_usage_errors_exit_2(capsys, in_fixtures):
    assert run(capsys, [])[0] == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["smith"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["smith", "--strategy", "gauss", "diag23.mat"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 2
    assert run(capsys, ["homology", "--degree", "-1", "circle.json"])[0] == 2


def test_bad_complex_files(capsys, tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"ring": "int", "boundaries": [
        {"m": 1, "n": 2, "entries": [1, -1]}, {"m": 1, "n": 1, "entries": [1]}]}))
    code, _, err = run(capsys, ["homology", str(path)])
    assert code == 2 and "invalid complex" in err
    # C_1 has dimension 1 but the second boundary expects 2
    path.write_text(json.dumps({"ring": "int", "boundaries": [
        {"m": 1, "n": 2, "entries": [1, -1]}, {"m": 1, "n": 2, "entries": [0, 0]}]}))
    code, _, err = run(capsys, ["homology", str(path)])
    assert code == 2 and "columns" in err
    path.write_text(json.dumps({"ring": "int", "boundaries": [{"m": 1, "n": 2, "entries": [1]}]}))
    assert run(capsys, ["homology", str(path)])[0] == 2
    path.write_text(json.dumps({"boundaries": []}))
    assert run(capsys, ["homology", str(path)])[0] == 2


def test_internal_error_exit_3(capsys, in_fixtures, monkeypatch):
    def broken(*args, **kwargs):
        raise InvariantError("simulated broken ring instance")

    monkeypatch.setattr(cli, "smith", broken)
    code, _, err = run(capsys, ["smith", "diag23.mat"])
    assert code == 3 and "internal error" in err


def test_unverified_result_is_never_printed(capsys, in_fixtures, monkeypatch):
    real = cli.smith

    def tampered(m, strategy=None):
        r = real(m, strategy)
        return type(r)(r.P, tuple(reversed(r.d)), r.Q)

    monkeypatch.setattr(cli, "smith", tampered)
    code, out, err = run(capsys, ["smith", "m2468.mat"])
    assert code == 3 and out == "" and "sorted" in err


def test_capability_error_exit_2(capsys, monkeypatch, tmp_path):
    # a strategy unsupported by the ring is an input error
    monkeypatch.setattr(type(ZZ), "caps", dataclasses.replace(ZZ.caps, euclidean=False))
    path = tmp_path / "m.mat"
    path.write_text("ring int\n1 1\n2\n")
    try:
        code, _, err = run(capsys, ["rank", "--strategy", "euclidean", str(path)])
    finally:
        monkeypatch.undo()
    assert code == 2 and "not available" in err
    assert supported_strategies(ZZ)[0] == "euclidean"


def test_selftest(capsys, monkeypatch):
    monkeypatch.setenv("EDR_SEED", "11")
    code, out, _ = run(capsys, ["--selftest"])
    assert code == 0 and "selftest seed=11: ok" in out
    monkeypatch.setenv("EDR_SEED", "eleven")
    assert run(capsys, ["--selftest"])[0] == 2


def test_entry_point_subprocess():
    proc = subprocess.run([sys.executable, "-m", "edr.cli", "iso", "two.mat", "three.mat"],
                          cwd=FIXTURES, capture_output=True, text=True)
    assert proc.returncode == 1
    assert proc.stdout.strip() == "not isomorphic: Z/2 vs Z/3"


# -- parsing --------------------------------------------------------------------------------

def test_parse_matrix_examples():
    assert cli.parse_matrix("ring int\n2 2\n2 0\n0 3\n") == Matrix.from_ints(ZZ, [[2, 0], [0, 3]])
    m = cli.parse_matrix("ring qpoly\n1 1\n[0,1]\n")
    assert m.ring is QQx and m[0, 0] == QQx.from_coeffs([0, 1])
    with pytest.raises(ParseError) as exc:
        cli.parse_matrix("ring int\n2 2\n1 2 3\n")
    assert exc.value.line == 3


def test_parse_matrix_errors_carry_positions():
    cases = [
        ("", None),
        ("ring\n", 1),
        ("ring int\n2\n", 2),
        ("ring int\n2 x\n", 2),
        ("ring int\n2 2\n1 2\n", 4),
        ("ring int\n1 2\n1 2\n3 4\n", 4),
        ("ring int\n1 2\n1 [1,2]\n", 3),
        ("ring fppoly:1\n1 1\n[1]\n", 1),
    ]
    for text, line in cases:
        with pytest.raises(ParseError) as exc:
            cli.parse_matrix(text)
        assert exc.value.line == line, text


def test_parse_matrix_comments_and_spacing():
    text = "# header\nring fppoly:7\n\n# dims\n2 3\n[1, 2] [0]  [8]\n  [] [3,0,0] [6]\n"
    m = cli.parse_matrix(text)
    f7 = PrimeFieldPolynomials(7)
    assert m.ring == f7
    assert m.tolist() == [[(1, 2), (), (1,)], [(), (3,), (6,)]]


def _random_file(rng):
    ring = rng.choice([ZZ, QQx, PrimeFieldPolynomials(rng.choice([2, 3, 5, 7, 101]))])
    size = 10**rng.randint(1, 30) if ring is ZZ else 3
    m = random_matrix(ring, rng, rng.randint(0, 5), rng.randint(0, 5), size)
    lines = cli.format_matrix(m).splitlines()
    noisy = []
    for line in lines:
        if rng.random() < 0.3:
            noisy.append("# " + "".join(rng.choice("abc xyz") for _ in range(8)))
        if rng.random() < 0.1:
            noisy.append("")
        noisy.append(line)
    return m, "\n".join(noisy) + "\n"


def test_parse_print_roundtrip_100_files(tmp_path):
    rng = random.Random(2024)
    for i in range(100):
        m, text = _random_file(rng)
        path = tmp_path / f"m{i}.mat"
        path.write_text(text)
        parsed = cli.parse_matrix(path.read_text())
        assert parsed == m and parsed.ring == m.ring
        printed = cli.format_matrix(parsed)
        assert cli.parse_matrix(printed) == m
        assert cli.format_matrix(cli.parse_matrix(printed)) == printed


def test_complex_roundtrip():
    text = (FIXTURES / "sphere.json").read_text()
    c = cli.parse_complex(text)
    again = cli.parse_complex(cli.format_complex(c))
    assert again.boundaries == c.boundaries
