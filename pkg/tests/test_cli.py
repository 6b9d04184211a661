import json

from charsum.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv)
    return code, json.loads(out), err


def test_field_info(capsys):
    code, report, _ = run_json(capsys, "field-info", "--field", "2^4")
    assert code == 0
    assert report["field"]["q"] == 16
    assert report["field"]["modulus"] == [1, 1, 0, 0, 1]
    assert report["field"]["alpha"] == 2
    assert all(c["pass"] for c in report["checks"])


def test_partition_verb(capsys):
    code, report, _ = run_json(capsys, "partition", "--field", "7", "--n", "3")
    assert code == 0
    assert report["results"]["cosets"] == [[1, 6], [3, 4], [2, 5]]


def test_repcount_prime_field_table(capsys):
    code, report, _ = run_json(capsys, "repcount", "--field", "13", "--n", "2")
    assert code == 0
    assert report["results"]["qr_as_two_qr"] == 2
    assert report["results"]["qr_as_two_nonres"] == 3
    assert any(c["name"] == "closed_equals_brute_all_beta" and c["pass"]
               for c in report["checks"])


def test_repcount_single_query_with_diagnostics(capsys):
    code, report, _ = run_json(capsys, "repcount", "--field", "2^2",
                               "--n", "3", "--beta", "1", "--i", "1", "--j", "2")
    assert code == 0
    assert report["results"]["query"]["count"] == 1
    assert report["results"]["query"]["K"] == {"a": -3, "b": 1}


def test_repcount_csv(capsys):
    code, out, _ = run_cli(capsys, "repcount", "--field", "13", "--n", "2", "--csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "beta_label,i,j,count"
    assert "qr_as_two_qr,,,2" in lines


def test_jacobi_verb(capsys):
    code, report, _ = run_json(capsys, "jacobi", "--field", "7")
    assert code == 0
    assert report["results"]["jacobi"] == {"a": -1, "b": -3}
    assert all(c["pass"] for c in report["checks"])


def test_gauss_verb_exact_char2(capsys):
    code, report, _ = run_json(capsys, "gauss", "--field", "2^4", "--n", "3")
    assert code == 0
    assert report["results"]["exact"] == {"a": -4, "b": 0}


def test_charpoly_verb_f3(capsys):
    code, report, _ = run_json(capsys, "charpoly", "--field", "3", "--n", "2")
    assert code == 0
    assert report["results"]["sigma2"]["coeffs"] == {"0": 1}
    assert any(c["name"] == "sigma2_matches_product" and c["pass"]
               for c in report["checks"])


def test_shift_verb(capsys):
    code, report, _ = run_json(capsys, "shift", "--field", "2^6", "--n", "3")
    assert code == 0
    assert report["results"]["max_N"] == 8
    assert report["results"]["closed_form_1_plus_max"] == 9


def test_duality_verb(capsys):
    code, report, _ = run_json(capsys, "duality", "--field", "2^4", "--n", "3")
    assert code == 0
    assert report["results"]["max_R"] == 2
    assert report["results"]["max_N3"] == 1
    assert report["results"]["holds"] is True


def test_verify_verb(capsys):
    code, report, _ = run_json(capsys, "verify", "--scope", "repcount",
                               "--q-max", "60", "--threads", "1")
    assert code == 0
    assert report["results"]["fields_checked"] > 40
    assert all(c["pass"] for c in report["checks"])


def test_verify_scope_all_covers_every_op(capsys):
    code, report, _ = run_json(capsys, "verify", "--scope", "all",
                               "--q-max", "30", "--threads", "1")
    assert code == 0
    cov = [c for c in report["checks"] if c["name"] == "op_coverage"]
    assert cov and cov[0]["pass"]


def test_usage_errors_exit_1(capsys):
    assert run_cli(capsys, "nonsense")[0] == 1
    assert run_cli(capsys, "repcount")[0] == 1                  # missing --field
    assert run_cli(capsys, "repcount", "--field", "8")[0] == 1  # 8 not prime
    assert run_cli(capsys, "repcount", "--field", "3^2:1,1")[0] == 1
    code, _, err = run_cli(capsys, "shift", "--field", "5", "--n", "2", "--t", "3")
    assert code == 1 and "coset size" in err


def test_character_nonexistence_exits_2(capsys):
    code, report, _ = run_json(capsys, "jacobi", "--field", "2^3")
    assert code == 2
    assert not report["checks"][0]["pass"]
    code, _, _ = run_json(capsys, "repcount", "--field", "2^2", "--n", "2")
    assert code == 2


def test_size_cap_env(capsys, monkeypatch):
    monkeypatch.setenv("CHARSUM_SIZE_CAP", "100")
    assert run_cli(capsys, "field-info", "--field", "11^2")[0] == 1
    monkeypatch.setenv("CHARSUM_SIZE_CAP", "200")
    assert run_cli(capsys, "field-info", "--field", "11^2")[0] == 0


def test_output_is_byte_identical(capsys):
    _, out1, _ = run_cli(capsys, "duality", "--field", "3^2", "--n", "2")
    _, out2, _ = run_cli(capsys, "duality", "--field", "3^2", "--n", "2")
    assert out1 == out2
    _, out1, _ = run_cli(capsys, "verify", "--scope", "sums", "--q-max", "40",
                         "--threads", "1")
    _, out2, _ = run_cli(capsys, "verify", "--scope", "sums", "--q-max", "40",
                         "--threads", "1")
    assert out1 == out2


def test_verify_output_independent_of_threads(capsys):
    _, r1, _ = run_json(capsys, "verify", "--scope", "repcount", "--q-max", "40",
                        "--threads", "1")
    _, r2, _ = run_json(capsys, "verify", "--scope", "repcount", "--q-max", "40",
                        "--threads", "2")
    assert r1["results"] == r2["results"]
    assert r1["checks"] == r2["checks"]


def test_conjugate_flag_flips_jacobi(capsys):
    _, plain, _ = run_json(capsys, "jacobi", "--field", "13")
    _, swapped, _ = run_json(capsys, "jacobi", "--field", "13", "--conjugate")
    a, b = plain["results"]["jacobi"]["a"], plain["results"]["jacobi"]["b"]
    assert swapped["results"]["jacobi"] == {"a": a - b, "b": -b}
    _, plain_counts, _ = run_json(capsys, "repcount", "--field", "13", "--n", "3")
    _, swapped_counts, _ = run_json(capsys, "repcount", "--field", "13", "--n", "3",
                                    "--conjugate")
    multiset = sorted(r["count"] for r in plain_counts["results"]["classes"])
    multiset_swapped = sorted(r["count"] for r in swapped_counts["results"]["classes"])
    assert multiset == multiset_swapped


def test_elapsed_goes_to_stderr(capsys):
    _, out, err = run_cli(capsys, "field-info", "--field", "7")
    assert "elapsed_ms=" in err and "elapsed_ms" not in out
