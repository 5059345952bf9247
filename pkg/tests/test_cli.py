"""Command-line tests driving `main` in process and checking output and exit status."""

import json

import pytest

from sullivan.cli.commands import corpus as corpus_commands
from sullivan.cli.options import report_exit
from sullivan.main import main
from sullivan.services.corpus import corpus_model
from sullivan.services.report import build_report

S2_BAD_D = "generator x 2\ngenerator y 3\ngenerator z 4\nd y = x^2\nd z = x*y\n"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_toomer_reports_agreement_with_formula(capsys):
    """The toomer command prints the invariant next to the length formula."""

    code, out, _ = run(capsys, "toomer", "cp2")

    assert code == 0
    assert out.splitlines() == ["toomer 2", "e_formula 2", "agrees True"]


def test_nogaps_holds_on_pure_model(capsys):
    """A proven statement exits 0 and names its conclusion."""

    code, out, _ = run(capsys, "nogaps", "e6-pure")

    assert code == 0
    assert "nogaps: Holds" in out


def test_hypothesis_not_met_exits_zero(capsys):
    """HypothesisNotMet is not a failure."""

    code, out, _ = run(capsys, "lupton", "corpus:mixed-1")

    assert code == 0
    assert "HypothesisNotMet" in out


def test_validate_reports_d_squared(capsys, tmp_path):
    """A differential with d² ≠ 0 fails validation with a located diagnostic."""

    path = tmp_path / "bad.sullivan"
    path.write_text(S2_BAD_D, encoding="utf-8")

    code, _, err = run(capsys, "validate", str(path))

    assert code == 1
    assert "d-squared" in err
    assert f"{path}:5:" in err


def test_validate_accepts_corpus_model(capsys):
    """Valid models print their provenance and the checks that passed."""

    code, out, _ = run(capsys, "validate", "s2")

    assert code == 0
    assert out.startswith("corpus:s2: valid")


def test_report_json_summary(capsys):
    """The json report carries the headline numbers."""

    code, out, _ = run(capsys, "report", "cp2", "--format", "json")

    assert code == 0
    payload = json.loads(out)
    assert payload["summary"] == {"N": 4, "e": 2, "dimH": 3, "toomer": 2}
    assert payload["source"] == "corpus:cp2"


def test_output_is_deterministic(capsys):
    """Repeated invocations print identical text."""

    _, first, _ = run(capsys, "einfty", "e6-pure", "--format", "json")
    _, second, _ = run(capsys, "einfty", "e6-pure", "--format", "json")

    assert first == second


def test_table_and_json_agree(capsys):
    """Cohomology dimensions are the same in both output formats."""

    _, table, _ = run(capsys, "cohomology", "cp3")
    _, raw, _ = run(capsys, "cohomology", "cp3", "--format", "json")

    payload = json.loads(raw)
    rows = table.splitlines()[1:-1]
    assert [int(row.split()[1]) for row in rows] == [entry["dimension"] for entry in payload["degrees"]]
    assert table.splitlines()[-1] == "total 4"


def test_computation_limit_gives_undetermined(capsys, monkeypatch):
    """A basis cap below the window makes ellipticity undetermined, exit 2."""

    monkeypatch.setenv("SULLIVAN_MAX_BASIS_SIZE", "1")

    code, out, err = run(capsys, "elliptic", "e6-pure")

    assert code == 2
    assert "Undetermined" in out + err


def test_elliptic_prints_fundamental_class(capsys):
    """Elliptic models show the fundamental class and its word lengths."""

    code, out, _ = run(capsys, "elliptic", "cp2")

    assert code == 0
    assert out.startswith("Elliptic (N_formula 4, window 9)")
    assert "fundamental class [x^2], word lengths [2]" in out


def test_usage_error_exits_one(capsys):
    """argparse usage errors exit with status 1."""

    with pytest.raises(SystemExit) as excinfo:
        main(["toomer"])

    assert excinfo.value.code == 1
    assert "error" in capsys.readouterr().err


def test_unknown_command_exits_one(capsys):
    """Unknown sub-commands are usage errors."""

    with pytest.raises(SystemExit) as excinfo:
        main(["frobnicate", "s2"])

    assert excinfo.value.code == 1


def test_unknown_model_exits_one(capsys):
    """Neither a file nor a corpus id is a reported error, not a traceback."""

    code, _, err = run(capsys, "cohomology", "no-such-model")

    assert code == 1
    assert "no model file or corpus entry named 'no-such-model'" in err


def test_parse_failure_exits_one(capsys, tmp_path):
    """Analysis commands on unparseable files print diagnostics and exit 1."""

    path = tmp_path / "broken.sullivan"
    path.write_text("generator x 2\nd x = x^^2\n", encoding="utf-8")

    code, _, err = run(capsys, "cohomology", str(path))

    assert code == 1
    assert "syntax" in err


def test_corpus_list_filter(capsys):
    """corpus list --filter keeps tagged models only."""

    code, out, _ = run(capsys, "corpus", "list", "--filter", "odd-only", "--format", "json")

    assert code == 0
    assert [entry["id"] for entry in json.loads(out)] == ["free-odd", "s3", "s3xs5"]


def test_corpus_show_prints_source(capsys):
    """corpus show echoes the model file."""

    code, out, _ = run(capsys, "corpus", "show", "s2")

    assert code == 0
    assert "generator x 2" in out
    assert "d y = x^2" in out


def test_closure_of_sphere_is_acyclic(capsys):
    """The acyclic closure of S² has cohomology Q in degree 0 only."""

    code, out, _ = run(capsys, "closure", "s2")

    assert code == 0
    assert out.splitlines()[-1] == "acyclic True"


def test_e0_of_one_class(capsys):
    """e0 --class evaluates a single cohomology class by both routes."""

    code, out, _ = run(capsys, "e0", "cp2", "--class", "x^2")

    assert code == 0
    assert out.strip() == "e0([x^2]) = 2 (representative route 2)"


def test_suite_runs_every_statement(capsys):
    """suite prints one block per statement and exits with the worst status."""

    code, out, _ = run(capsys, "suite", "s2")

    assert code == 0
    for statement in ("hilali", "nogaps", "hilali-special-cases", "e0gaps", "lupton"):
        assert f"{statement}: " in out


def test_validate_json_keeps_diagnostics_on_stderr(capsys, tmp_path):
    """With --format json the diagnostics still go to stderr and stdout carries the list."""

    path = tmp_path / "bad.sullivan"
    path.write_text(S2_BAD_D, encoding="utf-8")

    code, out, err = run(capsys, "validate", str(path), "--format", "json")

    assert code == 1
    assert "d-squared" in err
    assert "d-squared" in out


def _undetermined(report):
    verdict = report.ellipticity.model_copy(update={"status": "Undetermined"})
    return report.model_copy(update={"ellipticity": verdict})


def test_report_exit_counts_undetermined_ellipticity():
    """An undetermined ellipticity verdict gives exit 2 even when every statement holds."""

    report = build_report(corpus_model("s3"))

    assert report_exit(report) == 0
    assert report_exit(_undetermined(report)) == 2


def test_corpus_run_exit_counts_undetermined_ellipticity(capsys, monkeypatch):
    """corpus run applies the same exit rule as report."""

    reports = [build_report(corpus_model("s3"))]
    monkeypatch.setattr(corpus_commands, "run_corpus", lambda entries, jobs=None: [_undetermined(r) for r in reports])

    code, _, _ = run(capsys, "corpus", "run", "--filter", "odd-only", "--format", "json")

    assert code == 2
