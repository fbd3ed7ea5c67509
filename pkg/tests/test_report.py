import json
from pathlib import Path

import pytest

from privlens.cli import main
from privlens.report import ScanOptions, render, run_scan
from privlens.rules import load_default_rules, serialize_rules
from privlens.taint import FlowFinding


@pytest.fixture
def mini_corpus(tmp_path):
    (tmp_path / "app.ts").write_text(
        "\n".join(
            [
                "const userEmail = profile.email;",
                "client.send(userEmail);",
                "vault.save(ssn);",
                "gpsTracker.setLatitude(100,100);",
                "// owner: jane.roe@example.com",
            ]
        )
        + "\n"
    )
    (tmp_path / "Job.java").write_text(
        "class Job {\n  void run(String patientId) {\n    logger.warn(patientId);\n  }\n}\n"
    )
    return tmp_path


class TestRunScan:
    def test_matrix_counts_match_flows(self, mini_corpus):
        report = run_scan(mini_corpus)
        contact_T = sum(
            1
            for lf in report.flows
            if isinstance(lf.finding, FlowFinding)
            and lf.finding.sink.category == "T"
            and any(s.category == "contact" for s in lf.finding.sources)
        )
        assert report.matrix["contact"]["T"] == contact_T == 1
        assert report.matrix["health"]["L"] == 1
        assert report.matrix["location"]["M"] == 1

    def test_matrix_sum_counts_each_source_category(self, mini_corpus):
        report = run_scan(mini_corpus)
        total = sum(sum(row.values()) for row in report.matrix.values())
        per_flow = sum(
            len({s.category for s in lf.finding.sources})
            for lf in report.flows
            if isinstance(lf.finding, FlowFinding)
        )
        assert total == per_flow

    def test_empty_dir(self, tmp_path):
        report = run_scan(tmp_path)
        assert report.files_scanned == 0
        assert report.occurrences == () and report.flows == ()

    def test_sections_ordered_occurrences_then_flows(self, mini_corpus):
        report = run_scan(mini_corpus)
        ids = [lf.id for lf in report.all_findings()]
        assert ids == sorted(ids)
        assert report.occurrences
        assert max(lf.id for lf in report.occurrences) < min(lf.id for lf in report.flows)

    def test_label_filter_keeps_ids(self, mini_corpus):
        full = run_scan(mini_corpus)
        filtered = run_scan(mini_corpus, ScanOptions(labels=("sink.T",)))
        full_T = {lf.id for lf in full.flows if "sink.T" in lf.labels}
        assert {lf.id for lf in filtered.flows} == full_T
        assert "label-filter" in filtered.groups

    def test_fingerprint_tracks_rules_only(self, mini_corpus, tmp_path):
        base = run_scan(mini_corpus)
        spec = load_default_rules()
        doc = json.loads(serialize_rules(spec))
        doc["sources"][0]["keywords"].append("zzz")
        custom = tmp_path / "custom_rules.json"
        custom.write_text(json.dumps(doc))
        other = run_scan(mini_corpus, ScanOptions(rules_path=str(custom)))
        assert base.rules_fingerprint != other.rules_fingerprint


class TestRender:
    def test_json_round_trip(self, mini_corpus):
        report = run_scan(mini_corpus)
        payload = render(report, "json")
        doc = json.loads(payload)
        assert doc["schema"] == 1
        assert json.loads(render(report, "json")) == doc
        assert payload.endswith(b"\n")

    def test_zero_cells_render_dash(self, mini_corpus):
        report = run_scan(mini_corpus)
        text = render(report, "text").decode()
        matrix_block = text.split("== Findings per source and sink ==")[1]
        assert " - " in matrix_block or matrix_block.rstrip().endswith("-")
        assert "credentials" in matrix_block

    def test_identical_scans_byte_identical(self, mini_corpus):
        a = render(run_scan(mini_corpus), "json")
        b = render(run_scan(mini_corpus), "json")
        assert a == b

    def test_jobs_do_not_change_bytes(self, mini_corpus):
        seq = render(run_scan(mini_corpus, ScanOptions(jobs=1)), "json")
        par = render(run_scan(mini_corpus, ScanOptions(jobs=8)), "json")
        assert seq == par

    def test_masked_by_default(self, mini_corpus):
        payload = render(run_scan(mini_corpus), "json").decode()
        assert "jane.roe@example.com" not in payload
        unmasked = render(run_scan(mini_corpus, ScanOptions(mask=False)), "json").decode()
        assert "jane.roe@example.com" in unmasked


class TestCli:
    def test_exit_zero_and_report_file(self, mini_corpus, tmp_path, capsys):
        out = tmp_path / "report.json"
        code = main(["scan", str(mini_corpus), "--out", str(out)])
        assert code == 0
        assert json.loads(out.read_text())["schema"] == 1

    def test_fail_on_triggers_exit_2(self, mini_corpus, capsys):
        code = main(["scan", str(mini_corpus), "--fail-on", "source.contact"])
        capsys.readouterr()
        assert code == 2

    def test_fail_on_absent_label_exit_0(self, mini_corpus, capsys):
        code = main(["scan", str(mini_corpus), "--fail-on", "sink.E"])
        capsys.readouterr()
        assert code == 0

    def test_unknown_fail_on_label_is_usage_error(self, mini_corpus, capsys):
        code = main(["scan", str(mini_corpus), "--fail-on", "sink.Q"])
        capsys.readouterr()
        assert code == 1

    def test_rule_error_exit_1(self, mini_corpus, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{\"version\": 1}")
        code = main(["scan", str(mini_corpus), "--rules", str(bad)])
        err = capsys.readouterr().err
        assert code == 1
        assert "sources" in err

    def test_labels_filter_flag(self, mini_corpus, capsys):
        code = main(["scan", str(mini_corpus), "--labels", "sink.L"])
        out = capsys.readouterr().out
        assert code == 0
        doc = json.loads(out)
        assert all("sink.L" in f["labels"] for f in doc["flows"])
        assert doc["occurrences"] == []

    def test_langs_restricts_flow_analysis(self, mini_corpus, capsys):
        code = main(["scan", str(mini_corpus), "--langs", "java"])
        out = capsys.readouterr().out
        assert code == 0
        doc = json.loads(out)
        assert doc["flows"] and all(f["file"].endswith(".java") for f in doc["flows"])
        # Clear-text scanning still covers the excluded languages.
        assert any(o["file"].endswith(".ts") for o in doc["occurrences"])
