#!/usr/bin/env python3
"""Regenerate the viewer's test fixtures from the bundled corpus.

Produces, under frontend/tests/fixtures/:
  report.json             CLI JSON report of the fixture corpus
  filter_cases.json       10 seeded-random label combinations with the
                          finding-id sets the CLI emits for --labels
  marks.json              relevance marks derived from the corpus annotations
  expected_precision.json per-(source, sink) precision table the viewer's
                          export must reproduce ('-' empty, '*' under 10)

The precision table here is computed independently of the viewer code so
the vitest suite checks the TypeScript implementation against it.
"""

import json
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from privlens.cli import main as cli_main  # noqa: E402

PKG = Path(__file__).parent.parent
CORPUS = PKG / "tests" / "fixtures" / "corpus"
ANNOTATIONS = PKG / "tests" / "fixtures" / "annotations.json"
OUT = PKG / "frontend" / "tests" / "fixtures"


def cli_report(tmp: Path, *extra: str) -> dict:
    out = tmp / "cli_report.json"
    code = cli_main(["scan", str(CORPUS), "--out", str(out), *extra])
    assert code == 0, f"scan failed with {code}"
    return json.loads(out.read_text())


def finding_key(f: dict):
    if f["kind"] == "occurrence":
        return ("occurrence", f["file"], f["start_line"], f["category"], f["pattern"])
    return (
        "flow",
        f["file"],
        f["start_line"],
        tuple(sorted({s["category"] for s in f["sources"]})),
        f["sink"]["category"],
        f["source_specific"],
    )


def annotation_key(e: dict):
    if e["kind"] == "occurrence":
        return ("occurrence", e["file"], e["line"], e["category"], e["pattern"])
    return ("flow", e["file"], e["line"], tuple(e["sources"]), e["sink"], e["source_specific"])


def build_marks(report: dict, annotations: dict) -> dict[str, str]:
    annotated = {annotation_key(e) for e in annotations["expected"]}
    marks = {}
    for f in report["occurrences"] + report["flows"]:
        marks[f["id"]] = "relevant" if finding_key(f) in annotated else "irrelevant"
    return marks


def build_precision(report: dict, marks: dict[str, str]) -> dict:
    sources = report["source_order"]
    sinks = report["sink_order"]
    detected = {s: {k: 0 for k in sinks} for s in sources}
    relevant = {s: {k: 0 for k in sinks} for s in sources}
    marked = {s: {k: 0 for k in sinks} for s in sources}
    for f in report["flows"]:
        cats = sorted({s["category"] for s in f["sources"]})
        snk = f["sink"]["category"]
        for cat in cats:
            detected[cat][snk] += 1
            mark = marks.get(f["id"], "unmarked")
            if mark != "unmarked":
                marked[cat][snk] += 1
                if mark == "relevant":
                    relevant[cat][snk] += 1
    table = {}
    for s in sources:
        table[s] = {}
        for k in sinks:
            if detected[s][k] == 0:
                table[s][k] = "-"
            elif detected[s][k] < 10 or marked[s][k] == 0:
                table[s][k] = "*"
            else:
                table[s][k] = f"{100.0 * relevant[s][k] / marked[s][k]:.1f}"
    return table


def build_filter_cases(report: dict, tmp: Path) -> list[dict]:
    rng = random.Random(77001)
    labels = report["labels_available"]
    cases = []
    for _ in range(10):
        combo = sorted(rng.sample(labels, rng.randrange(1, 4)))
        filtered = cli_report(tmp, "--labels", ",".join(combo))
        ids = sorted(
            f["id"] for f in filtered["occurrences"] + filtered["flows"]
        )
        cases.append({"labels": combo, "expected_ids": ids})
    return cases


def main() -> int:
    import tempfile

    OUT.mkdir(parents=True, exist_ok=True)
    with tempfile.TemporaryDirectory() as tmpdir:
        tmp = Path(tmpdir)
        report = cli_report(tmp)
        annotations = json.loads(ANNOTATIONS.read_text())
        marks = build_marks(report, annotations)
        precision = build_precision(report, marks)
        cases = build_filter_cases(report, tmp)

    (OUT / "report.json").write_text(json.dumps(report, indent=2) + "\n")
    (OUT / "marks.json").write_text(json.dumps(marks, indent=2, sort_keys=True) + "\n")
    (OUT / "expected_precision.json").write_text(json.dumps(precision, indent=2) + "\n")
    (OUT / "filter_cases.json").write_text(json.dumps(cases, indent=2) + "\n")
    n_marked = sum(1 for v in marks.values() if v == "relevant")
    print(f"report: {len(report['occurrences'])} occurrences, {len(report['flows'])} flows")
    print(f"marks: {n_marked} relevant / {len(marks) - n_marked} irrelevant")
    print(f"filter cases: {len(cases)}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
