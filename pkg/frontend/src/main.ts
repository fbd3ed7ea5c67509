// DOM wiring for the report viewer. All data stays in the page; the only
// outputs are downloads the reviewer explicitly triggers.

import { SchemaError, validateReport, type Finding, type FlowFinding, type OccurrenceFinding, type Report } from './model.js';
import { labelCounts } from './filter.js';
import { parseMarks, serializeMarks, type Mark } from './marks.js';
import { buildExport } from './precision.js';
import {
  createState,
  markFinding,
  setCriterion,
  toggleLabel,
  clearFilter,
  visibleFindings,
  visibleGroups,
  type ViewState,
} from './state.js';

let state: ViewState | null = null;

const $ = (id: string): HTMLElement => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el;
};

function banner(message: string, kind: 'error' | 'info'): void {
  const el = $('banner');
  el.textContent = message;
  el.className = message ? `banner ${kind}` : 'banner hidden';
}

async function onReportChosen(file: File): Promise<void> {
  try {
    const doc: unknown = JSON.parse(await file.text());
    const report = validateReport(doc);
    state = createState(report);
    banner('', 'info');
    render();
  } catch (err) {
    state = null;
    ($('content')).replaceChildren();
    const reason = err instanceof SchemaError ? err.message : `could not read report: ${String(err)}`;
    banner(reason, 'error');
  }
}

function onMarksChosen(file: File): void {
  if (!state) return;
  file.text().then((text) => {
    try {
      const ids = new Set(
        [...state!.report.occurrences, ...state!.report.flows].map((f) => f.id),
      );
      const marks = parseMarks(text, ids);
      state = { ...state!, marks };
      render();
    } catch (err) {
      banner(`could not import marks: ${String(err)}`, 'error');
    }
  });
}

function download(name: string, payload: string): void {
  const blob = new Blob([payload], { type: 'application/json' });
  const a = document.createElement('a');
  a.href = URL.createObjectURL(blob);
  a.download = name;
  a.click();
  URL.revokeObjectURL(a.href);
}

function chip(text: string, cls = 'chip'): HTMLElement {
  const span = document.createElement('span');
  span.className = cls;
  span.textContent = text;
  return span;
}

function renderFilterPanel(visible: Finding[]): HTMLElement {
  const panel = document.createElement('div');
  const counts = labelCounts(visible);
  const groupsOf: Record<string, string[]> = {};
  for (const label of state!.report.labels_available) {
    const prefix = label.split('.')[0];
    (groupsOf[prefix] ??= []).push(label);
  }
  for (const [prefix, labels] of Object.entries(groupsOf)) {
    const fieldset = document.createElement('fieldset');
    const legend = document.createElement('legend');
    legend.textContent = prefix;
    fieldset.appendChild(legend);
    for (const label of labels) {
      const row = document.createElement('label');
      row.className = 'filter-row';
      const box = document.createElement('input');
      box.type = 'checkbox';
      box.checked = state!.filter.has(label);
      box.addEventListener('change', () => {
        state = toggleLabel(state!, label);
        render();
      });
      row.appendChild(box);
      row.appendChild(chip(label, 'chip label'));
      row.appendChild(chip(String(counts.get(label) ?? 0), 'chip badge'));
      fieldset.appendChild(row);
    }
    panel.appendChild(fieldset);
  }
  const reset = document.createElement('button');
  reset.textContent = 'clear filter';
  reset.addEventListener('click', () => {
    state = clearFilter(state!);
    render();
  });
  panel.appendChild(reset);
  return panel;
}

function markButtons(finding: Finding): HTMLElement {
  const wrap = document.createElement('span');
  wrap.className = 'marks';
  const current = state!.marks.get(finding.id);
  for (const value of ['relevant', 'irrelevant', 'unmarked'] as const) {
    const btn = document.createElement('button');
    btn.textContent = value;
    btn.className = value === (current ?? 'unmarked') ? 'mark active' : 'mark';
    btn.addEventListener('click', () => {
      state = markFinding(state!, finding.id, value as Mark | 'unmarked');
      render();
    });
    wrap.appendChild(btn);
  }
  return wrap;
}

function findingCard(finding: Finding): HTMLElement {
  const card = document.createElement('article');
  card.className = 'finding';
  const head = document.createElement('div');
  head.className = 'finding-head';
  head.appendChild(chip(finding.id, 'chip id'));
  head.appendChild(chip(`${finding.file}:${finding.start_line}`, 'chip loc'));
  for (const label of finding.labels) {
    head.appendChild(chip(label, 'chip label'));
  }
  head.appendChild(markButtons(finding));
  card.appendChild(head);
  const body = document.createElement('pre');
  if (finding.kind === 'occurrence') {
    const o = finding as OccurrenceFinding;
    body.textContent = `${o.matched_text}  (${o.pattern}, in ${o.context})\n${o.snippet}`;
  } else {
    const fl = finding as FlowFinding;
    const sources = fl.sources.map((s) => `${s.name}[${s.category}/${s.origin}]`).join(', ');
    body.textContent = `${sources} -> ${fl.sink.name}[${fl.sink.category}] shape=${fl.shape} sens=${fl.sensitivity}\n${fl.snippet}`;
  }
  card.appendChild(body);
  return card;
}

function renderSection(title: string, findings: Finding[]): HTMLElement {
  const section = document.createElement('section');
  const h = document.createElement('h2');
  h.textContent = `${title} (${findings.length})`;
  section.appendChild(h);
  if (findings.length === 0) {
    const p = document.createElement('p');
    p.className = 'empty';
    p.textContent = 'no findings';
    section.appendChild(p);
  }
  for (const f of findings) {
    section.appendChild(findingCard(f));
  }
  return section;
}

function renderGroups(): HTMLElement {
  const section = document.createElement('section');
  const h = document.createElement('h2');
  h.textContent = 'Groups';
  section.appendChild(h);
  const select = document.createElement('select');
  for (const criterion of Object.keys(state!.report.groups)) {
    const opt = document.createElement('option');
    opt.value = criterion;
    opt.textContent = criterion;
    opt.selected = criterion === state!.criterion;
    select.appendChild(opt);
  }
  select.addEventListener('change', () => {
    state = setCriterion(state!, select.value);
    render();
  });
  section.appendChild(select);
  for (const g of visibleGroups(state!)) {
    const div = document.createElement('div');
    div.className = 'group';
    div.appendChild(chip(g.id, 'chip id'));
    div.appendChild(chip(`${g.members.length} finding(s)`, 'chip badge'));
    const members = document.createElement('span');
    members.textContent = g.members.join(', ');
    div.appendChild(members);
    section.appendChild(div);
  }
  return section;
}

function renderMatrix(report: Report): HTMLElement {
  const section = document.createElement('section');
  const h = document.createElement('h2');
  h.textContent = 'Findings per source and sink';
  section.appendChild(h);
  const table = document.createElement('table');
  const header = document.createElement('tr');
  header.appendChild(document.createElement('th'));
  for (const snk of report.sink_order) {
    const th = document.createElement('th');
    th.textContent = snk;
    header.appendChild(th);
  }
  table.appendChild(header);
  for (const src of report.source_order) {
    const tr = document.createElement('tr');
    const th = document.createElement('th');
    th.textContent = src;
    tr.appendChild(th);
    for (const snk of report.sink_order) {
      const td = document.createElement('td');
      const n = report.matrix[src]?.[snk] ?? 0;
      td.textContent = n === 0 ? '-' : String(n);
      tr.appendChild(td);
    }
    table.appendChild(tr);
  }
  section.appendChild(table);
  return section;
}

function render(): void {
  if (!state) return;
  const report = state.report;
  const visible = visibleFindings(state);
  const occurrences = visible.filter((f) => f.kind === 'occurrence');
  const flows = visible.filter((f) => f.kind === 'flow');

  $('meta').textContent =
    `${report.tool.name} ${report.tool.version} — ${report.root} — ` +
    `${report.files.scanned} files — ${report.rules_fingerprint.slice(0, 18)}…`;

  $('sidebar').replaceChildren(renderFilterPanel(visible));
  $('content').replaceChildren(
    renderSection('Personal data occurrences', occurrences),
    renderSection('Personal data processing', flows),
    renderGroups(),
    renderMatrix(report),
  );

  const exportBtn = $('export-marks') as HTMLButtonElement;
  exportBtn.disabled = state.marks.size === 0;
}

export function boot(): void {
  ($('report-input') as HTMLInputElement).addEventListener('change', (e) => {
    const file = (e.target as HTMLInputElement).files?.[0];
    if (file) void onReportChosen(file);
  });
  ($('marks-input') as HTMLInputElement).addEventListener('change', (e) => {
    const file = (e.target as HTMLInputElement).files?.[0];
    if (file) onMarksChosen(file);
  });
  ($('export-marks') as HTMLButtonElement).addEventListener('click', () => {
    if (!state) return;
    const payload = buildExport(state.report, state.marks);
    if (payload) {
      download('privlens-marks.json', serializeMarks(state.marks));
      download('privlens-precision.json', JSON.stringify(payload.precision, null, 2) + '\n');
    }
  });
}

if (typeof document !== 'undefined' && document.getElementById('report-input')) {
  boot();
}
