import type { Report } from './model.js';
import type { Marks } from './marks.js';

/**
 * Per-(source, sink) precision summary over the processing flows.
 *
 * Cell conventions follow the report's count-matrix presentation:
 *   "-"     nothing detected in the cell
 *   "*"     fewer than ten findings detected (or none of them marked yet)
 *   "93.3"  relevant / (relevant + irrelevant) over the marked findings
 *
 * A multi-source flow contributes once to each of its source categories,
 * consistent with how the scanner counts its matrix.
 */
export type PrecisionTable = Record<string, Record<string, string>>;

export function precisionTable(report: Report, marks: Marks): PrecisionTable {
  const detected: Record<string, Record<string, number>> = {};
  const marked: Record<string, Record<string, number>> = {};
  const relevant: Record<string, Record<string, number>> = {};
  for (const src of report.source_order) {
    detected[src] = {};
    marked[src] = {};
    relevant[src] = {};
    for (const snk of report.sink_order) {
      detected[src][snk] = 0;
      marked[src][snk] = 0;
      relevant[src][snk] = 0;
    }
  }

  for (const flow of report.flows) {
    const categories = [...new Set(flow.sources.map((s) => s.category))];
    const snk = flow.sink.category;
    for (const cat of categories) {
      if (!(cat in detected) || !(snk in detected[cat])) {
        continue; // category outside the report's declared orders
      }
      detected[cat][snk] += 1;
      const mark = marks.get(flow.id);
      if (mark === 'relevant' || mark === 'irrelevant') {
        marked[cat][snk] += 1;
        if (mark === 'relevant') {
          relevant[cat][snk] += 1;
        }
      }
    }
  }

  const table: PrecisionTable = {};
  for (const src of report.source_order) {
    table[src] = {};
    for (const snk of report.sink_order) {
      if (detected[src][snk] === 0) {
        table[src][snk] = '-';
      } else if (detected[src][snk] < 10 || marked[src][snk] === 0) {
        table[src][snk] = '*';
      } else {
        const pct = (100 * relevant[src][snk]) / marked[src][snk];
        table[src][snk] = pct.toFixed(1);
      }
    }
  }
  return table;
}

export interface ExportPayload {
  marks: Record<string, string>;
  precision: PrecisionTable;
}

/** Export bundle, or null while nothing is marked (export stays disabled). */
export function buildExport(report: Report, marks: Marks): ExportPayload | null {
  if (marks.size === 0) {
    return null;
  }
  const obj: Record<string, string> = {};
  for (const id of [...marks.keys()].sort()) {
    obj[id] = marks.get(id)!;
  }
  return { marks: obj, precision: precisionTable(report, marks) };
}
