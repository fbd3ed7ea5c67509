// Types for the scanner's JSON report (schema 1) plus a structural guard.

export const SUPPORTED_SCHEMA = 1;

export interface SourceRef {
  name: string;
  category: string;
  origin: string;
  line: number;
}

export interface SinkRef {
  name: string;
  category: string;
  matched_via: string;
  library: string | null;
  line: number;
}

interface FindingBase {
  id: string;
  file: string;
  start_line: number;
  end_line: number;
  snippet: string;
  labels: string[];
}

export interface OccurrenceFinding extends FindingBase {
  kind: 'occurrence';
  category: string;
  pattern: string;
  context: string;
  matched_text: string;
}

export interface FlowFinding extends FindingBase {
  kind: 'flow';
  sources: SourceRef[];
  sink: SinkRef;
  source_specific: boolean;
  shape: number;
  sensitivity: string;
}

export type Finding = OccurrenceFinding | FlowFinding;

export interface Group {
  id: string;
  criterion: string;
  members: string[];
  labels: string[];
}

export interface Report {
  schema: number;
  tool: { name: string; version: string };
  rules_fingerprint: string;
  root: string;
  files: { scanned: number; by_language: Record<string, number>; notes: string[] };
  warnings: string[];
  labels_available: string[];
  settings: Record<string, unknown>;
  occurrences: OccurrenceFinding[];
  flows: FlowFinding[];
  groups: Record<string, Group[]>;
  matrix: Record<string, Record<string, number>>;
  source_order: string[];
  sink_order: string[];
}

export class SchemaError extends Error {}

function isObject(v: unknown): v is Record<string, unknown> {
  return typeof v === 'object' && v !== null && !Array.isArray(v);
}

/** Structural check over a parsed document; throws SchemaError with a reason. */
export function validateReport(doc: unknown): Report {
  if (!isObject(doc)) {
    throw new SchemaError('report must be a JSON object');
  }
  if (doc.schema !== SUPPORTED_SCHEMA) {
    throw new SchemaError(
      `unsupported report schema ${String(doc.schema)}; this viewer reads schema ${SUPPORTED_SCHEMA}`,
    );
  }
  for (const key of ['occurrences', 'flows', 'labels_available', 'source_order', 'sink_order']) {
    if (!Array.isArray(doc[key])) {
      throw new SchemaError(`missing or malformed section: ${key}`);
    }
  }
  if (!isObject(doc.groups) || !isObject(doc.matrix)) {
    throw new SchemaError('missing or malformed section: groups/matrix');
  }
  for (const f of [...(doc.occurrences as unknown[]), ...(doc.flows as unknown[])]) {
    if (!isObject(f) || typeof f.id !== 'string' || !Array.isArray(f.labels)) {
      throw new SchemaError('finding entries need an id and a labels list');
    }
  }
  return doc as unknown as Report;
}

export function allFindings(report: Report): Finding[] {
  return [...report.occurrences, ...report.flows];
}
