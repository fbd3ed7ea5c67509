// Relevance marks: reviewer judgments keyed by finding id. "unmarked" is
// represented by absence so the export file carries only actual decisions.

export type Mark = 'relevant' | 'irrelevant';
export type Marks = Map<string, Mark>;

export function setMark(marks: Marks, id: string, mark: Mark | 'unmarked'): Marks {
  const next = new Map(marks);
  if (mark === 'unmarked') {
    next.delete(id);
  } else {
    next.set(id, mark);
  }
  return next;
}

/** JSON object `{finding_id: "relevant"|"irrelevant"}`, keys sorted. */
export function serializeMarks(marks: Marks): string {
  const obj: Record<string, Mark> = {};
  for (const id of [...marks.keys()].sort()) {
    obj[id] = marks.get(id)!;
  }
  return JSON.stringify(obj, null, 2) + '\n';
}

export function parseMarks(text: string, knownIds?: Set<string>): Marks {
  const doc: unknown = JSON.parse(text);
  if (typeof doc !== 'object' || doc === null || Array.isArray(doc)) {
    throw new Error('marks file must be a JSON object');
  }
  const marks: Marks = new Map();
  for (const [id, value] of Object.entries(doc)) {
    if (value !== 'relevant' && value !== 'irrelevant') {
      throw new Error(`bad mark for ${id}: ${String(value)}`);
    }
    if (knownIds && !knownIds.has(id)) {
      throw new Error(`marks file references unknown finding ${id}`);
    }
    marks.set(id, value);
  }
  return marks;
}
