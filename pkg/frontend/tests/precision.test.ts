import { describe, expect, it } from 'vitest';
import { parseMarks, serializeMarks, setMark, type Marks } from '../src/marks.js';
import { buildExport, precisionTable } from '../src/precision.js';
import { fixture, fixtureReport } from './helpers.js';

function fixtureMarks(): Marks {
  return parseMarks(JSON.stringify(fixture('marks.json')));
}

describe('precision export', () => {
  const report = fixtureReport();

  it('reproduces the fixture precision table from the corpus annotations', () => {
    const expected = fixture('expected_precision.json');
    expect(precisionTable(report, fixtureMarks())).toEqual(expected);
  });

  it('shows a percentage only where ten or more findings were detected', () => {
    const table = precisionTable(report, fixtureMarks());
    expect(table['account']['T']).toBe('90.9'); // 10 relevant of 11 detected
    expect(table['location']['M']).toBe('*'); // three re-rooted setters
    expect(table['health']['T']).toBe('-'); // nothing detected
  });

  it('computes relevant over marked within a cell', () => {
    let marks: Marks = new Map();
    for (const flow of report.flows) {
      const cats = new Set(flow.sources.map((s) => s.category));
      if (cats.has('account') && flow.sink.category === 'T') {
        marks = setMark(marks, flow.id, 'irrelevant');
      }
    }
    expect(marks.size).toBe(11);
    const table = precisionTable(report, marks);
    expect(table['account']['T']).toBe('0.0');
  });

  it('export is disabled until something is marked', () => {
    expect(buildExport(report, new Map())).toBeNull();
    const marks = setMark(new Map(), report.flows[0].id, 'relevant');
    const payload = buildExport(report, marks);
    expect(payload).not.toBeNull();
    expect(payload!.marks[report.flows[0].id]).toBe('relevant');
  });

  it('marks round-trip losslessly', () => {
    const marks = fixtureMarks();
    const again = parseMarks(serializeMarks(marks));
    expect(again).toEqual(marks);
    expect(serializeMarks(again)).toBe(serializeMarks(marks));
  });

  it('rejects marks for unknown finding ids', () => {
    const ids = new Set(['F0001']);
    expect(() => parseMarks('{"F9999": "relevant"}', ids)).toThrow(/unknown finding/);
  });

  it('rejects malformed mark values', () => {
    expect(() => parseMarks('{"F0001": "maybe"}')).toThrow(/bad mark/);
  });
});
