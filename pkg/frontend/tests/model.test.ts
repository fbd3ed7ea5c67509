import { describe, expect, it } from 'vitest';
import { SchemaError, allFindings, validateReport } from '../src/model.js';
import { fixture } from './helpers.js';

describe('report schema guard', () => {
  it('accepts the fixture report and keeps section order', () => {
    const report = validateReport(fixture('report.json'));
    expect(report.schema).toBe(1);
    expect(report.occurrences.length).toBeGreaterThan(0);
    expect(report.flows.length).toBeGreaterThan(0);
    const ids = allFindings(report).map((f) => f.id);
    expect(ids).toEqual([...ids].sort()); // occurrences first, then flows
  });

  it('rejects a future schema with a clear message', () => {
    const doc = fixture('report.json') as Record<string, unknown>;
    doc.schema = 99;
    expect(() => validateReport(doc)).toThrow(SchemaError);
    expect(() => validateReport(doc)).toThrow(/schema 99/);
  });

  it('rejects non-objects and missing sections', () => {
    expect(() => validateReport([])).toThrow(SchemaError);
    expect(() => validateReport({ schema: 1 })).toThrow(/occurrences/);
  });

  it('accepts an empty report', () => {
    const doc = fixture('report.json') as Record<string, unknown>;
    doc.occurrences = [];
    doc.flows = [];
    const report = validateReport(doc);
    expect(allFindings(report)).toEqual([]);
  });
});
